use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// Quadratic form used for dot and cross products.
///
/// `Lorentz21` is `x² + y² − t²`; the third coordinate plays the time role.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricSignature {
    Euclidean3,
    Lorentz21,
}

impl MetricSignature {
    /// Sign carried by the third coordinate in the quadratic form.
    #[inline]
    pub fn time_sign(self) -> f64 {
        match self {
            MetricSignature::Euclidean3 => 1.0,
            MetricSignature::Lorentz21 => -1.0,
        }
    }
}

/// Point or vector in 3-space. In `Lorentz21`, `z` is the time coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const E3: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    #[inline]
    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    #[inline]
    pub fn norm(self) -> f64 {
        libm::sqrt(self.dot(self))
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    #[inline]
    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn component(self, axis: usize) -> f64 {
        match axis {
            0 => self.x,
            1 => self.y,
            _ => self.z,
        }
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    #[inline]
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    #[inline]
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    #[inline]
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for Vec3 {
    #[inline]
    fn sub_assign(&mut self, o: Vec3) {
        *self = *self - o;
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    #[inline]
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    #[inline]
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

/// Metric inner product.
#[inline]
pub fn metric_dot(u: Vec3, v: Vec3, m: MetricSignature) -> f64 {
    u.x * v.x + u.y * v.y + m.time_sign() * u.z * v.z
}

/// Metric cross product: the Lorentzian version flips the time component of
/// the Euclidean one, so `metric_dot(metric_cross(u, v, m), w, m)` is the
/// Euclidean determinant `det(u, v, w)` under either metric.
#[inline]
pub fn metric_cross(u: Vec3, v: Vec3, m: MetricSignature) -> Vec3 {
    let c = u.cross(v);
    Vec3::new(c.x, c.y, m.time_sign() * c.z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use MetricSignature::*;

    #[test]
    fn dot_examples() {
        assert_eq!(
            metric_dot(Vec3::new(1., 0., 0.), Vec3::new(1., 0., 0.), Lorentz21),
            1.0
        );
        assert_eq!(metric_dot(Vec3::E3, Vec3::E3, Lorentz21), -1.0);
        let v = Vec3::new(1., 2., 3.);
        assert_eq!(metric_dot(v, v, Euclidean3), 14.0);
    }

    #[test]
    fn cross_examples() {
        let (ex, ey) = (Vec3::new(1., 0., 0.), Vec3::new(0., 1., 0.));
        assert_eq!(metric_cross(ex, ey, Euclidean3), Vec3::new(0., 0., 1.));
        assert_eq!(metric_cross(ex, ey, Lorentz21), Vec3::new(0., 0., -1.));
        let u = Vec3::new(0.3, -1.2, 2.5);
        assert_eq!(metric_cross(u, u, Euclidean3), Vec3::ZERO);
        assert_eq!(metric_cross(u, u, Lorentz21), Vec3::ZERO);
    }

    fn vec3() -> impl Strategy<Value = Vec3> {
        (-5.0..5.0f64, -5.0..5.0f64, -5.0..5.0f64).prop_map(|(x, y, z)| Vec3::new(x, y, z))
    }

    proptest! {
        #[test]
        fn cross_is_metric_orthogonal(u in vec3(), v in vec3()) {
            for m in [Euclidean3, Lorentz21] {
                let c = metric_cross(u, v, m);
                prop_assert!(metric_dot(c, u, m).abs() < 1e-10);
                prop_assert!(metric_dot(c, v, m).abs() < 1e-10);
            }
        }

        #[test]
        fn triple_product_is_metric_independent(u in vec3(), v in vec3(), w in vec3()) {
            let e = metric_dot(metric_cross(u, v, Euclidean3), w, Euclidean3);
            let l = metric_dot(metric_cross(u, v, Lorentz21), w, Lorentz21);
            prop_assert_eq!(e, l);
        }

        // Lorentzian Lagrange identity: |u × v|² = −(|u|²|v|² − (u·v)²).
        #[test]
        fn lorentz_lagrange_identity(u in vec3(), v in vec3()) {
            let m = Lorentz21;
            let c = metric_cross(u, v, m);
            let gram = metric_dot(u, u, m) * metric_dot(v, v, m) - metric_dot(u, v, m).powi(2);
            prop_assert!((metric_dot(c, c, m) + gram).abs() < 1e-9 * (1.0 + gram.abs()));
        }
    }
}
