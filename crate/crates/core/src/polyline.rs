//! Geometry of closed sample chains in the xy-plane.
//!
//! A chain `p_0, …, p_{N−1}` is read as the closed polygon with segments
//! `s_i = [p_i, p_{i+1 mod N}]`. Only the x and y coordinates are used.

use crate::vector::Vec3;

#[inline]
fn orient(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

#[inline]
fn on_segment(a: Vec3, b: Vec3, p: Vec3) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Whether closed segments `[p1, p2]` and `[q1, q2]` share a point.
pub fn segments_intersect(p1: Vec3, p2: Vec3, q1: Vec3, q2: Vec3) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

fn point_segment_distance(p: Vec3, a: Vec3, b: Vec3) -> f64 {
    let (abx, aby) = (b.x - a.x, b.y - a.y);
    let (apx, apy) = (p.x - a.x, p.y - a.y);
    let len2 = abx * abx + aby * aby;
    let t = if len2 > 0.0 {
        ((apx * abx + apy * aby) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let (dx, dy) = (apx - t * abx, apy - t * aby);
    libm::sqrt(dx * dx + dy * dy)
}

/// Planar distance between two segments.
pub fn segment_distance(p1: Vec3, p2: Vec3, q1: Vec3, q2: Vec3) -> f64 {
    if segments_intersect(p1, p2, q1, q2) {
        return 0.0;
    }
    point_segment_distance(p1, q1, q2)
        .min(point_segment_distance(p2, q1, q2))
        .min(point_segment_distance(q1, p1, p2))
        .min(point_segment_distance(q2, p1, p2))
}

/// Cyclic index distance on an `n`-cycle.
#[inline]
pub fn cyclic_separation(i: usize, j: usize, n: usize) -> usize {
    let d = i.abs_diff(j);
    d.min(n - d)
}

/// First pair of non-adjacent crossing segments found by a brute-force
/// sweep over all pairs, or `None` for a simple polygon.
pub fn first_crossing(pts: &[Vec3]) -> Option<(usize, usize)> {
    let n = pts.len();
    if n < 4 {
        return None;
    }
    let seg = |i: usize| (pts[i], pts[(i + 1) % n]);
    let bbox = |i: usize| {
        let (a, b) = seg(i);
        (a.x.min(b.x), a.x.max(b.x), a.y.min(b.y), a.y.max(b.y))
    };
    let boxes: alloc::vec::Vec<_> = (0..n).map(bbox).collect();
    for i in 0..n {
        let bi = boxes[i];
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let bj = boxes[j];
            if bi.1 < bj.0 || bj.1 < bi.0 || bi.3 < bj.2 || bj.3 < bi.2 {
                continue;
            }
            let (a, b) = seg(i);
            let (c, d) = seg(j);
            if segments_intersect(a, b, c, d) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Signed area enclosed by the polygon (shoelace), counted with multiplicity.
pub fn shoelace_area(pts: &[Vec3]) -> f64 {
    let n = pts.len();
    0.5 * (0..n)
        .map(|i| {
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            a.x * b.y - a.y * b.x
        })
        .sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use core::f64::consts::PI;

    fn v(x: f64, y: f64) -> Vec3 {
        Vec3::new(x, y, 0.0)
    }

    #[test]
    fn crossing_and_touching_segments() {
        assert!(segments_intersect(
            v(0., 0.),
            v(1., 1.),
            v(0., 1.),
            v(1., 0.)
        ));
        assert!(!segments_intersect(
            v(0., 0.),
            v(1., 0.),
            v(0., 1.),
            v(1., 1.)
        ));
        // endpoint touching
        assert!(segments_intersect(
            v(0., 0.),
            v(1., 0.),
            v(1., 0.),
            v(2., 1.)
        ));
        // collinear overlap
        assert!(segments_intersect(
            v(0., 0.),
            v(2., 0.),
            v(1., 0.),
            v(3., 0.)
        ));
        // collinear disjoint
        assert!(!segments_intersect(
            v(0., 0.),
            v(1., 0.),
            v(2., 0.),
            v(3., 0.)
        ));
    }

    #[test]
    fn distances() {
        assert_eq!(
            segment_distance(v(0., 0.), v(1., 1.), v(0., 1.), v(1., 0.)),
            0.0
        );
        assert!((segment_distance(v(0., 0.), v(1., 0.), v(0., 2.), v(1., 2.)) - 2.0).abs() < 1e-15);
        assert!(
            (segment_distance(v(0., 0.), v(1., 0.), v(2., 1.), v(3., 5.)) - libm::sqrt(2.0)).abs()
                < 1e-15
        );
    }

    #[test]
    fn simple_and_self_crossing_polygons() {
        let circle: Vec<Vec3> = (0..64)
            .map(|j| {
                let t = 2.0 * PI * j as f64 / 64.0;
                v(libm::cos(t), libm::sin(t))
            })
            .collect();
        assert_eq!(first_crossing(&circle), None);
        assert!((shoelace_area(&circle) - PI).abs() < 0.02);
        let bowtie = [v(0., 0.), v(1., 1.), v(1., 0.), v(0., 1.)];
        assert!(first_crossing(&bowtie).is_some());
        assert!(shoelace_area(&bowtie).abs() < 1e-15);
    }

    #[test]
    fn separation_wraps() {
        assert_eq!(cyclic_separation(1, 9, 10), 2);
        assert_eq!(cyclic_separation(3, 5, 10), 2);
    }
}
