//! Discrete Fourier transform of arbitrary length.
//!
//! Power-of-two lengths use an iterative radix-2 transform; every other
//! length goes through Bluestein's chirp-z reduction to a power-of-two
//! convolution. Convention: forward `X_m = Σ_j x_j e^{−2πi jm/N}`, inverse
//! without normalization.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

/// In-place forward transform.
pub fn forward(buf: &mut [Complex64]) {
    transform(buf, -1.0);
}

/// In-place inverse transform, scaled by `1/N`.
pub fn inverse(buf: &mut [Complex64]) {
    transform(buf, 1.0);
    let scale = 1.0 / buf.len() as f64;
    for z in buf.iter_mut() {
        *z *= scale;
    }
}

/// Forward transform of a real sequence.
pub fn forward_real(values: &[f64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    forward(&mut buf);
    buf
}

/// Inverse transform keeping only the real part.
pub fn inverse_real(mut spectrum: Vec<Complex64>) -> Vec<f64> {
    inverse(&mut spectrum);
    spectrum.into_iter().map(|z| z.re).collect()
}

fn transform(buf: &mut [Complex64], sign: f64) {
    let n = buf.len();
    if n <= 1 {
        return;
    }
    if n.is_power_of_two() {
        radix2(buf, sign);
    } else {
        bluestein(buf, sign);
    }
}

fn radix2(buf: &mut [Complex64], sign: f64) {
    let n = buf.len();
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            buf.swap(i, j);
        }
    }
    // Twiddles for the largest stage; smaller stages stride through them.
    let twiddles: Vec<Complex64> = (0..n / 2)
        .map(|k| {
            let a = sign * 2.0 * PI * k as f64 / n as f64;
            Complex64::new(libm::cos(a), libm::sin(a))
        })
        .collect();
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let w = twiddles[k * stride];
                let a = buf[start + k];
                let b = buf[start + k + half] * w;
                buf[start + k] = a + b;
                buf[start + k + half] = a - b;
            }
        }
        len <<= 1;
    }
}

fn bluestein(buf: &mut [Complex64], sign: f64) {
    let n = buf.len();
    let m = (2 * n - 1).next_power_of_two();
    // chirp_k = exp(sign·iπ k²/n); k² is reduced mod 2n to keep the angle small.
    let chirp: Vec<Complex64> = (0..n)
        .map(|k| {
            let k2 = ((k as u128 * k as u128) % (2 * n as u128)) as f64;
            let a = sign * PI * k2 / n as f64;
            Complex64::new(libm::cos(a), libm::sin(a))
        })
        .collect();
    let mut a = vec![Complex64::new(0.0, 0.0); m];
    for k in 0..n {
        a[k] = buf[k] * chirp[k];
    }
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    b[0] = chirp[0].conj();
    for k in 1..n {
        b[k] = chirp[k].conj();
        b[m - k] = chirp[k].conj();
    }
    radix2(&mut a, -1.0);
    radix2(&mut b, -1.0);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= *y;
    }
    radix2(&mut a, 1.0);
    let scale = 1.0 / m as f64;
    for k in 0..n {
        buf[k] = a[k] * scale * chirp[k];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(x: &[Complex64], sign: f64) -> Vec<Complex64> {
        let n = x.len();
        (0..n)
            .map(|m| {
                x.iter()
                    .enumerate()
                    .fold(Complex64::new(0.0, 0.0), |acc, (j, &v)| {
                        let a = sign * 2.0 * PI * ((j * m) % n) as f64 / n as f64;
                        acc + v * Complex64::new(libm::cos(a), libm::sin(a))
                    })
            })
            .collect()
    }

    fn signal(n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|j| {
                let t = j as f64;
                Complex64::new(libm::sin(0.37 * t) + 0.1 * t, libm::cos(1.3 * t * t))
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft_for_many_lengths() {
        for n in [1usize, 2, 3, 5, 8, 12, 16, 18, 30, 64, 96, 100] {
            let x = signal(n);
            let mut y = x.clone();
            forward(&mut y);
            let expect = naive(&x, -1.0);
            for (a, b) in y.iter().zip(&expect) {
                assert!((a - b).norm() < 1e-9 * n as f64, "n = {n}");
            }
        }
    }

    #[test]
    fn inverse_round_trips() {
        for n in [16usize, 48, 6144] {
            let x = signal(n);
            let mut y = x.clone();
            forward(&mut y);
            inverse(&mut y);
            for (a, b) in y.iter().zip(&x) {
                assert!((a - b).norm() < 1e-10);
            }
        }
    }
}
