//! Float helpers for `no_std` (routed through `libm`) and closed-form 2×2
//! spectra.

pub use num_complex::Complex64;

/// `x^e` for `x >= 0`. `0^0 = 1`, `0^e = 0` for `e > 0`.
#[inline]
pub(crate) fn pow(x: f64, e: f64) -> f64 {
    libm::pow(x, e)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

/// Eigenvalues of a real 2×2 matrix from its trace and determinant.
///
/// Real roots are ordered ascending; complex pairs have the negative
/// imaginary part first.
pub(crate) fn eigenvalues_2x2(m: &[[f64; 2]; 2]) -> [Complex64; 2] {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let half = 0.5 * tr;
    let disc = half * half - det;
    if disc >= 0.0 {
        let r = sqrt(disc);
        // Avoid cancellation in the smaller-magnitude root.
        let big = if half >= 0.0 { half + r } else { half - r };
        let small = if big != 0.0 { det / big } else { 0.0 };
        let (lo, hi) = if big < small { (big, small) } else { (small, big) };
        [Complex64::new(lo, 0.0), Complex64::new(hi, 0.0)]
    } else {
        let im = sqrt(-disc);
        [Complex64::new(half, -im), Complex64::new(half, im)]
    }
}

/// Coefficients `[c1, c0]` of the monic characteristic polynomial
/// `μ² + c1 μ + c0` of a 2×2 matrix.
pub fn char_poly_2x2(m: &[[f64; 2]; 2]) -> [f64; 2] {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    [-tr, det]
}

/// Coefficients `[c2, c1, c0]` of the monic characteristic polynomial
/// `μ³ + c2 μ² + c1 μ + c0` of a 3×3 matrix.
pub fn char_poly_3x3(m: &[[f64; 3]; 3]) -> [f64; 3] {
    let tr = m[0][0] + m[1][1] + m[2][2];
    let minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2]
        - m[0][2] * m[2][0]
        + m[1][1] * m[2][2]
        - m[1][2] * m[2][1];
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    [-tr, minors, -det]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_and_complex_spectra() {
        let ev = eigenvalues_2x2(&[[2.0, 0.0], [0.0, -3.0]]);
        assert_eq!(ev[0].re, -3.0);
        assert_eq!(ev[1].re, 2.0);

        // rotation generator: ±i
        let ev = eigenvalues_2x2(&[[0.0, -1.0], [1.0, 0.0]]);
        assert_eq!(ev[0], Complex64::new(0.0, -1.0));
        assert_eq!(ev[1], Complex64::new(0.0, 1.0));
    }

    #[test]
    fn tiny_root_keeps_precision() {
        // roots -1e-12 and -1
        let m = [[-1.0 - 1e-12, 0.0], [0.0, 0.0]];
        let m = [[m[0][0], 1.0], [-1e-12, m[1][1]]];
        let ev = eigenvalues_2x2(&m);
        let prod = ev[0].re * ev[1].re;
        assert!((prod - 1e-12).abs() < 1e-24);
    }

    #[test]
    fn char_poly_of_diagonal() {
        let c = char_poly_3x3(&[[1.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 3.0]]);
        // (μ-1)(μ-2)(μ-3) = μ³ - 6μ² + 11μ - 6
        assert_eq!(c, [-6.0, 11.0, -6.0]);
        assert_eq!(char_poly_2x2(&[[1.0, 2.0], [3.0, 4.0]]), [-5.0, -2.0]);
    }
}
