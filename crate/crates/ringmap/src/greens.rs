//! Green's functions for the disk and the vertical strip, the annulus lower
//! bound, the Schwarz bound and the three-circles dilatation estimate.

use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Value of a Green's function evaluation; poles are flagged, not thrown.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GreenValue {
    Finite(f64),
    Pole,
}

impl GreenValue {
    pub fn value(self) -> f64 {
        match self {
            GreenValue::Finite(v) => v,
            GreenValue::Pole => f64::INFINITY,
        }
    }
}

/// Green's function of the unit disk, `log |(1 - z conj(zeta)) / (z - zeta)|`.
pub fn green_disk(z: Complex64, zeta: Complex64) -> Result<GreenValue> {
    if z.norm() >= 1.0 || zeta.norm() >= 1.0 {
        return Err(Error::OutOfRange("green_disk needs both points inside the unit disk".into()));
    }
    let den = (z - zeta).norm();
    if den == 0.0 {
        return Ok(GreenValue::Pole);
    }
    let num = (Complex64::new(1.0, 0.0) - z * zeta.conj()).norm();
    Ok(GreenValue::Finite((num / den).ln()))
}

/// Green's function of the vertical strip `{ |Re z| < pi/(2 alpha) }`:
/// `log |(e^{i a z} + e^{-i a conj(zeta)}) / (e^{i a z} - e^{i a zeta})|`.
pub fn green_strip(z: Complex64, zeta: Complex64, alpha: f64) -> Result<GreenValue> {
    if !(alpha > 0.0) {
        return Err(Error::OutOfRange("green_strip needs alpha > 0".into()));
    }
    let half = PI / (2.0 * alpha);
    if z.re.abs() >= half || zeta.re.abs() >= half {
        return Err(Error::OutOfRange("green_strip needs both points inside the strip".into()));
    }
    let i = Complex64::new(0.0, 1.0);
    let ez = (i * alpha * z).exp();
    let den = (ez - (i * alpha * zeta).exp()).norm();
    if den == 0.0 {
        return Ok(GreenValue::Pole);
    }
    let num = (ez + (-i * alpha * zeta.conj()).exp()).norm();
    Ok(GreenValue::Finite((num / den).ln()))
}

/// Lower bound `log coth(pi^2 / (4 log R))` for the Green's function of the
/// annulus `A(1/R, R)` with both arguments on the unit circle.
pub fn annulus_green_lower_bound(big_r: f64) -> Result<f64> {
    if !(big_r > 1.0) {
        return Err(Error::OutOfRange(format!("needs R > 1, got {big_r}")));
    }
    let x = PI * PI / (4.0 * big_r.ln());
    Ok(coth(x).ln())
}

/// `exp(-g)`: the Schwarz bound on |f| from a Green's function value.
pub fn schwarz_bound(green_value: f64) -> f64 {
    (-green_value).exp()
}

/// Three-circles bound `k^{1-alpha}` with `k = tanh(pi^2/(4 log R))` for a
/// holomorphic `f: A(1/R, R) -> D` vanishing at 1, maximized over the
/// sub-annulus `A(R^-alpha, R^alpha)`.
pub fn three_circles_bound(big_r: f64, alpha: f64) -> Result<f64> {
    if !(big_r > 1.0) {
        return Err(Error::OutOfRange(format!("needs R > 1, got {big_r}")));
    }
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::OutOfRange(format!("needs 0 <= alpha < 1, got {alpha}")));
    }
    let k = (PI * PI / (4.0 * big_r.ln())).tanh();
    Ok(k.powf(1.0 - alpha))
}

fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}

/// The normalization of Proposition-style dilatation data: `kappa = nu(a)`
/// and the disk automorphism the dilatation undergoes when the map is
/// replaced by `H = h - kappa conj(h)`.
#[derive(Debug, Clone, Copy)]
pub struct DilatationNormalization {
    pub kappa: Complex64,
}

impl DilatationNormalization {
    /// The transformed dilatation `(nu - kappa) / (1 - conj(kappa) nu)`;
    /// vanishes at the basepoint and stays inside the unit disk.
    pub fn transform(&self, nu: Complex64) -> Complex64 {
        (nu - self.kappa) / (Complex64::new(1.0, 0.0) - self.kappa.conj() * nu)
    }
}

pub fn normalize_dilatation(nu_at_a: Complex64) -> Result<DilatationNormalization> {
    if nu_at_a.norm() >= 1.0 {
        return Err(Error::OutOfRange(format!("|nu(a)| = {} >= 1", nu_at_a.norm())));
    }
    Ok(DilatationNormalization { kappa: nu_at_a })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn c(x: f64, y: f64) -> Complex64 {
        Complex64::new(x, y)
    }

    #[test]
    fn disk_values() {
        // G_D(0.5, 0) = log 2
        let g = green_disk(c(0.5, 0.0), c(0.0, 0.0)).unwrap().value();
        assert!((g - 2f64.ln()).abs() < 1e-15);
        assert_eq!(green_disk(c(0.3, 0.1), c(0.3, 0.1)).unwrap(), GreenValue::Pole);
        // z -> boundary: G -> 0+
        let g = green_disk(c(0.999999, 0.0), c(0.2, 0.1)).unwrap().value();
        assert!(g > 0.0 && g < 1e-4);
    }

    #[test]
    fn disk_symmetry() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let z = c(rng.gen_range(-0.7..0.7), rng.gen_range(-0.7..0.7));
            let w = c(rng.gen_range(-0.7..0.7), rng.gen_range(-0.7..0.7));
            if (z - w).norm() < 1e-6 {
                continue;
            }
            let a = green_disk(z, w).unwrap().value();
            let b = green_disk(w, z).unwrap().value();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn strip_on_the_imaginary_axis() {
        // G_S(iy, 0) = log coth(alpha |y| / 2)
        for &(y, alpha) in &[(0.5, 1.0), (2.0, 0.3), (-1.2, 0.8)] {
            let g = green_strip(c(0.0, y), c(0.0, 0.0), alpha).unwrap().value();
            let expect = (1.0 / (alpha * y.abs() / 2.0).tanh()).ln();
            assert!((g - expect).abs() < 1e-12, "y={y} alpha={alpha}");
        }
        // and at |y| = pi it dominates log coth(pi alpha / 2)
        for &alpha in &[0.2, 0.5, 1.0] {
            let g = green_strip(c(0.0, PI), c(0.0, 0.0), alpha).unwrap().value();
            assert!(g >= (1.0 / (PI * alpha / 2.0).tanh()).ln() - 1e-12);
        }
    }

    #[test]
    fn strip_swap_symmetry() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let alpha = 0.7;
        let half = PI / (2.0 * alpha);
        for _ in 0..50 {
            let z = c(rng.gen_range(-0.9 * half..0.9 * half), rng.gen_range(-2.0..2.0));
            let w = c(rng.gen_range(-0.9 * half..0.9 * half), rng.gen_range(-2.0..2.0));
            if (z - w).norm() < 1e-6 {
                continue;
            }
            let a = green_strip(z, w, alpha).unwrap().value();
            let b = green_strip(w, z, alpha).unwrap().value();
            assert!((a - b).abs() < 1e-11);
        }
    }

    #[test]
    fn annulus_bound_values() {
        // frozen from a 30-digit oracle: log coth(pi^2/4) = 0.014384014710763806
        let g = annulus_green_lower_bound(std::f64::consts::E).unwrap();
        assert!((g - 0.014384014710763806).abs() < 1e-14, "{g}");
        // grows like log(4 log R / pi^2) as R -> infinity
        assert!(annulus_green_lower_bound(1e12).unwrap() > 2.0);
        assert!(annulus_green_lower_bound(1e40).unwrap() > annulus_green_lower_bound(1e12).unwrap());
        let near_one = annulus_green_lower_bound(1.0 + 1e-9).unwrap();
        assert!(near_one >= 0.0 && near_one < 1e-8);
        assert!(annulus_green_lower_bound(0.9).is_err());
    }

    #[test]
    fn schwarz_and_three_circles() {
        assert_eq!(schwarz_bound(0.0), 1.0);
        assert!((schwarz_bound(2f64.ln()) - 0.5).abs() < 1e-15);
        // exp(-log coth x) = tanh x: the k of the three-circles lemma
        let big_r = std::f64::consts::E;
        let k = schwarz_bound(annulus_green_lower_bound(big_r).unwrap());
        assert!((k - (PI * PI / 4.0).tanh()).abs() < 1e-14);
        assert!((three_circles_bound(big_r, 0.0).unwrap() - k).abs() < 1e-15);
        // frozen from a 30-digit oracle: tanh(pi^2/4)^0.5 = 0.99283379323977535
        let b = three_circles_bound(big_r, 0.5).unwrap();
        assert!((b - 0.99283379323977535).abs() < 1e-14, "{b}");
        assert!(three_circles_bound(big_r, 0.999999).unwrap() < 1.0);
        assert!(three_circles_bound(big_r, 1.0).is_err());
    }

    #[test]
    fn subordination_under_squaring() {
        // f(z) = z^2 maps the disk into itself: G(z,w) <= G(z^2, w^2)
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let z = c(rng.gen_range(-0.9..0.9), rng.gen_range(-0.9..0.9));
            let w = c(rng.gen_range(-0.9..0.9), rng.gen_range(-0.9..0.9));
            if z.norm() >= 0.95 || w.norm() >= 0.95 || (z - w).norm() < 1e-3 {
                continue;
            }
            let a = green_disk(z, w).unwrap().value();
            let b = green_disk(z * z, w * w).unwrap().value();
            assert!(a <= b + 1e-12, "z={z}, w={w}: {a} > {b}");
        }
    }

    #[test]
    fn strip_chain_dominates_annulus_bound() {
        for &big_r in &[1.5, std::f64::consts::E, 10.0] {
            let alpha = PI / (2.0 * big_r.ln());
            let bound = annulus_green_lower_bound(big_r).unwrap();
            for i in 0..=40 {
                let y = -PI + 2.0 * PI * i as f64 / 40.0;
                if y.abs() < 1e-9 {
                    continue;
                }
                let g = green_strip(c(0.0, y), c(0.0, 0.0), alpha).unwrap().value();
                assert!(g >= bound - 1e-12, "R={big_r}, y={y}");
            }
        }
    }

    #[test]
    fn normalize_dilatation_behaves() {
        assert!(normalize_dilatation(c(1.2, 0.0)).is_err());
        let n = normalize_dilatation(c(0.0, 0.0)).unwrap();
        assert_eq!(n.transform(c(0.4, 0.1)), c(0.4, 0.1));
        let n = normalize_dilatation(c(0.3, 0.0)).unwrap();
        assert!(n.transform(c(0.3, 0.0)).norm() < 1e-15);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let nu = c(rng.gen_range(-0.7..0.7), rng.gen_range(-0.7..0.7));
            if nu.norm() >= 1.0 {
                continue;
            }
            assert!(n.transform(nu).norm() < 1.0);
        }
    }

    #[test]
    fn hadamard_convexity_on_test_function() {
        // f(z) = (z-1)/(z+3) on A(1/e, e): log max|f| convex in log r
        let f = |z: Complex64| (z - 1.0) / (z + 3.0);
        let max_on = |r: f64| {
            let mut m: f64 = 0.0;
            for k in 0..4096 {
                let t = 2.0 * PI * k as f64 / 4096.0;
                m = m.max(f(Complex64::from_polar(r, t)).norm());
            }
            m
        };
        let (r1, r2, r3) = (0.5, 1.1, 2.3);
        let (m1, m2, m3) = (max_on(r1), max_on(r2), max_on(r3));
        let t = (r2.ln() - r1.ln()) / (r3.ln() - r1.ln());
        assert!(m2.ln() <= (1.0 - t) * m1.ln() + t * m3.ln() + 1e-9);
    }

    use std::f64::consts::PI;
}
