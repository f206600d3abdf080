//! Complex log-gamma by Stirling's series on a shifted argument.

use num_complex::Complex64;

use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const SHIFT_TO: f64 = 10.0;

// B_{2k} / (2k (2k - 1)) for k = 1..=12.
const STIRLING: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
    77_683.0 / 5_796.0,
    -236_364_091.0 / 1_506_960.0,
];

/// log Γ(z) on some branch; `exp` of the result is Γ(z) and its real part is
/// log |Γ(z)| regardless of branch.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.floor() {
        return Err(Error::Domain(format!("Γ has a pole at z = {}", z.re)));
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_TO {
        shift += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for c in STIRLING {
        series += power * c;
        power *= inv2;
    }
    Ok((w - 0.5) * w.ln() - w + LN_SQRT_2PI + series - shift)
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(ln_gamma(z)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn integer_and_half_integer_values() {
        assert!((gamma(c(5.0, 0.0)).unwrap().re - 24.0).abs() < 1e-11);
        assert!((gamma(c(0.5, 0.0)).unwrap().re - PI.sqrt()).abs() < 1e-13);
        // Γ(1/4), reference value to 17 digits
        assert!((gamma(c(0.25, 0.0)).unwrap().re - 3.625_609_908_221_908).abs() < 1e-13);
    }

    #[test]
    fn modulus_on_imaginary_shift() {
        // |Γ(1 + i)|² = π / sinh π
        let g = gamma(c(1.0, 1.0)).unwrap();
        assert!((g.norm_sqr() - PI / PI.sinh()).abs() < 1e-14);
        // |Γ(1/2 + i y)|² = π / cosh(π y)
        let y = 7.3;
        let g = ln_gamma(c(0.5, y)).unwrap();
        assert!((2.0 * g.re - (PI / (PI * y).cosh()).ln()).abs() < 1e-11);
    }

    #[test]
    fn negative_real_part_uses_recurrence() {
        // Γ(-1/2) = -2 √π
        let g = gamma(c(-0.5, 0.0)).unwrap();
        assert!((g.re + 2.0 * PI.sqrt()).abs() < 1e-12);
        assert!(g.im.abs() < 1e-12);
    }

    #[test]
    fn poles_are_rejected() {
        assert!(ln_gamma(c(0.0, 0.0)).is_err());
        assert!(ln_gamma(c(-3.0, 0.0)).is_err());
    }
}
