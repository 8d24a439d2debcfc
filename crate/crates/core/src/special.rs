//! Gamma and beta functions.
//!
//! `gamma` uses the Lanczos approximation (g = 7, nine coefficients) for
//! `z >= 1/2` and the reflection formula `Γ(z)Γ(1-z) = π / sin(πz)` below
//! that. Relative accuracy is around 1e-15 on moderate arguments and stays
//! below 1e-13 up to `z = 50`.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::order::Order;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

// ln(sqrt(2π))
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Largest argument for which Γ is representable as an `f64`.
const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

/// A finite, strictly positive real.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PositiveReal(f64);

impl PositiveReal {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(PositiveReal(value))
        } else {
            Err(domain("PositiveReal", format!("{value} is not finite and > 0")))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

fn lanczos_sum(zm1: f64) -> f64 {
    let mut acc = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (zm1 + i as f64);
    }
    acc
}

fn is_nonpositive_integer(z: f64) -> bool {
    z <= 0.0 && z == z.floor()
}

/// The gamma function Γ(z) for real `z`.
///
/// Fails on the poles `z = 0, -1, -2, ...`, on non-finite input and when the
/// result overflows.
pub fn gamma(z: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(domain("gamma", format!("non-finite argument {z}")));
    }
    if is_nonpositive_integer(z) {
        return Err(domain("gamma", format!("pole at {z}")));
    }
    if z > GAMMA_MAX_ARG {
        return Err(domain("gamma", format!("overflow at {z}")));
    }
    // Small positive integers are exact factorials.
    if z == z.floor() && z <= 23.0 {
        let mut acc = 1.0;
        let mut k = 2.0;
        while k < z {
            acc *= k;
            k += 1.0;
        }
        return Ok(acc);
    }
    if z < 0.5 {
        let s = (PI * z).sin();
        let g = gamma(1.0 - z)?;
        return Ok(PI / (s * g));
    }
    let zm1 = z - 1.0;
    let t = zm1 + LANCZOS_G + 0.5;
    // Split the power so that t^(z - 1/2) does not overflow before e^-t is applied.
    let half = t.powf(0.5 * (zm1 + 0.5));
    Ok((2.0 * PI).sqrt() * half * (half * (-t).exp()) * lanczos_sum(zm1))
}

/// Natural logarithm of Γ(z) for `z > 0`.
pub fn ln_gamma(z: f64) -> Result<f64> {
    if !(z.is_finite() && z > 0.0) {
        return Err(domain("ln_gamma", format!("argument {z} is not > 0")));
    }
    if z < 0.5 {
        // Γ(z) = Γ(z + 1) / z keeps the argument in the Lanczos range.
        return Ok(ln_gamma(z + 1.0)? - z.ln());
    }
    let zm1 = z - 1.0;
    let t = zm1 + LANCZOS_G + 0.5;
    Ok(LN_SQRT_2PI + (zm1 + 0.5) * t.ln() - t + lanczos_sum(zm1).ln())
}

/// The beta function B(α, β) = Γ(α)Γ(β)/Γ(α+β).
pub fn beta(alpha: PositiveReal, beta: PositiveReal) -> Result<f64> {
    let (a, b) = (alpha.value(), beta.value());
    if a + b < 150.0 {
        Ok(gamma(a)? * gamma(b)? / gamma(a + b)?)
    } else {
        Ok((ln_gamma(a)? + ln_gamma(b)? - ln_gamma(a + b)?).exp())
    }
}

/// Convenience wrapper around [`beta`] taking raw reals.
pub fn beta_fn(a: f64, b: f64) -> Result<f64> {
    beta(PositiveReal::new(a)?, PositiveReal::new(b)?)
}

/// The prefactor `sin(nπ)/π = 1/(Γ(n)Γ(1-n))` of the inversion formulas.
pub fn reflection_factor(n: Order) -> f64 {
    (n.value() * PI).sin() / PI
}

/// Ratio Γ(a)/Γ(b), computed through logarithms when either factor is large.
pub fn gamma_ratio(a: f64, b: f64) -> Result<f64> {
    if a > 0.0 && b > 0.0 && (a > 150.0 || b > 150.0) {
        return Ok((ln_gamma(a)? - ln_gamma(b)?).exp());
    }
    let den = gamma(b)?;
    if den == 0.0 {
        return Err(Error::Domain {
            func: "gamma_ratio",
            detail: format!("Γ({b}) vanishes"),
        });
    }
    Ok(gamma(a)? / den)
}
