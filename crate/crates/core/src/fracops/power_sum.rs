use std::fmt;
use std::ops::{Add, Mul};

use crate::error::{Error, Result};

/// A finite sum `Σ c·a^μ` with real exponents `μ >= 0`.
///
/// Terms are kept sorted by ascending exponent, with equal exponents merged
/// and zero coefficients dropped, so two equal sums compare equal.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PowerSum {
    terms: Vec<(f64, f64)>,
}

impl PowerSum {
    /// Builds a canonical power sum from `(coefficient, exponent)` pairs.
    pub fn new(terms: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut raw: Vec<(f64, f64)> = Vec::new();
        for (c, e) in terms {
            if !c.is_finite() {
                return Err(Error::InvalidInput(format!("non-finite coefficient {c}")));
            }
            if !(e.is_finite() && e >= 0.0) {
                return Err(Error::InvalidInput(format!(
                    "exponent {e} must be finite and >= 0"
                )));
            }
            raw.push((c, e));
        }
        raw.sort_by(|a, b| a.1.total_cmp(&b.1));
        let mut terms: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
        for (c, e) in raw {
            match terms.last_mut() {
                Some(last) if last.1 == e => last.0 += c,
                _ => terms.push((c, e)),
            }
        }
        terms.retain(|&(c, _)| c != 0.0);
        Ok(PowerSum { terms })
    }

    pub fn zero() -> Self {
        PowerSum { terms: Vec::new() }
    }

    pub fn constant(c: f64) -> Result<Self> {
        Self::new([(c, 0.0)])
    }

    pub fn monomial(c: f64, exp: f64) -> Result<Self> {
        Self::new([(c, exp)])
    }

    /// `(coefficient, exponent)` pairs in ascending exponent order.
    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at `a >= 0`.
    pub fn eval(&self, a: f64) -> f64 {
        self.terms.iter().map(|&(c, e)| c * pow0(a, e)).sum()
    }

    /// First derivative at `a >= 0`; infinite at `a = 0` when an exponent lies in (0, 1).
    pub fn derivative(&self, a: f64) -> f64 {
        self.terms
            .iter()
            .filter(|&&(_, e)| e > 0.0)
            .map(|&(c, e)| c * e * pow0(a, e - 1.0))
            .sum()
    }

    /// Maps every term through `f(c, e) -> (c', e')`.
    pub fn map_terms(&self, f: impl Fn(f64, f64) -> Result<(f64, f64)>) -> Result<Self> {
        let mapped = self
            .terms
            .iter()
            .map(|&(c, e)| f(c, e))
            .collect::<Result<Vec<_>>>()?;
        Self::new(mapped)
    }

    pub fn scale(&self, k: f64) -> Self {
        if k == 0.0 {
            return Self::zero();
        }
        PowerSum {
            terms: self.terms.iter().map(|&(c, e)| (c * k, e)).collect(),
        }
    }

    /// Smallest exponent, if any term is present.
    pub fn leading_exponent(&self) -> Option<f64> {
        self.terms.first().map(|t| t.1)
    }
}

/// `a^e` with the convention `0^0 = 1`.
#[inline]
fn pow0(a: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else if e == 1.0 {
        a
    } else {
        a.powf(e)
    }
}

impl Add for &PowerSum {
    type Output = PowerSum;

    fn add(self, rhs: &PowerSum) -> PowerSum {
        PowerSum::new(self.terms.iter().chain(rhs.terms.iter()).copied())
            .expect("terms of valid power sums stay valid")
    }
}

impl Mul<f64> for &PowerSum {
    type Output = PowerSum;

    fn mul(self, k: f64) -> PowerSum {
        self.scale(k)
    }
}

impl fmt::Display for PowerSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, e)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *e == 0.0 {
                write!(f, "{c:?}")?;
            } else {
                write!(f, "{c:?}*a^{e:?}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let p = PowerSum::new([(1.0, 2.0), (2.0, 0.5), (3.0, 2.0), (0.0, 1.0), (-2.0, 0.5)]).unwrap();
        assert_eq!(p.terms(), &[(4.0, 2.0)]);
        assert!(PowerSum::new([(1.0, -0.5)]).is_err());
        assert!(PowerSum::new([(f64::NAN, 1.0)]).is_err());
        assert!(PowerSum::new([(1.0, f64::INFINITY)]).is_err());
    }

    #[test]
    fn evaluation_and_derivative() {
        let p = PowerSum::new([(2.0, 0.5), (1.0, 2.0), (3.0, 0.0)]).unwrap();
        assert_eq!(p.eval(0.0), 3.0);
        assert!((p.eval(4.0) - (4.0 + 16.0 + 3.0)).abs() < 1e-14);
        assert!((p.derivative(4.0) - (0.5 + 8.0)).abs() < 1e-14);
        assert!(p.derivative(0.0).is_infinite());
    }

    #[test]
    fn add_and_scale() {
        let a = PowerSum::new([(1.0, 1.0)]).unwrap();
        let b = PowerSum::new([(-1.0, 1.0), (2.0, 3.0)]).unwrap();
        assert_eq!((&a + &b).terms(), &[(2.0, 3.0)]);
        assert_eq!((&b * 0.0), PowerSum::zero());
        assert_eq!((&b * 2.0).terms(), &[(-2.0, 1.0), (4.0, 3.0)]);
        assert_eq!(b.to_string(), "-1.0*a^1.0 + 2.0*a^3.0");
    }
}
