use std::fmt;

use crate::error::{Error, Result};

/// A fractional order `n` with `0 < n < 1`.
///
/// Orders at or beyond 1 make the kernel `(a - x)^-n` non-integrable, and
/// order 0 degenerates to the identity, so both ends are excluded.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Order(f64);

impl Order {
    pub fn new(n: f64) -> Result<Self> {
        if n.is_finite() && n > 0.0 && n < 1.0 {
            Ok(Order(n))
        } else {
            Err(Error::InvalidOrder(n))
        }
    }

    /// The order used for the classical tautochrone, `n = 1/2`.
    pub const HALF: Order = Order(0.5);

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// The complementary order `1 - n`.
    #[inline]
    pub fn complement(self) -> Order {
        Order(1.0 - self.0)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<f64> for Order {
    type Error = Error;

    fn try_from(n: f64) -> Result<Self> {
        Order::new(n)
    }
}
