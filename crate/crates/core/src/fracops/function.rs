use crate::error::{Error, Result};
use crate::fracops::PowerSum;
use crate::quadrature::TabulatedFunction;

/// Relative mismatch tolerated between adjacent segments at a breakpoint.
pub const CONTINUITY_TOL: f64 = 1e-10;

/// One piece `[lo, hi]` of a piecewise power sum.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
    pub sum: PowerSum,
}

/// Contiguous segments starting at 0, each carrying its own power sum in
/// plain powers of `a`. Adjacent segments must agree at the breakpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePowerSum {
    segments: Vec<Segment>,
}

impl PiecewisePowerSum {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidInput("piecewise function needs a segment".into()));
        }
        if segments[0].lo != 0.0 {
            return Err(Error::InvalidInput(format!(
                "first segment must start at 0, starts at {}",
                segments[0].lo
            )));
        }
        for (i, s) in segments.iter().enumerate() {
            if !(s.hi.is_finite() && s.hi > s.lo) {
                return Err(Error::InvalidInput(format!(
                    "segment {i} has empty or invalid range [{}, {}]",
                    s.lo, s.hi
                )));
            }
        }
        for (i, w) in segments.windows(2).enumerate() {
            if w[0].hi != w[1].lo {
                return Err(Error::InvalidInput(format!(
                    "segments {i} and {} are not contiguous ({} vs {})",
                    i + 1,
                    w[0].hi,
                    w[1].lo
                )));
            }
            let at = w[0].hi;
            let (left, right) = (w[0].sum.eval(at), w[1].sum.eval(at));
            let scale = left.abs().max(right.abs()).max(f64::MIN_POSITIVE);
            if (left - right).abs() > CONTINUITY_TOL * scale {
                return Err(Error::Discontinuity {
                    index: i,
                    at,
                    left,
                    right,
                });
            }
        }
        Ok(PiecewisePowerSum { segments })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = f64> + '_ {
        self.segments[..self.segments.len() - 1].iter().map(|s| s.hi)
    }

    pub fn domain_end(&self) -> f64 {
        self.segments.last().expect("non-empty").hi
    }

    fn segment_for(&self, a: f64) -> Result<&Segment> {
        if a.is_nan() || a < 0.0 || a > self.domain_end() {
            return Err(Error::OutOfRange {
                x: a,
                lo: 0.0,
                hi: self.domain_end(),
            });
        }
        let i = self.segments.partition_point(|s| s.hi < a);
        Ok(&self.segments[i.min(self.segments.len() - 1)])
    }

    pub fn eval(&self, a: f64) -> Result<f64> {
        Ok(self.segment_for(a)?.sum.eval(a))
    }

    pub fn derivative(&self, a: f64) -> Result<f64> {
        Ok(self.segment_for(a)?.sum.derivative(a))
    }
}

/// A function of one variable as handed to the operators: an exact power
/// sum, a piecewise power sum, or samples on a grid.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSpec {
    PowerSum(PowerSum),
    Piecewise(PiecewisePowerSum),
    Tabulated(TabulatedFunction),
}

impl FunctionSpec {
    pub fn eval(&self, a: f64) -> Result<f64> {
        if a.is_nan() || a < 0.0 {
            return Err(Error::OutOfRange {
                x: a,
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        match self {
            FunctionSpec::PowerSum(p) => Ok(p.eval(a)),
            FunctionSpec::Piecewise(p) => p.eval(a),
            FunctionSpec::Tabulated(t) => t.eval(a),
        }
    }

    /// First derivative; finite differences for tabulated data.
    pub fn derivative(&self, a: f64) -> Result<f64> {
        if a.is_nan() || a < 0.0 {
            return Err(Error::OutOfRange {
                x: a,
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        match self {
            FunctionSpec::PowerSum(p) => Ok(p.derivative(a)),
            FunctionSpec::Piecewise(p) => p.derivative(a),
            FunctionSpec::Tabulated(t) => t.derivative(a),
        }
    }

    /// Right end of the domain, `None` when unbounded.
    pub fn domain_end(&self) -> Option<f64> {
        match self {
            FunctionSpec::PowerSum(_) => None,
            FunctionSpec::Piecewise(p) => Some(p.domain_end()),
            FunctionSpec::Tabulated(t) => Some(t.x_max()),
        }
    }

    pub fn check_domain(&self, x: f64) -> Result<()> {
        match self.domain_end() {
            Some(hi) if x > hi => Err(Error::OutOfRange { x, lo: 0.0, hi }),
            _ => Ok(()),
        }
    }

    pub fn as_power_sum(&self) -> Option<&PowerSum> {
        match self {
            FunctionSpec::PowerSum(p) => Some(p),
            _ => None,
        }
    }

    /// `λ·f`, preserving the representation.
    pub fn scale(&self, k: f64) -> FunctionSpec {
        match self {
            FunctionSpec::PowerSum(p) => FunctionSpec::PowerSum(p.scale(k)),
            FunctionSpec::Piecewise(p) => FunctionSpec::Piecewise(PiecewisePowerSum {
                segments: p
                    .segments
                    .iter()
                    .map(|s| Segment {
                        lo: s.lo,
                        hi: s.hi,
                        sum: s.sum.scale(k),
                    })
                    .collect(),
            }),
            FunctionSpec::Tabulated(t) => FunctionSpec::Tabulated(
                TabulatedFunction::new(t.xs().to_vec(), t.values().iter().map(|v| v * k).collect())
                    .expect("scaling keeps the grid valid"),
            ),
        }
    }
}

impl From<PowerSum> for FunctionSpec {
    fn from(p: PowerSum) -> Self {
        FunctionSpec::PowerSum(p)
    }
}

impl From<PiecewisePowerSum> for FunctionSpec {
    fn from(p: PiecewisePowerSum) -> Self {
        FunctionSpec::Piecewise(p)
    }
}

impl From<TabulatedFunction> for FunctionSpec {
    fn from(t: TabulatedFunction) -> Self {
        FunctionSpec::Tabulated(t)
    }
}
