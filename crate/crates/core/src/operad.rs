//! The non-symmetric operad of little intervals in `D¹ = [-1, 1]`.
//!
//! An interval `T_{y,r}` is the affine map `t ↦ r·t + y`; its image is
//! `[y - r, y + r]`. Composition substitutes an inner configuration through
//! an outer interval: `T_{y,r} ∘ T_{y',r'} = T_{y + r·y', r·r'}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::category::GradedCategory;
use crate::error::{Error, Result};
use crate::homatrix::HomMatrix;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LittleInterval {
    pub center: Rational,
    pub radius: Rational,
}

impl LittleInterval {
    pub fn new(center: impl Into<Rational>, radius: impl Into<Rational>) -> Self {
        LittleInterval { center: center.into(), radius: radius.into() }
    }

    /// The identity map `T_{0,1}`.
    pub fn identity() -> Self {
        LittleInterval::new(0, 1)
    }

    pub fn left(&self) -> Rational {
        &self.center - &self.radius
    }

    pub fn right(&self) -> Rational {
        &self.center + &self.radius
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LittleInterval) -> LittleInterval {
        LittleInterval { center: &self.center + &(&self.radius * &inner.center), radius: &self.radius * &inner.radius }
    }

    pub fn apply(&self, t: &Rational) -> Rational {
        &(&self.radius * t) + &self.center
    }
}

impl fmt::Display for LittleInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({}, {})", self.center, self.radius)
    }
}

/// An element of `I(n)`, intervals numbered left to right.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalConfig {
    pub intervals: Vec<LittleInterval>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfigViolation {
    Empty,
    Radius { index: usize, radius: Rational },
    OutsideDisk { index: usize },
    Overlap { left: usize, right: usize },
    Unordered { left: usize, right: usize },
}

impl fmt::Display for ConfigViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigViolation::Empty => write!(f, "configuration has no intervals"),
            ConfigViolation::Radius { index, radius } => write!(f, "interval {index} has radius {radius} outside [0, 1)"),
            ConfigViolation::OutsideDisk { index } => write!(f, "interval {index} leaves [-1, 1]"),
            ConfigViolation::Overlap { left, right } => write!(f, "intervals {left} and {right} have overlapping closures"),
            ConfigViolation::Unordered { left, right } => write!(f, "interval {left} lies right of interval {right}"),
        }
    }
}

impl IntervalConfig {
    pub fn new(intervals: Vec<LittleInterval>) -> Self {
        IntervalConfig { intervals }
    }

    /// The operad unit `(T_{0,1}) ∈ I(1)`.
    pub fn unit() -> Self {
        IntervalConfig { intervals: vec![LittleInterval::identity()] }
    }

    pub fn is_unit(&self) -> bool {
        self.intervals.len() == 1 && self.intervals[0] == LittleInterval::identity()
    }

    pub fn arity(&self) -> usize {
        self.intervals.len()
    }

    /// Every violation of the membership conditions of `I(n)`. The unit is
    /// reported as a radius violation; see [`IntervalConfig::check`].
    pub fn validate(&self) -> Vec<ConfigViolation> {
        let mut out = Vec::new();
        if self.intervals.is_empty() {
            out.push(ConfigViolation::Empty);
        }
        let (zero, one) = (Rational::zero(), Rational::one());
        for (index, t) in self.intervals.iter().enumerate() {
            if t.radius < zero || t.radius >= one {
                out.push(ConfigViolation::Radius { index, radius: t.radius.clone() });
            }
            if t.left() < -&one || t.right() > one {
                out.push(ConfigViolation::OutsideDisk { index });
            }
        }
        for (left, w) in self.intervals.windows(2).enumerate() {
            let right = left + 1;
            if w[0].right() < w[1].left() {
                continue;
            }
            if w[1].right() < w[0].left() {
                out.push(ConfigViolation::Unordered { left, right });
            } else {
                out.push(ConfigViolation::Overlap { left, right });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Accepts valid configurations and the unit.
    pub fn check(&self) -> Result<()> {
        if self.is_unit() {
            return Ok(());
        }
        match self.validate().first() {
            None => Ok(()),
            Some(v) => Err(Error::ConfigInvalid(v.to_string())),
        }
    }
}

/// `γ(outer; inners)`: inner configuration `i` is mapped through outer
/// interval `i`.
pub fn operad_compose(outer: &IntervalConfig, inners: &[IntervalConfig]) -> Result<IntervalConfig> {
    outer.check()?;
    if inners.len() != outer.arity() {
        return Err(Error::ArityMismatch { expected: outer.arity(), found: inners.len() });
    }
    for c in inners {
        c.check()?;
    }
    let out = IntervalConfig {
        intervals: outer
            .intervals
            .iter()
            .zip(inners)
            .flat_map(|(t, c)| c.intervals.iter().map(move |s| t.compose(s)))
            .collect(),
    };
    out.check()?;
    Ok(out)
}

/// `θ_k(c; A₁, …, A_k) = A₁·A₂·…·A_k` at the level of points of `I(k)`.
pub fn theta_compose(category: &GradedCategory, config: &IntervalConfig, matrices: &[HomMatrix]) -> Result<HomMatrix> {
    config.check()?;
    if matrices.len() != config.arity() {
        return Err(Error::ArityMismatch { expected: config.arity(), found: matrices.len() });
    }
    let (first, rest) = matrices.split_first().expect("arity is at least one");
    rest.iter().try_fold(first.clone(), |acc, m| acc.product(category, m))
}
