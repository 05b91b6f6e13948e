//! Graded basis declarations and sparse graded vectors over ℚ.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Basis identifier: a sequence of symbols, ordered lexicographically.
///
/// This order is the global tie-breaker used for canonical forms and
/// serialization throughout the crate.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Key(pub Vec<String>);

impl Key {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Self {
        Key(symbols.into_iter().map(Into::into).collect())
    }

    pub fn empty() -> Self {
        Key(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &Key) -> Key {
        let mut out = self.0.clone();
        out.extend(other.0.iter().cloned());
        Key(out)
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(","))
    }
}

impl From<&str> for Key {
    /// `""` is the empty key; any other string is a one-letter word.
    fn from(s: &str) -> Self {
        if s.is_empty() {
            return Key::empty();
        }
        Key(vec![s.to_string()])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub key: Key,
    pub degree: i64,
}

impl BasisElement {
    pub fn new(key: impl Into<Key>, degree: i64) -> Self {
        BasisElement { key: key.into(), degree }
    }
}

/// A named, finite graded basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    name: String,
    shift: i64,
    degrees: BTreeMap<Key, i64>,
}

impl Basis {
    pub fn new(name: impl Into<String>, elements: impl IntoIterator<Item = BasisElement>) -> Result<Self> {
        let name = name.into();
        let mut degrees = BTreeMap::new();
        for el in elements {
            if degrees.insert(el.key.clone(), el.degree).is_some() {
                return Err(Error::DuplicateId(format!("{} in {}", el.key, name)));
            }
        }
        Ok(Basis { name, shift: 0, degrees })
    }

    /// `V`, or `V[n]` for a shifted basis.
    pub fn name(&self) -> String {
        if self.shift == 0 {
            self.name.clone()
        } else {
            format!("{}[{}]", self.name, self.shift)
        }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degree(&self, key: &Key) -> Option<i64> {
        self.degrees.get(key).copied()
    }

    pub fn contains(&self, key: &Key) -> bool {
        self.degrees.contains_key(key)
    }

    /// Elements in key order.
    pub fn elements(&self) -> impl Iterator<Item = BasisElement> + '_ {
        self.degrees.iter().map(|(k, &d)| BasisElement { key: k.clone(), degree: d })
    }

    pub fn keys(&self) -> impl Iterator<Item = &Key> {
        self.degrees.keys()
    }

    /// `V[n]`: every element of degree `d` is reassigned degree `d - n`.
    pub fn shifted(&self, n: i64) -> Basis {
        Basis {
            name: self.name.clone(),
            shift: self.shift + n,
            degrees: self.degrees.iter().map(|(k, &d)| (k.clone(), d - n)).collect(),
        }
    }
}

/// Sparse exact linear combination of basis elements of one ambient basis.
///
/// Absent keys mean zero; no stored coefficient is ever zero.
#[derive(Clone, Debug)]
pub struct GradedVector {
    ambient: Arc<Basis>,
    terms: BTreeMap<Key, Rational>,
}

fn same_ambient(a: &Arc<Basis>, b: &Arc<Basis>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GradedVector {
    pub fn zero(ambient: &Arc<Basis>) -> Self {
        GradedVector { ambient: Arc::clone(ambient), terms: BTreeMap::new() }
    }

    pub fn basis(ambient: &Arc<Basis>, key: &Key) -> Result<Self> {
        Self::from_terms(ambient, [(key.clone(), Rational::one())])
    }

    /// Builds a vector from `(key, coeff)` pairs; repeated keys are summed.
    pub fn from_terms(
        ambient: &Arc<Basis>,
        terms: impl IntoIterator<Item = (Key, Rational)>,
    ) -> Result<Self> {
        let mut out = GradedVector::zero(ambient);
        for (k, c) in terms {
            if !ambient.contains(&k) {
                return Err(Error::UnknownBasisKey { key: k, ambient: ambient.name().to_string() });
            }
            out.add_term(k, &c);
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, key: Key, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff.clone());
            }
        }
    }

    pub fn ambient(&self) -> &Arc<Basis> {
        &self.ambient
    }

    pub fn terms(&self) -> &BTreeMap<Key, Rational> {
        &self.terms
    }

    pub fn coeff(&self, key: &Key) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree shared by every term; `None` for zero or inhomogeneous vectors.
    pub fn degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|k| self.ambient.degree(k).expect("key in ambient"));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Iterates `(key, degree, coeff)`.
    pub fn graded_terms(&self) -> impl Iterator<Item = (&Key, i64, &Rational)> {
        self.terms
            .iter()
            .map(|(k, c)| (k, self.ambient.degree(k).expect("key in ambient"), c))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return GradedVector::zero(&self.ambient);
        }
        GradedVector {
            ambient: Arc::clone(&self.ambient),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect(),
        }
    }

    pub fn add(&self, other: &GradedVector) -> Result<Self> {
        linear_combine([(Rational::one(), self), (Rational::one(), other)])
    }

    pub fn sub(&self, other: &GradedVector) -> Result<Self> {
        linear_combine([(Rational::one(), self), (-Rational::one(), other)])
    }

    /// Regrades the vector by `V[n]`; keys and coefficients are unchanged.
    pub fn shift_degrees(&self, n: i64) -> Self {
        GradedVector { ambient: Arc::new(self.ambient.shifted(n)), terms: self.terms.clone() }
    }
}

/// Exact sparse sum `Σ cᵢ·vᵢ` over a common ambient basis.
pub fn linear_combine<'a>(
    pairs: impl IntoIterator<Item = (Rational, &'a GradedVector)>,
) -> Result<GradedVector> {
    let mut out: Option<GradedVector> = None;
    for (c, v) in pairs {
        let acc = out.get_or_insert_with(|| GradedVector::zero(&v.ambient));
        if !same_ambient(&acc.ambient, &v.ambient) {
            return Err(Error::AmbientMismatch(
                acc.ambient.name().to_string(),
                v.ambient.name().to_string(),
            ));
        }
        if c.is_zero() {
            continue;
        }
        for (k, x) in &v.terms {
            acc.add_term(k.clone(), &(x * &c));
        }
    }
    out.ok_or(Error::EmptyCombination)
}

impl PartialEq for GradedVector {
    fn eq(&self, other: &Self) -> bool {
        same_ambient(&self.ambient, &other.ambient) && self.terms == other.terms
    }
}

impl Eq for GradedVector {}

impl PartialOrd for GradedVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GradedVector {
    fn cmp(&self, other: &Self) -> Ordering {
        let ambient = if Arc::ptr_eq(&self.ambient, &other.ambient) {
            Ordering::Equal
        } else {
            self.ambient
                .name
                .cmp(&other.ambient.name)
                .then_with(|| self.ambient.degrees.cmp(&other.ambient.degrees))
        };
        ambient.then_with(|| self.terms.cmp(&other.terms))
    }
}
