//! Finite chain complexes over ℚ and their homology ranks.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{Basis, BasisElement, GradedVector, Key};
use crate::linalg;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    basis: Arc<Basis>,
    differential: BTreeMap<Key, GradedVector>,
}

/// First failure found by [`ChainComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexViolation {
    /// `d(element)` has a term that is not one degree lower.
    DegreeMismatch { element: Key, degree: i64, term: Key, term_degree: i64 },
    /// `d(d(element)) != 0`.
    NonzeroSquare { element: Key, square: GradedVector },
}

impl fmt::Display for ComplexViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexViolation::DegreeMismatch { element, degree, term, term_degree } => write!(
                f,
                "d({element}) with degree {degree} contains {term} of degree {term_degree}, expected {}",
                degree - 1
            ),
            ComplexViolation::NonzeroSquare { element, square } => {
                write!(f, "d(d({element})) =")?;
                for (k, c) in square.terms() {
                    write!(f, " {c}*{k}")?;
                }
                Ok(())
            }
        }
    }
}

impl ChainComplex {
    /// Builds a complex from its graded basis and the differential on basis
    /// elements. Elements without an entry have zero differential.
    pub fn new(
        elements: impl IntoIterator<Item = BasisElement>,
        differential: impl IntoIterator<Item = (Key, Vec<(Key, Rational)>)>,
    ) -> Result<Self> {
        let basis = Arc::new(Basis::new("complex", elements)?);
        let mut d = BTreeMap::new();
        for (src, terms) in differential {
            if !basis.contains(&src) {
                return Err(Error::UnknownBasisKey { key: src, ambient: basis.name().to_string() });
            }
            let v = GradedVector::from_terms(&basis, terms)?;
            if d.insert(src.clone(), v).is_some() {
                return Err(Error::DuplicateId(format!("differential of {src}")));
            }
        }
        d.retain(|_, v: &mut GradedVector| !v.is_zero());
        Ok(ChainComplex { basis, differential: d })
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    /// Nonzero differentials, keyed by source element.
    pub fn differentials(&self) -> &BTreeMap<Key, GradedVector> {
        &self.differential
    }

    /// `d` applied to a basis element.
    pub fn d_basis(&self, key: &Key) -> GradedVector {
        self.differential.get(key).cloned().unwrap_or_else(|| GradedVector::zero(&self.basis))
    }

    /// `d` extended linearly.
    pub fn d(&self, v: &GradedVector) -> Result<GradedVector> {
        let mut out = GradedVector::zero(&self.basis);
        for (k, c) in v.terms() {
            if let Some(dk) = self.differential.get(k) {
                out = out.add(&dk.scale(c))?;
            }
        }
        Ok(out)
    }

    /// Basis elements of degree `i`, in key order.
    pub fn degree_basis(&self, i: i64) -> Vec<Key> {
        self.basis.elements().filter(|e| e.degree == i).map(|e| e.key).collect()
    }

    /// Degrees with a nonempty basis.
    pub fn degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.basis.elements().map(|e| e.degree).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Checks that `d` lowers degree by one and that `d∘d = 0`, reporting
    /// the first offending basis element in key order.
    pub fn validate(&self) -> std::result::Result<(), ComplexViolation> {
        for el in self.basis.elements() {
            let dv = self.d_basis(&el.key);
            for (term, term_degree, _) in dv.graded_terms() {
                if term_degree != el.degree - 1 {
                    return Err(ComplexViolation::DegreeMismatch {
                        element: el.key.clone(),
                        degree: el.degree,
                        term: term.clone(),
                        term_degree,
                    });
                }
            }
        }
        for el in self.basis.elements() {
            let ddv = self.d(&self.d_basis(&el.key)).expect("single ambient");
            if !ddv.is_zero() {
                return Err(ComplexViolation::NonzeroSquare { element: el.key, square: ddv });
            }
        }
        Ok(())
    }

    fn differential_matrix(&self, i: i64) -> Vec<Vec<Rational>> {
        let cols = self.degree_basis(i);
        let rows = self.degree_basis(i - 1);
        rows.iter()
            .map(|r| cols.iter().map(|c| self.d_basis(c).coeff(r)).collect())
            .collect()
    }

    /// `betti_i = dim ker d_i - dim im d_{i+1}` for every degree with a
    /// nonempty basis.
    pub fn homology_betti(&self) -> Result<BTreeMap<i64, usize>> {
        self.validate().map_err(|v| Error::ComplexInvalid(v.to_string()))?;
        let degrees = self.degrees();
        let ranks: BTreeMap<i64, usize> =
            degrees.iter().map(|&i| (i, linalg::rank(self.differential_matrix(i)))).collect();
        Ok(degrees
            .iter()
            .map(|&i| {
                let dim = self.degree_basis(i).len();
                let rank_out = ranks[&i];
                let rank_in = ranks.get(&(i + 1)).copied().unwrap_or(0);
                (i, dim - rank_out - rank_in)
            })
            .collect())
    }

    /// `Σ (-1)^i dim C_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.basis.elements().map(|e| if e.degree.rem_euclid(2) == 0 { 1 } else { -1 }).sum()
    }
}

/// `Σ (-1)^i betti_i`.
pub fn betti_euler(betti: &BTreeMap<i64, usize>) -> i64 {
    betti
        .iter()
        .map(|(&i, &b)| if i.rem_euclid(2) == 0 { b as i64 } else { -(b as i64) })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(s: &str) -> Key {
        Key::from(s)
    }

    fn one() -> Rational {
        Rational::one()
    }

    #[test]
    fn zero_differential_is_valid() {
        let c = ChainComplex::new([BasisElement::new("p", 0)], []).unwrap();
        assert_eq!(c.validate(), Ok(()));
        assert_eq!(c.homology_betti().unwrap(), BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn interval_complex() {
        let c = ChainComplex::new(
            [BasisElement::new("e", 1), BasisElement::new("v0", 0), BasisElement::new("v1", 0)],
            [(k("e"), vec![(k("v1"), one()), (k("v0"), -one())])],
        )
        .unwrap();
        assert_eq!(c.validate(), Ok(()));
        assert_eq!(c.homology_betti().unwrap(), BTreeMap::from([(0, 1), (1, 0)]));
    }

    #[test]
    fn circle_complex() {
        let c = ChainComplex::new([BasisElement::new("e", 1), BasisElement::new("v", 0)], []).unwrap();
        assert_eq!(c.homology_betti().unwrap(), BTreeMap::from([(0, 1), (1, 1)]));
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn nonzero_square_reported() {
        let c = ChainComplex::new(
            [BasisElement::new("e", 2), BasisElement::new("v", 1), BasisElement::new("w", 0)],
            [(k("e"), vec![(k("v"), one())]), (k("v"), vec![(k("w"), one())])],
        )
        .unwrap();
        match c.validate() {
            Err(ComplexViolation::NonzeroSquare { element, square }) => {
                assert_eq!(element, k("e"));
                assert_eq!(square.coeff(&k("w")), one());
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(c.homology_betti(), Err(Error::ComplexInvalid(_))));
    }

    #[test]
    fn degree_violation_reported() {
        let c = ChainComplex::new(
            [BasisElement::new("e", 2), BasisElement::new("w", 0)],
            [(k("e"), vec![(k("w"), one())])],
        )
        .unwrap();
        assert!(matches!(c.validate(), Err(ComplexViolation::DegreeMismatch { .. })));
    }

    #[test]
    fn unknown_differential_source() {
        let r = ChainComplex::new([BasisElement::new("e", 1)], [(k("x"), vec![])]);
        assert!(matches!(r, Err(Error::UnknownBasisKey { .. })));
    }
}
