//! Homological matrices `HG(c,d)` and cobordism elements.
//!
//! A matrix in `HG(c,d)` has rows indexed by `d` and columns by `c`; the
//! entry `(i, j)` lives in `hom(c(j), d(i))`. Its effective degree is the
//! intrinsic degree shifted down by `dim(d(i))`.

use std::collections::BTreeMap;

use crate::category::{GradedCategory, Morphism, ObjectId};
use crate::error::{Error, Result};
use crate::graded::{GradedVector, Key};
use crate::perm::Permutation;
use crate::rational::Rational;

/// A map `c: [n] → objects`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexMap {
    objects: Vec<ObjectId>,
}

impl IndexMap {
    pub fn new(category: &GradedCategory, objects: Vec<ObjectId>) -> Result<Self> {
        if objects.is_empty() {
            return Err(Error::IndexMismatch("index maps must have at least one index".into()));
        }
        for o in &objects {
            category.object(o)?;
        }
        Ok(IndexMap { objects })
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn get(&self, i: usize) -> &ObjectId {
        &self.objects[i]
    }

    pub fn objects(&self) -> &[ObjectId] {
        &self.objects
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HomMatrix {
    source: IndexMap,
    target: IndexMap,
    entries: BTreeMap<(usize, usize), GradedVector>,
}

impl HomMatrix {
    pub fn zero(source: &IndexMap, target: &IndexMap) -> Self {
        HomMatrix { source: source.clone(), target: target.clone(), entries: BTreeMap::new() }
    }

    /// Builds a matrix from `((row, col), terms)` entries; repeated
    /// positions are summed and zero entries dropped.
    pub fn new(
        category: &GradedCategory,
        source: &IndexMap,
        target: &IndexMap,
        entries: impl IntoIterator<Item = ((usize, usize), Vec<(Key, Rational)>)>,
    ) -> Result<Self> {
        let mut m = HomMatrix::zero(source, target);
        for ((i, j), terms) in entries {
            let v = m.check_position(category, i, j, terms)?;
            m.add_entry(i, j, v)?;
        }
        Ok(m)
    }

    fn check_position(
        &self,
        category: &GradedCategory,
        i: usize,
        j: usize,
        terms: Vec<(Key, Rational)>,
    ) -> Result<GradedVector> {
        if i >= self.target.len() || j >= self.source.len() {
            return Err(Error::IndexMismatch(format!(
                "entry ({i},{j}) outside a {}x{} matrix",
                self.target.len(),
                self.source.len()
            )));
        }
        GradedVector::from_terms(category.hom(self.source.get(j), self.target.get(i))?, terms)
    }

    fn add_entry(&mut self, i: usize, j: usize, v: GradedVector) -> Result<()> {
        let sum = match self.entries.remove(&(i, j)) {
            Some(old) => old.add(&v)?,
            None => v,
        };
        if !sum.is_zero() {
            self.entries.insert((i, j), sum);
        }
        Ok(())
    }

    /// `E_{i,j}(m)`: `m` at `(i, j)`, zero elsewhere.
    pub fn single_entry(
        category: &GradedCategory,
        source: &IndexMap,
        target: &IndexMap,
        i: usize,
        j: usize,
        m: &Morphism,
    ) -> Result<Self> {
        let terms = m.value.terms().iter().map(|(k, c)| (k.clone(), c.clone())).collect();
        let mut out = HomMatrix::zero(source, target);
        let v = out.check_position(category, i, j, terms)?;
        if &m.source != source.get(j) || &m.target != target.get(i) {
            return Err(Error::CompositionMismatch(format!(
                "hom({},{}) does not fit at ({i},{j})",
                m.source, m.target
            )));
        }
        out.add_entry(i, j, v)?;
        Ok(out)
    }

    /// Unit of `HG(c,c)`.
    pub fn identity(category: &GradedCategory, c: &IndexMap) -> Result<Self> {
        let mut m = HomMatrix::zero(c, c);
        for i in 0..c.len() {
            m.entries.insert((i, i), category.identity(c.get(i))?.value);
        }
        Ok(m)
    }

    pub fn source(&self) -> &IndexMap {
        &self.source
    }

    pub fn target(&self) -> &IndexMap {
        &self.target
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&GradedVector> {
        self.entries.get(&(i, j))
    }

    /// Nonzero entries in `(row, col)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &GradedVector)> {
        self.entries.iter().map(|(&p, v)| (p, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry degree shifted down by `dim(d(i))`; `None` for zero or
    /// inhomogeneous entries.
    pub fn effective_degree(&self, category: &GradedCategory, i: usize, j: usize) -> Result<Option<i64>> {
        let dim = category.dim(self.target.get(i))? as i64;
        Ok(self.entry(i, j).and_then(GradedVector::degree).map(|d| d - dim))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = HomMatrix::zero(&self.source, &self.target);
        if !s.is_zero() {
            out.entries = self.entries.iter().map(|(&p, v)| (p, v.scale(s))).collect();
        }
        out
    }

    pub fn add(&self, other: &HomMatrix) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::IndexMismatch("adding matrices of different shapes".into()));
        }
        let mut out = self.clone();
        for (&(i, j), v) in &other.entries {
            out.add_entry(i, j, v.clone())?;
        }
        Ok(out)
    }

    /// `(AB)_{ki} = Σ_j A_{kj} ∘ B_{ji}` for `A = self ∈ HG(d,e)` and
    /// `B = rhs ∈ HG(c,d)`.
    pub fn product(&self, category: &GradedCategory, rhs: &HomMatrix) -> Result<Self> {
        if self.source != rhs.target {
            return Err(Error::IndexMismatch(format!(
                "left factor has source {:?}, right factor has target {:?}",
                self.source.objects, rhs.target.objects
            )));
        }
        let mut by_col: BTreeMap<usize, Vec<(usize, &GradedVector)>> = BTreeMap::new();
        for (&(k, j), a) in &self.entries {
            by_col.entry(j).or_default().push((k, a));
        }
        let mut out = HomMatrix::zero(&rhs.source, &self.target);
        for (&(j, i), b) in &rhs.entries {
            let Some(col) = by_col.get(&j) else { continue };
            for &(k, a) in col {
                let v = category.compose_vectors(rhs.source.get(i), rhs.target.get(j), self.target.get(k), a, b)?;
                out.add_entry(k, i, v)?;
            }
        }
        Ok(out)
    }
}

/// A pair `(α, t)` with `t_i ∈ hom(c(i), c(α(i)))`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CobordismElement {
    index: IndexMap,
    alpha: Permutation,
    t: Vec<GradedVector>,
}

impl CobordismElement {
    pub fn new(
        category: &GradedCategory,
        index: &IndexMap,
        alpha: Permutation,
        t: Vec<Morphism>,
    ) -> Result<Self> {
        if alpha.len() != index.len() {
            return Err(Error::ArityMismatch { expected: index.len(), found: alpha.len() });
        }
        if t.len() != index.len() {
            return Err(Error::ArityMismatch { expected: index.len(), found: t.len() });
        }
        let mut values = Vec::with_capacity(t.len());
        for (i, m) in t.into_iter().enumerate() {
            let (src, dst) = (index.get(i), index.get(alpha.apply(i)));
            if &m.source != src || &m.target != dst || category.hom(src, dst)?.name() != m.value.ambient().name() {
                return Err(Error::CompositionMismatch(format!(
                    "t_{i} must lie in hom({src},{dst}), found hom({},{})",
                    m.source, m.target
                )));
            }
            values.push(m.value);
        }
        Ok(CobordismElement { index: index.clone(), alpha, t: values })
    }

    /// `(id, (id_{c(i)}))`.
    pub fn identity(category: &GradedCategory, index: &IndexMap) -> Result<Self> {
        let t = (0..index.len()).map(|i| category.identity(index.get(i))).collect::<Result<Vec<_>>>()?;
        Self::new(category, index, Permutation::identity(index.len()), t)
    }

    pub fn index(&self) -> &IndexMap {
        &self.index
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    pub fn component(&self, i: usize) -> Morphism {
        Morphism {
            source: self.index.get(i).clone(),
            target: self.index.get(self.alpha.apply(i)).clone(),
            value: self.t[i].clone(),
        }
    }

    pub fn components(&self) -> impl Iterator<Item = Morphism> + '_ {
        (0..self.t.len()).map(|i| self.component(i))
    }

    /// `(β,s) ∘ (α,t) = (β∘α, u)` with `u_i = s_{α(i)} ∘ t_i`.
    pub fn compose(category: &GradedCategory, second: &Self, first: &Self) -> Result<Self> {
        if second.index != first.index {
            return Err(Error::IndexMismatch("cobordism elements over different index maps".into()));
        }
        let u = (0..first.t.len())
            .map(|i| category.compose(&second.component(first.alpha.apply(i)), &first.component(i)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(category, &first.index, second.alpha.compose(&first.alpha), u)
    }

    /// Generalized permutation matrix with `t_i` at `(α(i), i)`.
    pub fn to_matrix(&self, category: &GradedCategory) -> Result<HomMatrix> {
        let mut m = HomMatrix::zero(&self.index, &self.index);
        for (i, t) in self.t.iter().enumerate() {
            let v = m.check_position(
                category,
                self.alpha.apply(i),
                i,
                t.terms().iter().map(|(k, c)| (k.clone(), c.clone())).collect(),
            )?;
            m.add_entry(self.alpha.apply(i), i, v)?;
        }
        Ok(m)
    }
}
