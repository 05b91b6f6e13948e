//! Finitely presented graded categories.
//!
//! Hom-spaces are finite graded bases; composition is either free path
//! concatenation (truncated at a maximum path length) or an explicit table
//! of structure constants. Identity morphisms use the empty key.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{linear_combine, Basis, BasisElement, GradedVector, Key};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectId(pub String);

impl ObjectId {
    pub fn new(s: impl Into<String>) -> Self {
        ObjectId(s.into())
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ObjectId {
    fn from(s: &str) -> Self {
        ObjectId(s.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ObjectDecl {
    pub id: ObjectId,
    /// Dimension of the submanifold the object stands for.
    pub dim: u32,
}

impl ObjectDecl {
    pub fn new(id: impl Into<ObjectId>, dim: u32) -> Self {
        ObjectDecl { id: id.into(), dim }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MorphGenerator {
    pub id: String,
    pub source: ObjectId,
    pub target: ObjectId,
    pub degree: i64,
}

impl MorphGenerator {
    pub fn new(id: impl Into<String>, source: impl Into<ObjectId>, target: impl Into<ObjectId>, degree: i64) -> Self {
        MorphGenerator { id: id.into(), source: source.into(), target: target.into(), degree }
    }
}

/// A basis element of `hom(source, target)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasisMorphism {
    pub source: ObjectId,
    pub target: ObjectId,
    pub key: Key,
}

impl BasisMorphism {
    pub fn new(source: impl Into<ObjectId>, target: impl Into<ObjectId>, key: impl Into<Key>) -> Self {
        BasisMorphism { source: source.into(), target: target.into(), key: key.into() }
    }
}

impl fmt::Display for BasisMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self.key, self.source, self.target)
    }
}

/// Declared basis of one hom-space of a table category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomDecl {
    pub source: ObjectId,
    pub target: ObjectId,
    pub basis: Vec<BasisElement>,
}

/// One structure constant row: `outer ∘ inner = Σ coeff·key`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionEntry {
    pub outer: BasisMorphism,
    pub inner: BasisMorphism,
    pub terms: Vec<(Key, Rational)>,
}

/// An element of `hom(source, target)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Morphism {
    pub source: ObjectId,
    pub target: ObjectId,
    pub value: GradedVector,
}

impl Morphism {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn degree(&self) -> Option<i64> {
        self.value.degree()
    }

    pub fn scale(&self, s: &Rational) -> Morphism {
        Morphism { source: self.source.clone(), target: self.target.clone(), value: self.value.scale(s) }
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::AmbientMismatch(
                format!("hom({},{})", self.source, self.target),
                format!("hom({},{})", other.source, other.target),
            ));
        }
        Ok(Morphism { source: self.source.clone(), target: self.target.clone(), value: self.value.add(&other.value)? })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct TableKey {
    source: ObjectId,
    middle: ObjectId,
    target: ObjectId,
    outer: Key,
    inner: Key,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Composition {
    Free { generators: BTreeMap<String, MorphGenerator>, max_path_length: usize },
    Table(BTreeMap<TableKey, GradedVector>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCategory {
    objects: BTreeMap<ObjectId, ObjectDecl>,
    homs: BTreeMap<(ObjectId, ObjectId), Arc<Basis>>,
    composition: Composition,
}

/// First failure found by [`GradedCategory::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CategoryViolation {
    Degree { outer: BasisMorphism, inner: BasisMorphism, term: Key, degree: i64, expected: i64 },
    LeftIdentity { morphism: BasisMorphism },
    RightIdentity { morphism: BasisMorphism },
    Associativity { h: BasisMorphism, g: BasisMorphism, f: BasisMorphism },
}

impl fmt::Display for CategoryViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CategoryViolation::Degree { outer, inner, term, degree, expected } => write!(
                f,
                "degree: ({outer}) o ({inner}) contains {term} of degree {degree}, expected {expected}"
            ),
            CategoryViolation::LeftIdentity { morphism } => write!(f, "left identity fails on {morphism}"),
            CategoryViolation::RightIdentity { morphism } => write!(f, "right identity fails on {morphism}"),
            CategoryViolation::Associativity { h, g, f: ff } => {
                write!(f, "associativity fails on h = {h}, g = {g}, f = {ff}")
            }
        }
    }
}

fn hom_name(x: &ObjectId, y: &ObjectId) -> String {
    format!("hom({x},{y})")
}

fn index_objects(objects: impl IntoIterator<Item = ObjectDecl>) -> Result<BTreeMap<ObjectId, ObjectDecl>> {
    let mut map = BTreeMap::new();
    for o in objects {
        if map.insert(o.id.clone(), o.clone()).is_some() {
            return Err(Error::DuplicateId(o.id.0));
        }
    }
    Ok(map)
}

impl GradedCategory {
    /// Free path category on a graded quiver, truncated at paths of length
    /// `max_path_length`.
    ///
    /// A path is keyed by its generator ids in composition order: the key
    /// `[g, f]` means "first `f`, then `g`".
    pub fn build_free(
        objects: impl IntoIterator<Item = ObjectDecl>,
        generators: impl IntoIterator<Item = MorphGenerator>,
        max_path_length: usize,
    ) -> Result<Self> {
        if max_path_length == 0 {
            return Err(Error::InvalidCategory("max_path_length must be at least 1".into()));
        }
        let objects = index_objects(objects)?;
        let mut gens = BTreeMap::new();
        for g in generators {
            if g.id.is_empty() {
                return Err(Error::InvalidCategory("generator ids must be nonempty".into()));
            }
            for end in [&g.source, &g.target] {
                if !objects.contains_key(end) {
                    return Err(Error::UnknownObject(end.clone()));
                }
            }
            if gens.insert(g.id.clone(), g.clone()).is_some() {
                return Err(Error::DuplicateId(g.id));
            }
        }

        let mut elements: BTreeMap<(ObjectId, ObjectId), Vec<BasisElement>> = BTreeMap::new();
        for x in objects.keys() {
            elements.entry((x.clone(), x.clone())).or_default().push(BasisElement::new(Key::empty(), 0));
        }
        // (source, target, key, degree) of every path of the current length
        let mut frontier: Vec<(ObjectId, ObjectId, Key, i64)> =
            gens.values().map(|g| (g.source.clone(), g.target.clone(), Key::from(g.id.as_str()), g.degree)).collect();
        for len in 1..=max_path_length {
            for (s, t, k, d) in &frontier {
                elements.entry((s.clone(), t.clone())).or_default().push(BasisElement::new(k.clone(), *d));
            }
            if len == max_path_length {
                break;
            }
            frontier = frontier
                .iter()
                .flat_map(|(s, t, k, d)| {
                    gens.values().filter(move |g| &g.source == t).map(move |g| {
                        (s.clone(), g.target.clone(), Key::from(g.id.as_str()).concat(k), d + g.degree)
                    })
                })
                .collect();
        }

        let homs = Self::hom_table(&objects, elements)?;
        Ok(GradedCategory { objects, homs, composition: Composition::Free { generators: gens, max_path_length } })
    }

    /// Category given by explicit hom bases and structure constants.
    ///
    /// Identities are added automatically with the empty key; composites
    /// involving an identity default to the identity laws unless the table
    /// overrides them. Missing table entries compose to zero.
    pub fn from_table(
        objects: impl IntoIterator<Item = ObjectDecl>,
        homs: impl IntoIterator<Item = HomDecl>,
        table: impl IntoIterator<Item = CompositionEntry>,
    ) -> Result<Self> {
        let objects = index_objects(objects)?;
        let mut elements: BTreeMap<(ObjectId, ObjectId), Vec<BasisElement>> = BTreeMap::new();
        for x in objects.keys() {
            elements.entry((x.clone(), x.clone())).or_default().push(BasisElement::new(Key::empty(), 0));
        }
        for h in homs {
            for end in [&h.source, &h.target] {
                if !objects.contains_key(end) {
                    return Err(Error::UnknownObject(end.clone()));
                }
            }
            if h.basis.iter().any(|b| b.key.is_empty()) {
                return Err(Error::InvalidCategory("the empty key is reserved for identities".into()));
            }
            elements.entry((h.source, h.target)).or_default().extend(h.basis);
        }
        let homs = Self::hom_table(&objects, elements)?;

        let mut entries = BTreeMap::new();
        for e in table {
            if e.outer.source != e.inner.target {
                return Err(Error::CompositionMismatch(format!("({}) o ({})", e.outer, e.inner)));
            }
            for m in [&e.outer, &e.inner] {
                let basis = homs.get(&(m.source.clone(), m.target.clone())).ok_or_else(|| Error::UnknownObject(m.source.clone()))?;
                if !basis.contains(&m.key) {
                    return Err(Error::UnknownBasisKey { key: m.key.clone(), ambient: basis.name().to_string() });
                }
            }
            let target = &homs[&(e.inner.source.clone(), e.outer.target.clone())];
            let value = GradedVector::from_terms(target, e.terms)?;
            let key = TableKey {
                source: e.inner.source.clone(),
                middle: e.inner.target.clone(),
                target: e.outer.target.clone(),
                outer: e.outer.key.clone(),
                inner: e.inner.key.clone(),
            };
            if entries.insert(key, value).is_some() {
                return Err(Error::DuplicateId(format!("composition ({}) o ({})", e.outer, e.inner)));
            }
        }
        Ok(GradedCategory { objects, homs, composition: Composition::Table(entries) })
    }

    fn hom_table(
        objects: &BTreeMap<ObjectId, ObjectDecl>,
        mut elements: BTreeMap<(ObjectId, ObjectId), Vec<BasisElement>>,
    ) -> Result<BTreeMap<(ObjectId, ObjectId), Arc<Basis>>> {
        let mut homs = BTreeMap::new();
        for x in objects.keys() {
            for y in objects.keys() {
                let els = elements.remove(&(x.clone(), y.clone())).unwrap_or_default();
                homs.insert((x.clone(), y.clone()), Arc::new(Basis::new(hom_name(x, y), els)?));
            }
        }
        Ok(homs)
    }

    /// The quotient of a free category by all paths longer than its bound,
    /// as a table category: over-long composites become zero instead of
    /// overflowing. Table categories are returned unchanged.
    pub fn truncated_quotient(&self) -> GradedCategory {
        let Composition::Free { max_path_length, .. } = &self.composition else {
            return self.clone();
        };
        let mut entries = BTreeMap::new();
        for ((x, y), fb) in &self.homs {
            for z in self.objects.keys() {
                let gb = &self.homs[&(y.clone(), z.clone())];
                for f in fb.keys() {
                    for g in gb.keys() {
                        if f.is_empty() || g.is_empty() {
                            continue;
                        }
                        let target = &self.homs[&(x.clone(), z.clone())];
                        let p = g.concat(f);
                        let value = if p.len() <= *max_path_length {
                            GradedVector::basis(target, &p).expect("free path")
                        } else {
                            GradedVector::zero(target)
                        };
                        entries.insert(
                            TableKey { source: x.clone(), middle: y.clone(), target: z.clone(), outer: g.clone(), inner: f.clone() },
                            value,
                        );
                    }
                }
            }
        }
        GradedCategory { objects: self.objects.clone(), homs: self.homs.clone(), composition: Composition::Table(entries) }
    }

    pub fn objects(&self) -> impl Iterator<Item = &ObjectDecl> {
        self.objects.values()
    }

    pub fn object(&self, id: &ObjectId) -> Result<&ObjectDecl> {
        self.objects.get(id).ok_or_else(|| Error::UnknownObject(id.clone()))
    }

    pub fn dim(&self, id: &ObjectId) -> Result<u32> {
        Ok(self.object(id)?.dim)
    }

    pub fn is_free(&self) -> bool {
        matches!(self.composition, Composition::Free { .. })
    }

    /// Generators of a free category, in id order (empty for tables).
    pub fn generators(&self) -> Vec<&MorphGenerator> {
        match &self.composition {
            Composition::Free { generators, .. } => generators.values().collect(),
            Composition::Table(_) => Vec::new(),
        }
    }

    pub fn max_path_length(&self) -> Option<usize> {
        match &self.composition {
            Composition::Free { max_path_length, .. } => Some(*max_path_length),
            Composition::Table(_) => None,
        }
    }

    /// Explicit table entries as `(outer, inner, value)`, in key order.
    pub fn table_entries(&self) -> Vec<(BasisMorphism, BasisMorphism, &GradedVector)> {
        match &self.composition {
            Composition::Free { .. } => Vec::new(),
            Composition::Table(t) => t
                .iter()
                .map(|(k, v)| {
                    (
                        BasisMorphism::new(k.middle.clone(), k.target.clone(), k.outer.clone()),
                        BasisMorphism::new(k.source.clone(), k.middle.clone(), k.inner.clone()),
                        v,
                    )
                })
                .collect(),
        }
    }

    pub fn hom(&self, source: &ObjectId, target: &ObjectId) -> Result<&Arc<Basis>> {
        self.homs.get(&(source.clone(), target.clone())).ok_or_else(|| {
            Error::UnknownObject(if self.objects.contains_key(source) { target.clone() } else { source.clone() })
        })
    }

    pub fn homs(&self) -> impl Iterator<Item = (&ObjectId, &ObjectId, &Arc<Basis>)> {
        self.homs.iter().map(|((x, y), b)| (x, y, b))
    }

    pub fn identity(&self, x: &ObjectId) -> Result<Morphism> {
        self.basis_morphism(x, x, &Key::empty())
    }

    pub fn basis_morphism(&self, source: &ObjectId, target: &ObjectId, key: &Key) -> Result<Morphism> {
        self.morphism(source, target, [(key.clone(), Rational::one())])
    }

    pub fn morphism(
        &self,
        source: &ObjectId,
        target: &ObjectId,
        terms: impl IntoIterator<Item = (Key, Rational)>,
    ) -> Result<Morphism> {
        let basis = self.hom(source, target)?;
        Ok(Morphism { source: source.clone(), target: target.clone(), value: GradedVector::from_terms(basis, terms)? })
    }

    pub fn zero_morphism(&self, source: &ObjectId, target: &ObjectId) -> Result<Morphism> {
        self.morphism(source, target, [])
    }

    /// Composite of basis elements `g ∈ hom(y,z)` after `f ∈ hom(x,y)`.
    pub fn compose_basis(
        &self,
        x: &ObjectId,
        y: &ObjectId,
        z: &ObjectId,
        g: &Key,
        f: &Key,
    ) -> Result<GradedVector> {
        let target = self.hom(x, z)?;
        match &self.composition {
            Composition::Free { max_path_length, .. } => {
                let path = g.concat(f);
                if path.len() > *max_path_length {
                    return Err(Error::TruncationOverflow { len: path.len(), path, bound: *max_path_length });
                }
                GradedVector::basis(target, &path)
            }
            Composition::Table(table) => {
                let key = TableKey {
                    source: x.clone(),
                    middle: y.clone(),
                    target: z.clone(),
                    outer: g.clone(),
                    inner: f.clone(),
                };
                if let Some(v) = table.get(&key) {
                    Ok(v.clone())
                } else if g.is_empty() && y == z {
                    GradedVector::basis(target, f)
                } else if f.is_empty() && x == y {
                    GradedVector::basis(target, g)
                } else {
                    Ok(GradedVector::zero(target))
                }
            }
        }
    }

    /// `g ∘ f`, extended bilinearly from the basis-level composition.
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        if g.source != f.target {
            return Err(Error::CompositionMismatch(format!(
                "hom({},{}) after hom({},{})",
                g.source, g.target, f.source, f.target
            )));
        }
        let (x, y, z) = (&f.source, &f.target, &g.target);
        let value = self.compose_vectors(x, y, z, &g.value, &f.value)?;
        Ok(Morphism { source: x.clone(), target: z.clone(), value })
    }

    /// Bilinear composite of `g ∈ hom(y,z)` and `f ∈ hom(x,y)` given as
    /// bare vectors.
    pub fn compose_vectors(
        &self,
        x: &ObjectId,
        y: &ObjectId,
        z: &ObjectId,
        g: &GradedVector,
        f: &GradedVector,
    ) -> Result<GradedVector> {
        let mut parts = Vec::new();
        for (gk, gc) in g.terms() {
            for (fk, fc) in f.terms() {
                parts.push((gc * fc, self.compose_basis(x, y, z, gk, fk)?));
            }
        }
        if parts.is_empty() {
            Ok(GradedVector::zero(self.hom(x, z)?))
        } else {
            linear_combine(parts.iter().map(|(c, v)| (c.clone(), v)))
        }
    }

    /// Checks degree additivity, identity laws and associativity on all
    /// composable basis elements whose composites stay within truncation.
    pub fn validate(&self) -> std::result::Result<(), CategoryViolation> {
        let objs: Vec<&ObjectId> = self.objects.keys().collect();
        let bm = |s: &ObjectId, t: &ObjectId, k: &Key| BasisMorphism::new(s.clone(), t.clone(), k.clone());

        for &x in &objs {
            for &y in &objs {
                let hxy = &self.homs[&(x.clone(), y.clone())];
                for el in hxy.elements() {
                    let f = &el.key;
                    let expected = GradedVector::basis(hxy, f).expect("own basis");
                    if self.compose_basis(x, y, y, &Key::empty(), f).ok().as_ref() != Some(&expected) {
                        return Err(CategoryViolation::LeftIdentity { morphism: bm(x, y, f) });
                    }
                    if self.compose_basis(x, x, y, f, &Key::empty()).ok().as_ref() != Some(&expected) {
                        return Err(CategoryViolation::RightIdentity { morphism: bm(x, y, f) });
                    }
                    for &z in &objs {
                        let hyz = &self.homs[&(y.clone(), z.clone())];
                        for gel in hyz.elements() {
                            let Ok(gf) = self.compose_basis(x, y, z, &gel.key, f) else { continue };
                            for (term, d, _) in gf.graded_terms() {
                                if d != gel.degree + el.degree {
                                    return Err(CategoryViolation::Degree {
                                        outer: bm(y, z, &gel.key),
                                        inner: bm(x, y, f),
                                        term: term.clone(),
                                        degree: d,
                                        expected: gel.degree + el.degree,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }

        // triples containing an identity are covered by the identity laws
        for &x in &objs {
            for &y in &objs {
                for f in self.homs[&(x.clone(), y.clone())].keys().filter(|k| !k.is_empty()) {
                    let fm = self.basis_morphism(x, y, f).expect("own basis");
                    for &z in &objs {
                        for g in self.homs[&(y.clone(), z.clone())].keys().filter(|k| !k.is_empty()) {
                            let gm = self.basis_morphism(y, z, g).expect("own basis");
                            let Ok(gf) = self.compose(&gm, &fm) else { continue };
                            for &w in &objs {
                                for h in self.homs[&(z.clone(), w.clone())].keys().filter(|k| !k.is_empty()) {
                                    let hm = self.basis_morphism(z, w, h).expect("own basis");
                                    let Ok(hg) = self.compose(&hm, &gm) else { continue };
                                    if let (Ok(l), Ok(r)) = (self.compose(&hg, &fm), self.compose(&hm, &gf)) {
                                        if l != r {
                                            return Err(CategoryViolation::Associativity {
                                                h: bm(z, w, h),
                                                g: bm(y, z, g),
                                                f: bm(x, y, f),
                                            });
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
