//! Representations of a graded category on object modules `H(x)`, and the
//! induced action of `HG(c,c)` on `⊕ H(c(i))`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::category::{BasisMorphism, GradedCategory, ObjectId};
use crate::error::{Error, Result};
use crate::graded::{linear_combine, Basis, BasisElement, GradedVector, Key};
use crate::homatrix::{HomMatrix, IndexMap};
use crate::rational::Rational;

/// `morphism · element = Σ terms`, with `morphism.source` the module's object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionEntry {
    pub morphism: BasisMorphism,
    pub element: Key,
    pub terms: Vec<(Key, Rational)>,
}

/// Per generator id, `(element, image terms)` rows.
pub type GeneratorAction = BTreeMap<String, Vec<(Key, Vec<(Key, Rational)>)>>;

/// A declared module `H(x)` and the action of morphisms out of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectModule {
    pub object: ObjectId,
    pub basis: Vec<BasisElement>,
    pub action: Vec<ActionEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct ActionKey {
    source: ObjectId,
    target: ObjectId,
    morphism: Key,
    element: Key,
}

/// A validated family of object modules with a composition-compatible action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    modules: BTreeMap<ObjectId, Arc<Basis>>,
    action: BTreeMap<ActionKey, GradedVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleViolation {
    Identity { object: ObjectId, element: Key },
    Degree { morphism: BasisMorphism, element: Key, term: Key },
    Composition { g: BasisMorphism, f: BasisMorphism, element: Key },
}

impl fmt::Display for ModuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleViolation::Identity { object, element } => {
                write!(f, "identity of {object} does not fix {element}")
            }
            ModuleViolation::Degree { morphism, element, term } => {
                write!(f, "({morphism}) . {element} contains {term} of the wrong degree")
            }
            ModuleViolation::Composition { g, f: ff, element } => {
                write!(f, "(g o f) . v != g . (f . v) for g = {g}, f = {ff}, v = {element}")
            }
        }
    }
}

fn module_name(x: &ObjectId) -> String {
    format!("H({x})")
}

impl Representation {
    /// Loads and validates the modules. Basis degrees are intrinsic; the
    /// effective degree subtracts the object's dimension.
    pub fn new(category: &GradedCategory, modules: impl IntoIterator<Item = ObjectModule>) -> Result<Self> {
        let modules: Vec<ObjectModule> = modules.into_iter().collect();
        let mut bases = BTreeMap::new();
        for m in &modules {
            category.object(&m.object)?;
            let basis = Arc::new(Basis::new(module_name(&m.object), m.basis.iter().cloned())?);
            if bases.insert(m.object.clone(), basis).is_some() {
                return Err(Error::DuplicateId(module_name(&m.object)));
            }
        }
        let mut action = BTreeMap::new();
        for m in modules {
            let src_basis = Arc::clone(&bases[&m.object]);
            for e in m.action {
                if e.morphism.source != m.object {
                    return Err(Error::InvalidModule(format!(
                        "module {} declares the action of {}",
                        m.object, e.morphism
                    )));
                }
                let hom = category.hom(&e.morphism.source, &e.morphism.target)?;
                if !hom.contains(&e.morphism.key) {
                    return Err(Error::UnknownBasisKey { key: e.morphism.key.clone(), ambient: hom.name().to_string() });
                }
                if !src_basis.contains(&e.element) {
                    return Err(Error::UnknownBasisKey { key: e.element.clone(), ambient: src_basis.name().to_string() });
                }
                let tgt_basis = bases
                    .get(&e.morphism.target)
                    .ok_or_else(|| Error::ModuleUndefined(e.morphism.target.clone()))?;
                let value = GradedVector::from_terms(tgt_basis, e.terms)?;
                let key = ActionKey {
                    source: e.morphism.source.clone(),
                    target: e.morphism.target.clone(),
                    morphism: e.morphism.key.clone(),
                    element: e.element.clone(),
                };
                if action.insert(key, value).is_some() {
                    return Err(Error::DuplicateId(format!("action of {} on {}", e.morphism, e.element)));
                }
            }
        }
        let rep = Representation { modules: bases, action };
        rep.check(category).map_err(|v| Error::InvalidModule(v.to_string()))?;
        Ok(rep)
    }

    /// Representation of a free category determined by the action of each
    /// generator; longer paths act by composing generator actions.
    ///
    /// `generator_action` maps a generator id to `(element, image terms)`
    /// rows; missing rows act as zero.
    pub fn from_generators(
        category: &GradedCategory,
        bases: BTreeMap<ObjectId, Vec<BasisElement>>,
        generator_action: &GeneratorAction,
    ) -> Result<Self> {
        if !category.is_free() {
            return Err(Error::InvalidModule("generator actions need a free category".into()));
        }
        let mut modules: BTreeMap<ObjectId, Arc<Basis>> = BTreeMap::new();
        for (x, els) in &bases {
            category.object(x)?;
            modules.insert(x.clone(), Arc::new(Basis::new(module_name(x), els.iter().cloned())?));
        }
        let gens: BTreeMap<&str, _> = category.generators().into_iter().map(|g| (g.id.as_str(), g)).collect();
        for id in generator_action.keys() {
            if !gens.contains_key(id.as_str()) {
                return Err(Error::UnknownGenerator(id.clone()));
            }
        }
        let shell = Representation { modules: modules.clone(), action: BTreeMap::new() };
        let act_gen = |gen: &str, v: &GradedVector| -> Result<GradedVector> {
            let g = gens[gen];
            let tgt = shell.module(&g.target)?;
            let mut out = GradedVector::zero(tgt);
            let rows = generator_action.get(gen);
            for (k, c) in v.terms() {
                let Some((_, image)) = rows.and_then(|r| r.iter().find(|(e, _)| e == k)) else { continue };
                out = out.add(&GradedVector::from_terms(tgt, image.iter().cloned())?.scale(c))?;
            }
            Ok(out)
        };

        let mut action = BTreeMap::new();
        for (x, y, hom) in category.homs() {
            if !modules.contains_key(x) {
                continue;
            }
            for path in hom.keys() {
                if path.is_empty() {
                    continue;
                }
                if !modules.contains_key(y) {
                    return Err(Error::ModuleUndefined(y.clone()));
                }
                for el in modules[x].keys() {
                    let mut v = GradedVector::basis(&modules[x], el)?;
                    // rightmost generator acts first
                    for gen in path.0.iter().rev() {
                        v = act_gen(gen, &v)?;
                    }
                    if !v.is_zero() {
                        action.insert(
                            ActionKey { source: x.clone(), target: y.clone(), morphism: path.clone(), element: el.clone() },
                            v,
                        );
                    }
                }
            }
        }
        let rep = Representation { modules, action };
        rep.check(category).map_err(|v| Error::InvalidModule(v.to_string()))?;
        Ok(rep)
    }

    pub fn module(&self, x: &ObjectId) -> Result<&Arc<Basis>> {
        self.modules.get(x).ok_or_else(|| Error::ModuleUndefined(x.clone()))
    }

    pub fn objects(&self) -> impl Iterator<Item = &ObjectId> {
        self.modules.keys()
    }

    /// Declared modules in object order, with every stored action row.
    pub fn to_modules(&self) -> Vec<ObjectModule> {
        self.modules
            .iter()
            .map(|(x, basis)| ObjectModule {
                object: x.clone(),
                basis: basis.elements().collect(),
                action: self
                    .action
                    .iter()
                    .filter(|(k, _)| &k.source == x)
                    .map(|(k, v)| ActionEntry {
                        morphism: BasisMorphism::new(k.source.clone(), k.target.clone(), k.morphism.clone()),
                        element: k.element.clone(),
                        terms: v.terms().iter().map(|(k, c)| (k.clone(), c.clone())).collect(),
                    })
                    .collect(),
            })
            .collect()
    }

    /// Basis morphism `f ∈ hom(x,y)` acting on basis element `v ∈ H(x)`.
    pub fn act_basis(&self, x: &ObjectId, y: &ObjectId, f: &Key, v: &Key) -> Result<GradedVector> {
        let src = self.module(x)?;
        let tgt = self.module(y)?;
        let key = ActionKey { source: x.clone(), target: y.clone(), morphism: f.clone(), element: v.clone() };
        if let Some(out) = self.action.get(&key) {
            return Ok(out.clone());
        }
        if f.is_empty() && x == y {
            return GradedVector::basis(src, v);
        }
        Ok(GradedVector::zero(tgt))
    }

    /// `f · v` extended bilinearly, for `f ∈ hom(x,y)` and `v ∈ H(x)`.
    pub fn act(&self, x: &ObjectId, y: &ObjectId, f: &GradedVector, v: &GradedVector) -> Result<GradedVector> {
        let mut parts = Vec::new();
        for (fk, fc) in f.terms() {
            for (vk, vc) in v.terms() {
                parts.push((fc * vc, self.act_basis(x, y, fk, vk)?));
            }
        }
        if parts.is_empty() {
            return Ok(GradedVector::zero(self.module(y)?));
        }
        linear_combine(parts.iter().map(|(c, v)| (c.clone(), v)))
    }

    /// Identity, degree-additivity and composition compatibility on every
    /// basis triple whose composite stays within truncation.
    pub fn check(&self, category: &GradedCategory) -> std::result::Result<(), ModuleViolation> {
        let bm = |s: &ObjectId, t: &ObjectId, k: &Key| BasisMorphism::new(s.clone(), t.clone(), k.clone());
        for (x, basis) in &self.modules {
            for v in basis.keys() {
                let out = self.act_basis(x, x, &Key::empty(), v).expect("declared module");
                if out != GradedVector::basis(basis, v).expect("own basis") {
                    return Err(ModuleViolation::Identity { object: x.clone(), element: v.clone() });
                }
            }
        }
        for (k, out) in &self.action {
            let fdeg = category.hom(&k.source, &k.target).ok().and_then(|h| h.degree(&k.morphism)).unwrap_or(0);
            let vdeg = self.modules[&k.source].degree(&k.element).unwrap_or(0);
            for (term, d, _) in out.graded_terms() {
                if d != fdeg + vdeg {
                    return Err(ModuleViolation::Degree {
                        morphism: bm(&k.source, &k.target, &k.morphism),
                        element: k.element.clone(),
                        term: term.clone(),
                    });
                }
            }
        }
        for (x, hx) in &self.modules {
            for y in self.modules.keys() {
                let Ok(hxy) = category.hom(x, y) else { continue };
                for f in hxy.keys() {
                    for z in self.modules.keys() {
                        let Ok(hyz) = category.hom(y, z) else { continue };
                        for g in hyz.keys() {
                            let Ok(gf) = category.compose_basis(x, y, z, g, f) else { continue };
                            for v in hx.keys() {
                                let vv = GradedVector::basis(hx, v).expect("own basis");
                                let lhs = self.act(x, z, &gf, &vv);
                                let rhs = self
                                    .act_basis(x, y, f, v)
                                    .and_then(|fv| self.act(y, z, &GradedVector::basis(hyz, g)?, &fv));
                                if lhs.ok() != rhs.ok() {
                                    return Err(ModuleViolation::Composition {
                                        g: bm(y, z, g),
                                        f: bm(x, y, f),
                                        element: v.clone(),
                                    });
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

/// An element of `⊕_i H(c(i))`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ModuleVector {
    index: IndexMap,
    components: BTreeMap<usize, GradedVector>,
}

impl ModuleVector {
    pub fn zero(index: &IndexMap) -> Self {
        ModuleVector { index: index.clone(), components: BTreeMap::new() }
    }

    /// Builds from `(slot, terms)` pairs; repeated slots are summed.
    pub fn new(
        rep: &Representation,
        index: &IndexMap,
        components: impl IntoIterator<Item = (usize, Vec<(Key, Rational)>)>,
    ) -> Result<Self> {
        let mut out = ModuleVector::zero(index);
        for (i, terms) in components {
            if i >= index.len() {
                return Err(Error::IndexMismatch(format!("slot {i} outside an index map of size {}", index.len())));
            }
            let v = GradedVector::from_terms(rep.module(index.get(i))?, terms)?;
            out.add_component(i, v)?;
        }
        Ok(out)
    }

    fn add_component(&mut self, i: usize, v: GradedVector) -> Result<()> {
        let sum = match self.components.remove(&i) {
            Some(old) => old.add(&v)?,
            None => v,
        };
        if !sum.is_zero() {
            self.components.insert(i, sum);
        }
        Ok(())
    }

    pub fn index(&self) -> &IndexMap {
        &self.index
    }

    pub fn component(&self, i: usize) -> Option<&GradedVector> {
        self.components.get(&i)
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &GradedVector)> {
        self.components.iter().map(|(&i, v)| (i, v))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn add(&self, other: &ModuleVector) -> Result<Self> {
        if self.index != other.index {
            return Err(Error::IndexMismatch("module vectors over different index maps".into()));
        }
        let mut out = self.clone();
        for (&i, v) in &other.components {
            out.add_component(i, v.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = ModuleVector::zero(&self.index);
        if !s.is_zero() {
            out.components = self.components.iter().map(|(&i, v)| (i, v.scale(s))).collect();
        }
        out
    }
}

/// `(Av)_i = Σ_j A_{ij} · v_j` for `A ∈ HG(c,d)` and `v ∈ ⊕ H(c(j))`.
pub fn hg_act(rep: &Representation, a: &HomMatrix, v: &ModuleVector) -> Result<ModuleVector> {
    let (c, d) = (v.index(), a.target());
    if a.source() != c {
        return Err(Error::IndexMismatch("matrix source and vector index maps differ".into()));
    }
    let mut out = ModuleVector::zero(d);
    for ((i, j), aij) in a.entries() {
        let Some(vj) = v.component(j) else { continue };
        out.add_component(i, rep.act(c.get(j), d.get(i), aij, vj)?)?;
    }
    Ok(out)
}
