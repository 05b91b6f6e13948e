//! JSON documents for every input and output of the command-line tool.
//!
//! Rationals are strings (`"3/4"`, `"-2"`), indices are 0-based and keys are
//! arrays of strings (a path lists generator ids, last applied first; the
//! identity is `[]`). Documents produced by the `from_*` constructors are
//! canonical: terms and entries appear in key order and zero terms are
//! omitted.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::category::{BasisMorphism, CompositionEntry, GradedCategory, HomDecl, MorphGenerator, ObjectDecl, ObjectId};
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::graded::{BasisElement, GradedVector, Key};
use crate::homatrix::{CobordismElement, HomMatrix, IndexMap};
use crate::perm::Permutation;
use crate::rational::Rational;
use crate::representation::{ActionEntry, ModuleVector, ObjectModule, Representation};
use crate::sympower::{Convention, HgAlgebra, HgBasis, HgModule, ModuleBasis, SymElement};

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> serde_json::Result<T> {
    serde_json::from_str(text)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectDoc {
    pub id: ObjectId,
    pub dim: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub id: String,
    pub src: ObjectId,
    pub dst: ObjectId,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDoc {
    pub key: Key,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDoc {
    pub src: ObjectId,
    pub dst: ObjectId,
    pub basis: Vec<BasisDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphRefDoc {
    pub src: ObjectId,
    pub dst: ObjectId,
    pub path: Key,
}

/// `coeff · path`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub path: Key,
    pub coeff: Rational,
}

/// `coeff · key` in a module or complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KeyTermDoc {
    pub key: Key,
    pub coeff: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositionDoc {
    pub outer: MorphRefDoc,
    pub inner: MorphRefDoc,
    pub terms: Vec<TermDoc>,
}

/// Free form: `objects`, `generators`, `max_path_length`.
/// Table form: `objects`, `homs`, `compositions`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub objects: Vec<ObjectDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<GeneratorDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_path_length: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homs: Option<Vec<HomDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compositions: Option<Vec<CompositionDoc>>,
}

fn schema(msg: impl Into<String>) -> Error {
    Error::InvalidCategory(msg.into())
}

fn path_terms(v: &GradedVector) -> Vec<TermDoc> {
    v.terms().iter().map(|(k, c)| TermDoc { path: k.clone(), coeff: c.clone() }).collect()
}

fn key_terms(v: &GradedVector) -> Vec<KeyTermDoc> {
    v.terms().iter().map(|(k, c)| KeyTermDoc { key: k.clone(), coeff: c.clone() }).collect()
}

fn unpath(terms: &[TermDoc]) -> Vec<(Key, Rational)> {
    terms.iter().map(|t| (t.path.clone(), t.coeff.clone())).collect()
}

fn unkey(terms: &[KeyTermDoc]) -> Vec<(Key, Rational)> {
    terms.iter().map(|t| (t.key.clone(), t.coeff.clone())).collect()
}

impl CategoryDoc {
    pub fn build(&self) -> Result<GradedCategory> {
        let objects = self.objects.iter().map(|o| ObjectDecl::new(o.id.clone(), o.dim));
        match (self.max_path_length, &self.homs, &self.compositions) {
            (Some(bound), None, None) => {
                let gens = self.generators.iter().flatten().map(|g| MorphGenerator::new(g.id.clone(), g.src.clone(), g.dst.clone(), g.degree));
                GradedCategory::build_free(objects, gens, bound)
            }
            (None, homs, comps) if self.generators.is_none() => {
                let homs = homs.iter().flatten().map(|h| HomDecl {
                    source: h.src.clone(),
                    target: h.dst.clone(),
                    basis: h.basis.iter().map(|b| BasisElement::new(b.key.clone(), b.degree)).collect(),
                });
                let table = comps.iter().flatten().map(|c| CompositionEntry {
                    outer: BasisMorphism::new(c.outer.src.clone(), c.outer.dst.clone(), c.outer.path.clone()),
                    inner: BasisMorphism::new(c.inner.src.clone(), c.inner.dst.clone(), c.inner.path.clone()),
                    terms: unpath(&c.terms),
                });
                GradedCategory::from_table(objects, homs, table)
            }
            _ => Err(schema("a category has either generators and max_path_length, or homs and compositions")),
        }
    }

    pub fn from_category(c: &GradedCategory) -> Self {
        let objects = c.objects().map(|o| ObjectDoc { id: o.id.clone(), dim: o.dim }).collect();
        if let Some(bound) = c.max_path_length() {
            let generators = c
                .generators()
                .into_iter()
                .map(|g| GeneratorDoc { id: g.id.clone(), src: g.source.clone(), dst: g.target.clone(), degree: g.degree })
                .collect();
            return CategoryDoc { objects, generators: Some(generators), max_path_length: Some(bound), homs: None, compositions: None };
        }
        let homs = c
            .homs()
            .filter_map(|(x, y, b)| {
                let basis: Vec<BasisDoc> =
                    b.elements().filter(|e| !e.key.is_empty()).map(|e| BasisDoc { key: e.key, degree: e.degree }).collect();
                (!basis.is_empty()).then(|| HomDoc { src: x.clone(), dst: y.clone(), basis })
            })
            .collect();
        let mref = |m: BasisMorphism| MorphRefDoc { src: m.source, dst: m.target, path: m.key };
        let compositions = c
            .table_entries()
            .into_iter()
            .map(|(outer, inner, v)| CompositionDoc { outer: mref(outer), inner: mref(inner), terms: path_terms(v) })
            .collect();
        CategoryDoc { objects, generators: None, max_path_length: None, homs: Some(homs), compositions: Some(compositions) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub source: ObjectId,
    pub target: ObjectId,
    pub terms: Vec<TermDoc>,
}

impl MorphismDoc {
    pub fn build(&self, c: &GradedCategory) -> Result<crate::category::Morphism> {
        c.morphism(&self.source, &self.target, unpath(&self.terms))
    }

    pub fn from_morphism(m: &crate::category::Morphism) -> Self {
        MorphismDoc { source: m.source.clone(), target: m.target.clone(), terms: path_terms(&m.value) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub row: usize,
    pub col: usize,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub source: Vec<ObjectId>,
    pub target: Vec<ObjectId>,
    pub entries: Vec<EntryDoc>,
}

impl MatrixDoc {
    pub fn build(&self, c: &GradedCategory) -> Result<HomMatrix> {
        let (s, t) = (IndexMap::new(c, self.source.clone())?, IndexMap::new(c, self.target.clone())?);
        HomMatrix::new(c, &s, &t, self.entries.iter().map(|e| ((e.row, e.col), unpath(&e.terms))))
    }

    pub fn from_matrix(m: &HomMatrix) -> Self {
        MatrixDoc {
            source: m.source().objects().to_vec(),
            target: m.target().objects().to_vec(),
            entries: m.entries().map(|((row, col), v)| EntryDoc { row, col, terms: path_terms(v) }).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub path: Key,
    pub target: ObjectId,
    pub element: Key,
    pub terms: Vec<KeyTermDoc>,
}

/// `H(object)` with the action of basis morphisms out of `object`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub object: ObjectId,
    pub basis: Vec<BasisDoc>,
    pub action: Vec<ActionDoc>,
}

impl ModuleDoc {
    pub fn to_module(&self) -> ObjectModule {
        ObjectModule {
            object: self.object.clone(),
            basis: self.basis.iter().map(|b| BasisElement::new(b.key.clone(), b.degree)).collect(),
            action: self
                .action
                .iter()
                .map(|a| ActionEntry {
                    morphism: BasisMorphism::new(self.object.clone(), a.target.clone(), a.path.clone()),
                    element: a.element.clone(),
                    terms: unkey(&a.terms),
                })
                .collect(),
        }
    }

    pub fn from_module(m: &ObjectModule) -> Self {
        let mut action: Vec<ActionDoc> = m
            .action
            .iter()
            .map(|a| ActionDoc {
                path: a.morphism.key.clone(),
                target: a.morphism.target.clone(),
                element: a.element.clone(),
                terms: a.terms.iter().map(|(k, c)| KeyTermDoc { key: k.clone(), coeff: c.clone() }).collect(),
            })
            .collect();
        action.sort_by(|a, b| (&a.target, &a.path, &a.element).cmp(&(&b.target, &b.path, &b.element)));
        ModuleDoc {
            object: m.object.clone(),
            basis: m.basis.iter().map(|b| BasisDoc { key: b.key.clone(), degree: b.degree }).collect(),
            action,
        }
    }

    /// One document per declared module.
    pub fn from_representation(rep: &Representation) -> Vec<Self> {
        rep.to_modules().iter().map(ModuleDoc::from_module).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    pub slot: usize,
    pub terms: Vec<KeyTermDoc>,
}

/// An element of `⊕_i H(index[i])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleVectorDoc {
    pub index: Vec<ObjectId>,
    pub components: Vec<ComponentDoc>,
}

impl ModuleVectorDoc {
    pub fn build(&self, c: &GradedCategory, rep: &Representation) -> Result<ModuleVector> {
        let index = IndexMap::new(c, self.index.clone())?;
        ModuleVector::new(rep, &index, self.components.iter().map(|x| (x.slot, unkey(&x.terms))))
    }

    pub fn from_vector(v: &ModuleVector) -> Self {
        ModuleVectorDoc {
            index: v.index().objects().to_vec(),
            components: v.components().map(|(slot, x)| ComponentDoc { slot, terms: key_terms(x) }).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialDoc {
    pub source: Key,
    pub terms: Vec<KeyTermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub basis: Vec<BasisDoc>,
    pub differential: Vec<DifferentialDoc>,
}

impl ComplexDoc {
    pub fn build(&self) -> Result<ChainComplex> {
        ChainComplex::new(
            self.basis.iter().map(|b| BasisElement::new(b.key.clone(), b.degree)),
            self.differential.iter().map(|d| (d.source.clone(), unkey(&d.terms))),
        )
    }

    pub fn from_complex(c: &ChainComplex) -> Self {
        ComplexDoc {
            basis: c.basis().elements().map(|e| BasisDoc { key: e.key, degree: e.degree }).collect(),
            differential: c.differentials().iter().map(|(k, v)| DifferentialDoc { source: k.clone(), terms: key_terms(v) }).collect(),
        }
    }
}

/// `(α, t)`: `t[i]` lies in `hom(index[i], index[alpha[i]])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CobordismDoc {
    pub index: Vec<ObjectId>,
    pub alpha: Vec<usize>,
    pub t: Vec<Vec<TermDoc>>,
}

impl CobordismDoc {
    pub fn build(&self, c: &GradedCategory) -> Result<CobordismElement> {
        let index = IndexMap::new(c, self.index.clone())?;
        let alpha = Permutation::new(self.alpha.clone())?;
        for found in [alpha.len(), self.t.len()] {
            check_arity(index.len(), found)?;
        }
        let t = self
            .t
            .iter()
            .enumerate()
            .map(|(i, terms)| c.morphism(index.get(i), index.get(alpha.apply(i)), unpath(terms)))
            .collect::<Result<Vec<_>>>()?;
        CobordismElement::new(c, &index, alpha, t)
    }

    pub fn from_element(e: &CobordismElement) -> Self {
        CobordismDoc {
            index: e.index().objects().to_vec(),
            alpha: e.alpha().images().to_vec(),
            t: e.components().map(|m| path_terms(&m.value)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixUnitDoc {
    pub row: usize,
    pub col: usize,
    pub path: Key,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymMatrixTermDoc {
    pub coeff: Rational,
    pub factors: Vec<MatrixUnitDoc>,
}

/// `Σ coeff · E₁⊗…⊗E_m` in `S^m(HG(index, index))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymMatrixDoc {
    pub index: Vec<ObjectId>,
    pub arity: usize,
    pub terms: Vec<SymMatrixTermDoc>,
}

fn check_arity(arity: usize, found: usize) -> Result<()> {
    if arity != found {
        return Err(Error::ArityMismatch { expected: arity, found });
    }
    Ok(())
}

impl SymMatrixDoc {
    /// Loads the element; `index` is returned for building the algebra.
    pub fn index_map(&self, c: &GradedCategory) -> Result<IndexMap> {
        IndexMap::new(c, self.index.clone())
    }

    pub fn build(&self, algebra: &HgAlgebra, convention: Convention) -> Result<SymElement<HgBasis>> {
        if self.index != algebra.index.objects() {
            return Err(Error::IndexMismatch("sym element and algebra index maps differ".into()));
        }
        let mut out = SymElement::zero(self.arity, convention);
        for t in &self.terms {
            check_arity(self.arity, t.factors.len())?;
            let mut factors = Vec::with_capacity(t.factors.len());
            for f in &t.factors {
                let g = HgBasis { row: f.row, col: f.col, key: f.path.clone() };
                if f.row >= algebra.index.len() || f.col >= algebra.index.len() {
                    return Err(Error::IndexMismatch(format!("({}, {}) outside the index map", f.row, f.col)));
                }
                let hom = algebra.category.hom(algebra.index.get(f.col), algebra.index.get(f.row))?;
                if !hom.contains(&f.path) {
                    return Err(Error::UnknownBasisKey { key: f.path.clone(), ambient: hom.name() });
                }
                factors.push(vec![(Rational::one(), g)]);
            }
            out = out.add(&SymElement::from_tensor(algebra, convention, &t.coeff, &factors)?)?;
        }
        Ok(out)
    }

    pub fn from_element(index: &IndexMap, e: &SymElement<HgBasis>) -> Self {
        SymMatrixDoc {
            index: index.objects().to_vec(),
            arity: e.arity(),
            terms: e
                .terms()
                .iter()
                .map(|(k, c)| SymMatrixTermDoc {
                    coeff: c.clone(),
                    factors: k.iter().map(|g| MatrixUnitDoc { row: g.row, col: g.col, path: g.key.clone() }).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlotKeyDoc {
    pub slot: usize,
    pub key: Key,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymVectorTermDoc {
    pub coeff: Rational,
    pub factors: Vec<SlotKeyDoc>,
}

/// `Σ coeff · v₁⊗…⊗v_m` in `S^m(⊕ H(index[i]))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymVectorDoc {
    pub index: Vec<ObjectId>,
    pub arity: usize,
    pub terms: Vec<SymVectorTermDoc>,
}

impl SymVectorDoc {
    pub fn build(&self, module: &HgModule, convention: Convention) -> Result<SymElement<ModuleBasis>> {
        if self.index != module.index.objects() {
            return Err(Error::IndexMismatch("sym vector and module index maps differ".into()));
        }
        let mut out = SymElement::zero(self.arity, convention);
        for t in &self.terms {
            check_arity(self.arity, t.factors.len())?;
            let mut factors = Vec::with_capacity(t.factors.len());
            for f in &t.factors {
                if f.slot >= module.index.len() {
                    return Err(Error::IndexMismatch(format!("slot {} outside the index map", f.slot)));
                }
                let basis = module.representation.module(module.index.get(f.slot))?;
                if !basis.contains(&f.key) {
                    return Err(Error::UnknownBasisKey { key: f.key.clone(), ambient: basis.name() });
                }
                factors.push(vec![(Rational::one(), ModuleBasis { slot: f.slot, key: f.key.clone() })]);
            }
            out = out.add(&SymElement::from_tensor(module, convention, &t.coeff, &factors)?)?;
        }
        Ok(out)
    }

    pub fn from_element(index: &IndexMap, e: &SymElement<ModuleBasis>) -> Self {
        SymVectorDoc {
            index: index.objects().to_vec(),
            arity: e.arity(),
            terms: e
                .terms()
                .iter()
                .map(|(k, c)| SymVectorTermDoc {
                    coeff: c.clone(),
                    factors: k.iter().map(|g| SlotKeyDoc { slot: g.slot, key: g.key.clone() }).collect(),
                })
                .collect(),
        }
    }
}
