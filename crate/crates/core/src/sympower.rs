//! Graded symmetric powers `S^m(A) = (A^{⊗m})_{S_m}`.
//!
//! Elements are stored on a canonical basis: sorted tuples of basis
//! elements of the ambient algebra (or module), where swapping adjacent
//! factors `x, y` costs `(-1)^{|x||y|}` and a repeated odd factor is zero.
//!
//! The product
//!
//! ```text
//! (a₁⊗…⊗a_m)·(b₁⊗…⊗b_m) = k · Σ_{σ∈S_m} sgn(a,b,σ) (a₁b_{σ⁻¹(1)})⊗…⊗(a_m b_{σ⁻¹(m)})
//! ```
//!
//! uses `k = 1/m!` under [`Convention::Averaged`] and `k = 1` under
//! [`Convention::OrbitSum`], with `sgn(a,b,σ) = (-1)^e`,
//! `e = Σ_{i>j} |a_i b_{σ⁻¹(j)}| + Σ_{i<j, σ(i)>σ(j)} |b_i b_j|`, where the
//! degree of a product is the sum of the factor degrees.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::category::GradedCategory;
use crate::error::{Error, Result};
use crate::graded::Key;
use crate::homatrix::{CobordismElement, HomMatrix, IndexMap};
use crate::perm::Permutation;
use crate::rational::Rational;
use crate::representation::{ModuleVector, Representation};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Convention {
    /// Product carries the factor `1/m!`.
    #[default]
    Averaged,
    /// Product is the plain sum over `S_m`.
    OrbitSum,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Averaged => "averaged",
            Convention::OrbitSum => "orbit-sum",
        })
    }
}

pub const DEFAULT_MAX_ARITY: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymOptions {
    pub convention: Convention,
    /// Largest `m` for which `S_m` is enumerated.
    pub max_arity: usize,
    /// Reject odd degrees and odd object dimensions.
    pub even_mode: bool,
}

impl Default for SymOptions {
    fn default() -> Self {
        SymOptions { convention: Convention::Averaged, max_arity: DEFAULT_MAX_ARITY, even_mode: false }
    }
}

/// A finite graded basis whose elements can be symmetric-tensor factors.
pub trait GradedBasis {
    type Gen: Ord + Clone + fmt::Debug;

    /// Effective degree used for signs.
    fn degree(&self, g: &Self::Gen) -> i64;

    /// Whether `g` is admissible in even mode.
    fn is_even(&self, g: &Self::Gen) -> bool {
        self.degree(g).rem_euclid(2) == 0
    }
}

/// An algebra given by products of basis elements.
pub trait BasisAlgebra: GradedBasis {
    fn mul(&self, a: &Self::Gen, b: &Self::Gen) -> Result<Vec<(Rational, Self::Gen)>>;
}

/// A module over `A` given by the action of basis elements.
pub trait BasisModule<A: BasisAlgebra>: GradedBasis {
    fn act(&self, a: &A::Gen, v: &Self::Gen) -> Result<Vec<(Rational, Self::Gen)>>;
}

/// Result of sorting a tensor into canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Canonical<T> {
    Zero,
    Term { negative: bool, factors: Vec<T> },
}

/// Stably sorts the factors by the global key order, tracking the Koszul
/// sign `(-1)^{|x||y|}` of every adjacent transposition. Returns
/// [`Canonical::Zero`] when two equal factors have odd degree.
///
/// `degree` returns `None` for an inhomogeneous factor.
pub fn canonicalize<T: Ord + Clone>(
    factors: &[T],
    degree: impl Fn(&T) -> Option<i64>,
) -> Result<Canonical<T>> {
    let mut items: Vec<(T, bool)> = factors
        .iter()
        .map(|f| degree(f).map(|d| (f.clone(), d.rem_euclid(2) == 1)).ok_or(Error::NotHomogeneous))
        .collect::<Result<_>>()?;
    let mut negative = false;
    for i in 1..items.len() {
        let mut j = i;
        while j > 0 && items[j - 1].0 > items[j].0 {
            if items[j - 1].1 && items[j].1 {
                negative = !negative;
            }
            items.swap(j - 1, j);
            j -= 1;
        }
    }
    if items.windows(2).any(|w| w[0].1 && w[0].0 == w[1].0) {
        return Ok(Canonical::Zero);
    }
    Ok(Canonical::Term { negative, factors: items.into_iter().map(|(t, _)| t).collect() })
}

/// `Π_{i<j, σ(i)>σ(j)} (-1)^{deg_i·deg_j}`, by direct enumeration of
/// inversions.
pub fn koszul_sign_oracle(degrees: &[i64], sigma: &Permutation) -> i8 {
    let odd = sigma.inversions().filter(|&(i, j)| (degrees[i] * degrees[j]).rem_euclid(2) == 1).count();
    if odd % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The exponent `e(a,b,σ)` of the product sign, with the degree of a
/// product read as the sum of the factor degrees.
pub fn printed_sign_exponent(a: &[i64], b: &[i64], sigma: &Permutation) -> i64 {
    let inv = sigma.inverse();
    let m = a.len();
    let mut e = 0;
    for i in 0..m {
        for j in 0..i {
            e += a[i] + b[inv.apply(j)];
        }
    }
    for (i, j) in sigma.inversions() {
        e += b[i] + b[j];
    }
    e
}

pub fn printed_sign(a: &[i64], b: &[i64], sigma: &Permutation) -> i8 {
    if printed_sign_exponent(a, b, sigma).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The Koszul sign of multiplying in `A^{⊗m}` after permuting the right
/// factor: `Σ_{i>j} |a_i||b_{σ⁻¹(j)}| + Σ_{i<j, σ(i)>σ(j)} |b_i||b_j|`.
pub fn standard_sign(a: &[i64], b: &[i64], sigma: &Permutation) -> i8 {
    let inv = sigma.inverse();
    let mut e = 0;
    for i in 0..a.len() {
        for j in 0..i {
            e += a[i] * b[inv.apply(j)];
        }
    }
    for (i, j) in sigma.inversions() {
        e += b[i] * b[j];
    }
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignDiscrepancy {
    pub sigma: Permutation,
    pub printed: i8,
    pub standard: i8,
}

/// Permutations on which the printed product sign and the standard Koszul
/// sign disagree for the given factor degrees.
pub fn sign_discrepancies(a: &[i64], b: &[i64]) -> Vec<SignDiscrepancy> {
    assert_eq!(a.len(), b.len());
    Permutation::all(a.len())
        .filter_map(|sigma| {
            let (printed, standard) = (printed_sign(a, b, &sigma), standard_sign(a, b, &sigma));
            (printed != standard).then_some(SignDiscrepancy { sigma, printed, standard })
        })
        .collect()
}

/// An element of `S^m(B)` on the canonical tensor basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SymElement<G> {
    arity: usize,
    convention: Convention,
    terms: BTreeMap<Vec<G>, Rational>,
}

fn accumulate<G: Ord>(terms: &mut BTreeMap<Vec<G>, Rational>, key: Vec<G>, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&key) {
        Some(x) => {
            *x += c;
            if x.is_zero() {
                terms.remove(&key);
            }
        }
        None => {
            terms.insert(key, c);
        }
    }
}

/// Expands `coeff · f₁⊗…⊗f_m` multilinearly, canonicalizes each basis
/// tensor and accumulates it.
fn add_expanded<G: Ord + Clone>(
    terms: &mut BTreeMap<Vec<G>, Rational>,
    coeff: &Rational,
    factors: &[Vec<(Rational, G)>],
    degree: &impl Fn(&G) -> i64,
) {
    if factors.iter().any(Vec::is_empty) {
        return;
    }
    for choice in factors.iter().map(|f| f.iter()).multi_cartesian_product() {
        let mut c = coeff.clone();
        let gens: Vec<G> = choice
            .iter()
            .map(|(x, g)| {
                c *= x;
                g.clone()
            })
            .collect();
        match canonicalize(&gens, |g| Some(degree(g))).expect("basis elements are homogeneous") {
            Canonical::Zero => {}
            Canonical::Term { negative, factors } => accumulate(terms, factors, if negative { -c } else { c }),
        }
    }
}

impl<G: Ord + Clone + fmt::Debug> SymElement<G> {
    pub fn zero(arity: usize, convention: Convention) -> Self {
        SymElement { arity, convention, terms: BTreeMap::new() }
    }

    /// The class of `coeff · f₁⊗…⊗f_m` where each factor is a linear
    /// combination of basis elements. A zero factor gives zero.
    pub fn from_tensor<B: GradedBasis<Gen = G>>(
        basis: &B,
        convention: Convention,
        coeff: &Rational,
        factors: &[Vec<(Rational, G)>],
    ) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::ArityMismatch { expected: 1, found: 0 });
        }
        let mut out = SymElement::zero(factors.len(), convention);
        add_expanded(&mut out.terms, coeff, factors, &|g| basis.degree(g));
        Ok(out)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Canonical basis tensors with their nonzero coefficients.
    pub fn terms(&self) -> &BTreeMap<Vec<G>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = SymElement::zero(self.arity, self.convention);
        if !s.is_zero() {
            out.terms = self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect();
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_compatible(self, other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            accumulate(&mut out.terms, k.clone(), c.clone());
        }
        Ok(out)
    }

    /// Reinterprets the element under another convention without changing
    /// its coefficients.
    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }
}

fn check_compatible<G, H>(a: &SymElement<G>, b: &SymElement<H>) -> Result<()> {
    if a.arity != b.arity {
        return Err(Error::ArityMismatch { expected: a.arity, found: b.arity });
    }
    if a.convention != b.convention {
        return Err(Error::ConventionMismatch);
    }
    Ok(())
}

fn check_cap(arity: usize, opts: &SymOptions) -> Result<()> {
    if arity > opts.max_arity {
        return Err(Error::ArityCapExceeded { arity, cap: opts.max_arity });
    }
    Ok(())
}

fn check_even<B: GradedBasis>(basis: &B, el: &SymElement<B::Gen>) -> Result<()> {
    for key in el.terms.keys() {
        if let Some(g) = key.iter().find(|g| !basis.is_even(g)) {
            return Err(Error::ParityViolation(format!("factor {g:?} is not even")));
        }
    }
    Ok(())
}

/// `Σ_σ sgn(a,b,σ) ⊗_i (a_i · b_{σ⁻¹(i)})` for one pair of basis tensors.
#[allow(clippy::too_many_arguments)]
fn signed_orbit_sum<L, R, O: Ord + Clone>(
    a: &[L],
    a_deg: &[i64],
    b: &[R],
    b_deg: &[i64],
    coeff: &Rational,
    mul: impl Fn(&L, &R) -> Result<Vec<(Rational, O)>>,
    out_degree: &impl Fn(&O) -> i64,
    acc: &mut BTreeMap<Vec<O>, Rational>,
) -> Result<()> {
    let m = a.len();
    let mut table: Vec<Vec<Vec<(Rational, O)>>> = Vec::with_capacity(m);
    for ai in a {
        table.push(b.iter().map(|bj| mul(ai, bj)).collect::<Result<_>>()?);
    }
    for sigma in Permutation::all(m) {
        let inv = sigma.inverse();
        let factors: Vec<Vec<(Rational, O)>> = (0..m).map(|i| table[i][inv.apply(i)].clone()).collect();
        if factors.iter().any(Vec::is_empty) {
            continue;
        }
        let c = if printed_sign(a_deg, b_deg, &sigma) < 0 { -coeff } else { coeff.clone() };
        add_expanded(acc, &c, &factors, out_degree);
    }
    Ok(())
}

fn normalization(convention: Convention, m: usize) -> Rational {
    match convention {
        Convention::Averaged => Rational::factorial(m).recip().expect("m! > 0"),
        Convention::OrbitSum => Rational::one(),
    }
}

/// Product in `S^m(A)`.
pub fn sym_product<A: BasisAlgebra>(
    algebra: &A,
    a: &SymElement<A::Gen>,
    b: &SymElement<A::Gen>,
    opts: &SymOptions,
) -> Result<SymElement<A::Gen>> {
    check_compatible(a, b)?;
    check_cap(a.arity, opts)?;
    if opts.even_mode {
        check_even(algebra, a)?;
        check_even(algebra, b)?;
    }
    let norm = normalization(a.convention, a.arity);
    let mut out = SymElement::zero(a.arity, a.convention);
    for (ka, ca) in &a.terms {
        let a_deg: Vec<i64> = ka.iter().map(|g| algebra.degree(g)).collect();
        for (kb, cb) in &b.terms {
            let b_deg: Vec<i64> = kb.iter().map(|g| algebra.degree(g)).collect();
            let coeff = &(ca * cb) * &norm;
            signed_orbit_sum(ka, &a_deg, kb, &b_deg, &coeff, |x, y| algebra.mul(x, y), &|g| algebra.degree(g), &mut out.terms)?;
        }
    }
    Ok(out)
}

/// Action of `S^m(A)` on `S^m(V)`.
pub fn sym_act<A: BasisAlgebra, M: BasisModule<A>>(
    algebra: &A,
    module: &M,
    a: &SymElement<A::Gen>,
    v: &SymElement<M::Gen>,
    opts: &SymOptions,
) -> Result<SymElement<M::Gen>> {
    check_compatible(a, v)?;
    check_cap(a.arity, opts)?;
    if opts.even_mode {
        check_even(algebra, a)?;
        check_even(module, v)?;
    }
    let norm = normalization(a.convention, a.arity);
    let mut out = SymElement::zero(v.arity, v.convention);
    for (ka, ca) in &a.terms {
        let a_deg: Vec<i64> = ka.iter().map(|g| algebra.degree(g)).collect();
        for (kv, cv) in &v.terms {
            let v_deg: Vec<i64> = kv.iter().map(|g| module.degree(g)).collect();
            let coeff = &(ca * cv) * &norm;
            signed_orbit_sum(ka, &a_deg, kv, &v_deg, &coeff, |x, y| module.act(x, y), &|g| module.degree(g), &mut out.terms)?;
        }
    }
    Ok(out)
}

/// Basis element `E_{row,col}(key)` of `HG(c,c)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HgBasis {
    pub row: usize,
    pub col: usize,
    pub key: Key,
}

/// `HG(c,c)` as a basis algebra.
#[derive(Clone, Copy, Debug)]
pub struct HgAlgebra<'a> {
    pub category: &'a GradedCategory,
    pub index: &'a IndexMap,
}

impl<'a> HgAlgebra<'a> {
    pub fn new(category: &'a GradedCategory, index: &'a IndexMap) -> Self {
        HgAlgebra { category, index }
    }

    fn intrinsic(&self, g: &HgBasis) -> i64 {
        self.category
            .hom(self.index.get(g.col), self.index.get(g.row))
            .ok()
            .and_then(|h| h.degree(&g.key))
            .expect("basis element of HG(c,c)")
    }

    fn dim(&self, i: usize) -> i64 {
        self.category.dim(self.index.get(i)).expect("declared object") as i64
    }

    /// Decomposes a square matrix over `c` into basis elements.
    pub fn expand(&self, m: &HomMatrix) -> Result<Vec<(Rational, HgBasis)>> {
        if m.source() != self.index || m.target() != self.index {
            return Err(Error::IndexMismatch("matrix is not in HG(c,c)".into()));
        }
        Ok(m.entries()
            .flat_map(|((row, col), v)| {
                v.terms().iter().map(move |(k, c)| (c.clone(), HgBasis { row, col, key: k.clone() }))
            })
            .collect())
    }

    pub fn assemble(&self, terms: &[(Rational, HgBasis)]) -> Result<HomMatrix> {
        HomMatrix::new(
            self.category,
            self.index,
            self.index,
            terms.iter().map(|(c, g)| ((g.row, g.col), vec![(g.key.clone(), c.clone())])),
        )
    }

    /// The class of `coeff · m₁⊗…⊗m_k`.
    pub fn sym_from_matrices(&self, convention: Convention, coeff: &Rational, factors: &[HomMatrix]) -> Result<SymElement<HgBasis>> {
        let expanded = factors.iter().map(|m| self.expand(m)).collect::<Result<Vec<_>>>()?;
        SymElement::from_tensor(self, convention, coeff, &expanded)
    }
}

impl GradedBasis for HgAlgebra<'_> {
    type Gen = HgBasis;

    fn degree(&self, g: &HgBasis) -> i64 {
        self.intrinsic(g) - self.dim(g.row)
    }

    fn is_even(&self, g: &HgBasis) -> bool {
        self.intrinsic(g).rem_euclid(2) == 0 && self.dim(g.row) % 2 == 0 && self.dim(g.col) % 2 == 0
    }
}

impl BasisAlgebra for HgAlgebra<'_> {
    fn mul(&self, a: &HgBasis, b: &HgBasis) -> Result<Vec<(Rational, HgBasis)>> {
        if a.col != b.row {
            return Ok(Vec::new());
        }
        let (x, y, z) = (self.index.get(b.col), self.index.get(b.row), self.index.get(a.row));
        let v = self.category.compose_basis(x, y, z, &a.key, &b.key)?;
        Ok(v.terms()
            .iter()
            .map(|(k, c)| (c.clone(), HgBasis { row: a.row, col: b.col, key: k.clone() }))
            .collect())
    }
}

/// Basis element `(slot, key)` of `⊕_i H(c(i))`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModuleBasis {
    pub slot: usize,
    pub key: Key,
}

/// `⊕_i H(c(i))` as a basis module over `HG(c,c)`.
#[derive(Clone, Copy, Debug)]
pub struct HgModule<'a> {
    pub category: &'a GradedCategory,
    pub representation: &'a Representation,
    pub index: &'a IndexMap,
}

impl<'a> HgModule<'a> {
    pub fn new(category: &'a GradedCategory, representation: &'a Representation, index: &'a IndexMap) -> Self {
        HgModule { category, representation, index }
    }

    fn intrinsic(&self, g: &ModuleBasis) -> i64 {
        self.representation
            .module(self.index.get(g.slot))
            .ok()
            .and_then(|b| b.degree(&g.key))
            .expect("basis element of the module")
    }

    fn dim(&self, i: usize) -> i64 {
        self.category.dim(self.index.get(i)).expect("declared object") as i64
    }

    pub fn expand(&self, v: &ModuleVector) -> Result<Vec<(Rational, ModuleBasis)>> {
        if v.index() != self.index {
            return Err(Error::IndexMismatch("vector is not over this index map".into()));
        }
        Ok(v.components()
            .flat_map(|(slot, x)| x.terms().iter().map(move |(k, c)| (c.clone(), ModuleBasis { slot, key: k.clone() })))
            .collect())
    }

    pub fn assemble(&self, terms: &[(Rational, ModuleBasis)]) -> Result<ModuleVector> {
        ModuleVector::new(
            self.representation,
            self.index,
            terms.iter().map(|(c, g)| (g.slot, vec![(g.key.clone(), c.clone())])),
        )
    }

    pub fn sym_from_vectors(&self, convention: Convention, coeff: &Rational, factors: &[ModuleVector]) -> Result<SymElement<ModuleBasis>> {
        let expanded = factors.iter().map(|v| self.expand(v)).collect::<Result<Vec<_>>>()?;
        SymElement::from_tensor(self, convention, coeff, &expanded)
    }
}

impl GradedBasis for HgModule<'_> {
    type Gen = ModuleBasis;

    fn degree(&self, g: &ModuleBasis) -> i64 {
        self.intrinsic(g) - self.dim(g.slot)
    }

    fn is_even(&self, g: &ModuleBasis) -> bool {
        self.intrinsic(g).rem_euclid(2) == 0 && self.dim(g.slot) % 2 == 0
    }
}

impl<'a> BasisModule<HgAlgebra<'a>> for HgModule<'a> {
    fn act(&self, a: &HgBasis, v: &ModuleBasis) -> Result<Vec<(Rational, ModuleBasis)>> {
        if a.col != v.slot {
            return Ok(Vec::new());
        }
        let out = self.representation.act_basis(self.index.get(a.col), self.index.get(a.row), &a.key, &v.key)?;
        Ok(out
            .terms()
            .iter()
            .map(|(k, c)| (c.clone(), ModuleBasis { slot: a.row, key: k.clone() }))
            .collect())
    }
}

/// The class `E_{α(1),1}(t_1)⊗…⊗E_{α(n),n}(t_n)` in `Schur_m(c,c)`, `m = n`.
///
/// Requires every object dimension and every term degree of `t` to be even.
pub fn schur_include(
    category: &GradedCategory,
    element: &CobordismElement,
    m: usize,
    convention: Convention,
) -> Result<SymElement<HgBasis>> {
    let index = element.index();
    if m != index.len() {
        return Err(Error::ArityMismatch { expected: index.len(), found: m });
    }
    for o in index.objects() {
        if category.dim(o)? % 2 != 0 {
            return Err(Error::ParityViolation(format!("object {o} has odd dimension")));
        }
    }
    let algebra = HgAlgebra::new(category, index);
    let mut factors = Vec::with_capacity(m);
    for (i, t) in element.components().enumerate() {
        if let Some((k, d, _)) = t.value.graded_terms().find(|(_, d, _)| d.rem_euclid(2) != 0) {
            return Err(Error::ParityViolation(format!("t_{i} has term {k} of odd degree {d}")));
        }
        let row = element.alpha().apply(i);
        factors.push(
            t.value
                .terms()
                .iter()
                .map(|(k, c)| (c.clone(), HgBasis { row, col: i, key: k.clone() }))
                .collect::<Vec<_>>(),
        );
    }
    SymElement::from_tensor(&algebra, convention, &Rational::one(), &factors)
}
