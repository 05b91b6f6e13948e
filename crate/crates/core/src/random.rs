//! Seeded generators of random test data. Every generator draws only from
//! the supplied RNG.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::category::{GradedCategory, MorphGenerator, ObjectDecl, ObjectId};
use crate::complex::ChainComplex;
use crate::graded::{Basis, BasisElement, Key};
use crate::homatrix::{CobordismElement, HomMatrix, IndexMap};
use crate::operad::{IntervalConfig, LittleInterval};
use crate::perm::Permutation;
use crate::rational::Rational;
use crate::representation::{ModuleVector, Representation};
use crate::sympower::{Convention, HgAlgebra, HgBasis, HgModule, ModuleBasis, SymElement};
use crate::Result;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero rational `p/q` with `|p| ≤ 4`, `1 ≤ q ≤ 3`.
pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    let p = *[-4, -3, -2, -1, 1, 2, 3, 4].choose(rng).expect("nonempty");
    Rational::new(p, rng.gen_range(1..=3))
}

pub fn permutation<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::new(images).expect("shuffle of 0..n")
}

#[derive(Clone, Copy, Debug)]
pub struct CategoryParams {
    pub max_objects: usize,
    pub max_generators: usize,
    pub max_path_length: usize,
    pub max_hom_dim: usize,
    /// Even object dimensions and generator degrees only.
    pub even: bool,
}

impl Default for CategoryParams {
    fn default() -> Self {
        CategoryParams { max_objects: 4, max_generators: 6, max_path_length: 4, max_hom_dim: 20, even: false }
    }
}

fn degree<R: Rng>(rng: &mut R, even: bool) -> i64 {
    if even {
        2 * rng.gen_range(-1..=1)
    } else {
        rng.gen_range(-2..=2)
    }
}

/// A free category whose hom bases all stay within `max_hom_dim`.
pub fn free_category<R: Rng>(rng: &mut R, p: &CategoryParams) -> GradedCategory {
    let n = rng.gen_range(1..=p.max_objects);
    let objects: Vec<ObjectDecl> = (0..n)
        .map(|i| ObjectDecl::new(format!("x{i}").as_str(), if p.even { 2 * rng.gen_range(0..=1) } else { rng.gen_range(0..=2) }))
        .collect();
    let bound = rng.gen_range(2..=p.max_path_length.max(2));
    let mut gens: Vec<MorphGenerator> = Vec::new();
    let mut best = GradedCategory::build_free(objects.clone(), [], bound).expect("valid objects");
    for i in 0..p.max_generators {
        let s = &objects[rng.gen_range(0..n)].id;
        let t = &objects[rng.gen_range(0..n)].id;
        let g = MorphGenerator::new(format!("g{i}"), s.clone(), t.clone(), degree(rng, p.even));
        gens.push(g);
        let cat = GradedCategory::build_free(objects.clone(), gens.clone(), bound).expect("valid generators");
        if cat.homs().all(|(_, _, b)| b.len() <= p.max_hom_dim) {
            best = cat;
        } else {
            gens.pop();
        }
    }
    best
}

pub fn index_map<R: Rng>(rng: &mut R, category: &GradedCategory, len: usize) -> IndexMap {
    let ids: Vec<ObjectId> = category.objects().map(|o| o.id.clone()).collect();
    IndexMap::new(category, (0..len).map(|_| ids.choose(rng).expect("objects").clone()).collect()).expect("declared objects")
}

/// Keys of `basis` no longer than `max_len`, optionally of even degree.
fn admissible(basis: &Basis, max_len: usize, even: bool) -> Vec<Key> {
    basis
        .elements()
        .filter(|e| e.key.len() <= max_len && (!even || e.degree.rem_euclid(2) == 0))
        .map(|e| e.key)
        .collect()
}

fn combination<R: Rng>(rng: &mut R, keys: &[Key], max_terms: usize) -> Vec<(Key, Rational)> {
    if keys.is_empty() {
        return Vec::new();
    }
    (0..rng.gen_range(1..=max_terms)).map(|_| (keys.choose(rng).expect("nonempty").clone(), rational(rng))).collect()
}

/// Sparse random matrix whose entries use paths of length at most `max_len`.
pub fn matrix<R: Rng>(
    rng: &mut R,
    category: &GradedCategory,
    source: &IndexMap,
    target: &IndexMap,
    max_len: usize,
    even: bool,
) -> HomMatrix {
    let mut entries = Vec::new();
    for i in 0..target.len() {
        for j in 0..source.len() {
            if rng.gen_bool(0.6) {
                let basis = category.hom(source.get(j), target.get(i)).expect("declared objects");
                entries.push(((i, j), combination(rng, &admissible(basis, max_len, even), 3)));
            }
        }
    }
    HomMatrix::new(category, source, target, entries).expect("entries drawn from the hom bases")
}

/// Splits `total` into `parts` path-length budgets.
pub fn budgets<R: Rng>(rng: &mut R, total: usize, parts: usize) -> Vec<usize> {
    let mut out = vec![0; parts];
    for _ in 0..total {
        out[rng.gen_range(0..parts)] += 1;
    }
    out
}

/// A representation of a free category defined by random generator
/// actions on modules of dimension 1 to 3.
pub fn representation<R: Rng>(rng: &mut R, category: &GradedCategory, even: bool) -> Representation {
    let mut bases: BTreeMap<ObjectId, Vec<BasisElement>> = BTreeMap::new();
    for o in category.objects() {
        let n = rng.gen_range(1..=3);
        let els = (0..n).map(|k| BasisElement::new(format!("v{k}").as_str(), degree(rng, even))).collect();
        bases.insert(o.id.clone(), els);
    }
    let mut action = BTreeMap::new();
    for g in category.generators() {
        let targets = &bases[&g.target];
        let rows = bases[&g.source]
            .iter()
            .map(|u| {
                let keys: Vec<Key> =
                    targets.iter().filter(|w| w.degree == u.degree + g.degree).map(|w| w.key.clone()).collect();
                (u.key.clone(), combination(rng, &keys, 2))
            })
            .collect();
        action.insert(g.id.clone(), rows);
    }
    Representation::from_generators(category, bases, &action).expect("generator actions are degree-additive")
}

pub fn module_vector<R: Rng>(rng: &mut R, rep: &Representation, index: &IndexMap, even: bool) -> ModuleVector {
    let mut comps = Vec::new();
    for i in 0..index.len() {
        let basis = rep.module(index.get(i)).expect("module for every object");
        comps.push((i, combination(rng, &admissible(basis, usize::MAX, even), 2)));
    }
    ModuleVector::new(rep, index, comps).expect("terms drawn from the module bases")
}

/// Random `(α, t)` whose components use paths of length at most `max_len`.
pub fn cobordism<R: Rng>(rng: &mut R, category: &GradedCategory, index: &IndexMap, max_len: usize, even: bool) -> CobordismElement {
    let alpha = permutation(rng, index.len());
    let t = (0..index.len())
        .map(|i| {
            let (s, d) = (index.get(i), index.get(alpha.apply(i)));
            let basis = category.hom(s, d).expect("declared objects");
            category.morphism(s, d, combination(rng, &admissible(basis, max_len, even), 2)).expect("basis keys")
        })
        .collect();
    CobordismElement::new(category, index, alpha, t).expect("components fit α")
}

/// Sum of one or two random tensors of sparse factors in `S^m(HG(c,c))`.
pub fn sym_matrix<R: Rng>(rng: &mut R, algebra: &HgAlgebra, m: usize, max_len: usize, convention: Convention, even: bool) -> Result<SymElement<HgBasis>> {
    let n = algebra.index.len();
    let mut pool = Vec::new();
    for row in 0..n {
        for col in 0..n {
            let basis = algebra.category.hom(algebra.index.get(col), algebra.index.get(row))?;
            pool.extend(admissible(basis, max_len, even).into_iter().map(|key| HgBasis { row, col, key }));
        }
    }
    let mut out = SymElement::zero(m, convention);
    for _ in 0..rng.gen_range(1..=2) {
        let factors: Vec<Vec<(Rational, HgBasis)>> = (0..m)
            .map(|_| (0..rng.gen_range(1..=3)).map(|_| (rational(rng), pool.choose(rng).expect("identities exist").clone())).collect())
            .collect();
        out = out.add(&SymElement::from_tensor(algebra, convention, &rational(rng), &factors)?)?;
    }
    Ok(out)
}

pub fn sym_vector<R: Rng>(rng: &mut R, module: &HgModule, m: usize, convention: Convention, even: bool) -> Result<SymElement<ModuleBasis>> {
    let mut pool = Vec::new();
    for slot in 0..module.index.len() {
        let basis = module.representation.module(module.index.get(slot))?;
        pool.extend(admissible(basis, usize::MAX, even).into_iter().map(|key| ModuleBasis { slot, key }));
    }
    let mut out = SymElement::zero(m, convention);
    if pool.is_empty() {
        return Ok(out);
    }
    for _ in 0..rng.gen_range(1..=2) {
        let factors: Vec<Vec<(Rational, ModuleBasis)>> = (0..m)
            .map(|_| (0..rng.gen_range(1..=3)).map(|_| (rational(rng), pool.choose(rng).expect("nonempty").clone())).collect())
            .collect();
        out = out.add(&SymElement::from_tensor(module, convention, &rational(rng), &factors)?)?;
    }
    Ok(out)
}

/// A valid configuration of `arity` intervals with positive radii.
pub fn config<R: Rng>(rng: &mut R, arity: usize) -> IntervalConfig {
    let den: i64 = 8 * arity as i64;
    let mut cuts: Vec<i64> = (-den + 1..den).collect();
    cuts.shuffle(rng);
    let mut ends: Vec<i64> = cuts[..2 * arity].to_vec();
    ends.sort_unstable();
    IntervalConfig::new(
        ends.chunks(2)
            .map(|w| LittleInterval::new(Rational::new(w[0] + w[1], 2 * den), Rational::new(w[1] - w[0], 2 * den)))
            .collect(),
    )
}

/// A chain complex together with its Betti numbers, built as a direct sum
/// of single generators and acyclic pairs `d(b) = a`, followed by a random
/// unitriangular change of basis in each degree.
pub fn complex<R: Rng>(rng: &mut R) -> (ChainComplex, BTreeMap<i64, usize>) {
    let mut degrees: Vec<i64> = Vec::new();
    let mut d: Vec<(usize, usize)> = Vec::new();
    let mut betti = BTreeMap::new();
    for _ in 0..rng.gen_range(1..=6) {
        let k = rng.gen_range(-1..=2);
        if rng.gen_bool(0.5) {
            degrees.push(k);
            *betti.entry(k).or_insert(0) += 1;
        } else {
            degrees.push(k);
            degrees.push(k + 1);
            d.push((degrees.len() - 1, degrees.len() - 2));
        }
    }
    let n = degrees.len();
    let mut dm = vec![vec![Rational::zero(); n]; n];
    for &(b, a) in &d {
        dm[a][b] = Rational::one();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut u = vec![vec![Rational::zero(); n]; n];
    for (i, row) in u.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    for (x, &i) in order.iter().enumerate() {
        for &j in &order[x + 1..] {
            if degrees[i] == degrees[j] && rng.gen_bool(0.5) {
                u[i][j] = rational(rng);
            }
        }
    }
    let (ui, di) = (invert_unitriangular(&u, &order), matmul(&dm, &u));
    let changed = matmul(&ui, &di);
    let key = |i: usize| Key::from(format!("e{i}").as_str());
    let elements = (0..n).map(|i| BasisElement::new(key(i), degrees[i]));
    let differential = (0..n).map(|j| (key(j), (0..n).filter(|&i| !changed[i][j].is_zero()).map(|i| (key(i), changed[i][j].clone())).collect()));
    (ChainComplex::new(elements, differential).expect("well-formed complex"), betti)
}

fn matmul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
}

/// Inverse of `I + N` where `N[i][j] ≠ 0` only when `i` precedes `j` in
/// `order`.
fn invert_unitriangular(u: &[Vec<Rational>], order: &[usize]) -> Vec<Vec<Rational>> {
    let n = u.len();
    let mut inv = vec![vec![Rational::zero(); n]; n];
    for col in 0..n {
        for x in (0..n).rev() {
            let i = order[x];
            let mut v = if i == col { Rational::one() } else { Rational::zero() };
            for &k in &order[x + 1..] {
                v -= &(&u[i][k] * &inv[k][col]);
            }
            inv[i][col] = v;
        }
    }
    inv
}

/// Adds `λ·x` to `d(b)` for some `x` of degree `|b| - 1` with `d(x) ≠ 0`,
/// keeping degrees consistent and making `d²(b) = λ·d(x) ≠ 0`. Returns
/// `None` when no such pair exists.
pub fn square_mutant<R: Rng>(rng: &mut R, c: &ChainComplex) -> Option<ChainComplex> {
    let basis = c.basis();
    let xs: Vec<Key> = c.differentials().keys().cloned().collect();
    let mut pairs = Vec::new();
    for x in &xs {
        let dx = basis.degree(x).expect("basis key");
        for b in basis.elements().filter(|e| e.degree == dx + 1) {
            pairs.push((b.key, x.clone()));
        }
    }
    let (b, x) = pairs.choose(rng)?.clone();
    let lambda = rational(rng);
    let differential = basis.keys().map(|k| {
        let mut terms: Vec<(Key, Rational)> = c.d_basis(k).terms().iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        if k == &b {
            terms.push((x.clone(), lambda.clone()));
        }
        (k.clone(), terms)
    });
    Some(ChainComplex::new(basis.elements(), differential.collect::<Vec<_>>()).expect("same basis"))
}
