//! Randomized checks of the algebraic laws, each evaluated on both sides
//! with exact equality.

use rand::Rng;
use serde::Serialize;

use crate::category::GradedCategory;
use crate::complex::betti_euler;
use crate::homatrix::{CobordismElement, HomMatrix};
use crate::operad::{operad_compose, theta_compose, IntervalConfig};
use crate::random::{self, CategoryParams};
use crate::rational::Rational;
use crate::representation::hg_act;
use crate::sympower::{
    canonicalize, koszul_sign_oracle, schur_include, sym_act, sym_product, Canonical, Convention, HgAlgebra, HgModule, SymOptions,
};
use crate::perm::Permutation;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub law: &'static str,
    pub trials: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

type Trial<R> = fn(&mut R) -> Result<std::result::Result<(), String>>;

fn run<R: Rng>(law: &'static str, rng: &mut R, trials: usize, trial: Trial<R>) -> LawReport {
    let mut report = LawReport { law, trials, failures: 0, first_failure: None };
    for n in 0..trials {
        let outcome = match trial(rng) {
            Ok(r) => r,
            Err(e) => Err(e.to_string()),
        };
        if let Err(msg) = outcome {
            report.failures += 1;
            report.first_failure.get_or_insert_with(|| format!("trial {n}: {msg}"));
        }
    }
    report
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(lhs: T, rhs: T) -> std::result::Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{lhs:?} != {rhs:?}"))
    }
}

fn category<R: Rng>(rng: &mut R, even: bool) -> GradedCategory {
    random::free_category(rng, &CategoryParams { even, ..CategoryParams::default() })
}

/// Random composable triple `(A, B, C)` together with its category. Half
/// of the draws use the truncated quotient with unrestricted path lengths.
pub fn hg_triple<R: Rng>(rng: &mut R) -> (GradedCategory, [HomMatrix; 3]) {
    let free = category(rng, false);
    let bound = free.max_path_length().expect("free");
    let (cat, lens) = if rng.gen_bool(0.5) {
        (free.truncated_quotient(), vec![bound; 3])
    } else {
        let b = random::budgets(rng, bound, 3);
        (free, b)
    };
    let idx: Vec<_> = (0..4).map(|_| { let n = rng.gen_range(1..=3); random::index_map(rng, &cat, n) }).collect();
    let a = random::matrix(rng, &cat, &idx[2], &idx[3], lens[0], false);
    let b = random::matrix(rng, &cat, &idx[1], &idx[2], lens[1], false);
    let c = random::matrix(rng, &cat, &idx[0], &idx[1], lens[2], false);
    (cat, [a, b, c])
}

fn hg_associativity<R: Rng>(rng: &mut R) -> Result<std::result::Result<(), String>> {
    let (cat, [a, b, c]) = hg_triple(rng);
    Ok(expect_eq(a.product(&cat, &b)?.product(&cat, &c)?, a.product(&cat, &b.product(&cat, &c)?)?))
}

fn hg_unit<R: Rng>(rng: &mut R) -> Result<std::result::Result<(), String>> {
    let (cat, [a, _, _]) = hg_triple(rng);
    let left = HomMatrix::identity(&cat, a.target())?.product(&cat, &a)?;
    let right = a.product(&cat, &HomMatrix::identity(&cat, a.source())?)?;
    Ok(expect_eq(&left, &a).and(expect_eq(&right, &a)))
}

fn representation_law<R: Rng>(rng: &mut R) -> Result<std::result::Result<(), String>> {
    let cat = category(rng, false);
    let rep = random::representation(rng, &cat, false);
    let lens = random::budgets(rng, cat.max_path_length().expect("free"), 2);
    let (n0, n1, n2) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3));
    let (c0, c1, c2) = (random::index_map(rng, &cat, n0), random::index_map(rng, &cat, n1), random::index_map(rng, &cat, n2));
    let a = random::matrix(rng, &cat, &c1, &c2, lens[0], false);
    let b = random::matrix(rng, &cat, &c0, &c1, lens[1], false);
    let v = random::module_vector(rng, &rep, &c0, false);
    Ok(expect_eq(hg_act(&rep, &a.product(&cat, &b)?, &v)?, hg_act(&rep, &a, &hg_act(&rep, &b, &v)?)?))
}

fn sym_associativity<R: Rng>(rng: &mut R) -> Result<std::result::Result<(), String>> {
    let free = category(rng, true);
    let lens = random::budgets(rng, free.max_path_length().expect("free"), 3);
    let cat = free.truncated_quotient();
    let n = rng.gen_range(1..=2);
    let c = random::index_map(rng, &cat, n);
    let alg = HgAlgebra::new(&cat, &c);
    let m = rng.gen_range(2..=3);
    let convention = if rng.gen_bool(0.5) { Convention::Averaged } else { Convention::OrbitSum };
    let opts = SymOptions { convention, even_mode: true, ..SymOptions::default() };
    let a = random::sym_matrix(rng, &alg, m, lens[0], convention, true)?;
    let b = random::sym_matrix(rng, &alg, m, lens[1], convention, true)?;
    let d = random::sym_matrix(rng, &alg, m, lens[2], convention, true)?;
    let lhs = sym_product(&alg, &sym_product(&alg, &a, &b, &opts)?, &d, &opts)?;
    let rhs = sym_product(&alg, &a, &sym_product(&alg, &b, &d, &opts)?, &opts)?;
    Ok(expect_eq(lhs, rhs))
}

fn schur_module_law<R: Rng>(rng: &mut R) -> Result<std::result::Result<(), String>> {
    let cat = category(rng, true);
    let rep = random::representation(rng, &cat, true);
    let n = rng.gen_range(1..=3);
    let c = random::index_map(rng, &cat, n);
    let (alg, module) = (HgAlgebra::new(&cat, &c), HgModule::new(&cat, &rep, &c));
    let m = rng.gen_range(2..=3);
    let convention = if rng.gen_bool(0.5) { Convention::Averaged } else { Convention::OrbitSum };
    let opts = SymOptions { convention, even_mode: true, ..SymOptions::default() };
    let lens = random::budgets(rng, cat.max_path_length().expect("free"), 2);
    let a = random::sym_matrix(rng, &alg, m, lens[0], convention, true)?;
    let b = random::sym_matrix(rng, &alg, m, lens[1], convention, true)?;
    let v = random::sym_vector(rng, &module, m, convention, true)?;
    let lhs = sym_act(&alg, &module, &sym_product(&alg, &a, &b, &opts)?, &v, &opts)?;
    let rhs = sym_act(&alg, &module, &a, &sym_act(&alg, &module, &b, &v, &opts)?, &opts)?;
    Ok(expect_eq(lhs, rhs))
}

fn schur_inclusion<R: Rng>(rng: &mut R) -> Result<std::result::Result<(), String>> {
    let cat = category(rng, true);
    let m = rng.gen_range(2..=3);
    let c = random::index_map(rng, &cat, m);
    let lens = random::budgets(rng, cat.max_path_length().expect("free"), 2);
    let a = random::cobordism(rng, &cat, &c, lens[0], true);
    let b = random::cobordism(rng, &cat, &c, lens[1], true);
    let ab = CobordismElement::compose(&cat, &a, &b)?;
    let alg = HgAlgebra::new(&cat, &c);
    let mut out = Ok(());
    for convention in [Convention::OrbitSum, Convention::Averaged] {
        let opts = SymOptions { convention, even_mode: true, ..SymOptions::default() };
        let lhs = sym_product(&alg, &schur_include(&cat, &a, m, convention)?, &schur_include(&cat, &b, m, convention)?, &opts)?;
        let factor = match convention {
            Convention::OrbitSum => Rational::one(),
            Convention::Averaged => Rational::factorial(m).recip().expect("m! > 0"),
        };
        out = out.and(expect_eq(lhs, schur_include(&cat, &ab, m, convention)?.scale(&factor)));
    }
    Ok(out)
}

fn koszul_agreement<R: Rng>(rng: &mut R) -> Result<std::result::Result<(), String>> {
    let m = rng.gen_range(1..=6);
    let factors: Vec<(u8, i64)> = (0..m).map(|_| (rng.gen_range(0..4), rng.gen_range(-3..=3))).collect();
    // equal keys must carry equal degrees
    let factors: Vec<(u8, i64)> = factors.iter().map(|&(k, _)| (k, factors.iter().find(|f| f.0 == k).expect("present").1)).collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| factors[i].0);
    let mut images = vec![0; m];
    for (new, &old) in order.iter().enumerate() {
        images[old] = new;
    }
    let sigma = Permutation::new(images)?;
    let degrees: Vec<i64> = factors.iter().map(|f| f.1).collect();
    let repeated_odd = order.windows(2).any(|w| factors[w[0]] == factors[w[1]] && factors[w[0]].1.rem_euclid(2) == 1);
    Ok(match canonicalize(&factors, |f| Some(f.1))? {
        Canonical::Zero => if repeated_odd { Ok(()) } else { Err(format!("{factors:?} vanished")) },
        Canonical::Term { negative, .. } => {
            if repeated_odd {
                Err(format!("{factors:?} should vanish"))
            } else {
                expect_eq(if negative { -1 } else { 1 }, koszul_sign_oracle(&degrees, &sigma))
            }
        }
    })
}

fn nested<R: Rng>(rng: &mut R, k: usize) -> Vec<IntervalConfig> {
    (0..k).map(|_| { let n = rng.gen_range(1..=3); random::config(rng, n) }).collect()
}

fn operad_associativity<R: Rng>(rng: &mut R) -> Result<std::result::Result<(), String>> {
    let k = rng.gen_range(1..=3);
    let a = random::config(rng, k);
    let bs = nested(rng, k);
    let cs: Vec<Vec<IntervalConfig>> = bs.iter().map(|b| nested(rng, b.arity())).collect();
    let left = operad_compose(&operad_compose(&a, &bs)?, &cs.concat())?;
    let inner: Vec<IntervalConfig> = bs.iter().zip(&cs).map(|(b, c)| operad_compose(b, c)).collect::<Result<_>>()?;
    let right = operad_compose(&a, &inner)?;
    if !left.is_valid() {
        return Ok(Err(format!("invalid output {left:?}")));
    }
    Ok(expect_eq(left, right))
}

fn operad_unit<R: Rng>(rng: &mut R) -> Result<std::result::Result<(), String>> {
    let k = rng.gen_range(1..=5);
    let c = random::config(rng, k);
    let units = vec![IntervalConfig::unit(); k];
    Ok(expect_eq(&operad_compose(&c, &units)?, &c).and(expect_eq(&operad_compose(&IntervalConfig::unit(), std::slice::from_ref(&c))?, &c)))
}

fn theta_independence<R: Rng>(rng: &mut R) -> Result<std::result::Result<(), String>> {
    let (cat, chain) = hg_triple(rng);
    let k = rng.gen_range(1..=3);
    let chain = &chain[..k];
    let reference = chain[1..].iter().try_fold(chain[0].clone(), |acc, m| acc.product(&cat, m))?;
    let mut out = Ok(());
    for _ in 0..10 {
        out = out.and(expect_eq(&theta_compose(&cat, &random::config(rng, k), chain)?, &reference));
    }
    Ok(out)
}

fn complex_homology<R: Rng>(rng: &mut R) -> Result<std::result::Result<(), String>> {
    let (c, betti) = random::complex(rng);
    let computed = c.homology_betti()?;
    let nonzero: std::collections::BTreeMap<i64, usize> = computed.iter().filter(|(_, &b)| b > 0).map(|(&k, &b)| (k, b)).collect();
    Ok(expect_eq(&nonzero, &betti).and(expect_eq(betti_euler(&computed), c.euler_characteristic())))
}

fn square_detection<R: Rng>(rng: &mut R) -> Result<std::result::Result<(), String>> {
    let (c, _) = random::complex(rng);
    Ok(match random::square_mutant(rng, &c) {
        Some(m) if m.validate().is_ok() => Err("mutant with d² ≠ 0 accepted".into()),
        _ => Ok(()),
    })
}

/// Every law, `trials` draws each, from one seeded stream per law.
pub fn run_all(seed: u64, trials: usize) -> Vec<LawReport> {
    type Law = (&'static str, Trial<rand_chacha::ChaCha8Rng>);
    let laws: [Law; 13] = [
        ("hg-associativity", hg_associativity),
        ("hg-unit", hg_unit),
        ("representation", representation_law),
        ("sym-associativity", sym_associativity),
        ("schur-module", schur_module_law),
        ("schur-inclusion", schur_inclusion),
        ("koszul-sign", koszul_agreement),
        ("operad-associativity", operad_associativity),
        ("operad-unit", operad_unit),
        ("theta-independence", theta_independence),
        ("complex-homology", complex_homology),
        ("square-detection", square_detection),
        ("category-laws", |rng| {
            let c = category(rng, false);
            Ok(c.validate().map_err(|v| format!("{v:?}")).and(c.truncated_quotient().validate().map_err(|v| format!("{v:?}"))))
        }),
    ];
    laws.iter()
        .enumerate()
        .map(|(i, &(name, trial))| run(name, &mut random::rng(seed.wrapping_mul(31).wrapping_add(i as u64)), trials, trial))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_laws_hold_briefly() {
        for r in run_all(1, 3) {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(run_all(9, 2), run_all(9, 2));
    }
}
