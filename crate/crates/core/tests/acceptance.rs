//! Acceptance suite: ten criteria checked with exact rational equality.
//! Prints one line per criterion and exits nonzero if any fails.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use homat::category::GradedCategory;
use homat::complex::{betti_euler, ChainComplex};
use homat::format::*;
use homat::graded::{BasisElement, Key};
use homat::homatrix::{CobordismElement, HomMatrix};
use homat::operad::{operad_compose, theta_compose, IntervalConfig, LittleInterval};
use homat::random::{self, CategoryParams};
use homat::representation::{hg_act, Representation};
use homat::sympower::*;
use homat::Rational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&mut ChaCha8Rng) -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

fn err(e: homat::Error) -> String {
    e.to_string()
}

type Dense = BTreeMap<(usize, usize), BTreeMap<Key, Rational>>;

fn dense(m: &HomMatrix) -> Dense {
    m.entries().map(|(p, v)| (p, v.terms().clone())).collect()
}

/// Path-concatenation product with paths longer than `bound` dropped.
fn oracle_product(a: &Dense, b: &Dense, bound: usize) -> Dense {
    let mut out: Dense = BTreeMap::new();
    for (&(k, j), ak) in a {
        for (&(j2, i), bj) in b {
            if j != j2 {
                continue;
            }
            for (p, x) in ak {
                for (q, y) in bj {
                    let r = p.concat(q);
                    if r.len() <= bound {
                        *out.entry((k, i)).or_default().entry(r).or_insert_with(Rational::zero) += &(x * y);
                    }
                }
            }
        }
    }
    for e in out.values_mut() {
        e.retain(|_, c| !c.is_zero());
    }
    out.retain(|_, e| !e.is_empty());
    out
}

fn criterion_1(rng: &mut ChaCha8Rng) -> Outcome {
    let start = Instant::now();
    let mut quotient = 0;
    for trial in 0..100usize {
        let free = random::free_category(rng, &CategoryParams::default());
        let bound = free.max_path_length().unwrap();
        ensure(free.objects().count() <= 4 && bound <= 4 && free.homs().all(|(_, _, b)| b.len() <= 20), || "generator out of bounds".into())?;
        let (cat, lens) = if trial.is_multiple_of(2) {
            quotient += 1;
            (free.truncated_quotient(), vec![bound; 3])
        } else {
            (free, random::budgets(rng, bound, 3))
        };
        let idx: Vec<_> = (0..4).map(|_| { let n = rng.gen_range(1..=3); random::index_map(rng, &cat, n) }).collect();
        let a = random::matrix(rng, &cat, &idx[2], &idx[3], lens[0], false);
        let b = random::matrix(rng, &cat, &idx[1], &idx[2], lens[1], false);
        let c = random::matrix(rng, &cat, &idx[0], &idx[1], lens[2], false);
        let ab = a.product(&cat, &b).map_err(err)?;
        let bc = b.product(&cat, &c).map_err(err)?;
        let lhs = ab.product(&cat, &c).map_err(err)?;
        let rhs = a.product(&cat, &bc).map_err(err)?;
        ensure(lhs == rhs, || format!("trial {trial}: (AB)C != A(BC)"))?;
        ensure(dense(&ab) == oracle_product(&dense(&a), &dense(&b), bound), || format!("trial {trial}: AB disagrees with path oracle"))?;
        ensure(dense(&lhs) == oracle_product(&dense(&ab), &dense(&c), bound), || format!("trial {trial}: (AB)C disagrees with path oracle"))?;
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(10), "100 triples")?;
    Ok(format!("100 triples ({quotient} in truncated quotients) in {t:.2?}"))
}

fn criterion_2(rng: &mut ChaCha8Rng) -> Outcome {
    for trial in 0..100usize {
        let cat = random::free_category(rng, &CategoryParams::default());
        let rep = random::representation(rng, &cat, false);
        let lens = random::budgets(rng, cat.max_path_length().unwrap(), 2);
        let n = rng.gen_range(1..=3);
            let c = random::index_map(rng, &cat, n);
        let a = random::matrix(rng, &cat, &c, &c, lens[0], false);
        let b = random::matrix(rng, &cat, &c, &c, lens[1], false);
        let v = random::module_vector(rng, &rep, &c, false);
        let lhs = hg_act(&rep, &a.product(&cat, &b).map_err(err)?, &v).map_err(err)?;
        let rhs = hg_act(&rep, &a, &hg_act(&rep, &b, &v).map_err(err)?).map_err(err)?;
        ensure(lhs == rhs, || format!("trial {trial}: (AB)v != A(Bv)"))?;
    }
    Ok("100 draws".into())
}

fn convention_of(trial: usize) -> Convention {
    if trial.is_multiple_of(2) {
        Convention::Averaged
    } else {
        Convention::OrbitSum
    }
}

fn criterion_3(rng: &mut ChaCha8Rng) -> Outcome {
    let mut report = Vec::new();
    for m in [2, 3] {
        let start = Instant::now();
        let mut nonzero = 0;
        for trial in 0..50 {
            let free = random::free_category(rng, &CategoryParams { even: true, ..CategoryParams::default() });
            let bound = free.max_path_length().unwrap();
            let cat = free.truncated_quotient();
            let n = rng.gen_range(1..=2);
            let c = random::index_map(rng, &cat, n);
            let alg = HgAlgebra::new(&cat, &c);
            let convention = convention_of(trial);
            let opts = SymOptions { convention, even_mode: true, ..SymOptions::default() };
            let lens = random::budgets(rng, bound, 3);
            let a = random::sym_matrix(rng, &alg, m, lens[0], convention, true).map_err(err)?;
            let b = random::sym_matrix(rng, &alg, m, lens[1], convention, true).map_err(err)?;
            let d = random::sym_matrix(rng, &alg, m, lens[2], convention, true).map_err(err)?;
            let lhs = sym_product(&alg, &sym_product(&alg, &a, &b, &opts).map_err(err)?, &d, &opts).map_err(err)?;
            let rhs = sym_product(&alg, &a, &sym_product(&alg, &b, &d, &opts).map_err(err)?, &opts).map_err(err)?;
            ensure(lhs == rhs, || format!("m={m} trial {trial}: (ab)c != a(bc)"))?;
            nonzero += usize::from(!lhs.is_zero());
        }
        let t = start.elapsed();
        if m == 3 {
            within(t, Duration::from_secs(30), "m=3 triples")?;
        }
        ensure(nonzero >= 20, || format!("m={m}: only {nonzero} nonzero products"))?;
        report.push(format!("m={m}: 50 triples, {nonzero} nonzero, {t:.2?}"));
    }
    Ok(report.join("; "))
}

fn criterion_4(rng: &mut ChaCha8Rng) -> Outcome {
    let mut nonzero = 0;
    for m in [2, 3] {
        for trial in 0..50 {
            let cat = random::free_category(rng, &CategoryParams { even: true, ..CategoryParams::default() });
            let rep = random::representation(rng, &cat, true);
            let n = rng.gen_range(1..=2);
            let c = random::index_map(rng, &cat, n);
            let (alg, module) = (HgAlgebra::new(&cat, &c), HgModule::new(&cat, &rep, &c));
            let convention = convention_of(trial);
            let opts = SymOptions { convention, even_mode: true, ..SymOptions::default() };
            let lens = random::budgets(rng, cat.max_path_length().unwrap(), 2);
            let a = random::sym_matrix(rng, &alg, m, lens[0], convention, true).map_err(err)?;
            let b = random::sym_matrix(rng, &alg, m, lens[1], convention, true).map_err(err)?;
            let v = random::sym_vector(rng, &module, m, convention, true).map_err(err)?;
            let lhs = sym_act(&alg, &module, &sym_product(&alg, &a, &b, &opts).map_err(err)?, &v, &opts).map_err(err)?;
            let rhs = sym_act(&alg, &module, &a, &sym_act(&alg, &module, &b, &v, &opts).map_err(err)?, &opts).map_err(err)?;
            ensure(lhs == rhs, || format!("m={m} trial {trial}: (ab)v != a(bv)"))?;
            nonzero += usize::from(!lhs.is_zero());
        }
    }
    ensure(nonzero >= 40, || format!("only {nonzero} nonzero actions"))?;
    Ok(format!("100 draws over m=2,3, {nonzero} nonzero"))
}

fn criterion_5(rng: &mut ChaCha8Rng) -> Outcome {
    let mut nonzero = 0;
    for m in [2, 3] {
        for trial in 0..50 {
            let cat = random::free_category(rng, &CategoryParams { even: true, ..CategoryParams::default() });
            let c = random::index_map(rng, &cat, m);
            let lens = random::budgets(rng, cat.max_path_length().unwrap(), 2);
            let a = random::cobordism(rng, &cat, &c, lens[0], true);
            let b = random::cobordism(rng, &cat, &c, lens[1], true);
            let ab = CobordismElement::compose(&cat, &a, &b).map_err(err)?;
            let alg = HgAlgebra::new(&cat, &c);
            let inc = |e: &CobordismElement, conv| schur_include(&cat, e, m, conv).map_err(err);
            let orbit = SymOptions { convention: Convention::OrbitSum, even_mode: true, ..SymOptions::default() };
            let avg = SymOptions { convention: Convention::Averaged, even_mode: true, ..SymOptions::default() };
            let lhs = sym_product(&alg, &inc(&a, Convention::OrbitSum)?, &inc(&b, Convention::OrbitSum)?, &orbit).map_err(err)?;
            ensure(lhs == inc(&ab, Convention::OrbitSum)?, || format!("m={m} trial {trial}: orbit-sum i(a)i(b) != i(ab)"))?;
            let lhs = sym_product(&alg, &inc(&a, Convention::Averaged)?, &inc(&b, Convention::Averaged)?, &avg).map_err(err)?;
            let rhs = inc(&ab, Convention::Averaged)?;
            let factor = Rational::new(1, if m == 2 { 2 } else { 6 });
            ensure(lhs == rhs.scale(&factor), || format!("m={m} trial {trial}: averaged i(a)i(b) != i(ab)/m!"))?;
            nonzero += usize::from(!rhs.is_zero());
        }
    }
    Ok(format!("100 pairs over m=n=2,3, {nonzero} with i(ab) != 0; averaged factor 1/m! exact"))
}

/// Sign of the permutation induced on odd-degree positions, via cycles.
fn odd_cycle_sign(degrees: &[i64], images: &[usize]) -> i8 {
    let odd: Vec<usize> = (0..degrees.len()).filter(|&i| degrees[i].rem_euclid(2) == 1).collect();
    let mut targets: Vec<usize> = odd.iter().map(|&i| images[i]).collect();
    let mut sorted = targets.clone();
    sorted.sort_unstable();
    for t in &mut targets {
        *t = sorted.binary_search(t).unwrap();
    }
    let mut seen = vec![false; targets.len()];
    let mut transpositions = 0;
    for s in 0..targets.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = targets[i];
            len += 1;
        }
        transpositions += len.max(1) - 1;
    }
    if transpositions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn criterion_6(rng: &mut ChaCha8Rng) -> Outcome {
    let mut zeros = 0;
    for trial in 0..500 {
        let m = rng.gen_range(1..=6);
        let degree_of: Vec<i64> = (0..6).map(|_| rng.gen_range(-3..=3)).collect();
        let keys: Vec<usize> = (0..m).map(|_| rng.gen_range(0..6)).collect();
        let factors: Vec<(usize, i64)> = keys.iter().map(|&k| (k, degree_of[k])).collect();
        let degrees: Vec<i64> = factors.iter().map(|f| f.1).collect();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| factors[i]);
        let mut images = vec![0; m];
        for (new, &old) in order.iter().enumerate() {
            images[old] = new;
        }
        let sigma = homat::perm::Permutation::new(images.clone()).unwrap();
        let repeated_odd = (0..m).any(|i| (i + 1..m).any(|j| factors[i] == factors[j] && factors[i].1.rem_euclid(2) == 1));
        match canonicalize(&factors, |f| Some(f.1)).map_err(err)? {
            Canonical::Zero => {
                ensure(repeated_odd, || format!("trial {trial}: {factors:?} vanished"))?;
                zeros += 1;
            }
            Canonical::Term { negative, factors: sorted } => {
                ensure(!repeated_odd, || format!("trial {trial}: {factors:?} should vanish"))?;
                let sign = if negative { -1 } else { 1 };
                let mut expected = factors.clone();
                expected.sort();
                ensure(sorted == expected, || format!("trial {trial}: not sorted"))?;
                ensure(sign == koszul_sign_oracle(&degrees, &sigma), || format!("trial {trial}: sign differs from oracle"))?;
                ensure(sign == odd_cycle_sign(&degrees, &images), || format!("trial {trial}: sign differs from cycle count"))?;
            }
        }
    }
    ensure(zeros > 0, || "no repeated odd factor drawn".into())?;
    Ok(format!("500 degree lists, {zeros} repeated-odd tensors vanished"))
}

fn configs(rng: &mut ChaCha8Rng, k: usize) -> Vec<IntervalConfig> {
    (0..k).map(|_| { let n = rng.gen_range(1..=3); random::config(rng, n) }).collect()
}

/// Images of the composite maps, evaluated directly on endpoints.
fn endpoint_oracle(outer: &IntervalConfig, inners: &[IntervalConfig]) -> Vec<(Rational, Rational)> {
    outer
        .intervals
        .iter()
        .zip(inners)
        .flat_map(|(t, c)| c.intervals.iter().map(move |s| (t.apply(&s.left()), t.apply(&s.right()))))
        .collect()
}

fn criterion_7(rng: &mut ChaCha8Rng) -> Outcome {
    for trial in 0..100usize {
        let k = rng.gen_range(1..=3);
        let a = random::config(rng, k);
        let bs = configs(rng, k);
        let cs: Vec<Vec<IntervalConfig>> = bs.iter().map(|b| configs(rng, b.arity())).collect();
        let ab = operad_compose(&a, &bs).map_err(err)?;
        let left = operad_compose(&ab, &cs.concat()).map_err(err)?;
        let inner: Vec<IntervalConfig> = bs.iter().zip(&cs).map(|(b, c)| operad_compose(b, c)).collect::<Result<_, _>>().map_err(err)?;
        let right = operad_compose(&a, &inner).map_err(err)?;
        ensure(left == right, || format!("trial {trial}: associativity"))?;
        for out in [&ab, &left] {
            ensure(out.is_valid(), || format!("trial {trial}: invalid output"))?;
        }
        let ends: Vec<(Rational, Rational)> = ab.intervals.iter().map(|t| (t.left(), t.right())).collect();
        ensure(ends == endpoint_oracle(&a, &bs), || format!("trial {trial}: endpoints"))?;
        ensure(operad_compose(&a, &vec![IntervalConfig::unit(); k]).map_err(err)? == a, || format!("trial {trial}: right unit"))?;
        ensure(operad_compose(&IntervalConfig::unit(), std::slice::from_ref(&a)).map_err(err)? == a, || format!("trial {trial}: left unit"))?;
    }
    let t = |y: (i64, i64), r: (i64, i64)| LittleInterval::new(Rational::new(y.0, y.1), Rational::new(r.0, r.1));
    let two = IntervalConfig::new(vec![t((-1, 2), (1, 4)), t((1, 2), (1, 4))]);
    let three = IntervalConfig::new(vec![t((-2, 3), (1, 4)), t((0, 1), (1, 4)), t((2, 3), (1, 4))]);
    let fig = operad_compose(&two, &[three, two.clone()]).map_err(err)?;
    ensure(fig.arity() == 5 && fig.is_valid(), || "(2; 3, 2) does not give a valid arity-5 configuration".into())?;
    Ok("100 nested configurations; (2; 3, 2) -> 5".into())
}

fn criterion_8(rng: &mut ChaCha8Rng) -> Outcome {
    for trial in 0..30 {
        let cat = random::free_category(rng, &CategoryParams::default()).truncated_quotient();
        let k = rng.gen_range(1..=4);
        let idx: Vec<_> = (0..=k).map(|_| { let n = rng.gen_range(1..=3); random::index_map(rng, &cat, n) }).collect();
        let chain: Vec<HomMatrix> = (0..k).map(|i| random::matrix(rng, &cat, &idx[i + 1], &idx[i], usize::MAX, false)).collect();
        let first = theta_compose(&cat, &random::config(rng, k), &chain).map_err(err)?;
        for _ in 0..9 {
            let again = theta_compose(&cat, &random::config(rng, k), &chain).map_err(err)?;
            ensure(again == first, || format!("trial {trial}: depends on the configuration"))?;
        }
        let folded = chain[1..].iter().try_fold(chain[0].clone(), |acc, m| acc.product(&cat, m)).map_err(err)?;
        ensure(first == folded, || format!("trial {trial}: differs from the product fold"))?;
        let single = theta_compose(&cat, &random::config(rng, 1), &chain[..1]).map_err(err)?;
        ensure(single == chain[0], || format!("trial {trial}: k = 1 changed its input"))?;
        ensure(theta_compose(&cat, &IntervalConfig::unit(), &chain[..1]).map_err(err)? == chain[0], || "unit config".into())?;
    }
    Ok("30 chains x 10 configurations; k = 1 is the identity".into())
}

/// Complex with prescribed Betti numbers: free generators plus acyclic
/// pairs, mixed by adding multiples of lower-indexed same-degree elements.
fn known_complex(rng: &mut ChaCha8Rng) -> (ChainComplex, BTreeMap<i64, usize>) {
    let mut betti = BTreeMap::new();
    let mut elements = Vec::new();
    let mut pairs = Vec::new();
    for i in 0..rng.gen_range(1..=7) {
        let k: i64 = rng.gen_range(-2..=2);
        if rng.gen_bool(0.4) {
            elements.push(BasisElement::new(format!("h{i}").as_str(), k));
            *betti.entry(k).or_insert(0) += 1;
        } else {
            elements.push(BasisElement::new(format!("a{i}").as_str(), k));
            elements.push(BasisElement::new(format!("b{i}").as_str(), k + 1));
            pairs.push((format!("b{i}"), format!("a{i}")));
        }
    }
    // basis change on the boundary side: d(b) = a + Σ λ·(earlier a' of the same degree)
    let degree: BTreeMap<String, i64> = elements.iter().map(|e| (e.key.0[0].clone(), e.degree)).collect();
    let mut differential = Vec::new();
    for (n, (b, a)) in pairs.iter().enumerate() {
        let mut terms = vec![(Key::from(a.as_str()), Rational::one())];
        for (_, a2) in &pairs[..n] {
            if degree[a2] == degree[a] && rng.gen_bool(0.5) {
                terms.push((Key::from(a2.as_str()), Rational::new(rng.gen_range(-3..=3), rng.gen_range(1..=2))));
            }
        }
        differential.push((Key::from(b.as_str()), terms));
    }
    (ChainComplex::new(elements, differential).unwrap(), betti)
}

fn criterion_9(rng: &mut ChaCha8Rng) -> Outcome {
    let bi = BasisElement::new;
    let interval = ChainComplex::new(
        [bi("a", 0), bi("b", 0), bi("e", 1)],
        [(Key::from("e"), vec![(Key::from("b"), Rational::one()), (Key::from("a"), -Rational::one())])],
    )
    .map_err(err)?;
    let circle = ChainComplex::new([bi("v", 0), bi("e", 1)], [(Key::from("e"), vec![])]).map_err(err)?;
    ensure(interval.homology_betti().map_err(err)? == BTreeMap::from([(0, 1), (1, 0)]), || "interval".into())?;
    ensure(circle.homology_betti().map_err(err)? == BTreeMap::from([(0, 1), (1, 1)]), || "circle".into())?;

    let mut mutants = 0;
    for trial in 0..100usize {
        let (c, betti) = if trial.is_multiple_of(2) { known_complex(rng) } else { random::complex(rng) };
        ensure(c.validate().is_ok(), || format!("trial {trial}: valid complex rejected"))?;
        let computed = c.homology_betti().map_err(err)?;
        let nonzero: BTreeMap<i64, usize> = computed.iter().filter(|(_, &b)| b > 0).map(|(&k, &b)| (k, b)).collect();
        ensure(nonzero == betti, || format!("trial {trial}: betti {computed:?}, expected {betti:?}"))?;
        let chi: i64 = c.basis().elements().map(|e| if e.degree.rem_euclid(2) == 0 { 1 } else { -1 }).sum();
        ensure(betti_euler(&computed) == chi && c.euler_characteristic() == chi, || format!("trial {trial}: Euler identity"))?;
        if let Some(m) = random::square_mutant(rng, &c) {
            mutants += 1;
            ensure(m.validate().is_err(), || format!("trial {trial}: d² ≠ 0 mutant accepted"))?;
        }
    }
    ensure(mutants >= 50, || format!("only {mutants} mutants generated"))?;
    Ok(format!("interval and circle reproduced; 100 Euler checks; {mutants}/{mutants} mutants rejected"))
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn run_cli(args: &[&str]) -> homat::cli::Outcome {
    let dir = fixtures();
    let mut argv = vec!["homat".to_string(), "--workspace".into(), dir.join("ws").display().to_string()];
    argv.extend(args.iter().map(|a| if a.ends_with(".json") { dir.join(a).display().to_string() } else { a.to_string() }));
    homat::cli::run(argv)
}

fn round_trip(path: &Path, cat: &GradedCategory, rep: &Representation) -> Result<(), String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let name = path.file_name().unwrap().to_string_lossy().to_string();
    let parent = path.parent().unwrap().file_name().unwrap().to_string_lossy().to_string();
    let p = |e: serde_json::Error| format!("{name}: {e}");
    let again = if name.ends_with("category.json") {
        to_json(&CategoryDoc::from_category(&from_json::<CategoryDoc>(&text).map_err(p)?.build().map_err(err)?))
    } else if parent == "modules" {
        let doc: ModuleDoc = from_json(&text).map_err(p)?;
        let m = rep.to_modules().into_iter().find(|m| m.object == doc.object).ok_or("module not loaded")?;
        to_json(&ModuleDoc::from_module(&m))
    } else if name.starts_with("matrix") || name == "identity.json" {
        to_json(&MatrixDoc::from_matrix(&from_json::<MatrixDoc>(&text).map_err(p)?.build(cat).map_err(err)?))
    } else if name.starts_with("morph") {
        to_json(&MorphismDoc::from_morphism(&from_json::<MorphismDoc>(&text).map_err(p)?.build(cat).map_err(err)?))
    } else if name.starts_with("vector") {
        to_json(&ModuleVectorDoc::from_vector(&from_json::<ModuleVectorDoc>(&text).map_err(p)?.build(cat, rep).map_err(err)?))
    } else if name.starts_with("cob") {
        to_json(&CobordismDoc::from_element(&from_json::<CobordismDoc>(&text).map_err(p)?.build(cat).map_err(err)?))
    } else if name == "sym_v.json" {
        let doc: SymVectorDoc = from_json(&text).map_err(p)?;
        let index = homat::homatrix::IndexMap::new(cat, doc.index.clone()).map_err(err)?;
        let module = HgModule::new(cat, rep, &index);
        to_json(&SymVectorDoc::from_element(&index, &doc.build(&module, Convention::Averaged).map_err(err)?))
    } else if name.starts_with("sym") {
        let doc: SymMatrixDoc = from_json(&text).map_err(p)?;
        let index = doc.index_map(cat).map_err(err)?;
        to_json(&SymMatrixDoc::from_element(&index, &doc.build(&HgAlgebra::new(cat, &index), Convention::Averaged).map_err(err)?))
    } else if name.starts_with("config") {
        to_json(&from_json::<IntervalConfig>(&text).map_err(p)?)
    } else if name.starts_with("complex") {
        to_json(&ComplexDoc::from_complex(&from_json::<ComplexDoc>(&text).map_err(p)?.build().map_err(err)?))
    } else {
        return Err(format!("{name}: no schema"));
    };
    ensure(again == text, || format!("{name} is not canonical"))
}

fn json_files(dir: &Path, out: &mut Vec<PathBuf>) {
    for e in std::fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            json_files(&p, out);
        } else if p.extension().is_some_and(|x| x == "json") {
            out.push(p);
        }
    }
    out.sort();
}

fn criterion_10(_: &mut ChaCha8Rng) -> Outcome {
    let commands: Vec<Vec<&str>> = vec![
        vec!["validate", "category"],
        vec!["validate", "category", "table_category.json"],
        vec!["validate", "modules"],
        vec!["validate", "complex", "complex_bad_square.json"],
        vec!["validate", "config", "config_overlap.json"],
        vec!["compose", "ws/morph_g.json", "ws/morph_f.json"],
        vec!["hg", "mul", "ws/matrix_a.json", "ws/matrix_b.json"],
        vec!["hg", "act", "ws/matrix_a.json", "ws/vector.json"],
        vec!["cob", "compose", "ws/cob_a.json", "ws/cob_b.json"],
        vec!["cob", "embed", "ws/cob_a.json"],
        vec!["sym", "mul", "ws/sym_a.json", "ws/sym_b.json", "--even-mode"],
        vec!["sym", "act", "ws/sym_a.json", "ws/sym_v.json", "--convention", "orbit-sum"],
        vec!["schur", "include", "ws/cob_a.json"],
        vec!["operad", "compose", "config_pair.json", "config_single.json", "config_pair.json"],
        vec!["betti", "complex_circle.json"],
        vec!["axioms", "--seed", "7", "--trials", "2"],
    ];
    for args in &commands {
        let (a, b) = (run_cli(args), run_cli(args));
        ensure(a == b, || format!("{args:?} is not deterministic"))?;
        ensure(a.code != 2, || format!("{args:?} failed to parse: {}", a.stderr))?;
    }
    let ws = fixtures().join("ws");
    let cat = from_json::<CategoryDoc>(&std::fs::read_to_string(ws.join("category.json")).unwrap()).unwrap().build().map_err(err)?;
    let mut modules = Vec::new();
    json_files(&ws.join("modules"), &mut modules);
    let docs: Vec<ModuleDoc> = modules.iter().map(|p| from_json(&std::fs::read_to_string(p).unwrap()).unwrap()).collect();
    let rep = Representation::new(&cat, docs.iter().map(ModuleDoc::to_module)).map_err(err)?;
    let mut files = Vec::new();
    json_files(&fixtures(), &mut files);
    for f in &files {
        round_trip(f, &cat, &rep)?;
    }
    Ok(format!("{} commands run twice byte-identically; {} fixtures round-trip", commands.len(), files.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("HG associativity", criterion_1),
        ("representation law", criterion_2),
        ("symmetric power associativity", criterion_3),
        ("Schur module law", criterion_4),
        ("algebra inclusion", criterion_5),
        ("Koszul oracle agreement", criterion_6),
        ("operad axioms", criterion_7),
        ("theta independence and unit", criterion_8),
        ("chain complexes", criterion_9),
        ("CLI determinism and round trip", criterion_10),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let mut rng = random::rng(1000 + n as u64);
        match check(&mut rng) {
            Ok(detail) => println!("criterion {:>2} [PRIMARY] {name}: PASS ({detail})", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} [PRIMARY] {name}: FAIL ({why})", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
