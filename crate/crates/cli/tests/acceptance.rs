//! Exit criteria. Each criterion prints one PASS/FAIL line; the test fails if
//! any criterion fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use milnorkit::corpus;
use milnorkit_core::basing::{free_quotient_depth, max_basing_rel_unlink, mu_n_equal, Bound};
use milnorkit_core::diagram::parse_pd;
use milnorkit_core::gseries::{schreier_basis, FiniteQuotientMap};
use milnorkit_core::hall::{in_lcs, HallBasis};
use milnorkit_core::magnus::{lcs_degree, LcsDegree, MagnusSeries};
use milnorkit_core::milnor::{reduce_longitudes, table, MilnorTable};
use milnorkit_core::words::{commutator, FreeWord, Letter};
use milnorkit_core::{GroupPresentation, LinkDiagram};
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

const CORPUS: [&str; 6] = ["hopf", "hopf4", "borromean", "whitehead", "unlink2", "unlink3"];

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn load(name: &str) -> LinkDiagram {
    parse_pd(&fs::read_to_string(corpus_dir().join(format!("{name}.json"))).unwrap()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Check {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn ac1_hopf() -> Check {
    let start = Instant::now();
    for name in ["hopf", "hopf4"] {
        let d = load(name);
        let lk = d.linking_matrix().get(0, 1);
        ensure(lk == 1, || format!("{name}: linking number {lk}"))?;
        let t = table(&d, 2).map_err(err)?;
        let mb = t.get(&[0, 1]).unwrap().mu_bar;
        ensure(mb == 1 && mb == lk, || format!("{name}: mu-bar(12) = {mb}"))?;
        let b = max_basing_rel_unlink(&d, 6).map_err(err)?.max_basing;
        ensure(b == Bound::Exact(1), || format!("{name}: max basing {b}"))?;
        let q = free_quotient_depth(&d, 6).map_err(err)?;
        ensure(q == Bound::Exact(2), || format!("{name}: depth {q}"))?;
    }
    within(start, Duration::from_secs(1))
}

fn ac2_borromean() -> Check {
    let start = Instant::now();
    let d = load("borromean");
    ensure(d.linking_matrix().is_zero(), || "linking matrix nonzero".into())?;
    // hand Magnus computation for the corpus orientation
    let fixture = MagnusSeries::from_terms(3, 2, [(vec![], 1), (vec![0, 1], 1), (vec![1, 0], -1)]).unwrap();
    let rl = reduce_longitudes(&GroupPresentation::from_diagram(&d), 3).map_err(err)?;
    ensure(rl.get(2) == &fixture, || format!("third longitude {}", rl.get(2)))?;
    let t = table(&d, 3).map_err(err)?;
    let mb = t.get(&[0, 1, 2]).unwrap().mu_bar;
    ensure(mb.abs() == 1, || format!("mu-bar(123) = {mb}"))?;
    let b = max_basing_rel_unlink(&d, 6).map_err(err)?.max_basing;
    ensure(b == Bound::Exact(2), || format!("max basing {b}"))?;
    let q = free_quotient_depth(&d, 6).map_err(err)?;
    ensure(q == Bound::Exact(3), || format!("depth {q}"))?;
    within(start, Duration::from_secs(1))
}

fn ac3_whitehead() -> Check {
    let start = Instant::now();
    let d = load("whitehead");
    let t = table(&d, 4).map_err(err)?;
    ensure(t.vanishes_through(3), || "nonzero mu-bar of length <= 3".into())?;
    let mb = t.get(&[0, 0, 1, 1]).unwrap().mu_bar;
    ensure(mb.abs() == 1, || format!("mu-bar(1122) = {mb}"))?;
    let b = max_basing_rel_unlink(&d, 4).map_err(err)?.max_basing;
    ensure(b == Bound::Exact(3), || format!("max basing {b}"))?;
    let eq = mu_n_equal(&d, &LinkDiagram::unlink(2).unwrap(), 2).map_err(err)?;
    ensure(eq, || "mu_n_equal(Whitehead, unlink, 2) is false".into())?;
    within(start, Duration::from_secs(5))
}

fn ac4_unlinks() -> Check {
    let start = Instant::now();
    for m in 1..=4 {
        let d = LinkDiagram::unlink(m).unwrap();
        let t = table(&d, 6).map_err(err)?;
        ensure(t.vanishes_through(6), || format!("{m}-unlink has nonzero mu-bar"))?;
        let r = max_basing_rel_unlink(&d, 6).map_err(err)?;
        ensure(r.max_basing == Bound::AtLeast(6) && r.obstruction.is_none(), || {
            format!("{m}-unlink report {:?}", r.max_basing)
        })?;
    }
    within(start, Duration::from_secs(10))
}

fn random_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> FreeWord {
    let len = rng.gen_range(0..=max_len);
    FreeWord::reduce(rank, (0..len).map(|_| Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5))))
        .unwrap()
}

fn ac5_magnus_vs_hall() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut mismatches = Vec::new();
    for _ in 0..200 {
        let rank = rng.gen_range(1..=3);
        let w = if rng.gen_bool(0.5) {
            random_word(&mut rng, rank, 12)
        } else {
            // commutator-heavy words so that deeper classes are exercised
            let a = random_word(&mut rng, rank, 3);
            let b = random_word(&mut rng, rank, 3);
            let c = random_word(&mut rng, rank, 2);
            commutator(&commutator(&a, &b).unwrap(), &c).unwrap()
        };
        if w.len() > 12 {
            continue;
        }
        let basis = HallBasis::new(rank, 5).map_err(err)?;
        let by_hall = basis.collect(&w).map_err(err)?.least_weight(&basis);
        let by_magnus = lcs_degree(&w, 6).map_err(err)?;
        let agree = match (by_hall, by_magnus) {
            (Some(d), LcsDegree::Exact(e)) => d == e,
            (None, LcsDegree::AtLeast(6)) => true,
            _ => false,
        };
        if !agree {
            mismatches.push(format!("{w}: hall {by_hall:?}, magnus {by_magnus}"));
        }
        for k in 1..=5 {
            if in_lcs(&w, k).map_err(err)? != lcs_degree(&w, k + 1).map_err(err)?.at_least(k) {
                mismatches.push(format!("{w}: membership in F_{k}"));
            }
        }
    }
    ensure(mismatches.is_empty(), || mismatches.join("; "))
}

fn ac6_milnor_consistency() -> Check {
    for name in CORPUS {
        let d = load(name);
        let n = 5;
        let t = table(&d, n).map_err(err)?;
        let rl = reduce_longitudes(&GroupPresentation::from_diagram(&d), n).map_err(err)?;
        let upto = t.first_nonvanishing().map_or(n, |(i, _)| i.len());
        for k in 1..=upto {
            let vanish = t.vanishes_through(k);
            let deep = rl
                .series()
                .iter()
                .all(|s| s.least_nonconstant_degree().is_none_or(|deg| deg >= k));
            ensure(vanish == deep, || format!("{name}, k = {k}: mu-bar {vanish}, longitudes {deep}"))?;
        }
    }
    Ok(())
}

fn cyclic_ok(t: &MilnorTable) -> Result<(), String> {
    for (idx, e) in t.entries() {
        let mut rot = idx.0.clone();
        rot.rotate_left(1);
        let r = t.get(&rot).unwrap();
        let modulus = e.delta.gcd(&r.delta);
        let diff = e.mu_bar - r.mu_bar;
        let ok = if modulus == 0 { diff == 0 } else { diff % modulus == 0 };
        ensure(ok, || format!("{idx}: {e:?} vs {r:?}"))?;
    }
    Ok(())
}

fn ac7_symmetry_and_rebasing() -> Check {
    for name in CORPUS {
        let d = load(name);
        let t = table(&d, 5).map_err(err)?;
        cyclic_ok(&t).map_err(|e| format!("{name}: {e}"))?;
        let first = t.first_nonvanishing().map(|(i, e)| (i.clone(), e.mu_bar));
        for c in 0..d.component_count() {
            for shift in 1..d.components()[c].len() {
                let r = table(&d.rebased(c, shift).map_err(err)?, 5).map_err(err)?;
                let again = r.first_nonvanishing().map(|(i, e)| (i.clone(), e.mu_bar));
                ensure(first == again, || format!("{name} rebased ({c}, {shift}): {first:?} vs {again:?}"))?;
            }
        }
    }
    Ok(())
}

fn ac8_reidemeister_schreier() -> Check {
    let mut maps = Vec::new();
    for order in 1..=6usize {
        for rank in 1..=3usize {
            let mut shifts = vec![0; rank];
            loop {
                if let Ok(q) = FiniteQuotientMap::cyclic(order, &shifts) {
                    maps.push(q);
                }
                let mut i = 0;
                while i < rank {
                    shifts[i] += 1;
                    if shifts[i] < order {
                        break;
                    }
                    shifts[i] = 0;
                    i += 1;
                }
                if i == rank {
                    break;
                }
            }
        }
    }
    for q in &maps {
        let s = schreier_basis(q).map_err(err)?;
        let expected = 1 + q.order() * (q.rank() - 1);
        ensure(s.rank() == expected, || format!("order {} rank {}: got {}", q.order(), q.rank(), s.rank()))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..100 {
        let q = &maps[rng.gen_range(0..maps.len())];
        let s = schreier_basis(q).map_err(err)?;
        let w = random_word(&mut rng, q.rank(), 10);
        let w = w.mul(&s.transversal()[q.image(&w)].inverse()).unwrap();
        let back = s.expand(&s.rewrite(&w).map_err(err)?).map_err(err)?;
        ensure(back == w, || format!("round trip of {w} gave {back}"))?;
        let v = random_word(&mut rng, q.rank(), 6);
        let v = v.mul(&s.transversal()[q.image(&v)].inverse()).unwrap();
        let c = commutator(&w, &v).unwrap();
        for x in [&w, &c] {
            for n in 1..4 {
                if s.gamma_member(x, n + 1).map_err(err)? {
                    ensure(s.gamma_member(x, n).map_err(err)?, || format!("nesting fails for {x} at {n}"))?;
                }
            }
        }
    }
    Ok(())
}

fn read_outputs(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())
        })
        .collect();
    v.sort();
    v
}

fn ac9_determinism() -> Check {
    let work = tempfile::tempdir().map_err(err)?;
    let cache = work.path().join("cache");
    let (cold, warm, fresh) = (work.path().join("a"), work.path().join("b"), work.path().join("c"));
    let s1 = corpus::run(&corpus_dir(), 4, Some(&cache), &cold).map_err(err)?;
    let s2 = corpus::run(&corpus_dir(), 4, Some(&cache), &warm).map_err(err)?;
    let s3 = corpus::run(&corpus_dir(), 4, None, &fresh).map_err(err)?;
    ensure(s1.computed == 6 && s1.cached == 0 && s1.failures.is_empty(), || format!("{s1:?}"))?;
    ensure(s2.computed == 0 && s2.cached == 6, || format!("{s2:?}"))?;
    ensure(s3.computed == 6, || format!("{s3:?}"))?;
    let (a, b, c) = (read_outputs(&cold), read_outputs(&warm), read_outputs(&fresh));
    ensure(a.len() == 6, || format!("{} outputs", a.len()))?;
    ensure(a == b, || "cache hits differ from cold computes".into())?;
    ensure(a == c, || "independent runs differ".into())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 9] = [
        ("AC1 Hopf link values (2- and 4-crossing)", ac1_hopf),
        ("AC2 Borromean rings values", ac2_borromean),
        ("AC3 Whitehead link values", ac3_whitehead),
        ("AC4 unlinks vanish through length 6", ac4_unlinks),
        ("AC5 Magnus vs Hall oracle equivalence", ac5_magnus_vs_hall),
        ("AC6 Milnor-theorem consistency", ac6_milnor_consistency),
        ("AC7 cyclic symmetry and re-basing", ac7_symmetry_and_rebasing),
        ("AC8 Reidemeister-Schreier rank, rewriting, nesting", ac8_reidemeister_schreier),
        ("AC9 deterministic corpus output and cache", ac9_determinism),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(()) => println!("PASS  {name}"),
            Err(e) => {
                println!("FAIL  {name}: {e}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
