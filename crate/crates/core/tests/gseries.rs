use milnorkit_core::gseries::{schreier_basis, FiniteQuotientMap};
use milnorkit_core::words::{commutator, FreeWord, Letter};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> FreeWord {
    let len = rng.gen_range(0..=max_len);
    FreeWord::reduce(
        rank,
        (0..len).map(|_| Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5))),
    )
    .unwrap()
}

fn random_cyclic(rng: &mut ChaCha8Rng) -> FiniteQuotientMap {
    loop {
        let order = rng.gen_range(1..=6);
        let rank = rng.gen_range(1..=3);
        let shifts: Vec<usize> = (0..rank).map(|_| rng.gen_range(0..order)).collect();
        if let Ok(q) = FiniteQuotientMap::cyclic(order, &shifts) {
            return q;
        }
    }
}

/// A word in the kernel: a random word followed by its image's transversal
/// inverse.
fn random_kernel_word(rng: &mut ChaCha8Rng, q: &FiniteQuotientMap, t: &[FreeWord]) -> FreeWord {
    let w = random_word(rng, q.rank(), 10);
    w.mul(&t[q.image(&w)].inverse()).unwrap()
}

#[test]
fn nielsen_schreier_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let q = random_cyclic(&mut rng);
        let s = schreier_basis(&q).unwrap();
        assert_eq!(s.rank(), 1 + q.order() * (q.rank() - 1));
        for b in s.basis() {
            assert_eq!(q.image(b), 0);
        }
    }
}

#[test]
fn rewriting_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 100 {
        let q = random_cyclic(&mut rng);
        let s = schreier_basis(&q).unwrap();
        let w = random_kernel_word(&mut rng, &q, s.transversal());
        let rewritten = s.rewrite(&w).unwrap();
        assert_eq!(s.expand(&rewritten).unwrap(), w);
        checked += 1;
    }
}

#[test]
fn gamma_series_is_nested() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..60 {
        let q = random_cyclic(&mut rng);
        let s = schreier_basis(&q).unwrap();
        let a = random_kernel_word(&mut rng, &q, s.transversal());
        let b = random_kernel_word(&mut rng, &q, s.transversal());
        let w = if rng.gen_bool(0.5) { commutator(&a, &b).unwrap() } else { a };
        assert!(s.gamma_member(&w, 1).unwrap());
        for k in 1..4 {
            if s.gamma_member(&w, k + 1).unwrap() {
                assert!(s.gamma_member(&w, k).unwrap(), "w = {w}, k = {k}");
            }
        }
    }
}
