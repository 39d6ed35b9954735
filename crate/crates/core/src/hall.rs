//! Basic commutators and the collection process in free nilpotent groups.
//!
//! Commutators follow the crate convention `[a, b] = a b a⁻¹ b⁻¹`. With that
//! convention `c x = [c, x] x c`, so collection moves letters to the right
//! and normal forms read `c_N^{e_N} ⋯ c_2^{e_2} c_1^{e_1}` (heaviest on the
//! left). A commutator `[a, b]` of basis elements is basic when `a < b` and
//! either `b` is a generator or `b = [s, t]` with `s ≤ a`. Entries are
//! ordered by weight; within a weight by right factor, then left factor.
//!
//! This module never touches Magnus series: it is the independent route
//! used to cross-check `magnus::lcs_degree`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::limits::check_degree;
use crate::words::{commutator, FreeWord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisEntry {
    pub weight: usize,
    /// `None` for generators; `Some((a, b))` for `[entry a, entry b]`.
    pub factors: Option<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct HallBasis {
    rank: usize,
    class: usize,
    entries: Vec<BasisEntry>,
    lookup: HashMap<(usize, usize), usize>,
}

impl HallBasis {
    pub fn new(rank: usize, class: usize) -> Result<Self> {
        check_degree(class)?;
        if rank == 0 {
            return Err(Error::Index("Hall basis of rank 0".into()));
        }
        let mut entries: Vec<BasisEntry> = (0..rank)
            .map(|_| BasisEntry { weight: 1, factors: None })
            .collect();
        let mut lookup = HashMap::new();
        for k in 2..=class {
            let before = entries.len();
            for b in 0..before {
                let wb = entries[b].weight;
                if wb >= k {
                    continue;
                }
                for a in 0..b {
                    if entries[a].weight + wb != k {
                        continue;
                    }
                    let ok = match entries[b].factors {
                        None => true,
                        Some((s, _)) => s <= a,
                    };
                    if ok {
                        lookup.insert((a, b), entries.len());
                        entries.push(BasisEntry { weight: k, factors: Some((a, b)) });
                    }
                }
            }
        }
        Ok(HallBasis { rank, class, entries, lookup })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[BasisEntry] {
        &self.entries
    }

    pub fn weight(&self, idx: usize) -> usize {
        self.entries[idx].weight
    }

    pub fn count_of_weight(&self, k: usize) -> usize {
        self.entries.iter().filter(|e| e.weight == k).count()
    }

    /// Index of the basic commutator `[a, b]`, if it exists within the class.
    pub fn find(&self, a: usize, b: usize) -> Option<usize> {
        self.lookup.get(&(a, b)).copied()
    }

    /// The entry written out as a word in the generators.
    pub fn word(&self, idx: usize) -> FreeWord {
        match self.entries[idx].factors {
            None => FreeWord::generator(self.rank, idx).expect("generator in range"),
            Some((a, b)) => commutator(&self.word(a), &self.word(b)).expect("same rank"),
        }
    }

    pub fn label(&self, idx: usize) -> String {
        match self.entries[idx].factors {
            None => format!("x{}", idx + 1),
            Some((a, b)) => format!("[{},{}]", self.label(a), self.label(b)),
        }
    }

    /// The group element with the given coordinates, as a generator word.
    pub fn element(&self, coords: &NilpotentCoordinates) -> FreeWord {
        let mut out = FreeWord::identity(self.rank);
        for idx in (0..self.len()).rev() {
            let e = coords.exponents[idx];
            if e != 0 {
                out = out.mul(&self.word(idx).pow(e)).expect("same rank");
            }
        }
        out
    }

    /// Normal form of `w` in F/F_{class+1} by the collection process.
    pub fn collect(&self, w: &FreeWord) -> Result<NilpotentCoordinates> {
        if w.rank() > self.rank {
            return Err(Error::RankMismatch(w.rank(), self.rank));
        }
        let mut word: Vec<Sym> = w
            .letters()
            .iter()
            .map(|l| Sym { idx: l.gen, inv: l.inverse })
            .collect();
        let mut exponents = vec![0i64; self.len()];
        let mut memo = HashMap::new();
        for c in 0..self.len() {
            if word.is_empty() {
                break;
            }
            let mut pending: VecDeque<Sym> = VecDeque::new();
            for &s in word.iter().rev() {
                if s.idx == c {
                    exponents[c] += if s.inv { -1 } else { 1 };
                    pending = self.conjugate_all(c, s.inv, &pending, &mut memo);
                } else {
                    push_front_reduced(&mut pending, s);
                }
            }
            word = pending.into_iter().collect();
        }
        Ok(NilpotentCoordinates { exponents })
    }

    /// `c^{±1} · P · c^{∓1}`, letter by letter.
    fn conjugate_all(
        &self,
        c: usize,
        inv: bool,
        pending: &VecDeque<Sym>,
        memo: &mut HashMap<(usize, usize, bool), Vec<Sym>>,
    ) -> VecDeque<Sym> {
        let mut out = VecDeque::with_capacity(pending.len());
        for &s in pending {
            let image = memo
                .entry((c, s.idx, inv))
                .or_insert_with(|| self.conjugate(c, s.idx, inv))
                .clone();
            if s.inv {
                for t in image.iter().rev() {
                    push_back_reduced(&mut out, t.inv());
                }
            } else {
                for &t in &image {
                    push_back_reduced(&mut out, t);
                }
            }
        }
        out
    }

    /// `c x c⁻¹` (or `c⁻¹ x c` when `inv`) as a word in basic commutators,
    /// dropping anything of weight above the class.
    fn conjugate(&self, c: usize, x: usize, inv: bool) -> Vec<Sym> {
        if !inv {
            // c x c⁻¹ = [c, x] x
            return match self.find(c, x) {
                Some(k) => vec![Sym { idx: k, inv: false }, Sym { idx: x, inv: false }],
                None => vec![Sym { idx: x, inv: false }],
            };
        }
        // c⁻¹ x c = (c⁻¹ [c, x] c)⁻¹ x
        match self.find(c, x) {
            None => vec![Sym { idx: x, inv: false }],
            Some(k) => {
                let inner = self.conjugate(c, k, true);
                let mut out: Vec<Sym> = inner.iter().rev().map(|s| s.inv()).collect();
                out.push(Sym { idx: x, inv: false });
                out
            }
        }
    }

    /// One line per entry, `w=2 [x1,x2]`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, e) in self.entries.iter().enumerate() {
            out.push_str(&format!("w={} {}\n", e.weight, self.label(i)));
        }
        out
    }
}

impl fmt::Display for HallBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Sym {
    idx: usize,
    inv: bool,
}

impl Sym {
    fn inv(self) -> Self {
        Sym { idx: self.idx, inv: !self.inv }
    }
}

fn push_front_reduced(q: &mut VecDeque<Sym>, s: Sym) {
    if q.front() == Some(&s.inv()) {
        q.pop_front();
    } else {
        q.push_front(s);
    }
}

fn push_back_reduced(q: &mut VecDeque<Sym>, s: Sym) {
    if q.back() == Some(&s.inv()) {
        q.pop_back();
    } else {
        q.push_back(s);
    }
}

/// Exponents of a normal form, indexed like the basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NilpotentCoordinates {
    pub exponents: Vec<i64>,
}

impl NilpotentCoordinates {
    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Smallest weight carrying a nonzero exponent.
    pub fn least_weight(&self, basis: &HallBasis) -> Option<usize> {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, _)| basis.weight(i))
            .min()
    }
}

pub fn hall_basis(rank: usize, class: usize) -> Result<HallBasis> {
    HallBasis::new(rank, class)
}

pub fn collect(w: &FreeWord, class: usize) -> Result<NilpotentCoordinates> {
    HallBasis::new(w.rank().max(1), class)?.collect(w)
}

/// Whether `w` lies in the k-th lower central subgroup F_k.
pub fn in_lcs(w: &FreeWord, k: usize) -> Result<bool> {
    if k <= 1 {
        check_degree(k)?;
        return Ok(true);
    }
    let basis = HallBasis::new(w.rank().max(1), k)?;
    let coords = basis.collect(w)?;
    Ok(coords.least_weight(&basis).is_none_or(|d| d >= k))
}

/// Necklace-polynomial count of basic commutators of weight `k` in rank `m`.
pub fn witt_number(m: usize, k: usize) -> usize {
    let mut total: i64 = 0;
    for d in 1..=k {
        if k.is_multiple_of(d) {
            total += mobius(d) * (m as i64).pow((k / d) as u32);
        }
    }
    (total / k as i64) as usize
}

fn mobius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(rank: usize, s: &[i64]) -> FreeWord {
        FreeWord::from_signed(rank, s).unwrap()
    }

    #[test]
    fn small_bases() {
        let b = hall_basis(2, 2).unwrap();
        assert_eq!(b.dump(), "w=1 x1\nw=1 x2\nw=2 [x1,x2]\n");
        let b = hall_basis(2, 3).unwrap();
        assert_eq!(b.len(), 5);
        assert_eq!(b.label(3), "[x1,[x1,x2]]");
        assert_eq!(b.label(4), "[x2,[x1,x2]]");
        assert_eq!(hall_basis(3, 2).unwrap().len(), 6);
    }

    #[test]
    fn witt_counts() {
        assert_eq!(witt_number(2, 3), 2);
        assert_eq!(witt_number(3, 2), 3);
        assert_eq!(witt_number(2, 6), 9);
        for m in 1..=4 {
            let b = hall_basis(m, 6).unwrap();
            for k in 1..=6 {
                assert_eq!(b.count_of_weight(k), witt_number(m, k), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn collect_commutator() {
        let c = collect(&w(2, &[1, 2, -1, -2]), 2).unwrap();
        assert_eq!(c.exponents, vec![0, 0, 1]);
        assert!(collect(&FreeWord::identity(2), 4).unwrap().is_trivial());
    }

    #[test]
    fn collect_conjugate() {
        // x1 x2 x1⁻¹ = [x1,x2] x2
        let c = collect(&w(2, &[1, 2, -1]), 2).unwrap();
        assert_eq!(c.exponents, vec![0, 1, 1]);
    }

    #[test]
    fn lcs_membership() {
        let x1 = w(2, &[1]);
        let c = commutator(&x1, &w(2, &[2])).unwrap();
        assert!(in_lcs(&c, 2).unwrap());
        assert!(!in_lcs(&x1, 2).unwrap());
        let cc = commutator(&c, &x1).unwrap();
        assert!(in_lcs(&cc, 3).unwrap());
        assert!(!in_lcs(&cc, 4).unwrap());
    }

    #[test]
    fn class_ceiling() {
        assert!(matches!(hall_basis(2, 99), Err(Error::DegreeOverflow { .. })));
    }
}
