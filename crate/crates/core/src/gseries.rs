//! Lower central series of Γ = ker(F(m) → G) for a finite group G.
//!
//! G is given by the permutations the generators induce on its elements
//! (right-regular action). Reidemeister–Schreier on a shortlex Schreier
//! transversal gives a free basis of Γ, and Γ_n-membership is decided by the
//! Magnus expansion of the rewritten word in that basis. With G trivial this
//! is the ordinary lower central series of F.

use std::collections::{HashMap, VecDeque};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::limits::{check_degree, DEFAULT_MAX_GROUP_ORDER};
use crate::magnus::lcs_degree;
use crate::words::{FreeWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuotientMap {
    order: usize,
    images: Vec<Vec<usize>>,
    identity: usize,
}

#[derive(Deserialize)]
struct QuotientDocument {
    order: usize,
    images: Vec<Vec<usize>>,
    #[serde(default)]
    identity: usize,
}

impl FiniteQuotientMap {
    /// `images[i][g]` is the element `g · image(x_{i+1})`.
    pub fn new(order: usize, images: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::NotSurjective("group of order 0".into()));
        }
        if order > DEFAULT_MAX_GROUP_ORDER {
            return Err(Error::Index(format!(
                "group order {order} exceeds the bound {DEFAULT_MAX_GROUP_ORDER}"
            )));
        }
        if identity >= order {
            return Err(Error::Index(format!("identity {identity} in a group of order {order}")));
        }
        for (i, p) in images.iter().enumerate() {
            let mut seen = vec![false; order];
            if p.len() != order || p.iter().any(|&v| v >= order || std::mem::replace(&mut seen[v], true)) {
                return Err(Error::Parse(format!(
                    "image of x{} is not a permutation of 0..{order}",
                    i + 1
                )));
            }
        }
        let q = FiniteQuotientMap { order, images, identity };
        let reached = q.orbit_size();
        if reached != order {
            return Err(Error::NotSurjective(format!(
                "generators reach {reached} of {order} elements"
            )));
        }
        Ok(q)
    }

    /// Parse `{"order":2,"images":[[1,0],[0,1]]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: QuotientDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("quotient JSON: {e}")))?;
        Self::new(doc.order, doc.images, doc.identity)
    }

    /// Z/order with `x_i ↦ shifts[i]`.
    pub fn cyclic(order: usize, shifts: &[usize]) -> Result<Self> {
        let images = shifts
            .iter()
            .map(|&s| (0..order).map(|g| (g + s) % order).collect())
            .collect();
        Self::new(order, images, 0)
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn orbit_size(&self) -> usize {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        let mut count = 1;
        while let Some(g) = queue.pop_front() {
            for p in &self.images {
                // the inverse images are reached through the cycle of p
                let h = p[g];
                if !seen[h] {
                    seen[h] = true;
                    count += 1;
                    queue.push_back(h);
                }
            }
        }
        count
    }

    fn act(&self, g: usize, l: Letter) -> usize {
        let p = &self.images[l.gen];
        if l.inverse {
            p.iter().position(|&v| v == g).expect("permutation")
        } else {
            p[g]
        }
    }

    /// Image of a word, as an element index.
    pub fn image(&self, w: &FreeWord) -> usize {
        w.letters().iter().fold(self.identity, |g, &l| self.act(g, l))
    }
}

#[derive(Debug, Clone)]
pub struct SchreierData {
    quotient: FiniteQuotientMap,
    /// Transversal word for each element.
    transversal: Vec<FreeWord>,
    basis: Vec<FreeWord>,
    /// (element, generator) → basis letter, absent when the Schreier
    /// generator is trivial.
    table: HashMap<(usize, usize), usize>,
}

impl SchreierData {
    pub fn new(q: &FiniteQuotientMap) -> Result<Self> {
        let m = q.rank();
        // BFS over letters x1, x1⁻¹, x2, x2⁻¹, ... gives shortlex representatives
        let mut transversal: Vec<Option<FreeWord>> = vec![None; q.order];
        transversal[q.identity] = Some(FreeWord::identity(m));
        let mut queue = VecDeque::from([q.identity]);
        let mut tree_edges: Vec<(usize, usize)> = Vec::new();
        while let Some(g) = queue.pop_front() {
            let rep = transversal[g].clone().expect("visited");
            for gen in 0..m {
                for inverse in [false, true] {
                    let l = Letter::new(gen, inverse);
                    let h = q.act(g, l);
                    if transversal[h].is_none() {
                        let w = FreeWord::reduce(m, rep.letters().iter().copied().chain([l]))?;
                        transversal[h] = Some(w);
                        tree_edges.push(if inverse { (h, gen) } else { (g, gen) });
                        queue.push_back(h);
                    }
                }
            }
        }
        let transversal: Vec<FreeWord> = transversal
            .into_iter()
            .map(|t| t.ok_or_else(|| Error::NotSurjective("unreachable element".into())))
            .collect::<Result<_>>()?;

        let mut order: Vec<usize> = (0..q.order).collect();
        order.sort_by(|&a, &b| {
            let (ta, tb) = (&transversal[a], &transversal[b]);
            ta.len().cmp(&tb.len()).then_with(|| shortlex_key(ta).cmp(&shortlex_key(tb)))
        });

        let mut basis = Vec::new();
        let mut table = HashMap::new();
        for &g in &order {
            for gen in 0..m {
                if tree_edges.contains(&(g, gen)) {
                    continue;
                }
                let h = q.act(g, Letter::pos(gen));
                let word = transversal[g]
                    .mul(&FreeWord::generator(m, gen)?)?
                    .mul(&transversal[h].inverse())?;
                if word.is_empty() {
                    continue;
                }
                table.insert((g, gen), basis.len());
                basis.push(word);
            }
        }
        Ok(SchreierData { quotient: q.clone(), transversal, basis, table })
    }

    pub fn basis(&self) -> &[FreeWord] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn transversal(&self) -> &[FreeWord] {
        &self.transversal
    }

    pub fn quotient(&self) -> &FiniteQuotientMap {
        &self.quotient
    }

    /// Rewrite a kernel word in the free basis of Γ.
    pub fn rewrite(&self, w: &FreeWord) -> Result<FreeWord> {
        let q = &self.quotient;
        let mut g = q.identity;
        let mut letters = Vec::new();
        for &l in w.letters() {
            if l.inverse {
                let prev = q.act(g, l);
                if let Some(&s) = self.table.get(&(prev, l.gen)) {
                    letters.push(Letter::neg(s));
                }
                g = prev;
            } else {
                if let Some(&s) = self.table.get(&(g, l.gen)) {
                    letters.push(Letter::pos(s));
                }
                g = q.act(g, l);
            }
        }
        if g != q.identity {
            return Err(Error::NotInKernel(g));
        }
        FreeWord::reduce(self.rank(), letters)
    }

    /// Substitute the basis words back in, giving a word in F(m).
    pub fn expand(&self, w: &FreeWord) -> Result<FreeWord> {
        let m = self.quotient.rank();
        let mut out = FreeWord::identity(m);
        for l in w.letters() {
            let b = &self.basis[l.gen];
            out = out.mul(&if l.inverse { b.inverse() } else { b.clone() })?;
        }
        Ok(out)
    }

    /// Whether `w` lies in Γ_n.
    pub fn gamma_member(&self, w: &FreeWord, n: usize) -> Result<bool> {
        check_degree(n)?;
        let rewritten = self.rewrite(w)?;
        if n <= 1 {
            return Ok(true);
        }
        if self.rank() == 0 {
            return Ok(true);
        }
        Ok(lcs_degree(&rewritten, n)?.at_least(n))
    }
}

fn shortlex_key(w: &FreeWord) -> Vec<(usize, bool)> {
    w.letters().iter().map(|l| (l.gen, l.inverse)).collect()
}

pub fn schreier_basis(q: &FiniteQuotientMap) -> Result<SchreierData> {
    SchreierData::new(q)
}

pub fn rewrite_in_subgroup(s: &SchreierData, w: &FreeWord) -> Result<FreeWord> {
    s.rewrite(w)
}

pub fn gamma_n_member(s: &SchreierData, w: &FreeWord, n: usize) -> Result<bool> {
    s.gamma_member(w, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::commutator;

    fn w(rank: usize, s: &[i64]) -> FreeWord {
        FreeWord::from_signed(rank, s).unwrap()
    }

    fn c2_example() -> SchreierData {
        let q = FiniteQuotientMap::from_json(r#"{"order":2,"images":[[1,0],[0,1]]}"#).unwrap();
        schreier_basis(&q).unwrap()
    }

    #[test]
    fn c2_basis() {
        let s = c2_example();
        let mut got: Vec<String> = s.basis().iter().map(|b| b.to_string()).collect();
        got.sort();
        assert_eq!(got, vec!["x1 x1", "x1 x2 x1^-1", "x2"]);
    }

    #[test]
    fn trivial_group_gives_generators() {
        let q = FiniteQuotientMap::new(1, vec![vec![0], vec![0], vec![0]], 0).unwrap();
        let s = schreier_basis(&q).unwrap();
        assert_eq!(s.basis(), &[w(3, &[1]), w(3, &[2]), w(3, &[3])]);
    }

    #[test]
    fn cyclic_rank_one() {
        let s = schreier_basis(&FiniteQuotientMap::cyclic(3, &[1]).unwrap()).unwrap();
        assert_eq!(s.basis(), &[w(1, &[1, 1, 1])]);
    }

    #[test]
    fn not_surjective() {
        assert!(matches!(
            FiniteQuotientMap::cyclic(4, &[2, 0]),
            Err(Error::NotSurjective(_))
        ));
        assert!(FiniteQuotientMap::from_json(r#"{"order":2,"images":[[0,0]]}"#).is_err());
    }

    #[test]
    fn rewriting() {
        let s = c2_example();
        let sq = s.rewrite(&w(2, &[1, 1])).unwrap();
        assert_eq!(sq.len(), 1);
        assert_eq!(s.basis()[sq.letters()[0].gen], w(2, &[1, 1]));
        assert!(s.rewrite(&FreeWord::identity(2)).unwrap().is_empty());
        assert_eq!(s.rewrite(&w(2, &[1])), Err(Error::NotInKernel(1)));
    }

    #[test]
    fn membership() {
        let s = c2_example();
        let a = w(2, &[2]);
        let b = w(2, &[1, 1]);
        let c = commutator(&a, &b).unwrap();
        assert!(s.gamma_member(&c, 2).unwrap());
        assert!(!s.gamma_member(&c, 3).unwrap());
        assert!(s.gamma_member(&a, 1).unwrap());
        assert!(!s.gamma_member(&a, 2).unwrap());
        assert!(matches!(s.gamma_member(&w(2, &[1]), 2), Err(Error::NotInKernel(_))));
    }
}
