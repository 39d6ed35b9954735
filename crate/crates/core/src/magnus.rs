//! Truncated integer power series in non-commuting variables X1..Xm and the
//! Magnus embedding `x_i ↦ 1 + X_i` of the free group.
//!
//! A series of degree bound `n` keeps monomials of length `0..=n`; anything
//! longer is dropped as soon as it is produced. Zero coefficients are never
//! stored.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{Error, Result};
use crate::limits::check_degree;
use crate::words::{FreeWord, Letter};

/// A word in the variables, stored 0-based. Ordered by length, then
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_indices(idx: &[usize]) -> Self {
        Monomial(idx.iter().map(|&i| i as u16).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Monomial(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "X{}", v + 1)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnusSeries {
    rank: usize,
    degree: usize,
    coeffs: BTreeMap<Monomial, i64>,
}

impl MagnusSeries {
    pub fn constant(rank: usize, degree: usize, c: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert(Monomial::one(), c);
        }
        MagnusSeries { rank, degree, coeffs }
    }

    pub fn one(rank: usize, degree: usize) -> Self {
        Self::constant(rank, degree, 1)
    }

    /// Build from explicit terms; terms above the degree bound are dropped.
    pub fn from_terms<I>(rank: usize, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, i64)>,
    {
        let mut acc: HashMap<Monomial, i64> = HashMap::new();
        for (mono, c) in terms {
            if let Some(&v) = mono.iter().find(|&&v| v >= rank) {
                return Err(Error::Index(format!("variable X{} in rank {}", v + 1, rank)));
            }
            if mono.len() <= degree {
                *acc.entry(Monomial::from_indices(&mono)).or_insert(0) += c;
            }
        }
        Ok(Self::from_map(rank, degree, acc))
    }

    fn from_map(rank: usize, degree: usize, acc: HashMap<Monomial, i64>) -> Self {
        let coeffs = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        MagnusSeries { rank, degree, coeffs }
    }

    /// `1 + X_var`.
    pub fn variable(rank: usize, degree: usize, var: usize) -> Self {
        let mut s = Self::one(rank, degree);
        if degree >= 1 {
            s.coeffs.insert(Monomial(vec![var as u16]), 1);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.coeffs.iter().map(|(m, &c)| (m, c))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficient(&self, mono: &[usize]) -> i64 {
        self.coeffs
            .get(&Monomial::from_indices(mono))
            .copied()
            .unwrap_or(0)
    }

    pub fn constant_term(&self) -> i64 {
        self.coeffs.get(&Monomial::one()).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.constant_term() == 1
    }

    /// Smallest positive degree carrying a nonzero coefficient.
    pub fn least_nonconstant_degree(&self) -> Option<usize> {
        self.coeffs.keys().map(Monomial::degree).find(|&d| d > 0)
    }

    /// Coefficients of `X_1 .. X_m` (degree one part).
    pub fn linear_part(&self) -> Vec<i64> {
        (0..self.rank).map(|v| self.coefficient(&[v])).collect()
    }

    /// Drop everything above `degree`.
    pub fn truncated(&self, degree: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(m, _)| m.degree() <= degree)
            .map(|(m, &c)| (m.clone(), c))
            .collect();
        MagnusSeries { rank: self.rank, degree: degree.min(self.degree), coeffs }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank || self.degree != other.degree {
            return Err(Error::ShapeMismatch(self.rank, self.degree, other.rank, other.degree));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut coeffs = self.coeffs.clone();
        for (m, &c) in &other.coeffs {
            let e = coeffs.entry(m.clone()).or_insert(0);
            *e += c;
            if *e == 0 {
                coeffs.remove(m);
            }
        }
        Ok(MagnusSeries { coeffs, ..*self })
    }

    pub fn negate(&self) -> Self {
        MagnusSeries {
            coeffs: self.coeffs.iter().map(|(m, &c)| (m.clone(), -c)).collect(),
            ..*self
        }
    }

    /// Noncommutative product, truncated at the shared degree bound.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let n = self.degree;
        let mut acc: HashMap<Monomial, i64> = HashMap::new();
        for (ma, &ca) in &self.coeffs {
            let room = n - ma.degree();
            for (mb, &cb) in &other.coeffs {
                // keys iterate by increasing degree
                if mb.degree() > room {
                    break;
                }
                *acc.entry(ma.times(mb)).or_insert(0) += ca * cb;
            }
        }
        Ok(Self::from_map(self.rank, n, acc))
    }

    /// Right multiplication by the image of a single letter.
    fn mul_letter(&self, l: Letter) -> Self {
        let n = self.degree;
        let v = l.gen as u16;
        let mut acc: HashMap<Monomial, i64> = HashMap::new();
        for (m, &c) in &self.coeffs {
            *acc.entry(m.clone()).or_insert(0) += c;
            // (1 + X)^{-1} = 1 - X + X^2 - ...
            let mut mono = m.0.clone();
            let mut sign = if l.inverse { -1 } else { 1 };
            while mono.len() < n {
                mono.push(v);
                *acc.entry(Monomial(mono.clone())).or_insert(0) += sign * c;
                if !l.inverse {
                    break;
                }
                sign = -sign;
            }
        }
        Self::from_map(self.rank, n, acc)
    }

    /// Inverse of a unit (constant term ±1) via the geometric series.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0 != 1 && c0 != -1 {
            return Err(Error::NotAUnit(c0));
        }
        // self = c0 (1 + t) with t free of constant term
        let mut t = self.clone();
        t.coeffs.remove(&Monomial::one());
        if c0 == -1 {
            t = t.negate();
        }
        let minus_t = t.negate();
        let mut result = Self::one(self.rank, self.degree);
        let mut power = Self::one(self.rank, self.degree);
        for _ in 0..self.degree {
            power = power.multiply(&minus_t)?;
            if power.coeffs.is_empty() {
                break;
            }
            result = result.add(&power)?;
        }
        Ok(if c0 == -1 { result.negate() } else { result })
    }

    /// `self^e` for a unit series and any integer `e`.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut out = Self::one(self.rank, self.degree);
        for _ in 0..e.unsigned_abs() {
            out = out.multiply(&base)?;
        }
        Ok(out)
    }

    /// Canonical JSON with keys in monomial order, e.g. `{"1":1,"X1.X2":1}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series serialization")
    }
}

impl Serialize for MagnusSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.coeffs.len()))?;
        for (m, c) in &self.coeffs {
            map.serialize_entry(&m.to_string(), c)?;
        }
        map.end()
    }
}

impl fmt::Display for MagnusSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, &c)) in self.coeffs.iter().enumerate() {
            let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
            match (i, sign) {
                (0, "+") => {}
                (0, _) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else if abs == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}{m}")?;
            }
        }
        Ok(())
    }
}

/// Magnus image of a word truncated at degree `n`.
pub fn expand(w: &FreeWord, n: usize) -> Result<MagnusSeries> {
    check_degree(n)?;
    Ok(expand_unchecked(w, n))
}

pub(crate) fn expand_unchecked(w: &FreeWord, n: usize) -> MagnusSeries {
    w.letters()
        .iter()
        .fold(MagnusSeries::one(w.rank(), n), |s, &l| s.mul_letter(l))
}

/// Lower-central-series degree of a word as detected by its Magnus image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcsDegree {
    /// In F_k but not in F_{k+1}.
    Exact(usize),
    /// Every term of degree below the cap vanishes, so the word is in F_cap.
    AtLeast(usize),
}

impl LcsDegree {
    /// Whether the word is known to lie in F_k.
    pub fn at_least(self, k: usize) -> bool {
        match self {
            LcsDegree::Exact(d) => d >= k,
            LcsDegree::AtLeast(c) => c >= k,
        }
    }
}

impl fmt::Display for LcsDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LcsDegree::Exact(d) => write!(f, "{d}"),
            LcsDegree::AtLeast(c) => write!(f, "≥{c}"),
        }
    }
}

/// Least `k ≥ 1` with a nonzero degree-`k` term in the Magnus image, which
/// places `w` in F_k \ F_{k+1}; `AtLeast(cap)` if every degree below `cap`
/// vanishes.
pub fn lcs_degree(w: &FreeWord, cap: usize) -> Result<LcsDegree> {
    let s = expand(w, cap)?;
    Ok(match s.least_nonconstant_degree() {
        Some(d) if d < cap => LcsDegree::Exact(d),
        _ => LcsDegree::AtLeast(cap),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::DEFAULT_MAX_DEGREE;
    use crate::words::commutator;
    use proptest::prelude::*;

    fn w(rank: usize, s: &[i64]) -> FreeWord {
        FreeWord::from_signed(rank, s).unwrap()
    }

    fn series(rank: usize, n: usize, terms: &[(&[usize], i64)]) -> MagnusSeries {
        MagnusSeries::from_terms(rank, n, terms.iter().map(|(m, c)| (m.to_vec(), *c))).unwrap()
    }

    #[test]
    fn generator_images() {
        assert_eq!(expand(&w(2, &[1]), 3).unwrap(), series(2, 3, &[(&[], 1), (&[0], 1)]));
        assert_eq!(
            expand(&w(2, &[-1]), 2).unwrap(),
            series(2, 2, &[(&[], 1), (&[0], -1), (&[0, 0], 1)])
        );
    }

    #[test]
    fn commutator_image() {
        let c = w(2, &[1, 2, -1, -2]);
        assert_eq!(
            expand(&c, 2).unwrap(),
            series(2, 2, &[(&[], 1), (&[0, 1], 1), (&[1, 0], -1)])
        );
    }

    #[test]
    fn products() {
        let a = MagnusSeries::variable(2, 2, 0);
        let b = series(2, 2, &[(&[], 1), (&[0], -1)]);
        assert_eq!(a.multiply(&b).unwrap(), series(2, 2, &[(&[], 1), (&[0, 0], -1)]));
        let y = MagnusSeries::variable(2, 2, 1);
        assert_eq!(
            a.multiply(&y).unwrap(),
            series(2, 2, &[(&[], 1), (&[0], 1), (&[1], 1), (&[0, 1], 1)])
        );
        let two = MagnusSeries::constant(2, 2, 2);
        let three = MagnusSeries::constant(2, 2, 3);
        assert_eq!(two.multiply(&three).unwrap(), MagnusSeries::constant(2, 2, 6));
        assert!(matches!(
            a.multiply(&MagnusSeries::one(2, 3)),
            Err(Error::ShapeMismatch(..))
        ));
    }

    #[test]
    fn inverses() {
        let a = MagnusSeries::variable(1, 3, 0);
        assert_eq!(
            a.invert().unwrap(),
            series(1, 3, &[(&[], 1), (&[0], -1), (&[0, 0], 1), (&[0, 0, 0], -1)])
        );
        assert_eq!(MagnusSeries::one(2, 4).invert().unwrap(), MagnusSeries::one(2, 4));
        assert_eq!(MagnusSeries::constant(2, 4, 0).invert(), Err(Error::NotAUnit(0)));
        let minus = series(2, 3, &[(&[], -1), (&[1], 1)]);
        let inv = minus.invert().unwrap();
        assert!(minus.multiply(&inv).unwrap().is_one());
    }

    #[test]
    fn degree_ceiling() {
        assert!(matches!(
            expand(&w(1, &[1]), DEFAULT_MAX_DEGREE + 1),
            Err(Error::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn lcs_degrees() {
        let x1 = w(2, &[1]);
        let x2 = w(2, &[2]);
        let c = commutator(&x1, &x2).unwrap();
        assert_eq!(lcs_degree(&c, 5).unwrap(), LcsDegree::Exact(2));
        assert_eq!(lcs_degree(&x1, 5).unwrap(), LcsDegree::Exact(1));
        let cc = commutator(&c, &x1).unwrap();
        assert_eq!(lcs_degree(&cc, 5).unwrap(), LcsDegree::Exact(3));
        assert_eq!(lcs_degree(&cc, 3).unwrap(), LcsDegree::AtLeast(3));
        assert_eq!(lcs_degree(&FreeWord::identity(2), 4).unwrap(), LcsDegree::AtLeast(4));
    }

    #[test]
    fn json_and_text() {
        let s = expand(&w(2, &[1, 2, -1, -2]), 2).unwrap();
        assert_eq!(s.to_json(), r#"{"1":1,"X1.X2":1,"X2.X1":-1}"#);
        assert_eq!(s.to_string(), "1 + X1.X2 - X2.X1");
    }

    fn word_strategy() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(prop_oneof![-3i64..=-1, 1i64..=3], 0..=10)
    }

    proptest! {
        #[test]
        fn expand_is_multiplicative(u in word_strategy(), v in word_strategy(), n in 1usize..=5) {
            let (u, v) = (w(3, &u), w(3, &v));
            let lhs = expand(&u.mul(&v).unwrap(), n).unwrap();
            let rhs = expand(&u, n).unwrap().multiply(&expand(&v, n).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn expand_respects_inverse(u in word_strategy(), n in 1usize..=5) {
            let u = w(3, &u);
            prop_assert_eq!(
                expand(&u.inverse(), n).unwrap(),
                expand(&u, n).unwrap().invert().unwrap()
            );
        }

        #[test]
        fn linear_part_is_abelianization(u in word_strategy()) {
            let u = w(3, &u);
            prop_assert_eq!(expand(&u, 3).unwrap().linear_part(), u.exponent_sums());
        }
    }
}
