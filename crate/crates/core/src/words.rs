//! Freely reduced words in a free group of finite rank.
//!
//! Generators are 0-based internally and printed 1-based (`x1`, `x2`, ...).
//! The commutator convention used everywhere in the crate is
//! `[a, b] = a b a⁻¹ b⁻¹`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn pos(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn neg(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    /// Letter for `g^sign`, `sign` being ±1.
    pub fn with_sign(gen: usize, sign: i8) -> Self {
        Letter { gen, inverse: sign < 0 }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// A freely reduced word in F(rank).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        FreeWord { rank, letters: Vec::new() }
    }

    pub fn generator(rank: usize, gen: usize) -> Result<Self> {
        Self::reduce(rank, [Letter::pos(gen)])
    }

    /// Freely reduce a letter sequence. Fails if a letter names a generator
    /// outside `0..rank`.
    pub fn reduce<I: IntoIterator<Item = Letter>>(rank: usize, letters: I) -> Result<Self> {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if l.gen >= rank {
                return Err(Error::Index(format!(
                    "generator x{} in a word of rank {}",
                    l.gen + 1,
                    rank
                )));
            }
            push_reduced(&mut out, l);
        }
        Ok(FreeWord { rank, letters: out })
    }

    /// Build from signed 1-based generator numbers: `[1, -2]` is `x1 x2^-1`.
    pub fn from_signed(rank: usize, signed: &[i64]) -> Result<Self> {
        let mut letters = Vec::with_capacity(signed.len());
        for &s in signed {
            if s == 0 {
                return Err(Error::Index("generator number 0".into()));
            }
            letters.push(Letter::new(s.unsigned_abs() as usize - 1, s < 0));
        }
        Self::reduce(rank, letters)
    }

    /// Parse the text form `x1 x2^-1 x1`. An empty string (or `1`) is the
    /// identity.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (body, inverse) = match tok.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (tok, false),
            };
            let num = body
                .strip_prefix('x')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::Parse(format!("bad word token `{tok}`")))?;
            letters.push(Letter::new(num - 1, inverse));
        }
        Self::reduce(rank, letters)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn mul(&self, other: &FreeWord) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Ok(FreeWord { rank: self.rank, letters: out })
    }

    /// `self^e` for any integer `e`.
    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::new();
        for _ in 0..e.unsigned_abs() {
            for &l in &base.letters {
                push_reduced(&mut out, l);
            }
        }
        FreeWord { rank: self.rank, letters: out }
    }

    /// Same word viewed in a free group of larger rank.
    pub fn with_rank(&self, rank: usize) -> Result<Self> {
        Self::reduce(rank, self.letters.iter().copied())
    }

    /// Exponent sum per generator (the image in the abelianization).
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0; self.rank];
        for l in &self.letters {
            sums[l.gen] += l.sign();
        }
        sums
    }
}

/// `[a, b] = a b a⁻¹ b⁻¹`, freely reduced.
pub fn commutator(a: &FreeWord, b: &FreeWord) -> Result<FreeWord> {
    if a.rank != b.rank {
        return Err(Error::RankMismatch(a.rank, b.rank));
    }
    let letters = a
        .letters
        .iter()
        .chain(&b.letters)
        .copied()
        .chain(a.inverse().letters)
        .chain(b.inverse().letters)
        .collect::<Vec<_>>();
    FreeWord::reduce(a.rank, letters)
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    match out.last() {
        Some(&last) if last.cancels(l) => {
            out.pop();
        }
        _ => out.push(l),
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "x{}^-1", self.gen + 1)
        } else {
            write!(f, "x{}", self.gen + 1)
        }
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
