//! Basing questions for links in S³ answered from μ̄ tables.
//!
//! An n-basing of a link relative to the unlink exists exactly when every μ̄
//! of length at most n vanishes, and then π/π_{n+1} ≅ F/F_{n+1}. For two
//! links whose μ̄ vanish through length n, an (n+1)-basing of one relative to
//! the other exists exactly when their length-(n+1) μ̄ agree. Outside that
//! hypothesis a relative report only records where the tables stop agreeing.

use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::milnor::{MilnorEntry, MilnorTable, MultiIndex};

pub const DEFAULT_CAP: usize = 6;

/// A depth that is either known or bounded below by the search cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Exact(usize),
    AtLeast(usize),
}

impl Bound {
    pub fn exact(self) -> Option<usize> {
        match self {
            Bound::Exact(v) => Some(v),
            Bound::AtLeast(_) => None,
        }
    }

    pub fn is_capped(self) -> bool {
        matches!(self, Bound::AtLeast(_))
    }

    pub fn value(self) -> usize {
        match self {
            Bound::Exact(v) | Bound::AtLeast(v) => v,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Exact(v) => write!(f, "{v}"),
            Bound::AtLeast(v) => write!(f, "≥{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasingReport {
    pub max_basing: Bound,
    /// Least index at length `max_basing + 1` where the check fails.
    pub obstruction: Option<MultiIndex>,
    pub cap: usize,
    pub components: usize,
    /// Relative reports only: whether both tables vanish below the agreement
    /// level, which is what turns agreement into a basing statement.
    pub hypothesis_met: Option<bool>,
}

impl BasingReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization")
    }
}

impl Serialize for BasingReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("capped", &self.max_basing.is_capped())?;
        if let Some(h) = self.hypothesis_met {
            map.serialize_entry("hypothesis_met", &h)?;
        }
        map.serialize_entry("max_basing", &self.max_basing.value())?;
        map.serialize_entry(
            "obstruction",
            &self.obstruction.as_ref().map(|i| i.key(self.components)),
        )?;
        map.end()
    }
}

fn check_cap(cap: usize) -> Result<()> {
    if cap < 2 {
        return Err(Error::Index(format!("cap {cap} is below 2")));
    }
    Ok(())
}

/// Largest n ≤ cap with every μ̄ of length ≤ n vanishing, from a table whose
/// length bound is at least `cap`.
pub fn max_basing_from_table(t: &MilnorTable, cap: usize) -> BasingReport {
    let limit = cap.min(t.length_bound());
    for k in 2..=limit {
        if let Some((idx, _)) = t.first_nonzero_at(k) {
            return BasingReport {
                max_basing: Bound::Exact(k - 1),
                obstruction: Some(idx.clone()),
                cap,
                components: t.component_count(),
                hypothesis_met: None,
            };
        }
    }
    BasingReport {
        max_basing: Bound::AtLeast(limit),
        obstruction: None,
        cap,
        components: t.component_count(),
        hypothesis_met: None,
    }
}

pub fn max_basing_rel_unlink(d: &LinkDiagram, cap: usize) -> Result<BasingReport> {
    check_cap(cap)?;
    let t = MilnorTable::compute(d, cap)?;
    Ok(max_basing_from_table(&t, cap))
}

/// Largest k with π/π_k ≅ F/F_k guaranteed: one more than the maximal basing
/// length.
pub fn free_quotient_depth(d: &LinkDiagram, cap: usize) -> Result<Bound> {
    let r = max_basing_rel_unlink(d, cap)?;
    Ok(match r.max_basing {
        Bound::Exact(n) => Bound::Exact(n + 1),
        Bound::AtLeast(c) => Bound::AtLeast(c),
    })
}

fn entries_agree(a: &MilnorEntry, b: &MilnorEntry) -> bool {
    let modulus = a.delta.gcd(&b.delta);
    if modulus == 0 {
        a.mu_bar == b.mu_bar
    } else {
        (a.mu_bar - b.mu_bar).rem_euclid(modulus) == 0
    }
}

fn first_disagreement<'a>(a: &'a MilnorTable, b: &MilnorTable, k: usize) -> Option<&'a MultiIndex> {
    a.of_length(k)
        .find(|(idx, ea)| b.get(&idx.0).is_none_or(|eb| !entries_agree(ea, eb)))
        .map(|(idx, _)| idx)
}

pub fn relative_from_tables(a: &MilnorTable, b: &MilnorTable, cap: usize) -> Result<BasingReport> {
    if a.component_count() != b.component_count() {
        return Err(Error::ComponentMismatch(a.component_count(), b.component_count()));
    }
    let limit = cap.min(a.length_bound()).min(b.length_bound());
    let m = a.component_count();
    for k in 2..=limit {
        if let Some(idx) = first_disagreement(a, b, k) {
            let n = k - 1;
            return Ok(BasingReport {
                max_basing: Bound::Exact(n),
                obstruction: Some(idx.clone()),
                cap,
                components: m,
                hypothesis_met: Some(a.vanishes_through(n - 1) && b.vanishes_through(n - 1)),
            });
        }
    }
    Ok(BasingReport {
        max_basing: Bound::AtLeast(limit),
        obstruction: None,
        cap,
        components: m,
        hypothesis_met: Some(a.vanishes_through(limit - 1) && b.vanishes_through(limit - 1)),
    })
}

/// Largest n ≤ cap through which the μ̄ tables of `a` and `b` agree modulo
/// the gcd of their indeterminacies.
pub fn relative_max_basing(a: &LinkDiagram, b: &LinkDiagram, cap: usize) -> Result<BasingReport> {
    if a.component_count() != b.component_count() {
        return Err(Error::ComponentMismatch(a.component_count(), b.component_count()));
    }
    check_cap(cap)?;
    let ta = MilnorTable::compute(a, cap)?;
    let tb = MilnorTable::compute(b, cap)?;
    relative_from_tables(&ta, &tb, cap)
}

/// Given that every μ̄ of length ≤ n vanishes for both links, whether their
/// length-(n+1) μ̄ coincide.
pub fn mu_n_equal(a: &LinkDiagram, b: &LinkDiagram, n: usize) -> Result<bool> {
    if a.component_count() != b.component_count() {
        return Err(Error::ComponentMismatch(a.component_count(), b.component_count()));
    }
    check_cap(n)?;
    let ta = MilnorTable::compute(a, n + 1)?;
    let tb = MilnorTable::compute(b, n + 1)?;
    for (which, t) in [("first", &ta), ("second", &tb)] {
        if let Some((idx, e)) = (2..=n).find_map(|k| t.first_nonzero_at(k)) {
            return Err(Error::HypothesisUnmet {
                index: idx.key(t.component_count()),
                value: e.mu_bar,
                which,
            });
        }
    }
    Ok(first_disagreement(&ta, &tb, n + 1).is_none())
}
