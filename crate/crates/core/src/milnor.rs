//! Milnor's longitude reduction and the μ / Δ / μ̄ table.
//!
//! Every arc generator is a conjugate `W g_base W⁻¹` of its component's
//! meridian. Reduction assigns each generator a Magnus series in the
//! meridian variables: first `1 + X_j`, then repeatedly
//! `S(W) (1 + X_j) S(W)⁻¹` with `S(W)` evaluated from the previous stage.
//! Two assignments that agree through degree `d` produce images that agree
//! through degree `d + 1`, so with series truncated at degree `n - 1` the
//! iteration reaches a fixed point within `n - 1` stages. Working with
//! series instead of substituting words keeps the cost bounded by the
//! monomial budget rather than the word length.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::Integer;
use serde::ser::{Serialize, SerializeMap, Serializer};
use serde::Serialize as DeriveSerialize;

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::limits::check_degree;
use crate::magnus::MagnusSeries;
use crate::wirtinger::GroupPresentation;

/// A sequence of component indices (0-based), ordered by length then
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    /// Parse `"123"` or `"1,2,10"` (1-based).
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = if text.contains(',') {
            text.split(',').collect()
        } else {
            text.split("").filter(|s| !s.is_empty()).collect()
        };
        let mut out = Vec::with_capacity(parts.len());
        for p in parts {
            let v: usize = p
                .trim()
                .parse()
                .ok()
                .filter(|&v| v >= 1)
                .ok_or_else(|| Error::Parse(format!("bad multi-index `{text}`")))?;
            out.push(v - 1);
        }
        if out.is_empty() {
            return Err(Error::Parse("empty multi-index".into()));
        }
        Ok(MultiIndex(out))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Table key: digit string when every index is a single digit,
    /// comma-separated otherwise.
    pub fn key(&self, components: usize) -> String {
        let one_based = self.0.iter().map(|i| (i + 1).to_string());
        if components < 10 {
            one_based.collect()
        } else {
            one_based.collect::<Vec<_>>().join(",")
        }
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max = self.0.iter().copied().max().unwrap_or(0);
        f.write_str(&self.key(if max >= 9 { 10 } else { 1 }))
    }
}

/// Reduced longitude of each component as a series in the meridians.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedLongitudes {
    length_bound: usize,
    series: Vec<MagnusSeries>,
    stages: usize,
}

impl ReducedLongitudes {
    pub fn length_bound(&self) -> usize {
        self.length_bound
    }

    pub fn series(&self) -> &[MagnusSeries] {
        &self.series
    }

    pub fn get(&self, component: usize) -> &MagnusSeries {
        &self.series[component]
    }

    /// Stages run before the generator assignment stopped changing.
    pub fn stages(&self) -> usize {
        self.stages
    }

    pub fn component_count(&self) -> usize {
        self.series.len()
    }
}

/// Rewrite every longitude as a Magnus series in the meridians, exact in all
/// degrees below `n`.
pub fn reduce_longitudes(p: &GroupPresentation, n: usize) -> Result<ReducedLongitudes> {
    if n < 2 {
        return Err(Error::Index(format!("length bound {n} is below 2")));
    }
    check_degree(n)?;
    let m = p.component_count();
    let degree = n - 1;
    let gens = p.generator_count();

    let meridian_series: Vec<MagnusSeries> =
        (0..m).map(|j| MagnusSeries::variable(m, degree, j)).collect();
    let mut current: Vec<MagnusSeries> = (0..gens)
        .map(|a| meridian_series[p.component_of(a)].clone())
        .collect();

    let max_stages = degree + 2;
    let mut stages = 0;
    loop {
        stages += 1;
        if stages > max_stages {
            return Err(Error::NonConvergence(max_stages));
        }
        let inverses = current
            .iter()
            .map(MagnusSeries::invert)
            .collect::<Result<Vec<_>>>()?;
        let mut next = current.clone();
        for (j, per) in p.peripheral().iter().enumerate() {
            let mut conj = MagnusSeries::one(m, degree);
            let mut conj_inv = MagnusSeries::one(m, degree);
            for (k, &arc) in per.arcs.iter().enumerate() {
                next[arc] = conj.multiply(&meridian_series[j])?.multiply(&conj_inv)?;
                if let Some(u) = per.steps[k] {
                    let (s, s_inv) = if u.sign > 0 {
                        (&current[u.over], &inverses[u.over])
                    } else {
                        (&inverses[u.over], &current[u.over])
                    };
                    conj = s.multiply(&conj)?;
                    conj_inv = conj_inv.multiply(s_inv)?;
                }
            }
        }
        if next == current {
            break;
        }
        current = next;
    }

    let inverses = current
        .iter()
        .map(MagnusSeries::invert)
        .collect::<Result<Vec<_>>>()?;
    let mut series = Vec::with_capacity(m);
    for (j, per) in p.peripheral().iter().enumerate() {
        let mut lon = MagnusSeries::one(m, degree);
        for u in per.steps.iter().rev().flatten() {
            let s = if u.sign > 0 { &current[u.over] } else { &inverses[u.over] };
            lon = lon.multiply(s)?;
        }
        lon = lon.multiply(&meridian_series[j].pow(-per.writhe)?)?;
        series.push(lon);
    }
    Ok(ReducedLongitudes { length_bound: n, series, stages })
}

/// μ(I): coefficient of `X_{i1}⋯X_{i(k-1)}` in the reduced longitude of
/// component `i_k`. Length-one indices give 0.
pub fn mu(rl: &ReducedLongitudes, index: &[usize]) -> Result<i64> {
    let m = rl.component_count();
    if let Some(&bad) = index.iter().find(|&&i| i >= m) {
        return Err(Error::Index(format!("component {} of a {m}-component link", bad + 1)));
    }
    if index.len() > rl.length_bound {
        return Err(Error::LengthOverflow { requested: index.len(), bound: rl.length_bound });
    }
    match index.split_last() {
        None => Err(Error::Index("empty multi-index".into())),
        Some((_, [])) => Ok(0),
        Some((&last, head)) => Ok(rl.series[last].coefficient(head)),
    }
}

/// Δ(I): gcd of μ(J) over every J obtained from I by deleting at least one
/// index and rotating cyclically. `mu_of` supplies μ for shorter indices.
pub fn delta<F>(index: &[usize], mut mu_of: F) -> i64
where
    F: FnMut(&[usize]) -> i64,
{
    let k = index.len();
    if k < 2 {
        return 0;
    }
    let mut g: i64 = 0;
    let mut sub = Vec::with_capacity(k);
    for mask in 1u64..(1u64 << k) - 1 {
        sub.clear();
        sub.extend((0..k).filter(|b| mask & (1 << b) != 0).map(|b| index[b]));
        if sub.len() < 2 {
            continue;
        }
        for _ in 0..sub.len() {
            sub.rotate_left(1);
            g = g.gcd(&mu_of(&sub));
            if g == 1 {
                return 1;
            }
        }
    }
    g
}

/// μ̄: μ itself when Δ = 0, else μ reduced into `[0, Δ)`.
pub fn mu_bar(mu: i64, delta: i64) -> i64 {
    if delta == 0 {
        mu
    } else {
        mu.rem_euclid(delta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, DeriveSerialize)]
pub struct MilnorEntry {
    pub delta: i64,
    pub mu: i64,
    pub mu_bar: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilnorTable {
    diagram_hash: u64,
    components: usize,
    length_bound: usize,
    entries: BTreeMap<MultiIndex, MilnorEntry>,
}

impl MilnorTable {
    pub fn compute(d: &LinkDiagram, n: usize) -> Result<Self> {
        let p = GroupPresentation::from_diagram(d);
        let rl = reduce_longitudes(&p, n)?;
        let mut table = Self::from_longitudes(&rl)?;
        table.diagram_hash = fnv1a(d.to_canonical_json().as_bytes());
        Ok(table)
    }

    /// Build the table from reduced longitudes, length by length.
    pub fn from_longitudes(rl: &ReducedLongitudes) -> Result<Self> {
        let m = rl.component_count();
        let n = rl.length_bound();
        let mut entries = BTreeMap::new();
        // μ values that are nonzero, by length; Δ only needs these
        let mut nonzero: HashMap<Vec<usize>, i64> = HashMap::new();
        let mut index = Vec::with_capacity(n);
        for k in 2..=n {
            let mut fresh = Vec::new();
            for code in 0..m.pow(k as u32) {
                index.clear();
                let mut c = code;
                for _ in 0..k {
                    index.push(c % m);
                    c /= m;
                }
                index.reverse();
                let mu_value = mu(rl, &index)?;
                let delta_value = if nonzero.is_empty() {
                    0
                } else {
                    delta(&index, |j| nonzero.get(j).copied().unwrap_or(0))
                };
                if mu_value != 0 {
                    fresh.push((index.clone(), mu_value));
                }
                entries.insert(
                    MultiIndex(index.clone()),
                    MilnorEntry {
                        mu: mu_value,
                        delta: delta_value,
                        mu_bar: mu_bar(mu_value, delta_value),
                    },
                );
            }
            nonzero.extend(fresh);
        }
        Ok(MilnorTable { diagram_hash: 0, components: m, length_bound: n, entries })
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn length_bound(&self) -> usize {
        self.length_bound
    }

    /// FNV-1a hash of the canonical diagram bytes.
    pub fn diagram_hash(&self) -> u64 {
        self.diagram_hash
    }

    pub fn entries(&self) -> impl Iterator<Item = (&MultiIndex, &MilnorEntry)> {
        self.entries.iter()
    }

    pub fn get(&self, index: &[usize]) -> Option<&MilnorEntry> {
        self.entries.get(&MultiIndex(index.to_vec()))
    }

    /// Entries of one length in lexicographic order.
    pub fn of_length(&self, k: usize) -> impl Iterator<Item = (&MultiIndex, &MilnorEntry)> {
        self.entries.iter().filter(move |(i, _)| i.len() == k)
    }

    /// Lexicographically least index of length `k` with nonzero μ̄.
    pub fn first_nonzero_at(&self, k: usize) -> Option<(&MultiIndex, &MilnorEntry)> {
        self.of_length(k).find(|(_, e)| e.mu_bar != 0)
    }

    /// Shortest length carrying a nonzero μ̄, with the least such index.
    pub fn first_nonvanishing(&self) -> Option<(&MultiIndex, &MilnorEntry)> {
        (2..=self.length_bound).find_map(|k| self.first_nonzero_at(k))
    }

    /// Whether every μ̄ of length at most `k` vanishes.
    pub fn vanishes_through(&self, k: usize) -> bool {
        self.entries
            .iter()
            .filter(|(i, _)| i.len() <= k)
            .all(|(_, e)| e.mu_bar == 0)
    }

    /// Canonical JSON: `{"entries":{"12":{"delta":0,"mu":1,"mu_bar":1},...},"n":3}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serialization")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{:<12} {:>8} {:>8} {:>8}\n",
            "index", "mu", "delta", "mu_bar"
        );
        for (i, e) in &self.entries {
            out.push_str(&format!(
                "{:<12} {:>8} {:>8} {:>8}\n",
                i.key(self.components),
                e.mu,
                e.delta,
                e.mu_bar
            ));
        }
        out
    }
}

impl Serialize for MilnorTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: BTreeMap<String, &MilnorEntry> = self
            .entries
            .iter()
            .map(|(i, e)| (i.key(self.components), e))
            .collect();
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("entries", &entries)?;
        map.serialize_entry("n", &self.length_bound)?;
        map.end()
    }
}

pub fn table(d: &LinkDiagram, n: usize) -> Result<MilnorTable> {
    MilnorTable::compute(d, n)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}
