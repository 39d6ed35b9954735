//! Oriented, ordered link diagrams.
//!
//! Arcs are the edges of the diagram graph: every passage through a crossing,
//! over or under, ends one arc and starts the next. A crossing therefore
//! names four arcs. Crossing signs are part of the input (right-handed = +1).
//! Arc ids are renumbered to `0..A` in component order when a diagram is
//! built, and the first arc listed for a component is its base arc.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub over_in: usize,
    pub over_out: usize,
    pub sign: i8,
    pub under_in: usize,
    pub under_out: usize,
}

/// How a component leaves an arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Passage {
    Over { crossing: usize },
    Under { crossing: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    components: Vec<Vec<usize>>,
    crossings: Vec<Crossing>,
    arc_component: Vec<usize>,
    arc_exit: Vec<Option<Passage>>,
}

#[derive(Serialize, Deserialize)]
struct PdDocument {
    components: Vec<Vec<usize>>,
    crossings: Vec<Crossing>,
}

impl LinkDiagram {
    /// Validate and canonicalize a diagram given with arbitrary arc ids.
    pub fn new(components: Vec<Vec<usize>>, crossings: Vec<Crossing>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Parse("a link needs at least one component".into()));
        }
        let mut dense: HashMap<usize, usize> = HashMap::new();
        let mut canon_components = Vec::with_capacity(components.len());
        for (ci, comp) in components.iter().enumerate() {
            if comp.is_empty() {
                return Err(Error::InvalidDiagram(format!("component {} has no arcs", ci + 1)));
            }
            let mut canon = Vec::with_capacity(comp.len());
            for &arc in comp {
                let next = dense.len();
                if dense.insert(arc, next).is_some() {
                    return Err(Error::InvalidDiagram(format!("arc {arc} is listed twice")));
                }
                canon.push(next);
            }
            canon_components.push(canon);
        }
        let arc_count = dense.len();
        let lookup = |arc: usize, ci: usize| {
            dense.get(&arc).copied().ok_or_else(|| {
                Error::InvalidDiagram(format!("crossing {ci} references arc {arc}, which belongs to no component"))
            })
        };
        let mut canon_crossings = Vec::with_capacity(crossings.len());
        for (ci, c) in crossings.iter().enumerate() {
            if c.sign != 1 && c.sign != -1 {
                return Err(Error::InvalidDiagram(format!(
                    "crossing {ci} has sign {}, expected 1 or -1",
                    c.sign
                )));
            }
            canon_crossings.push(Crossing {
                over_in: lookup(c.over_in, ci)?,
                over_out: lookup(c.over_out, ci)?,
                sign: c.sign,
                under_in: lookup(c.under_in, ci)?,
                under_out: lookup(c.under_out, ci)?,
            });
        }
        let original: Vec<usize> = {
            let mut o = vec![0; arc_count];
            for (&orig, &d) in &dense {
                o[d] = orig;
            }
            o
        };

        let mut arc_component = vec![0; arc_count];
        let mut next_arc = vec![0; arc_count];
        for (ci, comp) in canon_components.iter().enumerate() {
            for (k, &a) in comp.iter().enumerate() {
                arc_component[a] = ci;
                next_arc[a] = comp[(k + 1) % comp.len()];
            }
        }

        let mut arc_exit: Vec<Option<Passage>> = vec![None; arc_count];
        let mut entered = vec![false; arc_count];
        for (ci, c) in canon_crossings.iter().enumerate() {
            for (inn, out, passage) in [
                (c.over_in, c.over_out, Passage::Over { crossing: ci }),
                (c.under_in, c.under_out, Passage::Under { crossing: ci }),
            ] {
                if arc_exit[inn].is_some() {
                    return Err(Error::InvalidDiagram(format!(
                        "arc {} enters more than one crossing",
                        original[inn]
                    )));
                }
                if entered[out] {
                    return Err(Error::InvalidDiagram(format!(
                        "arc {} leaves more than one crossing",
                        original[out]
                    )));
                }
                if next_arc[inn] != out {
                    return Err(Error::InvalidDiagram(format!(
                        "crossing {ci}: arc {} is not followed by arc {} in its component",
                        original[inn], original[out]
                    )));
                }
                arc_exit[inn] = Some(passage);
                entered[out] = true;
            }
        }
        for (ci, comp) in canon_components.iter().enumerate() {
            let touched = comp.iter().filter(|&&a| arc_exit[a].is_some()).count();
            if touched == 0 && comp.len() > 1 {
                return Err(Error::InvalidDiagram(format!(
                    "component {} has no crossings but {} arcs",
                    ci + 1,
                    comp.len()
                )));
            }
            if touched != 0 {
                if let Some(&a) = comp.iter().find(|&&a| arc_exit[a].is_none()) {
                    return Err(Error::InvalidDiagram(format!(
                        "arc {} does not end at any crossing",
                        original[a]
                    )));
                }
            }
        }

        Ok(LinkDiagram {
            components: canon_components,
            crossings: canon_crossings,
            arc_component,
            arc_exit,
        })
    }

    /// Diagram of the m-component unlink, one arc per component.
    pub fn unlink(m: usize) -> Result<Self> {
        Self::new((0..m).map(|i| vec![i]).collect(), Vec::new())
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_component.len()
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn component_of(&self, arc: usize) -> usize {
        self.arc_component[arc]
    }

    pub fn base_arc(&self, component: usize) -> usize {
        self.components[component][0]
    }

    /// The crossing at which the component leaves `arc`, if any.
    pub fn exit(&self, arc: usize) -> Option<Passage> {
        self.arc_exit[arc]
    }

    /// Sum of signs of the crossings where the component crosses itself.
    pub fn writhe(&self, component: usize) -> i64 {
        self.crossings
            .iter()
            .filter(|c| {
                self.arc_component[c.over_in] == component
                    && self.arc_component[c.under_in] == component
            })
            .map(|c| c.sign as i64)
            .sum()
    }

    pub fn linking_matrix(&self) -> LinkingMatrix {
        let m = self.component_count();
        let mut twice = vec![vec![0i64; m]; m];
        for c in &self.crossings {
            let (i, j) = (self.arc_component[c.over_in], self.arc_component[c.under_in]);
            if i != j {
                twice[i][j] += c.sign as i64;
                twice[j][i] += c.sign as i64;
            }
        }
        LinkingMatrix(
            twice
                .into_iter()
                .map(|row| row.into_iter().map(|v| v / 2).collect())
                .collect(),
        )
    }

    /// The same link with the arc list of `component` rotated by `shift`,
    /// which moves its base arc.
    pub fn rebased(&self, component: usize, shift: usize) -> Result<Self> {
        if component >= self.component_count() {
            return Err(Error::Index(format!("component {}", component + 1)));
        }
        let mut comps = self.components.clone();
        let len = comps[component].len();
        comps[component].rotate_left(shift % len);
        Self::new(comps, self.crossings.clone())
    }

    /// Canonical PD JSON: sorted keys, no whitespace.
    pub fn to_canonical_json(&self) -> String {
        let doc = PdDocument {
            components: self.components.clone(),
            crossings: self.crossings.clone(),
        };
        serde_json::to_string(&doc).expect("diagram serialization")
    }
}

/// Parse a PD JSON document.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let doc: PdDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("PD JSON: {e}")))?;
    LinkDiagram::new(doc.components, doc.crossings)
}

/// Closure of a braid word such as `s1 s2^-1 s1` on `strands` strands.
///
/// `s_k` is a positive crossing in which the strand at position `k` passes
/// over the strand at position `k+1`; `s_k^-1` is the negative crossing with
/// the other strand on top. All strands run upward. Components are ordered
/// by the smallest strand position they touch and start at the bottom of
/// that position.
pub fn parse_braid(word: &str, strands: usize) -> Result<LinkDiagram> {
    if strands == 0 {
        return Err(Error::Parse("a braid needs at least one strand".into()));
    }
    let mut gens: Vec<(usize, i8)> = Vec::new();
    for tok in word.split_whitespace() {
        let (body, sign) = match tok.strip_suffix("^-1") {
            Some(b) => (b, -1),
            None => (tok, 1),
        };
        let k = body
            .strip_prefix('s')
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&k| k >= 1)
            .ok_or_else(|| Error::Parse(format!("bad braid token `{tok}`")))?;
        if k >= strands {
            return Err(Error::Index(format!(
                "generator s{k} needs at least {} strands, got {strands}",
                k + 1
            )));
        }
        gens.push((k - 1, sign));
    }

    // arcs 0..strands start at the bottom of each position
    let mut current: Vec<usize> = (0..strands).collect();
    let mut next_id = strands;
    let mut crossings = Vec::with_capacity(gens.len());
    for &(p, sign) in &gens {
        let (left_in, right_in) = (current[p], current[p + 1]);
        let (left_out, right_out) = (next_id, next_id + 1);
        next_id += 2;
        // the strand from position p moves to p+1 and vice versa
        let (over_in, over_out, under_in, under_out) = if sign > 0 {
            (left_in, right_out, right_in, left_out)
        } else {
            (right_in, left_out, left_in, right_out)
        };
        crossings.push(Crossing { over_in, over_out, sign, under_in, under_out });
        current[p] = left_out;
        current[p + 1] = right_out;
    }
    // close up: the top arc of each position is the bottom arc of it
    let mut rename: HashMap<usize, usize> = HashMap::new();
    for (p, &top) in current.iter().enumerate() {
        if top != p {
            rename.insert(top, p);
        }
    }
    let r = |a: usize| rename.get(&a).copied().unwrap_or(a);
    for c in &mut crossings {
        *c = Crossing {
            over_in: r(c.over_in),
            over_out: r(c.over_out),
            sign: c.sign,
            under_in: r(c.under_in),
            under_out: r(c.under_out),
        };
    }

    let mut next_arc: HashMap<usize, usize> = HashMap::new();
    for c in &crossings {
        next_arc.insert(c.over_in, c.over_out);
        next_arc.insert(c.under_in, c.under_out);
    }
    let mut seen = vec![false; strands];
    let mut components = Vec::new();
    for p in 0..strands {
        if seen[p] {
            continue;
        }
        let mut comp = vec![p];
        seen[p] = true;
        let mut a = p;
        while let Some(&n) = next_arc.get(&a) {
            if n == p {
                break;
            }
            if n < strands {
                seen[n] = true;
            }
            comp.push(n);
            a = n;
        }
        components.push(comp);
    }
    LinkDiagram::new(components, crossings)
}

/// Symmetric integer matrix of pairwise linking numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkingMatrix(pub Vec<Vec<i64>>);

impl LinkingMatrix {
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(|&v| v == 0)
    }
}

impl fmt::Display for LinkingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.0 {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HOPF: &str = r#"{"components":[[0,1],[2,3]],"crossings":[
        {"over_in":0,"over_out":1,"under_in":2,"under_out":3,"sign":1},
        {"over_in":3,"over_out":2,"under_in":1,"under_out":0,"sign":1}]}"#;

    #[test]
    fn hopf_pd() {
        let d = parse_pd(HOPF).unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.arc_count(), 4);
        assert_eq!(d.linking_matrix(), LinkingMatrix(vec![vec![0, 1], vec![1, 0]]));
    }

    #[test]
    fn empty_link_is_a_parse_error() {
        assert!(matches!(
            parse_pd(r#"{"components":[],"crossings":[]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(parse_pd("{not json"), Err(Error::Parse(_))));
    }

    #[test]
    fn unknown_arc_is_named() {
        let text = r#"{"components":[[0,1],[2,3]],"crossings":[
            {"over_in":0,"over_out":1,"under_in":2,"under_out":3,"sign":1},
            {"over_in":3,"over_out":2,"under_in":1,"under_out":9,"sign":1}]}"#;
        match parse_pd(text) {
            Err(Error::InvalidDiagram(msg)) => assert!(msg.contains("arc 9"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn adjacency_violation() {
        // over strand jumps from arc 0 to arc 3, which is on the other component
        let text = r#"{"components":[[0,1],[2,3]],"crossings":[
            {"over_in":0,"over_out":3,"under_in":2,"under_out":1,"sign":1},
            {"over_in":3,"over_out":2,"under_in":1,"under_out":0,"sign":1}]}"#;
        assert!(matches!(parse_pd(text), Err(Error::InvalidDiagram(_))));
    }

    #[test]
    fn crossingless_component_with_two_arcs() {
        let text = r#"{"components":[[5,7]],"crossings":[]}"#;
        assert!(matches!(parse_pd(text), Err(Error::InvalidDiagram(_))));
    }

    #[test]
    fn ids_are_canonicalized() {
        let text = r#"{"components":[[10,11],[20,21]],"crossings":[
            {"over_in":10,"over_out":11,"under_in":20,"under_out":21,"sign":1},
            {"over_in":21,"over_out":20,"under_in":11,"under_out":10,"sign":1}]}"#;
        let d = parse_pd(text).unwrap();
        assert_eq!(d, parse_pd(HOPF).unwrap());
        assert_eq!(
            d.to_canonical_json(),
            r#"{"components":[[0,1],[2,3]],"crossings":[{"over_in":0,"over_out":1,"sign":1,"under_in":2,"under_out":3},{"over_in":3,"over_out":2,"sign":1,"under_in":1,"under_out":0}]}"#
        );
    }

    #[test]
    fn braids() {
        let hopf = parse_braid("s1 s1", 2).unwrap();
        assert_eq!(hopf.component_count(), 2);
        assert_eq!(hopf.linking_matrix().get(0, 1), 1);

        let unlink = parse_braid("", 3).unwrap();
        assert_eq!(unlink.component_count(), 3);
        assert!(unlink.crossings().is_empty());
        assert!(unlink.linking_matrix().is_zero());

        assert!(matches!(parse_braid("s3", 2), Err(Error::Index(_))));
        assert!(matches!(parse_braid("t1", 2), Err(Error::Parse(_))));
    }

    #[test]
    fn borromean_linking_matrix_vanishes() {
        let d = parse_braid("s1 s2^-1 s1 s2^-1 s1 s2^-1", 3).unwrap();
        assert_eq!(d.component_count(), 3);
        assert!(d.linking_matrix().is_zero());
    }

    #[test]
    fn writhe_counts_self_crossings() {
        // closure of s1 s1 s2: the s2 crossing is a kink on the second component
        let d = parse_braid("s1 s1 s2", 3).unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.writhe(0), 0);
        assert_eq!(d.writhe(1), 1);
        assert_eq!(d.linking_matrix().get(0, 1), 1);
    }

    #[test]
    fn rebasing_keeps_validity() {
        let d = parse_pd(HOPF).unwrap();
        let r = d.rebased(0, 1).unwrap();
        assert_eq!(r.linking_matrix(), d.linking_matrix());
        assert_ne!(r.base_arc(0), r.components()[0][1]);
    }
}
