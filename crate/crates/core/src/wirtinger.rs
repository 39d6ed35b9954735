//! Wirtinger presentation of the link group with peripheral data.
//!
//! One generator per arc. At a crossing with sign ε, over arc `o` and under
//! arcs `u_in → u_out` the relation is `g_{u_out} = g_o^ε g_{u_in} g_o^{-ε}`,
//! and the two arcs of the over strand are identified (`g_{o_in} = g_{o_out}`).
//!
//! Walking a component from its base arc, every arc generator is a conjugate
//! `W g_base W⁻¹` of the meridian; `W` gains a factor `g_o^ε` on the left at
//! each undercrossing. The conjugator accumulated over a full turn commutes
//! with the meridian; multiplied by `meridian^(-writhe)` it is the preferred
//! longitude.

use std::fmt;

use crate::diagram::{LinkDiagram, Passage};
use crate::error::{Error, Result};
use crate::words::{FreeWord, Letter};

/// One undercrossing met while walking a component: the over generator and
/// the crossing sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Undercrossing {
    pub over: usize,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Peripheral {
    /// Arcs in traversal order, base arc first.
    pub arcs: Vec<usize>,
    /// `steps[k]` is the undercrossing taken when leaving `arcs[k]`, if any.
    pub steps: Vec<Option<Undercrossing>>,
    pub meridian: usize,
    pub writhe: i64,
    pub longitude: FreeWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    generator_count: usize,
    arc_component: Vec<usize>,
    relators: Vec<FreeWord>,
    identifications: Vec<FreeWord>,
    peripheral: Vec<Peripheral>,
}

impl GroupPresentation {
    pub fn from_diagram(d: &LinkDiagram) -> Self {
        let n = d.arc_count();
        let g = |arc: usize, sign: i8| Letter::with_sign(arc, sign);
        let mut relators = Vec::with_capacity(d.crossings().len());
        let mut identifications = Vec::with_capacity(d.crossings().len());
        for c in d.crossings() {
            // g_out (g_o^ε g_in g_o^-ε)^-1
            let rel = [
                g(c.under_out, 1),
                g(c.over_in, c.sign),
                g(c.under_in, -1),
                g(c.over_in, -c.sign),
            ];
            relators.push(FreeWord::reduce(n, rel).expect("arc generators in range"));
            identifications.push(
                FreeWord::reduce(n, [g(c.over_out, 1), g(c.over_in, -1)])
                    .expect("arc generators in range"),
            );
        }

        let peripheral = (0..d.component_count())
            .map(|i| {
                let arcs = d.components()[i].clone();
                let steps: Vec<Option<Undercrossing>> = arcs
                    .iter()
                    .map(|&a| match d.exit(a) {
                        Some(Passage::Under { crossing }) => {
                            let c = d.crossings()[crossing];
                            Some(Undercrossing { over: c.over_in, sign: c.sign })
                        }
                        _ => None,
                    })
                    .collect();
                let meridian = arcs[0];
                let writhe = d.writhe(i);
                let mut letters: Vec<Letter> = steps
                    .iter()
                    .rev()
                    .flatten()
                    .map(|u| g(u.over, u.sign))
                    .collect();
                let correction = Letter::with_sign(meridian, if writhe > 0 { -1 } else { 1 });
                letters.extend(std::iter::repeat_n(correction, writhe.unsigned_abs() as usize));
                let longitude = FreeWord::reduce(n, letters).expect("arc generators in range");
                Peripheral { arcs, steps, meridian, writhe, longitude }
            })
            .collect();

        GroupPresentation {
            generator_count: n,
            arc_component: (0..n).map(|a| d.component_of(a)).collect(),
            relators,
            identifications,
            peripheral,
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn component_count(&self) -> usize {
        self.peripheral.len()
    }

    pub fn component_of(&self, generator: usize) -> usize {
        self.arc_component[generator]
    }

    /// Wirtinger relators, one per crossing.
    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    /// Over-strand identifications `g_{o_out} g_{o_in}⁻¹`, one per crossing.
    pub fn identifications(&self) -> &[FreeWord] {
        &self.identifications
    }

    pub fn peripheral(&self) -> &[Peripheral] {
        &self.peripheral
    }

    pub fn meridian(&self, component: usize) -> usize {
        self.peripheral[component].meridian
    }

    pub fn longitude(&self, component: usize) -> Result<&FreeWord> {
        self.peripheral
            .get(component)
            .map(|p| &p.longitude)
            .ok_or_else(|| Error::Index(format!("component {}", component + 1)))
    }

    /// Conjugating word `W` with `g_arc = W g_meridian W⁻¹`, per arc.
    pub fn conjugators(&self) -> Vec<FreeWord> {
        let mut out = vec![FreeWord::identity(self.generator_count); self.generator_count];
        for p in &self.peripheral {
            let mut w = FreeWord::identity(self.generator_count);
            for (k, &arc) in p.arcs.iter().enumerate() {
                out[arc] = w.clone();
                if let Some(u) = p.steps[k] {
                    let l = FreeWord::reduce(self.generator_count, [Letter::with_sign(u.over, u.sign)])
                        .expect("in range");
                    w = l.mul(&w).expect("same rank");
                }
            }
        }
        out
    }

    /// Abelian image of a word: exponent sum per component.
    pub fn abelianize(&self, w: &FreeWord) -> Vec<i64> {
        let mut out = vec![0; self.component_count()];
        for l in w.letters() {
            out[self.arc_component[l.gen]] += l.sign();
        }
        out
    }
}

pub fn presentation(d: &LinkDiagram) -> GroupPresentation {
    GroupPresentation::from_diagram(d)
}

pub fn longitude(d: &LinkDiagram, component: usize) -> Result<FreeWord> {
    if component >= d.component_count() {
        return Err(Error::Index(format!("component {}", component + 1)));
    }
    Ok(GroupPresentation::from_diagram(d).peripheral[component].longitude.clone())
}

fn gen_word(w: &FreeWord) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.letters()
        .iter()
        .map(|l| {
            if l.inverse {
                format!("g{}^-1", l.gen)
            } else {
                format!("g{}", l.gen)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generator_count)?;
        for r in &self.relators {
            writeln!(f, "rel: {}", gen_word(r))?;
        }
        for r in &self.identifications {
            writeln!(f, "id: {}", gen_word(r))?;
        }
        for (i, p) in self.peripheral.iter().enumerate() {
            writeln!(f, "mer[{i}]: g{}", p.meridian)?;
            writeln!(f, "lon[{i}]: {}", gen_word(&p.longitude))?;
        }
        Ok(())
    }
}
