//! Boundary map, fixing, projection and the four rule-algebra products.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{compose_d, superpose, Element};
use crate::diagram::{LinearRule, RuleDiagram};
use crate::error::{Error, Result};
use crate::graph::Multigraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RewritingType {
    Dpo,
    SpoA,
    SpoB,
    SpoAb,
}

impl RewritingType {
    pub const ALL: [RewritingType; 4] = [RewritingType::Dpo, RewritingType::SpoA, RewritingType::SpoB, RewritingType::SpoAb];

    /// Dangling output edges are removed (`A ∈ T`).
    pub fn fixes_output(self) -> bool {
        matches!(self, RewritingType::SpoA | RewritingType::SpoAb)
    }

    /// Dangling input edges are removed (`B ∈ T`).
    pub fn fixes_input(self) -> bool {
        matches!(self, RewritingType::SpoB | RewritingType::SpoAb)
    }

    pub fn cli_name(self) -> &'static str {
        match self {
            RewritingType::Dpo => "dpo",
            RewritingType::SpoA => "spoa",
            RewritingType::SpoB => "spob",
            RewritingType::SpoAb => "spoab",
        }
    }
}

impl fmt::Display for RewritingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RewritingType::Dpo => "DPO",
            RewritingType::SpoA => "SPO_A",
            RewritingType::SpoB => "SPO_B",
            RewritingType::SpoAb => "SPO_AB",
        })
    }
}

impl FromStr for RewritingType {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().replace('_', "").as_str() {
            "dpo" => Ok(RewritingType::Dpo),
            "spoa" => Ok(RewritingType::SpoA),
            "spob" => Ok(RewritingType::SpoB),
            "spoab" => Ok(RewritingType::SpoAb),
            _ => Err(format!("unknown rewriting type `{s}` (expected dpo, spoa, spob or spoab)")),
        }
    }
}

/// An irreducible-shaped rule whose edges may lack endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreDiagram {
    pub input_vertices: usize,
    pub input_edges: Vec<(Option<usize>, Option<usize>)>,
    pub output_vertices: usize,
    pub output_edges: Vec<(Option<usize>, Option<usize>)>,
    pub r_v: Vec<Option<usize>>,
    pub r_e: Vec<Option<usize>>,
}

fn dangling(edges: &[(Option<usize>, Option<usize>)]) -> Vec<usize> {
    edges
        .iter()
        .enumerate()
        .filter(|(_, (s, t))| s.is_none() || t.is_none())
        .map(|(i, _)| i)
        .collect()
}

impl PreDiagram {
    pub fn dangling_in(&self) -> Vec<usize> {
        dangling(&self.input_edges)
    }

    pub fn dangling_out(&self) -> Vec<usize> {
        dangling(&self.output_edges)
    }

    pub fn is_clean(&self) -> bool {
        self.dangling_in().is_empty() && self.dangling_out().is_empty()
    }

    /// The rule itself, when no edge dangles.
    pub fn to_diagram(&self) -> Option<RuleDiagram> {
        let solid = |edges: &[(Option<usize>, Option<usize>)]| edges.iter().map(|&(s, t)| Some((s?, t?))).collect::<Option<Vec<_>>>();
        let input = Multigraph::new(self.input_vertices, solid(&self.input_edges)?).ok()?;
        let output = Multigraph::new(self.output_vertices, solid(&self.output_edges)?).ok()?;
        let rule = LinearRule {
            input,
            output,
            r_v: self.r_v.clone(),
            r_e: self.r_e.clone(),
        };
        RuleDiagram::from_rule(rule).ok()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixSide {
    /// Delete dangling output edges.
    A,
    /// Delete dangling input edges.
    B,
}

/// Collapse every worldline to its endpoints.
pub fn boundary(d: &RuleDiagram) -> PreDiagram {
    let b = d.boundary_data();
    PreDiagram {
        input_vertices: b.in_v.len(),
        input_edges: b.in_edges,
        output_vertices: b.out_v.len(),
        output_edges: b.out_edges,
        r_v: b.r_v,
        r_e: b.r_e,
    }
}

pub fn fix_partial(p: &PreDiagram, side: FixSide) -> PreDiagram {
    let mut out = p.clone();
    match side {
        FixSide::A => {
            let drop = p.dangling_out();
            let mut new_id = vec![None; p.output_edges.len()];
            let mut n = 0;
            for (e, slot) in new_id.iter_mut().enumerate() {
                if !drop.contains(&e) {
                    *slot = Some(n);
                    n += 1;
                }
            }
            out.output_edges = p
                .output_edges
                .iter()
                .enumerate()
                .filter(|(e, _)| !drop.contains(e))
                .map(|(_, &x)| x)
                .collect();
            out.r_e = p.r_e.iter().map(|f| f.and_then(|f| new_id[f])).collect();
        }
        FixSide::B => {
            let drop = p.dangling_in();
            out.input_edges = p
                .input_edges
                .iter()
                .enumerate()
                .filter(|(e, _)| !drop.contains(e))
                .map(|(_, &x)| x)
                .collect();
            out.r_e = p
                .r_e
                .iter()
                .enumerate()
                .filter(|(e, _)| !drop.contains(e))
                .map(|(_, &f)| f)
                .collect();
        }
    }
    out
}

/// The basis element of a clean pre-diagram, zero otherwise.
pub fn project(p: &PreDiagram) -> Element {
    match p.to_diagram() {
        Some(d) => {
            debug_assert!(d.is_valid(), "boundary of a valid diagram is a valid rule: {d}");
            Element::basis(&d)
        }
        None => Element::zero(),
    }
}

/// `F_T ∘ ∂` on one diagram; `None` when the reduction is zero.
pub fn reduce_diagram(d: &RuleDiagram, t: RewritingType) -> Option<RuleDiagram> {
    let mut p = boundary(d);
    if t.fixes_output() {
        p = fix_partial(&p, FixSide::A);
    }
    if t.fixes_input() {
        p = fix_partial(&p, FixSide::B);
    }
    p.to_diagram()
}

pub fn reduce(x: &Element, t: RewritingType) -> Element {
    x.map_terms(|d| reduce_diagram(d, t).map_or_else(Element::zero, |r| Element::basis(&r)))
}

/// `x *_T y = reduce(x *_D y, T)` for irreducible `x`, `y`.
pub fn compose_r(x: &Element, y: &Element, t: RewritingType) -> Result<Element> {
    if !x.is_irreducible() || !y.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    Ok(reduce(&compose_d(x, y), t))
}

/// `x ⊛_T y = x *_T y − x ⊎ y`.
pub fn nontrivial_compose_r(x: &Element, y: &Element, t: RewritingType) -> Result<Element> {
    Ok(&compose_r(x, y, t)? - &superpose(x, y))
}

pub fn commutator_r(x: &Element, y: &Element, t: RewritingType) -> Result<Element> {
    Ok(&compose_r(x, y, t)? - &compose_r(y, x, t)?)
}
