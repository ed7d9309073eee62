//! Recomputed multiplication tables and relation checks, reported cell by cell.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::algebra::{coeff, nontrivial_compose, superpose, Coeff, Element};
use crate::catalog::*;
use crate::graph::{automorphism_count, is_isomorphic, Multigraph};
use crate::hopf::{antipode, coproduct, counit};
use crate::key::DiagramKey;
use crate::par;
use crate::reduction::{commutator_r, compose_r, nontrivial_compose_r, RewritingType};
use crate::RuleDiagram;

/// One compared cell.
#[derive(Clone, Debug)]
pub struct Check {
    pub cell: String,
    pub expected: String,
    pub computed: String,
    pub matches: bool,
}

impl Check {
    pub fn elements(cell: impl Into<String>, expected: &Element, computed: &Element) -> Check {
        Check {
            cell: cell.into(),
            expected: name(expected),
            computed: name(computed),
            matches: expected == computed,
        }
    }

    pub fn flag(cell: impl Into<String>, expected: impl Into<String>, computed: impl Into<String>, matches: bool) -> Check {
        Check {
            cell: cell.into(),
            expected: expected.into(),
            computed: computed.into(),
            matches,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "cell": self.cell, "computed": self.computed, "expected": self.expected, "match": self.matches })
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.matches)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.matches)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "cells": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "passed": self.passed(),
            "title": self.title,
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ok = self.checks.iter().filter(|c| c.matches).count();
        writeln!(f, "{}: {}/{} cells match", self.title, ok, self.checks.len())?;
        for c in &self.checks {
            let mark = if c.matches { "ok  " } else { "FAIL" };
            writeln!(f, "  {mark} {}: expected {} computed {}", c.cell, c.expected, c.computed)?;
        }
        Ok(())
    }
}

/// Human-readable form of an element using the generator names.
pub fn name(x: &Element) -> String {
    thread_local! {
        static NAMES: BTreeMap<DiagramKey, String> = display_names();
    }
    NAMES.with(|names| x.display_with(|k, d| describe(k, d, names)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table {
    Vertex,
    Loop,
    VertexLoop,
    HwDiagram,
}

impl Table {
    pub const ALL: [Table; 4] = [Table::Vertex, Table::Loop, Table::VertexLoop, Table::HwDiagram];
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Table::Vertex => "vertex",
            Table::Loop => "loop",
            Table::VertexLoop => "vertex_loop",
            Table::HwDiagram => "hw_diagram",
        })
    }
}

impl FromStr for Table {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "vertex" => Ok(Table::Vertex),
            "loop" => Ok(Table::Loop),
            "vertex_loop" | "coupling" => Ok(Table::VertexLoop),
            "hw_diagram" | "hw" => Ok(Table::HwDiagram),
            _ => Err(format!("unknown table `{s}`")),
        }
    }
}

type Labelled = (&'static str, Element);

fn when(cond: bool, x: Element) -> Element {
    if cond {
        x
    } else {
        Element::zero()
    }
}

/// Rows, columns and expected `row ⊛ column` cells.
pub fn expected_table(table: Table, t: RewritingType) -> (Vec<Labelled>, Vec<Labelled>, Vec<Vec<Element>>) {
    let z = Element::zero;
    let one = Element::unit;
    match table {
        Table::Vertex => {
            let rows = vec![("a†", adag()), ("I", vertex_identity()), ("a", a())];
            let cols = vec![("a", a()), ("I", vertex_identity()), ("a†", adag())];
            let cells = vec![vec![z(), z(), z()], vec![z(), vertex_identity(), adag()], vec![z(), a(), one()]];
            (rows, cols, cells)
        }
        Table::Loop => {
            let (rows, cols) = loop_labels();
            (rows, cols, loop_cells())
        }
        Table::VertexLoop => {
            let rows = vec![
                ("a†", adag()),
                ("a", a()),
                ("I", vertex_identity()),
                ("ℓ†", ldag()),
                ("L", loop_identity()),
                ("ℓ", l()),
            ];
            let cols = vec![
                ("a", a()),
                ("a†", adag()),
                ("I", vertex_identity()),
                ("ℓ", l()),
                ("L", loop_identity()),
                ("ℓ†", ldag()),
            ];
            let (fa, fb) = (t.fixes_output(), t.fixes_input());
            let lc = loop_cells();
            let mut cells = vec![
                vec![z(), z(), z(), z(), z(), z()],
                vec![z(), one(), a(), a_l(), when(fa, a_l()), when(fa, a())],
                vec![z(), adag(), vertex_identity(), l(), loop_identity(), ldag()],
            ];
            let left = [
                vec![z(), adag_ldag(), ldag()],
                vec![z(), when(fb, adag_ldag()), loop_identity()],
                vec![z(), when(fb, adag()), l()],
            ];
            for (mut row, tail) in left.into_iter().zip(lc) {
                row.extend(tail);
                cells.push(row);
            }
            (rows, cols, cells)
        }
        Table::HwDiagram => {
            let rows = vec![("d_a", d_a()), ("d_e", d_e()), ("d_a†", d_adag())];
            let cols = rows.clone();
            let cells = vec![vec![z(), z(), d_e()], vec![z(), z(), z()], vec![z(), z(), z()]];
            (rows, cols, cells)
        }
    }
}

fn loop_labels() -> (Vec<Labelled>, Vec<Labelled>) {
    let rows = vec![("ℓ†", ldag()), ("L", loop_identity()), ("ℓ", l())];
    let cols = vec![("ℓ", l()), ("L", loop_identity()), ("ℓ†", ldag())];
    (rows, cols)
}

fn loop_cells() -> Vec<Vec<Element>> {
    vec![
        vec![lambda(1, 0, 1), lambda(1, 1, 0), lambda(2, 0, 0)],
        vec![lambda(0, 1, 1), &loop_identity() + &lambda(0, 2, 0), &ldag() + &lambda(1, 1, 0)],
        vec![lambda(0, 0, 2), &l() + &lambda(0, 1, 1), &vertex_identity() + &lambda(1, 0, 1)],
    ]
}

/// Recompute every `row ⊛ column` cell of a table. The diagram table uses the
/// diagram product, the others the rule-algebra product of type `t`.
pub fn verify_table(table: Table, t: RewritingType) -> Report {
    let (rows, cols, expected) = expected_table(table, t);
    let mut jobs = Vec::new();
    for (i, (rn, rx)) in rows.iter().enumerate() {
        for (j, (cn, cx)) in cols.iter().enumerate() {
            jobs.push((format!("{rn}⊛{cn}"), rx.clone(), cx.clone(), expected[i][j].clone()));
        }
    }
    let checks = par::map(&jobs, |(cell, x, y, exp)| {
        let got = match table {
            Table::HwDiagram => nontrivial_compose(x, y),
            _ => nontrivial_compose_r(x, y, t).expect("table generators are irreducible"),
        };
        Check::elements(cell, exp, &got)
    });
    let title = match table {
        Table::HwDiagram => format!("{table} table"),
        _ => format!("{table} table ({t})"),
    };
    Report { title, checks }
}

fn bracket(t: RewritingType) -> impl Fn(&Element, &Element) -> Element {
    move |x, y| commutator_r(x, y, t).expect("generators are irreducible")
}

/// Vertex commutators, all ordered pairs of `a`, `a†`, `I`.
pub fn verify_vertex_commutators(t: RewritingType) -> Report {
    let gens = [("a", a()), ("a†", adag()), ("I", vertex_identity())];
    let expected = |x: &str, y: &str| -> Element {
        match (x, y) {
            ("a", "a†") => Element::unit(),
            ("a†", "a") => -Element::unit(),
            ("a", "I") => a(),
            ("I", "a") => -a(),
            ("I", "a†") => adag(),
            ("a†", "I") => -adag(),
            _ => Element::zero(),
        }
    };
    let br = bracket(t);
    let mut r = Report::new(format!("vertex commutators ({t})"));
    for (xn, x) in &gens {
        for (yn, y) in &gens {
            r.checks.push(Check::elements(format!("[{xn},{yn}]"), &expected(xn, yn), &br(x, y)));
        }
    }
    r
}

/// Loop commutators, including brackets with the vertex identity.
pub fn verify_loop_commutators(t: RewritingType) -> Report {
    let br = bracket(t);
    let i = vertex_identity();
    let mut r = Report::new(format!("loop commutators ({t})"));
    let mut push = |cell: &str, exp: Element, got: Element| r.checks.push(Check::elements(cell, &exp, &got));
    push("[ℓ,ℓ†]", i.clone(), br(&l(), &ldag()));
    push("[L,ℓ†]", ldag(), br(&loop_identity(), &ldag()));
    push("[ℓ,L]", l(), br(&l(), &loop_identity()));
    for (n, x) in [("ℓ", l()), ("L", loop_identity()), ("ℓ†", ldag())] {
        push(&format!("[{n},I]"), Element::zero(), br(&x, &i));
    }
    r
}

pub fn verify_edge_commutators(t: RewritingType) -> Report {
    let br = bracket(t);
    let mut r = Report::new(format!("edge commutators ({t})"));
    let ii = superpose(&vertex_identity(), &vertex_identity());
    r.checks.push(Check::elements("[e>,e>†]", &ii, &br(&edge_delete(), &edge_create())));
    r.checks
        .push(Check::elements("[e>,E>]", &edge_delete(), &br(&edge_delete(), &edge_identity())));
    r.checks
        .push(Check::elements("[E>,e>†]", &edge_create(), &br(&edge_identity(), &edge_create())));
    r
}

/// `[x, y_1⊎…⊎y_n] = Σ_k [x, y_k] ⊎ (other y's)` over loop generators, `n ≤ max_n`.
pub fn verify_nested_commutators(t: RewritingType, max_n: usize) -> Report {
    let gens = [("ℓ", l()), ("L", loop_identity()), ("ℓ†", ldag())];
    let mut multisets: Vec<Vec<usize>> = vec![Vec::new()];
    let mut all = Vec::new();
    for _ in 0..max_n {
        let mut next = Vec::new();
        for m in &multisets {
            for g in m.last().copied().unwrap_or(0)..gens.len() {
                let mut m2 = m.clone();
                m2.push(g);
                next.push(m2);
            }
        }
        all.extend(next.iter().cloned());
        multisets = next;
    }
    let mut jobs = Vec::new();
    for (xi, _) in gens.iter().enumerate() {
        for ys in &all {
            jobs.push((xi, ys.clone()));
        }
    }
    let br = bracket(t);
    let checks = par::map(&jobs, |&(xi, ref ys)| {
        let x = &gens[xi].1;
        let sup = |idx: &mut dyn Iterator<Item = usize>| idx.fold(Element::unit(), |acc, k| superpose(&acc, &gens[k].1));
        let lhs = br(x, &sup(&mut ys.iter().copied()));
        let mut rhs = Element::zero();
        for k in 0..ys.len() {
            let rest = sup(&mut ys.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &g)| g));
            rhs = rhs.plus(&superpose(&br(x, &gens[ys[k]].1), &rest));
        }
        let label = ys.iter().map(|&g| gens[g].0).collect::<Vec<_>>().join("⊎");
        Check::elements(format!("[{},{label}]", gens[xi].0), &rhs, &lhs)
    });
    Report {
        title: format!("nested loop commutators ({t})"),
        checks,
    }
}

/// The seven terms of `e> ⊛ E>`: every vertex preserved, exactly one edge
/// deleted, one edge preserved unless the edges were matched, nothing created.
pub fn verify_edge_composition() -> Report {
    let x = nontrivial_compose_r(&edge_delete(), &edge_identity(), RewritingType::Dpo).expect("irreducible");
    let mut r = Report::new("e>⊛E> terms");
    r.checks.push(Check::flag("term count", "7", x.len().to_string(), x.len() == 7));
    let mut shapes = Vec::new();
    for (_, c, d) in x.terms() {
        let rule = d.as_rule().expect("reduced terms are rules");
        let nv = rule.input.vertex_count();
        let kept_v = rule.r_v.iter().all(Option::is_some) && nv == rule.output.vertex_count();
        let deleted = rule.r_e.iter().filter(|e| e.is_none()).count();
        let kept = rule.r_e.len() - deleted;
        let created = rule.output.edge_count() - kept;
        let shape = (nv, rule.input.edge_count(), kept);
        let ok = *c == coeff(1) && kept_v && deleted == 1 && created == 0 && matches!(shape, (2, 1, 0) | (2, 2, 1) | (3, 2, 1) | (4, 2, 1));
        shapes.push(shape);
        r.checks.push(Check::flag(
            format!("term {}", name(&Element::basis(d))),
            "one deletion, vertices kept, coefficient 1",
            format!("{c}·{shape:?}"),
            ok,
        ));
    }
    let count = |s| shapes.iter().filter(|&&x| x == s).count();
    let dist = [count((2, 1, 0)), count((2, 2, 1)), count((3, 2, 1)), count((4, 2, 1))];
    r.checks.push(Check::flag(
        "vertices shared 2/2/1/0",
        "[1, 2, 4, 0]",
        format!("{dist:?}"),
        dist == [1, 2, 4, 0],
    ));
    r
}

/// `Ĝ ⊛_DPO Ĥ† = δ_{G≅H} |Aut(G)| r_∅` over the catalog graphs.
pub fn verify_structural(graphs: &[(&str, Multigraph)]) -> Report {
    let mut jobs = Vec::new();
    for (gn, g) in graphs {
        for (hn, h) in graphs {
            jobs.push((gn.to_string(), g.clone(), hn.to_string(), h.clone()));
        }
    }
    let checks = par::map(&jobs, |(gn, g, hn, h)| {
        let exp = if is_isomorphic(g, h) {
            Element::unit().scale(&Coeff::from_integer(automorphism_count(g).into()))
        } else {
            Element::zero()
        };
        let got = structural_compose(g, h, RewritingType::Dpo).expect("catalog graphs are connected");
        Check::elements(format!("Ĝ[{gn}]⊛Ĥ†[{hn}]"), &exp, &got)
    });
    Report {
        title: "structural DPO".into(),
        checks,
    }
}

fn closure_shape_identity(d: &RuleDiagram) -> bool {
    d.as_rule().is_some_and(|r| {
        r.input.vertex_count() == r.output.vertex_count()
            && r.input.edge_count() == r.output.edge_count()
            && r.r_v.iter().all(Option::is_some)
            && r.r_e.iter().all(Option::is_some)
    })
}

fn closure_shape_replace(d: &RuleDiagram) -> bool {
    d.as_rule()
        .is_some_and(|r| r.r_v.iter().all(Option::is_none) && r.r_e.iter().all(Option::is_none) && is_isomorphic(&r.input, &r.output))
}

/// Observable subalgebras: `Õ` products commute and stay of identity shape;
/// `Ŏ_1 ⊛_DPO Ŏ_2 = δ |Aut| Ŏ_1`; and the `SPO_A` product leaving the `Ŏ` shape.
pub fn verify_observables(graphs: &[(&str, Multigraph)]) -> Report {
    let mut jobs = Vec::new();
    for (gn, g) in graphs {
        for (hn, h) in graphs {
            jobs.push((gn.to_string(), g.clone(), hn.to_string(), h.clone()));
        }
    }
    let nested = par::map(&jobs, |(gn, g, hn, h)| {
        let mut out = Vec::new();
        let (og, oh) = (observable_identity(g), observable_identity(h));
        for t in RewritingType::ALL {
            let xy = compose_r(&og, &oh, t).expect("irreducible");
            let yx = compose_r(&oh, &og, t).expect("irreducible");
            out.push(Check::elements(format!("Õ[{gn}]*Õ[{hn}] = Õ[{hn}]*Õ[{gn}] ({t})"), &yx, &xy));
            let closed = xy.terms().all(|(_, _, d)| closure_shape_identity(d));
            out.push(Check::flag(
                format!("Õ[{gn}]*Õ[{hn}] closed ({t})"),
                "closed",
                if closed { "closed" } else { "not closed" },
                closed,
            ));
        }
        let (rg, rh) = (observable_replace(g), observable_replace(h));
        let got = nontrivial_compose_r(&rg, &rh, RewritingType::Dpo).expect("irreducible");
        let exp = if is_isomorphic(g, h) {
            rg.scale(&Coeff::from_integer(automorphism_count(g).into()))
        } else {
            Element::zero()
        };
        out.push(Check::elements(format!("Ŏ[{gn}]⊛Ŏ[{hn}] (DPO)"), &exp, &got));
        let closed = got.terms().all(|(_, _, d)| closure_shape_replace(d));
        out.push(Check::flag(
            format!("Ŏ[{gn}]⊛Ŏ[{hn}] closed (DPO)"),
            "closed",
            if closed { "closed" } else { "not closed" },
            closed,
        ));
        out
    });
    let mut r = Report {
        title: "observables".into(),
        checks: nested.into_iter().flatten().collect(),
    };
    let (r1, r2) = (
        observable_replace(&Multigraph::discrete(1)),
        observable_replace(&Multigraph::new(2, vec![(0, 1)]).unwrap()),
    );
    let x = nontrivial_compose_r(&r1, &r2, RewritingType::SpoA).expect("irreducible");
    let open = !x.is_zero() && x.terms().any(|(_, _, d)| !closure_shape_replace(d));
    r.checks.push(Check::flag(
        "Ŏ[vertex]⊛Ŏ[edge] (SPO_A) leaves the subalgebra",
        "not closed",
        if open { "not closed" } else { "closed" },
        open,
    ));
    r
}

/// `a *_T a† − a† *_T a = 1·r_∅`, while a multiplicative counit vanishing on
/// every non-empty diagram would send both products to 0 and `r_∅` to 1.
pub fn demonstrate_no_counit(t: RewritingType) -> Report {
    let comm = commutator_r(&a(), &adag(), t).expect("irreducible");
    let mut r = Report::new(format!("no counit ({t})"));
    r.checks.push(Check::elements("[a,a†]", &Element::unit(), &comm));
    let eps = |x: &Element| x.coefficient(&DiagramKey::empty());
    // ε(a)·ε(a†) - ε(a†)·ε(a) under multiplicativity, versus ε of the commutator.
    let forced = &eps(&a()) * &eps(&adag()) - &eps(&adag()) * &eps(&a());
    let actual = eps(&comm);
    r.checks.push(Check::flag(
        "ε([a,a†]) multiplicative vs actual",
        "contradiction 0 ≠ 1",
        format!("{forced} vs {actual}"),
        forced == coeff(0) && actual == coeff(1),
    ));
    r
}

/// HW closed forms for compose, rule algebra, coproduct and antipode.
pub fn verify_hw(max_compose: usize, max_hopf: usize) -> Report {
    let mut jobs = Vec::new();
    for r1 in 0..=max_compose {
        for s1 in 0..=max_compose {
            for t1 in 0..=max_compose {
                for r2 in 0..=max_compose {
                    for s2 in 0..=max_compose {
                        for t2 in 0..=max_compose {
                            jobs.push([r1, s1, t1, r2, s2, t2]);
                        }
                    }
                }
            }
        }
    }
    let mut checks = par::map(&jobs, |&[r1, s1, t1, r2, s2, t2]: &[usize; 6]| {
        let got = crate::algebra::compose_d(&hw_element(r1, s1, t1), &hw_element(r2, s2, t2));
        let exp = hw_compose_closed_form(r1, s1, t1, r2, s2, t2);
        Check::elements(format!("d({r1},{s1},{t1})*d({r2},{s2},{t2})"), &exp, &got)
    });
    for r in 0..=max_hopf {
        for s in 0..=max_hopf {
            for t in 0..=max_hopf {
                let d = hw_element(r, s, t);
                let cp = coproduct(&d) == hw_coproduct_closed_form(r, s, t);
                checks.push(Check::flag(
                    format!("Δd({r},{s},{t})"),
                    "closed form",
                    if cp { "closed form" } else { "differs" },
                    cp,
                ));
                checks.push(Check::elements(
                    format!("S d({r},{s},{t})"),
                    &hw_antipode_closed_form(r, s, t),
                    &antipode(&d),
                ));
            }
        }
    }
    Report {
        title: "Heisenberg-Weyl closed forms".into(),
        checks,
    }
}

/// `r(m1,n1) *_T r(m2,n2)` against the binomial formula.
pub fn verify_hw_rules(t: RewritingType, max: usize) -> Report {
    let mut jobs = Vec::new();
    for m1 in 0..=max {
        for n1 in 0..=max {
            for m2 in 0..=max {
                for n2 in 0..=max {
                    jobs.push([m1, n1, m2, n2]);
                }
            }
        }
    }
    let checks = par::map(&jobs, |&[m1, n1, m2, n2]: &[usize; 4]| {
        let got = compose_r(&hw_rule(m1, n1), &hw_rule(m2, n2), t).expect("irreducible");
        Check::elements(format!("r({m1},{n1})*r({m2},{n2})"), &hw_rule_closed_form(m1, n1, m2, n2), &got)
    });
    Report {
        title: format!("HW rule algebra ({t})"),
        checks,
    }
}

/// Counit laws on a handful of generators.
pub fn verify_counit_values() -> Report {
    let mut r = Report::new("counit");
    r.checks.push(Check::flag(
        "ε(r_∅)",
        "1",
        counit(&Element::unit()).to_string(),
        counit(&Element::unit()) == coeff(1),
    ));
    for (n, x) in builtins() {
        let e = counit(&x);
        r.checks.push(Check::flag(format!("ε({n})"), "0", e.to_string(), e == coeff(0)));
    }
    r
}

/// Every suite the command line exposes, for the given rewriting types.
pub fn suite(name: &str, types: &[RewritingType]) -> Option<Vec<Report>> {
    let graphs = structural_graphs();
    let small: Vec<_> = graphs.iter().filter(|(_, g)| g.vertex_count() <= 3).cloned().collect();
    let per_type = |f: &dyn Fn(RewritingType) -> Report| types.iter().map(|&t| f(t)).collect::<Vec<_>>();
    Some(match name {
        "vertex" => per_type(&|t| verify_table(Table::Vertex, t)),
        "loop" => per_type(&|t| verify_table(Table::Loop, t)),
        "coupling" | "vertex_loop" => per_type(&|t| verify_table(Table::VertexLoop, t)),
        "commutators" => {
            let mut v = per_type(&verify_vertex_commutators);
            v.extend(per_type(&verify_loop_commutators));
            v.extend(per_type(&verify_edge_commutators));
            v.extend(per_type(&|t| verify_nested_commutators(t, 3)));
            v.push(verify_edge_composition());
            v
        }
        "hw" => {
            let mut v = vec![verify_table(Table::HwDiagram, RewritingType::Dpo), verify_hw(2, 2)];
            v.extend(per_type(&|t| verify_hw_rules(t, 3)));
            v
        }
        "structural" => vec![verify_structural(&graphs)],
        "observables" => vec![verify_observables(&small)],
        "hopf" => {
            let mut v = vec![verify_counit_values()];
            v.extend(per_type(&demonstrate_no_counit));
            v
        }
        "all" => {
            let mut v = Vec::new();
            for n in &SUITES[..SUITES.len() - 1] {
                v.extend(suite(n, types)?);
            }
            v
        }
        _ => return None,
    })
}

pub const SUITES: [&str; 9] = [
    "vertex",
    "loop",
    "coupling",
    "commutators",
    "hw",
    "structural",
    "observables",
    "hopf",
    "all",
];
