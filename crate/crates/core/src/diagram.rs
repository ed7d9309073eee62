//! Linear rules and rule diagrams.
//!
//! A diagram is stored in aggregate form: the superposed input graph `I`, the
//! superposed output graph `O`, the rule maps `r: I ⇀ O` and the matches
//! `m: O ⇀ I`, each as partial maps on vertices and edges. Constituents are
//! recovered as the connected pieces of `(I, O, r)`; their order is any
//! topological order of the match relation.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{disjoint_union, injective_partial_morphisms, Multigraph, UnionFind};
use crate::rel::Relation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Input,
    Output,
}

/// An injective partial graph morphism `r: I ⇀ O`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearRule {
    pub input: Multigraph,
    pub output: Multigraph,
    pub r_v: Vec<Option<usize>>,
    pub r_e: Vec<Option<usize>>,
}

impl LinearRule {
    pub fn new(input: Multigraph, output: Multigraph, r_v: Vec<Option<usize>>, r_e: Vec<Option<usize>>) -> Result<Self> {
        let rule = LinearRule { input, output, r_v, r_e };
        let d = RuleDiagram::from_rule(rule.clone())?;
        let report = d.validate();
        if !report.is_ok() {
            return Err(Error::Invalid(report.to_string()));
        }
        Ok(rule)
    }

    /// The rule that keeps every element of `g`.
    pub fn identity(g: &Multigraph) -> Self {
        LinearRule {
            input: g.clone(),
            output: g.clone(),
            r_v: (0..g.vertex_count()).map(Some).collect(),
            r_e: (0..g.edge_count()).map(Some).collect(),
        }
    }

    /// The rule that deletes `g`.
    pub fn deletion(g: &Multigraph) -> Self {
        LinearRule {
            input: g.clone(),
            output: Multigraph::empty(),
            r_v: vec![None; g.vertex_count()],
            r_e: vec![None; g.edge_count()],
        }
    }

    /// The rule that creates `g`.
    pub fn creation(g: &Multigraph) -> Self {
        LinearRule {
            input: Multigraph::empty(),
            output: g.clone(),
            r_v: Vec::new(),
            r_e: Vec::new(),
        }
    }
}

/// Pairs `(output element of the lower diagram, input element of the upper diagram)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Match {
    pub vertex: Vec<(usize, usize)>,
    pub edge: Vec<(usize, usize)>,
}

impl Match {
    pub fn is_empty(&self) -> bool {
        self.vertex.is_empty() && self.edge.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RuleDiagram {
    input: Multigraph,
    output: Multigraph,
    r_v: Vec<Option<usize>>,
    r_e: Vec<Option<usize>>,
    m_v: Vec<Option<usize>>,
    m_e: Vec<Option<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Node {
    I(usize),
    O(usize),
}

impl RuleDiagram {
    /// Checks shapes and ranges only; use [`RuleDiagram::validate`] for the diagram conditions.
    pub fn new(
        input: Multigraph,
        output: Multigraph,
        r_v: Vec<Option<usize>>,
        r_e: Vec<Option<usize>>,
        m_v: Vec<Option<usize>>,
        m_e: Vec<Option<usize>>,
    ) -> Result<Self> {
        let check = |map: &[Option<usize>], len: usize, cod: usize, what: &str| -> Result<()> {
            if map.len() != len {
                return Err(Error::Malformed(format!("{what} has length {} but should have {len}", map.len())));
            }
            match map.iter().flatten().find(|&&x| x >= cod) {
                Some(&x) => Err(Error::OutOfRange { id: x, size: cod }),
                None => Ok(()),
            }
        };
        check(&r_v, input.vertex_count(), output.vertex_count(), "r_v")?;
        check(&r_e, input.edge_count(), output.edge_count(), "r_e")?;
        check(&m_v, output.vertex_count(), input.vertex_count(), "m_v")?;
        check(&m_e, output.edge_count(), input.edge_count(), "m_e")?;
        Ok(RuleDiagram {
            input,
            output,
            r_v,
            r_e,
            m_v,
            m_e,
        })
    }

    pub fn empty() -> Self {
        RuleDiagram {
            input: Multigraph::empty(),
            output: Multigraph::empty(),
            r_v: Vec::new(),
            r_e: Vec::new(),
            m_v: Vec::new(),
            m_e: Vec::new(),
        }
    }

    pub fn from_rule(rule: LinearRule) -> Result<Self> {
        let (nv, ne) = (rule.output.vertex_count(), rule.output.edge_count());
        RuleDiagram::new(rule.input, rule.output, rule.r_v, rule.r_e, vec![None; nv], vec![None; ne])
    }

    pub fn input(&self) -> &Multigraph {
        &self.input
    }

    pub fn output(&self) -> &Multigraph {
        &self.output
    }

    pub fn r_vertices(&self) -> &[Option<usize>] {
        &self.r_v
    }

    pub fn r_edges(&self) -> &[Option<usize>] {
        &self.r_e
    }

    pub fn m_vertices(&self) -> &[Option<usize>] {
        &self.m_v
    }

    pub fn m_edges(&self) -> &[Option<usize>] {
        &self.m_e
    }

    pub fn r_vertex_relation(&self) -> Relation {
        Relation::from_partial_map(&self.r_v, self.output.vertex_count()).expect("ranges checked on construction")
    }

    pub fn r_edge_relation(&self) -> Relation {
        Relation::from_partial_map(&self.r_e, self.output.edge_count()).expect("ranges checked on construction")
    }

    pub fn m_vertex_relation(&self) -> Relation {
        Relation::from_partial_map(&self.m_v, self.input.vertex_count()).expect("ranges checked on construction")
    }

    pub fn m_edge_relation(&self) -> Relation {
        Relation::from_partial_map(&self.m_e, self.input.edge_count()).expect("ranges checked on construction")
    }

    pub fn is_empty(&self) -> bool {
        self.input.is_empty() && self.output.is_empty()
    }

    pub fn is_irreducible(&self) -> bool {
        self.m_v.iter().chain(&self.m_e).all(Option::is_none)
    }

    /// The rule `(I, O, r)` of an irreducible diagram.
    pub fn as_rule(&self) -> Option<LinearRule> {
        self.is_irreducible().then(|| LinearRule {
            input: self.input.clone(),
            output: self.output.clone(),
            r_v: self.r_v.clone(),
            r_e: self.r_e.clone(),
        })
    }

    /// Relabel with permutations `old -> new` of I-vertices, I-edges, O-vertices and O-edges.
    pub fn relabeled(&self, iv: &[usize], ie: &[usize], ov: &[usize], oe: &[usize]) -> RuleDiagram {
        let remap = |map: &[Option<usize>], dom: &[usize], cod: &[usize]| {
            let mut out = vec![None; map.len()];
            for (x, y) in map.iter().enumerate() {
                out[dom[x]] = y.map(|y| cod[y]);
            }
            out
        };
        RuleDiagram {
            input: self.input.permuted(iv, ie),
            output: self.output.permuted(ov, oe),
            r_v: remap(&self.r_v, iv, ov),
            r_e: remap(&self.r_e, ie, oe),
            m_v: remap(&self.m_v, ov, iv),
            m_e: remap(&self.m_e, oe, ie),
        }
    }

    pub(crate) fn node_count(&self) -> usize {
        self.input.vertex_count() + self.output.vertex_count()
    }

    // ---- worldlines -------------------------------------------------------

    pub(crate) fn chains(&self) -> Chains<'_> {
        Chains::new(self)
    }

    // ---- structure --------------------------------------------------------

    /// Union-find over `[I-vertices, O-vertices, I-edges, O-edges]`, linking
    /// incidence and `r`; matches too when `with_matches` is set.
    fn pieces(&self, with_matches: bool) -> (UnionFind, usize) {
        let (iv, ov, ie) = (self.input.vertex_count(), self.output.vertex_count(), self.input.edge_count());
        let total = iv + ov + ie + self.output.edge_count();
        let (o_v, i_e, o_e) = (iv, iv + ov, iv + ov + ie);
        let mut uf = UnionFind::new(total);
        for (e, &(s, t)) in self.input.edges().iter().enumerate() {
            uf.union(i_e + e, s);
            uf.union(i_e + e, t);
        }
        for (e, &(s, t)) in self.output.edges().iter().enumerate() {
            uf.union(o_e + e, o_v + s);
            uf.union(o_e + e, o_v + t);
        }
        for (x, y) in self.r_v.iter().enumerate() {
            if let Some(y) = y {
                uf.union(x, o_v + y);
            }
        }
        for (x, y) in self.r_e.iter().enumerate() {
            if let Some(y) = y {
                uf.union(i_e + x, o_e + y);
            }
        }
        if with_matches {
            for (y, x) in self.m_v.iter().enumerate() {
                if let Some(x) = x {
                    uf.union(o_v + y, *x);
                }
            }
            for (y, x) in self.m_e.iter().enumerate() {
                if let Some(x) = x {
                    uf.union(o_e + y, i_e + x);
                }
            }
        }
        (uf, total)
    }

    fn group(&self, with_matches: bool) -> Vec<Piece> {
        let (iv, ov, ie) = (self.input.vertex_count(), self.output.vertex_count(), self.input.edge_count());
        let (mut uf, total) = self.pieces(with_matches);
        let mut index = vec![usize::MAX; total];
        let mut out: Vec<Piece> = Vec::new();
        for x in 0..total {
            let root = uf.find(x);
            if index[root] == usize::MAX {
                index[root] = out.len();
                out.push(Piece::default());
            }
            let p = &mut out[index[root]];
            if x < iv {
                p.input_vertices.push(x);
            } else if x < iv + ov {
                p.output_vertices.push(x - iv);
            } else if x < iv + ov + ie {
                p.input_edges.push(x - iv - ov);
            } else {
                p.output_edges.push(x - iv - ov - ie);
            }
        }
        out
    }

    /// Constituents ordered latest-first, so matches run from higher to lower
    /// indices. `None` if the match relation between constituents has a cycle.
    pub fn constituents(&self) -> Option<Vec<Piece>> {
        let pieces = self.group(false);
        let order = self.constituent_order(&pieces)?;
        Some(order.into_iter().map(|i| pieces[i].clone()).collect())
    }

    fn constituent_order(&self, pieces: &[Piece]) -> Option<Vec<usize>> {
        let k = pieces.len();
        let mut of_i_v = vec![0; self.input.vertex_count()];
        let mut of_i_e = vec![0; self.input.edge_count()];
        for (c, p) in pieces.iter().enumerate() {
            p.input_vertices.iter().for_each(|&x| of_i_v[x] = c);
            p.input_edges.iter().for_each(|&x| of_i_e[x] = c);
        }
        // arc earlier -> later
        let mut later: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
        for (c, p) in pieces.iter().enumerate() {
            for &y in &p.output_vertices {
                if let Some(x) = self.m_v[y] {
                    later[c].insert(of_i_v[x]);
                }
            }
            for &y in &p.output_edges {
                if let Some(x) = self.m_e[y] {
                    later[c].insert(of_i_e[x]);
                }
            }
        }
        if (0..k).any(|c| later[c].contains(&c)) {
            return None;
        }
        let mut indeg = vec![0usize; k];
        for succ in &later {
            for &c in succ {
                indeg[c] += 1;
            }
        }
        let mut ready: BTreeSet<usize> = (0..k).filter(|&c| indeg[c] == 0).collect();
        let mut earliest_first = Vec::with_capacity(k);
        while let Some(c) = ready.pop_first() {
            earliest_first.push(c);
            for &d in &later[c] {
                indeg[d] -= 1;
                if indeg[d] == 0 {
                    ready.insert(d);
                }
            }
        }
        if earliest_first.len() != k {
            return None;
        }
        earliest_first.reverse();
        Some(earliest_first)
    }

    /// Connected pieces of `(I, O, r, m)`: the primitive superposition factors.
    pub fn components(&self) -> Vec<RuleDiagram> {
        self.group(true).iter().map(|p| self.restrict(p)).collect()
    }

    pub fn component_count(&self) -> usize {
        self.group(true).len()
    }

    /// Sub-diagram on a union of pieces; the element lists must be sorted.
    pub(crate) fn restrict(&self, p: &Piece) -> RuleDiagram {
        let inv = |list: &[usize], n: usize| {
            let mut pos = vec![usize::MAX; n];
            for (i, &x) in list.iter().enumerate() {
                pos[x] = i;
            }
            pos
        };
        let iv = inv(&p.input_vertices, self.input.vertex_count());
        let ov = inv(&p.output_vertices, self.output.vertex_count());
        let ie = inv(&p.input_edges, self.input.edge_count());
        let oe = inv(&p.output_edges, self.output.edge_count());
        let graph = |g: &Multigraph, vs: &[usize], es: &[usize], vpos: &[usize]| {
            let edges = es.iter().map(|&e| (vpos[g.src(e)], vpos[g.tgt(e)])).collect();
            Multigraph::new(vs.len(), edges).expect("pieces are closed under incidence")
        };
        let sub = |list: &[usize], map: &[Option<usize>], pos: &[usize]| -> Vec<Option<usize>> {
            list.iter().map(|&x| map[x].map(|y| pos[y])).collect()
        };
        RuleDiagram {
            input: graph(&self.input, &p.input_vertices, &p.input_edges, &iv),
            output: graph(&self.output, &p.output_vertices, &p.output_edges, &ov),
            r_v: sub(&p.input_vertices, &self.r_v, &ov),
            r_e: sub(&p.input_edges, &self.r_e, &oe),
            m_v: sub(&p.output_vertices, &self.m_v, &iv),
            m_e: sub(&p.output_edges, &self.m_e, &ie),
        }
    }

    pub fn classify(&self) -> Classification {
        let empty = self.is_empty();
        let irreducible = self.is_irreducible();
        let constituents = self.group(false).len();
        Classification {
            empty,
            atomic: irreducible && constituents == 1,
            irreducible,
            primitive: !empty && self.component_count() == 1,
        }
    }

    pub fn interfaces(&self) -> Interfaces {
        let ch = self.chains();
        Interfaces {
            input_vertices: (0..self.input.vertex_count()).filter(|&x| ch.m_inv_v[x].is_none()).collect(),
            input_edges: (0..self.input.edge_count()).filter(|&x| ch.m_inv_e[x].is_none()).collect(),
            output_vertices: (0..self.output.vertex_count()).filter(|&y| self.m_v[y].is_none()).collect(),
            output_edges: (0..self.output.edge_count()).filter(|&y| self.m_e[y].is_none()).collect(),
        }
    }

    // ---- validity ---------------------------------------------------------

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let injective = |map: &[Option<usize>]| {
            let mut seen = BTreeSet::new();
            map.iter().flatten().all(|&x| seen.insert(x))
        };
        for (map, name) in [
            (&self.r_v, "r on vertices"),
            (&self.r_e, "r on edges"),
            (&self.m_v, "m on vertices"),
            (&self.m_e, "m on edges"),
        ] {
            if !injective(map) {
                report.violations.push(Violation::NotOneToOne(name));
            }
        }
        for (e, f) in self.r_e.iter().enumerate() {
            let Some(f) = *f else { continue };
            let (s, t) = self.input.edges()[e];
            let (fs, ft) = self.output.edges()[f];
            if self.r_v[s] != Some(fs) || self.r_v[t] != Some(ft) {
                report.violations.push(Violation::RuleNotMorphism {
                    input_edge: e,
                    output_edge: f,
                });
            }
        }
        if !report.violations.is_empty() {
            return report;
        }
        let pieces = self.group(false);
        if self.constituent_order(&pieces).is_none() {
            report.violations.push(Violation::Cyclic);
            return report;
        }
        let ch = self.chains();
        for (y, x) in self.m_e.iter().enumerate() {
            let Some(x) = *x else { continue };
            let (ys, yt) = self.output.edges()[y];
            let (xs, xt) = self.input.edges()[x];
            for (end, a, b) in [("source", ys, xs), ("target", yt, xt)] {
                if !ch.reaches_v(Node::O(a), Node::I(b)) {
                    report.violations.push(Violation::DelayedEdge {
                        output_edge: y,
                        input_edge: x,
                        endpoint: end,
                    });
                }
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }
}

/// Element lists (sorted) of a constituent or component.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Piece {
    pub input_vertices: Vec<usize>,
    pub input_edges: Vec<usize>,
    pub output_vertices: Vec<usize>,
    pub output_edges: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub empty: bool,
    pub atomic: bool,
    pub irreducible: bool,
    pub primitive: bool,
}

impl Classification {
    pub fn labels(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (flag, name) in [
            (self.empty, "empty"),
            (self.atomic, "atomic"),
            (self.irreducible, "irreducible"),
            (self.primitive, "primitive"),
        ] {
            if flag {
                out.push(name);
            }
        }
        if !self.irreducible {
            out.push("generic");
        }
        out
    }
}

/// Interface element lists; edges may be listed whose endpoints are not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interfaces {
    pub input_vertices: Vec<usize>,
    pub input_edges: Vec<usize>,
    pub output_vertices: Vec<usize>,
    pub output_edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    NotOneToOne(&'static str),
    RuleNotMorphism {
        input_edge: usize,
        output_edge: usize,
    },
    Cyclic,
    DelayedEdge {
        output_edge: usize,
        input_edge: usize,
        endpoint: &'static str,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotOneToOne(what) => write!(f, "{what} is not one-to-one"),
            Violation::RuleNotMorphism { input_edge, output_edge } => {
                write!(
                    f,
                    "r maps input edge {input_edge} to output edge {output_edge} without mapping its endpoints"
                )
            }
            Violation::Cyclic => write!(f, "matches between constituents form a cycle"),
            Violation::DelayedEdge {
                output_edge,
                input_edge,
                endpoint,
            } => write!(
                f,
                "output edge {output_edge} is matched to input edge {input_edge} but their {endpoint} vertices lie on different worldlines"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Successor and predecessor lookups along vertex and edge worldlines.
pub(crate) struct Chains<'a> {
    d: &'a RuleDiagram,
    pub r_inv_v: Vec<Option<usize>>,
    pub r_inv_e: Vec<Option<usize>>,
    pub m_inv_v: Vec<Option<usize>>,
    pub m_inv_e: Vec<Option<usize>>,
}

fn invert(map: &[Option<usize>], n: usize) -> Vec<Option<usize>> {
    let mut out = vec![None; n];
    for (x, y) in map.iter().enumerate() {
        if let Some(y) = y {
            out[*y] = Some(x);
        }
    }
    out
}

impl<'a> Chains<'a> {
    fn new(d: &'a RuleDiagram) -> Self {
        Chains {
            d,
            r_inv_v: invert(&d.r_v, d.output.vertex_count()),
            r_inv_e: invert(&d.r_e, d.output.edge_count()),
            m_inv_v: invert(&d.m_v, d.input.vertex_count()),
            m_inv_e: invert(&d.m_e, d.input.edge_count()),
        }
    }

    fn step(&self, n: Node, forward: bool, edges: bool) -> Option<Node> {
        let d = self.d;
        match (n, forward, edges) {
            (Node::I(x), true, false) => d.r_v[x].map(Node::O),
            (Node::O(y), true, false) => d.m_v[y].map(Node::I),
            (Node::I(x), false, false) => self.m_inv_v[x].map(Node::O),
            (Node::O(y), false, false) => self.r_inv_v[y].map(Node::I),
            (Node::I(x), true, true) => d.r_e[x].map(Node::O),
            (Node::O(y), true, true) => d.m_e[y].map(Node::I),
            (Node::I(x), false, true) => self.m_inv_e[x].map(Node::O),
            (Node::O(y), false, true) => self.r_inv_e[y].map(Node::I),
        }
    }

    fn walk(&self, mut n: Node, forward: bool, edges: bool) -> Node {
        // bounded so that malformed (cyclic) input cannot hang
        let bound = if edges {
            self.d.input.edge_count() + self.d.output.edge_count()
        } else {
            self.d.node_count()
        };
        for _ in 0..=bound {
            match self.step(n, forward, edges) {
                Some(next) => n = next,
                None => return n,
            }
        }
        n
    }

    pub fn top_v(&self, n: Node) -> Node {
        self.walk(n, true, false)
    }

    pub fn bottom_v(&self, n: Node) -> Node {
        self.walk(n, false, false)
    }

    pub fn top_e(&self, n: Node) -> Node {
        self.walk(n, true, true)
    }

    /// Whether `b` lies strictly later than `a` on the same vertex worldline.
    pub fn reaches_v(&self, a: Node, b: Node) -> bool {
        let mut n = a;
        for _ in 0..=self.d.node_count() {
            match self.step(n, true, false) {
                Some(next) if next == b => return true,
                Some(next) => n = next,
                None => return false,
            }
        }
        false
    }
}

// ---- boundary ---------------------------------------------------------------

/// Endpoints of all worldlines crossing the interfaces, in interface-local indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Boundary {
    pub in_v: Vec<usize>,
    pub in_e: Vec<usize>,
    pub out_v: Vec<usize>,
    pub out_e: Vec<usize>,
    pub in_edges: Vec<(Option<usize>, Option<usize>)>,
    pub out_edges: Vec<(Option<usize>, Option<usize>)>,
    pub r_v: Vec<Option<usize>>,
    pub r_e: Vec<Option<usize>>,
}

impl RuleDiagram {
    pub(crate) fn boundary_data(&self) -> Boundary {
        let ch = self.chains();
        let ifs = self.interfaces();
        let local = |list: &[usize], n: usize| {
            let mut pos = vec![None; n];
            for (i, &x) in list.iter().enumerate() {
                pos[x] = Some(i);
            }
            pos
        };
        let in_pos = local(&ifs.input_vertices, self.input.vertex_count());
        let out_pos = local(&ifs.output_vertices, self.output.vertex_count());
        let out_e_pos = local(&ifs.output_edges, self.output.edge_count());
        let bottom = |v: usize| match ch.bottom_v(Node::I(v)) {
            Node::I(x) => in_pos[x],
            Node::O(_) => None,
        };
        let top = |n: Node| match ch.top_v(n) {
            Node::O(y) => out_pos[y],
            Node::I(_) => None,
        };
        let in_edges = ifs
            .input_edges
            .iter()
            .map(|&e| (bottom(self.input.src(e)), bottom(self.input.tgt(e))))
            .collect();
        let out_edges = ifs
            .output_edges
            .iter()
            .map(|&e| (top(Node::O(self.output.src(e))), top(Node::O(self.output.tgt(e)))))
            .collect();
        let r_v = ifs.input_vertices.iter().map(|&x| top(Node::I(x))).collect();
        let r_e = ifs
            .input_edges
            .iter()
            .map(|&e| match ch.top_e(Node::I(e)) {
                Node::O(f) => out_e_pos[f],
                Node::I(_) => None,
            })
            .collect();
        Boundary {
            in_v: ifs.input_vertices,
            in_e: ifs.input_edges,
            out_v: ifs.output_vertices,
            out_e: ifs.output_edges,
            in_edges,
            out_edges,
            r_v,
            r_e,
        }
    }
}

// ---- composition ------------------------------------------------------------

/// `d1 ⊎ d2`, with `d1`'s identifiers first.
pub fn superpose(d1: &RuleDiagram, d2: &RuleDiagram) -> RuleDiagram {
    let shift = |map: &[Option<usize>], by: usize| map.iter().map(|x| x.map(|x| x + by)).collect::<Vec<_>>();
    let (iv, ie) = (d1.input.vertex_count(), d1.input.edge_count());
    let (ov, oe) = (d1.output.vertex_count(), d1.output.edge_count());
    let cat = |a: &[Option<usize>], b: Vec<Option<usize>>| a.iter().copied().chain(b).collect::<Vec<_>>();
    RuleDiagram {
        input: disjoint_union(&d1.input, &d2.input),
        output: disjoint_union(&d1.output, &d2.output),
        r_v: cat(&d1.r_v, shift(&d2.r_v, ov)),
        r_e: cat(&d1.r_e, shift(&d2.r_e, oe)),
        m_v: cat(&d1.m_v, shift(&d2.m_v, iv)),
        m_e: cat(&d1.m_e, shift(&d2.m_e, ie)),
    }
}

pub fn superpose_all<'a>(ds: impl IntoIterator<Item = &'a RuleDiagram>) -> RuleDiagram {
    ds.into_iter().fold(RuleDiagram::empty(), |acc, d| superpose(&acc, d))
}

/// `d_A` placed after `d_B` with the extra matches `m_AB: O_B ⇀ I_A`, without validation.
pub(crate) fn compose_unchecked(da: &RuleDiagram, m: &Match, db: &RuleDiagram) -> RuleDiagram {
    let mut out = superpose(da, db);
    let (ov, oe) = (da.output.vertex_count(), da.output.edge_count());
    for &(y, x) in &m.vertex {
        out.m_v[ov + y] = Some(x);
    }
    for &(y, x) in &m.edge {
        out.m_e[oe + y] = Some(x);
    }
    out
}

/// The composite of `d_A` after `d_B` along `m_AB`, or an error if it is not a valid diagram.
pub fn compose_along(da: &RuleDiagram, m: &Match, db: &RuleDiagram) -> Result<RuleDiagram> {
    let (ov, oe) = (db.output.vertex_count(), db.output.edge_count());
    let (iv, ie) = (da.input.vertex_count(), da.input.edge_count());
    for &(y, x) in &m.vertex {
        if y >= ov || x >= iv {
            return Err(Error::InvalidMatch(format!("vertex pair ({y}, {x}) out of range")));
        }
        if db.m_v[y].is_some() {
            return Err(Error::InvalidMatch(format!("output vertex {y} is already matched")));
        }
    }
    for &(y, x) in &m.edge {
        if y >= oe || x >= ie {
            return Err(Error::InvalidMatch(format!("edge pair ({y}, {x}) out of range")));
        }
        if db.m_e[y].is_some() {
            return Err(Error::InvalidMatch(format!("output edge {y} is already matched")));
        }
    }
    let out = compose_unchecked(da, m, db);
    let report = out.validate();
    if !report.is_ok() {
        return Err(Error::InvalidMatch(report.to_string()));
    }
    Ok(out)
}

/// All admissible matches of `d_B`'s output into `d_A`'s input: injective partial
/// morphisms between the boundary-closed interfaces, dangling edges excluded.
pub fn enumerate_matches(da: &RuleDiagram, db: &RuleDiagram) -> Vec<Match> {
    let a = da.boundary_data();
    let b = db.boundary_data();
    let solid = |edges: &[(Option<usize>, Option<usize>)]| -> (Vec<usize>, Vec<(usize, usize)>) {
        edges.iter().enumerate().filter_map(|(i, &(s, t))| Some((i, (s?, t?)))).unzip()
    };
    let (b_idx, b_edges) = solid(&b.out_edges);
    let (a_idx, a_edges) = solid(&a.in_edges);
    injective_partial_morphisms(b.out_v.len(), &b_edges, a.in_v.len(), &a_edges)
        .into_iter()
        .map(|pm| Match {
            vertex: pm
                .vertex
                .iter()
                .enumerate()
                .filter_map(|(y, x)| Some((b.out_v[y], a.in_v[(*x)?])))
                .collect(),
            edge: pm
                .edge
                .iter()
                .enumerate()
                .filter_map(|(y, x)| Some((b.out_e[b_idx[y]], a.in_e[a_idx[(*x)?]])))
                .collect(),
        })
        .collect()
}

/// `d†`: swap input and output, take converses of `r` and `m`.
pub fn dagger_diagram(d: &RuleDiagram) -> RuleDiagram {
    RuleDiagram {
        input: d.output.clone(),
        output: d.input.clone(),
        r_v: invert(&d.r_v, d.output.vertex_count()),
        r_e: invert(&d.r_e, d.output.edge_count()),
        m_v: invert(&d.m_v, d.input.vertex_count()),
        m_e: invert(&d.m_e, d.input.edge_count()),
    }
}

impl fmt::Display for RuleDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs = |map: &[Option<usize>]| {
            map.iter()
                .enumerate()
                .filter_map(|(x, y)| y.map(|y| format!("{x}>{y}")))
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "[I={} O={} r=({}|{}) m=({}|{})]",
            self.input,
            self.output,
            pairs(&self.r_v),
            pairs(&self.r_e),
            pairs(&self.m_v),
            pairs(&self.m_e)
        )
    }
}
