//! Building graphs, rules and diagrams from a document and evaluating expressions.

use std::collections::{BTreeMap, HashSet};

use rulealg::algebra::{commutator, dagger, nontrivial_compose, parse_coeff, superpose};
use rulealg::catalog;
use rulealg::diagram::superpose as superpose_d;
use rulealg::hopf::{antipode, coproduct, TensorElement};
use rulealg::key::canonicalize;
use rulealg::reduction::{commutator_r, nontrivial_compose_r};
use rulealg::{
    compose_along, compose_d, compose_r, reduce, DiagramKey, Element, Error, LinearRule, Match, Multigraph, RewritingType, RuleDiagram,
};

use crate::dsl::{code, Diagnostic, DiagramExpr, Document, Expr, GraphItem, GraphRef, Ident, Item, Pair, Pos};

#[derive(Clone, Debug)]
pub struct NamedGraph {
    pub graph: Multigraph,
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
}

impl NamedGraph {
    fn lookup(&self, name: &str) -> Option<Part> {
        if let Some(i) = self.vertices.iter().position(|v| v == name) {
            return Some(Part::Vertex(i));
        }
        self.edges.iter().position(|e| e == name).map(Part::Edge)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    Vertex(usize),
    Edge(usize),
}

#[derive(Clone, Debug)]
pub struct NamedDiagram {
    pub diagram: RuleDiagram,
    pub input: NamedGraph,
    pub output: NamedGraph,
}

#[derive(Clone, Debug)]
pub enum Value {
    Element(Element),
    Tensor(TensorElement),
}

#[derive(Default)]
pub struct Env {
    pub graphs: BTreeMap<String, NamedGraph>,
    pub diagrams: BTreeMap<String, NamedDiagram>,
    pub values: BTreeMap<String, Element>,
    defined: HashSet<String>,
    /// Results of `print` items, in order.
    pub printed: Vec<(String, Value)>,
}

fn err(code: &'static str, pos: Pos, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::new(code, pos, msg)
}

pub fn rewriting_type(ty: &Ident) -> Result<RewritingType, Diagnostic> {
    ty.text.parse().map_err(|e: String| err(code::SYNTAX, ty.pos, e))
}

fn library_error(e: Error, pos: Pos) -> Diagnostic {
    match e {
        Error::NotIrreducible => err(code::NOT_IRREDUCIBLE, pos, "rule-algebra products need irreducible operands"),
        Error::InvalidMatch(m) => err(code::INVALID_MATCH, pos, m),
        Error::NotConnected => err(code::TYPE, pos, "graphs must be connected"),
        other => err(code::NOT_A_MORPHISM, pos, other.to_string()),
    }
}

impl Env {
    pub fn with_builtins() -> Env {
        let mut env = Env::default();
        for (name, el) in catalog::builtins() {
            env.values.insert(name.to_string(), el);
        }
        env
    }

    /// Display names for single-component classes: built-in names, then user definitions.
    pub fn names(&self) -> BTreeMap<DiagramKey, String> {
        let mut names = catalog::display_names();
        for (n, d) in &self.diagrams {
            let (k, _) = canonicalize(&d.diagram);
            if k.degree() == 1 {
                names.entry(k).or_insert_with(|| n.clone());
            }
        }
        names
    }

    fn define(&mut self, name: &Ident) -> Result<(), Diagnostic> {
        if !self.defined.insert(name.text.clone()) {
            return Err(err(code::DUPLICATE, name.pos, format!("`{}` is already defined", name.text)));
        }
        Ok(())
    }

    pub fn load(&mut self, doc: &Document) -> Result<(), Diagnostic> {
        for item in &doc.items {
            match item {
                Item::Graph { name, body } => {
                    self.define(name)?;
                    let g = build_graph(body)?;
                    self.graphs.insert(name.text.clone(), g);
                }
                Item::Rule { name, input, output, map } => {
                    self.define(name)?;
                    let i = self.graph_ref(input)?;
                    let o = self.graph_ref(output)?;
                    let d = build_rule(name, i, o, map)?;
                    self.diagrams.insert(name.text.clone(), d);
                }
                Item::Diagram { name, expr } => {
                    self.define(name)?;
                    let d = self.diagram_expr(expr)?;
                    self.diagrams.insert(name.text.clone(), d);
                }
                Item::Let { name, expr } => {
                    self.define(name)?;
                    let v = self.element(expr)?;
                    self.values.insert(name.text.clone(), v);
                }
                Item::Print(e) => {
                    let v = self.eval(e)?;
                    self.printed.push((crate::dsl::print_expr(e), v));
                }
            }
        }
        Ok(())
    }

    fn graph_ref(&self, g: &GraphRef) -> Result<NamedGraph, Diagnostic> {
        match g {
            GraphRef::Inline(items) => build_graph(items),
            GraphRef::Named(n) => self
                .graphs
                .get(&n.text)
                .cloned()
                .ok_or_else(|| err(code::UNKNOWN_NAME, n.pos, format!("unknown graph `{}`", n.text))),
        }
    }

    fn diagram_expr(&self, e: &DiagramExpr) -> Result<NamedDiagram, Diagnostic> {
        match e {
            DiagramExpr::Name(n) => self
                .diagrams
                .get(&n.text)
                .cloned()
                .ok_or_else(|| err(code::UNKNOWN_NAME, n.pos, format!("unknown rule or diagram `{}`", n.text))),
            DiagramExpr::Paren(inner) => self.diagram_expr(inner),
            DiagramExpr::Superpose { left, right, .. } => {
                let (l, r) = (self.diagram_expr(left)?, self.diagram_expr(right)?);
                let (ln, rn) = side_names(left, right);
                Ok(NamedDiagram {
                    diagram: superpose_d(&l.diagram, &r.diagram),
                    input: merge_names(&l.input, &r.input, &ln, &rn),
                    output: merge_names(&l.output, &r.output, &ln, &rn),
                })
            }
            DiagramExpr::After { left, right, along, pos } => {
                let (a, b) = (self.diagram_expr(left)?, self.diagram_expr(right)?);
                let m = build_match(&a, &b, along)?;
                let d = compose_along(&a.diagram, &m, &b.diagram).map_err(|e| library_error(e, *pos))?;
                let (ln, rn) = side_names(left, right);
                Ok(NamedDiagram {
                    diagram: d,
                    input: merge_names(&a.input, &b.input, &ln, &rn),
                    output: merge_names(&a.output, &b.output, &ln, &rn),
                })
            }
        }
    }

    pub fn eval(&self, e: &Expr) -> Result<Value, Diagnostic> {
        if let Expr::Call { func, args, .. } = e {
            if matches!(func.text.as_str(), "Δ" | "Delta") {
                let [x] = args.as_slice() else {
                    return Err(err(code::SYNTAX, func.pos, "Δ takes one argument"));
                };
                return Ok(Value::Tensor(coproduct(&self.element(x)?)));
            }
        }
        if let Expr::Paren(inner) = e {
            return self.eval(inner);
        }
        self.element(e).map(Value::Element)
    }

    pub fn element(&self, e: &Expr) -> Result<Element, Diagnostic> {
        match e {
            Expr::Number { text, pos } => parse_coeff(text)
                .map(|c| Element::unit().scale(&c))
                .ok_or_else(|| err(code::SYNTAX, *pos, format!("bad number `{text}`"))),
            Expr::Name(n) => self.lookup(n),
            Expr::Paren(inner) => self.element(inner),
            Expr::Neg(inner, _) => Ok(-self.element(inner)?),
            Expr::Dagger { inner, .. } => Ok(dagger(&self.element(inner)?)),
            Expr::Commutator { left, right, ty, pos } => {
                let (x, y) = (self.element(left)?, self.element(right)?);
                match ty {
                    None => Ok(commutator(&x, &y)),
                    Some(t) => commutator_r(&x, &y, rewriting_type(t)?).map_err(|e| library_error(e, *pos)),
                }
            }
            Expr::Binary { op, ty, left, right, pos } => {
                let (x, y) = (self.element(left)?, self.element(right)?);
                let t = ty.as_ref().map(rewriting_type).transpose()?;
                match (op.as_str(), t) {
                    ("+", _) => Ok(&x + &y),
                    ("-", _) => Ok(&x - &y),
                    ("⊎" | "&", _) => Ok(superpose(&x, &y)),
                    ("*", None) => Ok(compose_d(&x, &y)),
                    ("*", Some(t)) => compose_r(&x, &y, t).map_err(|e| library_error(e, *pos)),
                    ("⊛" | "**", None) => Ok(nontrivial_compose(&x, &y)),
                    ("⊛" | "**", Some(t)) => nontrivial_compose_r(&x, &y, t).map_err(|e| library_error(e, *pos)),
                    _ => Err(err(code::SYNTAX, *pos, format!("unknown operator `{op}`"))),
                }
            }
            Expr::Call { func, ty, args } => self.call(func, ty.as_ref(), args),
        }
    }

    fn lookup(&self, n: &Ident) -> Result<Element, Diagnostic> {
        if let Some(v) = self.values.get(&n.text) {
            return Ok(v.clone());
        }
        if let Some(d) = self.diagrams.get(&n.text) {
            return Ok(Element::basis(&d.diagram));
        }
        match n.text.as_str() {
            "r_∅" | "d_∅" | "r_0" | "d_0" => Ok(Element::unit()),
            _ => Err(err(code::UNKNOWN_NAME, n.pos, format!("unknown name `{}`", n.text))),
        }
    }

    fn call(&self, func: &Ident, ty: Option<&Ident>, args: &[Expr]) -> Result<Element, Diagnostic> {
        let ints = |n: usize| -> Result<Vec<usize>, Diagnostic> {
            if args.len() != n {
                return Err(err(code::SYNTAX, func.pos, format!("`{}` takes {n} arguments", func.text)));
            }
            args.iter()
                .map(|a| match a {
                    Expr::Number { text, .. } => text
                        .parse::<usize>()
                        .map_err(|_| err(code::SYNTAX, a.pos(), "expected a small integer")),
                    _ => Err(err(code::SYNTAX, a.pos(), "expected a small integer")),
                })
                .collect()
        };
        let one = || -> Result<Element, Diagnostic> {
            match args {
                [x] => self.element(x),
                _ => Err(err(code::SYNTAX, func.pos, format!("`{}` takes one argument", func.text))),
            }
        };
        match func.text.as_str() {
            "S" => Ok(antipode(&one()?)),
            "reduce" => {
                let t = ty.ok_or_else(|| err(code::SYNTAX, func.pos, "reduce needs a type, as in reduce[dpo](x)"))?;
                Ok(reduce(&one()?, rewriting_type(t)?))
            }
            "lambda" | "λ" => {
                let v = ints(3)?;
                Ok(catalog::lambda(v[0], v[1], v[2]))
            }
            "d" => {
                let v = ints(3)?;
                Ok(catalog::hw_element(v[0], v[1], v[2]))
            }
            "hw" => {
                let v = ints(2)?;
                Ok(catalog::hw_rule(v[0], v[1]))
            }
            "Δ" | "Delta" => Err(err(
                code::TYPE,
                func.pos,
                "Δ produces a tensor and cannot be used inside an expression",
            )),
            _ => Err(err(code::UNKNOWN_NAME, func.pos, format!("unknown function `{}`", func.text))),
        }
    }
}

fn side_names(left: &DiagramExpr, right: &DiagramExpr) -> (String, String) {
    match (left, right) {
        (DiagramExpr::Name(a), DiagramExpr::Name(b)) if a.text != b.text => (a.text.clone(), b.text.clone()),
        _ => ("1".to_string(), "2".to_string()),
    }
}

/// Names of `g1 ⊎ g2`; a name used on both sides is qualified as `side.name`.
fn merge_names(g1: &NamedGraph, g2: &NamedGraph, n1: &str, n2: &str) -> NamedGraph {
    let all1: HashSet<&String> = g1.vertices.iter().chain(&g1.edges).collect();
    let all2: HashSet<&String> = g2.vertices.iter().chain(&g2.edges).collect();
    let q = |x: &String, side: &str, other: &HashSet<&String>| if other.contains(x) { format!("{side}.{x}") } else { x.clone() };
    let mut vertices: Vec<String> = g1.vertices.iter().map(|x| q(x, n1, &all2)).collect();
    vertices.extend(g2.vertices.iter().map(|x| q(x, n2, &all1)));
    let mut edges: Vec<String> = g1.edges.iter().map(|x| q(x, n1, &all2)).collect();
    edges.extend(g2.edges.iter().map(|x| q(x, n2, &all1)));
    NamedGraph {
        graph: rulealg::graph::disjoint_union(&g1.graph, &g2.graph),
        vertices,
        edges,
    }
}

fn build_graph(items: &[GraphItem]) -> Result<NamedGraph, Diagnostic> {
    let mut vertices: Vec<String> = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    for item in items {
        if let GraphItem::Vertex(v) = item {
            if !seen.insert(v.text.clone()) {
                return Err(err(code::DUPLICATE, v.pos, format!("`{}` is declared twice", v.text)));
            }
            vertices.push(v.text.clone());
        }
    }
    let mut edges = Vec::new();
    let mut names = Vec::new();
    for item in items {
        if let GraphItem::Edge { name, src, tgt } = item {
            if !seen.insert(name.text.clone()) {
                return Err(err(code::DUPLICATE, name.pos, format!("`{}` is declared twice", name.text)));
            }
            let end = |v: &Ident| {
                vertices.iter().position(|x| *x == v.text).ok_or_else(|| {
                    err(
                        code::MALFORMED_EDGE,
                        v.pos,
                        format!("edge `{}` refers to unknown vertex `{}`", name.text, v.text),
                    )
                })
            };
            edges.push((end(src)?, end(tgt)?));
            names.push(name.text.clone());
        }
    }
    let graph = Multigraph::new(vertices.len(), edges).expect("endpoints resolved");
    Ok(NamedGraph {
        graph,
        vertices,
        edges: names,
    })
}

type IndexPairs = Vec<(usize, usize)>;

/// Resolve `from->to` pairs into vertex and edge maps, rejecting unknown names,
/// kind mismatches and non-injective correspondences.
fn resolve_pairs(pairs: &[Pair], from: &NamedGraph, to: &NamedGraph, what: &str) -> Result<(IndexPairs, IndexPairs), Diagnostic> {
    let (mut vs, mut es) = (Vec::new(), Vec::new());
    for p in pairs {
        let a = from
            .lookup(&p.from.text)
            .ok_or_else(|| err(code::UNKNOWN_NAME, p.from.pos, format!("unknown {what} source `{}`", p.from.text)))?;
        let b = to
            .lookup(&p.to.text)
            .ok_or_else(|| err(code::UNKNOWN_NAME, p.to.pos, format!("unknown {what} target `{}`", p.to.text)))?;
        match (a, b) {
            (Part::Vertex(x), Part::Vertex(y)) => vs.push((x, y, p)),
            (Part::Edge(x), Part::Edge(y)) => es.push((x, y, p)),
            _ => {
                return Err(err(
                    code::MALFORMED_EDGE,
                    p.from.pos,
                    format!("`{}` and `{}` are not both vertices or both edges", p.from.text, p.to.text),
                ))
            }
        }
    }
    for list in [&vs, &es] {
        for (i, (x, y, p)) in list.iter().enumerate() {
            if let Some((_, _, q)) = list[..i].iter().find(|(x2, y2, _)| x2 == x || y2 == y) {
                let dup = if q.from.text == p.from.text { &p.from } else { &p.to };
                return Err(err(
                    code::NON_INJECTIVE,
                    dup.pos,
                    format!("{what} is not injective: `{}` is used twice", dup.text),
                ));
            }
        }
    }
    let strip = |l: Vec<(usize, usize, &Pair)>| l.into_iter().map(|(x, y, _)| (x, y)).collect();
    Ok((strip(vs), strip(es)))
}

fn build_rule(name: &Ident, input: NamedGraph, output: NamedGraph, map: &[Pair]) -> Result<NamedDiagram, Diagnostic> {
    let (vs, es) = resolve_pairs(map, &input, &output, "correspondence")?;
    let mut r_v = vec![None; input.graph.vertex_count()];
    for (x, y) in vs {
        r_v[x] = Some(y);
    }
    let mut r_e = vec![None; input.graph.edge_count()];
    for (x, y) in es {
        r_e[x] = Some(y);
    }
    let rule = LinearRule::new(input.graph.clone(), output.graph.clone(), r_v, r_e).map_err(|e| {
        err(
            code::NOT_A_MORPHISM,
            name.pos,
            format!("rule `{}` is not a graph morphism: {e}", name.text),
        )
    })?;
    let diagram = RuleDiagram::from_rule(rule).map_err(|e| library_error(e, name.pos))?;
    Ok(NamedDiagram { diagram, input, output })
}

fn build_match(a: &NamedDiagram, b: &NamedDiagram, along: &[Pair]) -> Result<Match, Diagnostic> {
    let (vertex, edge) = resolve_pairs(along, &b.output, &a.input, "match")?;
    Ok(Match { vertex, edge })
}

pub fn load(src: &str) -> Result<Env, Diagnostic> {
    let doc = crate::dsl::parse(src)?;
    let mut env = Env::with_builtins();
    env.load(&doc)?;
    Ok(env)
}
