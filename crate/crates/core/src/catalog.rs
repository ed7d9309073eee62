//! Named generators of the classical subalgebras and their closed-form products.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::algebra::{compose_d, superpose, superpose_power, Coeff, Element};
use crate::diagram::{compose_along, LinearRule, Match, RuleDiagram};
use crate::error::{Error, Result};
use crate::graph::{factorial, is_connected, Multigraph};
use crate::hopf::TensorElement;
use crate::key::DiagramKey;
use crate::reduction::{compose_r, nontrivial_compose_r, RewritingType};

fn int(n: impl Into<BigInt>) -> Coeff {
    Coeff::from_integer(n.into())
}

fn choose(n: usize, k: usize) -> BigInt {
    binomial(BigInt::from(n), BigInt::from(k))
}

fn fact(n: usize) -> BigInt {
    BigInt::from(factorial(n as u64))
}

pub fn rule_element(rule: LinearRule) -> Element {
    Element::basis(&RuleDiagram::from_rule(rule).expect("catalog rules are well-formed"))
}

fn dot() -> Multigraph {
    Multigraph::discrete(1)
}

/// One vertex carrying `n` self-loops.
fn looped(n: usize) -> Multigraph {
    Multigraph::new(1, vec![(0, 0); n]).expect("loops on vertex 0")
}

fn arrow() -> Multigraph {
    Multigraph::new(2, vec![(0, 1)]).expect("single edge")
}

// ---- vertex algebra --------------------------------------------------------

/// Vertex deletion.
pub fn a() -> Element {
    rule_element(LinearRule::deletion(&dot()))
}

/// Vertex creation.
pub fn adag() -> Element {
    rule_element(LinearRule::creation(&dot()))
}

/// Vertex preservation.
pub fn vertex_identity() -> Element {
    rule_element(LinearRule::identity(&dot()))
}

/// `a†^{*m} * I^{*n} * a^{*p}` in the rule algebra of type `t`.
pub fn vertex_normal_form(m: usize, n: usize, p: usize, t: RewritingType) -> Element {
    let mut acc = Element::unit();
    for (g, k) in [(adag(), m), (vertex_identity(), n), (a(), p)] {
        for _ in 0..k {
            acc = compose_r(&acc, &g, t).expect("vertex generators are irreducible");
        }
    }
    acc
}

/// Coefficients `c_j` with `I^{⊎n} = Σ_j c_j I^{*j}`: the falling factorial `I(I-1)…(I-n+1)`.
pub fn falling_factorial_expand(n: usize) -> Vec<BigInt> {
    // s(k+1, j) = s(k, j-1) - k s(k, j)
    let mut s = vec![BigInt::one()];
    for k in 0..n {
        let mut next = vec![BigInt::zero(); s.len() + 1];
        for (j, c) in s.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * BigInt::from(k);
        }
        s = next;
    }
    s
}

// ---- loop algebra and coupling ---------------------------------------------

/// A preserved vertex with `m` created, `p` preserved and `n` deleted self-loops.
pub fn lambda(m: usize, p: usize, n: usize) -> Element {
    let input = looped(p + n);
    let output = looped(m + p);
    let r_e = (0..p + n).map(|e| (e < p).then_some(e)).collect();
    rule_element(LinearRule {
        input,
        output,
        r_v: vec![Some(0)],
        r_e,
    })
}

pub fn ldag() -> Element {
    lambda(1, 0, 0)
}

pub fn loop_identity() -> Element {
    lambda(0, 1, 0)
}

pub fn l() -> Element {
    lambda(0, 0, 1)
}

/// Deletion of a vertex together with its loop.
pub fn a_l() -> Element {
    rule_element(LinearRule::deletion(&looped(1)))
}

/// Creation of a vertex carrying a loop.
pub fn adag_ldag() -> Element {
    rule_element(LinearRule::creation(&looped(1)))
}

// ---- edge algebra ----------------------------------------------------------

fn edge_rule(keep_in: bool, keep_out: bool) -> Element {
    let input = if keep_in { arrow() } else { Multigraph::discrete(2) };
    let output = if keep_out { arrow() } else { Multigraph::discrete(2) };
    let r_e = if keep_in { vec![keep_out.then_some(0)] } else { Vec::new() };
    rule_element(LinearRule {
        input,
        output,
        r_v: vec![Some(0), Some(1)],
        r_e,
    })
}

/// Deletes the edge between two preserved vertices.
pub fn edge_delete() -> Element {
    edge_rule(true, false)
}

pub fn edge_identity() -> Element {
    edge_rule(true, true)
}

pub fn edge_create() -> Element {
    edge_rule(false, true)
}

// ---- Heisenberg-Weyl diagrams ----------------------------------------------

pub fn d_a() -> Element {
    a()
}

pub fn d_adag() -> Element {
    adag()
}

/// A vertex created and then deleted: `d_a` over `d_{a†}` along the vertex match.
pub fn d_e() -> Element {
    let del = RuleDiagram::from_rule(LinearRule::deletion(&dot())).unwrap();
    let cre = RuleDiagram::from_rule(LinearRule::creation(&dot())).unwrap();
    let m = Match {
        vertex: vec![(0, 0)],
        edge: Vec::new(),
    };
    Element::basis(&compose_along(&del, &m, &cre).expect("vertex match is admissible"))
}

/// `d(r, s, t) = d_{a†}^{⊎r} ⊎ d_a^{⊎s} ⊎ d_e^{⊎t}`.
pub fn hw_element(r: usize, s: usize, t: usize) -> Element {
    superpose(
        &superpose(&superpose_power(&d_adag(), r), &superpose_power(&d_a(), s)),
        &superpose_power(&d_e(), t),
    )
}

/// `Σ_n n! C(s1,n) C(r2,n) d(r1+r2-n, s1+s2-n, t1+t2+n)`.
pub fn hw_compose_closed_form(r1: usize, s1: usize, t1: usize, r2: usize, s2: usize, t2: usize) -> Element {
    let mut out = Element::zero();
    for n in 0..=s1.min(r2) {
        let c = fact(n) * choose(s1, n) * choose(r2, n);
        out = out.plus(&hw_element(r1 + r2 - n, s1 + s2 - n, t1 + t2 + n).scale(&int(c)));
    }
    out
}

/// `r(m, n) = a†^{⊎m} ⊎ a^{⊎n}` in a rule algebra.
pub fn hw_rule(m: usize, n: usize) -> Element {
    hw_element(m, n, 0)
}

/// `Σ_p p! C(n1,p) C(m2,p) r(m1+m2-p, n1+n2-p)`.
pub fn hw_rule_closed_form(m1: usize, n1: usize, m2: usize, n2: usize) -> Element {
    let mut out = Element::zero();
    for p in 0..=n1.min(m2) {
        let c = fact(p) * choose(n1, p) * choose(m2, p);
        out = out.plus(&hw_rule(m1 + m2 - p, n1 + n2 - p).scale(&int(c)));
    }
    out
}

/// `Σ C(r,m) C(s,n) C(t,l) d(m,n,l) ⊗ d(r-m, s-n, t-l)`.
pub fn hw_coproduct_closed_form(r: usize, s: usize, t: usize) -> TensorElement {
    let mut out = TensorElement::zero(2);
    for m in 0..=r {
        for n in 0..=s {
            for l in 0..=t {
                let c = choose(r, m) * choose(s, n) * choose(t, l);
                let left = hw_element(m, n, l);
                let right = hw_element(r - m, s - n, t - l);
                out = out.add(&TensorElement::tensor(&[&left, &right]).scale(&int(c)));
            }
        }
    }
    out
}

/// `(-1)^{r+s+t} Σ_k k! C(r,k) C(s,k) d(r-k, s-k, t+k)`.
pub fn hw_antipode_closed_form(r: usize, s: usize, t: usize) -> Element {
    hw_antipode_series(r, s, t, 1)
}

/// The same series with the `d_e` count held at `t`, as it is sometimes printed.
pub fn hw_antipode_fixed_t(r: usize, s: usize, t: usize) -> Element {
    hw_antipode_series(r, s, t, 0)
}

fn hw_antipode_series(r: usize, s: usize, t: usize, shift: usize) -> Element {
    let sign = if (r + s + t).is_multiple_of(2) { int(1) } else { int(-1) };
    let mut out = Element::zero();
    for k in 0..=r.min(s) {
        let c = fact(k) * choose(r, k) * choose(s, k);
        out = out.plus(&hw_element(r - k, s - k, t + shift * k).scale(&int(c)));
    }
    out.scale(&sign)
}

// ---- structural subalgebras ------------------------------------------------

/// `Ĝ`: deletes `G`.
pub fn structural_delete(g: &Multigraph) -> Element {
    rule_element(LinearRule::deletion(g))
}

/// `Ĝ†`: creates `G`.
pub fn structural_create(g: &Multigraph) -> Element {
    rule_element(LinearRule::creation(g))
}

/// `Õ = [O, O, id]`.
pub fn observable_identity(o: &Multigraph) -> Element {
    rule_element(LinearRule::identity(o))
}

/// `Ŏ = [O, O, ∅]`.
pub fn observable_replace(o: &Multigraph) -> Element {
    let (nv, ne) = (o.vertex_count(), o.edge_count());
    rule_element(LinearRule {
        input: o.clone(),
        output: o.clone(),
        r_v: vec![None; nv],
        r_e: vec![None; ne],
    })
}

/// `Ĝ ⊛_T Ĥ†` for connected `G`, `H`.
pub fn structural_compose(g: &Multigraph, h: &Multigraph, t: RewritingType) -> Result<Element> {
    if !is_connected(g) || !is_connected(h) {
        return Err(Error::NotConnected);
    }
    nontrivial_compose_r(&structural_delete(g), &structural_create(h), t)
}

/// Connected graphs with at most five vertices used by the structural checks.
pub fn structural_graphs() -> Vec<(&'static str, Multigraph)> {
    let g = |n: usize, e: &[(usize, usize)]| Multigraph::new(n, e.to_vec()).expect("catalog graph");
    vec![
        ("vertex", g(1, &[])),
        ("loop", g(1, &[(0, 0)])),
        ("double-loop", g(1, &[(0, 0), (0, 0)])),
        ("edge", g(2, &[(0, 1)])),
        ("parallel-pair", g(2, &[(0, 1), (0, 1)])),
        ("two-cycle", g(2, &[(0, 1), (1, 0)])),
        ("path-3", g(3, &[(0, 1), (1, 2)])),
        ("out-star-3", g(3, &[(0, 1), (0, 2)])),
        ("in-star-3", g(3, &[(1, 0), (2, 0)])),
        ("cycle-3", g(3, &[(0, 1), (1, 2), (2, 0)])),
        ("transitive-3", g(3, &[(0, 1), (1, 2), (0, 2)])),
        ("out-star-4", g(4, &[(0, 1), (0, 2), (0, 3)])),
        ("cycle-4", g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])),
        ("alternating-4", g(4, &[(0, 1), (2, 1), (2, 3), (0, 3)])),
        ("path-5", g(5, &[(0, 1), (1, 2), (2, 3), (3, 4)])),
        ("cycle-5", g(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])),
        ("out-star-5", g(5, &[(0, 1), (0, 2), (0, 3), (0, 4)])),
        ("bidirected-triangle", g(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2)])),
    ]
}

// ---- names -----------------------------------------------------------------

/// Built-in generators under their command-line names.
pub fn builtins() -> Vec<(&'static str, Element)> {
    vec![
        ("a", a()),
        ("adag", adag()),
        ("I", vertex_identity()),
        ("l", l()),
        ("ldag", ldag()),
        ("L", loop_identity()),
        ("e", edge_delete()),
        ("edag", edge_create()),
        ("E", edge_identity()),
        ("d_e", d_e()),
        ("al", a_l()),
        ("adagldag", adag_ldag()),
    ]
}

/// Display names of the primitive generators, keyed by class.
pub fn display_names() -> BTreeMap<DiagramKey, String> {
    let mut out = BTreeMap::new();
    let named = [
        ("a", a()),
        ("a†", adag()),
        ("I", vertex_identity()),
        ("ℓ", l()),
        ("ℓ†", ldag()),
        ("L", loop_identity()),
        ("e>", edge_delete()),
        ("e>†", edge_create()),
        ("E>", edge_identity()),
        ("d_e", d_e()),
        ("(aℓ)", a_l()),
        ("(a†ℓ†)", adag_ldag()),
    ];
    for (name, el) in named {
        for k in el.keys() {
            out.insert(k.clone(), name.to_string());
        }
    }
    for m in 0..=3 {
        for p in 0..=3 {
            for n in 0..=3 {
                for k in lambda(m, p, n).keys() {
                    out.entry(k.clone()).or_insert_with(|| format!("λ({m},{p},{n})"));
                }
            }
        }
    }
    out
}

/// Name a class as a superposition of named primitives, with a structural
/// fallback for anything not in the table.
pub fn describe(key: &DiagramKey, rep: &RuleDiagram, names: &BTreeMap<DiagramKey, String>) -> String {
    if key.is_empty() {
        return "r_∅".to_string();
    }
    let comps = crate::key::canonical_parts(rep);
    let mut counts: Vec<(String, usize)> = Vec::new();
    for (k, d) in &comps {
        let name = names.get(k).cloned().unwrap_or_else(|| d.to_string());
        match counts.last_mut() {
            Some(last) if last.0 == name => last.1 += 1,
            _ => counts.push((name, 1)),
        }
    }
    counts
        .into_iter()
        .map(|(n, c)| if c == 1 { n } else { format!("{n}^⊎{c}") })
        .collect::<Vec<_>>()
        .join("⊎")
}

/// Convenience: `x *_D y` with the arguments in the usual row-column order.
pub fn diagram_product(x: &Element, y: &Element) -> Element {
    compose_d(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stirling_rows() {
        let to_i = |v: Vec<BigInt>| v.into_iter().map(|b| i64::try_from(b).unwrap()).collect::<Vec<_>>();
        assert_eq!(to_i(falling_factorial_expand(0)), vec![1]);
        assert_eq!(to_i(falling_factorial_expand(2)), vec![0, -1, 1]);
        assert_eq!(to_i(falling_factorial_expand(3)), vec![0, 2, -3, 1]);
    }

    #[test]
    fn generators_are_valid() {
        for (name, el) in builtins() {
            for (_, _, d) in el.terms() {
                assert!(d.is_valid(), "{name}");
            }
        }
        let (k, _, d) = d_e().terms().map(|(k, c, d)| (k.clone(), c.clone(), d.clone())).next().unwrap();
        assert!(d.classify().primitive && !d.classify().irreducible);
        assert_eq!(k.degree(), 1);
    }

    #[test]
    fn hw_closed_form_small() {
        let cf = hw_compose_closed_form(0, 1, 0, 1, 0, 0);
        assert_eq!(cf, &hw_element(1, 1, 0) + &hw_element(0, 0, 1));
        assert_eq!(hw_element(0, 0, 0), Element::unit());
    }
}
