//! Random diagram sampling and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rulealg::algebra::superpose;
use rulealg::diagram::superpose as superpose_d;
use rulealg::hopf::{coproduct, counit, k_fold_coproduct, TensorElement};
use rulealg::key::canonical_diagram;
use rulealg::{compose_along, compose_d, enumerate_matches, Coeff, DiagramKey, Element, LinearRule, Multigraph, RuleDiagram};

/// Sample count for randomized suites, from `RULEALG_SAMPLES` (default `default`).
pub fn samples(default: usize) -> usize {
    std::env::var("RULEALG_SAMPLES")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(default)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random linear rule with at most two vertices on each side.
pub fn random_rule(rng: &mut impl Rng) -> LinearRule {
    let ni = rng.gen_range(0..=2);
    let no = rng.gen_range(0..=2);
    let mut targets: Vec<usize> = (0..no).collect();
    targets.shuffle(rng);
    let r_v: Vec<Option<usize>> = (0..ni).map(|_| if rng.gen_bool(0.6) { targets.pop() } else { None }).collect();
    let mut input_edges = Vec::new();
    if ni > 0 {
        for _ in 0..rng.gen_range(0..=2) {
            input_edges.push((rng.gen_range(0..ni), rng.gen_range(0..ni)));
        }
    }
    let mut output_edges = Vec::new();
    let mut r_e = Vec::new();
    for &(s, t) in &input_edges {
        match (r_v[s], r_v[t]) {
            (Some(a), Some(b)) if rng.gen_bool(0.6) => {
                r_e.push(Some(output_edges.len()));
                output_edges.push((a, b));
            }
            _ => r_e.push(None),
        }
    }
    if no > 0 && rng.gen_bool(0.4) {
        output_edges.push((rng.gen_range(0..no), rng.gen_range(0..no)));
    }
    let input = Multigraph::new(ni, input_edges).unwrap();
    let output = Multigraph::new(no, output_edges).unwrap();
    LinearRule::new(input, output, r_v, r_e).expect("sampled rule is a morphism")
}

/// A non-empty random rule.
pub fn random_nonempty_rule(rng: &mut impl Rng) -> RuleDiagram {
    loop {
        let d = RuleDiagram::from_rule(random_rule(rng)).unwrap();
        if !d.is_empty() {
            return d;
        }
    }
}

/// Stack up to `max_rules` random rules, each either superposed or composed
/// along a random match; the result has at most three constituents.
pub fn random_diagram(rng: &mut impl Rng, max_rules: usize) -> RuleDiagram {
    loop {
        let k = rng.gen_range(1..=max_rules);
        let mut d = random_nonempty_rule(rng);
        for _ in 1..k {
            let next = random_nonempty_rule(rng);
            if rng.gen_bool(0.3) {
                d = superpose_d(&next, &d);
            } else {
                let ms = enumerate_matches(&next, &d);
                let m = ms.choose(rng).expect("the empty match always exists");
                d = compose_along(&next, m, &d).expect("enumerated matches are admissible");
            }
        }
        if d.constituents().is_some_and(|c| c.len() <= 3) {
            return d;
        }
    }
}

/// A random irreducible diagram (a superposition of at most two rules).
pub fn random_rule_diagram(rng: &mut impl Rng) -> RuleDiagram {
    let d = random_nonempty_rule(rng);
    if rng.gen_bool(0.2) {
        superpose_d(&d, &random_nonempty_rule(rng))
    } else {
        d
    }
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// The same diagram under random renumbering of all four carriers.
pub fn random_relabel(rng: &mut impl Rng, d: &RuleDiagram) -> RuleDiagram {
    let iv = random_permutation(rng, d.input().vertex_count());
    let ie = random_permutation(rng, d.input().edge_count());
    let ov = random_permutation(rng, d.output().vertex_count());
    let oe = random_permutation(rng, d.output().edge_count());
    d.relabeled(&iv, &ie, &ov, &oe)
}

// ---- oracles ---------------------------------------------------------------

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// `|Aut(G)|` by trying every vertex and every edge permutation.
pub fn brute_automorphisms(g: &Multigraph) -> BigUint {
    let vps = permutations(g.vertex_count());
    let eps = permutations(g.edge_count());
    let mut n = 0u64;
    for vp in &vps {
        for ep in &eps {
            if g.edges().iter().enumerate().all(|(e, &(s, t))| g.edges()[ep[e]] == (vp[s], vp[t])) {
                n += 1;
            }
        }
    }
    BigUint::from(n)
}

/// All injective partial maps from `0..n` into `0..m`.
pub fn partial_injections(n: usize, m: usize) -> Vec<Vec<Option<usize>>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for f in &out {
            let mut g = f.clone();
            g.push(None);
            next.push(g);
            for y in 0..m {
                if !f.contains(&Some(y)) {
                    let mut g = f.clone();
                    g.push(Some(y));
                    next.push(g);
                }
            }
        }
        out = next;
    }
    out
}

/// Every composite of `da` after `db`: try each injective pairing of the
/// outputs of `db` with the inputs of `da` and keep the valid diagrams.
pub fn brute_composites(da: &RuleDiagram, db: &RuleDiagram) -> BTreeMap<DiagramKey, usize> {
    let (aiv, aie) = (da.input().vertex_count(), da.input().edge_count());
    let (aov, aoe) = (da.output().vertex_count(), da.output().edge_count());
    let input = rulealg::graph::disjoint_union(da.input(), db.input());
    let output = rulealg::graph::disjoint_union(da.output(), db.output());
    let shift = |m: &[Option<usize>], by: usize| m.iter().map(|x| x.map(|y| y + by)).collect::<Vec<_>>();
    let mut r_v = da.r_vertices().to_vec();
    r_v.extend(shift(db.r_vertices(), aov));
    let mut r_e = da.r_edges().to_vec();
    r_e.extend(shift(db.r_edges(), aoe));
    let mut out = BTreeMap::new();
    for mv in partial_injections(db.output().vertex_count(), aiv) {
        for me in partial_injections(db.output().edge_count(), aie) {
            let mut m_v = da.m_vertices().to_vec();
            m_v.extend(db.m_vertices().iter().zip(&mv).map(|(own, new)| match (own, new) {
                (Some(i), None) => Some(i + aiv),
                (None, n) => *n,
                (Some(_), Some(_)) => Some(usize::MAX),
            }));
            let mut m_e = da.m_edges().to_vec();
            m_e.extend(db.m_edges().iter().zip(&me).map(|(own, new)| match (own, new) {
                (Some(i), None) => Some(i + aie),
                (None, n) => *n,
                (Some(_), Some(_)) => Some(usize::MAX),
            }));
            if m_v.contains(&Some(usize::MAX)) || m_e.contains(&Some(usize::MAX)) {
                continue;
            }
            let d = RuleDiagram::new(input.clone(), output.clone(), r_v.clone(), r_e.clone(), m_v, m_e).unwrap();
            if d.is_valid() {
                *out.entry(canonical_diagram(&d)).or_insert(0) += 1;
            }
        }
    }
    out
}

/// Composite classes counted over the matches the library enumerates.
pub fn library_composites(da: &RuleDiagram, db: &RuleDiagram) -> BTreeMap<DiagramKey, usize> {
    let mut out = BTreeMap::new();
    for m in enumerate_matches(da, db) {
        let d = compose_along(da, &m, db).unwrap();
        *out.entry(canonical_diagram(&d)).or_insert(0) += 1;
    }
    out
}

pub fn factor(t: &TensorElement, k: &DiagramKey) -> Element {
    Element::basis(t.representative(k).expect("tensor keys carry representatives"))
}

/// `Σ (-1)^k μ_k(Δ̃_k(x))`: the convolution inverse of the identity, built from
/// iterated coproducts keeping only terms with every factor non-empty.
pub fn convolution_antipode(x: &Element) -> Element {
    let mut out = Element::unit().scale(&counit(x));
    let top = x.max_degree();
    for k in 1..=top {
        let sign = if k % 2 == 0 { Coeff::one() } else { -Coeff::one() };
        let t = k_fold_coproduct(x, k);
        for (keys, c) in t.terms() {
            if keys.iter().any(|k| k.is_empty()) {
                continue;
            }
            let mut acc = Element::unit();
            for key in keys {
                acc = compose_d(&acc, &factor(&t, key));
            }
            out = &out + &acc.scale(&(c * &sign));
        }
    }
    out
}

/// The explicit degree-3 antipode of `d1 ⊎ d2 ⊎ d3`.
pub fn degree3_antipode(d: [&Element; 3]) -> Element {
    let mut out = Element::zero();
    for p in permutations(3) {
        out = &out - &compose_d(&compose_d(d[p[0]], d[p[1]]), d[p[2]]);
    }
    for first in 0..3 {
        let rest: Vec<usize> = (0..3).filter(|&j| j != first).collect();
        out = &out + &compose_d(d[first], &superpose(d[rest[0]], d[rest[1]]));
        out = &out + &compose_d(&superpose(d[rest[0]], d[rest[1]]), d[first]);
    }
    let all = superpose(&superpose(d[0], d[1]), d[2]);
    &out - &all
}

/// Coefficients of `x (x-1) … (x-n+1)`, by multiplying out the linear factors.
pub fn falling_factorial_coefficients(n: usize) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    for k in 0..n {
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (j, c) in poly.iter().enumerate() {
            next[j + 1] += c;
            next[j] += c * BigInt::from(-(k as i64));
        }
        poly = next;
    }
    poly
}

/// `(ε ⊗ Id)` or `(Id ⊗ ε)` applied to a two-fold tensor.
pub fn contract_counit(t: &TensorElement, keep: usize) -> Element {
    let mut out = Element::zero();
    for (keys, c) in t.terms() {
        let other = 1 - keep;
        if keys[other].is_empty() {
            out = &out + &factor(t, &keys[keep]).scale(c);
        }
    }
    out
}

/// `μ ∘ (f ⊗ g) ∘ Δ`.
pub fn convolve(x: &Element, f: impl Fn(&Element) -> Element, g: impl Fn(&Element) -> Element) -> Element {
    let t = coproduct(x);
    let mut out = Element::zero();
    for (keys, c) in t.terms() {
        let l = f(&factor(&t, &keys[0]));
        let r = g(&factor(&t, &keys[1]));
        out = &out + &compose_d(&l, &r).scale(c);
    }
    out
}
