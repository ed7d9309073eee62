//! Formal rational linear combinations of diagram classes and their products.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::diagram::{compose_unchecked, dagger_diagram, enumerate_matches, superpose as superpose_diagrams, Match, RuleDiagram};
use crate::key::{canonicalize, DiagramKey};
use crate::par;

pub type Coeff = BigRational;

pub fn coeff(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Coeff {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Integers print bare, everything else as `p/q`.
pub fn format_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_coeff(s: &str) -> Option<Coeff> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p.trim().parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

#[derive(Clone, Debug)]
struct Term {
    coeff: Coeff,
    rep: Arc<RuleDiagram>,
}

/// A finite map from diagram classes to nonzero rational coefficients.
#[derive(Clone, Debug, Default)]
pub struct Element {
    terms: BTreeMap<DiagramKey, Term>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((k1, t1), (k2, t2))| k1 == k2 && t1.coeff == t2.coeff)
    }
}

impl Eq for Element {}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    /// `d_∅`.
    pub fn unit() -> Self {
        Element::basis(&RuleDiagram::empty())
    }

    pub fn basis(d: &RuleDiagram) -> Self {
        Element::term(Coeff::one(), d)
    }

    pub fn term(c: Coeff, d: &RuleDiagram) -> Self {
        let mut out = Element::zero();
        out.add_diagram(c, d);
        out
    }

    pub fn add_diagram(&mut self, c: Coeff, d: &RuleDiagram) {
        let (key, rep) = canonicalize(d);
        self.add_canonical(key, c, Arc::new(rep));
    }

    /// Accumulate a term whose representative is already canonical for `key`.
    pub(crate) fn add_canonical(&mut self, key: DiagramKey, c: Coeff, rep: Arc<RuleDiagram>) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(Term { coeff: c, rep });
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &o.get().coeff + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    o.get_mut().coeff = sum;
                }
            }
        }
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiagramKey, &Coeff, &RuleDiagram)> {
        self.terms.iter().map(|(k, t)| (k, &t.coeff, &*t.rep))
    }

    pub(crate) fn terms_arc(&self) -> impl Iterator<Item = (&DiagramKey, &Coeff, &Arc<RuleDiagram>)> {
        self.terms.iter().map(|(k, t)| (k, &t.coeff, &t.rep))
    }

    pub fn keys(&self) -> impl Iterator<Item = &DiagramKey> {
        self.terms.keys()
    }

    pub fn coefficient(&self, key: &DiagramKey) -> Coeff {
        self.terms.get(key).map_or_else(Coeff::zero, |t| t.coeff.clone())
    }

    pub fn coefficient_of(&self, d: &RuleDiagram) -> Coeff {
        self.coefficient(&canonicalize(d).0)
    }

    pub fn representative(&self, key: &DiagramKey) -> Option<&RuleDiagram> {
        self.terms.get(key).map(|t| &*t.rep)
    }

    pub fn scale(&self, c: &Coeff) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, t)| {
                (
                    k.clone(),
                    Term {
                        coeff: &t.coeff * c,
                        rep: t.rep.clone(),
                    },
                )
            })
            .collect();
        Element { terms }
    }

    pub fn plus(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (k, t) in &other.terms {
            out.add_canonical(k.clone(), t.coeff.clone(), t.rep.clone());
        }
        out
    }

    /// Map every term through `f` and re-accumulate.
    pub fn map_terms(&self, f: impl Fn(&RuleDiagram) -> Element) -> Element {
        let mut out = Element::zero();
        for t in self.terms.values() {
            out = out.plus(&f(&t.rep).scale(&t.coeff));
        }
        out
    }

    /// Largest number of primitive factors among the terms.
    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(DiagramKey::degree).max().unwrap_or(0)
    }

    pub fn is_irreducible(&self) -> bool {
        self.terms.values().all(|t| t.rep.is_irreducible())
    }

    /// `[{key, coefficient, representative}]` in key order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(k, t)| {
                    json!({
                        "key": k.to_hex(),
                        "coefficient": format_coeff(&t.coeff),
                        "representative": serde_json::to_value(&*t.rep).expect("diagrams serialize"),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Option<Element> {
        let mut out = Element::zero();
        for item in v.as_array()? {
            let c = parse_coeff(item.get("coefficient")?.as_str()?)?;
            let d: RuleDiagram = serde_json::from_value(item.get("representative")?.clone()).ok()?;
            let d = RuleDiagram::new(
                d.input().clone(),
                d.output().clone(),
                d.r_vertices().to_vec(),
                d.r_edges().to_vec(),
                d.m_vertices().to_vec(),
                d.m_edges().to_vec(),
            )
            .ok()?;
            if !d.is_valid() {
                return None;
            }
            out.add_diagram(c, &d);
        }
        Some(out)
    }

    /// Render with a caller-supplied name for each class.
    pub fn display_with(&self, name: impl Fn(&DiagramKey, &RuleDiagram) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (k, t)) in self.terms.iter().enumerate() {
            let neg = t.coeff < Coeff::zero();
            let mag = if neg { -t.coeff.clone() } else { t.coeff.clone() };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !mag.is_one() {
                out.push_str(&format_coeff(&mag));
                out.push('·');
            }
            out.push_str(&name(k, &t.rep));
        }
        out
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.display_with(|k, _| {
            if k.is_empty() {
                "d_∅".to_string()
            } else {
                let hex = k.to_hex();
                format!("<{}>", &hex[hex.len().saturating_sub(8)..])
            }
        });
        f.write_str(&s)
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        Element::plus(self, rhs)
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        Element::plus(&self, &rhs)
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Coeff::one())
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.plus(&-rhs)
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

fn compose_impl(x: &Element, y: &Element, nontrivial_only: bool) -> Element {
    let mut jobs: Vec<(&Coeff, &RuleDiagram, &Coeff, &RuleDiagram, Match)> = Vec::new();
    for (_, cx, dx) in x.terms() {
        for (_, cy, dy) in y.terms() {
            for m in enumerate_matches(dx, dy) {
                if nontrivial_only && m.is_empty() {
                    continue;
                }
                jobs.push((cx, dx, cy, dy, m));
            }
        }
    }
    let parts = par::map(&jobs, |(cx, dx, cy, dy, m)| {
        let (k, rep) = canonicalize(&compose_unchecked(dx, m, dy));
        (k, *cx * *cy, rep)
    });
    let mut out = Element::zero();
    for (k, c, rep) in parts {
        out.add_canonical(k, c, Arc::new(rep));
    }
    out
}

/// `x *_D y`: sum over all admissible matches of `y`'s outputs into `x`'s inputs.
pub fn compose_d(x: &Element, y: &Element) -> Element {
    compose_impl(x, y, false)
}

/// `x ⊎ y`, bilinearly.
pub fn superpose(x: &Element, y: &Element) -> Element {
    let mut out = Element::zero();
    for (_, cx, dx) in x.terms() {
        for (_, cy, dy) in y.terms() {
            out.add_diagram(cx * cy, &superpose_diagrams(dx, dy));
        }
    }
    out
}

/// `x ⊛ y = x * y − x ⊎ y`: the contributions of nonempty matches.
pub fn nontrivial_compose(x: &Element, y: &Element) -> Element {
    compose_impl(x, y, true)
}

/// `[x, y]` for the diagram product.
pub fn commutator(x: &Element, y: &Element) -> Element {
    commutator_with(x, y, compose_d)
}

pub fn commutator_with(x: &Element, y: &Element, mul: impl Fn(&Element, &Element) -> Element) -> Element {
    &mul(x, y) - &mul(y, x)
}

/// Iterated product of a non-empty list.
pub fn product(factors: &[Element], mul: impl Fn(&Element, &Element) -> Element) -> Element {
    factors
        .iter()
        .skip(1)
        .fold(factors.first().cloned().unwrap_or_else(Element::unit), |acc, f| mul(&acc, f))
}

/// Linear extension of diagram dualization.
pub fn dagger(x: &Element) -> Element {
    x.map_terms(|d| Element::basis(&dagger_diagram(d)))
}

/// `x^{⊎n}`, with `x^{⊎0} = d_∅`.
pub fn superpose_power(x: &Element, n: usize) -> Element {
    (0..n).fold(Element::unit(), |acc, _| superpose(&acc, x))
}

pub fn compose_power(x: &Element, n: usize) -> Element {
    (0..n).fold(Element::unit(), |acc, _| compose_d(&acc, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::LinearRule;
    use crate::graph::Multigraph;

    fn a() -> Element {
        Element::basis(&RuleDiagram::from_rule(LinearRule::deletion(&Multigraph::discrete(1))).unwrap())
    }

    fn adag() -> Element {
        Element::basis(&RuleDiagram::from_rule(LinearRule::creation(&Multigraph::discrete(1))).unwrap())
    }

    #[test]
    fn linear_structure() {
        let x = a();
        assert_eq!(&x + &Element::zero(), x);
        assert!(x.scale(&coeff(0)).is_zero());
        assert!((&x + &x.scale(&coeff(-1))).is_zero());
    }

    #[test]
    fn unit_and_hw_products() {
        assert_eq!(compose_d(&Element::unit(), &a()), a());
        assert_eq!(compose_d(&a(), &Element::unit()), a());
        let prod = compose_d(&a(), &adag());
        assert_eq!(prod.len(), 2);
        assert_eq!(nontrivial_compose(&adag(), &a()), Element::zero());
        assert_eq!(nontrivial_compose(&a(), &adag()).len(), 1);
        assert_eq!(superpose(&a(), &adag()), superpose(&adag(), &a()));
    }

    #[test]
    fn coefficient_text() {
        assert_eq!(format_coeff(&ratio(6, 4)), "3/2");
        assert_eq!(format_coeff(&coeff(-2)), "-2");
        assert_eq!(parse_coeff("-3/6"), Some(ratio(-1, 2)));
        assert_eq!(parse_coeff("1/0"), None);
    }

    #[test]
    fn json_round_trip() {
        let x = &compose_d(&a(), &adag()) + &a().scale(&ratio(1, 3));
        assert_eq!(Element::from_json(&x.to_json()), Some(x));
    }
}
