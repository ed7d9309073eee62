//! Coproduct, counit, k-fold maps, antipode and PBW normal forms.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::{compose_d, format_coeff, Coeff, Element};
use crate::diagram::RuleDiagram;
use crate::key::{assemble, canonical_parts, DiagramKey};

/// Finite rational combination of k-fold tensors of diagram classes.
#[derive(Clone, Debug)]
pub struct TensorElement {
    arity: usize,
    terms: BTreeMap<Vec<DiagramKey>, Coeff>,
    reps: BTreeMap<DiagramKey, Arc<RuleDiagram>>,
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.terms == other.terms
    }
}

impl Eq for TensorElement {}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        TensorElement {
            arity,
            terms: BTreeMap::new(),
            reps: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[DiagramKey], &Coeff)> {
        self.terms.iter().map(|(k, c)| (k.as_slice(), c))
    }

    pub fn coefficient(&self, keys: &[DiagramKey]) -> Coeff {
        self.terms.get(keys).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn representative(&self, key: &DiagramKey) -> Option<&RuleDiagram> {
        self.reps.get(key).map(|r| &**r)
    }

    fn add_term(&mut self, keys: Vec<DiagramKey>, c: Coeff) {
        debug_assert_eq!(keys.len(), self.arity);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(keys.clone()).or_insert_with(Coeff::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&keys);
        }
    }

    fn note_rep(&mut self, key: &DiagramKey, rep: &Arc<RuleDiagram>) {
        self.reps.entry(key.clone()).or_insert_with(|| rep.clone());
    }

    fn absorb_reps(&mut self, other: &TensorElement) {
        for (k, r) in &other.reps {
            self.note_rep(k, r);
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.arity, other.arity, "tensor arities differ");
        let mut out = self.clone();
        out.absorb_reps(other);
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> TensorElement {
        let mut out = TensorElement::zero(self.arity);
        out.absorb_reps(self);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Tensor factor `i` as an element.
    fn factor(&self, key: &DiagramKey) -> Element {
        let mut e = Element::zero();
        e.add_canonical(key.clone(), Coeff::one(), self.reps[key].clone());
        e
    }

    /// `x1 ⊗ … ⊗ xk`.
    pub fn tensor(factors: &[&Element]) -> TensorElement {
        let mut out = TensorElement::zero(factors.len());
        let mut acc: Vec<(Vec<DiagramKey>, Coeff)> = vec![(Vec::new(), Coeff::one())];
        for f in factors {
            for (k, _, rep) in f.terms_arc() {
                out.note_rep(k, rep);
            }
            acc = acc
                .into_iter()
                .flat_map(|(keys, c)| {
                    f.terms().map(move |(k, fc, _)| {
                        let mut keys = keys.clone();
                        keys.push(k.clone());
                        (keys, &c * fc)
                    })
                })
                .collect();
        }
        for (k, c) in acc {
            out.add_term(k, c);
        }
        out
    }

    /// Apply a linear map `Element -> TensorElement(j)` at position `pos`, giving arity `k - 1 + j`.
    pub fn map_factor(&self, pos: usize, f: impl Fn(&Element) -> TensorElement) -> TensorElement {
        let mut cache: HashMap<DiagramKey, TensorElement> = HashMap::new();
        let mut out: Option<TensorElement> = None;
        for (keys, c) in &self.terms {
            let img = cache
                .entry(keys[pos].clone())
                .or_insert_with(|| f(&self.factor(&keys[pos])))
                .clone();
            let acc = out.get_or_insert_with(|| TensorElement::zero(self.arity - 1 + img.arity));
            acc.absorb_reps(self);
            acc.absorb_reps(&img);
            for (ik, ic) in &img.terms {
                let mut nk = keys[..pos].to_vec();
                nk.extend(ik.iter().cloned());
                nk.extend(keys[pos + 1..].iter().cloned());
                acc.add_term(nk, c * ic);
            }
        }
        out.unwrap_or_else(|| TensorElement::zero(self.arity))
    }

    /// Apply a linear map `Element -> Element` at every position.
    pub fn map_each(&self, f: impl Fn(&Element) -> Element) -> TensorElement {
        let mut cur = self.clone();
        for pos in 0..self.arity {
            cur = cur.map_factor(pos, |e| {
                let img = f(e);
                TensorElement::tensor(&[&img])
            });
        }
        cur
    }

    /// Factorwise product `(a1 ⊗ … ⊗ ak)(b1 ⊗ … ⊗ bk) = (a1 * b1) ⊗ … ⊗ (ak * bk)`.
    pub fn product(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.arity, other.arity, "tensor arities differ");
        let mut out = TensorElement::zero(self.arity);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let prods: Vec<Element> = (0..self.arity)
                    .map(|i| compose_d(&self.factor(&ka[i]), &other.factor(&kb[i])))
                    .collect();
                let refs: Vec<&Element> = prods.iter().collect();
                out = out.add(&TensorElement::tensor(&refs).scale(&(ca * cb)));
            }
        }
        out
    }

    /// Reverse the factor order (the flip `τ` for arity 2).
    pub fn reversed(&self) -> TensorElement {
        let mut out = TensorElement::zero(self.arity);
        out.absorb_reps(self);
        for (k, c) in &self.terms {
            out.add_term(k.iter().rev().cloned().collect(), c.clone());
        }
        out
    }

    /// `{arity, terms: [{keys, coefficient}]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "arity": self.arity,
            "terms": self.terms.iter().map(|(k, c)| json!({
                "keys": k.iter().map(DiagramKey::to_hex).collect::<Vec<_>>(),
                "coefficient": format_coeff(c),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Component groups `(key, rep, multiplicity)` of a basis diagram.
fn groups(d: &RuleDiagram) -> Vec<(DiagramKey, Arc<RuleDiagram>, usize)> {
    let mut out: Vec<(DiagramKey, Arc<RuleDiagram>, usize)> = Vec::new();
    for (k, r) in canonical_parts(d) {
        match out.last_mut() {
            Some(last) if last.0 == k => last.2 += 1,
            _ => out.push((k, Arc::new(r), 1)),
        }
    }
    out
}

/// Superposition of `counts[i]` copies of group `i`.
fn sub_diagram(gs: &[(DiagramKey, Arc<RuleDiagram>, usize)], counts: &[usize]) -> (DiagramKey, Arc<RuleDiagram>) {
    let parts = gs.iter().zip(counts).flat_map(|((k, r, _), &n)| std::iter::repeat_n((k, &**r), n));
    let (k, r) = assemble(parts);
    (k, Arc::new(r))
}

/// Every sub-multiset, as per-group counts with the number of ways to pick it.
fn sub_multisets(gs: &[(DiagramKey, Arc<RuleDiagram>, usize)]) -> Vec<(Vec<usize>, BigInt)> {
    let mut out = vec![(Vec::new(), BigInt::one())];
    for (_, _, k) in gs {
        out = out
            .into_iter()
            .flat_map(|(counts, w)| {
                (0..=*k).map(move |j| {
                    let mut c = counts.clone();
                    c.push(j);
                    (c, &w * binomial(BigInt::from(*k), BigInt::from(j)))
                })
            })
            .collect();
    }
    out
}

/// `Δ(d) = Σ_X d_X ⊗ d_{X^c}` over subsets of primitive components.
pub fn coproduct(x: &Element) -> TensorElement {
    let mut out = TensorElement::zero(2);
    for (_, c, d) in x.terms() {
        let gs = groups(d);
        for (counts, w) in sub_multisets(&gs) {
            let rest: Vec<usize> = gs.iter().zip(&counts).map(|(g, j)| g.2 - j).collect();
            let (kl, rl) = sub_diagram(&gs, &counts);
            let (kr, rr) = sub_diagram(&gs, &rest);
            out.note_rep(&kl, &rl);
            out.note_rep(&kr, &rr);
            out.add_term(vec![kl, kr], c * Coeff::from_integer(w));
        }
    }
    out
}

/// Coefficient of `d_∅`.
pub fn counit(x: &Element) -> Coeff {
    x.coefficient(&DiagramKey::empty())
}

/// `Δ_k`, built as `(Δ ⊗ Id^{⊗(k-2)}) ∘ Δ_{k-1}`; `Δ_1 = Id`.
pub fn k_fold_coproduct(x: &Element, k: usize) -> TensorElement {
    assert!(k >= 1, "k-fold coproduct needs k >= 1");
    let mut t = TensorElement::tensor(&[x]);
    for _ in 1..k {
        t = t.map_factor(0, coproduct);
    }
    t
}

/// `μ_k`: multiply the factors of every term left to right.
pub fn k_fold_product(t: &TensorElement) -> Element {
    let mut out = Element::zero();
    for (keys, c) in &t.terms {
        let mut acc = Element::unit();
        for k in keys {
            acc = compose_d(&acc, &t.factor(k));
        }
        out = out.plus(&acc.scale(c));
    }
    out
}

/// Number of primitive components.
pub fn filtration_degree(key: &DiagramKey) -> usize {
    key.degree()
}

/// The antipode, from `Σ_X S(d_X) * d_{X^c} = ε(d)·d_∅` solved for `S(d)`.
pub fn antipode(x: &Element) -> Element {
    let mut memo: HashMap<DiagramKey, Element> = HashMap::new();
    let mut out = Element::zero();
    for (_, c, d) in x.terms() {
        out = out.plus(&antipode_basis(d, &mut memo).scale(c));
    }
    out
}

fn antipode_basis(d: &RuleDiagram, memo: &mut HashMap<DiagramKey, Element>) -> Element {
    let gs = groups(d);
    let full: Vec<usize> = gs.iter().map(|g| g.2).collect();
    let (key, rep) = sub_diagram(&gs, &full);
    if let Some(s) = memo.get(&key) {
        return s.clone();
    }
    let this = {
        let mut e = Element::zero();
        e.add_canonical(key.clone(), Coeff::one(), rep);
        e
    };
    let result = if gs.is_empty() {
        this
    } else {
        let mut acc = -&this;
        for (counts, w) in sub_multisets(&gs) {
            let size: usize = counts.iter().sum();
            let total: usize = full.iter().sum();
            if size == 0 || size == total {
                continue;
            }
            let rest: Vec<usize> = full.iter().zip(&counts).map(|(k, j)| k - j).collect();
            let (_, left) = sub_diagram(&gs, &counts);
            let (kr, right) = sub_diagram(&gs, &rest);
            let s_left = antipode_basis(&left, memo);
            let mut r = Element::zero();
            r.add_canonical(kr, Coeff::one(), right);
            acc = &acc - &compose_d(&s_left, &r).scale(&Coeff::from_integer(w));
        }
        acc
    };
    memo.insert(key, result.clone());
    result
}

/// Normal form as a combination of non-decreasing `*`-products of primitive classes.
#[derive(Clone, Debug, Default)]
pub struct PbwForm {
    terms: BTreeMap<Vec<DiagramKey>, Coeff>,
    reps: BTreeMap<DiagramKey, Arc<RuleDiagram>>,
}

impl PartialEq for PbwForm {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl PbwForm {
    pub fn terms(&self) -> impl Iterator<Item = (&[DiagramKey], &Coeff)> {
        self.terms.iter().map(|(k, c)| (k.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn representative(&self, key: &DiagramKey) -> Option<&RuleDiagram> {
        self.reps.get(key).map(|r| &**r)
    }

    fn add(&mut self, other: &PbwForm, c: &Coeff) {
        for (k, r) in &other.reps {
            self.reps.entry(k.clone()).or_insert_with(|| r.clone());
        }
        for (k, v) in &other.terms {
            let e = self.terms.entry(k.clone()).or_insert_with(Coeff::zero);
            *e += v * c;
        }
        self.terms.retain(|_, v| !v.is_zero());
    }

    /// Multiply out the products under the diagram composition.
    pub fn evaluate(&self) -> Element {
        let mut out = Element::zero();
        for (keys, c) in &self.terms {
            let mut acc = Element::unit();
            for k in keys {
                let mut f = Element::zero();
                f.add_canonical(k.clone(), Coeff::one(), self.reps[k].clone());
                acc = compose_d(&acc, &f);
            }
            out = out.plus(&acc.scale(c));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!(self
            .terms
            .iter()
            .map(|(k, c)| json!({
                "product": k.iter().map(DiagramKey::to_hex).collect::<Vec<_>>(),
                "coefficient": format_coeff(c),
            }))
            .collect::<Vec<_>>())
    }
}

/// Rewrite superpositions as ordered products: `d1 ⊎ … ⊎ dn = d1 * … * dn − (lower terms)`,
/// primitives ordered by key bytes, recursing on the strictly lower-degree remainder.
pub fn pbw_normal_form(x: &Element) -> PbwForm {
    let mut memo: HashMap<DiagramKey, PbwForm> = HashMap::new();
    let mut out = PbwForm::default();
    for (_, c, d) in x.terms() {
        let nf = pbw_basis(d, &mut memo);
        out.add(&nf, c);
    }
    out
}

fn pbw_basis(d: &RuleDiagram, memo: &mut HashMap<DiagramKey, PbwForm>) -> PbwForm {
    let parts = canonical_parts(d);
    let (key, _) = assemble(parts.iter().map(|(k, r)| (k, r)));
    if let Some(f) = memo.get(&key) {
        return f.clone();
    }
    let mut out = PbwForm::default();
    let keys: Vec<DiagramKey> = parts.iter().map(|(k, _)| k.clone()).collect();
    for (k, r) in &parts {
        out.reps.entry(k.clone()).or_insert_with(|| Arc::new(r.clone()));
    }
    out.terms.insert(keys, Coeff::one());
    if parts.len() >= 2 {
        let factors: Vec<Element> = parts.iter().map(|(_, r)| Element::basis(r)).collect();
        let mut prod = Element::unit();
        for f in &factors {
            prod = compose_d(&prod, f);
        }
        let mut lower = prod;
        lower.add_canonical(
            key.clone(),
            -Coeff::one(),
            Arc::new(crate::diagram::superpose_all(parts.iter().map(|(_, r)| r))),
        );
        debug_assert!(lower.keys().all(|k| k.degree() < parts.len()));
        for (_, c, t) in lower.terms() {
            let nf = pbw_basis(t, memo);
            out.add(&nf, &-c);
        }
    }
    memo.insert(key, out.clone());
    out
}
