//! Canonical keys for isomorphism classes of rule diagrams.
//!
//! A diagram is split into its connected components; each component gets a
//! certificate from individualization-refinement over its vertex nodes, with
//! edges carried along as worldline chains. The key is the sorted concatenation
//! of the component certificates, so superposition order never matters and the
//! key of a superposition is the merge of its factors' keys.

use std::fmt;
use std::sync::Arc;

use crate::canon::{canonical_labelling, Structure};
use crate::diagram::{superpose_all, Node, RuleDiagram};
use crate::graph::Multigraph;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramKey(Arc<[u8]>);

impl DiagramKey {
    /// Key of the empty diagram.
    pub fn empty() -> Self {
        DiagramKey(Arc::from(Vec::new()))
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Keys of the primitive factors, in order.
    pub fn components(&self) -> Vec<DiagramKey> {
        let mut out = Vec::new();
        let mut rest = &self.0[..];
        while !rest.is_empty() {
            let len = u32::from_be_bytes(rest[..4].try_into().unwrap()) as usize;
            let (head, tail) = rest.split_at(4 + 4 * len);
            out.push(DiagramKey(Arc::from(head)));
            rest = tail;
        }
        out
    }

    /// Number of primitive factors.
    pub fn degree(&self) -> usize {
        self.components().len()
    }

    /// Key of the superposition of diagrams with the given component keys.
    pub fn superpose<'a>(parts: impl IntoIterator<Item = &'a DiagramKey>) -> DiagramKey {
        let mut comps: Vec<DiagramKey> = parts.into_iter().flat_map(|k| k.components()).collect();
        comps.sort();
        DiagramKey(Arc::from(comps.iter().flat_map(|c| c.0.iter().copied()).collect::<Vec<u8>>()))
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Option<DiagramKey> {
        if !s.len().is_multiple_of(2) {
            return None;
        }
        let bytes = (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(s.get(i..i + 2)?, 16).ok())
            .collect::<Option<Vec<u8>>>()?;
        let key = DiagramKey(Arc::from(bytes));
        // reject byte strings that do not split into whole components
        let mut rest = key.as_bytes();
        while !rest.is_empty() {
            if rest.len() < 4 {
                return None;
            }
            let len = u32::from_be_bytes(rest[..4].try_into().ok()?) as usize;
            rest = rest.get(4 + 4 * len..)?;
        }
        Some(key)
    }
}

impl fmt::Debug for DiagramKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiagramKey({})", self.to_hex())
    }
}

impl fmt::Display for DiagramKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

pub fn canonical_diagram(d: &RuleDiagram) -> DiagramKey {
    canonicalize(d).0
}

/// Key plus the canonical representative (components laid out in key order).
pub fn canonicalize(d: &RuleDiagram) -> (DiagramKey, RuleDiagram) {
    let parts = canonical_parts(d);
    let key = DiagramKey(Arc::from(parts.iter().flat_map(|(k, _)| k.0.iter().copied()).collect::<Vec<u8>>()));
    let rep = superpose_all(parts.iter().map(|(_, r)| r));
    (key, rep)
}

/// Key and canonical representative of a superposition of canonical components.
pub(crate) fn assemble<'a>(parts: impl IntoIterator<Item = (&'a DiagramKey, &'a RuleDiagram)>) -> (DiagramKey, RuleDiagram) {
    let mut parts: Vec<(&DiagramKey, &RuleDiagram)> = parts.into_iter().collect();
    parts.sort_by(|a, b| a.0.cmp(b.0));
    let key = DiagramKey(Arc::from(parts.iter().flat_map(|(k, _)| k.0.iter().copied()).collect::<Vec<u8>>()));
    (key, superpose_all(parts.into_iter().map(|(_, r)| r)))
}

/// Canonical components, sorted by key.
pub fn canonical_parts(d: &RuleDiagram) -> Vec<(DiagramKey, RuleDiagram)> {
    let mut parts: Vec<(DiagramKey, RuleDiagram)> = d.components().iter().map(canonical_component).collect();
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    parts
}

fn bits(flags: &[bool]) -> u32 {
    flags.iter().enumerate().map(|(i, &b)| u32::from(b) << i).sum()
}

fn canonical_component(d: &RuleDiagram) -> (DiagramKey, RuleDiagram) {
    let ch = d.chains();
    let (iv, ov) = (d.input().vertex_count(), d.output().vertex_count());
    let loops = |g: &Multigraph, v: usize| g.edges().iter().filter(|&&(s, t)| s == v && t == v).count() as u32;
    let mut colour = Vec::with_capacity(iv + ov);
    for x in 0..iv {
        colour.push(bits(&[false, d.r_vertices()[x].is_some(), ch.m_inv_v[x].is_some()]) | loops(d.input(), x) << 4);
    }
    for y in 0..ov {
        colour.push(bits(&[true, d.m_vertices()[y].is_some(), ch.r_inv_v[y].is_some()]) | loops(d.output(), y) << 4);
    }
    let mut st = Structure::new(colour);
    for (x, y) in d.r_vertices().iter().enumerate() {
        if let Some(y) = y {
            st.arc(x, iv + y, 0);
            st.arc(iv + y, x, 1);
        }
    }
    for (y, x) in d.m_vertices().iter().enumerate() {
        if let Some(x) = x {
            st.arc(iv + y, *x, 2);
            st.arc(*x, iv + y, 3);
        }
    }
    for (e, &(s, t)) in d.input().edges().iter().enumerate() {
        let kind = 8 + 4 * bits(&[false, d.r_edges()[e].is_some(), ch.m_inv_e[e].is_some()]);
        st.arc(s, t, kind);
        st.arc(t, s, kind + 1);
    }
    for (e, &(s, t)) in d.output().edges().iter().enumerate() {
        let kind = 8 + 4 * bits(&[true, d.m_edges()[e].is_some(), ch.r_inv_e[e].is_some()]);
        st.arc(iv + s, iv + t, kind);
        st.arc(iv + t, iv + s, kind + 1);
    }

    // Edge worldlines, each as its sequence of (side, src node, tgt node).
    let mut chains: Vec<Vec<(u32, usize, usize)>> = Vec::new();
    let mut starts: Vec<Node> = (0..d.input().edge_count())
        .filter(|&e| ch.m_inv_e[e].is_none())
        .map(Node::I)
        .collect();
    starts.extend((0..d.output().edge_count()).filter(|&e| ch.r_inv_e[e].is_none()).map(Node::O));
    let mut chain_members: Vec<Vec<Node>> = Vec::new();
    for start in starts {
        let mut seq = Vec::new();
        let mut members = Vec::new();
        let mut cur = Some(start);
        while let Some(n) = cur {
            let (side, s, t, next) = match n {
                Node::I(e) => {
                    let (s, t) = d.input().edges()[e];
                    (0, s, t, d.r_edges()[e].map(Node::O))
                }
                Node::O(e) => {
                    let (s, t) = d.output().edges()[e];
                    (1, iv + s, iv + t, d.m_edges()[e].map(Node::I))
                }
            };
            seq.push((side, s, t));
            members.push(n);
            cur = next;
        }
        chains.push(seq);
        chain_members.push(members);
    }

    let (cert, lab) = canonical_labelling(&st, |lab| {
        let n = lab.len();
        let mut inv = vec![0; n];
        for (v, &p) in lab.iter().enumerate() {
            inv[p] = v;
        }
        let mut out: Vec<u32> = Vec::with_capacity(2 + 2 * n);
        out.push(n as u32);
        for &v in &inv {
            let (side, next) = if v < iv {
                (0, d.r_vertices()[v].map(|y| lab[iv + y]))
            } else {
                (1, d.m_vertices()[v - iv].map(|x| lab[x]))
            };
            out.push(side);
            out.push(next.map_or(0, |p| p as u32 + 1));
        }
        let mut cs: Vec<Vec<u32>> = chains
            .iter()
            .map(|c| c.iter().flat_map(|&(side, s, t)| [side, lab[s] as u32, lab[t] as u32]).collect())
            .collect();
        cs.sort();
        out.push(cs.len() as u32);
        for c in cs {
            out.push(c.len() as u32);
            out.extend(c);
        }
        out
    });

    let mut bytes = Vec::with_capacity(4 + 4 * cert.len());
    bytes.extend_from_slice(&(cert.len() as u32).to_be_bytes());
    for w in &cert {
        bytes.extend_from_slice(&w.to_be_bytes());
    }

    // Canonical representative: vertices in label order per side, edges by sorted chain.
    let mut order: Vec<usize> = (0..iv + ov).collect();
    order.sort_by_key(|&v| lab[v]);
    let mut iv_new = vec![0; iv];
    let mut ov_new = vec![0; ov];
    let (mut ni, mut no) = (0, 0);
    for &v in &order {
        if v < iv {
            iv_new[v] = ni;
            ni += 1;
        } else {
            ov_new[v - iv] = no;
            no += 1;
        }
    }
    let mut chain_order: Vec<usize> = (0..chains.len()).collect();
    let chain_cert = |c: &Vec<(u32, usize, usize)>| c.iter().map(|&(side, s, t)| (side, lab[s], lab[t])).collect::<Vec<_>>();
    chain_order.sort_by_key(|&i| chain_cert(&chains[i]));
    let mut ie_new = vec![0; d.input().edge_count()];
    let mut oe_new = vec![0; d.output().edge_count()];
    let (mut ei, mut eo) = (0, 0);
    for &i in &chain_order {
        for n in &chain_members[i] {
            match *n {
                Node::I(e) => {
                    ie_new[e] = ei;
                    ei += 1;
                }
                Node::O(e) => {
                    oe_new[e] = eo;
                    eo += 1;
                }
            }
        }
    }
    let rep = d.relabeled(&iv_new, &ie_new, &ov_new, &oe_new);
    (DiagramKey(Arc::from(bytes)), rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{compose_along, superpose, LinearRule, Match};

    fn del() -> RuleDiagram {
        RuleDiagram::from_rule(LinearRule::deletion(&Multigraph::discrete(1))).unwrap()
    }

    fn cre() -> RuleDiagram {
        RuleDiagram::from_rule(LinearRule::creation(&Multigraph::discrete(1))).unwrap()
    }

    #[test]
    fn order_and_matching_matter_correctly() {
        let (a, ad) = (del(), cre());
        assert_eq!(canonical_diagram(&superpose(&a, &ad)), canonical_diagram(&superpose(&ad, &a)));
        let de = compose_along(
            &a,
            &Match {
                vertex: vec![(0, 0)],
                edge: vec![],
            },
            &ad,
        )
        .unwrap();
        assert_ne!(canonical_diagram(&de), canonical_diagram(&superpose(&a, &ad)));
        assert!(canonical_diagram(&RuleDiagram::empty()).is_empty());
    }

    #[test]
    fn representative_has_same_key() {
        let g = Multigraph::new(3, vec![(0, 1), (1, 2), (1, 2), (2, 2)]).unwrap();
        let d = RuleDiagram::from_rule(LinearRule::identity(&g)).unwrap();
        let (k, rep) = canonicalize(&d);
        assert_eq!(canonical_diagram(&rep), k);
        assert_eq!(canonicalize(&rep).1, rep);
    }

    #[test]
    fn key_components_and_hex() {
        let (a, ad) = (del(), cre());
        let k = canonical_diagram(&superpose(&superpose(&a, &ad), &a));
        assert_eq!(k.degree(), 3);
        assert_eq!(DiagramKey::superpose(&k.components()), k);
        assert_eq!(DiagramKey::from_hex(&k.to_hex()), Some(k));
        assert_eq!(DiagramKey::from_hex("0000"), None);
    }
}
