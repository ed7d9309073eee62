//! Finite directed multigraphs with first-class edges.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_labelling, Structure};
use crate::error::{Error, Result};
use crate::rel::Relation;

/// Vertices are `0..vertex_count`; edge `e` runs from `edges[e].0` to `edges[e].1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(s, t) in &edges {
            for v in [s, t] {
                if v >= vertex_count {
                    return Err(Error::OutOfRange { id: v, size: vertex_count });
                }
            }
        }
        Ok(Multigraph { vertex_count, edges })
    }

    pub fn empty() -> Self {
        Multigraph::default()
    }

    /// `n` isolated vertices.
    pub fn discrete(n: usize) -> Self {
        Multigraph {
            vertex_count: n,
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn src(&self, e: usize) -> usize {
        self.edges[e].0
    }

    pub fn tgt(&self, e: usize) -> usize {
        self.edges[e].1
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_count == 0 && self.edges.is_empty()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn add_edge(&mut self, s: usize, t: usize) -> Result<usize> {
        for v in [s, t] {
            if v >= self.vertex_count {
                return Err(Error::OutOfRange {
                    id: v,
                    size: self.vertex_count,
                });
            }
        }
        self.edges.push((s, t));
        Ok(self.edges.len() - 1)
    }

    /// Relabel through vertex and edge permutations `old -> new`.
    pub fn permuted(&self, vperm: &[usize], eperm: &[usize]) -> Multigraph {
        let mut edges = vec![(0, 0); self.edges.len()];
        for (e, &(s, t)) in self.edges.iter().enumerate() {
            edges[eperm[e]] = (vperm[s], vperm[t]);
        }
        Multigraph {
            vertex_count: self.vertex_count,
            edges,
        }
    }

    /// Edge multiplicity matrix, row-major.
    fn multiplicities(&self) -> Vec<u32> {
        let n = self.vertex_count;
        let mut mult = vec![0u32; n * n];
        for &(s, t) in &self.edges {
            mult[s * n + t] += 1;
        }
        mult
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for v in 0..self.vertex_count {
            write!(f, "{}v{v}", if v == 0 { "" } else { " " })?;
        }
        for (e, (s, t)) in self.edges.iter().enumerate() {
            write!(f, " e{e}:v{s}->v{t}")?;
        }
        write!(f, "}}")
    }
}

/// Superposition: `G1` keeps its identifiers, `G2` is shifted past it.
pub fn disjoint_union(g1: &Multigraph, g2: &Multigraph) -> Multigraph {
    let off = g1.vertex_count;
    let mut edges = g1.edges.clone();
    edges.extend(g2.edges.iter().map(|&(s, t)| (s + off, t + off)));
    Multigraph {
        vertex_count: off + g2.vertex_count,
        edges,
    }
}

/// Byte string identifying the isomorphism class of a multigraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphClassKey(Vec<u8>);

impl GraphClassKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for GraphClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// Maps from original identifiers to positions in the canonical representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    pub vertex: Vec<usize>,
    pub edge: Vec<usize>,
}

pub fn canonical_form(g: &Multigraph) -> (GraphClassKey, Relabeling) {
    let mut st = Structure::new(vec![0; g.vertex_count]);
    for &(s, t) in &g.edges {
        if s == t {
            st.arc(s, s, 2);
        } else {
            st.arc(s, t, 0);
            st.arc(t, s, 1);
        }
    }
    let (cert, lab) = canonical_labelling(&st, |lab| {
        let mut es: Vec<(usize, usize)> = g.edges.iter().map(|&(s, t)| (lab[s], lab[t])).collect();
        es.sort_unstable();
        es
    });
    let mut bytes = Vec::with_capacity(4 + 8 * cert.len());
    bytes.extend_from_slice(&(g.vertex_count as u32).to_be_bytes());
    for (s, t) in &cert {
        bytes.extend_from_slice(&(*s as u32).to_be_bytes());
        bytes.extend_from_slice(&(*t as u32).to_be_bytes());
    }
    let mut order: Vec<usize> = (0..g.edges.len()).collect();
    order.sort_by_key(|&e| (lab[g.edges[e].0], lab[g.edges[e].1], e));
    let mut edge = vec![0; g.edges.len()];
    for (pos, &e) in order.iter().enumerate() {
        edge[e] = pos;
    }
    (GraphClassKey(bytes), Relabeling { vertex: lab, edge })
}

pub fn canonical_key(g: &Multigraph) -> GraphClassKey {
    canonical_form(g).0
}

pub fn is_isomorphic(g: &Multigraph, h: &Multigraph) -> bool {
    canonical_key(g) == canonical_key(h)
}

/// `|Aut(G)|`: vertex bijections preserving all edge multiplicities, times the
/// permutations of each bundle of parallel edges.
pub fn automorphism_count(g: &Multigraph) -> BigUint {
    let n = g.vertex_count;
    let mult = g.multiplicities();
    let profile: Vec<(u32, usize, usize)> = (0..n)
        .map(|v| {
            let outd = g.edges.iter().filter(|e| e.0 == v).count();
            let ind = g.edges.iter().filter(|e| e.1 == v).count();
            (mult[v * n + v], outd, ind)
        })
        .collect();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let vertex_maps = count_vertex_automorphisms(0, n, &mult, &profile, &mut image, &mut used);
    let mut total = BigUint::from(vertex_maps);
    for &k in &mult {
        total *= factorial(k as u64);
    }
    total
}

fn count_vertex_automorphisms(
    v: usize,
    n: usize,
    mult: &[u32],
    profile: &[(u32, usize, usize)],
    image: &mut [usize],
    used: &mut [bool],
) -> u64 {
    if v == n {
        return 1;
    }
    let mut total = 0;
    for w in 0..n {
        if used[w] || profile[w] != profile[v] {
            continue;
        }
        let consistent = (0..v).all(|u| mult[u * n + v] == mult[image[u] * n + w] && mult[v * n + u] == mult[w * n + image[u]]);
        if !consistent {
            continue;
        }
        image[v] = w;
        used[w] = true;
        total += count_vertex_automorphisms(v + 1, n, mult, profile, image, used);
        used[w] = false;
    }
    total
}

pub(crate) fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// An injective partial graph morphism, as partial maps on vertices and edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialMorphism {
    pub vertex: Vec<Option<usize>>,
    pub edge: Vec<Option<usize>>,
}

impl PartialMorphism {
    pub fn vertex_relation(&self, cod: usize) -> Relation {
        Relation::from_partial_map(&self.vertex, cod).expect("morphism images are in range")
    }

    pub fn edge_relation(&self, cod: usize) -> Relation {
        Relation::from_partial_map(&self.edge, cod).expect("morphism images are in range")
    }

    pub fn is_empty(&self) -> bool {
        self.vertex.iter().chain(&self.edge).all(Option::is_none)
    }
}

/// All injective partial morphisms `G ⇀ H`, the empty one included.
pub fn enumerate_injective_partial_morphisms(g: &Multigraph, h: &Multigraph) -> Vec<PartialMorphism> {
    injective_partial_morphisms(g.vertex_count, &g.edges, h.vertex_count, &h.edges)
}

/// Same as [`enumerate_injective_partial_morphisms`] on bare vertex counts and edge lists.
pub(crate) fn injective_partial_morphisms(gn: usize, ge: &[(usize, usize)], hn: usize, he: &[(usize, usize)]) -> Vec<PartialMorphism> {
    let mut out = Vec::new();
    let mut vmap = vec![None; gn];
    let mut vused = vec![false; hn];
    assign_vertices(0, ge, he, &mut vmap, &mut vused, &mut out);
    out
}

fn assign_vertices(
    v: usize,
    ge: &[(usize, usize)],
    he: &[(usize, usize)],
    vmap: &mut Vec<Option<usize>>,
    vused: &mut Vec<bool>,
    out: &mut Vec<PartialMorphism>,
) {
    if v == vmap.len() {
        let mut emap = vec![None; ge.len()];
        let mut eused = vec![false; he.len()];
        assign_edges(0, ge, he, vmap, &mut emap, &mut eused, out);
        return;
    }
    vmap[v] = None;
    assign_vertices(v + 1, ge, he, vmap, vused, out);
    for w in 0..vused.len() {
        if vused[w] {
            continue;
        }
        vused[w] = true;
        vmap[v] = Some(w);
        assign_vertices(v + 1, ge, he, vmap, vused, out);
        vmap[v] = None;
        vused[w] = false;
    }
}

fn assign_edges(
    e: usize,
    ge: &[(usize, usize)],
    he: &[(usize, usize)],
    vmap: &[Option<usize>],
    emap: &mut Vec<Option<usize>>,
    eused: &mut Vec<bool>,
    out: &mut Vec<PartialMorphism>,
) {
    if e == ge.len() {
        out.push(PartialMorphism {
            vertex: vmap.to_vec(),
            edge: emap.clone(),
        });
        return;
    }
    emap[e] = None;
    assign_edges(e + 1, ge, he, vmap, emap, eused, out);
    let (s, t) = ge[e];
    let (Some(fs), Some(ft)) = (vmap[s], vmap[t]) else { return };
    for (f, &(hs, ht)) in he.iter().enumerate() {
        if eused[f] || hs != fs || ht != ft {
            continue;
        }
        eused[f] = true;
        emap[e] = Some(f);
        assign_edges(e + 1, ge, he, vmap, emap, eused, out);
        emap[e] = None;
        eused[f] = false;
    }
}

/// Remove the listed vertices and edges, plus every edge incident to a removed vertex.
pub fn delete_closed(vertices: &BTreeSet<usize>, edges: &BTreeSet<usize>, g: &Multigraph) -> Result<Multigraph> {
    if let Some(&v) = vertices.iter().find(|&&v| v >= g.vertex_count) {
        return Err(Error::OutOfRange {
            id: v,
            size: g.vertex_count,
        });
    }
    if let Some(&e) = edges.iter().find(|&&e| e >= g.edges.len()) {
        return Err(Error::OutOfRange {
            id: e,
            size: g.edges.len(),
        });
    }
    let mut new_id = vec![None; g.vertex_count];
    let mut n = 0;
    for (v, slot) in new_id.iter_mut().enumerate() {
        if !vertices.contains(&v) {
            *slot = Some(n);
            n += 1;
        }
    }
    let kept = g
        .edges
        .iter()
        .enumerate()
        .filter(|(e, _)| !edges.contains(e))
        .filter_map(|(_, &(s, t))| Some((new_id[s]?, new_id[t]?)));
    Ok(Multigraph {
        vertex_count: n,
        edges: kept.collect(),
    })
}

/// Weakly connected components, ordered by their smallest vertex.
pub fn connected_components(g: &Multigraph) -> Vec<Multigraph> {
    let mut uf = UnionFind::new(g.vertex_count);
    for &(s, t) in &g.edges {
        uf.union(s, t);
    }
    let mut comp_of = vec![usize::MAX; g.vertex_count];
    let mut local = vec![0; g.vertex_count];
    let mut comps: Vec<Multigraph> = Vec::new();
    for (v, slot) in local.iter_mut().enumerate() {
        let root = uf.find(v);
        if comp_of[root] == usize::MAX {
            comp_of[root] = comps.len();
            comps.push(Multigraph::empty());
        }
        *slot = comps[comp_of[root]].add_vertex();
    }
    for &(s, t) in &g.edges {
        let c = comp_of[uf.find(s)];
        comps[c].edges.push((local[s], local[t]));
    }
    comps
}

pub fn is_connected(g: &Multigraph) -> bool {
    connected_components(g).len() == 1
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Multigraph {
        Multigraph::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn union_and_keys() {
        let edge = g(2, &[(0, 1)]);
        assert_eq!(canonical_key(&disjoint_union(&Multigraph::empty(), &edge)), canonical_key(&edge));
        let two = disjoint_union(&edge, &edge);
        assert_eq!((two.vertex_count(), two.edge_count()), (4, 2));
        assert_eq!(automorphism_count(&two), BigUint::from(2u32));
        assert_eq!(canonical_key(&g(2, &[(1, 0)])), canonical_key(&edge));
        assert_ne!(canonical_key(&g(3, &[(0, 1), (1, 2)])), canonical_key(&g(3, &[(1, 0), (1, 2)])));
    }

    #[test]
    fn automorphisms_small() {
        assert_eq!(automorphism_count(&g(1, &[])), BigUint::from(1u32));
        assert_eq!(automorphism_count(&g(2, &[])), BigUint::from(2u32));
        assert_eq!(automorphism_count(&g(3, &[(0, 1), (1, 2), (2, 0)])), BigUint::from(3u32));
        assert_eq!(automorphism_count(&g(2, &[(0, 1), (0, 1)])), BigUint::from(2u32));
        assert_eq!(automorphism_count(&g(1, &[(0, 0), (0, 0), (0, 0)])), BigUint::from(6u32));
    }

    #[test]
    fn morphism_counts() {
        assert_eq!(enumerate_injective_partial_morphisms(&g(1, &[]), &g(1, &[])).len(), 2);
        let e = g(2, &[(0, 1)]);
        assert_eq!(enumerate_injective_partial_morphisms(&e, &e).len(), 8);
        let ms = enumerate_injective_partial_morphisms(&g(3, &[]), &g(1, &[]));
        assert!(ms.iter().all(|m| m.vertex.iter().filter(|x| x.is_some()).count() <= 1));
    }

    #[test]
    fn deletion() {
        let e = g(2, &[(0, 1)]);
        let out = delete_closed(&[0].into(), &BTreeSet::new(), &e).unwrap();
        assert_eq!(out, g(1, &[]));
        assert_eq!(delete_closed(&BTreeSet::new(), &BTreeSet::new(), &e).unwrap(), e);
        let path = g(3, &[(0, 1), (1, 2)]);
        assert_eq!(delete_closed(&[1].into(), &BTreeSet::new(), &path).unwrap(), g(2, &[]));
        assert!(delete_closed(&[5].into(), &BTreeSet::new(), &path).is_err());
    }

    #[test]
    fn components() {
        assert!(connected_components(&Multigraph::empty()).is_empty());
        let cs = connected_components(&disjoint_union(&g(1, &[]), &g(2, &[(0, 1)])));
        assert_eq!(cs, vec![g(1, &[]), g(2, &[(0, 1)])]);
    }
}
