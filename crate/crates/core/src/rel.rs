//! Finite binary relations between index universes `0..n`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A relation `R ⊆ A × B` where `A = 0..dom` and `B = 0..cod`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    dom: usize,
    cod: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    pub fn new(dom: usize, cod: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        for &(a, b) in &pairs {
            if a >= dom {
                return Err(Error::OutOfRange { id: a, size: dom });
            }
            if b >= cod {
                return Err(Error::OutOfRange { id: b, size: cod });
            }
        }
        Ok(Relation { dom, cod, pairs })
    }

    pub fn empty(dom: usize, cod: usize) -> Self {
        Relation {
            dom,
            cod,
            pairs: BTreeSet::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Relation {
            dom: n,
            cod: n,
            pairs: (0..n).map(|i| (i, i)).collect(),
        }
    }

    /// Graph of a partial map given as `map[a] = Some(b)`.
    pub fn from_partial_map(map: &[Option<usize>], cod: usize) -> Result<Self> {
        Relation::new(map.len(), cod, map.iter().enumerate().filter_map(|(a, b)| b.map(|b| (a, b))))
    }

    /// The partial map `a -> b` if the relation is univalent.
    pub fn to_partial_map(&self) -> Option<Vec<Option<usize>>> {
        let mut out = vec![None; self.dom];
        for &(a, b) in &self.pairs {
            if out[a].replace(b).is_some() {
                return None;
            }
        }
        Some(out)
    }

    pub fn dom_universe(&self) -> usize {
        self.dom
    }

    pub fn cod_universe(&self) -> usize {
        self.cod
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn domain(&self) -> BTreeSet<usize> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.pairs.iter().map(|p| p.1).collect()
    }

    pub fn converse(&self) -> Relation {
        Relation {
            dom: self.cod,
            cod: self.dom,
            pairs: self.pairs.iter().map(|&(a, b)| (b, a)).collect(),
        }
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        if self.dom != other.dom {
            return Err(Error::UniverseMismatch {
                expected: self.dom,
                found: other.dom,
            });
        }
        if self.cod != other.cod {
            return Err(Error::UniverseMismatch {
                expected: self.cod,
                found: other.cod,
            });
        }
        Ok(Relation {
            dom: self.dom,
            cod: self.cod,
            pairs: self.pairs.union(&other.pairs).copied().collect(),
        })
    }

    pub fn is_univalent(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.pairs.iter().all(|p| seen.insert(p.0))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.pairs.iter().all(|p| seen.insert(p.1))
    }

    pub fn is_one_to_one(&self) -> bool {
        self.is_univalent() && self.is_injective()
    }

    /// Reflexive transitive closure, by squaring `id ∪ R` until it is stable.
    pub fn kleene_star(&self) -> Result<Relation> {
        self.require_endo()?;
        let mut acc = self.union(&Relation::identity(self.dom))?;
        loop {
            let next = compose_rel(&acc, &acc)?;
            if next == acc {
                return Ok(acc);
            }
            acc = next;
        }
    }

    /// True iff no chain of pairs returns to its start. A self-pair counts as a cycle.
    pub fn is_acyclic(&self) -> Result<bool> {
        self.require_endo()?;
        let plus = compose_rel(&self.kleene_star()?, self)?;
        let acyclic = plus.pairs().all(|(a, b)| a != b);
        Ok(acyclic)
    }

    fn require_endo(&self) -> Result<()> {
        if self.dom != self.cod {
            return Err(Error::NotEndo {
                dom: self.dom,
                cod: self.cod,
            });
        }
        Ok(())
    }
}

/// `S ∘ R`: first `R: A -> B`, then `S: B -> C`.
pub fn compose_rel(s: &Relation, r: &Relation) -> Result<Relation> {
    if r.cod != s.dom {
        return Err(Error::UniverseMismatch {
            expected: r.cod,
            found: s.dom,
        });
    }
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); s.dom];
    for &(b, c) in &s.pairs {
        succ[b].push(c);
    }
    let pairs = r.pairs.iter().flat_map(|&(a, b)| succ[b].iter().map(move |&c| (a, c)));
    Ok(Relation {
        dom: r.dom,
        cod: s.cod,
        pairs: pairs.collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(n: usize, m: usize, p: &[(usize, usize)]) -> Relation {
        Relation::new(n, m, p.iter().copied()).unwrap()
    }

    #[test]
    fn composition_examples() {
        let r = rel(6, 6, &[(1, 2)]);
        let s = rel(6, 6, &[(2, 3)]);
        assert_eq!(compose_rel(&s, &r).unwrap(), rel(6, 6, &[(1, 3)]));
        assert_eq!(compose_rel(&Relation::identity(6), &r).unwrap(), r);
        let r = rel(6, 6, &[(1, 2), (1, 3)]);
        let s = rel(6, 6, &[(2, 5), (3, 5)]);
        assert_eq!(compose_rel(&s, &r).unwrap(), rel(6, 6, &[(1, 5)]));
    }

    #[test]
    fn mismatched_universes_are_rejected() {
        assert!(compose_rel(&Relation::empty(3, 3), &Relation::empty(2, 2)).is_err());
        assert!(Relation::empty(2, 3).kleene_star().is_err());
        assert!(Relation::new(2, 2, [(2, 0)]).is_err());
    }

    #[test]
    fn star_examples() {
        assert_eq!(Relation::empty(2, 2).kleene_star().unwrap(), Relation::identity(2));
        let r = rel(3, 3, &[(0, 1), (1, 2)]);
        let expect = rel(3, 3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)]);
        assert_eq!(r.kleene_star().unwrap(), expect);
        assert_eq!(rel(1, 1, &[(0, 0)]).kleene_star().unwrap(), rel(1, 1, &[(0, 0)]));
    }

    #[test]
    fn one_to_one_and_acyclic() {
        assert!(rel(5, 5, &[(1, 2), (3, 4)]).is_one_to_one());
        assert!(!rel(5, 5, &[(1, 2), (1, 3)]).is_one_to_one());
        assert!(!rel(5, 5, &[(1, 2), (3, 2)]).is_one_to_one());
        assert!(rel(4, 4, &[(1, 2), (2, 3)]).is_acyclic().unwrap());
        assert!(!rel(4, 4, &[(1, 2), (2, 1)]).is_acyclic().unwrap());
        assert!(!rel(2, 2, &[(1, 1)]).is_acyclic().unwrap());
    }

    #[test]
    fn partial_map_round_trip() {
        let m = vec![Some(2), None, Some(0)];
        let r = Relation::from_partial_map(&m, 3).unwrap();
        assert_eq!(r.to_partial_map().unwrap(), m);
        assert!(rel(2, 2, &[(0, 0), (0, 1)]).to_partial_map().is_none());
    }
}
