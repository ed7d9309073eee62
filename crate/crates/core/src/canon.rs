//! Individualization-refinement over coloured structures with typed arcs.
//!
//! Colours and arc types must be label-invariant. The engine explores every
//! individualization of the first non-trivial cell and keeps the minimal leaf
//! certificate, so the result does not depend on the input numbering.

pub(crate) struct Structure {
    pub colour: Vec<u32>,
    pub arcs: Vec<Vec<(u32, usize)>>,
}

impl Structure {
    pub fn new(colour: Vec<u32>) -> Self {
        let n = colour.len();
        Structure {
            colour,
            arcs: vec![Vec::new(); n],
        }
    }

    pub fn arc(&mut self, from: usize, to: usize, kind: u32) {
        self.arcs[from].push((kind, to));
    }
}

/// Returns the minimal certificate and the labelling `lab[node] = position` that produced it.
pub(crate) fn canonical_labelling<C, F>(s: &Structure, cert: F) -> (C, Vec<usize>)
where
    C: Ord,
    F: Fn(&[usize]) -> C,
{
    let n = s.colour.len();
    if n == 0 {
        return (cert(&[]), Vec::new());
    }
    let start = refine(s, rank(&s.colour));
    let mut best: Option<(C, Vec<usize>)> = None;
    search(s, start, &cert, &mut best);
    best.expect("search visits at least one leaf")
}

fn search<C: Ord, F: Fn(&[usize]) -> C>(s: &Structure, colour: Vec<u32>, cert: &F, best: &mut Option<(C, Vec<usize>)>) {
    let n = colour.len();
    let mut sizes = vec![0usize; n];
    for &c in &colour {
        sizes[c as usize] += 1;
    }
    let target = match sizes.iter().position(|&k| k > 1) {
        None => {
            let lab: Vec<usize> = colour.iter().map(|&c| c as usize).collect();
            let c = cert(&lab);
            if best.as_ref().is_none_or(|(b, _)| c < *b) {
                *best = Some((c, lab));
            }
            return;
        }
        Some(t) => t as u32,
    };
    for v in 0..n {
        if colour[v] != target {
            continue;
        }
        let split: Vec<(u32, u32)> = colour
            .iter()
            .enumerate()
            .map(|(w, &c)| (c, u32::from(!(c == target && w == v))))
            .collect();
        search(s, refine(s, rank(&split)), cert, best);
    }
}

/// Iterated colour refinement until the number of cells is stable.
fn refine(s: &Structure, mut colour: Vec<u32>) -> Vec<u32> {
    let mut cells = count(&colour);
    loop {
        let sig: Vec<(u32, Vec<(u32, u32)>)> = (0..colour.len())
            .map(|v| {
                let mut nb: Vec<(u32, u32)> = s.arcs[v].iter().map(|&(k, w)| (k, colour[w])).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let next = rank(&sig);
        let next_cells = count(&next);
        colour = next;
        if next_cells == cells {
            return colour;
        }
        cells = next_cells;
    }
}

fn rank<T: Ord + Clone>(sig: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = sig.to_vec();
    sorted.sort();
    sorted.dedup();
    sig.iter().map(|x| sorted.binary_search(x).unwrap() as u32).collect()
}

fn count(colour: &[u32]) -> usize {
    colour.iter().copied().max().map_or(0, |m| m as usize + 1)
}
