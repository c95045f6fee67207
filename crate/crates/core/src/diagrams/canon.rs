//! Canonical forms of decorated diagrams.
//!
//! For every rotation of the external labels the internal vertices are split
//! into classes by colour refinement (anchored at the now fixed external
//! labels); only orderings that list the classes in colour order are scanned.
//! Colours are isomorphism invariant, so the scanned set of relabelings is
//! closed under automorphisms and its minimal encoding is canonical. Two
//! minimizing relabelings with different signs witness an automorphism of
//! sign -1, which makes the diagram zero.

use super::{ComplexType, Diagram, Edge, Sign, SignedDiagram};
use crate::error::Result;

pub fn canonicalize(d: &Diagram) -> Result<SignedDiagram> {
    d.validate()?;
    if d.is_degenerate() || is_single_vertex_even_loop(d) {
        return Ok(SignedDiagram::Zero);
    }
    let ve = d.ve();
    let vi = d.vi();
    let n = ve + vi;
    let ends: Vec<(usize, usize)> = d
        .edges()
        .iter()
        .map(|e| (e.tail as usize - 1, e.head as usize - 1))
        .collect();

    let mut adjacency = vec![Vec::new(); n];
    for &(a, b) in &ends {
        if a != b {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
    }

    let mut search = Search {
        kind: d.kind(),
        ends: &ends,
        best: None,
        conflict: false,
        scratch: Vec::with_capacity(ends.len()),
    };

    if ve == 0 {
        // not a basis diagram, but still give it a well-defined form
        let classes = refine(&adjacency, &[], ve, vi);
        search.scan(&[], Sign::Plus, &classes, ve);
    }
    for s in 0..ve {
        let ext_labels: Vec<usize> = (0..ve).map(|v| (v + ve - s) % ve).collect();
        let classes = refine(&adjacency, &ext_labels, ve, vi);
        search.scan(&ext_labels, Sign::pow(s * (ve - 1)), &classes, ve);
        if search.conflict {
            return Ok(SignedDiagram::Zero);
        }
    }
    if search.conflict {
        return Ok(SignedDiagram::Zero);
    }
    let (encoding, mut sign) = search.best.expect("at least one relabeling scanned");
    // canonical loops are "ab"
    sign *= Sign::pow(d.edges().iter().filter(|e| e.swapped).count());
    let edges = encoding
        .iter()
        .map(|&(a, b)| Edge::new(a + 1, b + 1))
        .collect();
    Ok(SignedDiagram::Term(
        sign,
        Diagram::from_parts_unchecked(d.kind(), ve, vi, edges),
    ))
}

/// Even-type diagrams with a single external vertex carrying a loop span a
/// subcomplex (no arc to contract, edge contractions keep the loop); the
/// even complex is taken modulo it.
fn is_single_vertex_even_loop(d: &Diagram) -> bool {
    d.kind() == ComplexType::Even && d.ve() == 1 && d.edges().iter().any(Edge::is_loop)
}

struct Search<'a> {
    kind: ComplexType,
    ends: &'a [(usize, usize)],
    best: Option<(Vec<(u8, u8)>, Sign)>,
    conflict: bool,
    scratch: Vec<(u8, u8)>,
}

impl Search<'_> {
    /// Scans every ordering of the internal classes for one fixed external labeling.
    fn scan(&mut self, ext_labels: &[usize], ext_sign: Sign, classes: &[Vec<usize>], ve: usize) {
        let vi: usize = classes.iter().map(Vec::len).sum();
        let mut order: Vec<Vec<usize>> = classes.to_vec();
        let mut labels = vec![0usize; ve + vi];
        labels[..ve].copy_from_slice(ext_labels);
        self.permute_classes(&mut order, 0, &mut labels, ext_sign, ve);
    }

    fn permute_classes(&mut self, order: &mut [Vec<usize>], class: usize, labels: &mut [usize], sign: Sign, ve: usize) {
        if self.conflict {
            return;
        }
        if class == order.len() {
            let mut pos = ve;
            for c in order.iter() {
                for &v in c {
                    labels[v] = pos;
                    pos += 1;
                }
            }
            self.evaluate(labels, sign, ve);
            return;
        }
        // Heap's algorithm over the members of this class
        let len = order[class].len();
        let mut counters = vec![0usize; len];
        self.permute_classes(order, class + 1, labels, sign, ve);
        let mut i = 1;
        while i < len {
            if counters[i] < i {
                if i % 2 == 0 {
                    order[class].swap(0, i);
                } else {
                    order[class].swap(counters[i], i);
                }
                self.permute_classes(order, class + 1, labels, sign, ve);
                counters[i] += 1;
                i = 1;
            } else {
                counters[i] = 0;
                i += 1;
            }
        }
    }

    fn evaluate(&mut self, labels: &[usize], vertex_sign: Sign, ve: usize) {
        let mut sign = vertex_sign;
        if self.kind == ComplexType::Odd {
            sign *= internal_sign(labels, ve);
        }
        self.scratch.clear();
        for &(a, b) in self.ends {
            let (x, y) = (labels[a], labels[b]);
            if self.kind == ComplexType::Odd && x > y {
                sign = -sign;
            }
            self.scratch.push(if x <= y { (x as u8, y as u8) } else { (y as u8, x as u8) });
        }
        if self.kind == ComplexType::Even {
            sign *= Sign::pow(inversions(&self.scratch));
        }
        self.scratch.sort_unstable();
        match &mut self.best {
            None => self.best = Some((self.scratch.clone(), sign)),
            Some((enc, s)) => match self.scratch.as_slice().cmp(enc.as_slice()) {
                std::cmp::Ordering::Less => {
                    enc.clear();
                    enc.extend_from_slice(&self.scratch);
                    *s = sign;
                }
                std::cmp::Ordering::Equal => {
                    if *s != sign {
                        self.conflict = true;
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }
}

/// Sign of the relabeling restricted to the internal vertices.
fn internal_sign(labels: &[usize], ve: usize) -> Sign {
    let perm: Vec<usize> = labels[ve..].iter().map(|&l| l - ve).collect();
    super::permutation_sign(&perm)
}

fn inversions(seq: &[(u8, u8)]) -> usize {
    let mut count = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                count += 1;
            }
        }
    }
    count
}

/// Colour refinement of internal vertices given fixed external labels.
/// Returns the classes of internal vertex indices (0-based global ids) in
/// increasing colour order.
fn refine(adjacency: &[Vec<usize>], ext_labels: &[usize], ve: usize, vi: usize) -> Vec<Vec<usize>> {
    if vi == 0 {
        return Vec::new();
    }
    let initial: Vec<(usize, Vec<usize>)> = (ve..ve + vi)
        .map(|v| {
            let mut ext: Vec<usize> = adjacency[v]
                .iter()
                .filter(|&&w| w < ve)
                .map(|&w| ext_labels[w])
                .collect();
            ext.sort_unstable();
            (adjacency[v].len(), ext)
        })
        .collect();
    let mut colour = rank(&initial);
    let mut classes = count_distinct(&colour);
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..vi)
            .map(|i| {
                let mut nb: Vec<usize> = adjacency[ve + i]
                    .iter()
                    .filter(|&&w| w >= ve)
                    .map(|&w| colour[w - ve])
                    .collect();
                nb.sort_unstable();
                (colour[i], nb)
            })
            .collect();
        let next = rank(&keys);
        let next_classes = count_distinct(&next);
        colour = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); classes];
    for (i, &c) in colour.iter().enumerate() {
        out[c].push(ve + i);
    }
    out
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present"))
        .collect()
}

fn count_distinct(colour: &[usize]) -> usize {
    colour.iter().copied().max().map_or(0, |m| m + 1)
}
