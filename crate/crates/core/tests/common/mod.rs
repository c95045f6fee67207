//! Naive basis generator: every edge subset of every cell, orbits found by
//! applying the whole decoration group, zero diagrams found by looking for a
//! sign -1 automorphism. Deliberately slow and independent of the library's
//! canonical form.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;

use graphc::{ComplexType, Diagram};

pub type EdgeSet = Vec<(u8, u8)>;

/// Parity of a permutation of `0..n` by counting inversions.
pub fn inversion_parity(p: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                odd = !odd;
            }
        }
    }
    odd
}

fn attached(ve: usize, n: usize, edges: &EdgeSet) -> bool {
    let mut seen = vec![false; n];
    let mut stack: Vec<usize> = (0..ve).collect();
    for &v in &stack {
        seen[v] = true;
    }
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            let (a, b) = (a as usize - 1, b as usize - 1);
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Image of every vertex under rotation `s` of the externals and the
/// internal permutation `perm`, 1-based.
fn vertex_map(ve: usize, s: usize, perm: &[usize]) -> Vec<u8> {
    let mut map = vec![0u8; ve + perm.len() + 1];
    for (v, slot) in map.iter_mut().enumerate().take(ve + 1).skip(1) {
        *slot = ((v - 1 + s) % ve + 1) as u8;
    }
    for (i, &p) in perm.iter().enumerate() {
        map[ve + 1 + i] = (ve + 1 + p) as u8;
    }
    map
}

/// Image edge set (sorted unordered pairs) plus the sign the move carries
/// when it maps the diagram onto itself.
fn act(kind: ComplexType, ve: usize, s: usize, perm: &[usize], edges: &EdgeSet) -> (EdgeSet, bool) {
    let map = vertex_map(ve, s, perm);
    let images: Vec<(u8, u8)> = edges.iter().map(|&(a, b)| (map[a as usize], map[b as usize])).collect();
    let mut sorted: EdgeSet = images.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    sorted.sort();
    let rotation_odd = (s * (ve - 1)) % 2 == 1;
    let odd = match kind {
        ComplexType::Odd => {
            let reversed = images.iter().filter(|(a, b)| a > b).count() % 2 == 1;
            rotation_odd ^ inversion_parity(perm) ^ reversed
        }
        ComplexType::Even => {
            // edge i goes to the position of its image in the sorted list
            let order: Vec<usize> = images
                .iter()
                .map(|&(a, b)| sorted.iter().position(|&x| x == (a.min(b), a.max(b))).unwrap())
                .collect();
            rotation_odd ^ inversion_parity(&order)
        }
    };
    (sorted, odd)
}

/// Orbit minimum and whether the diagram vanishes.
fn orbit(kind: ComplexType, ve: usize, vi: usize, edges: &EdgeSet) -> (EdgeSet, bool) {
    let mut best = edges.clone();
    let mut zero = false;
    for s in 0..ve {
        for perm in (0..vi).permutations(vi) {
            let (image, odd) = act(kind, ve, s, &perm, edges);
            if image == *edges && odd {
                zero = true;
            }
            if image < best {
                best = image;
            }
        }
    }
    (best, zero)
}

/// Nonzero orbits of one grading, each given by its minimal edge set,
/// tagged with `(ve, vi)`.
pub fn naive_basis(kind: ComplexType, k: i64, m: i64) -> BTreeSet<(usize, usize, EdgeSet)> {
    let mut out = BTreeSet::new();
    for vi in 0..=(2 * k - m).max(0) {
        let e = k + vi;
        let ve = 2 * k - vi - m;
        if ve < 1 || e < 1 {
            continue;
        }
        let (ve, vi, e) = (ve as usize, vi as usize, e as usize);
        let n = ve + vi;
        let mut candidates = Vec::new();
        for a in 1..=n {
            for b in a..=n {
                let allowed = if a == b {
                    a <= ve && !(kind == ComplexType::Even && ve == 1)
                } else {
                    true
                };
                if allowed {
                    candidates.push((a as u8, b as u8));
                }
            }
        }
        for edges in candidates.into_iter().combinations(e) {
            let mut degree = vec![0usize; n + 1];
            for &(a, b) in &edges {
                degree[a as usize] += 1;
                degree[b as usize] += 1;
            }
            if (1..=n).any(|v| degree[v] < if v <= ve { 1 } else { 3 }) {
                continue;
            }
            if !attached(ve, n, &edges) {
                continue;
            }
            let (min, zero) = orbit(kind, ve, vi, &edges);
            if !zero {
                out.insert((ve, vi, min));
            }
        }
    }
    out
}

/// The orbit key of a library diagram, comparable with `naive_basis`.
pub fn orbit_key(d: &Diagram) -> (usize, usize, EdgeSet) {
    let mut edges: EdgeSet = d.edges().iter().map(|e| e.ends()).collect();
    edges.sort();
    let (min, _) = orbit(d.kind(), d.ve(), d.vi(), &edges);
    (d.ve(), d.vi(), min)
}
