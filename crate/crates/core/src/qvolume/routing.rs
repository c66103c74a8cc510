//! Permutation routing on a k×k grid with nearest-neighbour swaps.
//!
//! Column sort, row sort, column sort. The first phase picks, for every
//! element, an intermediate row such that each row then holds exactly one
//! element per destination column; this is a k-edge-coloring of the k-regular
//! bipartite multigraph (source column → destination column), built from k
//! successive perfect matchings. Each line is sorted by odd-even
//! transposition, so a phase takes at most k layers.

use crate::error::{validation, Result};

/// Swap layers; each swap exchanges the contents of two adjacent sites.
pub type SwapLayers = Vec<Vec<[usize; 2]>>;

/// Layers of adjacent swaps that move the content of site `s` to `perm[s]`.
pub fn route_permutation(perm: &[usize], k: usize) -> Result<SwapLayers> {
    let n = k * k;
    if perm.len() != n {
        return validation(format!("permutation has {} entries, grid has {n} sites", perm.len()));
    }
    let mut seen = vec![false; n];
    for &d in perm {
        if d >= n || std::mem::replace(&mut seen[d], true) {
            return validation("not a permutation of the grid sites");
        }
    }
    let inter_row = intermediate_rows(perm, k);
    // state[site] = element, identified by its starting site.
    let mut state: Vec<usize> = (0..n).collect();
    let mut layers = Vec::new();
    let columns: Vec<Vec<usize>> = (0..k).map(|c| (0..k).map(|r| r * k + c).collect()).collect();
    let rows: Vec<Vec<usize>> = (0..k).map(|r| (0..k).map(|c| r * k + c).collect()).collect();
    sort_lines(&columns, &mut state, |e| inter_row[e], &mut layers);
    sort_lines(&rows, &mut state, |e| perm[e] % k, &mut layers);
    sort_lines(&columns, &mut state, |e| perm[e] / k, &mut layers);
    debug_assert!((0..n).all(|s| perm[state[s]] == s));
    Ok(layers)
}

/// Odd-even transposition sort of every line in parallel; empty rounds are
/// dropped.
fn sort_lines(lines: &[Vec<usize>], state: &mut [usize], key: impl Fn(usize) -> usize, layers: &mut SwapLayers) {
    let len = lines.first().map_or(0, Vec::len);
    for round in 0..len {
        let mut layer = Vec::new();
        for line in lines {
            let mut i = round % 2;
            while i + 1 < len {
                let (a, b) = (line[i], line[i + 1]);
                if key(state[a]) > key(state[b]) {
                    state.swap(a, b);
                    layer.push([a, b]);
                }
                i += 2;
            }
        }
        if !layer.is_empty() {
            layers.push(layer);
        }
    }
}

/// Intermediate row of each element (indexed by starting site). Elements
/// prefer to keep their current row.
fn intermediate_rows(perm: &[usize], k: usize) -> Vec<usize> {
    let n = k * k;
    let mut row_of = vec![usize::MAX; n];
    for r in 0..k {
        // match_left[c] = element chosen in source column c; match_right[d] likewise.
        let mut match_left = vec![usize::MAX; k];
        let mut match_right = vec![usize::MAX; k];
        for c in 0..k {
            let e = r * k + c;
            let d = perm[e] % k;
            if row_of[e] == usize::MAX && match_right[d] == usize::MAX {
                match_left[c] = e;
                match_right[d] = e;
            }
        }
        for c in 0..k {
            if match_left[c] == usize::MAX {
                let mut visited = vec![false; k];
                let ok = augment(c, perm, k, r, &row_of, &mut match_left, &mut match_right, &mut visited);
                assert!(ok, "regular bipartite multigraph has a perfect matching");
            }
        }
        for &e in &match_left {
            row_of[e] = r;
        }
    }
    row_of
}

#[allow(clippy::too_many_arguments)]
fn augment(
    c: usize,
    perm: &[usize],
    k: usize,
    r: usize,
    row_of: &[usize],
    match_left: &mut [usize],
    match_right: &mut [usize],
    visited: &mut [bool],
) -> bool {
    // Candidates: unassigned elements of column c, the one already in row r first.
    let cands: Vec<usize> = (0..k).map(|i| ((r + i) % k) * k + c).filter(|&e| row_of[e] == usize::MAX).collect();
    for e in cands {
        let d = perm[e] % k;
        if visited[d] {
            continue;
        }
        visited[d] = true;
        let holder = match_right[d];
        if holder == usize::MAX || augment(holder % k, perm, k, r, row_of, match_left, match_right, visited) {
            match_left[c] = e;
            match_right[d] = e;
            return true;
        }
    }
    false
}
