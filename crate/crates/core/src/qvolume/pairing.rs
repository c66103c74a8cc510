//! Random qubit pairings and their split into groups with disjoint grid groups.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::topology::GridTopology;
use crate::error::{validation, Error, Result};

/// Disjoint qubit pairs of one circuit layer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pairing {
    pub pairs: Vec<[usize; 2]>,
}

impl Pairing {
    /// Pairs must be disjoint, in range and cover all but at most one qubit.
    pub fn validate(&self, topo: &GridTopology) -> Result<()> {
        let n = topo.n_qubits();
        if self.pairs.len() != n / 2 {
            return validation(format!("expected {} pairs for {n} qubits, got {}", n / 2, self.pairs.len()));
        }
        let mut seen = vec![false; n];
        for &[a, b] in &self.pairs {
            if a == b || a >= n || b >= n {
                return validation(format!("invalid pair ({a}, {b})"));
            }
            for q in [a, b] {
                if std::mem::replace(&mut seen[q], true) {
                    return validation(format!("qubit {q} appears twice"));
                }
            }
        }
        Ok(())
    }
}

/// Uniformly random perfect matching of all qubits.
pub fn sample_pairing<R: Rng + ?Sized>(topo: &GridTopology, rng: &mut R) -> Result<Pairing> {
    if topo.n_qubits() % 2 == 1 {
        return validation(format!("cannot pair an odd number of qubits ({})", topo.n_qubits()));
    }
    Ok(sample_layer_pairing(topo, rng))
}

/// Pairs for one circuit layer: like [`sample_pairing`], but with odd N one
/// uniformly chosen qubit idles.
pub fn sample_layer_pairing<R: Rng + ?Sized>(topo: &GridTopology, rng: &mut R) -> Pairing {
    let mut q: Vec<usize> = (0..topo.n_qubits()).collect();
    q.shuffle(rng);
    Pairing {
        pairs: q.chunks_exact(2).map(|c| [c[0].min(c[1]), c[0].max(c[1])]).collect(),
    }
}

/// Largest group count allowed by Shannon's multigraph bound, ⌊3(h+1)/2⌋.
pub fn group_bound(h: usize) -> usize {
    3 * (h + 1) / 2
}

/// Split the pairs into groups in which no two pairs touch the same grid
/// group, by edge coloring the grid-group multigraph. A pair inside one grid
/// group is a loop that occupies only its own vertex.
pub fn group_pairs(pairing: &Pairing, topo: &GridTopology) -> Result<Vec<Vec<[usize; 2]>>> {
    pairing.validate(topo)?;
    let edges: Vec<(usize, usize)> = pairing
        .pairs
        .iter()
        .map(|&[a, b]| (topo.group_of(a), topo.group_of(b)))
        .collect();
    let mut load = vec![0usize; topo.n_sites()];
    for &(u, v) in &edges {
        load[u] += 1;
        if v != u {
            load[v] += 1;
        }
    }
    let max_deg = load.iter().copied().max().unwrap_or(0);
    let bound = group_bound(topo.h);
    let colors = (max_deg..=bound)
        .find_map(|p| kempe_coloring(&edges, topo.n_sites(), p))
        .or_else(|| backtrack_coloring(&edges, topo.n_sites(), bound))
        .ok_or_else(|| Error::Internal(format!("edge coloring exceeded {bound} colors")))?;
    let n_colors = colors.iter().copied().max().map_or(0, |c| c + 1);
    let mut groups = vec![Vec::new(); n_colors];
    for (pair, c) in pairing.pairs.iter().zip(colors) {
        groups[c].push(*pair);
    }
    groups.retain(|g| !g.is_empty());
    if groups.len() > bound {
        return Err(Error::Internal(format!("{} groups exceed bound {bound}", groups.len())));
    }
    Ok(groups)
}

/// Greedy coloring with `palette` colors; an edge with no common free color
/// is fixed by swapping an a/b Kempe component at one endpoint.
fn kempe_coloring(edges: &[(usize, usize)], n: usize, palette: usize) -> Option<Vec<usize>> {
    if palette == 0 {
        return edges.is_empty().then(Vec::new);
    }
    let mut at = vec![vec![None::<usize>; palette]; n];
    let mut color = vec![usize::MAX; edges.len()];
    for (e, &(u, v)) in edges.iter().enumerate() {
        let common = (0..palette).find(|&c| at[u][c].is_none() && at[v][c].is_none());
        let c = match common {
            Some(c) => c,
            None => kempe_fix(edges, &mut at, &mut color, u, v, palette)?,
        };
        color[e] = c;
        at[u][c] = Some(e);
        at[v][c] = Some(e);
    }
    Some(color)
}

fn kempe_fix(
    edges: &[(usize, usize)],
    at: &mut [Vec<Option<usize>>],
    color: &mut [usize],
    u: usize,
    v: usize,
    palette: usize,
) -> Option<usize> {
    let free = |x: usize, at: &[Vec<Option<usize>>]| -> Vec<usize> { (0..palette).filter(|&c| at[x][c].is_none()).collect() };
    for a in free(u, at) {
        for b in free(v, at) {
            // Component of v in the a/b subgraph.
            let mut comp = Vec::new();
            let mut seen_v = vec![v];
            let mut stack = vec![v];
            let mut hits_u = false;
            while let Some(x) = stack.pop() {
                for c in [a, b] {
                    if let Some(e) = at[x][c] {
                        if !comp.contains(&e) {
                            comp.push(e);
                        }
                        let (p, q) = edges[e];
                        let y = if p == x { q } else { p };
                        if y == u {
                            hits_u = true;
                        }
                        if !seen_v.contains(&y) {
                            seen_v.push(y);
                            stack.push(y);
                        }
                    }
                }
            }
            if hits_u {
                continue;
            }
            for &e in &comp {
                let (p, q) = edges[e];
                for x in [p, q] {
                    if at[x][color[e]] == Some(e) {
                        at[x][color[e]] = None;
                    }
                }
            }
            for &e in &comp {
                color[e] = if color[e] == a { b } else { a };
                let (p, q) = edges[e];
                at[p][color[e]] = Some(e);
                at[q][color[e]] = Some(e);
            }
            return Some(a);
        }
    }
    None
}

/// Exhaustive search, most constrained edge first. Only used if the Kempe
/// heuristic fails at the bound.
fn backtrack_coloring(edges: &[(usize, usize)], n: usize, palette: usize) -> Option<Vec<usize>> {
    fn go(
        edges: &[(usize, usize)],
        used: &mut [Vec<bool>],
        color: &mut [usize],
        left: usize,
        budget: &mut usize,
    ) -> bool {
        if left == 0 {
            return true;
        }
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let palette = used[0].len();
        let options = |e: usize, used: &[Vec<bool>]| {
            let (u, v) = edges[e];
            (0..palette).filter(|&c| !used[u][c] && !used[v][c]).collect::<Vec<_>>()
        };
        let e = (0..edges.len())
            .filter(|&e| color[e] == usize::MAX)
            .min_by_key(|&e| options(e, used).len())
            .expect("uncolored edge exists");
        let (u, v) = edges[e];
        for c in options(e, used) {
            color[e] = c;
            used[u][c] = true;
            used[v][c] = true;
            if go(edges, used, color, left - 1, budget) {
                return true;
            }
            used[u][c] = false;
            used[v][c] = false;
            color[e] = usize::MAX;
        }
        false
    }
    let mut used = vec![vec![false; palette.max(1)]; n];
    let mut color = vec![usize::MAX; edges.len()];
    let mut budget = 2_000_000;
    go(edges, &mut used, &mut color, edges.len(), &mut budget).then_some(color)
}
