//! Choice of adjacent meeting sites for the pairs of one group.
//!
//! Each pair `(s_a, s_b)` of grid sites is sent to an ordered pair of
//! neighbouring sites `(p, q)`; chosen sites must be disjoint and avoid pinned
//! sites. The objective is `Σ |s_a − p|₁ + |s_b − q|₁`.

use serde::{Deserialize, Serialize};

use super::topology::GridTopology;
use crate::error::{validation, Result};

/// Largest grid side solved exactly by branch and bound.
pub const EXACT_MAX_K: usize = 4;

const BNB_NODE_LIMIT: usize = 5_000_000;

/// Meeting sites for the pairs of one group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeetingAssignment {
    /// Destination sites per pair, `None` for a pair inside one grid group.
    pub sites: Vec<Option<[usize; 2]>>,
    pub cost: usize,
    /// Whether intra-group pairs keep their control site during routing.
    /// When that makes the problem infeasible they are entangled before
    /// routing instead.
    pub loops_pinned: bool,
}

/// Assign meeting sites to a group of pairs with pairwise distinct grid
/// groups. Exact for `k ≤ 4`, greedy plus pairwise exchange otherwise.
pub fn assign_meeting_sites(group: &[[usize; 2]], topo: &GridTopology) -> Result<MeetingAssignment> {
    let mut used = vec![false; topo.n_sites()];
    for &[a, b] in group {
        let (ga, gb) = (topo.group_of(a), topo.group_of(b));
        for g in if ga == gb { vec![ga] } else { vec![ga, gb] } {
            if std::mem::replace(&mut used[g], true) {
                return validation(format!("grid group {g} is shared within one pair group"));
            }
        }
    }
    let cross: Vec<usize> = (0..group.len())
        .filter(|&i| topo.group_of(group[i][0]) != topo.group_of(group[i][1]))
        .collect();
    let origins: Vec<(usize, usize)> = cross
        .iter()
        .map(|&i| (topo.group_of(group[i][0]), topo.group_of(group[i][1])))
        .collect();
    let mut pinned = vec![false; topo.n_sites()];
    for &[a, b] in group {
        if topo.group_of(a) == topo.group_of(b) {
            pinned[topo.group_of(a)] = true;
        }
    }
    let exact = topo.k <= EXACT_MAX_K;
    let solve = |pinned: &[bool]| {
        if exact {
            assign_exact(&origins, pinned, topo)
        } else {
            assign_heuristic(&origins, pinned, topo)
        }
    };
    let (dest, cost, loops_pinned) = match solve(&pinned) {
        Some((d, c)) => (d, c, true),
        None => match solve(&vec![false; topo.n_sites()]) {
            Some((d, c)) => (d, c, false),
            None => return validation(format!("no disjoint meeting sites for {} pairs", origins.len())),
        },
    };
    let mut sites = vec![None; group.len()];
    for (&i, d) in cross.iter().zip(dest) {
        sites[i] = Some(d);
    }
    Ok(MeetingAssignment {
        sites,
        cost,
        loops_pinned,
    })
}

struct Options {
    /// Per pair: `(cost, p, q)` sorted by cost.
    per_pair: Vec<Vec<(usize, usize, usize)>>,
}

impl Options {
    fn new(origins: &[(usize, usize)], pinned: &[bool], topo: &GridTopology) -> Self {
        let mut edges = Vec::new();
        for s in 0..topo.n_sites() {
            if pinned[s] {
                continue;
            }
            for t in topo.grid_neighbors(s) {
                if !pinned[t] {
                    edges.push((s, t));
                }
            }
        }
        let per_pair = origins
            .iter()
            .map(|&(a, b)| {
                let mut o: Vec<_> = edges
                    .iter()
                    .map(|&(p, q)| (topo.site_distance(a, p) + topo.site_distance(b, q), p, q))
                    .collect();
                o.sort_unstable();
                o
            })
            .collect();
        Options { per_pair }
    }

    fn lower_bound(&self, i: usize) -> usize {
        self.per_pair[i].first().map_or(usize::MAX / 4, |o| o.0)
    }
}

/// Minimum-cost assignment by depth-first branch and bound.
pub(crate) fn assign_exact(
    origins: &[(usize, usize)],
    pinned: &[bool],
    topo: &GridTopology,
) -> Option<(Vec<[usize; 2]>, usize)> {
    let opts = Options::new(origins, pinned, topo);
    let m = origins.len();
    if m > 0 && opts.per_pair.iter().any(Vec::is_empty) {
        return None;
    }
    // Far-apart pairs first: they have the fewest cheap options.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(opts.lower_bound(i)));
    let mut suffix_lb = vec![0usize; m + 1];
    for d in (0..m).rev() {
        suffix_lb[d] = suffix_lb[d + 1] + opts.lower_bound(order[d]);
    }
    struct Search<'a> {
        opts: &'a Options,
        order: Vec<usize>,
        suffix_lb: Vec<usize>,
        used: Vec<bool>,
        current: Vec<usize>,
        best: Option<(Vec<usize>, usize)>,
        nodes: usize,
    }
    impl Search<'_> {
        fn go(&mut self, depth: usize, cost: usize) {
            self.nodes += 1;
            if self.nodes > BNB_NODE_LIMIT {
                return;
            }
            let bound = self.best.as_ref().map_or(usize::MAX, |b| b.1);
            if cost + self.suffix_lb[depth] >= bound {
                return;
            }
            if depth == self.order.len() {
                self.best = Some((self.current.clone(), cost));
                return;
            }
            let i = self.order[depth];
            for (j, &(c, p, q)) in self.opts.per_pair[i].iter().enumerate() {
                let bound = self.best.as_ref().map_or(usize::MAX, |b| b.1);
                if cost + c + self.suffix_lb[depth + 1] >= bound {
                    break;
                }
                if self.used[p] || self.used[q] {
                    continue;
                }
                self.used[p] = true;
                self.used[q] = true;
                self.current[i] = j;
                self.go(depth + 1, cost + c);
                self.used[p] = false;
                self.used[q] = false;
            }
        }
    }
    let mut s = Search {
        opts: &opts,
        order,
        suffix_lb,
        used: vec![false; topo.n_sites()],
        current: vec![0; m],
        best: None,
        nodes: 0,
    };
    let seed = assign_heuristic_choice(&opts, origins, pinned, topo);
    if let Some((choice, cost)) = seed {
        // Seed the bound with the heuristic; keep it if nothing beats it.
        s.best = Some((choice, cost));
    }
    s.go(0, 0);
    let (choice, cost) = s.best?;
    Some((materialize(&opts, &choice), cost))
}

/// Greedy constructions (which can block themselves on crowded grids) and
/// a start from a fixed set of disjoint dominoes shared out by optimal
/// assignment, each followed by single-pair relocation and pairwise exchange
/// until no move improves the objective.
pub(crate) fn assign_heuristic(
    origins: &[(usize, usize)],
    pinned: &[bool],
    topo: &GridTopology,
) -> Option<(Vec<[usize; 2]>, usize)> {
    let opts = Options::new(origins, pinned, topo);
    if !origins.is_empty() && opts.per_pair.iter().any(Vec::is_empty) {
        return None;
    }
    let (choice, cost) = assign_heuristic_choice(&opts, origins, pinned, topo)?;
    Some((materialize(&opts, &choice), cost))
}

fn tiled_choice(
    opts: &Options,
    origins: &[(usize, usize)],
    pinned: &[bool],
    topo: &GridTopology,
) -> Option<(Vec<usize>, usize)> {
    let dominoes = grid_matching(pinned, topo);
    let m = origins.len();
    if dominoes.len() < m {
        return None;
    }
    let oriented = |i: usize, [s, t]: [usize; 2]| {
        let (a, b) = origins[i];
        let c1 = topo.site_distance(a, s) + topo.site_distance(b, t);
        let c2 = topo.site_distance(a, t) + topo.site_distance(b, s);
        if c1 <= c2 {
            (c1, s, t)
        } else {
            (c2, t, s)
        }
    };
    let cost: Vec<Vec<i64>> = (0..m)
        .map(|i| dominoes.iter().map(|&d| oriented(i, d).0 as i64).collect())
        .collect();
    let cols = hungarian(&cost);
    let mut used = vec![false; topo.n_sites()];
    let mut choice = vec![0; m];
    for i in 0..m {
        let (c, p, q) = oriented(i, dominoes[cols[i]]);
        choice[i] = opts.per_pair[i]
            .iter()
            .position(|&o| o == (c, p, q))
            .expect("domino is an option");
        used[p] = true;
        used[q] = true;
    }
    let total = local_search(opts, &mut choice, &mut used);
    Some((choice, total))
}

/// Maximum set of disjoint adjacent unpinned site pairs (bipartite matching
/// on the checkerboard colouring).
fn grid_matching(pinned: &[bool], topo: &GridTopology) -> Vec<[usize; 2]> {
    let n = topo.n_sites();
    let black = |s: usize| {
        let (r, c) = topo.site_coords(s);
        (r + c) % 2 == 0
    };
    let mut mate = vec![usize::MAX; n];
    fn try_kuhn(s: usize, topo: &GridTopology, pinned: &[bool], mate: &mut [usize], seen: &mut [bool]) -> bool {
        for t in topo.grid_neighbors(s) {
            if pinned[t] || seen[t] {
                continue;
            }
            seen[t] = true;
            if mate[t] == usize::MAX || try_kuhn(mate[t], topo, pinned, mate, seen) {
                mate[t] = s;
                mate[s] = t;
                return true;
            }
        }
        false
    }
    for s in (0..n).filter(|&s| black(s) && !pinned[s]) {
        let mut seen = vec![false; n];
        try_kuhn(s, topo, pinned, &mut mate, &mut seen);
    }
    (0..n)
        .filter(|&s| black(s) && mate[s] != usize::MAX && mate[mate[s]] == s)
        .map(|s| [s, mate[s]])
        .collect()
}

/// Minimum-cost assignment of every row to a distinct column (rows ≤ columns).
/// Returns the column of each row.
fn hungarian(cost: &[Vec<i64>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    let m = cost[0].len();
    const INF: i64 = i64::MAX / 4;
    // 1-based potentials; p[j] = row matched to column j.
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; m + 1];
    let mut p = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![INF; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = INF;
            let mut j1 = 0;
            for j in 1..=m {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut col = vec![0; n];
    for j in 1..=m {
        if p[j] > 0 {
            col[p[j] - 1] = j - 1;
        }
    }
    col
}

/// Best of several greedy orders and the domino start, each polished by
/// local search.
fn assign_heuristic_choice(
    opts: &Options,
    origins: &[(usize, usize)],
    pinned: &[bool],
    topo: &GridTopology,
) -> Option<(Vec<usize>, usize)> {
    let m = opts.per_pair.len();
    let mut far_first: Vec<usize> = (0..m).collect();
    far_first.sort_by_key(|&i| std::cmp::Reverse(opts.lower_bound(i)));
    let near_first: Vec<usize> = far_first.iter().rev().copied().collect();
    let forward: Vec<usize> = (0..m).collect();
    let backward: Vec<usize> = (0..m).rev().collect();
    [far_first, near_first, forward, backward]
        .iter()
        .filter_map(|order| greedy(opts, order, topo))
        .chain(tiled_choice(opts, origins, pinned, topo))
        .min_by_key(|r| r.1)
}

fn greedy(opts: &Options, order: &[usize], topo: &GridTopology) -> Option<(Vec<usize>, usize)> {
    let mut used = vec![false; topo.n_sites()];
    let mut choice = vec![0; order.len()];
    for &i in order {
        let j = opts.per_pair[i]
            .iter()
            .position(|&(_, p, q)| !used[p] && !used[q])?;
        let (_, p, q) = opts.per_pair[i][j];
        used[p] = true;
        used[q] = true;
        choice[i] = j;
    }
    let cost = local_search(opts, &mut choice, &mut used);
    Some((choice, cost))
}

fn local_search(opts: &Options, choice: &mut [usize], used: &mut [bool]) -> usize {
    let m = choice.len();
    let cost_of = |i: usize, j: usize| opts.per_pair[i][j].0;
    let sites = |i: usize, j: usize| {
        let (_, p, q) = opts.per_pair[i][j];
        (p, q)
    };
    loop {
        let mut improved = false;
        for i in 0..m {
            let (p, q) = sites(i, choice[i]);
            used[p] = false;
            used[q] = false;
            let j = opts.per_pair[i]
                .iter()
                .position(|&(_, p, q)| !used[p] && !used[q])
                .expect("the current option is free");
            if cost_of(i, j) < cost_of(i, choice[i]) {
                choice[i] = j;
                improved = true;
            }
            let (p, q) = sites(i, choice[i]);
            used[p] = true;
            used[q] = true;
        }
        for i in 0..m {
            for k in i + 1..m {
                let before = cost_of(i, choice[i]) + cost_of(k, choice[k]);
                let (pi, qi) = sites(i, choice[i]);
                let (pk, qk) = sites(k, choice[k]);
                for s in [pi, qi, pk, qk] {
                    used[s] = false;
                }
                let mut best: Option<(usize, usize, usize)> = None;
                let lb_k = opts.lower_bound(k);
                for (a, &(ca, p, q)) in opts.per_pair[i].iter().enumerate() {
                    let limit = best.map_or(before, |b| b.0);
                    if ca + lb_k >= limit {
                        break;
                    }
                    if used[p] || used[q] {
                        continue;
                    }
                    let found = opts.per_pair[k].iter().enumerate().find(|(_, &(_, s, t))| {
                        !used[s] && !used[t] && s != p && s != q && t != p && t != q
                    });
                    if let Some((b, &(cb, _, _))) = found {
                        if ca + cb < limit {
                            best = Some((ca + cb, a, b));
                        }
                    }
                }
                if let Some((_, a, b)) = best {
                    choice[i] = a;
                    choice[k] = b;
                    improved = true;
                }
                let (pi, qi) = sites(i, choice[i]);
                let (pk, qk) = sites(k, choice[k]);
                for s in [pi, qi, pk, qk] {
                    used[s] = true;
                }
            }
        }
        if !improved {
            return (0..m).map(|i| cost_of(i, choice[i])).sum();
        }
    }
}

fn materialize(opts: &Options, choice: &[usize]) -> Vec<[usize; 2]> {
    choice
        .iter()
        .enumerate()
        .map(|(i, &j)| {
            let (_, p, q) = opts.per_pair[i][j];
            [p, q]
        })
        .collect()
}
