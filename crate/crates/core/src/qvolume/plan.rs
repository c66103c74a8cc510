//! Transpiling one layer of random pairs into nearest-neighbour operations.
//!
//! Per pair group: hidden qubits swap onto their control sites, the grid is
//! permuted so partners are adjacent, the entangling gates fire, and both
//! moves are undone. Operations address slots: slot `q` is the home position
//! of qubit `q`, and a qubit's position changes only through swaps.

use serde::{Deserialize, Serialize};

use super::assign::assign_meeting_sites;
use super::pairing::{group_pairs, Pairing};
use super::routing::route_permutation;
use super::topology::GridTopology;
use crate::error::{validation, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OpKind {
    HiddenSwap,
    GridSwap,
    Entangle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Op {
    pub kind: OpKind,
    pub slots: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoutingPlan {
    pub topology: GridTopology,
    pub pairs: Vec<[usize; 2]>,
    pub layers: Vec<Vec<Op>>,
    /// Number of pair groups.
    pub groups: usize,
    /// Swap layers of each group's grid permutation (one direction).
    pub route_layers: Vec<usize>,
    pub n_g: usize,
    pub n_s: usize,
}

impl RoutingPlan {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Replay every layer: operations in a layer are disjoint and act on
    /// adjacent slots, each pair is adjacent and entangled exactly once, and
    /// all qubits are back home at the end.
    pub fn validate(&self) -> Result<()> {
        let topo = &self.topology;
        let n = topo.n_qubits();
        let mut content: Vec<usize> = (0..n).collect();
        let mut partner = vec![usize::MAX; n];
        for &[a, b] in &self.pairs {
            if a >= n || b >= n {
                return validation(format!("pair ({a}, {b}) out of range"));
            }
            partner[a] = b;
            partner[b] = a;
        }
        let mut done = vec![false; n];
        let mut gates = 0;
        for (li, layer) in self.layers.iter().enumerate() {
            let mut busy = vec![false; n];
            for op in layer {
                let [s, t] = op.slots;
                if s >= n || t >= n || s == t {
                    return validation(format!("layer {li}: bad slots {:?}", op.slots));
                }
                if std::mem::replace(&mut busy[s], true) || std::mem::replace(&mut busy[t], true) {
                    return validation(format!("layer {li}: slot reused"));
                }
                if !topo.is_adjacent(s, t) {
                    return validation(format!("layer {li}: slots {s} and {t} are not adjacent"));
                }
                let both_control = topo.is_control(s) && topo.is_control(t);
                match op.kind {
                    OpKind::GridSwap if !both_control => {
                        return validation(format!("layer {li}: grid swap touches a hidden slot"));
                    }
                    OpKind::HiddenSwap if both_control => {
                        return validation(format!("layer {li}: hidden swap between control slots"));
                    }
                    OpKind::GridSwap | OpKind::HiddenSwap => content.swap(s, t),
                    OpKind::Entangle => {
                        let (a, b) = (content[s], content[t]);
                        if partner[a] != b {
                            return validation(format!("layer {li}: qubits {a} and {b} are not a pair"));
                        }
                        if std::mem::replace(&mut done[a], true) {
                            return validation(format!("layer {li}: pair ({a}, {b}) entangled twice"));
                        }
                        done[b] = true;
                    }
                }
                gates += 1;
            }
        }
        if let Some(&[a, b]) = self.pairs.iter().find(|p| !done[p[0]]) {
            return validation(format!("pair ({a}, {b}) never entangled"));
        }
        if let Some(s) = (0..n).find(|&s| content[s] != s) {
            return validation(format!("qubit {} not restored to slot {s}", content[s]));
        }
        if gates != self.n_g || self.layers.len() != self.n_s {
            return validation("gate or layer totals do not match the layers");
        }
        Ok(())
    }
}

/// Gate count `n_g`, time steps `n_s` and the full plan for one pairing.
pub fn layer_cost(pairing: &Pairing, topo: &GridTopology) -> Result<(usize, usize, RoutingPlan)> {
    let groups = group_pairs(pairing, topo)?;
    let mut layers: Vec<Vec<Op>> = Vec::new();
    let mut route_layers = Vec::with_capacity(groups.len());
    let op = |kind, slots| Op { kind, slots };
    for group in &groups {
        let assignment = assign_meeting_sites(group, topo)?;

        // Step 2: hidden qubits onto the grid.
        let mut hidden_swaps = Vec::new();
        let mut loop_gates = Vec::new();
        for &[a, b] in group {
            let (ga, gb) = (topo.group_of(a), topo.group_of(b));
            if ga != gb {
                for (x, g) in [(a, ga), (b, gb)] {
                    if !topo.is_control(x) {
                        hidden_swaps.push(op(OpKind::HiddenSwap, [g, x]));
                    }
                }
            } else {
                // Same grid group: one swap if both are hidden, then the pair
                // sits on the control slot and a hidden slot.
                let hidden = if topo.is_control(a) {
                    b
                } else if topo.is_control(b) {
                    a
                } else {
                    hidden_swaps.push(op(OpKind::HiddenSwap, [ga, a]));
                    b
                };
                loop_gates.push(op(OpKind::Entangle, [ga, hidden]));
            }
        }

        // Step 3: grid permutation.
        let k = topo.k;
        let n_sites = topo.n_sites();
        let mut perm = vec![usize::MAX; n_sites];
        let mut taken = vec![false; n_sites];
        let mut cross_gates = Vec::new();
        for (pair, dest) in group.iter().zip(&assignment.sites) {
            if let Some([p, q]) = *dest {
                let (ga, gb) = (topo.group_of(pair[0]), topo.group_of(pair[1]));
                perm[ga] = p;
                perm[gb] = q;
                taken[p] = true;
                taken[q] = true;
                cross_gates.push(op(OpKind::Entangle, [p, q]));
            }
        }
        if assignment.loops_pinned {
            for g in loop_gates.iter().map(|o| o.slots[0]) {
                perm[g] = g;
                taken[g] = true;
            }
        }
        fill_permutation(&mut perm, &mut taken, topo);
        let route = route_permutation(&perm, k)?;
        route_layers.push(route.len());
        let to_ops = |l: &Vec<[usize; 2]>| l.iter().map(|&s| op(OpKind::GridSwap, s)).collect::<Vec<_>>();

        if !hidden_swaps.is_empty() {
            layers.push(hidden_swaps.clone());
        }
        let mut entangle = cross_gates;
        if assignment.loops_pinned {
            entangle.extend(loop_gates);
        } else if !loop_gates.is_empty() {
            layers.push(loop_gates);
        }
        layers.extend(route.iter().map(to_ops));
        if !entangle.is_empty() {
            layers.push(entangle);
        }
        // Steps 5 and 6: undo.
        layers.extend(route.iter().rev().map(to_ops));
        if !hidden_swaps.is_empty() {
            layers.push(hidden_swaps);
        }
    }
    let n_g = layers.iter().map(Vec::len).sum();
    let n_s = layers.len();
    let plan = RoutingPlan {
        topology: *topo,
        pairs: pairing.pairs.clone(),
        layers,
        groups: groups.len(),
        route_layers,
        n_g,
        n_s,
    };
    Ok((n_g, n_s, plan))
}

/// Complete a partial site permutation: unconstrained sites stay put when
/// possible, the rest go to the nearest free destination.
fn fill_permutation(perm: &mut [usize], taken: &mut [bool], topo: &GridTopology) {
    let n = perm.len();
    for s in 0..n {
        if perm[s] == usize::MAX && !taken[s] {
            perm[s] = s;
            taken[s] = true;
        }
    }
    for s in 0..n {
        if perm[s] == usize::MAX {
            let d = (0..n)
                .filter(|&d| !taken[d])
                .min_by_key(|&d| topo.site_distance(s, d))
                .expect("as many free destinations as free origins");
            perm[s] = d;
            taken[d] = true;
        }
    }
}
