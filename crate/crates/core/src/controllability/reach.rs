//! Which two-qubit observables can be measured when only some Pauli operators
//! are native and the rest must be rotated onto them by gate sequences.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::lie::RANK_TOL;
use crate::error::{validation, Result};
use crate::qcore::linalg::{ensure_unitary, ComplexMatrix, UNITARY_TOL};
use crate::qcore::pauli::{Pauli, PauliOperator};
use crate::qcore::ptm::{ptm_from_unitary_unchecked, ProcessMatrix};

pub const DEFAULT_MAX_DEPTH: usize = 6;

/// A gate with a display name, e.g. `("iSWAP", U)`.
#[derive(Debug, Clone)]
pub struct NamedGate {
    pub name: String,
    pub unitary: ComplexMatrix,
}

impl NamedGate {
    pub fn new(name: impl Into<String>, unitary: ComplexMatrix) -> Self {
        NamedGate {
            name: name.into(),
            unitary,
        }
    }
}

/// A gate word that turns a native observable into a target one:
/// measuring `native` after `gates` (chronological order) measures `result`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub native: PauliOperator,
    pub gates: Vec<String>,
    pub result: PauliOperator,
}

impl Witness {
    /// Dot notation, latest gate leftmost: `Rx.iSWAP`.
    pub fn notation(&self) -> String {
        if self.gates.is_empty() {
            "ID".to_string()
        } else {
            self.gates.iter().rev().cloned().collect::<Vec<_>>().join(".")
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <- {} ({})", self.result, self.native, self.notation())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReachabilityReport {
    /// Pauli operators (unsigned labels) lying in the reached span.
    pub reachable: BTreeSet<String>,
    /// Pauli operators outside the reached span.
    pub unreachable: BTreeSet<String>,
    pub span_dimension: usize,
    /// One shortest witness per reached Pauli label (Clifford gate sets only,
    /// or whenever a word lands exactly on a signed Pauli operator).
    pub witness_sequences: BTreeMap<String, Witness>,
    /// Depth at which exploration stopped.
    pub depth_explored: usize,
    pub clifford: bool,
}

impl ReachabilityReport {
    pub fn is_complete(&self) -> bool {
        self.span_dimension == 16
    }
}

/// Signed permutation form of a Clifford PTM: `P_j ↦ sign · P_{perm[j]}`.
fn clifford_table(p: &ProcessMatrix) -> Option<[(usize, i8); 16]> {
    let mut table = [(0usize, 1i8); 16];
    for j in 0..16 {
        let mut found = None;
        for i in 0..16 {
            let v = p.get(i, j);
            if (v.abs() - 1.0).abs() < 1e-9 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, if v > 0.0 { 1 } else { -1 }));
            } else if v.abs() > 1e-9 {
                return None;
            }
        }
        table[j] = found?;
    }
    Some(table)
}

/// Breadth-first search over gate words `U` of length ≤ `max_depth`,
/// accumulating the real span of `U† M U` for each native `M`.
pub fn measurement_reachability(
    gates: &[NamedGate],
    native: &[PauliOperator],
    max_depth: usize,
) -> Result<ReachabilityReport> {
    if native.is_empty() {
        return validation("at least one native measurement operator is required");
    }
    for g in gates {
        ensure_unitary(&g.unitary, 4, UNITARY_TOL)?;
    }
    // Heisenberg action O ↦ g† O g has PTM R(g)ᵀ.
    let heis: Vec<ProcessMatrix> = gates
        .iter()
        .map(|g| ptm_from_unitary_unchecked(&g.unitary).transpose())
        .collect();
    let tables: Option<Vec<_>> = heis.iter().map(clifford_table).collect();
    match tables {
        Some(t) => Ok(clifford_search(gates, &t, native, max_depth)),
        None => Ok(span_search(gates, &heis, native, max_depth)),
    }
}

fn clifford_search(
    gates: &[NamedGate],
    tables: &[[(usize, i8); 16]],
    native: &[PauliOperator],
    max_depth: usize,
) -> ReachabilityReport {
    let mut witnesses: BTreeMap<String, Witness> = BTreeMap::new();
    let mut seen: HashSet<PauliOperator> = HashSet::new();
    let mut frontier: VecDeque<(PauliOperator, PauliOperator, Vec<usize>)> = VecDeque::new();
    for &m in native {
        if seen.insert(m) {
            witnesses.entry(m.name()).or_insert(Witness {
                native: m,
                gates: vec![],
                result: m,
            });
            frontier.push_back((m, m, vec![]));
        }
    }
    let mut depth = 0;
    while depth < max_depth && witnesses.len() < 16 && !frontier.is_empty() {
        depth += 1;
        let mut next = VecDeque::new();
        for (origin, op, word) in frontier.drain(..) {
            for (gi, table) in tables.iter().enumerate() {
                let (idx, s) = table[op.index()];
                let new_op = PauliOperator::from_index(idx).with_sign(s * op.sign);
                if !seen.insert(new_op) {
                    continue;
                }
                let mut w = Vec::with_capacity(word.len() + 1);
                w.push(gi);
                w.extend_from_slice(&word);
                witnesses.entry(new_op.name()).or_insert_with(|| Witness {
                    native: origin,
                    gates: w.iter().map(|&i| gates[i].name.clone()).collect(),
                    result: new_op,
                });
                next.push_back((origin, new_op, w));
            }
        }
        frontier = next;
    }
    let reachable: BTreeSet<String> = witnesses.keys().cloned().collect();
    let unreachable = all_labels().difference(&reachable).cloned().collect();
    ReachabilityReport {
        span_dimension: reachable.len(),
        reachable,
        unreachable,
        witness_sequences: witnesses,
        depth_explored: depth,
        clifford: true,
    }
}

fn all_labels() -> BTreeSet<String> {
    (0..16).map(|k| PauliOperator::from_index(k).name()).collect()
}

type Vec16 = nalgebra::SVector<f64, 16>;

struct Span {
    basis: Vec<Vec16>,
}

impl Span {
    fn residual(&self, v: &Vec16) -> Vec16 {
        let mut r = *v;
        for _ in 0..2 {
            for b in &self.basis {
                r -= b * b.dot(&r);
            }
        }
        r
    }

    fn insert(&mut self, v: &Vec16) -> bool {
        let n0 = v.norm();
        if n0 < RANK_TOL {
            return false;
        }
        let r = self.residual(&(v / n0));
        let n = r.norm();
        if n < RANK_TOL {
            return false;
        }
        self.basis.push(r / n);
        true
    }

    fn contains(&self, v: &Vec16) -> bool {
        self.residual(v).norm() < RANK_TOL.sqrt()
    }
}

fn key(v: &Vec16) -> Vec<i64> {
    v.iter().map(|x| (x * 1e8).round() as i64).collect()
}

fn as_signed_pauli(v: &Vec16) -> Option<PauliOperator> {
    let mut hit = None;
    for k in 0..16 {
        if (v[k].abs() - 1.0).abs() < 1e-9 {
            if hit.is_some() {
                return None;
            }
            hit = Some(PauliOperator::from_index(k).with_sign(if v[k] > 0.0 { 1 } else { -1 }));
        } else if v[k].abs() > 1e-9 {
            return None;
        }
    }
    hit
}

fn span_search(
    gates: &[NamedGate],
    heis: &[ProcessMatrix],
    native: &[PauliOperator],
    max_depth: usize,
) -> ReachabilityReport {
    let mut span = Span { basis: Vec::new() };
    let mut witnesses: BTreeMap<String, Witness> = BTreeMap::new();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut frontier: Vec<(PauliOperator, Vec16, Vec<usize>)> = Vec::new();
    for &m in native {
        let mut v = Vec16::zeros();
        v[m.index()] = m.sign as f64;
        if seen.insert(key(&v)) {
            span.insert(&v);
            witnesses.entry(m.name()).or_insert(Witness {
                native: m,
                gates: vec![],
                result: m,
            });
            frontier.push((m, v, vec![]));
        }
    }
    let mut depth = 0;
    while depth < max_depth && span.basis.len() < 16 && !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for (origin, v, word) in &frontier {
            for (gi, h) in heis.iter().enumerate() {
                let nv = h.0 * v;
                if !seen.insert(key(&nv)) {
                    continue;
                }
                span.insert(&nv);
                let mut w = Vec::with_capacity(word.len() + 1);
                w.push(gi);
                w.extend_from_slice(word);
                if let Some(p) = as_signed_pauli(&nv) {
                    witnesses.entry(p.name()).or_insert_with(|| Witness {
                        native: *origin,
                        gates: w.iter().map(|&i| gates[i].name.clone()).collect(),
                        result: p,
                    });
                }
                next.push((*origin, nv, w));
            }
        }
        frontier = next;
    }
    let mut reachable = BTreeSet::new();
    let mut unreachable = BTreeSet::new();
    for k in 0..16 {
        let mut e = Vec16::zeros();
        e[k] = 1.0;
        let name = PauliOperator::from_index(k).name();
        if span.contains(&e) {
            reachable.insert(name);
        } else {
            unreachable.insert(name);
        }
    }
    ReachabilityReport {
        reachable,
        unreachable,
        span_dimension: span.basis.len(),
        witness_sequences: witnesses,
        depth_explored: depth,
        clifford: false,
    }
}

/// Apply a witness word to its native operator by explicit matrix conjugation.
pub fn conjugate_by_word(native: &PauliOperator, word: &[&ComplexMatrix]) -> ComplexMatrix {
    // Chronological word g1, g2, …, gm: U = gm ⋯ g1, result U† M U.
    let mut u = ComplexMatrix::identity(4, 4);
    for g in word {
        u = *g * u;
    }
    u.adjoint() * native.matrix() * u
}

/// Native operators of a hidden-qubit pair: `1⊗1`, `σz⊗1`.
pub fn hidden_natives() -> Vec<PauliOperator> {
    vec![
        PauliOperator::new(Pauli::I, Pauli::I),
        PauliOperator::new(Pauli::Z, Pauli::I),
    ]
}

/// Native operators with both qubits read out.
pub fn full_natives() -> Vec<PauliOperator> {
    vec![
        PauliOperator::new(Pauli::I, Pauli::I),
        PauliOperator::new(Pauli::Z, Pauli::I),
        PauliOperator::new(Pauli::I, Pauli::Z),
        PauliOperator::new(Pauli::Z, Pauli::Z),
    ]
}
