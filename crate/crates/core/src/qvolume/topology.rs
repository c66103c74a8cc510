//! k×k grid of control qubits, each with h hidden qubits attached in a star.
//!
//! Qubit numbering: control qubits are `0..k²` with site `s = row·k + col`;
//! the hidden qubits of site `s` are `k² + s·h + j` for `j < h`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{validation, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridTopology {
    pub k: usize,
    pub h: usize,
}

/// Resource and connectivity figures of a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TopologyMetrics {
    /// Control lines per qubit.
    pub n_c: f64,
    /// Readout resonators per qubit.
    pub n_r: f64,
    /// Largest distance from any qubit to a control qubit.
    pub d_c: usize,
    /// Mean graph distance over distinct qubit pairs.
    pub d_bar: f64,
    pub control_lines: usize,
    pub readout_lines: usize,
}

impl GridTopology {
    pub fn new(k: usize, h: usize) -> Result<Self> {
        if k == 0 {
            return validation("grid side k must be at least 1");
        }
        Ok(GridTopology { k, h })
    }

    pub fn n_sites(&self) -> usize {
        self.k * self.k
    }

    pub fn n_qubits(&self) -> usize {
        (self.h + 1) * self.n_sites()
    }

    pub fn n_control(&self) -> usize {
        self.n_sites()
    }

    pub fn n_hidden(&self) -> usize {
        self.h * self.n_sites()
    }

    pub fn is_control(&self, q: usize) -> bool {
        q < self.n_sites()
    }

    /// Grid group (= site of the control qubit) that `q` belongs to.
    pub fn group_of(&self, q: usize) -> usize {
        if self.is_control(q) {
            q
        } else {
            (q - self.n_sites()) / self.h
        }
    }

    pub fn hidden_qubit(&self, site: usize, j: usize) -> usize {
        self.n_sites() + site * self.h + j
    }

    pub fn site_coords(&self, s: usize) -> (usize, usize) {
        (s / self.k, s % self.k)
    }

    pub fn site_distance(&self, a: usize, b: usize) -> usize {
        let (ra, ca) = self.site_coords(a);
        let (rb, cb) = self.site_coords(b);
        ra.abs_diff(rb) + ca.abs_diff(cb)
    }

    pub fn grid_neighbors(&self, s: usize) -> Vec<usize> {
        let (r, c) = self.site_coords(s);
        let k = self.k;
        let mut out = Vec::with_capacity(4);
        if r > 0 {
            out.push(s - k);
        }
        if c > 0 {
            out.push(s - 1);
        }
        if c + 1 < k {
            out.push(s + 1);
        }
        if r + 1 < k {
            out.push(s + k);
        }
        out
    }

    pub fn neighbors(&self, q: usize) -> Vec<usize> {
        if self.is_control(q) {
            let mut out = self.grid_neighbors(q);
            out.extend((0..self.h).map(|j| self.hidden_qubit(q, j)));
            out
        } else {
            vec![self.group_of(q)]
        }
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.n_qubits()).map(|q| self.neighbors(q)).collect()
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        match (self.is_control(a), self.is_control(b)) {
            (true, true) => self.site_distance(a, b) == 1,
            (true, false) => self.group_of(b) == a,
            (false, true) => self.group_of(a) == b,
            (false, false) => false,
        }
    }

    /// Drives plus one line per grid coupler and per hidden coupler.
    pub fn control_lines(&self) -> usize {
        let k = self.k;
        k * k + 2 * k * (k - 1) + self.h * k * k
    }
}

pub fn topology_metrics(topo: &GridTopology) -> TopologyMetrics {
    let n = topo.n_qubits();
    let adj = topo.adjacency();
    let mut total = 0u64;
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for src in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        total += dist.iter().map(|&d| d as u64).sum::<u64>();
    }
    let d_bar = if n > 1 {
        total as f64 / (n * (n - 1)) as f64
    } else {
        0.0
    };
    let control_lines = topo.control_lines();
    TopologyMetrics {
        n_c: control_lines as f64 / n as f64,
        n_r: 1.0 / (topo.h + 1) as f64,
        d_c: topo.h.min(1),
        d_bar,
        control_lines,
        readout_lines: topo.n_control(),
    }
}
