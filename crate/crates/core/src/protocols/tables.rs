//! Per-agent stores built up by the protocols.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::engine::{AgentId, Meter};
use crate::oracles::Rational;

/// Edge named by its endpoints' agent IDs, smaller first. Unique without
/// any node labels.
pub type AgentEdge = (AgentId, AgentId);

pub fn agent_edge(a: AgentId, b: AgentId) -> AgentEdge {
    (a.min(b), a.max(b))
}

/// Port-indexed neighbour IDs learned during discovery.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct NeighborTable {
    by_port: Vec<Option<AgentId>>,
}

impl NeighborTable {
    pub fn new(degree: usize) -> Self {
        NeighborTable {
            by_port: vec![None; degree],
        }
    }

    /// Records `id` behind `port` unless that port is already registered.
    pub fn register(&mut self, port: usize, id: AgentId) -> bool {
        match self.by_port.get_mut(port) {
            Some(slot @ None) => {
                *slot = Some(id);
                true
            }
            _ => false,
        }
    }

    pub fn degree(&self) -> usize {
        self.by_port.len()
    }

    pub fn len(&self) -> usize {
        self.by_port.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_complete(&self) -> bool {
        self.by_port.iter().all(Option::is_some)
    }

    pub fn at_port(&self, port: usize) -> Option<AgentId> {
        self.by_port.get(port).copied().flatten()
    }

    pub fn port_of(&self, id: AgentId) -> Option<usize> {
        self.by_port.iter().position(|&x| x == Some(id))
    }

    /// Registered `(port, id)` pairs in port order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, AgentId)> + '_ {
        self.by_port
            .iter()
            .enumerate()
            .filter_map(|(p, id)| id.map(|id| (p, id)))
    }

    pub fn sorted_ids(&self) -> Vec<AgentId> {
        let mut ids: Vec<AgentId> = self.by_port.iter().flatten().copied().collect();
        ids.sort_unstable();
        ids
    }

    pub(crate) fn meter(&self, m: &mut Meter<'_>) {
        let filled = self.len();
        m.ids(filled).ports(filled);
    }
}

/// Common-neighbour counts per incident edge and their sum.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct EdgeVars {
    /// `edge(r_j)` indexed by the port leading to `r_j`.
    pub by_port: Vec<Option<u64>>,
    pub local_sum: u64,
    pub node_triangles: u64,
}

impl EdgeVars {
    pub fn new(degree: usize) -> Self {
        EdgeVars {
            by_port: vec![None; degree],
            local_sum: 0,
            node_triangles: 0,
        }
    }

    pub(crate) fn meter(&self, m: &mut Meter<'_>) {
        for &c in self.by_port.iter().flatten() {
            m.counter(c);
        }
        m.counter(self.local_sum).counter(self.node_triangles);
    }
}

/// IDs paired with their `local_sum`, gathered hop by hop. Entries are only
/// ever added.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FloodTable {
    entries: Vec<(AgentId, u64)>,
}

impl FloodTable {
    pub fn singleton(id: AgentId, value: u64) -> Self {
        FloodTable {
            entries: vec![(id, value)],
        }
    }

    /// Adds every entry of `other` not yet known. Returns whether anything
    /// was added.
    pub fn absorb(&mut self, other: &FloodTable) -> bool {
        if other.entries.iter().all(|(id, _)| self.get(*id).is_some()) {
            return false;
        }
        let mut merged = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    merged.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    merged.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    merged.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        merged.extend_from_slice(&a[i..]);
        merged.extend_from_slice(&b[j..]);
        self.entries = merged;
        true
    }

    pub fn get(&self, id: AgentId) -> Option<u64> {
        self.entries
            .binary_search_by_key(&id, |e| e.0)
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn entries(&self) -> &[(AgentId, u64)] {
        &self.entries
    }

    pub(crate) fn meter(&self, m: &mut Meter<'_>) {
        m.ids(self.entries.len());
        for &(_, v) in &self.entries {
            m.counter(v);
        }
    }
}

/// State for one edge `(self, peer)` owned by the agent with the smaller ID.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrussEdgeState {
    pub peer: AgentId,
    /// Common neighbours of the two endpoints, i.e. the third vertex of
    /// every triangle on this edge.
    pub witnesses: Vec<AgentId>,
    pub h: u32,
    /// `min(h(e'), h(e''))` over the triangles `(e, e', e'')`.
    pub l_set: Vec<u32>,
    /// The co-triangle edges `e'`, `e''`.
    pub n_set: Vec<AgentEdge>,
    pub scheduled: bool,
}

impl TrussEdgeState {
    pub(crate) fn meter(&self, m: &mut Meter<'_>) {
        m.ids(1 + self.witnesses.len() + 2 * self.n_set.len())
            .counter(u64::from(self.h))
            .flags(1);
        for &l in &self.l_set {
            m.counter(u64::from(l));
        }
    }
}

/// Request to reschedule `edge`, sent to its owner after a triangle-mate
/// dropped from `previous_h` to `new_h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Notice {
    pub edge: AgentEdge,
    pub new_h: u32,
    pub previous_h: u32,
}

/// Inputs and result of the triangle-centrality computation at one agent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CentralityWorkspace {
    /// `T(u)` of each neighbour, indexed by port.
    pub neighbor_triangles: Vec<Option<u64>>,
    /// Ports whose neighbour shares at least one common neighbour with us.
    pub in_triangle: Vec<bool>,
    /// `sum of T(u)` over the closed triangle neighbourhood.
    pub closed_sum: u64,
    /// `sum of T(w)` over neighbours in no triangle with us.
    pub outside_sum: u64,
    pub value: Option<Rational>,
}

impl CentralityWorkspace {
    pub(crate) fn meter(&self, m: &mut Meter<'_>) {
        for &t in self.neighbor_triangles.iter().flatten() {
            m.counter(t);
        }
        m.flags(self.in_triangle.len())
            .counter(self.closed_sum)
            .counter(self.outside_sum);
        if let Some(v) = self.value {
            m.counter(*v.numer()).counter(*v.denom());
        }
    }
}
