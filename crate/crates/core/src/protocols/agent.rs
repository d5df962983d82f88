//! The agent program shared by every protocol.
//!
//! An agent runs a fixed sequence of stages. Each stage is one meeting
//! schedule of `2ΔL` rounds (see [`super::schedule`]); what the agent
//! publishes and how it reacts to a meeting depends on the stage. Stages
//! start and end on the common clock, so all agents switch together without
//! coordination.

use std::cell::Cell;
use std::collections::{BTreeMap, BTreeSet};

use super::schedule::Slot;
use super::tables::{
    agent_edge, AgentEdge, CentralityWorkspace, EdgeVars, FloodTable, NeighborTable, Notice, TrussEdgeState,
};
use crate::engine::{ceil_log2, AgentId, Behavior, CostModel, MemoryUsage, Move, ProtocolConfig, RoundContext};
use crate::oracles::{h_index, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Program {
    Neighbors,
    Triangles,
    Truss,
    Centrality { known_total: Option<u64> },
    Lcc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Stage {
    Discover,
    Count,
    Flood { rep: usize },
    ShareTriangles,
    TrussCollect,
    TrussNotify,
    TrussVote { rep: usize },
    Done,
}

impl Stage {
    pub fn label(self) -> &'static str {
        match self {
            Stage::Discover => "discover",
            Stage::Count => "count",
            Stage::Flood { .. } => "flood",
            Stage::ShareTriangles => "share",
            Stage::TrussCollect => "truss_collect",
            Stage::TrussNotify => "truss_notify",
            Stage::TrussVote { .. } => "truss_vote",
            Stage::Done => "done",
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Snapshot {
    id: AgentId,
    bit: bool,
    entry_port: Option<usize>,
    payload: Payload,
}

#[derive(Debug, Clone)]
enum Payload {
    Nothing,
    Neighbors(Vec<AgentId>),
    Flood(FloodTable),
    Triangles(u64),
    Heights(Vec<(AgentEdge, u32)>),
    Notices(Vec<Notice>),
    Vote(bool),
}

pub(crate) struct Agent {
    id: AgentId,
    program: Program,
    config: ProtocolConfig,
    schedule_len: u64,
    stage: Stage,
    stage_start: u64,
    home_degree: usize,

    table: NeighborTable,
    edge_vars: Option<EdgeVars>,
    flood: Option<FloodTable>,
    total: Option<u64>,
    centrality: Option<CentralityWorkspace>,
    lcc: Option<Rational>,

    owned: Vec<TrussEdgeState>,
    known_heights: BTreeMap<AgentEdge, u32>,
    needed: BTreeSet<AgentEdge>,
    outbox: Vec<Notice>,
    change: bool,
    all_done: bool,
    iterations: u32,

    fault: Option<String>,
    metered: Cell<Option<MemoryUsage>>,
}

impl Agent {
    pub fn new(id: AgentId, program: Program, config: ProtocolConfig) -> Self {
        Agent {
            id,
            program,
            config,
            schedule_len: config.schedule_rounds(),
            stage: Stage::Discover,
            stage_start: 0,
            home_degree: 0,
            table: NeighborTable::default(),
            edge_vars: None,
            flood: None,
            total: None,
            centrality: None,
            lcc: None,
            owned: Vec::new(),
            known_heights: BTreeMap::new(),
            needed: BTreeSet::new(),
            outbox: Vec::new(),
            change: false,
            all_done: false,
            iterations: 0,
            fault: None,
            metered: Cell::new(None),
        }
    }

    pub fn stage(&self) -> Stage {
        self.stage
    }

    pub fn fault(&self) -> Option<&str> {
        self.fault.as_deref()
    }

    pub fn table(&self) -> &NeighborTable {
        &self.table
    }

    pub fn edge_vars(&self) -> Option<&EdgeVars> {
        self.edge_vars.as_ref()
    }

    pub fn total(&self) -> Option<u64> {
        self.total
    }

    pub fn centrality(&self) -> Option<&CentralityWorkspace> {
        self.centrality.as_ref()
    }

    pub fn lcc(&self) -> Option<Rational> {
        self.lcc
    }

    pub fn iterations(&self) -> u32 {
        self.iterations
    }

    /// `(edge, h)` for every edge this agent owns.
    pub fn owned_heights(&self) -> impl Iterator<Item = (AgentEdge, u32)> + '_ {
        self.owned.iter().map(move |e| (agent_edge(self.id, e.peer), e.h))
    }

    fn fail(&mut self, message: String) {
        self.fault.get_or_insert(message);
    }

    fn slot(&self, round: u64) -> Slot {
        Slot::at(self.id, round - self.stage_start, self.config.max_degree)
    }

    fn begin(&mut self) {
        match self.stage {
            Stage::Discover => self.table = NeighborTable::new(self.home_degree),
            Stage::Count => {
                if self.program == Program::Truss {
                    self.owned = self
                        .table
                        .entries()
                        .filter(|&(_, peer)| peer > self.id)
                        .map(|(_, peer)| TrussEdgeState {
                            peer,
                            witnesses: Vec::new(),
                            h: 0,
                            l_set: Vec::new(),
                            n_set: Vec::new(),
                            scheduled: true,
                        })
                        .collect();
                } else {
                    self.edge_vars = Some(EdgeVars::new(self.home_degree));
                }
            }
            Stage::Flood { rep: 0 } => {
                let local_sum = self.edge_vars.as_ref().map_or(0, |v| v.local_sum);
                self.flood = Some(FloodTable::singleton(self.id, local_sum));
            }
            Stage::Flood { .. } => {}
            Stage::ShareTriangles => {
                let in_triangle = self
                    .edge_vars
                    .as_ref()
                    .map(|v| v.by_port.iter().map(|c| c.unwrap_or(0) > 0).collect())
                    .unwrap_or_default();
                self.centrality = Some(CentralityWorkspace {
                    neighbor_triangles: vec![None; self.home_degree],
                    in_triangle,
                    ..Default::default()
                });
            }
            Stage::TrussCollect => {
                self.known_heights = self.owned_heights().collect();
                self.needed.clear();
                for e in self.owned.iter_mut().filter(|e| e.scheduled) {
                    e.l_set.clear();
                    e.n_set.clear();
                    for &w in &e.witnesses {
                        for edge in [agent_edge(self.id, w), agent_edge(e.peer, w)] {
                            if edge.0 != self.id {
                                self.needed.insert(edge);
                            }
                        }
                    }
                }
            }
            Stage::TrussNotify => {
                let own: Vec<Notice> = self.outbox.iter().filter(|n| n.edge.0 == self.id).copied().collect();
                for notice in own {
                    self.apply_notice(notice);
                }
            }
            Stage::TrussVote { rep: 0 } => self.all_done = self.change,
            Stage::TrussVote { .. } | Stage::Done => {}
        }
    }

    fn meet(&mut self, port: usize, peer: &Snapshot) {
        match (&self.stage, &peer.payload) {
            (Stage::Discover, _) => {
                self.table.register(port, peer.id);
            }
            (Stage::Count, Payload::Neighbors(theirs)) => {
                if self.table.at_port(port) != Some(peer.id) {
                    self.fail(format!("met {} through port {port}, which is not registered to it", peer.id));
                    return;
                }
                let mine = self.table.sorted_ids();
                let common = sorted_intersection(&mine, theirs);
                match self.program {
                    Program::Truss => {
                        if let Some(e) = self.owned.iter_mut().find(|e| e.peer == peer.id) {
                            e.h = common.len() as u32;
                            e.witnesses = common;
                        }
                    }
                    _ => {
                        if let Some(vars) = &mut self.edge_vars {
                            vars.by_port[port].get_or_insert(common.len() as u64);
                        }
                    }
                }
            }
            (Stage::Flood { .. }, Payload::Flood(theirs)) => {
                if let Some(mine) = &mut self.flood {
                    mine.absorb(theirs);
                }
            }
            (Stage::ShareTriangles, Payload::Triangles(t)) => {
                if let Some(ws) = &mut self.centrality {
                    ws.neighbor_triangles[port].get_or_insert(*t);
                }
            }
            (Stage::TrussCollect, Payload::Heights(theirs)) => {
                for &(edge, h) in theirs {
                    if self.needed.contains(&edge) {
                        self.known_heights.insert(edge, h);
                    }
                }
            }
            (Stage::TrussNotify, Payload::Notices(theirs)) => {
                let me = self.id;
                for &notice in theirs.iter().filter(|n| n.edge.0 == me) {
                    self.apply_notice(notice);
                }
            }
            (Stage::TrussVote { .. }, Payload::Vote(done)) => self.all_done &= *done,
            (stage, _) => self.fail(format!("unexpected payload from {} during {}", peer.id, stage.label())),
        }
    }

    fn apply_notice(&mut self, notice: Notice) {
        let me = self.id;
        match self.owned.iter_mut().find(|e| agent_edge(me, e.peer) == notice.edge) {
            Some(e) => {
                if notice.new_h < e.h && e.h <= notice.previous_h {
                    e.scheduled = true;
                }
            }
            None => self.fail(format!("notice for edge {:?}, which is not owned here", notice.edge)),
        }
    }

    fn finish(&mut self) {
        match self.stage {
            Stage::Discover => {
                if !self.table.is_complete() {
                    self.fail(format!(
                        "discovered {} of {} neighbours",
                        self.table.len(),
                        self.table.degree()
                    ));
                }
            }
            Stage::Count => {
                if let Some(vars) = &mut self.edge_vars {
                    if vars.by_port.iter().any(Option::is_none) {
                        self.fail("missed a neighbour while counting common neighbours".into());
                        return;
                    }
                    vars.local_sum = vars.by_port.iter().flatten().sum();
                    if vars.local_sum % 2 != 0 {
                        let odd = vars.local_sum;
                        self.fail(format!("odd local_sum {odd}"));
                        return;
                    }
                    vars.node_triangles = vars.local_sum / 2;
                    if self.program == Program::Lcc {
                        self.lcc = Some(self.config.lcc.evaluate(vars.node_triangles, self.home_degree));
                    }
                }
            }
            Stage::Flood { rep } if rep + 1 == self.config.diameter_param => {
                let sum = self.flood.as_ref().map_or(0, FloodTable::sum);
                if !sum.is_multiple_of(6) {
                    self.fail(format!("sum of local_sum values {sum} is not divisible by 6"));
                    return;
                }
                self.total = Some(sum / 6);
            }
            Stage::ShareTriangles => self.compute_centrality(),
            Stage::TrussCollect => self.update_heights(),
            Stage::TrussNotify => {
                self.outbox.clear();
                self.change = !self.owned.iter().any(|e| e.scheduled);
            }
            _ => {}
        }
    }

    fn compute_centrality(&mut self) {
        let known = match self.program {
            Program::Centrality { known_total } => known_total,
            _ => None,
        };
        let Some(total) = known.or(self.total) else {
            self.fail("triangle total unavailable".into());
            return;
        };
        self.total = Some(total);
        let own = self.edge_vars.as_ref().map_or(0, |v| v.node_triangles);
        let Some(ws) = &mut self.centrality else { return };
        let Some(neighbor_t) = ws.neighbor_triangles.iter().copied().collect::<Option<Vec<u64>>>() else {
            self.fail("missing a neighbour's triangle count".into());
            return;
        };
        let all: u64 = neighbor_t.iter().sum();
        let in_triangles: u64 = neighbor_t
            .iter()
            .zip(&ws.in_triangle)
            .filter(|(_, &inside)| inside)
            .map(|(t, _)| t)
            .sum();
        ws.closed_sum = own + in_triangles;
        ws.outside_sum = all - in_triangles;
        ws.value = Some(if total == 0 {
            Rational::from_integer(0)
        } else {
            Rational::new(ws.closed_sum + 3 * ws.outside_sum, 3 * total)
        });
    }

    fn update_heights(&mut self) {
        let me = self.id;
        let mut missing = None;
        for e in self.owned.iter_mut().filter(|e| e.scheduled) {
            for &w in &e.witnesses {
                let pair = [agent_edge(me, w), agent_edge(e.peer, w)];
                match (self.known_heights.get(&pair[0]), self.known_heights.get(&pair[1])) {
                    (Some(&a), Some(&b)) => {
                        e.l_set.push(a.min(b));
                        e.n_set.extend(pair);
                    }
                    _ => missing = Some(pair),
                }
            }
            let h = h_index(&e.l_set);
            if h < e.h {
                let previous = e.h;
                e.h = h;
                for &other in &e.n_set {
                    let other_h = self.known_heights[&other];
                    if h < other_h && other_h <= previous {
                        self.outbox.push(Notice {
                            edge: other,
                            new_h: h,
                            previous_h: previous,
                        });
                    }
                }
            } else {
                e.scheduled = false;
            }
        }
        self.outbox.sort_by_key(|n| n.edge);
        self.outbox.dedup_by_key(|n| n.edge);
        if let Some(pair) = missing {
            self.fail(format!("no h value gathered for triangle edges {pair:?}"));
        }
    }

    fn next_stage(&self) -> Stage {
        let last_rep = self.config.diameter_param - 1;
        match (self.stage, self.program) {
            (Stage::Discover, Program::Neighbors) => Stage::Done,
            (Stage::Discover, _) => Stage::Count,
            (Stage::Count, Program::Triangles) => Stage::Flood { rep: 0 },
            (Stage::Count, Program::Truss) => Stage::TrussCollect,
            (Stage::Count, Program::Centrality { known_total: Some(_) }) => Stage::ShareTriangles,
            (Stage::Count, Program::Centrality { known_total: None }) => Stage::Flood { rep: 0 },
            (Stage::Flood { rep }, _) if rep < last_rep => Stage::Flood { rep: rep + 1 },
            (Stage::Flood { .. }, Program::Centrality { .. }) => Stage::ShareTriangles,
            (Stage::TrussCollect, _) => Stage::TrussNotify,
            (Stage::TrussNotify, _) => Stage::TrussVote { rep: 0 },
            (Stage::TrussVote { rep }, _) if rep < last_rep => Stage::TrussVote { rep: rep + 1 },
            (Stage::TrussVote { .. }, _) if !self.all_done => Stage::TrussCollect,
            _ => Stage::Done,
        }
    }

    fn payload(&self) -> Payload {
        match self.stage {
            Stage::Discover | Stage::Done => Payload::Nothing,
            Stage::Count => Payload::Neighbors(self.table.sorted_ids()),
            Stage::Flood { .. } => Payload::Flood(self.flood.clone().unwrap_or_default()),
            Stage::ShareTriangles => Payload::Triangles(self.edge_vars.as_ref().map_or(0, |v| v.node_triangles)),
            Stage::TrussCollect => Payload::Heights(self.owned_heights().collect()),
            Stage::TrussNotify => Payload::Notices(self.outbox.clone()),
            Stage::TrussVote { .. } => Payload::Vote(self.all_done),
        }
    }
}

fn sorted_intersection(a: &[AgentId], b: &[AgentId]) -> Vec<AgentId> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

impl Behavior for Agent {
    type Exchange = Snapshot;

    fn id(&self) -> AgentId {
        self.id
    }

    fn exchange(&self, ctx: &RoundContext) -> Snapshot {
        let bit = self.stage != Stage::Done && self.slot(ctx.round).bit;
        Snapshot {
            id: self.id,
            bit,
            entry_port: ctx.entry_port,
            payload: self.payload(),
        }
    }

    fn step(&mut self, ctx: &RoundContext, peers: &[Snapshot]) -> Move {
        if self.stage == Stage::Done {
            return Move::Stay;
        }
        if ctx.round == 0 {
            self.home_degree = ctx.degree;
        }
        let offset = ctx.round - self.stage_start;
        let last = offset + 1 == self.schedule_len;
        if offset == 0 || last || !peers.is_empty() {
            self.metered.set(None);
        }
        if offset == 0 {
            self.begin();
        }

        let slot = self.slot(ctx.round);
        if slot.bit {
            if let Some(port) = slot.visiting(self.home_degree) {
                for peer in peers.iter().filter(|p| !p.bit) {
                    self.meet(port, peer);
                }
            }
        } else {
            for peer in peers.iter().filter(|p| p.bit) {
                match peer.entry_port {
                    Some(port) => self.meet(port, peer),
                    None => self.fail(format!("visitor {} has no entry port", peer.id)),
                }
            }
        }

        let mv = slot.next_move(self.home_degree, ctx.entry_port).unwrap_or_else(|| {
            self.fail("away from home without an entry port".into());
            Move::Stay
        });

        if last {
            self.finish();
            let next = self.next_stage();
            if next == Stage::TrussCollect {
                self.iterations += 1;
            }
            self.stage = next;
            self.stage_start = ctx.round + 1;
        }
        mv
    }

    fn memory(&self, cost: &CostModel) -> MemoryUsage {
        if let Some(usage) = self.metered.get() {
            return usage;
        }
        let mut m = cost.meter();
        m.ids(1);
        m.flags(ceil_log2(self.schedule_len) as usize);
        self.table.meter(&mut m);
        if let Some(vars) = &self.edge_vars {
            vars.meter(&mut m);
        }
        if let Some(total) = self.total {
            m.counter(total);
        }
        if let Some(ws) = &self.centrality {
            ws.meter(&mut m);
        }
        if let Some(lcc) = self.lcc {
            m.counter(*lcc.numer()).counter(*lcc.denom());
        }
        if self.program == Program::Truss {
            for e in &self.owned {
                e.meter(&mut m);
            }
            m.ids(2 * (self.known_heights.len() + self.needed.len()));
            for &h in self.known_heights.values() {
                m.counter(u64::from(h));
            }
            m.ids(2 * self.outbox.len());
            for n in &self.outbox {
                m.counter(u64::from(n.new_h)).counter(u64::from(n.previous_h));
            }
            m.flags(2);
        }
        let mut flood = cost.meter();
        if let Some(table) = &self.flood {
            table.meter(&mut flood);
        }
        let usage = MemoryUsage {
            bits: m.bits(),
            flood_bits: flood.bits(),
            flood_entries: self.flood.as_ref().map_or(0, |t| t.len() as u64),
        };
        self.metered.set(Some(usage));
        usage
    }
}
