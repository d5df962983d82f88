//! Timing of one meeting schedule.
//!
//! A schedule is `L` windows of `2Δ` rounds, one window per ID bit starting
//! from the least significant. In window `b` an agent whose bit `b` is 0
//! stays home. An agent whose bit is 1 leaves through port `p` at offset
//! `2p`, spends offset `2p + 1` at that neighbour and returns through its
//! entry port, then idles at home once its ports are exhausted. Two agents
//! with distinct IDs differ in some bit, so every adjacent pair meets with
//! one of them visiting and the other at home.

use crate::engine::{AgentId, Move};

/// Position within a schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Slot {
    /// Current ID bit for this window.
    pub bit: bool,
    /// Offset inside the `2Δ`-round window.
    pub offset: usize,
}

impl Slot {
    pub fn at(id: AgentId, schedule_offset: u64, max_degree: usize) -> Slot {
        let window = 2 * max_degree as u64;
        Slot {
            bit: id.bit((schedule_offset / window) as u32),
            offset: (schedule_offset % window) as usize,
        }
    }

    /// The port being visited, when the agent is at a neighbour this round.
    pub fn visiting(self, home_degree: usize) -> Option<usize> {
        (self.bit && self.offset % 2 == 1 && self.offset < 2 * home_degree).then_some(self.offset / 2)
    }

    /// Move at the end of this round. `None` means the agent is away from
    /// home without knowing how it arrived, which the schedule never allows.
    pub fn next_move(self, home_degree: usize, entry_port: Option<usize>) -> Option<Move> {
        if !self.bit || self.offset >= 2 * home_degree {
            return Some(Move::Stay);
        }
        if self.offset.is_multiple_of(2) {
            Some(Move::Port(self.offset / 2))
        } else {
            entry_port.map(Move::Port)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn visitor_walks_every_port_and_back() {
        // Degree 2 at home, Δ = 3: window of 6 rounds.
        let id = AgentId(0b1);
        let moves: Vec<_> = (0..6)
            .map(|t| Slot::at(id, t, 3).next_move(2, Some(9)).unwrap())
            .collect();
        assert_eq!(
            moves,
            vec![Move::Port(0), Move::Port(9), Move::Port(1), Move::Port(9), Move::Stay, Move::Stay]
        );
        let visits: Vec<_> = (0..6).map(|t| Slot::at(id, t, 3).visiting(2)).collect();
        assert_eq!(visits, vec![None, Some(0), None, Some(1), None, None]);
    }

    #[test]
    fn zero_bit_waits() {
        // Bit 0 of ID 2 is 0, bit 1 is 1.
        let id = AgentId(2);
        assert!((0..2).all(|t| Slot::at(id, t, 1).next_move(1, None) == Some(Move::Stay)));
        assert_eq!(Slot::at(id, 2, 1).next_move(1, None), Some(Move::Port(0)));
        assert_eq!(Slot::at(id, 3, 1).visiting(1), Some(0));
    }

    #[test]
    fn bits_beyond_the_id_read_as_zero() {
        let id = AgentId(1);
        assert!(!Slot::at(id, 10, 1).bit);
    }
}
