use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Distinct identifier carried by a mobile agent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AgentId(pub u64);

impl AgentId {
    /// Number of bits needed to write the ID; 0 for ID 0.
    pub fn bit_length(self) -> u32 {
        bit_length(self.0)
    }

    /// Bit `b` counted from the least significant end. Positions past the
    /// ID's own length read as 0.
    pub fn bit(self, b: u32) -> bool {
        b < 64 && (self.0 >> b) & 1 == 1
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn bit_length(value: u64) -> u32 {
    u64::BITS - value.leading_zeros()
}

/// Width of the ID window: `ceil(log2(max_id + 1))`, at least 1.
pub fn id_window(ids: &[AgentId]) -> u32 {
    ids.iter().map(|id| id.bit_length()).max().unwrap_or(0).max(1)
}

/// How agent IDs are chosen for the `n` agents of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum IdAssignment {
    /// Node `v` receives ID `v + 1`.
    Sequential,
    /// Distinct IDs drawn uniformly from `[0, n^exponent]`.
    Random { seed: u64, exponent: u32 },
}

impl IdAssignment {
    pub fn assign(&self, n: usize) -> Vec<AgentId> {
        match *self {
            IdAssignment::Sequential => (1..=n as u64).map(AgentId).collect(),
            IdAssignment::Random { seed, exponent } => {
                let upper = (n as u64).saturating_pow(exponent.max(1)).max(n as u64 - 1);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut used = BTreeSet::new();
                let mut ids = Vec::with_capacity(n);
                while ids.len() < n {
                    let candidate = rng.random_range(0..=upper);
                    if used.insert(candidate) {
                        ids.push(AgentId(candidate));
                    }
                }
                ids
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bits() {
        assert_eq!(AgentId(0).bit_length(), 0);
        assert_eq!(AgentId(6).bit_length(), 3);
        assert!(AgentId(2).bit(1));
        assert!(!AgentId(2).bit(0));
        assert!(!AgentId(2).bit(7));
        assert_eq!(id_window(&[AgentId(0)]), 1);
        assert_eq!(id_window(&[AgentId(1), AgentId(2), AgentId(3)]), 2);
        assert_eq!(id_window(&[AgentId(64)]), 7);
    }

    #[test]
    fn random_ids_are_distinct_and_bounded() {
        for seed in 0..10 {
            let ids = IdAssignment::Random { seed, exponent: 2 }.assign(12);
            let set: BTreeSet<_> = ids.iter().collect();
            assert_eq!(set.len(), 12);
            assert!(ids.iter().all(|id| id.0 <= 144));
        }
        let ids = IdAssignment::Random { seed: 1, exponent: 1 }.assign(5);
        assert_eq!(ids.iter().collect::<BTreeSet<_>>().len(), 5);
    }
}
