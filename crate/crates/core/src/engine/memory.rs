//! Bit-level accounting of agent-visible memory.
//!
//! Cost model: an agent ID costs `L` bits, a port costs `ceil(log2 Δ)` bits,
//! a counter costs the bit length of its value and a flag costs 1 bit.
//! Engine bookkeeping (node positions) is never counted.

use serde::{Deserialize, Serialize};

use super::ids::bit_length;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostModel {
    pub id_bits: u32,
    pub port_bits: u32,
}

impl CostModel {
    pub fn new(id_bits: u32, max_degree: usize) -> Self {
        CostModel {
            id_bits,
            port_bits: ceil_log2(max_degree as u64),
        }
    }

    pub fn meter(&self) -> Meter<'_> {
        Meter {
            cost: self,
            bits: 0,
        }
    }
}

pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        bit_length(x - 1)
    }
}

/// Running bit total for one store.
#[derive(Debug)]
pub struct Meter<'a> {
    cost: &'a CostModel,
    bits: u64,
}

impl Meter<'_> {
    pub fn ids(&mut self, count: usize) -> &mut Self {
        self.bits += count as u64 * u64::from(self.cost.id_bits);
        self
    }

    pub fn ports(&mut self, count: usize) -> &mut Self {
        self.bits += count as u64 * u64::from(self.cost.port_bits);
        self
    }

    pub fn counter(&mut self, value: u64) -> &mut Self {
        self.bits += u64::from(bit_length(value));
        self
    }

    pub fn flags(&mut self, count: usize) -> &mut Self {
        self.bits += count as u64;
        self
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }
}

/// Metered size of one agent's store. The flood table used for global
/// aggregation is reported apart from everything else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MemoryUsage {
    pub bits: u64,
    pub flood_bits: u64,
    pub flood_entries: u64,
}

impl MemoryUsage {
    pub fn max(self, other: MemoryUsage) -> MemoryUsage {
        MemoryUsage {
            bits: self.bits.max(other.bits),
            flood_bits: self.flood_bits.max(other.flood_bits),
            flood_entries: self.flood_entries.max(other.flood_entries),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cost_model_examples() {
        let cost = CostModel::new(4, 4);
        assert_eq!(cost.meter().bits(), 0);
        assert_eq!(cost.meter().ids(3).ports(3).bits(), 18);
        assert_eq!(cost.meter().counter(6).bits(), 3);
        assert_eq!(cost.meter().flags(2).bits(), 2);
    }

    #[test]
    fn log2_rounding() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(4), 2);
        assert_eq!(ceil_log2(5), 3);
    }
}
