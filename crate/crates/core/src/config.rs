//! Search budgets and run settings shared by the library and the CLI.

use serde::{Deserialize, Serialize};

pub const DEFAULT_MAX_NODES: u64 = 10_000_000;
pub const DEFAULT_MAX_MAPS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Search nodes (value assignments) per enumeration or per sample.
    pub max_nodes: u64,
    /// Maps kept in memory by enumeration, or states visited by a BFS.
    pub max_maps: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: DEFAULT_MAX_NODES, max_maps: DEFAULT_MAX_MAPS }
    }
}

impl Budget {
    pub fn with_nodes(mut self, nodes: u64) -> Self {
        self.max_nodes = nodes;
        self
    }

    pub fn with_maps(mut self, maps: usize) -> Self {
        self.max_maps = maps;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub budget: Budget,
    pub seed: u64,
    pub trials: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { budget: Budget::default(), seed: 0, trials: 100 }
    }
}
