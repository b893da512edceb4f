/// Resource guards for exhaustive enumerations.
///
/// Window enumeration and rule-table construction are exponential in the
/// worst case; these bounds make a blow-up fail fast instead of hanging.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Maximum number of candidate windows `|A|^|sites|` a single
    /// enumeration may visit.
    pub max_window_space: u128,
    /// Maximum number of entries in an explicit block-code rule table.
    pub max_rule_table: u128,
    /// Maximum number of nodes in a transition graph.
    pub max_graph_nodes: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_window_space: 1 << 26,
            max_rule_table: 1 << 20,
            max_graph_nodes: 1 << 16,
        }
    }
}

impl Limits {
    pub fn check(&self, what: &'static str, needed: u128) -> crate::Result<()> {
        let limit = match what {
            "window space" => self.max_window_space,
            "rule table" => self.max_rule_table,
            "graph nodes" => self.max_graph_nodes,
            _ => self.max_window_space,
        };
        if needed > limit {
            return Err(crate::Error::ResourceLimit {
                what,
                needed,
                limit,
            });
        }
        Ok(())
    }
}

/// Budget schedule for the emptiness semi-decider: how many enumerator
/// steps to grant at each radius. The default grants `64 * r` steps.
#[derive(Debug, Clone, Copy)]
pub struct BudgetSchedule {
    pub steps_per_radius: u64,
}

impl Default for BudgetSchedule {
    fn default() -> Self {
        BudgetSchedule {
            steps_per_radius: 64,
        }
    }
}

impl BudgetSchedule {
    pub fn at(&self, radius: u32) -> u64 {
        self.steps_per_radius * radius as u64
    }
}
