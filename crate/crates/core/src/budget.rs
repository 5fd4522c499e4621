//! Resource budgets for the exhaustive checks.
//!
//! Two independent limits: `enumeration` caps how many valuations a validity
//! check may scan (the check refuses up front if 2^(points · variables)
//! exceeds it), and `search_nodes` caps how many candidate assignments a
//! reduction search may expand. Exceeding a budget is always reported as a
//! distinct outcome, never silently converted into a "no".

/// Limits for valuation enumeration and reduction search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of valuations a validity check may enumerate.
    pub enumeration: u64,
    /// Maximum number of candidate assignments a reduction search may expand.
    pub search_nodes: u64,
}

/// Name of the environment variable that overrides both budget limits.
pub const BUDGET_ENV_VAR: &str = "TRANSFRAME_BUDGET";

pub const DEFAULT_ENUMERATION: u64 = 1 << 24;
pub const DEFAULT_SEARCH_NODES: u64 = 100_000_000;

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enumeration: DEFAULT_ENUMERATION,
            search_nodes: DEFAULT_SEARCH_NODES,
        }
    }
}

impl Budget {
    /// Budget with the same cap on both enumeration and search.
    pub fn uniform(limit: u64) -> Self {
        Budget {
            enumeration: limit,
            search_nodes: limit,
        }
    }

    /// Default budget, overridden by `TRANSFRAME_BUDGET` when set.
    ///
    /// The variable holds a single decimal number applied to both limits;
    /// an unparsable value is ignored in favour of the defaults.
    pub fn from_env() -> Self {
        match std::env::var(BUDGET_ENV_VAR) {
            Ok(raw) => match raw.trim().parse::<u64>() {
                Ok(limit) => Budget::uniform(limit),
                Err(_) => Budget::default(),
            },
            Err(_) => Budget::default(),
        }
    }
}
