//! Enumeration caps shared by every module.
//!
//! Library entry points take a `&Limits`; the plain variants use
//! [`Limits::default`]. The CLI builds its limits with [`Limits::from_env`],
//! which reads the variables below and falls back to the defaults.
//!
//! | variable                         | field                 | default   |
//! |----------------------------------|-----------------------|-----------|
//! | `DISTGRAPH_MAX_Q`                | `max_q`               | 49        |
//! | `DISTGRAPH_MAX_SPACE_POINTS`     | `max_space_points`    | 10 000    |
//! | `DISTGRAPH_MAX_SET_SIZE`         | `max_set_size`        | 5 000     |
//! | `DISTGRAPH_MAX_EXHAUSTIVE_N`     | `max_exhaustive_n`    | 8         |
//! | `DISTGRAPH_MAX_BRANCH_BOUND_N`   | `max_branch_bound_n`  | 12        |
//! | `DISTGRAPH_MAX_CLOUD_POINTS`     | `max_cloud_points`    | 2^20      |

use serde::{Deserialize, Serialize};

/// Hard ceiling on field size: elements are stored as `u16` indices and the
/// arithmetic tables are `q * q` entries.
pub const FIELD_SIZE_CEILING: u32 = 1024;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest field cardinality `q` accepted by `make_field`.
    pub max_q: u32,
    /// Largest `q^d` that may be enumerated as a whole space.
    pub max_space_points: usize,
    /// Largest point set whose distance histogram may be computed.
    pub max_set_size: usize,
    /// Largest `n` for the exhaustive extremal-number oracle.
    pub max_exhaustive_n: usize,
    /// Largest `n` for branch-and-bound extremal search.
    pub max_branch_bound_n: usize,
    /// Largest Cantor-product cloud.
    pub max_cloud_points: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_q: 49,
            max_space_points: 10_000,
            max_set_size: 5_000,
            max_exhaustive_n: 8,
            max_branch_bound_n: 12,
            max_cloud_points: 1 << 20,
        }
    }
}

impl Limits {
    pub fn from_env() -> Self {
        Self::from_lookup(|key| std::env::var(key).ok())
    }

    fn from_lookup(lookup: impl Fn(&str) -> Option<String>) -> Self {
        fn read<T: std::str::FromStr>(lookup: &impl Fn(&str) -> Option<String>, key: &str, default: T) -> T {
            lookup(key).and_then(|v| v.trim().parse().ok()).unwrap_or(default)
        }
        let d = Limits::default();
        Limits {
            max_q: read(&lookup, "DISTGRAPH_MAX_Q", d.max_q).min(FIELD_SIZE_CEILING),
            max_space_points: read(&lookup, "DISTGRAPH_MAX_SPACE_POINTS", d.max_space_points),
            max_set_size: read(&lookup, "DISTGRAPH_MAX_SET_SIZE", d.max_set_size),
            max_exhaustive_n: read(&lookup, "DISTGRAPH_MAX_EXHAUSTIVE_N", d.max_exhaustive_n),
            max_branch_bound_n: read(&lookup, "DISTGRAPH_MAX_BRANCH_BOUND_N", d.max_branch_bound_n),
            max_cloud_points: read(&lookup, "DISTGRAPH_MAX_CLOUD_POINTS", d.max_cloud_points),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn env_overrides_and_garbage_falls_back() {
        let limits = Limits::from_lookup(|k| match k {
            "DISTGRAPH_MAX_Q" => Some("121".into()),
            "DISTGRAPH_MAX_SET_SIZE" => Some("lots".into()),
            _ => None,
        });
        assert_eq!(limits.max_q, 121);
        assert_eq!(limits.max_set_size, Limits::default().max_set_size);
    }

    #[test]
    fn max_q_is_clamped_to_ceiling() {
        let limits = Limits::from_lookup(|k| (k == "DISTGRAPH_MAX_Q").then(|| "100000".into()));
        assert_eq!(limits.max_q, FIELD_SIZE_CEILING);
    }
}
