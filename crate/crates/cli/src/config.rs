//! Run configuration shared by the subcommands.

use joseph_core::lie::AlgebraKind;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    So,
    Sp,
    Sl,
}

impl Family {
    pub fn kind(self, n: usize) -> AlgebraKind {
        match self {
            Family::So => AlgebraKind::SO(n),
            Family::Sp => AlgebraKind::SP(n),
            Family::Sl => AlgebraKind::SL(n),
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s.to_ascii_lowercase().as_str() {
            "so" => Some(Family::So),
            "sp" => Some(Family::Sp),
            "sl" => Some(Family::Sl),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::So => "so",
            Family::Sp => "sp",
            Family::Sl => "sl",
        }
    }

    /// The theorem range of the family parameter.
    pub fn default_range(self) -> (usize, usize) {
        match self {
            Family::So => (5, 8),
            Family::Sp => (2, 4),
            Family::Sl => (3, 6),
        }
    }

    pub fn in_theorem_range(self, n: usize) -> bool {
        match self {
            Family::So => n >= 5,
            Family::Sp => n >= 2,
            Family::Sl => n >= 3,
        }
    }
}

/// Inclusive parameter range, parsed from `N` or `A..B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NRange {
    pub min: usize,
    pub max: usize,
}

impl NRange {
    pub fn parse(s: &str) -> Option<NRange> {
        if let Some((a, b)) = s.split_once("..") {
            let min = a.trim().parse().ok()?;
            let max = b.trim().parse().ok()?;
            if min <= max {
                return Some(NRange { min, max });
            }
            return None;
        }
        let n: usize = s.trim().parse().ok()?;
        Some(NRange { min: n, max: n })
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.min..=self.max
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

/// Everything a run depends on; serialized into the report so runs are
/// reproducible from their own output.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub kinds: Vec<Family>,
    pub ranges: Vec<NRange>,
    pub seed: u64,
    pub seeds_per_check: u32,
    pub format: Format,
    pub jobs: usize,
    pub max_v_dim: usize,
    pub allow_out_of_range: bool,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.kinds.is_empty() || self.kinds.len() != self.ranges.len() {
            return Err("kinds and ranges must pair up".into());
        }
        for (f, r) in self.kinds.iter().zip(&self.ranges) {
            for n in r.iter() {
                if !self.allow_out_of_range && !f.in_theorem_range(n) {
                    return Err(format!(
                        "{}({}) is outside the theorem range; pass --allow-out-of-range to force",
                        f.name(),
                        n
                    ));
                }
                if f.kind(n).v_dim() > self.max_v_dim {
                    return Err(format!(
                        "{}({}) exceeds the configured dimension ceiling {}",
                        f.name(),
                        n,
                        self.max_v_dim
                    ));
                }
            }
        }
        if self.jobs == 0 {
            return Err("--jobs must be at least 1".into());
        }
        Ok(())
    }
}
