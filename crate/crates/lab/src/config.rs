//! Suite configuration: which groups, primes, suites, truncation degrees,
//! and budgets a run uses. Everything is deterministic; there is no seed.

use anyhow::{bail, Result};
use pcat_core::flavors::Flavor;
use serde::Deserialize;

pub const ALL_SUITES: &[&str] = &[
    "klein-orbit",
    "pgroup-euler",
    "euler",
    "mobius",
    "inclusions",
    "sfc-counterexample",
    "radical-floor",
    "noncontract-radical",
    "support",
    "slices",
    "structure",
    "extension",
    "homology-props",
    "spectral",
];

/// Groups the inclusion suite exercises by default (the others scale to the
/// full catalog, these carry the heavier homology checks).
pub const INCLUSION_GROUPS: &[&str] = &["s3", "d8", "q8", "a4", "s4", "c2xs3"];

/// Catalog p-groups with their primes, for the closed-form interval suite.
pub const PGROUP_LIST: &[(&str, usize)] = &[
    ("c2", 2),
    ("c4", 2),
    ("c8", 2),
    ("c2xc2", 2),
    ("c3", 3),
    ("c9", 3),
    ("c3xc3", 3),
    ("d8", 2),
    ("q8", 2),
];

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    /// Catalog names or group-file paths.
    pub groups: Vec<String>,
    /// Primes to use; when empty, each group's relevant primes are used.
    pub primes: Vec<usize>,
    /// Suites to run; when empty, all suites run.
    pub suites: Vec<String>,
    pub dmax_poset: usize,
    /// Fusion-side flavors F, O, and the exterior quotient.
    pub dmax_fusion: usize,
    /// Transporter and linking flavors (their nerves grow fastest).
    pub dmax_heavy: usize,
    pub element_cap: usize,
    pub subgroup_cap: usize,
    pub chain_budget: usize,
    pub bar_budget: usize,
    /// Include wall-clock timings in emitted reports.
    pub timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            groups: Vec::new(),
            primes: Vec::new(),
            suites: Vec::new(),
            dmax_poset: 3,
            dmax_fusion: 3,
            dmax_heavy: 2,
            element_cap: pcat_core::group::DEFAULT_ELEMENT_CAP,
            subgroup_cap: pcat_core::lattice::DEFAULT_SUBGROUP_CAP,
            chain_budget: pcat_core::nerve::DEFAULT_CHAIN_BUDGET,
            bar_budget: pcat_core::spectral::DEFAULT_BAR_BUDGET,
            timing: false,
        }
    }
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let mut cfg: SuiteConfig = serde_json::from_str(text)?;
        cfg.apply_env();
        cfg.validate()?;
        Ok(cfg)
    }

    /// `PCAT_BUDGET_CHAINS` overrides the chain budget.
    pub fn apply_env(&mut self) {
        if let Ok(v) = std::env::var("PCAT_BUDGET_CHAINS") {
            if let Ok(n) = v.parse::<usize>() {
                self.chain_budget = n;
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        for &p in &self.primes {
            if !pcat_core::group::is_prime(p) {
                bail!("configured prime {p} is not prime");
            }
        }
        for s in &self.suites {
            if !ALL_SUITES.contains(&s.as_str()) {
                bail!("unknown suite: {s} (known: {})", ALL_SUITES.join(", "));
            }
        }
        if self.element_cap == 0 || self.subgroup_cap == 0 || self.chain_budget == 0 {
            bail!("budgets must be positive");
        }
        Ok(())
    }

    pub fn suite_enabled(&self, name: &str) -> bool {
        self.suites.is_empty() || self.suites.iter().any(|s| s == name)
    }

    pub fn group_names(&self) -> Vec<String> {
        if self.groups.is_empty() {
            crate::catalog::CATALOG.iter().map(|e| e.name.to_string()).collect()
        } else {
            self.groups.clone()
        }
    }

    /// Primes used for one group: the configured list restricted to divisors
    /// of the order, or every prime divisor when none are configured.
    pub fn primes_for(&self, order: usize) -> Vec<usize> {
        let divisors: Vec<usize> = (2..=order)
            .filter(|&p| pcat_core::group::is_prime(p) && order % p == 0)
            .collect();
        if self.primes.is_empty() {
            divisors
        } else {
            self.primes
                .iter()
                .copied()
                .filter(|p| divisors.contains(p))
                .collect()
        }
    }

    pub fn dmax_for(&self, flavor: Flavor) -> usize {
        match flavor {
            Flavor::S => self.dmax_poset,
            Flavor::F | Flavor::O | Flavor::FTilde => self.dmax_fusion,
            Flavor::T | Flavor::L => self.dmax_heavy,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_enables_everything() {
        let cfg = SuiteConfig::default();
        assert!(cfg.suite_enabled("euler"));
        assert!(cfg.suite_enabled("spectral"));
        assert_eq!(cfg.group_names().len(), crate::catalog::CATALOG.len());
        assert_eq!(cfg.primes_for(12), vec![2, 3]);
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let cfg = SuiteConfig::from_json(r#"{"groups":["s3"],"primes":[2],"suites":["euler"]}"#).unwrap();
        assert!(cfg.suite_enabled("euler"));
        assert!(!cfg.suite_enabled("spectral"));
        assert!(SuiteConfig::from_json(r#"{"primes":[4]}"#).is_err());
        assert!(SuiteConfig::from_json(r#"{"suites":["nope"]}"#).is_err());
        assert!(SuiteConfig::from_json(r#"{"bogus":1}"#).is_err());
    }
}
