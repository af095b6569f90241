//! Suite orchestration: expands the configuration into independent check
//! jobs, runs them on a worker pool, and assembles an id-ordered report.

use rayon::prelude::*;

use crate::checks::{self, GroupCtx};
use crate::config::SuiteConfig;
use crate::report::{CheckResult, SuiteReport};

/// Runs every enabled suite. The report is sorted by check id, so two runs
/// with the same configuration emit identical bytes (timings aside).
pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut jobs: Vec<Box<dyn FnOnce() -> Vec<CheckResult> + Send>> = Vec::new();

    if cfg.suite_enabled("klein-orbit") {
        let cfg = cfg.clone();
        jobs.push(Box::new(move || checks::klein_orbit_suite(&cfg)));
    }
    if cfg.suite_enabled("pgroup-euler") {
        let cfg = cfg.clone();
        jobs.push(Box::new(move || checks::pgroup_euler_suite(&cfg)));
    }
    if cfg.suite_enabled("sfc-counterexample") {
        let cfg = cfg.clone();
        jobs.push(Box::new(move || checks::sfc_counterexample_suite(&cfg)));
    }
    if cfg.suite_enabled("spectral") {
        let cfg = cfg.clone();
        jobs.push(Box::new(move || checks::spectral_suite(&cfg)));
    }

    // group-parameterized suites: one job per (group, prime, suite)
    type GroupSuite = (&'static str, fn(&GroupCtx, &SuiteConfig) -> Vec<CheckResult>);
    let group_suites: Vec<GroupSuite> = vec![
        ("euler", checks::euler_suite),
        ("mobius", checks::mobius_suite),
        ("inclusions", checks::inclusions_suite),
        ("radical-floor", checks::radical_floor_suite),
        ("noncontract-radical", checks::noncontract_radical_suite),
        ("support", checks::support_suite),
        ("slices", checks::slices_suite),
        ("structure", checks::structure_suite),
        ("extension", checks::extension_suite),
        ("homology-props", checks::homology_props_suite),
    ];
    let wanted: Vec<GroupSuite> = group_suites
        .into_iter()
        .filter(|(name, _)| cfg.suite_enabled(name))
        .collect();
    if !wanted.is_empty() {
        for name in cfg.group_names() {
            let Ok(group) = crate::catalog::resolve(&name, cfg.element_cap) else {
                let cfg2 = cfg.clone();
                let name2 = name.clone();
                jobs.push(Box::new(move || {
                    vec![checks::check_err(
                        &format!("setup/{name2}"),
                        "group resolves from the catalog or a file",
                        anyhow::anyhow!("cannot resolve group {name2}"),
                    )]
                }));
                let _ = cfg2;
                continue;
            };
            for p in cfg.primes_for(group.order()) {
                for &(suite_name, f) in &wanted {
                    let cfg2 = cfg.clone();
                    let name2 = name.clone();
                    let group2 = group.clone();
                    jobs.push(Box::new(move || {
                        match GroupCtx::new(&name2, &group2, p, &cfg2) {
                            Ok(gc) => f(&gc, &cfg2),
                            Err(e) => vec![checks::check_err(
                                &format!("{suite_name}/{name2}/p{p}"),
                                "subgroup context builds within budget",
                                e,
                            )],
                        }
                    }));
                }
            }
        }
    }

    let checks: Vec<CheckResult> = jobs
        .into_par_iter()
        .flat_map(|job| job())
        .collect();
    let mut report = SuiteReport { checks };
    report.sort();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::CheckStatus;

    #[test]
    fn tiny_config_runs_clean() {
        let cfg = SuiteConfig {
            groups: vec!["s3".into()],
            suites: vec!["mobius".into(), "radical-floor".into()],
            ..SuiteConfig::default()
        };
        let report = run_suite(&cfg);
        // s3 has two primes, two suites each
        assert_eq!(report.checks.len(), 4);
        assert!(report.checks.iter().all(|c| c.status == CheckStatus::Pass));
        // sorted ids
        let ids: Vec<&String> = report.checks.iter().map(|c| &c.id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn empty_suite_list_means_all() {
        let cfg = SuiteConfig {
            groups: vec!["c2".into()],
            suites: vec!["mobius".into()],
            ..SuiteConfig::default()
        };
        let report = run_suite(&cfg);
        assert_eq!(report.checks.len(), 1);
        assert!(!report.any_failure());
    }
}
