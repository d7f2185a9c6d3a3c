use rayon::prelude::*;

use super::config::{ExperimentConfig, SuiteConfig, SuiteLevel};
use super::experiments::run;
use crate::error::{Error, Result};
use crate::report::{fmt_real, Report};
use crate::seed::Seed;

fn cfg(name: &str, seed: Seed, params: &[(&str, usize)]) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(name);
    c.seed = seed;
    for &(k, v) in params {
        c.set(k, &v.to_string()).expect("suite parameters are valid");
    }
    c
}

/// The experiments of a suite. Smoke covers the exact identities at reduced
/// probe counts; full uses the acceptance parameters and adds the sampled
/// experiments.
pub fn suite_configs(level: SuiteLevel, seed: Seed) -> Vec<ExperimentConfig> {
    match level {
        SuiteLevel::Smoke => vec![
            cfg("pf-closed-form", seed, &[]),
            cfg("distinct-data", seed, &[]),
            cfg("design-error", seed, &[("probes", 1)]),
            cfg("kwise-substitution", seed, &[("probes", 5)]),
            cfg("amplification", seed, &[]),
            cfg("relative-error", seed, &[("probes", 8)]),
            cfg("teleport", seed, &[("probes", 40)]),
            cfg("kwise-independence", seed, &[]),
        ],
        SuiteLevel::Full => vec![
            cfg("pf-closed-form", seed, &[]),
            cfg("distinct-data", seed, &[("d", 4), ("t", 2)]),
            cfg("distinct-data", seed, &[("d", 4), ("t", 3)]),
            cfg("distinct-data", seed, &[("d", 8), ("t", 2)]),
            cfg("distinct-data", seed, &[("d", 8), ("t", 3)]),
            cfg("distinct-data", seed, &[("d", 16), ("t", 2)]),
            cfg("design-error", seed, &[]),
            cfg("clifford-overlap", seed, &[]),
            cfg("kwise-substitution", seed, &[]),
            cfg("amplification", seed, &[]),
            cfg("relative-error", seed, &[("d", 8)]),
            cfg("relative-error", seed, &[("d", 16)]),
            cfg("teleport", seed, &[]),
            cfg("pri-adaptive", seed, &[]),
            cfg("nonadaptive-pru", seed, &[]),
            cfg("kwise-independence", seed, &[]),
        ],
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub level: SuiteLevel,
    pub seed: Seed,
    pub reports: Vec<Report>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(Report::passed)
    }

    /// Reports concatenated without their wall times, plus a summary.
    pub fn body(&self) -> String {
        let mut s = format!("suite = {}\nseed = {}\n", self.level, self.seed);
        for r in &self.reports {
            s.push('\n');
            s.push_str(&r.body());
        }
        let passed = self.reports.iter().filter(|r| r.passed()).count();
        s.push_str(&format!("\nsuite_passed = {passed}/{}\n", self.reports.len()));
        s.push_str(&format!("suite_verdict = {}\n", if self.passed() { "PASS" } else { "FAIL" }));
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("suite = {}\nseed = {}\n", self.level, self.seed);
        for r in &self.reports {
            s.push('\n');
            s.push_str(&r.to_text());
        }
        let passed = self.reports.iter().filter(|r| r.passed()).count();
        let total: f64 = self.reports.iter().map(|r| r.wall_time_s).sum();
        s.push_str(&format!("\nsuite_passed = {passed}/{}\n", self.reports.len()));
        s.push_str(&format!("suite_verdict = {}\n", if self.passed() { "PASS" } else { "FAIL" }));
        s.push_str(&format!("suite_wall_time_s = {}\n", fmt_real(total)));
        s
    }
}

/// Runs a suite; with `parallel` set the experiments run concurrently but
/// the reports keep the suite order.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut configs = suite_configs(config.level, config.seed);
    if !config.only.is_empty() {
        for name in &config.only {
            if !super::EXPERIMENTS.contains(&name.as_str()) {
                return Err(Error::UnknownExperiment(name.clone()));
            }
        }
        configs.retain(|c| config.only.contains(&c.name));
    }
    let reports = if config.parallel {
        configs.par_iter().map(run).collect::<Result<Vec<_>>>()?
    } else {
        configs.iter().map(run).collect::<Result<Vec<_>>>()?
    };
    if let Some(dir) = &config.out_dir {
        std::fs::create_dir_all(dir)?;
        for (i, r) in reports.iter().enumerate() {
            std::fs::write(dir.join(format!("{:02}-{}.txt", i, r.experiment)), r.to_text())?;
        }
    }
    Ok(SuiteReport { level: config.level, seed: config.seed, reports })
}

/// One row of a parameter sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub value: usize,
    pub measured: f64,
    pub bound: Option<f64>,
    pub stderr: f64,
    pub passed: bool,
}

/// Runs `base` once per value of `param`.
pub fn sweep(base: &ExperimentConfig, param: &str, values: &[usize]) -> Result<Vec<SweepRow>> {
    values
        .iter()
        .map(|&v| {
            let mut c = base.clone();
            c.set(param, &v.to_string())?;
            let r = run(&c)?;
            let real = |k: &str| r.get_value(k).and_then(|s| s.parse::<f64>().ok());
            Ok(SweepRow {
                value: v,
                measured: real("measured").ok_or_else(|| Error::Parse("report has no measured value".into()))?,
                bound: real("bound"),
                stderr: real("stderr").unwrap_or(0.0),
                passed: r.passed(),
            })
        })
        .collect()
}

/// CSV with columns `param,measured,bound,stderr,verdict`.
pub fn sweep_csv(param: &str, rows: &[SweepRow]) -> String {
    let mut s = format!("{param},measured,bound,stderr,verdict\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            r.value,
            fmt_real(r.measured),
            r.bound.map(fmt_real).unwrap_or_default(),
            fmt_real(r.stderr),
            if r.passed { "PASS" } else { "FAIL" }
        ));
    }
    s
}
