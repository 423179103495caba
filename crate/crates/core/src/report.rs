//! Run reports: analysis of many subjects, JSON and flat CSV output.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{analyze, AnalysisConfig, AnalysisError, GraphRecord, Subject};
use crate::corpus::RandomSpec;
use crate::verdict::Status;
use crate::verifier::{LATTICE_TOL, WALK_ENERGY_TOL};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub verdict: f64,
    pub multiplicity: f64,
    pub lattice: f64,
    pub walk_energy: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Limits {
    pub max_n: usize,
    pub vt_limit: usize,
    pub max_sweeps: usize,
    pub lemma_all_pairs_max_n: usize,
    pub lemma_pair_samples: usize,
    pub walk_energy_samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportConfig {
    pub tolerances: Tolerances,
    pub seed: u64,
    pub limits: Limits,
    pub assume_vt: bool,
    pub checks: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub random: Option<RandomSpec>,
}

impl ReportConfig {
    pub fn new(config: &AnalysisConfig, random: Option<RandomSpec>) -> Self {
        Self {
            tolerances: Tolerances {
                verdict: config.tol,
                multiplicity: config.cluster_tol,
                lattice: LATTICE_TOL,
                walk_energy: WALK_ENERGY_TOL,
            },
            seed: config.seed,
            limits: Limits {
                max_n: config.max_n,
                vt_limit: config.vt_limit,
                max_sweeps: config.max_sweeps,
                lemma_all_pairs_max_n: config.lemma_all_pairs_max_n,
                lemma_pair_samples: config.lemma_pair_samples,
                walk_energy_samples: config.walk_energy_samples,
            },
            assume_vt: config.assume_vt,
            checks: config.checks.iter().map(|c| c.to_string()).collect(),
            random,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub graphs: usize,
    pub checks_total: usize,
    pub holds: usize,
    pub skipped: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub config: ReportConfig,
    pub graphs: Vec<GraphRecord>,
    pub summary: Summary,
}

impl RunReport {
    /// Analyzes every subject in parallel; records are ordered by graph id.
    pub fn run(
        subjects: &[Subject],
        config: &AnalysisConfig,
        random: Option<RandomSpec>,
    ) -> Result<Self, AnalysisError> {
        let mut graphs = subjects
            .par_iter()
            .map(|s| analyze(s, config))
            .collect::<Result<Vec<_>, _>>()?;
        graphs.sort_by(|a, b| a.graph_id.cmp(&b.graph_id));
        Ok(Self::from_records(
            ReportConfig::new(config, random),
            graphs,
        ))
    }

    pub fn from_records(config: ReportConfig, graphs: Vec<GraphRecord>) -> Self {
        let mut summary = Summary {
            graphs: graphs.len(),
            ..Summary::default()
        };
        for v in graphs.iter().flat_map(|g| &g.verdicts) {
            summary.checks_total += 1;
            match v.status() {
                Status::Holds => summary.holds += 1,
                Status::Skipped => summary.skipped += 1,
                Status::Failed => summary.failed += 1,
            }
        }
        Self {
            config,
            graphs,
            summary,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    /// One row per verdict.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "graph_id",
            "name",
            "status",
            "lhs",
            "rhs",
            "slack",
            "tol",
            "anchor",
            "reason",
            "dependencies",
        ])?;
        for g in &self.graphs {
            for v in &g.verdicts {
                let status = match v.status() {
                    Status::Holds => "holds",
                    Status::Failed => "failed",
                    Status::Skipped => "skipped",
                };
                w.write_record([
                    g.graph_id.as_str(),
                    v.name.as_str(),
                    status,
                    &fmt_num(v.lhs),
                    &fmt_num(v.rhs),
                    &fmt_num(v.slack),
                    &format!("{:e}", v.tol),
                    v.anchor.as_str(),
                    v.reason.as_deref().unwrap_or(""),
                    &v.dependencies.join("; "),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Writes the JSON report to `path` and the CSV next to it with a `.csv`
    /// extension. Returns the CSV path.
    pub fn write_files(&self, path: &Path) -> io::Result<PathBuf> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, self.to_json() + "\n")?;
        let csv_path = path.with_extension("csv");
        let file = fs::File::create(&csv_path)?;
        self.write_csv(io::BufWriter::new(file))
            .map_err(|e| io::Error::other(e.to_string()))?;
        Ok(csv_path)
    }

    pub fn failed(&self) -> impl Iterator<Item = (&str, &crate::verdict::Verdict)> {
        self.graphs.iter().flat_map(|g| {
            g.verdicts
                .iter()
                .filter(|v| v.status() == Status::Failed)
                .map(move |v| (g.graph_id.as_str(), v))
        })
    }
}

fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        format!("{x:.12e}")
    }
}
