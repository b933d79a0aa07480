//! Benchmark harness mirroring the published results table.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{PrepError, Result};
use crate::generators::{BenchmarkSpec, GeneratorRegistry};
use crate::synthesis::{synthesize, SynthesisMode};
use crate::tolerance::ToleranceConfig;

pub const DEFAULT_APPROX_THRESHOLD: f64 = 0.98;

pub const CSV_HEADER: &str =
    "name,n_qudits,dims,mode,nodes_tree,distinct_c,operations,controls_median,time_s,fidelity";

/// One averaged row per (benchmark, mode).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub name: String,
    pub n_qudits: usize,
    pub dims: Vec<usize>,
    pub mode: String,
    pub node_count_tree: f64,
    pub distinct_weights: f64,
    pub op_count: f64,
    pub control_median: f64,
    pub elapsed_seconds: f64,
    pub fidelity: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum SpecFile {
    List(Vec<BenchmarkSpec>),
    Suite {
        #[serde(default)]
        threshold: Option<f64>,
        benchmarks: Vec<BenchmarkSpec>,
    },
}

#[derive(Debug, Clone)]
pub struct BenchSuite {
    pub threshold: f64,
    pub benchmarks: Vec<BenchmarkSpec>,
}

impl BenchSuite {
    /// The twelve structured rows and five random rows of the results table.
    pub fn table1() -> Self {
        let small = [3, 6, 2];
        let medium = [9, 5, 6, 3];
        let large = [4, 7, 4, 4, 3, 5];
        let mut benchmarks = Vec::new();
        for family in ["embedded_w", "ghz", "w"] {
            for dims in [&small[..], &medium[..], &large[..]] {
                benchmarks.push(BenchmarkSpec::new(family, dims));
            }
        }
        for dims in [&small[..], &medium[..], &[6, 6, 5, 3, 3][..], &[5, 4, 2, 5, 5, 2][..], &large[..]] {
            benchmarks.push(BenchmarkSpec::new("random", dims));
        }
        Self { threshold: DEFAULT_APPROX_THRESHOLD, benchmarks }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: SpecFile =
            serde_json::from_str(text).map_err(|e| PrepError::Parse(format!("bench spec: {e}")))?;
        let (threshold, benchmarks) = match parsed {
            SpecFile::List(b) => (DEFAULT_APPROX_THRESHOLD, b),
            SpecFile::Suite { threshold, benchmarks } => {
                (threshold.unwrap_or(DEFAULT_APPROX_THRESHOLD), benchmarks)
            }
        };
        Ok(Self { threshold, benchmarks })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BenchConfig {
    pub runs: usize,
    pub base_seed: u64,
}

/// Runs every benchmark in exact and approximated mode, averaging over runs.
/// Random families are reseeded per run with `seed + run`.
pub fn run_suite(
    suite: &BenchSuite,
    config: BenchConfig,
    registry: &GeneratorRegistry,
    tol: &ToleranceConfig,
) -> Result<Vec<BenchRow>> {
    if config.runs == 0 {
        return Err(PrepError::Parameter("runs must be at least 1".into()));
    }
    let modes = [("exact", SynthesisMode::exact()), ("approx", SynthesisMode::approx(suite.threshold))];
    let mut rows = Vec::new();
    for spec in &suite.benchmarks {
        let reg = spec.register()?;
        let generator = registry.get(&spec.family)?;
        for (mode_name, mode) in modes {
            let mut sums = [0.0f64; 6];
            for run in 0..config.runs {
                let seed = spec.seed.unwrap_or(config.base_seed).wrapping_add(run as u64);
                let state = generator.generate(&reg, seed);
                let out = synthesize(&state, &mode, tol)?;
                let r = &out.report;
                let floor = mode.variant.threshold() - tol.eps_verify;
                if r.fidelity < floor {
                    return Err(PrepError::Contract(format!(
                        "{} {:?} {mode_name}: verified fidelity {} below {floor}",
                        spec.family, spec.dims, r.fidelity
                    )));
                }
                let nodes = match mode_name {
                    "exact" => r.metrics.tree_node_count,
                    _ => r.metrics.reduced_node_count,
                };
                let values = [
                    nodes as f64,
                    r.metrics.distinct_weight_count as f64,
                    r.operations as f64,
                    r.controls_median as f64,
                    r.elapsed_seconds,
                    r.fidelity,
                ];
                for (s, v) in sums.iter_mut().zip(values) {
                    *s += v;
                }
            }
            let n = config.runs as f64;
            let [nodes, distinct, ops, controls, time, fid] = sums.map(|s| s / n);
            rows.push(BenchRow {
                name: spec.family.clone(),
                n_qudits: reg.num_qudits(),
                dims: spec.dims.clone(),
                mode: mode_name.to_string(),
                node_count_tree: nodes,
                distinct_weights: distinct,
                op_count: ops,
                control_median: controls,
                elapsed_seconds: time,
                fidelity: fid,
            });
        }
    }
    Ok(rows)
}

fn dims_label(dims: &[usize]) -> String {
    dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("x")
}

fn cells(row: &BenchRow, with_time: bool) -> [String; 10] {
    [
        row.name.clone(),
        row.n_qudits.to_string(),
        dims_label(&row.dims),
        row.mode.clone(),
        format!("{:.2}", row.node_count_tree),
        format!("{:.2}", row.distinct_weights),
        format!("{:.2}", row.op_count),
        format!("{:.2}", row.control_median),
        format!("{:.3}", if with_time { row.elapsed_seconds } else { 0.0 }),
        format!("{:.6}", row.fidelity),
    ]
}

pub fn render_csv(rows: &[BenchRow], with_time: bool) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&cells(row, with_time).join(","));
        out.push('\n');
    }
    out
}

pub fn render_markdown(rows: &[BenchRow], with_time: bool) -> String {
    let header: Vec<&str> = CSV_HEADER.split(',').collect();
    let mut out = String::new();
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
    for row in rows {
        let _ = writeln!(out, "| {} |", cells(row, with_time).join(" | "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table1_suite_layout() {
        let suite = BenchSuite::table1();
        assert_eq!(suite.benchmarks.len(), 14);
        assert_eq!(suite.threshold, 0.98);
        let tree: Vec<usize> = suite
            .benchmarks
            .iter()
            .map(|b| crate::dd::tree_node_count(&b.register().unwrap()))
            .collect();
        assert_eq!(&tree[9..], &[58, 1135, 2383, 3266, 8657]);
    }

    #[test]
    fn spec_file_forms() {
        let list = BenchSuite::from_json(r#"[{"family":"ghz","dims":[3,3]}]"#).unwrap();
        assert_eq!(list.threshold, 0.98);
        let suite = BenchSuite::from_json(
            r#"{"threshold":0.9,"benchmarks":[{"family":"random","dims":[2,3],"seed":4}]}"#,
        )
        .unwrap();
        assert_eq!(suite.threshold, 0.9);
        assert_eq!(suite.benchmarks[0].seed, Some(4));
        assert!(BenchSuite::from_json(r#"{"nope":1}"#).is_err());
    }

    #[test]
    fn small_suite_renders() {
        let suite = BenchSuite::from_json(r#"[{"family":"ghz","dims":[3,6,2]},{"family":"random","dims":[3,6,2]}]"#).unwrap();
        let rows = run_suite(
            &suite,
            BenchConfig { runs: 2, base_seed: 1 },
            &GeneratorRegistry::with_builtins(),
            &ToleranceConfig::default(),
        )
        .unwrap();
        assert_eq!(rows.len(), 4);
        let csv = render_csv(&rows, false);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(lines.next(), Some("ghz,3,3x6x2,exact,58.00,3.00,19.00,1.00,0.000,1.000000"));
        let md = render_markdown(&rows, false);
        assert_eq!(md.lines().count(), 6);
        assert!(md.lines().all(|l| l.starts_with('|') && l.ends_with('|')));
    }
}
