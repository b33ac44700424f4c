//! Benchmark results and their table/CSV renderings.
//!
//! Two allocation units appear side by side: `nodes` counts constructions
//! and is the same for every representation of the same shape, `words`
//! weights each construction by its field count and is where the
//! representations actually differ. Memory comparisons read the word
//! columns; node counts are kept for structure checks.

use std::fmt::Write as _;

use crate::run::{ImplTag, WorkloadTag};

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub impl_tag: ImplTag,
    pub workload: WorkloadTag,
    /// Median of the per-repetition times.
    pub seconds: f64,
    pub reps: u32,
    pub per_rep_seconds: Vec<f64>,
    /// Construction counts from the instrumented pass; absent for the
    /// baseline map, which is not instrumented.
    pub allocated_nodes: Option<u64>,
    pub allocated_words: Option<u64>,
    pub live_nodes: Option<u64>,
    pub live_words: Option<u64>,
}

fn median(sorted: &mut [f64]) -> f64 {
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len();
    if n == 0 {
        return 0.0;
    }
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

impl BenchReport {
    pub fn from_reps(
        impl_tag: ImplTag,
        workload: WorkloadTag,
        per_rep_seconds: Vec<f64>,
    ) -> Self {
        let mut sorted = per_rep_seconds.clone();
        BenchReport {
            impl_tag,
            workload,
            seconds: median(&mut sorted),
            reps: per_rep_seconds.len() as u32,
            per_rep_seconds,
            allocated_nodes: None,
            allocated_words: None,
            live_nodes: None,
            live_words: None,
        }
    }
}

const METRICS: [&str; 5] = [
    "time_seconds",
    "allocated_nodes",
    "allocated_words",
    "live_nodes",
    "live_words",
];

fn metric_value(r: &BenchReport, metric: &str) -> Option<f64> {
    match metric {
        "time_seconds" => Some(r.seconds),
        "allocated_nodes" => r.allocated_nodes.map(|v| v as f64),
        "allocated_words" => r.allocated_words.map(|v| v as f64),
        "live_nodes" => r.live_nodes.map(|v| v as f64),
        "live_words" => r.live_words.map(|v| v as f64),
        _ => None,
    }
}

fn header(out: &mut String, seed: Option<u64>) {
    let _ = writeln!(
        out,
        "# corpus: {}",
        match seed {
            Some(s) => format!("generated(seed={s}); word lengths uniform 1..=18 (mean ~9.5)"),
            None => "external file".to_string(),
        }
    );
    let _ = writeln!(
        out,
        "# memory unit: machine words (node constructions weighted by field count); node counts shown for structure"
    );
}

/// One block per workload; implementations as columns; relatives normalized
/// to original = 100% where an original row exists.
pub fn render_table(reports: &[BenchReport], seed: Option<u64>) -> String {
    let mut out = String::new();
    header(&mut out, seed);
    let workloads: Vec<WorkloadTag> = {
        let mut seen = Vec::new();
        for r in reports {
            if !seen.contains(&r.workload) {
                seen.push(r.workload);
            }
        }
        seen
    };
    for workload in workloads {
        let cols: Vec<&BenchReport> =
            reports.iter().filter(|r| r.workload == workload).collect();
        let original = cols.iter().find(|r| r.impl_tag == ImplTag::Original);
        let _ = writeln!(out);
        let _ = writeln!(out, "workload: {workload}");
        let mut line = format!("{:<22}", "");
        for c in &cols {
            let _ = write!(line, "{:>14}", c.impl_tag.to_string());
        }
        let _ = writeln!(out, "{line}");

        let rows: [(&str, &str); 3] = [
            ("time (s)", "time_seconds"),
            ("allocated (words)", "allocated_words"),
            ("live (words)", "live_words"),
        ];
        for (label, metric) in rows {
            let mut line = format!("{label:<22}");
            for c in &cols {
                match metric_value(c, metric) {
                    Some(v) if metric == "time_seconds" => {
                        let _ = write!(line, "{v:>14.4}");
                    }
                    Some(v) => {
                        let _ = write!(line, "{:>14}", v as u64);
                    }
                    None => {
                        let _ = write!(line, "{:>14}", "-");
                    }
                }
            }
            let _ = writeln!(out, "{line}");

            let mut rel_line = format!("{:<22}", format!("relative {}", label.split(' ').next().unwrap()));
            for c in &cols {
                let rel = original
                    .and_then(|o| Some((metric_value(c, metric)?, metric_value(o, metric)?)))
                    .map(|(v, o)| if o == 0.0 { f64::NAN } else { v / o * 100.0 });
                match rel {
                    Some(pct) if pct.is_finite() => {
                        let _ = write!(rel_line, "{:>13.0}%", pct);
                    }
                    _ => {
                        let _ = write!(rel_line, "{:>14}", "-");
                    }
                }
            }
            let _ = writeln!(out, "{rel_line}");
        }
    }
    out
}

/// `impl,workload,metric,value,relative_to_original`; one row per metric,
/// relatives blank where no original run or no value exists.
pub fn render_csv(reports: &[BenchReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "impl,workload,metric,value,relative_to_original");
    for r in reports {
        let original = reports
            .iter()
            .find(|o| o.workload == r.workload && o.impl_tag == ImplTag::Original);
        for metric in METRICS {
            let Some(value) = metric_value(r, metric) else {
                continue;
            };
            let rel = original
                .and_then(|o| metric_value(o, metric))
                .filter(|&o| o != 0.0)
                .map(|o| format!("{:.4}", value / o))
                .unwrap_or_default();
            let shown = if metric == "time_seconds" {
                format!("{value:.6}")
            } else {
                format!("{}", value as u64)
            };
            let _ = writeln!(out, "{},{},{metric},{shown},{rel}", r.impl_tag, r.workload);
        }
    }
    out
}
