//! Report rendering.
//!
//! JSON is pretty-printed straight from the report so runs with equal data
//! serialize to equal bytes. CSV dumps only the result rows. The table
//! format targets humans and is the one place measured wall time appears
//! on stdout.

use std::fmt::Write;

use crate::args::FormatArg;
use crate::report::{ConfigEcho, Report, Results};

pub fn render(report: &Report, format: FormatArg, wall_ms: f64) -> String {
    match format {
        FormatArg::Json => {
            let mut out = serde_json::to_string_pretty(report).expect("report serializes");
            out.push('\n');
            out
        }
        FormatArg::Csv => render_csv(report),
        FormatArg::Table => render_table(report, wall_ms),
    }
}

fn weight_header(probabilities: bool) -> &'static str {
    if probabilities {
        "probability"
    } else {
        "count"
    }
}

fn csv_weight(probabilities: &Option<Vec<f64>>, counts: &Option<Vec<u64>>, i: usize) -> String {
    if let Some(p) = probabilities {
        p[i].to_string()
    } else if let Some(c) = counts {
        c[i].to_string()
    } else {
        String::new()
    }
}

fn render_csv(report: &Report) -> String {
    let mut out = String::new();
    match &report.results {
        Results::Unadd(r) => {
            let _ = writeln!(out, "a,b,c_in,{}", weight_header(r.probabilities.is_some()));
            for (i, t) in r.triples.iter().enumerate() {
                let w = csv_weight(&r.probabilities, &r.counts, i);
                let _ = writeln!(out, "{},{},{},{w}", t[0], t[1], t[2]);
            }
        }
        Results::Unmul(r) => {
            let _ = writeln!(out, "x,y,{}", weight_header(r.probabilities.is_some()));
            for (i, p) in r.pairs.iter().enumerate() {
                let w = csv_weight(&r.probabilities, &r.counts, i);
                let _ = writeln!(out, "{},{},{w}", p[0], p[1]);
            }
        }
        Results::Verify(r) => {
            let _ = writeln!(out, "check,status,detail");
            for c in &r.checks {
                let _ = writeln!(out, "{},{},{}", c.name, c.status, c.detail);
            }
        }
        Results::Bench(r) => {
            let _ = writeln!(out, "n_bits,backend,wall_ms,peak_rss_kb,support_size");
            for run in &r.runs {
                let rss = run.peak_rss_kb.map(|v| v.to_string()).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{},{:.3},{rss},{}",
                    run.n_bits, run.backend, run.wall_ms, run.support_size
                );
            }
        }
    }
    out
}

fn config_summary(config: &ConfigEcho) -> String {
    let mut parts = Vec::new();
    if let Some(v) = config.bits {
        parts.push(format!("bits={v}"));
    }
    if let Some(v) = config.value {
        parts.push(format!("value={v}"));
    }
    if let Some(v) = &config.mode {
        parts.push(format!("mode={v}"));
    }
    if let Some(v) = config.shots {
        parts.push(format!("shots={v}"));
    }
    if let Some(v) = config.seed {
        parts.push(format!("seed={v}"));
    }
    if let Some(v) = &config.backend {
        parts.push(format!("backend={v}"));
    }
    parts.join(" ")
}

fn grid(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let header: Vec<String> = headers
        .iter()
        .enumerate()
        .map(|(i, h)| format!("{:>1$}", h, widths[i]))
        .collect();
    out.push_str(&header.join("  "));
    out.push('\n');
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:>1$}", c, widths[i]))
            .collect();
        out.push_str(&line.join("  "));
        out.push('\n');
    }
    out
}

fn table_weight(probabilities: &Option<Vec<f64>>, counts: &Option<Vec<u64>>, i: usize) -> String {
    if let Some(p) = probabilities {
        format!("{:.6}", p[i])
    } else if let Some(c) = counts {
        c[i].to_string()
    } else {
        String::new()
    }
}

fn render_table(report: &Report, wall_ms: f64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", report.command, config_summary(&report.config));
    out.push('\n');
    match &report.results {
        Results::Unadd(r) => {
            if !r.triples.is_empty() {
                let rows: Vec<Vec<String>> = r
                    .triples
                    .iter()
                    .enumerate()
                    .map(|(i, t)| {
                        vec![
                            t[0].to_string(),
                            t[1].to_string(),
                            t[2].to_string(),
                            table_weight(&r.probabilities, &r.counts, i),
                        ]
                    })
                    .collect();
                let weight = weight_header(r.probabilities.is_some());
                out.push_str(&grid(&["a", "b", "c_in", weight], &rows));
                out.push('\n');
            }
            let _ = writeln!(
                out,
                "cardinality: {} (expected {})",
                r.cardinality, r.expected_cardinality
            );
        }
        Results::Unmul(r) => {
            if !r.pairs.is_empty() {
                let rows: Vec<Vec<String>> = r
                    .pairs
                    .iter()
                    .enumerate()
                    .map(|(i, p)| {
                        vec![
                            p[0].to_string(),
                            p[1].to_string(),
                            table_weight(&r.probabilities, &r.counts, i),
                        ]
                    })
                    .collect();
                let weight = weight_header(r.probabilities.is_some());
                out.push_str(&grid(&["x", "y", weight], &rows));
                out.push('\n');
            }
            let _ = writeln!(out, "accepted pairs: {}", r.cardinality);
            if let Some(by_reason) = &r.rejection_probabilities {
                let parts: Vec<String> = by_reason
                    .iter()
                    .map(|(k, v)| format!("{k}={v:.6}"))
                    .collect();
                let _ = writeln!(
                    out,
                    "rejected probability by predicate: {}",
                    parts.join(" ")
                );
            }
            if let Some(by_reason) = &r.rejection_counts {
                let parts: Vec<String> =
                    by_reason.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(out, "rejected shots by predicate: {}", parts.join(" "));
            }
        }
        Results::Verify(r) => {
            for c in &r.checks {
                let _ = writeln!(out, "{:<28} {:<4}  {}", c.name, c.status, c.detail);
            }
        }
        Results::Bench(r) => {
            let rows: Vec<Vec<String>> = r
                .runs
                .iter()
                .map(|run| {
                    vec![
                        run.n_bits.to_string(),
                        run.backend.clone(),
                        format!("{:.3}", run.wall_ms),
                        run.peak_rss_kb
                            .map(|v| v.to_string())
                            .unwrap_or_else(|| "-".to_string()),
                        run.support_size.to_string(),
                    ]
                })
                .collect();
            out.push_str(&grid(
                &["n_bits", "backend", "wall_ms", "peak_rss_kb", "support"],
                &rows,
            ));
        }
    }
    if let Some(v) = &report.oracle_verdict {
        let _ = writeln!(out, "oracle verdict: {v}");
    }
    if let Some(p) = report.post_selection_probability {
        let _ = writeln!(out, "post-selection probability: {p:.6}");
    }
    let _ = writeln!(out, "timing_ms: {wall_ms:.3}");
    out
}
