use std::fmt::Write as _;

use serde::Serialize;

use crate::bounds::{DigitMode, TableRow};
use crate::error::{Error, Result};
use crate::report::document::{CertificateDocument, Format, OptimizeDocument, RangeDocument};

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::OutOfRange(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::OutOfRange(e.to_string());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::OutOfRange(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn md_table(out: &mut String, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) {
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
    for row in rows {
        let _ = writeln!(out, "| {} |", row.join(" | "));
    }
}

fn candidate_cells(k: u64, m: u64, big_m: u64, case: impl ToString, f: i64) -> Vec<String> {
    vec![k.to_string(), m.to_string(), big_m.to_string(), case.to_string(), f.to_string()]
}

/// Canonical bytes for a certificate. JSON keys follow the struct field order.
pub fn emit_certificate(doc: &CertificateDocument, format: Format) -> Result<String> {
    match format {
        Format::Json => json(doc),
        Format::Csv => {
            let survivors = doc.survivors.iter().map(|c| {
                let mut row = vec!["survivor".to_string()];
                row.extend(candidate_cells(c.k, c.m, c.big_m, c.case, c.f));
                row.push(String::new());
                row
            });
            let excluded = doc.excluded.iter().map(|c| {
                let mut row = vec!["excluded".to_string()];
                row.extend(candidate_cells(c.k, c.m, c.big_m, c.case, c.f));
                row.push(c.reason.clone());
                row
            });
            csv_string(&["status", "k", "m", "M", "case", "f", "reason"], survivors.chain(excluded))
        }
        Format::Md => {
            let mut out = String::new();
            let _ = writeln!(out, "# Exclusion certificate\n");
            let _ = writeln!(out, "- verdict: {}", doc.verdict);
            let _ = writeln!(out, "- r: {}", doc.r);
            let _ = writeln!(out, "- delta: {}", doc.delta);
            let _ = writeln!(out, "- k_max: {}", doc.k_max);
            let _ = writeln!(out, "- filters: {}", doc.filters.names().join(", "));
            if !doc.beyond_baseline.is_empty() {
                let names: Vec<_> = doc.beyond_baseline.iter().map(|f| f.name()).collect();
                let _ = writeln!(out, "- filters beyond the baseline set: {}", names.join(", "));
            }
            let rejected: u64 = doc.threshold_rejection_counts.iter().map(|t| t.count).sum();
            let _ = writeln!(out, "- domain size: {} ({} above threshold)", doc.domain_size, rejected);
            let _ = writeln!(out, "\n## Survivors\n");
            md_table(
                &mut out,
                &["k", "m", "M", "case", "f"],
                doc.survivors.iter().map(|c| candidate_cells(c.k, c.m, c.big_m, c.case, c.f)),
            );
            let _ = writeln!(out, "\n## Excluded\n");
            md_table(
                &mut out,
                &["k", "m", "M", "case", "f", "reason"],
                doc.excluded.iter().map(|c| {
                    let mut row = candidate_cells(c.k, c.m, c.big_m, c.case, c.f);
                    row.push(c.reason.clone());
                    row
                }),
            );
            Ok(out)
        }
    }
}

pub fn parse_certificate(text: &str) -> Result<CertificateDocument> {
    serde_json::from_str(text).map_err(|e| Error::OutOfRange(format!("bad certificate: {e}")))
}

pub fn parse_range(text: &str) -> Result<RangeDocument> {
    serde_json::from_str(text).map_err(|e| Error::OutOfRange(format!("bad range report: {e}")))
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

pub fn emit_range(doc: &RangeDocument, format: Format) -> Result<String> {
    let header = ["r", "kind", "delta", "value", "k_max", "domain_size", "verdict", "survivors"];
    let rows = doc.entries.iter().map(|e| {
        vec![
            e.r.to_string(),
            e.kind.clone(),
            opt(&e.delta),
            opt(&e.value),
            opt(&e.k_max),
            opt(&e.domain_size),
            e.verdict.to_string(),
            e.survivors.len().to_string(),
        ]
    });
    match format {
        Format::Json => json(doc),
        Format::Csv => csv_string(&header, rows),
        Format::Md => {
            let mut out = String::new();
            let _ = writeln!(out, "# Range verification r = {}..{}\n", doc.r_from, doc.r_to);
            let _ = writeln!(out, "- verdict: {}", doc.verdict);
            let _ = writeln!(out, "- filters: {}", doc.filters.names().join(", "));
            if let Some(tail) = &doc.tail_record {
                let _ = writeln!(out, "- tail (derived extension): {}", tail.statement);
            }
            let _ = writeln!(out);
            md_table(&mut out, &header, rows);
            Ok(out)
        }
    }
}

pub fn emit_optimize(doc: &OptimizeDocument, format: Format) -> Result<String> {
    match format {
        Format::Json => json(doc),
        Format::Csv => csv_string(
            &["delta", "verdict"],
            doc.probes.iter().map(|p| vec![p.delta.to_string(), p.verdict.to_string()]),
        ),
        Format::Md => {
            let mut out = String::new();
            let _ = writeln!(out, "# Optimal grid delta for r = {}\n", doc.r);
            let _ = writeln!(out, "- delta: {}", doc.delta);
            let _ = writeln!(out, "- grid step: {}", doc.grid_step);
            let _ = writeln!(out, "- filters: {}", doc.filters.names().join(", "));
            let _ = writeln!(out, "\n## Binding candidates one step below\n");
            md_table(
                &mut out,
                &["k", "m", "M", "case", "f"],
                doc.binding.iter().map(|c| candidate_cells(c.k, c.m, c.big_m, c.case, c.f)),
            );
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct CellDoc {
    value: String,
    kind: &'static str,
    exact: bool,
    text: String,
}

#[derive(Serialize)]
struct RowDoc {
    r: u64,
    p2: CellDoc,
    fpp: CellDoc,
    flags: Vec<String>,
}

fn row_doc(row: &TableRow, mode: DigitMode) -> RowDoc {
    let (places, _) = row.fpp_format(mode);
    RowDoc {
        r: row.r,
        p2: CellDoc {
            value: row.p2.plain(4),
            kind: row.p2.value.kind(),
            exact: row.p2.exact,
            text: row.p2_text(mode),
        },
        fpp: CellDoc {
            value: row.fpp.plain(places),
            kind: row.fpp.value.kind(),
            exact: row.fpp.exact,
            text: row.fpp_text(mode),
        },
        flags: row.flags.clone(),
    }
}

/// Comparison table. An empty row set yields the header alone.
pub fn emit_table(rows: &[TableRow], format: Format, mode: DigitMode) -> Result<String> {
    match format {
        Format::Json => json(&rows.iter().map(|r| row_doc(r, mode)).collect::<Vec<_>>()),
        Format::Csv => csv_string(
            &["r", "p2_value", "p2_kind", "fpp_bound", "fpp_kind", "flags"],
            rows.iter().map(|row| {
                let d = row_doc(row, mode);
                vec![
                    d.r.to_string(),
                    d.p2.value,
                    d.p2.kind.to_string(),
                    d.fpp.value,
                    d.fpp.kind.to_string(),
                    d.flags.join(";"),
                ]
            }),
        ),
        Format::Md => {
            let mut out = String::new();
            md_table(
                &mut out,
                &["r", "ε(ℙ², O(1); r)", "ε(FPP, L₁; r)", "flags"],
                rows.iter()
                    .map(|row| vec![row.r.to_string(), row.p2_text(mode), row.fpp_text(mode), row.flags.join(", ")]),
            );
            Ok(out)
        }
    }
}
