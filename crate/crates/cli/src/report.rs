//! Report documents and their text, JSON and CSV renderings.
//!
//! All three formats show rationals as `a/b` strings (integers without the
//! denominator), so the numeric content is identical across formats. The only
//! decimals ever emitted are the directed-rounded curvature bounds, which
//! carry an explicit exactness marker.

use lptorsion_core::certifier::{
    Certificate, ComparisonRecord, ExactnessReport, Segment, TorsionTable, WindowReport,
};
use lptorsion_core::spectra::{AnosovSplit, CriticalExponents, FlowStatus, PinchBound};
use lptorsion_core::{ExtendedExponent, ExteriorIndex, Rational};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub degree: usize,
    pub sigma: Vec<Rational>,
    pub criticals: CriticalExponents,
}

/// Everything a command can print.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Validation { name: String, dim: usize, weights: Vec<Rational>, trace: Rational },
    /// `include_sigma` distinguishes the `spectrum` view from plain `critical`.
    Spectra { include_sigma: bool, entries: Vec<SpectrumEntry> },
    Split(AnosovSplit),
    Status { degree: usize, exponent: ExtendedExponent, status: FlowStatus },
    Certificate { degree: usize, exponent: ExtendedExponent, certificate: Certificate },
    Tables(Vec<TorsionTable>),
    Exactness(ExactnessReport),
    Window(WindowReport),
    Compare(ComparisonRecord),
}

pub fn render(document: &Document, format: Format) -> String {
    match format {
        Format::Text => render_text(document),
        Format::Json => {
            let mut out = serde_json::to_string_pretty(&render_json(document))
                .expect("static document structure");
            out.push('\n');
            out
        }
        Format::Csv => render_csv(document),
    }
}

fn rationals(list: &[Rational]) -> String {
    list.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
}

fn criticals_text(criticals: &CriticalExponents) -> String {
    match criticals {
        CriticalExponents::AllCritical => "all".to_string(),
        CriticalExponents::Finite(list) if list.is_empty() => "none".to_string(),
        CriticalExponents::Finite(list) => rationals(list),
    }
}

fn monomials(list: &[ExteriorIndex]) -> String {
    list.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
}

fn pinch_text(bound: &PinchBound) -> String {
    match bound {
        PinchBound::Exact(_) => format!("{bound} (exact)"),
        PinchBound::RoundedDown(_) => format!("{bound} (rounded down)"),
        PinchBound::RoundedUp(_) => format!("{bound} (rounded up)"),
        PinchBound::Unbounded => "inf".to_string(),
    }
}

/// Pads three-column rows so certificate labels and evidence line up.
fn aligned(rows: &[(String, String, String)]) -> String {
    let w0 = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    let w1 = rows.iter().map(|r| r.1.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (a, b, c) in rows {
        out.push_str(&format!("  {a:<w0$}  {b:<w1$}  {c}\n"));
    }
    out
}

fn table_rows(table: &TorsionTable) -> Vec<(String, String, String)> {
    table
        .segments
        .iter()
        .map(|(segment, certificate)| {
            (
                segment.to_string(),
                certificate.label().to_string(),
                certificate.evidence_summary(),
            )
        })
        .collect()
}

fn render_text(document: &Document) -> String {
    match document {
        Document::Validation { name, dim, weights, trace } => {
            let weights: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
            format!(
                "name: {name}\ndim: {dim}\nweights: {}\nh: {trace}\nvalidation: ok\n",
                weights.join(" ")
            )
        }
        Document::Spectra { include_sigma, entries } => {
            if !include_sigma && entries.len() == 1 {
                return format!("{}\n", criticals_text(&entries[0].criticals));
            }
            let mut out = String::new();
            for entry in entries {
                if *include_sigma {
                    out.push_str(&format!("degree {}\n", entry.degree));
                    out.push_str(&format!("  sigma: {}\n", rationals(&entry.sigma)));
                    out.push_str(&format!("  criticals: {}\n", criticals_text(&entry.criticals)));
                } else {
                    out.push_str(&format!(
                        "degree {}: {}\n",
                        entry.degree,
                        criticals_text(&entry.criticals)
                    ));
                }
            }
            out
        }
        Document::Split(split) => format!(
            "degree {} at p = {}\nthreshold: {}\nplus ({}): {}\nminus ({}): {}\nspectral gap: {}\n",
            split.degree,
            split.exponent,
            split.threshold,
            split.plus.len(),
            monomials(&split.plus),
            split.minus.len(),
            monomials(&split.minus),
            split.spectral_gap,
        ),
        Document::Status { degree, exponent, status } => {
            format!("degree {degree} at p = {exponent}: {status}\n")
        }
        Document::Certificate { degree, exponent, certificate } => format!(
            "degree {degree} at p = {exponent}: {}\nevidence: {}\n",
            certificate.label(),
            certificate.evidence_summary()
        ),
        Document::Tables(tables) => {
            let mut out = String::new();
            for (pos, table) in tables.iter().enumerate() {
                if pos > 0 {
                    out.push('\n');
                }
                out.push_str(&format!(
                    "degree {} (breakpoints: {})\n",
                    table.degree,
                    if table.breakpoints.is_empty() {
                        "none".to_string()
                    } else {
                        rationals(&table.breakpoints)
                    }
                ));
                out.push_str(&aligned(&table_rows(table)));
            }
            out
        }
        Document::Exactness(report) => format!(
            "classification: {}\nn1 dim: {}\nn2 dim: {}\nwedge rank: {}\ntau: {}\ndelta tau: {}\n",
            report.classification,
            report.n1_dim,
            report.n2_dim,
            report.wedge_rank,
            report.tau,
            report.delta_tau,
        ),
        Document::Window(report) => {
            let rows: Vec<(String, String, String)> = report
                .segments
                .iter()
                .map(|(segment, certificate)| {
                    (
                        segment.to_string(),
                        certificate.label().to_string(),
                        certificate.evidence_summary(),
                    )
                })
                .collect();
            format!(
                "degree {}: window (1, {}), exception {}\n{}",
                report.degree,
                report.window_sup,
                report.exception,
                aligned(&rows)
            )
        }
        Document::Compare(record) => format!(
            "degree {}, delta {}\ncurvature bound: {}\ncertified bound: {}\ndifference: {}\n",
            record.degree,
            record.delta,
            pinch_text(&record.curvature_bound),
            record.certified_bound,
            pinch_text(&record.difference),
        ),
    }
}

fn rat(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn exponent_json(p: &ExtendedExponent) -> Value {
    Value::String(p.to_string())
}

fn index_json(s: &ExteriorIndex) -> Value {
    Value::Array(s.indices().map(|i| Value::from(i as u64)).collect())
}

fn criticals_json(criticals: &CriticalExponents) -> Value {
    match criticals {
        CriticalExponents::AllCritical => Value::String("all".to_string()),
        CriticalExponents::Finite(list) => Value::Array(list.iter().map(rat).collect()),
    }
}

fn segment_json(segment: &Segment) -> Value {
    match segment {
        Segment::Point(p) => json!({ "kind": "point", "at": rat(p) }),
        Segment::Interval { lo, hi, lo_closed, hi_closed } => json!({
            "kind": "interval",
            "lo": rat(lo),
            "hi": exponent_json(hi),
            "lo_closed": lo_closed,
            "hi_closed": hi_closed,
        }),
    }
}

fn segment_rows_json(segments: &[(Segment, Certificate)]) -> Value {
    Value::Array(
        segments
            .iter()
            .map(|(segment, certificate)| {
                json!({
                    "segment": segment_json(segment),
                    "display": segment.to_string(),
                    "certificate": certificate.label(),
                    "vanishes": certificate.is_vanishing(),
                    "evidence": certificate.evidence_summary(),
                })
            })
            .collect(),
    )
}

fn table_json(table: &TorsionTable) -> Value {
    json!({
        "degree": table.degree,
        "breakpoints": Value::Array(table.breakpoints.iter().map(rat).collect()),
        "segments": segment_rows_json(&table.segments),
    })
}

fn pinch_json(bound: &PinchBound) -> Value {
    let rounded = match bound {
        PinchBound::RoundedDown(_) => Value::String("down".to_string()),
        PinchBound::RoundedUp(_) => Value::String("up".to_string()),
        PinchBound::Exact(_) | PinchBound::Unbounded => Value::Null,
    };
    json!({
        "value": bound.to_string(),
        "exact": bound.is_exact() || *bound == PinchBound::Unbounded,
        "rounded": rounded,
    })
}

fn render_json(document: &Document) -> Value {
    match document {
        Document::Validation { name, dim, weights, trace } => json!({
            "name": name,
            "dim": dim,
            "weights": Value::Array(weights.iter().map(rat).collect()),
            "h": rat(trace),
            "valid": true,
        }),
        Document::Spectra { include_sigma, entries } => {
            let rows: Vec<Value> = entries
                .iter()
                .map(|entry| {
                    if *include_sigma {
                        json!({
                            "degree": entry.degree,
                            "sigma": Value::Array(entry.sigma.iter().map(rat).collect()),
                            "criticals": criticals_json(&entry.criticals),
                        })
                    } else {
                        json!({
                            "degree": entry.degree,
                            "criticals": criticals_json(&entry.criticals),
                        })
                    }
                })
                .collect();
            json!({ "spectra": rows })
        }
        Document::Split(split) => json!({
            "degree": split.degree,
            "p": exponent_json(&split.exponent),
            "threshold": rat(&split.threshold),
            "plus": Value::Array(split.plus.iter().map(index_json).collect()),
            "minus": Value::Array(split.minus.iter().map(index_json).collect()),
            "spectral_gap": rat(&split.spectral_gap),
        }),
        Document::Status { degree, exponent, status } => {
            let colliding = match status {
                FlowStatus::Critical(w) => rat(w),
                _ => Value::Null,
            };
            json!({
                "degree": degree,
                "p": exponent_json(exponent),
                "status": status.to_string(),
                "colliding_weight": colliding,
            })
        }
        Document::Certificate { degree, exponent, certificate } => json!({
            "degree": degree,
            "p": exponent_json(exponent),
            "certificate": certificate.label(),
            "vanishes": certificate.is_vanishing(),
            "evidence": certificate.evidence_summary(),
        }),
        Document::Tables(tables) => {
            if tables.len() == 1 {
                table_json(&tables[0])
            } else {
                json!({ "tables": Value::Array(tables.iter().map(table_json).collect()) })
            }
        }
        Document::Exactness(report) => json!({
            "classification": report.classification.to_string(),
            "n1_dim": report.n1_dim,
            "n2_dim": report.n2_dim,
            "wedge_rank": report.wedge_rank,
            "tau": index_json(&report.tau),
            "delta_tau": report.delta_tau.to_string(),
        }),
        Document::Window(report) => json!({
            "degree": report.degree,
            "window_sup": rat(&report.window_sup),
            "exception": rat(&report.exception),
            "segments": segment_rows_json(&report.segments),
        }),
        Document::Compare(record) => json!({
            "degree": record.degree,
            "delta": rat(&record.delta),
            "curvature_bound": pinch_json(&record.curvature_bound),
            "certified_bound": record.certified_bound.to_string(),
            "difference": pinch_json(&record.difference),
        }),
    }
}

fn csv_string(rows: Vec<Vec<String>>) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.write_record(&row).expect("writing to a Vec cannot fail");
    }
    String::from_utf8(writer.into_inner().expect("writing to a Vec cannot fail"))
        .expect("csv output is UTF-8")
}

fn field_rows(fields: Vec<(&str, String)>) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["field".to_string(), "value".to_string()]];
    rows.extend(fields.into_iter().map(|(k, v)| vec![k.to_string(), v]));
    rows
}

fn pinch_fields(prefix: &str, bound: &PinchBound, fields: &mut Vec<(&str, String)>) {
    // Keys are static per prefix so the CSV schema stays fixed.
    let (value_key, exact_key, rounded_key) = match prefix {
        "curvature_bound" => ("curvature_bound", "curvature_exact", "curvature_rounded"),
        _ => ("difference", "difference_exact", "difference_rounded"),
    };
    fields.push((value_key, bound.to_string()));
    fields.push((exact_key, (bound.is_exact() || *bound == PinchBound::Unbounded).to_string()));
    let rounded = match bound {
        PinchBound::RoundedDown(_) => "down",
        PinchBound::RoundedUp(_) => "up",
        PinchBound::Exact(_) | PinchBound::Unbounded => "",
    };
    fields.push((rounded_key, rounded.to_string()));
}

fn render_csv(document: &Document) -> String {
    let rows = match document {
        Document::Validation { name, dim, weights, trace } => field_rows(vec![
            ("name", name.clone()),
            ("dim", dim.to_string()),
            ("weights", rationals(weights)),
            ("h", trace.to_string()),
            ("valid", "true".to_string()),
        ]),
        Document::Spectra { include_sigma, entries } => {
            let mut rows = Vec::new();
            if *include_sigma {
                rows.push(vec!["degree".to_string(), "sigma".to_string(), "criticals".to_string()]);
                for entry in entries {
                    rows.push(vec![
                        entry.degree.to_string(),
                        rationals(&entry.sigma),
                        criticals_text(&entry.criticals),
                    ]);
                }
            } else {
                rows.push(vec!["degree".to_string(), "criticals".to_string()]);
                for entry in entries {
                    rows.push(vec![entry.degree.to_string(), criticals_text(&entry.criticals)]);
                }
            }
            rows
        }
        Document::Split(split) => field_rows(vec![
            ("degree", split.degree.to_string()),
            ("p", split.exponent.to_string()),
            ("threshold", split.threshold.to_string()),
            ("plus", monomials(&split.plus)),
            ("minus", monomials(&split.minus)),
            ("spectral_gap", split.spectral_gap.to_string()),
        ]),
        Document::Status { degree, exponent, status } => field_rows(vec![
            ("degree", degree.to_string()),
            ("p", exponent.to_string()),
            ("status", status.to_string()),
        ]),
        Document::Certificate { degree, exponent, certificate } => field_rows(vec![
            ("degree", degree.to_string()),
            ("p", exponent.to_string()),
            ("certificate", certificate.label().to_string()),
            ("vanishes", certificate.is_vanishing().to_string()),
            ("evidence", certificate.evidence_summary()),
        ]),
        Document::Tables(tables) => {
            let mut rows = vec![vec![
                "degree".to_string(),
                "segment".to_string(),
                "certificate".to_string(),
                "evidence".to_string(),
            ]];
            for table in tables {
                for (segment, certificate) in &table.segments {
                    rows.push(vec![
                        table.degree.to_string(),
                        segment.to_string(),
                        certificate.label().to_string(),
                        certificate.evidence_summary(),
                    ]);
                }
            }
            rows
        }
        Document::Exactness(report) => field_rows(vec![
            ("classification", report.classification.to_string()),
            ("n1_dim", report.n1_dim.to_string()),
            ("n2_dim", report.n2_dim.to_string()),
            ("wedge_rank", report.wedge_rank.to_string()),
            ("tau", report.tau.to_string()),
            ("delta_tau", report.delta_tau.to_string()),
        ]),
        Document::Window(report) => {
            let mut rows = vec![vec![
                "degree".to_string(),
                "window_sup".to_string(),
                "exception".to_string(),
                "segment".to_string(),
                "certificate".to_string(),
                "evidence".to_string(),
            ]];
            for (segment, certificate) in &report.segments {
                rows.push(vec![
                    report.degree.to_string(),
                    report.window_sup.to_string(),
                    report.exception.to_string(),
                    segment.to_string(),
                    certificate.label().to_string(),
                    certificate.evidence_summary(),
                ]);
            }
            rows
        }
        Document::Compare(record) => {
            let mut fields = vec![
                ("degree", record.degree.to_string()),
                ("delta", record.delta.to_string()),
            ];
            pinch_fields("curvature_bound", &record.curvature_bound, &mut fields);
            fields.push(("certified_bound", record.certified_bound.to_string()));
            pinch_fields("difference", &record.difference, &mut fields);
            field_rows(fields)
        }
    };
    csv_string(rows)
}
