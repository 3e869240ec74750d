//! Rendering of engine results as json, csv, markdown or plain text.
//!
//! Every report is first flattened into a [`Report`]: ordered scalar fields,
//! an optional table and an optional preformatted body. Rationals are always
//! rendered as `p/q`.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::cochain::Cochain;
use crate::cohomology::CohomologyReport;
use crate::deform::{DefectReport, Trivialization};
use crate::lie::{Gen, GradedLieAlgebra, JacobiReport};
use crate::replay::Replay;
use crate::scalar;
use crate::symbolic::{unknown_label, Tag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
    Text,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Markdown => "md",
            Format::Text => "txt",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unsupported format {0:?}, expected json, csv, markdown or text")]
pub struct UnsupportedFormat(pub String);

impl FromStr for Format {
    type Err = UnsupportedFormat;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            "text" | "txt" => Ok(Format::Text),
            other => Err(UnsupportedFormat(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub title: String,
    pub fields: Vec<(String, String)>,
    pub table: Option<Table>,
    pub body: Option<String>,
    pub json: Value,
}

impl Report {
    fn new(title: impl Into<String>, json: Value) -> Self {
        Report {
            title: title.into(),
            fields: Vec::new(),
            table: None,
            body: None,
            json,
        }
    }

    fn field(mut self, key: &str, value: impl ToString) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }
}

pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&r.json).expect("json values always serialize");
            s.push('\n');
            s
        }
        Format::Csv => emit_csv(r),
        Format::Markdown => emit_markdown(r),
        Format::Text => emit_text(r),
    }
}

/// The table if there is one, otherwise `key,value` rows.
fn emit_csv(r: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let write = |w: &mut csv::Writer<Vec<u8>>, row: &[String]| w.write_record(row).expect("in-memory csv write");
    match &r.table {
        Some(t) => {
            write(&mut w, &t.header);
            for row in &t.rows {
                write(&mut w, row);
            }
        }
        None => {
            write(&mut w, &["key".into(), "value".into()]);
            for (k, v) in &r.fields {
                write(&mut w, &[k.clone(), v.clone()]);
            }
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv of utf-8 input")
}

fn markdown_table(t: &Table) -> String {
    let mut s = format!("| {} |\n", t.header.join(" | "));
    s.push_str(&"|---".repeat(t.header.len()));
    s.push_str("|\n");
    for row in &t.rows {
        let _ = writeln!(s, "| {} |", row.join(" | "));
    }
    s
}

fn emit_markdown(r: &Report) -> String {
    let mut s = format!("# {}\n\n", r.title);
    for (k, v) in &r.fields {
        let _ = writeln!(s, "- **{k}**: {v}");
    }
    if let Some(t) = &r.table {
        s.push('\n');
        s.push_str(&markdown_table(t));
    }
    if let Some(b) = &r.body {
        s.push('\n');
        s.push_str(b);
    }
    s
}

fn emit_text(r: &Report) -> String {
    let mut s = format!("{}\n", r.title);
    let width = r.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in &r.fields {
        let _ = writeln!(s, "  {k:width$}  {v}");
    }
    if let Some(t) = &r.table {
        s.push('\n');
        let mut widths: Vec<usize> = t.header.iter().map(String::len).collect();
        for row in &t.rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        for row in std::iter::once(&t.header).chain(&t.rows) {
            let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            let _ = writeln!(s, "  {}", cells.join("  "));
        }
    }
    if let Some(b) = &r.body {
        s.push('\n');
        s.push_str(b);
    }
    s
}

pub fn cohomology_report(r: &CohomologyReport) -> Report {
    let mut out = Report::new(
        format!("H^{}({}) weight {} ({} coefficients)", r.degree, r.algebra, r.weight, r.coefficients.as_str()),
        serde_json::to_value(r).expect("cohomology report serializes"),
    )
    .field("algebra", &r.algebra)
    .field("degree", r.degree)
    .field("weight", r.weight)
    .field("coefficients", r.coefficients.as_str())
    .field("window", r.window)
    .field("margin", r.margin)
    .field("core", r.core)
    .field("kernel_dim", r.kernel_dim)
    .field("dim_cocycles", r.dim_cocycles)
    .field("dim_coboundaries", r.dim_coboundaries)
    .field("dim_stable", r.dim_stable)
    .field("omitted_tuples", r.omitted_tuples);
    if !r.stabilization.is_empty() {
        out.table = Some(Table {
            header: vec!["window".into(), "dim_stable".into()],
            rows: r.stabilization.iter().map(|(w, d)| vec![w.to_string(), d.to_string()]).collect(),
        });
    }
    out
}

/// Central-extension report: the cohomology fields plus the values of the
/// first representative at `(e_{-n}, e_n)` next to `(n^3 - n)/6`.
pub fn central_report(alg: &GradedLieAlgebra, r: &CohomologyReport) -> Report {
    let mut out = cohomology_report(r);
    out.title = format!("central extensions of {} (trivial coefficients, weight 0)", r.algebra);
    let Some(rep) = r.representatives.first() else {
        return out;
    };
    let rows = central_values(alg, rep, r.core.hi);
    let proportional = rows.iter().all(|(_, v, cubic)| v == cubic);
    out = out.field("proportional_to_n3_minus_n", proportional);
    let table = Table {
        header: vec!["n".into(), "value".into(), "(n^3-n)/6".into()],
        rows: rows
            .iter()
            .map(|(n, v, c)| vec![n.to_string(), scalar::render(v), scalar::render(c)])
            .collect(),
    };
    if let Value::Object(m) = &mut out.json {
        m.insert("proportional_to_n3_minus_n".into(), json!(proportional));
        m.insert(
            "representative".into(),
            Value::Array(
                rows.iter()
                    .map(|(n, v, _)| json!({ "n": n, "value": scalar::render(v) }))
                    .collect(),
            ),
        );
    }
    out.table = Some(table);
    out
}

/// `(n, value at (e_{-n}, e_n), (n^3 - n)/6)` for `n = 1..=max`, where the
/// representative is known.
pub fn central_values(alg: &GradedLieAlgebra, rep: &Cochain, max: i64) -> Vec<(i64, scalar::Scalar, scalar::Scalar)> {
    (1..=max)
        .filter_map(|n| {
            let v = rep.evaluate(alg, &[Gen::Indexed(-n), Gen::Indexed(n)]).ok()?;
            Some((n, v.coeff(Gen::Central), scalar::ratio(n * n * n - n, 6)))
        })
        .collect()
}

pub fn replay_report(r: &Replay) -> Report {
    let v = &r.verdict;
    let verdict = if v.all_zero() {
        "all a_k = 0".to_string()
    } else {
        format!("{} free directions", v.dim)
    };
    let diagonal: Vec<String> = r
        .diagonal
        .solve()
        .solved
        .iter()
        .map(|(k, f)| format!("{} = {f}", unknown_label(*k)))
        .collect();
    let tags = [Tag::KOne, Tag::KTwo, Tag::KTwoAtMinusTwo, Tag::Diagonal, Tag::Antisymmetry, Tag::KTwoAtMinusThree];
    let counts: Vec<(String, usize)> = tags
        .iter()
        .map(|t| (t.to_string(), r.table.relations().relations.iter().filter(|x| x.tag == *t).count()))
        .collect();
    let mut json = serde_json::to_value(v).expect("verdict serializes");
    if let Value::Object(m) = &mut json {
        m.insert("verdict".into(), json!(verdict));
        m.insert("diagonal".into(), json!(diagonal));
        m.insert("relation_counts".into(), Value::Object(counts.iter().map(|(k, n)| (k.clone(), json!(n))).collect()));
        m.insert("table".into(), json!(r.snapshot.emit_table()));
    }
    let mut out = Report::new(format!("proof replay, K = {}", v.k), json)
        .field("K", v.k)
        .field("interior", v.interior)
        .field("verdict", &verdict)
        .field("dim", v.dim)
        .field("relations_used", v.relations_used);
    for d in &diagonal {
        out = out.field("diagonal", d);
    }
    out.table = Some(Table {
        header: vec!["unknown".into(), "value".into()],
        rows: v.values.iter().map(|(k, f)| vec![unknown_label(*k), f.to_string()]).collect(),
    });
    out.body = Some(r.snapshot.emit_table());
    out
}

pub fn jacobi_report(alg: &GradedLieAlgebra, r: &JacobiReport) -> Report {
    let defects: Vec<Vec<String>> = r
        .defects
        .iter()
        .map(|d| vec![d.triple.0.to_string(), d.triple.1.to_string(), d.triple.2.to_string(), d.defect.to_string()])
        .collect();
    let json = json!({
        "algebra": alg.name(),
        "window": r.window,
        "triples_checked": r.triples_checked,
        "defects": defects,
    });
    let mut out = Report::new(format!("Jacobi check of {}", alg.name()), json)
        .field("algebra", alg.name())
        .field("window", r.window)
        .field("triples_checked", r.triples_checked)
        .field("defects", r.defects.len());
    if !defects.is_empty() {
        out.table = Some(Table {
            header: vec!["x".into(), "y".into(), "z".into(), "jacobiator".into()],
            rows: defects,
        });
    }
    out
}

pub fn deform_report(alg: &GradedLieAlgebra, defects: &DefectReport, outcome: Option<&Trivialization>) -> Report {
    let rows: Vec<Vec<String>> = defects
        .orders
        .iter()
        .map(|o| {
            let (triple, value) = match &o.first {
                Some((t, v)) => (format!("({}, {}, {})", t.0, t.1, t.2), v.to_string()),
                None => ("clean".into(), String::new()),
            };
            vec![o.order.to_string(), o.triples_checked.to_string(), triple, value]
        })
        .collect();
    let verdict = match outcome {
        None => "rejected: Jacobi identity fails".to_string(),
        Some(Trivialization::Trivialized { verified: true, core, .. }) => format!("trivialized on core {core}"),
        Some(Trivialization::Trivialized { core, .. }) => format!("not verified on core {core}"),
        Some(Trivialization::Obstructed { order, core, .. }) => format!("obstructed at order {order} on core {core}"),
    };
    let mut json = json!({
        "algebra": alg.name(),
        "orders": rows.iter().map(|r| json!({
            "order": r[0], "triples_checked": r[1], "first_defect": r[2], "defect": r[3],
        })).collect::<Vec<_>>(),
        "verdict": verdict,
    });
    let mut out = Report::new(format!("deformation of {}", alg.name()), Value::Null)
        .field("algebra", alg.name())
        .field("order", defects.orders.len().saturating_sub(1))
        .field("jacobi", if defects.is_clean() { "clean" } else { "unclean" })
        .field("verdict", &verdict);
    if let Some(Trivialization::Obstructed { representative, .. }) = outcome {
        let text = representative.to_text();
        json["obstruction"] = json!(text);
        out.body = Some(text);
    }
    out.json = json;
    out.table = Some(Table {
        header: vec!["order".into(), "triples".into(), "first defect".into(), "value".into()],
        rows,
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::Coefficients;
    use crate::cohomology::{cohomology_dim, stabilization_series};
    use crate::lie::make_witt;
    use crate::window::Window;

    #[test]
    fn formats_are_deterministic_and_exact() {
        let w = make_witt();
        let r = cohomology_dim(&w, 2, 1, Window::symmetric(6), 2).unwrap();
        let rep = cohomology_report(&r);
        for f in [Format::Json, Format::Csv, Format::Markdown, Format::Text] {
            let a = emit_report(&rep, f);
            assert_eq!(a, emit_report(&cohomology_report(&r), f));
            let b = a.as_bytes();
            assert!(!b.windows(3).any(|w| w[0].is_ascii_digit() && w[1] == b'.' && w[2].is_ascii_digit()));
        }
        let back: CohomologyReport = serde_json::from_str(&emit_report(&rep, Format::Json)).unwrap();
        assert_eq!(back, CohomologyReport { representatives: vec![], ..r });
    }

    #[test]
    fn stabilization_csv_has_a_row_per_window() {
        let w = make_witt();
        let windows = [Window::symmetric(5), Window::symmetric(6), Window::symmetric(7)];
        let mut r = cohomology_dim(&w, 2, 0, windows[0], 2).unwrap();
        r.stabilization = stabilization_series(&w, 2, 0, &windows, 2, Coefficients::Adjoint).unwrap();
        let csv = emit_report(&cohomology_report(&r), Format::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "window,dim_stable");
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[1], "-5:5,0");
    }

    #[test]
    fn format_names() {
        assert_eq!("md".parse::<Format>().unwrap(), Format::Markdown);
        assert!("yaml".parse::<Format>().is_err());
    }
}
