use std::fs;
use std::path::Path;
use std::str::FromStr;

use super::{SurveySummary, TrialRecord};
use crate::error::{Error, Result};
use crate::homology::HomologyRoute;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecordFormat {
    Jsonl,
    Csv,
}

impl FromStr for RecordFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jsonl" | "json" => Ok(RecordFormat::Jsonl),
            "csv" => Ok(RecordFormat::Csv),
            other => Err(Error::argument(format!("unknown record format {other:?}"))),
        }
    }
}

impl RecordFormat {
    /// `.csv` files are CSV; everything else is JSON-lines.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => RecordFormat::Csv,
            _ => RecordFormat::Jsonl,
        }
    }
}

const FIXED_COLUMNS: [&str; 16] = [
    "trial",
    "p",
    "edges",
    "p_index",
    "seed",
    "clique_number",
    "neighborliness",
    "closed_sets",
    "retract_dimension",
    "route",
    "truncated",
    "torsion_seen",
    "empty_complex",
    "certificates",
    "failures",
    "wall_time_ms",
];

/// One JSON object per line, keys in declaration order.
pub fn records_to_jsonl(records: &[TrialRecord]) -> Result<String> {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).map_err(|e| Error::domain(e.to_string()))?);
        out.push('\n');
    }
    Ok(out)
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or(String::new(), T::to_string)
}

fn route_name(r: HomologyRoute) -> &'static str {
    match r {
        HomologyRoute::Retract => "retract",
        HomologyRoute::Direct => "direct",
    }
}

/// Flattened records with a header. Betti columns run to the longest
/// vector; shorter vectors leave trailing cells empty.
pub fn records_to_csv(records: &[TrialRecord]) -> Result<String> {
    let width = records.iter().map(|r| r.betti.len()).max().unwrap_or(0).max(1);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = FIXED_COLUMNS.iter().map(|s| s.to_string()).collect();
    header.extend((0..width).map(|k| format!("betti{k}")));
    w.write_record(&header).map_err(csv_err)?;
    for r in records {
        let certs: Vec<String> = r.certificates.iter().map(usize::to_string).collect();
        let mut row = vec![
            r.trial_index.to_string(),
            r.p.to_string(),
            r.edge_count.to_string(),
            r.p_index.to_string(),
            r.derived_seed.to_string(),
            opt(&r.clique_number),
            opt(&r.neighborliness),
            opt(&r.closed_set_count),
            opt(&r.retract_dimension),
            r.route.map_or(String::new(), |x| route_name(x).to_string()),
            r.truncated.to_string(),
            r.torsion_seen.to_string(),
            r.empty_complex.to_string(),
            certs.join(";"),
            serde_json::to_string(&r.failures).map_err(|e| Error::domain(e.to_string()))?,
            opt(&r.wall_time_ms),
        ];
        row.extend((0..width).map(|k| r.betti.get(k).map_or(String::new(), u64::to_string)));
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::domain(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::domain(format!("{other:?}")),
    }
}

pub fn write_records(records: &[TrialRecord], path: &Path, format: RecordFormat) -> Result<()> {
    let text = match format {
        RecordFormat::Jsonl => records_to_jsonl(records)?,
        RecordFormat::Csv => records_to_csv(records)?,
    };
    fs::write(path, text)?;
    Ok(())
}

/// Summary as pretty-printed JSON, including the configuration.
pub fn write_summary(summary: &SurveySummary, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(summary).map_err(|e| Error::domain(e.to_string()))?;
    fs::write(path, text + "\n")?;
    Ok(())
}

/// Reads records written by [`write_records`], choosing the format from the
/// extension.
pub fn read_records(path: &Path) -> Result<Vec<TrialRecord>> {
    let text = fs::read_to_string(path)?;
    parse_records(&text, RecordFormat::from_path(path))
}

pub fn parse_records(text: &str, format: RecordFormat) -> Result<Vec<TrialRecord>> {
    match format {
        RecordFormat::Jsonl => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                serde_json::from_str(l).map_err(|e| Error::Format {
                    line: i + 1,
                    message: e.to_string(),
                })
            })
            .collect(),
        RecordFormat::Csv => parse_csv(text),
    }
}

fn parse_csv(text: &str) -> Result<Vec<TrialRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let header = rdr
        .headers()
        .map_err(|e| Error::Format {
            line: 1,
            message: e.to_string(),
        })?
        .clone();
    let fixed: Vec<&str> = header.iter().take(FIXED_COLUMNS.len()).collect();
    if fixed != FIXED_COLUMNS
        || header
            .iter()
            .skip(FIXED_COLUMNS.len())
            .enumerate()
            .any(|(k, h)| h != format!("betti{k}"))
    {
        return Err(Error::Format {
            line: 1,
            message: "unexpected header".into(),
        });
    }
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let line = i + 2;
        let bad = |message: String| Error::Format { line, message };
        let row = row.map_err(|e| bad(e.to_string()))?;
        let cell = |k: usize| row.get(k).unwrap_or("");
        fn num<T: FromStr>(s: &str, name: &str) -> std::result::Result<T, String> {
            s.parse().map_err(|_| format!("bad {name} value {s:?}"))
        }
        fn opt_num<T: FromStr>(s: &str, name: &str) -> std::result::Result<Option<T>, String> {
            if s.is_empty() {
                Ok(None)
            } else {
                num(s, name).map(Some)
            }
        }
        let parsed = (|| -> std::result::Result<TrialRecord, String> {
            let route = match cell(9) {
                "" => None,
                "retract" => Some(HomologyRoute::Retract),
                "direct" => Some(HomologyRoute::Direct),
                other => return Err(format!("bad route {other:?}")),
            };
            let certificates = if cell(13).is_empty() {
                Vec::new()
            } else {
                cell(13)
                    .split(';')
                    .map(|s| num(s, "certificate"))
                    .collect::<std::result::Result<_, _>>()?
            };
            let mut betti = Vec::new();
            for k in FIXED_COLUMNS.len()..row.len() {
                if cell(k).is_empty() {
                    break;
                }
                betti.push(num(cell(k), "betti")?);
            }
            Ok(TrialRecord {
                trial_index: num(cell(0), "trial")?,
                p: num(cell(1), "p")?,
                edge_count: num(cell(2), "edges")?,
                p_index: num(cell(3), "p_index")?,
                derived_seed: num(cell(4), "seed")?,
                clique_number: opt_num(cell(5), "clique_number")?,
                neighborliness: opt_num(cell(6), "neighborliness")?,
                closed_set_count: opt_num(cell(7), "closed_sets")?,
                retract_dimension: opt_num(cell(8), "retract_dimension")?,
                route,
                truncated: num(cell(10), "truncated")?,
                torsion_seen: num(cell(11), "torsion_seen")?,
                empty_complex: num(cell(12), "empty_complex")?,
                certificates,
                failures: serde_json::from_str(cell(14)).map_err(|e| e.to_string())?,
                wall_time_ms: opt_num(cell(15), "wall_time_ms")?,
                betti,
            })
        })();
        out.push(parsed.map_err(bad)?);
    }
    Ok(out)
}

/// One row per grid point and dimension.
pub fn summary_to_csv(summary: &SurveySummary) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "p",
        "k",
        "mean",
        "variance",
        "vanishing_frequency",
        "certificate_frequency",
        "local_maxima",
    ])
    .map_err(csv_err)?;
    for pt in &summary.points {
        for k in 0..pt.betti_mean.len() {
            let lm = summary
                .local_maxima
                .as_ref()
                .and_then(|v| v.get(k))
                .map_or(String::new(), usize::to_string);
            w.write_record([
                pt.p.to_string(),
                k.to_string(),
                opt(&pt.betti_mean[k]),
                opt(&pt.betti_variance[k]),
                opt(&pt.vanishing_frequency[k]),
                pt.certificate_frequency.get(k).map_or(String::new(), f64::to_string),
                lm,
            ])
            .map_err(csv_err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::domain(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
