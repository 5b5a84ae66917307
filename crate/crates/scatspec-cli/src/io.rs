//! File formats: spectrum CSV (17 significant digits, bit-faithful on
//! parse), JSON metadata sidecars, JSON-lines identity reports, and fit
//! result JSON.

use crate::CliError;
use scatspec::identity::IdentityReport;
use scatspec::region::FitResult;
use scatspec::spectrum::{OperatorTag, SpectrumEntry, SpectrumRecord};
use scatspec::Dim;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

/// 17 significant digits: enough to reproduce any f64 bit pattern.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn sidecar_path(csv: &Path) -> PathBuf {
    let mut os = csv.as_os_str().to_owned();
    os.push(".meta.json");
    PathBuf::from(os)
}

#[derive(Serialize)]
struct SpectrumMeta<'a> {
    operator: &'a str,
    dim_n: usize,
    kappa: f64,
    entries: usize,
    method_meta: &'a BTreeMap<String, String>,
}

/// Writes `rank,sigma[,degree_ell]` rows plus a `.meta.json` sidecar.
pub fn write_spectrum_csv(record: &SpectrumRecord, path: &Path) -> Result<(), CliError> {
    let with_degree = record.operator.is_herglotz();
    let mut body = String::new();
    body.push_str(if with_degree {
        "rank,sigma,degree_ell\n"
    } else {
        "rank,sigma\n"
    });
    for e in &record.entries {
        if with_degree {
            let degree = e.degree.map_or_else(|| "".into(), |d| d.to_string());
            let _ = writeln!(body, "{},{},{}", e.rank, format_f64(e.sigma), degree);
        } else {
            let _ = writeln!(body, "{},{}", e.rank, format_f64(e.sigma));
        }
    }
    fs::write(path, body).map_err(|e| write_err(path, &e))?;

    let meta = SpectrumMeta {
        operator: record.operator.as_str(),
        dim_n: record.dim.n(),
        kappa: record.kappa,
        entries: record.entries.len(),
        method_meta: &record.method_meta,
    };
    let json = serde_json::to_string_pretty(&meta).expect("meta serializes");
    let side = sidecar_path(path);
    fs::write(&side, json + "\n").map_err(|e| write_err(&side, &e))?;
    Ok(())
}

fn write_err(path: &Path, e: &std::io::Error) -> CliError {
    CliError::Compute(format!("cannot write {}: {e}", path.display()))
}

fn read_err(path: &Path, e: &std::io::Error) -> CliError {
    CliError::Compute(format!("cannot read {}: {e}", path.display()))
}

/// Two-column numeric rows of a CSV (header skipped), with 1-based line
/// numbers in parse errors.
pub fn read_xy_csv(path: &Path) -> Result<Vec<(f64, f64)>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| read_err(path, &e))?;
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut cols = trimmed.split(',');
        let (Some(a), Some(b)) = (cols.next(), cols.next()) else {
            return Err(parse_err(path, line_no, "expected at least two columns"));
        };
        if idx == 0 && a.parse::<f64>().is_err() {
            continue; // header row
        }
        let x: f64 = a
            .trim()
            .parse()
            .map_err(|_| parse_err(path, line_no, "first column is not a number"))?;
        let y: f64 = b
            .trim()
            .parse()
            .map_err(|_| parse_err(path, line_no, "second column is not a number"))?;
        out.push((x, y));
    }
    if out.is_empty() {
        return Err(CliError::Compute(format!(
            "{}: no data rows",
            path.display()
        )));
    }
    Ok(out)
}

fn parse_err(path: &Path, line: usize, what: &str) -> CliError {
    CliError::Compute(format!("{}:{line}: {what}", path.display()))
}

/// Reads a spectrum CSV back into a record. Dimension, frequency and
/// operator come from the sidecar when present, else from the hints.
pub fn read_spectrum_csv(
    path: &Path,
    dim_hint: Option<Dim>,
    kappa_hint: Option<f64>,
    operator_hint: Option<OperatorTag>,
) -> Result<SpectrumRecord, CliError> {
    let text = fs::read_to_string(path).map_err(|e| read_err(path, &e))?;
    let mut entries = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let cols: Vec<&str> = trimmed.split(',').collect();
        if idx == 0 && cols[0].parse::<usize>().is_err() {
            continue; // header
        }
        if cols.len() < 2 {
            return Err(parse_err(path, line_no, "expected rank,sigma[,degree]"));
        }
        let rank: usize = cols[0]
            .trim()
            .parse()
            .map_err(|_| parse_err(path, line_no, "rank is not an integer"))?;
        let sigma: f64 = cols[1]
            .trim()
            .parse()
            .map_err(|_| parse_err(path, line_no, "sigma is not a number"))?;
        let degree = match cols.get(2).map(|s| s.trim()) {
            Some("") | None => None,
            Some(d) => Some(
                d.parse::<u32>()
                    .map_err(|_| parse_err(path, line_no, "degree is not an integer"))?,
            ),
        };
        entries.push(SpectrumEntry {
            rank,
            sigma,
            degree,
        });
    }

    let (mut dim, mut kappa, mut operator, mut meta) = (None, None, None, BTreeMap::new());
    let side = sidecar_path(path);
    if side.exists() {
        let raw = fs::read_to_string(&side).map_err(|e| read_err(&side, &e))?;
        let v: serde_json::Value = serde_json::from_str(&raw)
            .map_err(|e| CliError::Compute(format!("{}: bad JSON: {e}", side.display())))?;
        if let Some(n) = v.get("dim_n").and_then(|x| x.as_u64()) {
            dim = Dim::from_n(n as usize).ok();
        }
        kappa = v.get("kappa").and_then(|x| x.as_f64());
        operator = v
            .get("operator")
            .and_then(|x| x.as_str())
            .and_then(|s| OperatorTag::parse(s).ok());
        if let Some(map) = v.get("method_meta").and_then(|x| x.as_object()) {
            for (k, val) in map {
                meta.insert(k.clone(), val.as_str().unwrap_or_default().to_string());
            }
        }
    }
    let dim = dim
        .or(dim_hint)
        .ok_or_else(|| CliError::Usage("dimension unknown: pass --n".into()))?;
    let kappa = kappa
        .or(kappa_hint)
        .ok_or_else(|| CliError::Usage("kappa unknown: no sidecar found".into()))?;
    let operator = operator
        .or(operator_hint)
        .ok_or_else(|| CliError::Usage("operator unknown: pass --operator".into()))?;

    let record = SpectrumRecord {
        dim,
        kappa,
        operator,
        entries,
        method_meta: meta,
    };
    record
        .validate()
        .map_err(|e| CliError::Compute(format!("{}: {e}", path.display())))?;
    Ok(record)
}

#[derive(Serialize)]
pub struct ReportLine<'a> {
    pub identity: &'a str,
    pub params: &'a BTreeMap<String, String>,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_diff: f64,
    pub pass: bool,
}

/// One JSON object per report line.
pub fn render_report_lines(reports: &[(IdentityReport, bool)]) -> String {
    let mut out = String::new();
    for (rep, pass) in reports {
        let line = ReportLine {
            identity: rep.identity.as_str(),
            params: &rep.params,
            lhs: rep.lhs,
            rhs: rep.rhs,
            rel_diff: rep.rel_diff,
            pass: *pass,
        };
        out.push_str(&serde_json::to_string(&line).expect("report serializes"));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
pub struct FitJson {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub window: [f64; 2],
    pub transform: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub knee_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plateau: Option<f64>,
}

impl FitJson {
    pub fn from_fit(fit: &FitResult) -> Self {
        Self {
            slope: fit.slope,
            intercept: fit.intercept,
            r_squared: fit.r_squared,
            window: [fit.window.0, fit.window.1],
            transform: fit.transform.label(),
            knee_index: None,
            plateau: None,
        }
    }
}

pub fn write_or_print(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            fs::write(p, content).map_err(|e| write_err(p, &e))?;
        }
        None => print!("{content}"),
    }
    Ok(())
}
