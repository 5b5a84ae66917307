use crate::cli::{FitArgs, FitModeArg, TransformArg};
use crate::{io, CliError};
use scatspec::region::{fit_loglog, summarize_regions, FitTransform};
use scatspec::spectrum::OperatorTag;
use scatspec::Dim;
use std::path::Path;

pub fn run(args: FitArgs) -> Result<(), CliError> {
    let window = match args.window.as_slice() {
        [] => None,
        [lo, hi] => Some((*lo, *hi)),
        _ => return Err(CliError::Usage("--window takes LO,HI".into())),
    };

    let json = match args.mode {
        FitModeArg::Raw | FitModeArg::Sigma1 => {
            let path = resolve_input(&args, args.mode)?;
            let points = io::read_xy_csv(&path)?;
            let transform = match (args.mode, args.transform) {
                (FitModeArg::Sigma1, _) => FitTransform::LogKappa,
                (_, TransformArg::Log) => FitTransform::LogRank,
                (_, TransformArg::Pow) => FitTransform::PowRank(args.pow),
            };
            let fit = fit_loglog(&points, transform, window)
                .map_err(|e| CliError::Compute(e.to_string()))?;
            io::FitJson::from_fit(&fit)
        }
        FitModeArg::Stable | FitModeArg::Tail => {
            let dim_hint = args
                .n
                .map(Dim::from_n)
                .transpose()
                .map_err(|e| CliError::Usage(format!("--n: {e}")))?;
            let op_hint = args
                .operator
                .as_deref()
                .map(OperatorTag::parse)
                .transpose()
                .map_err(|e| CliError::Usage(format!("--operator: {e}")))?;
            let record = io::read_spectrum_csv(&args.input, dim_hint, Some(f64::NAN), op_hint)?;
            let summary =
                summarize_regions(&record).map_err(|e| CliError::Compute(e.to_string()))?;
            let fit = match args.mode {
                FitModeArg::Stable => summary.stable_fit,
                _ => summary.tail_fit,
            }
            .ok_or_else(|| {
                CliError::Compute(format!(
                    "fit window collapsed: {}",
                    summary.flags.join("; ")
                ))
            })?;
            let mut json = io::FitJson::from_fit(&fit);
            json.knee_index = Some(summary.knee.index);
            json.plateau = Some(summary.plateau_level);
            json
        }
    };

    let rendered = serde_json::to_string_pretty(&json).expect("fit serializes") + "\n";
    io::write_or_print(args.out.as_deref(), &rendered)
}

/// sigma1 mode accepts a sweep directory (using its sigma1.csv) or a CSV.
fn resolve_input(args: &FitArgs, mode: FitModeArg) -> Result<std::path::PathBuf, CliError> {
    let path: &Path = &args.input;
    if mode == FitModeArg::Sigma1 && path.is_dir() {
        let candidate = path.join("sigma1.csv");
        if !candidate.exists() {
            return Err(CliError::Compute(format!(
                "{} has no sigma1.csv",
                path.display()
            )));
        }
        return Ok(candidate);
    }
    Ok(path.to_path_buf())
}
