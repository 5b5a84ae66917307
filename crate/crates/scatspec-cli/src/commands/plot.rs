use crate::cli::PlotArgs;
use crate::svg::{render, PlotConfig};
use crate::{io, CliError};
use std::fs;

pub fn run(args: PlotArgs) -> Result<(), CliError> {
    let mut series = Vec::new();
    for path in &args.inputs {
        let points = io::read_xy_csv(path)?;
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        series.push((label, points));
    }
    let reference = match (args.ref_slope, args.ref_anchor.as_slice()) {
        (None, _) => None,
        (Some(s), []) => {
            let first = series[0].1[0];
            Some((s, first))
        }
        (Some(s), [x, y]) => Some((s, (*x, *y))),
        _ => return Err(CliError::Usage("--ref-anchor takes X,Y".into())),
    };
    let cfg = PlotConfig {
        width: args.width,
        height: args.height,
        logx: args.logx,
        logy: args.logy,
        reference,
    };
    let svg = render(&series, &cfg)?;
    fs::write(&args.out, svg)
        .map_err(|e| CliError::Compute(format!("cannot write {}: {e}", args.out.display())))?;
    Ok(())
}
