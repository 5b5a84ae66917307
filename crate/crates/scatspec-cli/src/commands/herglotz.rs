use super::parse_dim;
use crate::cli::{HerglotzArgs, HerglotzOperator};
use crate::{io, CliError};
use scatspec::herglotz::{
    herglotz_singular_values_with, q_operator_spectrum_with, HerglotzOptions,
};
use scatspec::spectrum::Truncation;

pub fn run(args: HerglotzArgs) -> Result<(), CliError> {
    let dim = parse_dim(args.n)?;
    if !(args.kappa > 0.0) {
        return Err(CliError::Usage(format!(
            "--kappa must be positive, got {}",
            args.kappa
        )));
    }
    if !(args.panel_len > 0.0) {
        return Err(CliError::Usage("--panel-len must be positive".into()));
    }
    if args.gl_points == 0 || args.gl_points > 256 {
        return Err(CliError::Usage("--gl-points must be in 1..=256".into()));
    }
    let truncation = match args.max_count {
        Some(c) => Truncation::MaxCount(c),
        None => {
            if !(args.floor > 0.0) {
                return Err(CliError::Usage("--floor must be positive".into()));
            }
            Truncation::SigmaFloor(args.floor)
        }
    };
    let opts = HerglotzOptions {
        panel_len: args.panel_len,
        gl_points: args.gl_points,
        ..HerglotzOptions::default()
    };
    let record = match args.operator {
        HerglotzOperator::A => herglotz_singular_values_with(dim, args.kappa, truncation, &opts)?,
        HerglotzOperator::Q => q_operator_spectrum_with(dim, args.kappa, truncation, &opts)?,
    };
    io::write_spectrum_csv(&record, &args.out)
}
