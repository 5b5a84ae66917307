use super::{default_grid, eigen_mode, parse_dim};
use crate::cli::FarfieldArgs;
use crate::{io, CliError};
use scatspec::farfield::{farfield_singular_values, GridSpec};

pub fn run(args: FarfieldArgs) -> Result<(), CliError> {
    let dim = parse_dim(args.n)?;
    if !(args.kappa > 0.0) {
        return Err(CliError::Usage(format!(
            "--kappa must be positive, got {}",
            args.kappa
        )));
    }
    let m = args.grid.unwrap_or_else(|| default_grid(dim));
    let grid = GridSpec::new(dim, m).map_err(|e| CliError::Usage(format!("--grid: {e}")))?;
    let mode = eigen_mode(args.mode, args.top_k)?;
    let record = farfield_singular_values(dim, args.kappa, grid, args.normalized, mode)?;
    io::write_spectrum_csv(&record, &args.out)
}
