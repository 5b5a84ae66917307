use super::{default_grid, eigen_mode, parse_dim};
use crate::cli::{SweepArgs, SweepOperator};
use crate::{io, CliError};
use scatspec::farfield::{farfield_singular_values, GridSpec};
use scatspec::herglotz::{herglotz_singular_values, q_operator_spectrum};
use scatspec::spectrum::Truncation;
use std::fmt::Write as _;
use std::fs;

pub fn run(args: SweepArgs) -> Result<(), CliError> {
    let dim = parse_dim(args.n)?;
    if args.kappas.is_empty() {
        return Err(CliError::Usage("--kappas must not be empty".into()));
    }
    fs::create_dir_all(&args.out_dir)
        .map_err(|e| CliError::Compute(format!("cannot create {}: {e}", args.out_dir.display())))?;

    let mut sigma1 = String::from("kappa,sigma1\n");
    for &kappa in &args.kappas {
        if !(kappa > 0.0) {
            return Err(CliError::Usage(format!(
                "--kappas entries must be positive, got {kappa}"
            )));
        }
        let (record, stem) = match args.operator {
            SweepOperator::Farfield => {
                let m = args.grid.unwrap_or_else(|| default_grid(dim));
                let grid =
                    GridSpec::new(dim, m).map_err(|e| CliError::Usage(format!("--grid: {e}")))?;
                let mode = eigen_mode(args.mode, args.top_k)?;
                let rec = farfield_singular_values(dim, kappa, grid, args.normalized, mode)?;
                (rec, format!("farfield_n{}_kappa{kappa}", args.n))
            }
            SweepOperator::Herglotz => {
                let rec = herglotz_singular_values(dim, kappa, Truncation::SigmaFloor(args.floor))?;
                (rec, format!("herglotz_n{}_kappa{kappa}", args.n))
            }
            SweepOperator::HerglotzQ => {
                let rec = q_operator_spectrum(dim, kappa, Truncation::SigmaFloor(args.floor))?;
                (rec, format!("herglotz_q_n{}_kappa{kappa}", args.n))
            }
        };
        if record.is_empty() {
            return Err(CliError::Compute(format!(
                "empty spectrum at kappa = {kappa}"
            )));
        }
        let _ = writeln!(
            sigma1,
            "{},{}",
            kappa,
            io::format_f64(record.entries[0].sigma)
        );
        let path = args.out_dir.join(format!("{stem}.csv"));
        io::write_spectrum_csv(&record, &path)?;
    }
    let sigma1_path = args.out_dir.join("sigma1.csv");
    fs::write(&sigma1_path, sigma1)
        .map_err(|e| CliError::Compute(format!("cannot write {}: {e}", sigma1_path.display())))?;
    Ok(())
}
