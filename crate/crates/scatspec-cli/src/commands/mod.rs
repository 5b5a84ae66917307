pub mod farfield;
pub mod fit;
pub mod herglotz;
pub mod plot;
pub mod sweep;
pub mod verify;

use crate::cli::EigModeArg;
use crate::CliError;
use scatspec::linalg::EigenMode;
use scatspec::Dim;

pub(crate) fn parse_dim(n: usize) -> Result<Dim, CliError> {
    Dim::from_n(n).map_err(|_| CliError::Usage(format!("--n must be 2 or 3, got {n}")))
}

/// Desk-scale grid defaults.
pub(crate) fn default_grid(dim: Dim) -> usize {
    match dim {
        Dim::Two => 60,
        Dim::Three => 12,
    }
}

pub(crate) fn eigen_mode(mode: EigModeArg, top_k: Option<usize>) -> Result<EigenMode, CliError> {
    match mode {
        EigModeArg::Full => {
            if top_k.is_some() {
                return Err(CliError::Usage(
                    "--top-k only applies with --mode top-k".into(),
                ));
            }
            Ok(EigenMode::Full)
        }
        EigModeArg::TopK => {
            let k = top_k.ok_or_else(|| CliError::Usage("--mode top-k requires --top-k".into()))?;
            if k == 0 {
                return Err(CliError::Usage("--top-k must be positive".into()));
            }
            Ok(EigenMode::TopK(k))
        }
    }
}
