use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument left the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A requested dense assembly would exceed the configured row cap.
    #[error("matrix with {rows} rows exceeds the configured cap of {cap} rows")]
    MemoryCap { rows: usize, cap: usize },

    /// The implicit-shift QL sweep did not converge within its iteration cap.
    #[error("symmetric eigensolver exceeded {max_iterations} iterations at eigenvalue {index}")]
    EigenIterations { index: usize, max_iterations: usize },

    /// Lanczos ran out of restarts before locking the requested count.
    /// `partial` holds the converged values (descending) found so far.
    #[error("Lanczos locked only {converged} of {requested} eigenvalues within the iteration cap")]
    LanczosConvergence {
        requested: usize,
        converged: usize,
        partial: Vec<f64>,
    },

    /// Spectrum generation walked past the degree limit without meeting
    /// its truncation rule.
    #[error("spectrum truncation not reached within degree {degree_limit}")]
    TruncationNotReached { degree_limit: u32 },

    /// A least-squares window had no spread in the abscissa or too few points.
    #[error("degenerate fit window: {0}")]
    DegenerateFit(String),

    /// A spectrum was too short for the requested analysis.
    #[error("spectrum has {len} entries but {required} are required for {what}")]
    SpectrumTooShort {
        len: usize,
        required: usize,
        what: &'static str,
    },
}
