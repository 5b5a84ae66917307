//! `scatspec` command line: computes Herglotz and far-field singular-value
//! spectra, verifies integral/algebraic identities, fits spectrum regions,
//! sweeps over frequencies, and renders log-log SVG plots.

use clap::error::ErrorKind;
use clap::Parser;
use scatspec_cli::{cli, commands};

fn main() {
    let args = match cli::Cli::try_parse() {
        Ok(args) => args,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                std::process::exit(0);
            }
            let _ = e.print();
            std::process::exit(1);
        }
    };

    configure_threads(args.threads);

    let result = match args.command {
        cli::Command::Herglotz(a) => commands::herglotz::run(a),
        cli::Command::Farfield(a) => commands::farfield::run(a),
        cli::Command::Verify(a) => commands::verify::run(a),
        cli::Command::Fit(a) => commands::fit::run(a),
        cli::Command::Plot(a) => commands::plot::run(a),
        cli::Command::Sweep(a) => commands::sweep::run(a),
    };

    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(threads: Option<usize>) {
    if let Some(n) = threads {
        // outputs are identical for any pool size; this only sets the budget
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(_threads: Option<usize>) {}
