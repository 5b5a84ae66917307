use super::parse_dim;
use crate::cli::{IdentityArg, ProfileArg, VerifyArgs};
use crate::{io, CliError};
use scatspec::identity::{
    check_ah_limit, check_coarea, check_hs_norm, cross_check_sigma, determinant_trials,
    CheckResolution, CoareaForm, IdentityReport, RadialProfile,
};
use scatspec::Dim;

fn profile(arg: ProfileArg) -> RadialProfile {
    match arg {
        ProfileArg::Const => RadialProfile::One,
        ProfileArg::Gauss => RadialProfile::Gauss,
        ProfileArg::GaussHalf => RadialProfile::GaussHalf,
        ProfileArg::Shell => RadialProfile::Shell,
        ProfileArg::Cos => RadialProfile::CosR,
    }
}

fn resolution(dim: Dim, over: Option<usize>) -> Result<CheckResolution, CliError> {
    let mut res = CheckResolution::default_for(dim);
    if let Some(r) = over {
        if dim == Dim::Three && r > 256 {
            return Err(CliError::Usage(
                "--resolution is capped at 256 for n = 3".into(),
            ));
        }
        if r < 4 {
            return Err(CliError::Usage("--resolution must be at least 4".into()));
        }
        res.sphere = r;
    }
    Ok(res)
}

/// Per-identity pass thresholds on rel_diff; ah-limit instead checks the
/// O(1/kappa) decay across the sequence.
fn default_threshold(identity: IdentityArg) -> f64 {
    match identity {
        IdentityArg::Coarea1 | IdentityArg::Coarea2 | IdentityArg::HsNorm => 1e-6,
        IdentityArg::Determinant => 1e-10,
        IdentityArg::CrossCheck => 1e-8,
        IdentityArg::AhLimit => f64::INFINITY, // judged by the gap scaling
    }
}

pub fn run(args: VerifyArgs) -> Result<(), CliError> {
    let threshold = args
        .max_rel_diff
        .unwrap_or(default_threshold(args.identity));
    let mut judged: Vec<(IdentityReport, bool)> = Vec::new();

    match args.identity {
        IdentityArg::Coarea1 | IdentityArg::Coarea2 => {
            let dim = parse_dim(args.n.unwrap_or(3))?;
            let form = if args.identity == IdentityArg::Coarea1 {
                CoareaForm::WithSine
            } else {
                CoareaForm::Plain
            };
            let h = profile(args.h.unwrap_or(ProfileArg::Const));
            let rep = check_coarea(dim, form, h, resolution(dim, args.resolution)?);
            let pass = rep.rel_diff <= threshold;
            judged.push((rep, pass));
        }
        IdentityArg::HsNorm => {
            let dim = parse_dim(args.n.unwrap_or(3))?;
            let kappa = args
                .kappa
                .ok_or_else(|| CliError::Usage("hs-norm requires --kappa".into()))?;
            let h = profile(args.h.unwrap_or(ProfileArg::GaussHalf));
            let rep = check_hs_norm(dim, kappa, h, resolution(dim, args.resolution)?);
            let pass = rep.rel_diff <= threshold;
            judged.push((rep, pass));
        }
        IdentityArg::Determinant => {
            let seed = args
                .seed
                .ok_or_else(|| CliError::Usage("determinant requires --seed".into()))?;
            for rep in determinant_trials(10, args.trials, seed) {
                let pass = rep.rel_diff <= threshold;
                judged.push((rep, pass));
            }
        }
        IdentityArg::AhLimit => {
            let dim = parse_dim(args.n.unwrap_or(3))?;
            let ell = args.ell.unwrap_or(0);
            let kappas = if args.kappas.is_empty() {
                vec![10.0, 40.0, 160.0]
            } else {
                args.kappas.clone()
            };
            if kappas.windows(2).any(|w| w[0] >= w[1]) {
                return Err(CliError::Usage("--kappas must be increasing".into()));
            }
            let reports = check_ah_limit(dim, ell, &kappas)?;
            // O(1/kappa): endpoints of gap*kappa stay within a factor 10
            let first_gap = (reports[0].lhs - reports[0].rhs).abs() * kappas[0];
            let last = reports.len() - 1;
            let last_gap = (reports[last].lhs - reports[last].rhs).abs() * kappas[last];
            let ratio = last_gap / first_gap.max(1e-300);
            let scaling_ok = (0.1..=10.0).contains(&ratio);
            let explicit = args.max_rel_diff.is_some();
            for rep in reports {
                let pass = if explicit {
                    rep.rel_diff <= threshold
                } else {
                    scaling_ok
                };
                judged.push((rep, pass));
            }
        }
        IdentityArg::CrossCheck => {
            let kappa = args
                .kappa
                .ok_or_else(|| CliError::Usage("cross-check requires --kappa".into()))?;
            let ellmax = args.ellmax.unwrap_or(50);
            for rep in cross_check_sigma(kappa, ellmax)? {
                // agreement is judged only above the representable floor
                let pass = rep.lhs.max(rep.rhs) < 1e-12 || rep.rel_diff <= threshold;
                judged.push((rep, pass));
            }
        }
    }

    let rendered = io::render_report_lines(&judged);
    io::write_or_print(args.out.as_deref(), &rendered)?;
    let failures = judged.iter().filter(|(_, pass)| !pass).count();
    if failures > 0 {
        return Err(CliError::Verification(format!(
            "{failures} of {} report(s) failed",
            judged.len()
        )));
    }
    Ok(())
}
