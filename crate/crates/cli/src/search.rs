//! Random star subdivisions of a seed fan, looking for torsion.
//!
//! Trial `t` draws from a ChaCha8 stream seeded by `seed` with stream number
//! `t`, so trials are independent of each other and of their count. Each
//! trial applies one to three subdivisions: pick a cone of dimension at least
//! two among the current generating cones, pick coefficients in `1..=3` for
//! its rays, and star-subdivide at the primitive part of the combination.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toric_bm::fan::{relative_interior_point, star_subdivide};
use toric_bm::{certification_thresholds, Coefficients, Fan, FanError, FanInput, HomologyReport};

use crate::commands::{homology_report, CliError, FanSource, Outcome};
use crate::format::{fan_to_text, report_json};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    pub seed: u64,
    pub trials: usize,
    pub out: Option<PathBuf>,
}

/// The fan of trial `index`.
pub fn trial_fan(seed_fan: &Fan, seed: u64, index: usize) -> Result<Fan, FanError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let steps = rng.gen_range(1..=3);
    let mut fan = seed_fan.clone();
    for _ in 0..steps {
        let candidates: Vec<usize> = fan
            .listed_cones()
            .iter()
            .map(|c| fan.cone_by_rays(c).expect("listed cones are in the fan"))
            .filter(|&i| fan.cone(i).dim() >= 2)
            .collect();
        if candidates.is_empty() {
            break;
        }
        let cone = candidates[rng.gen_range(0..candidates.len())];
        let coefficients: Vec<u32> = (0..fan.cone(cone).rays().len()).map(|_| rng.gen_range(1..=3)).collect();
        // a relative interior point of a cone of dimension ≥ 2 is never a ray
        let v = relative_interior_point(&fan, cone, &coefficients);
        fan = Fan::new(&star_subdivide(&fan, cone, v)?)?;
    }
    Ok(fan)
}

/// Each torsion prime tagged `certified` or `conjectural`.
fn torsion_tags(report: &HomologyReport) -> Vec<String> {
    report
        .torsion_primes()
        .iter()
        .map(|p| {
            // primes beyond 64 bits are far above any threshold
            let certified = p
                .to_u64()
                .is_none_or(|q| certification_thresholds(report.n, q).map_or(true, |c| c.integral_torsion));
            format!("{p} ({})", if certified { "certified" } else { "conjectural" })
        })
        .collect()
}

fn torsion_summary(report: &HomologyReport) -> String {
    let mut parts = Vec::new();
    for d in &report.degrees {
        for p in &d.pieces {
            for t in &p.group.torsion {
                parts.push(format!("Z/{t} in H_{} (weight {})", d.j, p.weight));
            }
        }
    }
    parts.join(", ")
}

pub fn search(source: &FanSource, opts: &SearchOptions) -> Result<Outcome, CliError> {
    let seed_fan = source.fan()?;
    if opts.trials > 0 && !seed_fan.cones().iter().any(|c| c.dim() >= 2) {
        return Err(CliError::Input("seed fan has no cone of dimension at least 2 to subdivide".into()));
    }
    if let Some(dir) = &opts.out {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::Input(format!("cannot create output directory {}: {e}", dir.display())))?;
    }

    let mut log = String::new();
    let mut findings = 0usize;
    for t in 0..opts.trials {
        let fan = trial_fan(&seed_fan, opts.seed, t)
            .map_err(|e| CliError::Consistency(format!("trial {t} produced an invalid fan: {e}")))?;
        let input: FanInput = fan.to_input();
        if !input.validate().map(|r| r.passed()).unwrap_or(false) {
            return Err(CliError::Consistency(format!("trial {t} fails validation")));
        }
        let report = homology_report(&fan, Coefficients::Integers)?;
        let f = fan.f_vector();
        if !report.has_torsion() {
            let _ = writeln!(log, "trial {t}: f-vector {f:?}, no torsion");
            continue;
        }
        findings += 1;
        let _ = writeln!(
            log,
            "trial {t}: f-vector {f:?}, torsion {}; primes {}",
            torsion_summary(&report),
            torsion_tags(&report).join(", ")
        );
        if let Some(dir) = &opts.out {
            let fan_text = fan_to_text(&input).map_err(|e| CliError::Consistency(e.to_string()))?;
            let write = |name: String, text: &str| {
                fs::write(dir.join(&name), text)
                    .map_err(|e| CliError::Input(format!("cannot write {}: {e}", dir.join(&name).display())))
            };
            write(format!("trial-{t:04}.fan.json"), &fan_text)?;
            write(format!("trial-{t:04}.report.json"), &report_json(&report))?;
        }
    }
    let _ = writeln!(log, "{findings} of {} trials with torsion", opts.trials);
    if let Some(dir) = &opts.out {
        fs::write(dir.join("findings.log"), &log)
            .map_err(|e| CliError::Input(format!("cannot write findings log: {e}")))?;
    }
    Ok(Outcome { stdout: log, code: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use toric_bm::fan::Preset;

    #[test]
    fn trials_are_reproducible() {
        let p2 = Preset::ProjectiveSpace(2).fan().unwrap();
        for t in 0..4 {
            let a = trial_fan(&p2, 7, t).unwrap().to_input();
            let b = trial_fan(&p2, 7, t).unwrap().to_input();
            assert_eq!(a, b);
            assert!(a.validate().unwrap().passed());
            assert!(a.rays.len() > 3);
        }
    }

    #[test]
    fn zero_trials() {
        let out = search(
            &FanSource::Preset(Preset::ProjectiveSpace(2)),
            &SearchOptions { seed: 1, trials: 0, out: None },
        )
        .unwrap();
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "0 of 0 trials with torsion\n");
    }
}
