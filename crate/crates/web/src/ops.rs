//! The demo's computations, free of any JavaScript types.

use photon_gbd::dist::{
    binomial_table, polya_table, PhaseVolume, SplitSpec, StatModel, TableExtent,
};
use photon_gbd::figures::{log_grid, split_curves};

/// Longest table the page asks for.
pub const MAX_LEN: u64 = 2000;

fn text(e: photon_gbd::Error) -> String {
    e.to_string()
}

/// Polya split of `n` thermal photons from volume `s` followed by the
/// binomial split at the same `alpha`: `2 (n + 1)` values.
pub fn polya_curve(n: u64, alpha: f64, s: f64) -> Result<Vec<f64>, String> {
    if n > MAX_LEN {
        return Err(format!("n must be at most {MAX_LEN}"));
    }
    let split = SplitSpec::new(alpha).map_err(text)?;
    let volume = PhaseVolume::new(s).map_err(text)?;
    let mut out = polya_table(n, split, volume).values().to_vec();
    out.extend_from_slice(binomial_table(n, split).values());
    Ok(out)
}

/// Rows `S, W(2,0), W(1,1), W(0,2)` on a log grid, flattened.
pub fn two_photon_curve(
    alpha: f64,
    s_min: f64,
    s_max: f64,
    points: usize,
) -> Result<Vec<f64>, String> {
    if points as u64 > MAX_LEN {
        return Err(format!("at most {MAX_LEN} points"));
    }
    let split = SplitSpec::new(alpha).map_err(text)?;
    let grid = log_grid(s_min, s_max, points).map_err(text)?;
    let table = split_curves(2, split, &grid).map_err(text)?;
    Ok(table.rows.into_iter().flatten().collect())
}

/// `p_0..p_kmax` of one beam. `model` is "poisson", "be" or "glauber"; `w` is
/// the density, degeneracy or photon rate, and `gamma` is only read for
/// Glauber, where `volume` is the sampling time.
pub fn photon_pmf(
    model: &str,
    volume: f64,
    w: f64,
    gamma: f64,
    kmax: u64,
) -> Result<Vec<f64>, String> {
    if kmax > MAX_LEN {
        return Err(format!("kmax must be at most {MAX_LEN}"));
    }
    let model = match model {
        "poisson" => StatModel::poisson(w),
        "be" => StatModel::bose_einstein(w),
        "glauber" => StatModel::glauber(gamma, w),
        other => return Err(format!("unknown model '{other}'")),
    }
    .map_err(text)?;
    let volume = PhaseVolume::new(volume).map_err(text)?;
    let table = model.table(volume, TableExtent::UpTo(kmax)).map_err(text)?;
    Ok(table.probs().to_vec())
}
