//! Data behind the split-probability curves versus phase-space volume.

use serde::Serialize;

use crate::dist::{polya_pmf, PhaseVolume, SplitSpec};
use crate::error::{domain, Result};

/// A column-labelled numeric table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl FigureTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

/// `points` values spaced evenly in `log10` from `min` to `max` inclusive.
pub fn log_grid(min: f64, max: f64, points: usize) -> Result<Vec<f64>> {
    if !(min > 0.0 && max > min && min.is_finite() && max.is_finite()) || points < 2 {
        return Err(domain(format!(
            "log grid needs 0 < min < max and >= 2 points, got [{min}, {max}] x {points}"
        )));
    }
    let (lo, hi) = (min.log10(), max.log10());
    let step = (hi - lo) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            if i + 1 == points {
                max
            } else {
                10f64.powf(lo + step * i as f64)
            }
        })
        .collect())
}

/// For each `S` in `grid`, the row `S, W(n,0), W(n-1,1), ..., W(0,n)`.
pub fn split_curves(n: u64, split: SplitSpec, grid: &[f64]) -> Result<FigureTable> {
    let mut columns = vec!["S".to_string()];
    columns.extend((0..=n).rev().map(|k| format!("W({},{})", k, n - k)));
    let rows = grid
        .iter()
        .map(|&s| {
            let vol = PhaseVolume::new(s)?;
            let mut row = vec![s];
            for k in (0..=n).rev() {
                row.push(polya_pmf(k, n, split, vol)?);
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(FigureTable { columns, rows })
}

pub fn fig2(grid: &[f64]) -> Result<FigureTable> {
    split_curves(2, SplitSpec::new(0.5)?, grid)
}

pub fn fig3(grid: &[f64]) -> Result<FigureTable> {
    split_curves(3, SplitSpec::new(0.55)?, grid)
}

pub const FIG4_VOLUMES: [f64; 4] = [1.0, 10.0, 100.0, 1.0e4];

/// Rows `k, W(k, n-k | S_1), W(k, n-k | S_2), ...` at an even split.
pub fn fig4(n: u64, volumes: &[f64]) -> Result<FigureTable> {
    let split = SplitSpec::new(0.5)?;
    let mut columns = vec!["k".to_string()];
    columns.extend(volumes.iter().map(|s| format!("S={s}")));
    let vols = volumes
        .iter()
        .map(|&s| PhaseVolume::new(s))
        .collect::<Result<Vec<_>>>()?;
    let rows = (0..=n)
        .map(|k| {
            let mut row = vec![k as f64];
            for &v in &vols {
                row.push(polya_pmf(k, n, split, v)?);
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(FigureTable { columns, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        let g = log_grid(0.01, 100.0, 5).unwrap();
        assert_eq!(g.len(), 5);
        assert!((g[0] - 0.01).abs() < 1e-18);
        assert_eq!(g[4], 100.0);
        assert!((g[2] - 1.0).abs() < 1e-12);
        assert!(log_grid(0.0, 1.0, 3).is_err());
        assert!(log_grid(1.0, 2.0, 1).is_err());
    }

    #[test]
    fn fig2_columns_and_limits() {
        let t = fig2(&[1e8]).unwrap();
        assert_eq!(t.columns, ["S", "W(2,0)", "W(1,1)", "W(0,2)"]);
        let row = &t.rows[0];
        for (got, want) in row[1..].iter().zip([0.25, 0.5, 0.25]) {
            assert!((got - want).abs() < 1e-7);
        }
    }

    #[test]
    fn fig4_shape() {
        let t = fig4(50, &FIG4_VOLUMES).unwrap();
        assert_eq!(t.rows.len(), 51);
        assert_eq!(t.columns.len(), 5);
        let s1 = t.column("S=1").unwrap();
        assert!(s1[0] > s1[1] && s1[50] > s1[49]);
    }
}
