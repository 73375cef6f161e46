use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::dist::PmfTable;
use crate::error::{Error, Result};

/// Pooled chi-square bins need at least this many expected counts.
const MIN_EXPECTED: f64 = 5.0;

/// Counts of sampled photon numbers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EmpiricalHist {
    counts: Vec<u64>,
    total: u64,
}

impl EmpiricalHist {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_counts(counts: Vec<u64>) -> Self {
        let total = counts.iter().sum();
        Self { counts, total }
    }

    pub fn record(&mut self, k: u64) {
        let k = k as usize;
        if k >= self.counts.len() {
            self.counts.resize(k + 1, 0);
        }
        self.counts[k] += 1;
        self.total += 1;
    }

    /// Associative, order-independent merge.
    pub fn merge(&mut self, other: &Self) {
        if other.counts.len() > self.counts.len() {
            self.counts.resize(other.counts.len(), 0);
        }
        for (c, o) in self.counts.iter_mut().zip(&other.counts) {
            *c += o;
        }
        self.total += other.total;
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, k: usize) -> u64 {
        self.counts.get(k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn frequency(&self, k: usize) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        self.count(k) as f64 / self.total as f64
    }

    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.counts.len()).map(|k| self.frequency(k)).collect()
    }
}

/// `1/2 sum_k |f_k - p_k|` over the union of the listed supports.
///
/// Mass in the table's unlisted tail is not compared, so the result can be
/// off by at most `p.tail_bound() / 2`.
pub fn tv_distance(h: &EmpiricalHist, p: &PmfTable) -> f64 {
    let len = h.counts().len().max(p.len());
    0.5 * (0..len)
        .map(|k| (h.frequency(k) - p.get(k)).abs())
        .sum::<f64>()
}

/// Pearson chi-square goodness-of-fit p-value.
///
/// Adjacent bins are pooled from low `k` upward until each holds at least
/// five expected counts; an underfull remainder joins the last bin. The
/// table's tail mass and any observed counts beyond it form one extra cell.
pub fn chi_square_pvalue(h: &EmpiricalHist, p: &PmfTable) -> Result<f64> {
    let m = h.total() as f64;
    if m == 0.0 {
        return Err(Error::Degenerate("empty histogram".into()));
    }
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let (mut obs, mut exp) = (0.0, 0.0);
    for k in 0..p.len() {
        obs += h.count(k) as f64;
        exp += m * p.get(k);
        if exp >= MIN_EXPECTED {
            cells.push((obs, exp));
            obs = 0.0;
            exp = 0.0;
        }
    }
    let beyond: u64 = h.counts().iter().skip(p.len()).sum();
    obs += beyond as f64;
    exp += m * (1.0 - p.total()).max(0.0);
    if exp >= MIN_EXPECTED {
        cells.push((obs, exp));
    } else if let Some(last) = cells.last_mut() {
        last.0 += obs;
        last.1 += exp;
    } else if obs > 0.0 {
        return Err(Error::Degenerate(
            "observed counts with no expected mass".into(),
        ));
    }
    if cells.len() < 2 {
        return Err(Error::Degenerate(
            "all expected mass pooled into a single cell".into(),
        ));
    }
    let stat: f64 = cells.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    let dof = (cells.len() - 1) as f64;
    let chi2 = ChiSquared::new(dof).expect("dof >= 1");
    Ok(chi2.sf(stat))
}
