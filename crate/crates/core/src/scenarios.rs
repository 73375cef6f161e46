//! A diaphragm, a beamsplitter, a photodetector and a neutral filter all
//! split a photon flux into two parts with probabilities `alpha` and
//! `1 - alpha`. With respect to photon statistics they are one device.
//!
//! Devices are idealized: no dead time, no mode mismatch. For detectors and
//! filters the complementary count is not observable; it is still carried in
//! the joint table as a modeling identity, and callers wanting measured
//! quantities should use [`transmitted_marginal`].

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::dist::{
    GbdTable, PhaseVolume, PhotonStatistics, PmfTable, SplitSpec, StatModel, TableExtent,
};
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeviceKind {
    Diaphragm,
    Beamsplitter,
    Detector,
    NeutralFilter,
}

impl DeviceKind {
    pub const ALL: [DeviceKind; 4] = [
        DeviceKind::Diaphragm,
        DeviceKind::Beamsplitter,
        DeviceKind::Detector,
        DeviceKind::NeutralFilter,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DeviceKind::Diaphragm => "diaphragm",
            DeviceKind::Beamsplitter => "beamsplitter",
            DeviceKind::Detector => "detector",
            DeviceKind::NeutralFilter => "neutral_filter",
        }
    }

    /// What the complementary count `m` stands for.
    pub fn loss_note(self) -> &'static str {
        match self {
            DeviceKind::Diaphragm => "m photons absorbed by the screen around the aperture",
            DeviceKind::Beamsplitter => "m photons leave through the reflected port",
            DeviceKind::Detector => {
                "m photons not absorbed by the detector; unobservable, kept as a modeling identity"
            }
            DeviceKind::NeutralFilter => {
                "m photons reflected and absorbed by the filter; unobservable, kept as a modeling identity"
            }
        }
    }
}

impl fmt::Display for DeviceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DeviceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DeviceKind::ALL
            .into_iter()
            .find(|k| k.name() == s || k.name().replace('_', "-") == s)
            .ok_or_else(|| domain(format!("unknown device kind '{s}'")))
    }
}

/// A device passing each photon with probability `transmittance`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SplitDevice {
    kind: DeviceKind,
    transmittance: f64,
}

impl SplitDevice {
    pub fn new(kind: DeviceKind, transmittance: f64) -> Result<Self> {
        SplitSpec::new(transmittance)?;
        Ok(Self {
            kind,
            transmittance,
        })
    }

    pub fn kind(self) -> DeviceKind {
        self.kind
    }

    pub fn transmittance(self) -> f64 {
        self.transmittance
    }

    pub fn split(self) -> SplitSpec {
        SplitSpec::new(self.transmittance).expect("validated at construction")
    }
}

/// Two devices in series act as one with the product transmittance. The
/// result keeps the first device's kind.
pub fn cascade(first: SplitDevice, second: SplitDevice) -> Result<SplitDevice> {
    SplitDevice::new(first.kind, first.transmittance * second.transmittance)
}

/// An incident beam: its statistics and the phase-space volume it occupies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BeamState {
    pub model: StatModel,
    pub volume: PhaseVolume,
}

impl BeamState {
    pub fn new(model: StatModel, volume: PhaseVolume) -> Self {
        Self { model, volume }
    }

    /// Transmitted and complementary volumes `(alpha S, beta S)`.
    fn parts(&self, device: SplitDevice) -> Result<(PhaseVolume, PhaseVolume)> {
        let split = device.split();
        let s = self.volume.cells();
        Ok((
            PhaseVolume::new(split.alpha() * s)?,
            PhaseVolume::new(split.beta() * s)?,
        ))
    }

    /// The beam that leaves the transmitted side: same statistics, volume
    /// `alpha S`.
    pub fn transmitted(&self, device: SplitDevice) -> Result<BeamState> {
        let (a, _) = self.parts(device)?;
        Ok(BeamState::new(self.model, a))
    }
}

/// `P(k transmitted, m complementary)` for `k, m = 0..=n_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointTable {
    n_max: u64,
    probs: Vec<f64>,
}

impl JointTable {
    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    fn side(&self) -> usize {
        self.n_max as usize + 1
    }

    pub fn get(&self, k: u64, m: u64) -> f64 {
        self.probs[k as usize * self.side() + m as usize]
    }

    /// Rows `(k, m, P)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (u64, u64, f64)> + '_ {
        let side = self.side();
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, &p)| ((i / side) as u64, (i % side) as u64, p))
    }

    /// `sum_m P(k, m)`.
    pub fn transmitted_marginal(&self) -> Result<PmfTable> {
        let side = self.side();
        let probs = self
            .probs
            .chunks(side)
            .map(|row| row.iter().sum())
            .collect();
        PmfTable::from_prefix(probs, None)
    }

    /// `sum_k P(k, m)`.
    pub fn complementary_marginal(&self) -> Result<PmfTable> {
        let side = self.side();
        let probs = (0..side)
            .map(|m| (0..side).map(|k| self.probs[k * side + m]).sum())
            .collect();
        PmfTable::from_prefix(probs, None)
    }

    /// Conditional law given `k + m = n`: the generalized binomial
    /// distribution read off the joint table.
    pub fn post_selected(&self, n: u64) -> Result<GbdTable> {
        if n > self.n_max {
            return Err(domain(format!(
                "total {n} exceeds the table range {}",
                self.n_max
            )));
        }
        let row: Vec<f64> = (0..=n).map(|k| self.get(k, n - k)).collect();
        let total: f64 = row.iter().sum();
        if total.is_nan() || total <= 0.0 {
            return Err(Error::Degenerate(format!(
                "no probability mass on k + m = {n}"
            )));
        }
        Ok(GbdTable::new(
            n,
            row.into_iter().map(|p| p / total).collect(),
        ))
    }
}

/// Joint output law `P(k, m) = p_{k+m}(S) W(k, m)`.
pub fn joint_output_distribution(
    beam: &BeamState,
    device: SplitDevice,
    n_max: u64,
) -> Result<JointTable> {
    let (a, b) = beam.parts(device)?;
    let model = &beam.model;
    let ls = model.ln_pmf_prefix(beam.volume, 2 * n_max);
    let la = model.ln_pmf_prefix(a, n_max);
    let lb = model.ln_pmf_prefix(b, n_max);
    let side = n_max as usize + 1;
    let mut probs = Vec::with_capacity(side * side);
    for k in 0..side {
        for m in 0..side {
            let ln_total = ls[k + m];
            let ln_joint = la[k] + lb[m];
            let p = if ln_total.is_finite() {
                let ln_w = ln_joint - ln_total;
                (ln_total + ln_w).exp()
            } else {
                ln_joint.exp()
            };
            probs.push(p);
        }
    }
    Ok(JointTable { n_max, probs })
}

/// Photon statistics on the transmitted side, `sum_m P(k, m)` for
/// `k = 0..=n_max`.
pub fn transmitted_marginal(beam: &BeamState, device: SplitDevice, n_max: u64) -> Result<PmfTable> {
    joint_output_distribution(beam, device, n_max)?.transmitted_marginal()
}

/// Smallest `n_max` whose tables for both output volumes leave less than
/// `tail_tolerance` of mass out.
pub fn suggested_n_max(beam: &BeamState, device: SplitDevice, tail_tolerance: f64) -> Result<u64> {
    let (a, b) = beam.parts(device)?;
    let extent = TableExtent::Auto { tail_tolerance };
    let la = beam.model.table(a, extent)?.len();
    let lb = beam.model.table(b, extent)?.len();
    Ok(la.max(lb) as u64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{binomial_table, polya_pmf, DEFAULT_TAIL_TOLERANCE};

    fn vol(x: f64) -> PhaseVolume {
        PhaseVolume::new(x).unwrap()
    }

    fn dev(kind: DeviceKind, a: f64) -> SplitDevice {
        SplitDevice::new(kind, a).unwrap()
    }

    fn max_diff(a: &PmfTable, b: impl Fn(usize) -> f64) -> f64 {
        (0..a.len())
            .map(|k| (a.get(k) - b(k)).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn device_kind_parsing() {
        for kind in DeviceKind::ALL {
            assert_eq!(kind.name().parse::<DeviceKind>().unwrap(), kind);
        }
        assert_eq!(
            "neutral-filter".parse::<DeviceKind>().unwrap(),
            DeviceKind::NeutralFilter
        );
        assert!("prism".parse::<DeviceKind>().is_err());
        assert!(SplitDevice::new(DeviceKind::Detector, 1.0).is_err());
    }

    #[test]
    fn poisson_joint_factorizes() {
        let beam = BeamState::new(StatModel::poisson(1.2).unwrap(), vol(2.0));
        let d = dev(DeviceKind::Beamsplitter, 0.3);
        let joint = joint_output_distribution(&beam, d, 20).unwrap();
        let pa = beam.model.table(vol(0.6), TableExtent::UpTo(20)).unwrap();
        let pb = beam.model.table(vol(1.4), TableExtent::UpTo(20)).unwrap();
        for (k, m, p) in joint.entries() {
            let f = pa.get(k as usize) * pb.get(m as usize);
            assert!((p - f).abs() <= 1e-14 * f.max(1e-300), "k={k} m={m}");
        }
    }

    #[test]
    fn be_post_selection_matches_polya() {
        let beam = BeamState::new(StatModel::bose_einstein(1.0).unwrap(), vol(1.0));
        let d = dev(DeviceKind::Diaphragm, 0.5);
        let joint = joint_output_distribution(&beam, d, 10).unwrap();
        let w = joint.post_selected(2).unwrap();
        assert!((w.get(2) - 0.375).abs() < 1e-14);
        let split = d.split();
        for n in 0..=10 {
            let w = joint.post_selected(n).unwrap();
            for k in 0..=n {
                let p = polya_pmf(k, n, split, vol(1.0)).unwrap();
                assert!((w.get(k) - p).abs() < 1e-12);
            }
        }
        assert!(joint.post_selected(11).is_err());
    }

    #[test]
    fn transmitted_marginal_is_beam_statistics_in_alpha_s() {
        let beam = BeamState::new(StatModel::bose_einstein(1.0).unwrap(), vol(2.0));
        let d = dev(DeviceKind::Beamsplitter, 0.5);
        let n_max = suggested_n_max(&beam, d, DEFAULT_TAIL_TOLERANCE).unwrap();
        let marginal = transmitted_marginal(&beam, d, n_max).unwrap();
        let diff = max_diff(&marginal, |k| 0.5f64.powi(k as i32 + 1));
        assert!(diff < 1e-10, "{diff}");

        let beam = BeamState::new(StatModel::poisson(3.0).unwrap(), vol(1.0));
        let d = dev(DeviceKind::NeutralFilter, 0.25);
        let n_max = suggested_n_max(&beam, d, DEFAULT_TAIL_TOLERANCE).unwrap();
        let marginal = transmitted_marginal(&beam, d, n_max).unwrap();
        let reference = StatModel::poisson(0.75).unwrap();
        assert!(max_diff(&marginal, |k| reference.pmf(k as u64, vol(1.0))) < 1e-10);
    }

    #[test]
    fn detector_equals_beamsplitter() {
        let beam = BeamState::new(StatModel::bose_einstein(0.8).unwrap(), vol(3.0));
        let tables: Vec<_> = DeviceKind::ALL
            .iter()
            .map(|&k| joint_output_distribution(&beam, dev(k, 0.35), 25).unwrap())
            .collect();
        for t in &tables[1..] {
            assert_eq!(t, &tables[0]);
        }
    }

    #[test]
    fn transparent_limit() {
        let beam = BeamState::new(StatModel::bose_einstein(0.5).unwrap(), vol(1.5));
        let d = dev(DeviceKind::Beamsplitter, 1.0 - 1e-9);
        let joint = joint_output_distribution(&beam, d, 15).unwrap();
        for k in 0..=15 {
            let p = beam.model.pmf(k, vol(1.5));
            assert!((joint.get(k, 0) - p).abs() < 1e-7);
        }
    }

    #[test]
    fn cascade_composes() {
        let half = dev(DeviceKind::NeutralFilter, 0.5);
        assert_eq!(cascade(half, half).unwrap().transmittance(), 0.25);
        let d1 = dev(DeviceKind::Beamsplitter, 0.6);
        let near_one = dev(DeviceKind::Beamsplitter, 1.0 - 1e-12);
        assert!((cascade(d1, near_one).unwrap().transmittance() - 0.6).abs() < 1e-11);
    }

    #[test]
    fn cascade_marginal_matches_single_device() {
        // Apply the second device to the first device's transmitted beam and
        // compare against the product-transmittance device in one step.
        let beam = BeamState::new(StatModel::bose_einstein(1.3).unwrap(), vol(2.0));
        let d1 = dev(DeviceKind::NeutralFilter, 0.6);
        let d2 = dev(DeviceKind::NeutralFilter, 0.5);
        let single = cascade(d1, d2).unwrap();
        let n_max = suggested_n_max(&beam, single, DEFAULT_TAIL_TOLERANCE)
            .unwrap()
            .max(suggested_n_max(&beam, d1, DEFAULT_TAIL_TOLERANCE).unwrap());
        let direct = transmitted_marginal(&beam, single, n_max).unwrap();

        // Sequential route: thin the first output with the Polya law of the
        // second split inside volume alpha1 S.
        let first = transmitted_marginal(&beam, d1, n_max).unwrap();
        let inner = beam.transmitted(d1).unwrap().volume;
        let seq: Vec<f64> = (0..=n_max)
            .map(|j| {
                (j..=n_max)
                    .map(|k| first.get(k as usize) * polya_pmf(j, k, d2.split(), inner).unwrap())
                    .sum()
            })
            .collect();
        let diff = max_diff(&direct, |k| seq[k]);
        assert!(diff < 1e-10, "{diff}");
    }

    #[test]
    fn thermal_output_deviates_from_binomial() {
        let beam = BeamState::new(StatModel::bose_einstein(1.0).unwrap(), vol(1.0));
        let d = dev(DeviceKind::Beamsplitter, 0.5);
        let post = joint_output_distribution(&beam, d, 4)
            .unwrap()
            .post_selected(2)
            .unwrap();
        let binom = binomial_table(2, d.split());
        let tv: f64 = 0.5
            * post
                .values()
                .iter()
                .zip(binom.values())
                .map(|(a, b)| (a - b).abs())
                .sum::<f64>();
        assert!(tv >= 0.1, "{tv}");
    }

    #[test]
    fn marginals_sum_over_table() {
        let beam = BeamState::new(StatModel::glauber(1.0, 2.0).unwrap(), vol(1.0));
        let d = dev(DeviceKind::Detector, 0.4);
        let n_max = suggested_n_max(&beam, d, DEFAULT_TAIL_TOLERANCE).unwrap();
        let joint = joint_output_distribution(&beam, d, n_max).unwrap();
        let t = joint.transmitted_marginal().unwrap();
        let c = joint.complementary_marginal().unwrap();
        assert!((t.total() - 1.0).abs() < 1e-10);
        assert!((c.total() - 1.0).abs() < 1e-10);
        let reference = beam.transmitted(d).unwrap();
        assert!(max_diff(&t, |k| reference.model.pmf(k as u64, reference.volume)) < 1e-10);
    }
}
