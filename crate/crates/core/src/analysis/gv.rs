//! Gilbert-Varshamov bound for labelweight under the balanced labeling, and a
//! Monte Carlo check of it.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::entropy::{entropy_gen, entropy_peak};
use super::params::SLACK;
use crate::codes::{ball_volume, min_labelweight, Labeling};
use crate::error::{Error, Result};
use crate::galois::{Fe, Field};
use crate::limits;
use crate::matrix::Matrix;

/// Length n = s·w over GF(q), target labelweight δs, slack ε.
#[derive(Clone, Debug, PartialEq)]
pub struct GvConfig {
    pub q: u32,
    pub w: usize,
    pub s: usize,
    pub delta_s: usize,
    pub eps: f64,
}

impl GvConfig {
    pub fn new(q: u32, w: usize, s: usize, delta_s: usize, eps: f64) -> Result<GvConfig> {
        let cfg = GvConfig { q, w, s, delta_s, eps };
        if q < 2 || w == 0 || s == 0 {
            return Err(Error::ParameterOutOfRange("need q ≥ 2, w ≥ 1, s ≥ 1".into()));
        }
        if cfg.delta() > entropy_peak(q as f64, w as f64) + SLACK {
            return Err(Error::ParameterOutOfRange(format!(
                "δ = {} exceeds 1 − q^-w",
                cfg.delta()
            )));
        }
        let room = 1.0 - cfg.entropy() / w as f64;
        if !(0.0..=room + SLACK).contains(&eps) {
            return Err(Error::ParameterOutOfRange(format!("ε = {eps} outside [0, {room:.6}]")));
        }
        Ok(cfg)
    }

    pub fn n(&self) -> usize {
        self.s * self.w
    }

    pub fn delta(&self) -> f64 {
        self.delta_s as f64 / self.s as f64
    }

    pub fn entropy(&self) -> f64 {
        entropy_gen(self.q as f64, self.w as f64, self.delta())
    }

    /// q^{−εn}, the failure probability bound.
    pub fn failure_bound(&self) -> f64 {
        (self.q as f64).powf(-self.eps * self.n() as f64)
    }
}

/// k = ⌊n − s·H_{q,w}(δ) − n·ε⌋, which must be at least 1.
pub fn gv_dimension(cfg: &GvConfig) -> Result<usize> {
    let n = cfg.n() as f64;
    let k = (n - cfg.s as f64 * cfg.entropy() - n * cfg.eps + SLACK).floor();
    if k < 1.0 {
        return Err(Error::Degenerate(format!("GV dimension {k} is below 1")));
    }
    Ok(k as usize)
}

/// Exact side of the union bound: q^k · Vol_L(δs − 1) against q^{n(1−ε)}, in log_q.
#[derive(Clone, Debug, PartialEq)]
pub struct VolumeCheck {
    pub log_volume: f64,
    pub k: usize,
    pub log_limit: f64,
}

impl VolumeCheck {
    pub fn holds(&self) -> bool {
        self.log_volume + self.k as f64 <= self.log_limit + SLACK
    }
}

pub fn volume_check(cfg: &GvConfig) -> Result<VolumeCheck> {
    let k = gv_dimension(cfg)?;
    let radius = cfg.delta_s.saturating_sub(1) as u64;
    let vol = ball_volume(cfg.s as u64, cfg.w as u64, cfg.q as u64, radius)?;
    let log_volume = vol.to_f64().unwrap_or(f64::INFINITY).ln() / (cfg.q as f64).ln();
    Ok(VolumeCheck { log_volume, k, log_limit: cfg.n() as f64 * (1.0 - cfg.eps) })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GvReport {
    pub config: GvConfig,
    pub k: usize,
    pub trials: usize,
    /// Sampled codes with labelweight below δs.
    pub failures: usize,
    /// Samples whose generator lost rank (some nonzero message encodes to zero).
    pub rank_deficient: usize,
    pub bound: f64,
    /// Bound plus three binomial standard deviations.
    pub threshold: f64,
    pub volume: VolumeCheck,
}

impl GvReport {
    pub fn fraction(&self) -> f64 {
        self.failures as f64 / self.trials as f64
    }

    pub fn passed(&self) -> bool {
        self.fraction() <= self.threshold && self.volume.holds()
    }
}

/// Samples `trials` uniform k×n generator matrices; trial i draws from stream i of
/// a ChaCha generator seeded with `seed`, so trials are independent of order.
pub fn gv_monte_carlo(cfg: &GvConfig, trials: usize, seed: u64) -> Result<GvReport> {
    if trials == 0 {
        return Err(Error::ParameterOutOfRange("need at least one trial".into()));
    }
    let k = gv_dimension(cfg)?;
    let field = Field::of_order(cfg.q as u64)?;
    let labeling = Labeling::balanced(cfg.s, cfg.w)?;
    let budget = limits::budget(limits::LABELWEIGHT_BUDGET);
    let needed = (cfg.q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::EnumerationBudgetExceeded { what: "GV labelweight enumeration", needed, budget });
    }
    let n = cfg.n();
    let mut failures = 0;
    let mut rank_deficient = 0;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let data: Vec<Fe> = (0..k * n).map(|_| Fe(rng.random_range(0..cfg.q))).collect();
        let g = Matrix::new(&field, k, n, data)?;
        let lw = min_labelweight(&g, &labeling, budget)?;
        if lw < cfg.delta_s {
            failures += 1;
        }
        if lw == 0 {
            rank_deficient += 1;
        }
    }
    let bound = cfg.failure_bound();
    let threshold = bound + 3.0 * (bound * (1.0 - bound) / trials as f64).sqrt();
    Ok(GvReport {
        config: cfg.clone(),
        k,
        trials,
        failures,
        rank_deficient,
        bound,
        threshold,
        volume: volume_check(cfg)?,
    })
}
