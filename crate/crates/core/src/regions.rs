//! Frequency regions `D1`–`D4` and the multiplier envelope bounds on them.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::norms::fl_masked;
use crate::error::{Error, Result};
use crate::propagator::multipliers_shifted;
use crate::scalar::Scalar;
use crate::spectral::{apply_symbol, symbols, Grid2D, SpectralField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    D1,
    D2,
    D3,
    D41,
    D42,
}

impl Region {
    pub const ALL: [Region; 5] = [Region::D1, Region::D2, Region::D3, Region::D41, Region::D42];

    pub fn is_d4(self) -> bool {
        matches!(self, Region::D41 | Region::D42)
    }

    pub fn name(self) -> &'static str {
        match self {
            Region::D1 => "D1",
            Region::D2 => "D2",
            Region::D3 => "D3",
            Region::D41 => "D41",
            Region::D42 => "D42",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Region {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Region::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| Error::BadRegion(s.to_string()))
    }
}

/// Half-open split by `|ξ|` against `|ξ⃗|²`; the origin lands in `D1`.
pub fn classify<T: Scalar>(xi: T, eta: T) -> Region {
    let r2 = xi * xi + eta * eta;
    let a = xi.abs();
    if a >= r2 {
        Region::D1
    } else if a >= r2 / T::lit(2.0) {
        Region::D2
    } else if a >= r2 / T::lit(4.0) {
        Region::D3
    } else if r2 >= T::one() {
        Region::D41
    } else {
        Region::D42
    }
}

/// Region label of every grid frequency.
#[derive(Debug, Clone)]
pub struct RegionMask<T: Scalar> {
    grid: Grid2D<T>,
    labels: Vec<Region>,
}

impl<T: Scalar> RegionMask<T> {
    pub fn new(grid: Grid2D<T>) -> Self {
        let labels = (0..grid.len())
            .map(|k| {
                let (xi, eta) = grid.wavevector(k);
                classify(xi, eta)
            })
            .collect();
        Self { grid, labels }
    }

    pub fn grid(&self) -> &Grid2D<T> {
        &self.grid
    }

    pub fn labels(&self) -> &[Region] {
        &self.labels
    }

    pub fn count(&self, region: Region) -> usize {
        self.labels.iter().filter(|&&r| r == region).count()
    }

    /// Largest `|ξ⃗|` carrying the label.
    pub fn max_radius(&self, region: Region) -> T {
        (0..self.grid.len())
            .filter(|&k| self.labels[k] == region)
            .map(|k| {
                let (xi, eta) = self.grid.wavevector(k);
                xi.hypot(eta)
            })
            .fold(T::zero(), T::max)
    }
}

/// Term of the two-part `D4`, `i = 3` envelope that is larger at a sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum D4Term {
    /// `e^{-|ξ⃗|²t/2}`
    Heat,
    /// `(ξ²/|ξ⃗|⁴) e^{-(ξ²/|ξ⃗|²)t}`
    Slow,
}

/// Envelope as a sum of `a e^{-c t}` terms.
fn envelope_terms(i: u8, region: Region, xi: f64, eta: f64) -> Vec<(f64, f64)> {
    let r2 = xi * xi + eta * eta;
    match region {
        Region::D1 => vec![(1.0, r2 / 2.0)],
        Region::D2 => vec![(1.0, r2 / 4.0)],
        Region::D3 => vec![(1.0, r2 / 32.0)],
        Region::D41 | Region::D42 => {
            let q = xi * xi / r2;
            match i {
                1 => vec![(xi.abs() / r2, q)],
                2 => vec![(1.0, q)],
                _ => vec![(1.0, r2 / 2.0), (q / r2, q)],
            }
        }
    }
}

fn check_index(i: u8) {
    assert!((1..=3).contains(&i), "multiplier index must be 1, 2 or 3");
}

/// Envelope with unit constant for `M̂ᵢ` on `region`.
pub fn envelope(i: u8, region: Region, xi: f64, eta: f64, t: f64) -> Result<f64> {
    check_index(i);
    let actual = classify(xi, eta);
    if actual != region {
        return Err(Error::RegionMismatch { xi, eta, expected: region.to_string(), actual: actual.to_string() });
    }
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    Ok(envelope_terms(i, region, xi, eta).iter().map(|&(a, c)| a * (-c * t).exp()).sum())
}

/// `|M̂ᵢ| / envelope`, both scaled by `e^{κt}` with `κ` the slowest envelope rate.
fn ratio(i: u8, region: Region, xi: f64, eta: f64, t: f64) -> Result<(f64, Option<D4Term>)> {
    let terms = envelope_terms(i, region, xi, eta);
    let kappa = terms.iter().map(|&(_, c)| c).fold(f64::INFINITY, f64::min);
    let scaled: Vec<f64> = terms.iter().map(|&(a, c)| a * ((kappa - c) * t).exp()).collect();
    let env: f64 = scaled.iter().sum();
    let m = multipliers_shifted(xi, eta, t, kappa)?;
    let mi = match i {
        1 => m.m1,
        2 => m.m2,
        _ => m.m3,
    }
    .norm();
    let dominant = (terms.len() == 2).then(|| if scaled[0] >= scaled[1] { D4Term::Heat } else { D4Term::Slow });
    let r = if env == 0.0 {
        if mi == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        mi / env
    };
    Ok((r, dominant))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub region: Region,
    pub i: u8,
    pub sup_ratio: f64,
    pub argmax_xi: f64,
    pub argmax_eta: f64,
    pub argmax_t: f64,
    /// Frequency samples times time samples.
    pub n_samples: usize,
    /// Sup restricted to `t ≤ short_horizon`.
    pub sup_ratio_short: f64,
    /// Larger envelope term at the argmax (`D4`, `i = 3` only).
    pub dominant: Option<D4Term>,
}

impl BoundReport {
    /// `sup(all t) / sup(t ≤ short_horizon)`
    pub fn growth(&self) -> f64 {
        self.sup_ratio / self.sup_ratio_short
    }
}

/// Random sweep over `(ξ⃗, t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub seed: u64,
    /// Accepted frequency samples per region.
    pub per_region: usize,
    pub r_min: f64,
    pub r_max: f64,
    /// Sample times; always include `t = 0`.
    pub times: Vec<f64>,
    pub short_horizon: f64,
}

impl SweepSpec {
    /// `t = 0` plus `n` log-spaced times in `[t_lo, t_hi]`.
    pub fn log_times(n: usize, t_lo: f64, t_hi: f64) -> Vec<f64> {
        let mut ts = vec![0.0];
        ts.extend((0..n).map(|j| (t_lo.ln() + (t_hi / t_lo).ln() * j as f64 / (n - 1).max(1) as f64).exp()));
        ts
    }

    pub fn standard(seed: u64, per_region: usize) -> Self {
        Self { seed, per_region, r_min: 1e-3, r_max: 8.0, times: Self::log_times(50, 1e-3, 100.0), short_horizon: 10.0 }
    }

    /// Frequencies per region by rejection from log-uniform `|ξ⃗|` and uniform angle.
    pub fn frequencies(&self) -> Vec<(Region, f64, f64)> {
        let mut out = Vec::with_capacity(5 * self.per_region);
        for (n, region) in Region::ALL.into_iter().enumerate() {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed.wrapping_add(n as u64));
            let mut got = 0;
            let mut tries = 0usize;
            while got < self.per_region && tries < 1000 * self.per_region.max(1) {
                tries += 1;
                let r = (self.r_min.ln() + rng.gen::<f64>() * (self.r_max / self.r_min).ln()).exp();
                let th = rng.gen::<f64>() * std::f64::consts::TAU;
                let (xi, eta) = (r * th.cos(), r * th.sin());
                if classify(xi, eta) == region {
                    out.push((region, xi, eta));
                    got += 1;
                }
            }
        }
        out
    }
}

/// Sup of `|M̂ᵢ|/envelope` for each `(region, i)` over the given frequencies and times.
///
/// Reports come out ordered by region then index. A frequency whose label
/// disagrees with its tag is a [`Error::RegionMismatch`].
pub fn verify_bounds_on(samples: &[(Region, f64, f64)], times: &[f64], short_horizon: f64) -> Result<Vec<BoundReport>> {
    for &(region, xi, eta) in samples {
        let actual = classify(xi, eta);
        if actual != region {
            return Err(Error::RegionMismatch { xi, eta, expected: region.to_string(), actual: actual.to_string() });
        }
    }
    let mut reports = Vec::new();
    for region in Region::ALL {
        let freqs: Vec<(f64, f64)> = samples.iter().filter(|s| s.0 == region).map(|s| (s.1, s.2)).collect();
        if freqs.is_empty() {
            return Err(Error::EmptySweep(region.to_string()));
        }
        for i in 1..=3u8 {
            // (ratio, short ratio, sample index, time index, dominant) per frequency, reduced in index order
            let per: Vec<(f64, f64, usize, Option<D4Term>)> = freqs
                .par_iter()
                .map(|&(xi, eta)| {
                    let mut best = (f64::NEG_INFINITY, f64::NEG_INFINITY, 0usize, None);
                    for (j, &t) in times.iter().enumerate() {
                        let (r, dom) = ratio(i, region, xi, eta, t)?;
                        if r > best.0 {
                            best = (r, best.1, j, dom);
                        }
                        if t <= short_horizon && r > best.1 {
                            best.1 = r;
                        }
                    }
                    Ok(best)
                })
                .collect::<Result<_>>()?;
            let mut sup = f64::NEG_INFINITY;
            let mut sup_short = f64::NEG_INFINITY;
            let mut arg = (0usize, 0usize, None);
            for (n, &(r, rs, j, dom)) in per.iter().enumerate() {
                if r > sup {
                    sup = r;
                    arg = (n, j, dom);
                }
                sup_short = sup_short.max(rs);
            }
            let (xi, eta) = freqs[arg.0];
            reports.push(BoundReport {
                region,
                i,
                sup_ratio: sup,
                argmax_xi: xi,
                argmax_eta: eta,
                argmax_t: times[arg.1],
                n_samples: freqs.len() * times.len(),
                sup_ratio_short: sup_short,
                dominant: arg.2,
            });
        }
    }
    Ok(reports)
}

pub fn verify_bounds(spec: &SweepSpec) -> Result<Vec<BoundReport>> {
    verify_bounds_on(&spec.frequencies(), &spec.times, spec.short_horizon)
}

const FROZEN: &str = include_str!("../data/bound_constants.csv");

/// Sup ratios measured once on a dense sweep (`region, i, constant`).
pub fn frozen_constants() -> Vec<(Region, u8, f64)> {
    let mut rdr = csv::Reader::from_reader(FROZEN.as_bytes());
    rdr.records()
        .map(|rec| {
            let rec = rec.expect("bundled constants parse");
            (rec[0].parse().expect("region"), rec[1].parse().expect("index"), rec[2].parse().expect("constant"))
        })
        .collect()
}

pub fn frozen_constant(region: Region, i: u8) -> Option<f64> {
    frozen_constants().into_iter().find(|c| c.0 == region && c.1 == i).map(|c| c.2)
}

/// Writes `region,i,sup_ratio,sup_ratio_short,growth,frozen,argmax_xi,argmax_eta,argmax_t,n_samples,dominant`.
pub fn write_bounds_csv<W: std::io::Write>(w: W, reports: &[BoundReport]) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record([
        "region",
        "i",
        "sup_ratio",
        "sup_ratio_short",
        "growth",
        "frozen",
        "argmax_xi",
        "argmax_eta",
        "argmax_t",
        "n_samples",
        "dominant",
    ])?;
    for r in reports {
        let frozen = frozen_constant(r.region, r.i).map(|c| c.to_string()).unwrap_or_default();
        let dominant = match r.dominant {
            Some(D4Term::Heat) => "heat",
            Some(D4Term::Slow) => "slow",
            None => "",
        };
        wr.write_record([
            r.region.to_string(),
            r.i.to_string(),
            r.sup_ratio.to_string(),
            r.sup_ratio_short.to_string(),
            r.growth().to_string(),
            frozen,
            r.argmax_xi.to_string(),
            r.argmax_eta.to_string(),
            r.argmax_t.to_string(),
            r.n_samples.to_string(),
            dominant.to_string(),
        ])?;
    }
    wr.flush()?;
    Ok(())
}

/// `‖ |∇|^k e^{ctΔ} f ‖_{FL^r(region)}` at each time; `region` is `D1` or `D4`
/// (tag either `D41` or `D42` for the union).
pub fn heat_region_decay<T: Scalar>(
    f: &SpectralField<T>,
    region: Region,
    r: u8,
    k: u32,
    c: T,
    times: &[T],
) -> Result<Vec<T>> {
    if matches!(region, Region::D2 | Region::D3) {
        return Err(Error::BadRegion(region.to_string()));
    }
    assert!(r == 1 || r == 2, "FL exponent must be 1 or 2");
    let mask = RegionMask::new(*f.grid());
    let keep = |idx: usize| {
        let l = mask.labels[idx];
        if region == Region::D1 {
            l == Region::D1
        } else {
            l.is_d4()
        }
    };
    let base = apply_symbol(f, symbols::abs_grad_pow(T::lit(k as f64)))?;
    times
        .iter()
        .map(|&t| {
            if t < T::zero() {
                return Err(Error::NegativeTime(t.to_f64_lossy()));
            }
            let g = apply_symbol(&base, symbols::heat(c, t))?;
            Ok(fl_masked(&g, T::lit(r as f64), keep))
        })
        .collect()
}
