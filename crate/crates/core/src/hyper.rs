//! Unsupervised maximum-likelihood estimation of the regularization
//! parameters from a reference reconstruction.
//!
//! Spatial side: the real and imaginary parts of each wavelet subband of the
//! reference are modelled by a Generalized Gauss-Laplace density
//!
//!   f(xi; mu, alpha, beta) = sqrt(beta/2pi)
//!       exp(-(alpha|xi-mu| + beta/2 (xi-mu)^2 + alpha^2/(2 beta)))
//!       / erfc(alpha / sqrt(2 beta)),
//!
//! whose negative log-likelihood is minimized with a zero-order Powell
//! direction-set search (positivity of alpha and beta through log
//! reparameterization). Temporal side: per-voxel successive-difference
//! magnitudes are modelled by a generalized Gaussian with shape p and scale
//! kappa; for fixed p the optimal kappa has the closed form
//! (N-1) / (p sum |diff|^p), leaving a one-variable search over p.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::prox::{GglParams, TemporalParams};
use crate::solver::SpatialParams;
use crate::volume::VolumeSeries;
use crate::wavelet::{self, Subband, WaveletSpec};

/// Knobs of the Powell direction-set minimizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowellConfig {
    /// Line-search tolerance on the parameter step.
    pub coord_tol: f64,
    /// Relative per-sweep improvement below which the search stops.
    pub f_tol: f64,
    pub max_sweeps: usize,
    /// Expansion factor while bracketing a line minimum.
    pub bracket_growth: f64,
}

impl Default for PowellConfig {
    fn default() -> Self {
        Self { coord_tol: 1e-7, f_tol: 1e-8, max_sweeps: 200, bracket_growth: 2.0 }
    }
}

#[derive(Debug, Clone)]
pub struct PowellResult {
    pub x: Vec<f64>,
    pub fx: f64,
    pub sweeps: usize,
    /// False when the sweep budget ran out first (best-so-far returned).
    pub converged: bool,
}

fn clamp_to_bounds(x: &mut [f64], bounds: &[(f64, f64)]) {
    for (xi, &(lo, hi)) in x.iter_mut().zip(bounds) {
        *xi = xi.clamp(lo, hi);
    }
}

/// Feasible step interval along `dir` from `x` inside the box.
fn line_interval(x: &[f64], dir: &[f64], bounds: &[(f64, f64)]) -> (f64, f64) {
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for i in 0..x.len() {
        if dir[i] == 0.0 {
            continue;
        }
        let a = (bounds[i].0 - x[i]) / dir[i];
        let b = (bounds[i].1 - x[i]) / dir[i];
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        lo = lo.max(a);
        hi = hi.min(b);
    }
    if !lo.is_finite() {
        lo = -1e8;
    }
    if !hi.is_finite() {
        hi = 1e8;
    }
    (lo.min(0.0), hi.max(0.0))
}

/// Golden-section line minimization with an expanding bracket around t = 0.
/// Never returns a point worse than t = 0.
fn line_minimize<F: FnMut(f64) -> f64>(
    mut f: F,
    t_lo: f64,
    t_hi: f64,
    tol: f64,
    growth: f64,
) -> (f64, f64) {
    let mut best_t = 0.0;
    let mut best_f = f(0.0);
    let f0 = best_f;
    let mut eval = |t: f64, best_t: &mut f64, best_f: &mut f64| {
        let v = f(t);
        if v < *best_f {
            *best_f = v;
            *best_t = t;
        }
        v
    };
    let span = (t_hi - t_lo).max(1e-12);
    let step = (0.05 * span).min(0.25).max(tol.min(0.25));
    let tp = step.min(t_hi);
    let tn = (-step).max(t_lo);
    let fp =
        if tp > 0.0 { eval(tp, &mut best_t, &mut best_f) } else { f64::INFINITY };
    let fneg =
        if tn < 0.0 { eval(tn, &mut best_t, &mut best_f) } else { f64::INFINITY };
    let (mut lo, mut hi) = (tn, tp);
    if fp < f0 || fneg < f0 {
        // expand downhill until the function turns upward or a bound stops us
        let (dir, mut b, mut fb) = if fp <= fneg { (1.0, tp, fp) } else { (-1.0, tn, fneg) };
        let mut a = 0.0;
        loop {
            let next = (b + dir * growth * (b - a).abs()).clamp(t_lo, t_hi);
            if (next - b).abs() < 1e-300 {
                break;
            }
            let fx = eval(next, &mut best_t, &mut best_f);
            a = b;
            if fx >= fb {
                b = next;
                break;
            }
            b = next;
            fb = fx;
        }
        if dir > 0.0 {
            lo = 0.0f64.min(a - (b - a).abs());
            hi = b;
        } else {
            lo = b;
            hi = 0.0f64.max(a + (a - b).abs());
        }
        lo = lo.max(t_lo);
        hi = hi.min(t_hi);
    }
    // golden section on [lo, hi]
    let phi = 0.618_033_988_749_894_8;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let mut f1 = eval(x1, &mut best_t, &mut best_f);
    let mut f2 = eval(x2, &mut best_t, &mut best_f);
    for _ in 0..200 {
        if (hi - lo).abs() <= tol {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = eval(x1, &mut best_t, &mut best_f);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = eval(x2, &mut best_t, &mut best_f);
        }
    }
    (best_t, best_f)
}

/// Zero-order Powell direction-set minimization over a box.
///
/// Directions start as the coordinate axes; after each sweep the direction of
/// largest decrease may be replaced by the overall sweep displacement, and
/// the set is reset to the axes every `k` sweeps (k = dimension) to avoid
/// degeneracy.
pub fn powell_minimize<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    bounds: &[(f64, f64)],
    cfg: &PowellConfig,
) -> PowellResult {
    let k = x0.len();
    assert_eq!(bounds.len(), k, "one bound pair per variable");
    let mut x = x0.to_vec();
    clamp_to_bounds(&mut x, bounds);
    let mut fx = f(&x);
    let mut dirs: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            let mut d = vec![0.0; k];
            d[i] = 1.0;
            d
        })
        .collect();
    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < cfg.max_sweeps {
        sweeps += 1;
        if sweeps % (k.max(1) * 4) == 0 {
            for (i, d) in dirs.iter_mut().enumerate() {
                d.fill(0.0);
                d[i] = 1.0;
            }
        }
        let x_start = x.clone();
        let f_start = fx;
        let mut biggest_drop = 0.0;
        let mut biggest_idx = 0;
        for (i, dir) in dirs.iter().enumerate() {
            let (t_lo, t_hi) = line_interval(&x, dir, bounds);
            let xc = x.clone();
            let (t, ft) = line_minimize(
                |t| {
                    let mut xt = xc.clone();
                    for (j, d) in dir.iter().enumerate() {
                        xt[j] += t * d;
                    }
                    clamp_to_bounds(&mut xt, bounds);
                    f(&xt)
                },
                t_lo,
                t_hi,
                cfg.coord_tol,
                cfg.bracket_growth,
            );
            if ft < fx {
                if fx - ft > biggest_drop {
                    biggest_drop = fx - ft;
                    biggest_idx = i;
                }
                for (j, d) in dir.iter().enumerate() {
                    x[j] += t * d;
                }
                clamp_to_bounds(&mut x, bounds);
                fx = ft;
            }
        }
        // Powell update: try the composite sweep direction
        let mut sweep_dir: Vec<f64> = x.iter().zip(&x_start).map(|(a, b)| a - b).collect();
        let norm: f64 = sweep_dir.iter().map(|d| d * d).sum::<f64>().sqrt();
        if norm > 1e-14 {
            for d in sweep_dir.iter_mut() {
                *d /= norm;
            }
            let (t_lo, t_hi) = line_interval(&x, &sweep_dir, bounds);
            let xc = x.clone();
            let (t, ft) = line_minimize(
                |t| {
                    let mut xt = xc.clone();
                    for (j, d) in sweep_dir.iter().enumerate() {
                        xt[j] += t * d;
                    }
                    clamp_to_bounds(&mut xt, bounds);
                    f(&xt)
                },
                t_lo,
                t_hi,
                cfg.coord_tol,
                cfg.bracket_growth,
            );
            if ft < fx {
                for (j, d) in sweep_dir.iter().enumerate() {
                    x[j] += t * d;
                }
                clamp_to_bounds(&mut x, bounds);
                fx = ft;
                dirs[biggest_idx] = sweep_dir;
            }
        }
        if 2.0 * (f_start - fx) <= cfg.f_tol * (f_start.abs() + fx.abs()) + 1e-300 {
            converged = true;
            break;
        }
    }
    PowellResult { x, fx, sweeps, converged }
}

/// log(erfc(z)) without underflow for large z.
pub fn ln_erfc(z: f64) -> f64 {
    if z < 12.0 {
        erfc(z).ln()
    } else {
        // asymptotic series erfc(z) ~ exp(-z^2)/(z sqrt(pi)) (1 - 1/(2z^2) + ...)
        let iz2 = 1.0 / (2.0 * z * z);
        let mut series = 1.0;
        let mut term = 1.0;
        for n in 1..=6 {
            term *= -(2 * n - 1) as f64 * iz2;
            series += term;
        }
        -z * z - (z * std::f64::consts::PI.sqrt()).ln() + series.ln()
    }
}

/// Result of one Gauss-Laplace fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GglFit {
    pub mu: f64,
    pub alpha: f64,
    pub beta: f64,
    pub converged: bool,
    /// Set when the samples were too few or had zero variance and a moment
    /// fallback was returned instead of an ML fit.
    pub degenerate: bool,
}

/// Mean negative log-likelihood of the GGL density over the samples.
pub fn ggl_nll(samples: &[f64], mu: f64, alpha: f64, beta: f64) -> f64 {
    let n = samples.len() as f64;
    let mut abs_sum = 0.0;
    let mut sq_sum = 0.0;
    for &s in samples {
        let d = s - mu;
        abs_sum += d.abs();
        sq_sum += d * d;
    }
    alpha * abs_sum / n + 0.5 * beta * sq_sum / n + alpha * alpha / (2.0 * beta)
        - 0.5 * beta.ln()
        + ln_erfc(alpha / (2.0 * beta).sqrt())
        + 0.5 * (2.0 * std::f64::consts::PI).ln()
}

/// Fewest samples for which the ML fit is attempted.
pub const GGL_MIN_SAMPLES: usize = 32;

/// Maximum-likelihood Gauss-Laplace fit on real samples.
///
/// The search runs over (mu, ln alpha, ln beta) on standardized samples
/// (the family is closed under affine maps) and transforms back. Tiny or
/// constant sample sets fall back to Gaussian moments with the degenerate
/// flag set.
pub fn fit_ggl(samples: &[f64], cfg: &PowellConfig) -> GglFit {
    let n = samples.len();
    if n == 0 {
        return GglFit { mu: 0.0, alpha: 0.0, beta: 1e12, converged: false, degenerate: true };
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    let var = samples.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / n as f64;
    if var <= 0.0 || !var.is_finite() {
        return GglFit { mu: mean, alpha: 0.0, beta: 1e12, converged: false, degenerate: true };
    }
    if n < GGL_MIN_SAMPLES {
        return GglFit { mu: mean, alpha: 0.0, beta: 1.0 / var, converged: false, degenerate: true };
    }
    let std = var.sqrt();
    let y: Vec<f64> = samples.iter().map(|s| (s - mean) / std).collect();
    // standardized start: Gaussian point (mu = 0, alpha ~ 0, beta = 1)
    let x0 = [0.0, -18.0, 0.0];
    let bounds = [(-10.0, 10.0), (-20.0, 6.0), (-12.0, 12.0)];
    let result = powell_minimize(
        |x| ggl_nll(&y, x[0], x[1].exp(), x[2].exp()),
        &x0,
        &bounds,
        cfg,
    );
    let mu_y = result.x[0];
    let mut alpha_y = result.x[1].exp();
    let beta_y = result.x[2].exp();
    // the log parameterization cannot express alpha = 0 exactly; snap values
    // at the lower bound back to the Gaussian limit
    if result.x[1] <= bounds[1].0 + 1e-9 {
        alpha_y = 0.0;
    }
    GglFit {
        mu: mean + std * mu_y,
        alpha: alpha_y / std,
        beta: beta_y / (std * std),
        converged: result.converged,
        degenerate: false,
    }
}

/// Closed-form ML scale of the generalized Gaussian at fixed shape p:
/// kappa = (N-1) / (p sum |diff|^p) for N-1 difference samples.
pub fn gg_kappa_closed_form(diffs: &[f64], p: f64) -> f64 {
    let s: f64 = diffs.iter().map(|d| d.abs().powf(p)).sum();
    if s == 0.0 {
        return f64::INFINITY;
    }
    diffs.len() as f64 / (p * s)
}

/// Negative log-likelihood of the generalized Gaussian on the differences.
pub fn gg_nll(diffs: &[f64], kappa: f64, p: f64) -> f64 {
    let n = diffs.len() as f64;
    let s: f64 = diffs.iter().map(|d| d.abs().powf(p)).sum();
    kappa * s - n * (p.ln() + kappa.ln() / p - (2.0f64).ln() - ln_gamma(1.0 / p))
}

/// Cap used when every difference at a voxel is zero and the ML scale
/// diverges.
pub const KAPPA_CAP: f64 = 1e12;

const P_MAX: f64 = 8.0;

/// Per-voxel generalized Gaussian fit: profile kappa in closed form and
/// search the shape p on [1, 8]. Returns (kappa, p, flagged).
pub fn fit_gg_voxel(diffs: &[f64], cfg: &PowellConfig) -> (f64, f64, bool) {
    if diffs.is_empty() || diffs.iter().all(|&d| d == 0.0) {
        return (KAPPA_CAP, 2.0, true);
    }
    let profile = |p: f64| {
        let kappa = gg_kappa_closed_form(diffs, p);
        gg_nll(diffs, kappa, p)
    };
    let result = powell_minimize(|x| profile(x[0]), &[2.0], &[(1.0, P_MAX)], cfg);
    let p = result.x[0];
    (gg_kappa_closed_form(diffs, p), p, false)
}

/// Per-voxel temporal parameters over a full volume (kappa = 0 off-mask).
#[derive(Debug, Clone)]
pub struct TemporalField {
    pub dims: (usize, usize, usize),
    pub kappa: Vec<f64>,
    pub p: Vec<f64>,
    pub flagged: usize,
}

impl TemporalField {
    /// Median (kappa, p) over the masked voxels: the voxel-uniform pair the
    /// solver consumes.
    pub fn global(&self, mask: &[bool]) -> Option<TemporalParams> {
        let mut kappas: Vec<f64> =
            self.kappa.iter().zip(mask).filter(|(_, &m)| m).map(|(&k, _)| k).collect();
        let mut ps: Vec<f64> =
            self.p.iter().zip(mask).filter(|(_, &m)| m).map(|(&p, _)| p).collect();
        if kappas.is_empty() {
            return None;
        }
        kappas.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let kappa = kappas[kappas.len() / 2];
        let p = ps[ps.len() / 2];
        TemporalParams::new(kappa, p).ok()
    }
}

/// Fit the temporal generalized Gaussian at every masked voxel of the
/// reference series (magnitudes of complex successive differences).
pub fn fit_gg_temporal(
    reference: &VolumeSeries,
    mask: &[bool],
    cfg: &PowellConfig,
) -> Result<TemporalField> {
    let n_r = reference.n_frames();
    if n_r < 3 {
        return Err(Error::InvalidConfig(format!(
            "temporal fit needs at least 3 frames, got {}",
            n_r
        )));
    }
    let dims = reference.dims();
    let nvox = dims.0 * dims.1 * dims.2;
    if mask.len() != nvox {
        return Err(Error::ShapeMismatch("mask length differs from volume".into()));
    }
    if !mask.iter().any(|&m| m) {
        return Err(Error::EmptyMask);
    }
    let mut kappa = vec![0.0f64; nvox];
    let mut p = vec![2.0f64; nvox];
    let flags: Vec<bool> = {
        let fits: Vec<(usize, f64, f64, bool)> = (0..nvox)
            .into_par_iter()
            .filter(|&v| mask[v])
            .map(|v| {
                let diffs: Vec<f64> = (1..n_r)
                    .map(|t| (reference.frame(t).data()[v] - reference.frame(t - 1).data()[v]).norm())
                    .collect();
                let (k, pv, flagged) = fit_gg_voxel(&diffs, cfg);
                (v, k, pv, flagged)
            })
            .collect();
        let mut flags = vec![false; nvox];
        for (v, k, pv, fl) in fits {
            kappa[v] = k;
            p[v] = pv;
            flags[v] = fl;
        }
        flags
    };
    let flagged = flags.iter().filter(|&&f| f).count();
    Ok(TemporalField { dims, kappa, p, flagged })
}

/// Default fraction of the peak mean magnitude that defines the brain mask.
pub const BRAIN_MASK_FRACTION: f64 = 0.1;

/// Support mask from the time-mean magnitude of the reference series.
pub fn brain_mask(reference: &VolumeSeries, fraction: f64) -> Vec<bool> {
    let dims = reference.dims();
    let nvox = dims.0 * dims.1 * dims.2;
    let n_r = reference.n_frames() as f64;
    let mut mean_mag = vec![0.0f64; nvox];
    for t in 0..reference.n_frames() {
        for (m, c) in mean_mag.iter_mut().zip(reference.frame(t).data()) {
            *m += c.norm();
        }
    }
    let max = mean_mag.iter().cloned().fold(0.0f64, f64::max);
    mean_mag.iter().map(|&m| m / n_r > fraction * max / n_r).collect()
}

/// The complete estimated parameter set.
#[derive(Debug, Clone)]
pub struct HyperParams {
    pub spatial: SpatialParams,
    pub temporal: Option<TemporalParams>,
    pub wavelet_family: String,
    pub j_max: usize,
    pub mask_fraction: f64,
    pub masked_fraction: f64,
    pub flagged_voxels: usize,
}

/// Estimate every regularization parameter from a reference reconstruction:
/// per-subband GGL triples for real and imaginary parts (coefficients pooled
/// across frames), and for series of three or more frames the temporal pair
/// aggregated from per-voxel fits by masked medians.
pub fn estimate_all(
    reference: &VolumeSeries,
    spec: &WaveletSpec,
    mask: Option<&[bool]>,
    cfg: &PowellConfig,
) -> Result<HyperParams> {
    spec.check_dims(reference.dims())?;
    let fields: Result<Vec<_>> =
        reference.frames().par_iter().map(|f| wavelet::forward(f, spec)).collect();
    let fields = fields?;
    let bands = fields[0].subbands();
    let fitted: Vec<(Subband, GglParams)> = bands
        .par_iter()
        .map(|&band| {
            let mut re = Vec::new();
            let mut im = Vec::new();
            for field in &fields {
                for c in field.band(band) {
                    re.push(c.re);
                    im.push(c.im);
                }
            }
            let fr = fit_ggl(&re, cfg);
            let fi = fit_ggl(&im, cfg);
            let params = GglParams {
                mu: num_complex::Complex64::new(fr.mu, fi.mu),
                alpha: (fr.alpha, fi.alpha),
                beta: (fr.beta, fi.beta),
            };
            (band, params)
        })
        .collect();
    let mut spatial = SpatialParams::zero(spec.j_max());
    for (band, params) in fitted {
        *spatial.band_mut(band) = params;
    }

    let owned_mask;
    let mask = match mask {
        Some(m) => m,
        None => {
            owned_mask = brain_mask(reference, BRAIN_MASK_FRACTION);
            &owned_mask
        }
    };
    let masked = mask.iter().filter(|&&m| m).count();
    let masked_fraction = masked as f64 / mask.len() as f64;

    let (temporal, flagged) = if reference.n_frames() >= 3 && masked > 0 {
        let field = fit_gg_temporal(reference, mask, cfg)?;
        (field.global(mask), field.flagged)
    } else {
        (None, 0)
    };

    Ok(HyperParams {
        spatial,
        temporal,
        wavelet_family: spec.family().to_string(),
        j_max: spec.j_max(),
        mask_fraction: BRAIN_MASK_FRACTION,
        masked_fraction,
        flagged_voxels: flagged,
    })
}

// --- JSON form -------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct GglTripleJson {
    mu_re: f64,
    mu_im: f64,
    alpha_re: f64,
    alpha_im: f64,
    beta_re: f64,
    beta_im: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct TemporalJson {
    kappa: f64,
    p: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct MaskJson {
    rule: String,
    fraction: f64,
    masked_fraction: f64,
    flagged_voxels: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct HyperParamsJson {
    wavelet_family: String,
    j_max: usize,
    spatial: BTreeMap<String, GglTripleJson>,
    temporal: Option<TemporalJson>,
    mask: MaskJson,
}

impl HyperParams {
    pub fn to_json(&self) -> serde_json::Value {
        let mut spatial = BTreeMap::new();
        let probe = SpatialParams::zero(self.j_max);
        let mut bands = vec![Subband::Approx];
        for j in (1..=self.j_max).rev() {
            for o in 1..=7u8 {
                bands.push(Subband::Detail { o, j });
            }
        }
        let _ = probe;
        for band in bands {
            let p = self.spatial.band(band);
            spatial.insert(
                band.label(),
                GglTripleJson {
                    mu_re: p.mu.re,
                    mu_im: p.mu.im,
                    alpha_re: p.alpha.0,
                    alpha_im: p.alpha.1,
                    beta_re: p.beta.0,
                    beta_im: p.beta.1,
                },
            );
        }
        let doc = HyperParamsJson {
            wavelet_family: self.wavelet_family.clone(),
            j_max: self.j_max,
            spatial,
            temporal: self.temporal.map(|t| TemporalJson { kappa: t.kappa, p: t.p }),
            mask: MaskJson {
                rule: "mean magnitude > fraction * max".into(),
                fraction: self.mask_fraction,
                masked_fraction: self.masked_fraction,
                flagged_voxels: self.flagged_voxels,
            },
        };
        serde_json::to_value(doc).expect("hyperparams serialize")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let doc: HyperParamsJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::BadFile(format!("hyperparams json: {}", e)))?;
        let mut spatial = SpatialParams::zero(doc.j_max);
        let mut bands = vec![Subband::Approx];
        for j in (1..=doc.j_max).rev() {
            for o in 1..=7u8 {
                bands.push(Subband::Detail { o, j });
            }
        }
        for band in bands {
            let t = doc
                .spatial
                .get(&band.label())
                .ok_or_else(|| Error::BadFile(format!("missing subband {}", band.label())))?;
            *spatial.band_mut(band) = GglParams::new(
                num_complex::Complex64::new(t.mu_re, t.mu_im),
                (t.alpha_re, t.alpha_im),
                (t.beta_re, t.beta_im),
            )?;
        }
        let temporal = match doc.temporal {
            Some(t) => Some(TemporalParams::new(t.kappa, t.p)?),
            None => None,
        };
        Ok(HyperParams {
            spatial,
            temporal,
            wavelet_family: doc.wavelet_family,
            j_max: doc.j_max,
            mask_fraction: doc.mask.fraction,
            masked_fraction: doc.mask.masked_fraction,
            flagged_voxels: doc.mask.flagged_voxels,
        })
    }
}
