//! Synthetic ground truth: ellipsoid phantoms, smooth complex coil profiles,
//! temporally correlated series, and seeded undersampled acquisition with
//! coil-correlated Gaussian noise.
//!
//! Intensities sit around 100 in arbitrary units, matching the scale the
//! default solver constants were tuned for. All randomness flows from
//! explicit seeds; acquisitions draw one noise substream per frame so
//! regeneration is bit-reproducible.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg;
use crate::sense::{self, EncodingOperator};
use crate::volume::{CoilDataset, ComplexVolume, NoiseCovariance, SenseGeometry, SensitivitySet, VolumeSeries};

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Ellipsoid {
    /// Center in voxel coordinates.
    pub center: (f64, f64, f64),
    pub semi_axes: (f64, f64, f64),
    pub intensity: f64,
    /// Constant phase of this component, radians.
    pub phase: f64,
}

impl Ellipsoid {
    pub fn contains(&self, x: f64, y: f64, z: f64) -> bool {
        let dx = (x - self.center.0) / self.semi_axes.0;
        let dy = (y - self.center.1) / self.semi_axes.1;
        let dz = (z - self.center.2) / self.semi_axes.2;
        dx * dx + dy * dy + dz * dz <= 1.0
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PhantomSpec {
    pub dims: (usize, usize, usize),
    pub ellipsoids: Vec<Ellipsoid>,
    /// Linear phase ramp coefficients (radians across the whole extent).
    pub phase_ramp: (f64, f64, f64),
    pub seed: u64,
}

impl PhantomSpec {
    /// Head-like default: an outer shell plus a few interior structures,
    /// slightly jittered by the seed, wrapped in a gentle phase ramp.
    pub fn standard(dims: (usize, usize, usize), seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let (x, y, z) = (dims.0 as f64, dims.1 as f64, dims.2 as f64);
        let mut jitter = |scale: f64| (rng.random::<f64>() - 0.5) * scale;
        let ellipsoids = vec![
            Ellipsoid {
                center: (x / 2.0, y / 2.0, z / 2.0),
                semi_axes: (0.42 * x, 0.44 * y, 0.42 * z),
                intensity: 100.0,
                phase: 0.05,
            },
            Ellipsoid {
                center: (x * 0.38 + jitter(2.0), y * 0.40 + jitter(2.0), z * 0.5),
                semi_axes: (0.12 * x, 0.10 * y, 0.16 * z),
                intensity: 35.0,
                phase: 0.12,
            },
            Ellipsoid {
                center: (x * 0.64 + jitter(2.0), y * 0.58 + jitter(2.0), z * 0.44),
                semi_axes: (0.10 * x, 0.14 * y, 0.12 * z),
                intensity: -30.0,
                phase: 0.0,
            },
            Ellipsoid {
                center: (x * 0.5, y * 0.68 + jitter(1.5), z * 0.6),
                semi_axes: (0.07 * x, 0.07 * y, 0.09 * z),
                intensity: 25.0,
                phase: -0.08,
            },
        ];
        Self { dims, ellipsoids, phase_ramp: (0.08, -0.05, 0.04), seed }
    }
}

/// Sum the complex contributions of every ellipsoid containing each voxel,
/// then apply the global phase ramp.
pub fn make_phantom(spec: &PhantomSpec) -> ComplexVolume {
    let (nx, ny, nz) = spec.dims;
    ComplexVolume::from_fn(spec.dims, |x, y, z| {
        let mut acc = Complex64::new(0.0, 0.0);
        for e in &spec.ellipsoids {
            if e.contains(x as f64, y as f64, z as f64) {
                acc += Complex64::from_polar(e.intensity, e.phase);
            }
        }
        if acc.norm_sqr() > 0.0 {
            let ramp = spec.phase_ramp.0 * x as f64 / nx as f64
                + spec.phase_ramp.1 * y as f64 / ny as f64
                + spec.phase_ramp.2 * z as f64 / nz as f64;
            acc *= Complex64::from_polar(1.0, ramp);
        }
        acc
    })
}

/// Smooth temporal signal: a low-order polynomial drift plus optional
/// on/off activation blocks inside a spherical region.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TemporalModel {
    /// Peak relative drift over the whole series (e.g. 0.01 for 1%).
    pub drift_amplitude: f64,
    /// Additive activation amplitude in image units.
    pub activation_amplitude: f64,
    /// Frames per on/off half-cycle; 0 disables the block signal.
    pub activation_period: usize,
    pub activation_center: (f64, f64, f64),
    pub activation_radius: f64,
}

impl TemporalModel {
    pub fn none() -> Self {
        Self {
            drift_amplitude: 0.0,
            activation_amplitude: 0.0,
            activation_period: 0,
            activation_center: (0.0, 0.0, 0.0),
            activation_radius: 0.0,
        }
    }

    /// Gentle default: 1% linear drift and a small block signal near the
    /// phantom center.
    pub fn gentle(dims: (usize, usize, usize)) -> Self {
        Self {
            drift_amplitude: 0.01,
            activation_amplitude: 2.0,
            activation_period: 4,
            activation_center: (dims.0 as f64 * 0.45, dims.1 as f64 * 0.45, dims.2 as f64 * 0.5),
            activation_radius: 0.18 * dims.0.max(dims.1) as f64,
        }
    }
}

/// Build an N_r-frame series from a base volume: frame t scales the base by
/// (1 + drift(t)) and adds the activation block inside its region.
pub fn make_series(base: &ComplexVolume, model: &TemporalModel, n_frames: usize) -> VolumeSeries {
    assert!(n_frames >= 1, "need at least one frame");
    let dims = base.dims();
    let denom = (n_frames.max(2) - 1) as f64;
    let frames: Vec<ComplexVolume> = (0..n_frames)
        .map(|t| {
            let drift = model.drift_amplitude * t as f64 / denom;
            let active = model.activation_period > 0
                && model.activation_amplitude != 0.0
                && (t / model.activation_period) % 2 == 1;
            ComplexVolume::from_fn(dims, |x, y, z| {
                let mut v = base.at(x, y, z) * (1.0 + drift);
                if active {
                    let dx = x as f64 - model.activation_center.0;
                    let dy = y as f64 - model.activation_center.1;
                    let dz = z as f64 - model.activation_center.2;
                    if dx * dx + dy * dy + dz * dz
                        <= model.activation_radius * model.activation_radius
                    {
                        v += Complex64::new(model.activation_amplitude, 0.0);
                    }
                }
                v
            })
        })
        .collect();
    VolumeSeries::new(frames).expect("frames share dims by construction")
}

/// Fraction of reduced-FOV voxels whose stacked sensitivity matrix must be
/// numerically full rank for a coil set to be accepted.
const FULL_RANK_FRACTION: f64 = 0.99;

fn rank_ok(sens: &SensitivitySet, geom: &SenseGeometry) -> bool {
    let (xr, yr, zr) = geom.reduced_dims();
    let l = sens.coils();
    let r = geom.r();
    let mut s = vec![Complex64::new(0.0, 0.0); l * r];
    let mut good = 0usize;
    let total = xr * yr * zr;
    for z in 0..zr {
        for y in 0..yr {
            for x in 0..xr {
                sens.gather(geom, x, y, z, &mut s);
                // Gram matrix S^H S
                let mut gram = vec![Complex64::new(0.0, 0.0); r * r];
                for i in 0..r {
                    for j in 0..r {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for k in 0..l {
                            acc += s[k * r + i].conj() * s[k * r + j];
                        }
                        gram[i * r + j] = acc;
                    }
                }
                let vals = linalg::hermitian_eigvals(&gram, r);
                let max = vals.iter().cloned().fold(0.0f64, f64::max);
                let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
                if max > 0.0 && min >= 1e-6 * max {
                    good += 1;
                }
            }
        }
    }
    good as f64 >= FULL_RANK_FRACTION * total as f64
}

/// Generate L smooth complex coil profiles: Gaussian bumps on a ring around
/// the FOV with per-coil linear phase ramps, SOS-normalized so
/// sum_l |s_l|^2 = 1 everywhere. Rejects (and reseeds, up to 10 times) coil
/// sets whose stacked unfolding matrices are rank deficient for the given R.
pub fn make_coils(
    dims: (usize, usize, usize),
    l: usize,
    r: usize,
    seed: u64,
) -> Result<SensitivitySet> {
    assert!(l >= 1, "need at least one coil");
    let geom = SenseGeometry::new(dims, r)?;
    for attempt in 0..10u64 {
        let sens = make_coils_once(dims, l, seed.wrapping_add(attempt * 0x51_7C_C1B7_2722_0A95))?;
        if rank_ok(&sens, &geom) {
            return Ok(sens);
        }
    }
    Err(Error::RankDeficientGeometry)
}

fn make_coils_once(dims: (usize, usize, usize), l: usize, seed: u64) -> Result<SensitivitySet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (nx, ny, nz) = (dims.0 as f64, dims.1 as f64, dims.2 as f64);
    let ring_radius = 0.55 * (nx * nx + ny * ny).sqrt();
    // fairly localized bumps plus per-coil phase ramps of up to ~1.5 cycles
    // across the FOV: both are needed to keep the stacked unfolding matrices
    // well conditioned at 4-fold aliasing
    let sx = 0.55 * nx;
    let sy = 0.40 * ny;
    let sz = 0.90 * nz;
    let mut maps = Vec::with_capacity(l);
    for li in 0..l {
        let angle = std::f64::consts::TAU * li as f64 / l as f64
            + 0.3 * (rng.random::<f64>() - 0.5);
        let cx = nx / 2.0 + ring_radius * angle.cos();
        let cy = ny / 2.0 + ring_radius * angle.sin();
        let cz = nz / 2.0 + 0.3 * nz * (rng.random::<f64>() - 0.5);
        let phase0 = std::f64::consts::TAU * rng.random::<f64>();
        let kx = std::f64::consts::TAU * 1.5 * (rng.random::<f64>() - 0.5) / nx;
        let ky = std::f64::consts::TAU * (1.0 + rng.random::<f64>()) * 0.75 / ny
            * if rng.random::<bool>() { 1.0 } else { -1.0 };
        let kz = std::f64::consts::TAU * 0.5 * (rng.random::<f64>() - 0.5) / nz;
        maps.push(ComplexVolume::from_fn(dims, |x, y, z| {
            let dx = (x as f64 - cx) / sx;
            let dy = (y as f64 - cy) / sy;
            let dz = (z as f64 - cz) / sz;
            let mag = (-(dx * dx + dy * dy + dz * dz) / 2.0).exp();
            let phase = phase0 + kx * x as f64 + ky * y as f64 + kz * z as f64;
            Complex64::from_polar(mag, phase)
        }));
    }
    // SOS normalization: the bumps are positive everywhere, so the division
    // is safe and the normalized maps satisfy sum |s|^2 = 1 at every voxel
    let sos = sense::sos(&maps)?;
    for m in maps.iter_mut() {
        for (v, s) in m.data_mut().iter_mut().zip(sos.data()) {
            *v /= s.re;
        }
    }
    SensitivitySet::new(maps)
}

/// Inter-coil noise covariance with AR-1 correlation profile:
/// Psi[l][m] = sigma^2 * corr^|l-m|.
pub fn psi_true(l: usize, noise_scale: f64, corr: f64) -> Result<NoiseCovariance> {
    if !(corr.abs() < 1.0) {
        return Err(Error::InvalidConfig("coil correlation must satisfy |c| < 1".into()));
    }
    if noise_scale <= 0.0 {
        return Err(Error::InvalidConfig("noise scale must be positive".into()));
    }
    let var = noise_scale * noise_scale;
    let mut psi = vec![Complex64::new(0.0, 0.0); l * l];
    for i in 0..l {
        for j in 0..l {
            psi[i * l + j] = Complex64::new(var * corr.powi((i as i32 - j as i32).abs()), 0.0);
        }
    }
    NoiseCovariance::new(l, psi)
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AcquisitionSpec {
    pub coils: usize,
    pub r: usize,
    pub frames: usize,
    /// Per-channel noise standard deviation; 0 disables noise.
    pub noise_scale: f64,
    /// AR-1 correlation between neighboring coil channels.
    pub coil_correlation: f64,
    pub seed: u64,
}

impl AcquisitionSpec {
    pub fn noiseless(coils: usize, r: usize, frames: usize, seed: u64) -> Self {
        Self { coils, r, frames, noise_scale: 0.0, coil_correlation: 0.0, seed }
    }

    pub fn psi(&self) -> Result<Option<NoiseCovariance>> {
        if self.noise_scale == 0.0 {
            Ok(None)
        } else {
            Some(psi_true(self.coils, self.noise_scale, self.coil_correlation)).transpose()
        }
    }
}

/// Fold every frame through the encoding operator and add coil-correlated
/// complex Gaussian noise drawn from one substream per frame.
pub fn acquire(
    series: &VolumeSeries,
    enc: &EncodingOperator,
    acq: &AcquisitionSpec,
) -> Result<CoilDataset> {
    if enc.coils() != acq.coils {
        return Err(Error::GeometryMismatch("coil count differs from spec".into()));
    }
    if enc.geometry().r() != acq.r {
        return Err(Error::GeometryMismatch("reduction factor differs from spec".into()));
    }
    if series.n_frames() != acq.frames {
        return Err(Error::GeometryMismatch("frame count differs from spec".into()));
    }
    let geom = enc.geometry();
    let mut d = CoilDataset::zeros(geom, acq.coils, acq.frames);
    for t in 0..acq.frames {
        sense::fold_into(series.frame(t), enc, &mut d, t);
    }
    if acq.noise_scale > 0.0 {
        let psi = psi_true(acq.coils, acq.noise_scale, acq.coil_correlation)?;
        let chol = linalg::cholesky(psi.matrix(), acq.coils)?;
        let l = acq.coils;
        let nvox = d.reduced_len();
        let frames = acq.frames;
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        for t in 0..frames {
            let mut rng = ChaCha8Rng::seed_from_u64(
                acq.seed ^ (t as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(1),
            );
            let mut z = vec![Complex64::new(0.0, 0.0); l];
            for vox in 0..nvox {
                for zl in z.iter_mut() {
                    let g1: f64 = StandardNormal.sample(&mut rng);
                    let g2: f64 = StandardNormal.sample(&mut rng);
                    *zl = Complex64::new(g1, g2) * inv_sqrt2;
                }
                // n = chol(Psi) z has covariance Psi across coils
                for i in 0..l {
                    let mut n = Complex64::new(0.0, 0.0);
                    for k in 0..=i {
                        n += chol[i * l + k] * z[k];
                    }
                    d.samples_mut()[vox + nvox * (t + frames * i)] += n;
                }
            }
        }
    }
    Ok(d)
}
