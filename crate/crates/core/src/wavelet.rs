//! Dyadic 3D orthonormal discrete wavelet transform with periodic boundaries.
//!
//! The decomposition operator T maps a volume onto an approximation band at
//! the coarsest level plus seven detail bands (one per orientation in
//! {0,1}^3 minus the all-lowpass corner) at each resolution level j, with
//! K_j = K * 2^(-3j) coefficients per band. Periodic extension keeps the
//! transform exactly orthonormal for any even line length, so T* is both the
//! adjoint and the inverse of T.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::volume::ComplexVolume;

/// Symmlet lowpass analysis taps, length 8 (4 vanishing moments), refined so
/// the even-lag autocorrelations vanish to f64 precision.
const SYMMLET8_LOWPASS: [f64; 8] = [
    -0.075765714789212110,
    -0.029635527645880438,
    0.497618667631935900,
    0.803738751805686200,
    0.297857795605310100,
    -0.099219543576663430,
    -0.012603967261960145,
    0.032223100603878875,
];

const HAAR_LOWPASS: [f64; 2] = [std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2];

/// Analysis filter bank plus decomposition depth.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletSpec {
    family: String,
    lowpass: Vec<f64>,
    highpass: Vec<f64>,
    j_max: usize,
}

impl WaveletSpec {
    /// Build a spec from orthonormal lowpass analysis taps. The highpass is
    /// the alternating-sign reversal of the lowpass; synthesis filters are the
    /// time-reversed analysis pair (applied through the transpose).
    pub fn from_lowpass(family: &str, lowpass: &[f64], j_max: usize) -> Result<Self> {
        if j_max == 0 {
            return Err(Error::InvalidConfig("j_max must be at least 1".into()));
        }
        if lowpass.len() < 2 || lowpass.len() % 2 != 0 {
            return Err(Error::InvalidConfig("filter length must be even and >= 2".into()));
        }
        let sum: f64 = lowpass.iter().sum();
        if (sum - std::f64::consts::SQRT_2).abs() > 1e-12 {
            return Err(Error::InvalidConfig(format!(
                "lowpass taps sum to {}, expected sqrt(2)",
                sum
            )));
        }
        let n = lowpass.len();
        let highpass: Vec<f64> = (0..n)
            .map(|m| if m % 2 == 0 { lowpass[n - 1 - m] } else { -lowpass[n - 1 - m] })
            .collect();
        Ok(Self { family: family.to_string(), lowpass: lowpass.to_vec(), highpass, j_max })
    }

    pub fn haar(j_max: usize) -> Self {
        Self::from_lowpass("haar", &HAAR_LOWPASS, j_max).expect("haar taps are orthonormal")
    }

    /// Length-8 Symmlet bank, the default basis for reconstruction.
    pub fn symmlet8(j_max: usize) -> Self {
        Self::from_lowpass("sym8", &SYMMLET8_LOWPASS, j_max).expect("symmlet taps are orthonormal")
    }

    pub fn by_name(family: &str, j_max: usize) -> Result<Self> {
        match family {
            "haar" => Ok(Self::haar(j_max)),
            "sym8" | "symmlet8" => Ok(Self::symmlet8(j_max)),
            other => Err(Error::InvalidConfig(format!("unknown wavelet family '{}'", other))),
        }
    }

    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn filter_len(&self) -> usize {
        self.lowpass.len()
    }

    pub fn j_max(&self) -> usize {
        self.j_max
    }

    pub fn lowpass(&self) -> &[f64] {
        &self.lowpass
    }

    pub fn highpass(&self) -> &[f64] {
        &self.highpass
    }

    /// Check that the given dims support `j_max` dyadic splits.
    pub fn check_dims(&self, dims: (usize, usize, usize)) -> Result<()> {
        let div = 1usize << self.j_max;
        if dims.0 % div != 0 || dims.1 % div != 0 || dims.2 % div != 0 {
            return Err(Error::DimsNotDivisible { dims, j_max: self.j_max });
        }
        Ok(())
    }
}

/// Identifies one subband of the decomposition. Detail orientations pack the
/// per-axis highpass flags as o = ox + 2*oy + 4*oz, o in 1..=7.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subband {
    Approx,
    Detail { o: u8, j: usize },
}

impl Subband {
    pub fn label(&self) -> String {
        match self {
            Subband::Approx => "a".to_string(),
            Subband::Detail { o, j } => {
                format!("d{}_{}{}{}", j, o & 1, (o >> 1) & 1, (o >> 2) & 1)
            }
        }
    }
}

/// Wavelet coefficients of one volume, stored flat: approximation band first,
/// then detail bands from the coarsest level down to level 1, orientations
/// 1..=7 within each level. Each band is x-fastest in its own grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffField {
    dims: (usize, usize, usize),
    j_max: usize,
    data: Vec<Complex64>,
}

impl CoeffField {
    pub fn new(dims: (usize, usize, usize), j_max: usize, data: Vec<Complex64>) -> Result<Self> {
        let expected = dims.0 * dims.1 * dims.2;
        if data.len() != expected {
            return Err(Error::MalformedField { expected, got: data.len() });
        }
        let div = 1usize << j_max;
        if dims.0 % div != 0 || dims.1 % div != 0 || dims.2 % div != 0 {
            return Err(Error::DimsNotDivisible { dims, j_max });
        }
        Ok(Self { dims, j_max, data })
    }

    pub fn zeros(dims: (usize, usize, usize), j_max: usize) -> Result<Self> {
        Self::new(dims, j_max, vec![Complex64::new(0.0, 0.0); dims.0 * dims.1 * dims.2])
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        self.dims
    }

    pub fn j_max(&self) -> usize {
        self.j_max
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    /// Number of coefficients in one band at level j.
    pub fn band_len(&self, j: usize) -> usize {
        (self.dims.0 >> j) * (self.dims.1 >> j) * (self.dims.2 >> j)
    }

    fn band_range(&self, band: Subband) -> std::ops::Range<usize> {
        match band {
            Subband::Approx => 0..self.band_len(self.j_max),
            Subband::Detail { o, j } => {
                debug_assert!((1..=7).contains(&o) && j >= 1 && j <= self.j_max);
                let mut off = self.band_len(self.j_max);
                let mut lvl = self.j_max;
                while lvl > j {
                    off += 7 * self.band_len(lvl);
                    lvl -= 1;
                }
                off += (o as usize - 1) * self.band_len(j);
                off..off + self.band_len(j)
            }
        }
    }

    pub fn band(&self, band: Subband) -> &[Complex64] {
        &self.data[self.band_range(band)]
    }

    pub fn band_mut(&mut self, band: Subband) -> &mut [Complex64] {
        let r = self.band_range(band);
        &mut self.data[r]
    }

    pub fn approx(&self) -> &[Complex64] {
        self.band(Subband::Approx)
    }

    pub fn detail(&self, o: u8, j: usize) -> &[Complex64] {
        self.band(Subband::Detail { o, j })
    }

    /// All subband ids in storage order.
    pub fn subbands(&self) -> Vec<Subband> {
        let mut out = vec![Subband::Approx];
        for j in (1..=self.j_max).rev() {
            for o in 1..=7u8 {
                out.push(Subband::Detail { o, j });
            }
        }
        out
    }

    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// 1D periodic analysis along one axis of an x-fastest buffer; writes the
/// lowpass and highpass halves into separate buffers of halved extent.
fn analyze_axis(
    input: &[Complex64],
    dims: (usize, usize, usize),
    axis: usize,
    h: &[f64],
    g: &[f64],
    low: &mut [Complex64],
    high: &mut [Complex64],
) {
    let (nx, ny, nz) = dims;
    let n = [nx, ny, nz][axis];
    let half = n / 2;
    let flen = h.len();
    // line iteration: for each position of the two non-transformed axes
    let (ou, ov, axes) = match axis {
        0 => (ny, nz, (1usize, 2usize)),
        1 => (nx, nz, (0, 2)),
        _ => (nx, ny, (0, 1)),
    };
    let stride = [1usize, nx, nx * ny];
    let s_axis = stride[axis];
    let s_u = stride[axes.0];
    let s_v = stride[axes.1];
    let mut out_dims = [nx, ny, nz];
    out_dims[axis] = half;
    let so_axis = [1usize, out_dims[0], out_dims[0] * out_dims[1]][axis];
    let so_u = [1usize, out_dims[0], out_dims[0] * out_dims[1]][axes.0];
    let so_v = [1usize, out_dims[0], out_dims[0] * out_dims[1]][axes.1];
    for v in 0..ov {
        for u in 0..ou {
            let base = u * s_u + v * s_v;
            let obase = u * so_u + v * so_v;
            for k in 0..half {
                let mut lo = Complex64::new(0.0, 0.0);
                let mut hi = Complex64::new(0.0, 0.0);
                for m in 0..flen {
                    let i = (2 * k + m) % n;
                    let s = input[base + i * s_axis];
                    lo += s * h[m];
                    hi += s * g[m];
                }
                low[obase + k * so_axis] = lo;
                high[obase + k * so_axis] = hi;
            }
        }
    }
}

/// Exact transpose of `analyze_axis`: scatter the two halves back onto the
/// doubled axis. `out` must be zeroed by the caller.
fn synthesize_axis(
    low: &[Complex64],
    high: &[Complex64],
    out_dims: (usize, usize, usize),
    axis: usize,
    h: &[f64],
    g: &[f64],
    out: &mut [Complex64],
) {
    let (nx, ny, nz) = out_dims;
    let n = [nx, ny, nz][axis];
    let half = n / 2;
    let flen = h.len();
    let (ou, ov, axes) = match axis {
        0 => (ny, nz, (1usize, 2usize)),
        1 => (nx, nz, (0, 2)),
        _ => (nx, ny, (0, 1)),
    };
    let stride = [1usize, nx, nx * ny];
    let s_axis = stride[axis];
    let s_u = stride[axes.0];
    let s_v = stride[axes.1];
    let mut in_dims = [nx, ny, nz];
    in_dims[axis] = half;
    let si_axis = [1usize, in_dims[0], in_dims[0] * in_dims[1]][axis];
    let si_u = [1usize, in_dims[0], in_dims[0] * in_dims[1]][axes.0];
    let si_v = [1usize, in_dims[0], in_dims[0] * in_dims[1]][axes.1];
    for v in 0..ov {
        for u in 0..ou {
            let base = u * s_u + v * s_v;
            let ibase = u * si_u + v * si_v;
            for k in 0..half {
                let lo = low[ibase + k * si_axis];
                let hi = high[ibase + k * si_axis];
                for m in 0..flen {
                    let i = (2 * k + m) % n;
                    out[base + i * s_axis] += lo * h[m] + hi * g[m];
                }
            }
        }
    }
}

/// One level of 3D analysis: returns the 8 blocks indexed by orientation
/// o = ox + 2*oy + 4*oz (block 0 is the next approximation).
fn analyze_level(
    input: &[Complex64],
    dims: (usize, usize, usize),
    spec: &WaveletSpec,
) -> [Vec<Complex64>; 8] {
    let h = spec.lowpass();
    let g = spec.highpass();
    let (nx, ny, nz) = dims;
    let hx = nx / 2;
    let hy = ny / 2;
    let hz = nz / 2;
    // split x
    let mut lx = vec![Complex64::new(0.0, 0.0); hx * ny * nz];
    let mut hxv = vec![Complex64::new(0.0, 0.0); hx * ny * nz];
    analyze_axis(input, dims, 0, h, g, &mut lx, &mut hxv);
    // split y
    let xdims = (hx, ny, nz);
    let mut blocks_xy = Vec::with_capacity(4);
    for src in [&lx, &hxv] {
        let mut lo = vec![Complex64::new(0.0, 0.0); hx * hy * nz];
        let mut hi = vec![Complex64::new(0.0, 0.0); hx * hy * nz];
        analyze_axis(src, xdims, 1, h, g, &mut lo, &mut hi);
        blocks_xy.push(lo);
        blocks_xy.push(hi);
    }
    // blocks_xy order: [ox=0 oy=0, ox=0 oy=1, ox=1 oy=0, ox=1 oy=1]
    let ydims = (hx, hy, nz);
    let mut out: [Vec<Complex64>; 8] = std::array::from_fn(|_| Vec::new());
    for (idx, src) in blocks_xy.iter().enumerate() {
        let ox = idx / 2;
        let oy = idx % 2;
        let mut lo = vec![Complex64::new(0.0, 0.0); hx * hy * hz];
        let mut hi = vec![Complex64::new(0.0, 0.0); hx * hy * hz];
        analyze_axis(src, ydims, 2, h, g, &mut lo, &mut hi);
        out[ox + 2 * oy] = lo;
        out[ox + 2 * oy + 4] = hi;
    }
    out
}

/// One level of 3D synthesis from the 8 orientation blocks.
fn synthesize_level(
    blocks: &[&[Complex64]; 8],
    out_dims: (usize, usize, usize),
    spec: &WaveletSpec,
) -> Vec<Complex64> {
    let h = spec.lowpass();
    let g = spec.highpass();
    let (nx, ny, nz) = out_dims;
    let hx = nx / 2;
    let hy = ny / 2;
    let hz = nz / 2;
    // merge z: 8 blocks (hx,hy,hz) -> 4 blocks (hx,hy,nz)
    let zdims = (hx, hy, nz);
    let mut xy = Vec::with_capacity(4);
    for oy in 0..2 {
        for ox in 0..2 {
            let lo = blocks[ox + 2 * oy];
            let hi = blocks[ox + 2 * oy + 4];
            let mut out = vec![Complex64::new(0.0, 0.0); hx * hy * nz];
            synthesize_axis(lo, hi, zdims, 2, h, g, &mut out);
            xy.push(out);
        }
    }
    // xy order: [ox=0 oy=0, ox=1 oy=0, ox=0 oy=1, ox=1 oy=1]
    let ydims = (hx, ny, nz);
    let mut xs = Vec::with_capacity(2);
    for ox in 0..2 {
        let lo = &xy[ox];
        let hi = &xy[ox + 2];
        let mut out = vec![Complex64::new(0.0, 0.0); hx * ny * nz];
        synthesize_axis(lo, hi, ydims, 1, h, g, &mut out);
        xs.push(out);
    }
    let mut out = vec![Complex64::new(0.0, 0.0); nx * ny * nz];
    synthesize_axis(&xs[0], &xs[1], out_dims, 0, h, g, &mut out);
    out
}

/// Decomposition operator T.
pub fn forward(volume: &ComplexVolume, spec: &WaveletSpec) -> Result<CoeffField> {
    spec.check_dims(volume.dims())?;
    let mut field = CoeffField::zeros(volume.dims(), spec.j_max())?;
    let mut current = volume.data().to_vec();
    let mut dims = volume.dims();
    for j in 1..=spec.j_max() {
        let blocks = analyze_level(&current, dims, spec);
        let [approx, rest @ ..] = blocks;
        for (o, block) in rest.iter().enumerate() {
            field.band_mut(Subband::Detail { o: (o + 1) as u8, j }).copy_from_slice(block);
        }
        current = approx;
        dims = (dims.0 / 2, dims.1 / 2, dims.2 / 2);
    }
    field.band_mut(Subband::Approx).copy_from_slice(&current);
    Ok(field)
}

/// Reconstruction operator T* (adjoint and inverse of `forward`).
pub fn inverse(coeffs: &CoeffField, spec: &WaveletSpec) -> Result<ComplexVolume> {
    if spec.j_max() != coeffs.j_max() {
        return Err(Error::ShapeMismatch(format!(
            "field has j_max={}, spec has {}",
            coeffs.j_max(),
            spec.j_max()
        )));
    }
    spec.check_dims(coeffs.dims())?;
    let full = coeffs.dims();
    let mut current = coeffs.approx().to_vec();
    for j in (1..=spec.j_max()).rev() {
        let out_dims = (full.0 >> (j - 1), full.1 >> (j - 1), full.2 >> (j - 1));
        let blocks: [&[Complex64]; 8] = [
            &current,
            coeffs.detail(1, j),
            coeffs.detail(2, j),
            coeffs.detail(3, j),
            coeffs.detail(4, j),
            coeffs.detail(5, j),
            coeffs.detail(6, j),
            coeffs.detail(7, j),
        ];
        current = synthesize_level(&blocks, out_dims, spec);
    }
    ComplexVolume::new(full, current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_volume(dims: (usize, usize, usize), seed: u64) -> ComplexVolume {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        ComplexVolume::from_fn(dims, |_, _, _| {
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        })
    }

    #[test]
    fn taps_are_orthonormal() {
        for spec in [WaveletSpec::haar(1), WaveletSpec::symmlet8(3)] {
            let h = spec.lowpass();
            let sum: f64 = h.iter().sum();
            assert!((sum - std::f64::consts::SQRT_2).abs() < 1e-12);
            for lag in 0..h.len() / 2 {
                let ac: f64 = (0..h.len() - 2 * lag).map(|m| h[m] * h[m + 2 * lag]).sum();
                let expect = if lag == 0 { 1.0 } else { 0.0 };
                assert!((ac - expect).abs() < 1e-14, "lag {} -> {}", lag, ac);
            }
        }
    }

    #[test]
    fn constant_volume_kills_haar_details() {
        let vol = ComplexVolume::from_fn((4, 4, 4), |_, _, _| Complex64::new(3.0, -1.0));
        let spec = WaveletSpec::haar(1);
        let field = forward(&vol, &spec).unwrap();
        for o in 1..=7u8 {
            for c in field.detail(o, 1) {
                assert!(c.norm() < 1e-12);
            }
        }
        // approx carries all the energy
        assert!((field.norm_sqr() - vol.norm_sqr()).abs() < 1e-10 * vol.norm_sqr());
    }

    #[test]
    fn coefficient_count_matches_dyadic_accounting() {
        let dims = (16, 16, 8);
        let spec = WaveletSpec::symmlet8(3);
        let field = forward(&random_volume(dims, 1), &spec).unwrap();
        let k = dims.0 * dims.1 * dims.2;
        assert_eq!(field.len(), k);
        assert_eq!(field.approx().len(), k >> 9);
        for j in 1..=3 {
            for o in 1..=7u8 {
                assert_eq!(field.detail(o, j).len(), k >> (3 * j));
            }
        }
        let total: usize = field.subbands().iter().map(|&b| field.band(b).len()).sum();
        assert_eq!(total, k);
    }

    #[test]
    fn perfect_reconstruction_symmlet() {
        let vol = random_volume((16, 16, 16), 7);
        let spec = WaveletSpec::symmlet8(3);
        let rec = inverse(&forward(&vol, &spec).unwrap(), &spec).unwrap();
        let num: f64 =
            rec.data().iter().zip(vol.data()).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>();
        assert!(num.sqrt() <= 1e-10 * vol.norm_sqr().sqrt());
    }

    #[test]
    fn parseval_energy_identity() {
        for seed in 0..5 {
            let vol = random_volume((8, 16, 8), seed);
            let spec = WaveletSpec::symmlet8(2);
            let field = forward(&vol, &spec).unwrap();
            let rel = (field.norm_sqr() - vol.norm_sqr()).abs() / vol.norm_sqr();
            assert!(rel <= 1e-10, "rel {}", rel);
        }
    }

    #[test]
    fn delta_round_trips() {
        let mut vol = ComplexVolume::zeros((8, 8, 8));
        *vol.at_mut(3, 5, 2) = Complex64::new(1.0, 0.0);
        let spec = WaveletSpec::symmlet8(1);
        let rec = inverse(&forward(&vol, &spec).unwrap(), &spec).unwrap();
        let err: f64 =
            rec.data().iter().zip(vol.data()).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>();
        assert!(err.sqrt() < 1e-12);
    }

    #[test]
    fn approx_only_haar_synthesis_is_blocky() {
        // One approx coefficient spreads over a 2^j cube with value c * 2^(-3j/2).
        let dims = (8, 8, 8);
        let j_max = 3;
        let spec = WaveletSpec::haar(j_max);
        let mut field = CoeffField::zeros(dims, j_max).unwrap();
        field.band_mut(Subband::Approx)[0] = Complex64::new(1.0, 0.0);
        let vol = inverse(&field, &spec).unwrap();
        let expect = 1.0 / 2f64.powf(3.0 * j_max as f64 / 2.0);
        for z in 0..8 {
            for y in 0..8 {
                for x in 0..8 {
                    let v = vol.at(x, y, z);
                    assert!((v.re - expect).abs() < 1e-12 && v.im.abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn adjoint_identity_on_random_pairs() {
        // <T x, y> == <x, T* y>
        let dims = (8, 8, 8);
        let spec = WaveletSpec::symmlet8(2);
        for seed in 0..4 {
            let x = random_volume(dims, 100 + seed);
            let yfield = {
                let v = random_volume(dims, 200 + seed);
                CoeffField::new(dims, 2, v.data().to_vec()).unwrap()
            };
            let tx = forward(&x, &spec).unwrap();
            let ty = inverse(&yfield, &spec).unwrap();
            let lhs: Complex64 =
                tx.data().iter().zip(yfield.data()).map(|(a, b)| a * b.conj()).sum();
            let rhs: Complex64 = x.data().iter().zip(ty.data()).map(|(a, b)| a * b.conj()).sum();
            assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()), "{} vs {}", lhs, rhs);
        }
    }

    #[test]
    fn z_constant_volume_matches_replicated_2d_haar() {
        // A volume constant along z: the 3D Haar level-1 transform must equal
        // the 2D transform replicated along z (z-highpass bands vanish).
        let dims = (8, 8, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut plane = vec![Complex64::new(0.0, 0.0); 64];
        for p in plane.iter_mut() {
            *p = Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
        }
        let vol = ComplexVolume::from_fn(dims, |x, y, _| plane[x + 8 * y]);
        let spec = WaveletSpec::haar(1);
        let field = forward(&vol, &spec).unwrap();
        // brute-force 2D Haar of the plane
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut ll = vec![Complex64::new(0.0, 0.0); 16];
        let mut hl = ll.clone();
        let mut lh = ll.clone();
        let mut hh = ll.clone();
        for ky in 0..4 {
            for kx in 0..4 {
                let a = plane[2 * kx + 8 * (2 * ky)];
                let b = plane[2 * kx + 1 + 8 * (2 * ky)];
                let c = plane[2 * kx + 8 * (2 * ky + 1)];
                let d = plane[2 * kx + 1 + 8 * (2 * ky + 1)];
                ll[kx + 4 * ky] = (a + b + c + d) * h * h;
                hl[kx + 4 * ky] = (a - b + c - d) * h * h; // highpass along x
                lh[kx + 4 * ky] = (a + b - c - d) * h * h; // highpass along y
                hh[kx + 4 * ky] = (a - b - c + d) * h * h;
            }
        }
        let sz = std::f64::consts::SQRT_2; // lowpass along constant z scales by sqrt(2)
        for kz in 0..4 {
            for ky in 0..4 {
                for kx in 0..4 {
                    let i = kx + 4 * (ky + 4 * kz);
                    assert!((field.approx()[i] - ll[kx + 4 * ky] * sz).norm() < 1e-12);
                    assert!((field.detail(1, 1)[i] - hl[kx + 4 * ky] * sz).norm() < 1e-12);
                    assert!((field.detail(2, 1)[i] - lh[kx + 4 * ky] * sz).norm() < 1e-12);
                    assert!((field.detail(3, 1)[i] - hh[kx + 4 * ky] * sz).norm() < 1e-12);
                    for o in 4..=7u8 {
                        assert!(field.detail(o, 1)[i].norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn dims_must_divide() {
        let vol = random_volume((12, 16, 8), 3);
        assert!(matches!(
            forward(&vol, &WaveletSpec::symmlet8(3)),
            Err(Error::DimsNotDivisible { .. })
        ));
    }

    #[test]
    fn malformed_field_is_rejected() {
        assert!(matches!(
            CoeffField::new((8, 8, 8), 1, vec![Complex64::new(0.0, 0.0); 100]),
            Err(Error::MalformedField { expected: 512, got: 100 })
        ));
    }
}
