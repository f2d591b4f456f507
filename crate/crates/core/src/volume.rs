//! Complex-valued volume containers and acquisition geometry.
//!
//! All voxel data lives in flat buffers with a fixed linear order: x fastest,
//! then y, then z (then frame, then coil for multi-coil stacks). Every module
//! in this crate, including the on-disk container, honors that order.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A complex-valued 3D image of size X x Y x Z, x-fastest layout.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVolume {
    dims: (usize, usize, usize),
    data: Vec<Complex64>,
}

impl ComplexVolume {
    pub fn new(dims: (usize, usize, usize), data: Vec<Complex64>) -> Result<Self> {
        let n = dims.0 * dims.1 * dims.2;
        if data.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "volume data has {} entries, dims {}x{}x{} need {}",
                data.len(),
                dims.0,
                dims.1,
                dims.2,
                n
            )));
        }
        Ok(Self { dims, data })
    }

    pub fn zeros(dims: (usize, usize, usize)) -> Self {
        Self { dims, data: vec![Complex64::new(0.0, 0.0); dims.0 * dims.1 * dims.2] }
    }

    pub fn from_fn<F: FnMut(usize, usize, usize) -> Complex64>(
        dims: (usize, usize, usize),
        mut f: F,
    ) -> Self {
        let mut data = Vec::with_capacity(dims.0 * dims.1 * dims.2);
        for z in 0..dims.2 {
            for y in 0..dims.1 {
                for x in 0..dims.0 {
                    data.push(f(x, y, z));
                }
            }
        }
        Self { dims, data }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn idx(&self, x: usize, y: usize, z: usize) -> usize {
        x + self.dims.0 * (y + self.dims.1 * z)
    }

    #[inline]
    pub fn at(&self, x: usize, y: usize, z: usize) -> Complex64 {
        self.data[self.idx(x, y, z)]
    }

    #[inline]
    pub fn at_mut(&mut self, x: usize, y: usize, z: usize) -> &mut Complex64 {
        let i = self.idx(x, y, z);
        &mut self.data[i]
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

/// An ordered sequence of same-sized volumes (one per acquisition time).
#[derive(Debug, Clone, PartialEq)]
pub struct VolumeSeries {
    frames: Vec<ComplexVolume>,
}

impl VolumeSeries {
    pub fn new(frames: Vec<ComplexVolume>) -> Result<Self> {
        if frames.is_empty() {
            return Err(Error::ShapeMismatch("series needs at least one frame".into()));
        }
        let dims = frames[0].dims();
        if frames.iter().any(|f| f.dims() != dims) {
            return Err(Error::ShapeMismatch("series frames have mixed dims".into()));
        }
        Ok(Self { frames })
    }

    pub fn single(volume: ComplexVolume) -> Self {
        Self { frames: vec![volume] }
    }

    pub fn n_frames(&self) -> usize {
        self.frames.len()
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        self.frames[0].dims()
    }

    pub fn frame(&self, t: usize) -> &ComplexVolume {
        &self.frames[t]
    }

    pub fn frames(&self) -> &[ComplexVolume] {
        &self.frames
    }

    pub fn into_frames(self) -> Vec<ComplexVolume> {
        self.frames
    }
}

/// Cartesian SENSE undersampling geometry along the phase-encoding (y) axis.
///
/// `R` reduces the number of acquired y lines; the aliasing period is
/// `delta_y = Y / R`, so full-FOV position `y + k*delta_y` folds onto reduced
/// position `y` for `k = 0..R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SenseGeometry {
    full_dims: (usize, usize, usize),
    r: usize,
}

impl SenseGeometry {
    pub fn new(full_dims: (usize, usize, usize), r: usize) -> Result<Self> {
        if r == 0 || full_dims.1 % r != 0 {
            return Err(Error::GeometryMismatch(format!(
                "R={} must divide Y={}",
                r, full_dims.1
            )));
        }
        if full_dims.0 == 0 || full_dims.1 == 0 || full_dims.2 == 0 {
            return Err(Error::GeometryMismatch("zero-sized volume".into()));
        }
        Ok(Self { full_dims, r })
    }

    pub fn full_dims(&self) -> (usize, usize, usize) {
        self.full_dims
    }

    pub fn reduced_dims(&self) -> (usize, usize, usize) {
        (self.full_dims.0, self.full_dims.1 / self.r, self.full_dims.2)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Aliasing period along y.
    pub fn delta_y(&self) -> usize {
        self.full_dims.1 / self.r
    }
}

/// Per-coil reduced-FOV acquisitions for a whole scan series.
///
/// Sample layout: x fastest, then y, z, frame, coil outermost, so the block
/// for one (coil, frame) pair is contiguous.
#[derive(Debug, Clone, PartialEq)]
pub struct CoilDataset {
    geometry: SenseGeometry,
    coils: usize,
    frames: usize,
    samples: Vec<Complex64>,
}

impl CoilDataset {
    pub fn new(
        geometry: SenseGeometry,
        coils: usize,
        frames: usize,
        samples: Vec<Complex64>,
    ) -> Result<Self> {
        let (xr, yr, zr) = geometry.reduced_dims();
        let expect = coils * frames * xr * yr * zr;
        if samples.len() != expect {
            return Err(Error::ShapeMismatch(format!(
                "coil dataset has {} samples, expected {}",
                samples.len(),
                expect
            )));
        }
        if coils == 0 || frames == 0 {
            return Err(Error::GeometryMismatch("need at least one coil and frame".into()));
        }
        Ok(Self { geometry, coils, frames, samples })
    }

    pub fn zeros(geometry: SenseGeometry, coils: usize, frames: usize) -> Self {
        let (xr, yr, zr) = geometry.reduced_dims();
        Self {
            geometry,
            coils,
            frames,
            samples: vec![Complex64::new(0.0, 0.0); coils * frames * xr * yr * zr],
        }
    }

    pub fn geometry(&self) -> SenseGeometry {
        self.geometry
    }

    pub fn coils(&self) -> usize {
        self.coils
    }

    pub fn n_frames(&self) -> usize {
        self.frames
    }

    pub fn reduced_len(&self) -> usize {
        let (xr, yr, zr) = self.geometry.reduced_dims();
        xr * yr * zr
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [Complex64] {
        &mut self.samples
    }

    /// Contiguous reduced-FOV image for one (coil, frame) pair.
    pub fn coil_frame(&self, coil: usize, t: usize) -> &[Complex64] {
        let v = self.reduced_len();
        let start = v * (t + self.frames * coil);
        &self.samples[start..start + v]
    }

    pub fn coil_frame_mut(&mut self, coil: usize, t: usize) -> &mut [Complex64] {
        let v = self.reduced_len();
        let start = v * (t + self.frames * coil);
        &mut self.samples[start..start + v]
    }

    /// Gather the L coil samples of one reduced-FOV voxel at frame `t`.
    #[inline]
    pub fn gather_coils(&self, t: usize, vox: usize, out: &mut [Complex64]) {
        let v = self.reduced_len();
        for (l, o) in out.iter_mut().enumerate() {
            *o = self.samples[vox + v * (t + self.frames * l)];
        }
    }
}

/// Full-FOV coil sensitivity maps, one volume per coil.
///
/// The L x R unfolding matrix at reduced-FOV voxel (x, y, z) stacks, per coil,
/// the sensitivities at the R aliased positions y + k*delta_y.
#[derive(Debug, Clone, PartialEq)]
pub struct SensitivitySet {
    maps: Vec<ComplexVolume>,
}

impl SensitivitySet {
    pub fn new(maps: Vec<ComplexVolume>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::GeometryMismatch("need at least one coil map".into()));
        }
        let dims = maps[0].dims();
        if maps.iter().any(|m| m.dims() != dims) {
            return Err(Error::ShapeMismatch("coil maps have mixed dims".into()));
        }
        Ok(Self { maps })
    }

    pub fn coils(&self) -> usize {
        self.maps.len()
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        self.maps[0].dims()
    }

    pub fn map(&self, coil: usize) -> &ComplexVolume {
        &self.maps[coil]
    }

    pub fn maps(&self) -> &[ComplexVolume] {
        &self.maps
    }

    /// Fill `out` (row-major L x R) with the unfolding matrix at one reduced voxel.
    #[inline]
    pub fn gather(
        &self,
        geom: &SenseGeometry,
        x: usize,
        y: usize,
        z: usize,
        out: &mut [Complex64],
    ) {
        let r = geom.r();
        let dy = geom.delta_y();
        for (l, m) in self.maps.iter().enumerate() {
            for k in 0..r {
                out[l * r + k] = m.at(x, y + k * dy, z);
            }
        }
    }
}

/// Hermitian positive-definite L x L inter-coil noise covariance.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseCovariance {
    l: usize,
    psi: Vec<Complex64>,
}

impl NoiseCovariance {
    /// Validates Hermitian symmetry (1e-12 relative) and positive definiteness.
    pub fn new(l: usize, psi: Vec<Complex64>) -> Result<Self> {
        if psi.len() != l * l || l == 0 {
            return Err(Error::ShapeMismatch(format!(
                "covariance has {} entries, expected {}",
                psi.len(),
                l * l
            )));
        }
        let scale = psi.iter().map(|c| c.norm()).fold(0.0f64, f64::max).max(1e-300);
        for i in 0..l {
            for j in 0..l {
                let d = psi[i * l + j] - psi[j * l + i].conj();
                if d.norm() > 1e-12 * scale {
                    return Err(Error::ShapeMismatch("covariance is not Hermitian".into()));
                }
            }
        }
        // PD check: Cholesky must succeed.
        crate::linalg::cholesky(&psi, l)?;
        Ok(Self { l, psi })
    }

    pub fn identity(l: usize) -> Self {
        let mut psi = vec![Complex64::new(0.0, 0.0); l * l];
        for i in 0..l {
            psi[i * l + i] = Complex64::new(1.0, 0.0);
        }
        Self { l, psi }
    }

    pub fn scaled_identity(l: usize, var: f64) -> Self {
        let mut psi = vec![Complex64::new(0.0, 0.0); l * l];
        for i in 0..l {
            psi[i * l + i] = Complex64::new(var, 0.0);
        }
        Self { l, psi }
    }

    pub fn coils(&self) -> usize {
        self.l
    }

    pub fn matrix(&self) -> &[Complex64] {
        &self.psi
    }

    /// Dense inverse, computed through the Cholesky factor.
    pub fn inverse(&self) -> Vec<Complex64> {
        crate::linalg::hermitian_inverse(&self.psi, self.l)
            .expect("validated covariance must be invertible")
    }
}
