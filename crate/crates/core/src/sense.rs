//! SENSE acquisition model, calibration, and closed-form unfolding.
//!
//! The forward model folds the full FOV along y with period delta_y = Y/R:
//! every reduced-FOV voxel observes, per coil, the sensitivity-weighted sum
//! of the R aliased full-FOV positions. Unfolding solves the per-voxel
//! weighted least-squares problem with the inverse noise covariance as the
//! weight, through the minimum-norm pseudo-inverse.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg;
use crate::volume::{
    CoilDataset, ComplexVolume, NoiseCovariance, SenseGeometry, SensitivitySet, VolumeSeries,
};

/// Sensitivity maps plus undersampling geometry: everything needed to map a
/// full-FOV volume to per-coil folded images and back.
#[derive(Debug, Clone)]
pub struct EncodingOperator {
    sens: SensitivitySet,
    geometry: SenseGeometry,
}

impl EncodingOperator {
    pub fn new(sens: SensitivitySet, geometry: SenseGeometry) -> Result<Self> {
        if sens.dims() != geometry.full_dims() {
            return Err(Error::GeometryMismatch(format!(
                "sensitivity dims {:?} vs geometry {:?}",
                sens.dims(),
                geometry.full_dims()
            )));
        }
        Ok(Self { sens, geometry })
    }

    pub fn sensitivities(&self) -> &SensitivitySet {
        &self.sens
    }

    pub fn geometry(&self) -> SenseGeometry {
        self.geometry
    }

    pub fn coils(&self) -> usize {
        self.sens.coils()
    }
}

/// Fold one full-FOV volume into a single-frame coil dataset (noiseless
/// application of the acquisition model).
pub fn fold(rho: &ComplexVolume, enc: &EncodingOperator) -> Result<CoilDataset> {
    if rho.dims() != enc.geometry.full_dims() {
        return Err(Error::GeometryMismatch("volume dims do not match geometry".into()));
    }
    let mut out = CoilDataset::zeros(enc.geometry, enc.coils(), 1);
    fold_into(rho, enc, &mut out, 0);
    Ok(out)
}

/// Fold into frame `t` of an existing dataset.
pub fn fold_into(rho: &ComplexVolume, enc: &EncodingOperator, out: &mut CoilDataset, t: usize) {
    let (xr, yr, zr) = enc.geometry.reduced_dims();
    let dy = enc.geometry.delta_y();
    let r = enc.geometry.r();
    for l in 0..enc.coils() {
        let map = enc.sens.map(l);
        let frame = out.coil_frame_mut(l, t);
        let mut i = 0;
        for z in 0..zr {
            for y in 0..yr {
                for x in 0..xr {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for k in 0..r {
                        let yy = y + k * dy;
                        acc += map.at(x, yy, z) * rho.at(x, yy, z);
                    }
                    frame[i] = acc;
                    i += 1;
                }
            }
        }
    }
}

/// Adjoint of `fold` under the Psi^-1 inner product on coil space:
/// per full-FOV voxel, conj(s_l) times the whitened coil samples of the
/// reduced-FOV voxel it folds onto.
pub fn fold_adjoint(
    d: &CoilDataset,
    enc: &EncodingOperator,
    psi: &NoiseCovariance,
    t: usize,
) -> Result<ComplexVolume> {
    if d.geometry() != enc.geometry {
        return Err(Error::GeometryMismatch("dataset geometry differs from encoder".into()));
    }
    let l = enc.coils();
    if d.coils() != l || psi.coils() != l {
        return Err(Error::GeometryMismatch("coil counts differ".into()));
    }
    let (xr, yr, zr) = enc.geometry.reduced_dims();
    let dy = enc.geometry.delta_y();
    let r = enc.geometry.r();
    let psi_inv = psi.inverse();
    let mut out = ComplexVolume::zeros(enc.geometry.full_dims());
    let mut coil_buf = vec![Complex64::new(0.0, 0.0); l];
    let mut white = vec![Complex64::new(0.0, 0.0); l];
    for z in 0..zr {
        for y in 0..yr {
            for x in 0..xr {
                let vox = x + xr * (y + yr * z);
                d.gather_coils(t, vox, &mut coil_buf);
                for i in 0..l {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for j in 0..l {
                        acc += psi_inv[i * l + j] * coil_buf[j];
                    }
                    white[i] = acc;
                }
                for k in 0..r {
                    let yy = y + k * dy;
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (li, w) in white.iter().enumerate() {
                        acc += enc.sens.map(li).at(x, yy, z).conj() * w;
                    }
                    *out.at_mut(x, yy, z) = acc;
                }
            }
        }
    }
    Ok(out)
}

/// Root sum of squares combination of coil images; the result is real-valued
/// and stored in the real part.
pub fn sos(coil_images: &[ComplexVolume]) -> Result<ComplexVolume> {
    if coil_images.is_empty() {
        return Err(Error::GeometryMismatch("need at least one coil image".into()));
    }
    let dims = coil_images[0].dims();
    if coil_images.iter().any(|c| c.dims() != dims) {
        return Err(Error::ShapeMismatch("coil images have mixed dims".into()));
    }
    let mut out = ComplexVolume::zeros(dims);
    for (i, o) in out.data_mut().iter_mut().enumerate() {
        let s: f64 = coil_images.iter().map(|c| c.data()[i].norm_sqr()).sum();
        *o = Complex64::new(s.sqrt(), 0.0);
    }
    Ok(out)
}

/// Default support threshold: voxels with SOS above this fraction of the SOS
/// maximum get a sensitivity estimate, the rest are zeroed.
pub const SENSITIVITY_MASK_FRACTION: f64 = 0.05;

/// Estimate sensitivity maps by dividing coil images by the SOS magnitude on
/// a support mask. On the mask the maps satisfy sum_l |s_l|^2 = 1.
pub fn estimate_sensitivities(
    coil_images: &[ComplexVolume],
    mask_fraction: f64,
) -> Result<SensitivitySet> {
    let sos_vol = sos(coil_images)?;
    let max = sos_vol.data().iter().map(|c| c.re).fold(0.0f64, f64::max);
    let thresh = mask_fraction * max;
    if max == 0.0 {
        return Err(Error::EmptyMask);
    }
    let dims = sos_vol.dims();
    let mut any = false;
    let mut maps = Vec::with_capacity(coil_images.len());
    for img in coil_images {
        let mut m = ComplexVolume::zeros(dims);
        for i in 0..m.len() {
            let s = sos_vol.data()[i].re;
            if s > thresh {
                any = true;
                m.data_mut()[i] = img.data()[i] / s;
            }
        }
        maps.push(m);
    }
    if !any {
        return Err(Error::EmptyMask);
    }
    SensitivitySet::new(maps)
}

/// Sample covariance of per-coil noise vectors, with a small diagonal
/// loading (1e-8 of the mean channel power) so the result stays positive
/// definite for downstream Cholesky solves.
pub fn estimate_noise_cov(noise_samples: &[Vec<Complex64>]) -> Result<NoiseCovariance> {
    let l = noise_samples.len();
    if l == 0 {
        return Err(Error::TooFewSamples { needed: 10, got: 0 });
    }
    let n = noise_samples[0].len();
    if noise_samples.iter().any(|s| s.len() != n) {
        return Err(Error::ShapeMismatch("noise channels differ in length".into()));
    }
    if n < 10 * l {
        return Err(Error::TooFewSamples { needed: 10 * l, got: n });
    }
    let mut psi = vec![Complex64::new(0.0, 0.0); l * l];
    for i in 0..l {
        for j in 0..=i {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += noise_samples[i][k] * noise_samples[j][k].conj();
            }
            acc /= n as f64;
            psi[i * l + j] = acc;
            psi[j * l + i] = acc.conj();
        }
    }
    let trace: f64 = (0..l).map(|i| psi[i * l + i].re).sum();
    let load = 1e-8 * trace / l as f64;
    for i in 0..l {
        psi[i * l + i] += Complex64::new(load, 0.0);
        psi[i * l + i].im = 0.0;
    }
    NoiseCovariance::new(l, psi)
}

/// Per-voxel normal-equation blocks of the unfolding problem, precomputed
/// once per reconstruction: a = S^H Psi^-1 S (RxR) and b = S^H Psi^-1 (RxL)
/// for every reduced-FOV voxel.
pub struct UnfoldingBlocks {
    pub r: usize,
    pub l: usize,
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
}

impl UnfoldingBlocks {
    pub fn build(enc: &EncodingOperator, psi: &NoiseCovariance) -> Result<Self> {
        let l = enc.coils();
        if psi.coils() != l {
            return Err(Error::GeometryMismatch("covariance size differs from coil count".into()));
        }
        let r = enc.geometry.r();
        let (xr, yr, zr) = enc.geometry.reduced_dims();
        let nvox = xr * yr * zr;
        let psi_inv = psi.inverse();
        let mut a = vec![Complex64::new(0.0, 0.0); nvox * r * r];
        let mut b = vec![Complex64::new(0.0, 0.0); nvox * r * l];
        a.par_chunks_mut(r * r)
            .zip(b.par_chunks_mut(r * l))
            .enumerate()
            .for_each(|(vox, (ab, bb))| {
                let x = vox % xr;
                let y = (vox / xr) % yr;
                let z = vox / (xr * yr);
                let mut s = vec![Complex64::new(0.0, 0.0); l * r];
                enc.sens.gather(&enc.geometry, x, y, z, &mut s);
                linalg::normal_blocks(&s, l, r, &psi_inv, ab, bb);
            });
        Ok(Self { r, l, a, b })
    }

    #[inline]
    pub fn a_at(&self, vox: usize) -> &[Complex64] {
        &self.a[vox * self.r * self.r..(vox + 1) * self.r * self.r]
    }

    #[inline]
    pub fn b_at(&self, vox: usize) -> &[Complex64] {
        &self.b[vox * self.r * self.l..(vox + 1) * self.r * self.l]
    }
}

/// Closed-form SENSE: per frame and reduced-FOV voxel, the minimum-norm WLS
/// unfolding assembled back into full-FOV volumes.
pub fn sense_wls(
    d: &CoilDataset,
    enc: &EncodingOperator,
    psi: &NoiseCovariance,
) -> Result<VolumeSeries> {
    if d.geometry() != enc.geometry {
        return Err(Error::GeometryMismatch("dataset geometry differs from encoder".into()));
    }
    if d.coils() != enc.coils() {
        return Err(Error::GeometryMismatch("coil counts differ".into()));
    }
    let blocks = UnfoldingBlocks::build(enc, psi)?;
    let (xr, yr, zr) = enc.geometry.reduced_dims();
    let dy = enc.geometry.delta_y();
    let r = enc.geometry.r();
    let l = enc.coils();
    let frames: Vec<ComplexVolume> = (0..d.n_frames())
        .into_par_iter()
        .map(|t| {
            let mut vol = ComplexVolume::zeros(enc.geometry.full_dims());
            let mut coil_buf = vec![Complex64::new(0.0, 0.0); l];
            for z in 0..zr {
                for y in 0..yr {
                    for x in 0..xr {
                        let vox = x + xr * (y + yr * z);
                        d.gather_coils(t, vox, &mut coil_buf);
                        let rhs = linalg::matvec(blocks.b_at(vox), r, l, &coil_buf);
                        let pinv = linalg::hermitian_pinv(blocks.a_at(vox), r);
                        let u = linalg::matvec(&pinv, r, r, &rhs);
                        for (k, uk) in u.iter().enumerate() {
                            *vol.at_mut(x, y + k * dy, z) = *uk;
                        }
                    }
                }
            }
            vol
        })
        .collect();
    VolumeSeries::new(frames)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit_sens(dims: (usize, usize, usize), l: usize) -> SensitivitySet {
        let maps =
            (0..l).map(|_| ComplexVolume::from_fn(dims, |_, _, _| c(1.0, 0.0))).collect();
        SensitivitySet::new(maps).unwrap()
    }

    #[test]
    fn fold_without_reduction_is_pointwise() {
        let dims = (2, 4, 1);
        let geom = SenseGeometry::new(dims, 1).unwrap();
        let rho = ComplexVolume::from_fn(dims, |x, y, _| c((x + 2 * y) as f64, 1.0));
        let enc = EncodingOperator::new(unit_sens(dims, 1), geom).unwrap();
        let d = fold(&rho, &enc).unwrap();
        assert_eq!(d.coil_frame(0, 0), rho.data());
    }

    #[test]
    fn fold_sums_aliased_pair() {
        // X=1, Z=1, Y=4, R=2, unit coil: d = (1+3, 2+4)
        let dims = (1, 4, 1);
        let geom = SenseGeometry::new(dims, 2).unwrap();
        let rho = ComplexVolume::from_fn(dims, |_, y, _| c((y + 1) as f64, 0.0));
        let enc = EncodingOperator::new(unit_sens(dims, 1), geom).unwrap();
        let d = fold(&rho, &enc).unwrap();
        assert_eq!(d.coil_frame(0, 0), &[c(4.0, 0.0), c(6.0, 0.0)]);
    }

    #[test]
    fn fold_passes_single_band_support() {
        let dims = (1, 4, 1);
        let geom = SenseGeometry::new(dims, 2).unwrap();
        // support only in the first aliasing band (y < delta_y = 2)
        let rho = ComplexVolume::from_fn(dims, |_, y, _| {
            if y < 2 {
                c(y as f64 + 5.0, -1.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let enc = EncodingOperator::new(unit_sens(dims, 1), geom).unwrap();
        let d = fold(&rho, &enc).unwrap();
        assert_eq!(d.coil_frame(0, 0), &rho.data()[0..2]);
    }

    #[test]
    fn sos_is_pythagorean() {
        let dims = (1, 1, 1);
        let a = ComplexVolume::new(dims, vec![c(3.0, 0.0)]).unwrap();
        let b = ComplexVolume::new(dims, vec![c(0.0, 4.0)]).unwrap();
        let s = sos(&[a.clone(), b]).unwrap();
        assert!((s.data()[0].re - 5.0).abs() < 1e-15);
        let single = sos(&[a]).unwrap();
        assert!((single.data()[0].re - 3.0).abs() < 1e-15);
        let zero = sos(&[ComplexVolume::zeros(dims)]).unwrap();
        assert_eq!(zero.data()[0].re, 0.0);
    }

    #[test]
    fn sensitivity_estimation_normalizes_on_mask() {
        let dims = (2, 1, 1);
        // voxel 0: coils (3, 4); voxel 1: below mask threshold
        let c1 = ComplexVolume::new(dims, vec![c(3.0, 0.0), c(0.01, 0.0)]).unwrap();
        let c2 = ComplexVolume::new(dims, vec![c(4.0, 0.0), c(0.01, 0.0)]).unwrap();
        let s = estimate_sensitivities(&[c1, c2], 0.05).unwrap();
        assert!((s.map(0).data()[0].re - 0.6).abs() < 1e-15);
        assert!((s.map(1).data()[0].re - 0.8).abs() < 1e-15);
        let sumsq = s.map(0).data()[0].norm_sqr() + s.map(1).data()[0].norm_sqr();
        assert!((sumsq - 1.0).abs() < 1e-14);
        // masked-out voxel stays zero
        assert_eq!(s.map(0).data()[1], c(0.0, 0.0));
        assert_eq!(s.map(1).data()[1], c(0.0, 0.0));
    }

    #[test]
    fn single_coil_unit_sensitivity() {
        let dims = (1, 1, 1);
        let img = ComplexVolume::new(dims, vec![c(5.0, 0.0)]).unwrap();
        let s = estimate_sensitivities(&[img], 0.05).unwrap();
        assert!((s.map(0).data()[0].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn empty_mask_is_an_error() {
        let dims = (1, 1, 1);
        let img = ComplexVolume::zeros(dims);
        assert_eq!(estimate_sensitivities(&[img], 0.05), Err(Error::EmptyMask));
    }

    #[test]
    fn noise_cov_rejects_short_samples() {
        let samples = vec![vec![c(0.0, 0.0); 5], vec![c(0.0, 0.0); 5]];
        assert!(matches!(estimate_noise_cov(&samples), Err(Error::TooFewSamples { .. })));
    }

    #[test]
    fn noise_cov_single_coil_variance() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let sigma = 0.7f64;
        let n = 100_000;
        let samples: Vec<Complex64> = (0..n)
            .map(|_| {
                // crude uniform-sum gaussian surrogate is fine for a variance check
                let g1: f64 = (0..12).map(|_| rng.random::<f64>()).sum::<f64>() - 6.0;
                let g2: f64 = (0..12).map(|_| rng.random::<f64>()).sum::<f64>() - 6.0;
                c(g1, g2) * (sigma / std::f64::consts::SQRT_2)
            })
            .collect();
        let cov = estimate_noise_cov(&[samples]).unwrap();
        let v = cov.matrix()[0].re;
        assert!((v - sigma * sigma).abs() < 0.05 * sigma * sigma, "v={}", v);
    }

    #[test]
    fn noise_cov_identical_channels_is_rank_one_plus_loading() {
        let base: Vec<Complex64> = (0..64).map(|i| c((i % 7) as f64 - 3.0, (i % 5) as f64)).collect();
        let cov = estimate_noise_cov(&[base.clone(), base]).unwrap();
        let m = cov.matrix();
        // off-diagonal equals diagonal minus the loading
        assert!((m[0].re - m[1].re).abs() / m[0].re < 1e-6);
        assert!(m[1].im.abs() < 1e-12);
        // still PD thanks to loading
        assert!(crate::linalg::cholesky(m, 2).is_ok());
    }

    #[test]
    fn wls_identity_geometry_returns_data() {
        let dims = (2, 2, 1);
        let geom = SenseGeometry::new(dims, 1).unwrap();
        let enc = EncodingOperator::new(unit_sens(dims, 1), geom).unwrap();
        let rho = ComplexVolume::from_fn(dims, |x, y, _| c(x as f64, y as f64));
        let d = fold(&rho, &enc).unwrap();
        let rec = sense_wls(&d, &enc, &NoiseCovariance::identity(1)).unwrap();
        for (a, b) in rec.frame(0).data().iter().zip(rho.data()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn wls_rank_deficient_splits_minimum_norm() {
        // identical sensitivities at both aliased positions: minimum-norm
        // splits the aliased sum evenly
        let dims = (1, 4, 1);
        let geom = SenseGeometry::new(dims, 2).unwrap();
        let enc = EncodingOperator::new(unit_sens(dims, 2), geom).unwrap();
        let rho = ComplexVolume::from_fn(dims, |_, y, _| c((y + 1) as f64, 0.0));
        let d = fold(&rho, &enc).unwrap();
        let rec = sense_wls(&d, &enc, &NoiseCovariance::identity(2)).unwrap();
        // aliased pairs (1,3) and (2,4) -> halves (2,3) and (2,3)... per voxel
        assert!((rec.frame(0).at(0, 0, 0) - c(2.0, 0.0)).norm() < 1e-10);
        assert!((rec.frame(0).at(0, 2, 0) - c(2.0, 0.0)).norm() < 1e-10);
        assert!((rec.frame(0).at(0, 1, 0) - c(3.0, 0.0)).norm() < 1e-10);
        assert!((rec.frame(0).at(0, 3, 0) - c(3.0, 0.0)).norm() < 1e-10);
    }
}
