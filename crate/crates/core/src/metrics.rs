//! Reconstruction quality metrics.

use crate::error::{Error, Result};
use crate::volume::{ComplexVolume, VolumeSeries};

/// Normalized mean squared error ||est - ref||^2 / ||ref||^2 on complex values.
pub fn nmse(estimate: &ComplexVolume, reference: &ComplexVolume) -> Result<f64> {
    if estimate.dims() != reference.dims() {
        return Err(Error::ShapeMismatch("nmse operands differ in dims".into()));
    }
    let ref_energy = reference.norm_sqr();
    if ref_energy == 0.0 {
        return Err(Error::ZeroReference);
    }
    let err: f64 = estimate
        .data()
        .iter()
        .zip(reference.data())
        .map(|(e, r)| (e - r).norm_sqr())
        .sum();
    Ok(err / ref_energy)
}

/// NMSE on magnitudes, discarding phase.
pub fn nmse_magnitude(estimate: &ComplexVolume, reference: &ComplexVolume) -> Result<f64> {
    if estimate.dims() != reference.dims() {
        return Err(Error::ShapeMismatch("nmse operands differ in dims".into()));
    }
    let ref_energy: f64 = reference.data().iter().map(|r| r.norm_sqr()).sum();
    if ref_energy == 0.0 {
        return Err(Error::ZeroReference);
    }
    let err: f64 = estimate
        .data()
        .iter()
        .zip(reference.data())
        .map(|(e, r)| {
            let d = e.norm() - r.norm();
            d * d
        })
        .sum();
    Ok(err / ref_energy)
}

/// Peak signal-to-noise ratio in dB against the reference peak magnitude.
/// Returns infinity for an exact match.
pub fn psnr(estimate: &ComplexVolume, reference: &ComplexVolume) -> Result<f64> {
    if estimate.dims() != reference.dims() {
        return Err(Error::ShapeMismatch("psnr operands differ in dims".into()));
    }
    let peak = reference.data().iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    if peak == 0.0 {
        return Err(Error::ZeroReference);
    }
    let mse: f64 = estimate
        .data()
        .iter()
        .zip(reference.data())
        .map(|(e, r)| (e - r).norm_sqr())
        .sum::<f64>()
        / estimate.len() as f64;
    if mse == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (peak * peak / mse).log10())
}

/// NMSE pooled over all frames of a series.
pub fn nmse_series(estimate: &VolumeSeries, reference: &VolumeSeries) -> Result<f64> {
    if estimate.n_frames() != reference.n_frames() || estimate.dims() != reference.dims() {
        return Err(Error::ShapeMismatch("series differ in shape".into()));
    }
    let mut err = 0.0;
    let mut energy = 0.0;
    for t in 0..estimate.n_frames() {
        err += estimate
            .frame(t)
            .data()
            .iter()
            .zip(reference.frame(t).data())
            .map(|(e, r)| (e - r).norm_sqr())
            .sum::<f64>();
        energy += reference.frame(t).norm_sqr();
    }
    if energy == 0.0 {
        return Err(Error::ZeroReference);
    }
    Ok(err / energy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn vol(vals: &[f64]) -> ComplexVolume {
        ComplexVolume::new((vals.len(), 1, 1), vals.iter().map(|&v| Complex64::new(v, 0.0)).collect())
            .unwrap()
    }

    #[test]
    fn identical_inputs_give_zero() {
        let x = vol(&[1.0, -2.0, 3.0]);
        assert_eq!(nmse(&x, &x).unwrap(), 0.0);
        assert!(psnr(&x, &x).unwrap().is_infinite());
    }

    #[test]
    fn zero_estimate_gives_one() {
        let x = vol(&[1.0, 2.0, 2.0]);
        let z = vol(&[0.0, 0.0, 0.0]);
        assert!((nmse(&z, &x).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn doubled_estimate_gives_one() {
        let x = vol(&[1.0, 2.0, -1.0]);
        let d = vol(&[2.0, 4.0, -2.0]);
        assert!((nmse(&d, &x).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_reference_is_an_error() {
        let z = vol(&[0.0, 0.0]);
        let x = vol(&[1.0, 1.0]);
        assert_eq!(nmse(&x, &z), Err(Error::ZeroReference));
    }

    #[test]
    fn residual_scaling_is_quadratic() {
        let x = vol(&[1.0, 2.0, 3.0]);
        let e1 = vol(&[1.1, 2.0, 3.0]);
        let e2 = vol(&[1.2, 2.0, 3.0]);
        let n1 = nmse(&e1, &x).unwrap();
        let n2 = nmse(&e2, &x).unwrap();
        assert!((n2 / n1 - 4.0).abs() < 1e-9);
    }

    #[test]
    fn magnitude_metric_ignores_phase() {
        let a = ComplexVolume::new((1, 1, 1), vec![Complex64::new(0.0, 2.0)]).unwrap();
        let b = ComplexVolume::new((1, 1, 1), vec![Complex64::new(2.0, 0.0)]).unwrap();
        assert_eq!(nmse_magnitude(&a, &b).unwrap(), 0.0);
        assert!(nmse(&a, &b).unwrap() > 0.0);
    }
}
