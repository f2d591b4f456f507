// probe: full pipeline behavior on the desk instance (simulate -> WLS ->
// ML fit -> regularized reconstruction) across noise scales
use uwrsense::hyper::{self, PowellConfig};
use uwrsense::metrics;
use uwrsense::prox::TemporalParams;
use uwrsense::sense::{self, EncodingOperator};
use uwrsense::sim::{self, AcquisitionSpec, PhantomSpec, TemporalModel};
use uwrsense::solver::{self, SolverConfig};
use uwrsense::volume::SenseGeometry;
use uwrsense::wavelet::WaveletSpec;

fn main() {
    let dims = (16, 16, 8);
    let (l, r, n_r) = (4usize, 2usize, 8usize);
    let spec = WaveletSpec::symmlet8(3);
    for sigma in [2.0, 5.0, 10.0] {
        println!("==== sigma = {} ====", sigma);
        let base = sim::make_phantom(&PhantomSpec::standard(dims, 42));
        let sens = sim::make_coils(dims, l, r, 42).unwrap();
        let geom = SenseGeometry::new(dims, r).unwrap();
        let enc = EncodingOperator::new(sens, geom).unwrap();
        let truth = sim::make_series(&base, &TemporalModel::gentle(dims), n_r);
        let acq = AcquisitionSpec { coils: l, r, frames: n_r, noise_scale: sigma, coil_correlation: 0.3, seed: 7 };
        let d = sim::acquire(&truth, &enc, &acq).unwrap();
        let psi = sim::psi_true(l, sigma, 0.3).unwrap();

        let wls = sense::sense_wls(&d, &enc, &psi).unwrap();
        let nmse_wls = metrics::nmse_series(&wls, &truth).unwrap();
        println!("NMSE sense   = {:.6e}", nmse_wls);

        let t0 = std::time::Instant::now();
        let hp = hyper::estimate_all(&wls, &spec, None, &PowellConfig::default()).unwrap();
        println!("estimate_all took {:.2?}; temporal = {:?}", t0.elapsed(), hp.temporal);
        let tp = hp.temporal.unwrap_or(TemporalParams::off());
        println!("approx band: {:?}", hp.spatial.band(uwrsense::wavelet::Subband::Approx));
        println!("d1_111 band: {:?}", hp.spatial.band(uwrsense::wavelet::Subband::Detail { o: 7, j: 1 }));

        let config = SolverConfig::default();
        let t0 = std::time::Instant::now();
        let res4 = solver::solve_4d(&d, &enc, &psi, &hp.spatial, &tp, &spec, &config, &wls, |rec| {
            if rec.n <= 6 || rec.n % 10 == 0 {
                println!("  n={:3} J={:.8e} rel={:.3e}", rec.n, rec.criterion, rec.rel_change);
            }
        })
        .unwrap();
        println!(
            "4d: {} iters, converged={}, J0={:.6e}, Jend={:.6e}, took {:.2?}",
            res4.iterations.len(),
            res4.converged,
            res4.initial_criterion,
            res4.iterations.last().unwrap().criterion,
            t0.elapsed()
        );
        println!("NMSE uwr4d  = {:.6e}", metrics::nmse_series(&res4.series, &truth).unwrap());

        // 3d: per-frame spatial-only
        let res3 = solver::solve_4d(
            &d, &enc, &psi, &hp.spatial, &TemporalParams::off(), &spec, &config, &wls, |_| {},
        )
        .unwrap();
        println!(
            "3d: {} iters, converged={}, NMSE uwr3d  = {:.6e}",
            res3.iterations.len(),
            res3.converged,
            metrics::nmse_series(&res3.series, &truth).unwrap()
        );
    }
}
