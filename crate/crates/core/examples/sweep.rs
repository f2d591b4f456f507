// probe: seed sweep for the desk instance and a preview of the larger
// benchmark geometry at both reduction factors
use uwrsense::hyper::{self, PowellConfig};
use uwrsense::metrics;
use uwrsense::prox::TemporalParams;
use uwrsense::sense::{self, EncodingOperator};
use uwrsense::sim::{self, AcquisitionSpec, PhantomSpec, TemporalModel};
use uwrsense::solver::{self, SolverConfig};
use uwrsense::volume::SenseGeometry;
use uwrsense::wavelet::WaveletSpec;

fn run_one(
    dims: (usize, usize, usize),
    l: usize,
    r: usize,
    n_r: usize,
    sigma: f64,
    seed: u64,
) -> (usize, bool, f64, f64, f64, f64, f64) {
    let spec = WaveletSpec::symmlet8(3);
    let base = sim::make_phantom(&PhantomSpec::standard(dims, seed));
    let sens = sim::make_coils(dims, l, r, seed).unwrap();
    let geom = SenseGeometry::new(dims, r).unwrap();
    let enc = EncodingOperator::new(sens, geom).unwrap();
    let truth = sim::make_series(&base, &TemporalModel::gentle(dims), n_r);
    let acq = AcquisitionSpec { coils: l, r, frames: n_r, noise_scale: sigma, coil_correlation: 0.3, seed };
    let d = sim::acquire(&truth, &enc, &acq).unwrap();
    let psi = sim::psi_true(l, sigma, 0.3).unwrap();
    let wls = sense::sense_wls(&d, &enc, &psi).unwrap();
    let nmse_sense = metrics::nmse_series(&wls, &truth).unwrap();
    let hp = hyper::estimate_all(&wls, &spec, None, &PowellConfig::default()).unwrap();
    let tp = hp.temporal.unwrap_or(TemporalParams::off());
    let config = SolverConfig::default();
    let res4 =
        solver::solve_4d(&d, &enc, &psi, &hp.spatial, &tp, &spec, &config, &wls, |_| {}).unwrap();
    let res3 = solver::solve_4d(
        &d, &enc, &psi, &hp.spatial, &TemporalParams::off(), &spec, &config, &wls, |_| {},
    )
    .unwrap();
    (
        res4.iterations.len(),
        res4.converged,
        res4.initial_criterion,
        res4.iterations.last().unwrap().criterion,
        nmse_sense,
        metrics::nmse_series(&res3.series, &truth).unwrap(),
        metrics::nmse_series(&res4.series, &truth).unwrap(),
    )
}

fn main() {
    println!("--- desk instance 16x16x8 L=4 R=2 Nr=8 sigma=8 ---");
    for seed in 1..=8u64 {
        let (iters, conv, j0, jend, s, r3, r4) = run_one((16, 16, 8), 4, 2, 8, 8.0, seed);
        println!(
            "seed {}: iters={:3} conv={} J0={:.3e} Jend={:.3e} | sense {:.3e}  3d {:.3e}  4d {:.3e}  ordered={}",
            seed, iters, conv, j0, jend, s, r3, r4, r4 < r3 && r3 < s
        );
    }
    for r in [2usize, 4] {
        println!("--- bench 32x32x16 L=8 R={} Nr=16 sigma=8 ---", r);
        for seed in 1..=3u64 {
            let t0 = std::time::Instant::now();
            let (iters, conv, j0, jend, s, r3, r4) = run_one((32, 32, 16), 8, r, 16, 8.0, seed);
            println!(
                "seed {}: iters={:3} conv={} J0={:.3e} Jend={:.3e} | sense {:.3e}  3d {:.3e}  4d {:.3e}  ordered={} ({:.1?})",
                seed, iters, conv, j0, jend, s, r3, r4, r4 < r3 && r3 < s, t0.elapsed()
            );
        }
    }
}
