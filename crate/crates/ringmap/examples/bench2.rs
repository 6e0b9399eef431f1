use ringmap::capacity::*;
use ringmap::RingDomain;
use std::time::Instant;

fn main() {
    let d = RingDomain::annulus(1.0, std::f64::consts::E).unwrap();
    // single solve at 1/128, cold start, per-omega iteration counts
    for omega_env in ["1.95", "1.97", "1.98", "1.99"] {
        std::env::set_var("RINGMAP_OMEGA", omega_env);
        let mut g = rasterize(&d, 1.0 / 128.0).unwrap();
        let t0 = Instant::now();
        let iters = solve_grid(&mut g, 1e-10, 40_000).unwrap();
        println!("omega={}: {} iters, {:?}", omega_env, iters, t0.elapsed());
    }
}
