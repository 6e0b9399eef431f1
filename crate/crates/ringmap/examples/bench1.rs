use ringmap::capacity::*;
use ringmap::RingDomain;
use std::time::Instant;

fn main() {
    let d = RingDomain::annulus(1.0, std::f64::consts::E).unwrap();
    let t0 = Instant::now();
    let opts = SolverOptions { levels: 4, finest_spacing: Some(1.0 / 256.0), ..Default::default() };
    let est = solve_capacity_region(&d, &opts).unwrap();
    println!(
        "A(1,e) 4 levels @1/256: mod = {:.6} +- {:.2e}, total {:?}",
        est.modulus,
        est.modulus_abs_error,
        t0.elapsed()
    );
    println!("  levels: {:?}", est.grid_levels);
}
