//! Conformal capacity of ring domains by minimizing the Dirichlet energy of a
//! potential on a grid: 5-point Laplace solve, energy from first differences,
//! Richardson extrapolation over halved spacings.

use crate::domain::{ExtendedModulus, Region, RingDomain};
use crate::moduli::conformal_modulus_closed_form;
use crate::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;

/// Geometry oracle the rasterizer consumes. Ring domains implement it; the
/// constructors implement it for image domains that have no symbolic kind.
pub trait RegionOracle: Sync {
    fn classify(&self, z: Complex64) -> Region;
    /// Boundary samples of (bounded component, other component), step-dense,
    /// unbounded pieces clipped to `clip` from the scene center.
    fn boundary_samples(&self, step: f64, clip: f64) -> Result<(Vec<Complex64>, Vec<Complex64>)>;
    fn scene_center(&self) -> Complex64;
    fn scene_diameter(&self) -> f64;
    fn is_bounded(&self) -> bool;
    fn outer_complement_unbounded(&self) -> bool;
    fn separation_hint(&self) -> Option<f64>;
}

impl RegionOracle for RingDomain {
    fn classify(&self, z: Complex64) -> Region {
        RingDomain::classify(self, z)
    }
    fn boundary_samples(&self, step: f64, clip: f64) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
        RingDomain::boundary_samples(self, step, clip)
    }
    fn scene_center(&self) -> Complex64 {
        RingDomain::scene_center(self)
    }
    fn scene_diameter(&self) -> f64 {
        RingDomain::scene_diameter(self)
    }
    fn is_bounded(&self) -> bool {
        RingDomain::is_bounded(self)
    }
    fn outer_complement_unbounded(&self) -> bool {
        RingDomain::outer_complement_unbounded(self)
    }
    fn separation_hint(&self) -> Option<f64> {
        self.width_and_separation().ok().map(|ws| ws.separation)
    }
}

/// Role of a grid cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellRole {
    Interior,
    Dirichlet0,
    Dirichlet1,
    /// Beyond the region of interest; the stencil treats the face as insulating.
    Outside,
}

/// Cell-centered potential grid. `values[j * nx + i]` sits at
/// `origin + spacing * (i + i*j)`.
pub struct PotentialGrid {
    pub origin: Complex64,
    pub spacing: f64,
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<f64>,
    pub mask: Vec<CellRole>,
}

impl PotentialGrid {
    pub fn center(&self, i: usize, j: usize) -> Complex64 {
        self.origin + Complex64::new(self.spacing * i as f64, self.spacing * j as f64)
    }

    fn at(&self, i: usize, j: usize) -> CellRole {
        self.mask[j * self.nx + i]
    }

    /// Bilinear sample of the value field, clamped to the grid.
    fn sample(&self, z: Complex64) -> f64 {
        let x = ((z.re - self.origin.re) / self.spacing).clamp(0.0, (self.nx - 1) as f64);
        let y = ((z.im - self.origin.im) / self.spacing).clamp(0.0, (self.ny - 1) as f64);
        let (i0, j0) = (x.floor() as usize, y.floor() as usize);
        let (i1, j1) = ((i0 + 1).min(self.nx - 1), (j0 + 1).min(self.ny - 1));
        let (fx, fy) = (x - i0 as f64, y - j0 as f64);
        let v = |i: usize, j: usize| self.values[j * self.nx + i];
        (1.0 - fx) * (1.0 - fy) * v(i0, j0)
            + fx * (1.0 - fy) * v(i1, j0)
            + (1.0 - fx) * fy * v(i0, j1)
            + fx * fy * v(i1, j1)
    }
}

/// Capacity estimate with its refinement history.
#[derive(Debug, Clone)]
pub struct CapacityEstimate {
    pub cap: f64,
    pub modulus: f64,
    /// `(spacing, cap)` per level, coarse to fine.
    pub grid_levels: Vec<(f64, f64)>,
    pub extrapolated: bool,
    pub cap_abs_error: f64,
    pub modulus_abs_error: f64,
}

/// Solver configuration.
#[derive(Debug, Clone)]
pub struct SolverOptions {
    /// Number of successively halved spacings.
    pub levels: usize,
    /// Finest spacing; when absent it is derived from `base_resolution`.
    pub finest_spacing: Option<f64>,
    /// Cells across the scene diameter at the coarsest level.
    pub base_resolution: usize,
    /// Truncation box side as a multiple of the scene diameter.
    pub box_factor: f64,
    /// Relative residual target of the linear solve.
    pub tol: f64,
    pub max_iters: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            levels: 3,
            finest_spacing: None,
            base_resolution: 48,
            box_factor: 8.0,
            tol: 1e-10,
            max_iters: 40_000,
        }
    }
}

impl SolverOptions {
    pub fn fast() -> Self {
        Self { levels: 2, base_resolution: 40, ..Self::default() }
    }
}

/// Rasterize a ring domain at the given spacing.
///
/// Cell centers in the bounded complement component become `Dirichlet1`, in
/// the unbounded one `Dirichlet0`; cells met by a boundary sample are walled
/// the same way so that measure-zero slits still disconnect the grid.
/// Unbounded domains are truncated at a box `box_factor` times the scene
/// diameter; the box ring is grounded when the outer complement reaches it
/// and left insulating when the whole complement is compact.
pub fn rasterize(d: &RingDomain, spacing: f64) -> Result<PotentialGrid> {
    rasterize_region(d, spacing, 8.0)
}

pub fn rasterize_region(
    region: &impl RegionOracle,
    h: f64,
    box_factor: f64,
) -> Result<PotentialGrid> {
    if !(h > 0.0) {
        return Err(Error::OutOfRange(format!("spacing must be positive, got {h}")));
    }
    if let Some(sep) = region.separation_hint() {
        if h >= sep / 2.0 {
            return Err(Error::Solver(format!("spacing {h} too coarse for separation {sep}")));
        }
    }
    let center = region.scene_center();
    let diam = region.scene_diameter();
    let grounded_box = !region.is_bounded() && region.outer_complement_unbounded();
    let insulated_box = !region.is_bounded() && !region.outer_complement_unbounded();

    let half = box_factor * diam / 2.0;
    let clip = half * 1.3;
    let (inner_pts, outer_pts) = region.boundary_samples(h / 2.0, clip)?;
    if inner_pts.is_empty() {
        return Err(Error::Solver("empty bounded boundary".into()));
    }

    let (mut lo, mut hi);
    if grounded_box || insulated_box {
        lo = center - Complex64::new(half, half);
        hi = center + Complex64::new(half, half);
    } else {
        lo = Complex64::new(f64::INFINITY, f64::INFINITY);
        hi = Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in inner_pts.iter().chain(outer_pts.iter()) {
            lo.re = lo.re.min(p.re);
            lo.im = lo.im.min(p.im);
            hi.re = hi.re.max(p.re);
            hi.im = hi.im.max(p.im);
        }
        lo -= Complex64::new(3.0 * h, 3.0 * h);
        hi += Complex64::new(3.0 * h, 3.0 * h);
    }

    let nx = ((hi.re - lo.re) / h).ceil() as usize + 1;
    let ny = ((hi.im - lo.im) / h).ceil() as usize + 1;
    if nx < 4 || ny < 4 {
        return Err(Error::Solver("grid degenerate at this spacing".into()));
    }
    if nx.saturating_mul(ny) > 80_000_000 {
        return Err(Error::Solver(format!("grid too large: {nx} x {ny}")));
    }
    let origin = lo;

    let mut mask: Vec<CellRole> = (0..ny)
        .into_par_iter()
        .flat_map_iter(|j| {
            (0..nx)
                .map(|i| {
                    let z = origin + Complex64::new(h * i as f64, h * j as f64);
                    match region.classify(z) {
                        Region::Inner => CellRole::Dirichlet1,
                        Region::Outer => CellRole::Dirichlet0,
                        Region::Domain => CellRole::Interior,
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();

    // wall cells met by boundary samples
    let cell_of = |p: Complex64| -> Option<(usize, usize)> {
        let x = (p.re - origin.re) / h + 0.5;
        let y = (p.im - origin.im) / h + 0.5;
        if x < 0.0 || y < 0.0 {
            return None;
        }
        let (i, j) = (x.floor() as usize, y.floor() as usize);
        if i >= nx || j >= ny {
            None
        } else {
            Some((i, j))
        }
    };
    for p in &inner_pts {
        if let Some((i, j)) = cell_of(*p) {
            mask[j * nx + i] = CellRole::Dirichlet1;
        }
    }
    for p in &outer_pts {
        if let Some((i, j)) = cell_of(*p) {
            if mask[j * nx + i] != CellRole::Dirichlet1 {
                mask[j * nx + i] = CellRole::Dirichlet0;
            } else {
                return Err(Error::Solver(format!(
                    "spacing {h} too coarse: boundary components collide in one cell"
                )));
            }
        }
    }

    if grounded_box {
        for j in 0..ny {
            for i in 0..nx {
                if i == 0 || j == 0 || i == nx - 1 || j == ny - 1 {
                    mask[j * nx + i] = CellRole::Dirichlet0;
                }
            }
        }
    }

    // the two plates may not touch
    for j in 0..ny {
        for i in 0..nx {
            if mask[j * nx + i] != CellRole::Dirichlet1 {
                continue;
            }
            let mut touches = false;
            if i > 0 {
                touches |= mask[j * nx + i - 1] == CellRole::Dirichlet0;
            }
            if i + 1 < nx {
                touches |= mask[j * nx + i + 1] == CellRole::Dirichlet0;
            }
            if j > 0 {
                touches |= mask[(j - 1) * nx + i] == CellRole::Dirichlet0;
            }
            if j + 1 < ny {
                touches |= mask[(j + 1) * nx + i] == CellRole::Dirichlet0;
            }
            if touches {
                return Err(Error::Solver(format!(
                    "spacing {h} too coarse to separate the two boundary components"
                )));
            }
        }
    }

    let mut values = vec![0.0; nx * ny];
    for k in 0..nx * ny {
        if mask[k] == CellRole::Dirichlet1 {
            values[k] = 1.0;
        }
    }

    Ok(PotentialGrid { origin, spacing: h, nx, ny, values, mask })
}

/// Masked 5-point system in compressed form. Unknowns are numbered 1..=n in
/// row-major cell order with a zero ghost at index 0, so missing neighbors
/// point at the ghost and the sweeps stay branch-free. Left and down
/// neighbors always carry smaller indices, right and up larger.
struct LinearSystem {
    /// unknown index (1-based) -> flat grid index
    cells: Vec<u32>,
    diag: Vec<f64>,
    b: Vec<f64>,
    lower: Vec<[u32; 2]>,
    upper: Vec<[u32; 2]>,
}

impl LinearSystem {
    fn build(grid: &PotentialGrid) -> Self {
        let (nx, ny) = (grid.nx, grid.ny);
        let mut cells = vec![0u32];
        let mut idx = vec![0u32; nx * ny];
        for k in 0..nx * ny {
            if grid.mask[k] == CellRole::Interior {
                idx[k] = cells.len() as u32;
                cells.push(k as u32);
            }
        }
        let n = cells.len() - 1;
        let mut diag = vec![1.0; n + 1];
        let mut b = vec![0.0; n + 1];
        let mut lower = vec![[0u32; 2]; n + 1];
        let mut upper = vec![[0u32; 2]; n + 1];
        for m in 1..=n {
            let k = cells[m] as usize;
            let (i, j) = (k % nx, k / nx);
            let mut d = 0.0;
            let mut rhs = 0.0;
            let mut visit = |kk: usize, slot: &mut u32| match grid.mask[kk] {
                CellRole::Interior => {
                    d += 1.0;
                    *slot = idx[kk];
                }
                CellRole::Dirichlet0 => d += 1.0,
                CellRole::Dirichlet1 => {
                    d += 1.0;
                    rhs += 1.0;
                }
                CellRole::Outside => {}
            };
            let mut lo = [0u32; 2];
            let mut up = [0u32; 2];
            if i > 0 {
                visit(k - 1, &mut lo[0]);
            }
            if j > 0 {
                visit(k - nx, &mut lo[1]);
            }
            if i + 1 < nx {
                visit(k + 1, &mut up[0]);
            }
            if j + 1 < ny {
                visit(k + nx, &mut up[1]);
            }
            diag[m] = d;
            b[m] = rhs;
            lower[m] = lo;
            upper[m] = up;
        }
        Self { cells, diag, b, lower, upper }
    }

    fn n(&self) -> usize {
        self.cells.len() - 1
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let lower = &self.lower;
        let upper = &self.upper;
        let diag = &self.diag;
        y[0] = 0.0;
        y[1..].par_iter_mut().enumerate().for_each(|(m0, ym)| {
            let m = m0 + 1;
            let lo = lower[m];
            let up = upper[m];
            *ym = diag[m] * x[m]
                - x[lo[0] as usize]
                - x[lo[1] as usize]
                - x[up[0] as usize]
                - x[up[1] as usize];
        });
    }

    /// SSOR preconditioner application, natural ordering.
    fn precondition(&self, r: &[f64], t: &mut [f64], omega: f64) {
        let n = self.n();
        t[0] = 0.0;
        // (D/w + L) t = r   (off-diagonal entries are -1)
        for m in 1..=n {
            let lo = self.lower[m];
            let s = r[m] + t[lo[0] as usize] + t[lo[1] as usize];
            t[m] = s * omega / self.diag[m];
        }
        let scale = (2.0 - omega) / omega;
        for m in 1..=n {
            t[m] *= self.diag[m] * scale;
        }
        // (D/w + U) y = t
        for m in (1..=n).rev() {
            let up = self.upper[m];
            let s = t[m] + t[up[0] as usize] + t[up[1] as usize];
            t[m] = s * omega / self.diag[m];
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.par_iter().zip(b.par_iter()).map(|(x, y)| x * y).sum()
}

/// Solve the 5-point Laplace system on the grid in place.
///
/// Preconditioned conjugate gradients (SSOR); returns the iteration count.
pub fn solve_grid(grid: &mut PotentialGrid, tol: f64, max_iters: usize) -> Result<usize> {
    let sys = LinearSystem::build(grid);
    let n = sys.n();
    if n == 0 {
        return Err(Error::Solver("no interior cells at this spacing".into()));
    }
    let mut x = vec![0.0; n + 1];
    for m in 1..=n {
        x[m] = grid.values[sys.cells[m] as usize];
    }
    let bnorm = dot(&sys.b, &sys.b).sqrt().max(1e-300);
    let mut r = vec![0.0; n + 1];
    sys.apply(&x, &mut r);
    r.par_iter_mut().zip(sys.b.par_iter()).for_each(|(ri, bi)| *ri = bi - *ri);
    r[0] = 0.0;
    let omega = std::env::var("RINGMAP_OMEGA")
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .unwrap_or(1.7);
    let mut z = vec![0.0; n + 1];
    sys.precondition(&r, &mut z, omega);
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut q = vec![0.0; n + 1];
    let mut iters = 0;
    for it in 0..max_iters {
        iters = it + 1;
        sys.apply(&p, &mut q);
        let pq = dot(&p, &q);
        if pq <= 0.0 {
            break;
        }
        let alpha = rz / pq;
        let rn2: f64 = x
            .par_iter_mut()
            .zip(r.par_iter_mut())
            .zip(p.par_iter().zip(q.par_iter()))
            .map(|((xi, ri), (pi, qi))| {
                *xi += alpha * pi;
                *ri -= alpha * qi;
                *ri * *ri
            })
            .sum();
        if rn2.sqrt() <= tol * bnorm {
            break;
        }
        if it + 1 == max_iters {
            return Err(Error::Solver(format!(
                "no convergence in {max_iters} iterations, residual {:.3e}",
                rn2.sqrt()
            )));
        }
        sys.precondition(&r, &mut z, omega);
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        p.par_iter_mut().zip(z.par_iter()).for_each(|(pi, zi)| *pi = zi + beta * *pi);
    }
    for m in 1..=n {
        grid.values[sys.cells[m] as usize] = x[m];
    }
    Ok(iters)
}

/// Dirichlet energy from forward differences on cell edges; edges with one
/// Dirichlet endpoint carry half weight.
pub fn grid_energy(grid: &PotentialGrid) -> f64 {
    let (nx, ny) = (grid.nx, grid.ny);
    (0..ny)
        .into_par_iter()
        .map(|j| {
            let mut e = 0.0;
            for i in 0..nx {
                let a = grid.at(i, j);
                if a == CellRole::Outside {
                    continue;
                }
                let va = grid.values[j * nx + i];
                if i + 1 < nx {
                    let b = grid.at(i + 1, j);
                    let w = edge_weight(a, b);
                    if w > 0.0 {
                        let du = grid.values[j * nx + i + 1] - va;
                        e += w * du * du;
                    }
                }
                if j + 1 < ny {
                    let b = grid.at(i, j + 1);
                    let w = edge_weight(a, b);
                    if w > 0.0 {
                        let du = grid.values[(j + 1) * nx + i] - va;
                        e += w * du * du;
                    }
                }
            }
            e
        })
        .sum()
}

fn edge_weight(a: CellRole, b: CellRole) -> f64 {
    use CellRole::*;
    match (a, b) {
        (Interior, Interior) => 1.0,
        (Interior, Dirichlet0) | (Interior, Dirichlet1) => 0.5,
        (Dirichlet0, Interior) | (Dirichlet1, Interior) => 0.5,
        _ => 0.0,
    }
}

/// Capacity of a region by the grid method over `opts.levels` halved spacings
/// with first-order Richardson extrapolation.
pub fn solve_capacity_region(
    region: &impl RegionOracle,
    opts: &SolverOptions,
) -> Result<CapacityEstimate> {
    let diam = region.scene_diameter();
    let finest = match opts.finest_spacing {
        Some(h) => h,
        None => diam / opts.base_resolution as f64 / (1 << (opts.levels - 1)) as f64,
    };

    let mut levels = Vec::with_capacity(opts.levels);
    let mut prev: Option<PotentialGrid> = None;
    for l in 0..opts.levels {
        let h = finest * (1 << (opts.levels - 1 - l)) as f64;
        let mut grid = rasterize_region(region, h, opts.box_factor)?;
        if let Some(pg) = &prev {
            // warm start from the coarser solve
            for j in 0..grid.ny {
                for i in 0..grid.nx {
                    let k = j * grid.nx + i;
                    if grid.mask[k] == CellRole::Interior {
                        grid.values[k] = pg.sample(grid.center(i, j)).clamp(0.0, 1.0);
                    }
                }
            }
        }
        solve_grid(&mut grid, opts.tol, opts.max_iters)?;
        levels.push((h, grid_energy(&grid)));
        prev = Some(grid);
    }

    let (cap, err, extrapolated) = extrapolate_first_order(&levels);
    let modulus = 2.0 * std::f64::consts::PI / cap;
    let modulus_err = modulus * (err / cap) + 1e-12;
    Ok(CapacityEstimate {
        cap,
        modulus,
        grid_levels: levels,
        extrapolated,
        cap_abs_error: err,
        modulus_abs_error: modulus_err,
    })
}

/// Least-squares fit of `cap(h) = c0 + c1 h` over the last three levels;
/// returns `(c0, error estimate, extrapolated?)`.
fn extrapolate_first_order(levels: &[(f64, f64)]) -> (f64, f64, bool) {
    let n = levels.len();
    if n == 1 {
        return (levels[0].1, levels[0].1 * 0.05, false);
    }
    let pts = &levels[n.saturating_sub(3)..];
    let m = pts.len() as f64;
    let sh: f64 = pts.iter().map(|p| p.0).sum();
    let sc: f64 = pts.iter().map(|p| p.1).sum();
    let shh: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let shc: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = m * shh - sh * sh;
    if denom.abs() < 1e-300 {
        return (levels[n - 1].1, levels[n - 1].1 * 0.05, false);
    }
    let c1 = (m * shc - sh * sc) / denom;
    let c0 = (sc - c1 * sh) / m;
    let last = levels[n - 1].1;
    let resid: f64 = pts.iter().map(|p| (p.1 - c0 - c1 * p.0).abs()).fold(0.0, f64::max);
    let err = (last - c0).abs() * 0.75 + 2.0 * resid + 1e-12;
    (c0, err, true)
}

/// Grid capacity of a ring domain.
pub fn solve_capacity(d: &RingDomain, levels: usize) -> Result<CapacityEstimate> {
    let opts = SolverOptions { levels, ..SolverOptions::default() };
    solve_capacity_region(d, &opts)
}

/// Best available modulus: closed form when the kind has one, the grid solver
/// otherwise.
pub fn modulus_best(d: &RingDomain) -> Result<ExtendedModulus> {
    modulus_best_with(d, &SolverOptions::default())
}

pub fn modulus_best_with(d: &RingDomain, opts: &SolverOptions) -> Result<ExtendedModulus> {
    match conformal_modulus_closed_form(d) {
        Ok(m) => Ok(m),
        Err(Error::NoClosedForm) | Err(Error::Unsupported(_)) => {
            let est = solve_capacity_region(d, opts)?;
            Ok(ExtendedModulus::solved(est.modulus, est.modulus_abs_error))
        }
        Err(e) => Err(e),
    }
}

// --- potential field dump -------------------------------------------------

pub const POTENTIAL_MAGIC: &[u8; 8] = b"RINGPOT1";

/// Serialize the potential field: magic, nx, ny (u32 LE), spacing, origin
/// (f64 LE), then row-major 64-bit little-endian values.
pub fn write_potential_field(grid: &PotentialGrid) -> Vec<u8> {
    let mut out = Vec::with_capacity(40 + 8 * grid.values.len());
    out.extend_from_slice(POTENTIAL_MAGIC);
    out.extend_from_slice(&(grid.nx as u32).to_le_bytes());
    out.extend_from_slice(&(grid.ny as u32).to_le_bytes());
    out.extend_from_slice(&grid.spacing.to_le_bytes());
    out.extend_from_slice(&grid.origin.re.to_le_bytes());
    out.extend_from_slice(&grid.origin.im.to_le_bytes());
    for v in &grid.values {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

/// Header and values parsed back from a potential dump.
pub struct PotentialField {
    pub nx: usize,
    pub ny: usize,
    pub spacing: f64,
    pub origin: Complex64,
    pub values: Vec<f64>,
}

pub fn read_potential_field(data: &[u8]) -> Result<PotentialField> {
    if data.len() < 40 {
        return Err(Error::Parse("potential field: truncated header".into()));
    }
    if &data[0..8] != POTENTIAL_MAGIC {
        return Err(Error::Parse("potential field: bad magic".into()));
    }
    let rd_u32 = |o: usize| u32::from_le_bytes(data[o..o + 4].try_into().unwrap());
    let rd_f64 = |o: usize| f64::from_le_bytes(data[o..o + 8].try_into().unwrap());
    let nx = rd_u32(8) as usize;
    let ny = rd_u32(12) as usize;
    if nx == 0 || ny == 0 || nx > 100_000 || ny > 100_000 {
        return Err(Error::Parse(format!("potential field: bad dimensions {nx} x {ny}")));
    }
    let count = nx
        .checked_mul(ny)
        .ok_or_else(|| Error::Parse("potential field: dimension overflow".into()))?;
    if count > 50_000_000 {
        return Err(Error::Parse("potential field: too large".into()));
    }
    let need = 40 + 8 * count;
    if data.len() != need {
        return Err(Error::Parse(format!(
            "potential field: expected {need} bytes, got {}",
            data.len()
        )));
    }
    let spacing = rd_f64(16);
    if !(spacing > 0.0 && spacing.is_finite()) {
        return Err(Error::Parse("potential field: bad spacing".into()));
    }
    let origin = Complex64::new(rd_f64(24), rd_f64(32));
    if !origin.is_finite() {
        return Err(Error::Parse("potential field: bad origin".into()));
    }
    let mut values = Vec::with_capacity(count);
    for k in 0..count {
        values.push(rd_f64(40 + 8 * k));
    }
    Ok(PotentialField { nx, ny, spacing, origin, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Polygon;

    #[test]
    fn annulus_rasterization_masks() {
        let d = RingDomain::annulus(1.0, 2.0).unwrap();
        let g = rasterize(&d, 0.05).unwrap();
        let mut counts = [0usize; 3];
        for m in &g.mask {
            match m {
                CellRole::Interior => counts[0] += 1,
                CellRole::Dirichlet1 => counts[1] += 1,
                CellRole::Dirichlet0 => counts[2] += 1,
                CellRole::Outside => {}
            }
        }
        assert!(counts[0] > 0 && counts[1] > 0 && counts[2] > 0);
        // ring area is 3 pi; walls eat one cell layer on each side
        let ring = counts[0] as f64 * 0.05 * 0.05;
        assert!((ring - 3.0 * std::f64::consts::PI).abs() < 1.0, "{ring}");
    }

    #[test]
    fn rasterize_rejects_coarse_spacing() {
        let d = RingDomain::annulus(1.0, 1.1).unwrap();
        assert!(rasterize(&d, 0.06).is_err());
    }

    #[test]
    fn annulus_modulus_converges() {
        let d = RingDomain::annulus(1.0, std::f64::consts::E).unwrap();
        let opts = SolverOptions { levels: 3, base_resolution: 40, ..Default::default() };
        let est = solve_capacity_region(&d, &opts).unwrap();
        assert!(
            (est.modulus - 1.0).abs() < 0.01,
            "modulus {} (levels {:?})",
            est.modulus,
            est.grid_levels
        );
        assert!(est.extrapolated);
    }

    #[test]
    fn interior_values_respect_maximum_principle() {
        let d = RingDomain::annulus(1.0, 2.0).unwrap();
        let mut g = rasterize(&d, 0.05).unwrap();
        solve_grid(&mut g, 1e-10, 20_000).unwrap();
        for k in 0..g.values.len() {
            match g.mask[k] {
                CellRole::Interior => assert!(g.values[k] > 0.0 && g.values[k] < 1.0),
                CellRole::Dirichlet1 => assert_eq!(g.values[k], 1.0),
                _ => {}
            }
        }
    }

    #[test]
    fn square_ring_carleman_inequality() {
        let d = RingDomain::polygonal(
            Polygon::rectangle(-2.0, -2.0, 2.0, 2.0),
            Polygon::rectangle(-0.5, -0.5, 0.5, 0.5),
        )
        .unwrap();
        let est = solve_capacity(&d, 3).unwrap();
        let carleman = crate::moduli::carleman_modulus(&d).value;
        assert!(
            est.modulus <= carleman + est.modulus_abs_error,
            "{} vs {carleman}",
            est.modulus
        );
        // bracket by inscribed/circumscribed circular annuli
        assert!(est.modulus > (2.0f64 / (0.5 * 2f64.sqrt())).ln() - 0.05);
        assert!(est.modulus < (2.0f64 * 2f64.sqrt() / 0.5).ln() + 0.05);
    }

    #[test]
    fn similarity_invariance() {
        let d = RingDomain::polygonal(
            Polygon::rectangle(-2.0, -2.0, 2.0, 2.0),
            Polygon::rectangle(-0.5, -0.5, 0.5, 0.5),
        )
        .unwrap();
        let phi = crate::domain::AffineMap::similarity(
            Complex64::from_polar(3.0, 0.6),
            Complex64::new(1.0, -2.0),
        )
        .unwrap();
        let d2 = d.apply_affine(&phi).unwrap();
        let a = solve_capacity(&d, 3).unwrap();
        let b = solve_capacity(&d2, 3).unwrap();
        assert!(
            (a.modulus - b.modulus).abs() <= 2.0 * (a.modulus_abs_error + b.modulus_abs_error),
            "{} vs {} (errors {} {})",
            a.modulus,
            b.modulus,
            a.modulus_abs_error,
            b.modulus_abs_error
        );
    }

    #[test]
    fn modulus_best_dispatch() {
        let a = RingDomain::annulus(1.0, 2.0).unwrap();
        let m = modulus_best(&a).unwrap();
        assert_eq!(m.method, crate::domain::ModulusMethod::ClosedForm);
        assert!((m.value - 2f64.ln()).abs() < 1e-14);

        let p = RingDomain::punctured(
            crate::domain::PuncturedOuter::Polygon(Polygon::rectangle(-1.0, -1.0, 1.0, 1.0)),
            Complex64::new(0.0, 0.0),
        )
        .unwrap();
        assert!(modulus_best(&p).unwrap().value.is_infinite());

        let sq = RingDomain::polygonal(
            Polygon::rectangle(-2.0, -2.0, 2.0, 2.0),
            Polygon::rectangle(-0.5, -0.5, 0.5, 0.5),
        )
        .unwrap();
        let m = modulus_best(&sq).unwrap();
        assert_eq!(m.method, crate::domain::ModulusMethod::GridSolver);
        assert!(m.abs_error.is_some());
    }

    #[test]
    fn potential_field_round_trip() {
        let d = RingDomain::annulus(1.0, 2.0).unwrap();
        let mut g = rasterize(&d, 0.1).unwrap();
        solve_grid(&mut g, 1e-10, 20_000).unwrap();
        let bytes = write_potential_field(&g);
        let f = read_potential_field(&bytes).unwrap();
        assert_eq!(f.nx, g.nx);
        assert_eq!(f.ny, g.ny);
        assert_eq!(f.values, g.values);
        assert!(read_potential_field(&bytes[..20]).is_err());
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(read_potential_field(&bad).is_err());
    }
}
