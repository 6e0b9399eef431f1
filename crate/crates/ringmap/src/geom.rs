//! Planar geometry primitives shared by the domain model and the solver.

use num_complex::Complex64;

pub fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Distance from `p` to the closed segment `[a, b]`.
pub fn dist_point_segment(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).re * ab.re + (p - a).im * ab.im) / len2;
    let t = t.clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Distance between the closed segments `[a,b]` and `[c,d]` (0 if they cross).
pub fn dist_segment_segment(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> f64 {
    if segments_intersect(a, b, c, d) {
        return 0.0;
    }
    dist_point_segment(a, c, d)
        .min(dist_point_segment(b, c, d))
        .min(dist_point_segment(c, a, b))
        .min(dist_point_segment(d, a, b))
}

pub fn segments_intersect(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on = |p: Complex64, q: Complex64, r: Complex64| {
        cross(p, q, r) == 0.0
            && r.re >= p.re.min(q.re)
            && r.re <= p.re.max(q.re)
            && r.im >= p.im.min(q.im)
            && r.im <= p.im.max(q.im)
    };
    on(c, d, a) || on(c, d, b) || on(a, b, c) || on(a, b, d)
}

/// Convex hull by the monotone chain, counterclockwise, no repeated last point.
pub fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = points.to_vec();
    pts.sort_by(|p, q| {
        p.re.partial_cmp(&q.re)
            .unwrap()
            .then(p.im.partial_cmp(&q.im).unwrap())
    });
    pts.dedup_by(|p, q| p.re == q.re && p.im == q.im);
    let n = pts.len();
    if n <= 2 {
        return pts;
    }
    let mut hull: Vec<Complex64> = Vec::with_capacity(2 * n);
    for &p in pts.iter() {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev() {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Width of a convex polygon (counterclockwise hull): the smallest distance
/// between two parallel supporting lines. Rotating calipers over edges.
pub fn calipers_width(hull: &[Complex64]) -> f64 {
    let n = hull.len();
    if n < 2 {
        return 0.0;
    }
    if n == 2 {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for i in 0..n {
        let a = hull[i];
        let b = hull[(i + 1) % n];
        let e = b - a;
        let len = e.norm();
        if len == 0.0 {
            continue;
        }
        // max distance of any vertex from the supporting line through edge i
        let mut far: f64 = 0.0;
        for &p in hull {
            let d = cross(a, b, p).abs() / len;
            far = far.max(d);
        }
        best = best.min(far);
    }
    best
}

pub fn diameter(points: &[Complex64]) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            d = d.max((points[i] - points[j]).norm());
        }
    }
    d
}

/// Uniform samples along `[a, b]` with step at most `max_step`, both endpoints.
pub fn sample_segment(a: Complex64, b: Complex64, max_step: f64, out: &mut Vec<Complex64>) {
    let len = (b - a).norm();
    let n = (len / max_step).ceil().max(1.0) as usize;
    for k in 0..=n {
        out.push(a + (b - a) * (k as f64 / n as f64));
    }
}

/// Uniform samples on the circle of radius `r` about `center`.
pub fn sample_circle(center: Complex64, r: f64, max_step: f64, out: &mut Vec<Complex64>) {
    let n = ((2.0 * std::f64::consts::PI * r / max_step).ceil() as usize).max(16);
    for k in 0..n {
        let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        out.push(center + Complex64::new(r * t.cos(), r * t.sin()));
    }
}
