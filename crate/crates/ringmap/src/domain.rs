//! Ring domains, affine maps of the plane, and the elementary geometric
//! quantities (areas, width, separation) consumed by the modulus bounds.
//!
//! A ring domain is a doubly connected domain: its complement in the Riemann
//! sphere has exactly two components. Canonical kinds keep circular and slit
//! boundaries symbolic; only the grid solver ever rasterizes them. The point
//! at infinity appears only as the IEEE infinity marker on arc endpoints and
//! never as a large finite float.

use crate::geom;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Serialize a complex number as a `[re, im]` pair.
pub(crate) mod c64 {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
        [v.re, v.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

/// An extended real endpoint: finite numbers serialize as JSON numbers,
/// the infinities as the strings `"inf"` / `"-inf"`.
fn ser_ext<S: serde::Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_infinite() {
        s.serialize_str(if *v > 0.0 { "inf" } else { "-inf" })
    } else {
        s.serialize_f64(*v)
    }
}

fn de_ext<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    use serde::de::Error as _;
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Str(String),
    }
    match Raw::deserialize(d)? {
        Raw::Num(x) => Ok(x),
        Raw::Str(s) => match s.as_str() {
            "inf" | "+inf" => Ok(f64::INFINITY),
            "-inf" => Ok(f64::NEG_INFINITY),
            other => Err(D::Error::custom(format!("bad extended real: {other:?}"))),
        },
    }
}

/// How a modulus value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModulusMethod {
    ClosedForm,
    GridSolver,
    Optimized,
    BoundOnly,
}

/// A modulus value in `[0, +inf]` with its provenance and error estimate.
///
/// Solver and optimizer values always carry an absolute error estimate;
/// closed forms and pure bounds may omit it.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ExtendedModulus {
    pub value: f64,
    pub method: ModulusMethod,
    pub abs_error: Option<f64>,
}

impl ExtendedModulus {
    pub fn closed_form(value: f64) -> Self {
        Self { value, method: ModulusMethod::ClosedForm, abs_error: Some(4.0 * f64::EPSILON * (1.0 + value.abs())) }
    }

    pub fn solved(value: f64, abs_error: f64) -> Self {
        Self { value, method: ModulusMethod::GridSolver, abs_error: Some(abs_error) }
    }

    pub fn optimized(value: f64, abs_error: f64) -> Self {
        Self { value, method: ModulusMethod::Optimized, abs_error: Some(abs_error) }
    }

    pub fn bound_only(value: f64) -> Self {
        Self { value, method: ModulusMethod::BoundOnly, abs_error: None }
    }

    pub fn infinite() -> Self {
        Self { value: f64::INFINITY, method: ModulusMethod::ClosedForm, abs_error: Some(0.0) }
    }

    pub fn err(&self) -> f64 {
        self.abs_error.unwrap_or(0.0)
    }
}

/// Affine automorphism of the plane `z -> a z + b conj(z) + c`
/// with determinant `|a|^2 - |b|^2 != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    #[serde(with = "c64")]
    pub a: Complex64,
    #[serde(with = "c64")]
    pub b: Complex64,
    #[serde(with = "c64")]
    pub c: Complex64,
}

impl AffineMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        let m = Self { a, b, c };
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::InvalidAffine("coefficients must be finite".into()));
        }
        if m.det() == 0.0 {
            return Err(Error::InvalidAffine("determinant |a|^2 - |b|^2 vanishes".into()));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Self { a: Complex64::new(1.0, 0.0), b: Complex64::new(0.0, 0.0), c: Complex64::new(0.0, 0.0) }
    }

    /// The shear `z -> z + k conj(z)`, valid for |k| < 1.
    pub fn shear(k: Complex64) -> Result<Self> {
        if k.norm() >= 1.0 {
            return Err(Error::InvalidAffine(format!("shear |k| = {} >= 1", k.norm())));
        }
        Self::new(Complex64::new(1.0, 0.0), k, Complex64::new(0.0, 0.0))
    }

    pub fn similarity(a: Complex64, c: Complex64) -> Result<Self> {
        Self::new(a, Complex64::new(0.0, 0.0), c)
    }

    pub fn translation(c: Complex64) -> Self {
        Self { a: Complex64::new(1.0, 0.0), b: Complex64::new(0.0, 0.0), c }
    }

    /// Real 2x2 determinant of the linear part.
    pub fn det(&self) -> f64 {
        self.a.norm_sqr() - self.b.norm_sqr()
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.a * z + self.b * z.conj() + self.c
    }

    pub fn inverse(&self) -> Self {
        let d = self.det();
        // z = (conj(a) w' - b conj(w'))/d with w' = w - c
        let a = self.a.conj() / d;
        let b = -self.b / d;
        let c = -(a * self.c + b * self.c.conj());
        Self { a, b, c }
    }

    /// `self` after `inner`: (self ∘ inner)(z).
    pub fn compose(&self, inner: &Self) -> Self {
        Self {
            a: self.a * inner.a + self.b * inner.b.conj(),
            b: self.a * inner.b + self.b * inner.a.conj(),
            c: self.a * inner.c + self.b * inner.c.conj() + self.c,
        }
    }

    pub fn is_complex_affine(&self) -> bool {
        self.b.norm() == 0.0
    }

    pub fn is_rigid(&self) -> bool {
        self.b.norm() == 0.0 && (self.a.norm() - 1.0).abs() < 1e-15
    }

    pub fn is_identity(&self) -> bool {
        self.a == Complex64::new(1.0, 0.0) && self.b.norm() == 0.0 && self.c.norm() == 0.0
    }

    /// Largest and smallest singular values of the linear part.
    pub fn singular_values(&self) -> (f64, f64) {
        (self.a.norm() + self.b.norm(), (self.a.norm() - self.b.norm()).abs())
    }

    /// Shear parameter of the orientation-normalized factorization
    /// `phi = (C-affine) ∘ (z + k conj z)`, |k| < 1. The conformal factor does
    /// not move the modulus, so the modulus of any affine image is the modulus
    /// of this shear image.
    pub fn shear_parameter(&self) -> Complex64 {
        if self.a.norm() > self.b.norm() {
            self.b / self.a
        } else {
            // orientation-reversing: conjugate first, modulus is unaffected
            self.a / self.b
        }
    }
}

/// Closed arc of the extended real line with endpoints `lo`, `hi`.
///
/// `lo < hi` is the ordinary closed interval (either endpoint may be
/// infinite); `lo > hi` is the arc running from `lo` up through the point at
/// infinity and back to `hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    #[serde(serialize_with = "ser_ext", deserialize_with = "de_ext")]
    pub lo: f64,
    #[serde(serialize_with = "ser_ext", deserialize_with = "de_ext")]
    pub hi: f64,
}

impl Arc {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn wraps_infinity(&self) -> bool {
        self.lo > self.hi || self.lo.is_infinite() || self.hi.is_infinite()
    }

    pub fn is_finite_segment(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi
    }

    pub fn length(&self) -> f64 {
        if self.is_finite_segment() {
            self.hi - self.lo
        } else {
            f64::INFINITY
        }
    }

    /// Angle of an extended real on the circle, `t -> 2 atan(t)`, infinity at pi.
    pub(crate) fn angle(t: f64) -> f64 {
        if t.is_infinite() {
            std::f64::consts::PI
        } else {
            2.0 * t.atan()
        }
    }

    /// The arc as an angular interval `[start, start + span]`, span in (0, 2pi).
    pub(crate) fn angular_interval(&self) -> (f64, f64) {
        let two_pi = 2.0 * std::f64::consts::PI;
        let a = Self::angle(self.lo);
        let b = Self::angle(self.hi);
        let span = if self.lo <= self.hi { (b - a).rem_euclid(two_pi) } else { (b - a).rem_euclid(two_pi) };
        // lo == +inf or hi == -inf give zero spans for pure-endpoint arcs;
        // callers validate that endpoints are distinct on the circle first.
        (a, span)
    }

    pub(crate) fn contains_angle(&self, theta: f64) -> bool {
        let two_pi = 2.0 * std::f64::consts::PI;
        let (a, span) = self.angular_interval();
        let d = (theta - a).rem_euclid(two_pi);
        d <= span + 1e-15
    }

    /// Whether `x + iy` lies on the arc (exactly; used for symbolic membership).
    pub fn contains_point(&self, z: Complex64) -> bool {
        if z.im != 0.0 {
            return false;
        }
        let x = z.re;
        if self.lo <= self.hi {
            x >= self.lo && x <= self.hi
        } else {
            x >= self.lo || x <= self.hi
        }
    }

    /// Distance from a point to the arc (planar; the part at infinity is ignored).
    pub fn dist(&self, z: Complex64) -> f64 {
        if self.lo <= self.hi {
            let x = z.re.clamp(self.lo.max(-1e300), self.hi.min(1e300));
            Complex64::new(z.re - x, z.im).norm()
        } else {
            let right = Complex64::new(z.re - z.re.max(self.lo), z.im).norm();
            let left = Complex64::new(z.re - z.re.min(self.hi), z.im).norm();
            right.min(left)
        }
    }

    fn validate(&self) -> Result<()> {
        if self.lo.is_nan() || self.hi.is_nan() {
            return Err(Error::InvalidDomain("arc endpoint is NaN".into()));
        }
        if self.lo == self.hi {
            return Err(Error::InvalidDomain("arc degenerates to a point".into()));
        }
        if self.lo.is_infinite() && self.hi.is_infinite() {
            return Err(Error::InvalidDomain("both arc endpoints at infinity".into()));
        }
        Ok(())
    }
}

/// Simple closed polygon. The edge from the last vertex back to the first is
/// implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    pub vertices: Vec<Complex64>,
}

impl Serialize for Polygon {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<[f64; 2]> = self.vertices.iter().map(|z| [z.re, z.im]).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polygon {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<[f64; 2]> = Vec::deserialize(d)?;
        Ok(Polygon { vertices: v.into_iter().map(|[x, y]| Complex64::new(x, y)).collect() })
    }
}

impl Polygon {
    pub fn new(vertices: Vec<Complex64>) -> Self {
        Self { vertices }
    }

    pub fn rectangle(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Self::new(vec![
            Complex64::new(x0, y0),
            Complex64::new(x1, y0),
            Complex64::new(x1, y1),
            Complex64::new(x0, y1),
        ])
    }

    pub fn regular(center: Complex64, radius: f64, n: usize) -> Self {
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            v.push(center + Complex64::new(radius * t.cos(), radius * t.sin()));
        }
        Self::new(v)
    }

    pub fn signed_area(&self) -> f64 {
        let n = self.vertices.len();
        let mut s = 0.0;
        for i in 0..n {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            s += p.re * q.im - q.re * p.im;
        }
        s / 2.0
    }

    /// Shoelace area, orientation-independent.
    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    /// Even-odd point-in-polygon test. Points on the boundary count as inside.
    pub fn contains(&self, p: Complex64) -> bool {
        if self.dist_boundary(p) == 0.0 {
            return true;
        }
        let n = self.vertices.len();
        let mut inside = false;
        let mut j = n - 1;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[j];
            if (a.im > p.im) != (b.im > p.im) {
                let x = a.re + (p.im - a.im) / (b.im - a.im) * (b.re - a.re);
                if p.re < x {
                    inside = !inside;
                }
            }
            j = i;
        }
        inside
    }

    pub fn dist_boundary(&self, p: Complex64) -> f64 {
        let n = self.vertices.len();
        let mut d = f64::INFINITY;
        for i in 0..n {
            d = d.min(geom::dist_point_segment(p, self.vertices[i], self.vertices[(i + 1) % n]));
        }
        d
    }

    pub fn bbox(&self) -> (Complex64, Complex64) {
        let mut lo = Complex64::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            lo.re = lo.re.min(v.re);
            lo.im = lo.im.min(v.im);
            hi.re = hi.re.max(v.re);
            hi.im = hi.im.max(v.im);
        }
        (lo, hi)
    }

    pub fn boundary_samples(&self, max_step: f64, out: &mut Vec<Complex64>) {
        let n = self.vertices.len();
        for i in 0..n {
            geom::sample_segment(self.vertices[i], self.vertices[(i + 1) % n], max_step, out);
        }
    }

    pub fn map(&self, phi: &AffineMap) -> Polygon {
        Polygon::new(self.vertices.iter().map(|&z| phi.apply(z)).collect())
    }

    pub fn is_simple(&self) -> bool {
        let n = self.vertices.len();
        if n < 3 {
            return false;
        }
        for i in 0..n {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            for j in (i + 1)..n {
                // skip edges sharing a vertex
                if j == i || (j + 1) % n == i || j == (i + 1) % n {
                    continue;
                }
                let (c, d) = (self.vertices[j], self.vertices[(j + 1) % n]);
                if geom::segments_intersect(a, b, c, d) {
                    return false;
                }
            }
        }
        true
    }

    fn validate(&self) -> Result<()> {
        if self.vertices.len() < 3 {
            return Err(Error::InvalidDomain("polygon needs at least 3 vertices".into()));
        }
        if self.vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidDomain("polygon vertex not finite".into()));
        }
        if self.area() <= 0.0 {
            return Err(Error::InvalidDomain("polygon has zero area".into()));
        }
        if !self.is_simple() {
            return Err(Error::InvalidDomain("polygon is self-intersecting".into()));
        }
        Ok(())
    }
}

/// Outer region of a punctured domain.
#[derive(Debug, Clone, PartialEq)]
pub enum PuncturedOuter {
    Polygon(Polygon),
    UpperHalfPlane,
}

impl Serialize for PuncturedOuter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PuncturedOuter::Polygon(p) => p.serialize(s),
            PuncturedOuter::UpperHalfPlane => s.serialize_str("halfplane"),
        }
    }
}

impl<'de> Deserialize<'de> for PuncturedOuter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Tag(String),
            Poly(Polygon),
        }
        match Raw::deserialize(d)? {
            Raw::Tag(t) if t == "halfplane" => Ok(PuncturedOuter::UpperHalfPlane),
            Raw::Tag(t) => Err(D::Error::custom(format!("unknown outer tag {t:?}"))),
            Raw::Poly(p) => Ok(PuncturedOuter::Polygon(p)),
        }
    }
}

/// A doubly connected plane domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RingDomain {
    /// `{ r < |z| < R }`.
    Annulus {
        r: f64,
        #[serde(rename = "R")]
        r_out: f64,
    },
    /// Complement of `[-1,0] ∪ [s,+inf)`.
    Teichmuller { s: f64 },
    /// `{ |z| > 1 }` minus `[s,+inf)`, s > 1.
    Grotzsch { s: f64 },
    /// `{ |Im z| < 1 }` minus `[-s, s]`.
    SlitStrip { s: f64 },
    /// Complement of two disjoint closed arcs of the extended real line.
    RealSlitRing { arc1: Arc, arc2: Arc },
    /// Region between two simple polygons, inner strictly inside outer.
    Polygonal { outer: Polygon, inner: Polygon },
    /// Simply connected region minus one interior point; degenerate ring.
    Punctured {
        outer: PuncturedOuter,
        #[serde(with = "c64")]
        puncture: Complex64,
    },
    /// Affine image of a canonical kind whose curved boundary cannot be
    /// expressed by the other kinds; kept symbolic, rasterized by the solver.
    AffineImage { base: Box<RingDomain>, map: AffineMap },
}

/// Classification of a point relative to a ring domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// In the bounded complement component.
    Inner,
    /// In the domain itself.
    Domain,
    /// In the other (normally unbounded) complement component.
    Outer,
}

impl RingDomain {
    pub fn annulus(r: f64, r_out: f64) -> Result<Self> {
        let d = RingDomain::Annulus { r, r_out };
        d.validate()?;
        Ok(d)
    }

    pub fn teichmuller(s: f64) -> Result<Self> {
        let d = RingDomain::Teichmuller { s };
        d.validate()?;
        Ok(d)
    }

    pub fn grotzsch(s: f64) -> Result<Self> {
        let d = RingDomain::Grotzsch { s };
        d.validate()?;
        Ok(d)
    }

    pub fn slit_strip(s: f64) -> Result<Self> {
        let d = RingDomain::SlitStrip { s };
        d.validate()?;
        Ok(d)
    }

    pub fn real_slit_ring(arc1: Arc, arc2: Arc) -> Result<Self> {
        let d = RingDomain::RealSlitRing { arc1, arc2 };
        d.validate()?;
        Ok(d)
    }

    pub fn polygonal(outer: Polygon, inner: Polygon) -> Result<Self> {
        let d = RingDomain::Polygonal { outer, inner };
        d.validate()?;
        Ok(d)
    }

    pub fn punctured(outer: PuncturedOuter, puncture: Complex64) -> Result<Self> {
        let d = RingDomain::Punctured { outer, puncture };
        d.validate()?;
        Ok(d)
    }

    /// Check the kind-specific invariants.
    pub fn validate(&self) -> Result<()> {
        match self {
            RingDomain::Annulus { r, r_out } => {
                if !(0.0 < *r && r < r_out && r_out.is_finite()) {
                    return Err(Error::InvalidDomain(format!("annulus needs 0 < r < R < inf, got r={r}, R={r_out}")));
                }
            }
            RingDomain::Teichmuller { s } => {
                if !(*s > 0.0 && s.is_finite()) {
                    return Err(Error::InvalidDomain(format!("Teichmuller ring needs s > 0, got {s}")));
                }
            }
            RingDomain::Grotzsch { s } => {
                if !(*s > 1.0 && s.is_finite()) {
                    return Err(Error::InvalidDomain(format!("Grotzsch ring needs s > 1, got {s}")));
                }
            }
            RingDomain::SlitStrip { s } => {
                if !(*s > 0.0 && s.is_finite()) {
                    return Err(Error::InvalidDomain(format!("slit strip needs s > 0, got {s}")));
                }
            }
            RingDomain::RealSlitRing { arc1, arc2 } => {
                arc1.validate()?;
                arc2.validate()?;
                // disjointness on the circle, endpoints included
                let probe = |arc: &Arc, other: &Arc| -> bool {
                    let (a, span) = arc.angular_interval();
                    let steps = 64;
                    (0..=steps).any(|k| other.contains_angle(a + span * k as f64 / steps as f64))
                };
                if probe(arc1, arc2) || probe(arc2, arc1) {
                    return Err(Error::InvalidDomain("slit arcs overlap or touch".into()));
                }
            }
            RingDomain::Polygonal { outer, inner } => {
                outer.validate()?;
                inner.validate()?;
                for v in &inner.vertices {
                    if !outer.contains(*v) || outer.dist_boundary(*v) == 0.0 {
                        return Err(Error::InvalidDomain("inner polygon not strictly inside outer".into()));
                    }
                }
                let n = outer.vertices.len();
                let m = inner.vertices.len();
                for i in 0..n {
                    for j in 0..m {
                        if geom::segments_intersect(
                            outer.vertices[i],
                            outer.vertices[(i + 1) % n],
                            inner.vertices[j],
                            inner.vertices[(j + 1) % m],
                        ) {
                            return Err(Error::InvalidDomain("inner and outer polygons intersect".into()));
                        }
                    }
                }
            }
            RingDomain::Punctured { outer, puncture } => {
                if !puncture.is_finite() {
                    return Err(Error::InvalidDomain("puncture must be finite".into()));
                }
                match outer {
                    PuncturedOuter::Polygon(p) => {
                        p.validate()?;
                        if !p.contains(*puncture) || p.dist_boundary(*puncture) == 0.0 {
                            return Err(Error::InvalidDomain("puncture not strictly inside outer region".into()));
                        }
                    }
                    PuncturedOuter::UpperHalfPlane => {
                        if puncture.im <= 0.0 {
                            return Err(Error::InvalidDomain("puncture not strictly inside the half-plane".into()));
                        }
                    }
                }
            }
            RingDomain::AffineImage { base, map } => {
                base.validate()?;
                if map.det() == 0.0 {
                    return Err(Error::InvalidAffine("determinant vanishes".into()));
                }
                if matches!(**base, RingDomain::AffineImage { .. }) {
                    return Err(Error::InvalidDomain("affine image of an affine image; compose the maps".into()));
                }
            }
        }
        Ok(())
    }

    /// Which side of the domain a point lies on. Boundary points belong to
    /// their complement component (both components are closed).
    pub fn classify(&self, z: Complex64) -> Region {
        match self {
            RingDomain::Annulus { r, r_out } => {
                let n = z.norm();
                if n <= *r {
                    Region::Inner
                } else if n < *r_out {
                    Region::Domain
                } else {
                    Region::Outer
                }
            }
            RingDomain::Teichmuller { s } => {
                if z.im == 0.0 && z.re >= -1.0 && z.re <= 0.0 {
                    Region::Inner
                } else if z.im == 0.0 && z.re >= *s {
                    Region::Outer
                } else {
                    Region::Domain
                }
            }
            RingDomain::Grotzsch { s } => {
                if z.norm() <= 1.0 {
                    Region::Inner
                } else if z.im == 0.0 && z.re >= *s {
                    Region::Outer
                } else {
                    Region::Domain
                }
            }
            RingDomain::SlitStrip { s } => {
                if z.im.abs() >= 1.0 {
                    Region::Outer
                } else if z.im == 0.0 && z.re.abs() <= *s {
                    Region::Inner
                } else {
                    Region::Domain
                }
            }
            RingDomain::RealSlitRing { arc1, arc2 } => {
                if arc1.contains_point(z) {
                    if self.bounded_arc_is_first() {
                        Region::Inner
                    } else {
                        Region::Outer
                    }
                } else if arc2.contains_point(z) {
                    if self.bounded_arc_is_first() {
                        Region::Outer
                    } else {
                        Region::Inner
                    }
                } else {
                    Region::Domain
                }
            }
            RingDomain::Polygonal { outer, inner } => {
                if inner.contains(z) {
                    Region::Inner
                } else if outer.contains(z) && outer.dist_boundary(z) > 0.0 {
                    Region::Domain
                } else {
                    Region::Outer
                }
            }
            RingDomain::Punctured { outer, puncture } => {
                if z == *puncture {
                    return Region::Inner;
                }
                let inside = match outer {
                    PuncturedOuter::Polygon(p) => p.contains(z) && p.dist_boundary(z) > 0.0,
                    PuncturedOuter::UpperHalfPlane => z.im > 0.0,
                };
                if inside {
                    Region::Domain
                } else {
                    Region::Outer
                }
            }
            RingDomain::AffineImage { base, map } => base.classify(map.inverse().apply(z)),
        }
    }

    /// For a real slit ring: whether arc1 plays the bounded component.
    /// When both arcs are finite segments the first is the designated inner one.
    pub(crate) fn bounded_arc_is_first(&self) -> bool {
        match self {
            RingDomain::RealSlitRing { arc1, arc2 } => {
                if arc1.is_finite_segment() && !arc2.is_finite_segment() {
                    true
                } else if arc2.is_finite_segment() && !arc1.is_finite_segment() {
                    false
                } else {
                    true
                }
            }
            _ => true,
        }
    }

    /// Whether the domain itself has finite area.
    pub fn is_bounded(&self) -> bool {
        match self {
            RingDomain::Annulus { .. } | RingDomain::Polygonal { .. } => true,
            RingDomain::Punctured { outer, .. } => matches!(outer, PuncturedOuter::Polygon(_)),
            RingDomain::AffineImage { base, .. } => base.is_bounded(),
            _ => false,
        }
    }

    /// Whether the non-inner complement component is unbounded in the plane.
    /// False only for the sphere-ring case of two finite slits.
    pub fn outer_complement_unbounded(&self) -> bool {
        match self {
            RingDomain::RealSlitRing { arc1, arc2 } => {
                arc1.wraps_infinity() || arc2.wraps_infinity()
            }
            RingDomain::AffineImage { base, .. } => base.outer_complement_unbounded(),
            _ => true,
        }
    }

    /// Areas `(|Omega^-|, |Omega|)` of the bounded complement component and of
    /// the domain; infinite entries for unbounded sets.
    pub fn complement_areas(&self) -> (f64, f64) {
        match self {
            RingDomain::Annulus { r, r_out } => {
                let pi = std::f64::consts::PI;
                (pi * r * r, pi * (r_out * r_out - r * r))
            }
            RingDomain::Teichmuller { .. } => (0.0, f64::INFINITY),
            RingDomain::Grotzsch { .. } => (std::f64::consts::PI, f64::INFINITY),
            RingDomain::SlitStrip { .. } => (0.0, f64::INFINITY),
            RingDomain::RealSlitRing { .. } => (0.0, f64::INFINITY),
            RingDomain::Polygonal { outer, inner } => (inner.area(), outer.area() - inner.area()),
            RingDomain::Punctured { outer, .. } => match outer {
                PuncturedOuter::Polygon(p) => (0.0, p.area()),
                PuncturedOuter::UpperHalfPlane => (0.0, f64::INFINITY),
            },
            RingDomain::AffineImage { base, map } => {
                let (bi, bd) = base.complement_areas();
                let s = map.det().abs();
                (bi * s, bd * s)
            }
        }
    }

    /// Apply an affine automorphism, keeping the result canonical where the
    /// kind permits.
    ///
    /// Slit kinds with collinear complement come back as a `RealSlitRing` in
    /// the rigid normalization that puts the slit line on the real axis (a
    /// rotation and translation; the modulus, areas and width/separation data
    /// are unchanged by it). Similarity images of annuli drop the translation
    /// for the same reason. Curved kinds under a general affine map stay
    /// symbolic as `AffineImage`.
    pub fn apply_affine(&self, phi: &AffineMap) -> Result<RingDomain> {
        if phi.det() == 0.0 {
            return Err(Error::InvalidAffine("determinant vanishes".into()));
        }
        if phi.is_identity() {
            return Ok(self.clone());
        }
        let line_scale = (phi.a + phi.b).norm(); // |phi(t)' | on the real axis
        Ok(match self {
            RingDomain::Annulus { r, r_out } => {
                if phi.is_complex_affine() {
                    RingDomain::Annulus { r: r * phi.a.norm(), r_out: r_out * phi.a.norm() }
                } else {
                    RingDomain::AffineImage { base: Box::new(self.clone()), map: *phi }
                }
            }
            RingDomain::Teichmuller { s } => RingDomain::RealSlitRing {
                arc1: Arc::new(-line_scale, 0.0),
                arc2: Arc::new(line_scale * s, f64::INFINITY),
            },
            RingDomain::RealSlitRing { arc1, arc2 } => {
                let m = |t: f64| if t.is_infinite() { t } else { line_scale * t };
                RingDomain::RealSlitRing {
                    arc1: Arc::new(m(arc1.lo), m(arc1.hi)),
                    arc2: Arc::new(m(arc2.lo), m(arc2.hi)),
                }
            }
            RingDomain::Grotzsch { .. } | RingDomain::SlitStrip { .. } => {
                RingDomain::AffineImage { base: Box::new(self.clone()), map: *phi }
            }
            RingDomain::Polygonal { outer, inner } => {
                RingDomain::Polygonal { outer: outer.map(phi), inner: inner.map(phi) }
            }
            RingDomain::Punctured { outer, puncture } => match outer {
                PuncturedOuter::Polygon(p) => RingDomain::Punctured {
                    outer: PuncturedOuter::Polygon(p.map(phi)),
                    puncture: phi.apply(*puncture),
                },
                PuncturedOuter::UpperHalfPlane => {
                    let preserves = (phi.a + phi.b).im == 0.0
                        && phi.c.im == 0.0
                        && (phi.a - phi.b).re > 0.0;
                    if preserves {
                        RingDomain::Punctured {
                            outer: PuncturedOuter::UpperHalfPlane,
                            puncture: phi.apply(*puncture),
                        }
                    } else {
                        return Err(Error::Unsupported(
                            "affine image of a punctured half-plane is not representable".into(),
                        ));
                    }
                }
            },
            RingDomain::AffineImage { base, map } => {
                let composed = phi.compose(map);
                base.apply_affine(&composed)?
            }
        })
    }
}

/// Width of the bounded complement component and its separation from the
/// other boundary component.
#[derive(Debug, Clone, Copy)]
pub struct WidthSep {
    pub width: f64,
    pub separation: f64,
    /// The bounded component is a line segment; `width` is then its length,
    /// which is the quantity the Teichmüller comparison consumes when the
    /// whole complement is collinear.
    pub slit_like: bool,
    /// Both complement components lie on one line.
    pub complement_collinear: bool,
}

impl RingDomain {
    /// Width `w(Omega^-)` (via supporting lines of the convex hull; the length
    /// for a segment) and the distance from `∂Omega^+` to `Omega^-`.
    pub fn width_and_separation(&self) -> Result<WidthSep> {
        match self {
            RingDomain::Annulus { r, r_out } => Ok(WidthSep {
                width: 2.0 * r,
                separation: r_out - r,
                slit_like: false,
                complement_collinear: false,
            }),
            RingDomain::Teichmuller { s } => Ok(WidthSep {
                width: 1.0,
                separation: *s,
                slit_like: true,
                complement_collinear: true,
            }),
            RingDomain::Grotzsch { s } => Ok(WidthSep {
                width: 2.0,
                separation: s - 1.0,
                slit_like: false,
                complement_collinear: false,
            }),
            RingDomain::SlitStrip { s } => Ok(WidthSep {
                width: 2.0 * s,
                separation: 1.0,
                slit_like: true,
                complement_collinear: false,
            }),
            RingDomain::RealSlitRing { arc1, arc2 } => {
                if !self.outer_complement_unbounded() {
                    return Err(Error::WidthInapplicable(
                        "no unbounded complement component (sphere ring)".into(),
                    ));
                }
                let (inner, outer) = if self.bounded_arc_is_first() { (arc1, arc2) } else { (arc2, arc1) };
                if !inner.is_finite_segment() {
                    return Err(Error::WidthInapplicable("bounded slit is not a finite segment".into()));
                }
                let sep = if outer.lo > outer.hi {
                    // outer wraps infinity: gaps on both sides
                    (outer.lo - inner.hi).min(inner.lo - outer.hi)
                } else if outer.lo.is_finite() && outer.lo > inner.hi {
                    outer.lo - inner.hi
                } else {
                    inner.lo - outer.hi
                };
                Ok(WidthSep {
                    width: inner.length(),
                    separation: sep,
                    slit_like: true,
                    complement_collinear: true,
                })
            }
            RingDomain::Polygonal { outer, inner } => {
                let hull = geom::convex_hull(&inner.vertices);
                let width = geom::calipers_width(&hull);
                let mut sep = f64::INFINITY;
                let n = outer.vertices.len();
                let m = inner.vertices.len();
                for i in 0..n {
                    for j in 0..m {
                        sep = sep.min(geom::dist_segment_segment(
                            outer.vertices[i],
                            outer.vertices[(i + 1) % n],
                            inner.vertices[j],
                            inner.vertices[(j + 1) % m],
                        ));
                    }
                }
                Ok(WidthSep { width, separation: sep, slit_like: false, complement_collinear: false })
            }
            RingDomain::Punctured { .. } => Err(Error::WidthInapplicable(
                "bounded component is a single point (width 0)".into(),
            )),
            RingDomain::AffineImage { base, map } => {
                match &**base {
                    // slit bases stay collinear; lengths scale by |a+b|
                    RingDomain::Teichmuller { .. } | RingDomain::RealSlitRing { .. } => {
                        let img = base.apply_affine(map)?;
                        img.width_and_separation()
                    }
                    _ => {
                        // sample the bounded component boundary, hull it
                        let (inner_pts, outer_pts) = self.sampled_boundaries(1e-3)?;
                        let hull = geom::convex_hull(&inner_pts);
                        let width = geom::calipers_width(&hull);
                        let mut sep = f64::INFINITY;
                        for p in &inner_pts {
                            for q in &outer_pts {
                                sep = sep.min((p - q).norm());
                            }
                        }
                        Ok(WidthSep { width, separation: sep, slit_like: false, complement_collinear: false })
                    }
                }
            }
        }
    }

    /// Dense boundary samples of the two complement components, mapped through
    /// any affine wrapper. `rel_step` is relative to the scene scale.
    pub fn sampled_boundaries(&self, rel_step: f64) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
        let scale = self.scene_diameter();
        let step = rel_step * scale;
        let clip = 8.0 * scale;
        self.boundary_samples(step, clip)
    }

    /// Boundary samples with absolute step; unbounded boundary pieces are
    /// clipped to distance `clip` from the scene center.
    pub fn boundary_samples(&self, step: f64, clip: f64) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
        let mut inner = Vec::new();
        let mut outer = Vec::new();
        let center = self.scene_center();
        match self {
            RingDomain::Annulus { r, r_out } => {
                geom::sample_circle(Complex64::new(0.0, 0.0), *r, step, &mut inner);
                geom::sample_circle(Complex64::new(0.0, 0.0), *r_out, step, &mut outer);
            }
            RingDomain::Teichmuller { s } => {
                geom::sample_segment(Complex64::new(-1.0, 0.0), Complex64::new(0.0, 0.0), step, &mut inner);
                let far = (center.re + clip).max(s + 1.0);
                geom::sample_segment(Complex64::new(*s, 0.0), Complex64::new(far, 0.0), step, &mut outer);
            }
            RingDomain::Grotzsch { s } => {
                geom::sample_circle(Complex64::new(0.0, 0.0), 1.0, step, &mut inner);
                let far = (center.re + clip).max(s + 1.0);
                geom::sample_segment(Complex64::new(*s, 0.0), Complex64::new(far, 0.0), step, &mut outer);
            }
            RingDomain::SlitStrip { s } => {
                geom::sample_segment(Complex64::new(-s, 0.0), Complex64::new(*s, 0.0), step, &mut inner);
                geom::sample_segment(Complex64::new(-clip, 1.0), Complex64::new(clip, 1.0), step, &mut outer);
                geom::sample_segment(Complex64::new(-clip, -1.0), Complex64::new(clip, -1.0), step, &mut outer);
            }
            RingDomain::RealSlitRing { arc1, arc2 } => {
                let sample_arc = |arc: &Arc, out: &mut Vec<Complex64>| {
                    if arc.lo <= arc.hi {
                        let lo = arc.lo.max(center.re - clip);
                        let hi = arc.hi.min(center.re + clip);
                        if lo <= hi {
                            geom::sample_segment(Complex64::new(lo, 0.0), Complex64::new(hi, 0.0), step, out);
                        }
                    } else {
                        geom::sample_segment(
                            Complex64::new(arc.lo, 0.0),
                            Complex64::new((center.re + clip).max(arc.lo), 0.0),
                            step,
                            out,
                        );
                        geom::sample_segment(
                            Complex64::new((center.re - clip).min(arc.hi), 0.0),
                            Complex64::new(arc.hi, 0.0),
                            step,
                            out,
                        );
                    }
                };
                if self.bounded_arc_is_first() {
                    sample_arc(arc1, &mut inner);
                    sample_arc(arc2, &mut outer);
                } else {
                    sample_arc(arc2, &mut inner);
                    sample_arc(arc1, &mut outer);
                }
            }
            RingDomain::Polygonal { outer: po, inner: pi } => {
                pi.boundary_samples(step, &mut inner);
                po.boundary_samples(step, &mut outer);
            }
            RingDomain::Punctured { outer: po, puncture } => {
                inner.push(*puncture);
                match po {
                    PuncturedOuter::Polygon(p) => p.boundary_samples(step, &mut outer),
                    PuncturedOuter::UpperHalfPlane => geom::sample_segment(
                        Complex64::new(puncture.re - clip, 0.0),
                        Complex64::new(puncture.re + clip, 0.0),
                        step,
                        &mut outer,
                    ),
                }
            }
            RingDomain::AffineImage { base, map } => {
                let (smax, smin) = map.singular_values();
                let base_step = step / smax.max(1e-300);
                let base_clip = clip / smin.max(1e-300);
                let (bi, bo) = base.boundary_samples(base_step, base_clip)?;
                inner = bi.into_iter().map(|z| map.apply(z)).collect();
                outer = bo.into_iter().map(|z| map.apply(z)).collect();
            }
        }
        Ok((inner, outer))
    }

    /// Center of the interesting part of the geometry (bounded component plus
    /// the near part of the outer boundary).
    pub fn scene_center(&self) -> Complex64 {
        match self {
            RingDomain::Annulus { .. } | RingDomain::Grotzsch { .. } | RingDomain::SlitStrip { .. } => {
                Complex64::new(0.0, 0.0)
            }
            RingDomain::Teichmuller { s } => Complex64::new((s - 1.0) / 2.0, 0.0),
            RingDomain::RealSlitRing { arc1, arc2 } => {
                let mut pts: Vec<f64> = Vec::new();
                for a in [arc1, arc2] {
                    if a.lo.is_finite() {
                        pts.push(a.lo);
                    }
                    if a.hi.is_finite() {
                        pts.push(a.hi);
                    }
                }
                let (lo, hi) = pts
                    .iter()
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| (l.min(x), h.max(x)));
                Complex64::new((lo + hi) / 2.0, 0.0)
            }
            RingDomain::Polygonal { outer, .. } => {
                let (lo, hi) = outer.bbox();
                (lo + hi) / 2.0
            }
            RingDomain::Punctured { outer, puncture } => match outer {
                PuncturedOuter::Polygon(p) => {
                    let (lo, hi) = p.bbox();
                    (lo + hi) / 2.0
                }
                PuncturedOuter::UpperHalfPlane => *puncture,
            },
            RingDomain::AffineImage { base, map } => map.apply(base.scene_center()),
        }
    }

    /// Diameter of the bounded complement component together with the nearest
    /// part of the outer boundary; sets the scale for solver truncation boxes.
    pub fn scene_diameter(&self) -> f64 {
        match self {
            RingDomain::Annulus { r_out, .. } => 2.0 * r_out,
            RingDomain::Teichmuller { s } => s + 1.0,
            RingDomain::Grotzsch { s } => s + 1.0,
            RingDomain::SlitStrip { s } => 2.0 * s.hypot(1.0),
            RingDomain::RealSlitRing { arc1, arc2 } => {
                let mut pts: Vec<f64> = Vec::new();
                for a in [arc1, arc2] {
                    if a.lo.is_finite() {
                        pts.push(a.lo);
                    }
                    if a.hi.is_finite() {
                        pts.push(a.hi);
                    }
                }
                let (lo, hi) = pts
                    .iter()
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| (l.min(x), h.max(x)));
                (hi - lo).max(1e-12)
            }
            RingDomain::Polygonal { outer, .. } => {
                let (lo, hi) = outer.bbox();
                (hi - lo).norm()
            }
            RingDomain::Punctured { outer, puncture } => match outer {
                PuncturedOuter::Polygon(p) => {
                    let (lo, hi) = p.bbox();
                    (hi - lo).norm()
                }
                PuncturedOuter::UpperHalfPlane => 2.0 * puncture.im.max(1.0),
            },
            RingDomain::AffineImage { base, map } => {
                let (smax, _) = map.singular_values();
                base.scene_diameter() * smax
            }
        }
    }

    /// Distance from a point of the domain to the domain boundary.
    pub fn dist_boundary(&self, z: Complex64) -> f64 {
        match self {
            RingDomain::Annulus { r, r_out } => (z.norm() - r).min(r_out - z.norm()).max(0.0),
            RingDomain::Teichmuller { s } => {
                let d1 = Arc::new(-1.0, 0.0).dist(z);
                let d2 = Arc::new(*s, f64::INFINITY).dist(z);
                d1.min(d2)
            }
            RingDomain::Grotzsch { s } => {
                let d1 = (z.norm() - 1.0).max(0.0);
                let d2 = Arc::new(*s, f64::INFINITY).dist(z);
                d1.min(d2)
            }
            RingDomain::SlitStrip { s } => {
                let d1 = Arc::new(-s, *s).dist(z);
                let d2 = 1.0 - z.im.abs();
                d1.min(d2.max(0.0))
            }
            RingDomain::RealSlitRing { arc1, arc2 } => arc1.dist(z).min(arc2.dist(z)),
            RingDomain::Polygonal { outer, inner } => outer.dist_boundary(z).min(inner.dist_boundary(z)),
            RingDomain::Punctured { outer, puncture } => {
                let d1 = (z - puncture).norm();
                let d2 = match outer {
                    PuncturedOuter::Polygon(p) => p.dist_boundary(z),
                    PuncturedOuter::UpperHalfPlane => z.im,
                };
                d1.min(d2)
            }
            RingDomain::AffineImage { base, map } => {
                let (_, smin) = map.singular_values();
                base.dist_boundary(map.inverse().apply(z)) * smin
            }
        }
    }
}

/// A domain file as consumed by the command line: the domain plus ingestion
/// attributes that are not inferable from the geometry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DomainFile {
    #[serde(flatten)]
    pub domain: RingDomain,
    /// Declares that the true target has bounded complement (plane minus a
    /// compact set); that case is not polygon-representable and must be
    /// flagged explicitly.
    #[serde(default, rename = "complementBounded", skip_serializing_if = "std::ops::Not::not")]
    pub complement_bounded: bool,
}

impl DomainFile {
    pub fn parse(text: &str) -> Result<Self> {
        let f: DomainFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("domain json: {e}")))?;
        f.domain.validate()?;
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    fn c(x: f64, y: f64) -> C {
        C::new(x, y)
    }

    #[test]
    fn affine_inverse_and_compose() {
        let phi = AffineMap::new(c(2.0, 1.0), c(0.5, -0.3), c(1.0, 2.0)).unwrap();
        let inv = phi.inverse();
        for &z in &[c(0.3, 0.7), c(-2.0, 1.5), c(10.0, -3.0)] {
            let w = inv.apply(phi.apply(z));
            assert!((w - z).norm() < 1e-12);
        }
        let psi = AffineMap::new(c(0.0, 1.0), c(0.2, 0.0), c(-1.0, 0.0)).unwrap();
        let comp = psi.compose(&phi);
        for &z in &[c(0.3, 0.7), c(-2.0, 1.5)] {
            assert!((comp.apply(z) - psi.apply(phi.apply(z))).norm() < 1e-12);
        }
    }

    #[test]
    fn affine_rejects_singular() {
        assert!(AffineMap::new(c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn apply_affine_similarity_annulus() {
        let d = RingDomain::annulus(1.0, 2.0).unwrap();
        let phi = AffineMap::similarity(c(2.0, 0.0), c(0.0, 0.0)).unwrap();
        match d.apply_affine(&phi).unwrap() {
            RingDomain::Annulus { r, r_out } => {
                assert!((r - 2.0).abs() < 1e-15 && (r_out - 4.0).abs() < 1e-15);
            }
            other => panic!("expected annulus, got {other:?}"),
        }
    }

    #[test]
    fn apply_affine_translation_polygon() {
        let outer = Polygon::rectangle(0.0, 0.0, 1.0, 1.0);
        let inner = Polygon::rectangle(0.25, 0.25, 0.75, 0.75);
        let d = RingDomain::polygonal(outer, inner).unwrap();
        let phi = AffineMap::translation(c(5.0, 1.0));
        match d.apply_affine(&phi).unwrap() {
            RingDomain::Polygonal { outer, .. } => {
                assert!((outer.vertices[0] - c(5.0, 1.0)).norm() < 1e-15);
            }
            other => panic!("expected polygonal, got {other:?}"),
        }
    }

    #[test]
    fn apply_affine_teichmuller_goes_collinear() {
        let d = RingDomain::teichmuller(2.0).unwrap();
        let phi = AffineMap::new(c(1.0, 0.5), c(0.25, 0.0), c(3.0, -1.0)).unwrap();
        match d.apply_affine(&phi).unwrap() {
            RingDomain::RealSlitRing { arc1, arc2 } => {
                let scale = (phi.a + phi.b).norm();
                assert!((arc1.lo + scale).abs() < 1e-12 && arc1.hi == 0.0);
                assert!((arc2.lo - 2.0 * scale).abs() < 1e-12 && arc2.hi.is_infinite());
            }
            other => panic!("expected real slit ring, got {other:?}"),
        }
    }

    #[test]
    fn complement_areas_examples() {
        let pi = std::f64::consts::PI;
        let (bi, bd) = RingDomain::annulus(1.0, 2.0).unwrap().complement_areas();
        assert!((bi - pi).abs() < 1e-15 && (bd - 3.0 * pi).abs() < 1e-12);

        let (bi, bd) = RingDomain::teichmuller(1.0).unwrap().complement_areas();
        assert_eq!(bi, 0.0);
        assert!(bd.is_infinite());

        let outer = Polygon::rectangle(0.0, 0.0, 1.0, 1.0);
        let inner = Polygon::rectangle(0.25, 0.25, 0.75, 0.75);
        let (bi, bd) = RingDomain::polygonal(outer, inner).unwrap().complement_areas();
        assert!((bi - 0.25).abs() < 1e-15 && (bd - 0.75).abs() < 1e-15);
    }

    #[test]
    fn area_scaling_under_affine() {
        let outer = Polygon::rectangle(-2.0, -1.0, 2.0, 1.0);
        let inner = Polygon::new(vec![c(-0.5, -0.3), c(0.6, -0.2), c(0.4, 0.5)]);
        let d = RingDomain::polygonal(outer, inner).unwrap();
        let phi = AffineMap::new(c(1.2, 0.4), c(0.3, -0.5), c(2.0, 1.0)).unwrap();
        let (bi0, bd0) = d.complement_areas();
        let (bi1, bd1) = d.apply_affine(&phi).unwrap().complement_areas();
        let s = phi.det().abs();
        assert!((bi1 - s * bi0).abs() / bi1 < 1e-9);
        assert!((bd1 - s * bd0).abs() / bd1 < 1e-9);
    }

    #[test]
    fn affine_roundtrip_vertices() {
        let outer = Polygon::rectangle(-2.0, -1.0, 2.0, 1.0);
        let inner = Polygon::new(vec![c(-0.5, -0.3), c(0.6, -0.2), c(0.4, 0.5)]);
        let d = RingDomain::polygonal(outer.clone(), inner).unwrap();
        let phi = AffineMap::new(c(1.2, 0.4), c(0.3, -0.5), c(2.0, 1.0)).unwrap();
        let back = d.apply_affine(&phi).unwrap().apply_affine(&phi.inverse()).unwrap();
        match back {
            RingDomain::Polygonal { outer: o2, .. } => {
                for (a, b) in o2.vertices.iter().zip(outer.vertices.iter()) {
                    assert!((a - b).norm() < 1e-12);
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn width_and_separation_examples() {
        let ws = RingDomain::annulus(1.0, 2.0).unwrap().width_and_separation().unwrap();
        assert!((ws.width - 2.0).abs() < 1e-15 && (ws.separation - 1.0).abs() < 1e-15);

        // distance from the unit circle to [3, inf) is 2
        let ws = RingDomain::grotzsch(3.0).unwrap().width_and_separation().unwrap();
        assert!((ws.width - 2.0).abs() < 1e-15 && (ws.separation - 2.0).abs() < 1e-15);

        let d = RingDomain::real_slit_ring(Arc::new(-1.0, 0.0), Arc::new(1.5, f64::INFINITY)).unwrap();
        let ws = d.width_and_separation().unwrap();
        assert!((ws.width - 1.0).abs() < 1e-15 && (ws.separation - 1.5).abs() < 1e-15);
        assert!(ws.slit_like && ws.complement_collinear);

        // single-point bounded component: flagged inapplicable
        let p = RingDomain::punctured(
            PuncturedOuter::Polygon(Polygon::rectangle(-1.0, -1.0, 1.0, 1.0)),
            c(0.0, 0.0),
        )
        .unwrap();
        assert!(matches!(p.width_and_separation(), Err(Error::WidthInapplicable(_))));
    }

    #[test]
    fn width_invariant_under_rigid_motion() {
        let outer = Polygon::rectangle(-2.0, -1.0, 2.0, 1.0);
        let inner = Polygon::new(vec![c(-0.5, -0.3), c(0.6, -0.2), c(0.4, 0.5)]);
        let d = RingDomain::polygonal(outer, inner).unwrap();
        let rot = AffineMap::similarity(C::from_polar(1.0, 0.7), c(3.0, -2.0)).unwrap();
        let w0 = d.width_and_separation().unwrap();
        let w1 = d.apply_affine(&rot).unwrap().width_and_separation().unwrap();
        assert!((w0.width - w1.width).abs() < 1e-9);
        assert!((w0.separation - w1.separation).abs() < 1e-9);
    }

    #[test]
    fn classify_basics() {
        let d = RingDomain::annulus(1.0, 2.0).unwrap();
        assert_eq!(d.classify(c(0.5, 0.0)), Region::Inner);
        assert_eq!(d.classify(c(1.5, 0.0)), Region::Domain);
        assert_eq!(d.classify(c(3.0, 0.0)), Region::Outer);

        let t = RingDomain::teichmuller(1.0).unwrap();
        assert_eq!(t.classify(c(-0.5, 0.0)), Region::Inner);
        assert_eq!(t.classify(c(2.0, 0.0)), Region::Outer);
        assert_eq!(t.classify(c(0.5, 0.3)), Region::Domain);
    }

    #[test]
    fn json_schema_round_trip() {
        let cases = [
            r#"{"type":"annulus","r":1.0,"R":2.0}"#,
            r#"{"type":"teichmuller","s":1.0}"#,
            r#"{"type":"grotzsch","s":2.0}"#,
            r#"{"type":"slit_strip","s":0.5}"#,
            r#"{"type":"real_slit_ring","arc1":[-1.0,0.0],"arc2":[2.0,"inf"]}"#,
            r#"{"type":"polygonal","outer":[[0,0],[4,0],[4,4],[0,4]],"inner":[[1,1],[2,1],[2,2],[1,2]]}"#,
            r#"{"type":"punctured","outer":[[0,0],[1,0],[1,1],[0,1]],"puncture":[0.5,0.5]}"#,
            r#"{"type":"punctured","outer":"halfplane","puncture":[0.0,1.0]}"#,
        ];
        for text in cases {
            let f = DomainFile::parse(text).unwrap();
            let back = serde_json::to_string(&f).unwrap();
            let f2 = DomainFile::parse(&back).unwrap();
            assert_eq!(f.domain, f2.domain, "{text}");
        }
        let f = DomainFile::parse(r#"{"type":"annulus","r":1.0,"R":2.0,"complementBounded":true}"#).unwrap();
        assert!(f.complement_bounded);
    }

    #[test]
    fn json_rejects_invalid() {
        assert!(DomainFile::parse(r#"{"type":"annulus","r":2.0,"R":1.0}"#).is_err());
        assert!(DomainFile::parse(r#"{"type":"grotzsch","s":0.5}"#).is_err());
        assert!(DomainFile::parse(r#"{"type":"real_slit_ring","arc1":[0,2],"arc2":[1,3]}"#).is_err());
        assert!(DomainFile::parse(r#"{"type":"nonsense"}"#).is_err());
    }
}
