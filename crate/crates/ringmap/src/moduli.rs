//! Closed-form conformal moduli of canonical rings, the Carleman area bound
//! and the Teichmüller width bound.

use crate::domain::{ExtendedModulus, RingDomain};
use crate::elliptic::grotzsch_mu;
use crate::{Error, Result};

/// Modulus of the Teichmüller ring `T(s)`, complement `[-1,0] ∪ [s,+inf)`.
pub fn mod_teichmuller(s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::OutOfRange(format!("Mod T(s) needs s > 0, got {s}")));
    }
    Ok(2.0 * grotzsch_mu(1.0 / (1.0 + s).sqrt())?)
}

/// Modulus of the Grötzsch ring `G(s)`, exterior of the unit disk minus `[s,+inf)`.
pub fn mod_grotzsch(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::OutOfRange(format!("Mod G(s) needs s > 1, got {s}")));
    }
    grotzsch_mu(1.0 / s)
}

/// The parameter `s` such that the ring is Möbius-equivalent to `T(s)`.
///
/// The four slit endpoints in cyclic order on the extended real line are
/// matched against the `T(s)` configuration `(-1, 0, s, inf)`; the cross-ratio
/// of that configuration is `(s+1)/s`.
pub fn teichmuller_parameter(d: &RingDomain) -> Result<f64> {
    let RingDomain::RealSlitRing { arc1, arc2 } = d else {
        return Err(Error::Unsupported("teichmuller_parameter needs a real slit ring".into()));
    };
    d.validate()?;
    // Traverse arc1 then arc2 the way the circle does: arc1 runs lo -> hi in
    // the angular sense, and the configuration (p1,p2,p3,p4) lists arc1's
    // endpoints then arc2's so that p2 and p3 face each other across a gap.
    // Cyclic order is determined by the angular intervals.
    let (a1_start, a1_span) = arc1.angular_interval();
    let a1_end = a1_start + a1_span;
    let (a2_start, _) = arc2.angular_interval();
    let two_pi = 2.0 * std::f64::consts::PI;
    // gap from end of arc1 forward to each endpoint of arc2
    let fwd_to_start = (a2_start - a1_end).rem_euclid(two_pi);
    let (_, a2_span) = arc2.angular_interval();
    let fwd_to_end = (a2_start + a2_span - a1_end).rem_euclid(two_pi);
    let (p1, p2) = (arc1.lo, arc1.hi);
    let (p3, p4) = if fwd_to_start < fwd_to_end { (arc2.lo, arc2.hi) } else { (arc2.hi, arc2.lo) };
    let cr = cross_ratio_ext(p1, p2, p3, p4);
    if !(cr > 1.0) {
        return Err(Error::InvalidDomain(format!("degenerate slit configuration, cross-ratio {cr}")));
    }
    Ok(1.0 / (cr - 1.0))
}

/// Cross-ratio `((p1-p3)(p2-p4)) / ((p1-p4)(p2-p3))` of extended reals, with
/// the usual limit branches when one of the points is infinite.
fn cross_ratio_ext(p1: f64, p2: f64, p3: f64, p4: f64) -> f64 {
    let inf = |x: f64| x.is_infinite();
    match (inf(p1), inf(p2), inf(p3), inf(p4)) {
        (false, false, false, false) => ((p1 - p3) * (p2 - p4)) / ((p1 - p4) * (p2 - p3)),
        (true, false, false, false) => (p2 - p4) / (p2 - p3),
        (false, true, false, false) => (p1 - p3) / (p1 - p4),
        (false, false, true, false) => (p2 - p4) / (p1 - p4),
        (false, false, false, true) => (p1 - p3) / (p2 - p3),
        _ => f64::NAN,
    }
}

/// Closed-form conformal modulus of a canonical ring.
///
/// Polygonal rings are rejected (the grid solver owns them); the slit strip
/// has no closed form here either and is routed the same way.
pub fn conformal_modulus_closed_form(d: &RingDomain) -> Result<ExtendedModulus> {
    match d {
        RingDomain::Annulus { r, r_out } => Ok(ExtendedModulus::closed_form((r_out / r).ln())),
        RingDomain::Grotzsch { s } => Ok(ExtendedModulus::closed_form(mod_grotzsch(*s)?)),
        RingDomain::Teichmuller { s } => Ok(ExtendedModulus::closed_form(mod_teichmuller(*s)?)),
        RingDomain::RealSlitRing { .. } => {
            let s = teichmuller_parameter(d)?;
            Ok(ExtendedModulus::closed_form(mod_teichmuller(s)?))
        }
        RingDomain::SlitStrip { .. } => Err(Error::NoClosedForm),
        RingDomain::Punctured { .. } => Ok(ExtendedModulus::infinite()),
        RingDomain::Polygonal { .. } => Err(Error::Unsupported(
            "polygonal rings have no closed form; use the grid solver".into(),
        )),
        RingDomain::AffineImage { base, map } => {
            // the modulus survives the map when the factor is conformal or the
            // complement is collinear
            if map.is_complex_affine() {
                return conformal_modulus_closed_form(base);
            }
            match **base {
                RingDomain::Teichmuller { .. } | RingDomain::RealSlitRing { .. } => {
                    conformal_modulus_closed_form(base)
                }
                _ => Err(Error::NoClosedForm),
            }
        }
    }
}

/// Carleman modulus `1/2 log(|Omega^+| / |Omega^-|)`; infinite when the domain
/// has infinite area or the bounded component has none.
pub fn carleman_modulus(d: &RingDomain) -> ExtendedModulus {
    let (inner, dom) = d.complement_areas();
    if !dom.is_finite() || inner == 0.0 {
        return ExtendedModulus::infinite();
    }
    ExtendedModulus::closed_form(0.5 * ((inner + dom) / inner).ln())
}

/// Certified upper bound `Mod T(d/w)` for the affine modulus.
///
/// For a slit bounded component the segment length stands in for the width,
/// which is exact precisely when the whole complement is collinear (the
/// Teichmüller configuration itself); a slit facing a non-collinear outer
/// boundary admits no finite affine-invariant width bound and reports the
/// bound as infinite.
pub fn width_bound(d: &RingDomain) -> Result<ExtendedModulus> {
    let ws = d.width_and_separation()?;
    if ws.width <= 0.0 {
        return Err(Error::WidthInapplicable("bounded component has zero width".into()));
    }
    if ws.slit_like && !ws.complement_collinear {
        return Ok(ExtendedModulus {
            value: f64::INFINITY,
            method: crate::domain::ModulusMethod::BoundOnly,
            abs_error: None,
        });
    }
    Ok(ExtendedModulus {
        value: mod_teichmuller(ws.separation / ws.width)?,
        method: crate::domain::ModulusMethod::BoundOnly,
        abs_error: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Arc, Polygon};
    use std::f64::consts::PI;

    #[test]
    fn annulus_closed_form() {
        let d = RingDomain::annulus(1.0, std::f64::consts::E).unwrap();
        let m = conformal_modulus_closed_form(&d).unwrap();
        assert!((m.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn teichmuller_one_is_pi() {
        // Mod T(1) = 2 mu(1/sqrt2) = pi
        let d = RingDomain::teichmuller(1.0).unwrap();
        let m = conformal_modulus_closed_form(&d).unwrap();
        assert!((m.value - PI).abs() < 1e-12, "{}", m.value);
    }

    #[test]
    fn grotzsch_teichmuller_identity() {
        // Mod G(s) = 1/2 Mod T(s^2 - 1)
        for &s in &[1.5, 2.0, 3.0, 10.0] {
            let g = mod_grotzsch(s).unwrap();
            let t = mod_teichmuller(s * s - 1.0).unwrap();
            assert!((g - 0.5 * t).abs() <= 1e-10, "s={s}: {g} vs {}", 0.5 * t);
        }
    }

    #[test]
    fn mod_t_monotone() {
        let mut prev = 0.0;
        for i in 1..=60 {
            let s = 0.25 * i as f64;
            let v = mod_teichmuller(s).unwrap();
            assert!(v > prev + 1e-12, "s={s}");
            prev = v;
        }
    }

    #[test]
    fn teichmuller_parameter_examples() {
        // already the Teichmuller configuration
        let d = RingDomain::real_slit_ring(Arc::new(-1.0, 0.0), Arc::new(2.5, f64::INFINITY)).unwrap();
        assert!((teichmuller_parameter(&d).unwrap() - 2.5).abs() < 1e-12);

        // arcs ((-inf,0], [s,s+1]) -> s: cross-ratio (inf,0;s,s+1) = (s+1)/s
        for &s in &[0.5, 1.0, 3.0] {
            let d = RingDomain::real_slit_ring(Arc::new(f64::NEG_INFINITY, 0.0), Arc::new(s, s + 1.0)).unwrap();
            let got = teichmuller_parameter(&d).unwrap();
            assert!((got - s).abs() < 1e-12, "s={s}, got {got}");
        }

        // arcs [0,1],[2,3]: cross-ratio of (0,1,2,3) = 4/3, s = 3
        let d = RingDomain::real_slit_ring(Arc::new(0.0, 1.0), Arc::new(2.0, 3.0)).unwrap();
        assert!((teichmuller_parameter(&d).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn teichmuller_parameter_invariant_under_mobius_like_data() {
        // scaling both arcs leaves the parameter alone
        let d1 = RingDomain::real_slit_ring(Arc::new(-2.0, 0.0), Arc::new(4.0, f64::INFINITY)).unwrap();
        let d2 = RingDomain::real_slit_ring(Arc::new(-1.0, 0.0), Arc::new(2.0, f64::INFINITY)).unwrap();
        assert!(
            (teichmuller_parameter(&d1).unwrap() - teichmuller_parameter(&d2).unwrap()).abs() < 1e-12
        );
    }

    #[test]
    fn carleman_examples() {
        let d = RingDomain::annulus(1.0, 2.0).unwrap();
        assert!((carleman_modulus(&d).value - 2f64.ln()).abs() < 1e-15);

        let t = RingDomain::teichmuller(1.0).unwrap();
        assert!(carleman_modulus(&t).value.is_infinite());

        let sq = RingDomain::polygonal(
            Polygon::rectangle(0.0, 0.0, 1.0, 1.0),
            Polygon::rectangle(0.25, 0.25, 0.75, 0.75),
        )
        .unwrap();
        assert!((carleman_modulus(&sq).value - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn width_bound_examples() {
        // Grotzsch: Mod_@ G(s) <= Mod T((s-1)/2)
        let g = RingDomain::grotzsch(3.0).unwrap();
        let wb = width_bound(&g).unwrap();
        assert!((wb.value - mod_teichmuller(1.0).unwrap()).abs() < 1e-12);

        // annulus(1,2): w = 2, d = 1 -> Mod T(1/2)
        let a = RingDomain::annulus(1.0, 2.0).unwrap();
        let wb = width_bound(&a).unwrap();
        assert!((wb.value - mod_teichmuller(0.5).unwrap()).abs() < 1e-12);

        // tight on the Teichmuller configuration itself
        let d = RingDomain::real_slit_ring(Arc::new(-1.0, 0.0), Arc::new(2.0, f64::INFINITY)).unwrap();
        let wb = width_bound(&d).unwrap();
        assert!((wb.value - mod_teichmuller(2.0).unwrap()).abs() < 1e-12);

        // slit strip: slit against a non-collinear boundary, no finite bound
        let s = RingDomain::slit_strip(1.0).unwrap();
        assert!(width_bound(&s).unwrap().value.is_infinite());
    }
}
