//! Triangle centers, cevian triads, and the closed-form cevian formulas used
//! as independent oracles.
//!
//! Centers are computed from coordinates: perpendicular intersections for the
//! orthocenter and circumcenter, a vertex average for the centroid, weighted
//! vertex averages for the incenter, and contact-point cevians for the
//! Gergonne and Nagel points. For rational-coordinate triangles the first
//! three stay in the EXACT profile; the length-weighted ones are APPROX with
//! exactly computed squared-length inputs.

use crate::geom::{line_intersection, Line, Point, Triangle};
use crate::scalar::{Prec, Scalar};
use crate::{Error, Result};
use rug::Rational;

/// The supported cevian concurrency points.
#[derive(Debug, Clone, PartialEq)]
pub enum CenterKind {
    Orthocenter,
    Centroid,
    Circumcenter,
    Incenter,
    Gergonne,
    Nagel,
    /// Any point; must be strictly interior when a triad is built from it.
    Custom(Point),
}

impl CenterKind {
    pub fn name(&self) -> &'static str {
        match self {
            CenterKind::Orthocenter => "orthocenter",
            CenterKind::Centroid => "centroid",
            CenterKind::Circumcenter => "circumcenter",
            CenterKind::Incenter => "incenter",
            CenterKind::Gergonne => "gergonne",
            CenterKind::Nagel => "nagel",
            CenterKind::Custom(_) => "custom",
        }
    }
}

/// The three concurrent cevians through an interior point: `P` together with
/// the feet `D` on `BC`, `E` on `CA`, `F` on `AB`.
#[derive(Debug, Clone)]
pub struct CevianTriad {
    host: Triangle,
    p: Point,
    d: Point,
    e: Point,
    f: Point,
    kind: CenterKind,
}

impl CevianTriad {
    pub fn host(&self) -> &Triangle {
        &self.host
    }

    pub fn p(&self) -> &Point {
        &self.p
    }

    /// Foot on `BC`.
    pub fn d(&self) -> &Point {
        &self.d
    }

    /// Foot on `CA`.
    pub fn e(&self) -> &Point {
        &self.e
    }

    /// Foot on `AB`.
    pub fn f(&self) -> &Point {
        &self.f
    }

    pub fn kind(&self) -> &CenterKind {
        &self.kind
    }
}

/// Coordinates of the named center of `t`.
pub fn center_point(t: &Triangle, kind: &CenterKind) -> Result<Point> {
    match kind {
        // The contact-point constructions chain two intersections, so they
        // run with guard bits and settle to the triangle's width once.
        CenterKind::Gergonne | CenterKind::Nagel => {
            let tg = widened(t)?;
            Ok(settle_point(&center_point_raw(&tg, kind)?, t.prec()))
        }
        _ => center_point_raw(t, kind),
    }
}

/// Center computation at the triangle's own width, with no guard handling.
fn center_point_raw(t: &Triangle, kind: &CenterKind) -> Result<Point> {
    let (a, b, c) = (t.a(), t.b(), t.c());
    match kind {
        CenterKind::Centroid => {
            let three = Scalar::from_int(3);
            Ok(Point::new(
                (&(&a.x + &b.x) + &c.x) / &three,
                (&(&a.y + &b.y) + &c.y) / &three,
            ))
        }
        CenterKind::Orthocenter => {
            // Altitude from A is perpendicular to BC, similarly from B.
            let alt_a = Line::point_dir(a.clone(), -&(&c.y - &b.y), &c.x - &b.x)?;
            let alt_b = Line::point_dir(b.clone(), -&(&a.y - &c.y), &a.x - &c.x)?;
            line_intersection(&alt_a, &alt_b)
        }
        CenterKind::Circumcenter => {
            let half = Scalar::from_ratio(1, 2);
            let mid_ab = a.lerp(b, &half);
            let mid_bc = b.lerp(c, &half);
            let pb_ab = Line::point_dir(mid_ab, -&(&b.y - &a.y), &b.x - &a.x)?;
            let pb_bc = Line::point_dir(mid_bc, -&(&c.y - &b.y), &c.x - &b.x)?;
            line_intersection(&pb_ab, &pb_bc)
        }
        CenterKind::Incenter => {
            // Weighted vertex average with opposite side lengths as weights.
            let (la, lb, lc) = t.side_lengths();
            let per = &(la + lb) + lc;
            Ok(Point::new(
                (&(&(la * &a.x) + &(lb * &b.x)) + &(lc * &c.x)) / &per,
                (&(&(la * &a.y) + &(lb * &b.y)) + &(lc * &c.y)) / &per,
            ))
        }
        CenterKind::Gergonne => {
            let feet = contact_feet_incircle(t);
            concurrency_from_feet(t, &feet)
        }
        CenterKind::Nagel => {
            let feet = contact_feet_excircles(t);
            concurrency_from_feet(t, &feet)
        }
        CenterKind::Custom(p) => Ok(p.clone()),
    }
}

/// The same triangle with derived data at 32 extra mantissa bits.
fn widened(t: &Triangle) -> Result<Triangle> {
    let guard = Prec::new(t.prec().bits() + 32).expect("guard width above 53");
    Triangle::new(t.a().clone(), t.b().clone(), t.c().clone(), guard)
}

/// Incircle contact points on the three sides: `BD = s - b`, `CE = s - c`,
/// `AF = s - a`.
fn contact_feet_incircle(t: &Triangle) -> [Point; 3] {
    let (la, lb, lc) = t.side_lengths();
    let s = t.semiperimeter();
    let d = t.b().lerp(t.c(), &(&(s - lb) / la));
    let e = t.c().lerp(t.a(), &(&(s - lc) / lb));
    let f = t.a().lerp(t.b(), &(&(s - la) / lc));
    [d, e, f]
}

/// Contact points of the three excircles with the sides they touch:
/// `BD = s - c`, `CE = s - a`, `AF = s - b`.
fn contact_feet_excircles(t: &Triangle) -> [Point; 3] {
    let (la, lb, lc) = t.side_lengths();
    let s = t.semiperimeter();
    let d = t.b().lerp(t.c(), &(&(s - lc) / la));
    let e = t.c().lerp(t.a(), &(&(s - la) / lb));
    let f = t.a().lerp(t.b(), &(&(s - lb) / lc));
    [d, e, f]
}

fn concurrency_from_feet(t: &Triangle, feet: &[Point; 3]) -> Result<Point> {
    let ad = Line::through(t.a().clone(), feet[0].clone())?;
    let be = Line::through(t.b().clone(), feet[1].clone())?;
    line_intersection(&ad, &be)
}

/// Rounds APPROX coordinates down to `prec`; EXACT coordinates pass through.
fn settle_point(p: &Point, prec: Prec) -> Point {
    let settle = |s: &Scalar| -> Scalar {
        if s.is_exact() {
            s.clone()
        } else {
            s.round_to(prec)
        }
    };
    Point::new(settle(&p.x), settle(&p.y))
}

/// Builds the cevian triad of `t` through the named center.
///
/// The feet are always recomputed as cevian/side intersections
/// (`D = AP x BC` and so on), which keeps construction uniform across
/// kinds; contact-length identities then act as independent checks.
/// The chained intersections run with 32 guard bits and the resulting
/// points are rounded once to the triangle's width, so the concurrency and
/// Ceva certificates hold with margin at `2^(-w+10)`.
pub fn cevian_triad(t: &Triangle, kind: CenterKind) -> Result<CevianTriad> {
    let prec = t.prec();
    let tg = widened(t)?;
    let p_wide = center_point_raw(&tg, &kind)?;
    if !t.contains_strict(&p_wide) {
        return Err(Error::CenterNotInterior(kind.name().to_string()));
    }
    let foot = |v: &Point, s1: &Point, s2: &Point| -> Result<Point> {
        let cevian = Line::through(v.clone(), p_wide.clone())?;
        let side = Line::through(s1.clone(), s2.clone())?;
        line_intersection(&cevian, &side)
    };
    let p = settle_point(&p_wide, prec);
    let d = settle_point(&foot(t.a(), t.b(), t.c())?, prec);
    let e = settle_point(&foot(t.b(), t.c(), t.a())?, prec);
    let f = settle_point(&foot(t.c(), t.a(), t.b())?, prec);
    for (g, s1, s2) in [(&d, t.b(), t.c()), (&e, t.c(), t.a()), (&f, t.a(), t.b())] {
        let side = Line::through(s1.clone(), s2.clone())?;
        // Cheap float parameter first; settle boundary cases exactly.
        let fast = side.project_param_scalar(g).to_f64();
        let inside = if (1e-6..=1.0 - 1e-6).contains(&fast) {
            true
        } else {
            let param = side.project_param(g);
            param > 0 && param < 1
        };
        if !inside {
            return Err(Error::CenterNotInterior(kind.name().to_string()));
        }
    }
    Ok(CevianTriad {
        host: t.clone(),
        p,
        d,
        e,
        f,
        kind,
    })
}

/// Exact split parameter of foot `g` along the directed side `s1 -> s2`.
fn split_param(s1: &Point, s2: &Point, g: &Point) -> Rational {
    Line::through(s1.clone(), s2.clone())
        .expect("distinct side endpoints")
        .project_param(g)
}

/// The Ceva product `(BD/DC) * (CE/EA) * (AF/FB)`, which equals 1 for any
/// concurrent triad. Computed from exact split parameters, so the result is
/// exactly 1 for rational centers.
pub fn ceva_product(triad: &CevianTriad) -> Scalar {
    let t = triad.host();
    let ratio = |s1: &Point, s2: &Point, g: &Point| -> Rational {
        let q = split_param(s1, s2, g);
        let one_minus = Rational::from(1) - &q;
        q / one_minus
    };
    let r1 = ratio(t.b(), t.c(), triad.d());
    let r2 = ratio(t.c(), t.a(), triad.e());
    let r3 = ratio(t.a(), t.b(), triad.f());
    Scalar::from_rational(r1 * r2 * r3)
}

/// Cevian lengths `AD`, `BE`, `CF` through the Nagel point, in closed form:
/// `AD = sqrt(s^2 - 4K^2 / (a(s-a)))` and cyclic, with `K` from Heron's
/// formula.
pub fn nagel_cevian_lengths(
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    prec: Prec,
) -> Result<(Scalar, Scalar, Scalar)> {
    check_sides(a, b, c)?;
    let two = Scalar::from_int(2);
    let s = (&(a + b) + c) / &two;
    let k = (&(&(&s * &(&s - a)) * &(&s - b)) * &(&s - c)).sqrt(prec);
    let four_k2 = Scalar::from_int(4) * &k * &k;
    let s2 = &s * &s;
    let len = |side: &Scalar| -> Scalar {
        (&s2 - &(&four_k2 / &(side * &(&s - side)))).sqrt(prec)
    };
    Ok((len(a), len(b), len(c)))
}

/// Section ratios in which the Nagel point divides its cevians:
/// `AN/ND = a/(s-a)` and cyclic.
pub fn nagel_section_ratios(
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
) -> Result<(Scalar, Scalar, Scalar)> {
    check_sides(a, b, c)?;
    let two = Scalar::from_int(2);
    let s = (&(a + b) + c) / &two;
    Ok((a / &(&s - a), b / &(&s - b), c / &(&s - c)))
}

fn check_sides(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<()> {
    let pos = a.is_positive() && b.is_positive() && c.is_positive();
    let tri = (a + b) > *c && (b + c) > *a && (c + a) > *b;
    if pos && tri {
        Ok(())
    } else {
        Err(Error::InvalidSides)
    }
}
