//! Primitive planar geometry over [`Scalar`] coordinates.
//!
//! Coordinates are rational at generation time, so orientation, interiority
//! and squared distances are decided exactly even when points carry APPROX
//! values (binary floats are dyadic rationals). Lengths, angles and anything
//! else involving a square root live in the APPROX profile at the width the
//! triangle was built with.

use crate::scalar::{Prec, Scalar};
use crate::{Error, Result};
use rug::float::Round;
use rug::ops::AssignRound;
use rug::{Complete, Float, Rational};
use std::cmp::Ordering;
use std::fmt;

/// Exact evaluation of small polynomial expressions in extended-precision
/// floats. Every operation is checked for exactness (MPFR reports whether a
/// result was rounded); callers fall back to rational arithmetic whenever a
/// step would round, so the fast path never changes a result.
struct ExactFloat {
    work: u32,
}

impl ExactFloat {
    fn for_points(points: &[&Point]) -> ExactFloat {
        let w = points
            .iter()
            .flat_map(|p| [&p.x, &p.y])
            .filter_map(|s| s.prec())
            .map(Prec::bits)
            .max()
            .unwrap_or(53)
            .max(53);
        ExactFloat { work: 2 * w + 64 }
    }

    fn coord(&self, s: &Scalar) -> Option<Float> {
        s.as_exact_float(self.work)
    }

    fn sub(&self, a: &Float, b: &Float) -> Option<Float> {
        let mut out = Float::new(self.work);
        (out.assign_round(a - b, Round::Nearest) == Ordering::Equal).then_some(out)
    }

    fn add(&self, a: &Float, b: &Float) -> Option<Float> {
        let mut out = Float::new(self.work);
        (out.assign_round(a + b, Round::Nearest) == Ordering::Equal).then_some(out)
    }

    fn mul(&self, a: &Float, b: &Float) -> Option<Float> {
        let mut out = Float::new(self.work);
        (out.assign_round(a * b, Round::Nearest) == Ordering::Equal).then_some(out)
    }
}

/// `(b - a) x (c - a)` as an exactly represented float, or `None` when the
/// inputs do not fit the fast path.
fn cross_float(a: &Point, b: &Point, c: &Point) -> Option<Float> {
    let ef = ExactFloat::for_points(&[a, b, c]);
    let ax = ef.coord(&a.x)?;
    let ay = ef.coord(&a.y)?;
    let ux = ef.sub(&ef.coord(&b.x)?, &ax)?;
    let uy = ef.sub(&ef.coord(&b.y)?, &ay)?;
    let vx = ef.sub(&ef.coord(&c.x)?, &ax)?;
    let vy = ef.sub(&ef.coord(&c.y)?, &ay)?;
    ef.sub(&ef.mul(&ux, &vy)?, &ef.mul(&uy, &vx)?)
}

/// `(b - a) . (c - a)` as an exactly represented float.
fn dot_float(a: &Point, b: &Point, c: &Point) -> Option<Float> {
    let ef = ExactFloat::for_points(&[a, b, c]);
    let ax = ef.coord(&a.x)?;
    let ay = ef.coord(&a.y)?;
    let ux = ef.sub(&ef.coord(&b.x)?, &ax)?;
    let uy = ef.sub(&ef.coord(&b.y)?, &ay)?;
    let vx = ef.sub(&ef.coord(&c.x)?, &ax)?;
    let vy = ef.sub(&ef.coord(&c.y)?, &ay)?;
    ef.add(&ef.mul(&ux, &vx)?, &ef.mul(&uy, &vy)?)
}

fn float_sign(f: &Float) -> i8 {
    match f.cmp0() {
        Some(Ordering::Less) => -1,
        Some(Ordering::Equal) => 0,
        Some(Ordering::Greater) => 1,
        None => unreachable!("finite by construction"),
    }
}

/// A point in the plane.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Point {
        Point { x, y }
    }

    /// Point with exact integer coordinates.
    pub fn from_ints(x: i64, y: i64) -> Point {
        Point::new(Scalar::from_int(x), Scalar::from_int(y))
    }

    /// Point with exact rational coordinates `xn/xd`, `yn/yd`.
    pub fn from_ratios(xn: i64, xd: i64, yn: i64, yd: i64) -> Point {
        Point::new(Scalar::from_ratio(xn, xd), Scalar::from_ratio(yn, yd))
    }

    pub fn is_exact(&self) -> bool {
        self.x.is_exact() && self.y.is_exact()
    }

    /// Exact squared Euclidean distance, regardless of profile.
    pub fn dist_sq_exact(&self, other: &Point) -> Rational {
        let dx = self.x.to_exact() - other.x.to_exact();
        let dy = self.y.to_exact() - other.y.to_exact();
        (&dx * &dx).complete() + (&dy * &dy).complete()
    }

    /// Exactly computed squared distance as a scalar, using the checked
    /// float fast path when the coordinates admit one.
    pub(crate) fn dist_sq_scalar(&self, other: &Point) -> Scalar {
        let fast = || -> Option<Scalar> {
            let ef = ExactFloat::for_points(&[self, other]);
            let dx = ef.sub(&ef.coord(&self.x)?, &ef.coord(&other.x)?)?;
            let dy = ef.sub(&ef.coord(&self.y)?, &ef.coord(&other.y)?)?;
            let sq = ef.add(&ef.mul(&dx, &dx)?, &ef.mul(&dy, &dy)?)?;
            Some(Scalar::Approx(sq))
        };
        fast().unwrap_or_else(|| Scalar::from_rational(self.dist_sq_exact(other)))
    }

    /// Euclidean distance: the square root, at width `prec`, of the exactly
    /// computed squared distance.
    pub fn distance(&self, other: &Point, prec: Prec) -> Scalar {
        self.dist_sq_scalar(other).sqrt(prec)
    }

    /// `self + t * (other - self)`; the profile follows the operands.
    pub fn lerp(&self, other: &Point, t: &Scalar) -> Point {
        Point::new(
            &self.x + &(t * &(&other.x - &self.x)),
            &self.y + &(t * &(&other.y - &self.y)),
        )
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Sign of the cross product `(b - a) x (c - a)`, evaluated exactly.
/// Positive means `c` lies to the left of the directed line `a -> b`.
pub fn orient_sign(a: &Point, b: &Point, c: &Point) -> i8 {
    if let Some(det) = cross_float(a, b, c) {
        return float_sign(&det);
    }
    let (ax, ay) = (a.x.to_exact(), a.y.to_exact());
    let ux = b.x.to_exact() - &ax;
    let uy = b.y.to_exact() - &ay;
    let vx = c.x.to_exact() - &ax;
    let vy = c.y.to_exact() - &ay;
    let det = (&ux * &vy).complete() - (&uy * &vx).complete();
    det.cmp0() as i8
}

/// Sign of `(b - a) . (c - a)`, evaluated exactly.
pub(crate) fn dot_sign(a: &Point, b: &Point, c: &Point) -> i8 {
    if let Some(dot) = dot_float(a, b, c) {
        return float_sign(&dot);
    }
    let (ax, ay) = (a.x.to_exact(), a.y.to_exact());
    let ux = b.x.to_exact() - &ax;
    let uy = b.y.to_exact() - &ay;
    let vx = c.x.to_exact() - &ax;
    let vy = c.y.to_exact() - &ay;
    let dot = (&ux * &vx).complete() + (&uy * &vy).complete();
    dot.cmp0() as i8
}

/// Exact twice-signed-area of `(a, b, c)`.
pub fn cross_exact(a: &Point, b: &Point, c: &Point) -> Rational {
    let (ax, ay) = (a.x.to_exact(), a.y.to_exact());
    let ux = b.x.to_exact() - &ax;
    let uy = b.y.to_exact() - &ay;
    let vx = c.x.to_exact() - &ax;
    let vy = c.y.to_exact() - &ay;
    (&ux * &vy).complete() - (&uy * &vx).complete()
}

/// An oriented line through two distinct anchor points.
#[derive(Debug, Clone)]
pub struct Line {
    a: Point,
    b: Point,
}

impl Line {
    /// Line through `a` and `b`, oriented `a -> b`.
    pub fn through(a: Point, b: Point) -> Result<Line> {
        if a.x == b.x && a.y == b.y {
            return Err(Error::CoincidentPoints);
        }
        Ok(Line { a, b })
    }

    /// Line through `p` with direction `(dx, dy)`.
    pub fn point_dir(p: Point, dx: Scalar, dy: Scalar) -> Result<Line> {
        let q = Point::new(&p.x + &dx, &p.y + &dy);
        Line::through(p, q)
    }

    pub fn anchor(&self) -> &Point {
        &self.a
    }

    pub fn second(&self) -> &Point {
        &self.b
    }

    pub fn dir(&self) -> (Scalar, Scalar) {
        (&self.b.x - &self.a.x, &self.b.y - &self.a.y)
    }

    /// Signed cross of the direction with `p - anchor`; positive when `p`
    /// lies to the left. Exact.
    pub fn side_of(&self, p: &Point) -> i8 {
        orient_sign(&self.a, &self.b, p)
    }

    /// Perpendicular foot of `p` on the line, in the operands' own profile.
    pub fn foot(&self, p: &Point) -> Point {
        let t = self.project_param_scalar(p);
        self.a.lerp(&self.b, &t)
    }

    /// Projection parameter of `p` in the operands' own profile (exact for
    /// exact inputs, floating point at the operands' width otherwise).
    pub fn project_param_scalar(&self, p: &Point) -> Scalar {
        let (dx, dy) = self.dir();
        let px = &p.x - &self.a.x;
        let py = &p.y - &self.a.y;
        let num = &(&dx * &px) + &(&dy * &py);
        let den = &(&dx * &dx) + &(&dy * &dy);
        num / den
    }

    /// Exact parameter of the projection of `p` onto the line
    /// (`0` at the anchor, `1` at the second point).
    pub fn project_param(&self, p: &Point) -> Rational {
        let ax = self.a.x.to_exact();
        let ay = self.a.y.to_exact();
        let dx = self.b.x.to_exact() - &ax;
        let dy = self.b.y.to_exact() - &ay;
        let px = p.x.to_exact() - &ax;
        let py = p.y.to_exact() - &ay;
        let num = (&dx * &px).complete() + (&dy * &py).complete();
        let den = (&dx * &dx).complete() + (&dy * &dy).complete();
        num / den
    }
}

/// Intersection point of two lines.
///
/// Exact inputs intersect exactly; APPROX inputs follow float arithmetic at
/// their width `w`, and near-parallel pairs with `|cross| <= 2^(-w+10) * scale^2`
/// are rejected as parallel.
pub fn line_intersection(l1: &Line, l2: &Line) -> Result<Point> {
    let (d1x, d1y) = l1.dir();
    let (d2x, d2y) = l2.dir();
    let cross = &(&d1x * &d2y) - &(&d1y * &d2x);

    let widths = [&d1x, &d1y, &d2x, &d2y]
        .iter()
        .filter_map(|s| s.prec())
        .max();
    match widths {
        None => {
            if cross.is_zero() {
                return Err(Error::ParallelLines);
            }
        }
        Some(w) => {
            let scale = d1x
                .abs()
                .max(d1y.abs())
                .max(d2x.abs())
                .max(d2y.abs());
            let thr = w.eps(10) * &scale * &scale;
            if cross.abs() <= thr {
                return Err(Error::ParallelLines);
            }
        }
    }

    // Solve a1 + t*d1 = a2 + u*d2 for t via Cramer's rule.
    let rx = &l2.a.x - &l1.a.x;
    let ry = &l2.a.y - &l1.a.y;
    let t = &(&(&rx * &d2y) - &(&ry * &d2x)) / &cross;
    Ok(l1.a.lerp(&l1.b, &t))
}

/// Perpendicular distance from `p` to the line, at width `prec`:
/// `|d x (p - a)| / |d|` in the operands' own profile.
pub fn distance_point_to_line(p: &Point, l: &Line, prec: Prec) -> Scalar {
    let (dx, dy) = l.dir();
    let rx = &p.x - &l.a.x;
    let ry = &p.y - &l.a.y;
    let num = (&(&dx * &ry) - &(&dy * &rx)).abs();
    if num.is_zero() {
        return Scalar::zero();
    }
    let den = l.a.dist_sq_scalar(&l.b).sqrt(prec);
    num / den
}

/// Vertex labels for triangle queries.
pub const VA: usize = 0;
pub const VB: usize = 1;
pub const VC: usize = 2;

/// A non-degenerate triangle stored in counterclockwise orientation, with
/// its derived side lengths, area and semiperimeter at a fixed width.
#[derive(Debug, Clone)]
pub struct Triangle {
    v: [Point; 3],
    len: [Scalar; 3],
    area: Scalar,
    semi: Scalar,
    prec: Prec,
}

impl Triangle {
    /// Builds a triangle, normalizing to counterclockwise orientation (the
    /// first vertex stays first). Degenerate input is rejected.
    pub fn new(a: Point, b: Point, c: Point, prec: Prec) -> Result<Triangle> {
        let (b, c) = match orient_sign(&a, &b, &c) {
            0 => return Err(Error::DegenerateTriangle),
            s if s < 0 => (c, b),
            _ => (b, c),
        };
        let len = [
            b.distance(&c, prec),
            c.distance(&a, prec),
            a.distance(&b, prec),
        ];
        // Signed cross in the coordinates' own profile; positive after
        // normalization.
        let two_area = &(&(&b.x - &a.x) * &(&c.y - &a.y)) - &(&(&b.y - &a.y) * &(&c.x - &a.x));
        let area = two_area / Scalar::from_int(2);
        let semi = (&(&len[0] + &len[1]) + &len[2]) / Scalar::from_int(2);
        Ok(Triangle {
            v: [a, b, c],
            len,
            area,
            semi,
            prec,
        })
    }

    /// Constructor for builders that already know the vertices are in CCW
    /// order and have the side lengths at hand (`len[i]` opposite vertex
    /// `i`). Degenerate or misordered input is rejected.
    pub(crate) fn from_parts(
        a: Point,
        b: Point,
        c: Point,
        len: [Scalar; 3],
        prec: Prec,
    ) -> Result<Triangle> {
        if orient_sign(&a, &b, &c) <= 0 {
            return Err(Error::DegenerateTriangle);
        }
        let two_area = &(&(&b.x - &a.x) * &(&c.y - &a.y)) - &(&(&b.y - &a.y) * &(&c.x - &a.x));
        let area = two_area / Scalar::from_int(2);
        let semi = (&(&len[0] + &len[1]) + &len[2]) / Scalar::from_int(2);
        Ok(Triangle {
            v: [a, b, c],
            len,
            area,
            semi,
            prec,
        })
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_ints(a: (i64, i64), b: (i64, i64), c: (i64, i64), prec: Prec) -> Result<Triangle> {
        Triangle::new(
            Point::from_ints(a.0, a.1),
            Point::from_ints(b.0, b.1),
            Point::from_ints(c.0, c.1),
            prec,
        )
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.v[i]
    }

    pub fn a(&self) -> &Point {
        &self.v[0]
    }

    pub fn b(&self) -> &Point {
        &self.v[1]
    }

    pub fn c(&self) -> &Point {
        &self.v[2]
    }

    pub fn prec(&self) -> Prec {
        self.prec
    }

    /// Length of the side opposite vertex `i`.
    pub fn side_len(&self, i: usize) -> &Scalar {
        &self.len[i]
    }

    /// `(a, b, c) = (|BC|, |CA|, |AB|)`.
    pub fn side_lengths(&self) -> (&Scalar, &Scalar, &Scalar) {
        (&self.len[0], &self.len[1], &self.len[2])
    }

    /// Area in the coordinates' profile (exact for rational coordinates).
    pub fn area(&self) -> &Scalar {
        &self.area
    }

    /// Exact area, available for any profile since float coordinates are
    /// dyadic rationals.
    pub fn area_exact(&self) -> Rational {
        let mut k = cross_exact(&self.v[0], &self.v[1], &self.v[2]);
        k /= 2u32;
        k
    }

    pub fn semiperimeter(&self) -> &Scalar {
        &self.semi
    }

    /// Directed side opposite vertex `i`, following the CCW boundary.
    pub fn side_line(&self, i: usize) -> Line {
        Line {
            a: self.v[(i + 1) % 3].clone(),
            b: self.v[(i + 2) % 3].clone(),
        }
    }

    /// Interior angle at vertex `i`, in radians, in `(0, pi)`.
    pub fn vertex_angle(&self, i: usize) -> Scalar {
        let o = &self.v[i];
        let p = &self.v[(i + 1) % 3];
        let q = &self.v[(i + 2) % 3];
        let ox = o.x.to_exact();
        let oy = o.y.to_exact();
        let ux = p.x.to_exact() - &ox;
        let uy = p.y.to_exact() - &oy;
        let vx = q.x.to_exact() - &ox;
        let vy = q.y.to_exact() - &oy;
        let cross = ((&ux * &vy).complete() - (&uy * &vx).complete()).abs();
        let dot = (&ux * &vx).complete() + (&uy * &vy).complete();
        Scalar::atan2(
            &Scalar::from_rational(cross),
            &Scalar::from_rational(dot),
            self.prec,
        )
    }

    /// Strict interiority test, decided exactly. Boundary points are outside.
    pub fn contains_strict(&self, p: &Point) -> bool {
        orient_sign(&self.v[0], &self.v[1], p) > 0
            && orient_sign(&self.v[1], &self.v[2], p) > 0
            && orient_sign(&self.v[2], &self.v[0], p) > 0
    }

    /// Exact test for an acute triangle (all squared dots positive).
    pub fn is_acute(&self) -> bool {
        (0..3).all(|i| {
            dot_sign(&self.v[i], &self.v[(i + 1) % 3], &self.v[(i + 2) % 3]) > 0
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p53() -> Prec {
        Prec::DOUBLE
    }

    fn tri345() -> Triangle {
        Triangle::from_ints((0, 3), (0, 0), (4, 0), p53()).unwrap()
    }

    #[test]
    fn side_lengths_of_3_4_5() {
        let t = tri345();
        let (a, b, c) = t.side_lengths();
        assert_eq!(a, &Scalar::from_int(4));
        assert_eq!(b, &Scalar::from_int(5));
        assert_eq!(c, &Scalar::from_int(3));
    }

    #[test]
    fn unit_equilateral_side_lengths() {
        let h = Scalar::from_int(3).sqrt(p53()) / Scalar::from_int(2);
        let t = Triangle::new(
            Point::new(Scalar::from_ratio(1, 2), h),
            Point::from_ints(0, 0),
            Point::from_ints(1, 0),
            p53(),
        )
        .unwrap();
        let one = Scalar::one();
        let tol = p53().eps(3);
        for i in 0..3 {
            assert!((t.side_len(i) - &one).abs() <= tol, "side {i}");
        }
    }

    #[test]
    fn collinear_points_are_degenerate() {
        let r = Triangle::from_ints((0, 0), (1, 0), (2, 0), p53());
        assert_eq!(r.unwrap_err(), Error::DegenerateTriangle);
    }

    #[test]
    fn area_examples() {
        let t = tri345();
        assert_eq!(t.area(), &Scalar::from_int(6));
        assert_eq!(t.area_exact(), Rational::from(6));

        // Unit equilateral against the Heron oracle sqrt(3)/4.
        let h = Scalar::from_int(3).sqrt(p53()) / Scalar::from_int(2);
        let t = Triangle::new(
            Point::new(Scalar::from_ratio(1, 2), h),
            Point::from_ints(0, 0),
            Point::from_ints(1, 0),
            p53(),
        )
        .unwrap();
        let expect = 3.0f64.sqrt() / 4.0;
        assert!((t.area().to_f64() - expect).abs() < 1e-15);
    }

    #[test]
    fn orientation_is_normalized() {
        // Clockwise input comes out counterclockwise with positive area.
        let t = Triangle::from_ints((0, 3), (4, 0), (0, 0), p53()).unwrap();
        assert!(t.area().is_positive());
        assert_eq!(t.a(), &Point::from_ints(0, 3));
    }

    #[test]
    fn line_intersection_examples() {
        let x_axis = Line::through(Point::from_ints(0, 0), Point::from_ints(1, 0)).unwrap();
        let y_axis = Line::through(Point::from_ints(0, 0), Point::from_ints(0, 1)).unwrap();
        let o = line_intersection(&x_axis, &y_axis).unwrap();
        assert_eq!(o, Point::from_ints(0, 0));

        let ad = Line::through(Point::from_ints(0, 3), Point::from_ints(3, 0)).unwrap();
        let d = line_intersection(&ad, &x_axis).unwrap();
        assert_eq!(d, Point::from_ints(3, 0));

        let h1 = Line::through(Point::from_ints(0, 1), Point::from_ints(5, 1)).unwrap();
        let h2 = Line::through(Point::from_ints(0, 2), Point::from_ints(5, 2)).unwrap();
        assert_eq!(line_intersection(&h1, &h2).unwrap_err(), Error::ParallelLines);
    }

    #[test]
    fn near_parallel_floats_are_rejected() {
        let p = p53();
        let l1 = Line::through(
            Point::new(Scalar::approx_from_f64(0.0, p), Scalar::approx_from_f64(0.0, p)),
            Point::new(Scalar::approx_from_f64(1.0, p), Scalar::approx_from_f64(0.0, p)),
        )
        .unwrap();
        // Slope around 2^-52, below the 2^(-w+10) * scale^2 threshold.
        let l2 = Line::through(
            Point::new(Scalar::approx_from_f64(0.0, p), Scalar::approx_from_f64(1.0, p)),
            Point::new(
                Scalar::approx_from_f64(1.0, p),
                Scalar::approx_from_f64(1.0 + 2f64.powi(-52), p),
            ),
        )
        .unwrap();
        assert_eq!(line_intersection(&l1, &l2).unwrap_err(), Error::ParallelLines);
    }

    #[test]
    fn distance_point_to_line_examples() {
        let x_axis = Line::through(Point::from_ints(0, 0), Point::from_ints(1, 0)).unwrap();
        let d = distance_point_to_line(&Point::from_ints(0, 3), &x_axis, p53());
        assert_eq!(d, Scalar::from_int(3));
        let on = distance_point_to_line(&Point::from_ints(7, 0), &x_axis, p53());
        assert!(on.is_zero());
        let one = distance_point_to_line(&Point::from_ints(1, 1), &x_axis, p53());
        assert_eq!(one, Scalar::from_int(1));
    }

    #[test]
    fn vertex_angles() {
        let t = tri345();
        let right = t.vertex_angle(VB);
        assert!((right.to_f64() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        let at_a = t.vertex_angle(VA);
        assert!((at_a.to_f64() - (4.0f64 / 3.0).atan()).abs() < 1e-15);

        let sum = &(&t.vertex_angle(0) + &t.vertex_angle(1)) + &t.vertex_angle(2);
        let pi = Scalar::pi(p53());
        assert!((sum - pi).abs() <= p53().eps(3));
    }

    #[test]
    fn interiority_is_strict() {
        let t = tri345();
        let centroid = Point::new(Scalar::from_ratio(4, 3), Scalar::one());
        assert!(t.contains_strict(&centroid));
        assert!(!t.contains_strict(t.a()));
        // Edge midpoint of BC.
        assert!(!t.contains_strict(&Point::from_ints(2, 0)));
    }

    #[test]
    fn acute_detection() {
        assert!(!tri345().is_acute());
        let acute = Triangle::from_ints((0, 0), (8, 0), (3, 6), p53()).unwrap();
        assert!(acute.is_acute());
    }
}
