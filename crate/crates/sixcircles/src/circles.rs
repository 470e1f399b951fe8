//! Incircles, excircles, the six-triangle cevian subdivision, and the three
//! six-circle families attached to it.
//!
//! Circle centers are found by solving the signed-distance equidistance
//! system: a circle tangent to the three side lines of a triangle satisfies
//! `signed_dist(center, line_i) = sign_i * radius` with all signs positive
//! for the incircle and the touched side negated for an excircle. This
//! generalizes uniformly to the subdivision triangles, whose vertex naming is
//! ad hoc. Radii also come out of the classical formulas `K/s` and
//! `K/(s - base)`; the two routes cross-validate each other.

use crate::centers::CevianTriad;
use crate::geom::{Line, Point, Triangle};
use crate::scalar::{Prec, Scalar};
use crate::{Error, Result};

/// Which six-circle family a set belongs to.
///
/// * `Incircles` — incircles of the six small triangles around `P`.
/// * `ExcirclesConfig1` — excircles of the six large cevian triangles
///   (segment plus opposite vertex), each touching its base segment.
/// * `ExcirclesConfig2` — excircles of the six small triangles opposite `P`,
///   each touching its base segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum CircleFamily {
    Incircles,
    ExcirclesConfig1,
    ExcirclesConfig2,
}

impl CircleFamily {
    pub fn name(self) -> &'static str {
        match self {
            CircleFamily::Incircles => "incircles",
            CircleFamily::ExcirclesConfig1 => "excircles-config-1",
            CircleFamily::ExcirclesConfig2 => "excircles-config-2",
        }
    }
}

/// A circle tangent to three lines.
#[derive(Debug, Clone)]
pub struct Circle {
    center: Point,
    radius: Scalar,
    tangent_lines: [Line; 3],
    /// Cached direction norms of the tangent lines (the member triangle's
    /// side lengths).
    line_norms: [Scalar; 3],
    prec: Prec,
}

impl Circle {
    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn radius(&self) -> &Scalar {
        &self.radius
    }

    pub fn tangent_lines(&self) -> &[Line; 3] {
        &self.tangent_lines
    }

    /// Perpendicular foot of the center on tangent line `i`; the tangency
    /// point when the construction is consistent.
    pub fn touch_point(&self, i: usize) -> Point {
        self.tangent_lines[i].foot(&self.center)
    }

    /// A copy with the radius perturbed; test/diagnostic helper.
    pub fn with_radius(&self, radius: Scalar) -> Circle {
        Circle {
            radius,
            ..self.clone()
        }
    }

    pub fn prec(&self) -> Prec {
        self.prec
    }
}

/// Max over the tangent lines of `|dist(center, line) - radius|`.
pub fn tangency_residual(c: &Circle) -> Scalar {
    let mut worst = Scalar::zero();
    for (line, norm) in c.tangent_lines().iter().zip(&c.line_norms) {
        // |d x (center - anchor)| / |d| with the cached direction norm.
        let (dx, dy) = line.dir();
        let rx = &c.center.x - &line.anchor().x;
        let ry = &c.center.y - &line.anchor().y;
        let num = (&(&dx * &ry) - &(&dy * &rx)).abs();
        let d = num / norm;
        let e = (&d - c.radius()).abs();
        worst = worst.max(e);
    }
    worst
}

/// Inradius `K / s`.
pub fn inradius(t: &Triangle) -> Scalar {
    t.area().abs() / t.semiperimeter()
}

/// Exradius of the excircle touching the side opposite vertex `side`:
/// `K / (s - len(side))`.
pub fn exradius(t: &Triangle, side: usize) -> Scalar {
    t.area().abs() / &(t.semiperimeter() - t.side_len(side))
}

/// Incircle by the signed-distance solve (all signs positive).
pub fn incircle(t: &Triangle) -> Result<Circle> {
    tangent_circle(t, [1, 1, 1])
}

/// Excircle touching the side opposite vertex `side` (negative sign on the
/// touched side, positive on the other two).
pub fn excircle(t: &Triangle, side: usize) -> Result<Circle> {
    let mut signs = [1i8, 1, 1];
    signs[side] = -1;
    tangent_circle(t, signs)
}

/// Solves for the circle with `signed_dist(X, side_i) = signs[i] * rho`.
///
/// Side lines are directed along the CCW boundary, so the interior is their
/// positive side. The 3x3 linear system is solved by Cramer's rule in the
/// scalars' own profile (lengths make it APPROX in practice).
fn tangent_circle(t: &Triangle, signs: [i8; 3]) -> Result<Circle> {
    let lines = [t.side_line(0), t.side_line(1), t.side_line(2)];
    // Row i: -d_iy * x + d_ix * y - sign_i * L_i * rho = cross(d_i, u_i)
    let mut cols: [Vec<Scalar>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    let mut rhs = Vec::with_capacity(3);
    for (i, line) in lines.iter().enumerate() {
        let (dx, dy) = line.dir();
        let u = line.anchor();
        let li = t.side_len(i);
        rhs.push(&(&dx * &u.y) - &(&dy * &u.x));
        cols[0].push(-&dy);
        cols[1].push(dx);
        cols[2].push(if signs[i] < 0 { li.clone() } else { -li });
    }
    let det = det3(&cols[0], &cols[1], &cols[2]);
    if det.is_zero() {
        return Err(Error::DegenerateTriangle);
    }
    let x = det3(&rhs, &cols[1], &cols[2]) / &det;
    let y = det3(&cols[0], &rhs, &cols[2]) / &det;
    let rho = det3(&cols[0], &cols[1], &rhs) / &det;
    if !rho.is_positive() {
        return Err(Error::DegenerateTriangle);
    }
    Ok(Circle {
        center: Point::new(x, y),
        radius: rho,
        tangent_lines: lines,
        line_norms: [
            t.side_len(0).clone(),
            t.side_len(1).clone(),
            t.side_len(2).clone(),
        ],
        prec: t.prec(),
    })
}

/// Determinant of the matrix with columns `c0, c1, c2`.
fn det3(c0: &[Scalar], c1: &[Scalar], c2: &[Scalar]) -> Scalar {
    let m0 = &(&c1[1] * &c2[2]) - &(&c1[2] * &c2[1]);
    let m1 = &(&c1[0] * &c2[2]) - &(&c1[2] * &c2[0]);
    let m2 = &(&c1[0] * &c2[1]) - &(&c1[1] * &c2[0]);
    &(&(&c0[0] * &m0) - &(&c0[1] * &m1)) + &(&c0[2] * &m2)
}

/// The six-triangle subdivision induced by a cevian triad, with the six
/// labeled base segments.
///
/// Segments are numbered 1..=6 in boundary order `BD, DC, CE, EA, AF, FB`
/// (stored at indices 0..6). Small triangle `i` is the segment together with
/// `P`; large triangle `i` is the segment together with the opposite vertex
/// of the host.
#[derive(Debug, Clone)]
pub struct Subdivision {
    triad: CevianTriad,
    small: [Triangle; 6],
    large: [Triangle; 6],
    seg_len: [Scalar; 6],
    seg_ends: [(Point, Point); 6],
}

impl Subdivision {
    pub fn triad(&self) -> &CevianTriad {
        &self.triad
    }

    /// Small triangle for segment `i` (0-based label).
    pub fn small(&self, i: usize) -> &Triangle {
        &self.small[i]
    }

    /// Large triangle for segment `i` (0-based label).
    pub fn large(&self, i: usize) -> &Triangle {
        &self.large[i]
    }

    /// Length of base segment `i`.
    pub fn seg_len(&self, i: usize) -> &Scalar {
        &self.seg_len[i]
    }

    /// Endpoints of base segment `i`, in boundary order.
    pub fn seg_ends(&self, i: usize) -> &(Point, Point) {
        &self.seg_ends[i]
    }

    /// Human-readable segment labels in index order.
    pub const SEG_NAMES: [&'static str; 6] = ["BD", "DC", "CE", "EA", "AF", "FB"];
}

/// Cuts the host triangle of `triad` into its six small and six large
/// triangles. Each distinct length (segment, spoke to `P`, cevian, host
/// side) is computed once and shared between the member triangles.
pub fn subdivide(t: &Triangle, triad: &CevianTriad) -> Result<Subdivision> {
    let prec = t.prec();
    let p = triad.p().clone();
    let (a, b, c) = (t.a().clone(), t.b().clone(), t.c().clone());
    let (d, e, f) = (triad.d().clone(), triad.e().clone(), triad.f().clone());

    // Boundary order around the triangle: B -> D -> C -> E -> A -> F -> B.
    let ring = [&b, &d, &c, &e, &a, &f];
    let ends: [(Point, Point); 6] = std::array::from_fn(|i| {
        (ring[i].clone(), ring[(i + 1) % 6].clone())
    });
    let seg_len: [Scalar; 6] = std::array::from_fn(|i| ring[i].distance(ring[(i + 1) % 6], prec));
    let spoke: [Scalar; 6] = std::array::from_fn(|i| ring[i].distance(&p, prec));
    let cev = [
        a.distance(&d, prec),
        b.distance(&e, prec),
        c.distance(&f, prec),
    ];
    let host = |i: usize| t.side_len(i).clone();
    // Large triangle i = (ring[i], ring[i+1], opposite host vertex); its
    // sides opposite vertices 0 and 1 alternate cevian/host lengths.
    let opposite = [&a, &a, &b, &b, &c, &c];
    let large_len: [[Scalar; 3]; 6] = [
        [cev[0].clone(), host(2), seg_len[0].clone()],
        [host(1), cev[0].clone(), seg_len[1].clone()],
        [cev[1].clone(), host(0), seg_len[2].clone()],
        [host(2), cev[1].clone(), seg_len[3].clone()],
        [cev[2].clone(), host(1), seg_len[4].clone()],
        [host(0), cev[2].clone(), seg_len[5].clone()],
    ];

    let mut small = Vec::with_capacity(6);
    let mut large = Vec::with_capacity(6);
    for (i, (s0, s1)) in ends.iter().enumerate() {
        small.push(Triangle::from_parts(
            s0.clone(),
            s1.clone(),
            p.clone(),
            [
                spoke[(i + 1) % 6].clone(),
                spoke[i].clone(),
                seg_len[i].clone(),
            ],
            prec,
        )?);
        large.push(Triangle::from_parts(
            s0.clone(),
            s1.clone(),
            opposite[i].clone(),
            large_len[i].clone(),
            prec,
        )?);
    }

    Ok(Subdivision {
        triad: triad.clone(),
        small: small.try_into().expect("six small triangles"),
        large: large.try_into().expect("six large triangles"),
        seg_len,
        seg_ends: ends,
    })
}

/// One of the three families of six circles over a subdivision, with both
/// the formula radii and the geometrically constructed circles.
#[derive(Debug, Clone)]
pub struct SixCircleSet {
    family: CircleFamily,
    radii: [Scalar; 6],
    circles: [Circle; 6],
}

impl SixCircleSet {
    pub fn family(&self) -> CircleFamily {
        self.family
    }

    /// Formula radius of circle `i` (0-based label): `K_i/s_i` for
    /// incircles, `K_i/(s_i - base_i)` for the excircle families.
    pub fn radius(&self, i: usize) -> &Scalar {
        &self.radii[i]
    }

    pub fn radii(&self) -> &[Scalar; 6] {
        &self.radii
    }

    pub fn circle(&self, i: usize) -> &Circle {
        &self.circles[i]
    }
}

/// Builds the six circles of `family` over an existing subdivision.
///
/// In every family circle `i` touches base segment `i`: the member triangles
/// are built as (segment start, segment end, apex), so the base is always
/// the side opposite vertex 2.
pub fn six_circles_of(sub: &Subdivision, family: CircleFamily) -> Result<SixCircleSet> {
    let mut radii = Vec::with_capacity(6);
    let mut circles = Vec::with_capacity(6);
    for i in 0..6 {
        let (member, circ) = match family {
            CircleFamily::Incircles => {
                let m = sub.small(i);
                (m, incircle(m)?)
            }
            CircleFamily::ExcirclesConfig1 => {
                let m = sub.large(i);
                (m, excircle(m, 2)?)
            }
            CircleFamily::ExcirclesConfig2 => {
                let m = sub.small(i);
                (m, excircle(m, 2)?)
            }
        };
        let r = match family {
            CircleFamily::Incircles => inradius(member),
            _ => exradius(member, 2),
        };
        radii.push(r);
        circles.push(circ);
    }
    Ok(SixCircleSet {
        family,
        radii: radii.try_into().expect("six radii"),
        circles: circles.try_into().expect("six circles"),
    })
}

/// Convenience wrapper: subdivide and build one family.
pub fn six_circles(
    t: &Triangle,
    triad: &CevianTriad,
    family: CircleFamily,
) -> Result<SixCircleSet> {
    let sub = subdivide(t, triad)?;
    six_circles_of(&sub, family)
}

/// Validation outcome for one circle set: worst tangency residual relative
/// to the configuration scale, worst disagreement between formula radii and
/// constructed radii, and whether every tangency point lies strictly inside
/// its labeled segment.
#[derive(Debug, Clone)]
pub struct SetValidation {
    pub max_tangency_rel: f64,
    pub max_radius_disagreement_rel: f64,
    pub containment_ok: bool,
}

/// Validates a six-circle set against its subdivision: tangency residuals,
/// formula-vs-construction radius agreement, and containment of each
/// tangency point inside its labeled segment.
pub fn validate_set(sub: &Subdivision, set: &SixCircleSet) -> SetValidation {
    let scale = configuration_scale(sub);
    let mut max_t = 0f64;
    let mut max_r = 0f64;
    let mut containment_ok = true;
    for i in 0..6 {
        let c = set.circle(i);
        let t_res = tangency_residual(c).to_f64() / scale;
        max_t = max_t.max(t_res);
        let r_rel = Scalar::rel_residual(set.radius(i), c.radius()).to_f64();
        max_r = max_r.max(r_rel);
        // The base of each member triangle is the side opposite vertex 2,
        // which is tangent line index 2 under `side_line`.
        let touch = c.touch_point(2);
        let (s0, s1) = sub.seg_ends(i);
        let seg = Line::through(s0.clone(), s1.clone()).expect("segment endpoints distinct");
        // Fast float parameter first; only decide near-boundary cases with
        // the exact rational projection.
        let t_fast = seg.project_param_scalar(&touch).to_f64();
        let inside = if (1e-6..=1.0 - 1e-6).contains(&t_fast) {
            true
        } else {
            let param = seg.project_param(&touch);
            param > 0 && param < 1
        };
        if !inside {
            containment_ok = false;
        }
    }
    SetValidation {
        max_tangency_rel: max_t,
        max_radius_disagreement_rel: max_r,
        containment_ok,
    }
}

/// Scale of a configuration: the largest host side length.
pub fn configuration_scale(sub: &Subdivision) -> f64 {
    let t = sub.triad().host();
    (0..3)
        .map(|i| t.side_len(i).to_f64())
        .fold(0f64, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centers::{cevian_triad, CenterKind};

    fn p53() -> Prec {
        Prec::DOUBLE
    }

    fn tri345() -> Triangle {
        Triangle::from_ints((0, 3), (0, 0), (4, 0), p53()).unwrap()
    }

    #[test]
    fn inradius_spot_values() {
        // Sides (3,4,5): K = 6, s = 6, r = 1.
        assert_eq!(inradius(&tri345()), Scalar::one());
        // Equilateral with side 2*sqrt(3): r = 1 (Heron oracle).
        let h = Scalar::from_int(3).sqrt(p53()); // height 3, half-side sqrt(3)
        let t = Triangle::new(
            Point::new(Scalar::zero(), Scalar::from_int(3)),
            Point::new(-&h, Scalar::zero()),
            Point::new(h, Scalar::zero()),
            p53(),
        )
        .unwrap();
        assert!((inradius(&t).to_f64() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn inradius_scales_linearly() {
        let t = tri345();
        let lam = Scalar::from_ratio(7, 3);
        let scaled = Triangle::new(
            Point::new(&t.a().x * &lam, &t.a().y * &lam),
            Point::new(&t.b().x * &lam, &t.b().y * &lam),
            Point::new(&t.c().x * &lam, &t.c().y * &lam),
            p53(),
        )
        .unwrap();
        let expect = inradius(&t) * &lam;
        assert!((inradius(&scaled).to_f64() - expect.to_f64()).abs() < 1e-14);
    }

    #[test]
    fn exradius_spot_values() {
        let t = tri345();
        // K = 6, s = 6. Touching |BC| = 4 -> 3; |CA| = 5 -> 6; |AB| = 3 -> 2.
        assert_eq!(exradius(&t, 0), Scalar::from_int(3));
        assert_eq!(exradius(&t, 1), Scalar::from_int(6));
        assert_eq!(exradius(&t, 2), Scalar::from_int(2));
    }

    #[test]
    fn incircle_center_and_radius() {
        let c = incircle(&tri345()).unwrap();
        assert!((c.center().x.to_f64() - 1.0).abs() < 1e-14);
        assert!((c.center().y.to_f64() - 1.0).abs() < 1e-14);
        assert!((c.radius().to_f64() - 1.0).abs() < 1e-14);
        assert!(tangency_residual(&c).to_f64() <= 1e-14);
    }

    #[test]
    fn excircle_center_and_radius() {
        // Excircle touching BC of the (0,3),(0,0),(4,0) triangle:
        // center (3, -3), radius 3.
        let t = tri345();
        let c = excircle(&t, 0).unwrap();
        assert!((c.center().x.to_f64() - 3.0).abs() < 1e-13);
        assert!((c.center().y.to_f64() + 3.0).abs() < 1e-13);
        assert!((c.radius().to_f64() - 3.0).abs() < 1e-13);
        assert!(tangency_residual(&c).to_f64() <= 1e-12);
        // Formula and construction agree.
        assert!(
            Scalar::rel_residual(c.radius(), &exradius(&t, 0)).to_f64() <= 1e-13
        );
    }

    #[test]
    fn excircle_barycentric_oracle() {
        // Independent oracle: excenter opposite vertex 0 in f64 barycentrics
        // (-a*A + b*B + c*C) / (-a + b + c).
        let t = Triangle::from_ints((1, 1), (9, 2), (4, 7), p53()).unwrap();
        let (a, b, c) = (
            t.side_len(0).to_f64(),
            t.side_len(1).to_f64(),
            t.side_len(2).to_f64(),
        );
        let (pa, pb, pc) = (t.a(), t.b(), t.c());
        let den = -a + b + c;
        let ex = (
            (-a * pa.x.to_f64() + b * pb.x.to_f64() + c * pc.x.to_f64()) / den,
            (-a * pa.y.to_f64() + b * pb.y.to_f64() + c * pc.y.to_f64()) / den,
        );
        let circ = excircle(&t, 0).unwrap();
        assert!((circ.center().x.to_f64() - ex.0).abs() < 1e-10);
        assert!((circ.center().y.to_f64() - ex.1).abs() < 1e-10);
    }

    #[test]
    fn mirrored_triangle_has_same_radii() {
        // Reflection swaps the stored vertex order (CCW normalization), so
        // compare the exradius multisets.
        let t = tri345();
        let m = Triangle::from_ints((0, 3), (0, 0), (-4, 0), p53()).unwrap();
        assert_eq!(inradius(&t), inradius(&m));
        let mut rt: Vec<f64> = (0..3).map(|s| exradius(&t, s).to_f64()).collect();
        let mut rm: Vec<f64> = (0..3).map(|s| exradius(&m, s).to_f64()).collect();
        rt.sort_by(f64::total_cmp);
        rm.sort_by(f64::total_cmp);
        assert_eq!(rt, rm);
    }

    #[test]
    fn perturbed_radius_shows_in_residual() {
        let c = incircle(&tri345()).unwrap();
        let bumped = c.with_radius(c.radius() + &Scalar::from_ratio(1, 1000));
        let res = tangency_residual(&bumped).to_f64();
        assert!((res - 1e-3).abs() < 1e-9);
    }

    #[test]
    fn exact_profile_circle_has_zero_residual() {
        // All lengths of the (3,4,5) construction are dyadic-exact, so the
        // solve is exact and the residual is exactly zero.
        let c = incircle(&tri345()).unwrap();
        assert!(tangency_residual(&c).is_zero());
    }

    #[test]
    fn centroid_subdivision_has_equal_small_areas() {
        let t = tri345();
        let triad = cevian_triad(&t, CenterKind::Centroid).unwrap();
        let sub = subdivide(&t, &triad).unwrap();
        let sixth = t.area_exact() / rug::Rational::from(6);
        for i in 0..6 {
            assert_eq!(sub.small(i).area_exact(), sixth, "small {i}");
        }
    }

    #[test]
    fn small_areas_partition_the_host() {
        let t = Triangle::from_ints((0, 0), (9, 1), (3, 7), p53()).unwrap();
        let triad = cevian_triad(&t, CenterKind::Centroid).unwrap();
        let sub = subdivide(&t, &triad).unwrap();
        let total: rug::Rational = (0..6).map(|i| sub.small(i).area_exact()).sum();
        assert_eq!(total, t.area_exact());
    }

    #[test]
    fn centroid_large_semiperimeter_alternating_sum_vanishes() {
        let t = tri345();
        let triad = cevian_triad(&t, CenterKind::Centroid).unwrap();
        let sub = subdivide(&t, &triad).unwrap();
        let odd = &(sub.large(0).semiperimeter() + sub.large(2).semiperimeter())
            + sub.large(4).semiperimeter();
        let even = &(sub.large(1).semiperimeter() + sub.large(3).semiperimeter())
            + sub.large(5).semiperimeter();
        let diff = (odd - even).abs();
        assert!(diff <= p53().eps(6) * t.semiperimeter());
    }

    #[test]
    fn opposite_small_triangles_share_vertical_angles() {
        let t = Triangle::from_ints((0, 0), (9, 1), (3, 7), p53()).unwrap();
        let triad = cevian_triad(&t, CenterKind::Centroid).unwrap();
        let sub = subdivide(&t, &triad).unwrap();
        for (i, j) in [(0, 3), (1, 4), (2, 5)] {
            // Vertex 2 of each small triangle is P.
            let ai = sub.small(i).vertex_angle(2).to_f64();
            let aj = sub.small(j).vertex_angle(2).to_f64();
            assert!((ai - aj).abs() < 1e-13, "pair ({i},{j})");
        }
    }

    #[test]
    fn config1_centroid_spot_radius() {
        // r1 for the centroid of (0,3),(0,0),(4,0), config 1: the excircle
        // of (B, D, A) touching BD with D = (2,0): r = 6 / (1 + sqrt(13)).
        let t = tri345();
        let triad = cevian_triad(&t, CenterKind::Centroid).unwrap();
        let sub = subdivide(&t, &triad).unwrap();
        let set = six_circles_of(&sub, CircleFamily::ExcirclesConfig1).unwrap();
        let expect = 6.0 / (1.0 + 13f64.sqrt());
        assert!((set.radius(0).to_f64() - expect).abs() < 1e-12);
        assert!(
            Scalar::rel_residual(set.radius(0), set.circle(0).radius()).to_f64() < 1e-12
        );
    }

    #[test]
    fn all_families_validate_on_a_generic_triangle() {
        let t = Triangle::from_ints((0, 0), (9, 1), (3, 7), p53()).unwrap();
        let triad = cevian_triad(&t, CenterKind::Centroid).unwrap();
        let sub = subdivide(&t, &triad).unwrap();
        for family in [
            CircleFamily::Incircles,
            CircleFamily::ExcirclesConfig1,
            CircleFamily::ExcirclesConfig2,
        ] {
            let set = six_circles_of(&sub, family).unwrap();
            let v = validate_set(&sub, &set);
            assert!(v.max_tangency_rel <= 1e-12, "{family:?} tangency");
            assert!(v.max_radius_disagreement_rel <= 1e-12, "{family:?} radii");
            assert!(v.containment_ok, "{family:?} containment");
        }
    }

    #[test]
    fn equilateral_with_centroid_has_equal_radii() {
        let h = Scalar::from_int(3).sqrt(p53()) / Scalar::from_int(2);
        let t = Triangle::new(
            Point::new(Scalar::from_ratio(1, 2), h),
            Point::from_ints(0, 0),
            Point::from_ints(1, 0),
            p53(),
        )
        .unwrap();
        let triad = cevian_triad(&t, CenterKind::Centroid).unwrap();
        let sub = subdivide(&t, &triad).unwrap();
        for family in [
            CircleFamily::Incircles,
            CircleFamily::ExcirclesConfig1,
            CircleFamily::ExcirclesConfig2,
        ] {
            let set = six_circles_of(&sub, family).unwrap();
            let r0 = set.radius(0).to_f64();
            for i in 1..6 {
                assert!(
                    (set.radius(i).to_f64() - r0).abs() <= 1e-15 * r0,
                    "{family:?} radius {i}"
                );
            }
        }
    }
}
