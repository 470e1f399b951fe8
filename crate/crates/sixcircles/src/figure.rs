//! Deterministic SVG rendering of cevian circle configurations.
//!
//! Figures re-validate tangency before drawing: they are the audit trail for
//! the labeling conventions, so a scene with an inconsistent circle refuses
//! to render rather than drawing something misleading.

use crate::catalog::{entry, CenterChoice, Constraint, Construction, IdentityId, Quant};
use crate::centers::{cevian_triad, CenterKind, CevianTriad};
use crate::circles::{
    excircle, incircle, six_circles_of, subdivide, tangency_residual, Circle, CircleFamily,
};
use crate::geom::{Point, Triangle};
use crate::scalar::{Prec, Scalar};
use crate::{Error, Result};
use std::fmt::Write as _;

/// Two-tone palette for mixed-family scenes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Palette {
    Yellow,
    Green,
}

impl Palette {
    fn fill(self) -> &'static str {
        match self {
            Palette::Yellow => "#e8c547",
            Palette::Green => "#5aa46c",
        }
    }
}

/// A renderable scene: host triangle, cevians, labeled circles.
#[derive(Debug, Clone)]
pub struct FigureScene {
    pub title: String,
    pub triangle: Triangle,
    /// Cevian segments, as (vertex, foot) pairs.
    pub cevians: Vec<(Point, Point)>,
    pub circles: Vec<(Circle, Palette, String)>,
    /// Extra marked point (the concurrency point), if any.
    pub marked: Option<Point>,
}

fn builtin_triangle(constraint: Constraint, prec: Prec) -> Result<Triangle> {
    match constraint {
        Constraint::Acute => Triangle::from_ints((0, 0), (8, 0), (3, 6), prec),
        Constraint::Unconstrained => Triangle::from_ints((0, 0), (9, 1), (3, 7), prec),
        Constraint::AngleB { num, den } => {
            let theta = Scalar::pi(prec) * Scalar::from_ratio(i64::from(num), i64::from(den));
            let u = Scalar::from_int(5);
            let a = Point::new(&u * &theta.cos(prec), &u * &theta.sin(prec));
            Triangle::new(a, Point::from_ints(0, 0), Point::from_ints(7, 0), prec)
        }
    }
}

fn triad_cevians(t: &Triangle, triad: &CevianTriad) -> Vec<(Point, Point)> {
    vec![
        (t.a().clone(), triad.d().clone()),
        (t.b().clone(), triad.e().clone()),
        (t.c().clone(), triad.f().clone()),
    ]
}

/// Builds the standard scene for an identity on its builtin triangle.
pub fn scene_for_identity(id: IdentityId, prec: Prec) -> Result<FigureScene> {
    let e = entry(id);
    let t = builtin_triangle(e.constraint, prec)?;
    let mut qs = Vec::new();
    e.lhs.quants(&mut qs);
    e.rhs.quants(&mut qs);
    let wants_in = qs.iter().any(|q| matches!(q, Quant::InR(_)));
    let wants_ex1 = qs.iter().any(|q| matches!(q, Quant::Ex1R(_)));
    let wants_ex2 = qs.iter().any(|q| matches!(q, Quant::Ex2R(_)));

    match e.construction {
        Construction::CenterTriad(choice) => {
            let kind = match choice {
                CenterChoice::Orthocenter => CenterKind::Orthocenter,
                CenterChoice::Centroid => CenterKind::Centroid,
                CenterChoice::Circumcenter => CenterKind::Circumcenter,
                CenterChoice::Incenter => CenterKind::Incenter,
                CenterChoice::Gergonne => CenterKind::Gergonne,
                CenterChoice::Nagel => CenterKind::Nagel,
                CenterChoice::GenericInterior => CenterKind::Centroid,
            };
            let triad = cevian_triad(&t, kind)?;
            let sub = subdivide(&t, &triad)?;
            let mut circles = Vec::new();
            let mixed = wants_in && wants_ex2;
            if wants_in {
                let set = six_circles_of(&sub, CircleFamily::Incircles)?;
                for i in 0..6 {
                    circles.push((
                        set.circle(i).clone(),
                        Palette::Yellow,
                        format!("r{}", i + 1),
                    ));
                }
            }
            if wants_ex1 {
                let set = six_circles_of(&sub, CircleFamily::ExcirclesConfig1)?;
                for i in 0..6 {
                    circles.push((
                        set.circle(i).clone(),
                        Palette::Yellow,
                        format!("r{}", i + 1),
                    ));
                }
            }
            if wants_ex2 {
                let set = six_circles_of(&sub, CircleFamily::ExcirclesConfig2)?;
                for i in 0..6 {
                    circles.push((
                        set.circle(i).clone(),
                        if mixed { Palette::Green } else { Palette::Yellow },
                        format!("{}{}", if mixed { "R" } else { "r" }, i + 1),
                    ));
                }
            }
            // Semiperimeter/area entries draw the bare subdivision.
            Ok(FigureScene {
                title: format!("{} ({})", id.name(), e.anchor),
                triangle: t.clone(),
                cevians: triad_cevians(&t, &triad),
                circles,
                marked: Some(triad.p().clone()),
            })
        }
        Construction::ContactCevian => {
            let (la, lb, _lc) = t.side_lengths();
            let s = t.semiperimeter();
            let d = t.b().lerp(t.c(), &(&(s - lb) / la));
            let abd = Triangle::new(t.b().clone(), d.clone(), t.a().clone(), prec)?;
            let acd = Triangle::new(d.clone(), t.c().clone(), t.a().clone(), prec)?;
            let circles = vec![
                (excircle(&abd, 2)?, Palette::Yellow, "r1".to_string()),
                (excircle(&acd, 2)?, Palette::Green, "r2".to_string()),
            ];
            Ok(FigureScene {
                title: format!("{} ({})", id.name(), e.anchor),
                triangle: t.clone(),
                cevians: vec![(t.a().clone(), d)],
                circles,
                marked: None,
            })
        }
        Construction::GenericCevian => {
            let triad = cevian_triad(&t, CenterKind::Centroid)?;
            let d = triad.d().clone();
            let abd = Triangle::new(t.b().clone(), d.clone(), t.a().clone(), prec)?;
            let acd = Triangle::new(d.clone(), t.c().clone(), t.a().clone(), prec)?;
            let circles = vec![
                (incircle(&abd)?, Palette::Yellow, "r1".to_string()),
                (incircle(&acd)?, Palette::Yellow, "r2".to_string()),
                (excircle(&abd, 2)?, Palette::Green, "r3".to_string()),
                (excircle(&acd, 2)?, Palette::Green, "r4".to_string()),
            ];
            Ok(FigureScene {
                title: format!("{} ({})", id.name(), e.anchor),
                triangle: t.clone(),
                cevians: vec![(t.a().clone(), d)],
                circles,
                marked: None,
            })
        }
    }
}

const SVG_WIDTH: f64 = 800.0;

/// Renders a scene as an SVG 1.1 document. Every circle must satisfy the
/// tangency contract at `1e-9 * scale`, otherwise rendering fails.
pub fn render_figure(scene: &FigureScene) -> Result<String> {
    let t = &scene.triangle;
    let scale = (0..3).map(|i| t.side_len(i).to_f64()).fold(0f64, f64::max);
    for (c, _, label) in &scene.circles {
        let res = tangency_residual(c).to_f64();
        if res.is_nan() || res > 1e-9 * scale {
            return Err(Error::ConstructionFailed(format!(
                "circle {label} tangency residual {res:.3e} exceeds 1e-9*scale"
            )));
        }
    }

    // Bounding box over vertices and circle extents.
    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    let mut feed = |x: f64, y: f64| {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    };
    for i in 0..3 {
        let v = t.vertex(i);
        feed(v.x.to_f64(), v.y.to_f64());
    }
    for (c, _, _) in &scene.circles {
        let (cx, cy) = (c.center().x.to_f64(), c.center().y.to_f64());
        let r = c.radius().to_f64();
        feed(cx - r, cy - r);
        feed(cx + r, cy + r);
    }
    let pad = 0.06 * (max_x - min_x).max(max_y - min_y);
    min_x -= pad;
    max_x += pad;
    min_y -= pad;
    max_y += pad;
    let k = SVG_WIDTH / (max_x - min_x);
    let height = (max_y - min_y) * k;
    let sx = |x: f64| (x - min_x) * k;
    let sy = |y: f64| (max_y - y) * k;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg version=\"1.1\" xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {:.4} {:.4}\">",
        SVG_WIDTH, height, SVG_WIDTH, height
    );
    let _ = writeln!(out, "  <title>{}</title>", scene.title);

    // Circles under the line work.
    for (c, palette, _) in &scene.circles {
        let (cx, cy) = (c.center().x.to_f64(), c.center().y.to_f64());
        let r = c.radius().to_f64();
        let _ = writeln!(
            out,
            "  <circle cx=\"{:.4}\" cy=\"{:.4}\" r=\"{:.4}\" fill=\"{}\" fill-opacity=\"0.38\" stroke=\"{}\" stroke-width=\"1.2\"/>",
            sx(cx),
            sy(cy),
            r * k,
            palette.fill(),
            palette.fill()
        );
    }

    // Host triangle.
    let _ = writeln!(
        out,
        "  <polygon points=\"{:.4},{:.4} {:.4},{:.4} {:.4},{:.4}\" fill=\"none\" stroke=\"#222222\" stroke-width=\"1.6\"/>",
        sx(t.a().x.to_f64()),
        sy(t.a().y.to_f64()),
        sx(t.b().x.to_f64()),
        sy(t.b().y.to_f64()),
        sx(t.c().x.to_f64()),
        sy(t.c().y.to_f64()),
    );

    // Cevians.
    for (v, g) in &scene.cevians {
        let _ = writeln!(
            out,
            "  <line x1=\"{:.4}\" y1=\"{:.4}\" x2=\"{:.4}\" y2=\"{:.4}\" stroke=\"#555555\" stroke-width=\"1.0\"/>",
            sx(v.x.to_f64()),
            sy(v.y.to_f64()),
            sx(g.x.to_f64()),
            sy(g.y.to_f64()),
        );
    }

    // Concurrency point.
    if let Some(p) = &scene.marked {
        let _ = writeln!(
            out,
            "  <circle cx=\"{:.4}\" cy=\"{:.4}\" r=\"3\" fill=\"#222222\"/>",
            sx(p.x.to_f64()),
            sy(p.y.to_f64())
        );
    }

    // Vertex labels.
    for (i, name) in ["A", "B", "C"].iter().enumerate() {
        let v = t.vertex(i);
        let _ = writeln!(
            out,
            "  <text x=\"{:.4}\" y=\"{:.4}\" font-size=\"16\" font-family=\"sans-serif\" fill=\"#222222\">{}</text>",
            sx(v.x.to_f64()) + 4.0,
            sy(v.y.to_f64()) - 4.0,
            name
        );
    }

    // Radius labels at circle centers.
    for (c, _, label) in &scene.circles {
        let _ = writeln!(
            out,
            "  <text x=\"{:.4}\" y=\"{:.4}\" font-size=\"12\" font-family=\"sans-serif\" text-anchor=\"middle\" fill=\"#222222\">{}</text>",
            sx(c.center().x.to_f64()),
            sy(c.center().y.to_f64()) + 4.0,
            label
        );
    }

    out.push_str("</svg>\n");
    Ok(out)
}

/// Builds and renders the figure for an identity.
pub fn figure_for_identity(id: IdentityId, prec: Prec) -> Result<String> {
    render_figure(&scene_for_identity(id, prec)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p53() -> Prec {
        Prec::DOUBLE
    }

    #[test]
    fn orthocenter_config1_scene_has_six_circles_touching_sides() {
        let svg = figure_for_identity(IdentityId::Thm2_1, p53()).unwrap();
        assert!(svg.starts_with("<svg version=\"1.1\""));
        // Six labeled circles plus the concurrency dot.
        assert_eq!(svg.matches("<circle").count(), 7);
        assert_eq!(svg.matches("</svg>").count(), 1);
        for i in 1..=6 {
            assert!(svg.contains(&format!(">r{i}</text>")));
        }
    }

    #[test]
    fn twelve_circle_scene_has_two_palette_classes() {
        let svg = figure_for_identity(IdentityId::Thm6_3, p53()).unwrap();
        // Twelve circles plus the marked point.
        assert_eq!(svg.matches("<circle").count(), 13);
        assert_eq!(svg.matches(Palette::Yellow.fill()).count(), 12); // fill+stroke per circle
        assert_eq!(svg.matches(Palette::Green.fill()).count(), 12);
        for i in 1..=6 {
            assert!(svg.contains(&format!(">r{i}</text>")));
            assert!(svg.contains(&format!(">R{i}</text>")));
        }
    }

    #[test]
    fn rendering_is_deterministic() {
        let a = figure_for_identity(IdentityId::Thm5_2, p53()).unwrap();
        let b = figure_for_identity(IdentityId::Thm5_2, p53()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn every_identity_is_drawable() {
        for e in crate::catalog::catalog() {
            let svg = figure_for_identity(e.id, p53());
            assert!(svg.is_ok(), "{}: {:?}", e.id, svg.err());
        }
    }

    #[test]
    fn inconsistent_circle_refuses_to_render() {
        let mut scene = scene_for_identity(IdentityId::Thm2_1, p53()).unwrap();
        let bad = scene.circles[0]
            .0
            .with_radius(scene.circles[0].0.radius() + &Scalar::from_ratio(1, 100));
        scene.circles[0].0 = bad;
        assert!(matches!(
            render_figure(&scene),
            Err(Error::ConstructionFailed(_))
        ));
    }
}
