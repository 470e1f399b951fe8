//! The identity catalog: a data-driven registry of every verified relation,
//! each evaluated on a triangle to produce an [`IdentityReport`].
//!
//! Entries pair an expression tree over the subdivision quantities (radii of
//! the three circle families, semiperimeters, areas, segment lengths,
//! half-angle cosines) with the center, circle family and triangle constraint
//! they require. One entry, `NEG_CONTROL`, is deliberately false and keeps
//! the harness honest.

use crate::centers::{cevian_triad, CenterKind};
use crate::circles::{
    excircle, exradius, incircle, inradius, six_circles_of, subdivide, validate_set, Circle,
    CircleFamily, SetValidation, Subdivision,
};
use crate::geom::{Point, Triangle, VB};
use crate::scalar::{Prec, Scalar};
use crate::{Error, Result};
use std::fmt;
use std::sync::OnceLock;

/// Identifier of one catalog identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum IdentityId {
    Thm2_1,
    Thm2_2,
    Lem3_1,
    Thm3_1,
    Thm3_2,
    Lem4_1,
    Thm4_1,
    Lem5_1,
    Lem5_2,
    Thm5_1,
    Lem5_3,
    Thm5_2,
    Thm6_2,
    Thm6_3,
    Cons6_2,
    Thm7_1,
    Thm7_2,
    Thm8_1,
    Thm8_2,
    Thm8_3,
    Thm8_4,
    NegControl,
}

impl IdentityId {
    pub const ALL: [IdentityId; 22] = [
        IdentityId::Thm2_1,
        IdentityId::Thm2_2,
        IdentityId::Lem3_1,
        IdentityId::Thm3_1,
        IdentityId::Thm3_2,
        IdentityId::Lem4_1,
        IdentityId::Thm4_1,
        IdentityId::Lem5_1,
        IdentityId::Lem5_2,
        IdentityId::Thm5_1,
        IdentityId::Lem5_3,
        IdentityId::Thm5_2,
        IdentityId::Thm6_2,
        IdentityId::Thm6_3,
        IdentityId::Cons6_2,
        IdentityId::Thm7_1,
        IdentityId::Thm7_2,
        IdentityId::Thm8_1,
        IdentityId::Thm8_2,
        IdentityId::Thm8_3,
        IdentityId::Thm8_4,
        IdentityId::NegControl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Thm2_1 => "THM_2_1",
            IdentityId::Thm2_2 => "THM_2_2",
            IdentityId::Lem3_1 => "LEM_3_1",
            IdentityId::Thm3_1 => "THM_3_1",
            IdentityId::Thm3_2 => "THM_3_2",
            IdentityId::Lem4_1 => "LEM_4_1",
            IdentityId::Thm4_1 => "THM_4_1",
            IdentityId::Lem5_1 => "LEM_5_1",
            IdentityId::Lem5_2 => "LEM_5_2",
            IdentityId::Thm5_1 => "THM_5_1",
            IdentityId::Lem5_3 => "LEM_5_3",
            IdentityId::Thm5_2 => "THM_5_2",
            IdentityId::Thm6_2 => "THM_6_2",
            IdentityId::Thm6_3 => "THM_6_3",
            IdentityId::Cons6_2 => "CONS_6_2",
            IdentityId::Thm7_1 => "THM_7_1",
            IdentityId::Thm7_2 => "THM_7_2",
            IdentityId::Thm8_1 => "THM_8_1",
            IdentityId::Thm8_2 => "THM_8_2",
            IdentityId::Thm8_3 => "THM_8_3",
            IdentityId::Thm8_4 => "THM_8_4",
            IdentityId::NegControl => "NEG_CONTROL",
        }
    }

    pub fn from_name(name: &str) -> Result<IdentityId> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == name)
            .ok_or_else(|| Error::UnknownIdentity(name.to_string()))
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A quantity an expression can reference. Indexed quantities use 0-based
/// labels 0..6 for the boundary segments `BD, DC, CE, EA, AF, FB`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quant {
    /// Incircle radius of small triangle `i`.
    InR(usize),
    /// Radius of the config-1 excircle (large triangle `i`, touching segment `i`).
    Ex1R(usize),
    /// Radius of the config-2 excircle (small triangle `i`, touching segment `i`).
    Ex2R(usize),
    /// Semiperimeter of small triangle `i`.
    SmallS(usize),
    /// Semiperimeter of large triangle `i`.
    LargeS(usize),
    /// Area of small triangle `i`.
    SmallK(usize),
    /// Length of segment `i`.
    Seg(usize),
    /// Cosine of half the interior angle at host vertex `v` (0 = A, 1 = B, 2 = C).
    CosHalf(usize),
    /// Incircle radii of the two cevian halves `ABD`, `ACD` (generic cevian).
    QuadIn(usize),
    /// Excircle radii of `ABD` touching `BD` and `ACD` touching `DC`.
    QuadEx(usize),
    /// Excircle radii for the incircle-contact cevian (`ABD`/`ADC`).
    ContactEx(usize),
    /// Base split lengths `BD`, `DC` for the incircle-contact cevian.
    ContactSeg(usize),
}

/// Expression tree over [`Quant`] values.
#[derive(Debug, Clone)]
pub enum Expr {
    Q(Quant),
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Recip(Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn quants(&self, out: &mut Vec<Quant>) {
        match self {
            Expr::Q(q) => out.push(*q),
            Expr::Sum(v) | Expr::Prod(v) => v.iter().for_each(|e| e.quants(out)),
            Expr::Sub(a, b) | Expr::Div(a, b) => {
                a.quants(out);
                b.quants(out);
            }
            Expr::Recip(a) => a.quants(out),
        }
    }
}

/// Triangle-shape constraint an identity requires.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    Unconstrained,
    Acute,
    /// Interior angle at vertex `B` equal to `pi * num / den`.
    AngleB { num: u32, den: u32 },
}

impl Constraint {
    pub fn label(self) -> String {
        match self {
            Constraint::Unconstrained => "none".into(),
            Constraint::Acute => "acute".into(),
            Constraint::AngleB { num, den } => format!("angle_b={}pi/{}", num, den),
        }
    }
}

/// How the cevian configuration of an entry is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    /// Cevians through a named center (or any interior point).
    CenterTriad(CenterChoice),
    /// Single cevian `AD` to the incircle contact point on `BC`.
    ContactCevian,
    /// Single cevian `AD` through an arbitrary interior point.
    GenericCevian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CenterChoice {
    Orthocenter,
    Centroid,
    Circumcenter,
    Incenter,
    Gergonne,
    Nagel,
    /// Any strictly interior point; supplied per evaluation.
    GenericInterior,
}

impl CenterChoice {
    pub fn label(self) -> &'static str {
        match self {
            CenterChoice::Orthocenter => "orthocenter",
            CenterChoice::Centroid => "centroid",
            CenterChoice::Circumcenter => "circumcenter",
            CenterChoice::Incenter => "incenter",
            CenterChoice::Gergonne => "gergonne",
            CenterChoice::Nagel => "nagel",
            CenterChoice::GenericInterior => "any interior point",
        }
    }
}

/// One catalog entry.
#[derive(Debug, Clone)]
pub struct Entry {
    pub id: IdentityId,
    /// Theorem or lemma label the identity corresponds to.
    pub anchor: &'static str,
    pub constraint: Constraint,
    pub construction: Construction,
    pub family_label: &'static str,
    pub lhs: Expr,
    pub rhs: Expr,
    /// Deliberately false control entry.
    pub negative: bool,
}

impl Entry {
    /// Whether the expressions reference the six indexed quantities (and the
    /// entry therefore supports permutation search).
    pub fn indexed(&self) -> bool {
        let mut qs = Vec::new();
        self.lhs.quants(&mut qs);
        self.rhs.quants(&mut qs);
        qs.iter().any(|q| {
            matches!(
                q,
                Quant::InR(_)
                    | Quant::Ex1R(_)
                    | Quant::Ex2R(_)
                    | Quant::SmallS(_)
                    | Quant::LargeS(_)
                    | Quant::SmallK(_)
                    | Quant::Seg(_)
            )
        })
    }

    /// Human-readable equation, e.g. `r1*r3*r5 = r2*r4*r6`.
    pub fn statement(&self) -> String {
        let mixed = {
            let mut qs = Vec::new();
            self.lhs.quants(&mut qs);
            self.rhs.quants(&mut qs);
            qs.iter().any(|q| matches!(q, Quant::InR(_)))
                && qs.iter().any(|q| matches!(q, Quant::Ex2R(_)))
        };
        format!(
            "{} = {}",
            render_expr(&self.lhs, mixed),
            render_expr(&self.rhs, mixed)
        )
    }

    pub fn center_label(&self) -> String {
        match self.construction {
            Construction::CenterTriad(c) => c.label().to_string(),
            Construction::ContactCevian => "incircle-contact cevian".to_string(),
            Construction::GenericCevian => "any cevian".to_string(),
        }
    }
}

fn render_expr(e: &Expr, mixed: bool) -> String {
    match e {
        Expr::Q(q) => render_quant(*q, mixed),
        Expr::Sum(v) => v
            .iter()
            .map(|e| render_expr(e, mixed))
            .collect::<Vec<_>>()
            .join(" + "),
        Expr::Prod(v) => v
            .iter()
            .map(|e| match e {
                Expr::Sub(..) | Expr::Sum(..) => format!("({})", render_expr(e, mixed)),
                _ => render_expr(e, mixed),
            })
            .collect::<Vec<_>>()
            .join("*"),
        Expr::Sub(a, b) => format!("{} - {}", render_expr(a, mixed), render_expr(b, mixed)),
        Expr::Recip(a) => format!("1/{}", render_expr(a, mixed)),
        Expr::Div(a, b) => format!("{}/{}", render_expr(a, mixed), render_expr(b, mixed)),
    }
}

fn render_quant(q: Quant, mixed: bool) -> String {
    const SEG: [&str; 6] = ["BD", "DC", "CE", "EA", "AF", "FB"];
    const VTX: [&str; 3] = ["A", "B", "C"];
    match q {
        Quant::InR(i) => format!("r{}", i + 1),
        Quant::Ex1R(i) => format!("r{}", i + 1),
        Quant::Ex2R(i) => {
            if mixed {
                format!("R{}", i + 1)
            } else {
                format!("r{}", i + 1)
            }
        }
        Quant::SmallS(i) | Quant::LargeS(i) => format!("s{}", i + 1),
        Quant::SmallK(i) => format!("K{}", i + 1),
        Quant::Seg(i) => SEG[i].to_string(),
        Quant::CosHalf(v) => format!("cos({}/2)", VTX[v]),
        Quant::QuadIn(i) => format!("r{}", i),
        Quant::QuadEx(i) => format!("r{}", i),
        Quant::ContactEx(i) => format!("r{}", i),
        Quant::ContactSeg(i) => if i == 1 { "BD" } else { "DC" }.to_string(),
    }
}

fn q(v: Quant) -> Expr {
    Expr::Q(v)
}

fn recip(v: Quant) -> Expr {
    Expr::Recip(Box::new(q(v)))
}

fn prod3(f: impl Fn(usize) -> Quant, idx: [usize; 3]) -> Expr {
    Expr::Prod(idx.iter().map(|&i| q(f(i))).collect())
}

fn recip_sum(f: impl Fn(usize) -> Quant, idx: &[usize]) -> Expr {
    Expr::Sum(idx.iter().map(|&i| recip(f(i))).collect())
}

/// The full identity catalog, in presentation order.
pub fn catalog() -> &'static [Entry] {
    static CATALOG: OnceLock<Vec<Entry>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

pub fn entry(id: IdentityId) -> &'static Entry {
    catalog()
        .iter()
        .find(|e| e.id == id)
        .expect("catalog covers all ids")
}

fn build_catalog() -> Vec<Entry> {
    use CenterChoice::*;
    use Construction::*;
    use IdentityId::*;

    let odd = [0usize, 2, 4];
    let even = [1usize, 3, 5];
    let mut entries = Vec::new();

    entries.push(Entry {
        id: Thm2_1,
        anchor: "Theorem 2.1",
        constraint: Constraint::Acute,
        construction: CenterTriad(Orthocenter),
        family_label: "excircles config 1",
        lhs: prod3(Quant::Ex1R, odd),
        rhs: prod3(Quant::Ex1R, even),
        negative: false,
    });
    entries.push(Entry {
        id: Thm2_2,
        anchor: "Theorem 2.2",
        constraint: Constraint::Acute,
        construction: CenterTriad(Orthocenter),
        family_label: "excircles config 2",
        lhs: prod3(Quant::Ex2R, odd),
        rhs: prod3(Quant::Ex2R, even),
        negative: false,
    });
    entries.push(Entry {
        id: Lem3_1,
        anchor: "Lemma 3.1",
        constraint: Constraint::Unconstrained,
        construction: CenterTriad(Centroid),
        family_label: "large-triangle semiperimeters",
        lhs: Expr::Sum(odd.iter().map(|&i| q(Quant::LargeS(i))).collect()),
        rhs: Expr::Sum(even.iter().map(|&i| q(Quant::LargeS(i))).collect()),
        negative: false,
    });
    entries.push(Entry {
        id: Thm3_1,
        anchor: "Theorem 3.1",
        constraint: Constraint::Unconstrained,
        construction: CenterTriad(Centroid),
        family_label: "excircles config 1",
        lhs: recip_sum(Quant::Ex1R, &odd),
        rhs: recip_sum(Quant::Ex1R, &even),
        negative: false,
    });
    entries.push(Entry {
        id: Thm3_2,
        anchor: "Theorem 3.2",
        constraint: Constraint::Unconstrained,
        construction: CenterTriad(Centroid),
        family_label: "excircles config 2",
        lhs: recip_sum(Quant::Ex2R, &odd),
        rhs: recip_sum(Quant::Ex2R, &even),
        negative: false,
    });
    entries.push(Entry {
        id: Lem4_1,
        anchor: "Lemma 4.1",
        constraint: Constraint::Unconstrained,
        construction: ContactCevian,
        family_label: "two excircles on one cevian",
        lhs: Expr::Div(
            Box::new(q(Quant::ContactEx(1))),
            Box::new(q(Quant::ContactEx(2))),
        ),
        rhs: Expr::Div(
            Box::new(q(Quant::ContactSeg(1))),
            Box::new(q(Quant::ContactSeg(2))),
        ),
        negative: false,
    });
    entries.push(Entry {
        id: Thm4_1,
        anchor: "Theorem 4.1",
        constraint: Constraint::Unconstrained,
        construction: CenterTriad(Gergonne),
        family_label: "excircles config 1",
        lhs: prod3(Quant::Ex1R, odd),
        rhs: prod3(Quant::Ex1R, even),
        negative: false,
    });
    entries.push(Entry {
        id: Lem5_1,
        anchor: "Lemma 5.1",
        constraint: Constraint::Unconstrained,
        construction: CenterTriad(Nagel),
        family_label: "small-triangle areas",
        lhs: prod3(Quant::SmallK, odd),
        rhs: prod3(Quant::SmallK, even),
        negative: false,
    });
    entries.push(Entry {
        id: Lem5_2,
        anchor: "Lemma 5.2",
        constraint: Constraint::Unconstrained,
        construction: CenterTriad(Nagel),
        family_label: "small-triangle semiperimeters",
        lhs: prod3(Quant::SmallS, odd),
        rhs: prod3(Quant::SmallS, even),
        negative: false,
    });
    entries.push(Entry {
        id: Thm5_1,
        anchor: "Theorem 5.1",
        constraint: Constraint::Unconstrained,
        construction: CenterTriad(Nagel),
        family_label: "incircles",
        lhs: prod3(Quant::InR, odd),
        rhs: prod3(Quant::InR, even),
        negative: false,
    });
    entries.push(Entry {
        id: Lem5_3,
        anchor: "Lemma 5.3",
        constraint: Constraint::Unconstrained,
        construction: CenterTriad(Nagel),
        family_label: "small-triangle exradius denominators",
        lhs: Expr::Prod(
            odd.iter()
                .map(|&i| {
                    Expr::Sub(
                        Box::new(q(Quant::SmallS(i))),
                        Box::new(q(Quant::Seg(i))),
                    )
                })
                .collect(),
        ),
        rhs: Expr::Prod(
            even.iter()
                .map(|&i| {
                    Expr::Sub(
                        Box::new(q(Quant::SmallS(i))),
                        Box::new(q(Quant::Seg(i))),
                    )
                })
                .collect(),
        ),
        negative: false,
    });
    entries.push(Entry {
        id: Thm5_2,
        anchor: "Theorem 5.2",
        constraint: Constraint::Unconstrained,
        construction: CenterTriad(Nagel),
        family_label: "excircles config 2",
        lhs: prod3(Quant::Ex2R, odd),
        rhs: prod3(Quant::Ex2R, even),
        negative: false,
    });
    entries.push(Entry {
        id: Thm6_2,
        anchor: "Theorem 6.2",
        constraint: Constraint::Unconstrained,
        construction: GenericCevian,
        family_label: "two incircles + two excircles",
        lhs: Expr::Sum(vec![recip(Quant::QuadIn(1)), recip(Quant::QuadEx(4))]),
        rhs: Expr::Sum(vec![recip(Quant::QuadIn(2)), recip(Quant::QuadEx(3))]),
        negative: false,
    });
    entries.push(Entry {
        id: Thm6_3,
        anchor: "Theorem 6.3",
        constraint: Constraint::Unconstrained,
        construction: CenterTriad(GenericInterior),
        family_label: "incircles + excircles config 2",
        lhs: Expr::Prod(vec![
            q(Quant::InR(0)),
            q(Quant::InR(2)),
            q(Quant::InR(4)),
            q(Quant::Ex2R(0)),
            q(Quant::Ex2R(2)),
            q(Quant::Ex2R(4)),
        ]),
        rhs: Expr::Prod(vec![
            q(Quant::InR(1)),
            q(Quant::InR(3)),
            q(Quant::InR(5)),
            q(Quant::Ex2R(1)),
            q(Quant::Ex2R(3)),
            q(Quant::Ex2R(5)),
        ]),
        negative: false,
    });
    entries.push(Entry {
        id: Cons6_2,
        anchor: "Consequence of Theorem 6.2",
        constraint: Constraint::Unconstrained,
        construction: CenterTriad(GenericInterior),
        family_label: "incircles + excircles config 2",
        lhs: Expr::Sum(vec![
            recip(Quant::InR(0)),
            recip(Quant::InR(2)),
            recip(Quant::InR(4)),
            recip(Quant::Ex2R(1)),
            recip(Quant::Ex2R(3)),
            recip(Quant::Ex2R(5)),
        ]),
        rhs: Expr::Sum(vec![
            recip(Quant::InR(1)),
            recip(Quant::InR(3)),
            recip(Quant::InR(5)),
            recip(Quant::Ex2R(0)),
            recip(Quant::Ex2R(2)),
            recip(Quant::Ex2R(4)),
        ]),
        negative: false,
    });
    entries.push(Entry {
        id: Thm7_1,
        anchor: "Theorem 7.1",
        constraint: Constraint::Acute,
        construction: CenterTriad(Circumcenter),
        family_label: "incircles",
        lhs: recip_sum(Quant::InR, &odd),
        rhs: recip_sum(Quant::InR, &even),
        negative: false,
    });
    entries.push(Entry {
        id: Thm7_2,
        anchor: "Theorem 7.2",
        constraint: Constraint::Acute,
        construction: CenterTriad(Circumcenter),
        family_label: "excircles config 2",
        lhs: recip_sum(Quant::Ex2R, &odd),
        rhs: recip_sum(Quant::Ex2R, &even),
        negative: false,
    });
    entries.push(Entry {
        id: Thm8_1,
        anchor: "Theorem 8.1",
        constraint: Constraint::AngleB { num: 1, den: 3 },
        construction: CenterTriad(Incenter),
        family_label: "incircles",
        lhs: recip_sum(Quant::InR, &[0, 3, 4]),
        rhs: recip_sum(Quant::InR, &[1, 2, 5]),
        negative: false,
    });
    entries.push(Entry {
        id: Thm8_2,
        anchor: "Theorem 8.2",
        constraint: Constraint::AngleB { num: 1, den: 3 },
        construction: CenterTriad(Incenter),
        family_label: "excircles config 2",
        lhs: recip_sum(Quant::Ex2R, &[0, 3, 4]),
        rhs: recip_sum(Quant::Ex2R, &[1, 2, 5]),
        negative: false,
    });
    entries.push(Entry {
        id: Thm8_3,
        anchor: "Theorem 8.3",
        constraint: Constraint::AngleB { num: 2, den: 3 },
        construction: CenterTriad(Incenter),
        family_label: "excircles config 2",
        lhs: recip_sum(Quant::Ex2R, &[0, 2, 3, 5]),
        rhs: recip_sum(Quant::Ex2R, &[1, 4]),
        negative: false,
    });
    entries.push(Entry {
        id: Thm8_4,
        anchor: "Theorem 8.4",
        constraint: Constraint::Unconstrained,
        construction: CenterTriad(Incenter),
        family_label: "excircles config 2, cosine-weighted",
        lhs: Expr::Sum(vec![
            Expr::Div(Box::new(q(Quant::CosHalf(2))), Box::new(q(Quant::Ex2R(0)))),
            Expr::Div(Box::new(q(Quant::CosHalf(0))), Box::new(q(Quant::Ex2R(2)))),
            Expr::Div(Box::new(q(Quant::CosHalf(1))), Box::new(q(Quant::Ex2R(4)))),
        ]),
        rhs: Expr::Sum(vec![
            Expr::Div(Box::new(q(Quant::CosHalf(1))), Box::new(q(Quant::Ex2R(1)))),
            Expr::Div(Box::new(q(Quant::CosHalf(2))), Box::new(q(Quant::Ex2R(3)))),
            Expr::Div(Box::new(q(Quant::CosHalf(0))), Box::new(q(Quant::Ex2R(5)))),
        ]),
        negative: false,
    });
    entries.push(Entry {
        id: NegControl,
        anchor: "negative control",
        constraint: Constraint::Acute,
        construction: CenterTriad(Orthocenter),
        family_label: "excircles config 1",
        lhs: prod3(Quant::Ex1R, [0, 1, 2]),
        rhs: prod3(Quant::Ex1R, [3, 4, 5]),
        negative: true,
    });

    entries
}

/// All quantities of one evaluated configuration.
pub struct EvalContext {
    seg: [Scalar; 6],
    small_s: [Scalar; 6],
    large_s: [Scalar; 6],
    small_k: [Scalar; 6],
    in_r: Option<[Scalar; 6]>,
    ex1_r: Option<[Scalar; 6]>,
    ex2_r: Option<[Scalar; 6]>,
    cos_half: Option<[Scalar; 3]>,
    quad: Option<[Scalar; 4]>,
    contact: Option<[Scalar; 4]>,
    validations: Vec<SetValidation>,
}

impl EvalContext {
    pub fn validations(&self) -> &[SetValidation] {
        &self.validations
    }
}

/// The identity permutation on the six labels.
pub const IDENT_PERM: [usize; 6] = [0, 1, 2, 3, 4, 5];

fn eval_quant(qt: Quant, ctx: &EvalContext, sigma: &[usize; 6]) -> Scalar {
    match qt {
        Quant::InR(i) => ctx.in_r.as_ref().expect("incircles built")[sigma[i]].clone(),
        Quant::Ex1R(i) => ctx.ex1_r.as_ref().expect("config-1 built")[sigma[i]].clone(),
        Quant::Ex2R(i) => ctx.ex2_r.as_ref().expect("config-2 built")[sigma[i]].clone(),
        Quant::SmallS(i) => ctx.small_s[sigma[i]].clone(),
        Quant::LargeS(i) => ctx.large_s[sigma[i]].clone(),
        Quant::SmallK(i) => ctx.small_k[sigma[i]].clone(),
        Quant::Seg(i) => ctx.seg[sigma[i]].clone(),
        Quant::CosHalf(v) => ctx.cos_half.as_ref().expect("cosines built")[v].clone(),
        Quant::QuadIn(i) => ctx.quad.as_ref().expect("quad built")[i - 1].clone(),
        Quant::QuadEx(i) => ctx.quad.as_ref().expect("quad built")[i - 1].clone(),
        Quant::ContactEx(i) => ctx.contact.as_ref().expect("contact built")[i - 1].clone(),
        Quant::ContactSeg(i) => ctx.contact.as_ref().expect("contact built")[i + 1].clone(),
    }
}

/// Evaluates an expression over a context, with the six labels re-indexed by
/// `sigma` (use [`IDENT_PERM`] for the documented labeling).
pub fn eval_expr(e: &Expr, ctx: &EvalContext, sigma: &[usize; 6]) -> Scalar {
    match e {
        Expr::Q(qt) => eval_quant(*qt, ctx, sigma),
        Expr::Sum(v) => {
            let mut acc = Scalar::zero();
            for e in v {
                acc = acc + eval_expr(e, ctx, sigma);
            }
            acc
        }
        Expr::Prod(v) => {
            let mut acc = Scalar::one();
            for e in v {
                acc = acc * eval_expr(e, ctx, sigma);
            }
            acc
        }
        Expr::Sub(a, b) => eval_expr(a, ctx, sigma) - eval_expr(b, ctx, sigma),
        Expr::Recip(a) => Scalar::one() / eval_expr(a, ctx, sigma),
        Expr::Div(a, b) => eval_expr(a, ctx, sigma) / eval_expr(b, ctx, sigma),
    }
}

/// Evaluation options: the pass tolerance on the relative residual and the
/// interior point used by generic-point constructions (defaults to the
/// centroid when absent).
#[derive(Debug, Clone)]
pub struct EvalOptions {
    pub tolerance: f64,
    pub probe: Option<Point>,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            tolerance: 1e-9,
            probe: None,
        }
    }
}

/// Verdict for one identity on one triangle.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub triangle: [Point; 3],
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub abs_residual: Scalar,
    pub rel_residual: Scalar,
    pub pass: bool,
    pub precision: Prec,
}

/// Checks the entry's triangle constraint. The angle families compare the
/// computed vertex angle against `pi*num/den` with a 1e-9 radian tolerance.
pub fn check_constraint(entry: &Entry, t: &Triangle) -> Result<()> {
    match entry.constraint {
        Constraint::Unconstrained => Ok(()),
        Constraint::Acute => {
            if t.is_acute() {
                Ok(())
            } else {
                Err(Error::ConstraintViolated("acute triangle required".into()))
            }
        }
        Constraint::AngleB { num, den } => {
            let angle = t.vertex_angle(VB);
            let target = Scalar::pi(t.prec()) * Scalar::from_ratio(num as i64, den as i64);
            let tol = Scalar::exact_from_f64(1e-9);
            if (angle - target).abs() <= tol {
                Ok(())
            } else {
                Err(Error::ConstraintViolated(format!(
                    "angle at B must be {}pi/{} within 1e-9 rad",
                    num, den
                )))
            }
        }
    }
}

/// Builds the evaluation context for `entry` on `t`.
pub fn build_context(entry: &Entry, t: &Triangle, opts: &EvalOptions) -> Result<EvalContext> {
    check_constraint(entry, t)?;
    match entry.construction {
        Construction::CenterTriad(choice) => {
            let kind = match choice {
                CenterChoice::Orthocenter => CenterKind::Orthocenter,
                CenterChoice::Centroid => CenterKind::Centroid,
                CenterChoice::Circumcenter => CenterKind::Circumcenter,
                CenterChoice::Incenter => CenterKind::Incenter,
                CenterChoice::Gergonne => CenterKind::Gergonne,
                CenterChoice::Nagel => CenterKind::Nagel,
                CenterChoice::GenericInterior => match &opts.probe {
                    Some(p) => CenterKind::Custom(p.clone()),
                    None => CenterKind::Centroid,
                },
            };
            let triad = cevian_triad(t, kind)?;
            let sub = subdivide(t, &triad)?;
            context_from_subdivision(entry, t, &sub)
        }
        Construction::ContactCevian => contact_cevian_context(t),
        Construction::GenericCevian => {
            let kind = match &opts.probe {
                Some(p) => CenterKind::Custom(p.clone()),
                None => CenterKind::Centroid,
            };
            let triad = cevian_triad(t, kind)?;
            generic_cevian_context(t, triad.d())
        }
    }
}

fn needs(entry: &Entry) -> (bool, bool, bool, bool) {
    let mut qs = Vec::new();
    entry.lhs.quants(&mut qs);
    entry.rhs.quants(&mut qs);
    let in_r = qs.iter().any(|q| matches!(q, Quant::InR(_)));
    let ex1 = qs.iter().any(|q| matches!(q, Quant::Ex1R(_)));
    let ex2 = qs.iter().any(|q| matches!(q, Quant::Ex2R(_)));
    let cos = qs.iter().any(|q| matches!(q, Quant::CosHalf(_)));
    (in_r, ex1, ex2, cos)
}

fn context_from_subdivision(entry: &Entry, t: &Triangle, sub: &Subdivision) -> Result<EvalContext> {
    let (want_in, want_ex1, want_ex2, want_cos) = needs(entry);
    let mut validations = Vec::new();

    let mut build = |family: CircleFamily| -> Result<[Scalar; 6]> {
        let set = six_circles_of(sub, family)?;
        validations.push(validate_set(sub, &set));
        Ok(set.radii().clone())
    };

    let in_r = if want_in {
        Some(build(CircleFamily::Incircles)?)
    } else {
        None
    };
    let ex1_r = if want_ex1 {
        Some(build(CircleFamily::ExcirclesConfig1)?)
    } else {
        None
    };
    let ex2_r = if want_ex2 {
        Some(build(CircleFamily::ExcirclesConfig2)?)
    } else {
        None
    };

    let cos_half = if want_cos {
        let prec = t.prec();
        let mut out = Vec::with_capacity(3);
        for v in 0..3 {
            out.push(cos_half_angle(t, v, prec));
        }
        Some(out.try_into().expect("three cosines"))
    } else {
        None
    };

    let f = |i: usize| -> Scalar { sub.seg_len(i).clone() };
    Ok(EvalContext {
        seg: std::array::from_fn(f),
        small_s: std::array::from_fn(|i| sub.small(i).semiperimeter().clone()),
        large_s: std::array::from_fn(|i| sub.large(i).semiperimeter().clone()),
        small_k: std::array::from_fn(|i| sub.small(i).area().abs()),
        in_r,
        ex1_r,
        ex2_r,
        cos_half,
        quad: None,
        contact: None,
        validations,
    })
}

/// `cos(angle_at_v / 2)` via the half-angle identity
/// `cos^2(x/2) = (1 + cos x)/2`, avoiding any trig evaluation.
fn cos_half_angle(t: &Triangle, v: usize, prec: Prec) -> Scalar {
    let o = t.vertex(v);
    let p = t.vertex((v + 1) % 3);
    let q = t.vertex((v + 2) % 3);
    let dot = {
        use rug::Complete;
        let ox = o.x.to_exact();
        let oy = o.y.to_exact();
        let ux = p.x.to_exact() - &ox;
        let uy = p.y.to_exact() - &oy;
        let vx = q.x.to_exact() - &ox;
        let vy = q.y.to_exact() - &oy;
        (&ux * &vx).complete() + (&uy * &vy).complete()
    };
    let lu = o.distance(p, prec);
    let lv = o.distance(q, prec);
    let cos_full = Scalar::from_rational(dot) / (lu * lv);
    ((Scalar::one() + cos_full) / Scalar::from_int(2)).sqrt(prec)
}

fn contact_cevian_context(t: &Triangle) -> Result<EvalContext> {
    let (la, lb, _lc) = t.side_lengths();
    let s = t.semiperimeter();
    let d = t.b().lerp(t.c(), &(&(s - lb) / la));
    let (r1, r2, c1, c2) = cevian_split_excircles(t, &d)?;
    let bd = t.b().distance(&d, t.prec());
    let dc = d.distance(t.c(), t.prec());
    let empty = std::array::from_fn(|_| Scalar::zero());
    Ok(EvalContext {
        seg: empty,
        small_s: std::array::from_fn(|_| Scalar::zero()),
        large_s: std::array::from_fn(|_| Scalar::zero()),
        small_k: std::array::from_fn(|_| Scalar::zero()),
        in_r: None,
        ex1_r: None,
        ex2_r: None,
        cos_half: None,
        quad: None,
        contact: Some([r1, r2, bd, dc]),
        validations: vec![validate_circle_pair(t, &c1, &c2)],
    })
}

fn generic_cevian_context(t: &Triangle, d: &Point) -> Result<EvalContext> {
    let abd = Triangle::new(t.b().clone(), d.clone(), t.a().clone(), t.prec())?;
    let acd = Triangle::new(d.clone(), t.c().clone(), t.a().clone(), t.prec())?;
    let in1 = inradius(&abd);
    let in2 = inradius(&acd);
    let ex3 = exradius(&abd, 2);
    let ex4 = exradius(&acd, 2);
    let ci1 = incircle(&abd)?;
    let ci2 = incircle(&acd)?;
    let ce3 = excircle(&abd, 2)?;
    let ce4 = excircle(&acd, 2)?;
    let mut v1 = validate_circle_pair(t, &ci1, &ci2);
    let v2 = validate_circle_pair(t, &ce3, &ce4);
    v1.max_tangency_rel = v1.max_tangency_rel.max(v2.max_tangency_rel);
    v1.containment_ok = v1.containment_ok && v2.containment_ok;
    let empty = std::array::from_fn(|_| Scalar::zero());
    Ok(EvalContext {
        seg: empty,
        small_s: std::array::from_fn(|_| Scalar::zero()),
        large_s: std::array::from_fn(|_| Scalar::zero()),
        small_k: std::array::from_fn(|_| Scalar::zero()),
        in_r: None,
        ex1_r: None,
        ex2_r: None,
        cos_half: None,
        quad: Some([in1, in2, ex3, ex4]),
        contact: None,
        validations: vec![v1],
    })
}

/// Excircles of the two cevian halves `(B, D, A)` and `(D, C, A)` touching
/// `BD` and `DC` respectively.
fn cevian_split_excircles(t: &Triangle, d: &Point) -> Result<(Scalar, Scalar, Circle, Circle)> {
    let abd = Triangle::new(t.b().clone(), d.clone(), t.a().clone(), t.prec())?;
    let acd = Triangle::new(d.clone(), t.c().clone(), t.a().clone(), t.prec())?;
    let r1 = exradius(&abd, 2);
    let r2 = exradius(&acd, 2);
    let c1 = excircle(&abd, 2)?;
    let c2 = excircle(&acd, 2)?;
    Ok((r1, r2, c1, c2))
}

fn validate_circle_pair(t: &Triangle, c1: &Circle, c2: &Circle) -> SetValidation {
    let scale = (0..3).map(|i| t.side_len(i).to_f64()).fold(0f64, f64::max);
    let t1 = crate::circles::tangency_residual(c1).to_f64() / scale;
    let t2 = crate::circles::tangency_residual(c2).to_f64() / scale;
    SetValidation {
        max_tangency_rel: t1.max(t2),
        max_radius_disagreement_rel: 0.0,
        containment_ok: true,
    }
}

/// Evaluates one identity on one triangle at the triangle's width.
pub fn evaluate_identity(
    id: IdentityId,
    t: &Triangle,
    opts: &EvalOptions,
) -> Result<IdentityReport> {
    Ok(evaluate_identity_detailed(id, t, opts)?.0)
}

/// As [`evaluate_identity`], also returning the per-family circle
/// validations gathered during construction.
pub fn evaluate_identity_detailed(
    id: IdentityId,
    t: &Triangle,
    opts: &EvalOptions,
) -> Result<(IdentityReport, Vec<SetValidation>)> {
    let entry = entry(id);
    let ctx = build_context(entry, t, opts)?;
    let lhs = eval_expr(&entry.lhs, &ctx, &IDENT_PERM);
    let rhs = eval_expr(&entry.rhs, &ctx, &IDENT_PERM);
    let abs_residual = (&lhs - &rhs).abs();
    let rel_residual = Scalar::rel_residual(&lhs, &rhs);
    let pass = rel_residual.to_f64() <= opts.tolerance;
    let report = IdentityReport {
        id,
        triangle: [t.a().clone(), t.b().clone(), t.c().clone()],
        lhs,
        rhs,
        abs_residual,
        rel_residual,
        pass,
        precision: t.prec(),
    };
    let EvalContext { validations, .. } = ctx;
    Ok((report, validations))
}

/// The two sides of the contact-cevian ratio identity: `r1/r2` from the
/// constructed excircles and `BD/DC` from the base split.
pub fn lemma_4_1_ratio(t: &Triangle) -> Result<(Scalar, Scalar)> {
    let ctx = contact_cevian_context(t)?;
    let entry = entry(IdentityId::Lem4_1);
    Ok((
        eval_expr(&entry.lhs, &ctx, &IDENT_PERM),
        eval_expr(&entry.rhs, &ctx, &IDENT_PERM),
    ))
}
