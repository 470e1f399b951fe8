//! The verification engine: constrained deterministic sampling, batch
//! trials, precision-ladder runs, permutation search over circle labelings,
//! and closed-form oracle cross-checks.
//!
//! Randomness is counter-based: sample `k` of a run is a pure function of
//! `(seed, k)`, so trials can run on any number of threads in any order and
//! still aggregate to bit-identical summaries.

use crate::catalog::{
    catalog, entry, eval_expr, evaluate_identity_detailed, CenterChoice, Constraint,
    Construction, Entry, EvalOptions, IdentityId,
};
use crate::centers::{cevian_triad, nagel_cevian_lengths, nagel_section_ratios, CenterKind};
use crate::circles::{excircle, exradius, incircle, inradius, tangency_residual};
use crate::geom::{distance_point_to_line, Line, Point, Triangle};
use crate::scalar::{Prec, Scalar};
use crate::{Error, Result};
use rayon::prelude::*;
use std::time::Instant;

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based deterministic generator: the stream for `(seed, k, stream)`
/// is a pure function of its arguments. The algorithm is fixed and will not
/// change between builds, which the reproducibility contract relies on.
#[derive(Debug, Clone)]
pub struct CounterRng {
    state: u64,
}

impl CounterRng {
    pub fn for_sample(seed: u64, k: u64) -> CounterRng {
        CounterRng::for_stream(seed, k, 0)
    }

    pub fn for_stream(seed: u64, k: u64, stream: u64) -> CounterRng {
        let s = mix64(seed ^ mix64(k.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ stream));
        CounterRng {
            state: s ^ 0xA076_1D64_78BD_642F,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        mix64(self.state)
    }

    /// Uniform-ish integer in `[lo, hi]` (modulo bias is irrelevant for the
    /// sampler's purposes and keeping the draw simple keeps it stable).
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }
}

/// Constraint family a sampler enforces by construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplerFamily {
    General,
    Acute,
    /// Angle at `B` exactly `pi * num / den`, enforced by placing `B` at the
    /// origin with one ray on the positive x-axis and the other along
    /// `(cos t, sin t)` computed at the evaluation width.
    AngleB { num: u32, den: u32 },
    /// Apex fixed above the x-axis, the other two vertices on it.
    ApexOnLine { apex_x: i64, apex_y: i64 },
}

impl SamplerFamily {
    pub fn label(self) -> String {
        match self {
            SamplerFamily::General => "general".into(),
            SamplerFamily::Acute => "acute".into(),
            SamplerFamily::AngleB { num, den } => format!("angle_b={}pi/{}", num, den),
            SamplerFamily::ApexOnLine { .. } => "apex_on_line".into(),
        }
    }
}

/// Deterministic triangle sampler specification. Coordinates are drawn on
/// the grid `[lo, hi] / denom`, so every emitted coordinate is rational.
#[derive(Debug, Clone)]
pub struct SamplerSpec {
    pub family: SamplerFamily,
    /// Grid bounds in whole units.
    pub lo: i64,
    pub hi: i64,
    /// Grid denominator.
    pub denom: i64,
    /// Smallest admissible interior angle, radians.
    pub min_angle: f64,
    pub seed: u64,
}

impl SamplerSpec {
    pub fn new(family: SamplerFamily, seed: u64) -> SamplerSpec {
        SamplerSpec {
            family,
            lo: -8,
            hi: 8,
            denom: 64,
            min_angle: 0.1,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.lo >= self.hi || self.denom <= 0 {
            return Err(Error::InvalidSpec("empty coordinate range".into()));
        }
        if !(0.0..1.0).contains(&self.min_angle) {
            return Err(Error::InvalidSpec("min_angle out of range".into()));
        }
        if let SamplerFamily::AngleB { num, den } = self.family {
            if den == 0 || num == 0 || f64::from(num) / f64::from(den) >= 1.0 {
                return Err(Error::InvalidSpec("angle must lie in (0, pi)".into()));
            }
        }
        Ok(())
    }
}

const MAX_TRIES: u32 = 600;

/// Draws the `k`-th triangle of the spec's stream, materialized at width
/// `prec`.
///
/// Acceptance decisions (degeneracy, quality, family constraints) are made
/// from the rational draw parameters at a fixed internal width, so the same
/// `(spec, k)` accepts the same triangle at every materialization width;
/// only the angle-family trig coordinates are refined by `prec`.
pub fn sample_triangle(spec: &SamplerSpec, k: u64, prec: Prec) -> Result<Triangle> {
    spec.validate()?;
    let mut rng = CounterRng::for_sample(spec.seed, k);
    let glo = spec.lo * spec.denom;
    let ghi = spec.hi * spec.denom;

    for _ in 0..MAX_TRIES {
        match spec.family {
            SamplerFamily::General | SamplerFamily::Acute => {
                let mut co = [0i64; 6];
                for c in co.iter_mut() {
                    *c = rng.int_in(glo, ghi);
                }
                // Accept/reject on the grid numerators: exact integer
                // degeneracy/acuteness tests, f64 angles for the quality
                // bound. Width-independent by construction.
                if grid_cross(&co, 0) == 0 {
                    continue;
                }
                if !grid_quality(&co, spec.min_angle) {
                    continue;
                }
                if spec.family == SamplerFamily::Acute
                    && !(0..3).all(|i| grid_dot(&co, i) > 0)
                {
                    continue;
                }
                return Triangle::new(
                    Point::new(
                        Scalar::from_ratio(co[0], spec.denom),
                        Scalar::from_ratio(co[1], spec.denom),
                    ),
                    Point::new(
                        Scalar::from_ratio(co[2], spec.denom),
                        Scalar::from_ratio(co[3], spec.denom),
                    ),
                    Point::new(
                        Scalar::from_ratio(co[4], spec.denom),
                        Scalar::from_ratio(co[5], spec.denom),
                    ),
                    prec,
                );
            }
            SamplerFamily::AngleB { num, den } => {
                // B at the origin, C on the positive x-axis, A on the ray at
                // the exact angle. The quality gate uses f64 trig so the
                // accept chain is identical at every materialization width.
                let t = rng.int_in(spec.denom, ghi.max(spec.denom));
                let u = rng.int_in(spec.denom, ghi.max(spec.denom));
                let theta_f = std::f64::consts::PI * f64::from(num) / f64::from(den);
                let tf = t as f64 / spec.denom as f64;
                let uf = u as f64 / spec.denom as f64;
                let ax = uf * theta_f.cos();
                let ay = uf * theta_f.sin();
                let angle_a = ((-ay).atan2(tf - ax) - (-ay).atan2(-ax)).abs();
                let angle_a = angle_a.min(2.0 * std::f64::consts::PI - angle_a);
                let angle_c = std::f64::consts::PI - theta_f - angle_a;
                if angle_a < spec.min_angle || angle_c < spec.min_angle {
                    continue;
                }
                let theta = Scalar::pi(prec) * Scalar::from_ratio(i64::from(num), i64::from(den));
                let ulen = Scalar::from_ratio(u, spec.denom);
                let a = Point::new(&ulen * &theta.cos(prec), &ulen * &theta.sin(prec));
                let b = Point::from_ints(0, 0);
                let c = Point::new(Scalar::from_ratio(t, spec.denom), Scalar::zero());
                return Triangle::new(a, b, c, prec);
            }
            SamplerFamily::ApexOnLine { apex_x, apex_y } => {
                let bt = rng.int_in(glo, ghi);
                let ct = rng.int_in(glo, ghi);
                if bt == ct {
                    continue;
                }
                let co = [apex_x, apex_y, bt, 0, ct, 0];
                if grid_cross(&co, 0) == 0 || !grid_quality(&co, spec.min_angle) {
                    continue;
                }
                return Triangle::new(
                    Point::new(
                        Scalar::from_ratio(apex_x, spec.denom),
                        Scalar::from_ratio(apex_y, spec.denom),
                    ),
                    Point::new(Scalar::from_ratio(bt, spec.denom), Scalar::zero()),
                    Point::new(Scalar::from_ratio(ct, spec.denom), Scalar::zero()),
                    prec,
                );
            }
        }
    }
    Err(Error::SpecInfeasible(format!(
        "no admissible triangle for sample {k} after {MAX_TRIES} tries"
    )))
}

/// Exact integer cross product `(v1 - v0) x (v2 - v0)` of grid numerators,
/// with the vertices rotated so index `at` is the origin.
fn grid_cross(co: &[i64; 6], at: usize) -> i128 {
    let v = |i: usize, j: usize| co[(2 * ((at + i) % 3)) + j] as i128;
    let (ox, oy) = (v(0, 0), v(0, 1));
    (v(1, 0) - ox) * (v(2, 1) - oy) - (v(1, 1) - oy) * (v(2, 0) - ox)
}

/// Exact integer dot product of the two edges leaving vertex `at`.
fn grid_dot(co: &[i64; 6], at: usize) -> i128 {
    let v = |i: usize, j: usize| co[(2 * ((at + i) % 3)) + j] as i128;
    let (ox, oy) = (v(0, 0), v(0, 1));
    (v(1, 0) - ox) * (v(2, 0) - ox) + (v(1, 1) - oy) * (v(2, 1) - oy)
}

/// All interior angles at least `min_angle`, from exact integer cross/dot
/// pairs pushed through f64 `atan2`.
fn grid_quality(co: &[i64; 6], min_angle: f64) -> bool {
    (0..3).all(|i| {
        let cross = grid_cross(co, i).unsigned_abs() as f64;
        let dot = grid_dot(co, i) as f64;
        cross.atan2(dot) >= min_angle
    })
}

/// Quality gate over an already constructed triangle (used by the scans).
fn quality_ok(t: &Triangle, min_angle: f64) -> bool {
    (0..3).all(|i| t.vertex_angle(i).to_f64() >= min_angle)
}

/// Interior probe point for generic-point identities: a rational convex
/// combination with weights in `[2, 8]`, drawn from a the sample's secondary
/// stream so it is identical across evaluation widths.
pub fn probe_point(t: &Triangle, seed: u64, k: u64) -> Point {
    let mut rng = CounterRng::for_stream(seed, k, 1);
    let w: [i64; 3] = [rng.int_in(2, 8), rng.int_in(2, 8), rng.int_in(2, 8)];
    let total = Scalar::from_int(w[0] + w[1] + w[2]);
    let mut x = Scalar::zero();
    let mut y = Scalar::zero();
    for (wi, v) in w.iter().zip([t.a(), t.b(), t.c()]) {
        x = x + Scalar::from_int(*wi) * &v.x;
        y = y + Scalar::from_int(*wi) * &v.y;
    }
    Point::new(x / &total, y / &total)
}

fn entry_needs_probe(e: &Entry) -> bool {
    matches!(
        e.construction,
        Construction::GenericCevian | Construction::CenterTriad(CenterChoice::GenericInterior)
    )
}

/// Default sampler family for an identity.
pub fn default_family(id: IdentityId) -> SamplerFamily {
    match entry(id).constraint {
        Constraint::Acute => SamplerFamily::Acute,
        Constraint::AngleB { num, den } => SamplerFamily::AngleB { num, den },
        Constraint::Unconstrained => SamplerFamily::General,
    }
}

/// Default sample count: 10,000 for the general and acute families, 2,000
/// for the angle-constrained ones.
pub fn default_n(id: IdentityId) -> u64 {
    match entry(id).constraint {
        Constraint::AngleB { .. } => 2_000,
        _ => 10_000,
    }
}

fn spec_compatible(e: &Entry, family: SamplerFamily) -> bool {
    match e.constraint {
        Constraint::Unconstrained => true,
        Constraint::Acute => family == SamplerFamily::Acute,
        Constraint::AngleB { num, den } => {
            family == SamplerFamily::AngleB { num, den }
        }
    }
}

/// Aggregated outcome of a batch trial run.
#[derive(Debug, Clone, serde::Serialize)]
pub struct TrialSummary {
    pub id: String,
    pub anchor: String,
    pub statement: String,
    pub family: String,
    pub sampler: String,
    pub n: u64,
    pub seed: u64,
    pub widths: Vec<u32>,
    pub tolerance: f64,
    pub pass_count: u64,
    pub fail_count: u64,
    pub max_rel_residual: f64,
    /// Max relative residual per requested width, in `widths` order.
    pub per_width_max_rel: Vec<f64>,
    /// Log10 residual histogram at the primary width: bucket 0 counts exact
    /// zeros, bucket `i >= 1` counts residuals in decade `10^(i-19)`.
    pub histogram: Vec<u64>,
    pub worst: WorstSample,
    pub tangency: TangencyStats,
    pub negative: bool,
    /// Whether this run counts as successful: all samples pass for a true
    /// identity, at least 99% fail for the negative control.
    pub ok: bool,
    pub stress: bool,
    pub wall_ms: u64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct WorstSample {
    pub k: u64,
    pub rel_residual: f64,
    pub triangle: [String; 3],
}

#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct TangencyStats {
    pub circles_checked: u64,
    pub max_tangency_rel: f64,
    pub containment_violations: u64,
}

/// Per-run knobs beyond the sampler.
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub tolerance: f64,
    /// Report-only mode for near-degenerate stress sampling: `ok` is not
    /// gated on pass rate.
    pub stress: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            tolerance: 1e-9,
            stress: false,
        }
    }
}

const HIST_BUCKETS: usize = 21;

fn hist_bucket(rel: f64) -> usize {
    if rel == 0.0 {
        return 0;
    }
    let decade = rel.log10().floor() as i64;
    (decade + 19).clamp(1, (HIST_BUCKETS - 1) as i64) as usize
}

struct SampleOutcome {
    k: u64,
    pass: bool,
    rels: Vec<f64>,
    tangency_max: f64,
    containment_bad: u64,
    circles: u64,
}

/// Runs `n` sampled evaluations of `id` at each width in `widths` (the first
/// width is primary: pass/fail and the histogram are computed there).
pub fn run_trials(
    id: IdentityId,
    spec: &SamplerSpec,
    n: u64,
    widths: &[Prec],
    opts: &RunOptions,
) -> Result<TrialSummary> {
    let e = entry(id);
    if !spec_compatible(e, spec.family) {
        return Err(Error::IncompatibleSpec(id.name().to_string()));
    }
    if widths.is_empty() {
        return Err(Error::InvalidSpec("at least one width required".into()));
    }
    let start = Instant::now();
    let needs_probe = entry_needs_probe(e);

    let outcomes: Result<Vec<SampleOutcome>> = (0..n)
        .into_par_iter()
        .map(|k| -> Result<SampleOutcome> {
            let mut rels = Vec::with_capacity(widths.len());
            let mut pass = true;
            let mut tangency_max = 0f64;
            let mut containment_bad = 0u64;
            let mut circles = 0u64;
            for (wi, &w) in widths.iter().enumerate() {
                let t = sample_triangle(spec, k, w)?;
                let eval_opts = EvalOptions {
                    tolerance: opts.tolerance,
                    probe: needs_probe.then(|| probe_point(&t, spec.seed, k)),
                };
                let (report, validations) = evaluate_identity_detailed(id, &t, &eval_opts)?;
                let rel = report.rel_residual.to_f64();
                rels.push(rel);
                if wi == 0 {
                    pass = report.pass;
                    for v in &validations {
                        tangency_max = tangency_max.max(v.max_tangency_rel);
                        if !v.containment_ok {
                            containment_bad += 1;
                        }
                        circles += 6;
                    }
                }
            }
            Ok(SampleOutcome {
                k,
                pass,
                rels,
                tangency_max,
                containment_bad,
                circles,
            })
        })
        .collect();
    let outcomes = outcomes?;

    let mut pass_count = 0u64;
    let mut per_width_max = vec![0f64; widths.len()];
    let mut histogram = vec![0u64; HIST_BUCKETS];
    let mut tangency = TangencyStats::default();
    let mut worst_k = 0u64;
    let mut worst_rel = -1f64;
    for o in &outcomes {
        if o.pass {
            pass_count += 1;
        }
        for (i, r) in o.rels.iter().enumerate() {
            per_width_max[i] = per_width_max[i].max(*r);
        }
        histogram[hist_bucket(o.rels[0])] += 1;
        tangency.circles_checked += o.circles;
        tangency.max_tangency_rel = tangency.max_tangency_rel.max(o.tangency_max);
        tangency.containment_violations += o.containment_bad;
        if o.rels[0] > worst_rel {
            worst_rel = o.rels[0];
            worst_k = o.k;
        }
    }

    let worst_tri = sample_triangle(spec, worst_k, widths[0])?;
    let worst = WorstSample {
        k: worst_k,
        rel_residual: worst_rel.max(0.0),
        triangle: [
            worst_tri.a().to_string(),
            worst_tri.b().to_string(),
            worst_tri.c().to_string(),
        ],
    };

    let fail_count = n - pass_count;
    let ok = if opts.stress {
        true
    } else if e.negative {
        fail_count as f64 >= 0.99 * n as f64
    } else {
        pass_count == n
    };

    Ok(TrialSummary {
        id: id.name().to_string(),
        anchor: e.anchor.to_string(),
        statement: e.statement(),
        family: e.family_label.to_string(),
        sampler: spec.family.label(),
        n,
        seed: spec.seed,
        widths: widths.iter().map(|w| w.bits()).collect(),
        tolerance: opts.tolerance,
        pass_count,
        fail_count,
        max_rel_residual: per_width_max[0],
        per_width_max_rel: per_width_max,
        histogram,
        worst,
        tangency,
        negative: e.negative,
        ok,
        stress: opts.stress,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

/// Runs the whole catalog with per-identity default samplers.
pub fn run_all(
    seed: u64,
    n_override: Option<u64>,
    widths: &[Prec],
    opts: &RunOptions,
) -> Result<Vec<TrialSummary>> {
    catalog()
        .iter()
        .map(|e| {
            let spec = SamplerSpec::new(default_family(e.id), seed);
            let n = n_override.unwrap_or_else(|| default_n(e.id));
            run_trials(e.id, &spec, n, widths, opts)
        })
        .collect()
}

/// The 12 relabelings of the six circles a figure could plausibly intend:
/// rotations of the cyclic boundary order and their reflections.
pub fn dihedral_relabelings() -> Vec<[usize; 6]> {
    let mut out = Vec::with_capacity(12);
    for k in 0..6 {
        out.push(std::array::from_fn(|i| (i + k) % 6));
    }
    for k in 0..6 {
        out.push(std::array::from_fn(|i| (k + 6 - i) % 6));
    }
    out
}

/// Searches the dihedral relabelings for those under which the re-indexed
/// identity holds on all `m` samples at `tol`. The result is never empty
/// (an empty survivor set is reported as [`Error::NoPermutationFound`]).
pub fn permutation_search(
    id: IdentityId,
    spec: &SamplerSpec,
    m: u64,
    prec: Prec,
    tol: f64,
) -> Result<Vec<[usize; 6]>> {
    let e = entry(id);
    if !e.indexed() {
        return Err(Error::InvalidSpec(format!(
            "{id} does not reference the six indexed quantities"
        )));
    }
    if !spec_compatible(e, spec.family) {
        return Err(Error::IncompatibleSpec(id.name().to_string()));
    }
    let needs_probe = entry_needs_probe(e);
    let candidates = dihedral_relabelings();
    let mut alive = vec![true; candidates.len()];
    for k in 0..m {
        let t = sample_triangle(spec, k, prec)?;
        let eval_opts = EvalOptions {
            tolerance: tol,
            probe: needs_probe.then(|| probe_point(&t, spec.seed, k)),
        };
        let ctx = crate::catalog::build_context(e, &t, &eval_opts)?;
        for (ci, sigma) in candidates.iter().enumerate() {
            if !alive[ci] {
                continue;
            }
            let lhs = eval_expr(&e.lhs, &ctx, sigma);
            let rhs = eval_expr(&e.rhs, &ctx, sigma);
            if Scalar::rel_residual(&lhs, &rhs).to_f64() > tol {
                alive[ci] = false;
            }
        }
        if alive.iter().all(|a| !a) {
            return Err(Error::NoPermutationFound);
        }
    }
    Ok(candidates
        .into_iter()
        .zip(alive)
        .filter_map(|(c, a)| a.then_some(c))
        .collect())
}

/// Apex-invariant scan specifications for the fixed-line and fixed-angle
/// invariants.
#[derive(Debug, Clone)]
pub enum ApexInvariantSpec {
    /// Apex fixed off a base line; `B`, `C` slide along the line.
    Line {
        apex: Point,
        line: Line,
        lo: i64,
        hi: i64,
        denom: i64,
    },
    /// Apex fixed at the origin of two rays; `B`, `C` slide along the rays.
    FixedAngle {
        apex: Point,
        dir1: (Scalar, Scalar),
        dir2: (Scalar, Scalar),
        lo: i64,
        hi: i64,
        denom: i64,
    },
}

/// Scan outcome: the observed invariant spread and its agreement with the
/// closed-form target.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ScanReport {
    pub kind: String,
    pub n: u64,
    pub seed: u64,
    pub target: f64,
    pub v_min: f64,
    pub v_max: f64,
    pub rel_spread: f64,
    pub max_rel_err_vs_target: f64,
    /// Fixed-angle scans also check the tangent length from the apex to the
    /// far excircle's contact point against the semiperimeter.
    pub tangent_length_max_rel_err: Option<f64>,
    pub tangency_max_rel: f64,
    pub ok: bool,
}

/// Runs an invariant scan with `n` placements.
///
/// The fixed-line scan evaluates `1/r - 1/r_a` against `2/h`; the
/// fixed-angle scan evaluates `r*r_a/K` against `tan(theta/2)`.
pub fn invariant_scan(
    spec: &ApexInvariantSpec,
    n: u64,
    seed: u64,
    prec: Prec,
) -> Result<ScanReport> {
    validate_scan_spec(spec)?;
    let min_angle = 0.1;
    let mut v_min = f64::INFINITY;
    let mut v_max = f64::NEG_INFINITY;
    let mut max_err = 0f64;
    let mut at_err: Option<f64> = None;
    let mut tang_max = 0f64;

    let target = scan_target(spec, prec);
    let target_f = target.to_f64();

    for k in 0..n {
        let mut rng = CounterRng::for_sample(seed, k);
        let tri = loop {
            let (a, b, c) = match spec {
                ApexInvariantSpec::Line {
                    apex,
                    line,
                    lo,
                    hi,
                    denom,
                } => {
                    let bt = rng.int_in(lo * denom, hi * denom);
                    let ct = rng.int_in(lo * denom, hi * denom);
                    if bt == ct {
                        continue;
                    }
                    let b = line
                        .anchor()
                        .lerp(line.second(), &Scalar::from_ratio(bt, *denom));
                    let c = line
                        .anchor()
                        .lerp(line.second(), &Scalar::from_ratio(ct, *denom));
                    (apex.clone(), b, c)
                }
                ApexInvariantSpec::FixedAngle {
                    apex,
                    dir1,
                    dir2,
                    lo,
                    hi,
                    denom,
                } => {
                    let bt = Scalar::from_ratio(rng.int_in(lo.max(&1) * denom, hi * denom), *denom);
                    let ct = Scalar::from_ratio(rng.int_in(lo.max(&1) * denom, hi * denom), *denom);
                    let b = Point::new(&apex.x + &(&bt * &dir1.0), &apex.y + &(&bt * &dir1.1));
                    let c = Point::new(&apex.x + &(&ct * &dir2.0), &apex.y + &(&ct * &dir2.1));
                    (apex.clone(), b, c)
                }
            };
            let Ok(t) = Triangle::new(a, b, c, prec) else {
                continue;
            };
            if quality_ok(&t, min_angle) {
                break t;
            }
        };

        // The apex was passed first, so side 0 is the far side.
        let r = inradius(&tri);
        let ra = exradius(&tri, 0);
        let k_area = tri.area().abs();

        let scale = (0..3).map(|i| tri.side_len(i).to_f64()).fold(0f64, f64::max);
        let ci = incircle(&tri)?;
        let ce = excircle(&tri, 0)?;
        tang_max = tang_max
            .max(tangency_residual(&ci).to_f64() / scale)
            .max(tangency_residual(&ce).to_f64() / scale);

        let v = match spec {
            ApexInvariantSpec::Line { .. } => {
                Scalar::one() / &r - Scalar::one() / &ra
            }
            ApexInvariantSpec::FixedAngle { apex, .. } => {
                // Tangent length check: the excircle touches the line
                // through the apex and vertex 1 at distance s from the apex.
                let touch = ce.touch_point(2);
                let at = apex.distance(&touch, prec);
                let err = Scalar::rel_residual(&at, tri.semiperimeter()).to_f64();
                at_err = Some(at_err.unwrap_or(0.0).max(err));
                &(&r * &ra) / &k_area
            }
        };
        let vf = v.to_f64();
        v_min = v_min.min(vf);
        v_max = v_max.max(vf);
        max_err = max_err.max(Scalar::rel_residual(&v, &target).to_f64());
    }

    let rel_spread = if v_max == v_min {
        0.0
    } else {
        (v_max - v_min) / v_max.abs().max(v_min.abs())
    };
    let ok = rel_spread <= 1e-10 && max_err <= 1e-10;
    Ok(ScanReport {
        kind: match spec {
            ApexInvariantSpec::Line { .. } => "inradius_exradius_line".into(),
            ApexInvariantSpec::FixedAngle { .. } => "fixed_angle".into(),
        },
        n,
        seed,
        target: target_f,
        v_min,
        v_max,
        rel_spread,
        max_rel_err_vs_target: max_err,
        tangent_length_max_rel_err: at_err,
        tangency_max_rel: tang_max,
        ok,
    })
}

fn validate_scan_spec(spec: &ApexInvariantSpec) -> Result<()> {
    match spec {
        ApexInvariantSpec::Line {
            apex,
            line,
            lo,
            hi,
            denom,
        } => {
            if lo >= hi || *denom <= 0 {
                return Err(Error::InvalidSpec("empty placement range".into()));
            }
            if line.side_of(apex) == 0 {
                return Err(Error::InvalidSpec("apex lies on the base line".into()));
            }
            Ok(())
        }
        ApexInvariantSpec::FixedAngle {
            dir1,
            dir2,
            lo,
            hi,
            denom,
            ..
        } => {
            if lo >= hi || *denom <= 0 || *lo < 0 {
                return Err(Error::InvalidSpec("empty placement range".into()));
            }
            let cross = &(&dir1.0 * &dir2.1) - &(&dir1.1 * &dir2.0);
            if cross.is_zero() {
                return Err(Error::InvalidSpec("rays must be distinct".into()));
            }
            Ok(())
        }
    }
}

fn scan_target(spec: &ApexInvariantSpec, prec: Prec) -> Scalar {
    match spec {
        ApexInvariantSpec::Line { apex, line, .. } => {
            let h = distance_point_to_line(apex, line, prec);
            Scalar::from_int(2) / &h
        }
        ApexInvariantSpec::FixedAngle { dir1, dir2, .. } => {
            // tan(theta/2) = sin(theta) / (1 + cos(theta)) from the ray
            // directions, using one square root.
            let cross = (&(&dir1.0 * &dir2.1) - &(&dir1.1 * &dir2.0)).abs();
            let dot = &(&dir1.0 * &dir2.0) + &(&dir1.1 * &dir2.1);
            let n1 = (&(&dir1.0 * &dir1.0) + &(&dir1.1 * &dir1.1)).sqrt(prec);
            let n2 = (&(&dir2.0 * &dir2.0) + &(&dir2.1 * &dir2.1)).sqrt(prec);
            let norm = n1 * n2;
            let sin = cross / &norm;
            let cos = dot / &norm;
            sin / (Scalar::one() + cos)
        }
    }
}

/// One closed-form-oracle cross-check line item.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CrosscheckItem {
    pub name: String,
    pub max_rel_err: f64,
    pub failures: u64,
}

/// Report of the oracle cross-check suite.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CrosscheckReport {
    pub n: u64,
    pub seed: u64,
    pub tolerance: f64,
    pub items: Vec<CrosscheckItem>,
    pub ok: bool,
}

/// Cross-checks the closed-form formulas against coordinate constructions on
/// `n` sampled triangles: cevian lengths, section ratios, contact lengths
/// against constructed tangency points, and the exradius formula against the
/// constructed circle radius.
pub fn oracle_crosschecks(seed: u64, n: u64, prec: Prec) -> Result<CrosscheckReport> {
    const TOL: f64 = 1e-10;
    let spec = SamplerSpec::new(SamplerFamily::General, seed);

    struct Acc {
        name: &'static str,
        max: f64,
        failures: u64,
    }
    impl Acc {
        fn push(&mut self, rel: f64) {
            self.max = self.max.max(rel);
            if rel > TOL {
                self.failures += 1;
            }
        }
    }
    let mut accs = [
        Acc { name: "stewart_cevian_lengths", max: 0.0, failures: 0 },
        Acc { name: "menelaus_section_ratios", max: 0.0, failures: 0 },
        Acc { name: "gergonne_contact_lengths", max: 0.0, failures: 0 },
        Acc { name: "nagel_contact_lengths", max: 0.0, failures: 0 },
        Acc { name: "incircle_contact_point", max: 0.0, failures: 0 },
        Acc { name: "excircle_contact_point", max: 0.0, failures: 0 },
        Acc { name: "excircle_tangent_length_from_apex", max: 0.0, failures: 0 },
        Acc { name: "exradius_formula_vs_construction", max: 0.0, failures: 0 },
    ];

    for k in 0..n {
        let t = sample_triangle(&spec, k, prec)?;
        let (la, lb, lc) = t.side_lengths();
        let s = t.semiperimeter();

        // (i) Stewart cevian lengths vs coordinate distances to the Nagel feet.
        let nagel = cevian_triad(&t, CenterKind::Nagel)?;
        let (ad, be, cf) = nagel_cevian_lengths(la, lb, lc, prec)?;
        let rel = |x: &Scalar, y: &Scalar| Scalar::rel_residual(x, y).to_f64();
        accs[0].push(rel(&ad, &t.a().distance(nagel.d(), prec)));
        accs[0].push(rel(&be, &t.b().distance(nagel.e(), prec)));
        accs[0].push(rel(&cf, &t.c().distance(nagel.f(), prec)));

        // (ii) Menelaus section ratios vs coordinate split of the cevians.
        let (ra, rb, rc) = nagel_section_ratios(la, lb, lc)?;
        let coord_ratio = |v: &Point, p: &Point, g: &Point| -> Scalar {
            v.distance(p, prec) / p.distance(g, prec)
        };
        accs[1].push(rel(&ra, &coord_ratio(t.a(), nagel.p(), nagel.d())));
        accs[1].push(rel(&rb, &coord_ratio(t.b(), nagel.p(), nagel.e())));
        accs[1].push(rel(&rc, &coord_ratio(t.c(), nagel.p(), nagel.f())));

        // (iii) Contact lengths: Gergonne feet at s-b from B, Nagel feet at
        // s-c from B, cyclically.
        let gergonne = cevian_triad(&t, CenterKind::Gergonne)?;
        accs[2].push(rel(&t.b().distance(gergonne.d(), prec), &(s - lb)));
        accs[2].push(rel(&t.c().distance(gergonne.e(), prec), &(s - lc)));
        accs[2].push(rel(&t.a().distance(gergonne.f(), prec), &(s - la)));
        accs[3].push(rel(&t.b().distance(nagel.d(), prec), &(s - lc)));
        accs[3].push(rel(&t.c().distance(nagel.e(), prec), &(s - la)));
        accs[3].push(rel(&t.a().distance(nagel.f(), prec), &(s - lb)));

        // Constructed tangency points agree with the same contact lengths.
        let inc = incircle(&t)?;
        let touch_bc = inc.touch_point(0);
        accs[4].push(rel(&t.b().distance(&touch_bc, prec), &(s - lb)));
        let exc = excircle(&t, 0)?;
        let exc_touch_bc = exc.touch_point(0);
        accs[5].push(rel(&t.b().distance(&exc_touch_bc, prec), &(s - lc)));

        // Tangent length from vertex A to the far excircle along line AB.
        let exc_touch_ab = exc.touch_point(2);
        accs[6].push(rel(&t.a().distance(&exc_touch_ab, prec), s));

        // (iv) Exradius formula vs constructed radius, all three sides.
        for side in 0..3 {
            let formula = exradius(&t, side);
            let circ = excircle(&t, side)?;
            accs[7].push(rel(&formula, circ.radius()));
        }
    }

    let items: Vec<CrosscheckItem> = accs
        .iter()
        .map(|a| CrosscheckItem {
            name: a.name.to_string(),
            max_rel_err: a.max,
            failures: a.failures,
        })
        .collect();
    let ok = items.iter().all(|i| i.failures == 0);
    Ok(CrosscheckReport {
        n,
        seed,
        tolerance: TOL,
        items,
        ok,
    })
}
