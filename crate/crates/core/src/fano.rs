//! Analyses specific to smooth toric Fano 4-folds: the invariant `c_X`,
//! exceptional planes and lines, flip transforms, non-movable divisors and
//! the Picard-number bound audit.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg;
use crate::mds::{self, ContractionKind, ConeInventory};
use crate::mmp::{self, MoriTrace, StepKind, Strategy};
use crate::scalar::{self, Int};
use crate::toric::{ContractionType, ExtremalRay, Fan};

/// `dim N₁(D_j, X)`: rank of the span of the wall curves inside `D_j`.
pub fn n1_dim<I: Int>(fan: &Fan<I>, j: usize) -> usize {
    let classes: Vec<Vec<I>> = fan
        .walls()
        .iter()
        .filter(|w| w.rays.contains(&j))
        .map(|w| w.class.clone())
        .collect();
    linalg::rank(&classes, fan.picard_number())
}

/// `c_X = max codim N₁(D, X)` over invariant prime divisors, with a ray
/// attaining it (the first one).
pub fn c_invariant<I: Int>(fan: &Fan<I>) -> (usize, usize) {
    let rho = fan.picard_number();
    let mut best = (0, 0);
    for j in 0..fan.num_rays() {
        let c = rho - n1_dim(fan, j);
        if j == 0 || c > best.0 {
            best = (c, j);
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NonmovableType {
    ThreeTwo,
    ThreeOne,
    ThreeZeroP3,
    ThreeZeroQ,
    Other,
}

impl fmt::Display for NonmovableType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NonmovableType::ThreeTwo => "(3,2)",
            NonmovableType::ThreeOne => "(3,1)",
            NonmovableType::ThreeZeroP3 => "(3,0)^P3",
            NonmovableType::ThreeZeroQ => "(3,0)^Q",
            NonmovableType::Other => "other",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorProfile {
    pub divisor: usize,
    pub label: usize,
    pub n1_dim: usize,
    pub codim: usize,
    pub movable: bool,
    pub type_tag: Option<NonmovableType>,
    pub evidence: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalPlane<I> {
    /// The 2-cone `τ = cone(u, v)` with `L = V(τ)`.
    pub tau: [usize; 2],
    /// The three rays completing `τ` to the cones of its star.
    pub apexes: [usize; 3],
    pub walls: [usize; 3],
    /// Class of a line in `L`.
    pub line_class: Vec<I>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalLine<I> {
    pub wall: usize,
    pub rays: Vec<usize>,
    pub class: Vec<I>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalLocusReport<I> {
    pub planes: Vec<ExceptionalPlane<I>>,
    pub lines: Vec<ExceptionalLine<I>>,
    /// `disjoint[p][l]`: plane `p` and line `l` share no cone.
    pub disjoint: Vec<Vec<bool>>,
}

impl<I> ExceptionalLocusReport<I> {
    pub fn all_disjoint(&self) -> bool {
        self.disjoint.iter().flatten().all(|&d| d)
    }

    /// Planes contained in the invariant divisor `D_j`.
    pub fn planes_in(&self, j: usize) -> Vec<&ExceptionalPlane<I>> {
        self.planes.iter().filter(|p| p.tau.contains(&j)).collect()
    }
}

fn require_smooth_4fold<I: Int>(fan: &Fan<I>) -> Result<()> {
    if fan.dim() != 4 {
        return Err(Error::precondition(format!("expected a 4-fold, got dimension {}", fan.dim())));
    }
    if !fan.is_smooth() {
        return Err(Error::precondition("the fan is not smooth"));
    }
    Ok(())
}

fn pattern<I: Int>(relation: &[I], minus: &[usize], plus: &[usize]) -> bool {
    relation.iter().enumerate().all(|(k, x)| {
        let want = if minus.contains(&k) {
            -1
        } else if plus.contains(&k) {
            1
        } else {
            0
        };
        *x == I::from_i64_exact(want)
    })
}

/// Planes `L ≅ P²` with normal bundle `O(-1)²` and lines `l ≅ P¹` with normal
/// bundle `O(-1)³`, read off the wall relations.
pub fn detect_exceptional_loci<I: Int>(fan: &Fan<I>) -> Result<ExceptionalLocusReport<I>> {
    require_smooth_4fold(fan)?;
    let mut planes = Vec::new();
    let mut pairs: Vec<[usize; 2]> = fan
        .cones()
        .iter()
        .flat_map(|c| {
            (0..4).flat_map(move |a| (a + 1..4).map(move |b| [c[a], c[b]]))
        })
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    for tau in pairs {
        let star = fan.star(&tau);
        if star.len() != 3 {
            continue;
        }
        let mut apexes: Vec<usize> = star
            .iter()
            .flat_map(|&c| fan.cones()[c].iter().copied().filter(|r| !tau.contains(r)))
            .collect();
        apexes.sort_unstable();
        apexes.dedup();
        if apexes.len() != 3 {
            continue;
        }
        let mut walls = Vec::new();
        for &a in &apexes {
            let mut w = vec![tau[0], tau[1], a];
            w.sort_unstable();
            match fan.wall_index(&w) {
                Some(wi) if pattern(&fan.walls()[wi].relation, &tau, &apexes) => walls.push(wi),
                _ => break,
            }
        }
        if walls.len() != 3 {
            continue;
        }
        planes.push(ExceptionalPlane {
            tau,
            apexes: [apexes[0], apexes[1], apexes[2]],
            walls: [walls[0], walls[1], walls[2]],
            line_class: fan.walls()[walls[0]].class.clone(),
        });
    }
    let lines: Vec<ExceptionalLine<I>> = fan
        .walls()
        .iter()
        .enumerate()
        .filter(|(_, w)| pattern(&w.relation, &w.rays, &w.opposite))
        .map(|(i, w)| ExceptionalLine {
            wall: i,
            rays: w.rays.clone(),
            class: w.class.clone(),
        })
        .collect();
    let disjoint = planes
        .iter()
        .map(|p| {
            lines
                .iter()
                .map(|l| {
                    let mut s: Vec<usize> = p.tau.iter().chain(&l.rays).copied().collect();
                    s.sort_unstable();
                    s.dedup();
                    !fan.is_cone(&s)
                })
                .collect()
        })
        .collect();
    Ok(ExceptionalLocusReport { planes, lines, disjoint })
}

/// Checks attached to one flip step of a trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipAudit {
    pub step: usize,
    /// `K · σ` on the model before the step.
    pub k_sign: i8,
    pub removed_walls: usize,
    pub added_walls: usize,
    /// `D·C = -D̃·l` for every removed wall `C`, added wall `l` and ray divisor `D`.
    pub intersection_identity: bool,
    /// Wall curves present on both sides of the flip.
    pub tracked_curves: usize,
    /// Largest number of exceptional-line incidences of a tracked curve.
    pub max_incidences: usize,
    /// `-K_X̃·C = -K_X·C_X + s` (oriented K-negatively), with `s` the
    /// incidence count, and `-K_X̃·C ≥ 1 + s` whenever `X` is Fano.
    pub degree_inequality: bool,
    /// `(label, sign of D·σ, change of dim N₁(D))` for every ray divisor.
    pub dim_changes: Vec<(usize, i8, i64)>,
    /// Divisors with `D·σ < 0` lose at most one dimension, those with
    /// `D·σ > 0` gain at most one.
    pub dim_change_ok: bool,
}

impl FlipAudit {
    pub fn ok(&self) -> bool {
        self.intersection_identity && self.degree_inequality && self.dim_change_ok
    }
}

/// Audit of one flip `before ⇢ after` along the small ray `ray` of `before`.
pub fn audit_flip<I: Int>(step: usize, before: &Fan<I>, after: &Fan<I>, ray: &ExtremalRay<I>) -> Result<FlipAudit> {
    if ray.kind != ContractionType::Small {
        return Err(Error::precondition("step is not a flip"));
    }
    // orient K-negatively: X ⇢ X̃ with K_X · σ ≤ 0
    let (x, xt, b) = if ray.k_sign() > 0 {
        (after, before, scalar::neg_vec(&ray.relation))
    } else {
        (before, after, ray.relation.clone())
    };
    let nb = scalar::neg_vec(&b);
    let removed: Vec<usize> = (0..x.walls().len())
        .filter(|&w| xt.wall_index(&x.walls()[w].rays).is_none())
        .collect();
    let added: Vec<usize> = (0..xt.walls().len())
        .filter(|&w| x.wall_index(&xt.walls()[w].rays).is_none())
        .collect();
    let intersection_identity = !removed.is_empty()
        && !added.is_empty()
        && removed.iter().all(|&w| x.walls()[w].relation == b)
        && added.iter().all(|&w| xt.walls()[w].relation == nb);

    let atiyah = {
        let minus = b.iter().filter(|v| v.is_negative()).count();
        let plus = b.iter().filter(|v| v.is_positive()).count();
        minus == 2 && plus == 3 && b.iter().all(|v| v.abs() <= I::one())
    };
    let x_fano = x.is_fano();
    let mut tracked = 0;
    let mut max_s = 0;
    let mut degree_inequality = true;
    for w in xt.walls() {
        let Some(wx) = x.wall_index(&w.rays) else { continue };
        tracked += 1;
        let before_rel = &x.walls()[wx].relation;
        let diff: Vec<I> = w.relation.iter().zip(before_rel).map(|(a, c)| scalar::sub(a, c)).collect();
        // exceptional lines l of X̃ meeting C: fixed points on both curves
        let s: usize = added
            .iter()
            .map(|&l| {
                let mut u: Vec<usize> = xt.walls()[l].rays.iter().chain(&w.rays).copied().collect();
                u.sort_unstable();
                u.dedup();
                xt.star(&u).len()
            })
            .sum();
        max_s = max_s.max(s);
        let s_i = I::from_usize(s).expect("small count");
        let deg_before = before_rel.iter().fold(I::zero(), |a, v| scalar::add(&a, v));
        let deg_after = w.relation.iter().fold(I::zero(), |a, v| scalar::add(&a, v));
        let ok = if atiyah {
            let expected: Vec<I> = b.iter().map(|v| scalar::mul(v, &s_i)).collect();
            diff == expected
                && deg_after == scalar::add(&deg_before, &s_i)
                && (!x_fano || deg_after >= scalar::add(&I::one(), &s_i))
        } else {
            deg_after >= deg_before
        };
        degree_inequality &= ok;
    }

    let nb_labels = before.labels();
    let mut dim_changes = Vec::new();
    let mut dim_change_ok = true;
    for k in 0..before.num_rays() {
        let sign = scalar::sign(&ray.relation[k]);
        let change = n1_dim(after, k) as i64 - n1_dim(before, k) as i64;
        let ok = match sign {
            -1 => change == 0 || change == -1,
            1 => change == 0 || change == 1,
            _ => change == 0,
        };
        dim_change_ok &= ok;
        dim_changes.push((nb_labels[k], sign, change));
    }
    Ok(FlipAudit {
        step,
        k_sign: ray.k_sign(),
        removed_walls: removed.len(),
        added_walls: added.len(),
        intersection_identity,
        tracked_curves: tracked,
        max_incidences: max_s,
        degree_inequality,
        dim_changes,
        dim_change_ok,
    })
}

/// Audits every flip of a Mori program trace.
pub fn sqm_degree_audit<I: Int>(trace: &MoriTrace<I>) -> Result<Vec<FlipAudit>> {
    trace
        .steps
        .iter()
        .filter(|s| s.kind == StepKind::Flip)
        .map(|s| audit_flip(s.index, &s.fan_before, &s.fan_after, &s.ray))
        .collect()
}

/// `-K · C` along the chain of models of the leading flips of a trace, for
/// the invariant curve given by the wall with ray labels `wall_labels` on
/// the last flipped model. Entry `i` is the degree on the model before flip `i`;
/// the last entry is on the last flipped model.
pub fn curve_degree_chain<I: Int>(trace: &MoriTrace<I>, wall_labels: &[usize]) -> Result<Vec<I>> {
    let flips: Vec<_> = trace.steps.iter().take_while(|s| s.kind == StepKind::Flip).collect();
    let mut models: Vec<&Fan<I>> = flips.iter().map(|s| &s.fan_before).collect();
    models.push(flips.last().map_or(&trace.initial, |s| &s.fan_after));
    let mut out = Vec::new();
    for m in models {
        let mut w: Vec<usize> = wall_labels
            .iter()
            .map(|&l| m.index_of_label(l).ok_or_else(|| Error::InvalidArgument(format!("unknown ray label {l}"))))
            .collect::<Result<_>>()?;
        w.sort_unstable();
        let wi = m
            .wall_index(&w)
            .ok_or_else(|| Error::precondition("curve transform not trackable: it lies in a flipping locus"))?;
        out.push(m.walls()[wi].anticanonical_degree());
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassifyMode {
    /// Enforces the hypotheses `ρ ≥ 6` and Fano.
    Strict,
    /// Runs the geometric sub-tests regardless of `ρ`.
    Audit,
}

#[derive(Clone, Debug)]
pub struct NonmovableClassification<I> {
    pub divisor: usize,
    pub tag: NonmovableType,
    pub flips: usize,
    pub trace: Option<MoriTrace<I>>,
    pub target_smooth: bool,
    pub target_fano: bool,
    /// Flip count at least `ρ - 4` (required for the types other than (3,2)).
    pub flip_bound: bool,
    pub evidence: Vec<String>,
}

impl<I: Int> NonmovableClassification<I> {
    /// Whether the classification agrees with the structure expected for
    /// non-movable divisors on Fano 4-folds with `ρ ≥ 6`.
    pub fn consistent(&self) -> bool {
        match self.tag {
            NonmovableType::ThreeTwo => self.flips == 0,
            NonmovableType::ThreeOne | NonmovableType::ThreeZeroP3 => {
                self.flip_bound && self.target_smooth && self.target_fano
            }
            NonmovableType::ThreeZeroQ => self.flip_bound && self.target_fano,
            NonmovableType::Other => false,
        }
    }
}

fn divisorial_tag<I: Int>(ray: &ExtremalRay<I>, e: usize, target: &Fan<I>, evidence: &mut Vec<String>) -> NonmovableType {
    if ray.kind != ContractionType::Divisorial(e) {
        evidence.push(format!("terminal contraction is {} and does not contract the divisor", ray.kind));
        return NonmovableType::Other;
    }
    let unit = ray.negative.iter().all(|&k| ray.relation[k] == -I::one())
        && ray.positive.iter().all(|&k| ray.relation[k] == I::one());
    evidence.push(format!(
        "divisorial contraction: |J+| = {}, image dim {}, relation {}",
        ray.positive.len(),
        ray.image_dim,
        mmp::fmt_vec(&ray.relation)
    ));
    match (ray.image_dim, unit && target.is_smooth()) {
        (2, true) => NonmovableType::ThreeTwo,
        (1, true) => {
            evidence.push("blow-up of a smooth invariant curve; exceptional divisor is a P2-bundle".into());
            NonmovableType::ThreeOne
        }
        (0, true) => {
            evidence.push("blow-up of a smooth point; exceptional divisor is P3".into());
            NonmovableType::ThreeZeroP3
        }
        (0, false) if ray.positive.len() == 5 => {
            // cone over a quadric surface; unreachable for simplicial fans
            NonmovableType::ThreeZeroQ
        }
        (d, _) => {
            evidence.push(format!(
                "unclassified terminal geometry: image dim {d}, target smooth = {}",
                target.is_smooth()
            ));
            NonmovableType::Other
        }
    }
}

/// Type of a non-movable invariant prime divisor `D_j` of a smooth toric
/// Fano 4-fold, obtained from the contraction that eventually contracts it.
pub fn classify_nonmovable_divisor<I: Int>(
    fan: &Fan<I>,
    inv: &ConeInventory<I>,
    j: usize,
    mode: ClassifyMode,
) -> Result<NonmovableClassification<I>> {
    require_smooth_4fold(fan)?;
    let rho = fan.picard_number();
    if mode == ClassifyMode::Strict {
        if rho < 6 {
            return Err(Error::precondition(format!("hypothesis rho >= 6 fails (rho = {rho})")));
        }
        if !fan.is_fano() {
            return Err(Error::precondition("the fan is not Fano"));
        }
    }
    if j >= fan.num_rays() {
        return Err(Error::InvalidArgument(format!("no ray {j}")));
    }
    if inv.mov.contains_point(&fan.ray_divisor_class(j)) {
        return Err(Error::precondition(format!("divisor D_{} is movable", fan.labels()[j])));
    }
    let mut evidence = Vec::new();
    // a (3,2) ray contracting D directly
    if let Some(r) = fan
        .extremal_rays()
        .into_iter()
        .find(|r| r.kind == ContractionType::Divisorial(j) && r.image_dim == 2)
    {
        let (target, _) = mmp::divisorial_contract(fan, &r)?;
        let tag = divisorial_tag(&r, j, &target, &mut evidence);
        if tag == NonmovableType::ThreeTwo {
            let planes_inside = detect_exceptional_loci(fan)?.planes_in(j).len();
            evidence.push(format!("divisor is the locus of a (3,2) ray; exceptional planes inside: {planes_inside}"));
            return Ok(NonmovableClassification {
                divisor: j,
                tag,
                flips: 0,
                trace: None,
                target_smooth: target.is_smooth(),
                target_fano: target.is_fano(),
                flip_bound: true,
                evidence,
            });
        }
    }
    let mut d = vec![I::zero(); fan.num_rays()];
    d[j] = I::one();
    let trace = mmp::run_mori_program(fan, &d, Strategy::First)?;
    let Some(step) = trace.steps.iter().find(|s| s.kind == StepKind::Divisorial) else {
        return Err(Error::internal("Mori program of a non-movable divisor has no divisorial step"));
    };
    let flips = step.index;
    let e = step
        .fan_before
        .index_of_label(fan.labels()[j])
        .ok_or_else(|| Error::internal("divisor lost before its contraction"))?;
    evidence.push(format!("{flips} flips before the divisorial contraction"));
    let tag = divisorial_tag(&step.ray, e, &step.fan_after, &mut evidence);
    let target_smooth = step.fan_after.is_smooth();
    let target_fano = step.fan_after.is_fano();
    evidence.push(format!("target smooth = {target_smooth}, Fano = {target_fano}"));
    Ok(NonmovableClassification {
        divisor: j,
        tag,
        flips,
        target_smooth,
        target_fano,
        flip_bound: flips + 4 >= rho,
        trace: Some(trace),
        evidence,
    })
}

/// Profiles of all invariant prime divisors. Non-movable divisors of smooth
/// Fano 4-folds are classified (in audit mode when `ρ < 6`).
pub fn divisor_profiles<I: Int>(fan: &Fan<I>, inv: &ConeInventory<I>) -> Result<Vec<DivisorProfile>> {
    let rho = fan.picard_number();
    let classify = fan.dim() == 4 && fan.is_smooth() && fan.is_fano();
    let mode = if rho >= 6 { ClassifyMode::Strict } else { ClassifyMode::Audit };
    (0..fan.num_rays())
        .into_par_iter()
        .map(|j| {
            let n1 = n1_dim(fan, j);
            let movable = inv.mov.contains_point(&fan.ray_divisor_class(j));
            let (type_tag, evidence) = if !movable && classify {
                let c = classify_nonmovable_divisor(fan, inv, j, mode)?;
                let mut ev = c.evidence;
                if mode == ClassifyMode::Audit {
                    ev.insert(0, format!("audit mode (rho = {rho} < 6)"));
                }
                (Some(c.tag), ev)
            } else {
                (None, Vec::new())
            };
            Ok(DivisorProfile {
                divisor: j,
                label: fan.labels()[j],
                n1_dim: n1,
                codim: rho - n1,
                movable,
                type_tag,
                evidence,
            })
        })
        .collect()
}

/// Picard numbers `(ρ₁, ρ₂)` of the factors if the 4-dimensional fan is a
/// product of two complete surface fans.
pub fn surface_product_split<I: Int>(fan: &Fan<I>) -> Option<(usize, usize)> {
    if fan.dim() != 4 {
        return None;
    }
    let n = fan.num_rays();
    let rays = fan.rays();
    for a in 0..n {
        for b in a + 1..n {
            if linalg::rank(&[rays[a].clone(), rays[b].clone()], 4) != 2 {
                continue;
            }
            let (r1, r2): (Vec<usize>, Vec<usize>) =
                (0..n).partition(|&k| linalg::rank(&[rays[a].clone(), rays[b].clone(), rays[k].clone()], 4) == 2);
            if r1.len() < 3 || r2.len() < 3 || r1[0] != a {
                continue;
            }
            let g1: Vec<Vec<I>> = r1.iter().map(|&k| rays[k].clone()).collect();
            let g2: Vec<Vec<I>> = r2.iter().map(|&k| rays[k].clone()).collect();
            if linalg::rank(&g2, 4) != 2 {
                continue;
            }
            let sat = |g: &[Vec<I>]| linalg::integer_kernel(&linalg::integer_kernel(g, 4), 4);
            let mut basis = sat(&g1);
            basis.extend(sat(&g2));
            if !linalg::determinant(&basis).abs().is_one() {
                continue;
            }
            let split = fan
                .cones()
                .iter()
                .all(|c| c.iter().filter(|k| r1.contains(k)).count() == 2);
            if split && fan.cones().len() == r1.len() * r2.len() {
                return Some((r1.len() - 2, r2.len() - 2));
            }
        }
    }
    None
}

/// One implication checked by [`audit_bounds`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub id: &'static str,
    pub statement: &'static str,
    pub hypothesis: bool,
    /// `None` when the hypothesis fails.
    pub conclusion: Option<bool>,
    pub detail: String,
}

impl BoundCheck {
    pub fn alarm(&self) -> bool {
        self.conclusion == Some(false)
    }
}

#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub rho: usize,
    pub c: usize,
    pub chambers: usize,
    pub contractions: usize,
    pub checks: Vec<BoundCheck>,
}

impl BoundsReport {
    pub fn alarms(&self) -> Vec<&BoundCheck> {
        self.checks.iter().filter(|c| c.alarm()).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "rho={} c={} chambers={} contractions={}\n",
            self.rho, self.c, self.chambers, self.contractions
        );
        for c in &self.checks {
            let concl = match c.conclusion {
                None => "n/a",
                Some(true) => "holds",
                Some(false) => "ALARM",
            };
            s.push_str(&format!(
                "check {} hypothesis={} conclusion={} :: {} [{}]\n",
                c.id, c.hypothesis, concl, c.statement, c.detail
            ));
        }
        s
    }
}

/// Identifiers of the checks in [`audit_bounds`], in report order.
pub const BOUND_CHECKS: [&str; 9] = [
    "elementary-fiber",
    "qe-fiber-nonregular",
    "qe-nonregular-curve",
    "qe-nonregular-surface",
    "qe-surface",
    "elementary-dim3",
    "movable-eff-ray",
    "nonmovable-structure",
    "c-at-least-3",
];

struct FiberContraction {
    target_rho: usize,
    target_dim: usize,
    target_smooth_rays: Option<usize>,
    regular: bool,
    qe: bool,
}

/// Evaluates the Picard-number bounds and structure results whose hypotheses
/// hold for `X`. A failed conclusion is a falsification alarm.
pub fn audit_bounds<I: Int>(fan: &Fan<I>, chamber_cap: usize) -> Result<BoundsReport> {
    require_smooth_4fold(fan)?;
    if !fan.is_fano() {
        return Err(Error::precondition("the fan is not Fano"));
    }
    let rho = fan.picard_number();
    let (c, _) = c_invariant(fan);
    let inv = mds::cone_inventory(fan)?;
    let atlas = mds::chamber_atlas(fan, chamber_cap)?;
    let contractions = mds::rational_contractions(&atlas, &inv, None);
    let fibers: Vec<FiberContraction> = contractions
        .par_iter()
        .filter(|rc| rc.kind == ContractionKind::FiberType)
        .map(|rc| {
            let model = &atlas.chambers[rc.host_chamber].model;
            let target = mds::contraction_target(model, &rc.sigma)?;
            let (qe, _) = mds::is_quasi_elementary(&inv, &rc.sigma)?;
            Ok(FiberContraction {
                target_rho: rc.target_rho,
                target_dim: target.dim,
                target_smooth_rays: target.fan.as_ref().filter(|y| y.is_smooth()).map(Fan::num_rays),
                regular: rc.regular,
                qe,
            })
        })
        .collect::<Result<_>>()?;
    let mut checks = Vec::new();
    let mut push = |id: &'static str, statement: &'static str, hypothesis: bool, conclusion: bool, detail: String| {
        checks.push(BoundCheck {
            id,
            statement,
            hypothesis,
            conclusion: hypothesis.then_some(conclusion),
            detail,
        });
    };
    let count = |p: &dyn Fn(&FiberContraction) -> bool| fibers.iter().filter(|f| p(f)).count();

    let n = count(&|f| f.target_rho + 1 == rho);
    push(
        "elementary-fiber",
        "elementary rational contraction of fiber type => rho <= 11",
        n > 0,
        rho <= 11,
        format!("{n} such contractions, rho = {rho}"),
    );
    let n = count(&|f| f.qe && !f.regular);
    push(
        "qe-fiber-nonregular",
        "non-regular quasi-elementary rational contraction of fiber type => rho <= 17",
        n > 0,
        rho <= 17,
        format!("{n} such contractions, rho = {rho}"),
    );
    let n = count(&|f| f.qe && !f.regular && f.target_dim == 1);
    push(
        "qe-nonregular-curve",
        "non-regular quasi-elementary rational contraction onto a curve => rho <= 10",
        n > 0,
        rho <= 10,
        format!("{n} such contractions, rho = {rho}"),
    );
    let onto_surface: Vec<&FiberContraction> =
        fibers.iter().filter(|f| f.qe && !f.regular && f.target_dim == 2).collect();
    push(
        "qe-nonregular-surface",
        "non-regular quasi-elementary rational contraction onto a surface Y => rho <= rho_Y + 8",
        !onto_surface.is_empty(),
        onto_surface.iter().all(|f| rho <= f.target_rho + 8),
        format!("{} such contractions, rho = {rho}", onto_surface.len()),
    );
    let n = count(&|f| f.qe && f.target_dim == 2);
    push(
        "qe-surface",
        "quasi-elementary rational contraction onto a surface => rho <= 18",
        n > 0,
        rho <= 18,
        format!("{n} such contractions, rho = {rho}"),
    );
    let n = count(&|f| f.target_rho + 1 == rho && f.target_dim == 3);
    push(
        "elementary-dim3",
        "elementary rational contraction onto a 3-fold => rho <= 11",
        n > 0,
        rho <= 11,
        format!("{n} such contractions, rho = {rho}"),
    );
    let eff_rays = inv.eff.rays();
    let movable_on_ray: Vec<usize> = (0..fan.num_rays())
        .filter(|&j| {
            let cl = scalar::primitive(fan.ray_divisor_class(j));
            inv.mov.contains_point(&cl) && eff_rays.contains(&cl)
        })
        .map(|j| fan.labels()[j])
        .collect();
    push(
        "movable-eff-ray",
        "movable prime divisor spanning a ray of Eff => rho <= 11",
        !movable_on_ray.is_empty(),
        rho <= 11,
        format!("divisors {movable_on_ray:?}, rho = {rho}"),
    );
    let nonmovable = mds::nonmovable_prime_divisors(fan, &inv)?;
    let (hyp, concl, detail) = if rho >= 6 && !nonmovable.is_empty() {
        let results: Vec<NonmovableClassification<I>> = nonmovable
            .par_iter()
            .map(|(j, _)| classify_nonmovable_divisor(fan, &inv, *j, ClassifyMode::Strict))
            .collect::<Result<_>>()?;
        let tags: Vec<String> = results
            .iter()
            .map(|r| format!("D{}:{}/{}flips", fan.labels()[r.divisor], r.tag, r.flips))
            .collect();
        (true, results.iter().all(|r| r.consistent()), tags.join(" "))
    } else {
        (false, true, format!("{} non-movable divisors, rho = {rho}", nonmovable.len()))
    };
    push(
        "nonmovable-structure",
        "rho >= 6: each non-movable prime divisor is a (3,2) locus or is contracted after >= rho-4 flips onto a Fano target",
        hyp,
        concl,
        detail,
    );
    let product = surface_product_split(fan);
    let qe_p2 = count(&|f| f.qe && f.regular && f.target_dim == 2 && f.target_rho == 1 && f.target_smooth_rays == Some(3));
    let qe_f = count(&|f| f.qe && f.regular && f.target_dim == 2 && f.target_rho == 2 && f.target_smooth_rays == Some(4));
    let item1 = product.is_some_and(|(a, b)| a.max(b) == c + 1);
    let item2 = c == 3 && rho == 5 && qe_p2 > 0;
    let item3 = c == 3 && rho == 6 && qe_f > 0;
    push(
        "c-at-least-3",
        "c >= 3 => product of del Pezzo surfaces, or c = 3 with rho = 5 (onto P2) or rho = 6 (onto F1 or P1xP1)",
        c >= 3,
        item1 || item2 || item3,
        format!("c = {c}, product split {product:?}, QE onto P2: {qe_p2}, onto rho-2 surfaces: {qe_f}"),
    );
    Ok(BoundsReport {
        rho,
        c,
        chambers: atlas.chambers.len(),
        contractions: contractions.len(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, DelPezzo};

    #[test]
    fn c_of_surfaces() {
        for dp in DelPezzo::ALL {
            let f = catalog::toric_del_pezzo::<i64>(dp);
            assert_eq!(c_invariant(&f).0, dp.picard_number() - 1);
        }
        let p4 = catalog::projective_space::<i64>(4).unwrap();
        assert_eq!(c_invariant(&p4).0, 0);
    }

    #[test]
    fn exceptional_loci_of_the_example() {
        let x = catalog::example_blpt_p1x4::<i64>();
        let r = detect_exceptional_loci(&x).unwrap();
        assert_eq!((r.planes.len(), r.lines.len()), (0, 4));
        let u = 8;
        for l in &r.lines {
            assert_eq!(x.walls()[l.wall].anticanonical_degree(), -1);
            assert_eq!(x.walls()[l.wall].relation[u], 1);
        }
        let y = catalog::example_fano_flip_model::<i64>();
        let r = detect_exceptional_loci(&y).unwrap();
        // six more planes lie outside D
        assert_eq!((r.planes.len(), r.lines.len()), (10, 0));
        assert_eq!(r.planes_in(u).len(), 4);
        for p in r.planes_in(u) {
            assert!(p.tau.contains(&u));
            assert_eq!(y.walls()[p.walls[0]].relation[u], -1);
        }
        let p = catalog::lookup("p1x4").unwrap().build::<i64>();
        let r = detect_exceptional_loci(&p).unwrap();
        assert!(r.planes.is_empty() && r.lines.is_empty());
    }

    #[test]
    fn flips_of_the_example_are_audited() {
        let y = catalog::example_fano_flip_model::<i64>();
        let mut d = vec![0i64; y.num_rays()];
        d[8] = 1;
        let trace = mmp::run_mori_program(&y, &d, Strategy::First).unwrap();
        assert_eq!(trace.flips(), 4);
        let audits = sqm_degree_audit(&trace).unwrap();
        assert_eq!(audits.len(), 4);
        for a in &audits {
            assert!(a.ok(), "{a:?}");
            assert_eq!(a.k_sign, -1);
            assert!(a.dim_changes.iter().any(|&(l, _, ch)| l == 8 && ch == -1));
        }
        assert!(audits.iter().any(|a| a.max_incidences > 0));
    }

    #[test]
    fn classification_of_the_example() {
        let y = catalog::example_fano_flip_model::<i64>();
        let inv = mds::cone_inventory(&y).unwrap();
        assert!(matches!(
            classify_nonmovable_divisor(&y, &inv, 8, ClassifyMode::Strict),
            Err(Error::Precondition(_))
        ));
        let c = classify_nonmovable_divisor(&y, &inv, 8, ClassifyMode::Audit).unwrap();
        assert_eq!(c.tag, NonmovableType::ThreeZeroP3);
        assert_eq!(c.flips, 4);
        assert!(c.target_smooth && c.target_fano && c.flip_bound);
        let movable = (0..y.num_rays()).find(|&j| inv.mov.contains_point(&y.ray_divisor_class(j))).unwrap();
        assert!(classify_nonmovable_divisor(&y, &inv, movable, ClassifyMode::Audit).is_err());
    }

    #[test]
    fn product_split() {
        let p = catalog::lookup("dp-bl3-bl3").unwrap().build::<i64>();
        assert_eq!(surface_product_split(&p), Some((4, 4)));
        assert_eq!(c_invariant(&p).0, 3);
        let x = catalog::example_fano_flip_model::<i64>();
        assert_eq!(surface_product_split(&x), None);
    }
}
