//! Toric Mori programs: flips, divisorial contractions and ray selection.
//!
//! Divisors are carried as ray-coefficient vectors. A flip keeps the ray set,
//! so coefficients are unchanged; a divisorial contraction drops the
//! coefficient of the contracted ray, which is exactly the pushforward.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{self, Int};
use crate::toric::{ContractionType, ExtremalRay, Fan};

pub const DEFAULT_STEP_CAP: usize = 1000;

/// Pushforward of divisors along a divisorial contraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushforward {
    pub removed_index: usize,
    pub removed_label: usize,
}

impl Pushforward {
    pub fn apply<I: Int>(&self, a: &[I]) -> Vec<I> {
        a.iter()
            .enumerate()
            .filter(|&(j, _)| j != self.removed_index)
            .map(|(_, x)| x.clone())
            .collect()
    }
}

fn circuit_support<I: Int>(ray: &ExtremalRay<I>) -> Vec<usize> {
    let mut s: Vec<usize> = ray.negative.iter().chain(&ray.positive).copied().collect();
    s.sort_unstable();
    s
}

/// The distinct zero-coefficient parts `ν` of the walls of `ray`.
fn wall_complements<I: Int>(fan: &Fan<I>, ray: &ExtremalRay<I>, support: &[usize]) -> BTreeSet<Vec<usize>> {
    ray.walls
        .iter()
        .map(|&w| {
            fan.walls()[w]
                .rays
                .iter()
                .copied()
                .filter(|r| !support.contains(r))
                .collect()
        })
        .collect()
}

fn joined(nu: &[usize], support: &[usize], omit: usize) -> Vec<usize> {
    let mut c: Vec<usize> = nu.iter().chain(support.iter().filter(|&&r| r != omit)).copied().collect();
    c.sort_unstable();
    c
}

/// Flip along a small extremal ray: for every `ν`, the cones `ν ∪ (J ∖ j)`
/// with `j ∈ J₊` are replaced by those with `j ∈ J₋`.
pub fn flip<I: Int>(fan: &Fan<I>, ray: &ExtremalRay<I>) -> Result<Fan<I>> {
    if ray.kind != ContractionType::Small {
        return Err(Error::precondition(format!("ray is not small ({})", ray.kind)));
    }
    let support = circuit_support(ray);
    let mut cones: BTreeSet<Vec<usize>> = fan.cones().iter().cloned().collect();
    let mut removed = BTreeSet::new();
    for nu in wall_complements(fan, ray, &support) {
        for &j in &ray.positive {
            let c = joined(&nu, &support, j);
            if !cones.remove(&c) {
                return Err(Error::internal(format!(
                    "flip of circuit {support:?}: expected cone {c:?} is missing"
                )));
            }
            removed.insert(c);
        }
        for &j in &ray.negative {
            cones.insert(joined(&nu, &support, j));
        }
    }
    let star: BTreeSet<Vec<usize>> = fan.star(&ray.negative).into_iter().map(|c| fan.cones()[c].clone()).collect();
    if star != removed {
        return Err(Error::internal(format!(
            "flip of circuit {support:?}: flipping locus does not match the star of J-"
        )));
    }
    fan.with_cones(cones.into_iter().collect())
        .map_err(|e| Error::internal(format!("flip of circuit {support:?} produced an invalid fan: {e}")))
}

/// Contracts the exceptional divisor of a divisorial extremal ray.
pub fn divisorial_contract<I: Int>(fan: &Fan<I>, ray: &ExtremalRay<I>) -> Result<(Fan<I>, Pushforward)> {
    let ContractionType::Divisorial(e) = ray.kind else {
        return Err(Error::precondition(format!("ray is not divisorial ({})", ray.kind)));
    };
    let support = circuit_support(ray);
    let mut cones: BTreeSet<Vec<usize>> = fan.cones().iter().cloned().collect();
    let mut removed = BTreeSet::new();
    let mut merged = BTreeSet::new();
    for nu in wall_complements(fan, ray, &support) {
        for &j in &ray.positive {
            let c = joined(&nu, &support, j);
            if !cones.remove(&c) {
                return Err(Error::internal(format!(
                    "contraction of ray {e}: expected cone {c:?} is missing"
                )));
            }
            removed.insert(c);
        }
        merged.insert(joined(&nu, &support, e));
    }
    let star: BTreeSet<Vec<usize>> = fan.star(&[e]).into_iter().map(|c| fan.cones()[c].clone()).collect();
    if star != removed {
        return Err(Error::internal(format!(
            "contraction of ray {e}: the star of the exceptional ray is not covered by the ray's walls"
        )));
    }
    cones.extend(merged);
    let reindex = |r: usize| if r > e { r - 1 } else { r };
    let cones: Vec<Vec<usize>> = cones.into_iter().map(|c| c.into_iter().map(reindex).collect()).collect();
    let rays: Vec<Vec<I>> = (0..fan.num_rays()).filter(|&j| j != e).map(|j| fan.ray(j).to_vec()).collect();
    let labels: Vec<usize> = (0..fan.num_rays()).filter(|&j| j != e).map(|j| fan.labels()[j]).collect();
    let out = Fan::with_labels(rays, labels, cones)
        .map_err(|err| Error::internal(format!("contraction of ray {e} produced an invalid fan: {err}")))?;
    Ok((
        out,
        Pushforward {
            removed_index: e,
            removed_label: fan.labels()[e],
        },
    ))
}

/// Extremal rays of `NE(X)` on which the divisor (ray coefficients) is negative.
pub fn negative_extremal_rays<I: Int>(fan: &Fan<I>, divisor: &[I]) -> Vec<ExtremalRay<I>> {
    fan.extremal_rays()
        .into_iter()
        .filter(|r| r.pair(divisor).is_negative())
        .collect()
}

/// Callback for interactive selection: given the model, the current divisor and
/// the divisor-negative rays, returns an index into the rays or `None` to abort.
pub type Chooser<'a, I> = dyn FnMut(&Fan<I>, &[I], &[ExtremalRay<I>]) -> Option<usize> + 'a;

pub enum Strategy<'a, I> {
    /// Lexicographically first ray by sorted wall ray sets.
    First,
    /// Uniform choice from a seeded ChaCha stream.
    Random(u64),
    /// Scaling of an ample divisor (ray coefficients); `None` picks one.
    Scaling(Option<Vec<I>>),
    Interactive(&'a mut Chooser<'a, I>),
}

impl<I> Strategy<'_, I> {
    pub fn name(&self) -> String {
        match self {
            Strategy::First => "first".into(),
            Strategy::Random(s) => format!("random:{s}"),
            Strategy::Scaling(_) => "scaling".into(),
            Strategy::Interactive(_) => "interactive".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Flip,
    Divisorial,
}

#[derive(Clone, Debug)]
pub struct MoriStep<I> {
    pub index: usize,
    pub kind: StepKind,
    pub fan_before: Fan<I>,
    pub fan_after: Fan<I>,
    /// The chosen ray, relative to `fan_before`.
    pub ray: ExtremalRay<I>,
    pub divisor_before: Vec<I>,
    pub divisor_after: Vec<I>,
    pub class_before: Vec<I>,
    pub class_after: Vec<I>,
    /// Sign of `K · σ`.
    pub k_sign: i8,
    pub pushforward: Option<Pushforward>,
}

#[derive(Clone, Debug)]
pub enum Outcome<I> {
    Semiample,
    /// A divisor-negative fiber-type ray of the final model.
    FiberType(ExtremalRay<I>),
}

#[derive(Clone, Debug)]
pub struct MoriTrace<I> {
    pub strategy: String,
    pub seed: Option<u64>,
    pub initial: Fan<I>,
    pub initial_divisor: Vec<I>,
    pub steps: Vec<MoriStep<I>>,
    pub outcome: Outcome<I>,
    pub final_fan: Fan<I>,
    pub final_divisor: Vec<I>,
}

impl<I: Int> MoriTrace<I> {
    pub fn is_fiber_type(&self) -> bool {
        matches!(self.outcome, Outcome::FiberType(_))
    }

    pub fn flips(&self) -> usize {
        self.steps.iter().filter(|s| s.kind == StepKind::Flip).count()
    }

    pub fn divisorial_steps(&self) -> usize {
        self.steps.iter().filter(|s| s.kind == StepKind::Divisorial).count()
    }

    /// Line-oriented text record; ray indices are written as stable labels.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let seed = self.seed.map_or("-".to_string(), |x| x.to_string());
        let _ = writeln!(
            s,
            "trace strategy={} seed={} dim={} rays={} divisor={}",
            self.strategy,
            seed,
            self.initial.dim(),
            self.initial.num_rays(),
            fmt_vec(&self.initial_divisor)
        );
        for st in &self.steps {
            let kind = match st.kind {
                StepKind::Flip => "flip",
                StepKind::Divisorial => "divisorial",
            };
            let _ = writeln!(
                s,
                "step {} {} ray={} D_before={} D_after={} K={}",
                st.index,
                kind,
                ray_signature(&st.fan_before, &st.ray),
                fmt_vec(&st.class_before),
                fmt_vec(&st.class_after),
                sign_char(st.k_sign)
            );
        }
        match &self.outcome {
            Outcome::Semiample => {
                let _ = writeln!(
                    s,
                    "outcome semiample D={} rays={}",
                    fmt_vec(&self.final_fan.divisor_class(&self.final_divisor)),
                    self.final_fan.num_rays()
                );
            }
            Outcome::FiberType(r) => {
                let _ = writeln!(
                    s,
                    "outcome fiber-type ray={} D={} rays={}",
                    ray_signature(&self.final_fan, r),
                    fmt_vec(&self.final_fan.divisor_class(&self.final_divisor)),
                    self.final_fan.num_rays()
                );
            }
        }
        s
    }
}

pub fn fmt_vec<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn sign_char(s: i8) -> char {
    match s {
        1 => '+',
        -1 => '-',
        _ => '0',
    }
}

/// `J-=…;J+=…;walls=…` in label coordinates.
pub fn ray_signature<I: Int>(fan: &Fan<I>, ray: &ExtremalRay<I>) -> String {
    let lab = |v: &[usize]| -> String {
        let mut l: Vec<usize> = v.iter().map(|&i| fan.labels()[i]).collect();
        l.sort_unstable();
        let p: Vec<String> = l.iter().map(ToString::to_string).collect();
        format!("{{{}}}", p.join(","))
    };
    let walls: Vec<String> = fan.ray_key(ray).iter().map(|w| lab(w)).collect();
    format!(
        "J-={};J+={};walls={}",
        lab(&ray.negative),
        lab(&ray.positive),
        walls.join("")
    )
}

type FanKey<I> = (Vec<Vec<I>>, Vec<Vec<usize>>);

fn fan_key<I: Int>(fan: &Fan<I>) -> FanKey<I> {
    (fan.rays().to_vec(), fan.cones().to_vec())
}

/// Runs Mori programs, caching extremal-ray data per fan structure.
pub struct MoriRunner<I: Int> {
    pub step_cap: usize,
    rays: Mutex<HashMap<FanKey<I>, Arc<Vec<ExtremalRay<I>>>>>,
    moves: Mutex<HashMap<(FanKey<I>, Vec<usize>), Arc<(Fan<I>, Option<Pushforward>)>>>,
}

impl<I: Int> Default for MoriRunner<I> {
    fn default() -> Self {
        Self::new(DEFAULT_STEP_CAP)
    }
}

impl<I: Int> MoriRunner<I> {
    pub fn new(step_cap: usize) -> Self {
        MoriRunner {
            step_cap,
            rays: Mutex::new(HashMap::new()),
            moves: Mutex::new(HashMap::new()),
        }
    }

    pub fn extremal_rays(&self, fan: &Fan<I>) -> Arc<Vec<ExtremalRay<I>>> {
        let key = fan_key(fan);
        if let Some(r) = self.rays.lock().expect("cache lock").get(&key) {
            return r.clone();
        }
        let r = Arc::new(fan.extremal_rays());
        self.rays.lock().expect("cache lock").insert(key, r.clone());
        r
    }

    fn apply(&self, fan: &Fan<I>, ray: &ExtremalRay<I>) -> Result<Arc<(Fan<I>, Option<Pushforward>)>> {
        let key = (fan_key(fan), ray.walls.clone());
        if let Some(m) = self.moves.lock().expect("cache lock").get(&key) {
            return Ok(m.clone());
        }
        let m = Arc::new(match ray.kind {
            ContractionType::Small => (flip(fan, ray)?, None),
            ContractionType::Divisorial(_) => {
                let (f, p) = divisorial_contract(fan, ray)?;
                (f, Some(p))
            }
            ContractionType::FiberType => return Err(Error::precondition("fiber-type rays are not birational")),
        });
        self.moves.lock().expect("cache lock").insert(key, m.clone());
        Ok(m)
    }

    /// Runs a Mori program for the divisor with ray coefficients `divisor`.
    pub fn run(&self, fan: &Fan<I>, divisor: &[I], mut strategy: Strategy<'_, I>) -> Result<MoriTrace<I>> {
        if divisor.len() != fan.num_rays() {
            return Err(Error::Shape(format!(
                "divisor has {} coefficients for {} rays",
                divisor.len(),
                fan.num_rays()
            )));
        }
        let name = strategy.name();
        let seed = match strategy {
            Strategy::Random(s) => Some(s),
            _ => None,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(0));
        let mut ample: Option<Vec<I>> = match &mut strategy {
            Strategy::Scaling(h) => {
                let h = match h.take() {
                    Some(h) => h,
                    None => fan
                        .ample_divisor()
                        .ok_or_else(|| Error::precondition("scaling requires a projective model"))?,
                };
                if h.len() != fan.num_rays() || !fan.is_ample(&h) {
                    return Err(Error::precondition("scaling divisor is not ample"));
                }
                Some(h)
            }
            _ => None,
        };

        let mut current = fan.clone();
        let mut d = divisor.to_vec();
        let mut steps = Vec::new();
        let outcome = loop {
            let rays = self.extremal_rays(&current);
            let negative: Vec<&ExtremalRay<I>> = rays.iter().filter(|r| r.pair(&d).is_negative()).collect();
            if negative.is_empty() {
                break Outcome::Semiample;
            }
            if steps.len() >= self.step_cap {
                return Err(Error::CapExceeded {
                    what: "Mori program step",
                    cap: self.step_cap,
                });
            }
            let pick = match &mut strategy {
                Strategy::First => 0,
                Strategy::Random(_) => rng.random_range(0..negative.len()),
                Strategy::Scaling(_) => scaling_choice(&negative, &d, ample.as_deref().expect("ample divisor"))?,
                Strategy::Interactive(f) => {
                    let owned: Vec<ExtremalRay<I>> = negative.iter().map(|r| (*r).clone()).collect();
                    match f(&current, &d, &owned) {
                        Some(i) if i < negative.len() => i,
                        Some(i) => return Err(Error::InvalidArgument(format!("no ray with index {i}"))),
                        None => return Err(Error::Aborted("interactive selection aborted".into())),
                    }
                }
            };
            let ray = negative[pick].clone();
            if ray.kind == ContractionType::FiberType {
                break Outcome::FiberType(ray);
            }
            let moved = self.apply(&current, &ray)?;
            let (next, push) = (&moved.0, &moved.1);
            let d_after = match push {
                Some(p) => p.apply(&d),
                None => d.clone(),
            };
            if let (Some(p), Some(h)) = (push, ample.as_mut()) {
                *h = p.apply(h);
            }
            steps.push(MoriStep {
                index: steps.len(),
                kind: if push.is_some() { StepKind::Divisorial } else { StepKind::Flip },
                class_before: current.divisor_class(&d),
                class_after: next.divisor_class(&d_after),
                fan_before: current.clone(),
                fan_after: next.clone(),
                k_sign: ray.k_sign(),
                ray,
                divisor_before: d.clone(),
                divisor_after: d_after.clone(),
                pushforward: push.clone(),
            });
            current = next.clone();
            d = d_after;
        };
        Ok(MoriTrace {
            strategy: name,
            seed,
            initial: fan.clone(),
            initial_divisor: divisor.to_vec(),
            steps,
            outcome,
            final_fan: current,
            final_divisor: d,
        })
    }
}

/// Convenience wrapper around a fresh [`MoriRunner`].
pub fn run_mori_program<I: Int>(fan: &Fan<I>, divisor: &[I], strategy: Strategy<'_, I>) -> Result<MoriTrace<I>> {
    MoriRunner::default().run(fan, divisor, strategy)
}

/// Threshold `t` at which `(1-t) D + t H` becomes trivial on `ray`.
fn threshold<I: Int>(ray: &ExtremalRay<I>, d: &[I], h: &[I]) -> Result<BigRational> {
    let dd = scalar::to_rational(&ray.pair(d));
    let hh = scalar::to_rational(&ray.pair(h));
    let den = dd.clone() - hh;
    if !den.is_negative() {
        return Err(Error::internal("scaling invariant lost: D_t is not nef on the current model"));
    }
    Ok(dd / den)
}

/// Scaling choice among the divisor-negative rays.
///
/// With `D_t = (1-t) D + t H` nef for the current `t`, the next threshold is
/// the smallest `t` keeping `D_t` nef; among the rays that become `D_t`-trivial
/// there the lexicographically first is chosen.
fn scaling_choice<I: Int>(negative: &[&ExtremalRay<I>], d: &[I], h: &[I]) -> Result<usize> {
    let ts: Vec<BigRational> = negative.iter().map(|r| threshold(r, d, h)).collect::<Result<_>>()?;
    let best = ts.iter().max().expect("nonempty").clone();
    Ok(ts.iter().position(|t| *t == best).expect("max is attained"))
}

/// Ray chosen by the scaling strategy for `(D, H)` on `fan`.
pub fn scaling_strategy<I: Int>(fan: &Fan<I>, d: &[I], h: &[I]) -> Result<ExtremalRay<I>> {
    let rays = fan.extremal_rays();
    let negative: Vec<&ExtremalRay<I>> = rays.iter().filter(|r| r.pair(d).is_negative()).collect();
    if negative.is_empty() {
        return Err(Error::precondition("divisor is already nef"));
    }
    if !rays.iter().all(|r| {
        let dd = scalar::to_rational(&r.pair(d));
        let hh = scalar::to_rational(&r.pair(h));
        // D_1 = H must be nef and the segment must reach a nef point
        !hh.is_negative() && (dd >= BigRational::zero() || hh > dd)
    }) {
        return Err(Error::precondition("H is not nef on the current model"));
    }
    let i = scaling_choice(&negative, d, h)?;
    Ok(negative[i].clone())
}

/// Result of [`me_extremal_covering_class`].
#[derive(Clone, Debug)]
pub struct CoveringClass<I> {
    /// Relation over the original rays (zero on contracted rays).
    pub relation: Vec<I>,
    /// Curve class coordinates on the original model.
    pub class: Vec<I>,
    pub trace: MoriTrace<I>,
}

/// For a one-dimensional face of `ME(X)` (given by a primitive curve class),
/// runs the scaling program for `B - H` and returns the class of the general
/// fiber of the terminal fiber-type contraction, transported back to `X`.
pub fn me_extremal_covering_class<I: Int>(fan: &Fan<I>, me_ray: &[I]) -> Result<CoveringClass<I>> {
    let rho = fan.picard_number();
    if me_ray.len() != rho {
        return Err(Error::Shape(format!("curve class of length {} with rho = {rho}", me_ray.len())));
    }
    let classes = fan.ray_divisor_classes();
    let eff = crate::cone::PolyCone::from_generators(rho, &classes, &[])?;
    let me = eff.dual();
    let target = scalar::primitive(me_ray.to_vec());
    if !me.rays().contains(&target) {
        return Err(Error::InvalidArgument("class is not an extremal ray of ME(X)".into()));
    }
    // B = sum of the ray divisors on the facet of Eff orthogonal to the ray
    let b: Vec<I> = classes
        .iter()
        .map(|c| if scalar::dot(c, &target).is_zero() { I::one() } else { I::zero() })
        .collect();
    let h = fan
        .ample_divisor()
        .ok_or_else(|| Error::precondition("model is not projective"))?;
    let d: Vec<I> = b.iter().zip(&h).map(|(x, y)| scalar::sub(x, y)).collect();
    let trace = run_mori_program(fan, &d, Strategy::Scaling(Some(h)))?;
    let Outcome::FiberType(ray) = &trace.outcome else {
        return Err(Error::internal("scaling program for B - H did not end in a fiber-type contraction"));
    };
    let mut relation = vec![I::zero(); fan.num_rays()];
    for (j, x) in ray.relation.iter().enumerate() {
        let label = trace.final_fan.labels()[j];
        let orig = fan
            .index_of_label(label)
            .ok_or_else(|| Error::internal("terminal model has an unknown ray label"))?;
        relation[orig] = x.clone();
    }
    let class = fan.class_group().curve_class(&relation);
    if scalar::primitive(class.clone()) != target {
        return Err(Error::internal(
            "covering-family class does not lie on the requested ray of ME(X)",
        ));
    }
    Ok(CoveringClass { relation, class, trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1() -> Fan<i64> {
        Fan::new(vec![vec![1], vec![-1]], vec![vec![0], vec![1]]).unwrap()
    }

    fn p1xp1() -> Fan<i64> {
        p1().product(&p1())
    }

    fn blown_up_p3_twice() -> Fan<i64> {
        let p3 = Fan::new(
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, -1, -1]],
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap();
        p3.star_subdivision(&[0, 1, 2]).unwrap().star_subdivision(&[0, 1, 3]).unwrap()
    }

    #[test]
    fn nef_divisor_is_semiample_immediately() {
        let f = p1xp1();
        let t = run_mori_program(&f, &[1, 0, 1, 0], Strategy::First).unwrap();
        assert!(t.steps.is_empty());
        assert!(matches!(t.outcome, Outcome::Semiample));
    }

    #[test]
    fn non_effective_divisor_ends_in_fiber_type() {
        let f = p1xp1();
        let t = run_mori_program(&f, &[-1, 0, 0, 0], Strategy::First).unwrap();
        assert!(t.is_fiber_type());
    }

    #[test]
    fn flop_round_trip() {
        let f = blown_up_p3_twice();
        let small: Vec<_> = f.extremal_rays().into_iter().filter(|r| r.kind == ContractionType::Small).collect();
        assert_eq!(small.len(), 1);
        let g = flip(&f, &small[0]).unwrap();
        assert_eq!(g.rays(), f.rays());
        assert_ne!(g.cones(), f.cones());
        let back: Vec<_> = g
            .extremal_rays()
            .into_iter()
            .filter(|r| r.kind == ContractionType::Small && r.relation == scalar::neg_vec(&small[0].relation))
            .collect();
        assert_eq!(back.len(), 1);
        assert_eq!(flip(&g, &back[0]).unwrap(), f);
    }

    #[test]
    fn contracting_blow_up_recovers_base() {
        let p3 = Fan::<i64>::new(
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, -1, -1]],
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap();
        let b = p3.star_subdivision(&[0, 1, 2]).unwrap();
        let r = b
            .extremal_rays()
            .into_iter()
            .find(|r| r.kind == ContractionType::Divisorial(4))
            .unwrap();
        assert_eq!((r.exc_dim, r.image_dim), (2, 0));
        let (c, push) = divisorial_contract(&b, &r).unwrap();
        assert_eq!(c, p3);
        assert_eq!(push.apply(&[1i64, 2, 3, 4, 5]), vec![1, 2, 3, 4]);
    }

    #[test]
    fn wrong_kind_is_rejected() {
        let f = p1xp1();
        let r = &f.extremal_rays()[0];
        assert!(flip(&f, r).is_err());
        assert!(divisorial_contract(&f, r).is_err());
    }

    #[test]
    fn scaling_rejects_nef_divisor() {
        let f = p1xp1();
        assert!(scaling_strategy(&f, &[1, 1, 1, 1], &[1, 1, 1, 1]).is_err());
        let t = run_mori_program(&f, &[1, 1, 1, 1], Strategy::Scaling(None)).unwrap();
        assert!(t.steps.is_empty());
    }

    #[test]
    fn trace_text_is_deterministic() {
        let f = blown_up_p3_twice();
        let d = vec![0, 0, 0, 0, 1, -2];
        let a = run_mori_program(&f, &d, Strategy::Random(7)).unwrap().to_text();
        let b = run_mori_program(&f, &d, Strategy::Random(7)).unwrap().to_text();
        assert_eq!(a, b);
        assert!(a.starts_with("trace strategy=random:7 seed=7"));
        assert!(a.lines().last().unwrap().starts_with("outcome"));
    }

    #[test]
    fn interactive_abort() {
        let f = p1xp1();
        let mut chooser = |_: &Fan<i64>, _: &[i64], _: &[ExtremalRay<i64>]| None;
        let e = run_mori_program(&f, &[-1, 0, 0, 0], Strategy::Interactive(&mut chooser)).unwrap_err();
        assert!(matches!(e, Error::Aborted(_)));
    }

    #[test]
    fn covering_class_of_ruling() {
        let f = p1xp1();
        let me = crate::cone::PolyCone::from_generators(2, &f.ray_divisor_classes(), &[]).unwrap().dual();
        for r in me.rays() {
            let c = me_extremal_covering_class(&f, r).unwrap();
            assert_eq!(&scalar::primitive(c.class.clone()), r);
        }
    }
}
