//! Cone calculus of a toric Mori dream space: `Eff`, `Mov`, `Nef` and their
//! duals, the chamber decomposition of `Mov(X)` into nef cones of small
//! modifications, rational contractions and quasi-elementary tests.

use std::collections::{BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::cone::PolyCone;
use crate::error::{Error, Result};
use crate::linalg;
use crate::mmp;
use crate::scalar::{self, Int};
use crate::toric::{ContractionType, Fan};

pub const DEFAULT_CHAMBER_CAP: usize = 10_000;

/// `Nef ⊆ Mov ⊆ Eff` in `N¹(X)` and the duals `NE = Nef^∨`, `ME = Eff^∨` in `N₁(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeInventory<I> {
    pub nef: PolyCone<I>,
    pub mov: PolyCone<I>,
    pub eff: PolyCone<I>,
    pub ne: PolyCone<I>,
    pub me: PolyCone<I>,
}

pub fn cone_inventory<I: Int>(fan: &Fan<I>) -> Result<ConeInventory<I>> {
    if !fan.is_projective() {
        return Err(Error::precondition("the fan is not projective"));
    }
    let rho = fan.picard_number();
    let classes = fan.ray_divisor_classes();
    let eff = PolyCone::from_generators(rho, &classes, &[])?;
    let walls: BTreeSet<Vec<I>> = fan.walls().iter().map(|w| w.class.clone()).collect();
    let walls: Vec<Vec<I>> = walls.into_iter().collect();
    let nef = PolyCone::from_inequalities(rho, &walls, &[])?;
    let others: Vec<PolyCone<I>> = (0..classes.len())
        .map(|j| {
            let gens: Vec<Vec<I>> = classes
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, c)| c.clone())
                .collect();
            PolyCone::from_generators(rho, &gens, &[])
        })
        .collect::<Result<_>>()?;
    let mov = PolyCone::intersect_all(&others)?;
    let ne = nef.dual();
    let me = eff.dual();
    Ok(ConeInventory { nef, mov, eff, ne, me })
}

#[derive(Clone, Debug)]
pub struct Chamber<I> {
    /// `Nef` of the model, in the class coordinates of the base model.
    pub cone: PolyCone<I>,
    pub model: Fan<I>,
}

/// Two chambers sharing a facet, crossed by flipping a small extremal ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjacency<I> {
    pub from: usize,
    pub to: usize,
    /// Curve class normal to the shared facet (positive on `from`).
    pub normal: Vec<I>,
    /// Support of the flipped circuit, as ray labels.
    pub circuit: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ChamberAtlas<I> {
    pub chambers: Vec<Chamber<I>>,
    pub adjacency: Vec<Adjacency<I>>,
    /// Index of the chamber `Nef(X)`.
    pub base: usize,
}

/// Breadth-first wall crossing from `Nef(X)` through all small modifications.
///
/// Models are identified by their cone sets (the ray set never changes).
/// Each frontier is expanded in parallel and merged in a fixed order, so the
/// chamber numbering is deterministic.
pub fn chamber_atlas<I: Int>(fan: &Fan<I>, cap: usize) -> Result<ChamberAtlas<I>> {
    if !fan.is_projective() {
        return Err(Error::precondition("the fan is not projective"));
    }
    let chamber_of = |f: &Fan<I>| -> Result<PolyCone<I>> {
        let walls: BTreeSet<Vec<I>> = f.walls().iter().map(|w| w.class.clone()).collect();
        let walls: Vec<Vec<I>> = walls.into_iter().collect();
        PolyCone::from_inequalities(f.picard_number(), &walls, &[])
    };
    let mut index: HashMap<Vec<Vec<usize>>, usize> = HashMap::new();
    let mut chambers = vec![Chamber {
        cone: chamber_of(fan)?,
        model: fan.clone(),
    }];
    index.insert(fan.cones().to_vec(), 0);
    let mut adjacency = Vec::new();
    let mut seen_edges = BTreeSet::new();
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let expansions: Vec<Result<Vec<(usize, Vec<I>, Vec<usize>, Fan<I>)>>> = frontier
            .par_iter()
            .map(|&ci| {
                let model = &chambers[ci].model;
                let mut out = Vec::new();
                for r in model.extremal_rays() {
                    if r.kind != ContractionType::Small {
                        continue;
                    }
                    let flipped = mmp::flip(model, &r)?;
                    let mut circuit: Vec<usize> = r
                        .negative
                        .iter()
                        .chain(&r.positive)
                        .map(|&j| model.labels()[j])
                        .collect();
                    circuit.sort_unstable();
                    out.push((ci, r.class.clone(), circuit, flipped));
                }
                Ok(out)
            })
            .collect();
        let mut next = Vec::new();
        for exp in expansions {
            for (from, normal, circuit, model) in exp? {
                let key = model.cones().to_vec();
                let to = match index.get(&key) {
                    Some(&t) => t,
                    None => {
                        if chambers.len() >= cap {
                            return Err(Error::CapExceeded { what: "chamber", cap });
                        }
                        let t = chambers.len();
                        chambers.push(Chamber {
                            cone: chamber_of(&model)?,
                            model,
                        });
                        index.insert(key, t);
                        next.push(t);
                        t
                    }
                };
                if seen_edges.insert((from.min(to), from.max(to))) {
                    adjacency.push(Adjacency {
                        from,
                        to,
                        normal,
                        circuit,
                    });
                }
            }
        }
        frontier = next;
    }
    Ok(ChamberAtlas {
        chambers,
        adjacency,
        base: 0,
    })
}

/// Checks that the chambers form a fan whose support is `Mov(X)`.
///
/// Every chamber must be full-dimensional in `Mov`, any two chambers must
/// meet in a common face, and every facet of a chamber must either lie on the
/// boundary of `Mov` or be shared with exactly one other chamber. Together
/// with connectivity of the adjacency graph this forces the union to be `Mov`.
pub fn verify_atlas<I: Int>(atlas: &ChamberAtlas<I>, inv: &ConeInventory<I>) -> Result<()> {
    let rho = inv.mov.ambient_dim();
    if atlas.chambers[atlas.base].cone != inv.nef {
        return Err(Error::internal("base chamber differs from Nef(X)"));
    }
    for (i, ch) in atlas.chambers.iter().enumerate() {
        if ch.cone.dim() != rho {
            return Err(Error::internal(format!("chamber {i} is not full-dimensional")));
        }
        if !inv.mov.contains_cone(&ch.cone) {
            return Err(Error::internal(format!("chamber {i} is not contained in Mov")));
        }
    }
    let n = atlas.chambers.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    pairs.par_iter().try_for_each(|&(i, j)| -> Result<()> {
        let a = &atlas.chambers[i].cone;
        let b = &atlas.chambers[j].cone;
        let m = a.intersect(b)?;
        if !a.has_face(&m) || !b.has_face(&m) {
            return Err(Error::internal(format!("chambers {i} and {j} do not meet in a common face")));
        }
        if m.dim() == rho {
            return Err(Error::internal(format!("chambers {i} and {j} overlap")));
        }
        Ok(())
    })?;
    // facets: boundary of Mov, or shared by exactly two chambers
    let facets: Vec<Vec<PolyCone<I>>> = atlas
        .chambers
        .iter()
        .map(|ch| {
            ch.cone
                .faces_of_dim(rho - 1)
                .expect("facets exist")
                .iter()
                .map(|f| ch.cone.face_cone(f))
                .collect()
        })
        .collect();
    let mut count: HashMap<&PolyCone<I>, usize> = HashMap::new();
    for fs in &facets {
        for f in fs {
            *count.entry(f).or_default() += 1;
        }
    }
    for (f, c) in count {
        let p = f.relative_interior_point();
        let on_boundary = !inv.mov.relative_interior_contains(&p);
        match (on_boundary, c) {
            (true, 1) | (false, 2) => {}
            _ => {
                return Err(Error::internal(format!(
                    "a chamber facet (boundary: {on_boundary}) is shared by {c} chambers"
                )))
            }
        }
    }
    // connectivity
    let mut reach = vec![false; n];
    reach[atlas.base] = true;
    let mut stack = vec![atlas.base];
    while let Some(x) = stack.pop() {
        for e in &atlas.adjacency {
            for (a, b) in [(e.from, e.to), (e.to, e.from)] {
                if a == x && !reach[b] {
                    reach[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    if reach.iter().any(|r| !r) {
        return Err(Error::internal("chamber adjacency graph is disconnected"));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ContractionKind {
    /// Small modification (a full-dimensional chamber).
    Sqm,
    Small,
    Divisorial,
    FiberType,
}

impl std::fmt::Display for ContractionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ContractionKind::Sqm => "sqm",
            ContractionKind::Small => "small",
            ContractionKind::Divisorial => "divisorial",
            ContractionKind::FiberType => "fiber-type",
        })
    }
}

/// A cone of the chamber fan and the rational contraction it encodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalContraction<I> {
    pub sigma: PolyCone<I>,
    /// Picard number of the target, `dim σ`.
    pub target_rho: usize,
    pub kind: ContractionKind,
    /// Whether `σ ⊆ Nef(X)`, i.e. the contraction is a morphism on `X`.
    pub regular: bool,
    pub host_chamber: usize,
}

impl<I: Int> RationalContraction<I> {
    pub fn is_elementary(&self, rho: usize) -> bool {
        self.target_rho + 1 == rho
    }
}

pub fn classify_cone<I: Int>(inv: &ConeInventory<I>, sigma: &PolyCone<I>) -> ContractionKind {
    let rho = inv.eff.ambient_dim();
    let p = sigma.relative_interior_point();
    if sigma.dim() == rho {
        ContractionKind::Sqm
    } else if !inv.eff.relative_interior_contains(&p) {
        ContractionKind::FiberType
    } else if inv.mov.relative_interior_contains(&p) {
        ContractionKind::Small
    } else {
        ContractionKind::Divisorial
    }
}

/// All cones of the chamber fan of codimension at most `max_codim` (all when
/// `None`), deduplicated across chambers.
pub fn rational_contractions<I: Int>(
    atlas: &ChamberAtlas<I>,
    inv: &ConeInventory<I>,
    max_codim: Option<usize>,
) -> Vec<RationalContraction<I>> {
    let rho = inv.eff.ambient_dim();
    let min_dim = rho.saturating_sub(max_codim.unwrap_or(rho));
    let per_chamber: Vec<Vec<PolyCone<I>>> = atlas
        .chambers
        .par_iter()
        .map(|ch| {
            let lattice = ch.cone.face_lattice();
            lattice
                .iter()
                .enumerate()
                .rev()
                .filter(|(d, _)| *d >= min_dim)
                .flat_map(|(_, faces)| faces.iter().map(|f| ch.cone.face_cone(f)))
                .collect()
        })
        .collect();
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for (ci, faces) in per_chamber.into_iter().enumerate() {
        for sigma in faces {
            if seen.contains_key(&sigma) {
                continue;
            }
            seen.insert(sigma.clone(), out.len());
            out.push(RationalContraction {
                target_rho: sigma.dim(),
                kind: classify_cone(inv, &sigma),
                regular: inv.nef.contains_cone(&sigma),
                host_chamber: ci,
                sigma,
            });
        }
    }
    out
}

/// The contraction of a model given by a face of its nef cone, obtained by
/// coarsening the fan along the linear pieces of a relatively interior divisor.
#[derive(Clone, Debug)]
pub struct ContractionTarget<I> {
    /// Dimension of the target.
    pub dim: usize,
    /// Rows of the lattice projection `N → N_Y`.
    pub projection: Vec<Vec<I>>,
    /// Groups of maximal cones of the model mapping into one cone of the target.
    pub groups: Vec<Vec<usize>>,
    /// The target fan when it is simplicial and positive-dimensional.
    pub fan: Option<Fan<I>>,
    /// `pullback[j][l]`: coefficient of `D_j` in `f^* D^Y_l`.
    pub pullback: Vec<Vec<BigRational>>,
}

impl<I: Int> ContractionTarget<I> {
    /// Picard number of the target if it is simplicial (`0` for a point).
    pub fn rho(&self) -> Option<usize> {
        if self.dim == 0 {
            return Some(0);
        }
        self.fan.as_ref().map(Fan::picard_number)
    }

    /// Ray coefficients on the model of a positive multiple of `f^* D`, for
    /// `D` given by ray coefficients on the target.
    pub fn pullback_coeffs(&self, b: &[I]) -> Vec<I> {
        let a: Vec<BigRational> = self
            .pullback
            .iter()
            .map(|row| row.iter().zip(b).map(|(p, x)| p * scalar::to_rational(x)).sum())
            .collect();
        scalar::clear_denominators(&a)
    }
}

pub fn contraction_target<I: Int>(model: &Fan<I>, sigma: &PolyCone<I>) -> Result<ContractionTarget<I>> {
    let n = model.dim();
    let d = sigma.relative_interior_point();
    let a = if scalar::is_zero_vec(&d) {
        vec![I::zero(); model.num_rays()]
    } else {
        model.class_group().lift(&d)
    };
    if !model.is_nef(&a) {
        return Err(Error::precondition("the cone is not a face of the model's nef cone"));
    }
    // linear piece of the support function on every maximal cone
    let mut groups: Vec<(Vec<BigRational>, Vec<usize>)> = Vec::new();
    for (ci, c) in model.cones().iter().enumerate() {
        let rows: Vec<Vec<I>> = c.iter().map(|&j| model.ray(j).to_vec()).collect();
        let rhs: Vec<BigRational> = c.iter().map(|&j| scalar::to_rational(&a[j])).collect();
        let m = linalg::rational_matrix(&rows, n).solve(&rhs).expect("simplicial cone");
        match groups.iter_mut().find(|(g, _)| *g == m) {
            Some((_, v)) => v.push(ci),
            None => groups.push((m, vec![ci])),
        }
    }
    let coarse: Vec<PolyCone<I>> = groups
        .iter()
        .map(|(_, cs)| {
            let rays: BTreeSet<usize> = cs.iter().flat_map(|&c| model.cones()[c].iter().copied()).collect();
            let gens: Vec<Vec<I>> = rays.iter().map(|&j| model.ray(j).to_vec()).collect();
            PolyCone::from_generators(n, &gens, &[])
        })
        .collect::<Result<_>>()?;
    let lineality = coarse[0].lineality().to_vec();
    if coarse.iter().any(|c| c.lineality() != lineality.as_slice()) {
        return Err(Error::internal("coarsened cones have different lineality spaces"));
    }
    let projection = linalg::integer_kernel(&lineality, n);
    let k = projection.len();
    let project = |v: &[I]| -> Vec<I> { projection.iter().map(|p| scalar::dot(p, v)).collect() };
    let groups: Vec<Vec<usize>> = groups.into_iter().map(|(_, cs)| cs).collect();
    if k == 0 {
        return Ok(ContractionTarget {
            dim: 0,
            projection,
            groups,
            fan: None,
            pullback: vec![Vec::new(); model.num_rays()],
        });
    }
    // target rays, ordered by the first model ray mapping onto them
    let images: Vec<PolyCone<I>> = coarse
        .iter()
        .map(|c| {
            let gens: Vec<Vec<I>> = c.rays().iter().map(|r| project(r)).collect();
            PolyCone::from_generators(k, &gens, &[])
        })
        .collect::<Result<_>>()?;
    let all_rays: BTreeSet<Vec<I>> = images.iter().flat_map(|c| c.rays().iter().cloned()).collect();
    let mut y_rays: Vec<Vec<I>> = Vec::new();
    for j in 0..model.num_rays() {
        let p = scalar::primitive(project(model.ray(j)));
        if all_rays.contains(&p) && !y_rays.contains(&p) {
            y_rays.push(p);
        }
    }
    if y_rays.len() != all_rays.len() {
        return Err(Error::internal("a target ray is not the image of a model ray"));
    }
    let simplicial = images.iter().all(|c| c.rays().len() == k && c.is_pointed());
    let fan = if simplicial {
        let cones: Vec<Vec<usize>> = images
            .iter()
            .map(|c| c.rays().iter().map(|r| y_rays.iter().position(|y| y == r).expect("known ray")).collect())
            .collect();
        Some(Fan::new(y_rays.clone(), cones)?)
    } else {
        None
    };
    let pullback = if let Some(y) = &fan {
        (0..model.num_rays())
            .map(|j| {
                let p = project(model.ray(j));
                let gi = groups
                    .iter()
                    .position(|cs| cs.iter().any(|&c| model.cones()[c].contains(&j)))
                    .expect("every ray lies in a cone");
                let cone_rays: Vec<usize> = images[gi]
                    .rays()
                    .iter()
                    .map(|r| y.rays().iter().position(|v| v == r).expect("known ray"))
                    .collect();
                let cols: Vec<Vec<I>> = (0..k)
                    .map(|row| cone_rays.iter().map(|&l| y.ray(l)[row].clone()).collect())
                    .collect();
                let rhs: Vec<BigRational> = p.iter().map(scalar::to_rational).collect();
                let lambda = linalg::rational_matrix(&cols, cone_rays.len()).solve(&rhs).expect("ray in cone");
                let mut row = vec![BigRational::zero(); y.num_rays()];
                for (l, x) in cone_rays.iter().zip(lambda) {
                    row[*l] = x;
                }
                row
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(ContractionTarget {
        dim: k,
        projection,
        groups,
        fan,
        pullback,
    })
}

/// The three independently computed quasi-elementary conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QeCertificate {
    /// Dimension of the minimal face of `Eff` containing `σ`.
    pub eff_face_dim: usize,
    /// `dim (ME ∩ σ^⊥)`, the dimension of `ME(f)`.
    pub me_f_dim: usize,
    pub sigma_dim: usize,
    /// `dim ME(f) = ρ_X - ρ_Y`.
    pub cond_iii: bool,
    /// `σ` lies in a face of `Eff` of its own dimension.
    pub cond_iv: bool,
    /// `Eff ∩ span σ` is a face of `Eff`.
    pub cond_v: bool,
}

/// Quasi-elementary test for a fiber-type cone of the chamber fan. The
/// verdict is condition (iv); (iii) must agree, otherwise an internal error
/// is returned.
pub fn is_quasi_elementary<I: Int>(inv: &ConeInventory<I>, sigma: &PolyCone<I>) -> Result<(bool, QeCertificate)> {
    if classify_cone(inv, sigma) != ContractionKind::FiberType {
        return Err(Error::precondition("the cone is not of fiber type"));
    }
    let cert = qe_conditions(inv, sigma)?;
    if cert.cond_iii != cert.cond_iv {
        return Err(Error::internal(format!(
            "quasi-elementary conditions disagree: {cert:?}"
        )));
    }
    Ok((cert.cond_iv, cert))
}

pub fn qe_conditions<I: Int>(inv: &ConeInventory<I>, sigma: &PolyCone<I>) -> Result<QeCertificate> {
    let rho = inv.eff.ambient_dim();
    let s = sigma.dim();
    let face = inv.eff.minimal_face_containing(&sigma.relative_interior_point())?;
    let mut span: Vec<Vec<I>> = sigma.rays().to_vec();
    span.extend(sigma.lineality().iter().cloned());
    let me_f = inv.me.restrict(&span)?;
    let slice = inv.eff.restrict(sigma.equations())?;
    Ok(QeCertificate {
        eff_face_dim: face.dim,
        me_f_dim: me_f.dim(),
        sigma_dim: s,
        cond_iii: me_f.dim() == rho - s,
        cond_iv: face.dim == s,
        cond_v: inv.eff.has_face(&slice),
    })
}

/// Quasi-elementary contractions with `ρ_Y = r`, one per pair of an
/// `r`-dimensional face of `Mov` inside an `r`-dimensional face of `Eff`.
pub fn find_quasi_elementary<I: Int>(
    inv: &ConeInventory<I>,
    contractions: &[RationalContraction<I>],
    r: usize,
) -> Result<Vec<RationalContraction<I>>> {
    let rho = inv.eff.ambient_dim();
    if r == 0 || r >= rho {
        return Err(Error::InvalidArgument(format!("r = {r} outside 1..{rho}")));
    }
    let eff_faces: Vec<PolyCone<I>> = inv.eff.faces_of_dim(r)?.iter().map(|f| inv.eff.face_cone(f)).collect();
    let mut out = Vec::new();
    for f in inv.mov.faces_of_dim(r)? {
        let tau = inv.mov.face_cone(&f);
        if !eff_faces.iter().any(|e| e.contains_cone(&tau)) {
            continue;
        }
        if let Some(c) = contractions
            .iter()
            .find(|c| c.sigma.dim() == r && tau.contains_cone(&c.sigma))
        {
            out.push(c.clone());
        }
    }
    Ok(out)
}

/// Extremal rays of `Eff` outside `Mov`, each with its unique invariant prime divisor.
pub fn nonmovable_prime_divisors<I: Int>(fan: &Fan<I>, inv: &ConeInventory<I>) -> Result<Vec<(usize, Vec<I>)>> {
    let classes: Vec<Vec<I>> = fan.ray_divisor_classes().into_iter().map(scalar::primitive).collect();
    let mut out = Vec::new();
    for r in inv.eff.rays() {
        if inv.mov.contains_point(r) {
            continue;
        }
        let on: Vec<usize> = (0..classes.len()).filter(|&j| &classes[j] == r).collect();
        if on.len() != 1 {
            return Err(Error::internal(format!(
                "extremal ray {r:?} of Eff outside Mov carries {} invariant prime divisors",
                on.len()
            )));
        }
        out.push((on[0], r.clone()));
    }
    out.sort();
    Ok(out)
}

/// The composite `g ∘ f` of a quasi-elementary `f` on `X` with a
/// quasi-elementary `g` on the (simplicial) target of `f`.
///
/// `g.sigma` must be expressed in the class coordinates of
/// `contraction_target(model of f, f.sigma).fan`.
pub fn compose_quasi_elementary<I: Int>(
    atlas: &ChamberAtlas<I>,
    inv: &ConeInventory<I>,
    f: &RationalContraction<I>,
    g: &RationalContraction<I>,
) -> Result<RationalContraction<I>> {
    let model = &atlas.chambers[f.host_chamber].model;
    let rho = inv.eff.ambient_dim();
    let f_is_qe = match f.kind {
        ContractionKind::Sqm => true,
        ContractionKind::FiberType => is_quasi_elementary(inv, &f.sigma)?.0,
        _ => false,
    };
    if !f_is_qe {
        return Err(Error::precondition("f is not quasi-elementary"));
    }
    let target = contraction_target(model, &f.sigma)?;
    let y = target
        .fan
        .as_ref()
        .ok_or_else(|| Error::precondition("the target of f is not a simplicial toric variety"))?;
    if g.sigma.ambient_dim() != y.picard_number() {
        return Err(Error::InvalidArgument("g is not defined on the target of f".into()));
    }
    let y_inv = cone_inventory(y)?;
    let g_is_qe = match classify_cone(&y_inv, &g.sigma) {
        ContractionKind::Sqm => true,
        ContractionKind::FiberType => is_quasi_elementary(&y_inv, &g.sigma)?.0,
        _ => false,
    };
    if !g_is_qe {
        return Err(Error::precondition("g is not quasi-elementary on the target of f"));
    }
    let pull = |c: &Vec<I>| -> Vec<I> { model.divisor_class(&target.pullback_coeffs(&y.class_group().lift(c))) };
    let gens: Vec<Vec<I>> = g.sigma.rays().iter().map(pull).collect();
    let lin: Vec<Vec<I>> = g.sigma.lineality().iter().map(pull).collect();
    let sigma = PolyCone::from_generators(rho, &gens, &lin)?;
    let kind = classify_cone(inv, &sigma);
    let composite = RationalContraction {
        target_rho: sigma.dim(),
        kind,
        regular: inv.nef.contains_cone(&sigma),
        host_chamber: f.host_chamber,
        sigma,
    };
    let qe = match kind {
        ContractionKind::Sqm => true,
        ContractionKind::FiberType => is_quasi_elementary(inv, &composite.sigma)?.0,
        _ => false,
    };
    if !qe {
        return Err(Error::internal("composite of quasi-elementary contractions is not quasi-elementary"));
    }
    Ok(composite)
}
