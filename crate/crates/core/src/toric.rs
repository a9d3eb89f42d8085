//! Complete simplicial fans as variety models.
//!
//! A [`Fan`] is validated on construction: primitive distinct rays,
//! simplicial full-dimensional maximal cones, every wall shared by exactly
//! two cones lying on opposite sides, and covering degree one at a generic
//! point. Walls carry their integer relation, which doubles as the class of
//! the torus-invariant curve in `N_1`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cone::PolyCone;
use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{LinearProgram, Relation};
use crate::scalar::{self, Int};

/// Presentation of `Cl(X) ⊗ Q` through the saturated lattice of ray relations.
///
/// The rows `k_i` of `kernel` form a basis of `{b ∈ Z^rays : Σ b_j v_j = 0}`
/// (row Hermite form). A divisor `Σ a_j D_j` has coordinates `(⟨a, k_i⟩)_i`; a
/// relation `b = Σ c_i k_i` has curve coordinates `c`; the pairing is the dot
/// product of coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroup<I> {
    kernel: Vec<Vec<I>>,
    pivots: Vec<usize>,
}

impl<I: Int> ClassGroup<I> {
    fn new(rays: &[Vec<I>], dim: usize) -> Self {
        let coord_rows: Vec<Vec<I>> = (0..dim)
            .map(|c| rays.iter().map(|r| r[c].clone()).collect())
            .collect();
        let kernel = linalg::integer_kernel(&coord_rows, rays.len());
        let pivots = kernel
            .iter()
            .map(|k| k.iter().position(|x| !x.is_zero()).expect("nonzero kernel row"))
            .collect();
        ClassGroup { kernel, pivots }
    }

    pub fn rank(&self) -> usize {
        self.kernel.len()
    }

    pub fn relations(&self) -> &[Vec<I>] {
        &self.kernel
    }

    /// Class coordinates of the divisor with ray coefficients `a`.
    pub fn divisor_class(&self, a: &[I]) -> Vec<I> {
        self.kernel.iter().map(|k| scalar::dot(k, a)).collect()
    }

    /// Curve coordinates of an integer relation `b` among the rays.
    pub fn curve_class(&self, b: &[I]) -> Vec<I> {
        let mut rest = b.to_vec();
        let mut c = Vec::with_capacity(self.kernel.len());
        for (k, &p) in self.kernel.iter().zip(&self.pivots) {
            let (q, r) = rest[p].div_rem(&k[p]);
            assert!(r.is_zero(), "relation is not in the relation lattice");
            for (x, y) in rest.iter_mut().zip(k) {
                *x = scalar::sub(x, &scalar::mul(&q, y));
            }
            c.push(q);
        }
        assert!(scalar::is_zero_vec(&rest), "relation is not in the relation lattice");
        c
    }

    /// Relation vector of the curve class `c`.
    pub fn relation_of(&self, c: &[I]) -> Vec<I> {
        let n = self.kernel.first().map_or(0, Vec::len);
        let mut b = vec![I::zero(); n];
        for (ci, k) in c.iter().zip(&self.kernel) {
            for (x, y) in b.iter_mut().zip(k) {
                *x = scalar::add(x, &scalar::mul(ci, y));
            }
        }
        b
    }

    /// Ray coefficients of a positive integer multiple of the class `d`.
    pub fn lift(&self, d: &[I]) -> Vec<I> {
        let n = self.kernel.first().map_or(0, Vec::len);
        let m = linalg::rational_matrix(&self.kernel, n);
        let rhs: Vec<BigRational> = d.iter().map(scalar::to_rational).collect();
        let x = m.solve(&rhs).expect("class map is surjective over Q");
        let l = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        x.iter()
            .map(|q| I::from_bigint(&(q * BigRational::from_integer(l.clone())).to_integer()))
            .collect()
    }
}

/// A codimension-one cone shared by two maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall<I> {
    /// The `n - 1` ray indices of the wall, sorted.
    pub rays: Vec<usize>,
    /// Indices of the two adjacent maximal cones.
    pub cones: [usize; 2],
    /// The ray of each adjacent cone not in the wall.
    pub opposite: [usize; 2],
    /// Primitive relation over all rays; positive on the two opposite rays.
    pub relation: Vec<I>,
    /// Curve class coordinates.
    pub class: Vec<I>,
}

impl<I: Int> Wall<I> {
    /// `-K · C` for the wall curve.
    pub fn anticanonical_degree(&self) -> I {
        self.relation.iter().fold(I::zero(), |acc, x| scalar::add(&acc, x))
    }

    pub fn negative_rays(&self) -> Vec<usize> {
        (0..self.relation.len()).filter(|&j| self.relation[j].is_negative()).collect()
    }

    pub fn positive_rays(&self) -> Vec<usize> {
        (0..self.relation.len()).filter(|&j| self.relation[j].is_positive()).collect()
    }

    /// The `n + 1` rays of the wall and its two adjacent cones, sorted.
    pub fn circuit_rays(&self) -> Vec<usize> {
        let mut v = self.rays.clone();
        v.extend(self.opposite);
        v.sort_unstable();
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ContractionType {
    FiberType,
    /// Divisorial, with the index of the exceptional ray.
    Divisorial(usize),
    Small,
}

impl fmt::Display for ContractionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContractionType::FiberType => write!(f, "fiber"),
            ContractionType::Divisorial(j) => write!(f, "divisorial({j})"),
            ContractionType::Small => write!(f, "small"),
        }
    }
}

/// An extremal ray of `NE(X)` with its Reid sign data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalRay<I> {
    /// Indices (into [`Fan::walls`]) of all walls whose curve lies on the ray.
    pub walls: Vec<usize>,
    /// Common primitive relation of those walls.
    pub relation: Vec<I>,
    /// Curve class coordinates.
    pub class: Vec<I>,
    pub negative: Vec<usize>,
    pub positive: Vec<usize>,
    pub kind: ContractionType,
    /// Dimension of the exceptional locus.
    pub exc_dim: usize,
    /// Dimension of the image of the exceptional locus.
    pub image_dim: usize,
}

impl<I: Int> ExtremalRay<I> {
    pub fn is_birational(&self) -> bool {
        self.kind != ContractionType::FiberType
    }

    /// `-K · C` on the primitive class.
    pub fn anticanonical_degree(&self) -> I {
        self.relation.iter().fold(I::zero(), |acc, x| scalar::add(&acc, x))
    }

    /// Sign of `K · C`.
    pub fn k_sign(&self) -> i8 {
        -scalar::sign(&self.anticanonical_degree())
    }

    /// Pairing with a divisor given by ray coefficients.
    pub fn pair(&self, a: &[I]) -> I {
        scalar::dot(a, &self.relation)
    }
}

/// Singularity data of a simplicial cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSingularity {
    /// Multiplicity `|det|`; 1 iff smooth.
    pub index: BigInt,
    pub terminal: bool,
    pub canonical: bool,
    pub gorenstein_index: BigInt,
}

/// A complete simplicial fan.
#[derive(Clone, Debug)]
pub struct Fan<I> {
    dim: usize,
    rays: Vec<Vec<I>>,
    labels: Vec<usize>,
    cones: Vec<Vec<usize>>,
    normals: Vec<Vec<Vec<I>>>,
    walls: Vec<Wall<I>>,
    class_group: ClassGroup<I>,
}

impl<I: Int> PartialEq for Fan<I> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.rays == other.rays && self.cones == other.cones
    }
}

impl<I: Int> Eq for Fan<I> {}

/// Inward normals of the facets of a simplicial full-dimensional cone;
/// entry `j` vanishes on every ray except ray `j`.
fn simplicial_normals<I: Int>(gens: &[Vec<I>], dim: usize) -> Option<Vec<Vec<I>>> {
    let mut out = Vec::with_capacity(gens.len());
    for j in 0..gens.len() {
        let others: Vec<Vec<I>> = gens
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .map(|(_, g)| g.clone())
            .collect();
        let u: Vec<I> = if others.is_empty() {
            vec![I::one(); dim]
        } else {
            let ker = linalg::rational_matrix(&others, dim).kernel();
            if ker.len() != 1 {
                return None;
            }
            scalar::clear_denominators(&ker[0])
        };
        let s = scalar::dot(&u, &gens[j]);
        if s.is_zero() {
            return None;
        }
        out.push(if s.is_negative() { scalar::neg_vec(&u) } else { u });
    }
    Some(out)
}

impl<I: Int> Fan<I> {
    /// Validates raw data and builds the fan. Ray labels default to `0..N`.
    pub fn new(rays: Vec<Vec<I>>, cones: Vec<Vec<usize>>) -> Result<Self> {
        let labels = (0..rays.len()).collect();
        Self::with_labels(rays, labels, cones)
    }

    /// As [`Fan::new`], with explicit ray labels that survive flips and contractions.
    pub fn with_labels(rays: Vec<Vec<I>>, labels: Vec<usize>, cones: Vec<Vec<usize>>) -> Result<Self> {
        let dim = rays.first().map(Vec::len).ok_or_else(|| Error::invalid_fan("no rays"))?;
        if dim == 0 {
            return Err(Error::invalid_fan("ambient dimension must be at least 1"));
        }
        if labels.len() != rays.len() {
            return Err(Error::Shape("one label per ray required".into()));
        }
        let mut seen = HashMap::new();
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::invalid_fan(format!("ray {i} has length {}, expected {dim}", r.len())));
            }
            if scalar::is_zero_vec(r) {
                return Err(Error::invalid_fan(format!("ray {i} is zero")));
            }
            if !scalar::content(r).is_one() {
                return Err(Error::invalid_fan(format!("non-primitive ray {i}")));
            }
            if let Some(j) = seen.insert(r.clone(), i) {
                return Err(Error::invalid_fan(format!("duplicate ray: {j} and {i}")));
            }
        }

        let mut cones: Vec<Vec<usize>> = cones
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        cones.sort();
        for w in cones.windows(2) {
            if w[0] == w[1] {
                return Err(Error::invalid_fan(format!("duplicate cone {:?}", w[0])));
            }
        }
        let mut used = vec![false; rays.len()];
        let mut normals = Vec::with_capacity(cones.len());
        for c in &cones {
            if c.len() != dim {
                return Err(Error::invalid_fan(format!(
                    "non-simplicial cone {c:?}: {} rays in dimension {dim}",
                    c.len()
                )));
            }
            if c.windows(2).any(|w| w[0] == w[1]) || c.iter().any(|&i| i >= rays.len()) {
                return Err(Error::invalid_fan(format!("cone {c:?} has repeated or unknown rays")));
            }
            c.iter().for_each(|&i| used[i] = true);
            let gens: Vec<Vec<I>> = c.iter().map(|&i| rays[i].clone()).collect();
            let ns = simplicial_normals(&gens, dim).ok_or_else(|| {
                Error::invalid_fan(format!("non-simplicial cone {c:?}: rays are linearly dependent"))
            })?;
            normals.push(ns);
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(Error::invalid_fan(format!("ray {i} lies in no maximal cone")));
        }

        // walls
        let mut facets: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, c) in cones.iter().enumerate() {
            for (pos, &opp) in c.iter().enumerate() {
                let mut w = c.clone();
                w.remove(pos);
                facets.entry(w).or_default().push((ci, opp));
            }
        }
        let class_group = ClassGroup::new(&rays, dim);
        let mut walls = Vec::with_capacity(facets.len());
        for (w, sides) in facets {
            if sides.len() == 1 {
                return Err(Error::invalid_fan(format!(
                    "incomplete: wall {w:?} bounds only cone {:?}",
                    cones[sides[0].0]
                )));
            }
            if sides.len() > 2 {
                return Err(Error::invalid_fan(format!(
                    "cones overlapping improperly: wall {w:?} bounds {} cones",
                    sides.len()
                )));
            }
            let (ca, oa) = sides[0];
            let (cb, ob) = sides[1];
            let pos_a = cones[ca].iter().position(|&r| r == oa).expect("opposite ray in cone");
            let u = &normals[ca][pos_a];
            if !scalar::dot(u, &rays[ob]).is_negative() {
                return Err(Error::invalid_fan(format!(
                    "cones overlapping improperly: {:?} and {:?} lie on the same side of wall {w:?}",
                    cones[ca], cones[cb]
                )));
            }
            let relation = Self::wall_relation(&rays, &w, oa, ob, dim);
            let class = class_group.curve_class(&relation);
            walls.push(Wall {
                rays: w,
                cones: [ca, cb],
                opposite: [oa, ob],
                relation,
                class,
            });
        }

        // no ray inside a foreign cone, then covering degree one
        for (ci, c) in cones.iter().enumerate() {
            for (ri, r) in rays.iter().enumerate() {
                if c.contains(&ri) {
                    continue;
                }
                if normals[ci].iter().all(|u| !scalar::dot(u, r).is_negative()) {
                    return Err(Error::invalid_fan(format!(
                        "cones overlapping improperly: ray {ri} lies in cone {c:?}"
                    )));
                }
            }
        }
        let degree = Self::covering_degree(&normals, dim);
        if degree != 1 {
            return Err(Error::invalid_fan(format!(
                "cones overlapping improperly: a generic point is covered {degree} times"
            )));
        }

        Ok(Fan {
            dim,
            rays,
            labels,
            cones,
            normals,
            walls,
            class_group,
        })
    }

    fn wall_relation(rays: &[Vec<I>], wall: &[usize], oa: usize, ob: usize, dim: usize) -> Vec<I> {
        let idx: Vec<usize> = wall.iter().copied().chain([oa, ob]).collect();
        let cols: Vec<Vec<I>> = (0..dim)
            .map(|c| idx.iter().map(|&i| rays[i][c].clone()).collect())
            .collect();
        let ker = linalg::rational_matrix(&cols, idx.len()).kernel();
        assert_eq!(ker.len(), 1, "wall circuit has a one-dimensional relation space");
        let mut b: Vec<I> = scalar::clear_denominators(&ker[0]);
        if b[idx.len() - 1].is_negative() {
            b = scalar::neg_vec(&b);
        }
        let mut full = vec![I::zero(); rays.len()];
        for (k, &i) in idx.iter().enumerate() {
            full[i] = b[k].clone();
        }
        full
    }

    fn covering_degree(normals: &[Vec<Vec<I>>], dim: usize) -> usize {
        let mut t = 2i64;
        loop {
            let p: Vec<I> = (0..dim as u32)
                .map(|k| I::from_i64_exact(t.pow(k) + if k % 2 == 1 { 1 } else { 0 }))
                .collect();
            let mut degenerate = false;
            let mut count = 0;
            for ns in normals {
                let vals: Vec<I> = ns.iter().map(|u| scalar::dot(u, &p)).collect();
                if vals.iter().any(Zero::is_zero) {
                    degenerate = true;
                    break;
                }
                if vals.iter().all(Signed::is_positive) {
                    count += 1;
                }
            }
            if !degenerate {
                return count;
            }
            t += 1;
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<I>] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &[I] {
        &self.rays[i]
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    /// Stable labels of the rays (indices into the ray list of the original model).
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn index_of_label(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Maximal cones as sorted ray-index lists, in sorted order.
    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn walls(&self) -> &[Wall<I>] {
        &self.walls
    }

    pub fn class_group(&self) -> &ClassGroup<I> {
        &self.class_group
    }

    /// Picard number `#rays - dim`.
    pub fn picard_number(&self) -> usize {
        self.rays.len() - self.dim
    }

    pub fn divisor_class(&self, a: &[I]) -> Vec<I> {
        self.class_group.divisor_class(a)
    }

    /// Class of the invariant prime divisor `D_j`.
    pub fn ray_divisor_class(&self, j: usize) -> Vec<I> {
        self.class_group.kernel.iter().map(|k| k[j].clone()).collect()
    }

    pub fn ray_divisor_classes(&self) -> Vec<Vec<I>> {
        (0..self.rays.len()).map(|j| self.ray_divisor_class(j)).collect()
    }

    /// `-K = Σ D_j` as ray coefficients.
    pub fn anticanonical_coeffs(&self) -> Vec<I> {
        vec![I::one(); self.rays.len()]
    }

    pub fn anticanonical(&self) -> Vec<I> {
        self.divisor_class(&self.anticanonical_coeffs())
    }

    /// Whether the sorted ray set `s` spans a cone of the fan.
    pub fn is_cone(&self, s: &[usize]) -> bool {
        self.cones.iter().any(|c| s.iter().all(|r| c.contains(r)))
    }

    /// Maximal cones containing all rays of `s`.
    pub fn star(&self, s: &[usize]) -> Vec<usize> {
        (0..self.cones.len())
            .filter(|&c| s.iter().all(|r| self.cones[c].contains(r)))
            .collect()
    }

    pub fn cone_index(&self, c: &[usize]) -> Option<usize> {
        self.cones.binary_search_by(|x| x.as_slice().cmp(c)).ok()
    }

    pub fn wall_index(&self, w: &[usize]) -> Option<usize> {
        self.walls.binary_search_by(|x| x.rays.as_slice().cmp(w)).ok()
    }

    /// Index of a maximal cone containing `p`.
    pub fn cone_containing(&self, p: &[I]) -> Option<usize> {
        (0..self.cones.len()).find(|&c| self.normals[c].iter().all(|u| !scalar::dot(u, p).is_negative()))
    }

    /// Facet normals of maximal cone `c`, aligned with [`Fan::cones`].
    pub fn cone_normals(&self, c: usize) -> &[Vec<I>] {
        &self.normals[c]
    }

    pub fn is_smooth(&self) -> bool {
        self.cones.iter().all(|c| self.cone_singularity(c).index.is_one())
    }

    pub fn is_fano(&self) -> bool {
        self.walls.iter().all(|w| w.anticanonical_degree().is_positive())
    }

    pub fn is_projective(&self) -> bool {
        self.ample_class().is_some()
    }

    /// Class coordinates of an ample divisor, if the fan is projective.
    pub fn ample_class(&self) -> Option<Vec<I>> {
        let rho = self.picard_number();
        let mut lp = LinearProgram::new(rho);
        let mut seen = BTreeSet::new();
        for w in &self.walls {
            if seen.insert(w.class.clone()) {
                lp.constrain(
                    w.class.iter().map(scalar::to_rational).collect(),
                    Relation::Ge,
                    BigRational::one(),
                );
            }
        }
        lp.feasible_point().map(|x| scalar::clear_denominators(&x))
    }

    /// Ray coefficients of an ample divisor, if the fan is projective.
    pub fn ample_divisor(&self) -> Option<Vec<I>> {
        if self.is_fano() {
            return Some(self.anticanonical_coeffs());
        }
        self.ample_class().map(|c| self.class_group.lift(&c))
    }

    pub fn is_nef(&self, a: &[I]) -> bool {
        self.walls.iter().all(|w| !scalar::dot(a, &w.relation).is_negative())
    }

    pub fn is_ample(&self, a: &[I]) -> bool {
        self.walls.iter().all(|w| scalar::dot(a, &w.relation).is_positive())
    }

    pub fn cone_singularity(&self, c: &[usize]) -> ConeSingularity {
        let gens: Vec<Vec<I>> = c.iter().map(|&i| self.rays[i].clone()).collect();
        cone_singularity(&gens)
    }

    /// `NE(X)`: the cone generated by the wall curve classes.
    pub fn mori_cone(&self) -> PolyCone<I> {
        let classes: BTreeSet<Vec<I>> = self.walls.iter().map(|w| w.class.clone()).collect();
        let classes: Vec<Vec<I>> = classes.into_iter().collect();
        PolyCone::from_generators(self.picard_number(), &classes, &[]).expect("classes live in N_1")
    }

    /// Extremal rays of `NE(X)` with sign data, sorted by their wall ray sets.
    pub fn extremal_rays(&self) -> Vec<ExtremalRay<I>> {
        let ne = self.mori_cone();
        let mut out: Vec<ExtremalRay<I>> = ne
            .rays()
            .iter()
            .map(|r| {
                let walls: Vec<usize> = (0..self.walls.len()).filter(|&w| &self.walls[w].class == r).collect();
                self.classify_walls(&walls).expect("walls of an extremal ray")
            })
            .collect();
        out.sort_by(|a, b| self.ray_key(a).cmp(&self.ray_key(b)));
        out
    }

    /// Sort key: the sorted list of sorted wall ray sets.
    pub fn ray_key(&self, r: &ExtremalRay<I>) -> Vec<Vec<usize>> {
        let mut k: Vec<Vec<usize>> = r.walls.iter().map(|&w| self.walls[w].rays.clone()).collect();
        k.sort();
        k
    }

    /// Reid sign-pattern classification of the extremal ray carried by `walls`.
    ///
    /// `walls` must be exactly the walls whose curve classes lie on one
    /// extremal ray of `NE(X)`.
    pub fn classify_walls(&self, walls: &[usize]) -> Result<ExtremalRay<I>> {
        let first = walls
            .first()
            .ok_or_else(|| Error::InvalidArgument("no walls given".into()))?;
        let relation = self.walls[*first].relation.clone();
        if walls.iter().any(|&w| self.walls[w].relation != relation) {
            return Err(Error::InvalidArgument(
                "wall classes do not span a single ray".into(),
            ));
        }
        let class = self.walls[*first].class.clone();
        let all: Vec<usize> = (0..self.walls.len()).filter(|&w| self.walls[w].class == class).collect();
        let mut given = walls.to_vec();
        given.sort_unstable();
        given.dedup();
        if given != all {
            return Err(Error::InvalidArgument(
                "wall set is not the full set of walls on its ray".into(),
            ));
        }
        let ne = self.mori_cone();
        if !ne.rays().contains(&class) {
            return Err(Error::InvalidArgument(
                "wall classes do not span an extremal ray of NE".into(),
            ));
        }
        let negative: Vec<usize> = (0..relation.len()).filter(|&j| relation[j].is_negative()).collect();
        let positive: Vec<usize> = (0..relation.len()).filter(|&j| relation[j].is_positive()).collect();
        let n = self.dim;
        let kind = match negative.len() {
            0 => ContractionType::FiberType,
            1 => ContractionType::Divisorial(negative[0]),
            _ => ContractionType::Small,
        };
        let exc_dim = n - negative.len();
        let image_dim = n + 1 - negative.len() - positive.len();
        Ok(ExtremalRay {
            walls: all,
            relation,
            class,
            negative,
            positive,
            kind,
            exc_dim,
            image_dim,
        })
    }

    /// Star subdivision at the sum of the rays of the cone `tau` (blow-up of `V(tau)`).
    pub fn star_subdivision(&self, tau: &[usize]) -> Result<Self> {
        let mut v = vec![I::zero(); self.dim];
        for &i in tau {
            if i >= self.rays.len() {
                return Err(Error::InvalidArgument(format!("unknown ray {i}")));
            }
            for (x, y) in v.iter_mut().zip(&self.rays[i]) {
                *x = scalar::add(x, y);
            }
        }
        self.star_subdivision_at(tau, scalar::primitive(v))
    }

    /// Star subdivision of the cone `tau` at an explicit primitive ray in its relative interior.
    pub fn star_subdivision_at(&self, tau: &[usize], ray: Vec<I>) -> Result<Self> {
        let mut tau = tau.to_vec();
        tau.sort_unstable();
        tau.dedup();
        if tau.is_empty() || !self.is_cone(&tau) {
            return Err(Error::InvalidArgument(format!("{tau:?} is not a cone of the fan")));
        }
        let new = self.rays.len();
        let mut cones = Vec::new();
        for c in &self.cones {
            if tau.iter().all(|r| c.contains(r)) {
                for &j in &tau {
                    let mut d: Vec<usize> = c.iter().copied().filter(|&r| r != j).collect();
                    d.push(new);
                    cones.push(d);
                }
            } else {
                cones.push(c.clone());
            }
        }
        let mut rays = self.rays.clone();
        rays.push(ray);
        let mut labels = self.labels.clone();
        labels.push(self.labels.iter().max().map_or(0, |m| m + 1));
        Self::with_labels(rays, labels, cones)
    }

    /// Product fan; rays of `self` come first.
    pub fn product(&self, other: &Self) -> Self {
        let d = self.dim + other.dim;
        let mut rays = Vec::with_capacity(self.rays.len() + other.rays.len());
        for r in &self.rays {
            let mut v = r.clone();
            v.resize(d, I::zero());
            rays.push(v);
        }
        for r in &other.rays {
            let mut v = vec![I::zero(); self.dim];
            v.extend(r.iter().cloned());
            rays.push(v);
        }
        let off = self.rays.len();
        let mut cones = Vec::new();
        for a in &self.cones {
            for b in &other.cones {
                let mut c = a.clone();
                c.extend(b.iter().map(|i| i + off));
                cones.push(c);
            }
        }
        Self::new(rays, cones).expect("products of complete simplicial fans are valid")
    }

    /// Same fan with relabelled maximal cones (same rays and labels).
    pub fn with_cones(&self, cones: Vec<Vec<usize>>) -> Result<Self> {
        Self::with_labels(self.rays.clone(), self.labels.clone(), cones)
    }

    /// Converts to another scalar type.
    pub fn map_scalar<J: Int>(&self) -> Fan<J> {
        let rays = self
            .rays
            .iter()
            .map(|r| r.iter().map(|x| J::from_bigint(&x.to_big())).collect())
            .collect();
        Fan::with_labels(rays, self.labels.clone(), self.cones.clone()).expect("same combinatorics")
    }

    /// Whether the two fans have the same rays (as a set) and the same cones.
    pub fn same_as(&self, other: &Self) -> bool {
        if self.dim != other.dim || self.rays.len() != other.rays.len() {
            return false;
        }
        let key = |f: &Self| -> BTreeSet<Vec<Vec<I>>> {
            f.cones
                .iter()
                .map(|c| {
                    let mut v: Vec<Vec<I>> = c.iter().map(|&i| f.rays[i].clone()).collect();
                    v.sort();
                    v
                })
                .collect()
        };
        key(self) == key(other)
    }
}

/// Index, terminality, canonicity and Gorenstein index of the simplicial cone on `gens`.
pub fn cone_singularity<I: Int>(gens: &[Vec<I>]) -> ConeSingularity {
    let n = gens.len();
    let cols: Vec<Vec<I>> = (0..n).map(|c| gens.iter().map(|g| g[c].clone()).collect()).collect();
    let det = linalg::determinant(&cols).to_big().abs();
    let m = linalg::rational_matrix(&cols, n);
    // Gorenstein index: denominators of the linear form equal to 1 on every ray
    let ones: Vec<BigRational> = vec![BigRational::one(); n];
    let form = m.transpose().solve(&ones).expect("simplicial cone");
    let gorenstein_index = form.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    // box elements: the group N / (lattice of the rays), generated by unit vectors
    let frac = |v: Vec<BigRational>| -> Vec<BigRational> { v.into_iter().map(|q| q.clone() - q.floor()).collect() };
    let gens_box: Vec<Vec<BigRational>> = (0..n)
        .map(|k| {
            let e: Vec<BigRational> = (0..n)
                .map(|i| if i == k { BigRational::one() } else { BigRational::zero() })
                .collect();
            frac(m.solve(&e).expect("simplicial cone"))
        })
        .collect();
    let mut group: BTreeSet<Vec<BigRational>> = BTreeSet::new();
    let zero = vec![BigRational::zero(); n];
    group.insert(zero.clone());
    let mut frontier = vec![zero.clone()];
    while let Some(x) = frontier.pop() {
        for g in &gens_box {
            let y = frac(x.iter().zip(g).map(|(a, b)| a + b).collect());
            if group.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let ages: Vec<BigRational> = group
        .iter()
        .filter(|x| **x != zero)
        .map(|x| x.iter().cloned().sum())
        .collect();
    let one = BigRational::one();
    ConeSingularity {
        index: det,
        terminal: ages.iter().all(|a| *a > one),
        canonical: ages.iter().all(|a| *a >= one),
        gorenstein_index,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> Fan<i64> {
        Fan::new(
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap()
    }

    fn p1() -> Fan<i64> {
        Fan::new(vec![vec![1], vec![-1]], vec![vec![0], vec![1]]).unwrap()
    }

    #[test]
    fn projective_plane() {
        let f = p2();
        assert_eq!(f.picard_number(), 1);
        assert_eq!(f.walls().len(), 3);
        for w in f.walls() {
            assert_eq!(w.relation, vec![1, 1, 1]);
            assert_eq!(w.anticanonical_degree(), 3);
        }
        assert!(f.is_smooth() && f.is_fano() && f.is_projective());
    }

    #[test]
    fn missing_cone_is_incomplete() {
        let e = Fan::<i64>::new(
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2]],
        )
        .unwrap_err();
        assert!(e.to_string().contains("incomplete"), "{e}");
    }

    #[test]
    fn validation_diagnostics() {
        let e = Fan::<i64>::new(vec![vec![2, 0], vec![0, 1], vec![-1, -1]], vec![vec![0, 1]]).unwrap_err();
        assert!(e.to_string().contains("non-primitive"));
        let e = Fan::<i64>::new(
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1, 2]],
        )
        .unwrap_err();
        assert!(e.to_string().contains("non-simplicial"));
        // the same two cones listed twice over: degree two
        let e = Fan::<i64>::new(
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1], vec![1, 1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3], vec![2, 4]],
        )
        .unwrap_err();
        assert!(e.to_string().contains("overlapping") || e.to_string().contains("incomplete"), "{e}");
    }

    #[test]
    fn class_group_pairing_on_p1xp1() {
        let f = p1().product(&p1());
        assert_eq!(f.picard_number(), 2);
        assert_eq!(f.cones().len(), 4);
        // D_0 (from the first factor) meets the ruling of the other factor once
        let mut pairing = BTreeSet::new();
        for w in f.walls() {
            let row: Vec<i64> = (0..4).map(|j| w.relation[j]).collect();
            pairing.insert(row);
        }
        assert_eq!(pairing, BTreeSet::from([vec![1, 1, 0, 0], vec![0, 0, 1, 1]]));
        // class coordinates pair as the relation does
        for w in f.walls() {
            for j in 0..4 {
                assert_eq!(scalar::dot(&f.ray_divisor_class(j), &w.class), w.relation[j]);
            }
        }
    }

    #[test]
    fn blown_up_plane_has_minus_one_curve() {
        let f = p2().star_subdivision(&[0, 1]).unwrap();
        assert_eq!(f.picard_number(), 2);
        let e = 3;
        let exc: Vec<&Wall<i64>> = f.walls().iter().filter(|w| w.rays == vec![e]).collect();
        assert_eq!(exc.len(), 1);
        assert_eq!(exc[0].relation[e], -1);
        let rays = f.extremal_rays();
        assert!(rays.iter().any(|r| r.kind == ContractionType::Divisorial(e) && r.image_dim == 0));
    }

    #[test]
    fn lift_round_trips() {
        let f = p2().star_subdivision(&[0, 1]).unwrap();
        let d = vec![3, -2];
        let a = f.class_group().lift(&d);
        let back = f.divisor_class(&a);
        // positive multiple
        assert_eq!(back[0] * d[1], back[1] * d[0]);
        assert!(back[0] * d[0] > 0);
    }

    #[test]
    fn weighted_point_singularity() {
        let gens = vec![vec![1i64, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![-1, -1, -1, 2]];
        let s = cone_singularity(&gens);
        assert_eq!(s.index, BigInt::from(2));
        assert!(s.terminal);
        // 1/2(1,1,1,1) is Gorenstein
        assert_eq!(s.gorenstein_index, BigInt::one());
        let gens = vec![vec![1i64, 0, 0], vec![0, 1, 0], vec![-1, -1, 2]];
        let s = cone_singularity(&gens);
        assert!(s.terminal);
        assert_eq!(s.gorenstein_index, BigInt::from(2));
        let gens = vec![vec![1i64, 0], vec![1, 2]];
        let s = cone_singularity(&gens);
        assert!(!s.terminal && s.canonical);
        assert_eq!(s.gorenstein_index, BigInt::one());
    }

    #[test]
    fn hirzebruch_section_has_mixed_relation() {
        // F_1: rays e1, e2, -e1 + e2, -e2
        let f = Fan::<i64>::new(
            vec![vec![1, 0], vec![0, 1], vec![-1, 1], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
        )
        .unwrap();
        assert_eq!(f.walls().len(), 4);
        let mixed: Vec<_> = f.walls().iter().filter(|w| !w.negative_rays().is_empty()).collect();
        assert_eq!(mixed.len(), 1);
        let w = mixed[0];
        let j = w.rays[0];
        assert_eq!(w.relation[j], -1);
    }
}
