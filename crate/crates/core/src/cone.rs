//! Rational polyhedral cones with both descriptions kept in canonical form.
//!
//! A [`PolyCone`] stores its extremal rays and lineality space together with
//! its facet normals and implicit equations. Conversion between the two is
//! done by the double description method with the combinatorial adjacency
//! test. Rays and normals are primitive integer vectors reduced modulo the
//! lineality space (resp. the equations) and sorted, so structural equality
//! coincides with set equality.

use std::collections::BTreeSet;


use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{self, Int};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyCone<I> {
    ambient_dim: usize,
    rays: Vec<Vec<I>>,
    lineality: Vec<Vec<I>>,
    facets: Vec<Vec<I>>,
    equations: Vec<Vec<I>>,
}

/// A face of a cone, as index sets into the parent's rays and facets.
///
/// The lineality space of the parent belongs to every face.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub rays: Vec<usize>,
    pub facets: Vec<usize>,
    pub dim: usize,
}

#[derive(Clone, Debug)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64).max(1)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Self) -> Self {
        BitSet(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn is_subset(&self, o: &Self) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

struct DdRay<I> {
    v: Vec<I>,
    tight: BitSet,
}

/// Double description: V-representation of `{x : a_k . x >= 0, e . x = 0}`.
fn double_description<I: Int>(
    dim: usize,
    inequalities: &[Vec<I>],
    equations: &[Vec<I>],
) -> (Vec<Vec<I>>, Vec<Vec<I>>) {
    let nineq = inequalities.len();
    let mut lineality: Vec<Vec<I>> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { I::one() } else { I::zero() }).collect())
        .collect();
    let mut rays: Vec<DdRay<I>> = Vec::new();
    let mut processed = BitSet::new(nineq);

    let constraints = equations
        .iter()
        .map(|e| (e, None))
        .chain(inequalities.iter().enumerate().map(|(k, a)| (a, Some(k))));

    for (a, index) in constraints {
        if scalar::is_zero_vec(a) {
            continue;
        }
        if let Some(pos) = lineality.iter().position(|l| !scalar::dot(a, l).is_zero()) {
            let mut l0 = lineality.swap_remove(pos);
            let mut al0 = scalar::dot(a, &l0);
            if al0.is_negative() {
                l0 = scalar::neg_vec(&l0);
                al0 = -al0;
            }
            for l in lineality.iter_mut() {
                let al = scalar::dot(a, l);
                if !al.is_zero() {
                    *l = scalar::primitive(scalar::combine(&al0, l, &(-al), &l0));
                }
            }
            for r in rays.iter_mut() {
                let ar = scalar::dot(a, &r.v);
                if !ar.is_zero() {
                    r.v = scalar::primitive(scalar::combine(&al0, &r.v, &(-ar), &l0));
                }
                if let Some(k) = index {
                    r.tight.insert(k);
                }
            }
            if index.is_some() {
                rays.push(DdRay {
                    v: l0,
                    tight: processed.clone(),
                });
            }
        } else {
            let vals: Vec<I> = rays.iter().map(|r| scalar::dot(a, &r.v)).collect();
            let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
            let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
            let mut next: Vec<DdRay<I>> = Vec::new();
            for p in &pos {
                for n in &neg {
                    let common = rays[*p].tight.and(&rays[*n].tight);
                    let adjacent = (0..rays.len())
                        .filter(|&r| r != *p && r != *n)
                        .all(|r| !common.is_subset(&rays[r].tight));
                    if !adjacent {
                        continue;
                    }
                    let v = scalar::primitive(scalar::combine(
                        &vals[*p],
                        &rays[*n].v,
                        &(-vals[*n].clone()),
                        &rays[*p].v,
                    ));
                    let mut tight = common;
                    if let Some(k) = index {
                        tight.insert(k);
                    }
                    next.push(DdRay { v, tight });
                }
            }
            let old = std::mem::take(&mut rays);
            for (i, mut r) in old.into_iter().enumerate() {
                if vals[i].is_zero() {
                    if let Some(k) = index {
                        r.tight.insert(k);
                    }
                    rays.push(r);
                } else if vals[i].is_positive() && index.is_some() {
                    rays.push(r);
                }
            }
            rays.extend(next);
        }
        if let Some(k) = index {
            processed.insert(k);
        }
    }
    (rays.into_iter().map(|r| r.v).collect(), lineality)
}

/// Canonical basis of a subspace: primitive integer rows of its RREF.
fn canonical_subspace<I: Int>(basis: &[Vec<I>], dim: usize) -> Vec<Vec<I>> {
    if basis.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = linalg::rational_matrix(basis, dim).rref();
    (0..pivots.len())
        .map(|i| scalar::clear_denominators(r.row(i)))
        .collect()
}

/// Reduces `v` modulo a canonical subspace basis (zeroes its pivot entries), keeping direction.
fn reduce_mod<I: Int>(v: &[I], basis: &[Vec<I>]) -> Vec<I> {
    let mut v = v.to_vec();
    for b in basis {
        let p = b.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
        if v[p].is_zero() {
            continue;
        }
        let bp = b[p].clone();
        let vp = v[p].clone();
        v = scalar::combine(&bp, &v, &(-vp), b);
    }
    scalar::primitive(v)
}

fn canonical_rays<I: Int>(rays: Vec<Vec<I>>, lineality: &[Vec<I>]) -> Vec<Vec<I>> {
    let set: BTreeSet<Vec<I>> = rays
        .into_iter()
        .map(|r| reduce_mod(&r, lineality))
        .filter(|r| !scalar::is_zero_vec(r))
        .collect();
    set.into_iter().collect()
}

impl<I: Int> PolyCone<I> {
    /// `cone(generators) + span(lineality_generators)`.
    pub fn from_generators(
        ambient_dim: usize,
        generators: &[Vec<I>],
        lineality_generators: &[Vec<I>],
    ) -> Result<Self> {
        Self::check_dim(ambient_dim, generators.iter().chain(lineality_generators))?;
        let (facets, equations) = double_description(ambient_dim, generators, lineality_generators);
        Ok(Self::from_h_unchecked(ambient_dim, facets, equations))
    }

    /// `{x : n . x >= 0 for n in inequalities, e . x = 0 for e in equations}`.
    pub fn from_inequalities(
        ambient_dim: usize,
        inequalities: &[Vec<I>],
        equations: &[Vec<I>],
    ) -> Result<Self> {
        Self::check_dim(ambient_dim, inequalities.iter().chain(equations))?;
        Ok(Self::from_h_unchecked(
            ambient_dim,
            inequalities.to_vec(),
            equations.to_vec(),
        ))
    }

    pub fn full_space(ambient_dim: usize) -> Result<Self> {
        Self::from_generators(ambient_dim, &[], &Self::unit_vectors(ambient_dim))
    }

    pub fn zero(ambient_dim: usize) -> Result<Self> {
        Self::from_generators(ambient_dim, &[], &[])
    }

    fn unit_vectors(d: usize) -> Vec<Vec<I>> {
        (0..d)
            .map(|i| (0..d).map(|j| if i == j { I::one() } else { I::zero() }).collect())
            .collect()
    }

    fn check_dim<'a>(d: usize, vs: impl Iterator<Item = &'a Vec<I>>) -> Result<()> {
        if d == 0 {
            return Err(Error::InvalidArgument(
                "cones in a zero-dimensional ambient space are not supported".into(),
            ));
        }
        for v in vs {
            if v.len() != d {
                return Err(Error::Shape(format!(
                    "vector of length {} in ambient dimension {d}",
                    v.len()
                )));
            }
        }
        Ok(())
    }

    fn from_h_unchecked(d: usize, ineqs: Vec<Vec<I>>, eqs: Vec<Vec<I>>) -> Self {
        let (rays, lin) = double_description(d, &ineqs, &eqs);
        let lineality = canonical_subspace(&lin, d);
        let rays = canonical_rays(rays, &lineality);
        let (facets, equations) = double_description(d, &rays, &lineality);
        let equations = canonical_subspace(&equations, d);
        let facets = canonical_rays(facets, &equations);
        PolyCone {
            ambient_dim: d,
            rays,
            lineality,
            facets,
            equations,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Extremal ray generators (modulo the lineality space).
    pub fn rays(&self) -> &[Vec<I>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<I>] {
        &self.lineality
    }

    /// Inward facet normals: the cone satisfies `n . x >= 0` for each.
    pub fn facets(&self) -> &[Vec<I>] {
        &self.facets
    }

    /// Basis of the orthogonal complement of the linear span.
    pub fn equations(&self) -> &[Vec<I>] {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equations.len()
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    /// The dual cone. Rays and facets swap roles, in the same order.
    pub fn dual(&self) -> Self {
        PolyCone {
            ambient_dim: self.ambient_dim,
            rays: self.facets.clone(),
            lineality: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn contains_point(&self, x: &[I]) -> bool {
        assert_eq!(x.len(), self.ambient_dim, "point dimension");
        self.equations.iter().all(|e| scalar::dot(e, x).is_zero())
            && self.facets.iter().all(|n| !scalar::dot(n, x).is_negative())
    }

    /// Membership in the relative interior.
    pub fn relative_interior_contains(&self, x: &[I]) -> bool {
        self.equations.iter().all(|e| scalar::dot(e, x).is_zero())
            && self.facets.iter().all(|n| scalar::dot(n, x).is_positive())
    }

    pub fn contains_cone(&self, other: &Self) -> bool {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dimension");
        other.rays.iter().all(|r| self.contains_point(r))
            && other
                .lineality
                .iter()
                .all(|l| self.contains_point(l) && self.contains_point(&scalar::neg_vec(l)))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Shape(format!(
                "intersecting cones in dimensions {} and {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        let ineqs: Vec<Vec<I>> = self.facets.iter().chain(&other.facets).cloned().collect();
        let eqs: Vec<Vec<I>> = self.equations.iter().chain(&other.equations).cloned().collect();
        Ok(Self::from_h_unchecked(self.ambient_dim, ineqs, eqs))
    }

    /// Intersection of a nonempty family of cones in one ambient space.
    pub fn intersect_all(cones: &[Self]) -> Result<Self> {
        let first = cones
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty intersection".into()))?;
        if cones.iter().any(|c| c.ambient_dim != first.ambient_dim) {
            return Err(Error::Shape("intersecting cones of different ambient dimensions".into()));
        }
        let ineqs: BTreeSet<Vec<I>> = cones.iter().flat_map(|c| c.facets.iter().cloned()).collect();
        let eqs: Vec<Vec<I>> = cones.iter().flat_map(|c| c.equations.iter().cloned()).collect();
        Ok(Self::from_h_unchecked(first.ambient_dim, ineqs.into_iter().collect(), eqs))
    }

    /// Intersection with a linear subspace given by equations.
    pub fn restrict(&self, equations: &[Vec<I>]) -> Result<Self> {
        Self::check_dim(self.ambient_dim, equations.iter())?;
        let eqs: Vec<Vec<I>> = self.equations.iter().chain(equations).cloned().collect();
        Ok(Self::from_h_unchecked(self.ambient_dim, self.facets.clone(), eqs))
    }

    /// A point in the relative interior: the sum of the extremal rays.
    pub fn relative_interior_point(&self) -> Vec<I> {
        let mut p = vec![I::zero(); self.ambient_dim];
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x = scalar::add(x, y);
            }
        }
        scalar::primitive(p)
    }

    /// Linear image under the integer matrix `m` (rows = output coordinates).
    pub fn image(&self, m: &[Vec<I>], target_dim: usize) -> Result<Self> {
        let apply = |v: &Vec<I>| -> Vec<I> { m.iter().map(|row| scalar::dot(row, v)).collect() };
        let gens: Vec<Vec<I>> = self.rays.iter().map(apply).collect();
        let lin: Vec<Vec<I>> = self.lineality.iter().map(apply).collect();
        PolyCone::from_generators(target_dim, &gens, &lin)
    }

    fn incidence(&self) -> Vec<Vec<bool>> {
        self.facets
            .iter()
            .map(|n| self.rays.iter().map(|r| scalar::dot(n, r).is_zero()).collect())
            .collect()
    }

    fn face_dim(&self, rays: &[usize]) -> usize {
        let gens: Vec<Vec<I>> = rays
            .iter()
            .map(|&i| self.rays[i].clone())
            .chain(self.lineality.iter().cloned())
            .collect();
        linalg::rank(&gens, self.ambient_dim)
    }

    fn close_from_rays(&self, inc: &[Vec<bool>], rays: &[usize]) -> Face {
        let facets: Vec<usize> = (0..self.facets.len())
            .filter(|&f| rays.iter().all(|&r| inc[f][r]))
            .collect();
        let rays: Vec<usize> = (0..self.rays.len())
            .filter(|&r| facets.iter().all(|&f| inc[f][r]))
            .collect();
        let dim = self.face_dim(&rays);
        Face { rays, facets, dim }
    }

    pub fn top_face(&self) -> Face {
        Face {
            rays: (0..self.rays.len()).collect(),
            facets: Vec::new(),
            dim: self.dim(),
        }
    }

    /// Every face, grouped by dimension (index = dimension).
    pub fn face_lattice(&self) -> Vec<Vec<Face>> {
        let inc = self.incidence();
        let mut levels: Vec<Vec<Face>> = vec![Vec::new(); self.dim() + 1];
        let top = self.top_face();
        let mut current = vec![top.clone()];
        levels[top.dim].push(top);
        while !current.is_empty() {
            let mut seen = BTreeSet::new();
            let mut next = Vec::new();
            for g in &current {
                for f in 0..self.facets.len() {
                    if g.facets.contains(&f) {
                        continue;
                    }
                    let sub: Vec<usize> = g.rays.iter().copied().filter(|&r| inc[f][r]).collect();
                    let child = self.close_from_rays(&inc, &sub);
                    if child.dim + 1 == g.dim && seen.insert(child.rays.clone()) {
                        next.push(child);
                    }
                }
            }
            for f in &next {
                levels[f.dim].push(f.clone());
            }
            current = next;
        }
        for level in levels.iter_mut() {
            level.sort();
        }
        levels
    }

    pub fn faces_of_dim(&self, k: usize) -> Result<Vec<Face>> {
        if k > self.dim() {
            return Err(Error::InvalidArgument(format!(
                "face dimension {k} exceeds cone dimension {}",
                self.dim()
            )));
        }
        Ok(self.face_lattice().swap_remove(k))
    }

    /// Smallest face containing the point `x` (which must lie in the cone).
    pub fn minimal_face_containing(&self, x: &[I]) -> Result<Face> {
        if !self.contains_point(x) {
            return Err(Error::precondition("point is not in the cone"));
        }
        let facets: Vec<usize> = (0..self.facets.len())
            .filter(|&f| scalar::dot(&self.facets[f], x).is_zero())
            .collect();
        let rays: Vec<usize> = (0..self.rays.len())
            .filter(|&r| facets.iter().all(|&f| scalar::dot(&self.facets[f], &self.rays[r]).is_zero()))
            .collect();
        let dim = self.face_dim(&rays);
        Ok(Face { rays, facets, dim })
    }

    pub fn is_face_of(&self, face: &Face) -> bool {
        let inc = self.incidence();
        face.rays.iter().all(|&r| r < self.rays.len())
            && face.facets.iter().all(|&f| f < self.facets.len())
            && self.close_from_rays(&inc, &face.rays) == *face
    }

    /// Materializes a face as a cone.
    pub fn face_cone(&self, face: &Face) -> Self {
        let gens: Vec<Vec<I>> = face.rays.iter().map(|&i| self.rays[i].clone()).collect();
        Self::from_generators(self.ambient_dim, &gens, &self.lineality)
            .expect("face generators live in the ambient space")
    }

    /// Whether `sub` (a subcone) is a face of `self`.
    pub fn has_face(&self, sub: &Self) -> bool {
        if !self.contains_cone(sub) {
            return false;
        }
        match self.minimal_face_containing(&sub.relative_interior_point()) {
            Ok(f) => self.face_cone(&f) == *sub,
            Err(_) => false,
        }
    }

    /// The face `tau* = dual ∩ tau^⊥` of [`PolyCone::dual`] matching the face `tau`.
    pub fn star_face(&self, tau: &Face) -> Result<Face> {
        if !self.is_face_of(tau) {
            return Err(Error::precondition("argument is not a face of the cone"));
        }
        let dual = self.dual();
        let rays = tau.facets.clone();
        let dim = dual.face_dim(&rays);
        Ok(Face {
            rays,
            facets: tau.rays.clone(),
            dim,
        })
    }

    /// Rays of `self` not lying in `other`.
    pub fn rays_outside<'a>(&'a self, other: &'a Self) -> impl Iterator<Item = &'a Vec<I>> + 'a {
        self.rays.iter().filter(move |r| !other.contains_point(r))
    }

    pub fn map_scalar<J: Int>(&self) -> PolyCone<J> {
        let conv = |vs: &Vec<Vec<I>>| -> Vec<Vec<J>> {
            vs.iter()
                .map(|v| v.iter().map(|x| J::from_bigint(&x.to_big())).collect())
                .collect()
        };
        PolyCone {
            ambient_dim: self.ambient_dim,
            rays: conv(&self.rays),
            lineality: conv(&self.lineality),
            facets: conv(&self.facets),
            equations: conv(&self.equations),
        }
    }
}

/// Checks `x ∈ cone(generators) + span(lineality)` by exact LP feasibility,
/// independently of any facet description.
pub fn generator_membership<I: Int>(generators: &[Vec<I>], lineality: &[Vec<I>], x: &[I]) -> bool {
    use crate::lp::{LinearProgram, Relation};
    let nvars = generators.len() + lineality.len();
    let mut lp = LinearProgram::new(nvars);
    for (i, nn) in lp.nonneg.iter_mut().enumerate() {
        *nn = i < generators.len();
    }
    for (coord, xc) in x.iter().enumerate() {
        let row = generators
            .iter()
            .chain(lineality)
            .map(|g| scalar::to_rational(&g[coord]))
            .collect();
        lp.constrain(row, Relation::Eq, scalar::to_rational(xc));
    }
    lp.feasible_point().is_some()
}

impl Face {
    pub fn contains(&self, other: &Face) -> bool {
        other.rays.iter().all(|r| self.rays.contains(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<i64> {
        x.to_vec()
    }

    #[test]
    fn orthant_is_self_dual() {
        let c = PolyCone::from_generators(2, &[v(&[1, 0]), v(&[0, 1])], &[]).unwrap();
        assert_eq!(c.dual(), c);
        assert_eq!(c.facets(), &[v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn dual_of_wedge() {
        let c = PolyCone::from_generators(2, &[v(&[1, 0]), v(&[1, 1])], &[]).unwrap();
        let d = c.dual();
        let expected = PolyCone::from_generators(2, &[v(&[0, 1]), v(&[1, -1])], &[]).unwrap();
        assert_eq!(d, expected);
        assert_eq!(d.dual(), c);
    }

    #[test]
    fn dual_of_full_space_is_zero() {
        let c = PolyCone::<i64>::full_space(3).unwrap();
        assert_eq!(c.lineality_dim(), 3);
        assert!(c.dual().is_zero());
        assert_eq!(c.dual(), PolyCone::zero(3).unwrap());
    }

    #[test]
    fn zero_ambient_rejected() {
        assert!(PolyCone::<i64>::from_generators(0, &[], &[]).is_err());
    }

    #[test]
    fn orthant_faces() {
        let c = PolyCone::from_generators(3, &[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])], &[]).unwrap();
        let rays = c.faces_of_dim(1).unwrap();
        assert_eq!(rays.len(), 3);
        let quads = c.faces_of_dim(2).unwrap();
        assert_eq!(quads.len(), 3);
        assert!(c.faces_of_dim(4).is_err());
        assert_eq!(c.faces_of_dim(0).unwrap().len(), 1);
    }

    #[test]
    fn square_cone_has_four_rays_and_facets() {
        let gens = vec![v(&[1, 1, 1]), v(&[1, -1, 1]), v(&[-1, 1, 1]), v(&[-1, -1, 1])];
        let c = PolyCone::from_generators(3, &gens, &[]).unwrap();
        assert_eq!(c.faces_of_dim(1).unwrap().len(), 4);
        assert_eq!(c.faces_of_dim(2).unwrap().len(), 4);
        assert_eq!(c.facets().len(), 4);
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let gens = vec![v(&[1, 0]), v(&[2, 1]), v(&[1, 1]), v(&[0, 1])];
        let c = PolyCone::from_generators(2, &gens, &[]).unwrap();
        assert_eq!(c.rays(), &[v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn half_plane_has_lineality() {
        let c = PolyCone::from_inequalities(2, &[v(&[0, 1])], &[]).unwrap();
        assert_eq!(c.lineality_dim(), 1);
        assert_eq!(c.rays().len(), 1);
        assert!(!c.is_pointed());
        assert!(c.contains_point(&[-5, 0]));
        assert_eq!(c.dual().rays(), &[v(&[0, 1])]);
        assert_eq!(c.dual().dim(), 1);
    }

    #[test]
    fn star_face_examples() {
        let c = PolyCone::from_generators(2, &[v(&[1, 0]), v(&[0, 1])], &[]).unwrap();
        let zero = c.minimal_face_containing(&[0, 0]).unwrap();
        let s = c.star_face(&zero).unwrap();
        assert_eq!(c.dual().face_cone(&s), c.dual());
        let ray = c.minimal_face_containing(&[1, 0]).unwrap();
        let s = c.star_face(&ray).unwrap();
        let expected = PolyCone::from_generators(2, &[v(&[0, 1])], &[]).unwrap();
        assert_eq!(c.dual().face_cone(&s), expected);
        let top = c.top_face();
        let s = c.star_face(&top).unwrap();
        assert_eq!(s.dim, 0);
    }

    #[test]
    fn star_face_rejects_non_faces() {
        let c = PolyCone::from_generators(2, &[v(&[1, 0]), v(&[0, 1])], &[]).unwrap();
        let bogus = Face {
            rays: vec![0],
            facets: vec![],
            dim: 1,
        };
        assert!(c.star_face(&bogus).is_err());
    }

    #[test]
    fn intersections_and_interiors() {
        let o = PolyCone::from_generators(2, &[v(&[1, 0]), v(&[0, 1])], &[]).unwrap();
        let m = PolyCone::from_generators(2, &[v(&[-1, 0]), v(&[0, -1])], &[]).unwrap();
        assert!(o.intersect(&m).unwrap().is_zero());
        let r = PolyCone::from_generators(2, &[v(&[2, 4])], &[]).unwrap();
        assert_eq!(r.relative_interior_point(), v(&[1, 2]));
        let d3 = PolyCone::<i64>::zero(3).unwrap();
        assert!(o.intersect(&d3).is_err());
    }

    #[test]
    fn bigint_instantiation_agrees() {
        use num_bigint::BigInt;
        let gens = vec![v(&[1, 1, 1]), v(&[1, -1, 1]), v(&[-1, 1, 1]), v(&[-1, -1, 1])];
        let small = PolyCone::from_generators(3, &gens, &[]).unwrap();
        let big_gens: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let big = PolyCone::from_generators(3, &big_gens, &[]).unwrap();
        assert_eq!(small.map_scalar::<BigInt>(), big);
    }
}
