//! Fan builders and the built-in instance catalog.

use crate::error::{Error, Result};
use crate::mmp;
use crate::scalar::{self, Int};
use crate::toric::{ContractionType, Fan};

fn unit<I: Int>(n: usize, i: usize) -> Vec<I> {
    (0..n).map(|j| if i == j { I::one() } else { I::zero() }).collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `P^n`: rays `e_1, …, e_n, -Σ e_i`.
pub fn projective_space<I: Int>(n: usize) -> Result<Fan<I>> {
    if n == 0 {
        return Err(Error::InvalidArgument("projective space of dimension 0".into()));
    }
    let mut rays: Vec<Vec<I>> = (0..n).map(|i| unit(n, i)).collect();
    rays.push(vec![-I::one(); n]);
    Fan::new(rays, subsets(n + 1, n))
}

/// Product of a nonempty list of fans, rays in factor order.
pub fn product_of<I: Int>(factors: &[Fan<I>]) -> Result<Fan<I>> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("empty product".into()))?;
    Ok(rest.iter().fold(first.clone(), |acc, f| acc.product(f)))
}

/// Hirzebruch surface `F_r`: rays `e1, e2, -e1 + r e2, -e2`.
pub fn hirzebruch<I: Int>(r: i64) -> Result<Fan<I>> {
    if r < 0 {
        return Err(Error::InvalidArgument("Hirzebruch index must be nonnegative".into()));
    }
    let v = |a: i64, b: i64| vec![I::from_i64_exact(a), I::from_i64_exact(b)];
    Fan::new(
        vec![v(1, 0), v(0, 1), v(-1, r), v(0, -1)],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
    )
}

/// `P(O ⊕ O(a))` over `P^m`.
pub fn projective_bundle<I: Int>(m: usize, a: i64) -> Result<Fan<I>> {
    if m == 0 {
        return Err(Error::InvalidArgument("base must have positive dimension".into()));
    }
    let n = m + 1;
    let mut rays: Vec<Vec<I>> = (0..m).map(|i| unit(n, i)).collect();
    let mut last = vec![-I::one(); m];
    last.push(I::from_i64_exact(a));
    rays.push(last);
    rays.push(unit(n, m));
    rays.push(scalar::neg_vec(&unit::<I>(n, m)));
    let mut cones = Vec::new();
    for s in subsets(m + 1, m) {
        for fiber in [m + 1, m + 2] {
            let mut c = s.clone();
            c.push(fiber);
            cones.push(c);
        }
    }
    Fan::new(rays, cones)
}

/// The five smooth toric del Pezzo surfaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DelPezzo {
    P2,
    P1xP1,
    Bl1,
    Bl2,
    Bl3,
}

impl DelPezzo {
    pub const ALL: [DelPezzo; 5] = [DelPezzo::P2, DelPezzo::P1xP1, DelPezzo::Bl1, DelPezzo::Bl2, DelPezzo::Bl3];

    pub fn name(self) -> &'static str {
        match self {
            DelPezzo::P2 => "p2",
            DelPezzo::P1xP1 => "q",
            DelPezzo::Bl1 => "bl1",
            DelPezzo::Bl2 => "bl2",
            DelPezzo::Bl3 => "bl3",
        }
    }

    pub fn picard_number(self) -> usize {
        match self {
            DelPezzo::P2 => 1,
            DelPezzo::P1xP1 | DelPezzo::Bl1 => 2,
            DelPezzo::Bl2 => 3,
            DelPezzo::Bl3 => 4,
        }
    }
}

/// Toric del Pezzo surface; the blow-ups of `P²` are at torus-fixed points.
pub fn toric_del_pezzo<I: Int>(s: DelPezzo) -> Fan<I> {
    let p2 = projective_space::<I>(2).expect("P2");
    match s {
        DelPezzo::P2 => p2,
        DelPezzo::P1xP1 => {
            let p1 = projective_space::<I>(1).expect("P1");
            p1.product(&p1)
        }
        DelPezzo::Bl1 => p2.star_subdivision(&[0, 1]).expect("blow-up"),
        DelPezzo::Bl2 => toric_del_pezzo::<I>(DelPezzo::Bl1).star_subdivision(&[1, 2]).expect("blow-up"),
        DelPezzo::Bl3 => toric_del_pezzo::<I>(DelPezzo::Bl2).star_subdivision(&[0, 2]).expect("blow-up"),
    }
}

/// Blow-up of the torus-fixed point of a maximal cone.
pub fn blow_up_point<I: Int>(fan: &Fan<I>, cone: &[usize]) -> Result<Fan<I>> {
    if cone.len() != fan.dim() || !fan.is_cone(cone) {
        return Err(Error::InvalidArgument(format!("{cone:?} is not a maximal cone")));
    }
    fan.star_subdivision(cone)
}

/// Blow-up of the torus-invariant curve of an `(n-1)`-dimensional cone.
pub fn blow_up_invariant_curve<I: Int>(fan: &Fan<I>, cone: &[usize]) -> Result<Fan<I>> {
    if cone.len() + 1 != fan.dim() || !fan.is_cone(cone) {
        return Err(Error::InvalidArgument(format!("{cone:?} is not a wall of the fan")));
    }
    fan.star_subdivision(cone)
}

/// `(P¹)⁴` blown up at a torus-fixed point. Rays: `e1, -e1, …, e4, -e4, u` with
/// `u = e1 + e2 + e3 + e4`.
pub fn example_blpt_p1x4<I: Int>() -> Fan<I> {
    let p1 = projective_space::<I>(1).expect("P1");
    let y = product_of(&[p1.clone(), p1.clone(), p1.clone(), p1]).expect("product");
    blow_up_point(&y, &[0, 2, 4, 6]).expect("fixed point")
}

/// The model obtained from [`example_blpt_p1x4`] by flipping its four
/// `K`-positive small rays (the exceptional lines).
pub fn example_fano_flip_model<I: Int>() -> Fan<I> {
    let mut fan = example_blpt_p1x4::<I>();
    let mut flips = 0;
    loop {
        let next = fan
            .extremal_rays()
            .into_iter()
            .find(|r| r.kind == ContractionType::Small && r.k_sign() > 0);
        let Some(r) = next else { break };
        fan = mmp::flip(&fan, &r).expect("small ray flips");
        flips += 1;
    }
    assert_eq!(flips, 4, "four exceptional lines are flipped");
    assert!(fan.is_fano() && fan.picard_number() == 5);
    fan
}

/// Properties recorded for the catalog self-test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expected {
    pub rho: usize,
    pub smooth: bool,
    pub fano: bool,
    pub c: usize,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub expected: Expected,
    build: Recipe,
}

#[derive(Clone, Debug)]
enum Recipe {
    Projective(usize),
    Hirzebruch(i64),
    Bundle(usize, i64),
    DelPezzo(DelPezzo),
    Product(Vec<Recipe>),
    BlowUp(Box<Recipe>, Vec<usize>),
    BlptP1x4,
    FanoFlipModel,
}

impl Recipe {
    fn build<I: Int>(&self) -> Fan<I> {
        match self {
            Recipe::Projective(n) => projective_space(*n).expect("valid"),
            Recipe::Hirzebruch(r) => hirzebruch(*r).expect("valid"),
            Recipe::Bundle(m, a) => projective_bundle(*m, *a).expect("valid"),
            Recipe::DelPezzo(s) => toric_del_pezzo(*s),
            Recipe::Product(fs) => {
                let fans: Vec<Fan<I>> = fs.iter().map(Recipe::build).collect();
                product_of(&fans).expect("nonempty")
            }
            Recipe::BlowUp(base, cone) => base.build::<I>().star_subdivision(cone).expect("cone of the base"),
            Recipe::BlptP1x4 => example_blpt_p1x4(),
            Recipe::FanoFlipModel => example_fano_flip_model(),
        }
    }
}

impl CatalogEntry {
    pub fn build<I: Int>(&self) -> Fan<I> {
        self.build.build()
    }
}

fn entry(name: &str, description: &str, exp: (usize, bool, bool, usize), build: Recipe) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        description: description.into(),
        expected: Expected {
            rho: exp.0,
            smooth: exp.1,
            fano: exp.2,
            c: exp.3,
        },
        build,
    }
}

/// The built-in catalog. Expected values were derived by hand from the
/// geometry of each instance.
pub fn catalog() -> Vec<CatalogEntry> {
    use Recipe::*;
    let p1 = || Projective(1);
    let mut v = vec![
        entry("p1", "projective line", (1, true, true, 1), p1()),
        entry("p2", "projective plane", (1, true, true, 0), Projective(2)),
        entry("p1xp1", "quadric surface", (2, true, true, 1), DelPezzo(self::DelPezzo::P1xP1)),
        entry("bl1-p2", "P2 blown up at a point (F1)", (2, true, true, 1), DelPezzo(self::DelPezzo::Bl1)),
        entry("bl2-p2", "P2 blown up at two points", (3, true, true, 2), DelPezzo(self::DelPezzo::Bl2)),
        entry("bl3-p2", "P2 blown up at three points", (4, true, true, 3), DelPezzo(self::DelPezzo::Bl3)),
        entry("f2", "Hirzebruch surface F2", (2, true, false, 1), Hirzebruch(2)),
        entry("p3", "projective 3-space", (1, true, true, 0), Projective(3)),
        entry("blpt-p3", "P3 blown up at a point", (2, true, true, 1), BlowUp(Box::new(Projective(3)), vec![0, 1, 2])),
        entry(
            "blpt2-p3",
            "P3 blown up at two points; the line through them flops",
            (3, true, false, 2),
            BlowUp(Box::new(BlowUp(Box::new(Projective(3)), vec![0, 1, 2])), vec![0, 1, 3]),
        ),
        entry(
            "blpt-p1x3",
            "(P1)^3 blown up at a fixed point; eight small modifications",
            (4, true, false, 3),
            BlowUp(Box::new(Product(vec![p1(), p1(), p1()])), vec![0, 2, 4]),
        ),
        entry("bundle-p2-o2", "P(O + O(2)) over P2", (2, true, true, 1), Bundle(2, 2)),
        entry("p4", "projective 4-space", (1, true, true, 0), Projective(4)),
        entry("blpt-p4", "P4 blown up at a point", (2, true, true, 1), BlowUp(Box::new(Projective(4)), vec![0, 1, 2, 3])),
        entry("blline-p4", "P4 blown up along an invariant line", (2, true, true, 0), BlowUp(Box::new(Projective(4)), vec![0, 1, 2])),
        entry("p1xp3", "P1 x P3", (2, true, true, 1), Product(vec![p1(), Projective(3)])),
        entry("p1x4", "(P1)^4", (4, true, true, 1), Product(vec![p1(), p1(), p1(), p1()])),
        entry(
            "p1xblpt-p3",
            "P1 x (P3 blown up at a point)",
            (3, true, true, 1),
            Product(vec![p1(), BlowUp(Box::new(Projective(3)), vec![0, 1, 2])]),
        ),
        entry("p1xbundle-p2-o2", "P1 x P(O + O(2)) over P2", (3, true, true, 1), Product(vec![p1(), Bundle(2, 2)])),
        entry("bundle-p3-o2", "P(O + O(2)) over P3", (2, true, true, 1), Bundle(3, 2)),
        entry("bundle-p3-o3", "P(O + O(3)) over P3", (2, true, true, 1), Bundle(3, 3)),
        entry("blpt-p1x4", "(P1)^4 blown up at a fixed point", (5, true, false, 4), BlptP1x4),
        entry(
            "fano-flip-model",
            "blpt-p1x4 after flipping its four exceptional lines",
            (5, true, true, 1),
            FanoFlipModel,
        ),
    ];
    let surfaces = self::DelPezzo::ALL;
    for (i, a) in surfaces.iter().enumerate() {
        for b in &surfaces[i..] {
            if *a == self::DelPezzo::P1xP1 && *b == self::DelPezzo::P1xP1 {
                // listed as p1x4
                continue;
            }
            let rho = a.picard_number() + b.picard_number();
            let c = (a.picard_number() - 1).max(b.picard_number() - 1);
            v.push(entry(
                &format!("dp-{}-{}", a.name(), b.name()),
                &format!("product of del Pezzo surfaces {} x {}", a.name(), b.name()),
                (rho, true, true, c),
                Product(vec![DelPezzo(*a), DelPezzo(*b)]),
            ));
        }
    }
    v
}

/// Looks up a catalog entry by name.
pub fn lookup(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_produce_expected_sizes() {
        let p4 = projective_space::<i64>(4).unwrap();
        assert_eq!((p4.picard_number(), p4.cones().len()), (1, 5));
        let p1x4 = lookup("p1x4").unwrap().build::<i64>();
        assert_eq!((p1x4.picard_number(), p1x4.cones().len(), p1x4.walls().len()), (4, 16, 32));
        assert!(p1x4.walls().iter().all(|w| w.negative_rays().is_empty()));
        let dp6 = toric_del_pezzo::<i64>(DelPezzo::Bl3);
        assert_eq!((dp6.num_rays(), dp6.picard_number()), (6, 4));
        assert!(projective_space::<i64>(0).is_err());
        assert!(hirzebruch::<i64>(-1).is_err());
    }

    #[test]
    fn catalog_names_are_unique() {
        let names: std::collections::BTreeSet<String> = catalog().into_iter().map(|e| e.name).collect();
        assert_eq!(names.len(), catalog().len());
    }

    #[test]
    fn blow_up_arguments_are_checked() {
        let p3 = projective_space::<i64>(3).unwrap();
        assert!(blow_up_point(&p3, &[0, 1]).is_err());
        assert!(blow_up_invariant_curve(&p3, &[0, 1]).is_ok());
        assert!(blow_up_invariant_curve(&p3, &[0, 1, 2]).is_err());
    }
}
