//! Independent oracles for values the library computes by other routes.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use moridream::linalg::{integer_kernel, Matrix};
use moridream::{catalog, fano, mds, Fan};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn rank(rows: Vec<Vec<BigRational>>, cols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    Matrix::from_rows(rows, cols).unwrap().rank()
}

/// `ρ - rank(Pic(X) → Pic(D_j))` through the quotient fan of the star of
/// `j` (smooth fans, so restricted ray divisors are the quotient-fan ones).
fn restriction_kernel_dim(fan: &Fan, j: usize) -> usize {
    let n = fan.dim();
    let vj = fan.ray(j);
    let star: Vec<usize> = (0..fan.num_rays())
        .filter(|&k| k != j && fan.is_cone(&{
            let mut s = vec![j, k];
            s.sort();
            s
        }))
        .collect();
    // M of the quotient: m with <m, v_j> = 0
    let ms = integer_kernel(&[vj.to_vec()], n);
    let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
    let principal: Vec<Vec<BigRational>> =
        ms.iter().map(|m| star.iter().map(|&k| q(dot(m, fan.ray(k)))).collect()).collect();
    // w with <w, v_j> = 1 (rational)
    let norm = dot(vj, vj);
    let restrict = |k: usize| -> Vec<BigRational> {
        star.iter()
            .map(|&s| {
                if k == j {
                    -q(dot(vj, fan.ray(s))) / q(norm)
                } else if s == k {
                    q(1)
                } else {
                    BigRational::zero()
                }
            })
            .collect()
    };
    let mut all = principal.clone();
    all.extend((0..fan.num_rays()).map(restrict));
    let image = rank(all, star.len()) - rank(principal, star.len());
    fan.picard_number() - image
}

fn c_oracle(fan: &Fan) -> usize {
    (0..fan.num_rays()).map(|j| restriction_kernel_dim(fan, j)).max().unwrap()
}

#[test]
fn c_matches_restriction_oracle_on_catalog() {
    for e in catalog::catalog() {
        let f = e.build::<i64>();
        if f.dim() < 2 || !f.is_smooth() {
            continue;
        }
        let (c, witness) = fano::c_invariant(&f);
        assert_eq!(c, c_oracle(&f), "{}", e.name);
        assert_eq!(restriction_kernel_dim(&f, witness), c, "{}", e.name);
        assert_eq!(c, e.expected.c, "{}", e.name);
    }
}

fn det3(a: &[i64], b: &[i64], c: &[i64]) -> i64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// Number of projective simplicial fans using every ray, by enumerating
/// closed triangulated spheres edge by edge.
fn brute_force_projective_fans(rays: &[Vec<i64>]) -> usize {
    let n = rays.len();
    let mut triangles = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let d = det3(&rays[a], &rays[b], &rays[c]);
                if d == 0 {
                    continue;
                }
                // no other ray in the closed cone (Cramer's rule)
                let inside = (0..n).filter(|&r| r != a && r != b && r != c).any(|r| {
                    let l = [
                        det3(&rays[r], &rays[b], &rays[c]),
                        det3(&rays[a], &rays[r], &rays[c]),
                        det3(&rays[a], &rays[b], &rays[r]),
                    ];
                    l.iter().all(|x| x * d.signum() >= 0)
                });
                if !inside {
                    triangles.push([a, b, c]);
                }
            }
        }
    }
    let target = 2 * n - 4;
    let mut found: HashSet<BTreeSet<[usize; 3]>> = HashSet::new();

    fn edges(t: &[usize; 3]) -> [(usize, usize); 3] {
        [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]
    }

    fn extend(
        rays: &[Vec<i64>],
        triangles: &[[usize; 3]],
        chosen: &mut BTreeSet<[usize; 3]>,
        count: &mut BTreeMap<(usize, usize), usize>,
        target: usize,
        found: &mut HashSet<BTreeSet<[usize; 3]>>,
    ) {
        let open = count.iter().find(|(_, &c)| c == 1).map(|(e, _)| *e);
        let Some((a, b)) = open else {
            found.insert(chosen.clone());
            return;
        };
        if chosen.len() >= target {
            return;
        }
        let t0 = *chosen.iter().find(|t| t.contains(&a) && t.contains(&b)).unwrap();
        let c = t0.iter().copied().find(|&x| x != a && x != b).unwrap();
        let side = det3(&rays[a], &rays[b], &rays[c]).signum();
        for t in triangles {
            if chosen.contains(t) || !(t.contains(&a) && t.contains(&b)) {
                continue;
            }
            let d = t.iter().copied().find(|&x| x != a && x != b).unwrap();
            if det3(&rays[a], &rays[b], &rays[d]).signum() != -side {
                continue;
            }
            if edges(t).iter().any(|e| count.get(e).copied().unwrap_or(0) >= 2) {
                continue;
            }
            chosen.insert(*t);
            for e in edges(t) {
                *count.entry(e).or_default() += 1;
            }
            extend(rays, triangles, chosen, count, target, found);
            for e in edges(t) {
                *count.get_mut(&e).unwrap() -= 1;
            }
            chosen.remove(t);
        }
    }

    for t in triangles.iter().filter(|t| t.contains(&0)) {
        let mut chosen = BTreeSet::from([*t]);
        let mut count = BTreeMap::new();
        for e in edges(t) {
            count.insert(e, 1);
        }
        extend(rays, &triangles, &mut chosen, &mut count, target, &mut found);
    }
    found
        .into_iter()
        .filter(|ts| {
            let used: BTreeSet<usize> = ts.iter().flatten().copied().collect();
            if used.len() != n || ts.len() != target {
                return false;
            }
            let cones: Vec<Vec<usize>> = ts.iter().map(|t| t.to_vec()).collect();
            Fan::new(rays.to_vec(), cones).is_ok_and(|f| f.is_projective())
        })
        .count()
}

#[test]
fn chamber_count_matches_brute_force() {
    for name in ["blpt2-p3", "blpt-p1x3", "blpt-p3", "p3"] {
        let f = catalog::lookup(name).unwrap().build::<i64>();
        let atlas = mds::chamber_atlas(&f, mds::DEFAULT_CHAMBER_CAP).unwrap();
        assert_eq!(atlas.chambers.len(), brute_force_projective_fans(f.rays()), "{name}");
    }
}
