//! Exact linear programming by the two-phase simplex method with Bland's rule.
//!
//! Used for feasibility certificates (projectivity, cone membership from the
//! generator side). Everything runs over `BigRational`, so results are exact.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        x: Vec<BigRational>,
        value: BigRational,
    },
}

/// `maximize objective · x` subject to the constraints; variables flagged in
/// `nonneg` are restricted to `x >= 0`, all others are free.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub nonneg: Vec<bool>,
    pub constraints: Vec<Constraint>,
    pub objective: Vec<BigRational>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            nonneg: vec![false; num_vars],
            constraints: Vec::new(),
            objective: vec![BigRational::zero(); num_vars],
        }
    }

    pub fn constrain(&mut self, coeffs: Vec<BigRational>, relation: Relation, rhs: BigRational) {
        assert_eq!(coeffs.len(), self.num_vars);
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn solve(&self) -> LpOutcome {
        // column layout: for each variable one column (nonneg) or two (free)
        let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(self.num_vars);
        let mut ncols = 0;
        for &nn in &self.nonneg {
            if nn {
                col_of.push((ncols, None));
                ncols += 1;
            } else {
                col_of.push((ncols, Some(ncols + 1)));
                ncols += 2;
            }
        }
        let structural = ncols;
        let m = self.constraints.len();
        let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut rels = Vec::with_capacity(m);
        for c in &self.constraints {
            let mut row = vec![BigRational::zero(); structural];
            for (v, a) in c.coeffs.iter().enumerate() {
                let (p, n) = col_of[v];
                row[p] = a.clone();
                if let Some(n) = n {
                    row[n] = -a.clone();
                }
            }
            let (mut row, mut b, mut rel) = (row, c.rhs.clone(), c.relation);
            if b.is_negative() {
                row.iter_mut().for_each(|x| *x = -x.clone());
                b = -b;
                rel = match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
            rows.push(row);
            rhs.push(b);
            rels.push(rel);
        }
        // slack / surplus columns
        let mut basis = vec![usize::MAX; m];
        for (i, rel) in rels.iter().enumerate() {
            match rel {
                Relation::Le => {
                    let col = ncols;
                    ncols += 1;
                    for (k, r) in rows.iter_mut().enumerate() {
                        r.push(if k == i { BigRational::one() } else { BigRational::zero() });
                    }
                    basis[i] = col;
                }
                Relation::Ge => {
                    ncols += 1;
                    for (k, r) in rows.iter_mut().enumerate() {
                        r.push(if k == i { -BigRational::one() } else { BigRational::zero() });
                    }
                }
                Relation::Eq => {}
            }
        }
        let first_artificial = ncols;
        for i in 0..m {
            if basis[i] == usize::MAX {
                let col = ncols;
                ncols += 1;
                for (k, r) in rows.iter_mut().enumerate() {
                    r.push(if k == i { BigRational::one() } else { BigRational::zero() });
                }
                basis[i] = col;
            }
        }
        let mut tab = Tableau {
            rows,
            rhs,
            basis,
        };

        // phase 1
        let mut phase1_cost = vec![BigRational::zero(); ncols];
        for c in phase1_cost.iter_mut().skip(first_artificial) {
            *c = BigRational::one();
        }
        match tab.minimize(&phase1_cost, ncols) {
            Step::Unbounded => unreachable!("phase one is bounded below by zero"),
            Step::Optimal => {}
        }
        let infeas: BigRational = tab
            .basis
            .iter()
            .zip(&tab.rhs)
            .filter(|(&b, _)| b >= first_artificial)
            .map(|(_, v)| v.clone())
            .sum();
        if infeas.is_positive() {
            return LpOutcome::Infeasible;
        }
        // drive artificials out of the basis
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= first_artificial {
                if let Some(j) = (0..first_artificial).find(|&j| !tab.rows[i][j].is_zero()) {
                    tab.pivot(i, j);
                    i += 1;
                } else {
                    tab.rows.remove(i);
                    tab.rhs.remove(i);
                    tab.basis.remove(i);
                }
            } else {
                i += 1;
            }
        }
        for r in tab.rows.iter_mut() {
            r.truncate(first_artificial);
        }

        // phase 2: minimize -objective
        let mut cost = vec![BigRational::zero(); first_artificial];
        for (v, a) in self.objective.iter().enumerate() {
            let (p, n) = col_of[v];
            cost[p] = -a.clone();
            if let Some(n) = n {
                cost[n] = a.clone();
            }
        }
        match tab.minimize(&cost, first_artificial) {
            Step::Unbounded => LpOutcome::Unbounded,
            Step::Optimal => {
                let mut cols = vec![BigRational::zero(); first_artificial];
                for (i, &b) in tab.basis.iter().enumerate() {
                    cols[b] = tab.rhs[i].clone();
                }
                let x: Vec<BigRational> = col_of
                    .iter()
                    .map(|&(p, n)| match n {
                        Some(n) => cols[p].clone() - cols[n].clone(),
                        None => cols[p].clone(),
                    })
                    .collect();
                let value = x
                    .iter()
                    .zip(&self.objective)
                    .map(|(a, b)| a.clone() * b.clone())
                    .sum();
                LpOutcome::Optimal { x, value }
            }
        }
    }

    /// Feasible point if one exists.
    pub fn feasible_point(&self) -> Option<Vec<BigRational>> {
        let mut lp = self.clone();
        lp.objective = vec![BigRational::zero(); self.num_vars];
        match lp.solve() {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }
}

enum Step {
    Optimal,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = BigRational::one() / self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x *= inv.clone();
        }
        self.rhs[r] *= inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= f.clone() * y.clone();
                }
            }
            let v = self.rhs[i].clone() - f * prhs.clone();
            self.rhs[i] = v;
        }
        self.basis[r] = c;
    }

    fn minimize(&mut self, cost: &[BigRational], ncols: usize) -> Step {
        loop {
            // reduced costs, Bland's rule for the entering column
            let entering = (0..ncols).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut r = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        r -= cost[b].clone() * self.rows[i][j].clone();
                    }
                }
                r.is_negative()
            });
            let Some(j) = entering else {
                return Step::Optimal;
            };
            let mut best: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs[i].clone() / a.clone();
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return Step::Unbounded;
            };
            self.pivot(r, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn small_maximization() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x,y >= 0  -> (8/5, 6/5), value 14/5
        let mut lp = LinearProgram::new(2);
        lp.nonneg = vec![true, true];
        lp.constrain(vec![q(1), q(2)], Relation::Le, q(4));
        lp.constrain(vec![q(3), q(1)], Relation::Le, q(6));
        lp.objective = vec![q(1), q(1)];
        match lp.solve() {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, BigRational::new(14.into(), 5.into()));
                assert_eq!(x, vec![BigRational::new(8.into(), 5.into()), BigRational::new(6.into(), 5.into())]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.constrain(vec![q(1)], Relation::Ge, q(2));
        lp.constrain(vec![q(1)], Relation::Le, q(1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(1);
        lp.constrain(vec![q(1)], Relation::Ge, q(-5));
        lp.objective = vec![q(1)];
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn free_variables_and_equalities() {
        // x - y = -3, x + y = 1  -> x = -1, y = 2
        let mut lp = LinearProgram::new(2);
        lp.constrain(vec![q(1), q(-1)], Relation::Eq, q(-3));
        lp.constrain(vec![q(1), q(1)], Relation::Eq, q(1));
        assert_eq!(lp.feasible_point(), Some(vec![q(-1), q(2)]));
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let mut lp = LinearProgram::new(2);
        lp.nonneg = vec![true, true];
        lp.constrain(vec![q(1), q(1)], Relation::Eq, q(2));
        lp.constrain(vec![q(2), q(2)], Relation::Eq, q(4));
        lp.objective = vec![q(1), q(0)];
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(2)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
