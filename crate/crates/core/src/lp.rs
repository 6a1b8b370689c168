//! Exact two-phase primal simplex with Bland's rule.
//!
//! Every feasibility question in the crate (containment in a convex hull,
//! regularity heights, convexity certificates, strict systems) goes through
//! [`LinearProgram::solve`]. Strict inequalities are handled by
//! [`strict_feasibility`]: one shared slack `t <= 1` is maximized and the
//! strict system is solvable iff the optimum is positive.

use num::{One, Signed, Zero};

use crate::rational::{Rational, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vector,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vector },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// `maximize objective · x` subject to the constraints. Variables are free
/// unless listed in `nonneg`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    n: usize,
    nonneg: Vec<bool>,
    constraints: Vec<Constraint>,
    objective: Vector,
}

impl LinearProgram {
    pub fn new(n: usize) -> Self {
        LinearProgram { n, nonneg: vec![false; n], constraints: Vec::new(), objective: vec![Rational::zero(); n] }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn set_nonneg(&mut self, i: usize) {
        self.nonneg[i] = true;
    }

    pub fn set_all_nonneg(&mut self) {
        self.nonneg.iter_mut().for_each(|b| *b = true);
    }

    pub fn add(&mut self, coeffs: Vector, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.n, "constraint width");
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn maximize(&mut self, objective: Vector) {
        assert_eq!(objective.len(), self.n);
        self.objective = objective;
    }

    pub fn solve(&self) -> LpOutcome {
        // Split free variables into positive and negative parts.
        let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(self.n);
        let mut ncols = 0;
        for i in 0..self.n {
            if self.nonneg[i] {
                col_of.push((ncols, None));
                ncols += 1;
            } else {
                col_of.push((ncols, Some(ncols + 1)));
                ncols += 2;
            }
        }
        let n_struct = ncols;
        let n_slack = self.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
        let total = n_struct + n_slack;

        let mut a: Vec<Vector> = Vec::with_capacity(self.constraints.len());
        let mut b: Vec<Rational> = Vec::with_capacity(self.constraints.len());
        let mut slack = n_struct;
        for c in &self.constraints {
            let mut row = vec![Rational::zero(); total];
            for (i, v) in c.coeffs.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let (p, m) = col_of[i];
                row[p] = v.clone();
                if let Some(m) = m {
                    row[m] = -v.clone();
                }
            }
            match c.relation {
                Relation::Le => {
                    row[slack] = Rational::one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            let mut rhs = c.rhs.clone();
            if rhs.is_negative() {
                row.iter_mut().for_each(|x| *x = -x.clone());
                rhs = -rhs;
            }
            a.push(row);
            b.push(rhs);
        }
        let mut cost = vec![Rational::zero(); total];
        for (i, v) in self.objective.iter().enumerate() {
            let (p, m) = col_of[i];
            cost[p] = v.clone();
            if let Some(m) = m {
                cost[m] = -v.clone();
            }
        }
        match standard_simplex(a, b, cost) {
            StdOutcome::Infeasible => LpOutcome::Infeasible,
            StdOutcome::Unbounded => LpOutcome::Unbounded,
            StdOutcome::Optimal(value, y) => {
                let x = col_of
                    .iter()
                    .map(|&(p, m)| match m {
                        Some(m) => &y[p] - &y[m],
                        None => y[p].clone(),
                    })
                    .collect();
                LpOutcome::Optimal { value, x }
            }
        }
    }
}

enum StdOutcome {
    Optimal(Rational, Vector),
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vector>, // each row: coefficients then rhs
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost` over the current basis, never letting a column in
    /// `forbidden` enter. Returns false if unbounded.
    ///
    /// Reduced costs live in one row updated by each pivot. Entering
    /// columns follow Dantzig's rule until a run of degenerate pivots, then
    /// Bland's rule, which cannot cycle.
    fn optimize(&mut self, cost: &[Rational], forbidden: &[bool]) -> bool {
        const DEGENERATE_RUN: usize = 32;
        let rhs = self.ncols;
        let mut reduced: Vector = cost.to_vec();
        reduced.push(Rational::zero());
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (x, a) in reduced.iter_mut().zip(row) {
                if !a.is_zero() {
                    *x -= cb * a;
                }
            }
        }
        let mut basic = vec![false; self.ncols];
        for &b in &self.basis {
            basic[b] = true;
        }
        let mut degenerate = 0;
        loop {
            let candidates = (0..self.ncols).filter(|&j| !forbidden[j] && !basic[j] && reduced[j].is_positive());
            let entering = if degenerate < DEGENERATE_RUN {
                candidates.max_by(|&a, &b| reduced[a].cmp(&reduced[b]).then(b.cmp(&a)))
            } else {
                candidates.min()
            };
            let Some(j) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[j].is_positive() {
                    let ratio = &row[rhs] / &row[j];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((i, ratio)) = leave else {
                return false;
            };
            degenerate = if ratio.is_zero() { degenerate + 1 } else { 0 };
            basic[self.basis[i]] = false;
            basic[j] = true;
            self.pivot(i, j);
            let f = reduced[j].clone();
            for (x, p) in reduced.iter_mut().zip(&self.rows[i]) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
    }

    fn value(&self, cost: &[Rational]) -> Rational {
        let rhs = self.ncols;
        let mut v = Rational::zero();
        for (i, row) in self.rows.iter().enumerate() {
            v += &cost[self.basis[i]] * &row[rhs];
        }
        v
    }
}

/// `max c·x, A x = b, x >= 0` with `b >= 0`.
fn standard_simplex(a: Vec<Vector>, b: Vec<Rational>, c: Vector) -> StdOutcome {
    let m = a.len();
    let n = c.len();
    if m == 0 {
        return if c.iter().any(|x| x.is_positive()) {
            StdOutcome::Unbounded
        } else {
            StdOutcome::Optimal(Rational::zero(), vec![Rational::zero(); n])
        };
    }
    let ncols = n + m;
    let rows: Vec<Vector> = a
        .into_iter()
        .zip(b)
        .enumerate()
        .map(|(i, (mut row, bi))| {
            row.resize(ncols, Rational::zero());
            row[n + i] = Rational::one();
            row.push(bi);
            row
        })
        .collect();
    let mut t = Tableau { rows, basis: (n..n + m).collect(), ncols };

    let mut phase1 = vec![Rational::zero(); ncols];
    for x in phase1.iter_mut().skip(n) {
        *x = -Rational::one();
    }
    let none = vec![false; ncols];
    t.optimize(&phase1, &none);
    if t.value(&phase1).is_negative() {
        return StdOutcome::Infeasible;
    }
    // Drive artificial variables out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }
    let mut cost = c;
    cost.resize(ncols, Rational::zero());
    let forbidden: Vec<bool> = (0..ncols).map(|j| j >= n).collect();
    if !t.optimize(&cost, &forbidden) {
        return StdOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bi) in t.basis.iter().enumerate() {
        if bi < n {
            x[bi] = t.rows[i][ncols].clone();
        }
    }
    StdOutcome::Optimal(t.value(&cost), x)
}

/// A homogeneous system over free variables `x`: `a·x > 0` for rows in
/// `strict`, `a·x >= 0` for rows in `weak`, `a·x = 0` for rows in `eqs`.
///
/// Returns the maximal common slack `t` (capped at 1) together with a point
/// attaining it. The strict rows are simultaneously satisfiable iff `t > 0`.
pub fn strict_feasibility(
    n: usize,
    strict: &[Vector],
    weak: &[Vector],
    eqs: &[Vector],
) -> Option<(Rational, Vector)> {
    let mut lp = LinearProgram::new(n + 1);
    for a in strict {
        let mut row = a.clone();
        row.push(-Rational::one());
        lp.add(row, Relation::Ge, Rational::zero());
    }
    for a in weak {
        let mut row = a.clone();
        row.push(Rational::zero());
        lp.add(row, Relation::Ge, Rational::zero());
    }
    for a in eqs {
        let mut row = a.clone();
        row.push(Rational::zero());
        lp.add(row, Relation::Eq, Rational::zero());
    }
    let mut cap = vec![Rational::zero(); n + 1];
    cap[n] = Rational::one();
    lp.add(cap.clone(), Relation::Le, Rational::one());
    lp.maximize(cap);
    match lp.solve() {
        LpOutcome::Optimal { value, mut x } => {
            x.pop();
            Some((value, x))
        }
        _ => None,
    }
}
