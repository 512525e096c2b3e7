//! Exact two-phase simplex over the rationals with Bland's rule.
//!
//! Variables are free; constraints are `a·x ≥ b` or `a·x = b`.

use num_traits::{One, Signed, Zero};

use crate::exact_linalg::rational::{rat_dot, Rat, RatVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    AtLeast(RatVec, Rat),
    Equal(RatVec, Rat),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { point: RatVec, value: Rat },
    Unbounded,
    Infeasible,
}

impl LpOutcome {
    pub fn point(&self) -> Option<&RatVec> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn value(&self) -> Option<&Rat> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    /// `m` constraint rows of width `ncols + 1`; the last entry is the rhs.
    rows: Vec<RatVec>,
    basis: Vec<usize>,
    ncols: usize,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x = &*x * &inv;
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

    fn reduced_costs(&self, cost: &[Rat], allowed: usize) -> RatVec {
        (0..allowed)
            .map(|j| {
                let mut r = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        r -= &cost[b] * &self.rows[i][j];
                    }
                }
                r
            })
            .collect()
    }

    /// Minimizes `cost` over columns `< allowed`.
    fn run(&mut self, cost: &[Rat], allowed: usize) -> Step {
        let rhs = self.ncols;
        loop {
            let red = self.reduced_costs(cost, allowed);
            let Some(enter) = (0..allowed).find(|&j| red[j].is_negative() && !self.basis.contains(&j)) else {
                return Step::Optimal;
            };
            let mut best: Option<(Rat, usize, usize)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[enter].is_positive() {
                    let ratio = &row[rhs] / &row[enter];
                    let better = match &best {
                        None => true,
                        Some((r, _, b)) => ratio < *r || (ratio == *r && self.basis[i] < *b),
                    };
                    if better {
                        best = Some((ratio, i, self.basis[i]));
                    }
                }
            }
            match best {
                None => return Step::Unbounded,
                Some((_, r, _)) => self.pivot(r, enter),
            }
        }
    }

    fn value_of(&self, col: usize) -> Rat {
        self.basis
            .iter()
            .position(|&b| b == col)
            .map_or_else(Rat::zero, |i| self.rows[i][self.ncols].clone())
    }
}

/// Minimizes `objective · x` over `x ∈ Q^n` subject to `constraints`.
pub fn minimize(objective: &[Rat], constraints: &[Constraint], n: usize) -> LpOutcome {
    // columns: x⁺ (n), x⁻ (n), one slack per inequality, one artificial per row
    let m = constraints.len();
    let n_slack = constraints.iter().filter(|c| matches!(c, Constraint::AtLeast(..))).count();
    let structural = 2 * n + n_slack;
    let ncols = structural + m;
    let mut rows = Vec::with_capacity(m);
    let mut slack = 2 * n;
    for (i, c) in constraints.iter().enumerate() {
        let (a, b, is_ineq) = match c {
            Constraint::AtLeast(a, b) => (a, b, true),
            Constraint::Equal(a, b) => (a, b, false),
        };
        assert_eq!(a.len(), n, "constraint has the wrong length");
        let mut row = vec![Rat::zero(); ncols + 1];
        for j in 0..n {
            row[j] = a[j].clone();
            row[n + j] = -a[j].clone();
        }
        if is_ineq {
            row[slack] = -Rat::one();
            slack += 1;
        }
        row[ncols] = b.clone();
        if b.is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
        row[structural + i] = Rat::one();
        rows.push(row);
    }
    let mut t = Tableau { rows, basis: (structural..ncols).collect(), ncols };

    let mut phase1 = vec![Rat::zero(); ncols];
    for c in phase1.iter_mut().skip(structural) {
        *c = Rat::one();
    }
    t.run(&phase1, ncols);
    let infeasibility: Rat = (structural..ncols).map(|j| t.value_of(j)).sum();
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }
    // drive remaining artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= structural {
            match (0..structural).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut cost = vec![Rat::zero(); ncols];
    for j in 0..n {
        cost[j] = objective[j].clone();
        cost[n + j] = -objective[j].clone();
    }
    match t.run(&cost, structural) {
        Step::Unbounded => LpOutcome::Unbounded,
        Step::Optimal => {
            let point: RatVec = (0..n).map(|j| t.value_of(j) - t.value_of(n + j)).collect();
            let value = rat_dot(objective, &point);
            LpOutcome::Optimal { point, value }
        }
    }
}

/// Some point satisfying all constraints.
pub fn feasible_point(constraints: &[Constraint], n: usize) -> Option<RatVec> {
    minimize(&vec![Rat::zero(); n], constraints, n).point().cloned()
}
