//! Exact rational linear programming.
//!
//! A dense-tableau, two-phase primal simplex method over `BigRational` with
//! Bland's rule for both the entering and the leaving variable, so it cannot
//! cycle. Problem sizes here are a few hundred columns at most; dense storage
//! with sparse row updates is plenty.

use num_traits::{One, Signed, Zero};

use crate::polynomial::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    LessEq,
    Equal,
    GreaterEq,
}

impl Relation {
    fn flipped(self) -> Relation {
        match self {
            Relation::LessEq => Relation::GreaterEq,
            Relation::Equal => Relation::Equal,
            Relation::GreaterEq => Relation::LessEq,
        }
    }
}

#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<Rational>,
    relation: Relation,
    rhs: Rational,
}

/// `maximize c·x  s.t.  rows,  x_j >= 0` unless `x_j` is marked free.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<Rational>,
    free: Vec<bool>,
    rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub values: Vec<Rational>,
    pub objective: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![Rational::zero(); num_vars],
            free: vec![false; num_vars],
            rows: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_constraints(&self) -> usize {
        self.rows.len()
    }

    pub fn set_objective(&mut self, var: usize, coeff: Rational) {
        self.objective[var] = coeff;
    }

    pub fn set_free(&mut self, var: usize) {
        self.free[var] = true;
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars, "constraint width");
        self.rows.push(Row {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn maximize(&self) -> LpOutcome {
        Tableau::build(self).solve(self)
    }

    pub fn minimize(&self) -> LpOutcome {
        let mut negated = self.clone();
        for c in &mut negated.objective {
            *c = -c.clone();
        }
        match negated.maximize() {
            LpOutcome::Optimal(s) => LpOutcome::Optimal(LpSolution {
                objective: -s.objective,
                values: s.values,
            }),
            other => other,
        }
    }

    /// Checks a candidate point against every constraint and sign restriction.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars {
            return false;
        }
        if x.iter()
            .zip(&self.free)
            .any(|(v, &free)| !free && v.is_negative())
        {
            return false;
        }
        self.rows.iter().all(|row| {
            let lhs: Rational = row.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            match row.relation {
                Relation::LessEq => lhs <= row.rhs,
                Relation::Equal => lhs == row.rhs,
                Relation::GreaterEq => lhs >= row.rhs,
            }
        })
    }
}

struct Tableau {
    /// `m` rows of width `cols + 1`; the last entry is the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
    /// Structural column of each original variable's positive / negative part.
    plus_col: Vec<usize>,
    minus_col: Vec<Option<usize>>,
    first_artificial: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let mut plus_col = Vec::with_capacity(lp.num_vars);
        let mut minus_col = Vec::with_capacity(lp.num_vars);
        let mut next = 0;
        for &free in &lp.free {
            plus_col.push(next);
            next += 1;
            if free {
                minus_col.push(Some(next));
                next += 1;
            } else {
                minus_col.push(None);
            }
        }
        let structural = next;

        let normalized: Vec<Row> = lp
            .rows
            .iter()
            .map(|r| {
                if r.rhs.is_negative() {
                    Row {
                        coeffs: r.coeffs.iter().map(|c| -c).collect(),
                        relation: r.relation.flipped(),
                        rhs: -r.rhs.clone(),
                    }
                } else {
                    r.clone()
                }
            })
            .collect();

        let slacks = normalized
            .iter()
            .filter(|r| r.relation != Relation::Equal)
            .count();
        let artificials = normalized
            .iter()
            .filter(|r| r.relation != Relation::LessEq)
            .count();
        let first_artificial = structural + slacks;
        let cols = first_artificial + artificials;

        let mut rows = Vec::with_capacity(normalized.len());
        let mut basis = Vec::with_capacity(normalized.len());
        let mut slack = structural;
        let mut art = first_artificial;
        for r in &normalized {
            let mut t = vec![Rational::zero(); cols + 1];
            for (j, a) in r.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                t[plus_col[j]] = a.clone();
                if let Some(mc) = minus_col[j] {
                    t[mc] = -a.clone();
                }
            }
            t[cols] = r.rhs.clone();
            match r.relation {
                Relation::LessEq => {
                    t[slack] = Rational::one();
                    basis.push(slack);
                    slack += 1;
                }
                Relation::GreaterEq => {
                    t[slack] = -Rational::one();
                    slack += 1;
                    t[art] = Rational::one();
                    basis.push(art);
                    art += 1;
                }
                Relation::Equal => {
                    t[art] = Rational::one();
                    basis.push(art);
                    art += 1;
                }
            }
            rows.push(t);
        }

        Tableau {
            rows,
            basis,
            cols,
            plus_col,
            minus_col,
            first_artificial,
        }
    }

    fn pivot(&mut self, obj: &mut [Rational], r: usize, c: usize) {
        let width = self.cols + 1;
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            let inv = p.recip();
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
        }
        let nz: Vec<usize> = (0..width).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] -= &f * &pivot_row[j];
            }
        }
        if !obj[c].is_zero() {
            let f = obj[c].clone();
            for &j in &nz {
                obj[j] -= &f * &pivot_row[j];
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations on `obj` (reduced costs, last entry `-value`)
    /// over columns `< limit`. Returns `false` on unboundedness.
    fn iterate(&mut self, obj: &mut [Rational], limit: usize) -> bool {
        let rhs = self.cols;
        loop {
            let Some(enter) = (0..limit).find(|&j| obj[j].is_positive()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(obj, r, enter);
        }
    }

    fn solve(mut self, lp: &LinearProgram) -> LpOutcome {
        let width = self.cols + 1;
        let rhs = self.cols;

        if self.first_artificial < self.cols {
            let mut obj = vec![Rational::zero(); width];
            for o in &mut obj[self.first_artificial..self.cols] {
                *o = -Rational::one();
            }
            for (i, row) in self.rows.iter().enumerate() {
                if self.basis[i] >= self.first_artificial {
                    for (o, v) in obj.iter_mut().zip(row) {
                        *o += v;
                    }
                }
            }
            let bounded = self.iterate(&mut obj, self.cols);
            debug_assert!(bounded, "phase one is bounded above by zero");
            if obj[rhs].is_positive() {
                return LpOutcome::Infeasible;
            }
            // Drive remaining (zero-valued) artificials out of the basis.
            let mut i = 0;
            while i < self.rows.len() {
                if self.basis[i] >= self.first_artificial {
                    match (0..self.first_artificial).find(|&j| !self.rows[i][j].is_zero()) {
                        Some(j) => {
                            self.pivot(&mut obj, i, j);
                            i += 1;
                        }
                        None => {
                            self.rows.remove(i);
                            self.basis.remove(i);
                        }
                    }
                } else {
                    i += 1;
                }
            }
        }

        let limit = self.first_artificial;
        let mut obj = vec![Rational::zero(); width];
        for (v, c) in lp.objective.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            obj[self.plus_col[v]] = c.clone();
            if let Some(mc) = self.minus_col[v] {
                obj[mc] = -c.clone();
            }
        }
        for (i, row) in self.rows.iter().enumerate() {
            let cb = obj[self.basis[i]].clone();
            if cb.is_zero() {
                continue;
            }
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    obj[j] -= &cb * v;
                }
            }
        }
        if !self.iterate(&mut obj, limit) {
            return LpOutcome::Unbounded;
        }

        let mut col_values = vec![Rational::zero(); self.cols];
        for (i, &b) in self.basis.iter().enumerate() {
            col_values[b] = self.rows[i][rhs].clone();
        }
        let values: Vec<Rational> = (0..lp.num_vars)
            .map(|v| {
                let mut x = col_values[self.plus_col[v]].clone();
                if let Some(mc) = self.minus_col[v] {
                    x -= &col_values[mc];
                }
                x
            })
            .collect();
        let objective = lp.objective.iter().zip(&values).map(|(c, x)| c * x).sum();
        LpOutcome::Optimal(LpSolution { values, objective })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::{int, rat};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  ->  (2, 6), 36
        let mut lp = LinearProgram::new(2);
        lp.set_objective(0, int(3));
        lp.set_objective(1, int(5));
        lp.add_constraint(v(&[1, 0]), Relation::LessEq, int(4));
        lp.add_constraint(v(&[0, 2]), Relation::LessEq, int(12));
        lp.add_constraint(v(&[3, 2]), Relation::LessEq, int(18));
        let s = lp.maximize().optimal().unwrap();
        assert_eq!(s.values, v(&[2, 6]));
        assert_eq!(s.objective, int(36));
    }

    #[test]
    fn equality_and_free_variable() {
        // max x  s.t.  x + y = 1/2,  y >= 0, x free  ->  x = 1/2
        let mut lp = LinearProgram::new(2);
        lp.set_free(0);
        lp.set_objective(0, int(1));
        lp.add_constraint(v(&[1, 1]), Relation::Equal, rat(1, 2));
        let s = lp.maximize().optimal().unwrap();
        assert_eq!(s.objective, rat(1, 2));
        // min x is unbounded below
        assert_eq!(lp.minimize(), LpOutcome::Unbounded);
    }

    #[test]
    fn infeasible_system() {
        let mut lp = LinearProgram::new(1);
        lp.add_constraint(v(&[1]), Relation::GreaterEq, int(2));
        lp.add_constraint(v(&[1]), Relation::LessEq, int(1));
        assert_eq!(lp.maximize(), LpOutcome::Infeasible);
    }

    #[test]
    fn negative_rhs_and_redundant_rows() {
        // -x - y = -2 twice (redundant), min x  -> 0 with y = 2
        let mut lp = LinearProgram::new(2);
        lp.set_objective(0, int(1));
        lp.add_constraint(v(&[-1, -1]), Relation::Equal, int(-2));
        lp.add_constraint(v(&[-1, -1]), Relation::Equal, int(-2));
        let s = lp.minimize().optimal().unwrap();
        assert_eq!(s.objective, int(0));
        assert!(lp.is_feasible(&s.values));
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Beale's classic cycling example, which Bland's rule must survive.
        let mut lp = LinearProgram::new(4);
        for (j, c) in [rat(3, 4), int(-150), rat(1, 50), int(-6)]
            .into_iter()
            .enumerate()
        {
            lp.set_objective(j, c);
        }
        lp.add_constraint(
            vec![rat(1, 4), int(-60), rat(-1, 25), int(9)],
            Relation::LessEq,
            int(0),
        );
        lp.add_constraint(
            vec![rat(1, 2), int(-90), rat(-1, 50), int(3)],
            Relation::LessEq,
            int(0),
        );
        lp.add_constraint(v(&[0, 0, 1, 0]), Relation::LessEq, int(1));
        let s = lp.maximize().optimal().unwrap();
        assert_eq!(s.objective, rat(1, 20));
    }
}
