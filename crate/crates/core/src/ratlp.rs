//! Exact linear programming over arbitrary-precision rationals.
//!
//! A dense two-phase simplex with Bland's anti-cycling rule, returning on
//! optimality both the primal point and a dual certificate whose validity is
//! checkable by plain re-substitution ([`check_optimal`]). The decision
//! procedure leans on exactness twice: verdicts are read off the *sign* of an
//! optimum (no tolerance could be trusted at the boundary), and certificates
//! must verify with exact equality.
//!
//! Problem sizes here are small (tens of rows), so a dense tableau and the
//! deliberately simple Bland rule are the right trade: these LPs sit on very
//! degenerate faces, where anti-cycling matters more than pivot counts.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::Rat;

/// Constraint relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// One linear constraint `coeffs . x  (rel)  rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub relation: Relation,
    pub rhs: Rat,
}

/// Per-variable lower bound: at zero or absent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarBound {
    NonNegative,
    Free,
}

/// A linear maximization problem.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    /// Objective coefficients (maximized).
    pub objective: Vec<Rat>,
    pub constraints: Vec<Constraint>,
    /// One bound per variable; `bounds.len() == objective.len()`.
    pub bounds: Vec<VarBound>,
}

/// Optimal solution with its dual certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct OptimalPoint {
    pub value: Rat,
    pub primal: Vec<Rat>,
    /// One multiplier per constraint; signs follow the conventions checked
    /// by [`check_optimal`].
    pub dual: Vec<Rat>,
}

/// Result of solving a well-formed LP.
#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(OptimalPoint),
    Infeasible,
    Unbounded,
}

/// Structural errors; infeasibility and unboundedness are outcomes, not errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpError {
    ShapeMismatch { detail: &'static str },
}

impl fmt::Display for LpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LpError::ShapeMismatch { detail } => write!(f, "malformed linear program: {detail}"),
        }
    }
}

impl core::error::Error for LpError {}

/// Reasons an alleged optimal solution fails verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateError {
    WrongShape,
    PrimalConstraintViolated { row: usize },
    PrimalBoundViolated { var: usize },
    DualSignViolated { row: usize },
    DualConstraintViolated { var: usize },
    ObjectiveMismatch,
    DualityGap,
}

impl fmt::Display for CertificateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateError::WrongShape => write!(f, "solution shape does not match the program"),
            CertificateError::PrimalConstraintViolated { row } => {
                write!(f, "primal point violates constraint {row}")
            }
            CertificateError::PrimalBoundViolated { var } => {
                write!(f, "primal point violates the bound on variable {var}")
            }
            CertificateError::DualSignViolated { row } => {
                write!(f, "dual multiplier for constraint {row} has the wrong sign")
            }
            CertificateError::DualConstraintViolated { var } => {
                write!(f, "dual constraint for variable {var} is violated")
            }
            CertificateError::ObjectiveMismatch => {
                write!(f, "claimed value differs from the objective at the primal point")
            }
            CertificateError::DualityGap => write!(f, "primal and dual objective values differ"),
        }
    }
}

impl core::error::Error for CertificateError {}

fn validate(lp: &LinearProgram) -> Result<(), LpError> {
    let n = lp.objective.len();
    if lp.bounds.len() != n {
        return Err(LpError::ShapeMismatch { detail: "bounds length != objective length" });
    }
    for c in &lp.constraints {
        if c.coeffs.len() != n {
            return Err(LpError::ShapeMismatch { detail: "constraint row length != objective length" });
        }
    }
    Ok(())
}

/// Dense simplex tableau over the normalized system.
struct Tableau {
    /// `rows x (cols + 1)`; last column is the right-hand side.
    a: Vec<Vec<Rat>>,
    /// Reduced-cost row `z_j - c_j`, plus current objective value in the
    /// rhs slot.
    obj: Vec<Rat>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = {
            let p = &self.a[row][col];
            debug_assert!(!p.is_zero());
            Rat::one() / p
        };
        for x in self.a[row].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = self.a[row].clone();
        for (r, target) in self.a.iter_mut().enumerate() {
            if r == row || target[col].is_zero() {
                continue;
            }
            let factor = target[col].clone();
            for (x, p) in target.iter_mut().zip(&pivot_row) {
                let delta = &factor * p;
                *x = &*x - delta;
            }
        }
        if !self.obj[col].is_zero() {
            let factor = self.obj[col].clone();
            for (x, p) in self.obj.iter_mut().zip(&pivot_row) {
                let delta = &factor * p;
                *x = &*x - delta;
            }
        }
        self.basis[row] = col;
    }

    /// Recompute the reduced-cost row for the cost vector `costs`
    /// (length `cols`), pricing out the current basis.
    fn reprice(&mut self, costs: &[Rat]) {
        let rhs = self.cols;
        self.obj = vec![Rat::zero(); self.cols + 1];
        for (o, c) in self.obj.iter_mut().zip(costs) {
            *o = -c.clone();
        }
        for (r, &b) in self.basis.iter().enumerate() {
            if costs[b].is_zero() {
                continue;
            }
            let cb = costs[b].clone();
            for j in 0..=rhs {
                let delta = &cb * &self.a[r][j];
                self.obj[j] = &self.obj[j] + delta;
            }
        }
    }

    /// Run Bland-rule simplex iterations until optimal or unbounded.
    /// `allowed` marks columns permitted to enter the basis.
    fn optimize(&mut self, allowed: &[bool]) -> SimplexEnd {
        loop {
            let entering = (0..self.cols)
                .find(|&j| allowed[j] && self.obj[j].is_negative());
            let Some(col) = entering else {
                return SimplexEnd::Optimal;
            };
            let mut leaving: Option<usize> = None;
            let mut best: Option<Rat> = None;
            for r in 0..self.a.len() {
                if self.a[r][col].is_positive() {
                    let ratio = &self.a[r][self.cols] / &self.a[r][col];
                    let replace = match &best {
                        None => true,
                        Some(b) => {
                            ratio < *b
                                || (ratio == *b
                                    && self.basis[r] < self.basis[leaving.unwrap()])
                        }
                    };
                    if replace {
                        best = Some(ratio);
                        leaving = Some(r);
                    }
                }
            }
            let Some(row) = leaving else {
                return SimplexEnd::Unbounded;
            };
            self.pivot(row, col);
        }
    }
}

enum SimplexEnd {
    Optimal,
    Unbounded,
}

/// Solve a linear maximization problem exactly.
///
/// Deterministic: identical inputs produce identical outcomes bit-for-bit.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpOutcome, LpError> {
    validate(lp)?;
    let n = lp.objective.len();
    let m = lp.constraints.len();

    // Column layout: primary variable columns, then one extra negated column
    // per free variable, then one slack/surplus per inequality row, then one
    // artificial per >=/= row.
    let free_cols: Vec<usize> = (0..n).filter(|&j| lp.bounds[j] == VarBound::Free).collect();
    let n_struct = n + free_cols.len();

    // Normalize rows to nonnegative rhs, remembering flips for the duals.
    let mut flipped = vec![false; m];
    let mut rows: Vec<(Vec<Rat>, Relation, Rat)> = Vec::with_capacity(m);
    for (i, c) in lp.constraints.iter().enumerate() {
        if c.rhs.is_negative() {
            flipped[i] = true;
            let coeffs: Vec<Rat> = c.coeffs.iter().map(|x| -x.clone()).collect();
            let relation = match c.relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
            rows.push((coeffs, relation, -c.rhs.clone()));
        } else {
            rows.push((c.coeffs.clone(), c.relation, c.rhs.clone()));
        }
    }

    let n_slack = rows.iter().filter(|(_, rel, _)| *rel != Relation::Eq).count();
    let n_art = rows.iter().filter(|(_, rel, _)| *rel != Relation::Le).count();
    let cols = n_struct + n_slack + n_art;

    let mut a = vec![vec![Rat::zero(); cols + 1]; m];
    let mut basis = vec![0usize; m];
    // identity column used to read off the dual multiplier of each row
    let mut id_col = vec![0usize; m];
    let mut art_cols: Vec<usize> = Vec::new();

    let mut next_slack = n_struct;
    let mut next_art = n_struct + n_slack;
    for (i, (coeffs, relation, rhs)) in rows.iter().enumerate() {
        a[i][..n].clone_from_slice(&coeffs[..n]);
        for (k, &fj) in free_cols.iter().enumerate() {
            a[i][n + k] = -coeffs[fj].clone();
        }
        a[i][cols] = rhs.clone();
        match relation {
            Relation::Le => {
                a[i][next_slack] = Rat::one();
                basis[i] = next_slack;
                id_col[i] = next_slack;
                next_slack += 1;
            }
            Relation::Ge => {
                a[i][next_slack] = -Rat::one();
                next_slack += 1;
                a[i][next_art] = Rat::one();
                basis[i] = next_art;
                id_col[i] = next_art;
                art_cols.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                a[i][next_art] = Rat::one();
                basis[i] = next_art;
                id_col[i] = next_art;
                art_cols.push(next_art);
                next_art += 1;
            }
        }
    }

    let mut t = Tableau { a, obj: Vec::new(), basis, cols };

    // Phase 1: drive the artificial variables to zero.
    if !art_cols.is_empty() {
        let mut phase1_costs = vec![Rat::zero(); cols];
        for &j in &art_cols {
            phase1_costs[j] = -Rat::one();
        }
        t.reprice(&phase1_costs);
        let allowed = vec![true; cols];
        match t.optimize(&allowed) {
            SimplexEnd::Optimal => {}
            SimplexEnd::Unbounded => unreachable!("phase 1 objective is bounded above by zero"),
        }
        // obj rhs slot holds the phase-1 objective value
        if t.obj[cols].is_negative() {
            return Ok(LpOutcome::Infeasible);
        }
        // Remove artificials from the basis where possible; rows where no
        // real column remains are redundant and keep a zero artificial.
        let is_art = |j: usize| j >= n_struct + n_slack;
        for r in 0..m {
            if is_art(t.basis[r]) {
                let pivot_col = (0..n_struct + n_slack).find(|&j| !t.a[r][j].is_zero());
                if let Some(col) = pivot_col {
                    t.pivot(r, col);
                }
            }
        }
    }

    // Phase 2: the real objective over structural columns.
    let mut costs = vec![Rat::zero(); cols];
    costs[..n].clone_from_slice(&lp.objective[..n]);
    for (k, &fj) in free_cols.iter().enumerate() {
        costs[n + k] = -lp.objective[fj].clone();
    }
    t.reprice(&costs);
    let mut allowed = vec![true; cols];
    for &j in &art_cols {
        allowed[j] = false;
    }
    match t.optimize(&allowed) {
        SimplexEnd::Unbounded => return Ok(LpOutcome::Unbounded),
        SimplexEnd::Optimal => {}
    }

    // Primal point.
    let mut cell = vec![Rat::zero(); cols];
    for (r, &b) in t.basis.iter().enumerate() {
        cell[b] = t.a[r][cols].clone();
    }
    let mut primal: Vec<Rat> = (0..n).map(|j| cell[j].clone()).collect();
    for (k, &fj) in free_cols.iter().enumerate() {
        primal[fj] = &primal[fj] - &cell[n + k];
    }
    let value: Rat = lp
        .objective
        .iter()
        .zip(&primal)
        .map(|(c, x)| c * x)
        .fold(Rat::zero(), |acc, t| acc + t);

    // Dual multipliers, read off the reduced costs of each row's identity
    // column (slack cost is zero, artificial cost is zero in phase 2, so the
    // reduced cost there is exactly the multiplier of the normalized row).
    let dual: Vec<Rat> = (0..m)
        .map(|i| {
            let y = t.obj[id_col[i]].clone();
            if flipped[i] {
                -y
            } else {
                y
            }
        })
        .collect();

    Ok(LpOutcome::Optimal(OptimalPoint { value, primal, dual }))
}

/// Verify an optimality certificate by re-substitution: primal feasibility,
/// dual feasibility, and exact strong duality.
///
/// Sign conventions for a maximization problem: multipliers of `<=` rows are
/// `>= 0`, of `>=` rows are `<= 0`, of `=` rows are unrestricted; for a
/// nonnegative variable the dual constraint is `y . col >= c`, for a free
/// variable it holds with equality.
pub fn check_optimal(lp: &LinearProgram, opt: &OptimalPoint) -> Result<(), CertificateError> {
    let n = lp.objective.len();
    let m = lp.constraints.len();
    if opt.primal.len() != n || opt.dual.len() != m || lp.bounds.len() != n {
        return Err(CertificateError::WrongShape);
    }
    for (i, c) in lp.constraints.iter().enumerate() {
        if c.coeffs.len() != n {
            return Err(CertificateError::WrongShape);
        }
        let lhs: Rat = c
            .coeffs
            .iter()
            .zip(&opt.primal)
            .map(|(a, x)| a * x)
            .fold(Rat::zero(), |acc, t| acc + t);
        let ok = match c.relation {
            Relation::Le => lhs <= c.rhs,
            Relation::Eq => lhs == c.rhs,
            Relation::Ge => lhs >= c.rhs,
        };
        if !ok {
            return Err(CertificateError::PrimalConstraintViolated { row: i });
        }
    }
    for j in 0..n {
        if lp.bounds[j] == VarBound::NonNegative && opt.primal[j].is_negative() {
            return Err(CertificateError::PrimalBoundViolated { var: j });
        }
    }
    for (i, c) in lp.constraints.iter().enumerate() {
        let ok = match c.relation {
            Relation::Le => !opt.dual[i].is_negative(),
            Relation::Ge => !opt.dual[i].is_positive(),
            Relation::Eq => true,
        };
        if !ok {
            return Err(CertificateError::DualSignViolated { row: i });
        }
    }
    for j in 0..n {
        let combo: Rat = lp
            .constraints
            .iter()
            .zip(&opt.dual)
            .map(|(c, y)| &c.coeffs[j] * y)
            .fold(Rat::zero(), |acc, t| acc + t);
        let slack = combo - &lp.objective[j];
        let ok = match lp.bounds[j] {
            VarBound::NonNegative => !slack.is_negative(),
            VarBound::Free => slack.is_zero(),
        };
        if !ok {
            return Err(CertificateError::DualConstraintViolated { var: j });
        }
    }
    let primal_value: Rat = lp
        .objective
        .iter()
        .zip(&opt.primal)
        .map(|(c, x)| c * x)
        .fold(Rat::zero(), |acc, t| acc + t);
    if primal_value != opt.value {
        return Err(CertificateError::ObjectiveMismatch);
    }
    let dual_value: Rat = lp
        .constraints
        .iter()
        .zip(&opt.dual)
        .map(|(c, y)| &c.rhs * y)
        .fold(Rat::zero(), |acc, t| acc + t);
    if dual_value != opt.value {
        return Err(CertificateError::DualityGap);
    }
    Ok(())
}
