//! Dense two-phase simplex over exact rationals with Bland's pivot rule.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::matrix::{dot, RationalMatrix};
use crate::rational::{primitive_integer_vector, Rational};
use crate::LinalgError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Maximize,
    Minimize,
}

/// `optimize c.x` subject to `A x (senses) b`, with `x_j >= 0` unless `free[j]`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub a: RationalMatrix,
    pub b: Vec<Rational>,
    pub senses: Vec<Sense>,
    pub objective: Vec<Rational>,
    pub direction: Direction,
    pub free: Vec<bool>,
}

impl LinearProgram {
    pub fn new(
        a: RationalMatrix,
        b: Vec<Rational>,
        senses: Vec<Sense>,
        objective: Vec<Rational>,
        direction: Direction,
    ) -> Result<Self, LinalgError> {
        let free = vec![false; a.cols()];
        let p = Self {
            a,
            b,
            senses,
            objective,
            direction,
            free,
        };
        p.validate()?;
        Ok(p)
    }

    /// Pure feasibility problem with a zero objective.
    pub fn feasibility(
        a: RationalMatrix,
        b: Vec<Rational>,
        senses: Vec<Sense>,
    ) -> Result<Self, LinalgError> {
        let objective = vec![Rational::zero(); a.cols()];
        Self::new(a, b, senses, objective, Direction::Maximize)
    }

    pub fn with_free(mut self, free: Vec<bool>) -> Result<Self, LinalgError> {
        self.free = free;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<(), LinalgError> {
        let (m, n) = self.a.shape();
        if self.b.len() != m || self.senses.len() != m {
            return Err(LinalgError::Shape(format!(
                "{m} constraint rows but {} right-hand sides and {} senses",
                self.b.len(),
                self.senses.len()
            )));
        }
        if self.objective.len() != n || self.free.len() != n {
            return Err(LinalgError::Shape(format!(
                "{n} variables but objective of length {} and {} sign flags",
                self.objective.len(),
                self.free.len()
            )));
        }
        Ok(())
    }

    fn row_value(&self, i: usize, x: &[Rational]) -> Rational {
        dot(self.a.row(i), x)
    }

    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        if x.len() != self.a.cols() {
            return false;
        }
        let signs_ok = x
            .iter()
            .zip(&self.free)
            .all(|(v, &f)| f || !v.is_negative());
        signs_ok
            && (0..self.a.rows()).all(|i| {
                let v = self.row_value(i, x);
                match self.senses[i] {
                    Sense::Le => v <= self.b[i],
                    Sense::Eq => v == self.b[i],
                    Sense::Ge => v >= self.b[i],
                }
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Result of [`lp_solve`].
///
/// * `Optimal`: `x`, `value` and `dual` are set; `b.dual == value`.
/// * `Infeasible`: `farkas` holds row multipliers `y` with `y_i >= 0` on `<=` rows,
///   `y_i <= 0` on `>=` rows, `(y^T A)_j >= 0` on sign-restricted variables,
///   `(y^T A)_j = 0` on free ones, and `y.b < 0`.
/// * `Unbounded`: `x` is feasible and `ray` is an improving recession direction.
#[derive(Clone, Debug)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub x: Option<Vec<Rational>>,
    pub value: Option<Rational>,
    pub dual: Option<Vec<Rational>>,
    pub farkas: Option<Vec<Rational>>,
    pub ray: Option<Vec<Rational>>,
}

impl LpOutcome {
    /// Re-checks whichever certificate the outcome carries.
    pub fn verify(&self, p: &LinearProgram) -> bool {
        match self.status {
            LpStatus::Optimal => self.verify_optimal(p),
            LpStatus::Infeasible => self.farkas.as_ref().is_some_and(|y| verify_farkas(p, y)),
            LpStatus::Unbounded => self.verify_unbounded(p),
        }
    }

    fn verify_optimal(&self, p: &LinearProgram) -> bool {
        let (Some(x), Some(value), Some(y)) = (&self.x, &self.value, &self.dual) else {
            return false;
        };
        if !p.is_feasible_point(x) || dot(&p.objective, x) != *value {
            return false;
        }
        let yb = dot(y, &p.b);
        if yb != *value {
            return false;
        }
        // For maximization the dual is y >= 0 on <= rows with A^T y >= c; minimization mirrors it.
        let s: i8 = match p.direction {
            Direction::Maximize => 1,
            Direction::Minimize => -1,
        };
        let rows_ok = y.iter().zip(&p.senses).all(|(yi, sense)| match sense {
            Sense::Eq => true,
            Sense::Le => s * crate::rational::sign(yi) >= 0,
            Sense::Ge => s * crate::rational::sign(yi) <= 0,
        });
        let cols_ok = (0..p.a.cols()).all(|j| {
            let yaj = dot(y, &p.a.column(j));
            let red = &yaj - &p.objective[j];
            if p.free[j] {
                red.is_zero()
            } else {
                s * crate::rational::sign(&red) >= 0
            }
        });
        rows_ok && cols_ok
    }

    fn verify_unbounded(&self, p: &LinearProgram) -> bool {
        let (Some(x), Some(d)) = (&self.x, &self.ray) else {
            return false;
        };
        if !p.is_feasible_point(x) {
            return false;
        }
        let signs_ok = d.iter().zip(&p.free).all(|(v, &f)| f || !v.is_negative());
        let rows_ok = (0..p.a.rows()).all(|i| {
            let v = p.row_value(i, d);
            match p.senses[i] {
                Sense::Le => !v.is_positive(),
                Sense::Eq => v.is_zero(),
                Sense::Ge => !v.is_negative(),
            }
        });
        let gain = dot(&p.objective, d);
        let improving = match p.direction {
            Direction::Maximize => gain.is_positive(),
            Direction::Minimize => gain.is_negative(),
        };
        signs_ok && rows_ok && improving
    }
}

pub fn verify_farkas(p: &LinearProgram, y: &[Rational]) -> bool {
    if y.len() != p.a.rows() {
        return false;
    }
    let rows_ok = y.iter().zip(&p.senses).all(|(yi, sense)| match sense {
        Sense::Eq => true,
        Sense::Le => !yi.is_negative(),
        Sense::Ge => !yi.is_positive(),
    });
    let cols_ok = (0..p.a.cols()).all(|j| {
        let v = dot(y, &p.a.column(j));
        if p.free[j] {
            v.is_zero()
        } else {
            !v.is_negative()
        }
    });
    rows_ok && cols_ok && dot(y, &p.b).is_negative()
}

/// Column bookkeeping of the standard form `B x = b, x >= 0`.
#[derive(Clone, Copy)]
enum StdCol {
    Pos(usize),
    Neg(usize),
    Slack(usize),
    Artificial(usize),
}

struct Tableau {
    t: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    rc: Vec<Rational>,
    basis: Vec<usize>,
    value: Rational,
}

impl Tableau {
    fn pivot(&mut self, r: usize, e: usize) {
        let inv = self.t[r][e].recip();
        if !inv.is_one() {
            for v in self.t[r].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
            self.rhs[r] *= &inv;
        }
        let prow = self.t[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.t.len() {
            if i == r || self.t[i][e].is_zero() {
                continue;
            }
            let f = self.t[i][e].clone();
            for (v, p) in self.t[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        if !self.rc[e].is_zero() {
            let f = self.rc[e].clone();
            for (v, p) in self.rc.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            self.value += &f * &prhs;
        }
        self.basis[r] = e;
    }

    /// Runs Bland's rule to optimality. Returns the entering column if unbounded.
    fn run(&mut self, allowed: &[bool]) -> Option<usize> {
        loop {
            let e = (0..self.rc.len()).find(|&j| allowed[j] && self.rc[j].is_negative())?;
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                if !self.t[i][e].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.t[i][e];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, e),
                None => return Some(e),
            }
        }
    }

    fn set_costs(&mut self, costs: &[Rational]) {
        let mut rc = costs.to_vec();
        let mut value = Rational::zero();
        for (i, &bj) in self.basis.iter().enumerate() {
            let cb = &costs[bj];
            if cb.is_zero() {
                continue;
            }
            for (v, t) in rc.iter_mut().zip(&self.t[i]) {
                if !t.is_zero() {
                    *v -= cb * t;
                }
            }
            value += cb * &self.rhs[i];
        }
        self.rc = rc;
        self.value = value;
    }

    fn objective(&self) -> Rational {
        self.value.clone()
    }
}

pub fn lp_solve(p: &LinearProgram) -> Result<LpOutcome, LinalgError> {
    p.validate()?;
    let (m, n) = p.a.shape();

    let mut cols: Vec<StdCol> = Vec::new();
    for j in 0..n {
        cols.push(StdCol::Pos(j));
        if p.free[j] {
            cols.push(StdCol::Neg(j));
        }
    }
    for (i, s) in p.senses.iter().enumerate() {
        if *s != Sense::Eq {
            cols.push(StdCol::Slack(i));
        }
    }
    let first_art = cols.len();
    cols.extend((0..m).map(StdCol::Artificial));
    let ncols = cols.len();

    let flip: Vec<bool> = p.b.iter().map(Signed::is_negative).collect();
    let mut t = vec![vec![Rational::zero(); ncols]; m];
    for (k, col) in cols.iter().enumerate() {
        match *col {
            StdCol::Pos(j) | StdCol::Neg(j) => {
                let s = if matches!(col, StdCol::Neg(_)) { -1 } else { 1 };
                for i in 0..m {
                    let v = &p.a[(i, j)];
                    if !v.is_zero() {
                        let v = if (s < 0) != flip[i] {
                            -v.clone()
                        } else {
                            v.clone()
                        };
                        t[i][k] = v;
                    }
                }
            }
            StdCol::Slack(i) => {
                let s = if p.senses[i] == Sense::Le { 1 } else { -1 };
                let s = if flip[i] { -s } else { s };
                t[i][k] = Rational::from_integer(s.into());
            }
            StdCol::Artificial(i) => t[i][k] = Rational::one(),
        }
    }
    let rhs: Vec<Rational> = p.b.iter().map(|v| v.abs()).collect();
    let mut tab = Tableau {
        t,
        rhs,
        rc: vec![Rational::zero(); ncols],
        basis: (first_art..ncols).collect(),
        value: Rational::zero(),
    };

    let mut phase1 = vec![Rational::zero(); ncols];
    for c in phase1.iter_mut().skip(first_art) {
        *c = Rational::one();
    }
    tab.set_costs(&phase1);
    let all = vec![true; ncols];
    tab.run(&all);

    let unflip = |z: Vec<Rational>| -> Vec<Rational> {
        z.into_iter()
            .zip(&flip)
            .map(|(v, &f)| if f { -v } else { v })
            .collect()
    };

    if tab.objective().is_positive() {
        // z_i = 1 - rc(art_i); the certificate is -z in original row orientation.
        let z: Vec<Rational> = (0..m)
            .map(|i| Rational::one() - &tab.rc[first_art + i])
            .collect();
        let y = unflip(z.into_iter().map(|v| -v).collect());
        return Ok(LpOutcome {
            status: LpStatus::Infeasible,
            x: None,
            value: None,
            dual: None,
            farkas: Some(y),
            ray: None,
        });
    }

    for r in 0..m {
        if tab.basis[r] >= first_art {
            if let Some(e) = (0..first_art).find(|&j| !tab.t[r][j].is_zero()) {
                tab.pivot(r, e);
            }
        }
    }

    let maximize = p.direction == Direction::Maximize;
    let mut costs = vec![Rational::zero(); ncols];
    for (k, col) in cols.iter().enumerate() {
        let c = match *col {
            StdCol::Pos(j) => p.objective[j].clone(),
            StdCol::Neg(j) => -p.objective[j].clone(),
            _ => continue,
        };
        costs[k] = if maximize { -c } else { c };
    }
    tab.set_costs(&costs);
    let allowed: Vec<bool> = (0..ncols).map(|k| k < first_art).collect();
    let unbounded = tab.run(&allowed);

    let std_x = |tab: &Tableau| -> Vec<Rational> {
        let mut xs = vec![Rational::zero(); ncols];
        for (i, &bj) in tab.basis.iter().enumerate() {
            xs[bj] = tab.rhs[i].clone();
        }
        xs
    };
    let to_original = |xs: &[Rational]| -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        for (k, col) in cols.iter().enumerate() {
            match *col {
                StdCol::Pos(j) => x[j] += &xs[k],
                StdCol::Neg(j) => x[j] -= &xs[k],
                _ => {}
            }
        }
        x
    };

    let x = to_original(&std_x(&tab));
    if let Some(e) = unbounded {
        let mut d = vec![Rational::zero(); ncols];
        d[e] = Rational::one();
        for (i, &bj) in tab.basis.iter().enumerate() {
            d[bj] = -tab.t[i][e].clone();
        }
        return Ok(LpOutcome {
            status: LpStatus::Unbounded,
            x: Some(x),
            value: None,
            dual: None,
            farkas: None,
            ray: Some(to_original(&d)),
        });
    }

    let value = dot(&p.objective, &x);
    // Internal minimisation duals z_i = -rc(art_i).
    let z: Vec<Rational> = (0..m).map(|i| -tab.rc[first_art + i].clone()).collect();
    let mut y = unflip(z);
    if maximize {
        y = y.into_iter().map(|v| -v).collect();
    }
    Ok(LpOutcome {
        status: LpStatus::Optimal,
        x: Some(x),
        value: Some(value),
        dual: Some(y),
        farkas: None,
        ray: None,
    })
}

/// Outcome of a homogeneous strict system `<a_i, h> > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrictFeasibility {
    /// A point with `min_i <a_i, h> = 1`.
    Feasible(Vec<Rational>),
    /// `y >= 0`, `y != 0`, `sum y_i a_i = 0`.
    Infeasible(Vec<Rational>),
}

/// Rows above this count are handled by a working-set loop.
const WORKING_SET_THRESHOLD: usize = 400;
const WORKING_SET_BATCH: usize = 200;

/// Decides `exists h : <a_i, h> > 0 for all i`.
///
/// Solves the alternative system `sum y_i a_i = 0, sum y_i = 1, y >= 0`: a
/// solution is the infeasibility witness, and its phase-one Farkas certificate
/// is an interior point (the capped `eps = 1` solution of `max eps`).
pub fn strict_feasibility(rows: &[Vec<Rational>]) -> Result<StrictFeasibility, LinalgError> {
    let Some(first) = rows.first() else {
        return Ok(StrictFeasibility::Feasible(Vec::new()));
    };
    let dim = first.len();
    if let Some(bad) = rows.iter().position(|r| r.len() != dim) {
        return Err(LinalgError::Shape(format!(
            "row {bad} has length {}, expected {dim}",
            rows[bad].len()
        )));
    }
    if let Some(z) = rows.iter().position(|r| r.iter().all(Zero::is_zero)) {
        let mut y = vec![Rational::zero(); rows.len()];
        y[z] = Rational::one();
        return Ok(StrictFeasibility::Infeasible(y));
    }

    // Positive rescaling to coprime integers keeps the tableau small.
    let scaled: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            primitive_integer_vector(r)
                .into_iter()
                .map(Rational::from_integer)
                .collect()
        })
        .collect();

    if scaled.len() <= WORKING_SET_THRESHOLD {
        let all: Vec<usize> = (0..scaled.len()).collect();
        return Ok(finish(
            rows,
            &scaled,
            &all,
            solve_subset(&scaled, &all, dim)?,
        ));
    }

    let step = scaled.len() / WORKING_SET_BATCH + 1;
    let mut in_set = vec![false; scaled.len()];
    let mut working: Vec<usize> = (0..scaled.len()).step_by(step).collect();
    for &i in &working {
        in_set[i] = true;
    }
    loop {
        let out = solve_subset(&scaled, &working, dim)?;
        let StrictFeasibility::Feasible(h) = &out else {
            return Ok(finish(rows, &scaled, &working, out));
        };
        let violated: Vec<usize> = (0..scaled.len())
            .filter(|&i| !dot(&scaled[i], h).is_positive())
            .take(WORKING_SET_BATCH)
            .collect();
        if violated.is_empty() {
            return Ok(finish(rows, &scaled, &working, out));
        }
        for i in violated {
            if !in_set[i] {
                in_set[i] = true;
                working.push(i);
            }
        }
    }
}

fn solve_subset(
    scaled: &[Vec<Rational>],
    subset: &[usize],
    dim: usize,
) -> Result<StrictFeasibility, LinalgError> {
    let k = subset.len();
    let mut a = RationalMatrix::zeros(dim + 1, k);
    for (c, &i) in subset.iter().enumerate() {
        for (r, v) in scaled[i].iter().enumerate() {
            a[(r, c)] = v.clone();
        }
        a[(dim, c)] = Rational::one();
    }
    let mut b = vec![Rational::zero(); dim + 1];
    b[dim] = Rational::one();
    let lp = LinearProgram::feasibility(a, b, vec![Sense::Eq; dim + 1])?;
    let out = lp_solve(&lp)?;
    match out.status {
        LpStatus::Optimal => Ok(StrictFeasibility::Infeasible(out.x.expect("optimal point"))),
        LpStatus::Infeasible => {
            let f = out.farkas.expect("farkas certificate");
            // (h, t): a_i.h + t >= 0 and t < 0.
            let t = -f[dim].clone();
            let h = f[..dim].iter().map(|v| v / &t).collect();
            Ok(StrictFeasibility::Feasible(h))
        }
        LpStatus::Unbounded => unreachable!("zero objective cannot be unbounded"),
    }
}

/// Maps a subset result back to the caller's unscaled rows.
fn finish(
    rows: &[Vec<Rational>],
    scaled: &[Vec<Rational>],
    subset: &[usize],
    out: StrictFeasibility,
) -> StrictFeasibility {
    match out {
        StrictFeasibility::Feasible(h) => {
            // Rescale so that the smallest original row value is exactly 1.
            let min = rows
                .iter()
                .map(|r| dot(r, &h))
                .min()
                .expect("non-empty system");
            let s = min.recip();
            StrictFeasibility::Feasible(h.into_iter().map(|v| v * &s).collect())
        }
        StrictFeasibility::Infeasible(ys) => {
            // scaled_i = s_i * row_i with s_i > 0, so y_i * s_i combines the original rows.
            let mut y = vec![Rational::zero(); rows.len()];
            for (c, &i) in subset.iter().enumerate() {
                if ys[c].is_zero() {
                    continue;
                }
                let idx = rows[i]
                    .iter()
                    .position(|v| !v.is_zero())
                    .expect("non-zero row");
                let s = &scaled[i][idx] / &rows[i][idx];
                y[i] = &ys[c] * s;
            }
            StrictFeasibility::Infeasible(y)
        }
    }
}

pub fn verify_strict(rows: &[Vec<Rational>], out: &StrictFeasibility) -> bool {
    match out {
        StrictFeasibility::Feasible(h) => rows
            .iter()
            .all(|r| r.len() == h.len() && dot(r, h).is_positive()),
        StrictFeasibility::Infeasible(y) => {
            if y.len() != rows.len()
                || y.iter().any(Signed::is_negative)
                || y.iter().all(Zero::is_zero)
            {
                return false;
            }
            let dim = rows.first().map_or(0, Vec::len);
            (0..dim).all(|k| {
                let mut s = Rational::zero();
                for (yi, r) in y.iter().zip(rows) {
                    if !yi.is_zero() {
                        s += yi * &r[k];
                    }
                }
                s.is_zero()
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn mat(rows: &[Vec<i64>]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(rows).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn maximize_bounded_variable() {
        let p = LinearProgram::new(
            mat(&[vec![1]]),
            ints(&[1]),
            vec![Sense::Le],
            ints(&[1]),
            Direction::Maximize,
        )
        .unwrap();
        let out = lp_solve(&p).unwrap();
        assert_eq!(out.status, LpStatus::Optimal);
        assert_eq!(out.x.as_deref(), Some(&ints(&[1])[..]));
        assert!(out.verify(&p));
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let p = LinearProgram::feasibility(
            mat(&[vec![1], vec![1]]),
            ints(&[1, 0]),
            vec![Sense::Ge, Sense::Le],
        )
        .unwrap();
        let out = lp_solve(&p).unwrap();
        assert_eq!(out.status, LpStatus::Infeasible);
        assert!(out.verify(&p));
    }

    #[test]
    fn unbounded_ray() {
        let p = LinearProgram::new(
            mat(&[vec![1, -1]]),
            ints(&[1]),
            vec![Sense::Le],
            ints(&[0, 1]),
            Direction::Maximize,
        )
        .unwrap();
        let out = lp_solve(&p).unwrap();
        assert_eq!(out.status, LpStatus::Unbounded);
        assert!(out.verify(&p));
    }

    #[test]
    fn textbook_optimum_with_duals() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18
        let p = LinearProgram::new(
            mat(&[vec![1, 0], vec![0, 2], vec![3, 2]]),
            ints(&[4, 12, 18]),
            vec![Sense::Le; 3],
            ints(&[3, 5]),
            Direction::Maximize,
        )
        .unwrap();
        let out = lp_solve(&p).unwrap();
        assert_eq!(out.value, Some(int(36)));
        assert_eq!(out.dual.as_deref(), Some(&[int(0), frac(3, 2), int(1)][..]));
        assert!(out.verify(&p));
    }

    #[test]
    fn free_variables_and_minimisation() {
        // min x subject to x >= -3 with x free
        let p = LinearProgram::new(
            mat(&[vec![1]]),
            ints(&[-3]),
            vec![Sense::Ge],
            ints(&[1]),
            Direction::Minimize,
        )
        .unwrap()
        .with_free(vec![true])
        .unwrap();
        let out = lp_solve(&p).unwrap();
        assert_eq!(out.value, Some(int(-3)));
        assert!(out.verify(&p));
    }

    #[test]
    fn equality_rows_with_redundancy() {
        let p = LinearProgram::feasibility(
            mat(&[vec![1, 1], vec![2, 2], vec![1, -1]]),
            ints(&[2, 4, 0]),
            vec![Sense::Eq; 3],
        )
        .unwrap();
        let out = lp_solve(&p).unwrap();
        assert_eq!(out.status, LpStatus::Optimal);
        assert_eq!(out.x.as_deref(), Some(&ints(&[1, 1])[..]));
    }

    #[test]
    fn opposite_half_spaces() {
        let rows = vec![ints(&[1]), ints(&[-1])];
        let out = strict_feasibility(&rows).unwrap();
        assert_eq!(
            out,
            StrictFeasibility::Infeasible(ints(&[1, 1]).into_iter().map(|v| v / int(2)).collect())
        );
        assert!(verify_strict(&rows, &out));
    }

    #[test]
    fn single_half_space() {
        let rows = vec![ints(&[1])];
        let out = strict_feasibility(&rows).unwrap();
        assert_eq!(out, StrictFeasibility::Feasible(ints(&[1])));
    }

    #[test]
    fn sum_positive_capped_at_one() {
        let rows = vec![ints(&[1, 1])];
        let StrictFeasibility::Feasible(h) = strict_feasibility(&rows).unwrap() else {
            panic!("expected feasible");
        };
        assert_eq!(&h[0] + &h[1], int(1));
    }

    #[test]
    fn zero_row_is_infeasible() {
        let rows = vec![ints(&[1, 0]), ints(&[0, 0])];
        let out = strict_feasibility(&rows).unwrap();
        assert!(matches!(out, StrictFeasibility::Infeasible(_)));
        assert!(verify_strict(&rows, &out));
    }

    #[test]
    fn working_set_loop_on_many_rows() {
        // Rows (1, k) and (1, -k) for many k: feasible with h = (1, 0).
        let mut rows = Vec::new();
        for k in 0..500 {
            rows.push(ints(&[1, k]));
            rows.push(ints(&[1, -k]));
        }
        let out = strict_feasibility(&rows).unwrap();
        assert!(matches!(out, StrictFeasibility::Feasible(_)));
        assert!(verify_strict(&rows, &out));
        rows.push(ints(&[-1, 0]));
        let out = strict_feasibility(&rows).unwrap();
        assert!(matches!(out, StrictFeasibility::Infeasible(_)));
        assert!(verify_strict(&rows, &out));
    }
}
