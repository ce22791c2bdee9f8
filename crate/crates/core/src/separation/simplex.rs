//! Dense bounded-variable primal simplex.

use crate::error::{Error, Result};
use crate::numerics::Matrix;

/// `maximize c^T x  subject to  A x <= b,  lower <= x <= upper`.
///
/// Bounds may be infinite.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub constraints: Matrix,
    pub rhs: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl LinearProgram {
    pub fn new(
        objective: Vec<f64>,
        constraints: Matrix,
        rhs: Vec<f64>,
        lower: Vec<f64>,
        upper: Vec<f64>,
    ) -> Result<Self> {
        let n = objective.len();
        let mut problems = Vec::new();
        if constraints.cols() != n {
            problems.push(format!("constraint matrix has {} columns, objective has {n}", constraints.cols()));
        }
        if rhs.len() != constraints.rows() {
            problems.push(format!("{} right-hand sides for {} rows", rhs.len(), constraints.rows()));
        }
        if lower.len() != n || upper.len() != n {
            problems.push(format!("bounds must have {n} entries"));
        }
        if lower.iter().zip(&upper).any(|(l, u)| l > u || l.is_nan() || u.is_nan()) {
            problems.push("some lower bound exceeds its upper bound".into());
        }
        if rhs.iter().chain(&objective).any(|v| !v.is_finite()) {
            problems.push("objective and right-hand sides must be finite".into());
        }
        if !problems.is_empty() {
            return Err(Error::DimensionMismatch(problems.join("; ")));
        }
        Ok(Self {
            objective,
            constraints,
            rhs,
            lower,
            upper,
        })
    }

    /// A problem with only variable bounds; `constraints` holds one all-zero row.
    pub fn bounds_only(objective: Vec<f64>, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        let n = objective.len().max(1);
        Self::new(objective, Matrix::zeros(1, n), vec![0.0], lower, upper)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: f64, point: Vec<f64> },
    Unbounded,
    Infeasible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Basic,
    AtLower,
    AtUpper,
}

/// How an original variable maps onto internal columns with lower bound zero.
#[derive(Clone, Copy, Debug)]
enum VarMap {
    /// x = offset + col
    Shifted { col: usize, offset: f64 },
    /// x = offset - col
    Mirrored { col: usize, offset: f64 },
    /// x = pos - neg
    Split { pos: usize, neg: usize },
}

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-9;
const FEAS_TOL: f64 = 1e-9;
/// Consecutive degenerate pivots before switching to Bland's rule.
const DEGENERATE_STREAK: usize = 50;
/// Pivots between exact recomputations of the pricing norms.
const NORM_REFRESH: usize = 100;

struct Tableau {
    m: usize,
    ncols: usize,
    t: Vec<f64>,
    /// value of the basic variable of each row
    xb: Vec<f64>,
    basis: Vec<usize>,
    status: Vec<Status>,
    upper: Vec<f64>,
    cost: Vec<f64>,
    reduced: Vec<f64>,
    allowed: Vec<bool>,
    norms: Vec<f64>,
    pivots: usize,
}

enum Step {
    Optimal,
    Unbounded,
    Moved { degenerate: bool },
}

impl Tableau {
    fn value_of_nonbasic(&self, j: usize) -> f64 {
        match self.status[j] {
            Status::AtUpper => self.upper[j],
            _ => 0.0,
        }
    }

    fn recompute_reduced_costs(&mut self) {
        let mut d = self.cost.clone();
        for i in 0..self.m {
            let cb = self.cost[self.basis[i]];
            if cb != 0.0 {
                let row = &self.t[i * self.ncols..(i + 1) * self.ncols];
                for (dj, &a) in d.iter_mut().zip(row) {
                    *dj -= cb * a;
                }
            }
        }
        self.reduced = d;
    }

    fn objective_value(&self) -> f64 {
        let mut v = 0.0;
        for j in 0..self.ncols {
            if self.status[j] != Status::Basic {
                v += self.cost[j] * self.value_of_nonbasic(j);
            }
        }
        for i in 0..self.m {
            v += self.cost[self.basis[i]] * self.xb[i];
        }
        v
    }

    fn eligible(&self, j: usize) -> Option<f64> {
        if !self.allowed[j] {
            return None;
        }
        let d = self.reduced[j];
        match self.status[j] {
            Status::AtLower if d > COST_TOL && self.upper[j] > 0.0 => Some(1.0),
            Status::AtUpper if d < -COST_TOL => Some(-1.0),
            _ => None,
        }
    }

    fn step(&mut self, bland: bool) -> Step {
        // pricing
        let mut entering: Option<(usize, f64)> = None;
        let mut best = 0.0;
        for j in 0..self.ncols {
            if let Some(dir) = self.eligible(j) {
                if bland {
                    entering = Some((j, dir));
                    break;
                }
                let score = self.reduced[j] * self.reduced[j] / (1.0 + self.norms[j]);
                if score > best {
                    best = score;
                    entering = Some((j, dir));
                }
            }
        }
        let Some((q, dir)) = entering else {
            return Step::Optimal;
        };

        // ratio test
        let mut limit = self.upper[q];
        let mut leave: Option<usize> = None;
        let mut leave_alpha = 0.0_f64;
        for i in 0..self.m {
            let alpha = dir * self.t[i * self.ncols + q];
            let b = self.basis[i];
            let ratio = if alpha > PIVOT_TOL {
                self.xb[i].max(0.0) / alpha
            } else if alpha < -PIVOT_TOL && self.upper[b].is_finite() {
                (self.upper[b] - self.xb[i]).max(0.0) / -alpha
            } else {
                continue;
            };
            let better = if ratio < limit - 1e-12 {
                true
            } else if ratio <= limit + 1e-12 {
                match leave {
                    Some(r) if bland => b < self.basis[r],
                    Some(_) => alpha.abs() > leave_alpha.abs(),
                    None => false,
                }
            } else {
                false
            };
            if better {
                limit = ratio.min(limit);
                leave = Some(i);
                leave_alpha = alpha;
            }
        }
        if !limit.is_finite() {
            return Step::Unbounded;
        }
        let t = limit;

        // move basics along the edge
        for i in 0..self.m {
            let a = self.t[i * self.ncols + q];
            if a != 0.0 {
                self.xb[i] -= dir * t * a;
            }
        }
        let entering_value = match self.status[q] {
            Status::AtUpper => self.upper[q] - t,
            _ => t,
        };

        let Some(r) = leave else {
            // bound flip
            self.status[q] = if dir > 0.0 { Status::AtUpper } else { Status::AtLower };
            return Step::Moved { degenerate: t <= 0.0 };
        };

        let leaving = self.basis[r];
        let alpha = dir * self.t[r * self.ncols + q];
        self.status[leaving] = if alpha > 0.0 { Status::AtLower } else { Status::AtUpper };
        self.pivot(r, q);
        self.basis[r] = q;
        self.status[q] = Status::Basic;
        self.xb[r] = entering_value;
        Step::Moved { degenerate: t <= 1e-12 }
    }

    /// Squared column norms of the tableau, used by steepest-edge pricing.
    fn recompute_norms(&mut self) {
        let nc = self.ncols;
        self.norms.iter_mut().for_each(|v| *v = 0.0);
        for i in 0..self.m {
            for (s, &v) in self.norms.iter_mut().zip(&self.t[i * nc..(i + 1) * nc]) {
                *s += v * v;
            }
        }
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let nc = self.ncols;
        let piv = self.t[r * nc + q];
        {
            let row = &mut self.t[r * nc..(r + 1) * nc];
            let inv = 1.0 / piv;
            for (v, s) in row.iter_mut().zip(self.norms.iter_mut()) {
                let new = *v * inv;
                *s += new * new - *v * *v;
                *v = new;
            }
            row[q] = 1.0;
        }
        let pivot_row = self.t[r * nc..(r + 1) * nc].to_vec();
        let nz: Vec<usize> = (0..nc).filter(|&j| pivot_row[j] != 0.0).collect();
        let dense = nz.len() * 3 > nc;
        for i in 0..self.m {
            if i == r {
                continue;
            }
            let f = self.t[i * nc + q];
            if f == 0.0 {
                continue;
            }
            let row = &mut self.t[i * nc..(i + 1) * nc];
            if dense {
                for ((v, &p), s) in row.iter_mut().zip(&pivot_row).zip(self.norms.iter_mut()) {
                    let new = *v - f * p;
                    *s += new * new - *v * *v;
                    *v = new;
                }
            } else {
                for &j in &nz {
                    let new = row[j] - f * pivot_row[j];
                    self.norms[j] += new * new - row[j] * row[j];
                    row[j] = new;
                }
            }
            row[q] = 0.0;
        }
        self.norms[q] = 1.0;
        let f = self.reduced[q];
        if f != 0.0 {
            for &j in &nz {
                self.reduced[j] -= f * pivot_row[j];
            }
            self.reduced[q] = 0.0;
        }
        self.pivots += 1;
        if self.pivots % NORM_REFRESH == 0 {
            self.recompute_norms();
        }
    }

    fn run(&mut self, max_pivots: usize) -> Result<bool> {
        let mut streak = 0;
        let mut steps = 0;
        loop {
            steps += 1;
            if steps > max_pivots {
                return Err(Error::InvalidInput(format!(
                    "simplex exceeded {max_pivots} iterations"
                )));
            }
            match self.step(streak >= DEGENERATE_STREAK) {
                Step::Optimal => return Ok(true),
                Step::Unbounded => return Ok(false),
                Step::Moved { degenerate } => {
                    streak = if degenerate { streak + 1 } else { 0 };
                }
            }
        }
    }
}

/// Solves `lp` with a two-phase bounded-variable primal simplex.
///
/// Pricing is steepest edge and falls back to Bland's smallest
/// index rule after a run of degenerate pivots, which rules out cycling.
pub fn simplex_solve(lp: &LinearProgram) -> LpOutcome {
    let a = &lp.constraints;
    let (m, n) = (a.rows(), lp.num_vars());

    // internal structural columns
    let mut maps = Vec::with_capacity(n);
    let mut col_upper: Vec<f64> = Vec::new();
    for j in 0..n {
        let (l, u) = (lp.lower[j], lp.upper[j]);
        if l.is_finite() {
            maps.push(VarMap::Shifted { col: col_upper.len(), offset: l });
            col_upper.push(u - l);
        } else if u.is_finite() {
            maps.push(VarMap::Mirrored { col: col_upper.len(), offset: u });
            col_upper.push(f64::INFINITY);
        } else {
            maps.push(VarMap::Split { pos: col_upper.len(), neg: col_upper.len() + 1 });
            col_upper.push(f64::INFINITY);
            col_upper.push(f64::INFINITY);
        }
    }
    let ns = col_upper.len();

    // rows in terms of internal columns, rhs adjusted for offsets
    let mut rows = vec![0.0; m * ns];
    let mut rhs = lp.rhs.clone();
    let mut cost = vec![0.0; ns];
    for (j, map) in maps.iter().enumerate() {
        match *map {
            VarMap::Shifted { col, offset } => {
                for i in 0..m {
                    rows[i * ns + col] = a.get(i, j);
                    rhs[i] -= a.get(i, j) * offset;
                }
                cost[col] = lp.objective[j];
            }
            VarMap::Mirrored { col, offset } => {
                for i in 0..m {
                    rows[i * ns + col] = -a.get(i, j);
                    rhs[i] -= a.get(i, j) * offset;
                }
                cost[col] = -lp.objective[j];
            }
            VarMap::Split { pos, neg } => {
                for i in 0..m {
                    rows[i * ns + pos] = a.get(i, j);
                    rows[i * ns + neg] = -a.get(i, j);
                }
                cost[pos] = lp.objective[j];
                cost[neg] = -lp.objective[j];
            }
        }
    }

    let needs_art: Vec<bool> = rhs.iter().map(|&b| b < 0.0).collect();
    let n_art = needs_art.iter().filter(|&&x| x).count();
    let ncols = ns + m + n_art;
    let mut t = vec![0.0; m * ncols];
    let mut basis = vec![0; m];
    let mut xb = vec![0.0; m];
    let mut art = ns + m;
    for i in 0..m {
        let sign = if needs_art[i] { -1.0 } else { 1.0 };
        let dst = &mut t[i * ncols..(i + 1) * ncols];
        for (d, &s) in dst[..ns].iter_mut().zip(&rows[i * ns..(i + 1) * ns]) {
            *d = sign * s;
        }
        dst[ns + i] = sign;
        xb[i] = sign * rhs[i];
        if needs_art[i] {
            dst[art] = 1.0;
            basis[i] = art;
            art += 1;
        } else {
            basis[i] = ns + i;
        }
    }
    let mut upper = col_upper;
    upper.extend(std::iter::repeat_n(f64::INFINITY, m + n_art));
    let mut status = vec![Status::AtLower; ncols];
    for &b in &basis {
        status[b] = Status::Basic;
    }

    let mut phase1_cost = vec![0.0; ncols];
    phase1_cost[ns + m..].iter_mut().for_each(|c| *c = -1.0);
    let mut tab = Tableau {
        m,
        ncols,
        t,
        xb,
        basis,
        status,
        upper,
        cost: phase1_cost,
        reduced: Vec::new(),
        allowed: vec![true; ncols],
        norms: vec![0.0; ncols],
        pivots: 0,
    };
    tab.recompute_norms();
    let max_pivots = 50 * (m + ncols) + 10_000;

    if n_art > 0 {
        tab.recompute_reduced_costs();
        match tab.run(max_pivots) {
            Ok(true) => {}
            // phase one is bounded below by zero; anything else is numerical trouble
            _ => return LpOutcome::Infeasible,
        }
        let infeasibility = -tab.objective_value();
        let scale = 1.0 + lp.rhs.iter().fold(0.0_f64, |s, v| s.max(v.abs()));
        if infeasibility > FEAS_TOL * scale {
            return LpOutcome::Infeasible;
        }
        for j in ns + m..ncols {
            tab.allowed[j] = false;
            tab.upper[j] = 0.0;
        }
    }

    let mut full_cost = cost;
    full_cost.extend(std::iter::repeat_n(0.0, m + n_art));
    tab.cost = full_cost;
    tab.recompute_reduced_costs();
    match tab.run(max_pivots) {
        Ok(true) => {}
        Ok(false) => return LpOutcome::Unbounded,
        Err(_) => return LpOutcome::Infeasible,
    }

    let mut internal = vec![0.0; ncols];
    for j in 0..ncols {
        if tab.status[j] != Status::Basic {
            internal[j] = tab.value_of_nonbasic(j);
        }
    }
    for i in 0..m {
        internal[tab.basis[i]] = tab.xb[i];
    }
    let point: Vec<f64> = maps
        .iter()
        .enumerate()
        .map(|(j, map)| {
            let v = match *map {
                VarMap::Shifted { col, offset } => offset + internal[col],
                VarMap::Mirrored { col, offset } => offset - internal[col],
                VarMap::Split { pos, neg } => internal[pos] - internal[neg],
            };
            v.clamp(lp.lower[j], lp.upper[j])
        })
        .collect();
    let value = point.iter().zip(&lp.objective).map(|(x, c)| x * c).sum();
    LpOutcome::Optimal { value, point }
}

/// Result of [`solve_canonical`].
pub(crate) struct CanonicalSolution {
    pub objective: f64,
    /// Final reduced costs, one per column.
    pub reduced: Vec<f64>,
}

/// Maximizes `cost^T x` over `T x = xb`, `0 <= x <= upper`, starting from a
/// feasible basis already in canonical form: column `basis[i]` of the
/// row-major `m x ncols` matrix `t` is the i-th unit vector and `xb >= 0`.
///
/// Returns `None` when the objective is unbounded or the pivot budget runs out.
pub(crate) fn solve_canonical(
    t: Vec<f64>,
    m: usize,
    xb: Vec<f64>,
    basis: Vec<usize>,
    cost: Vec<f64>,
    upper: Vec<f64>,
) -> Option<CanonicalSolution> {
    let ncols = cost.len();
    debug_assert_eq!(t.len(), m * ncols);
    let mut status = vec![Status::AtLower; ncols];
    for &b in &basis {
        status[b] = Status::Basic;
    }
    let mut tab = Tableau {
        m,
        ncols,
        t,
        xb,
        basis,
        status,
        upper,
        cost,
        reduced: Vec::new(),
        allowed: vec![true; ncols],
        norms: vec![0.0; ncols],
        pivots: 0,
    };
    tab.recompute_norms();
    tab.recompute_reduced_costs();
    match tab.run(50 * (m + ncols) + 10_000) {
        Ok(true) => Some(CanonicalSolution {
            objective: tab.objective_value(),
            reduced: tab.reduced,
        }),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn lp(c: Vec<f64>, a: &[Vec<f64>], b: Vec<f64>, l: Vec<f64>, u: Vec<f64>) -> LinearProgram {
        LinearProgram::new(c, Matrix::from_rows(a).unwrap(), b, l, u).unwrap()
    }

    fn optimal(o: LpOutcome) -> (f64, Vec<f64>) {
        match o {
            LpOutcome::Optimal { value, point } => (value, point),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn maximise_on_unit_interval() {
        let p = LinearProgram::bounds_only(vec![1.0], vec![0.0], vec![1.0]).unwrap();
        let (v, x) = optimal(simplex_solve(&p));
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(x[0], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn unbounded_above() {
        let p = LinearProgram::bounds_only(vec![1.0], vec![0.0], vec![f64::INFINITY]).unwrap();
        assert_eq!(simplex_solve(&p), LpOutcome::Unbounded);
    }

    #[test]
    fn infeasible_bounds_and_row() {
        let p = lp(vec![1.0], &[vec![1.0]], vec![-1.0], vec![0.0], vec![f64::INFINITY]);
        assert_eq!(simplex_solve(&p), LpOutcome::Infeasible);
    }

    #[test]
    fn textbook_two_variable() {
        // max 3x + 5y  s.t. x <= 4, 2y <= 12, 3x + 2y <= 18
        let p = lp(
            vec![3.0, 5.0],
            &[vec![1.0, 0.0], vec![0.0, 2.0], vec![3.0, 2.0]],
            vec![4.0, 12.0, 18.0],
            vec![0.0, 0.0],
            vec![f64::INFINITY; 2],
        );
        let (v, x) = optimal(simplex_solve(&p));
        assert_abs_diff_eq!(v, 36.0, epsilon = 1e-9);
        assert_abs_diff_eq!(x[0], 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(x[1], 6.0, epsilon = 1e-9);
    }

    #[test]
    fn free_and_mirrored_variables() {
        // max -|x - 2| style: max y s.t. y <= x - 2, y <= 2 - x, x free, y <= 10 upper only
        let p = lp(
            vec![0.0, 1.0],
            &[vec![-1.0, 1.0], vec![1.0, 1.0]],
            vec![-2.0, 2.0],
            vec![f64::NEG_INFINITY, f64::NEG_INFINITY],
            vec![f64::INFINITY, 10.0],
        );
        let (v, x) = optimal(simplex_solve(&p));
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(x[0], 2.0, epsilon = 1e-9);
    }

    #[test]
    fn greater_equal_rows_need_phase_one() {
        // min x + y (max -x - y) s.t. x + y >= 2, x - y <= 1, x,y in [0, 5]
        let p = lp(
            vec![-1.0, -1.0],
            &[vec![-1.0, -1.0], vec![1.0, -1.0]],
            vec![-2.0, 1.0],
            vec![0.0, 0.0],
            vec![5.0, 5.0],
        );
        let (v, x) = optimal(simplex_solve(&p));
        assert_abs_diff_eq!(v, -2.0, epsilon = 1e-9);
        assert!(x[0] + x[1] >= 2.0 - 1e-9 && x[0] - x[1] <= 1.0 + 1e-9);
    }

    #[test]
    fn degenerate_problem_terminates() {
        // classic Beale cycling example (as a maximisation)
        let p = lp(
            vec![0.75, -150.0, 0.02, -6.0],
            &[
                vec![0.25, -60.0, -0.04, 9.0],
                vec![0.5, -90.0, -0.02, 3.0],
                vec![0.0, 0.0, 1.0, 0.0],
            ],
            vec![0.0, 0.0, 1.0],
            vec![0.0; 4],
            vec![f64::INFINITY; 4],
        );
        let (v, _) = optimal(simplex_solve(&p));
        assert_abs_diff_eq!(v, 0.05, epsilon = 1e-9);
    }

    #[test]
    fn rejects_inconsistent_dimensions() {
        let r = LinearProgram::new(vec![1.0, 2.0], Matrix::zeros(1, 1), vec![0.0], vec![0.0; 2], vec![1.0; 2]);
        assert!(r.is_err());
    }
}
