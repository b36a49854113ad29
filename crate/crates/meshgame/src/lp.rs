//! Dense two-phase primal simplex for small and mid-size linear programs,
//! with dual prices recovered from the final tableau.
//!
//! Problem form: optimize `c . x` over `x >= 0` subject to inequality rows
//! `a . x <= b` and equality rows `e . x = d`. Rows are sparse `(col, coeff)`
//! lists. For a `Max` problem the reported inequality duals are nonnegative
//! and satisfy `value = dual_ineq . b + dual_eq . d` at the optimum; for a
//! `Min` problem the duals are reported with the opposite sign so the same
//! identity holds.
//!
//! Numeric conventions live here and are shared by the rest of the crate:
//! [`FEAS_TOL`] for pivot admissibility, [`hybrid_tol`] for value
//! comparisons (absolute near zero, relative at scale), and a post-solve
//! certificate check that rejects silently-wrong bases with
//! [`Error::NumericFailure`] instead of returning bad numbers.
//!
//! A solve is a pure function of the problem: no global state, no
//! randomness, so equal inputs give bit-identical outputs.

use crate::error::{Error, Result};

/// Pivot admissibility and basic-variable zero threshold.
pub const FEAS_TOL: f64 = 1e-9;
/// Accepted relative duality gap between primal and dual objective values.
pub const GAP_RTOL: f64 = 1e-6;
/// Post-solve certificate tolerance (constraint residuals, dual residuals).
const RESIDUAL_TOL: f64 = 1e-7;
/// Entries this small are flushed to exact zero during tableau updates.
const DROP_TOL: f64 = 1e-11;
/// Minimum magnitude for pivoting a zero-valued artificial out of the basis.
const EVICT_TOL: f64 = 1e-7;
/// Consecutive degenerate pivots before switching to Bland's rule.
const DEGEN_SWITCH: usize = 64;

/// Comparison tolerance that is absolute near zero and relative at scale.
pub fn hybrid_tol(scale: f64) -> f64 {
    1e-6 * scale.abs().max(1.0)
}

pub type SparseRow = Vec<(usize, f64)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpProblem {
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub ineq_rows: Vec<SparseRow>,
    pub ineq_rhs: Vec<f64>,
    pub eq_rows: Vec<SparseRow>,
    pub eq_rhs: Vec<f64>,
    /// Optional names for inequality rows then equality rows.
    pub row_labels: Vec<String>,
    /// Optional names for columns.
    pub col_labels: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: Status,
    /// Objective value at the optimum (`NaN` if infeasible, infinite if
    /// unbounded).
    pub value: f64,
    pub primal: Vec<f64>,
    pub dual_ineq: Vec<f64>,
    pub dual_eq: Vec<f64>,
    /// True when some basic variable sits at zero in the final basis; dual
    /// prices may then be one of several valid vertices.
    pub degenerate: bool,
    pub iterations: usize,
}

impl LpProblem {
    pub fn maximize(objective: Vec<f64>) -> Self {
        LpProblem {
            sense: Sense::Max,
            objective,
            ineq_rows: Vec::new(),
            ineq_rhs: Vec::new(),
            eq_rows: Vec::new(),
            eq_rhs: Vec::new(),
            row_labels: Vec::new(),
            col_labels: Vec::new(),
        }
    }

    pub fn minimize(objective: Vec<f64>) -> Self {
        LpProblem {
            sense: Sense::Min,
            ..LpProblem::maximize(objective)
        }
    }

    pub fn n_vars(&self) -> usize {
        self.objective.len()
    }

    /// Adds `row . x <= rhs`.
    pub fn add_ineq(&mut self, row: SparseRow, rhs: f64) {
        self.ineq_rows.push(row);
        self.ineq_rhs.push(rhs);
    }

    /// Adds `row . x = rhs`.
    pub fn add_eq(&mut self, row: SparseRow, rhs: f64) {
        self.eq_rows.push(row);
        self.eq_rhs.push(rhs);
    }

    pub fn n_rows(&self) -> usize {
        self.ineq_rows.len() + self.eq_rows.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_vars();
        for c in &self.objective {
            if !c.is_finite() {
                return Err(Error::InvalidLp(format!("non-finite objective coefficient {c}")));
            }
        }
        if self.ineq_rows.len() != self.ineq_rhs.len() || self.eq_rows.len() != self.eq_rhs.len() {
            return Err(Error::InvalidLp("row/rhs length mismatch".to_string()));
        }
        let mut seen = vec![usize::MAX; n];
        for (kind, rows, rhs) in [
            ("ineq", &self.ineq_rows, &self.ineq_rhs),
            ("eq", &self.eq_rows, &self.eq_rhs),
        ] {
            for (r, (row, b)) in rows.iter().zip(rhs).enumerate() {
                if !b.is_finite() {
                    return Err(Error::InvalidLp(format!("{kind} row {r}: non-finite rhs {b}")));
                }
                for &(j, a) in row {
                    if j >= n {
                        return Err(Error::InvalidLp(format!(
                            "{kind} row {r}: column {j} out of range for {n} variables"
                        )));
                    }
                    if !a.is_finite() {
                        return Err(Error::InvalidLp(format!(
                            "{kind} row {r}: non-finite coefficient {a}"
                        )));
                    }
                    let tag = r + if kind == "eq" { self.ineq_rows.len() } else { 0 };
                    if seen[j] == tag {
                        return Err(Error::InvalidLp(format!(
                            "{kind} row {r}: duplicate column {j}"
                        )));
                    }
                    seen[j] = tag;
                }
            }
        }
        if !self.row_labels.is_empty() && self.row_labels.len() != self.n_rows() {
            return Err(Error::InvalidLp("row label count mismatch".to_string()));
        }
        if !self.col_labels.is_empty() && self.col_labels.len() != n {
            return Err(Error::InvalidLp("column label count mismatch".to_string()));
        }
        Ok(())
    }

    /// Human-readable listing of the problem, for debugging.
    pub fn dump(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        let col = |j: usize| -> String {
            self.col_labels.get(j).cloned().unwrap_or_else(|| format!("x{j}"))
        };
        let sense = match self.sense {
            Sense::Max => "max",
            Sense::Min => "min",
        };
        write!(s, "{sense}").unwrap();
        for (j, c) in self.objective.iter().enumerate() {
            if *c != 0.0 {
                write!(s, " {c:+}*{}", col(j)).unwrap();
            }
        }
        s.push('\n');
        let mut row_no = 0usize;
        let emit = |rows: &[SparseRow], rhs: &[f64], op: &str, s: &mut String, row_no: &mut usize| {
            for (row, b) in rows.iter().zip(rhs) {
                let label = self
                    .row_labels
                    .get(*row_no)
                    .cloned()
                    .unwrap_or_else(|| format!("r{row_no}"));
                write!(s, "  {label}:").unwrap();
                for &(j, a) in row {
                    write!(s, " {a:+}*{}", col(j)).unwrap();
                }
                writeln!(s, " {op} {b}").unwrap();
                *row_no += 1;
            }
        };
        emit(&self.ineq_rows, &self.ineq_rhs, "<=", &mut s, &mut row_no);
        emit(&self.eq_rows, &self.eq_rhs, "=", &mut s, &mut row_no);
        s
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Basic {
    /// A tableau column (structural, slack, or stored artificial).
    Col(usize),
    /// The artificial variable attached to this row (may have no stored
    /// column when the row is a sign-flipped inequality).
    Art(usize),
}

enum LoopEnd {
    NoEntering,
    NoLeaving,
}

struct Tableau {
    n: usize,
    m1: usize,
    m2: usize,
    stride: usize,
    rows: Vec<f64>,
    obj: Vec<f64>,
    basis: Vec<Basic>,
    flipped: Vec<bool>,
    n_basic_art: usize,
    rhs_scale: f64,
    bland: bool,
    degen_run: usize,
    iters: usize,
    max_iters: usize,
    scratch: Vec<f64>,
}

fn axpy_clean(dst: &mut [f64], f: f64, src: &[f64]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        let v = *d - f * s;
        *d = if v.abs() <= DROP_TOL { 0.0 } else { v };
    }
}

impl Tableau {
    fn build(lp: &LpProblem, max_obj: &[f64]) -> Tableau {
        let n = lp.n_vars();
        let m1 = lp.ineq_rows.len();
        let m2 = lp.eq_rows.len();
        let m = m1 + m2;
        let stride = n + m1 + m2 + 1;
        let rhs_i = stride - 1;
        let mut rows = vec![0.0; m * stride];
        let mut basis = Vec::with_capacity(m);
        let mut flipped = vec![false; m];
        let mut n_basic_art = 0;
        let mut rhs_scale: f64 = 1.0;

        for (i, (row, &b)) in lp.ineq_rows.iter().zip(&lp.ineq_rhs).enumerate() {
            let r = &mut rows[i * stride..(i + 1) * stride];
            for &(j, a) in row {
                r[j] = a;
            }
            r[n + i] = 1.0;
            r[rhs_i] = b;
            rhs_scale = rhs_scale.max(b.abs());
            if b < 0.0 {
                for v in r.iter_mut() {
                    *v = -*v;
                }
                flipped[i] = true;
                basis.push(Basic::Art(i));
                n_basic_art += 1;
            } else {
                basis.push(Basic::Col(n + i));
            }
        }
        for (k, (row, &d)) in lp.eq_rows.iter().zip(&lp.eq_rhs).enumerate() {
            let i = m1 + k;
            let r = &mut rows[i * stride..(i + 1) * stride];
            for &(j, a) in row {
                r[j] = a;
            }
            r[rhs_i] = d;
            rhs_scale = rhs_scale.max(d.abs());
            if d < 0.0 {
                for v in r.iter_mut() {
                    *v = -*v;
                }
                flipped[i] = true;
            }
            r[n + m1 + k] = 1.0;
            basis.push(Basic::Art(i));
            n_basic_art += 1;
        }

        let _ = max_obj;
        Tableau {
            n,
            m1,
            m2,
            stride,
            rows,
            obj: vec![0.0; stride],
            basis,
            flipped,
            n_basic_art,
            rhs_scale,
            bland: false,
            degen_run: 0,
            iters: 0,
            max_iters: 10_000 + 50 * (m + n),
            scratch: vec![0.0; stride],
        }
    }

    fn m(&self) -> usize {
        self.m1 + self.m2
    }

    fn rhs(&self, r: usize) -> f64 {
        self.rows[r * self.stride + self.stride - 1]
    }

    /// Columns eligible to enter: structural and slack only, never
    /// artificial. They occupy the prefix of the column range.
    fn enterable_cols(&self) -> usize {
        self.n + self.m1
    }

    fn basic_ordinal(&self, b: Basic) -> usize {
        match b {
            Basic::Col(j) => j,
            Basic::Art(r) => self.stride + r,
        }
    }

    fn select_entering(&self) -> Option<usize> {
        let limit = self.enterable_cols();
        if self.bland {
            (0..limit).find(|&j| self.obj[j] > FEAS_TOL)
        } else {
            let mut best = None;
            let mut best_rc = FEAS_TOL;
            for (j, &rc) in self.obj[..limit].iter().enumerate() {
                if rc > best_rc {
                    best_rc = rc;
                    best = Some(j);
                }
            }
            best
        }
    }

    fn select_leaving(&self, q: usize) -> Option<usize> {
        let mut best: Option<(f64, usize, usize, usize)> = None;
        for r in 0..self.m() {
            let a = self.rows[r * self.stride + q];
            let rhs = self.rhs(r).max(0.0);
            let is_art = matches!(self.basis[r], Basic::Art(_));
            let candidate = if a > FEAS_TOL {
                Some(rhs / a)
            } else if is_art && rhs <= FEAS_TOL && a.abs() > EVICT_TOL {
                Some(0.0)
            } else {
                None
            };
            if let Some(ratio) = candidate {
                let key = (ratio, usize::from(!is_art), self.basic_ordinal(self.basis[r]), r);
                if best.map_or(true, |b| (key.0, key.1, key.2) < (b.0, b.1, b.2)) {
                    best = Some(key);
                }
            }
        }
        best.map(|(_, _, _, r)| r)
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let stride = self.stride;
        let pv = self.rows[r * stride + q];
        {
            let row = &mut self.rows[r * stride..(r + 1) * stride];
            for v in row.iter_mut() {
                *v /= pv;
            }
            row[q] = 1.0;
            self.scratch.copy_from_slice(row);
        }
        for i in 0..self.m() {
            if i == r {
                continue;
            }
            let f = self.rows[i * stride + q];
            if f != 0.0 {
                let row = &mut self.rows[i * stride..(i + 1) * stride];
                axpy_clean(row, f, &self.scratch);
                row[q] = 0.0;
            }
        }
        let f = self.obj[q];
        if f != 0.0 {
            axpy_clean(&mut self.obj, f, &self.scratch);
            self.obj[q] = 0.0;
        }
        if matches!(self.basis[r], Basic::Art(_)) {
            self.n_basic_art -= 1;
        }
        self.basis[r] = Basic::Col(q);
    }

    fn pivot_loop(&mut self) -> Result<LoopEnd> {
        loop {
            let q = match self.select_entering() {
                Some(q) => q,
                None => return Ok(LoopEnd::NoEntering),
            };
            let r = match self.select_leaving(q) {
                Some(r) => r,
                None => return Ok(LoopEnd::NoLeaving),
            };
            self.iters += 1;
            if self.iters > self.max_iters {
                return Err(Error::NumericFailure(format!(
                    "simplex exceeded {} pivots without converging",
                    self.max_iters
                )));
            }
            let degen = self.rhs(r).max(0.0) / self.rows[r * self.stride + q] <= FEAS_TOL;
            self.pivot(r, q);
            if degen {
                self.degen_run += 1;
                if self.degen_run >= DEGEN_SWITCH {
                    self.bland = true;
                }
            } else {
                self.degen_run = 0;
                self.bland = false;
            }
        }
    }

    /// Finds a basic feasible solution; returns false when the constraints
    /// are inconsistent.
    fn phase1(&mut self) -> Result<bool> {
        let infeas: f64 = (0..self.m())
            .filter(|&r| matches!(self.basis[r], Basic::Art(_)))
            .map(|r| self.rhs(r))
            .sum();
        if infeas > FEAS_TOL {
            self.obj.fill(0.0);
            for r in 0..self.m() {
                if matches!(self.basis[r], Basic::Art(_)) {
                    let row = self.rows[r * self.stride..(r + 1) * self.stride].to_vec();
                    for (o, v) in self.obj.iter_mut().zip(&row) {
                        *o += v;
                    }
                }
            }
            match self.pivot_loop()? {
                LoopEnd::NoEntering => {}
                LoopEnd::NoLeaving => {
                    return Err(Error::NumericFailure(
                        "phase-1 objective reported unbounded".to_string(),
                    ));
                }
            }
        }
        let residual: f64 = (0..self.m())
            .filter(|&r| matches!(self.basis[r], Basic::Art(_)))
            .map(|r| self.rhs(r).max(0.0))
            .sum();
        Ok(residual <= RESIDUAL_TOL * (1.0 + self.rhs_scale))
    }

    /// Optimizes the real objective from a feasible basis; returns false on
    /// an unbounded ray.
    fn phase2(&mut self, max_obj: &[f64]) -> Result<bool> {
        self.obj.fill(0.0);
        self.obj[..self.n].copy_from_slice(max_obj);
        for r in 0..self.m() {
            let c_b = match self.basis[r] {
                Basic::Col(j) if j < self.n => max_obj[j],
                _ => 0.0,
            };
            if c_b != 0.0 {
                let row = self.rows[r * self.stride..(r + 1) * self.stride].to_vec();
                axpy_clean(&mut self.obj, c_b, &row);
            }
        }
        self.bland = false;
        self.degen_run = 0;
        match self.pivot_loop()? {
            LoopEnd::NoEntering => Ok(true),
            LoopEnd::NoLeaving => Ok(false),
        }
    }

    fn extract_primal(&self) -> Vec<f64> {
        let mut x = vec![0.0; self.n];
        for r in 0..self.m() {
            if let Basic::Col(j) = self.basis[r] {
                if j < self.n {
                    x[j] = self.rhs(r).max(0.0);
                }
            }
        }
        x
    }

    /// Inequality duals come from slack reduced costs, equality duals from
    /// the stored artificial columns; the row-flip sign cancels for slacks
    /// but not for artificials (added after the flip).
    fn extract_duals(&self) -> (Vec<f64>, Vec<f64>) {
        let clean = |v: f64| if v.abs() <= FEAS_TOL { 0.0 } else { v };
        let y = (0..self.m1)
            .map(|i| clean(-self.obj[self.n + i]))
            .collect();
        let z = (0..self.m2)
            .map(|k| {
                let rc = self.obj[self.n + self.m1 + k];
                clean(if self.flipped[self.m1 + k] { rc } else { -rc })
            })
            .collect();
        (y, z)
    }

    fn degenerate(&self) -> bool {
        (0..self.m()).any(|r| match self.basis[r] {
            Basic::Art(_) => true,
            Basic::Col(_) => self.rhs(r).abs() <= FEAS_TOL,
        })
    }
}

fn certify(
    lp: &LpProblem,
    max_obj: &[f64],
    x: &[f64],
    y: &[f64],
    z: &[f64],
    value: f64,
) -> Result<()> {
    let fail = |what: String| Err(Error::NumericFailure(what));

    for (i, (row, &b)) in lp.ineq_rows.iter().zip(&lp.ineq_rhs).enumerate() {
        let act: f64 = row.iter().map(|&(j, a)| a * x[j]).sum();
        if act - b > RESIDUAL_TOL * (1.0 + b.abs()) {
            return fail(format!("primal residual on inequality row {i}: {act} > {b}"));
        }
        if y[i] < -RESIDUAL_TOL {
            return fail(format!("negative inequality dual on row {i}: {}", y[i]));
        }
        if (y[i] * (b - act)).abs() > hybrid_tol(value) {
            return fail(format!("complementary slackness broken on inequality row {i}"));
        }
    }
    for (k, (row, &d)) in lp.eq_rows.iter().zip(&lp.eq_rhs).enumerate() {
        let act: f64 = row.iter().map(|&(j, a)| a * x[j]).sum();
        if (act - d).abs() > RESIDUAL_TOL * (1.0 + d.abs()) {
            return fail(format!("primal residual on equality row {k}: {act} != {d}"));
        }
    }

    let mut priced = vec![0.0; lp.n_vars()];
    for (row, &yi) in lp.ineq_rows.iter().zip(y) {
        if yi != 0.0 {
            for &(j, a) in row {
                priced[j] += yi * a;
            }
        }
    }
    for (row, &zk) in lp.eq_rows.iter().zip(z) {
        if zk != 0.0 {
            for &(j, a) in row {
                priced[j] += zk * a;
            }
        }
    }
    for (j, (&c, &p)) in max_obj.iter().zip(&priced).enumerate() {
        let rc = c - p;
        if rc > RESIDUAL_TOL * (1.0 + c.abs()) {
            return fail(format!("dual residual on column {j}: reduced cost {rc}"));
        }
        if (x[j] * rc).abs() > hybrid_tol(value) {
            return fail(format!("complementary slackness broken on column {j}"));
        }
    }

    let dual_value: f64 = lp.ineq_rhs.iter().zip(y).map(|(&b, &yi)| b * yi).sum::<f64>()
        + lp.eq_rhs.iter().zip(z).map(|(&d, &zk)| d * zk).sum::<f64>();
    if (value - dual_value).abs() > GAP_RTOL * value.abs().max(1.0) {
        return fail(format!(
            "duality gap {} between primal {value} and dual {dual_value}",
            value - dual_value
        ));
    }
    Ok(())
}

/// Solves the program to optimality, or reports it infeasible / unbounded.
/// An optimal answer is returned only after the primal/dual certificate
/// checks pass; a basis that fails them surfaces as
/// [`Error::NumericFailure`] rather than a wrong number.
pub fn solve(lp: &LpProblem) -> Result<LpSolution> {
    lp.validate()?;
    let max_obj: Vec<f64> = match lp.sense {
        Sense::Max => lp.objective.clone(),
        Sense::Min => lp.objective.iter().map(|c| -c).collect(),
    };
    let mut t = Tableau::build(lp, &max_obj);
    if !t.phase1()? {
        return Ok(LpSolution {
            status: Status::Infeasible,
            value: f64::NAN,
            primal: Vec::new(),
            dual_ineq: Vec::new(),
            dual_eq: Vec::new(),
            degenerate: false,
            iterations: t.iters,
        });
    }
    if !t.phase2(&max_obj)? {
        return Ok(LpSolution {
            status: Status::Unbounded,
            value: match lp.sense {
                Sense::Max => f64::INFINITY,
                Sense::Min => f64::NEG_INFINITY,
            },
            primal: Vec::new(),
            dual_ineq: Vec::new(),
            dual_eq: Vec::new(),
            degenerate: false,
            iterations: t.iters,
        });
    }

    let primal: Vec<f64> = t
        .extract_primal()
        .iter()
        .map(|&v| if v.abs() <= FEAS_TOL { 0.0 } else { v })
        .collect();
    let (y, z) = t.extract_duals();
    let value: f64 = max_obj.iter().zip(&primal).map(|(c, x)| c * x).sum();
    certify(lp, &max_obj, &primal, &y, &z, value)?;

    let (value, dual_ineq, dual_eq) = match lp.sense {
        Sense::Max => (value, y, z),
        Sense::Min => (
            -value,
            y.iter().map(|v| -v).collect(),
            z.iter().map(|v| -v).collect(),
        ),
    };
    Ok(LpSolution {
        status: Status::Optimal,
        value,
        primal,
        dual_ineq,
        dual_eq,
        degenerate: t.degenerate(),
        iterations: t.iters,
    })
}

/// The mechanical dual of `lp`, with matching optimal value when both sides
/// are feasible and bounded.
///
/// For a `Max` primal the dual is a `Min` over variables `[y, z+, z-]`
/// (inequality multipliers, then split equality multipliers); for a `Min`
/// primal the senses reverse. Labels transpose along with the matrix.
pub fn dual_of(lp: &LpProblem) -> LpProblem {
    let n = lp.n_vars();
    let m1 = lp.ineq_rows.len();
    let m2 = lp.eq_rows.len();
    let (obj_sign, rhs_sign) = match lp.sense {
        // max c.x : Ax <= b, Ex = d  ->  min b.y + d.z+ - d.z- : -At y - Et z+ + Et z- <= -c
        Sense::Max => (1.0, -1.0),
        // min c.x : Ax <= b, Ex = d  ->  max -b.y + d.z+ - d.z- : -At y + Et z+ - Et z- <= c
        Sense::Min => (-1.0, 1.0),
    };

    let mut objective = Vec::with_capacity(m1 + 2 * m2);
    objective.extend(lp.ineq_rhs.iter().map(|&b| obj_sign * b));
    objective.extend(lp.eq_rhs.iter().map(|&d| -rhs_sign * d));
    objective.extend(lp.eq_rhs.iter().map(|&d| rhs_sign * d));

    let mut rows: Vec<SparseRow> = vec![Vec::new(); n];
    for (i, row) in lp.ineq_rows.iter().enumerate() {
        for &(j, a) in row {
            rows[j].push((i, -a));
        }
    }
    for (k, row) in lp.eq_rows.iter().enumerate() {
        for &(j, e) in row {
            rows[j].push((m1 + k, rhs_sign * e));
            rows[j].push((m1 + m2 + k, -rhs_sign * e));
        }
    }
    let rhs: Vec<f64> = lp.objective.iter().map(|&c| -obj_sign * c).collect();

    let row_label = |i: usize| {
        lp.row_labels
            .get(i)
            .cloned()
            .unwrap_or_else(|| format!("r{i}"))
    };
    let mut col_labels = Vec::with_capacity(m1 + 2 * m2);
    col_labels.extend((0..m1).map(|i| format!("y[{}]", row_label(i))));
    col_labels.extend((0..m2).map(|k| format!("z+[{}]", row_label(m1 + k))));
    col_labels.extend((0..m2).map(|k| format!("z-[{}]", row_label(m1 + k))));
    let row_labels = (0..n)
        .map(|j| {
            lp.col_labels
                .get(j)
                .cloned()
                .unwrap_or_else(|| format!("x{j}"))
        })
        .collect();

    LpProblem {
        sense: match lp.sense {
            Sense::Max => Sense::Min,
            Sense::Min => Sense::Max,
        },
        objective,
        ineq_rows: rows,
        ineq_rhs: rhs,
        eq_rows: Vec::new(),
        eq_rhs: Vec::new(),
        row_labels,
        col_labels,
    }
}
