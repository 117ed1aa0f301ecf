//! Device-independent lower bounds on the negativity from partially
//! observed moment matrices.
//!
//! The negativity has the variational form
//! `N(ρ) = min{tr σ : σ^{T_A} ⪰ 0, (ρ + σ)^{T_A} ⪰ 0}`, i.e. `σ` is the
//! partially transposed negative part of `ρ^{T_A}`. Both constraints
//! survive the passage to moment matrices, and `tr σ` becomes the
//! `(00,00)` entry of `χ[σ]`. Minimizing that entry over *all* Hermitian
//! pairs `(χ, χ_σ)` consistent with the observed entries of `χ` therefore
//! lower-bounds the negativity of every state compatible with the data —
//! no assumption on the devices or the Hilbert-space dimension enters.
//!
//! Measurement operators are modeled as contractions (`A_i†A_i ⪯ 1`), the
//! defining property of generalized-measurement Kraus operators. That is
//! what pins the moment matrices down dimension-freely: the diagonal of
//! the moment matrix of any positive operator is dominated by its `(00,00)`
//! entry. Without this the first-order relaxation is degenerate — an
//! unconstrained `χ_σ` can hide arbitrary weight in diagonal blocks that
//! never touch the objective and the infimum collapses to zero for every
//! feasible scenario.
//!
//! The solver is a bisection on the objective level over projection-based
//! feasibility runs: Douglas-Rachford splitting for the data-consistency
//! phase and cyclic projections onto the PSD cones, the data pins and the
//! diagonal bounds for each level. It reports the largest level shown
//! *inconsistent* with the data, so the bound errs on the sound side, and
//! returns the feasible pair found just above it as an independently
//! checkable certificate.

use num_complex::Complex;

use crate::bipartite::{partial_transpose_matrix, BipartiteState};
use crate::eig::{min_eigenvalue, negative_part, psd_project};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::moment::{MeasurementSet, MomentMatrix};
use crate::scalar::Scalar;
use crate::tol;

/// Analytic solution of the variational expression: the minimizing `σ` is
/// the partial transpose of the negative part of `ρ^{T_A}`, and its trace
/// equals the negativity.
pub fn variational_negativity<T: Scalar>(s: &BipartiteState<T>) -> Result<(T, ComplexMatrix<T>)> {
    let pt = partial_transpose_matrix(s.rho(), s.d_a(), s.d_b())?;
    let q = negative_part(&pt)?;
    let sigma = partial_transpose_matrix(&q, s.d_a(), s.d_b())?;
    let value = sigma.trace().re;
    Ok((value, sigma))
}

/// One fixed entry of the moment matrix, stored with `flat(row) <= flat(col)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentConstraint<T: Scalar> {
    pub row: (usize, usize),
    pub col: (usize, usize),
    pub value: Complex<T>,
}

/// Raw constraint triple as it appears in scenario files: row index,
/// column index, fixed value.
pub type RawConstraint<T> = ((usize, usize), (usize, usize), Complex<T>);

/// The observed part of a device-independent scenario: moment dimensions
/// plus the χ entries fixed by the measured statistics.
#[derive(Debug, Clone)]
pub struct DiScenario<T: Scalar> {
    m_a: usize,
    m_b: usize,
    constraints: Vec<MomentConstraint<T>>,
}

impl<T: Scalar> DiScenario<T> {
    /// Validates index ranges, rejects duplicates, requires real diagonal
    /// values and the normalization entry `χ_{(0,0),(0,0)} = 1`.
    pub fn new(m_a: usize, m_b: usize, constraints: Vec<RawConstraint<T>>) -> Result<Self> {
        let side = (m_a + 1) * (m_b + 1);
        let flat = |(i, j): (usize, usize)| i * (m_b + 1) + j;
        let mut canonical: Vec<MomentConstraint<T>> = Vec::with_capacity(constraints.len());
        for (row, col, value) in constraints {
            if row.0 > m_a || col.0 > m_a || row.1 > m_b || col.1 > m_b {
                return Err(Error::InvalidScenario(format!(
                    "constraint index ({},{}),({},{}) outside m_a={}, m_b={}",
                    row.0, row.1, col.0, col.1, m_a, m_b
                )));
            }
            let (row, col, value) = if flat(row) <= flat(col) {
                (row, col, value)
            } else {
                (col, row, value.conj())
            };
            if row == col && value.im.abs() > T::real(tol::HERMITIAN) {
                return Err(Error::InvalidScenario(format!(
                    "diagonal entry ({},{}) must be real, got imaginary part {}",
                    row.0, row.1, value.im
                )));
            }
            if canonical.iter().any(|c| c.row == row && c.col == col) {
                return Err(Error::InvalidScenario(format!(
                    "duplicate constraint on entry ({},{}),({},{})",
                    row.0, row.1, col.0, col.1
                )));
            }
            canonical.push(MomentConstraint { row, col, value });
        }
        let norm = canonical
            .iter()
            .find(|c| c.row == (0, 0) && c.col == (0, 0));
        match norm {
            Some(c)
                if (c.value - Complex::new(T::one(), T::zero())).norm()
                    <= T::real(tol::HERMITIAN) => {}
            Some(c) => {
                return Err(Error::InvalidScenario(format!(
                    "normalization entry must be 1, got {}",
                    c.value
                )))
            }
            None => {
                return Err(Error::InvalidScenario(
                    "missing normalization entry ((0,0),(0,0)) = 1".into(),
                ))
            }
        }
        let _ = side;
        Ok(Self {
            m_a,
            m_b,
            constraints: canonical,
        })
    }

    /// Scenario fixing every entry of a computed moment matrix.
    pub fn complete(chi: &MomentMatrix<T>) -> Result<Self> {
        let n = chi.dim();
        let (ma, mb) = (chi.m_a(), chi.m_b());
        let unflat = |f: usize| (f / (mb + 1), f % (mb + 1));
        let mut list = Vec::with_capacity(n * (n + 1) / 2);
        for r in 0..n {
            for c in r..n {
                list.push((unflat(r), unflat(c), chi.matrix()[(r, c)]));
            }
        }
        Self::new(ma, mb, list)
    }

    /// Scenario fixing a subset of entries, given as flat `(row, col)`
    /// index pairs; the normalization entry is always included.
    pub fn from_entries(chi: &MomentMatrix<T>, picks: &[(usize, usize)]) -> Result<Self> {
        let (ma, mb) = (chi.m_a(), chi.m_b());
        let unflat = |f: usize| (f / (mb + 1), f % (mb + 1));
        let mut list = vec![((0, 0), (0, 0), chi.matrix()[(0, 0)])];
        for &(r, c) in picks {
            let (r, c) = if r <= c { (r, c) } else { (c, r) };
            if r == 0 && c == 0 {
                continue;
            }
            if list
                .iter()
                .any(|&(rr, cc, _)| (unflat(r), unflat(c)) == (rr, cc))
            {
                continue;
            }
            list.push((unflat(r), unflat(c), chi.matrix()[(r, c)]));
        }
        Self::new(ma, mb, list)
    }

    pub fn m_a(&self) -> usize {
        self.m_a
    }

    pub fn m_b(&self) -> usize {
        self.m_b
    }

    pub fn moment_dim(&self) -> usize {
        (self.m_a + 1) * (self.m_b + 1)
    }

    pub fn constraints(&self) -> &[MomentConstraint<T>] {
        &self.constraints
    }

    fn flat(&self, idx: (usize, usize)) -> usize {
        idx.0 * (self.m_b + 1) + idx.1
    }
}

/// Knobs of the feasibility solver. The defaults implement the documented
/// contract; tests and the CLI use them unchanged.
#[derive(Debug, Clone)]
pub struct SolverOptions<T: Scalar> {
    /// Projection iteration budget per bisection level.
    pub max_iterations: usize,
    /// Residual below which a point counts as feasible.
    pub feasibility_tol: T,
    /// Iterations between explicit residual checks.
    pub check_interval: usize,
    /// Residual checks without meaningful improvement before a level is
    /// declared infeasible (the residual has flatlined at a positive gap).
    pub stall_checks: usize,
    /// No stall verdict before this many iterations.
    pub stall_min_iterations: usize,
    /// Relative residual improvement per check that counts as progress.
    pub stall_rel: T,
    /// Hard cap on bisection levels.
    pub max_levels: usize,
    /// Bisection stops once the bracket is this fraction of the initial
    /// upper level (or `width_abs`, whichever is larger).
    pub width_rel: T,
    pub width_abs: T,
    /// Data-consistency residuals that flatline at or above this are
    /// reported as `Infeasible`; smaller unresolved plateaus (thin PSD
    /// completions the projections cannot finish within budget) fall back
    /// to a stalled zero bound instead of an error.
    pub infeasibility_gap: T,
}

impl<T: Scalar> Default for SolverOptions<T> {
    fn default() -> Self {
        Self {
            max_iterations: 5000,
            feasibility_tol: T::real(tol::SOLVER_FEASIBLE),
            check_interval: 10,
            stall_checks: 20,
            stall_min_iterations: 500,
            stall_rel: T::real(1e-4),
            max_levels: 48,
            width_rel: T::real(1.0 / 256.0),
            width_abs: T::real(1e-7),
            infeasibility_gap: T::real(1e-3),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverStatus {
    /// Bisection reached its width target with clean verdicts.
    Converged,
    /// An iteration budget ran out while a level was still undecided; the
    /// reported bound is the best level proven inconsistent so far (still
    /// a valid lower bound, possibly zero).
    Stalled,
}

/// Result of a device-independent bound computation.
#[derive(Debug, Clone)]
pub struct DiOutcome<T: Scalar> {
    /// Lower bound on the negativity of every state consistent with the
    /// scenario.
    pub bound: T,
    /// Pair `(χ, χ_σ)` witnessing the level just above the bound; on a
    /// `Converged` outcome it passes the feasibility checks at the solver
    /// tolerance, on a `Stalled` one it is the best point found.
    pub certificate: (MomentMatrix<T>, MomentMatrix<T>),
    pub status: SolverStatus,
    /// Residual of the certificate under the explicit feasibility checks.
    pub residual: T,
    /// Final bisection bracket width.
    pub width: T,
    /// Projection iterations spent across all phases.
    pub iterations: usize,
}

/// Lower bound on `N_dim` implied by a negativity bound.
pub fn ndim_lower_bound<T: Scalar>(bound: T) -> T {
    T::real(2.0) * bound + T::one()
}

/// Number of entangled dimensions certified by a negativity bound:
/// `⌈2·bound + 1 − 1e-6⌉`.
pub fn certified_dimensions<T: Scalar>(bound: T) -> usize {
    let v = ndim_lower_bound(bound) - T::real(tol::SOLVER_CEILING);
    (v.ceil().as_f64() as isize).max(1) as usize
}

/// Moment-space partial transpose on a flat matrix.
fn gamma_flat<T: Scalar>(m: &ComplexMatrix<T>, m_a: usize, m_b: usize) -> ComplexMatrix<T> {
    let wb = m_b + 1;
    let mut out = ComplexMatrix::zeros(m.dim());
    for i in 0..=m_a {
        for j in 0..=m_b {
            for k in 0..=m_a {
                for l in 0..=m_b {
                    out[(i * wb + j, k * wb + l)] = m[(k * wb + j, i * wb + l)];
                }
            }
        }
    }
    out
}

struct Projector<'a, T: Scalar> {
    scenario: &'a DiScenario<T>,
}

impl<T: Scalar> Projector<'_, T> {
    fn apply_data(&self, x: &mut ComplexMatrix<T>) {
        for c in self.scenario.constraints() {
            let r = self.scenario.flat(c.row);
            let s = self.scenario.flat(c.col);
            if r == s {
                x[(r, s)] = Complex::new(c.value.re, T::zero());
            } else {
                x[(r, s)] = c.value;
                x[(s, r)] = c.value.conj();
            }
        }
    }

    /// Diagonal indices of χ not pinned by the data.
    fn free_diagonal(&self) -> Vec<usize> {
        let n = self.scenario.moment_dim();
        (0..n)
            .filter(|&u| {
                !self
                    .scenario
                    .constraints()
                    .iter()
                    .any(|c| self.scenario.flat(c.row) == u && self.scenario.flat(c.col) == u)
            })
            .collect()
    }

    /// Contraction cap: free diagonal entries of χ cannot exceed the
    /// normalization (`tr[ρ A_i†A_i ⊗ B_j†B_j] ≤ tr ρ = 1` for Kraus ops).
    fn apply_diag_cap(&self, x: &mut ComplexMatrix<T>, free: &[usize]) {
        for &u in free {
            let v = x[(u, u)].re;
            x[(u, u)] = Complex::new(v.min(T::one()), T::zero());
        }
    }

    /// Diagonal dominance of a positive operator's moment matrix: every
    /// diagonal entry of χ_σ is at most the `(00,00)` entry. Euclidean
    /// projection onto `{max_u y_u ≤ y_0}` by pooling the violators.
    fn apply_diag_dominance(&self, y: &mut ComplexMatrix<T>) {
        let n = y.dim();
        let anchor = y[(0, 0)].re;
        let mut rest: Vec<T> = (1..n).map(|u| y[(u, u)].re).collect();
        let max_rest = rest.iter().fold(T::neg_infinity(), |a, &b| a.max(b));
        if max_rest <= anchor {
            return;
        }
        rest.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
        let mut sum = anchor;
        let mut count = T::one();
        let mut pooled = anchor;
        for &v in &rest {
            if v > pooled {
                sum += v;
                count += T::one();
                pooled = sum / count;
            } else {
                break;
            }
        }
        y[(0, 0)] = Complex::new(pooled, T::zero());
        for u in 1..n {
            let v = y[(u, u)].re;
            y[(u, u)] = Complex::new(v.min(pooled), T::zero());
        }
    }

    fn psd(&self, x: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
        psd_project(x)
    }

    fn gamma_psd(&self, x: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
        let g = gamma_flat(x, self.scenario.m_a, self.scenario.m_b);
        let p = psd_project(&g)?;
        Ok(gamma_flat(&p, self.scenario.m_a, self.scenario.m_b))
    }

    fn data_residual(&self, x: &ComplexMatrix<T>) -> T {
        let mut r = T::zero();
        for c in self.scenario.constraints() {
            let i = self.scenario.flat(c.row);
            let j = self.scenario.flat(c.col);
            r = r.max((x[(i, j)] - c.value).norm());
        }
        r
    }

    fn cap_residual(&self, x: &ComplexMatrix<T>, free: &[usize]) -> T {
        let mut r = T::zero();
        for &u in free {
            r = r.max(x[(u, u)].re - T::one());
        }
        r.max(T::zero())
    }

    fn dominance_residual(&self, y: &ComplexMatrix<T>) -> T {
        let anchor = y[(0, 0)].re;
        let mut r = T::zero();
        for u in 1..y.dim() {
            r = r.max(y[(u, u)].re - anchor);
        }
        r.max(T::zero())
    }

    fn cone_residual(&self, m: &ComplexMatrix<T>) -> Result<T> {
        Ok((-min_eigenvalue(&m.hermitian_part())?).max(T::zero()))
    }

    fn gamma_cone_residual(&self, m: &ComplexMatrix<T>) -> Result<T> {
        self.cone_residual(&gamma_flat(m, self.scenario.m_a, self.scenario.m_b))
    }
}

enum RunVerdict<T: Scalar> {
    Feasible {
        x: ComplexMatrix<T>,
        y: ComplexMatrix<T>,
        iterations: usize,
    },
    Infeasible {
        ambiguous: bool,
        iterations: usize,
    },
}

/// Cyclic projections for the full system at objective level `t`:
/// χ ⪰ 0, χ matches the data and the diagonal cap, χ_σ^Γ ⪰ 0,
/// `(χ + χ_σ)^Γ ⪰ 0`, diag(χ_σ) ≤ (χ_σ)₀₀ ≤ t.
///
/// For a feasibility question plain POCS is the right tool: when the
/// intersection is nonempty the iterates converge to a point of it, and
/// when it is empty the residual flatlines at the positive gap, which the
/// stall detector reads as a clean "no".
fn run_level<T: Scalar>(
    proj: &Projector<'_, T>,
    t: T,
    start: (&ComplexMatrix<T>, &ComplexMatrix<T>),
    opts: &SolverOptions<T>,
) -> Result<RunVerdict<T>> {
    let mut x = start.0.clone();
    let mut y = start.1.clone();
    let free = proj.free_diagonal();

    let tol = opts.feasibility_tol;
    let near_tol = T::real(25.0) * tol;
    let mut best = T::infinity();
    let mut checks_without_progress = 0usize;
    // Over-relaxation of the cone projections speeds up the sublinear tail
    // along thin intersections; any factor below 2 keeps POCS convergent.
    let relax = T::real(1.5);
    let half = T::real(0.5);

    if level_residual(proj, &x, &y, t)? < tol {
        return Ok(RunVerdict::Feasible {
            x,
            y,
            iterations: 0,
        });
    }

    for iter in 1..=opts.max_iterations {
        proj.apply_data(&mut x);
        proj.apply_diag_cap(&mut x, &free);
        let p = proj.psd(&x)?;
        x = &x + &(&p - &x).scaled_real(relax);

        // (X + Y)^Γ PSD is coupled: move both halves by half the shift.
        let d = &x + &y;
        let shift = (&proj.gamma_psd(&d)? - &d).scaled_real(half * relax);
        x = &x + &shift;
        y = &y + &shift;

        let p = proj.gamma_psd(&y)?;
        y = &y + &(&p - &y).scaled_real(relax);
        proj.apply_diag_dominance(&mut y);
        let y00 = y[(0, 0)].re;
        y[(0, 0)] = Complex::new(y00.min(t), T::zero());

        if iter % opts.check_interval == 0 || iter == opts.max_iterations {
            let r = level_residual(proj, &x, &y, t)?;
            if r < tol {
                return Ok(RunVerdict::Feasible {
                    x,
                    y,
                    iterations: iter,
                });
            }
            if r < best * (T::one() - opts.stall_rel) {
                best = r;
                checks_without_progress = 0;
            } else {
                checks_without_progress += 1;
            }
            // A flatline well above tolerance is a positive gap between the
            // constraint sets; a flatline close to tolerance gets the whole
            // budget before the level is given up as undecided.
            let flatlined = iter >= opts.stall_min_iterations
                && checks_without_progress >= opts.stall_checks
                && r > near_tol;
            if flatlined {
                return Ok(RunVerdict::Infeasible {
                    ambiguous: false,
                    iterations: iter,
                });
            }
        }
    }
    // Budget exhausted while the residual was still falling: undecided.
    Ok(RunVerdict::Infeasible {
        ambiguous: true,
        iterations: opts.max_iterations,
    })
}

fn level_residual<T: Scalar>(
    proj: &Projector<'_, T>,
    x: &ComplexMatrix<T>,
    y: &ComplexMatrix<T>,
    t: T,
) -> Result<T> {
    let free = proj.free_diagonal();
    let r_data = proj.data_residual(x);
    let r_cap = proj.cap_residual(x, &free);
    let r_x = proj.cone_residual(x)?;
    let r_sum = proj.gamma_cone_residual(&(x + y))?;
    let r_y = proj.gamma_cone_residual(y)?;
    let r_dom = proj.dominance_residual(y);
    let r_level = (y[(0, 0)].re - t).max(T::zero());
    Ok(r_data
        .max(r_cap)
        .max(r_x)
        .max(r_sum)
        .max(r_y)
        .max(r_dom)
        .max(r_level))
}

/// Douglas-Rachford splitting on χ alone: is any PSD, diagonally capped
/// moment matrix consistent with the data?
///
/// The data pins and the diagonal cap act on disjoint coordinates, so
/// applying both is the exact projection onto their intersection; the PSD
/// cone is the second set. The shadow iterate `P_E(z)` satisfies the data
/// exactly, so its only residual is the cone violation.
fn data_feasibility<T: Scalar>(
    proj: &Projector<'_, T>,
    opts: &SolverOptions<T>,
) -> Result<(ComplexMatrix<T>, usize, T)> {
    let n = proj.scenario.moment_dim();
    let free = proj.free_diagonal();
    let tol = opts.feasibility_tol;
    let mut best = T::infinity();
    let mut checks_without_progress = 0usize;

    let pin = |m: &ComplexMatrix<T>| {
        let mut out = m.clone();
        proj.apply_data(&mut out);
        proj.apply_diag_cap(&mut out, &free);
        out
    };

    // A small unresolved plateau is not proof of inconsistency — thin PSD
    // completions of rank-deficient data converge sublinearly — so only a
    // clear gap becomes an `Infeasible` error; otherwise the best shadow
    // point is handed on with its residual.
    let give_up = |r: T, shadow: ComplexMatrix<T>, iter: usize| -> Result<(ComplexMatrix<T>, usize, T)> {
        if r >= opts.infeasibility_gap {
            Err(Error::Infeasible {
                residual: r.as_f64(),
            })
        } else {
            Ok((shadow, iter, r))
        }
    };

    let mut z = pin(&ComplexMatrix::identity(n));
    // Fully pinned scenarios from exact data are feasible immediately.
    let r0 = proj.cone_residual(&z)?;
    if r0 < tol {
        return Ok((z, 0, r0));
    }

    for iter in 1..=opts.max_iterations {
        let a = pin(&z);
        let reflected = &a.scaled_real(T::real(2.0)) - &z;
        let b = proj.psd(&reflected)?;
        z = &(&z + &b) - &a;

        if iter % opts.check_interval == 0 || iter == opts.max_iterations {
            let shadow = pin(&z);
            let r = proj.cone_residual(&shadow)?;
            if r < tol {
                return Ok((shadow, iter, r));
            }
            if r < best * (T::one() - opts.stall_rel) {
                best = r;
                checks_without_progress = 0;
            } else {
                checks_without_progress += 1;
            }
            if iter >= opts.stall_min_iterations && checks_without_progress >= opts.stall_checks {
                return give_up(r, shadow, iter);
            }
        }
    }
    let shadow = pin(&z);
    let r = proj.cone_residual(&shadow)?;
    give_up(r, shadow, opts.max_iterations)
}

/// Computes the device-independent lower bound on the negativity for a
/// scenario, by bisection over the objective level.
///
/// Returns `Infeasible` when no PSD moment matrix matches the constraints.
/// When an iteration budget runs out mid-decision the outcome is flagged
/// [`SolverStatus::Stalled`] and the bound reported is the largest level
/// proven inconsistent before the stall — still a valid lower bound.
pub fn di_lower_bound<T: Scalar>(
    scenario: &DiScenario<T>,
    opts: &SolverOptions<T>,
) -> Result<DiOutcome<T>> {
    let proj = Projector { scenario };
    let (ma, mb) = (scenario.m_a, scenario.m_b);
    let mut total_iters = 0usize;

    let (x_feas, iters, data_residual) = data_feasibility(&proj, opts)?;
    let data_ok = data_residual < opts.feasibility_tol;
    total_iters += iters;

    // Feasible starting pair: χ_σ from the Γ-negative part of the data
    // point, with enough weight moved onto the (00,00) entry to satisfy
    // diagonal dominance (adding to that entry keeps both cones happy).
    let q = negative_part(&gamma_flat(&x_feas, ma, mb))?;
    let mut y_up = gamma_flat(&q, ma, mb);
    let max_diag = (0..y_up.dim())
        .map(|u| y_up[(u, u)].re)
        .fold(T::zero(), T::max);
    y_up[(0, 0)] = Complex::new(max_diag, T::zero());
    let t_up = y_up[(0, 0)].re.max(T::zero());

    let wrap = |m: ComplexMatrix<T>| MomentMatrix::new(ma, mb, m);
    let finish = |x: ComplexMatrix<T>,
                  y: ComplexMatrix<T>,
                  bound: T,
                  status: SolverStatus,
                  width: T,
                  iters: usize|
     -> Result<DiOutcome<T>> {
        let residual = level_residual(&proj, &x, &y, y[(0, 0)].re + T::real(tol::SOLVER_FEASIBLE))?;
        Ok(DiOutcome {
            bound,
            certificate: (wrap(x), wrap(y)),
            status,
            residual,
            width,
            iterations: iters,
        })
    };

    if data_ok && t_up <= opts.width_abs {
        return finish(
            x_feas,
            y_up,
            T::zero(),
            SolverStatus::Converged,
            t_up,
            total_iters,
        );
    }

    // The objective is never negative, so a feasible level 0 is optimal.
    // This also covers the case of an unresolved data plateau: the level
    // run enforces every constraint jointly and may still verify a point.
    match run_level(&proj, T::zero(), (&x_feas, &y_up), opts)? {
        RunVerdict::Feasible {
            x, y, iterations, ..
        } => {
            total_iters += iterations;
            return finish(
                x,
                y,
                T::zero(),
                SolverStatus::Converged,
                T::zero(),
                total_iters,
            );
        }
        RunVerdict::Infeasible {
            ambiguous,
            iterations,
        } => {
            total_iters += iterations;
            if ambiguous || !data_ok {
                // Nothing above level 0 would fare better when even the
                // data completion cannot be certified; report the trivial
                // bound and flag the stall.
                return finish(
                    x_feas,
                    y_up,
                    T::zero(),
                    SolverStatus::Stalled,
                    t_up,
                    total_iters,
                );
            }
        }
    }

    let width_target = opts.width_abs.max(t_up * opts.width_rel);
    let mut lo = T::zero();
    let mut hi = t_up;
    let mut cert = (x_feas, y_up);
    let mut status = SolverStatus::Converged;
    let mut levels = 0usize;

    while hi - lo > width_target && levels < opts.max_levels {
        levels += 1;
        let mid = (lo + hi) * T::real(0.5);
        match run_level(&proj, mid, (&cert.0, &cert.1), opts)? {
            RunVerdict::Feasible {
                x, y, iterations, ..
            } => {
                total_iters += iterations;
                hi = mid;
                cert = (x, y);
            }
            RunVerdict::Infeasible {
                ambiguous,
                iterations,
            } => {
                total_iters += iterations;
                if ambiguous {
                    status = SolverStatus::Stalled;
                    break;
                }
                lo = mid;
            }
        }
    }
    if levels >= opts.max_levels && hi - lo > width_target {
        status = SolverStatus::Stalled;
    }

    let (x, y) = cert;
    finish(x, y, lo, status, hi - lo, total_iters)
}

/// Builds the complete scenario of a known state and measurement set —
/// the test harness for soundness checks.
pub fn scenario_from_state<T: Scalar>(
    s: &BipartiteState<T>,
    meas: &MeasurementSet<T>,
) -> Result<DiScenario<T>> {
    let chi = crate::moment::moment_matrix(s, meas)?;
    DiScenario::complete(&chi)
}
