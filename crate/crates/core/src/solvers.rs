//! Solvers for two-sided systems `Ax ≥ Bx`.
//!
//! Both algorithms start from `u` and decrease to `P_V(u)`, the greatest
//! solution below `u`. The cyclic algorithm projects onto one row half-space
//! at a time; the power algorithm iterates `η ← B♯Aη ∧ η`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extreal::{ExtendedReal, NegInf, PosInf};
use crate::halfspace::{Classification, HalfSpace};
use crate::linalg::{TropicalMatrix, TropicalVector};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalitySystem<T> {
    a: TropicalMatrix<T>,
    b: TropicalMatrix<T>,
}

impl<T: Scalar> InequalitySystem<T> {
    pub fn new(a: TropicalMatrix<T>, b: TropicalMatrix<T>) -> Result<Self> {
        if a.nrows() != b.nrows() {
            return Err(Error::Dimension {
                expected: a.nrows(),
                found: b.nrows(),
            });
        }
        if a.ncols() != b.ncols() {
            return Err(Error::Dimension {
                expected: a.ncols(),
                found: b.ncols(),
            });
        }
        for m in [&a, &b] {
            for row in m.rows() {
                if let Some(j) = row.iter().position(|e| *e == PosInf) {
                    return Err(Error::PositiveInfinity(j));
                }
            }
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &TropicalMatrix<T> {
        &self.a
    }

    pub fn b(&self) -> &TropicalMatrix<T> {
        &self.b
    }

    /// Number of inequalities `p`.
    pub fn nrows(&self) -> usize {
        self.a.nrows()
    }

    /// Number of unknowns `n`.
    pub fn ncols(&self) -> usize {
        self.a.ncols()
    }

    /// The half-space `{h | A_j h ≥ B_j h}` of row `j`.
    pub fn row_halfspace(&self, j: usize) -> HalfSpace<T> {
        HalfSpace::new(self.a.row(j).clone(), self.b.row(j).clone()).expect("validated rows")
    }

    pub fn is_satisfied(&self, x: &TropicalVector<T>) -> Result<bool> {
        if self.nrows() == 0 {
            return Ok(true);
        }
        Ok(self.a.apply(x)?.ge(&self.b.apply(x)?))
    }

    /// `x = B♯Ax ∧ x`, the fixed-point form of `Bx ≤ Ax`.
    pub fn is_power_fixed_point(&self, x: &TropicalVector<T>) -> Result<bool> {
        if self.nrows() == 0 {
            return Ok(true);
        }
        let next = self.b.residuated_apply(&self.a.apply(x)?)?.meet(x)?;
        Ok(&next == x)
    }

    /// Every column of `B` must have a finite entry for `B♯` to be finite.
    pub fn check_admissible(&self) -> Result<()> {
        match self.b.empty_column() {
            Some(column) => Err(Error::Inadmissible { column }),
            None => Ok(()),
        }
    }

    /// Spread `max − min` of the finite entries of `A` and `B`.
    fn entry_spread(&self) -> f64 {
        let vals: Vec<f64> = self
            .a
            .finite_entries()
            .chain(self.b.finite_entries())
            .map(|v| v.to_f64())
            .collect();
        let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
        if vals.is_empty() {
            0.0
        } else {
            hi - lo
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Cyclic,
    Power,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SolveStatus {
    Solved,
    BottomReached,
    IterationCapHit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    /// Sweeps for the cyclic algorithm, steps for the power algorithm.
    pub max_iterations: usize,
    /// Stopping tolerance for inexact payloads; exact payloads stop on equality.
    pub tolerance: f64,
    pub trace: bool,
    /// Coordinates falling more than `n × cap` below `min u` are set to `−∞`.
    /// `None` derives `cap = n (W + 1)` from the spread `W` of the entries.
    pub distance_cap: Option<i64>,
    pub divergence_guard: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            max_iterations: 100_000,
            tolerance: 1e-9,
            trace: false,
            distance_cap: None,
            divergence_guard: true,
        }
    }
}

/// Successive iterates, starting with `u` and ending with the confirming step.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace<T> {
    pub points: Vec<TropicalVector<T>>,
    pub kind: Method,
    /// `p` for the cyclic algorithm, `1` for the power algorithm.
    pub cycle_length: usize,
}

impl<T: Scalar> Serialize for IterationTrace<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.points.serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct SolveReport<T: Scalar> {
    pub method: Method,
    pub status: SolveStatus,
    pub solution: TropicalVector<T>,
    /// Sweeps (cyclic) or steps (power) until the limit was first reached.
    pub iterations: usize,
    /// Single projections (cyclic) or steps (power) performed, including the
    /// confirming pass.
    pub steps: usize,
    /// Finite matrix entries visited.
    pub operations: u64,
    /// The cap `D` behind the divergence guard, `+∞` when the guard is off.
    pub distance_bound_used: ExtendedReal<T>,
    /// Coordinates the divergence guard sent to `−∞`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub truncated: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<IterationTrace<T>>,
}

struct Guard<T> {
    floor: Option<T>,
    cap: ExtendedReal<T>,
    truncated: Vec<usize>,
}

impl<T: Scalar> Guard<T> {
    fn new(sys: &InequalitySystem<T>, u: &TropicalVector<T>, opts: &SolveOptions) -> Self {
        let n = sys.ncols() as i64;
        let min_u = u.iter().filter_map(|e| e.finite()).fold(None, |acc: Option<T>, v| {
            Some(match acc {
                Some(m) if m <= v => m,
                _ => v,
            })
        });
        if !opts.divergence_guard {
            return Self {
                floor: None,
                cap: PosInf,
                truncated: Vec::new(),
            };
        }
        let cap = opts
            .distance_cap
            .unwrap_or_else(|| n * (sys.entry_spread().ceil() as i64 + 1));
        Self {
            floor: min_u.map(|m| m - T::from_i64(n.saturating_mul(cap))),
            cap: ExtendedReal::from_i64(cap),
            truncated: Vec::new(),
        }
    }

    fn apply(&mut self, x: &mut TropicalVector<T>, k: usize) {
        if let (Some(floor), ExtendedReal::Finite(v)) = (self.floor, x[k]) {
            if v < floor {
                x.set(k, NegInf);
                if let Err(pos) = self.truncated.binary_search(&k) {
                    self.truncated.insert(pos, k);
                }
            }
        }
    }
}

fn sparse(row: &crate::linalg::RowVector<impl Scalar>) -> Vec<usize> {
    row.support()
}

enum Row<T> {
    Skip,
    Bottom,
    Project {
        a: Vec<(usize, ExtendedReal<T>)>,
        b: Vec<(usize, ExtendedReal<T>)>,
    },
}

fn prepare_rows<T: Scalar>(sys: &InequalitySystem<T>) -> Vec<Row<T>> {
    (0..sys.nrows())
        .map(|j| {
            let h = sys.row_halfspace(j);
            match h.classify() {
                Classification::Everything => Row::Skip,
                Classification::BottomOnly => Row::Bottom,
                Classification::Proper => {
                    let c = h.canonicalize().expect("proper");
                    Row::Project {
                        a: sparse(&c.a_prime).into_iter().map(|i| (i, c.a_prime[i])).collect(),
                        b: sparse(&c.b_prime).into_iter().map(|i| (i, c.b_prime[i])).collect(),
                    }
                }
            }
        })
        .collect()
}

fn check_start<T: Scalar>(sys: &InequalitySystem<T>, u: &TropicalVector<T>) -> Result<()> {
    if u.len() != sys.ncols() {
        return Err(Error::Dimension {
            expected: sys.ncols(),
            found: u.len(),
        });
    }
    u.check_rmax()
}

fn change<T: Scalar>(old: &TropicalVector<T>, new: &TropicalVector<T>) -> f64 {
    old.max_abs_change(new)
}

fn settled<T: Scalar>(old: &TropicalVector<T>, new: &TropicalVector<T>, tol: f64) -> bool {
    if T::EXACT {
        old == new
    } else {
        change(old, new) <= tol
    }
}

fn final_status<T: Scalar>(x: &TropicalVector<T>, converged: bool) -> SolveStatus {
    if !converged {
        SolveStatus::IterationCapHit
    } else if x.is_bottom() {
        SolveStatus::BottomReached
    } else {
        SolveStatus::Solved
    }
}

/// Cyclic projection: `ξ^{k+1} = P_{H_{(k+1 mod p)}}(ξ^k)`, rows in order.
///
/// Stops after a full sweep that leaves `ξ` unchanged.
pub fn cyclic_solve<T: Scalar>(
    sys: &InequalitySystem<T>,
    u: &TropicalVector<T>,
    opts: &SolveOptions,
) -> Result<SolveReport<T>> {
    check_start(sys, u)?;
    let p = sys.nrows();
    let rows = prepare_rows(sys);
    let mut guard = Guard::new(sys, u, opts);
    let mut xi = u.clone();
    let mut points = vec![xi.clone()];
    let mut steps = 0usize;
    let mut last_change = 0usize;
    let mut operations = 0u64;
    let mut sweeps = 0usize;
    let mut converged = p == 0;

    while !converged && sweeps < opts.max_iterations {
        let start = xi.clone();
        for row in &rows {
            steps += 1;
            let before = if T::EXACT { None } else { Some(xi.clone()) };
            let mut moved = false;
            match row {
                Row::Skip => {}
                Row::Bottom => {
                    if !xi.is_bottom() {
                        xi = TropicalVector::bottom(xi.len());
                        moved = true;
                    }
                }
                Row::Project { a, b } => {
                    operations += (a.len() + b.len()) as u64;
                    let ax = a.iter().map(|&(i, c)| c.lower_add(xi[i])).max().unwrap_or(NegInf);
                    for &(k, c) in b {
                        let bound = c.residual(ax);
                        if bound < xi[k] {
                            xi.set(k, bound);
                            guard.apply(&mut xi, k);
                            moved = true;
                        }
                    }
                }
            }
            if let Some(before) = before {
                moved = change(&before, &xi) > opts.tolerance;
            }
            if moved {
                last_change = steps;
            }
            if opts.trace {
                points.push(xi.clone());
            }
        }
        sweeps += 1;
        converged = settled(&start, &xi, opts.tolerance) || xi.is_bottom();
    }

    Ok(SolveReport {
        method: Method::Cyclic,
        status: final_status(&xi, converged),
        iterations: if converged { last_change.div_ceil(p.max(1)) } else { sweeps },
        steps,
        operations,
        distance_bound_used: guard.cap,
        truncated: guard.truncated,
        trace: opts.trace.then_some(IterationTrace {
            points,
            kind: Method::Cyclic,
            cycle_length: p,
        }),
        solution: xi,
    })
}

/// Power algorithm: `η^{k+1} = B♯Aη^k ∧ η^k`.
///
/// A column of `B` without finite entries contributes `+∞` to `B♯Aη`, so the
/// meet keeps `η_j` there; [`InequalitySystem::check_admissible`] reports
/// such columns for callers that want to refuse them.
pub fn power_solve<T: Scalar>(
    sys: &InequalitySystem<T>,
    u: &TropicalVector<T>,
    opts: &SolveOptions,
) -> Result<SolveReport<T>> {
    check_start(sys, u)?;
    let a_rows: Vec<Vec<usize>> = sys.a.rows().iter().map(sparse).collect();
    let b_rows: Vec<Vec<usize>> = sys.b.rows().iter().map(sparse).collect();
    let per_step = a_rows.iter().chain(&b_rows).map(Vec::len).sum::<usize>() as u64;
    let n = sys.ncols();
    let mut guard = Guard::new(sys, u, opts);
    let mut eta = u.clone();
    let mut points = vec![eta.clone()];
    let mut steps = 0usize;
    let mut operations = 0u64;
    let mut last_change = 0usize;
    let mut converged = sys.nrows() == 0;

    while !converged && steps < opts.max_iterations {
        steps += 1;
        operations += per_step;
        let mut next = eta.clone();
        for (i, cols) in a_rows.iter().enumerate() {
            let ai = cols
                .iter()
                .map(|&j| sys.a.get(i, j).lower_add(eta[j]))
                .max()
                .unwrap_or(NegInf);
            for &j in &b_rows[i] {
                let bound = sys.b.get(i, j).residual(ai);
                if bound < next[j] {
                    next.set(j, bound);
                }
            }
        }
        for k in 0..n {
            guard.apply(&mut next, k);
        }
        let still = settled(&eta, &next, opts.tolerance);
        if !still {
            last_change = steps;
        }
        converged = still || next.is_bottom();
        eta = next;
        if opts.trace {
            points.push(eta.clone());
        }
    }

    Ok(SolveReport {
        method: Method::Power,
        status: final_status(&eta, converged),
        iterations: if converged { last_change } else { steps },
        steps,
        operations,
        distance_bound_used: guard.cap,
        truncated: guard.truncated,
        trace: opts.trace.then_some(IterationTrace {
            points,
            kind: Method::Power,
            cycle_length: 1,
        }),
        solution: eta,
    })
}

/// Checks `P_V(u) ≤ ξ^{pk} ≤ η^k` for `k = 0..=k_max`, taking `P_V(u)` as the
/// cyclic limit. Iterates past convergence are the limits themselves.
pub fn sandwich_check<T: Scalar>(
    sys: &InequalitySystem<T>,
    u: &TropicalVector<T>,
    k_max: usize,
) -> Result<bool> {
    let opts = SolveOptions {
        trace: true,
        ..SolveOptions::default()
    };
    let cyclic = cyclic_solve(sys, u, &opts)?;
    let power = power_solve(sys, u, &opts)?;
    let xi = &cyclic.trace.as_ref().expect("traced").points;
    let eta = &power.trace.as_ref().expect("traced").points;
    let p = sys.nrows();
    let at = |pts: &[TropicalVector<T>], k: usize| pts[k.min(pts.len() - 1)].clone();
    Ok((0..=k_max).all(|k| {
        let x = at(xi, p * k);
        let e = at(eta, k);
        cyclic.solution.le(&x) && x.le(&e)
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility<T> {
    FiniteSolution(TropicalVector<T>),
    OnlyBottom,
}

/// Decides whether `Ax ≥ Bx` has a solution other than `−∞`, starting the
/// cyclic algorithm from a finite `u`.
///
/// `OnlyBottom` on unbounded descent relies on the divergence guard, an
/// engineering cutoff rather than a certificate.
pub fn feasibility<T: Scalar>(
    sys: &InequalitySystem<T>,
    u: &TropicalVector<T>,
    opts: &SolveOptions,
) -> Result<Feasibility<T>> {
    if !u.is_finite() {
        return Err(Error::Usage("the initial vector must be finite".into()));
    }
    let report = cyclic_solve(sys, u, opts)?;
    match report.status {
        SolveStatus::IterationCapHit => Err(Error::IterationCap {
            iterations: report.iterations,
        }),
        SolveStatus::BottomReached => Ok(Feasibility::OnlyBottom),
        SolveStatus::Solved => Ok(Feasibility::FiniteSolution(report.solution)),
    }
}
