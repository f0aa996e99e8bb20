//! Brute-force reference computations over integer grids.
//!
//! These are slow and exist to check the closed-form routines. They use
//! their own evaluation of linear forms and distances instead of the
//! library's, so a bug in one is not hidden by the same bug in the other.

use crate::extreal::{ExtendedReal, Finite, NegInf, PosInf};
use crate::halfspace::HalfSpace;
use crate::linalg::{RowVector, TropicalMatrix, TropicalVector};
use crate::semimodule::GeneratedSemimodule;

type E = ExtendedReal<i64>;
type V = TropicalVector<i64>;

/// Integer grid `{low, low + step, …, ≤ high}` in every coordinate, optionally
/// with `−∞` and `+∞` added.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub low: i64,
    pub high: i64,
    pub step: i64,
    pub neg_inf: bool,
    pub pos_inf: bool,
}

impl GridSpec {
    pub fn new(low: i64, high: i64) -> Self {
        assert!(low <= high, "empty grid range");
        Self {
            low,
            high,
            step: 1,
            neg_inf: false,
            pos_inf: false,
        }
    }

    pub fn with_neg_inf(mut self) -> Self {
        self.neg_inf = true;
        self
    }

    pub fn with_pos_inf(mut self) -> Self {
        self.pos_inf = true;
        self
    }

    pub fn with_step(mut self, step: i64) -> Self {
        assert!(step > 0, "step must be positive");
        self.step = step;
        self
    }

    /// Values of one coordinate, in increasing order.
    pub fn values(&self) -> Vec<E> {
        let mut out = Vec::new();
        if self.neg_inf {
            out.push(NegInf);
        }
        let mut v = self.low;
        while v <= self.high {
            out.push(Finite(v));
            v += self.step;
        }
        if self.pos_inf {
            out.push(PosInf);
        }
        out
    }

    /// Every grid point of dimension `n`, in lexicographic order.
    pub fn points(&self, n: usize) -> GridPoints {
        GridPoints {
            values: self.values(),
            idx: vec![0; n],
            done: n == 0,
        }
    }
}

pub struct GridPoints {
    values: Vec<E>,
    idx: Vec<usize>,
    done: bool,
}

impl Iterator for GridPoints {
    type Item = V;

    fn next(&mut self) -> Option<V> {
        if self.done {
            return None;
        }
        let point = V::new(self.idx.iter().map(|&i| self.values[i]).collect()).expect("n > 0");
        let mut k = self.idx.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.idx[k] += 1;
            if self.idx[k] < self.values.len() {
                break;
            }
            self.idx[k] = 0;
        }
        Some(point)
    }
}

fn add(a: E, b: E) -> E {
    match (a, b) {
        (NegInf, _) | (_, NegInf) => NegInf,
        (PosInf, _) | (_, PosInf) => PosInf,
        (Finite(x), Finite(y)) => Finite(x + y),
    }
}

fn form(a: &RowVector<i64>, h: &V) -> E {
    (0..h.len()).map(|i| add(a[i], h[i])).fold(NegInf, E::max)
}

fn le(x: &V, y: &V) -> bool {
    (0..x.len()).all(|i| x[i] <= y[i])
}

fn sup(x: &V, y: &V) -> V {
    V::new((0..x.len()).map(|i| x[i].max(y[i])).collect()).expect("n > 0")
}

/// Hilbert's distance by cases: `+∞` when the infinity patterns differ,
/// `max − min` of `x − y` over the common finite support, and `−∞` for two
/// equal vectors without finite entries.
pub fn direct_distance(x: &V, y: &V) -> E {
    let n = x.len();
    for i in 0..n {
        let same_tag = match (x[i], y[i]) {
            (Finite(_), Finite(_)) => true,
            (a, b) => a == b,
        };
        if !same_tag {
            return PosInf;
        }
    }
    let diffs: Vec<i64> = (0..n)
        .filter_map(|i| match (x[i], y[i]) {
            (Finite(a), Finite(b)) => Some(a - b),
            _ => None,
        })
        .collect();
    match (diffs.iter().max(), diffs.iter().min()) {
        (Some(hi), Some(lo)) => Finite(hi - lo),
        _ => NegInf,
    }
}

/// Minimum of `d(x, h)` over grid points `h ∈ H`, with every minimizer in
/// lexicographic order. An empty feasible grid gives `+∞`.
pub fn grid_min_distance(h: &HalfSpace<i64>, x: &V, grid: &GridSpec) -> (E, Vec<V>) {
    let mut best = PosInf;
    let mut argmins = Vec::new();
    for p in grid.points(x.len()) {
        if form(h.a(), &p) < form(h.b(), &p) {
            continue;
        }
        let d = direct_distance(x, &p);
        if d < best {
            best = d;
            argmins.clear();
        }
        if d == best && d != PosInf {
            argmins.push(p);
        }
    }
    (best, argmins)
}

/// Entrywise maximum of the grid points of `H` below `x`.
pub fn grid_projection_halfspace(h: &HalfSpace<i64>, x: &V, grid: &GridSpec) -> V {
    let mut best = V::bottom(x.len());
    for p in grid.points(x.len()) {
        if le(&p, x) && form(h.a(), &p) >= form(h.b(), &p) {
            best = sup(&best, &p);
        }
    }
    best
}

/// Every combination `sup_i g_i λ_i` with scalars `λ_i` from `scalars`.
pub fn grid_semimodule_elements(v: &GeneratedSemimodule<i64>, scalars: &GridSpec) -> Vec<V> {
    let q = v.generators().len();
    let n = v.dim();
    if q == 0 {
        return vec![V::bottom(n)];
    }
    scalars
        .points(q)
        .map(|lams| {
            v.generators()
                .iter()
                .zip(lams.iter())
                .fold(V::bottom(n), |acc, (g, &lam)| {
                    let scaled = V::new(g.iter().map(|&e| add(e, lam)).collect()).expect("n > 0");
                    sup(&acc, &scaled)
                })
        })
        .collect()
}

/// Entrywise maximum of the enumerated elements of `V` below `x`.
pub fn grid_projection_semimodule(v: &GeneratedSemimodule<i64>, x: &V, scalars: &GridSpec) -> V {
    grid_semimodule_elements(v, scalars)
        .iter()
        .filter(|y| le(y, x))
        .fold(V::bottom(x.len()), |acc, y| sup(&acc, y))
}

/// `Bx ≤ y ⟺ x ≤ B♯y` for every grid `x` and `y`.
pub fn grid_galois(b: &TropicalMatrix<i64>, grid: &GridSpec) -> bool {
    grid_galois_with(b, grid, |m, y| m.residuated_apply(y).expect("matching dimensions"))
}

/// As [`grid_galois`], with the residual supplied by the caller.
pub fn grid_galois_with(b: &TropicalMatrix<i64>, grid: &GridSpec, residual: impl Fn(&TropicalMatrix<i64>, &V) -> V) -> bool {
    let ys: Vec<(V, V)> = grid
        .points(b.nrows())
        .map(|y| {
            let r = residual(b, &y);
            (y, r)
        })
        .collect();
    grid.points(b.ncols()).all(|x| {
        let bx = V::new(b.rows().iter().map(|r| form(r, &x)).collect()).expect("p > 0");
        ys.iter().all(|(y, r)| le(&bx, y) == le(&x, r))
    })
}
