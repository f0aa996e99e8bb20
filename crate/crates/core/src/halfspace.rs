//! Closed half-spaces `{h | ah ≥ bh}` of `R_max^n`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extreal::{ExtendedReal, NegInf, PosInf};
use crate::linalg::{RowVector, TropicalVector};
use crate::metric::IndexSet;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Classification {
    /// `a ≥ b` entrywise, so every vector satisfies the inequality.
    Everything,
    /// `a_i < b_i` for every `i`; only the bottom vector is left.
    BottomOnly,
    Proper,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Everything => "the half-space is the whole space",
            Classification::BottomOnly => "the half-space contains only the bottom vector",
            Classification::Proper => "proper",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfSpace<T> {
    a: RowVector<T>,
    b: RowVector<T>,
}

fn check_coefficients<T: Scalar>(r: &RowVector<T>) -> Result<()> {
    match r.iter().position(|e| *e == PosInf) {
        Some(i) => Err(Error::PositiveInfinity(i)),
        None => Ok(()),
    }
}

fn check_point<T: Scalar>(h: &HalfSpace<T>, x: &TropicalVector<T>) -> Result<()> {
    if x.len() != h.dim() {
        return Err(Error::Dimension {
            expected: h.dim(),
            found: x.len(),
        });
    }
    x.check_rmax()
}

impl<T: Scalar> HalfSpace<T> {
    /// Coefficients live in `R_max`; `+∞` is rejected.
    pub fn new(a: RowVector<T>, b: RowVector<T>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::Dimension {
                expected: a.len(),
                found: b.len(),
            });
        }
        check_coefficients(&a)?;
        check_coefficients(&b)?;
        Ok(Self { a, b })
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &RowVector<T> {
        &self.a
    }

    pub fn b(&self) -> &RowVector<T> {
        &self.b
    }

    pub fn contains(&self, h: &TropicalVector<T>) -> Result<bool> {
        Ok(self.a.apply(h)? >= self.b.apply(h)?)
    }

    pub fn classify(&self) -> Classification {
        let pairs = || self.a.iter().zip(self.b.iter());
        if pairs().all(|(a, b)| a >= b) {
            Classification::Everything
        } else if pairs().all(|(a, b)| a < b) {
            Classification::BottomOnly
        } else {
            Classification::Proper
        }
    }

    /// Truncates the coefficients to disjoint supports without changing the set.
    pub fn canonicalize(&self) -> Result<CanonicalHalfSpace<T>> {
        match self.classify() {
            Classification::Proper => Ok(self.truncate()),
            other => Err(Error::Degenerate(other)),
        }
    }

    fn truncate(&self) -> CanonicalHalfSpace<T> {
        let n = self.dim();
        let mut a = vec![NegInf; n];
        let mut b = vec![NegInf; n];
        for i in 0..n {
            if self.a[i] >= self.b[i] {
                a[i] = self.a[i];
            } else {
                b[i] = self.b[i];
            }
        }
        let a_prime = RowVector::new(a).expect("n > 0");
        let b_prime = RowVector::new(b).expect("n > 0");
        let i_set = IndexSet::new(a_prime.support(), n).expect("in range");
        let j_set = IndexSet::new(b_prime.support(), n).expect("in range");
        CanonicalHalfSpace {
            a_prime,
            b_prime,
            i_set,
            j_set,
        }
    }

    /// `P_H(x)`, the greatest element of `H` below `x`.
    pub fn project(&self, x: &TropicalVector<T>) -> Result<TropicalVector<T>> {
        check_point(self, x)?;
        if self.contains(x)? {
            return Ok(x.clone());
        }
        match self.classify() {
            Classification::Everything => Ok(x.clone()),
            Classification::BottomOnly => Ok(TropicalVector::bottom(self.dim())),
            Classification::Proper => {
                let c = self.truncate();
                let ax = c.a_prime.apply(x)?;
                x.meet(&c.b_prime.residuated_preimage(ax))
            }
        }
    }

    /// `d(x, H) = a′x \ bx` for `x ∉ H`.
    ///
    /// For `x ∈ H` this is `0`, or `−∞` when `x` is the bottom vector.
    pub fn distance(&self, x: &TropicalVector<T>) -> Result<ExtendedReal<T>> {
        check_point(self, x)?;
        if self.contains(x)? {
            return Ok(if x.is_bottom() { NegInf } else { ExtendedReal::zero() });
        }
        match self.classify() {
            Classification::Everything => Ok(ExtendedReal::zero()),
            Classification::BottomOnly => Ok(PosInf),
            Classification::Proper => {
                let c = self.truncate();
                Ok(c.a_prime.apply(x)?.residual(self.b.apply(x)?))
            }
        }
    }

    /// Every best approximation of `x` in `H`, as a union of faces.
    pub fn best_approx_set(&self, x: &TropicalVector<T>) -> Result<BestApprox<T>> {
        let setup = match self.argmax_setup(x)? {
            Setup::Finite(s) => s,
            Setup::Infinite => return Ok(BestApprox::InfiniteDistance),
        };
        let FiniteSetup { c, ax, bx, p } = setup;
        let n = self.dim();
        let argmax_b: Vec<usize> = argmax(&c.b_prime, x);
        let faces = argmax(&c.a_prime, x)
            .into_iter()
            .map(|pivot| {
                let mut fixed = BTreeMap::new();
                let mut bounds = BTreeMap::new();
                fixed.insert(pivot, c.a_prime[pivot].negate());
                for &j in &argmax_b {
                    fixed.insert(j, c.b_prime[j].negate());
                }
                for k in (0..n).filter(|k| !fixed.contains_key(k)) {
                    bounds.insert(k, (x[k].lower_sub(bx), p[k].lower_sub(ax)));
                }
                FaceBox {
                    pivot,
                    fixed,
                    bounds,
                }
            })
            .collect();
        Ok(BestApprox::Faces(BestApproxSet {
            distance: ax.residual(bx),
            faces,
        }))
    }

    /// Checks `a′h ≥ b′h ≠ −∞` and `x + (bx)⁻¹(a′h) ≤ h ≤ x + (a′x)⁻¹(b′h)`.
    ///
    /// Returns `Err(InfiniteDistance)` when `d(x, H) = +∞`.
    pub fn is_best_approx(&self, x: &TropicalVector<T>, h: &TropicalVector<T>) -> Result<bool> {
        check_point(self, h)?;
        let FiniteSetup { c, ax, bx, .. } = match self.argmax_setup(x)? {
            Setup::Finite(s) => s,
            Setup::Infinite => return Err(Error::InfiniteDistance),
        };
        let ah = c.a_prime.apply(h)?;
        let bh = c.b_prime.apply(h)?;
        if ah < bh || bh == NegInf {
            return Ok(false);
        }
        let lower = x.scale(ah.lower_sub(bx));
        let upper = x.scale(bh.lower_sub(ax));
        Ok(lower.le(h) && h.le(&upper))
    }

    fn argmax_setup(&self, x: &TropicalVector<T>) -> Result<Setup<T>> {
        check_point(self, x)?;
        if self.contains(x)? {
            return Err(Error::PointInside);
        }
        let class = self.classify();
        if class == Classification::BottomOnly {
            return Ok(Setup::Infinite);
        }
        // x ∉ H rules out Everything
        let c = self.truncate();
        let ax = c.a_prime.apply(x)?;
        if ax == NegInf {
            return Ok(Setup::Infinite);
        }
        let bx = self.b.apply(x)?;
        let p = x.meet(&c.b_prime.residuated_preimage(ax))?;
        Ok(Setup::Finite(FiniteSetup { c, ax, bx, p }))
    }
}

enum Setup<T> {
    Finite(FiniteSetup<T>),
    Infinite,
}

struct FiniteSetup<T> {
    c: CanonicalHalfSpace<T>,
    ax: ExtendedReal<T>,
    bx: ExtendedReal<T>,
    p: TropicalVector<T>,
}

/// `Argmax(a, x)` in increasing index order; empty when `ax = −∞`.
pub fn argmax<T: Scalar>(a: &RowVector<T>, x: &TropicalVector<T>) -> Vec<usize> {
    let best = a.apply(x).unwrap_or(NegInf);
    if best == NegInf {
        return Vec::new();
    }
    (0..a.len())
        .filter(|&i| a[i] != NegInf && a[i].lower_add(x[i]) == best)
        .collect()
}

/// Canonical form: `a′` and `b′` have disjoint supports `I` and `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalHalfSpace<T> {
    pub a_prime: RowVector<T>,
    pub b_prime: RowVector<T>,
    pub i_set: IndexSet,
    pub j_set: IndexSet,
}

impl<T: Scalar> CanonicalHalfSpace<T> {
    pub fn to_halfspace(&self) -> HalfSpace<T> {
        HalfSpace {
            a: self.a_prime.clone(),
            b: self.b_prime.clone(),
        }
    }

    pub fn contains(&self, h: &TropicalVector<T>) -> Result<bool> {
        Ok(self.a_prime.apply(h)? >= self.b_prime.apply(h)?)
    }

    /// `−(a′ ⊕ b′)`.
    pub fn apex(&self) -> TropicalVector<T> {
        let joined: Vec<_> = self
            .a_prime
            .iter()
            .zip(self.b_prime.iter())
            .map(|(&a, &b)| a.max(b).negate())
            .collect();
        TropicalVector::new(joined).expect("n > 0")
    }

    /// `I ∪ J = [n]`.
    pub fn has_finite_apex(&self) -> bool {
        self.i_set.union(&self.j_set).len() == self.i_set.dim()
    }

    pub fn apex_and_sectors(&self) -> (TropicalVector<T>, Vec<Sector<T>>) {
        let apex = self.apex();
        let sectors = self
            .i_set
            .members()
            .iter()
            .map(|&index| Sector {
                index,
                apex: apex.clone(),
            })
            .collect();
        (apex, sectors)
    }
}

/// `{h | h_i − apex_i ≥ max_{j≠i} (h_j − apex_j)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sector<T> {
    pub index: usize,
    pub apex: TropicalVector<T>,
}

impl<T: Scalar> Sector<T> {
    pub fn contains(&self, h: &TropicalVector<T>) -> bool {
        let shifted = |j: usize| h[j].lower_sub(self.apex[j]);
        let rest = (0..h.len())
            .filter(|&j| j != self.index)
            .map(shifted)
            .max()
            .unwrap_or(NegInf);
        shifted(self.index) >= rest
    }
}

/// One face of the best-approximation set, normalized at `λ = 0`.
///
/// Members are the vectors `g + λ` for finite `λ`, where `g` takes the fixed
/// values and lies within the bounds elsewhere. The pivot is fixed at `−a′_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct FaceBox<T: Scalar> {
    pub pivot: usize,
    pub fixed: BTreeMap<usize, ExtendedReal<T>>,
    #[serde(rename = "box")]
    pub bounds: BTreeMap<usize, (ExtendedReal<T>, ExtendedReal<T>)>,
}

impl<T: Scalar> FaceBox<T> {
    pub fn contains(&self, h: &TropicalVector<T>) -> bool {
        let lam = h[self.pivot].lower_sub(self.fixed[&self.pivot]);
        if !lam.is_finite() {
            return false;
        }
        let fixed_ok = self.fixed.iter().all(|(&j, &v)| h[j].lower_sub(lam) == v);
        let box_ok = self.bounds.iter().all(|(&k, &(lo, hi))| {
            let g = h[k].lower_sub(lam);
            lo <= g && g <= hi
        });
        fixed_ok && box_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct BestApproxSet<T: Scalar> {
    pub distance: ExtendedReal<T>,
    pub faces: Vec<FaceBox<T>>,
}

impl<T: Scalar> BestApproxSet<T> {
    pub fn contains(&self, h: &TropicalVector<T>) -> bool {
        self.faces.iter().any(|f| f.contains(h))
    }
}

/// Result of [`HalfSpace::best_approx_set`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", bound(serialize = ""))]
pub enum BestApprox<T: Scalar> {
    Faces(BestApproxSet<T>),
    /// `d(x, H) = +∞`: every element of `H` is trivially nearest.
    InfiniteDistance,
}

pub fn contains<T: Scalar>(h: &HalfSpace<T>, x: &TropicalVector<T>) -> Result<bool> {
    h.contains(x)
}

pub fn classify<T: Scalar>(h: &HalfSpace<T>) -> Classification {
    h.classify()
}

pub fn canonicalize<T: Scalar>(h: &HalfSpace<T>) -> Result<CanonicalHalfSpace<T>> {
    h.canonicalize()
}

pub fn project<T: Scalar>(h: &HalfSpace<T>, x: &TropicalVector<T>) -> Result<TropicalVector<T>> {
    h.project(x)
}

pub fn distance<T: Scalar>(h: &HalfSpace<T>, x: &TropicalVector<T>) -> Result<ExtendedReal<T>> {
    h.distance(x)
}

pub fn best_approx_set<T: Scalar>(h: &HalfSpace<T>, x: &TropicalVector<T>) -> Result<BestApprox<T>> {
    h.best_approx_set(x)
}

pub fn is_best_approx<T: Scalar>(h: &HalfSpace<T>, x: &TropicalVector<T>, y: &TropicalVector<T>) -> Result<bool> {
    h.is_best_approx(x, y)
}
