//! Supports, parts, Hilbert's projective distance and the reduction of an
//! approximation problem to the support of the point.

use std::fmt;

use crate::error::{Error, Result};
use crate::extreal::{ExtendedReal, NegInf, PosInf};
use crate::linalg::TropicalVector;
use crate::scalar::Scalar;
use crate::semimodule::GeneratedSemimodule;

/// A subset of `{0, …, n−1}`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct IndexSet {
    members: Vec<usize>,
    n: usize,
}

impl IndexSet {
    pub fn new(mut members: Vec<usize>, n: usize) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: bad, dim: n });
        }
        Ok(Self { members, n })
    }

    pub fn full(n: usize) -> Self {
        Self {
            members: (0..n).collect(),
            n,
        }
    }

    fn from_predicate(n: usize, f: impl Fn(usize) -> bool) -> Self {
        Self {
            members: (0..n).filter(|&i| f(i)).collect(),
            n,
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        Self::from_predicate(self.n, |i| self.contains(i) && other.contains(i))
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        Self::from_predicate(self.n, |i| self.contains(i) || other.contains(i))
    }

    pub fn complement(&self) -> IndexSet {
        Self::from_predicate(self.n, |i| !self.contains(i))
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.members.iter().all(|&i| other.contains(i))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.members)
    }
}

/// Support, lower support and upper support of a vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Supports {
    /// `{i | x_i finite}`
    pub supp: IndexSet,
    /// `{i | x_i < +∞}`
    pub lsupp: IndexSet,
    /// `{i | x_i > −∞}`
    pub usupp: IndexSet,
}

pub fn supports<T: Scalar>(x: &TropicalVector<T>) -> Supports {
    let n = x.len();
    Supports {
        supp: IndexSet::from_predicate(n, |i| x[i].is_finite()),
        lsupp: IndexSet::from_predicate(n, |i| x[i] < PosInf),
        usupp: IndexSet::from_predicate(n, |i| x[i] > NegInf),
    }
}

pub fn support<T: Scalar>(x: &TropicalVector<T>) -> IndexSet {
    IndexSet::from_predicate(x.len(), |i| x[i].is_finite())
}

/// The part `[[x]]` of a vector: vectors at finite distance from `x`.
///
/// Two vectors lie in the same part exactly when their descriptors are equal.
/// When the support is empty, the two σ-sets pin down the vector itself, so
/// an all-infinite vector's part is the singleton `{x}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartDescriptor {
    pub supp: IndexSet,
    pub sigma_neg: IndexSet,
    pub sigma_pos: IndexSet,
}

impl PartDescriptor {
    pub fn dim(&self) -> usize {
        self.supp.dim()
    }

    pub fn is_singleton(&self) -> bool {
        self.supp.is_empty()
    }
}

pub fn part_of<T: Scalar>(x: &TropicalVector<T>) -> PartDescriptor {
    let n = x.len();
    PartDescriptor {
        supp: IndexSet::from_predicate(n, |i| x[i].is_finite()),
        sigma_neg: IndexSet::from_predicate(n, |i| x[i] == NegInf),
        sigma_pos: IndexSet::from_predicate(n, |i| x[i] == PosInf),
    }
}

pub fn same_part<T: Scalar>(x: &TropicalVector<T>, y: &TropicalVector<T>) -> bool {
    part_of(x) == part_of(y)
}

/// `δ(x,y) = (x\y) ⊗ (y\x)`.
pub fn anti_distance<T: Scalar>(x: &TropicalVector<T>, y: &TropicalVector<T>) -> Result<ExtendedReal<T>> {
    Ok(x.residual(y)?.lower_add(y.residual(x)?))
}

/// Hilbert's projective distance `d(x,y) = δ(x,y)⁻`.
pub fn hilbert_distance<T: Scalar>(x: &TropicalVector<T>, y: &TropicalVector<T>) -> Result<ExtendedReal<T>> {
    Ok(anti_distance(x, y)?.negate())
}

/// `x|_I`, in the order of `I`.
pub fn restrict<T: Scalar>(x: &TropicalVector<T>, set: &IndexSet) -> Result<TropicalVector<T>> {
    if set.dim() != x.len() {
        return Err(Error::Dimension {
            expected: x.len(),
            found: set.dim(),
        });
    }
    TropicalVector::new(set.members().iter().map(|&i| x[i]).collect())
}

/// Inverse of [`restrict`] on vectors supported in `I`: places `−∞` outside `I`.
pub fn extend<T: Scalar>(x: &TropicalVector<T>, set: &IndexSet) -> Result<TropicalVector<T>> {
    if x.len() != set.len() {
        return Err(Error::Dimension {
            expected: set.len(),
            found: x.len(),
        });
    }
    let mut out = TropicalVector::bottom(set.dim());
    for (k, &i) in set.members().iter().enumerate() {
        out.set(i, x[k]);
    }
    Ok(out)
}

/// An approximation problem restricted to the support of the point.
#[derive(Debug, Clone)]
pub struct Reduction<T> {
    /// `x|_I`, all entries finite.
    pub point: TropicalVector<T>,
    /// Span of the restrictions of the generators supported in `I`.
    pub semimodule: GeneratedSemimodule<T>,
    /// `I = Supp x`.
    pub support: IndexSet,
    /// `d(x, V)`, equal to the reduced distance.
    pub distance: ExtendedReal<T>,
}

impl<T: Scalar> Reduction<T> {
    /// Lifts a best approximation of the reduced problem back to `R_max^n`.
    pub fn lift(&self, v: &TropicalVector<T>) -> Result<TropicalVector<T>> {
        extend(v, &self.support)
    }
}

/// Reduces `x ↦ V` to a problem on `Supp x` where the point is finite.
///
/// Only generators with `Supp g ⊆ Supp x` can enter an element of `V` in the
/// part of `x`, so the others are dropped.
pub fn reduce_problem<T: Scalar>(v: &GeneratedSemimodule<T>, x: &TropicalVector<T>) -> Result<Reduction<T>> {
    let distance = v.distance_to(x)?;
    if distance == PosInf {
        return Err(Error::InfiniteDistance);
    }
    let support = support(x);
    if support.is_empty() {
        return Err(Error::EmptySupport);
    }
    let gens = v
        .generators()
        .iter()
        .filter(|g| self::support(g).is_subset(&support) && !g.is_bottom())
        .map(|g| restrict(g, &support))
        .collect::<Result<Vec<_>>>()?;
    Ok(Reduction {
        point: restrict(x, &support)?,
        semimodule: GeneratedSemimodule::new(support.len(), gens)?,
        support,
        distance,
    })
}
