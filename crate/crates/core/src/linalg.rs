//! Dense max-plus vectors and matrices.
//!
//! Storage is dense; loops skip `−∞` coefficients so that sparse rows cost
//! only their finite entries.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::extreal::{ExtendedReal, NegInf, PosInf};
use crate::scalar::Scalar;

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}

/// A column vector of `R̄_max^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalVector<T> {
    entries: Vec<ExtendedReal<T>>,
}

/// A row vector, i.e. a max-plus linear form `h ↦ max_i (a_i + h_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowVector<T> {
    entries: Vec<ExtendedReal<T>>,
}

macro_rules! dense_common {
    ($ty:ident) => {
        impl<T: Scalar> $ty<T> {
            pub fn new(entries: Vec<ExtendedReal<T>>) -> Result<Self> {
                if entries.is_empty() {
                    return Err(Error::Empty);
                }
                Ok(Self { entries })
            }

            pub fn filled(n: usize, value: ExtendedReal<T>) -> Self {
                assert!(n > 0, "dimension must be positive");
                Self { entries: vec![value; n] }
            }

            pub fn bottom(n: usize) -> Self {
                Self::filled(n, NegInf)
            }

            pub fn from_i64s(values: &[i64]) -> Self {
                Self::new(values.iter().map(|&v| ExtendedReal::from_i64(v)).collect())
                    .expect("non-empty")
            }

            /// Whitespace-separated tokens, e.g. `"2 -inf 0"`.
            pub fn parse_tokens(line: &str) -> Result<Self> {
                let entries = crate::format::parse_token_line(line, 1)?;
                Self::new(entries)
            }

            pub fn len(&self) -> usize {
                self.entries.len()
            }

            pub fn is_empty(&self) -> bool {
                self.entries.is_empty()
            }

            pub fn entries(&self) -> &[ExtendedReal<T>] {
                &self.entries
            }

            pub fn into_entries(self) -> Vec<ExtendedReal<T>> {
                self.entries
            }

            pub fn iter(&self) -> std::slice::Iter<'_, ExtendedReal<T>> {
                self.entries.iter()
            }

            pub fn is_bottom(&self) -> bool {
                self.entries.iter().all(|e| *e == NegInf)
            }

            pub fn is_finite(&self) -> bool {
                self.entries.iter().all(ExtendedReal::is_finite)
            }

            /// Entrywise `≤`.
            pub fn le(&self, other: &Self) -> bool {
                self.len() == other.len()
                    && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
            }

            pub fn ge(&self, other: &Self) -> bool {
                other.le(self)
            }
        }

        impl<T> Index<usize> for $ty<T> {
            type Output = ExtendedReal<T>;

            fn index(&self, i: usize) -> &ExtendedReal<T> {
                &self.entries[i]
            }
        }

        impl<T: Scalar> fmt::Display for $ty<T> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for (i, e) in self.entries.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
        }

        impl<T: Scalar> serde::Serialize for $ty<T> {
            fn serialize<S: serde::Serializer>(
                &self,
                s: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                self.entries.serialize(s)
            }
        }
    };
}

dense_common!(TropicalVector);
dense_common!(RowVector);

impl<T: Scalar> TropicalVector<T> {
    /// `x ⊕ y`, entrywise max.
    pub fn oplus(&self, other: &Self) -> Result<Self> {
        check_len(self.len(), other.len())?;
        Ok(self.zip_with(other, |a, b| a.max(b)))
    }

    /// `x ∧ y`, entrywise min.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        check_len(self.len(), other.len())?;
        Ok(self.zip_with(other, |a, b| a.min(b)))
    }

    /// `xλ`, adding `λ` to every entry with the lower convention.
    pub fn scale(&self, lam: ExtendedReal<T>) -> Self {
        self.map(|e| e.lower_add(lam))
    }

    /// `x\y = min_i (y_i ⊗′ (−x_i))`, the greatest `λ` with `xλ ≤ y`.
    pub fn residual(&self, other: &Self) -> Result<ExtendedReal<T>> {
        check_len(self.len(), other.len())?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&x, &y)| x.residual(y))
            .min()
            .expect("non-empty"))
    }

    pub fn negate(&self) -> Self {
        self.map(ExtendedReal::negate)
    }

    pub fn map(&self, f: impl Fn(ExtendedReal<T>) -> ExtendedReal<T>) -> Self {
        Self {
            entries: self.entries.iter().map(|&e| f(e)).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(ExtendedReal<T>, ExtendedReal<T>) -> ExtendedReal<T>,
    ) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Entries must lie in `R_max`, i.e. no `+∞`.
    pub fn check_rmax(&self) -> Result<()> {
        match self.entries.iter().position(|e| *e == PosInf) {
            Some(i) => Err(Error::PositiveInfinity(i)),
            None => Ok(()),
        }
    }

    pub fn to_row(&self) -> RowVector<T> {
        RowVector {
            entries: self.entries.clone(),
        }
    }

    pub fn set(&mut self, i: usize, value: ExtendedReal<T>) {
        self.entries[i] = value;
    }

    pub fn max_abs_change(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| match (a, b) {
                (ExtendedReal::Finite(x), ExtendedReal::Finite(y)) => x.abs_diff(*y),
                _ if a == b => 0.0,
                _ => f64::INFINITY,
            })
            .fold(0.0, f64::max)
    }
}

impl<T: Scalar> RowVector<T> {
    /// `ah = max_i (a_i ⊗ h_i)`.
    pub fn apply(&self, h: &TropicalVector<T>) -> Result<ExtendedReal<T>> {
        check_len(self.len(), h.len())?;
        Ok(self
            .entries
            .iter()
            .zip(h.iter())
            .filter(|(a, _)| **a != NegInf)
            .map(|(&a, &x)| a.lower_add(x))
            .max()
            .unwrap_or(NegInf))
    }

    /// `b\λ`: the column vector with entries `b_j\λ`, `+∞` where `b_j = −∞`.
    pub fn residuated_preimage(&self, lam: ExtendedReal<T>) -> TropicalVector<T> {
        TropicalVector {
            entries: self.entries.iter().map(|&b| b.residual(lam)).collect(),
        }
    }

    pub fn to_column(&self) -> TropicalVector<T> {
        TropicalVector {
            entries: self.entries.clone(),
        }
    }

    /// Indices of finite coefficients, in increasing order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.entries[i].is_finite()).collect()
    }
}

pub fn vec_oplus<T: Scalar>(x: &TropicalVector<T>, y: &TropicalVector<T>) -> Result<TropicalVector<T>> {
    x.oplus(y)
}

pub fn vec_meet<T: Scalar>(x: &TropicalVector<T>, y: &TropicalVector<T>) -> Result<TropicalVector<T>> {
    x.meet(y)
}

pub fn vec_scale<T: Scalar>(x: &TropicalVector<T>, lam: ExtendedReal<T>) -> TropicalVector<T> {
    x.scale(lam)
}

pub fn vec_residual<T: Scalar>(x: &TropicalVector<T>, y: &TropicalVector<T>) -> Result<ExtendedReal<T>> {
    x.residual(y)
}

pub fn row_apply<T: Scalar>(a: &RowVector<T>, h: &TropicalVector<T>) -> Result<ExtendedReal<T>> {
    a.apply(h)
}

pub fn residuated_row_preimage<T: Scalar>(b: &RowVector<T>, lam: ExtendedReal<T>) -> TropicalVector<T> {
    b.residuated_preimage(lam)
}

/// A `p × n` matrix over `R̄_max`. A matrix may have zero rows (an empty
/// constraint system) but always has at least one column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalMatrix<T> {
    rows: Vec<RowVector<T>>,
    cols: usize,
}

impl<T: Scalar> TropicalMatrix<T> {
    pub fn from_rows(rows: Vec<RowVector<T>>, cols: usize) -> Result<Self> {
        if cols == 0 {
            return Err(Error::Empty);
        }
        for r in &rows {
            check_len(cols, r.len())?;
        }
        Ok(Self { rows, cols })
    }

    pub fn from_i64_rows(rows: &[&[Option<i64>]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                RowVector::new(
                    r.iter()
                        .map(|v| v.map_or(NegInf, ExtendedReal::from_i64))
                        .collect(),
                )
                .expect("non-empty row")
            })
            .collect();
        Self::from_rows(rows, cols).expect("rectangular")
    }

    pub fn filled(rows: usize, cols: usize, value: ExtendedReal<T>) -> Self {
        Self {
            rows: (0..rows).map(|_| RowVector::filled(cols, value)).collect(),
            cols,
        }
    }

    /// Zero on the diagonal, `−∞` elsewhere.
    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![NegInf; n];
                r[i] = ExtendedReal::zero();
                RowVector::new(r).expect("n > 0")
            })
            .collect();
        Self { rows, cols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[RowVector<T>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &RowVector<T> {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> ExtendedReal<T> {
        self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> TropicalVector<T> {
        TropicalVector::new(self.rows.iter().map(|r| r[j]).collect()).expect("non-empty")
    }

    /// `Ax`, with `(Ax)_i = max_j (A_ij ⊗ x_j)`.
    pub fn apply(&self, x: &TropicalVector<T>) -> Result<TropicalVector<T>> {
        check_len(self.cols, x.len())?;
        if self.rows.is_empty() {
            return Err(Error::Empty);
        }
        TropicalVector::new(
            self.rows
                .iter()
                .map(|r| r.apply(x))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// `B♯y = B\y`, with `(B♯y)_j = min_i ((−B_ij) ⊗′ y_i)`; the greatest `x`
    /// with `Bx ≤ y`. Columns without finite entries yield `+∞`.
    pub fn residuated_apply(&self, y: &TropicalVector<T>) -> Result<TropicalVector<T>> {
        check_len(self.rows.len(), y.len())?;
        let mut out = vec![PosInf; self.cols];
        for (row, &yi) in self.rows.iter().zip(y.iter()) {
            for (j, &b) in row.iter().enumerate() {
                if b == NegInf {
                    continue;
                }
                let v = b.negate().upper_add(yi);
                if v < out[j] {
                    out[j] = v;
                }
            }
        }
        TropicalVector::new(out)
    }

    /// `A\B` for a matrix right-hand side, column by column.
    pub fn residual(&self, rhs: &TropicalMatrix<T>) -> Result<TropicalMatrix<T>> {
        check_len(self.nrows(), rhs.nrows())?;
        let cols: Vec<TropicalVector<T>> = (0..rhs.ncols())
            .map(|k| self.residuated_apply(&rhs.column(k)))
            .collect::<Result<_>>()?;
        let rows = (0..self.cols)
            .map(|j| RowVector::new(cols.iter().map(|c| c[j]).collect()).expect("non-empty"))
            .collect();
        TropicalMatrix::from_rows(rows, rhs.ncols())
    }

    /// First column with no finite entry, if any.
    pub fn empty_column(&self) -> Option<usize> {
        (0..self.cols).find(|&j| self.rows.iter().all(|r| r[j] == NegInf))
    }

    pub fn finite_entries(&self) -> impl Iterator<Item = T> + '_ {
        self.rows.iter().flat_map(|r| r.iter().filter_map(|e| e.finite()))
    }
}

impl<T: Scalar> fmt::Display for TropicalMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

pub fn mat_apply<T: Scalar>(a: &TropicalMatrix<T>, x: &TropicalVector<T>) -> Result<TropicalVector<T>> {
    a.apply(x)
}

pub fn residuated_apply<T: Scalar>(b: &TropicalMatrix<T>, y: &TropicalVector<T>) -> Result<TropicalVector<T>> {
    b.residuated_apply(y)
}
