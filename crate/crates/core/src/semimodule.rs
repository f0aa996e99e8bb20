//! Finitely generated subsemimodules of `R_max^n`.

use crate::error::{Error, Result};
use crate::extreal::{ExtendedReal, NegInf};
use crate::halfspace::HalfSpace;
use crate::linalg::{RowVector, TropicalVector};
use crate::metric::hilbert_distance;
use crate::scalar::Scalar;

/// The set of all `sup_i v_i λ_i`, together with the bottom vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedSemimodule<T> {
    n: usize,
    generators: Vec<TropicalVector<T>>,
}

impl<T: Scalar> GeneratedSemimodule<T> {
    /// Generators must have length `n` and no `+∞` entries. The list may be empty.
    pub fn new(n: usize, generators: Vec<TropicalVector<T>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        for g in &generators {
            self::check_len(n, g)?;
            g.check_rmax()?;
        }
        Ok(Self { n, generators })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[TropicalVector<T>] {
        &self.generators
    }

    /// `sup_i v_i λ_i` for the given scalars, one per generator.
    pub fn combine(&self, scalars: &[ExtendedReal<T>]) -> Result<TropicalVector<T>> {
        if scalars.len() != self.generators.len() {
            return Err(Error::Dimension {
                expected: self.generators.len(),
                found: scalars.len(),
            });
        }
        let mut out = TropicalVector::bottom(self.n);
        for (g, &lam) in self.generators.iter().zip(scalars) {
            out = out.oplus(&g.scale(lam))?;
        }
        Ok(out)
    }

    /// `P_V(u) = sup_i v_i (v_i\u)`, the greatest element of `V` below `u`.
    pub fn project(&self, u: &TropicalVector<T>) -> Result<TropicalVector<T>> {
        check_len(self.n, u)?;
        u.check_rmax()?;
        let mut out = TropicalVector::bottom(self.n);
        for g in &self.generators {
            out = out.oplus(&g.scale(g.residual(u)?))?;
        }
        Ok(out)
    }

    /// `d(x, V) = d(x, P_V(x))`.
    pub fn distance_to(&self, x: &TropicalVector<T>) -> Result<ExtendedReal<T>> {
        hilbert_distance(x, &self.project(x)?)
    }

    pub fn membership(&self, x: &TropicalVector<T>) -> Result<bool> {
        Ok(&self.project(x)? == x)
    }

    /// The half-space `{h | max_{j∈J}(h_j − x_j) ≥ max_{j∉J}(h_j − P_j)}`
    /// with `J = {j | x_j = P_V(x)_j}`. It contains `V`, excludes `x`, and
    /// has the same projection of `x` and the same distance to `x` as `V`.
    ///
    /// Requires every coordinate of `P_V(x)` to be finite; otherwise reduce
    /// the problem to the support of `x` first.
    pub fn universal_halfspace(&self, x: &TropicalVector<T>) -> Result<HalfSpace<T>> {
        let p = self.project(x)?;
        if &p == x {
            return Err(Error::NoSeparation);
        }
        let missing: Vec<usize> = (0..self.n).filter(|&j| p[j] == NegInf).collect();
        if !missing.is_empty() {
            return Err(Error::NonFiniteProjection(missing));
        }
        let mut a = vec![NegInf; self.n];
        let mut b = vec![NegInf; self.n];
        for j in 0..self.n {
            if x[j] == p[j] {
                a[j] = x[j].negate();
            } else {
                b[j] = p[j].negate();
            }
        }
        HalfSpace::new(RowVector::new(a)?, RowVector::new(b)?)
    }

    /// `v\x = v\y` for every generator `v`, which extends to every `v ∈ V`.
    pub fn is_orthogonal(&self, x: &TropicalVector<T>, y: &TropicalVector<T>) -> Result<bool> {
        check_len(self.n, x)?;
        check_len(self.n, y)?;
        for g in &self.generators {
            if g.residual(x)? != g.residual(y)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn check_len<T: Scalar>(n: usize, x: &TropicalVector<T>) -> Result<()> {
    if x.len() == n {
        Ok(())
    } else {
        Err(Error::Dimension {
            expected: n,
            found: x.len(),
        })
    }
}

pub fn project<T: Scalar>(v: &GeneratedSemimodule<T>, u: &TropicalVector<T>) -> Result<TropicalVector<T>> {
    v.project(u)
}

pub fn distance_to<T: Scalar>(v: &GeneratedSemimodule<T>, x: &TropicalVector<T>) -> Result<ExtendedReal<T>> {
    v.distance_to(x)
}

pub fn universal_halfspace<T: Scalar>(v: &GeneratedSemimodule<T>, x: &TropicalVector<T>) -> Result<HalfSpace<T>> {
    v.universal_halfspace(x)
}

pub fn is_orthogonal<T: Scalar>(
    v: &GeneratedSemimodule<T>,
    x: &TropicalVector<T>,
    y: &TropicalVector<T>,
) -> Result<bool> {
    v.is_orthogonal(x, y)
}

pub fn membership<T: Scalar>(v: &GeneratedSemimodule<T>, x: &TropicalVector<T>) -> Result<bool> {
    v.membership(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::{Finite, PosInf};

    type V = TropicalVector<i64>;

    fn v(s: &str) -> V {
        V::parse_tokens(s).unwrap()
    }

    fn span(gens: &[&str]) -> GeneratedSemimodule<i64> {
        let n = v(gens[0]).len();
        GeneratedSemimodule::new(n, gens.iter().map(|g| v(g)).collect()).unwrap()
    }

    /// Generates `{v | v2 ≥ v1}` in R^3.
    fn diagonal_span() -> GeneratedSemimodule<i64> {
        span(&["0 0 -inf", "-inf 0 -inf", "-inf -inf 0"])
    }

    #[test]
    fn project_examples() {
        assert_eq!(span(&["0 0 0"]).project(&v("2 1 0")).unwrap(), v("0 0 0"));
        assert_eq!(span(&["0 0 0"]).project(&v("3 3 3")).unwrap(), v("3 3 3"));
        assert_eq!(span(&["0 -inf", "-inf 0"]).project(&v("5 7")).unwrap(), v("5 7"));
        let empty = GeneratedSemimodule::<i64>::new(2, vec![]).unwrap();
        assert_eq!(empty.project(&v("5 7")).unwrap(), V::bottom(2));
        assert_eq!(diagonal_span().project(&v("2 1 0")).unwrap(), v("1 1 0"));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(span(&["0 0 0"]).distance_to(&v("2 1 0")).unwrap(), Finite(2));
        assert_eq!(span(&["0 0 0"]).distance_to(&v("1 1 1")).unwrap(), Finite(0));
        assert_eq!(span(&["0 -inf -inf"]).distance_to(&v("2 1 0")).unwrap(), PosInf);
    }

    #[test]
    fn membership_examples() {
        let s = diagonal_span();
        for g in s.generators() {
            assert!(s.membership(g).unwrap());
        }
        assert!(s.membership(&V::bottom(3)).unwrap());
        assert!(!s.membership(&v("2 1 0")).unwrap());
    }

    #[test]
    fn separation_example() {
        let s = diagonal_span();
        let x = v("2 1 0");
        let h = s.universal_halfspace(&x).unwrap();
        // max(h2 - 1, h3) ≥ h1 - 1, i.e. max(h2, h3 + 1) ≥ h1
        assert_eq!(h.a(), &RowVector::parse_tokens("-inf -1 0").unwrap());
        assert_eq!(h.b(), &RowVector::parse_tokens("-1 -inf -inf").unwrap());
        assert!(h.contains(&v("1 1 0")).unwrap());
        assert!(!h.contains(&x).unwrap());
        assert_eq!(h.project(&x).unwrap(), v("1 1 0"));
        assert_eq!(h.distance(&x).unwrap(), s.distance_to(&x).unwrap());
        assert_eq!(h.canonicalize().unwrap().apex(), v("1 1 0"));
    }

    #[test]
    fn separation_errors() {
        let s = diagonal_span();
        assert_eq!(s.universal_halfspace(&v("1 1 0")).unwrap_err(), Error::NoSeparation);
        let s = span(&["0 0 -inf"]);
        assert_eq!(
            s.universal_halfspace(&v("2 1 0")).unwrap_err(),
            Error::NonFiniteProjection(vec![2])
        );
    }

    #[test]
    fn orthogonality_examples() {
        let s = span(&["0 0 0"]);
        let x = v("2 1 0");
        assert!(s.is_orthogonal(&x, &v("0 0 0")).unwrap());
        assert!(!s.is_orthogonal(&x, &v("1 1 1")).unwrap());
        let s = diagonal_span();
        assert!(s.is_orthogonal(&x, &s.project(&x).unwrap()).unwrap());
    }

    #[test]
    fn combine_matches_manual_supremum() {
        let s = diagonal_span();
        let y = s.combine(&[Finite(1), Finite(3), NegInf]).unwrap();
        assert_eq!(y, v("1 3 -inf"));
        assert!(s.membership(&y).unwrap());
    }
}
