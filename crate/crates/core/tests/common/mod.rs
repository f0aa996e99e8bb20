//! Random instance generators shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tropical_approx::{
    ExtendedReal, Finite, GeneratedSemimodule, HalfSpace, InequalitySystem, NegInf, PosInf, RowVector,
    TropicalMatrix, TropicalVector,
};

pub type E = ExtendedReal<i64>;
pub type V = TropicalVector<i64>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn v(s: &str) -> V {
    V::parse_tokens(s).unwrap()
}

pub fn row(s: &str) -> RowVector<i64> {
    RowVector::parse_tokens(s).unwrap()
}

pub fn hs(a: &str, b: &str) -> HalfSpace<i64> {
    HalfSpace::new(row(a), row(b)).unwrap()
}

/// A finite value in `[lo, hi]`, or `−∞` with probability `p_neg`.
pub fn entry(rng: &mut impl Rng, lo: i64, hi: i64, p_neg: f64) -> E {
    if rng.gen_bool(p_neg) {
        NegInf
    } else {
        Finite(rng.gen_range(lo..=hi))
    }
}

/// Any tag: `−∞` and `+∞` each with probability `p_inf / 2`.
pub fn any_entry(rng: &mut impl Rng, lo: i64, hi: i64, p_inf: f64) -> E {
    if rng.gen_bool(p_inf) {
        if rng.gen_bool(0.5) {
            NegInf
        } else {
            PosInf
        }
    } else {
        Finite(rng.gen_range(lo..=hi))
    }
}

pub fn vector(rng: &mut impl Rng, n: usize, lo: i64, hi: i64, p_neg: f64) -> V {
    V::new((0..n).map(|_| entry(rng, lo, hi, p_neg)).collect()).unwrap()
}

pub fn finite_vector(rng: &mut impl Rng, n: usize, lo: i64, hi: i64) -> V {
    vector(rng, n, lo, hi, 0.0)
}

pub fn row_vector(rng: &mut impl Rng, n: usize, lo: i64, hi: i64, p_neg: f64) -> RowVector<i64> {
    RowVector::new((0..n).map(|_| entry(rng, lo, hi, p_neg)).collect()).unwrap()
}

pub fn halfspace(rng: &mut impl Rng, n: usize, lo: i64, hi: i64, p_neg: f64) -> HalfSpace<i64> {
    HalfSpace::new(row_vector(rng, n, lo, hi, p_neg), row_vector(rng, n, lo, hi, p_neg)).unwrap()
}

pub fn semimodule(rng: &mut impl Rng, n: usize, q: usize, lo: i64, hi: i64, p_neg: f64) -> GeneratedSemimodule<i64> {
    GeneratedSemimodule::new(n, (0..q).map(|_| vector(rng, n, lo, hi, p_neg)).collect()).unwrap()
}

/// A system with a planted finite solution `v`: rows are random in
/// `[lo, hi] ∪ {−∞}` and then repaired so that `A_j v ≥ B_j v`.
pub fn planted_system(rng: &mut impl Rng, n: usize, p: usize, lo: i64, hi: i64) -> (InequalitySystem<i64>, V) {
    let v = finite_vector(rng, n, lo, hi);
    let mut a_rows = Vec::with_capacity(p);
    let mut b_rows = Vec::with_capacity(p);
    for _ in 0..p {
        let mut a: Vec<E> = (0..n).map(|_| entry(rng, lo, hi, 0.4)).collect();
        let mut b: Vec<E> = (0..n).map(|_| entry(rng, lo, hi, 0.4)).collect();
        if a.iter().all(|e| *e == NegInf) {
            a[rng.gen_range(0..n)] = Finite(rng.gen_range(lo..=hi));
        }
        let av = (0..n).map(|i| a[i].lower_add(v[i])).max().unwrap();
        for k in 0..n {
            if b[k].lower_add(v[k]) > av {
                let capped = av.lower_sub(v[k]);
                b[k] = match capped {
                    Finite(c) if c >= lo && rng.gen_bool(0.5) => Finite(c),
                    _ => NegInf,
                };
            }
        }
        a_rows.push(RowVector::new(a).unwrap());
        b_rows.push(RowVector::new(b).unwrap());
    }
    let sys = InequalitySystem::new(
        TropicalMatrix::from_rows(a_rows, n).unwrap(),
        TropicalMatrix::from_rows(b_rows, n).unwrap(),
    )
    .unwrap();
    assert!(sys.is_satisfied(&v).unwrap());
    (sys, v)
}

/// Every element of `{−∞} ∪ {lo..=hi}`.
pub fn tags(lo: i64, hi: i64) -> Vec<E> {
    std::iter::once(NegInf)
        .chain((lo..=hi).map(Finite))
        .chain(std::iter::once(PosInf))
        .collect()
}
