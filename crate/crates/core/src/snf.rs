//! Smith normal form over the integers.
//!
//! Elimination runs in checked `i64` arithmetic first and restarts with
//! arbitrary-precision integers if any intermediate value overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self {
            rows: rows.len(),
            cols,
            data: rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if !other.data[k][j].is_zero() {
                        out.data[i][j] += &self.data[i][k] * &other.data[k][j];
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Zero::is_zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    /// Nonzero invariant factors, each dividing the next.
    pub diag: Vec<BigInt>,
    pub rank: usize,
    /// Unimodular `(U, V)` with `U · A · V` diagonal, when requested.
    pub transforms: Option<(IntMatrix, IntMatrix)>,
}

impl SnfResult {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diag.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    run(a, false)
}

pub fn smith_normal_form_with_transforms(a: &IntMatrix) -> SnfResult {
    run(a, true)
}

/// Rank and nontrivial invariant factors of a small-entry sparse matrix given by columns.
pub(crate) fn snf_of_columns(rows: usize, columns: &[Vec<(usize, i64)>]) -> (usize, Vec<BigInt>) {
    let cols = columns.len();
    if rows == 0 || cols == 0 {
        return (0, Vec::new());
    }
    let mut dense = vec![vec![0i64; cols]; rows];
    for (j, col) in columns.iter().enumerate() {
        for &(i, v) in col {
            dense[i][j] += v;
        }
    }
    let diag = match eliminate(dense, false) {
        Some((d, _)) => d.into_iter().map(BigInt::from).collect(),
        None => {
            let mut big = vec![vec![BigInt::zero(); cols]; rows];
            for (j, col) in columns.iter().enumerate() {
                for &(i, v) in col {
                    big[i][j] += v;
                }
            }
            eliminate(big, false).expect("bigint elimination cannot overflow").0
        }
    };
    let diag = normalize(diag);
    let rank = diag.len();
    (rank, diag.into_iter().filter(|d| !d.is_one()).collect())
}

fn run(a: &IntMatrix, transforms: bool) -> SnfResult {
    let small: Option<Vec<Vec<i64>>> =
        a.data.iter().map(|r| r.iter().map(|x| i64::try_from(x).ok()).collect()).collect();
    let fast = small.and_then(|m| {
        eliminate(m, transforms).map(|(d, t)| {
            let conv = |m: Vec<Vec<i64>>| IntMatrix {
                rows: m.len(),
                cols: m.first().map_or(0, Vec::len),
                data: m.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect(),
            };
            (d.into_iter().map(BigInt::from).collect(), t.map(|(u, v)| (conv(u), conv(v))))
        })
    });
    let (diag, t) = match fast {
        Some(r) => r,
        None => {
            let (d, t) = eliminate(a.data.clone(), transforms).expect("bigint elimination cannot overflow");
            let conv = |m: Vec<Vec<BigInt>>| IntMatrix { rows: m.len(), cols: m.first().map_or(0, Vec::len), data: m };
            (d, t.map(|(u, v)| (conv(u), conv(v))))
        }
    };
    let transforms = t.map(|(mut u, mut v)| {
        // the identity factors of size 0 have no first row to read a width from
        u.rows = a.rows;
        u.cols = a.rows;
        v.rows = a.cols;
        v.cols = a.cols;
        (u, v)
    });
    let diag = if transforms.is_some() { diag } else { normalize(diag) };
    let rank = diag.len();
    SnfResult { diag, rank, transforms }
}

/// Turns any list of nonzero diagonal entries into the divisibility chain with the same cokernel.
pub(crate) fn normalize(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for x in d.iter_mut() {
        *x = x.abs();
    }
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

trait Entry: Clone + Zero + One + Sized {
    fn mag_lt(&self, other: &Self) -> bool;
    fn is_neg(&self) -> bool;
    fn negate(&self) -> Option<Self>;
    /// `self - q * b`.
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn floor_div(&self, b: &Self) -> Self;
    fn divides(&self, b: &Self) -> bool;
}

impl Entry for i64 {
    fn mag_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn negate(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn floor_div(&self, b: &Self) -> Self {
        Integer::div_floor(self, b)
    }
    fn divides(&self, b: &Self) -> bool {
        b % self == 0
    }
}

impl Entry for BigInt {
    fn mag_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn negate(&self) -> Option<Self> {
        Some(-self)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn floor_div(&self, b: &Self) -> Self {
        Integer::div_floor(self, b)
    }
    fn divides(&self, b: &Self) -> bool {
        (b % self).is_zero()
    }
}

type Transforms<T> = Option<(Vec<Vec<T>>, Vec<Vec<T>>)>;

fn identity<T: Entry>(n: usize) -> Vec<Vec<T>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect()
}

/// row_i -= q * row_t, on A and optionally on U.
fn row_op<T: Entry>(a: &mut [Vec<T>], u: Option<&mut Vec<Vec<T>>>, i: usize, t: usize, q: &T) -> Option<()> {
    let (lo, hi) = a.split_at_mut(i.max(t));
    let (ri, rt) = if i > t { (&mut hi[0], &lo[t]) } else { (&mut lo[i], &hi[0]) };
    for (x, y) in ri.iter_mut().zip(rt.iter()) {
        if !y.is_zero() {
            *x = x.sub_mul(q, y)?;
        }
    }
    if let Some(u) = u {
        row_op(u, None, i, t, q)?;
    }
    Some(())
}

/// col_j -= q * col_t, on A and optionally on V.
fn col_op<T: Entry>(a: &mut [Vec<T>], v: Option<&mut Vec<Vec<T>>>, j: usize, t: usize, q: &T) -> Option<()> {
    for r in a.iter_mut() {
        if !r[t].is_zero() {
            r[j] = r[j].sub_mul(q, &r[t])?;
        }
    }
    if let Some(v) = v {
        col_op(v, None, j, t, q)?;
    }
    Some(())
}

fn eliminate<T: Entry>(mut a: Vec<Vec<T>>, want: bool) -> Option<(Vec<T>, Transforms<T>)> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut u: Option<Vec<Vec<T>>> = want.then(|| identity(rows));
    let mut v: Option<Vec<Vec<T>>> = want.then(|| identity(cols));
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot of least magnitude in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].mag_lt(&a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut a, u.as_mut(), t, pi);
        swap_cols(&mut a, v.as_mut(), t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].floor_div(&a[t][t]);
                    row_op(&mut a, u.as_mut(), i, t, &q)?;
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].floor_div(&a[t][t]);
                    col_op(&mut a, v.as_mut(), j, t, &q)?;
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                let mut best: Option<(usize, usize)> = None;
                let cand = (t + 1..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
                for (i, j) in cand {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].mag_lt(&a[bi][bj])) {
                        best = Some((i, j));
                    }
                }
                let (i, j) = best.expect("a nonzero remainder exists");
                if i != t {
                    swap_rows(&mut a, u.as_mut(), t, i);
                } else {
                    swap_cols(&mut a, v.as_mut(), t, j);
                }
                continue;
            }
            if want {
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[t][t].divides(&a[i][j])));
                if let Some(i) = bad {
                    let minus_one = T::one().negate()?;
                    row_op(&mut a, u.as_mut(), t, i, &minus_one)?;
                    continue;
                }
            }
            break;
        }
        if a[t][t].is_neg() {
            for x in a[t].iter_mut() {
                *x = x.negate()?;
            }
            if let Some(u) = u.as_mut() {
                for x in u[t].iter_mut() {
                    *x = x.negate()?;
                }
            }
        }
        diag.push(a[t][t].clone());
        t += 1;
    }
    Some((diag, u.zip(v)))
}

fn swap_rows<T>(a: &mut [Vec<T>], u: Option<&mut Vec<Vec<T>>>, i: usize, j: usize) {
    a.swap(i, j);
    if let Some(u) = u {
        u.swap(i, j);
    }
}

fn swap_cols<T>(a: &mut [Vec<T>], v: Option<&mut Vec<Vec<T>>>, i: usize, j: usize) {
    for r in a.iter_mut() {
        r.swap(i, j);
    }
    if let Some(v) = v {
        for r in v.iter_mut() {
            r.swap(i, j);
        }
    }
}
