//! Exact linear algebra: Gaussian elimination over any exact field and
//! integer lattice reductions (kernel lattices, Hermite normal form).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::surd::Surd;

/// The operations Gaussian elimination needs from a field.
pub trait Field: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// `rhs` is never zero.
    fn div(&self, rhs: &Self) -> Self;
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl Field for Surd {
    fn zero() -> Self {
        Surd::zero()
    }
    fn one() -> Self {
        Surd::one()
    }
    fn is_zero(&self) -> bool {
        Surd::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

/// Reduces `rows` in place to reduced row-echelon form and drops zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref<F: Field>(rows: &mut Vec<Vec<F>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let lead = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.div(&lead);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..ncols {
                    let delta = factor.mul(&rows[r][j]);
                    rows[i][j] = rows[i][j].sub(&delta);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : A x = 0}` over the field, one vector per free column.
pub fn nullspace<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![F::zero(); ncols];
            v[free] = F::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = F::zero().sub(&row[free]);
            }
            v
        })
        .collect()
}

pub fn determinant<F: Field>(matrix: &[Vec<F>]) -> F {
    let n = matrix.len();
    let mut m = matrix.to_vec();
    let mut det = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            m.swap(p, c);
            det = F::zero().sub(&det);
        }
        det = det.mul(&m[c][c]);
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let factor = m[i][c].div(&m[c][c]);
                for j in c..n {
                    let delta = factor.mul(&m[c][j]);
                    m[i][j] = m[i][j].sub(&delta);
                }
            }
        }
    }
    det
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<F: Field>(matrix: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = matrix.len();
    let mut aug: Vec<Vec<F>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn to_rational_matrix(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect()
}

/// Clears denominators row by row, giving an integer matrix with the same
/// rational row space.
pub fn clear_denominators(rows: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect()
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let ints = clear_denominators(&[v.to_vec()]).pop().unwrap_or_default();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Output rows are in echelon form with positive pivots, entries above each
/// pivot reduced into `[0, pivot)`, zero rows removed. Two generating sets
/// span the same lattice iff their Hermite forms are equal.
pub fn hermite_normal_form(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        // Euclid down the column until one row carries the gcd.
        loop {
            let nonzero: Vec<usize> = (r..m.len()).filter(|&i| !m[i][c].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let &best = nonzero
                .iter()
                .min_by_key(|&&i| m[i][c].abs())
                .expect("nonempty");
            m.swap(r, best);
            let mut done = true;
            for i in r + 1..m.len() {
                if !m[i][c].is_zero() {
                    let q = m[i][c].div_floor(&m[r][c]);
                    for j in 0..ncols {
                        let delta = &q * &m[r][j];
                        m[i][j] -= delta;
                    }
                    if !m[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = m[i][c].div_floor(&m[r][c]);
            if !q.is_zero() {
                for j in 0..ncols {
                    let delta = &q * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m.retain(|row| row.iter().any(|x| !x.is_zero()));
    m
}

/// Basis of the integer kernel lattice `{x ∈ Zⁿ : A x = 0}`, in Hermite
/// normal form.
///
/// Unimodular column operations bring `A` to column echelon form; the
/// transformation columns past the last pivot span the kernel lattice.
pub fn integer_kernel(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    // u[j] is column j of the transformation, stored as a row vector.
    let mut u: Vec<Vec<BigInt>> = (0..ncols)
        .map(|j| {
            (0..ncols)
                .map(|i| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut next = 0;
    for r in 0..a.len() {
        if next == ncols {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (next..ncols).filter(|&j| !a[r][j].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let &best = nonzero
                .iter()
                .min_by_key(|&&j| a[r][j].abs())
                .expect("nonempty");
            swap_columns(&mut a, &mut u, next, best);
            let mut done = true;
            for j in next + 1..ncols {
                if !a[r][j].is_zero() {
                    let q = a[r][j].div_floor(&a[r][next]);
                    sub_column(&mut a, &mut u, j, next, &q);
                    if !a[r][j].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if !a[r][next].is_zero() {
            next += 1;
        }
    }
    hermite_normal_form(&u[next..], ncols)
}

fn swap_columns(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    u.swap(i, j);
}

/// column[target] -= q · column[source]
fn sub_column(
    a: &mut [Vec<BigInt>],
    u: &mut [Vec<BigInt>],
    target: usize,
    source: usize,
    q: &BigInt,
) {
    for row in a.iter_mut() {
        let delta = q * &row[source];
        row[target] -= delta;
    }
    let src = u[source].clone();
    for (t, s) in u[target].iter_mut().zip(&src) {
        *t -= q * s;
    }
}

/// True iff the integer vectors span all of `Zⁿ`.
pub fn spans_full_lattice(rows: &[Vec<BigInt>], ncols: usize) -> bool {
    let h = hermite_normal_form(rows, ncols);
    h.len() == ncols && (0..ncols).all(|i| h[i][i].is_one())
}

pub fn to_bigint_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}
