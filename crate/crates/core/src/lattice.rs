//! Integer and rational linear algebra: Smith normal form, exact solving,
//! saturated kernels and lattice membership.
//!
//! Matrices are row-major `Vec<Vec<_>>`. Functions that may receive a matrix
//! with zero rows take the column count explicitly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{from_int, primitive, primitive_from_rational, Scalar};

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<Scalar>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], b_cols: usize) -> IntMatrix {
    a.iter()
        .map(|row| {
            (0..b_cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_vec(m: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    m.iter()
        .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_vec_rat(m: &[Vec<BigInt>], v: &[Scalar]) -> Vec<Scalar> {
    m.iter()
        .map(|r| {
            r.iter()
                .zip(v)
                .fold(Scalar::zero(), |acc, (a, b)| acc + from_int(a) * b)
        })
        .collect()
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, `dᵢ | dᵢ₊₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[i][i].clone()).collect()
    }
}

pub fn smith_normal_form(m: &[Vec<BigInt>], cols: usize) -> SmithForm {
    let rows = m.len();
    let mut a: IntMatrix = m.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut rank = 0;

    for t in 0..rows.min(cols) {
        loop {
            // pivot: smallest nonzero magnitude in the trailing block
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    match pivot {
                        Some((pi, pj)) if a[pi][pj].abs() <= a[i][j].abs() => {}
                        _ => pivot = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(a, u, v, rank);
            };
            a.swap(t, pi);
            u.swap(t, pi);
            if pj != t {
                for row in a.iter_mut().chain(v.iter_mut()) {
                    row.swap(t, pj);
                }
            }

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let bad = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero())
            });
            if let Some(i) = bad {
                let one = -BigInt::one();
                row_axpy(&mut a, t, i, &one);
                row_axpy(&mut u, t, i, &one);
                continue;
            }
            break;
        }
        if a[t][t].is_negative() {
            a[t].iter_mut().for_each(|x| *x = -x.clone());
            u[t].iter_mut().for_each(|x| *x = -x.clone());
        }
        rank += 1;
    }
    finish(a, u, v, rank)
}

fn finish(d: IntMatrix, u: IntMatrix, v: IntMatrix, rank: usize) -> SmithForm {
    SmithForm { u, d, v, rank }
}

/// row[dst] -= q * row[src]
fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    let src_row = m[src].clone();
    for (x, s) in m[dst].iter_mut().zip(src_row) {
        *x -= q * s;
    }
}

/// col[dst] -= q * col[src]
fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let s = row[src].clone();
        row[dst] -= q * s;
    }
}

/// Reduced row echelon form over `ℚ`; returns the nonzero rows and pivot columns.
pub fn rref(m: &[Vec<Scalar>], cols: usize) -> (RatMatrix, Vec<usize>) {
    let mut a: RatMatrix = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        a[r].iter_mut().for_each(|x| *x *= &inv);
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank_rat(m: &[Vec<Scalar>], cols: usize) -> usize {
    rref(m, cols).1.len()
}

/// Rank over `ℚ` of an integer matrix, by fraction-free elimination.
pub fn rank_int(m: &[Vec<BigInt>]) -> usize {
    let mut a: IntMatrix = m.iter().map(|r| r.to_vec()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot_row = a[r].clone();
        for row in a.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, pv) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &pivot_row[c] - &f * pv;
            }
            let g = primitive(row);
            *row = g;
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Exact affine solution set of `A x = b` over `ℚ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionSet {
    Empty,
    Affine {
        particular: Vec<Scalar>,
        /// Kernel basis, each vector primitive integral with positive leading entry.
        kernel: Vec<Vec<Scalar>>,
    },
}

pub fn solve_rational(a: &[Vec<Scalar>], b: &[Scalar], cols: usize) -> SolutionSet {
    let augmented: RatMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(&augmented, cols + 1);
    if pivots.last() == Some(&cols) {
        return SolutionSet::Empty;
    }
    let mut particular = vec![Scalar::zero(); cols];
    for (row, &p) in red.iter().zip(&pivots) {
        particular[p] = row[cols].clone();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            normalize_direction(&v)
        })
        .collect();
    SolutionSet::Affine { particular, kernel }
}

fn normalize_direction(v: &[Scalar]) -> Vec<Scalar> {
    let mut p = primitive_from_rational(v);
    if p.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        p.iter_mut().for_each(|x| *x = -x.clone());
    }
    p.iter().map(from_int).collect()
}

/// A basis of the saturated lattice `{x ∈ ℤⁿ : M x = 0}`.
pub fn integer_kernel(m: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m, cols);
    (snf.rank..cols)
        .map(|j| primitive(&snf.v.iter().map(|r| r[j].clone()).collect::<Vec<_>>()))
        .collect()
}

/// A unimodular `U` such that `U · bⱼ ∈ ℤᵏ × 0` for the given vectors
/// spanning a rank-`k` sublattice. The last `n − k` rows of `U` project
/// onto the quotient by the saturation of their span.
pub fn adapted_basis(vectors: &[Vec<BigInt>], n: usize) -> (IntMatrix, usize) {
    // columns are the vectors: n × m
    let m: IntMatrix = (0..n)
        .map(|i| vectors.iter().map(|v| v[i].clone()).collect())
        .collect();
    let snf = smith_normal_form(&m, vectors.len());
    (snf.u, snf.rank)
}

/// Whether `v` is an integer combination of `gens` (all rational vectors in ℚⁿ).
pub fn lattice_contains(gens: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let n = v.len();
    let l = gens
        .iter()
        .flatten()
        .chain(v.iter())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let lf = from_int(&l);
    let target: Vec<BigInt> = v.iter().map(|x| (x * &lf).to_integer()).collect();
    let g: IntMatrix = (0..n)
        .map(|i| gens.iter().map(|c| (&c[i] * &lf).to_integer()).collect())
        .collect();
    let snf = smith_normal_form(&g, gens.len());
    let uv = mat_vec(&snf.u, &target);
    uv.iter().enumerate().all(|(i, x)| {
        if i < snf.rank {
            (x % &snf.d[i][i]).is_zero()
        } else {
            x.is_zero()
        }
    })
}

pub fn lattice_equal(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
    a.iter().all(|v| lattice_contains(b, v)) && b.iter().all(|v| lattice_contains(a, v))
}

/// Determinant of a square integer matrix (Bareiss elimination).
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: IntMatrix = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Inverse of a square integer matrix over `ℚ`, or `None` if singular.
pub fn inverse_rat(m: &[Vec<BigInt>]) -> Option<RatMatrix> {
    let n = m.len();
    let aug: RatMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Scalar> = row.iter().map(from_int).collect();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    let (red, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Inverse of a unimodular integer matrix.
pub fn inverse_unimodular(m: &[Vec<BigInt>]) -> Option<IntMatrix> {
    let inv = inverse_rat(m)?;
    inv.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.is_integer().then(|| x.to_integer()))
                .collect()
        })
        .collect()
}

/// Lower-triangular basis (positive diagonal) of the lattice generated by
/// the columns of a full-row-rank `d × m` integer matrix.
pub fn column_hermite(gens: &[Vec<BigInt>], cols: usize) -> Option<IntMatrix> {
    let d = gens.len();
    let mut a: IntMatrix = gens.to_vec();
    for i in 0..d {
        loop {
            let nz: Vec<usize> = (i..cols).filter(|&j| !a[i][j].is_zero()).collect();
            if nz.is_empty() {
                return None;
            }
            let p = *nz.iter().min_by_key(|&&j| a[i][j].abs()).unwrap();
            for row in a.iter_mut() {
                row.swap(i, p);
            }
            if nz.len() == 1 {
                break;
            }
            for j in i + 1..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                let q = a[i][j].div_floor(&a[i][i]);
                col_axpy(&mut a, j, i, &q);
            }
        }
        if a[i][i].is_negative() {
            for row in a.iter_mut() {
                row[i] = -row[i].clone();
            }
        }
    }
    Some(a.into_iter().map(|r| r[..d].to_vec()).collect())
}

/// An integer solution of `A x = b`, if one exists.
pub fn solve_integer(a: &[Vec<BigInt>], cols: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let snf = smith_normal_form(a, cols);
    let ub = mat_vec(&snf.u, b);
    let mut y = vec![BigInt::zero(); cols];
    for (i, c) in ub.iter().enumerate() {
        if i < snf.rank {
            let (q, r) = c.div_rem(&snf.d[i][i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(mat_vec(&snf.v, &y))
}
