//! Exact integer and rational matrix routines: determinants, Smith and Hermite forms,
//! integer kernels, rational solves and symmetric decompositions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type ZMat = Vec<Vec<BigInt>>;
pub type QMat = Vec<Vec<BigRational>>;

pub fn zmat(rows: &[Vec<i64>]) -> ZMat {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn identity(n: usize) -> ZMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mul(a: &ZMat, b: &ZMat) -> ZMat {
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|r| {
            (0..m)
                .map(|j| (0..k).fold(BigInt::zero(), |acc, t| acc + &r[t] * &b[t][j]))
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &ZMat, v: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|r| r.iter().zip(v).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)).collect()
}

pub fn to_q(a: &ZMat) -> QMat {
    a.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect()
}

/// Fraction-free (Bareiss) determinant of a square matrix.
pub fn det(a: &ZMat) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Smith normal form `U·A·V = D` of an m×n matrix, with `U⁻¹` tracked as well.
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub u: ZMat,
    pub u_inv: ZMat,
    pub v: ZMat,
}

pub fn smith(a: &ZMat) -> Smith {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut d = a.clone();
    let mut u = identity(m);
    let mut u_inv = identity(m);
    let mut v = identity(n);

    let row_add = |d: &mut ZMat, u: &mut ZMat, ui: &mut ZMat, i: usize, j: usize, c: &BigInt| {
        // row_i += c·row_j
        for k in 0..d[0].len() {
            let t = &d[j][k] * c;
            d[i][k] += t;
        }
        for k in 0..u[0].len() {
            let t = &u[j][k] * c;
            u[i][k] += t;
        }
        for row in ui.iter_mut() {
            let t = &row[i] * c;
            row[j] -= t;
        }
    };
    let col_add = |d: &mut ZMat, v: &mut ZMat, i: usize, j: usize, c: &BigInt| {
        // col_i += c·col_j
        for row in d.iter_mut() {
            let t = &row[j] * c;
            row[i] += t;
        }
        for row in v.iter_mut() {
            let t = &row[j] * c;
            row[i] += t;
        }
    };

    let mut t = 0;
    while t < m.min(n) {
        // pivot: smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        if pi != t {
            d.swap(pi, t);
            u.swap(pi, t);
            for row in u_inv.iter_mut() {
                row.swap(pi, t);
            }
        }
        if pj != t {
            for row in d.iter_mut() {
                row.swap(pj, t);
            }
            for row in v.iter_mut() {
                row.swap(pj, t);
            }
        }
        let mut clean = true;
        for i in t + 1..m {
            if d[i][t].is_zero() {
                continue;
            }
            let q = d[i][t].div_floor(&d[t][t]);
            row_add(&mut d, &mut u, &mut u_inv, i, t, &-q);
            if !d[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..n {
            if d[t][j].is_zero() {
                continue;
            }
            let q = d[t][j].div_floor(&d[t][t]);
            col_add(&mut d, &mut v, j, t, &-q);
            if !d[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility condition
        let mut bad = None;
        'find: for i in t + 1..m {
            for j in t + 1..n {
                if !(&d[i][j] % &d[t][t]).is_zero() {
                    bad = Some(i);
                    break 'find;
                }
            }
        }
        if let Some(i) = bad {
            row_add(&mut d, &mut u, &mut u_inv, t, i, &BigInt::one());
            continue;
        }
        if d[t][t].is_negative() {
            for k in 0..n {
                d[t][k] = -&d[t][k];
            }
            for k in 0..m {
                u[t][k] = -&u[t][k];
            }
            for row in u_inv.iter_mut() {
                row[t] = -&row[t];
            }
        }
        t += 1;
    }
    let diag = (0..m.min(n)).map(|i| d[i][i].clone()).collect();
    Smith { diag, u, u_inv, v }
}

/// Elementary divisors (nonzero part of the Smith diagonal).
pub fn elementary_divisors(a: &ZMat) -> Vec<BigInt> {
    smith(a).diag.into_iter().filter(|x| !x.is_zero()).collect()
}

/// Column Hermite-style reduction `A·V = H` with `V` unimodular; returns `(H, V, rank)`
/// where the first `rank` columns of `H` are echelon and the rest vanish.
pub fn column_echelon(a: &ZMat) -> (ZMat, ZMat, usize) {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut h = a.clone();
    let mut v = identity(n);
    let mut c = 0;
    for i in 0..m {
        if c >= n {
            break;
        }
        loop {
            // smallest nonzero entry of row i in columns c..n
            let piv = (c..n)
                .filter(|&j| !h[i][j].is_zero())
                .min_by(|&x, &y| h[i][x].abs().cmp(&h[i][y].abs()));
            let Some(pj) = piv else { break };
            swap_cols(&mut h, &mut v, c, pj);
            let mut done = true;
            for j in c + 1..n {
                if h[i][j].is_zero() {
                    continue;
                }
                let q = h[i][j].div_floor(&h[i][c]);
                add_col(&mut h, &mut v, j, c, &-q);
                if !h[i][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !h[i][c].is_zero() {
            c += 1;
        }
    }
    (h, v, c)
}

fn swap_cols(h: &mut ZMat, v: &mut ZMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in h.iter_mut() {
        row.swap(a, b);
    }
    for row in v.iter_mut() {
        row.swap(a, b);
    }
}

fn add_col(h: &mut ZMat, v: &mut ZMat, dst: usize, src: usize, c: &BigInt) {
    for row in h.iter_mut() {
        let t = &row[src] * c;
        row[dst] += t;
    }
    for row in v.iter_mut() {
        let t = &row[src] * c;
        row[dst] += t;
    }
}

/// Basis (as columns of an n×k matrix) of the saturated integer kernel `{x : A·x = 0}`.
pub fn integer_kernel(a: &ZMat, ncols: usize) -> ZMat {
    if a.is_empty() {
        return identity(ncols);
    }
    let (_, v, rank) = column_echelon(a);
    v.iter().map(|row| row[rank..].to_vec()).collect()
}

/// Rank over ℚ.
pub fn rank(a: &ZMat) -> usize {
    column_echelon(a).2
}

/// Solves `A·x = b` over ℚ for `A` of full column rank; `None` if inconsistent.
pub fn solve_rational(a: &QMat, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut aug: QMat = a.iter().zip(b).map(|(r, x)| {
        let mut r = r.clone();
        r.push(x.clone());
        r
    }).collect();
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(p) = (row..m).find(|&i| !aug[i][col].is_zero()) else { continue };
        aug.swap(row, p);
        let inv = aug[row][col].recip();
        for k in col..=n {
            aug[row][k] = &aug[row][k] * &inv;
        }
        for i in 0..m {
            if i != row && !aug[i][col].is_zero() {
                let f = aug[i][col].clone();
                for k in col..=n {
                    let t = &f * &aug[row][k];
                    aug[i][k] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if (row..m).any(|i| !aug[i][n].is_zero()) {
        return None;
    }
    if pivots.len() < n {
        return None;
    }
    Some((0..n).map(|i| aug[i][n].clone()).collect())
}

/// Inverse of a nonsingular rational matrix.
pub fn inverse_q(a: &QMat) -> Option<QMat> {
    let n = a.len();
    let mut cols = Vec::new();
    for j in 0..n {
        let e: Vec<BigRational> =
            (0..n).map(|i| if i == j { BigRational::one() } else { BigRational::zero() }).collect();
        cols.push(solve_rational(a, &e)?);
    }
    Some(transpose(&cols))
}

/// Signs of the pivots of an exact symmetric LDLᵀ decomposition with symmetric pivoting:
/// returns `(positive, negative, zero)` counts.
pub fn inertia(g: &ZMat) -> (usize, usize, usize) {
    let n = g.len();
    let mut a = to_q(g);
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    while !active.is_empty() {
        let diag = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match diag {
            Some(p) => p,
            None => {
                let pair = active.iter().flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                match pair {
                    None => break,
                    Some((i, j)) => {
                        // e_i ← e_i + e_j makes the diagonal entry 2·a_ij ≠ 0
                        for k in 0..n {
                            let t = a[j][k].clone();
                            a[i][k] += t;
                        }
                        for k in 0..n {
                            let t = a[k][j].clone();
                            a[k][i] += t;
                        }
                        i
                    }
                }
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &d;
            for &j in &active {
                let t = &f * &a[p][j];
                a[i][j] -= t;
            }
        }
        for &i in &active {
            a[i][p] = BigRational::zero();
            a[p][i] = BigRational::zero();
        }
    }
    (pos, neg, n - pos - neg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(det(&zmat(&[vec![0, 1], vec![1, 0]])), BigInt::from(-1));
        assert_eq!(det(&zmat(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]])), BigInt::from(4));
        assert_eq!(det(&zmat(&[vec![0, 0], vec![0, 1]])), BigInt::zero());
    }

    #[test]
    fn smith_form_identity() {
        let a = zmat(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith(&a);
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let d = mul(&mul(&s.u, &a), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(*x, if i == j { s.diag[i].clone() } else { BigInt::zero() });
            }
        }
        assert_eq!(mul(&s.u, &s.u_inv), identity(3));
    }

    #[test]
    fn kernel_is_saturated() {
        let a = zmat(&[vec![2, 4, 6]]);
        let k = integer_kernel(&a, 3);
        assert_eq!(k[0].len(), 2);
        assert!(mul(&a, &k).iter().flatten().all(Zero::is_zero));
        let minors = elementary_divisors(&k);
        assert!(minors.iter().all(One::is_one));
    }

    #[test]
    fn inertia_of_hyperbolic_plane() {
        assert_eq!(inertia(&zmat(&[vec![0, 1], vec![1, 0]])), (1, 1, 0));
        assert_eq!(inertia(&zmat(&[vec![-2, 1], vec![1, -2]])), (0, 2, 0));
        assert_eq!(inertia(&zmat(&[vec![0, 0], vec![0, 0]])), (0, 0, 2));
    }
}
