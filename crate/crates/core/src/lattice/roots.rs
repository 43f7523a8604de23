//! Short vector enumeration in negative definite lattices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::IntLattice;
use crate::error::LatticeError;

const MAX_RANK: usize = 12;
const MAX_DISC: i64 = 1_000_000;

/// All vectors `v` with `v² = -2`.
pub fn roots(l: &IntLattice) -> Result<Vec<Vec<i64>>, LatticeError> {
    short_vectors(l, 2).map(|vs| vs.into_iter().filter(|(_, n)| *n == 2).map(|(v, _)| v).collect())
}

/// Nonzero vectors with `0 < -v² ≤ bound`, each paired with `-v²`.
pub fn short_vectors(l: &IntLattice, bound: i64) -> Result<Vec<(Vec<i64>, i64)>, LatticeError> {
    let n = l.rank();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n > MAX_RANK {
        return Err(LatticeError::TooLarge(format!("rank {n} exceeds {MAX_RANK}")));
    }
    let (disc, (pos, _)) = l.disc_and_signature()?;
    if pos > 0 {
        return Err(LatticeError::NotDefinite);
    }
    if disc.abs() > BigInt::from(MAX_DISC) {
        return Err(LatticeError::TooLarge(format!("|disc| = {} exceeds {MAX_DISC}", disc.abs())));
    }
    let q = decompose(l);
    let mut out = Vec::new();
    let mut v = vec![0i64; n];
    descend(&q, n, BigRational::from_integer(BigInt::from(bound)), &mut v, &mut out);
    let g = l.scaled(-1);
    Ok(out
        .into_iter()
        .filter(|v| v.iter().any(|x| *x != 0))
        .map(|v| {
            let norm = g.pair(&v, &v);
            (v, norm)
        })
        .collect())
}

/// Rewrites the positive definite form `-G` as `Σ qᵢᵢ (xᵢ + Σ_{j>i} qᵢⱼ xⱼ)²`.
fn decompose(l: &IntLattice) -> Vec<Vec<BigRational>> {
    let n = l.rank();
    let mut q: Vec<Vec<BigRational>> = l
        .gram()
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(BigInt::from(-x))).collect())
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for m in k..n {
                let d = &q[k][i] * &q[i][m];
                q[k][m] -= d;
            }
        }
    }
    q
}

fn descend(
    q: &[Vec<BigRational>],
    level: usize,
    budget: BigRational,
    v: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if level == 0 {
        out.push(v.clone());
        return;
    }
    let i = level - 1;
    let n = q.len();
    let centre = (i + 1..n).fold(BigRational::zero(), |acc, j| {
        acc - &q[i][j] * BigRational::from_integer(BigInt::from(v[j]))
    });
    let cost = |x: i64| {
        let d = BigRational::from_integer(BigInt::from(x)) - &centre;
        &q[i][i] * &d * &d
    };
    // float estimate of the interval, then widened until exact checks fail
    let c = centre.to_f64().unwrap_or(0.0);
    let r = (budget.to_f64().unwrap_or(0.0) / q[i][i].to_f64().unwrap_or(1.0)).max(0.0).sqrt();
    let mut lo = (c - r).floor() as i64;
    while cost(lo - 1) <= budget {
        lo -= 1;
    }
    let mut hi = (c + r).ceil() as i64;
    while cost(hi + 1) <= budget {
        hi += 1;
    }
    for x in lo..=hi {
        let used = cost(x);
        if used > budget {
            continue;
        }
        v[i] = x;
        descend(q, level - 1, &budget - used, v, out);
    }
    v[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{named_lattice, parse_lattice_expr};

    #[test]
    fn root_counts() {
        assert_eq!(roots(&IntLattice::rank1(-2)).unwrap().len(), 2);
        assert_eq!(roots(&named_lattice("E8", -1).unwrap()).unwrap().len(), 240);
        assert_eq!(roots(&named_lattice("D4", -1).unwrap()).unwrap().len(), 24);
        assert_eq!(roots(&named_lattice("A2", -1).unwrap()).unwrap().len(), 6);
        assert!(roots(&parse_lattice_expr("E8(-2) + <-4> + <-6>").unwrap()).unwrap().is_empty());
    }

    #[test]
    fn indefinite_rejected() {
        assert_eq!(roots(&named_lattice("U", 1).unwrap()), Err(LatticeError::NotDefinite));
    }
}
