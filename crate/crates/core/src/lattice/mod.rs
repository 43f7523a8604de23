//! Integral lattices given by Gram matrices.

pub mod checks;
pub mod dgroup;
pub mod embed;
pub mod matrix;
pub mod named;
pub mod roots;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::LatticeError;
use matrix::ZMat;

pub use dgroup::{discriminant_group, DiscriminantGroup};
pub use embed::{is_primitive, orthogonal_complement, overlattice, LatticeEmbedding, Overlattice, Primitivity};
pub use named::{named_lattice, parse_lattice_expr};
pub use roots::roots;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntLattice {
    gram: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl IntLattice {
    /// Requires a symmetric square matrix; degenerate forms are allowed here and rejected by
    /// the operations that need nondegeneracy.
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::NotSymmetric);
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric);
                }
            }
        }
        Ok(IntLattice { gram, name: None })
    }

    pub fn from_zmat(g: &ZMat) -> Result<Self, LatticeError> {
        let rows: Option<Vec<Vec<i64>>> =
            g.iter().map(|r| r.iter().map(ToPrimitive::to_i64).collect()).collect();
        IntLattice::new(rows.ok_or_else(|| LatticeError::TooLarge("Gram entry exceeds i64".into()))?)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn zero() -> Self {
        IntLattice { gram: Vec::new(), name: None }
    }

    pub fn rank1(n: i64) -> Self {
        IntLattice { gram: vec![vec![n]], name: Some(format!("<{n}>")) }
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn zgram(&self) -> ZMat {
        matrix::zmat(&self.gram)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i] % 2 == 0)
    }

    pub fn det(&self) -> BigInt {
        matrix::det(&self.zgram())
    }

    pub fn is_degenerate(&self) -> bool {
        self.det().is_zero()
    }

    /// `(disc, (positive, negative))`.
    pub fn disc_and_signature(&self) -> Result<(BigInt, (usize, usize)), LatticeError> {
        let d = self.det();
        if d.is_zero() {
            return Err(LatticeError::Degenerate);
        }
        let (p, n, _) = matrix::inertia(&self.zgram());
        Ok((d, (p, n)))
    }

    pub fn disc(&self) -> Result<BigInt, LatticeError> {
        Ok(self.disc_and_signature()?.0)
    }

    pub fn signature(&self) -> Result<(usize, usize), LatticeError> {
        Ok(self.disc_and_signature()?.1)
    }

    pub fn is_negative_definite(&self) -> bool {
        self.signature().is_ok_and(|(p, _)| p == 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        IntLattice {
            gram: self.gram.iter().map(|r| r.iter().map(|x| x * k).collect()).collect(),
            name: self.name.as_ref().map(|n| format!("{n}({k})")),
        }
    }

    pub fn direct_sum(&self, other: &IntLattice) -> Self {
        let (a, b) = (self.rank(), other.rank());
        let mut g = vec![vec![0i64; a + b]; a + b];
        for i in 0..a {
            g[i][..a].copy_from_slice(&self.gram[i]);
        }
        for i in 0..b {
            g[a + i][a..].copy_from_slice(&other.gram[i]);
        }
        let name = match (&self.name, &other.name) {
            (Some(x), Some(y)) => Some(format!("{x} + {y}")),
            _ => None,
        };
        IntLattice { gram: g, name }
    }

    pub fn sum_all<'a>(parts: impl IntoIterator<Item = &'a IntLattice>) -> IntLattice {
        parts.into_iter().fold(IntLattice::zero(), |acc, l| {
            if acc.rank() == 0 && acc.name.is_none() {
                l.clone()
            } else {
                acc.direct_sum(l)
            }
        })
    }

    /// `vᵀ·G·w` for integer coordinate vectors.
    pub fn pair(&self, v: &[i64], w: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank() {
            if v[i] == 0 {
                continue;
            }
            for j in 0..self.rank() {
                s += v[i] * self.gram[i][j] * w[j];
            }
        }
        s
    }

    /// Gram matrix of the sublattice spanned by the columns of `basis`.
    pub fn restrict(&self, basis: &ZMat) -> ZMat {
        let g = self.zgram();
        matrix::mul(&matrix::mul(&matrix::transpose(basis), &g), basis)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.gram).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, LatticeError> {
        let g: Vec<Vec<i64>> =
            serde_json::from_str(s).map_err(|e| LatticeError::Parse(e.to_string()))?;
        IntLattice::new(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_and_scaling() {
        let u = IntLattice::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let s = u.direct_sum(&IntLattice::rank1(-4));
        assert_eq!(s.disc().unwrap(), BigInt::from(4));
        assert_eq!(s.signature().unwrap(), (1, 2));
        assert_eq!(u.scaled(2).disc().unwrap(), BigInt::from(-4));
        assert_eq!(IntLattice::from_json(&s.to_json()).unwrap().gram(), s.gram());
    }

    #[test]
    fn asymmetric_rejected() {
        assert!(IntLattice::new(vec![vec![0, 1], vec![2, 0]]).is_err());
    }
}
