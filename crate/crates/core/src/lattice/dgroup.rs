use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::matrix::{self, QMat};
use super::IntLattice;
use crate::error::LatticeError;

/// `L^∨/L` with its discriminant quadratic form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscriminantGroup {
    /// Nontrivial invariant factors `d₁ | d₂ | …`.
    #[serde(serialize_with = "ser_ints")]
    pub invariant_factors: Vec<BigInt>,
    /// Generators as rational coordinate vectors in the basis of `L`.
    #[serde(skip)]
    pub generator_lifts: Vec<Vec<BigRational>>,
    /// `q(gᵢ)` reduced into `[0, 2)` (into `[0, 1)` when `L` is odd).
    #[serde(serialize_with = "ser_rationals")]
    pub q_values: Vec<BigRational>,
    #[serde(skip)]
    gram: Vec<Vec<i64>>,
}

fn ser_rationals<S: serde::Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for q in v {
        seq.serialize_element(&crate::algebra::fmt_rational(q))?;
    }
    seq.end()
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Reduces a rational modulo `m`, into `[0, m)`.
pub fn reduce_mod(q: &BigRational, m: i64) -> BigRational {
    let m = BigRational::from_integer(BigInt::from(m));
    let k = (q / &m).floor();
    q - k * m
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().fold(BigInt::one(), |a, b| a * b)
    }

    /// Minimal number of generators.
    pub fn length(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Discriminant form value of `Σ cᵢ gᵢ`, modulo 2.
    pub fn q(&self, coeffs: &[BigInt]) -> BigRational {
        let v = self.combine(coeffs);
        reduce_mod(&quad(&self.gram, &v), 2)
    }

    /// Bilinear form value of two combinations, modulo 1.
    pub fn b(&self, x: &[BigInt], y: &[BigInt]) -> BigRational {
        let v = self.combine(x);
        let w = self.combine(y);
        reduce_mod(&bil(&self.gram, &v, &w), 1)
    }

    fn combine(&self, coeffs: &[BigInt]) -> Vec<BigRational> {
        let n = self.gram.len();
        let mut v = vec![BigRational::zero(); n];
        for (c, g) in coeffs.iter().zip(&self.generator_lifts) {
            for i in 0..n {
                v[i] += BigRational::from_integer(c.clone()) * &g[i];
            }
        }
        v
    }

    /// Every element as a coefficient vector against the generators.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![Vec::new()];
        for d in &self.invariant_factors {
            let mut next = Vec::new();
            for e in &out {
                let mut k = BigInt::zero();
                while &k < d {
                    let mut x = e.clone();
                    x.push(k.clone());
                    next.push(x);
                    k += 1;
                }
            }
            out = next;
        }
        out
    }

    /// Coefficient vector of the element of order 2 in the cyclic factor `i` (if `dᵢ` is even).
    pub fn half_of(&self, i: usize) -> Option<Vec<BigInt>> {
        let d = &self.invariant_factors[i];
        if d.is_odd() {
            return None;
        }
        let mut c = vec![BigInt::zero(); self.length()];
        c[i] = d / 2;
        Some(c)
    }
}

fn bil(g: &[Vec<i64>], v: &[BigRational], w: &[BigRational]) -> BigRational {
    let mut s = BigRational::zero();
    for i in 0..g.len() {
        for j in 0..g.len() {
            if g[i][j] != 0 {
                s += &v[i] * &w[j] * BigRational::from_integer(BigInt::from(g[i][j]));
            }
        }
    }
    s
}

fn quad(g: &[Vec<i64>], v: &[BigRational]) -> BigRational {
    bil(g, v, v)
}

pub fn discriminant_group(l: &IntLattice) -> Result<DiscriminantGroup, LatticeError> {
    if l.is_degenerate() {
        return Err(LatticeError::Degenerate);
    }
    let g = l.zgram();
    let s = matrix::smith(&g);
    let ginv: QMat = matrix::inverse_q(&matrix::to_q(&g)).ok_or(LatticeError::Degenerate)?;
    let n = l.rank();
    let mut factors = Vec::new();
    let mut lifts = Vec::new();
    let mut qs = Vec::new();
    let modulus = if l.is_even() { 2 } else { 1 };
    for i in 0..n {
        let d = s.diag[i].abs();
        if d.is_one() {
            continue;
        }
        // c = U⁻¹ eᵢ in dual coordinates; its L-coordinates are G⁻¹ c.
        let c: Vec<BigRational> =
            (0..n).map(|k| BigRational::from_integer(s.u_inv[k][i].clone())).collect();
        let v: Vec<BigRational> = (0..n)
            .map(|r| (0..n).fold(BigRational::zero(), |acc, k| acc + &ginv[r][k] * &c[k]))
            .collect();
        qs.push(reduce_mod(&quad(l.gram(), &v), modulus));
        lifts.push(v);
        factors.push(d);
    }
    Ok(DiscriminantGroup {
        invariant_factors: factors,
        generator_lifts: lifts,
        q_values: qs,
        gram: l.gram().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::named::{named_lattice, parse_lattice_expr};

    #[test]
    fn u2_and_d4() {
        let d = discriminant_group(&named_lattice("U", 2).unwrap()).unwrap();
        assert_eq!(d.invariant_factors, vec![BigInt::from(2), BigInt::from(2)]);
        assert!(d.elements().iter().all(|e| {
            let q = d.q(e);
            q.is_integer()
        }));
        let d = discriminant_group(&parse_lattice_expr("2D4(-1)").unwrap()).unwrap();
        assert_eq!(d.invariant_factors, vec![BigInt::from(2); 4]);
        assert!(discriminant_group(&named_lattice("E8", -1).unwrap()).unwrap().is_trivial());
    }

    #[test]
    fn rank_one_form() {
        let d = discriminant_group(&IntLattice::rank1(6)).unwrap();
        assert_eq!(d.invariant_factors, vec![BigInt::from(6)]);
        assert_eq!(d.q_values[0], BigRational::new(BigInt::from(1), BigInt::from(6)));
        let h = d.half_of(0).unwrap();
        assert_eq!(d.q(&h), BigRational::new(BigInt::from(3), BigInt::from(2)));
    }
}
