//! Embeddings, orthogonal complements, saturation and overlattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{self, ZMat};
use super::IntLattice;
use crate::error::LatticeError;

/// Source basis written in target coordinates: column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeEmbedding {
    pub source: IntLattice,
    pub target: IntLattice,
    pub matrix: ZMat,
}

impl LatticeEmbedding {
    pub fn new(source: IntLattice, target: IntLattice, matrix: ZMat) -> Result<Self, LatticeError> {
        if matrix.len() != target.rank() || matrix.iter().any(|r| r.len() != source.rank()) {
            return Err(LatticeError::Dimension(format!(
                "expected {}×{} matrix",
                target.rank(),
                source.rank()
            )));
        }
        if target.restrict(&matrix) != source.zgram() {
            return Err(LatticeError::NotIsometric);
        }
        Ok(LatticeEmbedding { source, target, matrix })
    }

    /// Builds the embedding of the lattice spanned by `columns` with its induced form.
    pub fn from_images(target: &IntLattice, columns: ZMat) -> Result<Self, LatticeError> {
        let g = target.restrict(&columns);
        let source = IntLattice::from_zmat(&g)?;
        LatticeEmbedding::new(source, target.clone(), columns)
    }

    pub fn image_gram(&self) -> ZMat {
        self.target.restrict(&self.matrix)
    }
}

/// Outcome of a primitivity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primitivity {
    Primitive,
    /// A vector of the saturation that is not in the image, with the index of the image.
    NotPrimitive { witness: Vec<BigInt>, index: BigInt },
}

impl Primitivity {
    pub fn is_primitive(&self) -> bool {
        matches!(self, Primitivity::Primitive)
    }
}

/// Compares the image with its saturation `(image ⊗ ℚ) ∩ ℤⁿ`, computed as a double integer kernel.
pub fn is_primitive(emb: &LatticeEmbedding) -> Primitivity {
    let n = emb.target.rank();
    let r = emb.source.rank();
    if r == 0 {
        return Primitivity::Primitive;
    }
    let m = &emb.matrix;
    // w with wᵀ·M = 0, then v with wᵀ·v = 0 for all such w
    let left = matrix::integer_kernel(&matrix::transpose(m), n);
    let sat = if left.is_empty() || left[0].is_empty() {
        matrix::identity(n)
    } else {
        matrix::integer_kernel(&matrix::transpose(&left), n)
    };
    let dm = matrix::det(&matrix::mul(&matrix::transpose(m), m));
    let ds = matrix::det(&matrix::mul(&matrix::transpose(&sat), &sat));
    let ratio = &dm / &ds;
    let index = ratio.sqrt();
    if index.is_one() {
        return Primitivity::Primitive;
    }
    let mq = matrix::to_q(m);
    for j in 0..sat[0].len() {
        let col: Vec<BigRational> =
            sat.iter().map(|row| BigRational::from_integer(row[j].clone())).collect();
        let sol = matrix::solve_rational(&mq, &col).expect("saturation lies in the rational span");
        if sol.iter().any(|x| !x.is_integer()) {
            return Primitivity::NotPrimitive {
                witness: sat.iter().map(|row| row[j].clone()).collect(),
                index,
            };
        }
    }
    unreachable!("index > 1 but every saturation vector lies in the image")
}

/// Saturated orthogonal complement of the image, with its embedding into the target.
pub fn orthogonal_complement(
    emb: &LatticeEmbedding,
) -> Result<(IntLattice, LatticeEmbedding), LatticeError> {
    let target = &emb.target;
    let n = target.rank();
    let pairing = matrix::mul(&matrix::transpose(&emb.matrix), &target.zgram());
    let k = if emb.source.rank() == 0 { matrix::identity(n) } else { matrix::integer_kernel(&pairing, n) };
    let k = if k.first().is_some_and(|r| r.is_empty()) { vec![Vec::new(); n] } else { k };
    let g = target.restrict(&k);
    let comp = IntLattice::from_zmat(&g)?;
    let e = LatticeEmbedding { source: comp.clone(), target: target.clone(), matrix: k };
    Ok((comp, e))
}

/// True when the columns of `a` and `b` span the same sublattice.
pub fn same_span(a: &ZMat, b: &ZMat) -> bool {
    let contains = |x: &ZMat, y: &ZMat| {
        let xq = matrix::to_q(x);
        (0..y[0].len()).all(|j| {
            let col: Vec<BigRational> =
                y.iter().map(|r| BigRational::from_integer(r[j].clone())).collect();
            matrix::solve_rational(&xq, &col).is_some_and(|s| s.iter().all(|v| v.is_integer()))
        })
    };
    contains(a, b) && contains(b, a)
}

/// Overlattice of `L` spanned by `L` and a glue vector; the basis is `basis_numer / denom`
/// in the coordinates of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlattice {
    pub lattice: IntLattice,
    pub basis_numer: ZMat,
    pub denom: BigInt,
    pub index: BigInt,
}

/// Overlattice of `L` generated by `L` and a rational vector (coordinates in the basis of `L`).
pub fn overlattice(l: &IntLattice, glue: &[BigRational]) -> Result<Overlattice, LatticeError> {
    let n = l.rank();
    if glue.len() != n {
        return Err(LatticeError::Dimension("glue length".into()));
    }
    let g = matrix::to_q(&l.zgram());
    let gv: Vec<BigRational> = (0..n)
        .map(|i| (0..n).fold(BigRational::zero(), |acc, j| acc + &g[i][j] * &glue[j]))
        .collect();
    if gv.iter().any(|x| !x.is_integer()) {
        return Err(LatticeError::BadGlue("non-integral pairing with L".into()));
    }
    let sq = glue.iter().zip(&gv).fold(BigRational::zero(), |acc, (a, b)| acc + a * b);
    if !sq.is_integer() {
        return Err(LatticeError::BadGlue("non-integral square".into()));
    }
    if l.is_even() && sq.to_integer().is_odd() {
        return Err(LatticeError::BadGlue("odd square would break evenness".into()));
    }
    let k = glue.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    // generators scaled by k: k·eᵢ and k·glue, echelonized to n independent columns
    let mut gens: ZMat = vec![vec![BigInt::zero(); n + 1]; n];
    for i in 0..n {
        gens[i][i] = k.clone();
        gens[i][n] = (&glue[i] * BigRational::from_integer(k.clone())).to_integer();
    }
    let (h, _, rank) = matrix::column_echelon(&gens);
    debug_assert_eq!(rank, n);
    let basis: ZMat = h.iter().map(|r| r[..n].to_vec()).collect();
    let k2 = &k * &k;
    let gram: ZMat = l
        .restrict(&basis)
        .into_iter()
        .map(|r| r.into_iter().map(|x| x / &k2).collect())
        .collect();
    let index = num_traits::pow(k.clone(), n) / matrix::det(&basis).abs();
    Ok(Overlattice { lattice: IntLattice::from_zmat(&gram)?, basis_numer: basis, denom: k, index })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::zmat;

    #[test]
    fn index_two_sublattice() {
        let target = IntLattice::rank1(-2);
        let emb = LatticeEmbedding::new(IntLattice::rank1(-8), target, zmat(&[vec![2]])).unwrap();
        match is_primitive(&emb) {
            Primitivity::NotPrimitive { witness, index } => {
                assert_eq!(witness.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![BigInt::one()]);
                assert_eq!(index, BigInt::from(2));
            }
            p => panic!("{p:?}"),
        }
    }

    #[test]
    fn diagonal_e8_is_primitive() {
        let e8 = crate::lattice::named_lattice("E8", -1).unwrap();
        let target = e8.direct_sum(&e8);
        let mut m = vec![vec![0i64; 8]; 16];
        for i in 0..8 {
            m[i][i] = 1;
            m[8 + i][i] = 1;
        }
        let emb = LatticeEmbedding::from_images(&target, zmat(&m)).unwrap();
        assert_eq!(emb.source.det(), BigInt::from(256));
        assert!(is_primitive(&emb).is_primitive());
        let (comp, _) = orthogonal_complement(&emb).unwrap();
        assert_eq!(comp.rank(), 8);
        assert_eq!(comp.det(), BigInt::from(256));
    }

    #[test]
    fn trivial_glue_returns_l() {
        let l = crate::lattice::parse_lattice_expr("U + <-4>").unwrap();
        let z = vec![BigRational::zero(); 3];
        let o = overlattice(&l, &z).unwrap();
        assert_eq!(o.lattice.det(), l.det());
        assert!(o.index.is_one());
    }

    #[test]
    fn full_rank_complement_is_zero() {
        let u = crate::lattice::named_lattice("U", 1).unwrap();
        let emb = LatticeEmbedding::new(u.clone(), u, matrix::identity(2)).unwrap();
        let (c, _) = orthogonal_complement(&emb).unwrap();
        assert_eq!(c.rank(), 0);
    }
}
