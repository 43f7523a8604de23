//! Concrete lattice constructions: dual graphs of curve configurations, the rank-10 lattice
//! with an index-two unimodular overlattice, the Brauer class witness and the odd-level
//! obstruction.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::embed::{self, Overlattice};
use super::matrix::{self, ZMat};
use super::{discriminant_group, named_lattice, parse_lattice_expr, roots, IntLattice, LatticeEmbedding};
use crate::error::LatticeError;

/// Gram matrix of a configuration of curves: `nodes[i]` is the self-intersection of curve `i`
/// and each edge `(i, j, m)` adds `m` to the intersection of curves `i` and `j`.
pub fn diagram_lattice(nodes: &[i64], edges: &[(usize, usize, i64)]) -> Result<IntLattice, LatticeError> {
    let n = nodes.len();
    let mut g = vec![vec![0i64; n]; n];
    for (i, &s) in nodes.iter().enumerate() {
        g[i][i] = s;
    }
    for &(i, j, m) in edges {
        if i >= n || j >= n || i == j {
            return Err(LatticeError::Dimension(format!("edge ({i}, {j}) on {n} nodes")));
        }
        g[i][j] += m;
        g[j][i] += m;
    }
    IntLattice::new(g)
}

/// Two `D4(-1)` configurations joined through a curve class of square `-2M-2` that meets
/// one leaf of each.
pub fn figure3_lattice(m: i64) -> Result<IntLattice, LatticeError> {
    if m < 1 {
        return Err(LatticeError::Parameter(format!("M = {m} must be positive")));
    }
    // nodes 0..4: centre 0 with leaves 1, 2, 3; nodes 4..8 likewise; node 8 the joining class
    let mut nodes = vec![-2i64; 8];
    nodes.push(-2 * m - 2);
    let mut edges = Vec::new();
    for base in [0, 4] {
        for leaf in 1..4 {
            edges.push((base, base + leaf, 1));
        }
    }
    edges.push((1, 8, 1));
    edges.push((5, 8, 1));
    Ok(diagram_lattice(&nodes, &edges)?.with_name(format!("figure3(M={m})")))
}

#[derive(Clone, Debug, Serialize)]
pub struct CtiReport {
    pub m: i64,
    #[serde(serialize_with = "ser_big")]
    pub disc: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub overlattice_disc: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub index: BigInt,
    pub unimodular: bool,
    pub even: bool,
}

fn ser_big<S: serde::Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// `E8(-1) + [[0,2],[2,2(M-2)]]`.
pub fn cti_lattice(m: i64) -> Result<IntLattice, LatticeError> {
    if m < 1 {
        return Err(LatticeError::Parameter(format!("M = {m} must be positive")));
    }
    let block = IntLattice::new(vec![vec![0, 2], vec![2, 2 * (m - 2)]])?;
    Ok(named_lattice("E8", -1)?.direct_sum(&block).with_name(format!("cti(M={m})")))
}

/// Glues half of the isotropic vector of the rank-two block onto the rank-10 lattice.
pub fn cti_overlattice(m: i64) -> Result<(IntLattice, Overlattice), LatticeError> {
    let l = cti_lattice(m)?;
    let mut glue = vec![BigRational::zero(); 10];
    glue[8] = BigRational::new(BigInt::one(), BigInt::from(2));
    let o = embed::overlattice(&l, &glue)?;
    Ok((l, o))
}

pub fn cti_report(m: i64) -> Result<CtiReport, LatticeError> {
    let (l, o) = cti_overlattice(m)?;
    let od = o.lattice.disc()?;
    Ok(CtiReport {
        m,
        disc: l.disc()?,
        unimodular: od == BigInt::one() || od == -BigInt::one(),
        overlattice_disc: od,
        index: o.index,
        even: o.lattice.is_even(),
    })
}

/// Outcome of the Brauer class construction on `U + 2E8(-1) + <-4M> + <-2N>`.
#[derive(Clone, Debug, Serialize)]
pub struct BrauerReport {
    pub m: i64,
    pub n: i64,
    #[serde(serialize_with = "ser_big")]
    pub ns_disc: BigInt,
    pub image_matches: bool,
    pub primitive: bool,
    pub complement_matches: bool,
    #[serde(serialize_with = "ser_big")]
    pub complement_disc: BigInt,
    pub complement_roots: usize,
    pub witness_square: i64,
    pub witness_orthogonal: bool,
    pub witness_square_mod4: i64,
}

impl BrauerReport {
    pub fn all_pass(&self) -> bool {
        self.image_matches
            && self.primitive
            && self.complement_matches
            && self.complement_roots == 0
            && self.witness_orthogonal
            && self.witness_square_mod4 == 2
    }
}

/// The Neron-Severi lattice `U + 2E8(-1) + <-4M> + <-2N>` with basis
/// `f', g', e_{i,1}, e_{i,2}, h', D`.
pub fn brauer_ns(m: i64, n: i64) -> Result<IntLattice, LatticeError> {
    parse_lattice_expr(&format!("U + 2E8(-1) + <{}> + <{}>", -4 * m, -2 * n))
}

/// The embedding of `U(2) + E8(-2)` sending `f ↦ f'`, `g ↦ Mf' + 2g' + h'` and
/// `eᵢ ↦ e_{i,1} + e_{i,2}`.
pub fn brauer_embedding(m: i64, ns: &IntLattice) -> Result<LatticeEmbedding, LatticeError> {
    let mut cols = vec![vec![0i64; 10]; 20];
    cols[0][0] = 1;
    cols[0][1] = m;
    cols[1][1] = 2;
    cols[18][1] = 1;
    for i in 0..8 {
        cols[2 + i][2 + i] = 1;
        cols[10 + i][2 + i] = 1;
    }
    let source = parse_lattice_expr("U(2) + E8(-2)")?;
    LatticeEmbedding::new(source, ns.clone(), matrix::zmat(&cols))
}

pub fn brauer_witness(m: i64, n: i64) -> Result<BrauerReport, LatticeError> {
    if m < 1 {
        return Err(LatticeError::Parameter(format!("M = {m} must be positive")));
    }
    if n <= 1 || n % 2 == 0 {
        return Err(LatticeError::Parameter(format!(
            "N = {n} must be odd and greater than 1, otherwise the complement contains roots"
        )));
    }
    let ns = brauer_ns(m, n)?;
    let emb = match brauer_embedding(m, &ns) {
        Ok(e) => e,
        Err(LatticeError::NotIsometric) => {
            return Err(LatticeError::Parameter("embedding fails to be isometric".into()))
        }
        Err(e) => return Err(e),
    };
    let image_matches = emb.image_gram() == parse_lattice_expr("U(2) + E8(-2)")?.zgram();
    let primitive = embed::is_primitive(&emb).is_primitive();
    let (comp, comp_emb) = embed::orthogonal_complement(&emb)?;
    // expected complement: e_{i,1} - e_{i,2}, 2Mf' + h', D
    let mut expected = vec![vec![0i64; 10]; 20];
    for i in 0..8 {
        expected[2 + i][i] = 1;
        expected[10 + i][i] = -1;
    }
    expected[0][8] = 2 * m;
    expected[18][8] = 1;
    expected[19][9] = 1;
    let expected: ZMat = matrix::zmat(&expected);
    let expected_gram = ns.restrict(&expected);
    let target_gram = parse_lattice_expr(&format!("E8(-2) + <{}> + <{}>", -4 * m, -2 * n))?.zgram();
    let complement_matches =
        embed::same_span(&comp_emb.matrix, &expected) && expected_gram == target_gram;
    let complement_roots = roots(&comp)?.len();
    let mut d = vec![0i64; 20];
    d[19] = 1;
    let witness_square = ns.pair(&d, &d);
    let witness_orthogonal = (0..10).all(|j| {
        let col: Vec<i64> = emb.matrix.iter().map(|r| i64::try_from(&r[j]).unwrap_or(0)).collect();
        ns.pair(&d, &col) == 0
    });
    Ok(BrauerReport {
        m,
        n,
        ns_disc: ns.disc()?,
        image_matches,
        primitive,
        complement_matches,
        complement_disc: comp.disc()?,
        complement_roots,
        witness_square,
        witness_orthogonal,
        witness_square_mod4: witness_square.rem_euclid(4),
    })
}

/// Finite obstructions against a primitive `U(2) + E8(-2)` in `U + 2E8(-1) + <-2M>`, M odd.
#[derive(Clone, Debug, Serialize)]
pub struct OddMReport {
    pub m: i64,
    /// `q` of the element of order two in `D(<2M>)`, modulo 2.
    pub half_q: String,
    /// Every value of `q` on `D(U(2))`, modulo 2.
    pub u2_q_values: Vec<String>,
    pub obstruction: bool,
    /// Minimal number of generators of `D(U(2) + E8(-2) + E8(-1) + <2M>)`.
    pub length: usize,
    /// Rank of its complement in `II_2_26`.
    pub complement_rank: usize,
}

pub fn odd_m_report(m: i64) -> Result<OddMReport, LatticeError> {
    if m < 1 || m % 2 == 0 {
        return Err(LatticeError::Parameter(format!("M = {m} must be odd and positive")));
    }
    let dn = discriminant_group(&IntLattice::rank1(2 * m))?;
    let half = dn.half_of(dn.length() - 1).expect("2M is even");
    let half_q = dn.q(&half);
    let du = discriminant_group(&named_lattice("U", 2)?)?;
    let mut u2: Vec<BigRational> = du.elements().iter().map(|e| du.q(e)).collect();
    u2.sort();
    u2.dedup();
    let obstruction = !u2.contains(&half_q);
    let big = parse_lattice_expr(&format!("U(2) + E8(-2) + E8(-1) + <{}>", 2 * m))?;
    let length = discriminant_group(&big)?.length();
    Ok(OddMReport {
        m,
        half_q: crate::algebra::fmt_rational(&half_q),
        u2_q_values: u2.iter().map(crate::algebra::fmt_rational).collect(),
        obstruction,
        length,
        complement_rank: 28 - big.rank(),
    })
}

pub fn odd_m_obstruction(m: i64) -> Result<bool, LatticeError> {
    let r = odd_m_report(m)?;
    Ok(r.obstruction && r.length > r.complement_rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure3_disc() {
        assert_eq!(figure3_lattice(1).unwrap().disc().unwrap(), BigInt::from(-32));
        assert_eq!(figure3_lattice(5).unwrap().disc().unwrap(), BigInt::from(-160));
        assert_eq!(diagram_lattice(&[-2], &[]).unwrap().gram(), &[vec![-2]]);
    }

    #[test]
    fn cti_unimodular() {
        let r = cti_report(1).unwrap();
        assert_eq!(r.disc, BigInt::from(-4));
        assert!(r.unimodular && r.even);
        assert_eq!(r.index, BigInt::from(2));
    }

    #[test]
    fn brauer() {
        let r = brauer_witness(1, 3).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.ns_disc, BigInt::from(-24));
        assert_eq!(r.witness_square, -6);
        let r = brauer_witness(2, 5).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.witness_square, -10);
        assert!(brauer_witness(1, 1).is_err());
    }

    #[test]
    fn odd_m() {
        assert!(odd_m_obstruction(1).unwrap());
        assert!(odd_m_obstruction(3).unwrap());
        assert!(odd_m_obstruction(2).is_err());
        let r = odd_m_report(1).unwrap();
        assert_eq!((r.length, r.complement_rank), (11, 9));
    }
}
