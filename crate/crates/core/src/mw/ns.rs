//! Trivial lattice, explicit Neron-Severi models and the projections `ψ`, `φ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::algebra::{fmt_rational, rat_int, Place, Rational};
use crate::error::SurfaceError;
use crate::lattice::matrix::{self, QMat, ZMat};
use crate::lattice::IntLattice;
use crate::surface::{KodairaType, Surface, SurfaceSummary};

use super::component::{component_at, ComponentLabel};
use super::graph::fibre_graph;
use super::intersect::{intersect, intersect_zero};
use super::section::{add_sections, multiply, subtract, verify_section};
use super::Section;

/// `⟨O, F⟩ + Σ R_v` with `R_v` negative definite root lattices, one copy per geometric fibre.
pub fn trivial_lattice(summary: &SurfaceSummary) -> IntLattice {
    let chi = summary.chi as i64;
    let mut name = if chi % 2 == 0 { "U".to_string() } else { "<1> + <-1>".to_string() };
    let mut l = IntLattice::new(vec![vec![-chi, 1], vec![1, 0]]).expect("symmetric");
    for f in summary.reducible() {
        let r = f.kodaira.root_lattice().expect("reducible fibre");
        for _ in 0..f.degree() {
            l = l.direct_sum(&r);
        }
    }
    let mut parts: Vec<(String, usize)> = Vec::new();
    for f in summary.reducible() {
        let n = f.kodaira.root_lattice_name().unwrap();
        match parts.iter_mut().find(|(m, _)| *m == n) {
            Some(p) => p.1 += f.degree(),
            None => parts.push((n, f.degree())),
        }
    }
    parts.sort_by_key(|(n, _)| std::cmp::Reverse(named_rank(n)));
    for (n, k) in parts {
        if k == 1 {
            name.push_str(&format!(" + {n}(-1)"));
        } else {
            name.push_str(&format!(" + {k}{n}(-1)"));
        }
    }
    l.with_name(name)
}

fn named_rank(name: &str) -> usize {
    name[1..].parse().unwrap_or(0)
}

/// A lattice spanned by `O`, `F`, non-identity fibre components and section classes, with the
/// radical of the spanning set's Gram matrix divided out.
#[derive(Clone, Debug)]
pub struct NsModel {
    pub labels: Vec<String>,
    /// Gram matrix on the spanning classes (may be degenerate).
    pub gram: Vec<Vec<i64>>,
    pub chi: u32,
    /// Number of leading classes spanning the trivial lattice.
    pub triv_rank: usize,
    /// Columns: a basis of the lattice in spanning coordinates.
    pub basis: ZMat,
    pub lattice: IntLattice,
    pub disc: BigInt,
    pub triv_disc: BigInt,
    /// Determinant of the height pairing on the sections modulo torsion.
    pub mwl_det: Rational,
    pub torsion: u64,
}

fn qvec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat_int(x)).collect()
}

impl NsModel {
    /// Builds the model from a spanning Gram matrix whose first two classes are `O`, `F`.
    pub fn new(labels: Vec<String>, gram: Vec<Vec<i64>>, chi: u32, triv_rank: usize, torsion: u64) -> Result<Self, SurfaceError> {
        let n = gram.len();
        if labels.len() != n || triv_rank < 2 || triv_rank > n {
            return Err(SurfaceError::Inconsistent("labels, Gram and trivial rank disagree".into()));
        }
        let whole = IntLattice::new(gram.clone())?;
        let g = whole.zgram();
        let basis = radical_complement(&g);
        let lattice = IntLattice::from_zmat(&whole.restrict(&basis))?;
        let disc = lattice.disc()?;
        let triv: Vec<Vec<i64>> = gram[..triv_rank].iter().map(|r| r[..triv_rank].to_vec()).collect();
        let triv_disc = IntLattice::new(triv)?.disc()?;
        let mut model = NsModel {
            labels,
            gram,
            chi,
            triv_rank,
            basis,
            lattice,
            disc,
            triv_disc,
            mwl_det: rat_int(1),
            torsion,
        };
        model.mwl_det = model.mwl_gram_det()?;
        Ok(model)
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn section_indices(&self) -> std::ops::Range<usize> {
        self.triv_rank..self.labels.len()
    }

    pub fn unit(&self, i: usize) -> Vec<Rational> {
        (0..self.labels.len()).map(|j| rat_int((i == j) as i64)).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn pair(&self, v: &[Rational], w: &[Rational]) -> Rational {
        let mut s = rat_int(0);
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                if self.gram[i][j] != 0 && !wj.is_zero() {
                    s += vi * wj * rat_int(self.gram[i][j]);
                }
            }
        }
        s
    }

    /// `ψ(D) = D − (D·F)O − (D·O + χ·D·F)F`, the projection orthogonal to `⟨O, F⟩`.
    pub fn psi(&self, d: &[Rational]) -> Vec<Rational> {
        let (o, f) = (self.unit(0), self.unit(1));
        let df = self.pair(d, &f);
        let dofx = self.pair(d, &o) + &df * rat_int(self.chi as i64);
        let mut out = d.to_vec();
        out[0] -= &df;
        out[1] -= dofx;
        out
    }

    /// Orthogonal projection to the complement of the trivial lattice.
    pub fn phi(&self, d: &[Rational]) -> Result<Vec<Rational>, SurfaceError> {
        let t = self.triv_rank;
        let gt: QMat = self.gram[..t].iter().map(|r| qvec(&r[..t])).collect();
        let rhs: Vec<Rational> = (0..t).map(|i| self.pair(d, &self.unit(i))).collect();
        let c = matrix::solve_rational(&gt, &rhs)
            .ok_or_else(|| SurfaceError::Inconsistent("trivial lattice is degenerate".into()))?;
        let mut out = d.to_vec();
        for (i, ci) in c.into_iter().enumerate() {
            out[i] -= ci;
        }
        Ok(out)
    }

    /// `−φ(P)·φ(Q)` for section classes `i`, `j`: the height pairing.
    pub fn phi_height(&self, i: usize, j: usize) -> Result<Rational, SurfaceError> {
        let a = self.phi(&self.unit(i))?;
        let b = self.phi(&self.unit(j))?;
        Ok(-self.pair(&a, &b))
    }

    fn mwl_gram_det(&self) -> Result<Rational, SurfaceError> {
        let idx: Vec<usize> = self.section_indices().collect();
        if idx.is_empty() {
            return Ok(rat_int(1));
        }
        let mut h: Vec<Vec<Rational>> = Vec::new();
        for &i in &idx {
            let mut row = Vec::new();
            for &j in &idx {
                row.push(self.phi_height(i, j)?);
            }
            h.push(row);
        }
        let l = h.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let hz: ZMat = h.iter().map(|r| r.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()).collect();
        let basis = radical_complement(&hz);
        let restricted = matrix::mul(&matrix::mul(&matrix::transpose(&basis), &hz), &basis);
        let r = basis.first().map_or(0, |row| row.len());
        let d = matrix::det(&restricted);
        Ok(Rational::new(d, num_traits::pow(l, r)))
    }

    /// `|disc NS|·|tors|² = |disc Triv|·det MWL`.
    pub fn disc_relation_holds(&self) -> bool {
        let lhs = Rational::from_integer(self.disc.abs() * BigInt::from(self.torsion * self.torsion));
        let rhs = Rational::from_integer(self.triv_disc.abs()) * &self.mwl_det;
        lhs == rhs
    }

    /// Essential rank `ρ − 2 − Σ(m_v − 1)`.
    pub fn mw_rank(&self) -> usize {
        self.rank() - self.triv_rank
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "labels": self.labels,
            "gram": self.gram,
            "rank": self.rank(),
            "disc": self.disc.to_string(),
            "triv_disc": self.triv_disc.to_string(),
            "mwl_det": fmt_rational(&self.mwl_det),
            "torsion": self.torsion,
            "disc_relation": self.disc_relation_holds(),
        })
    }
}

/// Basis (columns) of a complement of the integer radical of a symmetric matrix.
fn radical_complement(g: &ZMat) -> ZMat {
    let n = g.len();
    let k = matrix::integer_kernel(g, n);
    let kdim = k.first().map_or(0, |r| r.len());
    if kdim == 0 {
        return matrix::identity(n);
    }
    let sm = matrix::smith(&k);
    sm.u_inv.iter().map(|row| row[kdim..].to_vec()).collect()
}

/// Per-fibre assignment of section labels to graph nodes.
struct FibreSlot {
    kodaira: KodairaType,
    offset: usize,
    /// Node met by each section, if not the identity.
    nodes: Vec<Option<usize>>,
}

fn resolve_nodes(
    s: &Surface,
    sections: &[Section],
    place: &Place,
    kodaira: KodairaType,
) -> Result<Vec<Option<usize>>, SurfaceError> {
    let g = fibre_graph(kodaira);
    let labels: Vec<ComponentLabel> =
        sections.iter().map(|p| component_at(s, p, place)).collect::<Result<_, _>>()?;
    let mut out = vec![None; sections.len()];
    use ComponentLabel::*;
    match kodaira {
        KodairaType::I(n) => {
            let n = n as i64;
            let reference = labels.iter().position(|l| matches!(l, Cycle { distance } if 2 * *distance as i64 != n));
            for (i, l) in labels.iter().enumerate() {
                let Cycle { distance } = l else { continue };
                let k = *distance as i64;
                let oriented = match reference {
                    Some(r) if r != i && 2 * k != n => {
                        let Cycle { distance: kr } = labels[r] else { unreachable!() };
                        let kr = kr as i64;
                        let d = subtract(s, &sections[r], &sections[i])?;
                        let kd = match component_at(s, &d, place)? {
                            Cycle { distance } => distance as i64,
                            _ => 0,
                        };
                        let fold = |m: i64| {
                            let r = m.rem_euclid(n);
                            r.min(n - r)
                        };
                        if fold(kr - k) == kd {
                            k
                        } else if fold(kr + k) == kd {
                            n - k
                        } else {
                            return Err(SurfaceError::Inconsistent(format!("I{n} orientation at {place}")));
                        }
                    }
                    _ => k,
                };
                out[i] = Some(oriented as usize - 1);
            }
        }
        KodairaType::IStar(m) if m > 0 => {
            let far1 = g.simple[1];
            let reference = labels.iter().position(|l| *l == StarFar);
            for (i, l) in labels.iter().enumerate() {
                out[i] = match l {
                    StarNear => Some(g.simple[0]),
                    StarFar => {
                        let r = reference.unwrap();
                        if r == i {
                            Some(far1)
                        } else {
                            let d = subtract(s, &sections[r], &sections[i])?;
                            match component_at(s, &d, place)? {
                                Identity => Some(far1),
                                StarNear => Some(far1 + 1),
                                other => {
                                    return Err(SurfaceError::Inconsistent(format!(
                                        "difference of far sections meets {other}"
                                    )))
                                }
                            }
                        }
                    }
                    _ => None,
                };
            }
        }
        _ => {
            // simple components named by a residue: first appearance fixes the node
            let mut seen: Vec<ComponentLabel> = Vec::new();
            for (i, l) in labels.iter().enumerate() {
                if l.is_identity() {
                    continue;
                }
                let pos = match seen.iter().position(|x| x == l) {
                    Some(p) => p,
                    None => {
                        seen.push(l.clone());
                        seen.len() - 1
                    }
                };
                let node = *g.simple.get(pos).ok_or_else(|| {
                    SurfaceError::Inconsistent(format!("too many distinct components at {place}"))
                })?;
                out[i] = Some(node);
            }
        }
    }
    Ok(out)
}

/// Order of the subgroup of torsion elements in the group generated by `sections`.
fn torsion_subgroup_order(s: &Surface, sections: &[Section], heights: &[Vec<Rational>]) -> Result<u64, SurfaceError> {
    let r = sections.len();
    if r == 0 {
        return Ok(1);
    }
    let l = heights.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let hz: ZMat = heights
        .iter()
        .map(|row| row.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect())
        .collect();
    let kernel = matrix::integer_kernel(&hz, r);
    let kdim = kernel.first().map_or(0, |row| row.len());
    let mut gens = Vec::new();
    for c in 0..kdim {
        let mut acc = Section::Zero;
        for (i, p) in sections.iter().enumerate() {
            let coef: i64 = (&kernel[i][c]).try_into().map_err(|_| SurfaceError::Inconsistent("huge relation".into()))?;
            if coef != 0 {
                acc = add_sections(s, &acc, &multiply(s, p, coef)?)?;
            }
        }
        gens.push(acc);
    }
    let mut group = vec![Section::Zero];
    let mut frontier = vec![Section::Zero];
    while let Some(g) = frontier.pop() {
        for h in &gens {
            let n = add_sections(s, &g, h)?;
            if !group.contains(&n) {
                if group.len() > 64 {
                    return Err(SurfaceError::Inconsistent("torsion subgroup too large".into()));
                }
                group.push(n.clone());
                frontier.push(n);
            }
        }
    }
    Ok(group.len() as u64)
}

/// Explicit model over `O, F, Θ_{v,i}, P_1, …`; reducible fibres must lie over rational places.
pub fn ns_model(s: &Surface, sections: &[Section]) -> Result<NsModel, SurfaceError> {
    let summary = s.summary()?;
    let chi = s.chi() as i64;
    if sections.iter().any(|p| !verify_section(s, p)) {
        return Err(SurfaceError::NotOnSurface);
    }
    let sections: Vec<Section> = sections.iter().filter(|p| !p.is_zero()).cloned().collect();
    let var = s.base_var().to_string();
    let mut labels = vec!["O".to_string(), "F".to_string()];
    let mut slots = Vec::new();
    for f in summary.reducible() {
        if f.degree() != 1 {
            return Err(SurfaceError::Inconsistent(format!(
                "reducible fibre over the non-rational place {}",
                f.place.display_in(&var)
            )));
        }
        let g = fibre_graph(f.kodaira);
        let offset = labels.len();
        for n in &g.names {
            labels.push(format!("{}[{}]", n, f.place.display_in(&var)));
        }
        let nodes = resolve_nodes(s, &sections, &f.place, f.kodaira)?;
        slots.push(FibreSlot { kodaira: f.kodaira, offset, nodes });
    }
    let triv_rank = labels.len();
    for i in 0..sections.len() {
        labels.push(format!("P{}", i + 1));
    }
    let n = labels.len();
    let mut gram = vec![vec![0i64; n]; n];
    gram[0][0] = -chi;
    gram[0][1] = 1;
    gram[1][0] = 1;
    for slot in &slots {
        let g = fibre_graph(slot.kodaira).gram();
        for (i, row) in g.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                gram[slot.offset + i][slot.offset + j] = *v;
            }
        }
    }
    for (i, p) in sections.iter().enumerate() {
        let a = triv_rank + i;
        let po = intersect_zero(s, p)? as i64;
        gram[a][a] = -chi;
        gram[a][0] = po;
        gram[0][a] = po;
        gram[a][1] = 1;
        gram[1][a] = 1;
        for slot in &slots {
            if let Some(node) = slot.nodes[i] {
                gram[a][slot.offset + node] = 1;
                gram[slot.offset + node][a] = 1;
            }
        }
        for (j, q) in sections.iter().enumerate().skip(i + 1) {
            let b = triv_rank + j;
            let pq = if p == q { -chi } else { intersect(s, p, q)? as i64 };
            gram[a][b] = pq;
            gram[b][a] = pq;
        }
    }
    let mut model = NsModel::new(labels, gram, s.chi(), triv_rank, 1)?;
    let heights: Vec<Vec<Rational>> = model
        .section_indices()
        .map(|i| model.section_indices().map(|j| model.phi_height(i, j)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    model.torsion = torsion_subgroup_order(s, &sections, &heights)?;
    if !model.disc_relation_holds() {
        return Err(SurfaceError::Inconsistent(format!(
            "disc relation fails: |{}|·{}² vs |{}|·{}",
            model.disc,
            model.torsion,
            model.triv_disc,
            fmt_rational(&model.mwl_det)
        )));
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RatFunc;

    #[test]
    fn rational_surface_with_two_torsion() {
        let s = Surface::parse("y^2 = x^3 + x^2 + s*x").unwrap();
        let t = trivial_lattice(&s.summary().unwrap());
        assert_eq!(t.name.as_deref(), Some("<1> + <-1> + E7(-1) + A1(-1)"));
        assert_eq!(t.disc().unwrap(), BigInt::from(-4));
        let p = Section::new(RatFunc::zero(), RatFunc::zero());
        let m = ns_model(&s, &[p]).unwrap();
        assert_eq!(m.torsion, 2);
        assert_eq!(m.rank(), 10);
        assert_eq!(m.disc.abs(), BigInt::one());
        assert!(m.disc_relation_holds());
    }
}
