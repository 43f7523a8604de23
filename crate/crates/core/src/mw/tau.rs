//! The action of `τ = ı∘(⊟P)` on an abstract Neron-Severi model with two `II*` fibres and
//! orthogonal sections `P`, `Q` of heights `4M` and `2N`.

use serde::Serialize;

use crate::algebra::{rat_int, Rational};
use crate::error::SurfaceError;

use super::graph::fibre_graph;
use super::ns::NsModel;
use crate::surface::KodairaType;

#[derive(Clone, Debug, Serialize)]
pub struct TauReport {
    pub m: i64,
    pub n: i64,
    pub p_dot_o: i64,
    pub q_dot_o: i64,
    pub p_dot_q: i64,
    pub involution: bool,
    pub isometry: bool,
    pub fixes_fibre: bool,
    pub anti_invariant: bool,
    /// `h(P ⊟ Q)` read off the model.
    pub difference_height: String,
}

impl TauReport {
    pub fn all_pass(&self) -> bool {
        self.involution && self.isometry && self.fixes_fibre && self.anti_invariant
    }
}

const O: usize = 0;
const F: usize = 1;
const T0: usize = 2;
const TINF: usize = 10;
const P: usize = 18;
const Q: usize = 19;

/// Basis `O, F, Θ⁰₁…Θ⁰₈, Θ^∞₁…Θ^∞₈, P, Q` on a K3 surface.
pub fn abstract_model(m: i64, n: i64) -> Result<NsModel, SurfaceError> {
    if m < 1 || n < 2 {
        return Err(SurfaceError::Inconsistent(format!("need M ≥ 1 and N ≥ 2, got M = {m}, N = {n}")));
    }
    let chi = 2i64;
    let mut labels = vec!["O".to_string(), "F".to_string()];
    let g8 = fibre_graph(KodairaType::IIStar);
    for side in ["0", "oo"] {
        for name in &g8.names {
            labels.push(format!("{name}[{side}]"));
        }
    }
    labels.push("P".into());
    labels.push("Q".into());
    let mut g = vec![vec![0i64; 20]; 20];
    g[O][O] = -chi;
    g[O][F] = 1;
    g[F][O] = 1;
    for off in [T0, TINF] {
        for (i, row) in g8.gram().iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                g[off + i][off + j] = *v;
            }
        }
    }
    let set = |g: &mut Vec<Vec<i64>>, a: usize, b: usize, v: i64| {
        g[a][b] = v;
        g[b][a] = v;
    };
    for s in [P, Q] {
        set(&mut g, s, s, -chi);
        set(&mut g, s, F, 1);
    }
    // ⟨P, P⟩ = 4M, ⟨Q, Q⟩ = 2N, ⟨P, Q⟩ = 0 with both sections on identity components
    set(&mut g, P, O, 2 * m - 2);
    set(&mut g, Q, O, n - 2);
    set(&mut g, P, Q, 2 * m + n - 2);
    NsModel::new(labels, g, 2, 18, 1)
}

fn apply(map: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    // column j of `map` is the image of basis vector j
    let k = v.len();
    (0..k).map(|i| (0..k).fold(rat_int(0), |acc, j| acc + &map[j][i] * &v[j])).collect()
}

pub fn tau_check(m: i64, n: i64) -> Result<TauReport, SurfaceError> {
    let model = abstract_model(m, n)?;
    let k = model.labels.len();
    // R = P ⊟ Q = P − Q + O + 2N·F
    let mut r = vec![rat_int(0); k];
    r[P] = rat_int(1);
    r[Q] = rat_int(-1);
    r[O] = rat_int(1);
    r[F] = rat_int(2 * n);
    let e = |i: usize| model.unit(i);
    // consistency of R with the translation invariance of intersections
    let ro = model.pair(&r, &e(O));
    let rp = model.pair(&r, &e(P));
    let rq = model.pair(&r, &e(Q));
    let rr = model.pair(&r, &r);
    if ro != rat_int(2 * m + n - 2) || rp != rat_int(n - 2) || rq != rat_int(2 * m + 4 * n - 2) || rr != rat_int(-2) {
        return Err(SurfaceError::Inconsistent("class of P ⊟ Q does not fit the intersection data".into()));
    }
    let mut images: Vec<Vec<Rational>> = (0..k).map(e).collect();
    images[O] = e(P);
    images[P] = e(O);
    images[Q] = r.clone();
    for i in 0..8 {
        images[T0 + i] = e(TINF + i);
        images[TINF + i] = e(T0 + i);
    }
    let involution = (0..k).all(|i| apply(&images, &images[i]) == e(i));
    let isometry = (0..k).all(|i| (0..k).all(|j| model.pair(&images[i], &images[j]) == rat_int(model.gram[i][j])));
    let fixes_fibre = images[F] == e(F);
    let psi_q = model.psi(&e(Q));
    let tau_psi_q = apply(&images, &psi_q);
    let anti_invariant = tau_psi_q.iter().zip(&psi_q).all(|(a, b)| *a == -b.clone());
    let phi_r = model.phi(&r)?;
    let difference_height = crate::algebra::fmt_rational(&-model.pair(&phi_r, &phi_r));
    Ok(TauReport {
        m,
        n,
        p_dot_o: 2 * m - 2,
        q_dot_o: n - 2,
        p_dot_q: 2 * m + n - 2,
        involution,
        isometry,
        fixes_fibre,
        anti_invariant,
        difference_height,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn anti_invariance() {
        let r = tau_check(1, 3).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!((r.p_dot_o, r.q_dot_o, r.p_dot_q), (0, 1, 3));
        assert_eq!(r.difference_height, "10");
        let r = tau_check(2, 5).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.difference_height, "18");
    }

    #[test]
    fn abstract_disc() {
        let m = abstract_model(1, 3).unwrap();
        assert_eq!(m.rank(), 20);
        assert_eq!(m.disc, BigInt::from(-24));
        assert!(m.disc_relation_holds());
    }
}
