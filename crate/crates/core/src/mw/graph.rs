//! Dual graphs of the non-identity components of reducible fibres.

use crate::surface::KodairaType;

/// Non-identity components with their intersection graph and the indices of the
/// non-identity simple components (those a section can meet).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreGraph {
    pub names: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub simple: Vec<usize>,
}

impl FibreGraph {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Gram matrix: `-2` on the diagonal, `1` per edge.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut g = vec![vec![0i64; n]; n];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = -2;
        }
        for &(a, b) in &self.edges {
            g[a][b] += 1;
            g[b][a] += 1;
        }
        g
    }
}

fn named(names: &[&str], edges: &[(usize, usize)], simple: &[usize]) -> FibreGraph {
    FibreGraph {
        names: names.iter().map(|s| s.to_string()).collect(),
        edges: edges.to_vec(),
        simple: simple.to_vec(),
    }
}

pub fn fibre_graph(k: KodairaType) -> FibreGraph {
    use KodairaType::*;
    match k {
        I(n) if n >= 2 => {
            let names: Vec<String> = (1..n).map(|i| format!("c{i}")).collect();
            let edges = (0..names.len().saturating_sub(1)).map(|i| (i, i + 1)).collect();
            FibreGraph { simple: (0..names.len()).collect(), names, edges }
        }
        III => named(&["s1"], &[], &[0]),
        IV => named(&["s1", "s2"], &[(0, 1)], &[0, 1]),
        IStar(0) => named(&["c", "s1", "s2", "s3"], &[(0, 1), (0, 2), (0, 3)], &[1, 2, 3]),
        IStar(n) => {
            // near, chain c0..cn, far1, far2
            let mut names = vec!["near".to_string()];
            names.extend((0..=n).map(|i| format!("c{i}")));
            names.push("far1".into());
            names.push("far2".into());
            let chain = |i: u32| 1 + i as usize;
            let mut edges = vec![(0, chain(0))];
            edges.extend((0..n).map(|i| (chain(i), chain(i + 1))));
            let f1 = names.len() - 2;
            edges.push((chain(n), f1));
            edges.push((chain(n), f1 + 1));
            FibreGraph { names, edges, simple: vec![0, f1, f1 + 1] }
        }
        IVStar => named(
            &["m0", "c", "m1", "s1", "m2", "s2"],
            &[(0, 1), (1, 2), (2, 3), (1, 4), (4, 5)],
            &[3, 5],
        ),
        IIIStar => named(
            &["a1", "a2", "c", "b2", "b1", "s1", "d"],
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)],
            &[5],
        ),
        IIStar => named(
            &["c", "d", "e1", "e2", "l1", "l2", "l3", "l4"],
            &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6), (6, 7)],
            &[],
        ),
        _ => named(&[], &[], &[]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::IntLattice;

    #[test]
    fn graphs_match_root_lattices() {
        for t in ["I2", "I5", "III", "IV", "I0*", "I1*", "I4*", "IV*", "III*", "II*"] {
            let k: KodairaType = t.parse().unwrap();
            let g = IntLattice::new(fibre_graph(k).gram()).unwrap();
            let r = k.root_lattice().unwrap();
            assert_eq!(g.rank(), r.rank(), "{t}");
            assert_eq!(g.disc().unwrap(), r.disc().unwrap(), "{t}");
            assert_eq!(crate::lattice::roots(&g).unwrap().len(), crate::lattice::roots(&r).unwrap().len(), "{t}");
        }
        assert!(fibre_graph(KodairaType::I(1)).is_empty());
    }
}
