//! Standard root lattices and lattice expressions such as `"U + 2*E8(-1) + <-4>"`.

use super::IntLattice;
use crate::error::LatticeError;

/// Edge list of a simply-laced Dynkin diagram.
fn cartan(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in edges {
        g[a][b] = -1;
        g[b][a] = -1;
    }
    g
}

pub fn a_n(n: usize) -> IntLattice {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    IntLattice::new(cartan(n, &edges)).unwrap().with_name(format!("A{n}"))
}

pub fn d_n(n: usize) -> IntLattice {
    assert!(n >= 4);
    let mut edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
    edges.push((n - 3, n - 1));
    IntLattice::new(cartan(n, &edges)).unwrap().with_name(format!("D{n}"))
}

pub fn e_n(n: usize) -> IntLattice {
    assert!((6..=8).contains(&n));
    let mut edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
    edges.push((2, n - 1));
    IntLattice::new(cartan(n, &edges)).unwrap().with_name(format!("E{n}"))
}

pub fn hyperbolic() -> IntLattice {
    IntLattice::new(vec![vec![0, 1], vec![1, 0]]).unwrap().with_name("U")
}

/// Looks up a named lattice and scales its form.
pub fn named_lattice(name: &str, scale: i64) -> Result<IntLattice, LatticeError> {
    if scale == 0 {
        return Err(LatticeError::Parameter("scale must be nonzero".into()));
    }
    let base = match name {
        "U" => hyperbolic(),
        "K3" => parse_lattice_expr("3U + 2E8(-1)")?.with_name("K3"),
        "II_2_26" => parse_lattice_expr("2U + 3E8(-1)")?.with_name("II_2_26"),
        _ => {
            let (head, digits) = name.split_at(1);
            let n: usize = digits
                .parse()
                .map_err(|_| LatticeError::Parse(format!("unknown lattice name {name}")))?;
            match head {
                "A" if n >= 1 => a_n(n),
                "D" if n >= 4 => d_n(n),
                "E" if (6..=8).contains(&n) => e_n(n),
                _ => return Err(LatticeError::Parse(format!("unknown lattice name {name}"))),
            }
        }
    };
    Ok(if scale == 1 { base } else { base.scaled(scale) })
}

fn parse_term(term: &str) -> Result<(usize, IntLattice), LatticeError> {
    let t = term.trim();
    let bad = || LatticeError::Parse(format!("cannot read term '{t}'"));
    let digits = t.chars().take_while(char::is_ascii_digit).count();
    let (mult, rest) = if digits > 0 {
        let m: usize = t[..digits].parse().map_err(|_| bad())?;
        (m, t[digits..].trim_start().trim_start_matches('*').trim_start())
    } else {
        (1, t)
    };
    if let Some(inner) = rest.strip_prefix('<') {
        let inner = inner.strip_suffix('>').ok_or_else(bad)?;
        let n: i64 = inner.trim().parse().map_err(|_| bad())?;
        return Ok((mult, IntLattice::rank1(n)));
    }
    let (name, scale) = match rest.find('(') {
        Some(p) => {
            let s = rest[p + 1..].strip_suffix(')').ok_or_else(bad)?;
            (&rest[..p], s.trim().parse::<i64>().map_err(|_| bad())?)
        }
        None => (rest, 1),
    };
    let mut l = named_lattice(name.trim(), scale)?;
    l.name = Some(if scale == 1 { name.trim().to_string() } else { format!("{}({scale})", name.trim()) });
    Ok((mult, l))
}

/// Parses a `+`-separated direct sum of named lattices, `<n>` rank-one lattices, and
/// multiplicities (`2*E8(-1)` or `2E8(-1)`).
pub fn parse_lattice_expr(s: &str) -> Result<IntLattice, LatticeError> {
    let mut parts = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '<' => depth += 1,
            ')' | '>' => depth -= 1,
            '+' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    let mut out: Option<IntLattice> = None;
    for p in parts {
        if p.trim().is_empty() {
            return Err(LatticeError::Parse(format!("empty term in '{s}'")));
        }
        let (m, l) = parse_term(p)?;
        for _ in 0..m {
            out = Some(match out {
                None => l.clone(),
                Some(acc) => acc.direct_sum(&l),
            });
        }
    }
    let mut l = out.ok_or_else(|| LatticeError::Parse("empty expression".into()))?;
    l.name = Some(s.trim().to_string());
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn root_lattice_determinants() {
        assert_eq!(a_n(4).det(), BigInt::from(5));
        assert_eq!(d_n(4).det(), BigInt::from(4));
        assert_eq!(d_n(8).det(), BigInt::from(4));
        assert_eq!(e_n(6).det(), BigInt::from(3));
        assert_eq!(e_n(7).det(), BigInt::from(2));
        assert_eq!(e_n(8).det(), BigInt::from(1));
    }

    #[test]
    fn expressions() {
        let k3 = named_lattice("K3", 1).unwrap();
        assert_eq!(k3.disc_and_signature().unwrap(), (BigInt::from(-1), (3, 19)));
        let l = parse_lattice_expr("U + 2*E7(-1) + 2A1(-1)").unwrap();
        assert_eq!(l.rank(), 18);
        assert_eq!(l.det(), BigInt::from(-16));
        assert_eq!(named_lattice("U", 2).unwrap().gram(), &[vec![0, 2], vec![2, 0]]);
        assert!(parse_lattice_expr("U + F4").is_err());
        assert_eq!(parse_lattice_expr("<-4> + <-6>").unwrap().det(), BigInt::from(24));
    }
}
