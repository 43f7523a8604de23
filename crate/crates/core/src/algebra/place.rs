//! Places of the rational function field and the associated valuations.

use std::fmt;

use super::field::Fe;
use super::poly::Poly;
use super::ratfunc::RatFunc;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    /// Zero locus of a monic irreducible polynomial.
    Finite(Poly),
    Infinity,
}

impl Place {
    /// The place `t = a`.
    pub fn at(a: Fe) -> Self {
        Place::Finite(Poly::linear(a))
    }

    /// Wraps a polynomial assumed monic irreducible (made monic here).
    pub fn finite(p: Poly) -> Self {
        assert!(p.degree().is_some_and(|d| d >= 1), "place polynomial must be non-constant");
        Place::Finite(p.monic())
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap(),
            Place::Infinity => 1,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    /// The rational point of a degree-one finite place.
    pub fn rational_point(&self) -> Option<Fe> {
        match self {
            Place::Finite(p) if p.degree() == Some(1) => Some(-p.coeff(0)),
            _ => None,
        }
    }

    pub fn display_in(&self, var: &str) -> String {
        match self {
            Place::Infinity => format!("{var}=oo"),
            Place::Finite(p) => match self.rational_point() {
                Some(a) => format!("{var}={a}"),
                None => format!("{}=0", p.display_in(var)),
            },
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("t"))
    }
}

/// Order of vanishing of a nonzero polynomial at a finite place polynomial.
pub fn poly_valuation(p: &Poly, pi: &Poly) -> i64 {
    assert!(!p.is_zero());
    let mut v = 0;
    let mut cur = p.clone();
    while let Some(q) = cur.exact_div(pi) {
        cur = q;
        v += 1;
    }
    v
}

/// `None` stands for +∞ (the zero function).
pub fn valuation(r: &RatFunc, place: &Place) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    Some(match place {
        Place::Infinity => r.den().deg_i() - r.num().deg_i(),
        Place::Finite(pi) => poly_valuation(r.num(), pi) - poly_valuation(r.den(), pi),
    })
}

pub fn poly_valuation_at(p: &Poly, place: &Place) -> Option<i64> {
    if p.is_zero() {
        return None;
    }
    Some(match place {
        Place::Infinity => -p.deg_i(),
        Place::Finite(pi) => poly_valuation(p, pi),
    })
}

/// Image of a polynomial in the residue field `K[t]/(π)`, as the reduced remainder.
pub fn residue_poly(p: &Poly, pi: &Poly) -> Poly {
    p.rem(pi)
}

/// Residue class of a rational function that is integral at the place `π`.
pub fn residue(r: &RatFunc, pi: &Poly) -> Option<Poly> {
    let d = r.den().rem(pi);
    if d.is_zero() {
        return None;
    }
    let (g, s, _) = d.ext_gcd(pi);
    debug_assert!(g.is_one());
    Some((&r.num().rem(pi) * &s).rem(pi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        let r = RatFunc::new(Poly::from_ints(&[0, 0, 0, 1]), Poly::from_ints(&[-1, 1]));
        assert_eq!(valuation(&r, &Place::at(Fe::zero())), Some(3));
        assert_eq!(valuation(&r, &Place::Infinity), Some(-2));
        assert_eq!(valuation(&r, &Place::at(Fe::one())), Some(-1));
        assert_eq!(valuation(&RatFunc::zero(), &Place::Infinity), None);
    }

    #[test]
    fn residues() {
        let pi = Poly::from_ints(&[1, 0, 1]);
        let r = RatFunc::new(Poly::from_ints(&[0, 1]), Poly::from_ints(&[1, 1]));
        let res = residue(&r, &pi).unwrap();
        // t/(t+1) mod t²+1 = (1+t)/2
        assert_eq!(res, Poly::new(vec![Fe::frac(1, 2), Fe::frac(1, 2)]));
    }
}
