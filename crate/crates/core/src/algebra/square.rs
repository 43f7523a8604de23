use num_bigint::BigInt;

use super::factor::factor_over;
use super::field::{squarefree_decompose, Fe, Rational};
use super::poly::Poly;
use super::ratfunc::RatFunc;

/// `r = constant · root²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareClass {
    pub constant: Fe,
    pub root: RatFunc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareOutcome {
    Square(SquareClass),
    /// Some non-constant irreducible factor occurs to an odd power.
    NotSquare,
}

/// Writes `r` as `c·g²` with `c` a constant, squarefree-integral when rational. Factoring
/// happens over ℚ(√radicand) (pass 0 for ℚ); a zero `r` yields `None`.
pub fn square_classify(r: &RatFunc, radicand: i64) -> Option<SquareOutcome> {
    if r.is_zero() {
        return None;
    }
    let d = if radicand != 0 { radicand } else { r.radicand() };
    let half = |p: &Poly| -> Option<(Fe, Poly)> {
        let f = factor_over(p, d).ok()?;
        let mut root = Poly::one();
        for (q, m) in &f.factors {
            if m % 2 == 1 {
                return None;
            }
            root = &root * &q.pow(m / 2);
        }
        Some((f.unit, root))
    };
    let (Some((cn, gn)), Some((cd, gd))) = (half(r.num()), half(r.den())) else {
        return Some(SquareOutcome::NotSquare);
    };
    let c = &cn / &cd;
    let mut root = RatFunc::new(gn, gd);
    let constant = match c.to_rational() {
        Some(q) => {
            let (s, k) = squarefree_decompose(&q);
            root = root.scale(&Fe::from_rational(k));
            let s_fe = Fe::from_rational(Rational::from_integer(s.clone()));
            // inside ℚ(√d) a constant d·k² is a square as well
            if d != 0 && s == BigInt::from(d) && s != BigInt::from(1) {
                root = root.scale(&Fe::sqrt_of(d));
                Fe::one()
            } else {
                s_fe
            }
        }
        None => match c.sqrt(d) {
            Some(sq) => {
                root = root.scale(&sq);
                Fe::one()
            }
            None => c,
        },
    };
    Some(SquareOutcome::Square(SquareClass { constant, root }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_square_over_four() {
        let r = RatFunc::from_poly(Poly::new(vec![Fe::frac(1, 4), Fe::frac(1, 2), Fe::frac(1, 4)]));
        let SquareOutcome::Square(c) = square_classify(&r, 0).unwrap() else { panic!() };
        assert_eq!(c.constant, Fe::one());
        assert_eq!(&c.root * &c.root, r);
    }

    #[test]
    fn odd_multiplicity_fails() {
        assert_eq!(square_classify(&RatFunc::x(), 0), Some(SquareOutcome::NotSquare));
    }

    #[test]
    fn negative_three_twist() {
        let g = RatFunc::new(Poly::from_ints(&[1, 2, 3]), Poly::from_ints(&[0, 1]));
        let r = (&g * &g).scale(&Fe::int(-12));
        let SquareOutcome::Square(c) = square_classify(&r, 0).unwrap() else { panic!() };
        assert_eq!(c.constant, Fe::int(-3));
        assert_eq!((&c.root * &c.root).scale(&c.constant), r);
        let SquareOutcome::Square(c) = square_classify(&r, -3).unwrap() else { panic!() };
        assert_eq!(c.constant, Fe::one());
        assert_eq!(&c.root * &c.root, r);
    }
}
