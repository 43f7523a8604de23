//! Rational functions in one variable, kept in lowest terms with a monic denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::field::Fe;
use super::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        if !d.is_monic() {
            let inv = d.lc().inv();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFunc { num: n, den: d }
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: Fe) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        RatFunc::constant(Fe::int(n))
    }

    pub fn x() -> Self {
        RatFunc::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_poly().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Fe> {
        (self.is_poly() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn radicand(&self) -> i64 {
        match self.num.radicand() {
            0 => self.den.radicand(),
            d => d,
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverting zero rational function");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let k = e.unsigned_abs();
        RatFunc { num: base.num.pow(k), den: base.den.pow(k) }
    }

    pub fn scale(&self, c: &Fe) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Degree as a map of the projective line: max(deg num, deg den).
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn eval(&self, x: &Fe) -> Option<Fe> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| &self.num.eval(x) / &d)
    }

    /// `self(q)` for a rational function `q`.
    pub fn compose(&self, q: &RatFunc) -> RatFunc {
        let n = compose_homog(&self.num, q);
        let d = compose_homog(&self.den, q);
        // both scaled by qden^k for the same k
        let k = self.num.deg_i().max(self.den.deg_i()).max(0) as u32;
        let shift_n = k as i64 - self.num.deg_i().max(0);
        let shift_d = k as i64 - self.den.deg_i().max(0);
        let n = &n * &q.den.pow(shift_n as u32);
        let d = &d * &q.den.pow(shift_d as u32);
        RatFunc::new(n, d)
    }

    pub fn derivative(&self) -> RatFunc {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(n, &self.den * &self.den)
    }

    pub fn conj(&self) -> RatFunc {
        RatFunc::new(self.num.conj(), self.den.conj())
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.display_in(var);
        }
        let wrap = |p: &Poly| {
            let s = p.display_in(var);
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

/// `denᵏ·p(num/den)` with `k = deg p`, where `q = num/den`.
fn compose_homog(p: &Poly, q: &RatFunc) -> Poly {
    let Some(k) = p.degree() else { return Poly::zero() };
    let mut acc = Poly::zero();
    let mut num_pow = Poly::one();
    let den_pows: Vec<Poly> = {
        let mut v = vec![Poly::one()];
        for _ in 0..k {
            let last = v.last().unwrap() * &q.den;
            v.push(last);
        }
        v
    };
    for i in 0..=k {
        let c = p.coeff(i);
        if !c.is_zero() {
            acc = &acc + &(&num_pow * &den_pows[k - i]).scale(&c);
        }
        if i < k {
            num_pow = &num_pow * &q.num;
        }
    }
    acc
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("t"))
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        if o.den.is_one() {
            return RatFunc { num: &self.num + &(&o.num * &self.den), den: self.den.clone() };
        }
        if self.den.is_one() {
            return RatFunc { num: &(&self.num * &o.den) + &o.num, den: o.den.clone() };
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: &self.num * &o.num, den: Poly::one() };
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = o.den.exact_div(&g1).unwrap();
        let n2 = o.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        if den.is_monic() {
            RatFunc { num, den }
        } else {
            RatFunc::new(num, den)
        }
    }
}

impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &RatFunc) -> RatFunc {
        self * &o.inv()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc { (&self).$m(&o) }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &RatFunc) -> RatFunc { (&self).$m(o) }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc { self.$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_ints(cs)
    }

    #[test]
    fn canonical_form() {
        let r = RatFunc::new(p(&[-2, 0, 2]), p(&[2, 2]));
        assert_eq!(r, RatFunc::from_poly(p(&[-1, 1])));
        let s = RatFunc::new(p(&[1]), p(&[0, 2]));
        assert!(s.den().is_monic());
        assert_eq!(&s * &RatFunc::from_poly(p(&[0, 2])), RatFunc::one());
    }

    #[test]
    fn composition() {
        // f(t) = t + 1/t, g(t) = 1/t: f∘g = f
        let f = RatFunc::new(p(&[1, 0, 1]), p(&[0, 1]));
        let g = RatFunc::new(p(&[1]), p(&[0, 1]));
        assert_eq!(f.compose(&g), f);
        let sq = RatFunc::from_poly(p(&[0, 0, 1]));
        let h = RatFunc::new(p(&[1, 1]), p(&[0, 1])).compose(&sq);
        assert_eq!(h, RatFunc::new(p(&[1, 0, 1]), p(&[0, 0, 1])));
    }
}
