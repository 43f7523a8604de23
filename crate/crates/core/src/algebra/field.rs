//! Elements of ℚ or of a single quadratic extension ℚ(√d).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// `rat + irr·√radicand`. A rational value always has `irr = 0` and `radicand = 0`,
/// so equality and hashing are structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fe {
    rat: Rational,
    irr: Rational,
    radicand: i64,
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Writes a rational as `p/q`, or `p` when integral.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

impl Fe {
    pub fn zero() -> Self {
        Fe::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Fe::from_rational(Rational::one())
    }

    pub fn int(n: i64) -> Self {
        Fe::from_rational(rat_int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Fe::from_rational(rat(n, d))
    }

    pub fn from_rational(q: Rational) -> Self {
        Fe { rat: q, irr: Rational::zero(), radicand: 0 }
    }

    /// `a + b√d`; `d` must be squarefree and different from 0 and 1.
    pub fn quadratic(a: Rational, b: Rational, d: i64) -> Self {
        assert!(d != 0 && d != 1, "radicand must differ from 0 and 1");
        Fe { rat: a, irr: b, radicand: d }.normalized()
    }

    /// The element √d.
    pub fn sqrt_of(d: i64) -> Self {
        Fe::quadratic(Rational::zero(), Rational::one(), d)
    }

    fn normalized(mut self) -> Self {
        if self.irr.is_zero() {
            self.radicand = 0;
        }
        self
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rat
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.irr
    }

    /// Radicand of the extension this element lives in, 0 when rational.
    pub fn radicand(&self) -> i64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.irr.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.rat.clone())
    }

    pub fn conj(&self) -> Self {
        Fe { rat: self.rat.clone(), irr: -&self.irr, radicand: self.radicand }
    }

    /// Field norm down to ℚ.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - &self.irr * &self.irr * rat_int(self.radicand)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in field");
        if self.is_rational() {
            return Fe::from_rational(self.rat.recip());
        }
        let n = self.norm();
        Fe { rat: &self.rat / &n, irr: -&self.irr / &n, radicand: self.radicand }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Fe::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn common_radicand(&self, other: &Fe) -> i64 {
        match (self.radicand, other.radicand) {
            (0, d) | (d, 0) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("mixing sqrt({d}) and sqrt({e}) in one computation"),
        }
    }

    /// Deterministic total order used for canonical tie-breaking.
    pub fn canonical_cmp(&self, other: &Fe) -> Ordering {
        self.rat.cmp(&other.rat).then_with(|| self.irr.cmp(&other.irr))
    }

    /// Square root inside the current field, if it exists.
    pub fn sqrt(&self, radicand: i64) -> Option<Fe> {
        if self.is_zero() {
            return Some(Fe::zero());
        }
        if self.is_rational() {
            if let Some(r) = rational_sqrt(&self.rat) {
                return Some(Fe::from_rational(r));
            }
            if radicand != 0 {
                if let Some(r) = rational_sqrt(&(&self.rat / rat_int(radicand))) {
                    return Some(Fe::quadratic(Rational::zero(), r, radicand));
                }
            }
            return None;
        }
        // (p + q√d)² = self: p² + d q² = a, 2pq = b.
        let n = rational_sqrt(&self.norm())?;
        for s in [n.clone(), -n] {
            let p2 = (&self.rat + &s) / rat_int(2);
            if let Some(p) = rational_sqrt(&p2) {
                if p.is_zero() {
                    continue;
                }
                let q = &self.irr / (rat_int(2) * &p);
                let cand = Fe::quadratic(p, q, self.radicand);
                if &(&cand * &cand) == self {
                    return Some(cand);
                }
            }
        }
        None
    }
}

pub fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let n = integer_sqrt_exact(q.numer())?;
    let d = integer_sqrt_exact(q.denom())?;
    Some(Rational::new(n, d))
}

/// Splits a nonzero rational as `s·k²` with `s` a squarefree integer, using trial division
/// up to 10⁶ followed by a perfect-square test on the cofactor.
pub fn squarefree_decompose(q: &Rational) -> (BigInt, Rational) {
    assert!(!q.is_zero());
    let n = q.numer() * q.denom();
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut rest = n.abs();
    let mut core = BigInt::one();
    let mut root = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(1_000_000u32);
    while &p * &p <= rest && p <= limit {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            core *= &p;
        }
        root *= num_traits::pow(p.clone(), (e / 2) as usize);
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if rest > BigInt::one() {
        match integer_sqrt_exact(&rest) {
            Some(r) => root *= r,
            None => core *= &rest,
        }
    }
    let core = core * sign;
    // q = n/den² = core·root²/den²
    let k = Rational::new(root, q.denom().clone());
    (core, k)
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", fmt_rational(&self.rat));
        }
        let irr = if self.irr.is_one() {
            format!("sqrt({})", self.radicand)
        } else if (-&self.irr).is_one() {
            format!("-sqrt({})", self.radicand)
        } else {
            format!("{}*sqrt({})", fmt_rational(&self.irr), self.radicand)
        };
        if self.rat.is_zero() {
            write!(f, "{irr}")
        } else if irr.starts_with('-') {
            write!(f, "({} - {})", fmt_rational(&self.rat), &irr[1..])
        } else {
            write!(f, "({} + {})", fmt_rational(&self.rat), irr)
        }
    }
}

impl From<i64> for Fe {
    fn from(n: i64) -> Self {
        Fe::int(n)
    }
}

impl From<Rational> for Fe {
    fn from(q: Rational) -> Self {
        Fe::from_rational(q)
    }
}

impl Add<&Fe> for &Fe {
    type Output = Fe;
    fn add(self, o: &Fe) -> Fe {
        if self.is_rational() && o.is_rational() {
            return Fe::from_rational(&self.rat + &o.rat);
        }
        let d = self.common_radicand(o);
        Fe { rat: &self.rat + &o.rat, irr: &self.irr + &o.irr, radicand: d }.normalized()
    }
}

impl Sub<&Fe> for &Fe {
    type Output = Fe;
    fn sub(self, o: &Fe) -> Fe {
        if self.is_rational() && o.is_rational() {
            return Fe::from_rational(&self.rat - &o.rat);
        }
        let d = self.common_radicand(o);
        Fe { rat: &self.rat - &o.rat, irr: &self.irr - &o.irr, radicand: d }.normalized()
    }
}

impl Mul<&Fe> for &Fe {
    type Output = Fe;
    fn mul(self, o: &Fe) -> Fe {
        if self.is_rational() && o.is_rational() {
            return Fe::from_rational(&self.rat * &o.rat);
        }
        let d = self.common_radicand(o);
        let rat = &self.rat * &o.rat + &self.irr * &o.irr * rat_int(d);
        let irr = &self.rat * &o.irr + &self.irr * &o.rat;
        Fe { rat, irr, radicand: d }.normalized()
    }
}

impl Div<&Fe> for &Fe {
    type Output = Fe;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &Fe) -> Fe {
        if self.is_rational() && o.is_rational() {
            assert!(!o.rat.is_zero(), "division by zero in field");
            return Fe::from_rational(&self.rat / &o.rat);
        }
        self * &o.inv()
    }
}

impl Neg for &Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        Fe { rat: -&self.rat, irr: -&self.irr, radicand: self.radicand }
    }
}

impl Neg for Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Fe> for Fe {
            type Output = Fe;
            fn $m(self, o: Fe) -> Fe { (&self).$m(&o) }
        }
        impl $tr<&Fe> for Fe {
            type Output = Fe;
            fn $m(self, o: &Fe) -> Fe { (&self).$m(o) }
        }
        impl $tr<Fe> for &Fe {
            type Output = Fe;
            fn $m(self, o: Fe) -> Fe { self.$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_arithmetic() {
        let w = Fe::sqrt_of(-3);
        assert_eq!(&w * &w, Fe::int(-3));
        let z = Fe::int(1) + Fe::sqrt_of(-3);
        assert_eq!(&z * &z.inv(), Fe::one());
        assert_eq!(z.norm(), rat_int(4));
        assert!((&z - &z).radicand() == 0);
    }

    #[test]
    fn square_roots() {
        assert_eq!(Fe::frac(9, 4).sqrt(0), Some(Fe::frac(3, 2)));
        assert_eq!(Fe::int(2).sqrt(0), None);
        let r = Fe::int(-12).sqrt(-3).unwrap();
        assert_eq!(&r * &r, Fe::int(-12));
        let z = Fe::int(1) + Fe::sqrt_of(-3);
        let sq = &z * &z;
        let r = sq.sqrt(-3).unwrap();
        assert_eq!(&r * &r, sq);
    }

    #[test]
    fn squarefree_parts() {
        let (s, k) = squarefree_decompose(&rat(-12, 1));
        assert_eq!(s, BigInt::from(-3));
        assert_eq!(k, rat_int(2));
        let (s, k) = squarefree_decompose(&rat(1, 4));
        assert_eq!(s, BigInt::one());
        assert_eq!(k, rat(1, 2));
        let (s, k) = squarefree_decompose(&rat(5, 8));
        assert_eq!(s, BigInt::from(10));
        assert_eq!(rat_int(10) * &k * &k, rat(5, 8));
    }

    #[test]
    #[should_panic]
    fn mixed_radicands_panic() {
        let _ = Fe::sqrt_of(2) + Fe::sqrt_of(3);
    }
}
