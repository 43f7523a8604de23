//! Factorization over ℚ (Zassenhaus with Hensel lifting) and over ℚ(√d) (norm method).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{Fe, Rational};
use super::modp::{self, Fp};
use super::poly::Poly;
use crate::error::AlgebraError;

/// `unit · Π factorᵐ` with monic irreducible factors in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fe,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit.clone()), |acc, (f, m)| &acc * &f.pow(*m))
    }
}

/// Factors over the field generated by the coefficients of `p`.
pub fn factor(p: &Poly) -> Result<Factorization, AlgebraError> {
    factor_over(p, p.radicand())
}

/// Factors over ℚ(√radicand), or over ℚ when `radicand = 0`.
pub fn factor_over(p: &Poly, radicand: i64) -> Result<Factorization, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let pr = p.radicand();
    if pr != 0 && pr != radicand {
        return Err(AlgebraError::MixedRadicands(pr, radicand));
    }
    let unit = p.lc();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&p.monic()) {
        let irreducibles = if radicand == 0 {
            factor_rational_squarefree(&part)
        } else {
            factor_quadratic_squarefree(&part, radicand)
        };
        factors.extend(irreducibles.into_iter().map(|f| (f, mult)));
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(Factorization { unit, factors })
}

/// Yun's algorithm: pairwise coprime monic squarefree parts with their multiplicities.
pub fn squarefree_decomposition(p: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let dp = p.derivative();
    let b = p.gcd(&dp);
    let mut c = p.exact_div(&b).unwrap().monic();
    let mut d = &dp.exact_div(&b).unwrap().scale(&p.lc().inv()) - &c.derivative();
    let mut i = 1;
    while !c.is_constant() {
        let a = c.gcd(&d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        c = c.exact_div(&a).unwrap();
        d = &d.exact_div(&a).unwrap() - &c.derivative();
        i += 1;
    }
    out
}

type ZPoly = Vec<BigInt>;

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

/// Primitive integer polynomial with positive leading coefficient, proportional to `p`.
fn to_primitive_z(p: &Poly) -> ZPoly {
    let qs: Vec<Rational> = p.coeffs().iter().map(|c| c.to_rational().unwrap()).collect();
    let den = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut z: ZPoly = qs.iter().map(|q| q.numer() * (&den / q.denom())).collect();
    let content = z.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    for c in z.iter_mut() {
        *c /= &content;
    }
    if z.last().unwrap().is_negative() {
        for c in z.iter_mut() {
            *c = -&*c;
        }
    }
    z
}

fn z_to_monic_poly(z: &ZPoly) -> Poly {
    Poly::new(z.iter().map(|c| Fe::from_rational(Rational::from_integer(c.clone()))).collect())
        .monic()
}

fn zmod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a % m;
    if r.is_negative() {
        r + m
    } else {
        r
    }
}

fn zsym(a: &BigInt, m: &BigInt) -> BigInt {
    let r = zmod(a, m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn zp_reduce(a: &ZPoly, m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| zmod(c, m)).collect())
}

fn zp_add(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|i| zmod(&(a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)), m)).collect())
}

fn zp_sub(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|i| zmod(&(a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)), m)).collect())
}

fn zp_mul(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    zp_reduce(&v, m)
}

/// Division by a monic polynomial modulo `m`.
fn zp_div_rem_monic(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let db = b.len() - 1;
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = zmod(&r[i + db], m);
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] = zmod(&(&r[i + j] - &c * y), m);
        }
        q[i] = c;
    }
    r.truncate(db);
    (ztrim(q), zp_reduce(&r, m))
}

fn to_fp(a: &ZPoly, p: u64) -> Fp {
    let m = BigInt::from(p);
    modp::trim(a.iter().map(|c| zmod(c, &m).to_u64().unwrap()).collect())
}

fn from_fp(a: &Fp) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

struct LiftState {
    g: ZPoly,
    h: ZPoly,
    s: ZPoly,
    t: ZPoly,
}

/// One quadratic Hensel step from modulus `m` to `m²`; `h` monic.
fn hensel_step(f: &ZPoly, st: LiftState, m2: &BigInt) -> LiftState {
    let LiftState { g, h, s, t } = st;
    let e = zp_sub(f, &zp_mul(&g, &h, m2), m2);
    let (q, r) = zp_div_rem_monic(&zp_mul(&s, &e, m2), &h, m2);
    let g2 = zp_add(&zp_add(&g, &zp_mul(&t, &e, m2), m2), &zp_mul(&q, &g, m2), m2);
    let h2 = zp_add(&h, &r, m2);
    let one: ZPoly = vec![BigInt::one()];
    let b = zp_sub(&zp_add(&zp_mul(&s, &g2, m2), &zp_mul(&t, &h2, m2), m2), &one, m2);
    let (c, d) = zp_div_rem_monic(&zp_mul(&s, &b, m2), &h2, m2);
    let s2 = zp_sub(&s, &d, m2);
    let t2 = zp_sub(&zp_sub(&t, &zp_mul(&t, &b, m2), m2), &zp_mul(&c, &g2, m2), m2);
    LiftState { g: g2, h: h2, s: s2, t: t2 }
}

/// Lifts a factorization `f ≡ lc(f)·Π facs (mod p)` with monic `facs` to modulus `p^(2^k) ≥ target`.
fn multifactor_lift(f: &ZPoly, facs: &[Fp], p: u64, target: &BigInt) -> (Vec<ZPoly>, BigInt) {
    let mut modulus = BigInt::from(p);
    while &modulus < target {
        modulus = &modulus * &modulus;
    }
    let mut out = Vec::new();
    lift_tree(f, facs, p, &modulus, &mut out);
    (out, modulus)
}

fn lift_tree(f: &ZPoly, facs: &[Fp], p: u64, modulus: &BigInt, out: &mut Vec<ZPoly>) {
    if facs.len() == 1 {
        let lc_inv = f.last().unwrap().modinv(modulus).expect("leading coefficient invertible");
        out.push(ztrim(f.iter().map(|c| zmod(&(c * &lc_inv), modulus)).collect()));
        return;
    }
    let k = facs.len() / 2;
    let pp = p;
    let g0 = facs[..k].iter().fold(vec![1u64], |acc, x| modp::mul(&acc, x, pp));
    let h0 = facs[k..].iter().fold(vec![1u64], |acc, x| modp::mul(&acc, x, pp));
    let lc = to_fp(&vec![f.last().unwrap().clone()], p)[0];
    let g0 = modp::scale(&g0, lc, p);
    let (_, s0, t0) = modp::ext_gcd(&g0, &h0, p);
    let mut st = LiftState { g: from_fp(&g0), h: from_fp(&h0), s: from_fp(&s0), t: from_fp(&t0) };
    let mut m = BigInt::from(p);
    while &m < modulus {
        m = &m * &m;
        st = hensel_step(f, st, &m);
    }
    lift_tree(&st.g, &facs[..k], p, modulus, out);
    lift_tree(&st.h, &facs[k..], p, modulus, out);
}

/// Exact quotient over ℤ if `b` divides `a`.
fn z_exact_div(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    if a.len() < b.len() {
        return a.is_empty().then(Vec::new);
    }
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let top = &r[i + db];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] -= &c * y;
        }
        q[i] = c;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

fn primitive_part(a: &ZPoly) -> ZPoly {
    let content = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut v: ZPoly = a.iter().map(|c| c / &content).collect();
    if v.last().unwrap().is_negative() {
        v.iter_mut().for_each(|c| *c = -&*c);
    }
    v
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|n| (2..).take_while(|d| d * d <= *n).all(|d| n % d != 0))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible monic factors of a monic squarefree rational polynomial.
pub fn factor_rational_squarefree(p: &Poly) -> Vec<Poly> {
    let deg = p.degree().unwrap_or(0);
    if deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        return vec![p.monic()];
    }
    let f = to_primitive_z(p);
    let lc = f.last().unwrap().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for prime in small_primes() {
        if (&lc % BigInt::from(prime)).is_zero() {
            continue;
        }
        let fp = to_fp(&f, prime);
        if fp.len() != f.len() || !modp::is_squarefree(&fp, prime) {
            continue;
        }
        let facs = modp::factor_squarefree_monic(&modp::monic(&fp, prime), prime, &mut rng);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((prime, facs));
        }
        tried += 1;
        if tried >= 6 || best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (prime, mut modular) = best.expect("some prime keeps the polynomial squarefree");
    if modular.len() == 1 {
        return vec![p.monic()];
    }
    modular.sort();

    // Mignotte-type bound on coefficients of lc·(any factor).
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (norm2.sqrt() + 1u32) * (BigInt::one() << deg) * lc.abs();
    let target = bound * 2u32 + 1u32;
    let (lifted, modulus) = multifactor_lift(&f, &modular, prime, &target);

    let mut remaining: Vec<ZPoly> = lifted;
    let mut current = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        for combo in combinations(remaining.len(), size) {
            let lcc = current.last().unwrap().clone();
            let mut g: ZPoly = vec![lcc.clone()];
            for &i in &combo {
                g = zp_mul(&g, &remaining[i], &modulus);
            }
            let g: ZPoly = ztrim(g.iter().map(|c| zsym(c, &modulus)).collect());
            let g = primitive_part(&g);
            if let Some(q) = z_exact_div(&current, &g) {
                found.push(z_to_monic_poly(&g));
                current = primitive_part(&q);
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, x)| x)
                    .collect();
                continue 'outer;
            }
        }
        size += 1;
    }
    if current.len() > 1 {
        found.push(z_to_monic_poly(&current));
    }
    found
}

/// Irreducible monic factors over ℚ(√d) of a monic squarefree polynomial.
pub fn factor_quadratic_squarefree(f: &Poly, d: i64) -> Vec<Poly> {
    if f.degree().unwrap_or(0) <= 1 {
        return if f.is_constant() { Vec::new() } else { vec![f.monic()] };
    }
    let alpha = Fe::sqrt_of(d);
    for s in 0i64.. {
        for shift in if s == 0 { vec![0] } else { vec![s, -s] } {
            let a = &alpha * &Fe::int(shift);
            // g(x) = f(x - a·√d)
            let g = f.compose(&Poly::new(vec![-&a, Fe::one()]));
            let norm = &g * &g.conj();
            debug_assert!(norm.is_rational());
            if !norm.is_squarefree() {
                continue;
            }
            let mut out = Vec::new();
            for n in factor_rational_squarefree(&norm) {
                let h = g.gcd(&n);
                if !h.is_constant() {
                    out.push(h.compose(&Poly::new(vec![a.clone(), Fe::one()])).monic());
                }
            }
            return out;
        }
    }
    unreachable!()
}

/// Roots in the coefficient field (or ℚ(√radicand)) of a nonzero polynomial.
pub fn roots_over(p: &Poly, radicand: i64) -> Result<Vec<(Fe, u32)>, AlgebraError> {
    let fac = factor_over(p, radicand)?;
    Ok(fac
        .factors
        .iter()
        .filter(|(f, _)| f.degree() == Some(1))
        .map(|(f, m)| (-f.coeff(0), *m))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_ints(cs)
    }

    #[test]
    fn difference_of_squares() {
        let f = factor(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
    }

    #[test]
    fn irreducible_quadratic_stays() {
        let f = factor(&p(&[1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(&[1, 0, 1]), 1)]);
        let g = factor_over(&p(&[1, 0, 1]), -1).unwrap();
        assert_eq!(g.factors.len(), 2);
        assert_eq!(g.expand(), p(&[1, 0, 1]));
    }

    #[test]
    fn swinnerton_dyer_like_quartic() {
        // x⁴ - 10x² + 1 is irreducible over ℚ but splits modulo every prime.
        let f = factor(&p(&[1, 0, -10, 0, 1])).unwrap();
        assert_eq!(f.factors.len(), 1);
        // it splits into two quadratics over ℚ(√2)
        let g = factor_over(&p(&[1, 0, -10, 0, 1]), 2).unwrap();
        assert_eq!(g.factors.len(), 2);
        assert_eq!(g.expand(), p(&[1, 0, -10, 0, 1]));
    }

    #[test]
    fn repeated_and_mixed_factors() {
        // 3 (x-1)^3 (x²+x+1)^2 (2x+5)
        let a = p(&[-1, 1]).pow(3);
        let b = p(&[1, 1, 1]).pow(2);
        let c = p(&[5, 2]);
        let f = (&(&a * &b) * &c).scale(&Fe::int(3));
        let fac = factor(&f).unwrap();
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.factors.len(), 3);
        assert!(fac.factors.contains(&(p(&[1, 1, 1]), 2)));
        assert_eq!(fac.unit, Fe::int(6));
    }

    #[test]
    fn degree_twelve_product() {
        let f = &(&p(&[1, 2, 0, 3, 1]) * &p(&[-7, 0, 0, 1])) * &p(&[2, 1, 1, 1, 1, 1]);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn zero_is_an_error() {
        assert!(factor(&Poly::zero()).is_err());
    }
}
