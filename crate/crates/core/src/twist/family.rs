//! K3 surfaces `y² = x³ + A(t²)x + B(t²)` with `B = tV² − (U³ + AU)`, carrying the
//! anti-invariant section `P = (U(t²), tV(t²))` disjoint from `O`.

use std::fmt;

use crate::algebra::{Fe, Poly, RatFunc};
use crate::error::SurfaceError;
use crate::mw::{intersect_zero, verify_section, Section};
use crate::surface::Surface;

use super::{enriques_check, transfer_section, EnriquesReport, QuadraticBaseChange, TwistPackage};

/// Parameter values where a fibre of `X` fixed by the deck involution becomes singular.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegeneracyLocus {
    /// `a₀ = −3u₀²`: `u₀` is a root of the quadratic factor at `t = 0`.
    ZeroThroughSection,
    /// `a₀ = −3u₀²/4`: the quadratic factor at `t = 0` has a double root.
    ZeroDoubleRoot,
    InfinityThroughSection,
    InfinityDoubleRoot,
}

impl fmt::Display for DegeneracyLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DegeneracyLocus::ZeroThroughSection => "a0 = -3u0^2",
            DegeneracyLocus::ZeroDoubleRoot => "a0 = -3u0^2/4",
            DegeneracyLocus::InfinityThroughSection => "a4 = -3u2^2",
            DegeneracyLocus::InfinityDoubleRoot => "a4 = -3u2^2/4",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct MOneFamily {
    pub package: TwistPackage,
    /// `P′ = (tU, t²V)` on the twist.
    pub p_prime: Section,
    pub p: Section,
    pub report: EnriquesReport,
    pub p_dot_o: u64,
    pub loci: Vec<DegeneracyLocus>,
}

fn loci_at(a: &Fe, u: &Fe, through: DegeneracyLocus, double: DegeneracyLocus) -> Vec<DegeneracyLocus> {
    // the fixed fibre is y² = (x − u)(x² + ux + a + u²)
    let three_u2 = &(u * u) * &Fe::int(3);
    let mut out = Vec::new();
    if (a + &three_u2).is_zero() {
        out.push(through);
    }
    if (&(a * &Fe::int(4)) + &three_u2).is_zero() {
        out.push(double);
    }
    out
}

pub fn m1_family(a: &Poly, u: &Poly, v: &Poly) -> Result<MOneFamily, SurfaceError> {
    let too_big = |p: &Poly, d: usize| p.degree().is_some_and(|e| e > d);
    if too_big(a, 4) || too_big(u, 2) || too_big(v, 2) {
        return Err(SurfaceError::Inconsistent("need deg A ≤ 4, deg U ≤ 2, deg V ≤ 2".into()));
    }
    let t = Poly::x();
    let b = &(&t * &(v * v)) - &(&u.pow(3) + &(a * u));
    let base = Surface::from_short(RatFunc::from_poly(a.clone()), RatFunc::from_poly(b.clone()))?;
    base.summary()?;
    if base.chi() != 1 || base.short.a != *a || base.short.b != b {
        return Err(SurfaceError::Inconsistent("A, B do not give a minimal rational elliptic surface".into()));
    }
    let package = TwistPackage::new(base, QuadraticBaseChange::normalized())?;
    let tr = RatFunc::x();
    let p_prime = Section::new(&tr * &RatFunc::from_poly(u.clone()), &(&tr * &tr) * &RatFunc::from_poly(v.clone()));
    if !verify_section(&package.quotient, &p_prime) {
        return Err(SurfaceError::NotOnSurface);
    }
    let p = transfer_section(&package, &p_prime)?;
    let report = enriques_check(&package.cover, &package.deck, &p)?;
    let p_dot_o = intersect_zero(&package.cover, &p)?;
    let mut loci = loci_at(&a.coeff(0), &u.coeff(0), DegeneracyLocus::ZeroThroughSection, DegeneracyLocus::ZeroDoubleRoot);
    loci.extend(loci_at(
        &a.coeff(4),
        &u.coeff(2),
        DegeneracyLocus::InfinityThroughSection,
        DegeneracyLocus::InfinityDoubleRoot,
    ));
    Ok(MOneFamily { package, p_prime, p, report, p_dot_o, loci })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::poly;
    use crate::algebra::Place;
    use crate::mw::{add_sections, height, multiply};
    use crate::surface::KodairaType;
    use crate::twist::FibreVerdict;

    #[test]
    fn generic_member_is_free() {
        let fam = m1_family(&poly("t^4 + 2t^3 - t + 3"), &poly("2t^2 + t + 1"), &poly("t^2 - 3t + 2")).unwrap();
        assert!(fam.loci.is_empty());
        assert!(fam.report.free, "{:?}", fam.report);
        assert_eq!(fam.p_dot_o, 0);
        assert_eq!(fam.p, Section::new(crate::algebra::parse::ratfunc("2t^4 + t^2 + 1"), crate::algebra::parse::ratfunc("t^5 - 3t^3 + 2t")));
        let q = fam.package.quotient.summary().unwrap();
        let stars = q.fibers.iter().filter(|f| f.kodaira == KodairaType::IStar(0)).count();
        assert_eq!(stars, 2);
        let hp = height(&fam.package.cover, &fam.p).unwrap().height;
        let hq = height(&fam.package.quotient, &fam.p_prime).unwrap().height;
        assert_eq!(hp, &hq * &crate::algebra::rat_int(2));
    }

    #[test]
    fn transfer_respects_the_group_law() {
        let fam = m1_family(&poly("t^4 + 2t^3 - t + 3"), &poly("2t^2 + t + 1"), &poly("t^2 - 3t + 2")).unwrap();
        let pkg = &fam.package;
        let two = multiply(&pkg.quotient, &fam.p_prime, 2).unwrap();
        let lhs = transfer_section(pkg, &two).unwrap();
        let rhs = add_sections(&pkg.cover, &fam.p, &fam.p).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn degenerate_loci() {
        // u0 = 1: a0 = -3/4 puts P on the identity component of an I2 fibre
        let fam = m1_family(&poly("t^4 + t^3 - 3/4"), &poly("t^2 + 2t + 1"), &poly("t^2 + t + 1")).unwrap();
        assert_eq!(fam.loci, vec![DegeneracyLocus::ZeroDoubleRoot]);
        assert!(!fam.report.free);
        let zero = fam.report.fibres.iter().find(|f| f.place == Place::at(Fe::zero())).unwrap();
        assert_eq!(zero.kodaira, KodairaType::I(2));
        // a4 = -3u2^2 with u2 = 1 singularizes the fibre at infinity
        let fam = m1_family(&poly("-3t^4 + t^3 + 5"), &poly("t^2 + 2t + 1"), &poly("t^2 + t + 1")).unwrap();
        assert_eq!(fam.loci, vec![DegeneracyLocus::InfinityThroughSection]);
        let inf = fam.report.fibres.iter().find(|f| f.place == Place::Infinity).unwrap();
        assert_eq!(inf.kodaira, KodairaType::I(2));
        assert_eq!(inf.verdict, FibreVerdict::OppositeComponent);
    }
}
