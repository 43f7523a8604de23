//! Intersection numbers of sections on the minimal smooth model.

use crate::algebra::{valuation, Place, Poly, RatFunc};
use crate::error::SurfaceError;
use crate::surface::kodaira::finite_places;
use crate::surface::Surface;

use super::section::{subtract, to_short, ShortPoint};
use super::Section;

/// Local intersection multiplicity at one place; the total weights it by the place degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Meeting {
    pub place: Place,
    pub multiplicity: u64,
}

pub fn total(meetings: &[Meeting]) -> u64 {
    meetings.iter().map(|m| m.multiplicity * m.place.degree() as u64).sum()
}

fn short_coords(s: &Surface, p: &Section) -> Result<(RatFunc, RatFunc), SurfaceError> {
    match to_short(s, p) {
        ShortPoint::Zero => Err(SurfaceError::Intersection("section is the zero section".into())),
        ShortPoint::Affine(x, y) => Ok((x, y)),
    }
}

/// Places where `p` meets the zero section: half the pole order of `x` on the minimal model.
pub fn zero_meetings(s: &Surface, p: &Section) -> Result<Vec<Meeting>, SurfaceError> {
    let (x, _) = short_coords(s, p)?;
    let mut out = Vec::new();
    let mut push = |place: Place, v: i64| -> Result<(), SurfaceError> {
        if v >= 0 {
            return Ok(());
        }
        if v % 2 != 0 {
            return Err(SurfaceError::Intersection(format!(
                "x has a pole of odd order {} at {place}",
                -v
            )));
        }
        out.push(Meeting { place, multiplicity: (-v / 2) as u64 });
        Ok(())
    };
    for place in finite_places(x.den(), s.radicand())? {
        let v = valuation(&x, &place).expect("nonzero denominator");
        push(place, v)?;
    }
    if let Some(v) = valuation(&x, &Place::Infinity) {
        push(Place::Infinity, v + 2 * s.chi() as i64)?;
    }
    Ok(out)
}

/// `P·O`.
pub fn intersect_zero(s: &Surface, p: &Section) -> Result<u64, SurfaceError> {
    Ok(total(&zero_meetings(s, p)?))
}

/// Places where `p` and `q` meet, read off `(p ⊟ q)·O` (translation by `⊟q` is an automorphism).
pub fn meetings(s: &Surface, p: &Section, q: &Section) -> Result<Vec<Meeting>, SurfaceError> {
    match (p.is_zero(), q.is_zero()) {
        (true, true) => return Err(SurfaceError::Intersection("both sections are O".into())),
        (true, false) => return zero_meetings(s, q),
        (false, true) => return zero_meetings(s, p),
        _ => {}
    }
    let d = subtract(s, p, q)?;
    if d.is_zero() {
        return Err(SurfaceError::Intersection("the sections coincide".into()));
    }
    zero_meetings(s, &d)
}

/// `P·Q` for distinct sections.
pub fn intersect(s: &Surface, p: &Section, q: &Section) -> Result<u64, SurfaceError> {
    Ok(total(&meetings(s, p, q)?))
}

/// `P·Q` from local coordinates: `min(v(Δx), v(Δy))` at common smooth points and `v(Δ(x/y))`
/// where both pass through `O`. Meeting at a singular point of a fibre is an error.
pub fn meetings_local(s: &Surface, p: &Section, q: &Section) -> Result<Vec<Meeting>, SurfaceError> {
    let (x1, y1) = short_coords(s, p)?;
    let (x2, y2) = short_coords(s, q)?;
    if x1 == x2 && y1 == y2 {
        return Err(SurfaceError::Intersection("the sections coincide".into()));
    }
    let d = s.radicand();
    let dx = &x1 - &x2;
    let lead = if dx.is_zero() { (&y1 - &y2).num().clone() } else { dx.num().clone() };
    let mut cands: Vec<Poly> = vec![lead, x1.den().clone(), x2.den().clone()];
    cands.retain(|c| c.degree().unwrap_or(0) > 0);
    let mut places: Vec<Place> = Vec::new();
    for c in cands {
        for pl in finite_places(&c, d)? {
            if !places.contains(&pl) {
                places.push(pl);
            }
        }
    }
    places.push(Place::Infinity);
    let m = &s.short;
    let mut out = Vec::new();
    for place in places {
        let local = m.local(&place);
        let (a1, b1) = m.local_point(&place, &x1, &y1);
        let (a2, b2) = m.local_point(&place, &x2, &y2);
        let v = |r: &RatFunc| local.v(r);
        let integral = |r: &RatFunc| v(r).is_none_or(|k| k >= 0);
        let mult = match (integral(&a1), integral(&a2)) {
            (true, true) => {
                let vx = v(&(&a1 - &a2)).unwrap_or(i64::MAX);
                let vy = v(&(&b1 - &b2)).unwrap_or(i64::MAX);
                let k = vx.min(vy);
                if k == i64::MAX {
                    return Err(SurfaceError::Intersection("the sections coincide".into()));
                }
                if k > 0 {
                    // singular point of the fibre: y ≡ 0 and 3x² + A ≡ 0
                    let fx = &(&a1 * &a1).scale(&crate::algebra::Fe::int(3)) + &local.a;
                    let singular = v(&local.disc()).is_some_and(|e| e > 0)
                        && v(&b1).is_none_or(|e| e > 0)
                        && v(&fx).is_none_or(|e| e > 0);
                    if singular {
                        return Err(SurfaceError::Intersection(format!(
                            "sections meet at the singular point of the fibre at {}",
                            place.display_in(s.base_var())
                        )));
                    }
                }
                k
            }
            (false, false) => {
                let z = &(&a1 / &b1) - &(&a2 / &b2);
                v(&z).ok_or_else(|| SurfaceError::Intersection("the sections coincide".into()))?
            }
            _ => 0,
        };
        if mult > 0 {
            out.push(Meeting { place, multiplicity: mult as u64 });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::ratfunc;

    #[test]
    fn torsion_misses_zero() {
        let s = Surface::parse("y^2 = x^3 + x^2 + s*x").unwrap();
        let p = Section::new(RatFunc::zero(), RatFunc::zero());
        assert_eq!(intersect_zero(&s, &p).unwrap(), 0);
        assert_eq!(intersect(&s, &p, &Section::Zero).unwrap(), 0);
    }

    #[test]
    fn translation_matches_local_count() {
        let s = Surface::parse("y^2 = x^3 + x + 1 - t - t^3").unwrap();
        let p = Section::new(ratfunc("t"), ratfunc("1"));
        let mult = |k| super::super::section::multiply(&s, &p, k).unwrap();
        for (a, b) in [(1, 2), (1, 4), (2, 4), (3, 4)] {
            let (u, v) = (mult(a), mult(b));
            assert_eq!(total(&meetings(&s, &u, &v).unwrap()), total(&meetings_local(&s, &u, &v).unwrap()));
            assert_eq!(intersect(&s, &u, &v).unwrap(), intersect(&s, &v, &u).unwrap());
        }
        assert_eq!(intersect(&s, &mult(1), &mult(4)).unwrap(), 4);
        // P and 3P share the non-identity component of the I0* fibre at infinity
        assert!(matches!(meetings_local(&s, &mult(1), &mult(3)), Err(SurfaceError::Intersection(_))));
        assert_eq!(intersect(&s, &mult(1), &mult(3)).unwrap(), 1);
    }
}
