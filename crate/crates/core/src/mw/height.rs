//! The height pairing on the Mordell-Weil group.

use serde_json::json;

use crate::algebra::{fmt_rational, rat_int, Place, Rational};
use crate::error::SurfaceError;
use crate::surface::Surface;

use super::component::{correction, self_correction};
use super::intersect::{intersect, intersect_zero};
use super::{verify_section, Section};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightReport {
    pub zero_intersection: u64,
    /// `2χ + 2(P·O)`.
    pub naive: Rational,
    /// Correction per reducible fibre, already weighted by the place degree.
    pub corrections: Vec<(Place, Rational)>,
    pub height: Rational,
}

impl HeightReport {
    pub fn to_json(&self, var: &str) -> serde_json::Value {
        json!({
            "zero_intersection": self.zero_intersection,
            "naive": fmt_rational(&self.naive),
            "corrections": self.corrections.iter()
                .map(|(p, c)| json!({"place": p.display_in(var), "correction": fmt_rational(c)}))
                .collect::<Vec<_>>(),
            "height": fmt_rational(&self.height),
        })
    }
}

/// Places carrying reducible fibres.
pub fn reducible_places(s: &Surface) -> Result<Vec<Place>, SurfaceError> {
    Ok(s.summary()?.reducible().map(|f| f.place.clone()).collect())
}

pub fn height(s: &Surface, p: &Section) -> Result<HeightReport, SurfaceError> {
    let chi = rat_int(s.chi() as i64);
    if p.is_zero() {
        return Ok(HeightReport {
            zero_intersection: 0,
            naive: rat_int(0),
            corrections: Vec::new(),
            height: rat_int(0),
        });
    }
    if !verify_section(s, p) {
        return Err(SurfaceError::NotOnSurface);
    }
    let po = intersect_zero(s, p)?;
    let naive = rat_int(2) * &chi + rat_int(2 * po as i64);
    let mut corrections = Vec::new();
    let mut total = rat_int(0);
    for place in reducible_places(s)? {
        let c = self_correction(s, p, &place)? * rat_int(place.degree() as i64);
        total += &c;
        corrections.push((place, c));
    }
    let height = &naive - &total;
    Ok(HeightReport { zero_intersection: po, naive, corrections, height })
}

/// `⟨P, Q⟩ = χ + P·O + Q·O − P·Q − Σ contr_v(P, Q)`.
pub fn height_pairing(s: &Surface, p: &Section, q: &Section) -> Result<Rational, SurfaceError> {
    if p.is_zero() || q.is_zero() {
        return Ok(rat_int(0));
    }
    if p == q {
        return Ok(height(s, p)?.height);
    }
    let chi = rat_int(s.chi() as i64);
    let po = intersect_zero(s, p)? as i64;
    let qo = intersect_zero(s, q)? as i64;
    let pq = intersect(s, p, q)? as i64;
    let mut value = chi + rat_int(po + qo - pq);
    for place in reducible_places(s)? {
        value -= correction(s, p, q, &place)? * rat_int(place.degree() as i64);
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RatFunc;

    #[test]
    fn torsion_height_vanishes() {
        let s = Surface::parse("y^2 = x^3 + x^2 + s*x").unwrap();
        let p = Section::new(RatFunc::zero(), RatFunc::zero());
        let h = height(&s, &p).unwrap();
        assert_eq!(h.height, rat_int(0));
        assert_eq!(h.naive, rat_int(2));
        assert_eq!(height_pairing(&s, &p, &Section::Zero).unwrap(), rat_int(0));
    }
}
