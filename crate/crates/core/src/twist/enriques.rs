//! Whether `τ = ı∘(⊟P)` acts without fixed points, decided on the two fibres fixed by `ı`.

use serde_json::json;

use crate::algebra::parse::Expr;
use crate::algebra::{Place, RatFunc};
use crate::error::SurfaceError;
use crate::mw::{component_at, negate, verify_section, zero_meetings, ComponentLabel, Section};
use crate::surface::{apply_involution, CoordinateMap, KodairaType, Surface};

use super::fixed_places;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FibreVerdict {
    /// Smooth fibre and `P` does not meet `O` there.
    SmoothAwayFromZero,
    /// `I_n` fibre and `P` meets the component opposite the identity.
    OppositeComponent,
    Obstructed(String),
}

impl FibreVerdict {
    pub fn passes(&self) -> bool {
        !matches!(self, FibreVerdict::Obstructed(_))
    }

    pub fn describe(&self) -> String {
        match self {
            FibreVerdict::SmoothAwayFromZero => "smooth, P disjoint from O".into(),
            FibreVerdict::OppositeComponent => "P on the opposite component".into(),
            FibreVerdict::Obstructed(why) => format!("fixed points: {why}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamifiedFibre {
    pub place: Place,
    pub kodaira: KodairaType,
    pub verdict: FibreVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnriquesReport {
    pub free: bool,
    pub fibres: Vec<RamifiedFibre>,
}

impl EnriquesReport {
    pub fn to_json(&self, var: &str) -> serde_json::Value {
        json!({
            "free": self.free,
            "fibres": self.fibres.iter().map(|f| json!({
                "place": f.place.display_in(var),
                "type": f.kodaira.to_string(),
                "verdict": f.verdict.describe(),
                "pass": f.verdict.passes(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Image of a section under an involution of the surface that is affine in the fibre
/// coordinates.
pub fn map_section(map: &CoordinateMap, p: &Section) -> Result<Section, SurfaceError> {
    let Some((x, y)) = p.coords() else {
        return Ok(Section::Zero);
    };
    let images = [Expr::constant(2, x.clone()), Expr::constant(2, y.clone())];
    let eval = |e: &Expr| {
        e.substitute(&images, &RatFunc::x())
            .as_base()
            .map(|r| r.compose(&map.t))
            .ok_or_else(|| SurfaceError::NotAutomorphism("image does not reduce to the base".into()))
    };
    Ok(Section::new(eval(&map.x)?, eval(&map.y)?))
}

fn verdict(s: &Surface, p: &Section, place: &Place, kodaira: KodairaType) -> Result<FibreVerdict, SurfaceError> {
    use FibreVerdict::*;
    Ok(match kodaira {
        KodairaType::I(0) => {
            if zero_meetings(s, p)?.iter().any(|m| &m.place == place) {
                Obstructed("P meets O on the fixed fibre".into())
            } else {
                SmoothAwayFromZero
            }
        }
        KodairaType::I(1) => Obstructed("translation on a nodal fibre fixes the node".into()),
        KodairaType::I(n) => match component_at(s, p, place)? {
            ComponentLabel::Identity => Obstructed("P meets the identity component".into()),
            ComponentLabel::Cycle { distance } if 2 * distance == n => OppositeComponent,
            other => Obstructed(format!("P meets component {other} of I{n}, not the opposite one")),
        },
        other => Obstructed(format!("additive fibre of type {other}")),
    })
}

/// Checks `τ = ı∘(⊟P)` on the fibres fixed by the deck involution `ı`. The section must be
/// anti-invariant, `ı(P) = ⊟P`.
pub fn enriques_check(s: &Surface, deck: &CoordinateMap, p: &Section) -> Result<EnriquesReport, SurfaceError> {
    if deck.t.degree() != 1 || deck.t.compose(&deck.t) != RatFunc::x() || deck.t == RatFunc::x() {
        return Err(SurfaceError::NotAutomorphism("the base map is not a Möbius involution".into()));
    }
    if !apply_involution(&s.model, deck) {
        return Err(SurfaceError::NotAutomorphism("the map does not preserve the model".into()));
    }
    if !verify_section(s, p) {
        return Err(SurfaceError::NotOnSurface);
    }
    if p.is_zero() {
        return Err(SurfaceError::Inconsistent("the zero section does not define a free involution".into()));
    }
    if map_section(deck, p)? != negate(s, p)? {
        return Err(SurfaceError::Inconsistent("section is not anti-invariant under the deck involution".into()));
    }
    let summary = s.summary()?;
    let mut fibres = Vec::new();
    for place in fixed_places(&deck.t, s.radicand())? {
        let kodaira = match summary.fiber_at(&place) {
            Some(f) => f.kodaira,
            None => KodairaType::I(0),
        };
        let verdict = verdict(s, p, &place, kodaira)?;
        fibres.push(RamifiedFibre { place, kodaira, verdict });
    }
    let free = !fibres.is_empty() && fibres.iter().all(|f| f.verdict.passes());
    Ok(EnriquesReport { free, fibres })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::ratfunc;

    fn deck(s: &Surface, t: &str) -> CoordinateMap {
        CoordinateMap::parse(&format!("(x, y, {t})"), &s.model.vars).unwrap()
    }

    #[test]
    fn two_torsion_with_smooth_fixed_fibres_is_free() {
        let s = Surface::parse("y^2 = x^3 + x^2 + (2t+3)(3t+2)/t*x").unwrap();
        let p = Section::new(RatFunc::zero(), RatFunc::zero());
        let r = enriques_check(&s, &deck(&s, "1/t"), &p).unwrap();
        assert_eq!(r.fibres.len(), 2);
        assert!(r.fibres.iter().all(|f| f.verdict == FibreVerdict::SmoothAwayFromZero));
        assert!(r.free);
        // fixing t = 0 and ∞ instead puts the III* fibres on the fixed locus
        let s = Surface::parse("y^2 = x^3 + x^2 + (t^2 + 2)*x").unwrap();
        let r = enriques_check(&s, &deck(&s, "-t"), &p).unwrap();
        assert!(!r.free);
    }

    #[test]
    fn replacing_p_by_its_deck_image_gives_the_same_answer() {
        let s = Surface::parse("y^2 = x^3 + x^2 + (2t+3)(3t+2)/t*x").unwrap();
        let p = Section::new(RatFunc::zero(), RatFunc::zero());
        let d = deck(&s, "1/t");
        let image = negate(&s, &map_section(&d, &p).unwrap()).unwrap();
        assert_eq!(enriques_check(&s, &d, &p).unwrap(), enriques_check(&s, &d, &image).unwrap());
    }

    #[test]
    fn rejects_invariant_sections() {
        let s = Surface::parse("y^2 = x^3 + t^4 + 1").unwrap();
        let p = Section::new(ratfunc("-1"), ratfunc("t^2"));
        let err = enriques_check(&s, &deck(&s, "-t"), &p).unwrap_err();
        assert!(matches!(err, SurfaceError::Inconsistent(_)));
    }
}
