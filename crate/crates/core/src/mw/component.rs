//! Which fibre component a section meets, and the local correction terms of the height pairing.
//!
//! Components are read off the reduction of the section on the minimal short model: a section
//! through the smooth locus meets the identity component, and otherwise the residue of a
//! rescaled coordinate names the simple component. The two orientations of an `I_n` cycle and
//! the two far components of `I_n^*` are only defined relative to each other, so pairwise data
//! is resolved through the component of `P ⊟ Q`.

use std::fmt;

use crate::algebra::place::residue;
use crate::algebra::{rat, rat_int, Fe, Place, Poly, RatFunc, Rational};
use crate::error::SurfaceError;
use crate::surface::{KodairaType, Surface};

use super::section::{subtract, to_short, ShortPoint};
use super::Section;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentLabel {
    Identity,
    /// `I_n`: distance `k` from the identity around the cycle, `0 < k ≤ n/2`.
    Cycle { distance: u32 },
    /// `I_0^*`: residue of `x/π`, a root of the residual cubic.
    StarSimple { root: Poly },
    /// `I_n^*`, `n ≥ 1`: the simple component adjacent to the identity's branch.
    StarNear,
    /// `I_n^*`, `n ≥ 1`: one of the two far simple components.
    StarFar,
    /// `IV`, `IV^*`: residue of `y/π` or `y/π²`.
    AddSimple { residue: Poly },
    /// `III`, `III^*`: the unique non-identity simple component.
    Opposite,
}

impl ComponentLabel {
    pub fn is_identity(&self) -> bool {
        matches!(self, ComponentLabel::Identity)
    }
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentLabel::Identity => write!(f, "identity"),
            ComponentLabel::Cycle { distance } => write!(f, "cycle distance {distance}"),
            ComponentLabel::StarSimple { root } => write!(f, "simple (x/pi = {root})"),
            ComponentLabel::StarNear => write!(f, "near"),
            ComponentLabel::StarFar => write!(f, "far"),
            ComponentLabel::AddSimple { residue } => write!(f, "simple (residue {residue})"),
            ComponentLabel::Opposite => write!(f, "non-identity"),
        }
    }
}

fn res(r: &RatFunc, pi: &Poly) -> Result<Poly, SurfaceError> {
    residue(r, pi).ok_or_else(|| SurfaceError::Intersection("coordinate is not integral".into()))
}

/// Component of the fibre at `place` met by `p`.
pub fn component_at(s: &Surface, p: &Section, place: &Place) -> Result<ComponentLabel, SurfaceError> {
    let fibre = s.fibre_at(place)?;
    if fibre.kodaira.root_lattice_name().is_none() {
        return Err(SurfaceError::IrreducibleFibre(place.display_in(s.base_var())));
    }
    label(s, p, place, fibre.kodaira)
}

fn label(s: &Surface, p: &Section, place: &Place, kodaira: KodairaType) -> Result<ComponentLabel, SurfaceError> {
    let ShortPoint::Affine(x, y) = to_short(s, p) else {
        return Ok(ComponentLabel::Identity);
    };
    let m = &s.short;
    let local = m.local(place);
    let (x, y) = m.local_point(place, &x, &y);
    let vx = local.v(&x).unwrap_or(i64::MAX);
    let vy = local.v(&y).unwrap_or(i64::MAX);
    if vx < 0 {
        return Ok(ComponentLabel::Identity);
    }
    let pi = local.pi.clone();
    let pir = RatFunc::from_poly(pi.clone());
    use KodairaType::*;
    if let I(n) = kodaira {
        if n < 2 || vy == 0 {
            return Ok(ComponentLabel::Identity);
        }
        // the node sits at x ≡ −3B/(2A)
        let node = res(&(&local.b / &local.a).scale(&Fe::frac(-3, 2)), &pi)?;
        if res(&x, &pi)? != node {
            return Ok(ComponentLabel::Identity);
        }
        let k = vy.min((n / 2) as i64) as u32;
        return Ok(ComponentLabel::Cycle { distance: k });
    }
    if vx == 0 || vy == 0 {
        return Ok(ComponentLabel::Identity);
    }
    Ok(match kodaira {
        III | IIIStar => ComponentLabel::Opposite,
        IV => ComponentLabel::AddSimple { residue: res(&(&y / &pir), &pi)? },
        IVStar => ComponentLabel::AddSimple { residue: res(&(&y / &pir.pow(2)), &pi)? },
        IStar(0) => ComponentLabel::StarSimple { root: res(&(&x / &pir), &pi)? },
        IStar(_) => {
            let z = res(&(&x / &pir), &pi)?;
            let a2 = &local.a / &pir.pow(2);
            let b3 = &local.b / &pir.pow(3);
            let double = res(&(&b3 / &a2).scale(&Fe::frac(-3, 2)), &pi)?;
            if z == double {
                ComponentLabel::StarFar
            } else {
                ComponentLabel::StarNear
            }
        }
        _ => {
            return Err(SurfaceError::Intersection(format!(
                "section passes through the singular point of a {kodaira} fibre"
            )))
        }
    })
}

fn fold(m: i64, n: i64) -> i64 {
    let r = m.rem_euclid(n);
    r.min(n - r)
}

/// Local correction `contr_v(P, Q)` at one geometric fibre over `place`.
pub fn correction(s: &Surface, p: &Section, q: &Section, place: &Place) -> Result<Rational, SurfaceError> {
    let kodaira = s.fibre_at(place)?.kodaira;
    if kodaira.root_lattice_name().is_none() {
        return Ok(rat_int(0));
    }
    let lp = label(s, p, place, kodaira)?;
    let lq = label(s, q, place, kodaira)?;
    if lp.is_identity() || lq.is_identity() {
        return Ok(rat_int(0));
    }
    let difference = || -> Result<ComponentLabel, SurfaceError> {
        let d = subtract(s, p, q)?;
        label(s, &d, place, kodaira)
    };
    use ComponentLabel::*;
    use KodairaType::*;
    Ok(match (kodaira, &lp, &lq) {
        (I(n), Cycle { distance: i }, Cycle { distance: k }) => {
            let (n, i, k) = (n as i64, *i as i64, *k as i64);
            let kd = match difference()? {
                Cycle { distance } => distance as i64,
                _ => 0,
            };
            // orient q relative to p so that the component of p ⊟ q matches
            let j = if fold(i - k, n) == kd {
                k
            } else if fold(i + k, n) == kd {
                n - k
            } else {
                return Err(SurfaceError::Intersection(format!(
                    "inconsistent I{n} components {i}, {k} with difference {kd}"
                )));
            };
            let (lo, hi) = (i.min(j), i.max(j));
            rat(lo * (n - hi), n)
        }
        (IStar(0), StarSimple { root: a }, StarSimple { root: b }) => {
            if a == b {
                rat_int(1)
            } else {
                rat(1, 2)
            }
        }
        (IStar(_), StarNear, StarNear) => rat_int(1),
        (IStar(_), StarNear, StarFar) | (IStar(_), StarFar, StarNear) => rat(1, 2),
        (IStar(n), StarFar, StarFar) => {
            let quarter = rat(n as i64, 4);
            if difference()?.is_identity() {
                rat_int(1) + quarter
            } else {
                rat(1, 2) + quarter
            }
        }
        (III, _, _) => rat(1, 2),
        (IIIStar, _, _) => rat(3, 2),
        (IV, AddSimple { residue: a }, AddSimple { residue: b }) => {
            if a == b {
                rat(2, 3)
            } else {
                rat(1, 3)
            }
        }
        (IVStar, AddSimple { residue: a }, AddSimple { residue: b }) => {
            if a == b {
                rat(4, 3)
            } else {
                rat(2, 3)
            }
        }
        _ => {
            return Err(SurfaceError::Intersection(format!(
                "labels {lp} and {lq} do not fit a {kodaira} fibre"
            )))
        }
    })
}

/// `contr_v(P, P)`.
pub fn self_correction(s: &Surface, p: &Section, place: &Place) -> Result<Rational, SurfaceError> {
    let kodaira = s.fibre_at(place)?.kodaira;
    if kodaira.root_lattice_name().is_none() {
        return Ok(rat_int(0));
    }
    use ComponentLabel::*;
    use KodairaType::*;
    Ok(match (kodaira, label(s, p, place, kodaira)?) {
        (_, Identity) => rat_int(0),
        (I(n), Cycle { distance: k }) => rat(k as i64 * (n as i64 - k as i64), n as i64),
        (IStar(0), _) | (IStar(_), StarNear) => rat_int(1),
        (IStar(n), StarFar) => rat_int(1) + rat(n as i64, 4),
        (III, _) => rat(1, 2),
        (IV, _) => rat(2, 3),
        (IVStar, _) => rat(4, 3),
        (IIIStar, _) => rat(3, 2),
        (k, l) => return Err(SurfaceError::Intersection(format!("label {l} does not fit a {k} fibre"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::fe;

    #[test]
    fn two_torsion_on_rational_surface() {
        let s = Surface::parse("y^2 = x^3 + x^2 + s*x").unwrap();
        let p = Section::new(RatFunc::zero(), RatFunc::zero());
        assert_eq!(component_at(&s, &p, &Place::at(fe("0"))).unwrap(), ComponentLabel::Cycle { distance: 1 });
        assert_eq!(component_at(&s, &p, &Place::Infinity).unwrap(), ComponentLabel::Opposite);
        assert!(matches!(
            component_at(&s, &p, &Place::at(fe("1/4"))),
            Err(SurfaceError::IrreducibleFibre(_))
        ));
        assert_eq!(self_correction(&s, &p, &Place::Infinity).unwrap(), rat(3, 2));
        assert_eq!(self_correction(&s, &p, &Place::at(fe("0"))).unwrap(), rat(1, 2));
    }

    #[test]
    fn fold_is_symmetric() {
        assert_eq!(fold(3, 4), 1);
        assert_eq!(fold(-1, 4), 1);
        assert_eq!(fold(2, 4), 2);
        assert_eq!(fold(0, 5), 0);
    }
}
