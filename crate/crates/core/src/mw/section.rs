//! Sections as points over the function field and the chord-tangent group law.

use std::fmt;

use crate::algebra::parse::{parse_expr_with_base, Expr};
use crate::algebra::{Fe, RatFunc};
use crate::error::SurfaceError;
use crate::surface::{ShortModel, Surface};

/// A point of the generic fibre in the coordinates of the input model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Section {
    Zero,
    Point { x: RatFunc, y: RatFunc },
}

impl Section {
    pub fn new(x: RatFunc, y: RatFunc) -> Self {
        Section::Point { x, y }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Section::Zero)
    }

    pub fn coords(&self) -> Option<(&RatFunc, &RatFunc)> {
        match self {
            Section::Zero => None,
            Section::Point { x, y } => Some((x, y)),
        }
    }

    /// Parses `"O"` or `"(x(t), y(t))"` written in the surface's base variable.
    pub fn parse(s: &str, surface: &Surface) -> Result<Self, SurfaceError> {
        let body = s.trim();
        if body == "O" || body == "0" {
            return Ok(Section::Zero);
        }
        let inner = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| SurfaceError::BadModel(format!("expected (x, y), got {s:?}")))?;
        let mut depth = 0i32;
        let mut cut = None;
        for (i, c) in inner.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    if cut.is_some() {
                        return Err(SurfaceError::BadModel("a section has two coordinates".into()));
                    }
                    cut = Some(i);
                }
                _ => {}
            }
        }
        let cut = cut.ok_or_else(|| SurfaceError::BadModel("a section has two coordinates".into()))?;
        let base = Some(surface.base_var());
        let coord = |t: &str| -> Result<RatFunc, SurfaceError> {
            let e: Expr = parse_expr_with_base(t, &[], base)?.expr;
            e.as_base().ok_or_else(|| SurfaceError::BadModel(format!("bad coordinate {t:?}")))
        };
        Ok(Section::new(coord(&inner[..cut])?, coord(&inner[cut + 1..])?))
    }

    pub fn display_in(&self, var: &str) -> String {
        match self {
            Section::Zero => "O".into(),
            Section::Point { x, y } => format!("({}, {})", x.display_in(var), y.display_in(var)),
        }
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("t"))
    }
}

/// A point on the minimal short model `Y² = X³ + AX + B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum ShortPoint {
    Zero,
    Affine(RatFunc, RatFunc),
}

pub(crate) fn to_short(s: &Surface, p: &Section) -> ShortPoint {
    match p {
        Section::Zero => ShortPoint::Zero,
        Section::Point { x, y } => {
            let (xm, ym) = s.change.to_minimal(x, y);
            ShortPoint::Affine(xm, ym)
        }
    }
}

pub(crate) fn from_short(s: &Surface, p: &ShortPoint) -> Section {
    match p {
        ShortPoint::Zero => Section::Zero,
        ShortPoint::Affine(xm, ym) => {
            let (x, y) = s.change.from_minimal(xm, ym);
            Section::new(x, y)
        }
    }
}

fn short_add(m: &ShortModel, p: &ShortPoint, q: &ShortPoint) -> ShortPoint {
    let (x1, y1, x2, y2) = match (p, q) {
        (ShortPoint::Zero, _) => return q.clone(),
        (_, ShortPoint::Zero) => return p.clone(),
        (ShortPoint::Affine(x1, y1), ShortPoint::Affine(x2, y2)) => (x1, y1, x2, y2),
    };
    let slope = if x1 != x2 {
        &(y2 - y1) / &(x2 - x1)
    } else if y1 == y2 && !y1.is_zero() {
        let a = RatFunc::from_poly(m.a.clone());
        let num = &(x1 * x1).scale(&Fe::int(3)) + &a;
        &num / &y1.scale(&Fe::int(2))
    } else {
        return ShortPoint::Zero;
    };
    let x3 = &(&(&slope * &slope) - x1) - x2;
    let y3 = &(&slope * &(x1 - &x3)) - y1;
    ShortPoint::Affine(x3, y3)
}

fn short_neg(p: &ShortPoint) -> ShortPoint {
    match p {
        ShortPoint::Zero => ShortPoint::Zero,
        ShortPoint::Affine(x, y) => ShortPoint::Affine(x.clone(), -y),
    }
}

/// Whether the coordinates satisfy the Weierstrass equation identically.
pub fn verify_section(s: &Surface, p: &Section) -> bool {
    match p {
        Section::Zero => true,
        Section::Point { x, y } => s.model.residual(x, y).is_zero(),
    }
}

fn check(s: &Surface, p: &Section) -> Result<(), SurfaceError> {
    if verify_section(s, p) {
        Ok(())
    } else {
        Err(SurfaceError::NotOnSurface)
    }
}

pub fn add_sections(s: &Surface, p: &Section, q: &Section) -> Result<Section, SurfaceError> {
    check(s, p)?;
    check(s, q)?;
    Ok(from_short(s, &short_add(&s.short, &to_short(s, p), &to_short(s, q))))
}

pub fn negate(s: &Surface, p: &Section) -> Result<Section, SurfaceError> {
    check(s, p)?;
    Ok(from_short(s, &short_neg(&to_short(s, p))))
}

/// `p ⊟ q`.
pub fn subtract(s: &Surface, p: &Section, q: &Section) -> Result<Section, SurfaceError> {
    check(s, p)?;
    check(s, q)?;
    let d = short_add(&s.short, &to_short(s, p), &short_neg(&to_short(s, q)));
    Ok(from_short(s, &d))
}

/// `n·p` by double-and-add; negative `n` negates.
pub fn multiply(s: &Surface, p: &Section, n: i64) -> Result<Section, SurfaceError> {
    check(s, p)?;
    let mut base = to_short(s, p);
    if n < 0 {
        base = short_neg(&base);
    }
    let mut k = n.unsigned_abs();
    let mut acc = ShortPoint::Zero;
    while k > 0 {
        if k & 1 == 1 {
            acc = short_add(&s.short, &acc, &base);
        }
        base = short_add(&s.short, &base, &base);
        k >>= 1;
    }
    Ok(from_short(s, &acc))
}

/// Least `n ≤ bound` with `n·p = O`.
pub fn torsion_order(s: &Surface, p: &Section, bound: u32) -> Result<Option<u32>, SurfaceError> {
    check(s, p)?;
    let start = to_short(s, p);
    let mut cur = start.clone();
    for n in 1..=bound {
        if cur == ShortPoint::Zero {
            return Ok(Some(n));
        }
        cur = short_add(&s.short, &cur, &start);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::ratfunc;

    fn s321() -> Surface {
        Surface::parse("y^2 = x^3 + x^2 + s*x").unwrap()
    }

    #[test]
    fn two_torsion() {
        let s = s321();
        let p = Section::new(RatFunc::zero(), RatFunc::zero());
        assert!(verify_section(&s, &p));
        assert_eq!(add_sections(&s, &p, &p).unwrap(), Section::Zero);
        assert_eq!(torsion_order(&s, &p, 12).unwrap(), Some(2));
        assert_eq!(torsion_order(&s, &Section::Zero, 12).unwrap(), Some(1));
    }

    #[test]
    fn four_torsion_on_long_form() {
        let s = Surface::parse("y^2 + x*y + s*y = x^3 + s*x^2").unwrap();
        let p = Section::new(RatFunc::zero(), RatFunc::zero());
        assert!(verify_section(&s, &p));
        assert_eq!(torsion_order(&s, &p, 12).unwrap(), Some(4));
        let two = multiply(&s, &p, 2).unwrap();
        assert_eq!(two, Section::new(ratfunc("-s"), RatFunc::zero()));
        assert_eq!(multiply(&s, &p, -3).unwrap(), p);
    }

    #[test]
    fn parse_and_reject() {
        let s = s321();
        assert_eq!(Section::parse("(0, 0)", &s).unwrap(), Section::new(RatFunc::zero(), RatFunc::zero()));
        assert_eq!(Section::parse("O", &s).unwrap(), Section::Zero);
        let bad = Section::parse("(1, s)", &s).unwrap();
        assert!(!verify_section(&s, &bad));
        assert_eq!(add_sections(&s, &bad, &bad), Err(SurfaceError::NotOnSurface));
    }
}
