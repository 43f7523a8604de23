//! Weierstrass models over the projective line, their minimal short forms and fibre types.

pub mod involution;
pub mod kodaira;

use std::sync::OnceLock;

use serde::Serialize;

use crate::algebra::parse::{parse_expr_with_base, Expr};
use crate::algebra::{factor_over, valuation, Fe, Place, Poly, RatFunc};
use crate::error::SurfaceError;

pub use involution::{apply_involution, CoordinateMap};
pub use kodaira::{classify_surface, kodaira_type, FiberClassification, KodairaType, SurfaceKind, SurfaceSummary};

/// Names of the two fibre coordinates and of the base parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vars {
    pub x: String,
    pub y: String,
    pub base: String,
}

impl Default for Vars {
    fn default() -> Self {
        Vars { x: "x".into(), y: "y".into(), base: "t".into() }
    }
}

impl Vars {
    pub fn new(x: &str, y: &str, base: &str) -> Self {
        Vars { x: x.into(), y: y.into(), base: base.into() }
    }
}

/// `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6` with coefficients in the base function field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassModel {
    pub a1: RatFunc,
    pub a2: RatFunc,
    pub a3: RatFunc,
    pub a4: RatFunc,
    pub a6: RatFunc,
    pub vars: Vars,
}

impl WeierstrassModel {
    pub fn new(a1: RatFunc, a2: RatFunc, a3: RatFunc, a4: RatFunc, a6: RatFunc) -> Self {
        WeierstrassModel { a1, a2, a3, a4, a6, vars: Vars::default() }
    }

    /// `y² = x³ + a·x + b`.
    pub fn short(a: RatFunc, b: RatFunc) -> Self {
        WeierstrassModel::new(RatFunc::zero(), RatFunc::zero(), RatFunc::zero(), a, b)
    }

    pub fn with_vars(mut self, vars: Vars) -> Self {
        self.vars = vars;
        self
    }

    /// Parses `"y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6"` with the default names.
    pub fn parse(s: &str) -> Result<Self, SurfaceError> {
        Self::parse_with(s, "x", "y", None)
    }

    /// Parses an equation in the fibre coordinates `x`, `y`; any other identifier is the base
    /// parameter (named `base` when given).
    pub fn parse_with(s: &str, x: &str, y: &str, base: Option<&str>) -> Result<Self, SurfaceError> {
        let (lhs, rhs) = s
            .split_once('=')
            .ok_or_else(|| SurfaceError::BadModel("expected an equation with '='".into()))?;
        let fibre = [x, y];
        let l = parse_expr_with_base(lhs, &fibre, base)?;
        let r = parse_expr_with_base(rhs, &fibre, l.base_var.as_deref().or(base))?;
        if l.radicand != 0 && r.radicand != 0 && l.radicand != r.radicand {
            return Err(SurfaceError::BadModel("two different square roots".into()));
        }
        let base_name = r
            .base_var
            .or(l.base_var)
            .or_else(|| base.map(str::to_string))
            .unwrap_or_else(|| "t".into());
        let f = l.expr.sub(&r.expr);
        Self::from_expr(&f).map(|m| m.with_vars(Vars::new(x, y, &base_name)))
    }

    fn from_expr(f: &Expr) -> Result<Self, SurfaceError> {
        let c = f.coeff(&[0, 2]);
        if c.is_zero() || f.coeff(&[3, 0]) != -&c {
            return Err(SurfaceError::BadModel(
                "coefficients of y^2 and x^3 must be opposite on the two sides".into(),
            ));
        }
        let allowed = [[0u32, 2], [1, 1], [0, 1], [3, 0], [2, 0], [1, 0], [0, 0]];
        if let Some(k) = f.terms.keys().find(|k| !allowed.iter().any(|a| a[..] == k[..])) {
            return Err(SurfaceError::BadModel(format!("unexpected monomial with exponents {k:?}")));
        }
        let inv = c.inv();
        let g = |e: [u32; 2]| &f.coeff(&e) * &inv;
        Ok(WeierstrassModel::new(g([1, 1]), -g([2, 0]), g([0, 1]), -g([1, 0]), -g([0, 0])))
    }

    pub fn coefficients(&self) -> [&RatFunc; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    /// Radicand of the coefficient field (0 for ℚ).
    pub fn radicand(&self) -> i64 {
        self.coefficients().iter().map(|c| c.radicand()).find(|d| *d != 0).unwrap_or(0)
    }

    pub fn is_short(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero() && self.a3.is_zero()
    }

    /// `y² + a1xy + a3y − (x³ + a2x² + a4x + a6)` at a point over the function field.
    pub fn residual(&self, x: &RatFunc, y: &RatFunc) -> RatFunc {
        let lhs = &(&(y * y) + &(&(&self.a1 * x) * y)) + &(&self.a3 * y);
        let x2 = x * x;
        let rhs = &(&(&(&x2 * x) + &(&self.a2 * &x2)) + &(&self.a4 * x)) + &self.a6;
        &lhs - &rhs
    }

    /// Substitutes `t ↦ f(t)` into every coefficient.
    pub fn compose_base(&self, f: &RatFunc) -> Self {
        WeierstrassModel {
            a1: self.a1.compose(f),
            a2: self.a2.compose(f),
            a3: self.a3.compose(f),
            a4: self.a4.compose(f),
            a6: self.a6.compose(f),
            vars: self.vars.clone(),
        }
    }

    pub fn display(&self) -> String {
        let b = &self.vars.base;
        let (x, y) = (&self.vars.x, &self.vars.y);
        let term = |c: &RatFunc, mono: &str| -> Option<String> {
            if c.is_zero() {
                return None;
            }
            let s = c.display_in(b);
            Some(match (mono.is_empty(), c.is_one()) {
                (true, _) => s,
                (false, true) => mono.to_string(),
                (false, false) => format!("({s})*{mono}"),
            })
        };
        let mut lhs = vec![format!("{y}^2")];
        lhs.extend(term(&self.a1, &format!("{x}*{y}")));
        lhs.extend(term(&self.a3, y));
        let mut rhs = vec![format!("{x}^3")];
        rhs.extend(term(&self.a2, &format!("{x}^2")));
        rhs.extend(term(&self.a4, x));
        rhs.extend(term(&self.a6, ""));
        format!("{} = {}", lhs.join(" + "), rhs.join(" + "))
    }
}

/// Integral minimal model `y² = x³ + A·x + B` over `K[t]`, minimal at infinity for weight `χ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortModel {
    pub a: Poly,
    pub b: Poly,
    pub chi: u32,
}

fn deg_or_neg(p: &Poly) -> i64 {
    if p.is_zero() {
        i64::MIN / 4
    } else {
        p.deg_i()
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

impl ShortModel {
    /// Computes the smallest admissible `χ`.
    pub fn new(a: Poly, b: Poly) -> Result<Self, SurfaceError> {
        let chi = ceil_div(deg_or_neg(&a), 4).max(ceil_div(deg_or_neg(&b), 6)).max(0) as u32;
        let m = ShortModel { a, b, chi };
        if m.discriminant().is_zero() {
            return Err(SurfaceError::Singular);
        }
        Ok(m)
    }

    /// `Δ = 16(4A³ + 27B²)`.
    pub fn discriminant(&self) -> Poly {
        let a3 = self.a.pow(3).scale(&Fe::int(4));
        let b2 = self.b.pow(2).scale(&Fe::int(27));
        (&a3 + &b2).scale(&Fe::int(16))
    }

    /// `j = 6912·A³ / (4A³ + 27B²)`, the normalization with `c4³ − c6² = 1728·Δ`.
    pub fn j_invariant(&self) -> RatFunc {
        let a3 = self.a.pow(3);
        let den = &a3.scale(&Fe::int(4)) + &self.b.pow(2).scale(&Fe::int(27));
        RatFunc::new(a3.scale(&Fe::int(6912)), den)
    }

    /// The model in `s = 1/t`: `(s^{4χ} A(1/s), s^{6χ} B(1/s))`.
    pub fn chart_at_infinity(&self) -> ShortModel {
        let w = self.chi as usize;
        let rev = |p: &Poly, d: usize| if p.is_zero() { Poly::zero() } else { p.reverse_to(d) };
        ShortModel { a: rev(&self.a, 4 * w), b: rev(&self.b, 6 * w), chi: self.chi }
    }

    /// Local coefficients and uniformizer at a place; infinity uses the chart in `s = 1/t`.
    pub fn local(&self, place: &Place) -> LocalModel {
        match place {
            Place::Finite(pi) => LocalModel {
                a: RatFunc::from_poly(self.a.clone()),
                b: RatFunc::from_poly(self.b.clone()),
                pi: pi.clone(),
            },
            Place::Infinity => {
                let c = self.chart_at_infinity();
                LocalModel { a: RatFunc::from_poly(c.a), b: RatFunc::from_poly(c.b), pi: Poly::x() }
            }
        }
    }

    /// A section's minimal-model coordinates moved into the chart of `place`.
    pub fn local_point(&self, place: &Place, x: &RatFunc, y: &RatFunc) -> (RatFunc, RatFunc) {
        match place {
            Place::Finite(_) => (x.clone(), y.clone()),
            Place::Infinity => {
                let inv = RatFunc::x().inv();
                let s = RatFunc::x();
                let w = self.chi as i32;
                (&x.compose(&inv) * &s.pow(2 * w), &y.compose(&inv) * &s.pow(3 * w))
            }
        }
    }

    pub fn radicand(&self) -> i64 {
        let d = self.a.radicand();
        if d != 0 {
            d
        } else {
            self.b.radicand()
        }
    }
}

/// Short model coefficients and uniformizer at one place.
#[derive(Clone, Debug)]
pub struct LocalModel {
    pub a: RatFunc,
    pub b: RatFunc,
    pub pi: Poly,
}

impl LocalModel {
    pub fn place(&self) -> Place {
        Place::Finite(self.pi.clone())
    }

    pub fn v(&self, r: &RatFunc) -> Option<i64> {
        valuation(r, &self.place())
    }

    pub fn va(&self) -> Option<i64> {
        self.v(&self.a)
    }

    pub fn vb(&self) -> Option<i64> {
        self.v(&self.b)
    }

    pub fn disc(&self) -> RatFunc {
        let a3 = self.a.pow(3).scale(&Fe::int(4));
        let b2 = self.b.pow(2).scale(&Fe::int(27));
        (&a3 + &b2).scale(&Fe::int(16))
    }
}

/// Transport between the input model and the minimal short model:
/// `X = λ²(x + r)`, `Y = λ³(y + s·x + w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordChange {
    pub r: RatFunc,
    pub s: RatFunc,
    pub w: RatFunc,
    pub scale: RatFunc,
}

impl CoordChange {
    pub fn to_minimal(&self, x: &RatFunc, y: &RatFunc) -> (RatFunc, RatFunc) {
        let l2 = &self.scale * &self.scale;
        let l3 = &l2 * &self.scale;
        let xm = &l2 * &(x + &self.r);
        let ym = &l3 * &(&(y + &(&self.s * x)) + &self.w);
        (xm, ym)
    }

    pub fn from_minimal(&self, xm: &RatFunc, ym: &RatFunc) -> (RatFunc, RatFunc) {
        let l2 = &self.scale * &self.scale;
        let l3 = &l2 * &self.scale;
        let x = &(xm / &l2) - &self.r;
        let y = &(&(ym / &l3) - &(&self.s * &x)) - &self.w;
        (x, y)
    }
}

/// A Weierstrass model with its minimal short model and the coordinate change between them.
#[derive(Clone, Debug)]
pub struct Surface {
    pub model: WeierstrassModel,
    pub short: ShortModel,
    pub change: CoordChange,
    radicand: i64,
    summary: OnceLock<SurfaceSummary>,
}

fn half() -> Fe {
    Fe::frac(1, 2)
}

impl Surface {
    pub fn new(model: WeierstrassModel) -> Result<Self, SurfaceError> {
        let m = &model;
        let s = m.a1.scale(&half());
        let w = m.a3.scale(&half());
        let quarter = Fe::frac(1, 4);
        let c2 = &m.a2 + &(&m.a1 * &m.a1).scale(&quarter);
        let c4 = &m.a4 + &(&m.a1 * &m.a3).scale(&half());
        let c6 = &m.a6 + &(&m.a3 * &m.a3).scale(&quarter);
        let r = c2.scale(&Fe::frac(1, 3));
        let a0 = &c4 - &(&c2 * &c2).scale(&Fe::frac(1, 3));
        let b0 = &(&c6 - &(&c2 * &c4).scale(&Fe::frac(1, 3)))
            + &(&(&c2 * &c2) * &c2).scale(&Fe::frac(2, 27));
        let radicand = m.radicand();
        let (short, scale) = minimalize(&a0, &b0, radicand)?;
        let radicand = if radicand != 0 { radicand } else { short.radicand() };
        let change = CoordChange { r, s, w, scale };
        Ok(Surface { model, short, change, radicand, summary: OnceLock::new() })
    }

    pub fn parse(s: &str) -> Result<Self, SurfaceError> {
        Surface::new(WeierstrassModel::parse(s)?)
    }

    pub fn from_short(a: RatFunc, b: RatFunc) -> Result<Self, SurfaceError> {
        Surface::new(WeierstrassModel::short(a, b))
    }

    pub fn chi(&self) -> u32 {
        self.short.chi
    }

    /// Radicand of the coefficient field used for factoring (0 for ℚ).
    pub fn radicand(&self) -> i64 {
        self.radicand
    }

    /// The same surface with places taken over ℚ(√d), as needed for sections defined there.
    pub fn extend_scalars(mut self, d: i64) -> Result<Self, SurfaceError> {
        if d == self.radicand || d == 0 {
            return Ok(self);
        }
        if self.radicand != 0 {
            return Err(SurfaceError::Algebra(crate::error::AlgebraError::MixedRadicands(self.radicand, d)));
        }
        self.radicand = d;
        self.summary = OnceLock::new();
        Ok(self)
    }

    pub fn base_var(&self) -> &str {
        &self.model.vars.base
    }

    /// Fibre classification, computed once per surface.
    pub fn summary(&self) -> Result<SurfaceSummary, SurfaceError> {
        if let Some(s) = self.summary.get() {
            return Ok(s.clone());
        }
        let s = kodaira::summarize(self)?;
        Ok(self.summary.get_or_init(|| s).clone())
    }

    pub fn fibre_at(&self, place: &Place) -> Result<FiberClassification, SurfaceError> {
        kodaira_type(&self.short, place)
    }
}

/// Scales `(A, B) ↦ (λ⁴A, λ⁶B)` to polynomials that are minimal at every finite place.
pub fn minimalize(a: &RatFunc, b: &RatFunc, radicand: i64) -> Result<(ShortModel, RatFunc), SurfaceError> {
    if a.is_zero() && b.is_zero() {
        return Err(SurfaceError::Singular);
    }
    let mut candidates: Vec<Poly> = vec![a.den().clone(), b.den().clone()];
    candidates.push(match (a.is_zero(), b.is_zero()) {
        (true, _) => b.num().clone(),
        (_, true) => a.num().clone(),
        _ => a.num().gcd(b.num()),
    });
    let mut places: Vec<Poly> = Vec::new();
    for c in candidates {
        if c.degree().unwrap_or(0) == 0 {
            continue;
        }
        for (p, _) in factor_over(&c, radicand)?.factors {
            if !places.contains(&p) {
                places.push(p);
            }
        }
    }
    let mut scale = RatFunc::one();
    for p in places {
        let place = Place::Finite(p.clone());
        let fa = valuation(a, &place).map(|v| v.div_euclid(4));
        let fb = valuation(b, &place).map(|v| v.div_euclid(6));
        let m = match (fa, fb) {
            (Some(x), Some(y)) => x.min(y),
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => unreachable!(),
        };
        if m != 0 {
            scale = &scale * &RatFunc::from_poly(p).pow(-m as i32);
        }
    }
    let l4 = scale.pow(4);
    let l6 = scale.pow(6);
    let na = &l4 * a;
    let nb = &l6 * b;
    let (Some(pa), Some(pb)) = (na.as_poly(), nb.as_poly()) else {
        return Err(SurfaceError::NonMinimal("scaling left a denominator".into()));
    };
    Ok((ShortModel::new(pa.clone(), pb.clone())?, scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::{poly, ratfunc};

    #[test]
    fn completes_the_cube() {
        let s = Surface::new(WeierstrassModel::parse("y^2 = x^3 + x^2 + s*x").unwrap()).unwrap();
                let a = ratfunc("s - 1/3");
        let b = ratfunc("-s/3 + 2/27");
        assert!(s.change.scale.is_one());
        assert_eq!(RatFunc::from_poly(s.short.a.clone()), a);
        assert_eq!(RatFunc::from_poly(s.short.b.clone()), b);
        assert_eq!(s.chi(), 1);
        assert_eq!(s.model.vars.base, "s");
    }

    #[test]
    fn removes_fourth_and_sixth_powers() {
        let (m, scale) = minimalize(&ratfunc("t^4"), &ratfunc("t^6"), 0).unwrap();
        assert_eq!((m.a, m.b), (poly("1"), poly("1")));
        assert_eq!(scale, ratfunc("1/t"));
        let (m, _) = minimalize(&ratfunc("t^5 + 1/t^4"), &ratfunc("1"), 0).unwrap();
        assert_eq!(m.a, poly("t^9 + 1"));
        assert_eq!(m.b, poly("t^6"));
    }

    #[test]
    fn long_form_round_trip() {
        let s = Surface::parse("y^2 + x*y + s*y = x^3 + s*x^2").unwrap();
        let (x, y) = (ratfunc("-s"), ratfunc("0"));
        assert!(s.model.residual(&x, &y).is_zero());
        let (xm, ym) = s.change.to_minimal(&x, &y);
        let res = &(&(&ym * &ym) - &(&(&xm * &xm) * &xm))
            - &(&(&RatFunc::from_poly(s.short.a.clone()) * &xm) + &RatFunc::from_poly(s.short.b.clone()));
        assert!(res.is_zero());
        assert_eq!(s.change.from_minimal(&xm, &ym), (x, y));
    }

    #[test]
    fn chart_of_constant_model() {
        let m = ShortModel { a: poly("2"), b: poly("3"), chi: 0 };
        assert_eq!(m.chart_at_infinity(), m);
    }

    #[test]
    fn rejects_other_monomials() {
        assert!(WeierstrassModel::parse("y^2 = x^4 + 1").is_err());
        assert!(WeierstrassModel::parse("y^2 = 2x^3 + 1").is_err());
        let m = WeierstrassModel::parse_with("w^2 = t*(t^2 + u*t - u^4)", "t", "w", None).unwrap();
        assert_eq!(m.vars.base, "u");
        assert_eq!(m.a2, ratfunc("u"));
    }
}
