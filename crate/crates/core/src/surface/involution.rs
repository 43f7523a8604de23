//! Coordinate substitutions `(x, y, t) ↦ (X, Y, T)` and the check that one preserves a model.

use crate::algebra::parse::{parse_expr_with_base, Expr};
use crate::algebra::RatFunc;
use crate::error::SurfaceError;

use super::{Vars, WeierstrassModel};

/// Images of the two fibre coordinates (polynomials in them over the function field) and of
/// the base parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateMap {
    pub x: Expr,
    pub y: Expr,
    pub t: RatFunc,
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

impl CoordinateMap {
    /// Parses `"(X, Y, T)"` written in the model's variable names.
    pub fn parse(s: &str, vars: &Vars) -> Result<Self, SurfaceError> {
        let body = s.trim();
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| SurfaceError::BadModel(format!("expected a triple (X, Y, T), got {s:?}")))?;
        let parts = split_top_level(body);
        if parts.len() != 3 {
            return Err(SurfaceError::BadModel(format!("expected three components, got {}", parts.len())));
        }
        let fibre = [vars.x.as_str(), vars.y.as_str()];
        let base = Some(vars.base.as_str());
        let x = parse_expr_with_base(parts[0], &fibre, base)?.expr;
        let y = parse_expr_with_base(parts[1], &fibre, base)?.expr;
        let t = parse_expr_with_base(parts[2], &fibre, base)?
            .expr
            .as_base()
            .ok_or_else(|| SurfaceError::BadModel("the base image may not involve the fibre coordinates".into()))?;
        if t.as_constant().is_some() {
            return Err(SurfaceError::BadModel("the base image is constant".into()));
        }
        Ok(CoordinateMap { x, y, t })
    }

    /// `(λ²x + μ, λ³y + νx + ρ)`-type maps given directly by coefficients: `x ↦ αx + β`,
    /// `y ↦ γy`, `t ↦ T`.
    pub fn affine(alpha: RatFunc, beta: RatFunc, gamma: RatFunc, t: RatFunc) -> Self {
        let x = Expr::var(2, 0).scale_by(&alpha).add(&Expr::constant(2, beta));
        let y = Expr::var(2, 1).scale_by(&gamma);
        CoordinateMap { x, y, t }
    }
}

/// The defining polynomial `y² + a1xy + a3y − x³ − a2x² − a4x − a6`.
pub fn model_expr(m: &WeierstrassModel) -> Expr {
    let x = Expr::var(2, 0);
    let y = Expr::var(2, 1);
    let c = |r: &RatFunc| Expr::constant(2, r.clone());
    y.pow(2)
        .add(&x.mul(&y).scale_by(&m.a1))
        .add(&y.scale_by(&m.a3))
        .sub(&x.pow(3))
        .sub(&x.pow(2).scale_by(&m.a2))
        .sub(&x.scale_by(&m.a4))
        .sub(&c(&m.a6))
}

/// The factor `λ` with `F∘map = λ·F`, if the substitution carries the model to itself.
pub fn involution_factor(m: &WeierstrassModel, map: &CoordinateMap) -> Option<RatFunc> {
    let f = model_expr(m);
    let g = f.substitute(&[map.x.clone(), map.y.clone()], &map.t);
    let lambda = g.coeff(&[0, 2]);
    if lambda.is_zero() {
        return None;
    }
    (g == f.scale_by(&lambda)).then_some(lambda)
}

/// True iff the substitution transforms the equation into a nonzero multiple of itself.
pub fn apply_involution(m: &WeierstrassModel, map: &CoordinateMap) -> bool {
    involution_factor(m, map).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::ratfunc;

    #[test]
    fn inose_form() {
        let m = WeierstrassModel::parse("y^2 = x^3 - 3t^4 x + t^5(t^2 + 5t + 1)").unwrap();
        let map = CoordinateMap::parse("(x/t^4, y/t^6, 1/t)", &m.vars).unwrap();
        assert_eq!(involution_factor(&m, &map), Some(ratfunc("1/t^12")));
        let wrong = CoordinateMap::parse("(x/t^4, y/t^6, 2/t)", &m.vars).unwrap();
        assert!(!apply_involution(&m, &wrong));
    }

    #[test]
    fn malformed_maps() {
        let v = Vars::default();
        assert!(CoordinateMap::parse("(x, y)", &v).is_err());
        assert!(CoordinateMap::parse("(x, y, x)", &v).is_err());
        assert!(CoordinateMap::parse("x, y, t", &v).is_err());
        assert!(CoordinateMap::parse("(x, y, 3)", &v).is_err());
    }
}
