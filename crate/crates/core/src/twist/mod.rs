//! Quadratic base change, quadratic twist and the involutions relating a rational elliptic
//! surface `S`, its double cover `X` and the twist `X′`.

pub mod enriques;
pub mod family;

use num_traits::Signed;
use serde_json::json;

use crate::algebra::field::squarefree_decompose;
use crate::algebra::{factor_over, Fe, Place, Poly, RatFunc};
use crate::error::SurfaceError;
use crate::mw::{verify_section, Section};
use crate::surface::{CoordinateMap, Surface, Vars, WeierstrassModel};

pub use enriques::{enriques_check, map_section, EnriquesReport, FibreVerdict, RamifiedFibre};
pub use family::{m1_family, DegeneracyLocus, MOneFamily};

/// A degree-two map `s = f(t)` of the projective line together with its deck involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticBaseChange {
    pub map: RatFunc,
    /// Fixed points of the deck involution, in the parameter `t`.
    pub ramification: Vec<Place>,
    /// Their images, in the parameter `s`.
    pub branch: Vec<Place>,
    /// `d(s)` with `k(t) = k(s)(√d)`, stripped of rational square factors.
    pub branch_poly: Poly,
    /// `δ(t)` with `d(f(t)) = δ(t)²`.
    pub root: RatFunc,
    /// The Möbius involution `ı` with `f∘ı = f`.
    pub deck: RatFunc,
}

fn coeffs3(p: &Poly) -> [Fe; 3] {
    [p.coeff(0), p.coeff(1), p.coeff(2)]
}

/// Places fixed by a Möbius involution `t ↦ (αt + β)/(γt + δ)`.
pub(crate) fn fixed_places(m: &RatFunc, radicand: i64) -> Result<Vec<Place>, SurfaceError> {
    let t = Poly::x();
    let fixed = &(&t * m.den()) - m.num();
    if fixed.is_zero() {
        return Err(SurfaceError::NotAutomorphism("the base map is the identity".into()));
    }
    let mut out: Vec<Place> = factor_over(&fixed, radicand)?.factors.into_iter().map(|(p, _)| Place::finite(p)).collect();
    if fixed.degree().unwrap_or(0) < 2 {
        out.push(Place::Infinity);
    }
    Ok(out)
}

impl QuadraticBaseChange {
    pub fn new(f: RatFunc, radicand: i64) -> Result<Self, SurfaceError> {
        let (num, den) = (f.num().clone(), f.den().clone());
        if f.degree() != 2 {
            return Err(SurfaceError::Inconsistent(format!("base change must have degree 2, got {}", f.degree())));
        }
        let [n0, n1, n2] = coeffs3(&num);
        let [d0, d1, d2] = coeffs3(&den);
        let s = Poly::x();
        let lin = |n: &Fe, d: &Fe| &Poly::constant(n.clone()) - &s.scale(d);
        let (c0, c1, c2) = (lin(&n0, &d0), lin(&n1, &d1), lin(&n2, &d2));
        let mut branch_poly = &(&c1 * &c1) - &(&c2 * &c0).scale(&Fe::int(4));
        let fr = |c: &Poly| RatFunc::from_poly(c.clone()).compose(&f);
        let mut root = &(&fr(&c2) * &RatFunc::x()).scale(&Fe::int(2)) + &fr(&c1);
        if let Some(lc) = branch_poly.lc().to_rational() {
            let (_, k) = squarefree_decompose(&lc);
            let k = Fe::from_rational(k.abs());
            branch_poly = branch_poly.scale(&(&k * &k).inv());
            root = root.scale(&k.inv());
        }
        // e_k = n_k D − d_k N; the roots of Σ e_k m^k are t and ı(t)
        let e = |n: &Fe, d: &Fe| &den.scale(n) - &num.scale(d);
        let deck = RatFunc::new(e(&n0, &d0), &Poly::x() * &e(&n2, &d2));
        if f.compose(&deck) != f || deck == RatFunc::x() {
            return Err(SurfaceError::Inconsistent("no deck involution for this map".into()));
        }
        let ramification = fixed_places(&deck, radicand)?;
        let mut branch: Vec<Place> =
            factor_over(&branch_poly, radicand)?.factors.into_iter().map(|(p, _)| Place::finite(p)).collect();
        if branch_poly.degree().unwrap_or(0) < 2 {
            branch.push(Place::Infinity);
        }
        Ok(QuadraticBaseChange { map: f, ramification, branch, branch_poly, root, deck })
    }

    /// `t ↦ t²`, ramified over `0` and `∞`.
    pub fn normalized() -> Self {
        let t2 = RatFunc::from_poly(Poly::monomial(Fe::one(), 2));
        Self::new(t2, 0).expect("t^2 is a quadratic map")
    }
}

fn short_coeffs(s: &Surface) -> (RatFunc, RatFunc) {
    (RatFunc::from_poly(s.short.a.clone()), RatFunc::from_poly(s.short.b.clone()))
}

fn with_vars(model: WeierstrassModel, vars: &Vars) -> WeierstrassModel {
    model.with_vars(vars.clone())
}

/// `X = S ×_f ℙ¹`, written on the minimal short model of `S` with `s ↦ f(t)`.
pub fn pullback(s: &Surface, bc: &QuadraticBaseChange) -> Result<Surface, SurfaceError> {
    for place in &bc.branch {
        let fibre = s.fibre_at(place)?;
        if !fibre.kodaira.is_reduced() {
            return Err(SurfaceError::Pullback(format!(
                "fibre of type {} at the branch point {} is not reduced",
                fibre.kodaira,
                place.display_in(s.base_var())
            )));
        }
    }
    let (a, b) = short_coeffs(s);
    let model = with_vars(WeierstrassModel::short(a.compose(&bc.map), b.compose(&bc.map)), &s.model.vars);
    Surface::new(model)?.extend_scalars(s.radicand())
}

/// The quadratic twist `(A, B) ↦ (d²A, d³B)` of the minimal short model.
pub fn twist(s: &Surface, d: &Poly) -> Result<Surface, SurfaceError> {
    if d.is_zero() {
        return Err(SurfaceError::Inconsistent("cannot twist by zero".into()));
    }
    let (a, b) = short_coeffs(s);
    let d = RatFunc::from_poly(d.clone());
    let d2 = &d * &d;
    let model = with_vars(WeierstrassModel::short(&d2 * &a, &(&d2 * &d) * &b), &s.model.vars);
    Surface::new(model)?.extend_scalars(s.radicand())
}

/// The constant `c` with `A₂ = c²A₁` and `B₂ = c³B₁` on the minimal short models, when the
/// two surfaces differ by a constant twist.
pub fn constant_twist_factor(first: &Surface, second: &Surface) -> Option<Fe> {
    let (a1, b1) = short_coeffs(first);
    let (a2, b2) = short_coeffs(second);
    if a1.is_zero() != a2.is_zero() || b1.is_zero() != b2.is_zero() || a1.is_zero() || b1.is_zero() {
        return None;
    }
    let c = (&(&b2 * &a1) / &(&b1 * &a2)).as_constant()?;
    let cr = RatFunc::constant(c.clone());
    (a2 == &(&cr * &cr) * &a1 && b2 == &(&(&cr * &cr) * &cr) * &b1).then_some(c)
}

/// `S`, its double cover `X`, the twist `X′ = X/𝚥` and the involutions `ı`, `𝚥 = ı∘(−1)` on `X`.
#[derive(Clone, Debug)]
pub struct TwistPackage {
    pub base: Surface,
    pub base_change: QuadraticBaseChange,
    pub cover: Surface,
    pub quotient: Surface,
    pub deck: CoordinateMap,
    pub nikulin: CoordinateMap,
}

impl TwistPackage {
    pub fn new(base: Surface, base_change: QuadraticBaseChange) -> Result<Self, SurfaceError> {
        let cover = pullback(&base, &base_change)?;
        let quotient = twist(&base, &base_change.branch_poly)?;
        let one = RatFunc::one();
        let deck = CoordinateMap::affine(one.clone(), RatFunc::zero(), one.clone(), base_change.deck.clone());
        let nikulin = CoordinateMap::affine(one, RatFunc::zero(), RatFunc::int(-1), base_change.deck.clone());
        Ok(TwistPackage { base, base_change, cover, quotient, deck, nikulin })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let var = self.cover.base_var().to_string();
        let bc = &self.base_change;
        json!({
            "base": self.base.model.display(),
            "base_change": bc.map.display_in(&var),
            "ramification": bc.ramification.iter().map(|p| p.display_in(&var)).collect::<Vec<_>>(),
            "branch": bc.branch.iter().map(|p| p.display_in(&var)).collect::<Vec<_>>(),
            "branch_poly": bc.branch_poly.display_in(&var),
            "cover": self.cover.model.display(),
            "quotient": self.quotient.model.display(),
            "deck": format!("(x, y, {}) -> (x, y, {})", var, bc.deck.display_in(&var)),
            "nikulin": format!("(x, y, {}) -> (x, -y, {})", var, bc.deck.display_in(&var)),
        })
    }
}

/// Pulls a section of `X′` back to `X`: `(x′(f)/δ², y′(f)/δ³)`.
pub fn transfer_section(pkg: &TwistPackage, p: &Section) -> Result<Section, SurfaceError> {
    if !verify_section(&pkg.quotient, p) {
        return Err(SurfaceError::NotOnSurface);
    }
    let Some((x, y)) = p.coords() else {
        return Ok(Section::Zero);
    };
    let bc = &pkg.base_change;
    let d2 = &bc.root * &bc.root;
    let d3 = &d2 * &bc.root;
    let out = Section::new(&x.compose(&bc.map) / &d2, &y.compose(&bc.map) / &d3);
    if !verify_section(&pkg.cover, &out) {
        return Err(SurfaceError::NotOnSurface);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::{poly, ratfunc};
    use crate::surface::KodairaType;

    fn types(s: &Surface) -> Vec<String> {
        let mut v = s.summary().unwrap().configuration();
        v.sort();
        v
    }

    #[test]
    fn normalized_base_change() {
        let bc = QuadraticBaseChange::normalized();
        assert_eq!(bc.deck, ratfunc("-t"));
        assert_eq!(bc.branch_poly, poly("t"));
        assert_eq!(bc.root, ratfunc("t"));
        assert_eq!(bc.ramification, vec![Place::at(Fe::zero()), Place::Infinity]);
        assert_eq!(bc.branch, vec![Place::at(Fe::zero()), Place::Infinity]);
    }

    #[test]
    fn deck_of_general_map() {
        let bc = QuadraticBaseChange::new(ratfunc("(2t+3)(3t+2)/t"), 0).unwrap();
        assert_eq!(bc.deck, ratfunc("1/t"));
        assert_eq!(bc.branch.len(), 2);
        let d = RatFunc::from_poly(bc.branch_poly.clone()).compose(&bc.map);
        assert_eq!(d, &bc.root * &bc.root);
        assert!(QuadraticBaseChange::new(ratfunc("t^3"), 0).is_err());
    }

    #[test]
    fn es321_pulls_back_to_barth_peters() {
        let s = Surface::parse("y^2 = x^3 + x^2 + t*x").unwrap();
        let (l, m) = (2i64, 3i64);
        let scale = 4 * (l + m - 2) * (l + m - 2);
        let f = ratfunc(&format!("({l}t+{m})({m}t+{l})/({scale}t)"));
        let x = pullback(&s, &QuadraticBaseChange::new(f, 0).unwrap()).unwrap();
        let bpf = Surface::parse(&format!(
            "y^2 = x(x^2 - 8({l}+{m}-2)t^2 x + 16({l}t+{m})({m}t+{l})t^3)"
        ))
        .unwrap();
        assert_eq!(types(&x), types(&bpf));
        assert!(constant_twist_factor(&x, &bpf).is_some());
    }

    #[test]
    fn twist_table_and_involution() {
        let s = Surface::parse("y^2 = x^3 + x^2 + t*x").unwrap();
        let d = poly("t - 1");
        let x = twist(&s, &d).unwrap();
        let sum = x.summary().unwrap();
        assert_eq!(sum.fiber_at(&Place::Infinity).unwrap().kodaira, KodairaType::III);
        assert_eq!(sum.fiber_at(&Place::at(Fe::one())).unwrap().kodaira, KodairaType::IStar(0));
        let back = twist(&x, &d).unwrap();
        assert_eq!(back.short, s.short);
    }

    #[test]
    fn non_reduced_branch_fibre_is_rejected() {
        let s = Surface::parse("y^2 = x^3 + x^2 + t*x").unwrap();
        let err = pullback(&s, &QuadraticBaseChange::normalized()).unwrap_err();
        assert!(matches!(err, SurfaceError::Pullback(_)));
    }
}
