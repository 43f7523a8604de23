//! Kodaira fibre types from the valuations of `A`, `B` and `Δ` (Tate's algorithm in
//! characteristic zero).

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::json;

use super::{ShortModel, Surface, WeierstrassModel};
use crate::algebra::{factor_over, Place, Poly};
use crate::error::SurfaceError;
use crate::lattice::{named_lattice, IntLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    /// `I_n`; `I_0` is a smooth fibre.
    I(u32),
    II,
    III,
    IV,
    /// `I_n^*`.
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    /// Reads the type off `(v(A), v(B), v(Δ))` on a minimal model; `None` means `+∞`.
    pub fn from_valuations(va: Option<i64>, vb: Option<i64>, vd: i64) -> Result<Self, SurfaceError> {
        let a = va.unwrap_or(i64::MAX);
        let b = vb.unwrap_or(i64::MAX);
        use KodairaType::*;
        let t = if vd == 0 {
            I(0)
        } else if a == 0 {
            I(vd as u32)
        } else if b == 1 {
            II
        } else if a == 1 {
            III
        } else if b == 2 {
            IV
        } else if vd == 6 {
            IStar(0)
        } else if a == 2 && b == 3 {
            IStar((vd - 6) as u32)
        } else if a >= 3 && b == 4 {
            IVStar
        } else if a == 3 && b >= 5 {
            IIIStar
        } else if a >= 4 && b == 5 {
            IIStar
        } else {
            return Err(SurfaceError::NonMinimal(format!("v(A) = {a}, v(B) = {b}, v(Δ) = {vd}")));
        };
        Ok(t)
    }

    pub fn euler(self) -> u32 {
        use KodairaType::*;
        match self {
            I(n) => n,
            II => 2,
            III => 3,
            IV => 4,
            IStar(n) => 6 + n,
            IVStar => 8,
            IIIStar => 9,
            IIStar => 10,
        }
    }

    /// Number of irreducible components.
    pub fn components(self) -> u32 {
        use KodairaType::*;
        match self {
            I(0) => 1,
            I(n) => n,
            II => 1,
            III => 2,
            IV => 3,
            IStar(n) => n + 5,
            IVStar => 7,
            IIIStar => 8,
            IIStar => 9,
        }
    }

    /// Root lattice spanned by the non-identity components, as a positive definite name.
    pub fn root_lattice_name(self) -> Option<String> {
        use KodairaType::*;
        match self {
            I(n) if n >= 2 => Some(format!("A{}", n - 1)),
            III => Some("A1".into()),
            IV => Some("A2".into()),
            IStar(n) => Some(format!("D{}", n + 4)),
            IVStar => Some("E6".into()),
            IIIStar => Some("E7".into()),
            IIStar => Some("E8".into()),
            _ => None,
        }
    }

    /// The negative definite lattice of non-identity components.
    pub fn root_lattice(self) -> Option<IntLattice> {
        self.root_lattice_name().map(|n| named_lattice(&n, -1).expect("standard root lattice"))
    }

    /// Type after a quadratic twist ramified at this fibre.
    pub fn twisted(self) -> Self {
        use KodairaType::*;
        match self {
            I(n) => IStar(n),
            IStar(n) => I(n),
            II => IVStar,
            IVStar => II,
            III => IIIStar,
            IIIStar => III,
            IV => IIStar,
            IIStar => IV,
        }
    }

    /// Reduced fibres: the multiplicative types and `II`, `III`, `IV`.
    pub fn is_reduced(self) -> bool {
        matches!(self, KodairaType::I(_) | KodairaType::II | KodairaType::III | KodairaType::IV)
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use KodairaType::*;
        match self {
            I(n) => write!(f, "I{n}"),
            II => write!(f, "II"),
            III => write!(f, "III"),
            IV => write!(f, "IV"),
            IStar(n) => write!(f, "I{n}*"),
            IVStar => write!(f, "IV*"),
            IIIStar => write!(f, "III*"),
            IIStar => write!(f, "II*"),
        }
    }
}

impl FromStr for KodairaType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use KodairaType::*;
        Ok(match s {
            "II" => II,
            "III" => III,
            "IV" => IV,
            "IV*" => IVStar,
            "III*" => IIIStar,
            "II*" => IIStar,
            _ => {
                let body = s.strip_prefix('I').ok_or_else(|| format!("unknown fibre type {s}"))?;
                let (digits, star) = match body.strip_suffix('*') {
                    Some(d) => (d, true),
                    None => (body, false),
                };
                let n: u32 = digits.parse().map_err(|_| format!("unknown fibre type {s}"))?;
                if star {
                    IStar(n)
                } else {
                    I(n)
                }
            }
        })
    }
}

impl Serialize for KodairaType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberClassification {
    pub place: Place,
    pub kodaira: KodairaType,
    /// Euler number of one geometric fibre over the place.
    pub euler: u32,
    pub root_lattice: Option<String>,
    pub va: Option<i64>,
    pub vb: Option<i64>,
    pub vd: i64,
}

impl FiberClassification {
    /// Number of geometric fibres over the place.
    pub fn degree(&self) -> usize {
        self.place.degree()
    }

    pub fn to_json(&self, var: &str) -> serde_json::Value {
        json!({
            "place": self.place.display_in(var),
            "degree": self.degree(),
            "type": self.kodaira.to_string(),
            "euler": self.euler,
            "root_lattice": self.root_lattice,
        })
    }
}

/// Fibre type at a place of the minimal model.
pub fn kodaira_type(m: &ShortModel, place: &Place) -> Result<FiberClassification, SurfaceError> {
    let local = m.local(place);
    let (va, vb) = (local.va(), local.vb());
    if va.is_some_and(|a| a >= 4) && vb.is_some_and(|b| b >= 6) {
        return Err(SurfaceError::NonMinimal(place.to_string()));
    }
    let vd = local.v(&local.disc()).ok_or(SurfaceError::Singular)?;
    let kodaira = KodairaType::from_valuations(va, vb, vd)?;
    Ok(FiberClassification {
        place: place.clone(),
        kodaira,
        euler: kodaira.euler(),
        root_lattice: kodaira.root_lattice_name(),
        va,
        vb,
        vd,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    Rational,
    K3,
    Other,
}

#[derive(Clone, Debug)]
pub struct SurfaceSummary {
    pub chi: u32,
    pub euler_total: u32,
    pub kind: SurfaceKind,
    /// Singular fibres; finite places in canonical order, infinity last.
    pub fibers: Vec<FiberClassification>,
    /// `A·B` has fewer than two distinct zeros on the projective line.
    pub isotrivial_degenerate: bool,
    pub base_var: String,
}

impl SurfaceSummary {
    /// Singular fibre types with geometric multiplicity, e.g. `["III*", "I2", "I1"]`.
    pub fn configuration(&self) -> Vec<String> {
        let mut out = Vec::new();
        for f in &self.fibers {
            for _ in 0..f.degree() {
                out.push(f.kodaira.to_string());
            }
        }
        out
    }

    pub fn fiber_at(&self, place: &Place) -> Option<&FiberClassification> {
        self.fibers.iter().find(|f| &f.place == place)
    }

    /// Singular fibres whose components give a nonzero root lattice.
    pub fn reducible(&self) -> impl Iterator<Item = &FiberClassification> {
        self.fibers.iter().filter(|f| f.kodaira.root_lattice_name().is_some())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "chi": self.chi,
            "euler_total": self.euler_total,
            "kind": self.kind,
            "isotrivial_degenerate": self.isotrivial_degenerate,
            "fibers": self.fibers.iter().map(|f| f.to_json(&self.base_var)).collect::<Vec<_>>(),
        })
    }
}

/// Classifies every singular fibre of a model.
pub fn classify_surface(m: &WeierstrassModel) -> Result<SurfaceSummary, SurfaceError> {
    Surface::new(m.clone())?.summary()
}

/// Irreducible factors of `p` over the coefficient field, in canonical order.
pub(crate) fn finite_places(p: &Poly, radicand: i64) -> Result<Vec<Place>, SurfaceError> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let mut fs: Vec<Poly> = factor_over(p, radicand)?.factors.into_iter().map(|(f, _)| f).collect();
    fs.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.canonical_cmp(b)));
    Ok(fs.into_iter().map(Place::Finite).collect())
}

pub(crate) fn summarize(s: &Surface) -> Result<SurfaceSummary, SurfaceError> {
    let m = &s.short;
    if m.chi == 0 {
        return Err(SurfaceError::Product);
    }
    let d = s.radicand();
    let delta = m.discriminant();
    let mut places = finite_places(&delta, d)?;
    let deg_delta = delta.deg_i();
    if deg_delta < 12 * m.chi as i64 {
        places.push(Place::Infinity);
    }
    let mut fibers = Vec::new();
    let mut total = 0u32;
    for p in places {
        let f = kodaira_type(m, &p)?;
        total += f.euler * f.degree() as u32;
        fibers.push(f);
    }
    if total != 12 * m.chi {
        return Err(SurfaceError::BadModel(format!(
            "Euler numbers sum to {total}, expected {}",
            12 * m.chi
        )));
    }
    let kind = match m.chi {
        1 => SurfaceKind::Rational,
        2 => SurfaceKind::K3,
        _ => SurfaceKind::Other,
    };
    Ok(SurfaceSummary {
        chi: m.chi,
        euler_total: total,
        kind,
        fibers,
        isotrivial_degenerate: ab_zero_count(m, d)? < 2,
        base_var: s.base_var().to_string(),
    })
}

/// Number of distinct geometric zeros of `A·B` on the projective line (0 if `A·B ≡ 0`).
fn ab_zero_count(m: &ShortModel, radicand: i64) -> Result<usize, SurfaceError> {
    if m.a.is_zero() || m.b.is_zero() {
        return Ok(0);
    }
    let ab = &m.a * &m.b;
    let mut n: usize = finite_places(&ab, radicand)?.iter().map(Place::degree).sum();
    if m.a.deg_i() < 4 * m.chi as i64 || m.b.deg_i() < 6 * m.chi as i64 {
        n += 1;
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::fe;

    #[test]
    fn valuation_table() {
        use KodairaType::*;
        let t = |a: Option<i64>, b: Option<i64>, d| KodairaType::from_valuations(a, b, d).unwrap();
        assert_eq!(t(Some(0), Some(0), 0), I(0));
        assert_eq!(t(Some(0), Some(0), 3), I(3));
        assert_eq!(t(Some(1), Some(1), 2), II);
        assert_eq!(t(Some(1), Some(2), 3), III);
        assert_eq!(t(Some(2), Some(2), 4), IV);
        assert_eq!(t(Some(2), Some(3), 6), IStar(0));
        assert_eq!(t(None, Some(3), 6), IStar(0));
        assert_eq!(t(Some(2), Some(3), 9), IStar(3));
        assert_eq!(t(Some(3), Some(4), 8), IVStar);
        assert_eq!(t(Some(3), None, 9), IIIStar);
        assert_eq!(t(Some(4), Some(5), 10), IIStar);
        assert!(KodairaType::from_valuations(Some(4), Some(6), 12).is_err());
    }

    #[test]
    fn names_round_trip() {
        for s in ["I0", "I7", "II", "III", "IV", "I0*", "I3*", "IV*", "III*", "II*"] {
            assert_eq!(s.parse::<KodairaType>().unwrap().to_string(), s);
        }
        for t in ["I4", "II", "III", "IV", "I0", "I2*"] {
            let k: KodairaType = t.parse().unwrap();
            assert_eq!(k.twisted().twisted(), k);
        }
    }

    #[test]
    fn rational_surface_321() {
        let s = Surface::parse("y^2 = x^3 + x^2 + s*x").unwrap().summary().unwrap();
        assert_eq!(s.kind, SurfaceKind::Rational);
        assert_eq!(s.euler_total, 12);
        let at = |p: Place| s.fiber_at(&p).unwrap().kodaira.to_string();
        assert_eq!(at(Place::at(fe("0"))), "I2");
        assert_eq!(at(Place::at(fe("1/4"))), "I1");
        assert_eq!(at(Place::Infinity), "III*");
        assert_eq!(s.fibers.last().unwrap().place, Place::Infinity);
    }

    #[test]
    fn inose_has_two_ii_star() {
        let s = Surface::parse("y^2 = x^3 - 3t^4 x + t^5(t^2 + 5t + 1)").unwrap().summary().unwrap();
        assert_eq!(s.kind, SurfaceKind::K3);
        let reducible: Vec<String> = s.reducible().map(|f| f.kodaira.to_string()).collect();
        assert_eq!(reducible, vec!["II*", "II*"]);
        assert_eq!(s.fiber_at(&Place::at(fe("0"))).unwrap().kodaira, KodairaType::IIStar);
    }

    #[test]
    fn barth_peters_generic() {
        // λ = 2, μ = 3
        let m = WeierstrassModel::parse_with(
            "w^2 = x(x^2 - 8(2+3-2)t^2 x + 16(2t+3)(3t+2)t^3)",
            "x",
            "w",
            Some("t"),
        )
        .unwrap();
        let s = classify_surface(&m).unwrap();
        assert_eq!(s.kind, SurfaceKind::K3);
        let at = |p: Place| s.fiber_at(&p).unwrap().kodaira.to_string();
        assert_eq!(at(Place::at(fe("-2/3"))), "I2");
        assert_eq!(at(Place::at(fe("-3/2"))), "I2");
    }

    #[test]
    fn product_is_rejected() {
        let s = Surface::parse("y^2 = x^3 + x + 1").unwrap();
        assert!(matches!(s.summary(), Err(SurfaceError::Product)));
    }
}
