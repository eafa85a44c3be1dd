//! Kodaira fiber classification from the valuations of (g2, g3, Delta) at
//! the places of bad reduction, over a characteristic-zero function field.

use crate::error::WeierstrassError;
use crate::model::BoundModel;
use exactalg::upoly::UPoly;
use exactalg::{rat_i, Rational};
use num_traits::Zero;
use std::collections::HashMap;
use std::fmt;

/// A place on the base line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    /// A rational point t = r.
    Rational(Rational),
    /// A bundle of Galois-conjugate points cut out by a square-free
    /// irrational factor of the discriminant; `count` is its degree.
    Irrational { factor: UPoly, count: usize },
    /// The point at infinity.
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Rational(r) => write!(f, "t={}", r),
            Place::Irrational { factor, count } => {
                write!(f, "{} roots of degree-{} factor", count, factor.degree().unwrap_or(0))
            }
            Place::Infinity => write!(f, "t=inf"),
        }
    }
}

/// Kodaira fiber type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiberType {
    /// I_k; k = 0 is the smooth fiber.
    I(u32),
    /// I_k^*.
    IStar(u32),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

impl FiberType {
    /// Euler number = local contribution to deg Delta (after minimality).
    pub fn euler_number(&self) -> u32 {
        match self {
            FiberType::I(k) => *k,
            FiberType::IStar(k) => k + 6,
            FiberType::II => 2,
            FiberType::III => 3,
            FiberType::IV => 4,
            FiberType::IVStar => 8,
            FiberType::IIIStar => 9,
            FiberType::IIStar => 10,
        }
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberType::I(k) => write!(f, "I{}", k),
            FiberType::IStar(k) => write!(f, "I{}*", k),
            FiberType::II => write!(f, "II"),
            FiberType::III => write!(f, "III"),
            FiberType::IV => write!(f, "IV"),
            FiberType::IVStar => write!(f, "IV*"),
            FiberType::IIIStar => write!(f, "III*"),
            FiberType::IIStar => write!(f, "II*"),
        }
    }
}

/// A classified fiber: place, type, and the valuation triple
/// (ord g2, ord g3, ord Delta) after minimality reduction.
#[derive(Clone, Debug)]
pub struct KodairaFiber {
    pub place: Place,
    pub type_tag: FiberType,
    pub valuations: (u32, u32, u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceClass {
    RationalElliptic,
    K3,
    Other,
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceClass::RationalElliptic => write!(f, "rational_elliptic"),
            SurfaceClass::K3 => write!(f, "K3"),
            SurfaceClass::Other => write!(f, "other"),
        }
    }
}

/// Full fiber configuration of a bound model.
#[derive(Clone, Debug)]
pub struct FiberConfiguration {
    pub fibers: Vec<KodairaFiber>,
    pub surface: SurfaceClass,
    pub deg_delta: u32,
}

impl FiberConfiguration {
    /// Multiset of singular-fiber types, e.g. "2I0* + 6I2": star fibers
    /// first (largest k first), then the remaining additive types, then I_k.
    pub fn signature(&self) -> String {
        let mut counts: HashMap<FiberType, usize> = HashMap::new();
        for f in &self.fibers {
            if f.type_tag == FiberType::I(0) {
                continue;
            }
            let n = match f.place {
                Place::Irrational { count, .. } => count,
                _ => 1,
            };
            *counts.entry(f.type_tag).or_insert(0) += n;
        }
        let rank = |t: &FiberType| -> (u32, u32) {
            match t {
                FiberType::IStar(k) => (0, 1000 - k),
                FiberType::IIStar => (1, 0),
                FiberType::IIIStar => (2, 0),
                FiberType::IVStar => (3, 0),
                FiberType::IV => (4, 0),
                FiberType::III => (5, 0),
                FiberType::II => (6, 0),
                FiberType::I(k) => (7, 1000 - k),
            }
        };
        let mut parts: Vec<(FiberType, usize)> = counts.into_iter().collect();
        parts.sort_by_key(|(t, _)| rank(t));
        parts
            .iter()
            .map(|(t, n)| {
                if *n == 1 {
                    t.to_string()
                } else {
                    format!("{}{}", n, t)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Classify from a reduced valuation triple. Valuations must already be
/// minimal (handled by the callers below).
fn classify(a: u32, b: u32, d: u32) -> Result<FiberType, WeierstrassError> {
    Ok(if d == 0 {
        FiberType::I(0)
    } else if a == 0 && b == 0 {
        FiberType::I(d)
    } else if b == 1 {
        FiberType::II
    } else if a == 1 {
        FiberType::III
    } else if b == 2 {
        FiberType::IV
    } else if a >= 2 && b >= 3 && d == 6 {
        FiberType::IStar(0)
    } else if a == 2 && b == 3 && d > 6 {
        FiberType::IStar(d - 6)
    } else if b == 4 {
        FiberType::IVStar
    } else if a == 3 {
        FiberType::IIIStar
    } else if b == 5 {
        FiberType::IIStar
    } else {
        return Err(WeierstrassError::NonMinimalUnresolved);
    })
}

/// Valuation triple at a place with minimality reduction (at most 4 rounds).
fn reduce_and_classify(
    mut a: u32,
    mut b: u32,
    mut d: u32,
) -> Result<(FiberType, (u32, u32, u32)), WeierstrassError> {
    for _ in 0..=4 {
        if a >= 4 && b >= 6 && d >= 12 {
            a -= 4;
            b -= 6;
            d -= 12;
        } else {
            let t = classify(a, b, d)?;
            return Ok((t, (a, b, d)));
        }
    }
    Err(WeierstrassError::NonMinimalUnresolved)
}

/// Order of vanishing of `f` along a square-free factor (the number of times
/// the factor divides `f`); `cap` bounds the search.
fn ord_along_factor(f: &UPoly, factor: &UPoly, cap: u32) -> u32 {
    if f.is_zero() {
        return cap; // treated as "at least cap"; callers cap at what matters
    }
    let mut ord = 0;
    let mut cur = f.clone();
    while ord < cap {
        let (q, r) = cur.div_rem(factor);
        if !r.is_zero() {
            break;
        }
        cur = q;
        ord += 1;
    }
    ord
}

fn ord_at_rational(f: &UPoly, r: &Rational, cap: u32) -> u32 {
    ord_along_factor(f, &UPoly::linear_root(r), cap)
}

/// Classify the fiber over one rational place (or infinity).
pub fn kodaira_type(model: &BoundModel, place: &Place) -> Result<KodairaFiber, WeierstrassError> {
    let delta = model.discriminant();
    match place {
        Place::Rational(r) => {
            let a = ord_at_rational(&model.g2, r, 12);
            let b = ord_at_rational(&model.g3, r, 18);
            let d = ord_at_rational(&delta, r, 36);
            let (t, vals) = reduce_and_classify(a, b, d)?;
            Ok(KodairaFiber {
                place: place.clone(),
                type_tag: t,
                valuations: vals,
            })
        }
        Place::Infinity => {
            let inf = model_at_infinity(model);
            let a = ord_at_rational(&inf.g2, &Rational::zero(), 12);
            let b = ord_at_rational(&inf.g3, &Rational::zero(), 18);
            let d = ord_at_rational(&inf.discriminant(), &Rational::zero(), 36);
            let (t, vals) = reduce_and_classify(a, b, d)?;
            Ok(KodairaFiber {
                place: place.clone(),
                type_tag: t,
                valuations: vals,
            })
        }
        Place::Irrational { factor, count } => {
            let a = ord_along_factor(&model.g2, factor, 12);
            let b = ord_along_factor(&model.g3, factor, 18);
            let d = ord_along_factor(&delta, factor, 36);
            let (t, vals) = reduce_and_classify(a, b, d)?;
            Ok(KodairaFiber {
                place: Place::Irrational {
                    factor: factor.clone(),
                    count: *count,
                },
                type_tag: t,
                valuations: vals,
            })
        }
    }
}

/// The chart at infinity: t = 1/s with weights (4k, 6k).
fn model_at_infinity(model: &BoundModel) -> BoundModel {
    let k = model.bundle_power();
    let reverse = |f: &UPoly, weight: u32| -> UPoly {
        // s^weight * f(1/s)
        let mut coeffs = vec![Rational::zero(); weight as usize + 1];
        for (i, c) in f.coeffs().iter().enumerate() {
            coeffs[weight as usize - i] = c.clone();
        }
        UPoly::new(coeffs)
    };
    BoundModel {
        g2: reverse(&model.g2, 4 * k),
        g3: reverse(&model.g3, 6 * k),
    }
}

/// The full fiber configuration over all of Delta's vanishing locus,
/// including infinity.
pub fn fiber_configuration(model: &BoundModel) -> Result<FiberConfiguration, WeierstrassError> {
    let delta = model.discriminant();
    let k = model.bundle_power();
    let mut fibers = Vec::new();
    let mut total = 0u32;

    // Rational roots and square-free irrational factors of Delta.
    for (factor, _mult) in delta.squarefree_decomposition() {
        let roots = factor.rational_roots();
        let mut cofactor = factor.clone();
        for (r, _) in &roots {
            cofactor = cofactor.div_exact(&UPoly::linear_root(r));
            let f = kodaira_type(model, &Place::Rational(r.clone()))?;
            total += f.valuations.2;
            fibers.push(f);
        }
        if let Some(d) = cofactor.degree() {
            if d > 0 {
                let f = kodaira_type(
                    model,
                    &Place::Irrational {
                        factor: cofactor.monic(),
                        count: d,
                    },
                )?;
                total += f.valuations.2 * d as u32;
                fibers.push(f);
            }
        }
    }

    // Infinity.
    let f_inf = kodaira_type(model, &Place::Infinity)?;
    total += f_inf.valuations.2;
    if f_inf.type_tag != FiberType::I(0) {
        fibers.push(f_inf);
    }

    let _ = k;
    let surface = match total {
        12 => SurfaceClass::RationalElliptic,
        24 => SurfaceClass::K3,
        _ => SurfaceClass::Other,
    };
    Ok(FiberConfiguration {
        fibers,
        surface,
        deg_delta: total,
    })
}

/// Helper used by tests and the CLI: fiber configuration of a symbolic model
/// at bound parameter values.
pub fn configuration_at(
    model: &crate::model::WeierstrassModel,
    bindings: &HashMap<String, Rational>,
) -> Result<FiberConfiguration, WeierstrassError> {
    fiber_configuration(&model.bind(bindings)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_family, Family};

    fn bind(pairs: &[(&str, i64)]) -> HashMap<String, Rational> {
        pairs
            .iter()
            .map(|(k, value)| (k.to_string(), rat_i(*value)))
            .collect()
    }

    #[test]
    fn smooth_place_is_i0() {
        let m = build_family(Family::Scd).bind(&bind(&[("c", 5), ("d", 7)])).unwrap();
        let f = kodaira_type(&m, &Place::Rational(rat_i(17))).unwrap();
        assert_eq!(f.type_tag, FiberType::I(0));
        assert_eq!(f.valuations.2, 0);
    }

    #[test]
    fn scd_has_six_i2_fibers() {
        let m = build_family(Family::Scd);
        let cfg = configuration_at(&m, &bind(&[("c", 5), ("d", 7)])).unwrap();
        assert_eq!(cfg.signature(), "6I2");
        assert_eq!(cfg.surface, SurfaceClass::RationalElliptic);
        assert_eq!(cfg.deg_delta, 12);
        // fibers at 0, 1, inf, c, c+d, c/(1-d) = 0,1,5,12,-5/6,inf
        // (the last follows from the branch points 0, 1, t, (t-c)/d of the
        // twisted Legendre form colliding at t(1-d) = c)
        let places: Vec<String> = cfg.fibers.iter().map(|f| f.place.to_string()).collect();
        for want in ["t=0", "t=1", "t=5", "t=12", "t=-5/6", "t=inf"] {
            assert!(places.contains(&want.to_string()), "missing {want}");
        }
    }

    #[test]
    fn twisted_4param_configuration() {
        let m = build_family(Family::Twisted4Param);
        let cfg = configuration_at(&m, &bind(&[("a", 2), ("b", 3), ("c", 5), ("d", 7)])).unwrap();
        assert_eq!(cfg.signature(), "2I0* + 6I2");
        assert_eq!(cfg.surface, SurfaceClass::K3);
        // I0* at t = a with valuations (2, 3, 6)
        let at_a = cfg
            .fibers
            .iter()
            .find(|f| f.place == Place::Rational(rat_i(2)))
            .unwrap();
        assert_eq!(at_a.type_tag, FiberType::IStar(0));
        assert_eq!(at_a.valuations, (2, 3, 6));
    }

    #[test]
    fn narumiya_shiga_configuration() {
        let m = build_family(Family::NarumiyaShiga);
        let b: HashMap<String, Rational> = [("lambda".to_string(), rat_i(2))].into();
        let bm = m.bind(&b).unwrap();
        let at_zero = kodaira_type(&bm, &Place::Rational(Rational::zero())).unwrap();
        assert_eq!(at_zero.type_tag, FiberType::IStar(4));
        let cfg = fiber_configuration(&bm).unwrap();
        assert_eq!(cfg.signature(), "2I4* + 4I1");
        assert_eq!(cfg.surface, SurfaceClass::K3);
    }

    #[test]
    fn restricted_families_match_lemmas() {
        // Note the one-parameter family: the I2 over t=1 merges into the I2*
        // there, so the configuration is 2I2* + I0* + I2 (Euler numbers
        // 8+8+6+2 = 24; a second I2 would push the total to 26, which no
        // elliptic K3 admits).
        let cases = [
            (Family::LegendreD0, vec![("a", 2), ("b", 3), ("c", 5)], "3I0* + 3I2"),
            (Family::LegendreCd0, vec![("a", 2), ("b", 3)], "I2* + 2I0* + 2I2"),
            (Family::LegendreB1Cd0, vec![("a", 5)], "2I2* + I0* + I2"),
        ];
        for (fam, binds, want) in cases {
            let m = build_family(fam);
            let cfg = configuration_at(&m, &bind(&binds)).unwrap();
            assert_eq!(cfg.signature(), want, "family {:?}", fam);
            assert_eq!(cfg.surface, SurfaceClass::K3);
        }
        // Euler numbers of the types involved
        assert_eq!(FiberType::IStar(2).euler_number(), 8);
        assert_eq!(FiberType::IStar(0).euler_number(), 6);
        assert_eq!(FiberType::I(2).euler_number(), 2);
    }

    #[test]
    fn mobius_invariance_of_fiber_multiset() {
        let m = build_family(Family::LegendreCd0);
        let bm = m.bind(&bind(&[("a", 4), ("b", 9)])).unwrap();
        let base = fiber_configuration(&bm).unwrap().signature();
        // a handful of Moebius maps with ps - qr != 0
        let maps = [
            (rat_i(2), rat_i(1), rat_i(0), rat_i(1)),
            (rat_i(1), rat_i(-3), rat_i(1), rat_i(2)),
            (rat_i(0), rat_i(1), rat_i(1), rat_i(0)),
            (rat_i(3), rat_i(5), rat_i(1), rat_i(1)),
            (rat_i(1), rat_i(0), rat_i(2), rat_i(7)),
        ];
        for (p, q, r, s) in maps {
            let moved = bm.mobius(&p, &q, &r, &s);
            assert_eq!(
                fiber_configuration(&moved).unwrap().signature(),
                base,
                "map {:?}",
                (p, q, r, s)
            );
        }
    }
}
