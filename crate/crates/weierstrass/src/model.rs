//! Model type, the named families, parameter binding and serialization.

use crate::error::WeierstrassError;
use exactalg::poly::MultiPoly;
use exactalg::ratfun::RationalFunction;
use exactalg::upoly::UPoly;
use exactalg::{rat, rat_i, Rational};
use num_traits::Zero;
use std::collections::HashMap;
use std::fmt;

/// Weierstrass model `y^2 = 4x^3 - g2 x - g3` over the affine line in
/// `fiber_var`. Coefficients are polynomial in the fiber variable; the
/// parameters may enter rationally (the K3 mirror family has powers of the
/// deformation parameter in its denominators).
#[derive(Clone, PartialEq)]
pub struct WeierstrassModel {
    g2: RationalFunction,
    g3: RationalFunction,
    fiber_var: String,
    params: Vec<String>,
}

impl WeierstrassModel {
    pub fn new(
        g2: RationalFunction,
        g3: RationalFunction,
        fiber_var: &str,
        params: &[&str],
    ) -> Self {
        for rf in [&g2, &g3] {
            assert!(
                rf.denominator().degree(fiber_var).unwrap_or(0) == 0,
                "denominators must not involve the fiber variable"
            );
        }
        let m = WeierstrassModel {
            g2,
            g3,
            fiber_var: fiber_var.to_string(),
            params: params.iter().map(|s| s.to_string()).collect(),
        };
        assert!(
            !m.discriminant().is_zero(),
            "discriminant vanishes identically"
        );
        m
    }

    pub fn from_polys(g2: MultiPoly, g3: MultiPoly, fiber_var: &str, params: &[&str]) -> Self {
        Self::new(
            RationalFunction::from_poly(g2),
            RationalFunction::from_poly(g3),
            fiber_var,
            params,
        )
    }

    pub fn g2(&self) -> &RationalFunction {
        &self.g2
    }

    pub fn g3(&self) -> &RationalFunction {
        &self.g3
    }

    pub fn fiber_var(&self) -> &str {
        &self.fiber_var
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    /// `Delta = g2^3 - 27 g3^2`, exact.
    pub fn discriminant(&self) -> RationalFunction {
        let g2cubed = self.g2.pow(3);
        let g3sq = self.g3.pow(2).scale27();
        &g2cubed - &g3sq
    }

    /// The discriminant as a polynomial, available whenever the coefficients
    /// are polynomial in the parameters as well.
    pub fn discriminant_poly(&self) -> Option<MultiPoly> {
        let d = self.discriminant();
        if d.denominator().is_constant() {
            let c = d.denominator().constant_term();
            Some(d.numerator().scale(&(Rational::from_integer(1.into()) / c)))
        } else {
            None
        }
    }

    /// Bind every parameter to a rational, leaving univariate g2, g3.
    pub fn bind(&self, bindings: &HashMap<String, Rational>) -> Result<BoundModel, WeierstrassError> {
        for p in &self.params {
            if !bindings.contains_key(p) {
                return Err(WeierstrassError::DegenerateParameters(format!(
                    "parameter `{p}` not bound"
                )));
            }
        }
        let to_upoly = |rf: &RationalFunction| -> Result<UPoly, WeierstrassError> {
            let den = rf.denominator().bind(bindings);
            if den.is_zero() {
                return Err(WeierstrassError::DegenerateParameters(
                    "coefficient denominator vanishes".into(),
                ));
            }
            let den = den.constant_term();
            let num = rf.numerator().bind(bindings);
            let coeffs = num
                .univar_coeffs(&self.fiber_var)
                .into_iter()
                .map(|c| {
                    debug_assert!(c.is_constant());
                    c.constant_term() / &den
                })
                .collect();
            Ok(UPoly::new(coeffs))
        };
        let g2 = to_upoly(&self.g2)?;
        let g3 = to_upoly(&self.g3)?;
        let delta = g2.mul(&g2).mul(&g2).sub(&g3.mul(&g3).scale(&rat_i(27)));
        if delta.is_zero() {
            return Err(WeierstrassError::DegenerateParameters(
                "discriminant vanishes identically at these parameters".into(),
            ));
        }
        Ok(BoundModel { g2, g3 })
    }
}

impl fmt::Display for WeierstrassModel {
    /// Canonical text form: `g2 = <poly>; g3 = <poly>; params = [a,b]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "g2 = {}; g3 = {}; params = [{}]",
            self.g2,
            self.g3,
            self.params.join(",")
        )
    }
}

impl fmt::Debug for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

trait Scale27 {
    fn scale27(&self) -> Self;
}

impl Scale27 for RationalFunction {
    fn scale27(&self) -> Self {
        self * &RationalFunction::constant(rat_i(27))
    }
}

/// A model with all parameters bound: univariate exact data, ready for fiber
/// classification.
#[derive(Clone, Debug)]
pub struct BoundModel {
    pub g2: UPoly,
    pub g3: UPoly,
}

impl BoundModel {
    pub fn discriminant(&self) -> UPoly {
        self.g2
            .mul(&self.g2)
            .mul(&self.g2)
            .sub(&self.g3.mul(&self.g3).scale(&rat_i(27)))
    }

    /// Power `k` of the fundamental line bundle `O(k)`: the smallest `k`
    /// with `deg g2 <= 4k`, `deg g3 <= 6k`, `deg Delta <= 12k`.
    pub fn bundle_power(&self) -> u32 {
        let d2 = self.g2.degree().map(|d| d as u32).unwrap_or(0);
        let d3 = self.g3.degree().map(|d| d as u32).unwrap_or(0);
        let dd = self.discriminant().degree().map(|d| d as u32).unwrap_or(0);
        let k = [(d2 + 3) / 4, (d3 + 5) / 6, (dd + 11) / 12]
            .into_iter()
            .max()
            .unwrap();
        k.max(1)
    }

    /// Pull back along the Moebius map `t -> (p t + q)/(r t + s)` with
    /// `ps - qr != 0`, using the line-bundle weights `4k`, `6k`.
    pub fn mobius(&self, p: &Rational, q: &Rational, r: &Rational, s: &Rational) -> BoundModel {
        assert!(!(p * s - q * r).is_zero(), "degenerate Moebius map");
        let k = self.bundle_power();
        let num = UPoly::new(vec![q.clone(), p.clone()]);
        let den = UPoly::new(vec![s.clone(), r.clone()]);
        let pull = |f: &UPoly, weight: u32| -> UPoly {
            // f((pt+q)/(rt+s)) * (rt+s)^weight
            let mut acc = UPoly::zero();
            let d = f.degree().unwrap_or(0);
            debug_assert!(weight as usize >= d);
            let mut num_pow = UPoly::constant(rat_i(1));
            let mut den_pows = vec![UPoly::constant(rat_i(1))];
            for _ in 0..weight {
                den_pows.push(den_pows.last().unwrap().mul(&den));
            }
            for (i, c) in f.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&num_pow.mul(&den_pows[weight as usize - i]).scale(c));
                }
                if i < d {
                    num_pow = num_pow.mul(&num);
                }
            }
            acc
        };
        BoundModel {
            g2: pull(&self.g2, 4 * k),
            g3: pull(&self.g3, 6 * k),
        }
    }
}

/// The named families from the construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Two-parameter rational elliptic surface with six I2 fibers.
    Scd,
    /// Four-parameter mixed-twist family (K3, fibers 2 I0* + 6 I2).
    Twisted4Param,
    /// d = 0 restriction (K3, fibers 3 I0* + 3 I2).
    LegendreD0,
    /// c = d = 0 restriction (K3, fibers I2* + 2 I0* + 2 I2).
    LegendreCd0,
    /// b = 1, c = d = 0 restriction (K3, fibers 2 I2* + I0* + 2 I2).
    LegendreB1Cd0,
    /// The mirror-quartic Weierstrass model (K3, fibers 2 I4* + 4 I1).
    NarumiyaShiga,
}

impl Family {
    pub fn parse(name: &str) -> Result<Family, WeierstrassError> {
        Ok(match name {
            "S_cd" | "s_cd" | "scd" => Family::Scd,
            "twisted_4param" => Family::Twisted4Param,
            "legendre_d0" => Family::LegendreD0,
            "legendre_cd0" => Family::LegendreCd0,
            "legendre_b1cd0" => Family::LegendreB1Cd0,
            "narumiya_shiga" => Family::NarumiyaShiga,
            other => return Err(WeierstrassError::UnknownFamily(other.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Scd => "S_cd",
            Family::Twisted4Param => "twisted_4param",
            Family::LegendreD0 => "legendre_d0",
            Family::LegendreCd0 => "legendre_cd0",
            Family::LegendreB1Cd0 => "legendre_b1cd0",
            Family::NarumiyaShiga => "narumiya_shiga",
        }
    }

    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            Family::Scd => &["c", "d"],
            Family::Twisted4Param => &["a", "b", "c", "d"],
            Family::LegendreD0 => &["a", "b", "c"],
            Family::LegendreCd0 => &["a", "b"],
            Family::LegendreB1Cd0 => &["a"],
            Family::NarumiyaShiga => &["lambda"],
        }
    }
}

fn v(name: &str) -> MultiPoly {
    MultiPoly::var(name)
}

/// g2 and g3 of the rational elliptic surface S_{c,d}, as polynomials in t.
pub fn scd_polys() -> (MultiPoly, MultiPoly) {
    let t = v("t");
    let c = v("c");
    let d = v("d");
    let one = MultiPoly::one();
    // 4/3 * (t^4 - (2c+d+1) t^3 + (c^2+cd+d^2+2c-d+1) t^2 - c(c-d+2) t + c^2)
    let g2inner = &(&(&(&t.pow(4)
        - &(&(&(&c.scale(&rat_i(2)) + &d) + &one) * &t.pow(3)))
        + &(&(&(&(&(&(&c.pow(2) + &(&c * &d)) + &d.pow(2)) + &c.scale(&rat_i(2))) - &d) + &one)
            * &t.pow(2)))
        - &(&(&c * &(&(&c - &d) + &MultiPoly::int(2))) * &t))
        + &c.pow(2);
    let g2 = g2inner.scale(&rat(4, 3));
    // 4/27 * (t^2-(c-d+2)t+2c)(t^2-(c+2d-1)t-c)(2t^2-(2c+d+1)t+c)
    let f1 = &(&t.pow(2) - &(&(&(&c - &d) + &MultiPoly::int(2)) * &t)) + &c.scale(&rat_i(2));
    let f2 = &(&t.pow(2) - &(&(&(&c + &d.scale(&rat_i(2))) - &one) * &t)) - &c;
    let f3 = &(&t.pow(2).scale(&rat_i(2)) - &(&(&(&c.scale(&rat_i(2)) + &d) + &one) * &t)) + &c;
    let g3 = (&(&f1 * &f2) * &f3).scale(&rat(4, 27));
    (g2, g3)
}

/// The quadratic-twist factors `(t-a)^k (t-b)^k` applied to S_{c,d}, i.e.
/// the four-parameter family.
fn twisted_4param_polys() -> (MultiPoly, MultiPoly) {
    let (g2, g3) = scd_polys();
    let t = v("t");
    let qa = &t - &v("a");
    let qb = &t - &v("b");
    let tw = &qa * &qb;
    (&g2 * &tw.pow(2), &g3 * &tw.pow(3))
}

/// Narumiya-Shiga Weierstrass coefficients for the mirror-quartic family,
/// with the deformation parameter `lambda` entering rationally.
fn narumiya_shiga_model() -> WeierstrassModel {
    let u = v("u");
    let l2 = v("lambda").pow(2);
    let l4 = v("lambda").pow(4);
    let l6 = v("lambda").pow(6);
    let one = MultiPoly::one();
    // u^4 + 8 l^2 u^3 + (4l^2-1)(4l^2+1) u^2 + 8 l^2 u + 1
    let p2 = &(&(&(&u.pow(4) + &(&l2.scale(&rat_i(8)) * &u.pow(3)))
        + &(&(&(&l2.scale(&rat_i(4)) - &one) * &(&l2.scale(&rat_i(4)) + &one)) * &u.pow(2)))
        + &(&l2.scale(&rat_i(8)) * &u))
        + &one;
    let g2 = RationalFunction::new(
        (&u.pow(2) * &p2).scale(&rat(4, 3)),
        l4,
    );
    // u^2 + 4 l^2 u + 1
    let q1 = &(&u.pow(2) + &(&l2.scale(&rat_i(4)) * &u)) + &one;
    // 2u^4 + 16 l^2 u^3 + (32 l^4 - 5) u^2 + 16 l^2 u + 2
    let q2 = &(&(&(&u.pow(4).scale(&rat_i(2)) + &(&l2.scale(&rat_i(16)) * &u.pow(3)))
        + &(&(&v("lambda").pow(4).scale(&rat_i(32)) - &MultiPoly::int(5)) * &u.pow(2)))
        + &(&l2.scale(&rat_i(16)) * &u))
        + &MultiPoly::int(2);
    let g3 = RationalFunction::new(
        (&(&u.pow(3) * &q1) * &q2).scale(&rat(4, 27)),
        l6,
    );
    WeierstrassModel::new(g2, g3, "u", &["lambda"])
}

/// Build one of the named families with symbolic parameters.
pub fn build_family(family: Family) -> WeierstrassModel {
    match family {
        Family::Scd => {
            let (g2, g3) = scd_polys();
            WeierstrassModel::from_polys(g2, g3, "t", &["c", "d"])
        }
        Family::Twisted4Param => {
            let (g2, g3) = twisted_4param_polys();
            WeierstrassModel::from_polys(g2, g3, "t", &["a", "b", "c", "d"])
        }
        Family::LegendreD0 => {
            let (g2, g3) = twisted_4param_polys();
            let fix: HashMap<String, Rational> = [("d".to_string(), Rational::zero())].into();
            WeierstrassModel::from_polys(g2.bind(&fix), g3.bind(&fix), "t", &["a", "b", "c"])
        }
        Family::LegendreCd0 => {
            let (g2, g3) = twisted_4param_polys();
            let fix: HashMap<String, Rational> = [
                ("c".to_string(), Rational::zero()),
                ("d".to_string(), Rational::zero()),
            ]
            .into();
            WeierstrassModel::from_polys(g2.bind(&fix), g3.bind(&fix), "t", &["a", "b"])
        }
        Family::LegendreB1Cd0 => {
            let (g2, g3) = twisted_4param_polys();
            let fix: HashMap<String, Rational> = [
                ("b".to_string(), Rational::from_integer(1.into())),
                ("c".to_string(), Rational::zero()),
                ("d".to_string(), Rational::zero()),
            ]
            .into();
            WeierstrassModel::from_polys(g2.bind(&fix), g3.bind(&fix), "t", &["a"])
        }
        Family::NarumiyaShiga => narumiya_shiga_model(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scd_g2_degree_and_leading_coefficient() {
        let m = build_family(Family::Scd);
        let g2 = m.g2().numerator();
        assert_eq!(g2.degree("t"), Some(4));
        let lead = g2.coeff_of("t", 4);
        assert!(lead.is_constant());
        assert_eq!(lead.constant_term(), rat(4, 3));
        assert_eq!(m.g3().numerator().degree("t"), Some(6));
    }

    #[test]
    fn twisted_4param_has_double_twist_factors_in_g2() {
        // g2 carries (t-a)^2 (t-b)^2 by construction; binding t = a or t = b
        // must kill g2 and g3
        let m = build_family(Family::Twisted4Param);
        let sub: HashMap<String, MultiPoly> = [("t".to_string(), MultiPoly::var("a"))].into();
        assert!(m.g2().numerator().subst(&sub).is_zero());
        assert!(m.g3().numerator().subst(&sub).is_zero());
    }

    #[test]
    fn narumiya_shiga_matches_printed_form() {
        let m = build_family(Family::NarumiyaShiga);
        // g2 = 4/(3 lambda^4) u^2 (u^4 + 8 lambda^2 u^3 + ...)
        assert_eq!(m.g2().denominator(), &MultiPoly::var("lambda").pow(4));
        let num = m.g2().numerator();
        assert_eq!(num.degree("u"), Some(6));
        // coefficient of u^6 is 4/3, of u^5 is (4/3) * 8 lambda^2
        assert_eq!(num.coeff_of("u", 6), MultiPoly::constant(rat(4, 3)));
        assert_eq!(
            num.coeff_of("u", 5),
            MultiPoly::var("lambda").pow(2).scale(&rat(32, 3))
        );
    }

    #[test]
    fn canonical_serialization_shape() {
        let m = build_family(Family::LegendreB1Cd0);
        let s = m.to_string();
        assert!(s.starts_with("g2 = "));
        assert!(s.contains("; g3 = "));
        assert!(s.ends_with("params = [a]"));
    }

    #[test]
    fn bound_model_discriminant_nonzero() {
        let m = build_family(Family::Twisted4Param);
        let b: HashMap<String, Rational> = [
            ("a".to_string(), rat_i(2)),
            ("b".to_string(), rat_i(3)),
            ("c".to_string(), rat_i(5)),
            ("d".to_string(), rat_i(7)),
        ]
        .into();
        let bm = m.bind(&b).unwrap();
        assert_eq!(bm.discriminant().degree(), Some(22));
        assert_eq!(bm.bundle_power(), 2);
    }
}
