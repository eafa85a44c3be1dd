//! The mixed-twist construction: pure twists along the one-parameter family
//! of ramified covers, and the two-parameter quadratic twist.

use crate::error::WeierstrassError;
use crate::model::WeierstrassModel;
use exactalg::poly::MultiPoly;
use exactalg::ratfun::RationalFunction;
use exactalg::{rat, rat_i, Integer, Rational};
use num_traits::One;

/// Generalized functional invariant `(i, j, alpha)` with `1 <= i, j <= 6`
/// and `alpha` either 1/2 or 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalInvariant {
    pub i: u32,
    pub j: u32,
    pub alpha: Rational,
}

impl FunctionalInvariant {
    pub fn new(i: u32, j: u32, alpha: Rational) -> Self {
        assert!((1..=6).contains(&i) && (1..=6).contains(&j));
        assert!(alpha == rat(1, 2) || alpha == rat_i(1), "alpha must be 1/2 or 1");
        FunctionalInvariant { i, j, alpha }
    }

    /// The cover-normalization constant `c_ij = (-1)^i i^i j^j / (i+j)^(i+j)`.
    pub fn c_ij(&self) -> Rational {
        let (i, j) = (self.i as i64, self.j as i64);
        let num = Integer::from(i).pow(self.i) * Integer::from(j).pow(self.j);
        let den = Integer::from(i + j).pow(self.i + self.j);
        let sign = if i % 2 == 0 { 1 } else { -1 };
        Rational::new(num * Integer::from(sign), den)
    }
}

/// Which twist to perform.
#[derive(Clone, Debug)]
pub enum TwistMode {
    /// Pull back along the one-parameter cover family, introducing the new
    /// base variable `v` and parameter name given here (the paper's t-tilde).
    OneParam { new_param: String },
    /// The two-parameter mixed twist with invariant (1,1,1), realized as the
    /// quadratic twist with ramification at `t = a` and `t = b`.
    TwoParamAb { a: String, b: String },
}

/// Apply the mixed-twist construction.
pub fn mixed_twist(
    model: &WeierstrassModel,
    inv: &FunctionalInvariant,
    mode: &TwistMode,
) -> Result<WeierstrassModel, WeierstrassError> {
    let t = model.fiber_var().to_string();
    let deg_g2 = model.g2().numerator().degree(&t).unwrap_or(0);
    let deg_g3 = model.g3().numerator().degree(&t).unwrap_or(0);
    let bound2 = bound(&rat_i(4), inv);
    let bound3 = bound(&rat_i(6), inv);
    if Rational::from_integer(deg_g2.into()) > bound2
        || Rational::from_integer(deg_g3.into()) > bound3
    {
        return Err(WeierstrassError::DegreeBoundViolated {
            deg_g2,
            deg_g3,
            bound_g2: bound2.to_string(),
            bound_g3: bound3.to_string(),
        });
    }
    match mode {
        TwistMode::OneParam { new_param } => one_param_twist(model, inv, new_param),
        TwistMode::TwoParamAb { a, b } => {
            if inv != &FunctionalInvariant::new(1, 1, rat_i(1)) {
                return Err(WeierstrassError::DegenerateParameters(
                    "two-parameter twist requires invariant (1,1,1)".into(),
                ));
            }
            if a == b {
                return Err(WeierstrassError::RamificationCollision);
            }
            quadratic_twist(model, a, b)
        }
    }
}

fn bound(four_or_six: &Rational, inv: &FunctionalInvariant) -> Rational {
    // min(w/i, w*alpha/j)
    let by_i = four_or_six / Rational::from_integer(inv.i.into());
    let by_j = four_or_six * &inv.alpha / Rational::from_integer(inv.j.into());
    by_i.min(by_j)
}

/// Pure twist in the affine chart `v = v0/v1`: plug the cover into the
/// coefficients and clear denominators with the twist factors
/// `v^4 (v+1)^(4 alpha)` and `v^6 (v+1)^(6 alpha)`.
fn one_param_twist(
    model: &WeierstrassModel,
    inv: &FunctionalInvariant,
    new_param: &str,
) -> Result<WeierstrassModel, WeierstrassError> {
    let t = model.fiber_var();
    let c = inv.c_ij();
    let v = MultiPoly::var("v");
    let vp1 = &v + &MultiPoly::one();
    let tt = MultiPoly::var(new_param);

    let weight = |w: u32, rf: &RationalFunction| -> MultiPoly {
        // w alpha is an integer because alpha is 1/2 or 1 and w is 2,4,6,3
        let walpha = (Rational::from_integer(w.into()) * &inv.alpha)
            .to_integer();
        let walpha = u32::try_from(walpha.clone()).expect("small exponent");
        let mut acc = MultiPoly::zero();
        let coeffs = rf.numerator().univar_coeffs(t);
        for (k, ak) in coeffs.iter().enumerate() {
            if ak.is_zero() {
                continue;
            }
            let k32 = k as u32;
            // a_k c^k tt^k v^(w - i k) (v+1)^(w alpha - j k)
            let e1 = w
                .checked_sub(inv.i * k32)
                .expect("degree bound guarantees nonnegative exponent");
            let e2 = walpha
                .checked_sub(inv.j * k32)
                .expect("degree bound guarantees nonnegative exponent");
            let mut term = ak.scale(&pow_rat(&c, k32));
            term = &term * &tt.pow(k32);
            term = &term * &v.pow(e1);
            term = &term * &vp1.pow(e2);
            acc = &acc + &term;
        }
        acc
    };

    let g2 = RationalFunction::new(weight(4, model.g2()), model.g2().denominator().clone());
    let g3 = RationalFunction::new(weight(6, model.g3()), model.g3().denominator().clone());
    let mut params: Vec<&str> = model
        .params()
        .iter()
        .filter(|p| p.as_str() != t)
        .map(|s| s.as_str())
        .collect();
    params.push(new_param);
    Ok(WeierstrassModel::new(g2, g3, "v", &params))
}

fn quadratic_twist(
    model: &WeierstrassModel,
    a: &str,
    b: &str,
) -> Result<WeierstrassModel, WeierstrassError> {
    let t = MultiPoly::var(model.fiber_var());
    let q = &(&t - &MultiPoly::var(a)) * &(&t - &MultiPoly::var(b));
    let g2 = RationalFunction::new(
        model.g2().numerator() * &q.pow(2),
        model.g2().denominator().clone(),
    );
    let g3 = RationalFunction::new(
        model.g3().numerator() * &q.pow(3),
        model.g3().denominator().clone(),
    );
    let mut params: Vec<&str> = model.params().iter().map(|s| s.as_str()).collect();
    for p in [a, b] {
        if !params.contains(&p) {
            params.push(p);
        }
    }
    Ok(WeierstrassModel::new(g2, g3, model.fiber_var(), &params))
}

fn pow_rat(r: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..k {
        acc *= r;
    }
    acc
}
