//! Direct series evaluation of `nF(n-1)(rho; 1, ..., 1 | t)` with a rigorous
//! tail bound, for |t| < 1.

use crate::error::MonodromyError;
use exactalg::cnum::BigComplex;
use exactalg::real::{bits_for_digits, BigFixed};
use exactalg::Rational;
use num_traits::{One, Signed};
use std::cmp::Ordering;

/// Evaluate the hypergeometric series at a complex argument inside the unit
/// disk. The coefficients `prod (rho_i)_k / (k!)^n` are monotonically
/// decreasing and bounded by 1 for exponents in (0,1), so the tail after K
/// terms is bounded by `|t|^(K+1)/(1-|t|)`.
pub fn hypergeometric_eval(
    rho: &[Rational],
    t: &BigComplex,
    precision_digits: u32,
) -> Result<BigComplex, MonodromyError> {
    for r in rho {
        assert!(
            r > &Rational::from_integer(0.into()) && r < &Rational::from_integer(1.into()),
            "exponents must lie in (0,1)"
        );
    }
    let bits = bits_for_digits(precision_digits + 20);
    let t = t.with_bits(bits);
    let abs_t = t.abs();
    if abs_t.cmp_value(&BigFixed::one(bits)) != Ordering::Less {
        return Err(MonodromyError::DivergentArgument);
    }
    let n = rho.len() as i64;
    let _ = n;
    let one_minus = BigFixed::one(bits).sub(&abs_t);
    let mut coeff = Rational::one();
    let mut power = BigComplex::one(bits);
    let mut sum = BigComplex::zero(bits);
    let mut k = 0i64;
    loop {
        sum = sum.add(&power.mul_real(&BigFixed::from_rational(&coeff, bits)));
        // rigorous tail: coefficients <= 1, so tail <= |t|^(k+1)/(1-|t|)
        let tail = abs_t.pow_i64(k + 1).div(&one_minus);
        if tail.abs_smaller_than_2pow(bits as i64 - 8) {
            break;
        }
        for r in rho {
            coeff *= r + Rational::from_integer(k.into());
        }
        for _ in 0..rho.len() {
            coeff /= Rational::from_integer((k + 1).into());
        }
        power = power.mul(&t);
        k += 1;
        if k > 4_000_000 {
            return Err(MonodromyError::PrecisionExhausted(
                "series did not converge within the term budget".into(),
            ));
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::rat;

    #[test]
    fn value_at_zero_is_one() {
        let v = hypergeometric_eval(
            &[rat(1, 2), rat(1, 2), rat(1, 2)],
            &BigComplex::zero(bits_for_digits(50)),
            30,
        )
        .unwrap();
        assert!(v
            .sub(&BigComplex::one(v.bits()))
            .abs()
            .abs_smaller_than_2pow(v.bits() as i64 - 8));
    }

    #[test]
    fn matches_partial_sums_oracle() {
        // 200-term partial sums with remainder estimate at t = 1/10
        let rho = [rat(1, 2), rat(1, 2), rat(1, 2)];
        let bits = bits_for_digits(60);
        let t = BigComplex::from_rational(&rat(1, 10), bits);
        let got = hypergeometric_eval(&rho, &t, 40).unwrap();
        let mut coeff = Rational::one();
        let mut acc = BigComplex::zero(bits);
        let mut power = BigComplex::one(bits);
        for k in 0..200i64 {
            acc = acc.add(&power.mul_real(&BigFixed::from_rational(&coeff, bits)));
            for r in &rho {
                coeff *= r + Rational::from_integer(k.into());
            }
            for _ in 0..3 {
                coeff /= Rational::from_integer((k + 1).into());
            }
            power = power.mul(&t);
        }
        // remainder below 10^-200; comparison tolerance from the eval call
        assert!(got.dist(&acc).abs_smaller_than_2pow(130));
    }

    #[test]
    fn divergent_argument_rejected() {
        let bits = bits_for_digits(30);
        let t = BigComplex::from_rational(&rat(3, 2), bits);
        assert!(matches!(
            hypergeometric_eval(&[rat(1, 2)], &t, 30),
            Err(MonodromyError::DivergentArgument)
        ));
    }

    #[test]
    fn clausen_identity_sample_points() {
        // 2F1(1/8, 3/8; 1 | t)^2 = 3F2(1/4, 1/2, 3/4; 1, 1 | t)
        let digits = 45u32;
        let bits = bits_for_digits(digits);
        let tol = BigFixed::from_rational(&rat(1, 10), bits).pow_i64(30);
        let pts = [
            (rat(1, 2), rat(0, 1)),
            (rat(-1, 2), rat(0, 1)),
            (rat(3, 10), rat(1, 5)),
            (rat(-1, 4), rat(-1, 3)),
            (rat(0, 1), rat(2, 5)),
        ];
        for (re, im) in pts {
            let t = BigComplex::new(
                BigFixed::from_rational(&re, bits),
                BigFixed::from_rational(&im, bits),
            );
            let f21 = crate::hyper::eval_general(&[rat(1, 8), rat(3, 8)], &[rat(1, 1)], &t, digits)
                .unwrap();
            let f32 = hypergeometric_eval(&[rat(1, 4), rat(1, 2), rat(3, 4)], &t, digits).unwrap();
            let diff = f21.mul(&f21).dist(&f32);
            assert!(
                diff.cmp_value(&tol) == Ordering::Less,
                "Clausen failed at ({}, {}): {:?}",
                re,
                im,
                diff.to_f64()
            );
        }
    }
}

/// General pFq evaluation inside the unit disk (used for the Clausen factor
/// 2F1(1/8, 3/8; 1 | t) whose lower parameter list is not all ones).
pub fn eval_general(
    upper: &[Rational],
    lower: &[Rational],
    t: &BigComplex,
    precision_digits: u32,
) -> Result<BigComplex, MonodromyError> {
    let bits = bits_for_digits(precision_digits + 20);
    let t = t.with_bits(bits);
    let abs_t = t.abs();
    if abs_t.cmp_value(&BigFixed::one(bits)) != Ordering::Less {
        return Err(MonodromyError::DivergentArgument);
    }
    let one_minus = BigFixed::one(bits).sub(&abs_t);
    let mut coeff = Rational::one();
    let mut max_coeff = Rational::one();
    let mut power = BigComplex::one(bits);
    let mut sum = BigComplex::zero(bits);
    let mut k = 0i64;
    loop {
        sum = sum.add(&power.mul_real(&BigFixed::from_rational(&coeff, bits)));
        if coeff.abs() > max_coeff {
            max_coeff = coeff.abs();
        }
        // coefficient ratios tend to |t| < 1; once coefficients are
        // decreasing the tail is below coeff * |t|^(k+1)/(1-|t|)
        let bound = BigFixed::from_rational(&max_coeff, bits)
            .mul(&abs_t.pow_i64(k + 1))
            .div(&one_minus);
        if bound.abs_smaller_than_2pow(bits as i64 - 8) {
            break;
        }
        for a in upper {
            coeff *= a + Rational::from_integer(k.into());
        }
        for b in lower {
            coeff /= b + Rational::from_integer(k.into());
        }
        coeff /= Rational::from_integer((k + 1).into());
        power = power.mul(&t);
        k += 1;
        if k > 4_000_000 {
            return Err(MonodromyError::PrecisionExhausted(
                "series did not converge within the term budget".into(),
            ));
        }
    }
    Ok(sum)
}
