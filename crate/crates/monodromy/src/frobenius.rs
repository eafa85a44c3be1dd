//! The Frobenius basis at t = 0 of the rescaled operator, evaluated through
//! ε-jets of the deformed series
//! `f(ε, t) = Σ_k c_k(ε) (Ct)^(k+ε) C^(-ε)`,
//! `c_k(ε) = Π_i (rho_i + ε)_k / (1+ε)_k^n`.

use crate::error::MonodromyError;
use crate::linalg::CMatrix;
use crate::transition::HypergeometricParams;
use exactalg::cnum::BigComplex;
use exactalg::constants;
use exactalg::jet::JetSeries;
use exactalg::real::{bits_for_digits, BigFixed};
use exactalg::Rational;
use num_traits::Signed;

/// Exact rational Taylor coefficients of the holomorphic deformations
/// `y_r(t)`: entry `[r][k]` is the `t^k` coefficient of
/// `(1/r!) d^r/d eps^r` of the deformed coefficient `c_k(eps)`, at `eps = 0`
/// (without the `t^eps` factor).
pub fn y_series_jets(
    params: &HypergeometricParams,
    order_t: usize,
    precision_digits: u32,
) -> Vec<JetSeries> {
    let n = params.n();
    let bits = bits_for_digits(precision_digits + 20);
    let mut out = Vec::with_capacity(order_t);
    let mut c = JetSeries::one(n, bits);
    for k in 0..order_t {
        out.push(c.clone());
        // c_{k+1} = c_k * prod_i (rho_i + eps + k) / (1 + eps + k)^n
        let mut numer = JetSeries::one(n, bits);
        for rho in &params.rho {
            let shift = JetSeries::constant(
                BigComplex::from_rational(&(rho + Rational::from_integer((k as i64).into())), bits),
                n,
            )
            .add(&JetSeries::eps_or_zero(n, bits))
            .expect("same order");
            numer = numer.mul(&shift).expect("same order");
        }
        let denom_base = JetSeries::constant(
            BigComplex::from_i64(k as i64 + 1, bits),
            n,
        )
        .add(&JetSeries::eps_or_zero(n, bits))
        .expect("same order");
        let denom = denom_base.pow_i64(n as i64).expect("nonzero constant term");
        c = c
            .mul(&numer)
            .and_then(|x| x.div(&denom))
            .expect("jet arithmetic");
    }
    out
}

trait EpsOrZero {
    fn eps_or_zero(order: usize, bits: u32) -> JetSeries;
}

impl EpsOrZero for JetSeries {
    /// ε for order >= 2, the zero jet for order 1.
    fn eps_or_zero(order: usize, bits: u32) -> JetSeries {
        if order >= 2 {
            JetSeries::eps(order, bits)
        } else {
            JetSeries::zero(1, bits)
        }
    }
}

/// Matrix whose column `j` holds `(f~_m, theta f~_m, ..., theta^(n-1) f~_m)`
/// at `t0`, for `m = n-1-j` (the Frobenius-basis ordering
/// `(f_(n-1), ..., f_0)`). `t0` must satisfy `0 < C t0 < 1`.
pub fn frobenius_basis_matrix(
    params: &HypergeometricParams,
    t0: &Rational,
    precision_digits: u32,
) -> Result<CMatrix, MonodromyError> {
    let n = params.n();
    let bits = bits_for_digits(precision_digits + 20);
    let ct0 = &params.c_scale * t0;
    if !(ct0.is_positive() && ct0 < Rational::from_integer(1.into())) {
        return Err(MonodromyError::BasisMatchingIllConditioned);
    }

    // S_i(eps) = sum_k c_k(eps) (k+eps)^i (C t0)^k, truncated when the
    // geometric factor is negligible
    let ct0_fixed = BigFixed::from_rational(&ct0, bits);
    let mut s: Vec<JetSeries> = (0..n).map(|_| JetSeries::zero(n, bits)).collect();
    let mut c = JetSeries::one(n, bits);
    let mut geo = BigFixed::one(bits);
    let mut k = 0usize;
    loop {
        // accumulate c * (k+eps)^i * geo
        let mut kpow = JetSeries::one(n, bits);
        let keps = JetSeries::constant(BigComplex::from_i64(k as i64, bits), n)
            .add(&JetSeries::eps_or_zero(n, bits))
            .expect("same order");
        for s_i in s.iter_mut().take(n) {
            let term = c.mul(&kpow).expect("same order").scale_real(&geo);
            *s_i = s_i.add(&term).expect("same order");
            kpow = kpow.mul(&keps).expect("same order");
        }
        // advance
        let mut numer = JetSeries::one(n, bits);
        for rho in &params.rho {
            let shift = JetSeries::constant(
                BigComplex::from_rational(&(rho + Rational::from_integer((k as i64).into())), bits),
                n,
            )
            .add(&JetSeries::eps_or_zero(n, bits))
            .expect("same order");
            numer = numer.mul(&shift).expect("same order");
        }
        let denom = JetSeries::constant(BigComplex::from_i64(k as i64 + 1, bits), n)
            .add(&JetSeries::eps_or_zero(n, bits))
            .expect("same order")
            .pow_i64(n as i64)
            .expect("nonzero");
        c = c.mul(&numer).and_then(|x| x.div(&denom)).expect("jets");
        geo = geo.mul(&ct0_fixed);
        k += 1;
        // c_k coefficients stay bounded; stop when the geometric factor
        // falls below the working resolution (it cannot reach exact zero:
        // round-half-away stalls the last mantissa bit)
        if geo.abs_smaller_than_2pow(bits as i64 - 8) {
            break;
        }
        if k > 200_000 {
            return Err(MonodromyError::PrecisionExhausted(
                "Frobenius series did not converge".into(),
            ));
        }
    }

    // multiply by t0^eps = exp(eps ln t0)
    let ln_t0 = BigFixed::from_rational(t0, bits).ln();
    let t0_eps = JetSeries::eps_or_zero(n, bits)
        .scale(&BigComplex::from_real(ln_t0))
        .exp();
    for s_i in s.iter_mut() {
        *s_i = s_i.mul(&t0_eps).expect("same order");
    }

    // column j <-> m = n-1-j; entry (i, j) = [eps^m] S_i / (2 pi i)^m
    let two_pi_i = BigComplex::from_real(constants::pi(bits)).mul_i().mul_i64(2);
    Ok(CMatrix::from_fn(n, |i, j| {
        let m = n - 1 - j;
        s[i].coeff(m).div(&two_pi_i.pow_i64(m as i64))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyper::hypergeometric_eval;
    use exactalg::rat;

    #[test]
    fn y0_coefficients_are_hypergeometric() {
        let p = HypergeometricParams::mirror(3).unwrap();
        let jets = y_series_jets(&p, 6, 40);
        // eps^0 slice: plain hypergeometric coefficients
        let want = exactalg::series::PowerSeries::hypergeometric(
            &p.rho,
            &[Rational::from_integer(1.into()), Rational::from_integer(1.into())],
            6,
        );
        for (k, jet) in jets.iter().enumerate() {
            let bits = jet.bits();
            let w = BigComplex::from_rational(want.coeff(k), bits);
            assert!(jet.coeff(0).dist(&w).abs_smaller_than_2pow(bits as i64 - 12));
        }
    }

    #[test]
    fn y1_coefficient_matches_finite_difference() {
        // n = 2, rho = (1/3, 2/3): the t^1 coefficient of y_1 is
        // d/d eps [ (1/3+eps)(2/3+eps)/(1+eps)^2 ] at 0
        let p = HypergeometricParams::new(vec![rat(1, 3), rat(2, 3)], rat(27, 1)).unwrap();
        let jets = y_series_jets(&p, 3, 50);
        let bits = jets[1].bits();
        let h = BigFixed::one(bits).mul_pow2(-70);
        let eval = |e: &BigFixed| -> BigFixed {
            let third = BigFixed::from_rational(&rat(1, 3), bits);
            let two_third = BigFixed::from_rational(&rat(2, 3), bits);
            let one = BigFixed::one(bits);
            third
                .add(e)
                .mul(&two_third.add(e))
                .div(&one.add(e).mul(&one.add(e)))
        };
        let fd = eval(&h).sub(&eval(&h.neg())).div(&h.mul_pow2(1));
        assert!(jets[1]
            .coeff(1)
            .dist(&BigComplex::from_real(fd))
            .abs_smaller_than_2pow(120));
    }

    #[test]
    fn first_column_evaluates_the_series() {
        // column for f_0 (= y_0) must match direct series evaluation of
        // nF(n-1) at C t0
        let p = HypergeometricParams::mirror(2).unwrap();
        let t0 = rat(1, 54); // 1/(2C)
        let m = frobenius_basis_matrix(&p, &t0, 45).unwrap();
        let bits = m.bits();
        let ct0 = BigComplex::from_rational(&(&p.c_scale * &t0), bits);
        let val = hypergeometric_eval(&p.rho, &ct0, 45).unwrap();
        // f_0 is the last column, row 0
        assert!(m[(0, p.n() - 1)].dist(&val).abs_smaller_than_2pow(bits as i64 - 24));
    }
}
