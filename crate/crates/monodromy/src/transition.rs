//! The transition matrix between the Frobenius bases at 0 and infinity,
//! computed from ε-jets of the rescaled connection coefficients
//! `C^(-ε) B_r(ε)`, and the assembled local monodromies.

use crate::error::MonodromyError;
use crate::linalg::CMatrix;
use exactalg::cnum::BigComplex;
use exactalg::constants;
use exactalg::jet::JetSeries;
use exactalg::real::{bits_for_digits, BigFixed};
use exactalg::{Integer, Rational};
use num_traits::{One, Signed, Zero};

/// Exponents and scale of the rescaled hypergeometric operator
/// `theta^n - C t (theta + rho_1) ... (theta + rho_n)`.
#[derive(Clone, Debug)]
pub struct HypergeometricParams {
    pub rho: Vec<Rational>,
    pub c_scale: Rational,
}

impl HypergeometricParams {
    pub fn new(rho: Vec<Rational>, c_scale: Rational) -> Result<Self, MonodromyError> {
        if rho.is_empty() {
            return Err(MonodromyError::ResonantInput("empty exponent vector".into()));
        }
        if !gkz::nonresonance_check(&rho) {
            return Err(MonodromyError::ResonantInput(format!(
                "exponents {:?} are resonant",
                rho.iter().map(|r| r.to_string()).collect::<Vec<_>>()
            )));
        }
        if !c_scale.is_positive() {
            return Err(MonodromyError::ResonantInput("scale C must be positive".into()));
        }
        Ok(HypergeometricParams { rho, c_scale })
    }

    /// The mirror-family parameters `rho_k = k/(n+1)`, `C = (n+1)^(n+1)`.
    pub fn mirror(n: usize) -> Result<Self, MonodromyError> {
        let rho = (1..=n)
            .map(|k| Rational::new(Integer::from(k as i64), Integer::from(n as i64 + 1)))
            .collect();
        let c = Rational::from_integer(Integer::from(n as i64 + 1).pow(n as u32 + 1));
        Self::new(rho, c)
    }

    pub fn n(&self) -> usize {
        self.rho.len()
    }

    pub fn distinct(&self) -> bool {
        let mut sorted = self.rho.clone();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    }
}

/// Jet of `C^(-ε) B_r(ε)` at ε = 0 (r is 1-based), order = n by default.
///
/// Assembled from Γ-ratio jets, the sine-ratio jet and the phase `e^(-πiε)`:
/// `C^(-ε) e^(-πiε) [prod_i Γ(rho_i)Γ(1+ε)/Γ(rho_i+ε)] sin(π rho_r)/sin(π rho_r + πε)`.
pub fn b_jet(
    r: usize,
    params: &HypergeometricParams,
    order: usize,
    precision_digits: u32,
) -> Result<JetSeries, MonodromyError> {
    b_jet_general(r, params, order, precision_digits)
}

/// The general-path implementation behind [`b_jet`].
fn b_jet_general(
    r: usize,
    params: &HypergeometricParams,
    order: usize,
    precision_digits: u32,
) -> Result<JetSeries, MonodromyError> {
    let n = params.n();
    if r == 0 || r > n {
        return Err(MonodromyError::ResonantInput(format!("index {r} out of range")));
    }
    if !params.distinct() {
        return Err(MonodromyError::ResonantInput(
            "transition jets need pairwise distinct exponents".into(),
        ));
    }
    let bits = bits_for_digits(precision_digits + 20);
    let one = Rational::one();

    // log-jet of prod_i Gamma(rho_i) Gamma(1+eps) / Gamma(rho_i + eps):
    // coefficients n*c_m(1) - sum_i c_m(rho_i) of ln Gamma(x+eps)-ln Gamma(x)
    let mut log_coeffs = vec![BigFixed::zero(bits); order];
    let base_one = exactalg::jet::ln_gamma_shift_coeffs(&one, order, bits);
    for (m, c) in base_one.iter().enumerate() {
        log_coeffs[m] = c.mul_i64(n as i64);
    }
    for rho in &params.rho {
        let shift = exactalg::jet::ln_gamma_shift_coeffs(rho, order, bits);
        for (m, c) in shift.iter().enumerate() {
            log_coeffs[m] = log_coeffs[m].sub(c);
        }
    }
    // C^(-eps): subtract eps ln C from the log-jet
    if order >= 2 {
        let ln_c = BigFixed::from_rational(&params.c_scale, bits).ln();
        log_coeffs[1] = log_coeffs[1].sub(&ln_c);
    }
    let gamma_part = JetSeries::from_coeffs(
        log_coeffs.into_iter().map(BigComplex::from_real).collect(),
    )
    .exp();

    let rest = sine_ratio_and_phase(&params.rho[r - 1], order, bits)?;
    gamma_part.mul(&rest).map_err(MonodromyError::Exact)
}

/// `sin(pi rho_r)/sin(pi rho_r + pi eps) * e^(-pi i eps)` as a jet.
fn sine_ratio_and_phase(
    rho_r: &Rational,
    order: usize,
    bits: u32,
) -> Result<JetSeries, MonodromyError> {
    let pi = constants::pi(bits);
    let pi_c = BigComplex::from_real(pi.clone());
    let cos_jet = JetSeries::cos_of_eps(&pi_c, order);
    let sin_jet = JetSeries::sin_of_eps(&pi_c, order);
    let cot = constants::cot_pi(rho_r, bits);
    let denom = cos_jet
        .add(&sin_jet.scale_real(&cot))
        .map_err(MonodromyError::Exact)?;
    let sine_ratio = denom.inv().map_err(MonodromyError::Exact)?;
    if order == 1 {
        return Ok(sine_ratio);
    }
    let minus_pi_i = BigComplex::from_real(pi).mul_i().neg();
    let phase = JetSeries::eps(order, bits).scale(&minus_pi_i).exp();
    sine_ratio.mul(&phase).map_err(MonodromyError::Exact)
}

/// Closed-form jet for the mirror parameters, from the Gamma multiplication
/// formula: `C^(-eps) B_r(eps) = Gamma(1+eps)^(n+1)/Gamma(1+(n+1)eps)
/// * sin(pi rho_r)/sin(pi rho_r + pi eps) * e^(-pi i eps)`.
/// `psi1` (= -gamma) may be overridden to demonstrate that the value does
/// not depend on the Euler-Mascheroni constant.
pub fn b_jet_mirror_closed_form(
    r: usize,
    n: usize,
    order: usize,
    precision_digits: u32,
    psi1_override: Option<&BigFixed>,
) -> Result<JetSeries, MonodromyError> {
    let bits = bits_for_digits(precision_digits + 20);
    let psi1 = match psi1_override {
        Some(v) => v.clone(),
        None => constants::euler_gamma(bits).neg(),
    };
    // ln Gamma(1+x) = psi(1) x + sum_(k>=2) (-1)^k zeta(k) x^k / k;
    // combine (n+1) ln Gamma(1+eps) - ln Gamma(1+(n+1) eps)
    let np1 = n as i64 + 1;
    let mut log_coeffs = vec![BigFixed::zero(bits); order];
    if order >= 2 {
        // the psi(1) terms cancel: (n+1) psi1 - (n+1) psi1
        log_coeffs[1] = psi1.mul_i64(np1).sub(&psi1.mul_i64(np1));
    }
    for m in 2..order {
        let z = constants::zeta(m as u32, bits).div_i64(m as i64);
        let signed = if m % 2 == 0 { z } else { z.neg() };
        // (n+1) * coeff - (n+1)^m * coeff
        let np1_pow_m = BigFixed::from_i64(np1, bits).pow_i64(m as i64);
        let weight = BigFixed::from_i64(np1, bits).sub(&np1_pow_m);
        log_coeffs[m] = signed.mul(&weight);
    }
    let gamma_part = JetSeries::from_coeffs(
        log_coeffs.into_iter().map(BigComplex::from_real).collect(),
    )
    .exp();
    let rho_r = Rational::new((r as i64).into(), np1.into());
    let rest = sine_ratio_and_phase(&rho_r, order, bits)?;
    gamma_part.mul(&rest).map_err(MonodromyError::Exact)
}

/// Local monodromy at 0 in the Frobenius basis `(f_(n-1), ..., f_0)`:
/// upper triangular with `1/r!` on the r-th superdiagonal.
pub fn m0_matrix(n: usize, precision_digits: u32) -> CMatrix {
    let rows = m0_rational(n);
    CMatrix::from_rational_rows(&rows, bits_for_digits(precision_digits + 20))
}

/// Exact rational form of m0.
pub fn m0_rational(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j < i {
                        Rational::zero()
                    } else {
                        let mut f = Integer::one();
                        for k in 1..=(j - i) as i64 {
                            f *= Integer::from(k);
                        }
                        Rational::new(Integer::one(), f)
                    }
                })
                .collect()
        })
        .collect()
}

/// Local monodromy at infinity in the basis `(F_n, ..., F_1)`:
/// `diag(e^(-2 pi i rho_n), ..., e^(-2 pi i rho_1))`.
pub fn m_infinity_diag(params: &HypergeometricParams, precision_digits: u32) -> CMatrix {
    let n = params.n();
    let bits = bits_for_digits(precision_digits + 20);
    CMatrix::from_fn(n, |i, j| {
        if i != j {
            BigComplex::zero(bits)
        } else {
            // row i holds rho_(n-i) (1-based)
            let rho = &params.rho[n - 1 - i];
            BigComplex::root_of_unity(&-rho.clone(), bits)
        }
    })
}

/// The transition matrix between the analytic continuations of the bases at
/// 0 and infinity: row n-j, column n+1-k holds
/// `(1/((2 pi i)^j j!)) d^j/d eps^j [C^(-eps) B_k(eps)]` at eps = 0.
pub fn transition_matrix(
    params: &HypergeometricParams,
    precision_digits: u32,
) -> Result<CMatrix, MonodromyError> {
    let n = params.n();
    let bits = bits_for_digits(precision_digits + 20);
    let jets: Vec<JetSeries> = (1..=n)
        .map(|k| b_jet(k, params, n, precision_digits))
        .collect::<Result<_, _>>()?;
    let two_pi_i = BigComplex::from_real(constants::pi(bits)).mul_i().mul_i64(2);
    let mut m = CMatrix::zero(n, bits);
    for (col, jet) in jets.iter().rev().enumerate() {
        // col (0-based) corresponds to k = n - col; the jet coefficient of
        // eps^j is already the j-th derivative over j!
        for j in 0..n {
            // row index (1-based) = n - j
            let denom = two_pi_i.pow_i64(j as i64);
            m[(n - 1 - j, col)] = jet.coeff(j).div(&denom);
        }
    }
    Ok(m)
}

/// One assembled monodromy suite.
pub struct MonodromySuite {
    pub params: HypergeometricParams,
    pub precision_digits: u32,
    pub m0: CMatrix,
    pub m1c: CMatrix,
    pub m_inf: CMatrix,
    pub p_tilde: CMatrix,
}

/// Assemble (m0, m_{1/C}, m_inf) and the transition matrix.
pub fn monodromy_suite(
    params: &HypergeometricParams,
    precision_digits: u32,
) -> Result<MonodromySuite, MonodromyError> {
    let n = params.n();
    let p = transition_matrix(params, precision_digits)?;
    let m0 = m0_matrix(n, precision_digits);
    let m_inf = p.mul(&m_infinity_diag(params, precision_digits)).mul(&p.inverse());
    let m1c = m_inf.mul(&m0.inverse());
    Ok(MonodromySuite {
        params: params.clone(),
        precision_digits,
        m0,
        m1c,
        m_inf,
        p_tilde: p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::rat;

    #[test]
    fn m0_small_cases() {
        let m = m0_rational(2);
        assert_eq!(m[0], vec![rat(1, 1), rat(1, 1)]);
        assert_eq!(m[1], vec![rat(0, 1), rat(1, 1)]);
        let m = m0_rational(4);
        assert_eq!(m[0], vec![rat(1, 1), rat(1, 1), rat(1, 2), rat(1, 6)]);
    }

    #[test]
    fn m0_is_maximally_unipotent_exactly() {
        for n in 2..=6usize {
            let m = m0_rational(n);
            // (m - I)^n = 0 and (m - I)^(n-1) != 0, in exact arithmetic
            let sub_ident = |a: &Vec<Vec<Rational>>| -> Vec<Vec<Rational>> {
                let mut b = a.clone();
                for i in 0..b.len() {
                    b[i][i] -= Rational::one();
                }
                b
            };
            let mul = |a: &Vec<Vec<Rational>>, b: &Vec<Vec<Rational>>| -> Vec<Vec<Rational>> {
                let n = a.len();
                (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                            .collect()
                    })
                    .collect()
            };
            let nilpotent = sub_ident(&m);
            let mut power = nilpotent.clone();
            for _ in 0..n - 2 {
                power = mul(&power, &nilpotent);
            }
            // power = (m-I)^(n-1)
            assert!(power.iter().flatten().any(|x| !x.is_zero()));
            let zero = mul(&power, &nilpotent);
            assert!(zero.iter().flatten().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn m_infinity_eigenvalue_structure() {
        // rho = (1/3, 2/3): diag(e^{-4 pi i/3}, e^{-2 pi i/3})
        let p = HypergeometricParams::new(vec![rat(1, 3), rat(2, 3)], rat(27, 1)).unwrap();
        let m = m_infinity_diag(&p, 40);
        let bits = m.bits();
        let w = BigComplex::root_of_unity(&rat(-2, 3), bits);
        assert!(m[(0, 0)].dist(&w).abs_smaller_than_2pow(bits as i64 - 16));
        // trace of the n=4 fifth-root case is -1
        let p = HypergeometricParams::mirror(4).unwrap();
        let m = m_infinity_diag(&p, 40);
        let tr = m.trace();
        assert!(tr
            .add(&BigComplex::one(m.bits()))
            .abs()
            .abs_smaller_than_2pow(m.bits() as i64 - 16));
        // det = e^{-2 pi i sum rho}
        let pr = HypergeometricParams::new(vec![rat(1, 3), rat(2, 3)], rat(27, 1)).unwrap();
        let m = m_infinity_diag(&pr, 40);
        let det = m[(0, 0)].mul(&m[(1, 1)]);
        assert!(det
            .sub(&BigComplex::one(m.bits()))
            .abs()
            .abs_smaller_than_2pow(m.bits() as i64 - 16));
    }

    #[test]
    fn b_jet_constant_term_is_one() {
        let p = HypergeometricParams::mirror(3).unwrap();
        for r in 1..=3 {
            let j = b_jet(r, &p, 3, 50).unwrap();
            let bits = j.bits();
            assert!(j
                .coeff(0)
                .dist(&BigComplex::one(bits))
                .abs_smaller_than_2pow(bits as i64 - 12));
        }
    }

    #[test]
    fn b_jet_gamma_independence_for_mirror_parameters() {
        // Two statements: the general-path jet coincides with the
        // multiplication-formula closed form, and the closed form is
        // unchanged when the Euler-Mascheroni constant is perturbed.
        for n in [2usize, 4] {
            let p = HypergeometricParams::mirror(n).unwrap();
            let general = b_jet(1, &p, n, 45).unwrap();
            let closed = b_jet_mirror_closed_form(1, n, n, 45, None).unwrap();
            let bits = general.bits();
            assert!(
                general.dist(&closed).abs_smaller_than_2pow(bits as i64 - 24),
                "general path disagrees with the closed form at n = {n}"
            );
            let perturbed_psi = constants::euler_gamma(bits)
                .neg()
                .add(&BigFixed::one(bits).mul_pow2(-40));
            let perturbed =
                b_jet_mirror_closed_form(1, n, n, 45, Some(&perturbed_psi)).unwrap();
            assert!(
                closed.dist(&perturbed).abs_smaller_than_2pow(bits as i64 - 24),
                "gamma leaked into the n = {n} closed form"
            );
        }
    }

    #[test]
    fn b_jet_derivative_matches_finite_differences() {
        // n = 2, rho = (1/3, 2/3), C = 27: compare the eps^1 coefficient of
        // C^(-eps) B_1(eps) with a central difference of the closed form at
        // eps = +-2^-60
        let p = HypergeometricParams::new(vec![rat(1, 3), rat(2, 3)], rat(27, 1)).unwrap();
        let jet = b_jet(1, &p, 2, 60).unwrap();
        let bits = jet.bits();
        let h = BigFixed::one(bits).mul_pow2(-60);

        let eval = |eps: &BigFixed| -> BigComplex {
            // C^(-eps) e^(-pi i eps) [prod Gamma(rho_i) Gamma(1+eps)/Gamma(rho_i+eps)]
            //   * sin(pi rho_1)/sin(pi rho_1 + pi eps)
            let ln_c = BigFixed::from_rational(&rat(27, 1), bits).ln();
            let c_pow = BigComplex::from_real(ln_c.mul(eps).neg()).exp();
            let pi = constants::pi(bits);
            let phase = BigComplex::from_real(pi.mul(eps)).mul_i().neg().exp();
            let mut gam = BigComplex::one(bits);
            for rho in [rat(1, 3), rat(2, 3)] {
                let top = exactalg::cnum::gamma(&BigComplex::from_rational(&rho, bits));
                let bot = exactalg::cnum::gamma(&BigComplex::from_real(
                    BigFixed::from_rational(&rho, bits).add(eps),
                ));
                gam = gam.mul(&top).mul(&bot.inv());
            }
            let gp1 = exactalg::cnum::gamma(&BigComplex::from_real(
                BigFixed::one(bits).add(eps),
            ));
            gam = gam.mul(&gp1).mul(&gp1);
            let s0 = constants::sin_pi(&rat(1, 3), bits);
            let s1 = pi
                .mul(&BigFixed::from_rational(&rat(1, 3), bits).add(eps))
                .sin();
            c_pow
                .mul(&phase)
                .mul(&gam)
                .mul_real(&s0)
                .mul_real(&BigFixed::one(bits).div(&s1))
        };
        let fp = eval(&h);
        let fm = eval(&h.neg());
        let deriv = fp.sub(&fm).mul_real(&BigFixed::one(bits).div(&h.mul_pow2(1)));
        assert!(
            jet.coeff(1).dist(&deriv).abs_smaller_than_2pow(100),
            "jet {:?} vs fd {:?}",
            jet.coeff(1),
            deriv
        );
    }
}
