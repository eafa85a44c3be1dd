//! The one-parameter mirror pencils and their iterative fibration identity.

use exactalg::poly::MultiPoly;
use exactalg::ratfun::{poly_subst_ratfun_raw, RationalFunction};
use exactalg::{Integer, Rational};
use std::collections::HashMap;

/// Defining polynomial of the degree-(n+1) mirror pencil:
/// `f_n = x_1 ... x_n (x_1 + ... + x_n + 1) + (-1)^(n+1) t / (n+1)^(n+1)`.
pub fn mirror_pencil(n: u32) -> MultiPoly {
    assert!(n >= 1);
    let mut prod = MultiPoly::one();
    let mut sum = MultiPoly::one();
    for i in 1..=n {
        let xi = MultiPoly::var(&format!("x{i}"));
        prod = &prod * &xi;
        sum = &sum + &xi;
    }
    let sign = if n % 2 == 0 { -1 } else { 1 };
    let scale = Rational::new(
        Integer::from(sign),
        Integer::from(n as i64 + 1).pow(n + 1),
    );
    &(&prod * &sum) + &MultiPoly::var("t").scale(&scale)
}

/// Exact check of the fibration identity
/// `f_n(x_1..x_n, t) = x_n (x_n + 1)^n f_{n-1}(x~, t~)`
/// with `x~_i = x_i/(x_n+1)` and
/// `t~ = -n^n t / ((n+1)^(n+1) x_n (x_n+1)^n)`.
pub fn mirror_fibration_check(n: u32) -> bool {
    assert!(n >= 2);
    let f_n = mirror_pencil(n);
    let f_prev = mirror_pencil(n - 1);
    let xn = RationalFunction::var(&format!("x{n}"));
    let xn_plus_1 = &xn + &RationalFunction::constant(Rational::from_integer(1.into()));

    let mut bindings: HashMap<String, RationalFunction> = HashMap::new();
    for i in 1..n {
        bindings.insert(
            format!("x{i}"),
            &RationalFunction::var(&format!("x{i}")) / &xn_plus_1,
        );
    }
    let scale = Rational::new(
        -Integer::from(n as i64).pow(n),
        Integer::from(n as i64 + 1).pow(n + 1),
    );
    let t_tilde = &RationalFunction::var("t").pow(1).scale_by(&scale)
        / &(&xn * &xn_plus_1.pow(n));
    bindings.insert("t".to_string(), t_tilde);

    // f_n * D - x_n (x_n+1)^n * N = 0, with N/D the unreduced substitution
    let (num, den) = match poly_subst_ratfun_raw(&f_prev, &bindings) {
        Ok(s) => s,
        Err(_) => return false,
    };
    let factor = xn.numerator() * &xn_plus_1.numerator().pow(n);
    let lhs = &f_n * &den;
    let rhs = &factor * &num;
    (&lhs - &rhs).is_zero()
}

trait ScaleBy {
    fn scale_by(&self, r: &Rational) -> Self;
}

impl ScaleBy for RationalFunction {
    fn scale_by(&self, r: &Rational) -> Self {
        self * &RationalFunction::constant(r.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pencil_shape() {
        let f2 = mirror_pencil(2);
        // x1 x2 (x1 + x2 + 1) - t/27
        assert_eq!(f2.degree("x1"), Some(2));
        assert_eq!(f2.degree("t"), Some(1));
        assert_eq!(
            f2.coeff_of("t", 1),
            MultiPoly::constant(Rational::new((-1).into(), 27.into()))
        );
    }

    #[test]
    fn fibration_identity_small_n() {
        for n in 2..=4 {
            assert!(mirror_fibration_check(n), "n = {n}");
        }
    }
}
