//! The Kummer-surface criterion and the double-sextic parameter map.

use crate::error::WeierstrassError;
use exactalg::Rational;
use num_traits::{One, Zero};

/// Both printed variants of the Kummer criterion. The source states
/// `d(ab-b) = (a-c)(b-c)` while the lemma that follows it uses
/// `d = (a-c)(b-c)/(ab-c)`; these genuinely differ, so both are evaluated
/// and reported side by side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerCriterion {
    /// `d(ab - b) = (a-c)(b-c)`.
    pub statement_variant: bool,
    /// `d = (a-c)(b-c)/(ab-c)`; `None` when `ab = c` makes it undefined.
    pub lemma_variant: Option<bool>,
}

pub fn kummer_criterion(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> KummerCriterion {
    let rhs = (a - c) * (b - c);
    let statement_variant = d * (a * b - b) == rhs;
    let denom = a * b - c;
    let lemma_variant = if denom.is_zero() {
        None
    } else {
        Some(d == &(&rhs / &denom))
    };
    KummerCriterion {
        statement_variant,
        lemma_variant,
    }
}

/// The double-sextic coordinates and the twist factor:
/// `x1 = a/b, x2 = (a-c)/(b-c), x3 = 1/b, x4 = d/(b-c), mu = b(b-c)`.
pub fn matsumoto_parameters(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
) -> Result<(Rational, Rational, Rational, Rational, Rational), WeierstrassError> {
    if b.is_zero() || b == c {
        return Err(WeierstrassError::DegenerateParameters(
            "matsumoto parameters need b != 0 and b != c".into(),
        ));
    }
    let bc = b - c;
    Ok((
        a / b,
        (a - c) / &bc,
        Rational::one() / b,
        d / &bc,
        b * &bc,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::{rat, rat_i};

    #[test]
    fn statement_variant_vacuous_case() {
        // d = 0 and a = c: both sides vanish
        let k = kummer_criterion(&rat_i(3), &rat_i(5), &rat_i(3), &rat_i(0));
        assert!(k.statement_variant);
    }

    #[test]
    fn lemma_variant_on_its_locus() {
        // choose d = (a-c)(b-c)/(ab-c)
        let (a, b, c) = (rat_i(2), rat_i(3), rat_i(5));
        let d = (&a - &c) * (&b - &c) / (&a * &b - &c);
        let k = kummer_criterion(&a, &b, &c, &d);
        assert_eq!(k.lemma_variant, Some(true));
    }

    #[test]
    fn generic_parameters_fail_both() {
        let k = kummer_criterion(&rat_i(2), &rat_i(3), &rat_i(5), &rat_i(7));
        assert!(!k.statement_variant);
        assert_eq!(k.lemma_variant, Some(false));
    }

    #[test]
    fn matsumoto_values() {
        let (x1, x2, x3, x4, mu) =
            matsumoto_parameters(&rat_i(2), &rat_i(1), &rat_i(0), &rat_i(0)).unwrap();
        assert_eq!((x1, x2, x3, x4, mu), (rat_i(2), rat_i(2), rat_i(1), rat_i(0), rat_i(1)));
        let (x1, x2, x3, x4, mu) =
            matsumoto_parameters(&rat_i(2), &rat_i(3), &rat_i(1), &rat_i(1)).unwrap();
        assert_eq!(
            (x1, x2, x3, x4, mu),
            (rat(2, 3), rat(1, 2), rat(1, 3), rat(1, 2), rat_i(6))
        );
        assert!(matsumoto_parameters(&rat_i(2), &rat_i(3), &rat_i(3), &rat_i(1)).is_err());
        assert!(matsumoto_parameters(&rat_i(2), &rat_i(0), &rat_i(3), &rat_i(1)).is_err());
    }
}
