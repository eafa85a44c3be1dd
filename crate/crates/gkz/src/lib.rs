//! Toric data for the hypergeometric systems attached to the one-parameter
//! mirror families: the two printed A-matrix constructions, their rank-one
//! relation lattices, the non-resonance test, the secondary fan with its
//! zonotope and unimodular triangulations, and exact Gamma-series.

use exactalg::intmat::{kernel_rank_one, same_row_span};
use exactalg::series::PowerSeries;
use exactalg::{rat, IntMatrix, Integer, Rational};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GkzError {
    #[error("matrix does not have corank one")]
    CorankNotOne,
    #[error("shifted series requires pairwise distinct exponents")]
    ResonantShift,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

/// Which of the two printed A-matrix constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AKind {
    /// (n+1) x (n+2), relations Z(-(n+1), 1, ..., 1).
    Primed,
    /// (2n-1) x 2n, relations Z(1,...,1, -1,...,-1).
    Unprimed,
}

/// A-matrix in the printed right-hand form.
pub fn build_a(n: usize, which: AKind) -> IntMatrix {
    assert!(n >= 2);
    match which {
        AKind::Primed => {
            let mut m = IntMatrix::zero(n + 1, n + 2);
            for j in 0..n + 2 {
                m[(0, j)] = Integer::one();
            }
            for i in 1..n + 1 {
                m[(i, i)] = Integer::one();
                m[(i, n + 1)] = Integer::from(-1);
            }
            m
        }
        AKind::Unprimed => {
            let mut m = IntMatrix::zero(2 * n - 1, 2 * n);
            // top block: rows 0..n-1 pair column i with column n+i
            for i in 0..n - 1 {
                m[(i, i)] = Integer::one();
                m[(i, n + i)] = Integer::one();
            }
            // middle row: columns n-1 and 2n-1
            m[(n - 1, n - 1)] = Integer::one();
            m[(n - 1, 2 * n - 1)] = Integer::one();
            // bottom block: rows n..2n-2 pair column n-1 with column n+i
            for i in 0..n - 1 {
                m[(n + i, n - 1)] = Integer::one();
                m[(n + i, n + i)] = Integer::one();
            }
            m
        }
    }
}

/// Left-hand (pre-row-reduction) forms of the printed constructions, used to
/// confirm the stated row equivalence exactly.
pub fn build_a_left(n: usize, which: AKind) -> IntMatrix {
    assert!(n >= 2);
    match which {
        AKind::Primed => {
            // identity columns followed by minus the relation generator
            let mut m = IntMatrix::zero(n + 1, n + 2);
            for i in 0..n + 1 {
                m[(i, i)] = Integer::one();
            }
            m[(0, n + 1)] = Integer::from(n as i64 + 1);
            for i in 1..n + 1 {
                m[(i, n + 1)] = Integer::from(-1);
            }
            m
        }
        AKind::Unprimed => {
            let mut m = IntMatrix::zero(2 * n - 1, 2 * n);
            // rows 0..n-1: consecutive column pairs (2i, 2i+1)
            for i in 0..n {
                m[(i, 2 * i)] = Integer::one();
                m[(i, 2 * i + 1)] = Integer::one();
            }
            // rows n..2n-2: column 2i+1 and last column
            for i in 0..n - 1 {
                m[(n + i, 2 * i + 1)] = Integer::one();
                m[(n + i, 2 * n - 1)] = Integer::one();
            }
            m
        }
    }
}

/// The stated row equivalence of the two printed forms, checked exactly.
/// The unprimed left-hand form labels columns in a different (paired) order,
/// so equality of row lattices is asserted after the column permutation that
/// matches the labels.
pub fn row_equivalence_holds(n: usize, which: AKind) -> bool {
    let right = build_a(n, which);
    let left = build_a_left(n, which);
    match which {
        AKind::Primed => same_row_span(&left, &right),
        AKind::Unprimed => {
            // Left columns come in pairs per integrand term: (2i, 2i+1) for
            // the z_i-terms and the final pair for the t-term, whose roles
            // are swapped relative to the right-hand labeling.
            let mut p = IntMatrix::zero(2 * n, 2 * n);
            for i in 0..n - 1 {
                p[(2 * i, i)] = Integer::one();
                p[(2 * i + 1, n + i)] = Integer::one();
            }
            p[(2 * n - 2, 2 * n - 1)] = Integer::one();
            p[(2 * n - 1, n - 1)] = Integer::one();
            same_row_span(&left.mul(&p), &right)
        }
    }
}

/// Primitive generator of the rank-one relation lattice of `a`.
pub fn relation_lattice(a: &IntMatrix) -> Result<Vec<Integer>, GkzError> {
    kernel_rank_one(a).ok_or(GkzError::CorankNotOne)
}

/// Full toric data for the mirror-family system at the given exponents.
#[derive(Clone, Debug)]
pub struct GkzSystem {
    pub n: usize,
    pub a: IntMatrix,
    pub b: Vec<Integer>,
    pub gamma0: Vec<Rational>,
    pub rho: Vec<Rational>,
}

impl GkzSystem {
    /// The unprimed system with exponents `rho` (the mirror family uses
    /// `rho_k = k/(n+1)`).
    pub fn new(rho: Vec<Rational>) -> Result<Self, GkzError> {
        let n = rho.len();
        if n < 2 {
            return Err(GkzError::InvalidParameters("need n >= 2".into()));
        }
        let a = build_a(n, AKind::Unprimed);
        let b = relation_lattice(&a)?;
        // gamma0 = (0, ..., 0, -rho_1, ..., -rho_n)
        let mut gamma0 = vec![Rational::zero(); 2 * n];
        for (i, r) in rho.iter().enumerate() {
            gamma0[n + i] = -r.clone();
        }
        Ok(GkzSystem {
            n,
            a,
            b,
            gamma0,
            rho,
        })
    }

    pub fn mirror(n: usize) -> Result<Self, GkzError> {
        let rho = (1..=n)
            .map(|k| Rational::new(Integer::from(k as i64), Integer::from(n as i64 + 1)))
            .collect();
        Self::new(rho)
    }

    /// `A . B^t = 0`, exactly.
    pub fn relation_holds(&self) -> bool {
        self.a.mul_vec(&self.b).iter().all(|x| x.is_zero())
    }

    /// Columns lie on the affine hyperplane `h = 1` where `h` is the sum of
    /// the first `n` coordinates.
    pub fn columns_on_hyperplane(&self) -> bool {
        (0..self.a.cols()).all(|j| {
            let s: Integer = (0..self.n).map(|i| self.a[(i, j)].clone()).sum();
            s.is_one()
        })
    }
}

/// Non-resonance of the unprimed data: no exponent may be an integer, and
/// the mod-1 class of the parameter sum (which is -rho_n) must not be
/// integral either.
pub fn nonresonance_check(rho: &[Rational]) -> bool {
    if rho.is_empty() {
        return false;
    }
    if rho.iter().any(|r| r.is_integer()) {
        return false;
    }
    // alpha_i = -rho_i (i < n), beta_j = rho_j - 1: the sum is rho_n - n
    let n = rho.len();
    let mut s = Rational::zero();
    for r in rho.iter().take(n - 1) {
        s -= r;
    }
    for r in rho.iter() {
        s += r - Rational::one();
    }
    !s.is_integer()
}

/// One triangulation member: the index set with one column suppressed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    /// 1-based indices retained (2n-1 of them).
    pub indices: Vec<usize>,
    /// 1-based suppressed index.
    pub suppressed: usize,
    /// |det| of the retained columns; unimodular means 1.
    pub det_abs: Integer,
    /// The gamma-shift mu^I.
    pub mu: Rational,
    /// gamma^I = gamma0 - mu * B.
    pub gamma: Vec<Rational>,
}

/// Secondary-fan data of the unprimed system.
#[derive(Clone, Debug)]
pub struct SecondaryFan {
    pub n: usize,
    /// The open interval (-n/2, n/2).
    pub zonotope: (Rational, Rational),
    pub plus: Vec<Triangulation>,
    pub minus: Vec<Triangulation>,
}

impl SecondaryFan {
    /// Convergence direction for a member: the standard basis vector at the
    /// suppressed index, with sign +1 in the plus cone and -1 in the minus
    /// cone under the projection to the relation line.
    pub fn convergence_direction(t: &Triangulation, n: usize) -> (usize, i32) {
        let sign = if t.suppressed <= n { 1 } else { -1 };
        (t.suppressed, sign)
    }
}

/// Build the secondary fan for the system with the given exponents.
pub fn secondary_fan(system: &GkzSystem) -> SecondaryFan {
    let n = system.n;
    let a = &system.a;
    let member = |suppressed: usize| -> Triangulation {
        let indices: Vec<usize> = (1..=2 * n).filter(|&i| i != suppressed).collect();
        let mut sq = IntMatrix::zero(2 * n - 1, 2 * n - 1);
        for (jj, &col) in indices.iter().enumerate() {
            for i in 0..2 * n - 1 {
                sq[(i, jj)] = a[(i, col - 1)].clone();
            }
        }
        let det_abs = sq.det().abs();
        let mu = if suppressed <= n {
            Rational::zero()
        } else {
            system.rho[suppressed - n - 1].clone()
        };
        let gamma: Vec<Rational> = system
            .gamma0
            .iter()
            .zip(&system.b)
            .map(|(g, b)| g - &mu * Rational::from_integer(b.clone()))
            .collect();
        Triangulation {
            indices,
            suppressed,
            det_abs,
            mu,
            gamma,
        }
    };
    SecondaryFan {
        n,
        zonotope: (
            rat(-(n as i64), 2),
            rat(n as i64, 2),
        ),
        plus: (1..=n).map(member).collect(),
        minus: (n + 1..=2 * n).map(member).collect(),
    }
}

/// Which Gamma-series to produce.
#[derive(Clone, Copy, Debug)]
pub enum GammaChoice {
    /// The holomorphic solution at t = 0.
    Gamma0,
    /// The shifted series for the convergence direction `I_{n+r}`, a series
    /// in 1/t with leading exponent -rho_r (1-based r).
    Shifted(usize),
}

/// A Gamma-series: exact coefficients plus a symbolic description of the
/// transcendental prefactor, which is carried unevaluated.
#[derive(Clone, Debug)]
pub struct GammaSeries {
    pub series: PowerSeries,
    /// Leading exponent of the series variable (0 for gamma0; -rho_r for the
    /// shifted series, which runs in 1/t).
    pub leading_exponent: Rational,
    /// Human-readable prefactor, e.g. "prod_i 1/(Gamma(1-rho_i) u_{n+i}^rho_i)".
    pub prefactor: String,
    /// Phase factors follow each displayed formula literally; conventions
    /// between the twisted series (e^{2 pi i eps}) and the transition
    /// functions (e^{-pi i eps}) are not reconciled globally.
    pub phase: String,
}

/// Exact Gamma-series coefficients for the system.
pub fn gamma_series(
    rho: &[Rational],
    choice: GammaChoice,
    order: usize,
) -> Result<GammaSeries, GkzError> {
    let n = rho.len();
    match choice {
        GammaChoice::Gamma0 => {
            let lower = vec![Rational::one(); n - 1];
            let series = PowerSeries::hypergeometric(rho, &lower, order);
            Ok(GammaSeries {
                series,
                leading_exponent: Rational::zero(),
                prefactor: format!(
                    "prod_{{i=1..{n}}} 1/(Gamma(1-rho_i) u_{{n+i}}^rho_i)"
                ),
                phase: "none".into(),
            })
        }
        GammaChoice::Shifted(r) => {
            if r == 0 || r > n {
                return Err(GkzError::InvalidParameters(format!(
                    "shift index {r} out of range"
                )));
            }
            let rr = &rho[r - 1];
            for (i, other) in rho.iter().enumerate() {
                if i != r - 1 && other == rr {
                    return Err(GkzError::ResonantShift);
                }
            }
            let upper = vec![rr.clone(); n];
            let lower: Vec<Rational> = rho
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != r - 1)
                .map(|(_, ri)| Rational::one() + rr - ri)
                .collect();
            let series = PowerSeries::hypergeometric(&upper, &lower, order);
            Ok(GammaSeries {
                series,
                leading_exponent: -rr.clone(),
                prefactor: format!(
                    "e^{{pi i n rho_{r}}}/Gamma(1-rho_{r})^{n} * prod_{{i != {r}}} 1/Gamma(1+rho_{r}-rho_i) * prod_i u_{{n+i}}^{{-rho_i}}"
                ),
                phase: "e^{pi i n rho_r} (displayed-formula convention)".into(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::rat_i;

    #[test]
    fn primed_matrix_shape_and_kernel() {
        let a = build_a(2, AKind::Primed);
        assert_eq!((a.rows(), a.cols()), (3, 4));
        for j in 0..4 {
            assert_eq!(a[(0, j)], Integer::one());
        }
        let k = relation_lattice(&a).unwrap();
        assert_eq!(k, vec![(-3).into(), 1.into(), 1.into(), 1.into()]);
        let a3 = build_a(3, AKind::Primed);
        assert_eq!(
            relation_lattice(&a3).unwrap(),
            vec![(-4).into(), 1.into(), 1.into(), 1.into(), 1.into()]
        );
    }

    #[test]
    fn unprimed_matrix_kernel_and_hyperplane() {
        for n in 2..=8 {
            let sys = GkzSystem::mirror(n).unwrap();
            assert!(sys.relation_holds(), "n = {n}");
            assert!(sys.columns_on_hyperplane(), "n = {n}");
            let mut want: Vec<Integer> = vec![Integer::one(); n];
            want.extend(vec![Integer::from(-1); n]);
            assert_eq!(sys.b, want);
        }
    }

    #[test]
    fn corank_not_one_detected() {
        let id = IntMatrix::identity(3);
        assert!(matches!(relation_lattice(&id), Err(GkzError::CorankNotOne)));
    }

    #[test]
    fn printed_forms_are_row_equivalent() {
        for n in 2..=6 {
            assert!(row_equivalence_holds(n, AKind::Primed), "primed n = {n}");
            assert!(row_equivalence_holds(n, AKind::Unprimed), "unprimed n = {n}");
        }
    }

    #[test]
    fn nonresonance_of_mirror_exponents() {
        for n in 2..=10 {
            let rho: Vec<Rational> = (1..=n)
                .map(|k| Rational::new(Integer::from(k), Integer::from(n + 1)))
                .collect();
            assert!(nonresonance_check(&rho), "n = {n}");
        }
        assert!(nonresonance_check(&[rat(1, 2), rat(1, 2), rat(1, 2)]));
        assert!(!nonresonance_check(&[rat(1, 3), rat_i(1)]));
        assert!(!nonresonance_check(&[rat(1, 3), rat(2, 3), rat_i(2)]));
    }

    #[test]
    fn secondary_fan_structure() {
        for n in 2..=6 {
            let sys = GkzSystem::mirror(n).unwrap();
            let fan = secondary_fan(&sys);
            assert_eq!(fan.zonotope, (rat(-(n as i64), 2), rat(n as i64, 2)));
            assert_eq!(fan.plus.len(), n);
            assert_eq!(fan.minus.len(), n);
            let mut seen = std::collections::HashSet::new();
            for t in fan.plus.iter().chain(&fan.minus) {
                assert_eq!(t.indices.len(), 2 * n - 1);
                assert_eq!(t.det_abs, Integer::one(), "unimodular, n = {n}");
                seen.insert(t.suppressed);
            }
            // the union of suppressed indices covers everything
            assert_eq!(seen.len(), 2 * n);
            // mu-shifts: 0 in the plus cone, rho_k in the minus cone
            for t in &fan.plus {
                assert!(t.mu.is_zero());
            }
            for (k, t) in fan.minus.iter().enumerate() {
                assert_eq!(t.mu, sys.rho[k]);
                // gamma^I has zero at the suppressed coordinate
                assert!(t.gamma[t.suppressed - 1].is_zero());
            }
        }
    }

    #[test]
    fn gamma0_series_coefficients() {
        let rho = [rat(1, 2), rat(1, 2), rat(1, 2)];
        let g = gamma_series(&rho, GammaChoice::Gamma0, 8).unwrap();
        assert_eq!(g.series.coeff(0), &rat_i(1));
        assert_eq!(g.series.coeff(1), &rat(1, 8));
        assert_eq!(g.series.coeff(2), &rat(27, 512));
        // recursion c_{k+1}/c_k = prod(rho_i + k)/(k+1)^n
        for k in 0..7usize {
            let kq = rat_i(k as i64);
            let mut ratio = rat_i(1);
            for r in &rho {
                ratio *= r + &kq;
            }
            let kp1 = &kq + rat_i(1);
            ratio /= &kp1 * &kp1 * &kp1;
            assert_eq!(g.series.coeff(k + 1), &(g.series.coeff(k) * &ratio));
        }
    }

    #[test]
    fn shifted_series_leading_exponent() {
        let rho = [rat(1, 4), rat(1, 2), rat(3, 4)];
        let g = gamma_series(&rho, GammaChoice::Shifted(1), 6).unwrap();
        assert_eq!(g.leading_exponent, rat(-1, 4));
        assert_eq!(g.series.coeff(0), &rat_i(1));
        // duplicate exponents are rejected
        let bad = [rat(1, 2), rat(1, 2)];
        assert!(matches!(
            gamma_series(&bad, GammaChoice::Shifted(1), 4),
            Err(GkzError::ResonantShift)
        ));
    }
}
