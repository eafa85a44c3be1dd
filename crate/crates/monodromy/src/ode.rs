//! Independent ODE oracle: transport the Frobenius fundamental system along
//! loops around 0, 1/C and infinity by adaptive Runge-Kutta integration of
//! the first-order system in `(F, theta F, ..., theta^(n-1) F)`.

use crate::error::MonodromyError;
use crate::frobenius::frobenius_basis_matrix;
use crate::linalg::CMatrix;
use crate::transition::HypergeometricParams;
use exactalg::cnum::BigComplex;
use exactalg::constants;
use exactalg::real::{bits_for_digits, BigFixed};
use exactalg::{rat, Rational};
use num_traits::One;
use std::cmp::Ordering;

/// Loops based at `t0 = 1/(2C)` on the positive real axis.
#[derive(Clone, Debug, PartialEq)]
pub enum Loop {
    AroundZero,
    AroundOneOverC,
    AroundInfinity,
    /// Closed polyline through the given vertices (re, im), starting and
    /// ending at the base point. Must avoid 0 and 1/C.
    Custom(Vec<(Rational, Rational)>),
}

/// One smooth path piece `t(s)` for `s` in [0, 1].
enum Segment {
    /// `t = center + radius e^(i pi (phi0 + s (phi1 - phi0)))`, phases in
    /// units of pi.
    Arc {
        center: BigComplex,
        radius: BigFixed,
        phi0: Rational,
        phi1: Rational,
    },
    /// straight line from `a` to `b`.
    Line { a: BigComplex, b: BigComplex },
}

impl Segment {
    /// `(t(s), dt/ds)`.
    fn at(&self, s: &BigFixed, bits: u32) -> (BigComplex, BigComplex) {
        match self {
            Segment::Arc {
                center,
                radius,
                phi0,
                phi1,
            } => {
                let pi = constants::pi(bits);
                let span = BigFixed::from_rational(&(phi1 - phi0), bits);
                let phase = BigFixed::from_rational(phi0, bits)
                    .add(&s.mul(&span))
                    .mul(&pi);
                let (sin, cos) = phase.sin_cos();
                let e = BigComplex::new(cos, sin);
                let t = center.add(&e.mul_real(radius));
                let dt = e
                    .mul_i()
                    .mul_real(radius)
                    .mul_real(&span.mul(&pi));
                (t, dt)
            }
            Segment::Line { a, b } => {
                let d = b.sub(a);
                (a.add(&d.mul_real(s)), d)
            }
        }
    }
}

fn loop_segments(lp: &Loop, c_scale: &Rational, bits: u32) -> Vec<Segment> {
    let c_inv = Rational::one() / c_scale;
    let t0 = &c_inv / Rational::from_integer(2.into());
    let t0_fixed = BigFixed::from_rational(&t0, bits);
    let zero = BigComplex::zero(bits);
    match lp {
        Loop::AroundZero => vec![Segment::Arc {
            center: zero,
            radius: t0_fixed,
            phi0: rat(0, 1),
            phi1: rat(2, 1),
        }],
        Loop::AroundOneOverC => vec![Segment::Arc {
            center: BigComplex::from_rational(&c_inv, bits),
            radius: t0_fixed,
            phi0: rat(1, 1),
            phi1: rat(3, 1),
        }],
        Loop::AroundInfinity => {
            // quarter turn up, radial out to 3/C along the imaginary axis,
            // full clockwise big circle, back in and down
            let big = BigFixed::from_rational(&(&c_inv * rat(3, 1)), bits);
            let i_small = BigComplex::from_real(t0_fixed.clone()).mul_i();
            let i_big = BigComplex::from_real(big.clone()).mul_i();
            vec![
                Segment::Arc {
                    center: zero.clone(),
                    radius: t0_fixed.clone(),
                    phi0: rat(0, 1),
                    phi1: rat(1, 2),
                },
                Segment::Line {
                    a: i_small.clone(),
                    b: i_big.clone(),
                },
                Segment::Arc {
                    center: zero.clone(),
                    radius: big,
                    phi0: rat(1, 2),
                    phi1: rat(-3, 2),
                },
                Segment::Line {
                    a: i_big,
                    b: i_small,
                },
                Segment::Arc {
                    center: zero,
                    radius: t0_fixed,
                    phi0: rat(1, 2),
                    phi1: rat(0, 1),
                },
            ]
        }
        Loop::Custom(vertices) => {
            let base = BigComplex::from_rational(&t0, bits);
            let pts: Vec<BigComplex> = std::iter::once(base.clone())
                .chain(vertices.iter().map(|(re, im)| {
                    BigComplex::new(
                        BigFixed::from_rational(re, bits),
                        BigFixed::from_rational(im, bits),
                    )
                }))
                .chain(std::iter::once(base))
                .collect();
            pts.windows(2)
                .map(|w| Segment::Line {
                    a: w[0].clone(),
                    b: w[1].clone(),
                })
                .collect()
        }
    }
}

/// Right-hand side: `dPhi/ds = F(t) Phi dt/ds` where the companion-form
/// `F(t)` has `1/t` on the superdiagonal and
/// `(C/(1-Ct)) e_(n-m)(rho)` in the bottom row.
struct Rhs {
    n: usize,
    elem_sym: Vec<BigFixed>, // e_1 .. e_n
    c_fixed: BigFixed,
}

impl Rhs {
    fn new(params: &HypergeometricParams, bits: u32) -> Self {
        let n = params.n();
        // elementary symmetric polynomials of rho
        let mut es = vec![Rational::one()];
        for r in &params.rho {
            let mut next = vec![Rational::from_integer(0.into()); es.len() + 1];
            for (j, e) in es.iter().enumerate() {
                next[j] += e;
                next[j + 1] += e * r;
            }
            es = next;
        }
        let elem_sym = es[1..]
            .iter()
            .map(|e| BigFixed::from_rational(e, bits))
            .collect();
        Rhs {
            n,
            elem_sym,
            c_fixed: BigFixed::from_rational(&params.c_scale, bits),
        }
    }

    fn apply(&self, t: &BigComplex, dt: &BigComplex, phi: &CMatrix) -> CMatrix {
        let n = self.n;
        let bits = phi.bits();
        let t_inv = t.inv();
        // C/(1 - C t)
        let ct = t.mul_real(&self.c_fixed);
        let denom = BigComplex::one(bits).sub(&ct);
        let factor = BigComplex::from_real(self.c_fixed.clone()).div(&denom);
        let mut out = CMatrix::zero(n, bits);
        for j in 0..n {
            for i in 0..n - 1 {
                out[(i, j)] = phi[(i + 1, j)].mul(&t_inv);
            }
            // bottom row: factor * sum_m e_(n-m) phi[m][j]
            let mut acc = BigComplex::zero(bits);
            for m in 0..n {
                acc = acc.add(&phi[(m, j)].mul_real(&self.elem_sym[n - 1 - m]));
            }
            out[(n - 1, j)] = acc.mul(&factor);
        }
        // multiply by dt/ds
        out.scale(dt)
    }
}

/// Dormand-Prince 5(4) adaptive step on a matrix ODE along one segment.
fn integrate_segment(
    rhs: &Rhs,
    seg: &Segment,
    phi0: CMatrix,
    tol: &BigFixed,
    bits: u32,
) -> Result<CMatrix, MonodromyError> {
    // Butcher tableau
    let a: [[Rational; 6]; 6] = [
        [rat(1, 5), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)],
        [rat(3, 40), rat(9, 40), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)],
        [rat(44, 45), rat(-56, 15), rat(32, 9), rat(0, 1), rat(0, 1), rat(0, 1)],
        [
            rat(19372, 6561),
            rat(-25360, 2187),
            rat(64448, 6561),
            rat(-212, 729),
            rat(0, 1),
            rat(0, 1),
        ],
        [
            rat(9017, 3168),
            rat(-355, 33),
            rat(46732, 5247),
            rat(49, 176),
            rat(-5103, 18656),
            rat(0, 1),
        ],
        [
            rat(35, 384),
            rat(0, 1),
            rat(500, 1113),
            rat(125, 192),
            rat(-2187, 6784),
            rat(11, 84),
        ],
    ];
    let b5 = [
        rat(35, 384),
        rat(0, 1),
        rat(500, 1113),
        rat(125, 192),
        rat(-2187, 6784),
        rat(11, 84),
        rat(0, 1),
    ];
    let b4 = [
        rat(5179, 57600),
        rat(0, 1),
        rat(7571, 16695),
        rat(393, 640),
        rat(-92097, 339200),
        rat(187, 2100),
        rat(1, 40),
    ];
    let a_f: Vec<Vec<BigFixed>> = a
        .iter()
        .map(|row| row.iter().map(|r| BigFixed::from_rational(r, bits)).collect())
        .collect();
    let b5_f: Vec<BigFixed> = b5.iter().map(|r| BigFixed::from_rational(r, bits)).collect();
    let b4_f: Vec<BigFixed> = b4.iter().map(|r| BigFixed::from_rational(r, bits)).collect();

    let mut phi = phi0;
    let mut s = BigFixed::zero(bits);
    let mut h = BigFixed::from_rational(&rat(1, 64), bits);
    let one = BigFixed::one(bits);
    let min_h = BigFixed::one(bits).mul_pow2(-48);
    let mut steps = 0usize;
    loop {
        if s.cmp_value(&one) != Ordering::Less {
            break;
        }
        let remaining = one.sub(&s);
        if h.cmp_value(&remaining) == Ordering::Greater {
            h = remaining.clone();
        }
        // stages
        let mut k: Vec<CMatrix> = Vec::with_capacity(7);
        let (t_here, dt_here) = seg.at(&s, bits);
        k.push(rhs.apply(&t_here, &dt_here, &phi));
        let c_nodes = [
            rat(1, 5),
            rat(3, 10),
            rat(4, 5),
            rat(8, 9),
            rat(1, 1),
            rat(1, 1),
        ];
        for stage in 0..6 {
            let mut y = phi.clone();
            for (j, kj) in k.iter().enumerate() {
                let w = a_f[stage][j].mul(&h);
                if !w.is_zero() {
                    y = y.add(&kj.scale(&BigComplex::from_real(w)));
                }
            }
            let s_stage = s.add(&BigFixed::from_rational(&c_nodes[stage], bits).mul(&h));
            let (t_s, dt_s) = seg.at(&s_stage, bits);
            k.push(rhs.apply(&t_s, &dt_s, &y));
        }
        // 5th-order solution and embedded error
        let mut y5 = phi.clone();
        let mut err = CMatrix::zero(phi.n(), bits);
        for (j, kj) in k.iter().enumerate() {
            let w5 = b5_f[j].mul(&h);
            if !w5.is_zero() {
                y5 = y5.add(&kj.scale(&BigComplex::from_real(w5)));
            }
            let diff = b5_f[j].sub(&b4_f[j]).mul(&h);
            if !diff.is_zero() {
                err = err.add(&kj.scale(&BigComplex::from_real(diff)));
            }
        }
        let err_mag = err.max_abs();
        if err_mag.cmp_value(tol) != Ordering::Greater {
            // accept
            s = s.add(&h);
            phi = y5;
            // gentle growth
            h = h.mul(&BigFixed::from_rational(&rat(3, 2), bits));
        } else {
            h = h.mul_pow2(-1);
            if h.cmp_value(&min_h) == Ordering::Less {
                return Err(MonodromyError::StepSizeUnderflow);
            }
        }
        steps += 1;
        if steps > 2_000_000 {
            return Err(MonodromyError::StepSizeUnderflow);
        }
    }
    Ok(phi)
}

/// Transport the Frobenius fundamental system around the loop and return the
/// monodromy matrix in the basis `(f~_(n-1), ..., f~_0)`.
pub fn ode_transport(
    params: &HypergeometricParams,
    lp: &Loop,
    precision_digits: u32,
) -> Result<CMatrix, MonodromyError> {
    let bits = bits_for_digits(precision_digits + 20);
    let t0 = Rational::one() / (&params.c_scale * Rational::from_integer(2.into()));
    let y0 = frobenius_basis_matrix(params, &t0, precision_digits + 10)?;
    let rhs = Rhs::new(params, bits);
    // local tolerance well below the target accuracy
    let tol = BigFixed::one(bits).mul_pow2(-(precision_digits as i64 * 7 / 2));
    let mut phi = y0.clone();
    for seg in loop_segments(lp, &params.c_scale, bits) {
        phi = integrate_segment(&rhs, &seg, phi, &tol, bits)?;
    }
    // continuation of the basis functions: Phi_end = Y0 m^T
    Ok(y0.inverse().mul(&phi).transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transition::{m0_matrix, monodromy_suite};

    #[test]
    fn loop_around_zero_gives_m0() {
        let p = HypergeometricParams::mirror(2).unwrap();
        let m = ode_transport(&p, &Loop::AroundZero, 20).unwrap();
        let want = m0_matrix(2, 20);
        let d = m.max_dist(&want);
        assert!(d.to_f64() < 1e-10, "distance {}", d.to_f64());
    }

    #[test]
    fn product_relation_and_suite_match_n2() {
        let p = HypergeometricParams::mirror(2).unwrap();
        let suite = monodromy_suite(&p, 30).unwrap();
        let m0 = ode_transport(&p, &Loop::AroundZero, 20).unwrap();
        let m1c = ode_transport(&p, &Loop::AroundOneOverC, 20).unwrap();
        let minf = ode_transport(&p, &Loop::AroundInfinity, 20).unwrap();
        // matrices agree with the analytic suite entrywise
        assert!(m0.max_dist(&suite.m0.with_lower_bits(m0.bits())).to_f64() < 1e-9);
        assert!(m1c.max_dist(&suite.m1c.with_lower_bits(m1c.bits())).to_f64() < 1e-9);
        assert!(minf.max_dist(&suite.m_inf.with_lower_bits(minf.bits())).to_f64() < 1e-9);
        // composite relation m_inf = m_1C * m0
        assert!(minf.max_dist(&m1c.mul(&m0)).to_f64() < 1e-9);
    }
}

impl CMatrix {
    /// Round all entries down to a given resolution (test helper for
    /// comparing matrices computed at different precisions).
    pub fn with_lower_bits(&self, bits: u32) -> CMatrix {
        CMatrix::from_fn(self.n(), |i, j| self[(i, j)].with_bits(bits))
    }
}
