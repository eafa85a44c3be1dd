//! Reference monodromy matrices for the mirror families with 2 <= n <= 5.
//!
//! Entries are stored exactly as `c0 + c1 k + c2 k^2` where `k` is the
//! transcendental constant of the respective rank:
//! `k4 = -200 zeta(3)/(2 pi i)^3` and `k5 = 420 zeta(3)/(2 pi i)^3`.

use crate::linalg::CMatrix;
use exactalg::cnum::BigComplex;
use exactalg::constants;
use exactalg::real::bits_for_digits;
use exactalg::{rat, Rational};

/// Symbolic table entry `c0 + c1 k + c2 k^2`.
#[derive(Clone, Debug)]
pub struct Entry {
    pub c0: Rational,
    pub c1: Rational,
    pub c2: Rational,
}

fn e(c0: Rational, c1: Rational, c2: Rational) -> Entry {
    Entry { c0, c1, c2 }
}

fn plain(c0: Rational) -> Entry {
    e(c0, rat(0, 1), rat(0, 1))
}

/// The constant `kappa_n` for n = 4, 5 (zero otherwise), evaluated at the
/// requested precision: `-200 zeta(3)/(2 pi i)^3` resp. `420 zeta(3)/(2 pi i)^3`.
pub fn kappa(n: usize, precision_digits: u32) -> BigComplex {
    let bits = bits_for_digits(precision_digits + 20);
    let scale = match n {
        4 => -200i64,
        5 => 420,
        _ => return BigComplex::zero(bits),
    };
    let two_pi_i = BigComplex::from_real(constants::pi(bits)).mul_i().mul_i64(2);
    let z3 = constants::zeta(3, bits);
    BigComplex::from_real(z3)
        .mul_i64(scale)
        .div(&two_pi_i.pow_i64(3))
}

/// Reference matrices (m0, m_1/C, m_inf) for one n.
pub struct ReferenceSuite {
    pub n: usize,
    pub m0: Vec<Vec<Entry>>,
    pub m1c: Vec<Vec<Entry>>,
    pub m_inf: Vec<Vec<Entry>>,
}

/// Evaluate a symbolic matrix numerically.
pub fn evaluate(entries: &[Vec<Entry>], n: usize, precision_digits: u32) -> CMatrix {
    let bits = bits_for_digits(precision_digits + 20);
    let k = kappa(n, precision_digits);
    let k2 = k.mul(&k);
    CMatrix::from_fn(entries.len(), |i, j| {
        let en = &entries[i][j];
        BigComplex::from_rational(&en.c0, bits)
            .add(&k.mul(&BigComplex::from_rational(&en.c1, bits)))
            .add(&k2.mul(&BigComplex::from_rational(&en.c2, bits)))
    })
}

fn m0_entries(n: usize) -> Vec<Vec<Entry>> {
    crate::transition::m0_rational(n)
        .into_iter()
        .map(|row| row.into_iter().map(plain).collect())
        .collect()
}

/// The reference suite for 2 <= n <= 5.
pub fn reference_suite(n: usize) -> Option<ReferenceSuite> {
    let z = || rat(0, 1);
    let one = || rat(1, 1);
    let table = |m1c: Vec<Vec<Entry>>, m_inf: Vec<Vec<Entry>>| -> ReferenceSuite {
        ReferenceSuite {
            n,
            m0: m0_entries(n),
            m1c,
            m_inf,
        }
    };
    match n {
        2 => Some(table(
            vec![
                vec![plain(one()), plain(z())],
                vec![plain(rat(-3, 1)), plain(one())],
            ],
            vec![
                vec![plain(one()), plain(one())],
                vec![plain(rat(-3, 1)), plain(rat(-2, 1))],
            ],
        )),
        3 => Some(table(
            vec![
                vec![plain(z()), plain(z()), plain(rat(-1, 4))],
                vec![plain(z()), plain(one()), plain(z())],
                vec![plain(rat(-4, 1)), plain(z()), plain(z())],
            ],
            vec![
                vec![plain(z()), plain(z()), plain(rat(-1, 4))],
                vec![plain(z()), plain(one()), plain(one())],
                vec![plain(rat(-4, 1)), plain(rat(-4, 1)), plain(rat(-2, 1))],
            ],
        )),
        4 => Some(table(
            vec![
                vec![
                    e(one(), one(), z()),
                    plain(z()),
                    e(z(), rat(5, 12), z()),
                    e(z(), z(), rat(1, 5)),
                ],
                vec![
                    plain(rat(-25, 12)),
                    plain(one()),
                    plain(rat(-125, 144)),
                    e(z(), rat(-5, 12), z()),
                ],
                vec![plain(z()), plain(z()), plain(one()), plain(z())],
                vec![
                    plain(rat(-5, 1)),
                    plain(z()),
                    plain(rat(-25, 12)),
                    e(one(), rat(-1, 1), z()),
                ],
            ],
            vec![
                vec![
                    e(one(), one(), z()),
                    e(one(), one(), z()),
                    e(rat(1, 2), rat(11, 12), z()),
                    e(rat(1, 6), rat(7, 12), rat(1, 5)),
                ],
                vec![
                    plain(rat(-25, 12)),
                    plain(rat(-13, 12)),
                    plain(rat(-131, 144)),
                    e(rat(-103, 144), rat(-5, 12), z()),
                ],
                vec![plain(z()), plain(z()), plain(one()), plain(one())],
                vec![
                    plain(rat(-5, 1)),
                    plain(rat(-5, 1)),
                    plain(rat(-55, 12)),
                    e(rat(-23, 12), rat(-1, 1), z()),
                ],
            ],
        )),
        5 => Some(table(
            vec![
                vec![
                    plain(rat(75, 64)),
                    plain(z()),
                    plain(rat(55, 512)),
                    e(z(), rat(-11, 384), z()),
                    plain(rat(-121, 24576)),
                ],
                vec![
                    e(z(), rat(-1, 1), z()),
                    plain(one()),
                    e(z(), rat(-5, 8), z()),
                    e(z(), z(), rat(1, 6)),
                    e(z(), rat(11, 384), z()),
                ],
                vec![
                    plain(rat(-15, 4)),
                    plain(z()),
                    plain(rat(-43, 32)),
                    e(z(), rat(5, 8), z()),
                    plain(rat(55, 512)),
                ],
                vec![plain(z()), plain(z()), plain(z()), plain(one()), plain(z())],
                vec![
                    plain(rat(-6, 1)),
                    plain(z()),
                    plain(rat(-15, 4)),
                    e(z(), one(), z()),
                    plain(rat(75, 64)),
                ],
            ],
            vec![
                vec![
                    plain(rat(75, 64)),
                    plain(rat(75, 64)),
                    plain(rat(355, 512)),
                    e(rat(155, 512), rat(-11, 384), z()),
                    e(rat(2399, 24576), rat(-11, 384), z()),
                ],
                vec![
                    e(z(), rat(-1, 1), z()),
                    e(one(), rat(-1, 1), z()),
                    e(one(), rat(-9, 8), z()),
                    // (4k - 3)(k - 4)/24 = 1/2 - (19/24) k + (1/6) k^2
                    e(rat(1, 2), rat(-19, 24), rat(1, 6)),
                    e(rat(1, 6), rat(-125, 384), rat(1, 6)),
                ],
                vec![
                    plain(rat(-15, 4)),
                    plain(rat(-15, 4)),
                    plain(rat(-103, 32)),
                    e(rat(-63, 32), rat(5, 8), z()),
                    e(rat(-369, 512), rat(5, 8), z()),
                ],
                vec![plain(z()), plain(z()), plain(z()), plain(one()), plain(one())],
                vec![
                    plain(rat(-6, 1)),
                    plain(rat(-6, 1)),
                    plain(rat(-27, 4)),
                    e(rat(-19, 4), one(), z()),
                    e(rat(-61, 64), one(), z()),
                ],
            ],
        )),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_is_purely_imaginary() {
        // (2 pi i)^3 = -8 pi^3 i, so kappa_4 = -25 i zeta(3)/pi^3
        let k = kappa(4, 40);
        let bits = k.bits();
        assert!(k.re.abs_smaller_than_2pow(bits as i64 - 16));
        let pi = constants::pi(bits);
        let want = constants::zeta(3, bits)
            .mul_i64(-25)
            .div(&pi.pow_i64(3));
        assert!(k.im.sub(&want).abs_smaller_than_2pow(bits as i64 - 16));
    }

    #[test]
    fn reference_shapes() {
        for n in 2..=5 {
            let t = reference_suite(n).unwrap();
            assert_eq!(t.m0.len(), n);
            assert_eq!(t.m1c.len(), n);
            assert_eq!(t.m_inf.len(), n);
        }
        assert!(reference_suite(6).is_none());
    }
}
