use monodromy::table1::{evaluate, reference_suite};
use monodromy::{monodromy_suite, HypergeometricParams};

fn main() {
    for n in [4usize, 5] {
        let p = HypergeometricParams::mirror(n).unwrap();
        let suite = monodromy_suite(&p, 60).unwrap();
        let r = reference_suite(n).unwrap();
        let m1c_ref = evaluate(&r.m1c, n, 60);
        let d = suite.m1c.max_dist(&m1c_ref);
        println!("n={n}: msb of |m1c - ref| = {:?} (bits {})", d.msb(), d.bits());
        let e00 = suite.m1c[(0,0)].clone();
        println!("  m1c[0][0] = {} + {} i", e00.re.to_decimal_string(45), e00.im.to_decimal_string(45));
    }
}
