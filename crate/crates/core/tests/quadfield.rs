use malle_core::quadfield::{
    class_bound_report, count_quadratic_q, fundamental_discs, is_fundamental, kronecker, l_value,
    prime_elements, residuum_check, QuadError, QuadInt, QuadraticField, Splitting,
};
use malle_core::ErrorInterval;
use proptest::prelude::*;

fn squarefree(n: i64) -> bool {
    let n = n.unsigned_abs();
    (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p * p))
}

/// The textbook definition, one integer at a time.
fn fundamental_by_definition(d: i64) -> bool {
    if d == 1 || d == 0 {
        return false;
    }
    if d.rem_euclid(4) == 1 {
        return squarefree(d);
    }
    d % 4 == 0 && matches!((d / 4).rem_euclid(4), 2 | 3) && squarefree(d / 4)
}

/// Brute-force Kronecker symbol at a prime.
fn kronecker_at_prime(d: i64, p: u64) -> i8 {
    if p == 2 {
        return match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let r = d.rem_euclid(p as i64) as u64;
    if r == 0 {
        0
    } else if (1..p).any(|x| x * x % p == r) {
        1
    } else {
        -1
    }
}

/// Reduced primitive positive definite forms of discriminant `d`, counted
/// by scanning every `(a, b, c)`.
fn class_number_brute(d: i64) -> u64 {
    let n = d.unsigned_abs() as i64;
    let mut h = 0;
    for a in 1..=n {
        if 3 * a * a > n {
            break;
        }
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (a == c && b < 0) {
                continue;
            }
            let g = num_integer::gcd(num_integer::gcd(a, b.abs()), c);
            if g == 1 {
                h += 1;
            }
        }
    }
    h
}

#[test]
fn kronecker_examples() {
    assert_eq!(kronecker(-4, 3), -1);
    assert_eq!(kronecker(5, 4), 1);
    assert_eq!(kronecker(-3, 3), 0);
    assert_eq!(kronecker(12, 2), 0);
}

#[test]
fn kronecker_matches_quadratic_residues() {
    let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    for d in fundamental_discs(300) {
        for &p in &primes {
            assert_eq!(kronecker(d, p), kronecker_at_prime(d, p), "({d}/{p})");
        }
    }
}

#[test]
fn discriminant_listing() {
    let mut ten = fundamental_discs(10);
    ten.sort();
    assert_eq!(ten, vec![-8, -7, -4, -3, 5, 8]);
    assert_eq!(fundamental_discs(3), vec![-3]);
    assert!(fundamental_discs(1).is_empty());
    assert_eq!(count_quadratic_q(10), 6);
    assert_eq!(count_quadratic_q(1), 0);
    let listed = fundamental_discs(5000);
    let by_def: Vec<i64> = (1..=5000i64)
        .flat_map(|k| [-k, k])
        .filter(|&d| fundamental_by_definition(d))
        .collect();
    assert_eq!(listed, by_def);
    for &d in &listed {
        assert!(is_fundamental(d));
    }
}

#[test]
fn counting_sieve_matches_listing() {
    for x in [2u64, 3, 100, 65_535, 65_536, 65_537, 200_000] {
        assert_eq!(
            count_quadratic_q(x),
            fundamental_discs(x).len() as u64,
            "x = {x}"
        );
    }
    let c = count_quadratic_q(1_000_000) as f64;
    assert!((c / 1e6 - 6.0 / std::f64::consts::PI.powi(2)).abs() < 0.006);
}

#[test]
fn class_numbers_of_imaginary_fields() {
    assert_eq!(QuadraticField::new(-4).unwrap().class_number(), 1);
    assert_eq!(QuadraticField::new(-23).unwrap().class_number(), 3);
    for d in fundamental_discs(2000).into_iter().filter(|&d| d < 0) {
        assert_eq!(
            QuadraticField::new(d).unwrap().class_number(),
            class_number_brute(d),
            "d = {d}"
        );
    }
}

#[test]
fn units_of_real_fields() {
    let k = QuadraticField::new(8).unwrap();
    let u = k.unit().unwrap();
    assert_eq!(
        (u.t.to_string(), u.u.to_string(), u.norm),
        ("2".into(), "1".into(), -1)
    );
    for d in fundamental_discs(3000).into_iter().filter(|&d| d > 0) {
        let k = QuadraticField::new(d).unwrap();
        let u = k.unit().unwrap();
        let n = &u.t * &u.t - num_bigint::BigInt::from(d) * &u.u * &u.u;
        assert_eq!(n, num_bigint::BigInt::from(4 * u.norm as i64), "d = {d}");
        assert!(k.regulator().lo() > 0.0);
    }
}

#[test]
fn known_l_values_and_residues() {
    let close = |x: ErrorInterval, v: f64, tol: f64| (x.mid() - v).abs() < tol;
    assert!(l_value(-4, 1, 1e-9)
        .unwrap()
        .value
        .contains(std::f64::consts::FRAC_PI_4));
    assert!(close(
        l_value(-4, 2, 1e-9).unwrap().value,
        0.915_965_594_177_219,
        1e-9
    ));
    let pi_3r3 = std::f64::consts::PI / (3.0 * 3f64.sqrt());
    assert!(l_value(-3, 1, 1e-9).unwrap().value.contains(pi_3r3));
    assert_eq!(
        l_value(-4, 3, 1e-3).unwrap_err(),
        QuadError::UnsupportedPoint(3)
    );
    assert!(matches!(
        l_value(-4, 2, 1e-12),
        Err(QuadError::TolUnachievable { .. })
    ));

    let res = |d: i64| QuadraticField::new(d).unwrap().residue_zeta().unwrap();
    assert!(res(-4).contains(std::f64::consts::FRAC_PI_4));
    assert!(res(-3).contains(pi_3r3));
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    assert!(close(res(5), 2.0 * golden.ln() / 5f64.sqrt(), 1e-12));
}

#[test]
fn zeta_two_enclosures() {
    let z2 = std::f64::consts::PI.powi(2) / 6.0;
    for d in fundamental_discs(400) {
        let k = QuadraticField::new(d).unwrap();
        let coarse = k.zeta_at_2(1e-5).unwrap();
        let fine = k.zeta_at_2(1e-6).unwrap();
        assert!(coarse.lo() > 1.0 && coarse.hi() <= z2 * z2, "d = {d}");
        assert!(coarse.contains_interval(&fine) || coarse.overlaps(&fine));
        assert!(coarse.contains(fine.mid()));
    }
    let r = QuadraticField::new(-4).unwrap().r_constant(1e-9).unwrap();
    assert!((r.mid() - 0.260_634_696_5).abs() < 1e-9);
}

#[test]
fn residuum_examples() {
    let k = QuadraticField::new(-4).unwrap();
    let rep = residuum_check(&k, 1.0).unwrap();
    assert!(rep.ok && rep.rhs.contains(32.0));
    let k = QuadraticField::new(-3).unwrap();
    let rep = residuum_check(&k, 0.25).unwrap();
    assert!(rep.ok && (rep.rhs.mid() - 8.0 * 3f64.powf(0.25) * 4.0).abs() < 1e-9);
}

#[test]
fn class_bound_ratio_stays_bounded() {
    assert!((class_bound_report(-4).unwrap().mid() - 1.0 / (2.0 * 4f64.ln())).abs() < 1e-12);
    assert!(
        (class_bound_report(-23).unwrap().mid() - 3.0 / (23f64.sqrt() * 23f64.ln())).abs() < 1e-12
    );
    let mut running = 0.0f64;
    let mut maxima = Vec::new();
    for d in fundamental_discs(10_000) {
        let r = class_bound_report(d).unwrap().hi();
        running = running.max(r);
        if d.unsigned_abs() % 1000 == 0 {
            maxima.push(running);
        }
    }
    assert!(running < 1.0, "max ratio {running}");
    // the running maximum is attained early
    assert_eq!(maxima.first(), maxima.last());
}

#[test]
fn prime_elements_cover_prime_ideals() {
    for d in [-4i64, -3, -7, -8, -11, -19, 5, 8, 12, 13, 21] {
        let k = QuadraticField::new(d).unwrap();
        let o = k.order();
        let ps = prime_elements(&k, 2000).unwrap();
        // expected number of prime ideals with norm <= 2000 from splitting
        let mut want = 0;
        for p in malle_core::arith::primes_up_to(2000) {
            want += match kronecker(d, p) {
                1 => 2,
                0 => 1,
                _ => u64::from(p * p <= 2000),
            };
        }
        assert_eq!(ps.len() as u64, want, "d = {d}");
        for (i, p) in ps.iter().enumerate() {
            assert_eq!(o.norm(p.element).unwrap().unsigned_abs() as u64, p.norm);
            if p.splitting == Splitting::Inert {
                assert_eq!(p.element, QuadInt::rational(p.key.p as i128));
            }
            for q in &ps[i + 1..] {
                if q.norm == p.norm {
                    // associates would divide each other
                    assert!(
                        o.div_exact(p.element, q.element).unwrap().is_none(),
                        "d = {d}"
                    );
                }
            }
        }
    }
}

#[test]
fn prime_elements_require_class_number_one() {
    let k = QuadraticField::new(-23).unwrap();
    assert!(matches!(
        prime_elements(&k, 10),
        Err(QuadError::UnsupportedField { d: -23, h: 3 })
    ));
}

#[test]
fn construction_rejects_bad_discriminants() {
    for d in [1, 0, 2, 3, 12 * 4, -12, 9, -16] {
        assert!(
            matches!(QuadraticField::new(d), Err(QuadError::NotFundamental(_))),
            "d = {d}"
        );
    }
    let k = QuadraticField::new(-3).unwrap();
    assert_eq!((k.w(), k.signature(), k.i()), (6, (0, 1), 1));
    let k = QuadraticField::new(13).unwrap();
    assert_eq!((k.w(), k.signature(), k.i(), k.m()), (2, (2, 0), 0, 13));
}

fn arb_disc() -> impl Strategy<Value = i64> {
    (-3000i64..3000).prop_filter("fundamental", |&d| is_fundamental(d))
}

proptest! {
    #[test]
    fn kronecker_is_multiplicative(d in arb_disc(), m in 1u64..500, n in 1u64..500) {
        prop_assert_eq!(kronecker(d, m * n), kronecker(d, m) * kronecker(d, n));
    }

    #[test]
    fn kronecker_is_periodic(d in arb_disc(), n in 1u64..2000) {
        prop_assert_eq!(kronecker(d, n), kronecker(d, n + d.unsigned_abs()));
    }

    #[test]
    fn fundamental_predicates_agree(d in -100_000i64..100_000) {
        prop_assert_eq!(is_fundamental(d), fundamental_by_definition(d));
    }

    #[test]
    fn class_number_formula_matches_l_value(d in arb_disc()) {
        let k = QuadraticField::new(d).unwrap();
        prop_assert!(k.residue_zeta().is_ok());
        prop_assert_eq!(k.analytic_class_number(), Some(k.class_number()));
    }
}
