mod common;

use common::closure_oracle;
use g2l_core::cubicforms::{act_left, act_right, closure_test, pairing, quartic_q, BinaryCubic, GL2Mat};
use g2l_core::exactalg::{int, pochhammer, rat, series_pow, Poly, Rational, Symbol, TruncSeries};
use g2l_core::gammaledger::{gamma_f64, GammaExpr};
use g2l_core::exactalg::Affine;
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn form() -> impl Strategy<Value = BinaryCubic> {
    (small_rat(), small_rat(), small_rat(), small_rat()).prop_map(|(a, b, c, d)| BinaryCubic::new(a, b, c, d))
}

fn matrix() -> impl Strategy<Value = GL2Mat> {
    (small_rat(), small_rat(), small_rat(), small_rat())
        .prop_filter_map("singular", |(p, q, r, s)| GL2Mat::new(p, q, r, s).ok())
}

fn int_matrix() -> impl Strategy<Value = GL2Mat> {
    (-9i64..=9, -9i64..=9, -9i64..=9, -9i64..=9).prop_filter_map("singular", |(p, q, r, s)| GL2Mat::from_ints(p, q, r, s).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pochhammer_splits(m in 0u32..6, n in 0u32..6, a in -5i64..5) {
        let x = &Poly::var(Symbol::S) + &Poly::constant(int(a));
        let shifted = &x + &Poly::constant(int(m as i64));
        prop_assert_eq!(pochhammer(&x, m + n), &pochhammer(&x, m) * &pochhammer(&shifted, n));
    }

    #[test]
    fn series_at_negative_integer_is_polynomial(m in 0u32..5, c1 in -3i64..3, c2 in -3i64..3) {
        let (u, v) = (Poly::var(Symbol::U), Poly::var(Symbol::V));
        let base = &u.scale(&int(c1)) + &(&u * &v).scale(&int(c2));
        let base = &base + &v;
        let cutoff = 6;
        let series = series_pow(&base, cutoff).unwrap().instantiate(Symbol::W, &int(-(m as i64)));
        let direct = TruncSeries::from_poly(&(&Poly::one() - &base).pow(m), cutoff);
        for j in 0..=cutoff {
            for k in 0..=cutoff - j {
                prop_assert_eq!(series.coeff(j, k), direct.coeff(j, k));
            }
        }
    }

    #[test]
    fn right_action_is_left_action_of_adjugate(f in form(), g in matrix(), h in matrix()) {
        prop_assert_eq!(act_right(&f, &g), act_left(&g.tilde(), &f));
        // Both are actions: (f.g).h = f.(gh) and g.(h.f) = (gh).f.
        prop_assert_eq!(act_right(&act_right(&f, &g), &h), act_right(&f, &g.mul(&h)));
        prop_assert_eq!(act_left(&g, &act_left(&h, &f)), act_left(&g.mul(&h), &f));
    }

    #[test]
    fn pairing_is_equivariant(f in form(), f2 in form(), g in matrix()) {
        prop_assert_eq!(pairing(&act_left(&g, &f), &act_left(&g, &f2)), g.det() * pairing(&f, &f2));
        prop_assert_eq!(pairing(&f, &f2), -pairing(&f2, &f));
        let q = quartic_q(&act_left(&g, &f)).unwrap();
        prop_assert_eq!(q, g.det() * g.det() * quartic_q(&f).unwrap());
    }

    #[test]
    fn closure_matches_multiplication(
        a in -12i64..12, b in -12i64..12, c in -12i64..12, d in -12i64..12,
        m in int_matrix(), p in prop::sample::select(vec![2u64, 3, 5]),
    ) {
        let f = BinaryCubic::from_ints(a, b, c, d);
        prop_assert_eq!(closure_test(&f, &m, p).unwrap(), closure_oracle(&f, &m, p));
    }

    #[test]
    fn duplication_preserves_value(slope in 1i64..3, offset in 1i64..6, s in 0.3f64..2.0) {
        let z = Affine::ints(slope, offset);
        let e = GammaExpr::gamma(z.clone()).mul(&GammaExpr::gamma(z.shift(&rat(1, 2))));
        let merged = e.apply_duplication(&z, g2l_core::gammaledger::Duplication::Merge).unwrap();
        let x = slope as f64 * s + offset as f64;
        let direct = gamma_f64(x) * gamma_f64(x + 0.5);
        let got = merged.eval_f64(s).unwrap();
        prop_assert!((got / direct - 1.0).abs() < 1e-10, "{} vs {}", got, direct);
    }
}
