use super::*;
use crate::cartan::{CartanDatum, Series, Word};
use crate::poly::RatFunc;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn random_positive(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigRational> {
    (0..n).map(|_| q(rng.gen_range(1..30), rng.gen_range(1..12))).collect()
}

#[test]
fn a2_closed_form_example() {
    let datum = CartanDatum::new(Series::A, 2).unwrap();
    let t = [q(1, 1), q(2, 1), q(3, 1)];
    let tp = zeta_closed_form(&datum, &Word::new([1, 2, 1]), &t).unwrap();
    assert_eq!(tp, vec![q(2, 9), q(3, 2), q(1, 3)]);
    let report = verify_zeta_formula(&Realization::SpecialLinear { rank: 2 }, &Word::new([1, 2, 1]), &t).unwrap();
    assert!(report.pass);
}

#[test]
fn generators_satisfy_relations() {
    let r = Realization::SpecialLinear { rank: 3 };
    let (a, b) = (q(3, 2), q(5, 7));
    // x_i(a) x_i(b) = x_i(a + b)
    assert_eq!(r.x(2, a.clone()).unwrap().mul(&r.x(2, b.clone()).unwrap()), r.x(2, &a + &b).unwrap());
    // t^{alpha_i^vee} x_j(s) t^{-alpha_i^vee} = x_j(t^{a_ij} s)
    let datum = r.cartan();
    for i in 1..=3 {
        for j in 1..=3 {
            let lhs = r.torus(i, a.clone()).unwrap().mul(&r.x(j, b.clone()).unwrap()).mul(&r.torus(i, a.recip()).unwrap());
            assert_eq!(lhs, r.x(j, a.powi(datum.a(i, j)) * b.clone()).unwrap(), "i={i} j={j}");
        }
    }
    let s = Realization::Symplectic { short_letter: 1 };
    let datum = s.cartan();
    for i in 1..=2 {
        for j in 1..=2 {
            let lhs = s.torus(i, a.clone()).unwrap().mul(&s.x(j, b.clone()).unwrap()).mul(&s.torus(i, a.recip()).unwrap());
            assert_eq!(lhs, s.x(j, a.powi(datum.a(i, j)) * b.clone()).unwrap());
        }
    }
}

#[test]
fn symplectic_generators_preserve_form() {
    // J antisymmetric with g^T J g = J for every generator
    let j = GroupMatrix::from_rows(vec![
        vec![q(0, 1), q(0, 1), q(0, 1), q(1, 1)],
        vec![q(0, 1), q(0, 1), q(-1, 1), q(0, 1)],
        vec![q(0, 1), q(1, 1), q(0, 1), q(0, 1)],
        vec![q(-1, 1), q(0, 1), q(0, 1), q(0, 1)],
    ]);
    let s = Realization::Symplectic { short_letter: 1 };
    for i in 1..=2 {
        for g in [s.x(i, q(3, 4)).unwrap(), s.y(i, q(2, 5)).unwrap(), s.torus(i, q(7, 3)).unwrap()] {
            assert_eq!(g.transpose().mul(&j).mul(&g), j);
        }
    }
}

#[test]
fn omega_swaps_generators_and_inverts_torus() {
    let r = Realization::SpecialLinear { rank: 3 };
    let a = q(4, 9);
    for i in 1..=3 {
        assert_eq!(chevalley_omega(&r.x(i, a.clone()).unwrap()).unwrap(), r.y(i, a.clone()).unwrap());
        assert_eq!(chevalley_omega(&r.y(i, a.clone()).unwrap()).unwrap(), r.x(i, a.clone()).unwrap());
        assert_eq!(chevalley_omega(&r.torus(i, a.clone()).unwrap()).unwrap(), r.torus(i, a.recip()).unwrap());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let w = Word::new([1, 2, 3, 1, 2, 1]);
    let factors = r.x_minus_factors(&w, &random_positive(&mut rng, 6)).unwrap();
    let m = r.product(&factors).unwrap();
    assert_eq!(chevalley_omega(&m).unwrap(), r.product(&chevalley_omega_factors(&factors)).unwrap());
    assert_eq!(chevalley_omega(&chevalley_omega(&m).unwrap()).unwrap(), m);
}

#[test]
fn gauss_decomposition_reassembles() {
    let r = Realization::SpecialLinear { rank: 3 };
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let w = Word::new([1, 2, 1, 3, 2, 1]);
    let m = r.x_minus_word(&w, &random_positive(&mut rng, 6)).unwrap();
    let (l, h, u) = gauss_decompose(&m).unwrap();
    assert!(l.is_lower_unitriangular() && h.is_diagonal() && u.is_upper_unitriangular());
    assert_eq!(l.mul(&h).mul(&u), m);
    // leading minors are products of the diagonal
    let minors = m.leading_principal_minors();
    let mut acc = q(1, 1);
    for k in 0..4 {
        acc = acc * h.get(k, k).clone();
        assert_eq!(minors[k], acc);
    }
    // a matrix with a vanishing leading minor is rejected
    let bad = GroupMatrix::from_rows(vec![vec![q(0, 1), q(1, 1)], vec![q(-1, 1), q(0, 1)]]);
    assert_eq!(gauss_decompose(&bad).unwrap_err(), Error::NotInG0(1));
}

#[test]
fn zeta_formula_holds_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for rank in 1..=4 {
        let r = Realization::SpecialLinear { rank };
        let datum = r.cartan();
        for w in datum.reduced_words_of_longest(1000).unwrap().into_iter().take(6) {
            for _ in 0..3 {
                let t = random_positive(&mut rng, w.len());
                assert!(verify_zeta_formula(&r, &w, &t).unwrap().pass, "{w}");
            }
        }
    }
    for short_letter in [1, 2] {
        let r = Realization::Symplectic { short_letter };
        for w in r.cartan().reduced_words_of_longest(10).unwrap() {
            let t = random_positive(&mut rng, 4);
            assert!(verify_zeta_formula(&r, &w, &t).unwrap().pass);
        }
    }
}

#[test]
fn zeta_formula_needs_longest_word_and_positivity() {
    let r = Realization::SpecialLinear { rank: 2 };
    assert!(matches!(verify_zeta_formula(&r, &Word::new([1, 2]), &[q(1, 1), q(1, 1)]), Err(Error::NotLongest(_))));
    assert_eq!(
        r.x_minus_word(&Word::new([1, 2, 1]), &[q(1, 1), q(0, 1), q(1, 1)]).unwrap_err(),
        Error::NonPositiveParameter { index: 2 }
    );
    assert_eq!(r.torus(1, q(0, 1)).unwrap_err(), Error::ZeroTorusParameter);
}

#[test]
fn zeta_symbolic_a2() {
    let r = Realization::SpecialLinear { rank: 2 };
    let w = Word::new([1, 2, 1]);
    let t: Vec<RatFunc> = (0..3).map(|k| RatFunc::var(3, k)).collect();
    let lhs = r.x_word(&w, &zeta_closed_form(&r.cartan(), &w, &t).unwrap()).unwrap();
    let rhs = zeta(&r.x_minus_word_any(&w, &t).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn float_realization_agrees_with_exact() {
    let r = Realization::SpecialLinear { rank: 2 };
    let w = Word::new([1, 2, 1]);
    let z = zeta(&r.x_minus_word(&w, &[1.0f64, 2.0, 3.0]).unwrap()).unwrap();
    assert!((z.get(0, 1) - (2.0 / 9.0 + 1.0 / 3.0)).abs() < 1e-12);
}

/// Independent A2 formula: `x1(a) x2(b) x1(c) = x2(bc/(a+c)) x1(a+c) x2(ab/(a+c))`.
#[test]
fn a2_lusztig_move_matches_known_formula() {
    let sol = solve_rank2_move(MoveKind::A2, Side::Lusztig).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let p = random_positive(&mut rng, 3);
        let (a, b, c) = (&p[0], &p[1], &p[2]);
        let s = a + c;
        let expected = vec![b * c / &s, s.clone(), a * b / &s];
        assert_eq!(sol.map.eval(&p).unwrap(), expected);
    }
}

#[test]
fn commuting_move_swaps() {
    for side in [Side::Lusztig, Side::String] {
        let sol = solve_rank2_move(MoveKind::Commuting, side).unwrap();
        assert_eq!(sol.map.eval(&[q(2, 1), q(5, 3)]).unwrap(), vec![q(5, 3), q(2, 1)]);
    }
}

#[test]
fn all_moves_are_certified_and_involutive() {
    let kinds = [
        (MoveKind::A2, MoveKind::A2),
        (MoveKind::B2 { short_first: true }, MoveKind::B2 { short_first: false }),
        (MoveKind::B2 { short_first: false }, MoveKind::B2 { short_first: true }),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for side in [Side::Lusztig, Side::String] {
        for (k, back) in kinds {
            let sol = solve_rank2_move(k, side).unwrap();
            let inv = solve_rank2_move(back, side).unwrap();
            assert!(sol.map.is_subtraction_free());
            assert!(sol.check_identity_symbolic().unwrap());
            for _ in 0..100 {
                let p = random_positive(&mut rng, k.len());
                assert!(sol.check_identity_at(&p).unwrap());
                assert_eq!(inv.map.eval(&sol.map.eval(&p).unwrap()).unwrap(), p);
            }
        }
    }
}

#[test]
fn g2_is_unsupported() {
    assert!(matches!(
        solve_rank2_move(MoveKind::G2 { short_first: true }, Side::Lusztig),
        Err(Error::UnsupportedRank2Type(_))
    ));
    assert_eq!(MoveKind::from_pair(-1, -3).unwrap(), MoveKind::G2 { short_first: false });
}

#[test]
fn realization_selection() {
    let b2 = CartanDatum::new(Series::B, 2).unwrap();
    let c2 = CartanDatum::new(Series::C, 2).unwrap();
    assert_eq!(Realization::for_datum(&b2).unwrap().cartan(), b2);
    assert_eq!(Realization::for_datum(&c2).unwrap().cartan(), c2);
    assert!(Realization::for_datum(&CartanDatum::new(Series::G, 2).unwrap()).is_err());
    assert!(Realization::for_datum(&CartanDatum::new(Series::D, 4).unwrap()).is_err());
}

