use super::*;
use crate::crystal::generate_crystal;
use crate::tropical::pl_eval;
use rand::Rng;

fn a(n: usize) -> CartanDatum {
    CartanDatum::new(Series::A, n).unwrap()
}

fn wd(letters: &[usize]) -> Word {
    Word::new(letters.to_vec())
}

fn w(c: &[i64]) -> Weight {
    Weight(c.to_vec())
}

/// Tropical A2 move written out by hand.
fn a2_move(t: &[i64]) -> Vec<i64> {
    let m = t[0].min(t[2]);
    vec![t[1] + t[2] - m, m, t[0] + t[1] - m]
}

#[test]
fn transition_examples() {
    let (i, j) = (wd(&[1, 2, 1]), wd(&[2, 1, 2]));
    let d = a(2);
    assert_eq!(transition_lusztig(&d, &i, &i, &[4, 1, 7]).unwrap(), vec![4, 1, 7]);
    assert_eq!(transition_lusztig(&d, &i, &j, &[1, 0, 0]).unwrap(), vec![0, 0, 1]);
    assert_eq!(transition_lusztig(&d, &i, &j, &[1, 1, 1]).unwrap(), vec![1, 1, 1]);
    assert_eq!(transition_string(&d, &i, &j, &[0, 1, 1]).unwrap(), vec![1, 1, 0]);
    assert_eq!(transition_string(&d, &i, &j, &[1, 0, 0]).unwrap(), vec![0, 1, 0]);
    assert!(matches!(transition_lusztig(&d, &i, &wd(&[1, 2]), &[0, 0, 0]), Err(Error::NotSameElement(..))));
    assert!(matches!(transition_lusztig(&d, &i, &j, &[0, 0]), Err(Error::LengthMismatch { .. })));
}

#[test]
fn lusztig_transition_matches_hand_formula() {
    let d = a(2);
    let tr = Transition::new(&d, Side::Lusztig, &wd(&[1, 2, 1]), &wd(&[2, 1, 2])).unwrap();
    for x in 0..=6 {
        for y in 0..=6 {
            for z in 0..=6 {
                assert_eq!(tr.apply(&[x, y, z]).unwrap(), a2_move(&[x, y, z]));
            }
        }
    }
}

#[test]
fn string_transition_matches_crystal() {
    for (rank, lambda) in [(2, vec![2, 1]), (3, vec![1, 0, 1]), (3, vec![0, 2, 0])] {
        let d = a(rank);
        let g = generate_crystal(rank, &w(&lambda), 1000).unwrap();
        let words = d.reduced_words_of_longest(100).unwrap();
        for from in &words {
            for to in words.iter().step_by(3) {
                let tr = Transition::new(&d, Side::String, from, to).unwrap();
                for b in g.vertices() {
                    let t = string_extract(b, from).unwrap();
                    assert_eq!(tr.apply(&t).unwrap(), string_extract(b, to).unwrap());
                }
            }
        }
    }
}

#[test]
fn cocycle_and_inverse_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for d in [a(2), a(3), CartanDatum::new(Series::B, 2).unwrap(), CartanDatum::new(Series::C, 3).unwrap()] {
        let words = d.reduced_words_of_longest(1000).unwrap();
        for side in [Side::Lusztig, Side::String] {
            for _ in 0..4 {
                let pick = |rng: &mut ChaCha8Rng| words[rng.gen_range(0..words.len())].clone();
                let (i, j, k) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                let ij = Transition::new(&d, side, &i, &j).unwrap();
                let jk = Transition::new(&d, side, &j, &k).unwrap();
                let ik = Transition::new(&d, side, &i, &k).unwrap();
                let ji = Transition::new(&d, side, &j, &i).unwrap();
                for _ in 0..30 {
                    let t: Vec<i64> = (0..i.len()).map(|_| rng.gen_range(0..=20)).collect();
                    let via = jk.apply(&ij.apply(&t).unwrap()).unwrap();
                    assert_eq!(via, ik.apply(&t).unwrap(), "{d} {side:?} {i} {j} {k}");
                    assert_eq!(ji.apply(&ij.apply(&t).unwrap()).unwrap(), t);
                }
            }
        }
    }
}

#[test]
fn b2_uses_dual_pieces() {
    // in B2 (node 1 long) the letters of (1,2,1,2) start with a long root, so
    // the dual move starts with a short one
    let d = CartanDatum::new(Series::B, 2).unwrap();
    let tr = Transition::new(&d, Side::Lusztig, &wd(&[1, 2, 1, 2]), &wd(&[2, 1, 2, 1])).unwrap();
    assert_eq!(tr.steps[0].1.kind, MoveKind::B2 { short_first: true });
    let c = d.langlands_dual();
    let tr = Transition::new(&c, Side::Lusztig, &wd(&[1, 2, 1, 2]), &wd(&[2, 1, 2, 1])).unwrap();
    assert_eq!(tr.steps[0].1.kind, MoveKind::B2 { short_first: false });
}

#[test]
fn transition_pl_map_matches_pointwise() {
    let d = a(3);
    let (i, j) = (wd(&[1, 2, 1, 3, 2, 1]), wd(&[2, 1, 3, 2, 3, 1]));
    let tr = Transition::new(&d, Side::Lusztig, &i, &j).unwrap();
    let map = tr.to_pl_map().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let t: Vec<i64> = (0..6).map(|_| rng.gen_range(-10..=10)).collect();
        assert_eq!(pl_eval(&map, &t).unwrap(), tr.apply(&t).unwrap());
    }
}

#[test]
fn zeta_trop_examples() {
    assert_eq!(zeta_trop(&a(1), &wd(&[1])).unwrap(), AffineMap { l: vec![0], m: vec![vec![-1]] });
    let z = zeta_trop(&a(2), &wd(&[1, 2, 1])).unwrap();
    assert_eq!(z.m, vec![vec![-1, 1, -2], vec![0, -1, 1], vec![0, 0, -1]]);
    let b2 = CartanDatum::new(Series::B, 2).unwrap();
    let z = zeta_trop(&b2, &wd(&[1, 2, 1, 2])).unwrap();
    // row 1: -t1 - a12 t2 - a11 t3 - a12 t4 with a12 = -1
    assert_eq!(z.m[0], vec![-1, 1, -2, 1]);
    // row 2: -t2 - a21 t3 - a22 t4 with a21 = -2
    assert_eq!(z.m[1], vec![0, -1, 2, -2]);
    for d in [a(3), a(4), b2, CartanDatum::new(Series::G, 2).unwrap(), CartanDatum::new(Series::D, 4).unwrap()] {
        let i = d.longest_word();
        assert_eq!(zeta_trop(&d, &i).unwrap(), zeta_trop_direct(&d, &i));
    }
}

#[test]
fn anchor_examples() {
    assert_eq!(anchor_constants(&a(1), &w(&[3]), &wd(&[1])).unwrap(), vec![3]);
    assert_eq!(anchor_constants(&a(2), &w(&[1, 0]), &wd(&[1, 2, 1])).unwrap(), vec![1, 0, 1]);
    assert_eq!(anchor_constants(&a(3), &w(&[0, 0, 0]), &a(3).longest_word()).unwrap(), vec![0; 6]);
    let b2 = CartanDatum::new(Series::B, 2).unwrap();
    assert!(matches!(anchor_constants(&b2, &w(&[1, 0]), &wd(&[1, 2, 1, 2])), Err(Error::UnsupportedType(_))));
    assert!(matches!(anchor_constants(&a(2), &w(&[1, -1]), &wd(&[1, 2, 1])), Err(Error::NotDominant(_))));
}

#[test]
fn anchors_are_transition_consistent() {
    let d = a(3);
    let words = d.reduced_words_of_longest(100).unwrap();
    for lambda in [w(&[0, 1, 0]), w(&[1, 0, 1]), w(&[2, 1, 0])] {
        let base = &words[0];
        let l0 = anchor_constants(&d, &lambda, base).unwrap();
        for other in &words {
            let l = anchor_constants(&d, &lambda, other).unwrap();
            assert_eq!(transition_lusztig(&d, base, other, &l0).unwrap(), l);
        }
    }
}

#[test]
fn phi_examples() {
    let (d, i, lam) = (a(2), wd(&[1, 2, 1]), w(&[1, 0]));
    assert_eq!(phi_map(&d, &i, &i, &lam, &[0, 0, 0]).unwrap(), vec![1, 0, 1]);
    assert_eq!(phi_map(&d, &i, &i, &lam, &[1, 0, 0]).unwrap(), vec![0, 0, 1]);
    assert_eq!(phi_map(&d, &i, &i, &lam, &[0, 1, 1]).unwrap(), vec![0, 0, 0]);
    let j = wd(&[2, 1, 2]);
    let anchor = anchor_constants(&d, &lam, &i).unwrap();
    for t in [[0, 0, 0], [1, 0, 0], [0, 1, 1]] {
        let tj = transition_string(&d, &i, &j, &t).unwrap();
        let direct = phi_map(&d, &i, &j, &lam, &tj).unwrap();
        assert_eq!(direct, phi_map(&d, &i, &i, &lam, &t).unwrap());
        assert_eq!(phi_map_via_string(&d, &i, &j, &anchor, &tj).unwrap(), direct);
    }
}

#[test]
fn phi_pl_map_reduces_to_affine_formula() {
    let b2 = CartanDatum::new(Series::B, 2).unwrap();
    let g2 = CartanDatum::new(Series::G, 2).unwrap();
    for d in [a(1), a(2), a(3), b2, g2] {
        let i = d.longest_word();
        let anchor: Vec<i64> = (0..i.len() as i64).map(|k| 3 * k - 2).collect();
        let map = phi_pl_map(&d, &i, &i, &anchor).unwrap();
        let forms = map.as_affine().expect("affine");
        let expected = zeta_trop_direct(&d, &i).with_constant(anchor);
        assert_eq!(AffineMap::from_forms(&forms), expected, "{d}");
    }
}

#[test]
fn phi_pl_map_across_words_matches_pointwise() {
    let d = a(2);
    let (i, j) = (wd(&[1, 2, 1]), wd(&[2, 1, 2]));
    let anchor = anchor_constants(&d, &w(&[1, 1]), &i).unwrap();
    let map = phi_pl_map(&d, &i, &j, &anchor).unwrap();
    assert!(map.as_affine().is_none());
    for x in 0..4 {
        for y in 0..4 {
            for z in 0..4 {
                let t = [x, y, z];
                assert_eq!(pl_eval(&map, &t).unwrap(), phi_map_with_anchor(&d, &i, &j, &anchor, &t).unwrap());
            }
        }
    }
}

#[test]
fn schutz_examples() {
    let (d, i, lam) = (a(2), wd(&[1, 2, 1]), w(&[1, 0]));
    let s = schutz_affine(&d, &i, &lam).unwrap();
    assert_eq!(s.l, vec![1, 0, 1]);
    assert_eq!(s.apply(&[0, 0, 0]), vec![1, 0, 1]);
    assert_eq!(s.apply(&[1, 0, 0]), vec![0, 0, 1]);
    assert_eq!(s.apply(&[0, 1, 1]), vec![0, 0, 0]);
}

#[test]
fn star_relabel_examples() {
    let p = LusztigParam::new(wd(&[1, 2, 1]), vec![3, 0, 2]).unwrap();
    let q = star_relabel(&a(2), &p).unwrap();
    assert_eq!(q.word, wd(&[2, 1, 2]));
    assert_eq!(q.t, p.t);
    assert_eq!(star_relabel(&a(2), &q).unwrap(), p);
    let one = LusztigParam::new(wd(&[1]), vec![5]).unwrap();
    assert_eq!(star_relabel(&a(1), &one).unwrap(), one);
    assert!(LusztigParam::new(wd(&[1]), vec![-1]).is_err());
}

#[test]
fn phi_conditions_hold() {
    let d = a(2);
    let words = d.reduced_words_of_longest(10).unwrap();
    for lam in [w(&[1, 0]), w(&[0, 1]), w(&[1, 1]), w(&[0, 0])] {
        let r = verify_phi_conditions(&d, &lam, &words, 1000, 1).unwrap();
        assert!(r.pass(), "{:?}", r.failures);
    }
}
