use super::*;
use std::collections::BTreeSet;

fn w(c: &[i64]) -> Weight {
    Weight(c.to_vec())
}

fn tab(rank: usize, rows: &[&[usize]]) -> Tableau {
    Tableau::new(rank, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

/// All semistandard fillings of `shape` with entries in `1..=top`, by brute
/// force over cells in row order.
fn all_ssyt(shape: &[usize], top: usize) -> BTreeSet<Vec<Vec<usize>>> {
    fn go(shape: &[usize], top: usize, rows: &mut Vec<Vec<usize>>, out: &mut BTreeSet<Vec<Vec<usize>>>) {
        let r = rows.len() - 1;
        if rows[r].len() == shape[r] {
            if r + 1 == shape.len() {
                out.insert(rows.clone());
                return;
            }
            rows.push(Vec::new());
            go(shape, top, rows, out);
            rows.pop();
            return;
        }
        let c = rows[r].len();
        for x in 1..=top {
            let left_ok = c == 0 || rows[r][c - 1] <= x;
            let above_ok = r == 0 || rows[r - 1][c] < x;
            if left_ok && above_ok {
                rows[r].push(x);
                go(shape, top, rows, out);
                rows[r].pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    if shape.is_empty() {
        out.insert(Vec::new());
        return out;
    }
    go(shape, top, &mut vec![Vec::new()], &mut out);
    out
}

#[test]
fn tableau_validation() {
    assert!(Tableau::new(2, vec![vec![1, 2], vec![1]]).is_err());
    assert!(Tableau::new(2, vec![vec![2, 1]]).is_err());
    assert!(Tableau::new(2, vec![vec![4]]).is_err());
    assert!(Tableau::new(2, vec![vec![1], vec![2, 3]]).is_err());
    assert_eq!(tab(2, &[&[1, 2], &[3]]).reading_word(), vec![3, 1, 2]);
}

#[test]
fn signature_rule_examples() {
    let three = tab(2, &[&[3]]);
    assert_eq!((three.eps(2), three.eps(1)), (1, 0));
    let top = Tableau::highest(2, &w(&[1, 1])).unwrap();
    assert_eq!(top.rows(), &[vec![1, 1], vec![2]]);
    assert!((1..=2).all(|i| top.eps(i) == 0));
    // reading word 2 1 1: the 2 brackets the first 1, f_1 acts on the second
    assert_eq!(top.apply_f(1).unwrap().rows(), &[vec![1, 2], vec![2]]);
    assert_eq!(top.phi(1), 1);
    assert_eq!(top.apply_e(1), None);
}

#[test]
fn crystal_sizes_match_enumeration_and_dimension() {
    for (rank, lambda, size) in [(2, vec![1, 0], 3), (2, vec![1, 1], 8), (1, vec![4], 5), (3, vec![0, 1, 0], 6), (3, vec![1, 0, 1], 15)] {
        let lambda = w(&lambda);
        let g = generate_crystal(rank, &lambda, 1000).unwrap();
        assert_eq!(g.len(), size);
        assert_eq!(weyl_dimension(rank, &lambda).unwrap(), size as u64);
        let shape = g.highest().shape();
        let expected = all_ssyt(&shape, rank + 1);
        let got: BTreeSet<Vec<Vec<usize>>> = g.vertices().iter().map(|t| t.rows().to_vec()).collect();
        assert_eq!(got, expected);
    }
    for m in 0..=10 {
        assert_eq!(generate_crystal(1, &w(&[m]), 1000).unwrap().len(), m as usize + 1);
    }
    assert_eq!(generate_crystal(2, &w(&[3, 3]), 10).unwrap_err(), Error::SizeBound(10));
    assert_eq!(generate_crystal(2, &w(&[-1, 0]), 10).unwrap_err(), Error::NotDominant(vec![-1, 0]));
}

#[test]
fn crystal_axioms() {
    let g = generate_crystal(3, &w(&[1, 1, 0]), 1000).unwrap();
    for b in g.vertices() {
        for i in 1..=3 {
            if let Some(f) = b.apply_f(i) {
                assert_eq!(f.apply_e(i).as_ref(), Some(b));
            }
            // phi - eps = <wt, alpha_i^vee>
            assert_eq!(b.phi(i) as i64 - b.eps(i) as i64, b.weight().0[i - 1]);
        }
    }
    let highest: Vec<_> = g.vertices().iter().filter(|t| t.is_highest()).collect();
    assert_eq!(highest, vec![g.highest()]);
}

#[test]
fn string_extraction_examples() {
    let word = Word::new([1, 2, 1]);
    assert_eq!(string_extract(&tab(2, &[&[1]]), &word).unwrap(), vec![0, 0, 0]);
    assert_eq!(string_extract(&tab(2, &[&[2]]), &word).unwrap(), vec![1, 0, 0]);
    assert_eq!(string_extract(&tab(2, &[&[3]]), &word).unwrap(), vec![0, 1, 1]);
    assert_eq!(string_decode(2, &w(&[1, 0]), &word, &[0, 1, 1]).unwrap(), tab(2, &[&[3]]));
    assert_eq!(string_decode(2, &w(&[1, 0]), &word, &[0, 1, 0]), Err(Error::OutsideStringCone(vec![0, 1, 0])));
    // a word that is not a word of w0 cannot always reach the top
    assert_eq!(string_extract(&tab(2, &[&[3]]), &Word::new([1])), Err(Error::ResidueNotHighest));
}

#[test]
fn string_extraction_round_trips() {
    let datum = CartanDatum::new(Series::A, 3).unwrap();
    let g = generate_crystal(3, &w(&[1, 0, 1]), 1000).unwrap();
    for word in datum.reduced_words_of_longest(100).unwrap() {
        let mut seen = HashSet::new();
        for b in g.vertices() {
            let t = string_extract(b, &word).unwrap();
            assert_eq!(&string_decode(3, g.lambda(), &word, &t).unwrap(), b);
            assert!(seen.insert(t));
        }
    }
}

#[test]
fn evacuation_examples() {
    assert_eq!(tab(2, &[&[1]]).evacuation(), tab(2, &[&[3]]));
    assert_eq!(tab(2, &[&[2]]).evacuation(), tab(2, &[&[2]]));
    assert_eq!(tab(2, &[&[1, 1], &[2]]).evacuation(), tab(2, &[&[2, 3], &[3]]));
    // hand computation: rotate/complement [[1,2],[3]] to the skew rows
    // [_, 1], [2, 3]; sliding the hole gives [[1,3],[2]]
    assert_eq!(tab(2, &[&[1, 2], &[3]]).evacuation(), tab(2, &[&[1, 3], &[2]]));
}

#[test]
fn evacuation_is_an_involution_reversing_weights() {
    let datum = CartanDatum::new(Series::A, 3).unwrap();
    let w0 = datum.longest_word();
    for lambda in [w(&[1, 1, 0]), w(&[2, 0, 1]), w(&[0, 2, 0])] {
        let g = generate_crystal(3, &lambda, 1000).unwrap();
        let via_crystal = g.evacuation_via_crystal().unwrap();
        for (k, b) in g.vertices().iter().enumerate() {
            let e = b.evacuation();
            assert_eq!(e.evacuation(), *b);
            assert_eq!(e.weight(), datum.weyl_action(&w0, &b.weight()).unwrap());
            assert_eq!(g.index_of(&e), Some(via_crystal[k]));
        }
    }
}

#[test]
fn lowest_elements() {
    for m in 1..5 {
        let g = generate_crystal(1, &w(&[m]), 100).unwrap();
        assert_eq!(g.lowest_element().unwrap().rows(), &[vec![2; m as usize]]);
    }
    let datum = CartanDatum::new(Series::A, 3).unwrap();
    for lambda in [w(&[1, 0, 0]), w(&[0, 1, 0]), w(&[2, 1, 1]), w(&[0, 0, 0])] {
        let g = generate_crystal(3, &lambda, 1000).unwrap();
        let low = g.lowest_element().unwrap();
        assert_eq!(low, &Tableau::lowest(3, &lambda).unwrap());
        assert_eq!(low.weight(), datum.weyl_action(&datum.longest_word(), &lambda).unwrap());
    }
}

#[test]
fn corollary_table_a2() {
    let r = verify_corollary(2, &w(&[1, 0]), &Word::new([1, 2, 1])).unwrap();
    assert!(r.pass(), "{r:?}");
    assert_eq!(r.anchor, vec![1, 0, 1]);
    let table: Vec<(Vec<i64>, Vec<i64>)> = r.rows.iter().map(|row| (row.t.clone(), row.t_prime.clone())).collect();
    assert_eq!(
        table,
        vec![(vec![0, 0, 0], vec![1, 0, 1]), (vec![1, 0, 0], vec![0, 0, 1]), (vec![0, 1, 1], vec![0, 0, 0])]
    );
}

#[test]
fn corollary_sl2() {
    let r = verify_corollary(1, &w(&[3]), &Word::new([1])).unwrap();
    assert!(r.pass());
    for row in &r.rows {
        assert_eq!(row.t_prime, vec![3 - row.t[0]]);
    }
}

#[test]
fn corollary_a3() {
    let datum = CartanDatum::new(Series::A, 3).unwrap();
    for word in datum.reduced_words_of_longest(100).unwrap() {
        assert!(verify_corollary(3, &w(&[0, 1, 0]), &word).unwrap().pass(), "{word}");
    }
}

#[test]
fn dot_export() {
    let dot = generate_crystal(2, &w(&[1, 0]), 10).unwrap().to_dot();
    assert!(dot.starts_with("digraph crystal {"));
    assert!(dot.contains("v0 -> v1 [label=\"1\"];"));
    assert!(dot.contains("v1 -> v2 [label=\"2\"];"));
}
