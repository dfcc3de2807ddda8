//! The acceptance suite: nine exact checks over desk-scale data, each
//! returning a pass flag and a one-line summary.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cartan::{CartanDatum, Series, Weight, Word};
use crate::crystal::{generate_crystal, string_extract, verify_corollary_on, weyl_dimension, CrystalGraph};
use crate::error::Result;
use crate::lifting::{solve_rank2_move, verify_zeta_formula, MoveKind, Realization, Side};
use crate::parametrize::{
    anchor_constants, phi_map, phi_pl_map, tropical_piece, verify_phi_conditions, zeta_trop, AffineMap, Transition,
};
use crate::tropical::{pl_eval, PlMap};

pub const CRITERIA: [u8; 9] = [1, 2, 3, 4, 5, 6, 7, 8, 9];

#[derive(Debug, Clone, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Seeded samples per check (points, pairs).
    pub samples: usize,
    /// Half-width M of the evaluation boxes.
    pub box_max: i64,
    /// Stride of the `[0, M]^6` box for the A3 cocycle check; 1 walks it fully.
    pub a3_box_stride: i64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 42, samples: 500, box_max: 20, a3_box_stride: 1 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

pub fn criterion_name(id: u8) -> &'static str {
    match id {
        1 => "zeta closed form",
        2 => "rank-2 move soundness",
        3 => "tropical coherence",
        4 => "theorem vs corollary",
        5 => "characterizing conditions",
        6 => "corollary end-to-end",
        7 => "string transitions vs crystal",
        8 => "sl2 closed form",
        9 => "tropicalization well-defined",
        _ => "unknown",
    }
}

/// Runs one criterion; library errors count as failures.
pub fn run_criterion(id: u8, cfg: &SuiteConfig) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => criterion1(cfg),
        2 => criterion2(cfg),
        3 => criterion3(cfg),
        4 => criterion4(),
        5 => criterion5(cfg),
        6 => criterion6(),
        7 => criterion7(),
        8 => criterion8(),
        9 => criterion9(cfg),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let elapsed = start.elapsed();
    let (mut pass, mut detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    let budget = match id {
        1 => Some(Duration::from_secs(10)),
        5 => Some(Duration::from_secs(60)),
        _ => None,
    };
    if let Some(b) = budget {
        if elapsed > b {
            pass = false;
            detail = format!("{detail}; over the {}s budget", b.as_secs());
        }
    }
    CriterionResult { id, name: criterion_name(id), pass, detail, elapsed_ms: elapsed.as_millis() }
}

pub fn run_suite(ids: &[u8], cfg: &SuiteConfig) -> Vec<CriterionResult> {
    ids.iter().map(|&id| run_criterion(id, cfg)).collect()
}

type Outcome = Result<(bool, String)>;

fn type_a(rank: usize) -> CartanDatum {
    CartanDatum::new(Series::A, rank).expect("type A exists in every rank")
}

fn random_positive(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigRational> {
    (0..n)
        .map(|_| BigRational::new(BigInt::from(rng.gen_range(1..=30)), BigInt::from(rng.gen_range(1..=30))))
        .collect()
}

fn criterion1(cfg: &SuiteConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut checked = 0;
    let mut failed = 0;
    for rank in 1..=3 {
        let d = type_a(rank);
        let real = Realization::for_datum(&d)?;
        for w in d.reduced_words_of_longest(100)? {
            let t = random_positive(&mut rng, w.len());
            checked += 1;
            failed += usize::from(!verify_zeta_formula(&real, &w, &t)?.pass);
        }
    }
    let d = type_a(4);
    let real = Realization::for_datum(&d)?;
    let words = d.reduced_words_of_longest(1000)?;
    for _ in 0..cfg.samples.max(100) {
        let w = words.choose(&mut rng).expect("nonempty");
        let t = random_positive(&mut rng, w.len());
        checked += 1;
        failed += usize::from(!verify_zeta_formula(&real, w, &t)?.pass);
    }
    Ok((failed == 0, format!("{checked} (word, point) pairs in A1-A4, {failed} failures")))
}

fn criterion2(cfg: &SuiteConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let kinds = [
        MoveKind::Commuting,
        MoveKind::A2,
        MoveKind::B2 { short_first: true },
        MoveKind::B2 { short_first: false },
    ];
    let points = cfg.samples.max(100);
    let mut failed = Vec::new();
    for kind in kinds {
        for side in [Side::Lusztig, Side::String] {
            let sol = solve_rank2_move(kind, side)?;
            let mut ok = sol.map.is_subtraction_free();
            for _ in 0..points {
                let p = random_positive(&mut rng, sol.map.arity);
                ok &= sol.check_identity_at(&p)?;
            }
            if !ok {
                failed.push(format!("{kind:?}/{side:?}"));
            }
        }
    }
    Ok((failed.is_empty(), format!("8 moves x {points} points, failures: {failed:?}")))
}

fn seeded_points(rng: &mut ChaCha8Rng, n: usize, count: usize, range: i64) -> Vec<Vec<i64>> {
    (0..count).map(|_| (0..n).map(|_| rng.gen_range(-range..=range)).collect()).collect()
}

/// Calls `visit` on every point of `[lo, hi]^n` walked with `stride`
/// (endpoints included), without materializing the box.
fn for_each_box_point(n: usize, lo: i64, hi: i64, stride: i64, mut visit: impl FnMut(&[i64])) {
    let mut axis: Vec<i64> = (lo..=hi).step_by(stride.max(1) as usize).collect();
    if axis.last() != Some(&hi) {
        axis.push(hi);
    }
    let mut digits = vec![0usize; n];
    let mut point = vec![axis[0]; n];
    loop {
        visit(&point);
        let mut k = n;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < axis.len() {
                point[k] = axis[digits[k]];
                break;
            }
            digits[k] = 0;
            point[k] = axis[0];
        }
    }
}

/// Identity and cocycle laws for one word triple on a box and extra points;
/// returns (points checked, failures).
fn cocycle_failures(
    d: &CartanDatum,
    side: Side,
    triple: [&Word; 3],
    (hi, stride): (i64, i64),
    extra: &[Vec<i64>],
) -> Result<(usize, usize)> {
    let [i, j, k] = triple;
    let ij = Transition::new(d, side, i, j)?;
    let jk = Transition::new(d, side, j, k)?;
    let ik = Transition::new(d, side, i, k)?;
    let ii = Transition::new(d, side, i, i)?;
    let (mut a, mut b, mut c) = (vec![0; i.len()], vec![0; i.len()], vec![0; i.len()]);
    let (mut seen, mut bad) = (0, 0);
    let mut check = |t: &[i64]| {
        a.copy_from_slice(t);
        ii.apply_in_place(&mut a);
        b.copy_from_slice(t);
        ij.apply_in_place(&mut b);
        jk.apply_in_place(&mut b);
        c.copy_from_slice(t);
        ik.apply_in_place(&mut c);
        seen += 1;
        bad += usize::from(a != t || b != c);
    };
    for_each_box_point(i.len(), 0, hi, stride, &mut check);
    extra.iter().for_each(|t| check(t));
    Ok((seen, bad))
}

fn criterion3(cfg: &SuiteConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (mut bad, mut checks) = (0, 0);

    let a2 = type_a(2);
    let words = a2.reduced_words_of_longest(10)?;
    let extra = seeded_points(&mut rng, 3, cfg.samples, 1000);
    for side in [Side::Lusztig, Side::String] {
        for i in &words {
            for j in &words {
                for k in &words {
                    let (n, b) = cocycle_failures(&a2, side, [i, j, k], (cfg.box_max, 1), &extra)?;
                    checks += n;
                    bad += b;
                }
            }
        }
    }

    let a3 = type_a(3);
    let words = a3.reduced_words_of_longest(100)?;
    let extra = seeded_points(&mut rng, 6, cfg.samples, 1000);
    let stride = cfg.a3_box_stride.max(1);
    for side in [Side::Lusztig, Side::String] {
        for _ in 0..5 {
            let triple = [0, 1, 2].map(|_| words.choose(&mut rng).expect("nonempty"));
            let (n, b) = cocycle_failures(&a3, side, triple, (cfg.box_max, stride), &extra)?;
            checks += n;
            bad += b;
        }
    }
    Ok((
        bad == 0,
        format!("{checks} point checks (A2 all triples, A3 5 triples per side, A3 box stride {stride}), {bad} failures"),
    ))
}

/// The coefficient pattern the affine case must show: `-1` on the diagonal,
/// `-a(i_k, i_j)` right of it.
fn expected_rows(d: &CartanDatum, w: &Word) -> Vec<Vec<i64>> {
    let n = w.len();
    (0..n)
        .map(|k| {
            (0..n)
                .map(|j| match j.cmp(&k) {
                    std::cmp::Ordering::Less => 0,
                    std::cmp::Ordering::Equal => -1,
                    std::cmp::Ordering::Greater => -d.a(w.0[k], w.0[j]),
                })
                .collect()
        })
        .collect()
}

fn criterion4() -> Outcome {
    let data = [
        CartanDatum::new(Series::A, 1)?,
        CartanDatum::new(Series::A, 2)?,
        CartanDatum::new(Series::A, 3)?,
        CartanDatum::new(Series::B, 2)?,
        CartanDatum::new(Series::G, 2)?,
    ];
    let mut failed = Vec::new();
    let mut count = 0;
    for d in &data {
        let type_a = d.series() == Series::A;
        for w in d.reduced_words_of_longest(100)? {
            count += 1;
            let anchor = if type_a {
                anchor_constants(d, &Weight(vec![1; d.rank()]), &w)?
            } else {
                (0..w.len() as i64).map(|k| 2 * k + 1).collect()
            };
            let map = phi_pl_map(d, &w, &w, &anchor)?;
            let ok = match map.as_affine() {
                Some(forms) => {
                    let got = AffineMap::from_forms(&forms);
                    got.m == expected_rows(d, &w) && got.l == anchor && got == zeta_trop(d, &w)?.with_constant(anchor.clone())
                }
                None => false,
            };
            if !ok {
                failed.push(format!("{} {}", d.name(), w));
            }
        }
    }
    Ok((failed.is_empty(), format!("{count} words over A1 A2 A3 B2 G2, failures: {failed:?}")))
}

fn criterion5(cfg: &SuiteConfig) -> Outcome {
    let a2 = type_a(2);
    let a3 = type_a(3);
    let cases = [
        (&a2, Weight(vec![1, 0])),
        (&a2, Weight(vec![0, 1])),
        (&a2, Weight(vec![1, 1])),
        (&a3, Weight(vec![0, 1, 0])),
    ];
    let mut failed = Vec::new();
    for (d, lambda) in cases {
        let words = d.reduced_words_of_longest(100)?;
        let report = verify_phi_conditions(d, &lambda, &words, cfg.samples, cfg.seed)?;
        if !report.pass() {
            failed.push(format!("{} {:?}: {:?}", d.name(), lambda.0, report.failures.first()));
        }
    }
    Ok((failed.is_empty(), format!("A2 (w1, w2, w1+w2) and A3 w2 over all word pairs, failures: {failed:?}")))
}

/// The crystals of the end-to-end check with the words used on each: every
/// reduced word of the longest element (A1 has only one).
fn corollary_cases() -> Result<Vec<(CartanDatum, CrystalGraph, Vec<Word>)>> {
    let mut cases = Vec::new();
    let a1 = type_a(1);
    for m in 0..=10 {
        let g = generate_crystal(1, &Weight(vec![m]), 1000)?;
        cases.push((a1.clone(), g, a1.reduced_words_of_longest(10)?));
    }
    let a2 = type_a(2);
    let words = a2.reduced_words_of_longest(10)?;
    for a in 0.. {
        if weyl_dimension(2, &Weight(vec![a, 0]))? > 1000 {
            break;
        }
        for b in 0.. {
            let lambda = Weight(vec![a, b]);
            if weyl_dimension(2, &lambda)? > 1000 {
                break;
            }
            cases.push((a2.clone(), generate_crystal(2, &lambda, 1000)?, words.clone()));
        }
    }
    let a3 = type_a(3);
    let words = a3.reduced_words_of_longest(100)?;
    for lambda in [[1, 0, 0], [0, 1, 0], [1, 0, 1]] {
        cases.push((a3.clone(), generate_crystal(3, &Weight(lambda.to_vec()), 1000)?, words.clone()));
    }
    Ok(cases)
}

fn criterion6() -> Outcome {
    let mut failed = Vec::new();
    let mut reports = 0;
    for (d, g, words) in corollary_cases()? {
        for w in &words {
            reports += 1;
            if !verify_corollary_on(&d, &g, w)?.pass() {
                failed.push(format!("{} {:?} {}", d.name(), g.lambda().0, w));
            }
        }
    }

    let report = verify_corollary_on(&type_a(2), &generate_crystal(2, &Weight(vec![1, 0]), 10)?, &Word::new(vec![1, 2, 1]))?;
    let table: HashMap<Vec<i64>, Vec<i64>> = report.rows.iter().map(|r| (r.t.clone(), r.t_prime.clone())).collect();
    let fixture = [([0, 0, 0], [1, 0, 1]), ([1, 0, 0], [0, 0, 1]), ([0, 1, 1], [0, 0, 0])];
    let fixture_ok = table.len() == 3 && fixture.iter().all(|(t, tp)| table.get(&t.to_vec()) == Some(&tp.to_vec()));
    if !fixture_ok {
        failed.push(format!("A2 w1 table {table:?}"));
    }
    Ok((failed.is_empty(), format!("{reports} (crystal, word) reports plus the A2 w1 table, failures: {failed:?}")))
}

fn criterion7() -> Outcome {
    let mut checks = 0;
    let mut failed = Vec::new();
    let mut transitions: HashMap<(String, usize, usize), Transition> = HashMap::new();
    for (d, g, words) in corollary_cases()? {
        let strings: Vec<Vec<Vec<i64>>> = words
            .iter()
            .map(|w| g.vertices().iter().map(|b| string_extract(b, w)).collect())
            .collect::<Result<_>>()?;
        for a in 0..words.len() {
            for b in 0..words.len() {
                let key = (d.name(), a, b);
                if !transitions.contains_key(&key) {
                    transitions.insert(key.clone(), Transition::new(&d, Side::String, &words[a], &words[b])?);
                }
                let tr = &transitions[&key];
                for (src, dst) in strings[a].iter().zip(&strings[b]) {
                    checks += 1;
                    if tr.apply(src)? != *dst {
                        failed.push(format!("{} {:?} {} -> {}", d.name(), g.lambda().0, words[a], words[b]));
                        break;
                    }
                }
            }
        }
    }
    Ok((failed.is_empty(), format!("{checks} element checks, failures: {failed:?}")))
}

fn criterion8() -> Outcome {
    let a1 = type_a(1);
    let word = Word::new(vec![1]);
    let mut failed = Vec::new();
    for m in 0..=10 {
        let g = generate_crystal(1, &Weight(vec![m]), 100)?;
        let report = verify_corollary_on(&a1, &g, &word)?;
        let mut table: Vec<(i64, i64)> = report.rows.iter().map(|r| (r.t[0], r.t_prime[0])).collect();
        table.sort();
        let oracle: Vec<(i64, i64)> = (0..=m).map(|t| (t, m - t)).collect();
        let pointwise = (0..=m).all(|t| phi_map(&a1, &word, &word, &Weight(vec![m]), &[t]).ok() == Some(vec![m - t]));
        if table != oracle || !pointwise || !report.pass() {
            failed.push(m);
        }
    }
    Ok((failed.is_empty(), format!("m = 0..10, failing m: {failed:?}")))
}

fn criterion9(cfg: &SuiteConfig) -> Outcome {
    let kinds = [
        MoveKind::Commuting,
        MoveKind::A2,
        MoveKind::B2 { short_first: true },
        MoveKind::B2 { short_first: false },
    ];
    let mut failed = Vec::new();
    let mut checks = 0;
    for kind in kinds {
        for side in [Side::Lusztig, Side::String] {
            let piece = tropical_piece(kind, side)?;
            let n = piece.pl.arity;
            let normalized = PlMap::tropicalize(&piece.normalized, n);
            let mut bad = false;
            for_each_box_point(n, -cfg.box_max, cfg.box_max, 1, |t| {
                checks += 1;
                bad |= pl_eval(&piece.pl, t).ok() != pl_eval(&normalized, t).ok();
            });
            if bad {
                failed.push(format!("{kind:?}/{side:?}"));
            }
        }
    }
    Ok((failed.is_empty(), format!("8 pieces on [-M, M]^N grids, {checks} points, failures: {failed:?}")))
}
