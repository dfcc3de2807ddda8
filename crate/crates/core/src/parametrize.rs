//! Piecewise-linear side: transition maps between parametrizations, the
//! tropical `zeta`, anchor constants, the map `Phi_lambda` in coordinates,
//! and the affine formula for the Schützenberger involution.

use std::collections::HashMap;
use std::ops::Range;
use std::sync::{Arc, Mutex, OnceLock};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cartan::{BraidMove, CartanDatum, Series, Weight, Word};
use crate::crystal::{generate_crystal, string_extract, Tableau, DEFAULT_CRYSTAL_BOUND};
use crate::error::{Error, Result};
use crate::lifting::{solve_rank2_move, MoveKind, Side};
use crate::poly::RatFunc;
use crate::tropical::{pl_compose, sf_normalize, AffineForm, PlComponent, PlMap, SfExpr};

/// Lusztig data of a canonical-basis element relative to a reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LusztigParam {
    pub word: Word,
    pub t: Vec<i64>,
}

/// String data of a canonical-basis element relative to a reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StringParam {
    pub word: Word,
    pub t: Vec<i64>,
}

fn check_param(word: &Word, t: &[i64]) -> Result<()> {
    if word.len() != t.len() {
        return Err(Error::LengthMismatch { expected: word.len(), found: t.len() });
    }
    if let Some(k) = t.iter().position(|&x| x < 0) {
        return Err(Error::NonPositiveParameter { index: k + 1 });
    }
    Ok(())
}

impl LusztigParam {
    pub fn new(word: Word, t: Vec<i64>) -> Result<LusztigParam> {
        check_param(&word, &t)?;
        Ok(LusztigParam { word, t })
    }
}

impl StringParam {
    pub fn new(word: Word, t: Vec<i64>) -> Result<StringParam> {
        check_param(&word, &t)?;
        Ok(StringParam { word, t })
    }
}

/// `t -> l + M t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineMap {
    pub l: Vec<i64>,
    pub m: Vec<Vec<i64>>,
}

impl AffineMap {
    pub fn apply(&self, t: &[i64]) -> Vec<i64> {
        self.m.iter().zip(&self.l).map(|(row, c)| c + row.iter().zip(t).map(|(a, x)| a * x).sum::<i64>()).collect()
    }

    pub fn from_forms(forms: &[AffineForm]) -> AffineMap {
        AffineMap { l: forms.iter().map(|f| f.constant).collect(), m: forms.iter().map(|f| f.coeffs.clone()).collect() }
    }

    pub fn forms(&self) -> Vec<AffineForm> {
        self.m.iter().zip(&self.l).map(|(row, &c)| AffineForm { coeffs: row.clone(), constant: c }).collect()
    }

    pub fn to_pl_map(&self) -> PlMap {
        PlMap::from_affine(self.forms())
    }

    pub fn with_constant(&self, l: Vec<i64>) -> AffineMap {
        AffineMap { l, m: self.m.clone() }
    }
}

/// A rank-2 move in three guises: the solved expression in nested form, its
/// normalized (expanded numerator over expanded denominator) form, and the
/// tropicalization used by the transition maps.
#[derive(Debug, Clone)]
pub struct TropicalPiece {
    pub kind: MoveKind,
    pub side: Side,
    pub original: Vec<SfExpr>,
    pub normalized: Vec<SfExpr>,
    pub pl: PlMap,
    flat: FlatPiece,
}

/// `pl` laid out contiguously for hot evaluation loops: each component is a
/// pair of ranges into `forms` (the `min` over positive and negative parts).
#[derive(Debug, Clone)]
struct FlatPiece {
    comps: Vec<(Range<usize>, Range<usize>)>,
    forms: Vec<([i64; 6], i64)>,
}

impl FlatPiece {
    fn new(pl: &PlMap) -> FlatPiece {
        assert!(pl.arity <= 6, "rank-2 windows have at most six letters");
        let mut forms = Vec::new();
        let mut push = |fs: &[AffineForm]| {
            let start = forms.len();
            for f in fs {
                let mut c = [0; 6];
                c[..f.coeffs.len()].copy_from_slice(&f.coeffs);
                forms.push((c, f.constant));
            }
            start..forms.len()
        };
        let comps = pl.components.iter().map(|c| (push(c.pos()), push(c.neg()))).collect();
        FlatPiece { comps, forms }
    }

    fn min_over(&self, range: &Range<usize>, x: &[i64; 6]) -> i64 {
        self.forms[range.clone()]
            .iter()
            .map(|(c, k)| c.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() + k)
            .min()
            .expect("forms are nonempty")
    }

    fn eval_into(&self, window: &mut [i64]) {
        let mut x = [0; 6];
        x[..window.len()].copy_from_slice(window);
        for (slot, (pos, neg)) in window.iter_mut().zip(&self.comps) {
            *slot = self.min_over(pos, &x) - self.min_over(neg, &x);
        }
    }
}

/// Cached tropical piece for a move kind (already in the dual picture: the
/// caller picks the kind from the transposed Cartan pair).
pub fn tropical_piece(kind: MoveKind, side: Side) -> Result<Arc<TropicalPiece>> {
    static CACHE: OnceLock<Mutex<HashMap<(MoveKind, Side), Arc<TropicalPiece>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cache lock").get(&(kind, side)) {
        return Ok(p.clone());
    }
    let sol = solve_rank2_move(kind, side)?;
    let n = sol.map.arity;
    let original: Vec<SfExpr> = sol.map.components.iter().map(|c| SfExpr::from_ratfunc(c, true)).collect::<Result<_>>()?;
    let normalized: Vec<SfExpr> = original
        .iter()
        .map(|e| {
            let (p, q) = sf_normalize(e, n);
            SfExpr::from_ratfunc(&RatFunc::new_unreduced(p, q), false)
        })
        .collect::<Result<_>>()?;
    let pl = PlMap::tropicalize(&original, n);
    let flat = FlatPiece::new(&pl);
    let piece = Arc::new(TropicalPiece { kind, side, original, normalized, pl, flat });
    cache.lock().expect("cache lock").insert((kind, side), piece.clone());
    Ok(piece)
}

/// Kind of the dual move: letters `i, j` of `datum` behave like the pair
/// `(a_ji, a_ij)` after transposition.
pub fn dual_move_kind(datum: &CartanDatum, mv: &BraidMove) -> Result<MoveKind> {
    MoveKind::from_pair(datum.a(mv.second, mv.first), datum.a(mv.first, mv.second))
}

/// A transition map with its braid path resolved, reusable across points.
#[derive(Debug, Clone)]
pub struct Transition {
    pub side: Side,
    pub from: Word,
    pub to: Word,
    steps: Vec<(BraidMove, Arc<TropicalPiece>)>,
}

impl Transition {
    pub fn new(datum: &CartanDatum, side: Side, from: &Word, to: &Word) -> Result<Transition> {
        let steps = datum
            .braid_path(from, to)?
            .into_iter()
            .map(|mv| Ok((mv, tropical_piece(dual_move_kind(datum, &mv)?, side)?)))
            .collect::<Result<_>>()?;
        Ok(Transition { side, from: from.clone(), to: to.clone(), steps })
    }

    pub fn moves(&self) -> Vec<BraidMove> {
        self.steps.iter().map(|(m, _)| *m).collect()
    }

    /// Evaluates the composite of local pieces on an integer point.
    pub fn apply(&self, t: &[i64]) -> Result<Vec<i64>> {
        if t.len() != self.from.len() {
            return Err(Error::LengthMismatch { expected: self.from.len(), found: t.len() });
        }
        let mut cur = t.to_vec();
        self.apply_in_place(&mut cur);
        Ok(cur)
    }

    /// Allocation-free variant for hot loops; `t` must have the word length.
    pub fn apply_in_place(&self, t: &mut [i64]) {
        debug_assert_eq!(t.len(), self.from.len());
        for (mv, piece) in &self.steps {
            piece.flat.eval_into(&mut t[mv.position - 1..mv.position - 1 + mv.len]);
        }
    }

    /// The composite as a single PL map (symbolic composition).
    pub fn to_pl_map(&self) -> Result<PlMap> {
        let n = self.from.len();
        let mut acc = PlMap::identity(n);
        for (mv, piece) in &self.steps {
            let start = mv.position - 1;
            let window: Vec<PlComponent> = (start..start + mv.len).map(|k| PlComponent::var(n, k + 1)).collect();
            let mut comps: Vec<PlComponent> = (1..=n).map(|k| PlComponent::var(n, k)).collect();
            for (k, c) in piece.pl.components.iter().enumerate() {
                comps[start + k] = c.substitute(&window);
            }
            acc = pl_compose(&PlMap::new(n, comps), &acc)?;
        }
        Ok(acc)
    }
}

pub fn transition_lusztig(datum: &CartanDatum, from: &Word, to: &Word, t: &[i64]) -> Result<Vec<i64>> {
    Transition::new(datum, Side::Lusztig, from, to)?.apply(t)
}

pub fn transition_string(datum: &CartanDatum, from: &Word, to: &Word, t: &[i64]) -> Result<Vec<i64>> {
    Transition::new(datum, Side::String, from, to)?.apply(t)
}

/// The closed form of `x_i^{-1} zeta x_{-i}` after transposing the Cartan
/// matrix: `t'_k = t_k^{-1} prod_{j>k} t_j^{-a[i_k][i_j]}`.
pub fn zeta_dual_expressions(datum: &CartanDatum, word: &Word) -> Result<Vec<SfExpr>> {
    datum.check_word(word)?;
    let w = &word.0;
    Ok((0..w.len())
        .map(|k| {
            let mut exps = vec![0i64; w.len()];
            exps[k] = -1;
            for j in k + 1..w.len() {
                exps[j] = -datum.a(w[k], w[j]);
            }
            SfExpr::laurent_monomial(&exps)
        })
        .collect())
}

/// Tropicalized closed form; each component must come out affine.
pub fn zeta_trop(datum: &CartanDatum, word: &Word) -> Result<AffineMap> {
    datum.require_longest(word)?;
    let pl = PlMap::tropicalize(&zeta_dual_expressions(datum, word)?, word.len());
    let forms = pl.as_affine().ok_or_else(|| Error::NotSubtractionFree("tropical zeta is not affine".into()))?;
    Ok(AffineMap::from_forms(&forms))
}

/// `-(I + U)` with `U[k][j] = a[i_k][i_j]` for `j > k`, written down directly.
pub fn zeta_trop_direct(datum: &CartanDatum, word: &Word) -> AffineMap {
    let w = &word.0;
    let n = w.len();
    let m = (0..n)
        .map(|k| (0..n).map(|j| if j == k { -1 } else if j > k { -datum.a(w[k], w[j]) } else { 0 }).collect())
        .collect();
    AffineMap { l: vec![0; n], m }
}

fn require_type_a(datum: &CartanDatum) -> Result<()> {
    if datum.series() != Series::A {
        return Err(Error::UnsupportedType(datum.name()));
    }
    Ok(())
}

/// `l = (I + U) m` with `m` the string data of the lowest-weight element.
pub fn anchor_from_lowest(datum: &CartanDatum, word: &Word, lowest: &Tableau) -> Result<Vec<i64>> {
    let m = string_extract(lowest, word)?;
    let w = &word.0;
    Ok((0..w.len()).map(|k| m[k] + (k + 1..w.len()).map(|j| datum.a(w[k], w[j]) * m[j]).sum::<i64>()).collect())
}

/// Lusztig data of `Phi_lambda(v_lambda)` relative to `word` (type A).
pub fn anchor_constants(datum: &CartanDatum, lambda: &Weight, word: &Word) -> Result<Vec<i64>> {
    require_type_a(datum)?;
    datum.require_longest(word)?;
    let lowest = Tableau::lowest(datum.rank(), lambda)?;
    anchor_from_lowest(datum, word, &lowest)
}

/// `Phi` in coordinates with a given anchor: Lusztig transition `i' -> i`
/// after the tropical zeta of `i'`.
pub fn phi_map_with_anchor(datum: &CartanDatum, i: &Word, i_prime: &Word, anchor: &[i64], t: &[i64]) -> Result<Vec<i64>> {
    let z = zeta_trop(datum, i_prime)?.apply(t);
    let r = Transition::new(datum, Side::Lusztig, i_prime, i)?.apply(&z)?;
    Ok(r.iter().zip(anchor).map(|(a, b)| a + b).collect())
}

/// The other factorization: tropical zeta of `i` after the string transition
/// `i' -> i`.
pub fn phi_map_via_string(datum: &CartanDatum, i: &Word, i_prime: &Word, anchor: &[i64], t: &[i64]) -> Result<Vec<i64>> {
    let s = Transition::new(datum, Side::String, i_prime, i)?.apply(t)?;
    let z = zeta_trop(datum, i)?.apply(&s);
    Ok(z.iter().zip(anchor).map(|(a, b)| a + b).collect())
}

/// `b_i^{-1} Phi_lambda c_{i'}^{-1}(t)`.
pub fn phi_map(datum: &CartanDatum, i: &Word, i_prime: &Word, lambda: &Weight, t: &[i64]) -> Result<Vec<i64>> {
    let anchor = anchor_constants(datum, lambda, i)?;
    phi_map_with_anchor(datum, i, i_prime, &anchor, t)
}

/// The whole composite as a PL map, anchor added to every component.
pub fn phi_pl_map(datum: &CartanDatum, i: &Word, i_prime: &Word, anchor: &[i64]) -> Result<PlMap> {
    datum.require_longest(i)?;
    let n = i.len();
    if anchor.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: anchor.len() });
    }
    let zeta = PlMap::tropicalize(&zeta_dual_expressions(datum, i_prime)?, n);
    let transition = Transition::new(datum, Side::Lusztig, i_prime, i)?.to_pl_map()?;
    let composite = pl_compose(&transition, &zeta)?;
    let shifted = composite
        .components
        .iter()
        .zip(anchor)
        .map(|(c, &l)| c.mul(&PlComponent::constant(n, l)))
        .collect();
    Ok(PlMap::new(n, shifted))
}

/// The Schützenberger involution in coordinates: string data relative to `i`
/// to Lusztig data relative to `i*`.
pub fn schutz_affine(datum: &CartanDatum, word: &Word, lambda: &Weight) -> Result<AffineMap> {
    let anchor = anchor_constants(datum, lambda, word)?;
    schutz_affine_with_anchor(datum, word, anchor)
}

pub fn schutz_affine_with_anchor(datum: &CartanDatum, word: &Word, anchor: Vec<i64>) -> Result<AffineMap> {
    if anchor.len() != word.len() {
        return Err(Error::LengthMismatch { expected: word.len(), found: anchor.len() });
    }
    Ok(zeta_trop(datum, word)?.with_constant(anchor))
}

/// Same vector, word relabelled letterwise by `*`.
pub fn star_relabel(datum: &CartanDatum, p: &LusztigParam) -> Result<LusztigParam> {
    Ok(LusztigParam { word: datum.star_word(&p.word)?, t: p.t.clone() })
}

/// Outcome of the three characterizing conditions.
#[derive(Debug, Clone, Serialize)]
pub struct PhiConditionsReport {
    pub lambda: Weight,
    pub words: Vec<Word>,
    pub points: usize,
    pub condition1: bool,
    pub condition2: bool,
    pub condition3: bool,
    pub routes_agree: bool,
    pub failures: Vec<String>,
}

impl PhiConditionsReport {
    pub fn pass(&self) -> bool {
        self.condition1 && self.condition2 && self.condition3 && self.routes_agree
    }
}

/// Checks conditions (1)-(3) on string data of elements of `B(lambda)`
/// (all of them, or `samples` seeded ones if the crystal is larger).
///
/// Condition (2) is checked in the form
/// `Phi_{i,i'} = R_{i''}^{i} o Phi_{i'',i'} = Phi_{i,i''} o R_{-i'}^{-i''}`.
pub fn verify_phi_conditions(
    datum: &CartanDatum,
    lambda: &Weight,
    words: &[Word],
    samples: usize,
    seed: u64,
) -> Result<PhiConditionsReport> {
    require_type_a(datum)?;
    for w in words {
        datum.require_longest(w)?;
    }
    let graph = generate_crystal(datum.rank(), lambda, DEFAULT_CRYSTAL_BOUND)?;
    let mut elements: Vec<&Tableau> = graph.vertices().iter().collect();
    if elements.len() > samples {
        elements.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        elements.truncate(samples);
    }
    let anchors: Vec<Vec<i64>> = words.iter().map(|w| anchor_constants(datum, lambda, w)).collect::<Result<_>>()?;
    let mut lusztig = HashMap::new();
    let mut string = HashMap::new();
    for (a, wa) in words.iter().enumerate() {
        for (b, wb) in words.iter().enumerate() {
            lusztig.insert((a, b), Transition::new(datum, Side::Lusztig, wa, wb)?);
            string.insert((a, b), Transition::new(datum, Side::String, wa, wb)?);
        }
    }
    let zetas: Vec<AffineMap> = words.iter().map(|w| zeta_trop(datum, w)).collect::<Result<_>>()?;
    // Phi_{i,i'} with i = words[a], i' = words[b]
    let phi = |a: usize, b: usize, t: &[i64]| -> Result<Vec<i64>> {
        let r = lusztig[&(b, a)].apply(&zetas[b].apply(t))?;
        Ok(r.iter().zip(&anchors[a]).map(|(x, l)| x + l).collect())
    };
    let mut failures = Vec::new();
    let n = words.first().map_or(0, Word::len);

    let mut condition1 = true;
    for a in 0..words.len() {
        for b in 0..words.len() {
            if phi(a, b, &vec![0; n])? != anchors[a] {
                condition1 = false;
                failures.push(format!("(1) at {} <- {}", words[a], words[b]));
            }
        }
    }

    let mut condition2 = true;
    let mut routes_agree = true;
    for b in 0..words.len() {
        let points: Vec<Vec<i64>> = elements.iter().map(|e| string_extract(e, &words[b])).collect::<Result<_>>()?;
        for a in 0..words.len() {
            for t in &points {
                let direct = phi(a, b, t)?;
                let via_string = zetas[a].apply(&string[&(b, a)].apply(t)?);
                let alt: Vec<i64> = via_string.iter().zip(&anchors[a]).map(|(x, l)| x + l).collect();
                if alt != direct {
                    routes_agree = false;
                    failures.push(format!("routes differ at {} <- {}, t={t:?}", words[a], words[b]));
                }
                for c in 0..words.len() {
                    let left = lusztig[&(c, a)].apply(&phi(c, b, t)?)?;
                    let right = phi(a, c, &string[&(b, c)].apply(t)?)?;
                    if left != direct || right != direct {
                        condition2 = false;
                        failures.push(format!("(2) at {} <- {} via {}, t={t:?}", words[a], words[b], words[c]));
                    }
                }
            }
        }
    }

    let mut condition3 = true;
    for a in 0..words.len() {
        let points: Vec<Vec<i64>> = elements.iter().map(|e| string_extract(e, &words[a])).collect::<Result<_>>()?;
        for t in &points {
            let base = phi(a, a, t)?;
            for shift in 1..=3 {
                let mut moved = t.clone();
                moved[0] += shift;
                let image = phi(a, a, &moved)?;
                let ok = image[0] + moved[0] == base[0] + t[0] && image[1..] == base[1..];
                if !ok {
                    condition3 = false;
                    failures.push(format!("(3) at {}, t={t:?}, shift {shift}", words[a]));
                }
            }
        }
    }

    Ok(PhiConditionsReport {
        lambda: lambda.clone(),
        words: words.to_vec(),
        points: elements.len(),
        condition1,
        condition2,
        condition3,
        routes_agree,
        failures,
    })
}

#[cfg(test)]
mod tests;
