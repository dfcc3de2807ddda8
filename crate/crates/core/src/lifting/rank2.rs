//! Symbolic solution of the rank-2 braid moves.
//!
//! For a braid move `w -> w'` we solve `x_{w'}(s) = x_w(t)` (Lusztig side) or
//! `x_{-w'}(s) = x_{-w}(t)` (string side) for `s` as rational functions of
//! `t`, by eliminating one unknown at a time from the matrix entries. The
//! result is certified subtraction-free and checked as an exact identity.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{gauss_decompose, GroupMatrix, Realization};
use crate::cartan::Word;
use crate::error::{Error, Result};
use crate::poly::{Poly, RatFunc};
use crate::scalar::{Field, FromBigInt};

/// Which parametrization a transition map acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lusztig,
    String,
}

/// Local type of a braid move, read off the Cartan pair `(a_ij, a_ji)` of its
/// two letters `i` (first) and `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    Commuting,
    A2,
    B2 { short_first: bool },
    G2 { short_first: bool },
}

impl MoveKind {
    pub fn from_pair(a_ij: i64, a_ji: i64) -> Result<MoveKind> {
        Ok(match (a_ij, a_ji) {
            (0, 0) => MoveKind::Commuting,
            (-1, -1) => MoveKind::A2,
            (-2, -1) => MoveKind::B2 { short_first: true },
            (-1, -2) => MoveKind::B2 { short_first: false },
            (-3, -1) => MoveKind::G2 { short_first: true },
            (-1, -3) => MoveKind::G2 { short_first: false },
            _ => return Err(Error::InvalidCartanMatrix(format!("no rank-2 type for pair ({a_ij}, {a_ji})"))),
        })
    }

    /// Length of each side of the move.
    pub fn len(self) -> usize {
        match self {
            MoveKind::Commuting => 2,
            MoveKind::A2 => 3,
            MoveKind::B2 { .. } => 4,
            MoveKind::G2 { .. } => 6,
        }
    }

    /// Group, source word and target word used to solve the move.
    fn model(self) -> Result<(Realization, Word, Word)> {
        let alt = |a: usize, b: usize, n: usize| Word((0..n).map(|k| if k % 2 == 0 { a } else { b }).collect());
        Ok(match self {
            MoveKind::Commuting => (Realization::SpecialLinear { rank: 3 }, Word(vec![1, 3]), Word(vec![3, 1])),
            MoveKind::A2 => (Realization::SpecialLinear { rank: 2 }, alt(1, 2, 3), alt(2, 1, 3)),
            MoveKind::B2 { short_first } => {
                let (a, b) = if short_first { (1, 2) } else { (2, 1) };
                (Realization::Symplectic { short_letter: 1 }, alt(a, b, 4), alt(b, a, 4))
            }
            MoveKind::G2 { .. } => return Err(Error::UnsupportedRank2Type("G2".into())),
        })
    }
}

/// A tuple of rational functions in `arity` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMap {
    pub arity: usize,
    pub components: Vec<RatFunc>,
}

impl RationalMap {
    pub fn identity(arity: usize) -> RationalMap {
        RationalMap { arity, components: (0..arity).map(|k| RatFunc::var(arity, k)).collect() }
    }

    pub fn eval<F: Field + FromBigInt>(&self, point: &[F]) -> Result<Vec<F>> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: point.len() });
        }
        self.components.iter().map(|c| c.eval(point).ok_or(Error::DivisionByZero)).collect()
    }

    /// `self after inner`.
    pub fn compose(&self, inner: &RationalMap) -> RationalMap {
        assert_eq!(self.arity, inner.components.len());
        RationalMap { arity: inner.arity, components: self.components.iter().map(|c| c.compose(&inner.components)).collect() }
    }

    pub fn is_subtraction_free(&self) -> bool {
        self.components.iter().all(RatFunc::is_subtraction_free)
    }
}

/// A solved braid move together with the model it was solved in.
#[derive(Debug, Clone)]
pub struct Rank2Solution {
    pub kind: MoveKind,
    pub side: Side,
    pub realization: Realization,
    pub source: Word,
    pub target: Word,
    pub map: RationalMap,
}

impl Rank2Solution {
    fn side_matrix<F: Field>(&self, word: &Word, t: &[F]) -> Result<GroupMatrix<F>> {
        match self.side {
            Side::Lusztig => self.realization.x_word(word, t),
            Side::String => self.realization.x_minus_word_any(word, t),
        }
    }

    /// Exact symbolic check of `x_{w'}(map(t)) = x_w(t)`.
    pub fn check_identity_symbolic(&self) -> Result<bool> {
        let n = self.map.arity;
        let vars: Vec<RatFunc> = (0..n).map(|k| RatFunc::var(n, k)).collect();
        Ok(self.side_matrix(&self.source, &vars)? == self.side_matrix(&self.target, &self.map.components)?)
    }

    /// Check of the identity at one rational point; also requires the image
    /// to be positive when the point is.
    pub fn check_identity_at(&self, point: &[BigRational]) -> Result<bool> {
        let image = self.map.eval(point)?;
        let positive = point.iter().any(|p| *p <= BigRational::zero()) || image.iter().all(|v| *v > BigRational::zero());
        Ok(positive && self.side_matrix(&self.source, point)? == self.side_matrix(&self.target, &image)?)
    }
}

fn cache() -> &'static Mutex<HashMap<(MoveKind, Side), Arc<Rank2Solution>>> {
    static CACHE: OnceLock<Mutex<HashMap<(MoveKind, Side), Arc<Rank2Solution>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Solves (once, then cached) the braid move of the given kind.
pub fn solve_rank2_move(kind: MoveKind, side: Side) -> Result<Arc<Rank2Solution>> {
    if let Some(sol) = cache().lock().expect("cache lock").get(&(kind, side)) {
        return Ok(sol.clone());
    }
    let (realization, source, target) = kind.model()?;
    let n = source.len();
    let vars: Vec<RatFunc> = (0..n).map(|k| RatFunc::var(n, k)).collect();
    let components = match side {
        Side::Lusztig => {
            let goal = realization.x_word(&source, &vars)?;
            solve_unipotent(n, &goal, |s| realization.x_word(&target, s))?
        }
        Side::String => {
            let (lower, _, _) = gauss_decompose(&realization.x_minus_word_any(&source, &vars)?)?;
            let u = solve_unipotent(n, &lower, |s| realization.y_word(&target, s))?;
            // t'_k = u'_k prod_{j<k} t'_j^{-a[w'_j][w'_k]}
            let datum = realization.cartan();
            let w = &target.0;
            let mut t: Vec<RatFunc> = Vec::with_capacity(n);
            for k in 0..n {
                let v = (0..k).fold(u[k].clone(), |acc, j| &acc * &t[j].pow(-datum.a(w[j], w[k])));
                t.push(v);
            }
            t
        }
    };
    let sol = Rank2Solution { kind, side, realization, source, target, map: RationalMap { arity: n, components } };
    if !sol.map.is_subtraction_free() {
        let bad = sol.map.components.iter().find(|c| !c.is_subtraction_free()).expect("some component");
        return Err(Error::NotSubtractionFree(bad.to_string()));
    }
    if !sol.check_identity_symbolic()? {
        return Err(Error::SolveStuck(format!("{kind:?}/{side:?}: identity check failed")));
    }
    let sol = Arc::new(sol);
    cache().lock().expect("cache lock").insert((kind, side), sol.clone());
    Ok(sol)
}

/// Solves `build(s) = goal` for `m` unknowns `s`, where `build` is a product
/// of unipotent generators (so its entries are polynomial in `s`) and `goal`
/// has entries in `n` variables.
fn solve_unipotent(
    n: usize,
    goal: &GroupMatrix<RatFunc>,
    build: impl Fn(&[RatFunc]) -> Result<GroupMatrix<RatFunc>>,
) -> Result<Vec<RatFunc>> {
    let m = n;
    let total = n + m;
    let unknowns: Vec<RatFunc> = (0..m).map(|k| RatFunc::var(total, n + k)).collect();
    let generic = build(&unknowns)?;
    let dim = generic.dim();
    let mut solved: Vec<Option<RatFunc>> = vec![None; m];
    while solved.iter().any(Option::is_none) {
        let subs: Vec<RatFunc> = (0..total)
            .map(|k| match k.checked_sub(n) {
                Some(u) => solved[u].as_ref().map(|v| v.extend_vars(total)).unwrap_or_else(|| RatFunc::var(total, k)),
                None => RatFunc::var(total, k),
            })
            .collect();
        let free: Vec<usize> = (0..m).filter(|&u| solved[u].is_none()).map(|u| n + u).collect();
        // Equations G = 0, collected by monomials in the free unknowns.
        let mut monomial_eqs: Vec<(Vec<u32>, RatFunc)> = Vec::new();
        let mut progress = None;
        'entries: for r in 0..dim {
            for c in 0..dim {
                if r == c {
                    continue;
                }
                let lhs = generic.get(r, c).compose(&subs);
                let rhs = goal.get(r, c).extend_vars(total);
                let g = &(lhs.numer() * rhs.denom()) - &(rhs.numer() * lhs.denom());
                if g.is_zero() {
                    continue;
                }
                let parts = g.collect_by(&free);
                let nonconst: Vec<_> = parts.iter().filter(|(e, _)| e.iter().any(|&x| x > 0)).collect();
                if nonconst.is_empty() {
                    continue;
                }
                let constant = parts
                    .iter()
                    .find(|(e, _)| e.iter().all(|&x| x == 0))
                    .map(|(_, p)| p.clone())
                    .unwrap_or_else(|| Poly::zero(total));
                if nonconst.len() == 1 {
                    let (exps, coeff) = nonconst[0];
                    // coeff * s^exps + constant = 0
                    let value = RatFunc::new(-&constant, coeff.clone());
                    if exps.iter().sum::<u32>() == 1 {
                        let u = exps.iter().position(|&x| x == 1).expect("unit exponent");
                        progress = Some((free[u] - n, value));
                        break 'entries;
                    }
                    monomial_eqs.push((exps.clone(), value));
                }
            }
        }
        if progress.is_none() {
            progress = ratio_rule(&monomial_eqs).map(|(u, v)| (free[u] - n, v));
        }
        let Some((u, value)) = progress else {
            return Err(Error::SolveStuck(format!("{} unknowns left", free.len())));
        };
        solved[u] = Some(value.truncate_vars(n));
    }
    Ok(solved.into_iter().map(|v| v.expect("all solved")).collect())
}

/// Two monomial equations `s^a = v`, `s^b = w` with `b - a` a unit vector
/// `e_k` give `s_k = w / v`.
fn ratio_rule(eqs: &[(Vec<u32>, RatFunc)]) -> Option<(usize, RatFunc)> {
    let by_exps: BTreeMap<&Vec<u32>, &RatFunc> = eqs.iter().map(|(e, v)| (e, v)).collect();
    for (a, va) in &by_exps {
        for (b, vb) in &by_exps {
            let diff: Option<Vec<u32>> = a.iter().zip(b.iter()).map(|(x, y)| y.checked_sub(*x)).collect();
            let Some(diff) = diff else { continue };
            if diff.iter().sum::<u32>() == 1 && !va.is_zero() {
                let k = diff.iter().position(|&x| x == 1).expect("unit");
                return Some((k, *vb / *va));
            }
        }
    }
    None
}
