//! Matrix realization of the geometric lifting.
//!
//! Type `A_n` is realized in `SL_{n+1}` by elementary bidiagonal matrices;
//! the rank-2 types `B2`/`C2` are realized in a 4-dimensional symplectic
//! group. All operations are generic over [`Field`], so the same code runs on
//! exact rationals and on symbolic rational functions.

mod matrix;
mod rank2;

pub use matrix::GroupMatrix;
pub use rank2::{solve_rank2_move, MoveKind, Rank2Solution, RationalMap, Side};

use num_rational::BigRational;
use serde::Serialize;

use crate::cartan::{CartanDatum, Series, Word};
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// One generator of the group, as it appears in a factored product.
#[derive(Debug, Clone, PartialEq)]
pub enum Factor<F> {
    X(usize, F),
    Y(usize, F),
    /// `t^{alpha_i^vee}`
    Torus(usize, F),
}

/// A faithful matrix representation carrying the Chevalley generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Realization {
    /// `SL_{rank+1}`, `x_i(t) = I + t E_{i,i+1}`.
    SpecialLinear { rank: usize },
    /// `Sp_4` inside `SL_4`: the short-root generator is `I + t(E_12 + E_34)`,
    /// the long-root one `I + t E_23`. `short_letter` says which word letter
    /// (1 or 2) names the short simple root.
    Symplectic { short_letter: usize },
}

impl Realization {
    pub fn for_datum(datum: &CartanDatum) -> Result<Realization> {
        if datum.series() == Series::A {
            return Ok(Realization::SpecialLinear { rank: datum.rank() });
        }
        if datum.rank() == 2 {
            match (datum.a(1, 2), datum.a(2, 1)) {
                (-2, -1) => return Ok(Realization::Symplectic { short_letter: 1 }),
                (-1, -2) => return Ok(Realization::Symplectic { short_letter: 2 }),
                _ => {}
            }
        }
        Err(Error::UnsupportedRealization(datum.name()))
    }

    pub fn rank(&self) -> usize {
        match self {
            Realization::SpecialLinear { rank } => *rank,
            Realization::Symplectic { .. } => 2,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Realization::SpecialLinear { rank } => rank + 1,
            Realization::Symplectic { .. } => 4,
        }
    }

    /// The Cartan datum whose commutation relations the generators satisfy.
    pub fn cartan(&self) -> CartanDatum {
        match self {
            Realization::SpecialLinear { rank } => CartanDatum::new(Series::A, *rank).expect("rank >= 1"),
            Realization::Symplectic { short_letter: 1 } => CartanDatum::new(Series::C, 2).expect("C2"),
            Realization::Symplectic { .. } => CartanDatum::new(Series::B, 2).expect("B2"),
        }
    }

    fn check_letter(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank() {
            Err(Error::IndexOutOfRange { index: i, rank: self.rank() })
        } else {
            Ok(())
        }
    }

    /// Matrix positions `(row, col)` of the raising operator for letter `i`.
    fn raising_positions(&self, i: usize) -> Vec<(usize, usize)> {
        match self {
            Realization::SpecialLinear { .. } => vec![(i - 1, i)],
            Realization::Symplectic { short_letter } if i == *short_letter => vec![(0, 1), (2, 3)],
            Realization::Symplectic { .. } => vec![(1, 2)],
        }
    }

    /// Diagonal of `t^{alpha_i^vee}` as exponents of `t`.
    fn coroot_exponents(&self, i: usize) -> Vec<i64> {
        let mut out = vec![0; self.dim()];
        for (r, c) in self.raising_positions(i) {
            out[r] += 1;
            out[c] -= 1;
        }
        out
    }

    pub fn x<F: Field>(&self, i: usize, t: F) -> Result<GroupMatrix<F>> {
        self.check_letter(i)?;
        let mut m = GroupMatrix::identity(self.dim());
        for (r, c) in self.raising_positions(i) {
            m.set(r, c, t.clone());
        }
        Ok(m)
    }

    pub fn y<F: Field>(&self, i: usize, t: F) -> Result<GroupMatrix<F>> {
        self.check_letter(i)?;
        let mut m = GroupMatrix::identity(self.dim());
        for (r, c) in self.raising_positions(i) {
            m.set(c, r, t.clone());
        }
        Ok(m)
    }

    pub fn torus<F: Field>(&self, i: usize, t: F) -> Result<GroupMatrix<F>> {
        self.check_letter(i)?;
        if t.is_zero() {
            return Err(Error::ZeroTorusParameter);
        }
        let mut m = GroupMatrix::identity(self.dim());
        for (k, e) in self.coroot_exponents(i).into_iter().enumerate() {
            m.set(k, k, t.powi(e));
        }
        Ok(m)
    }

    pub fn factor_matrix<F: Field>(&self, factor: &Factor<F>) -> Result<GroupMatrix<F>> {
        match factor {
            Factor::X(i, t) => self.x(*i, t.clone()),
            Factor::Y(i, t) => self.y(*i, t.clone()),
            Factor::Torus(i, t) => self.torus(*i, t.clone()),
        }
    }

    pub fn product<F: Field>(&self, factors: &[Factor<F>]) -> Result<GroupMatrix<F>> {
        factors
            .iter()
            .try_fold(GroupMatrix::identity(self.dim()), |acc, f| Ok(acc.mul(&self.factor_matrix(f)?)))
    }

    pub fn x_word<F: Field>(&self, word: &Word, t: &[F]) -> Result<GroupMatrix<F>> {
        check_len(word, t)?;
        let factors: Vec<_> = word.0.iter().zip(t).map(|(&i, s)| Factor::X(i, s.clone())).collect();
        self.product(&factors)
    }

    pub fn y_word<F: Field>(&self, word: &Word, t: &[F]) -> Result<GroupMatrix<F>> {
        check_len(word, t)?;
        let factors: Vec<_> = word.0.iter().zip(t).map(|(&i, s)| Factor::Y(i, s.clone())).collect();
        self.product(&factors)
    }

    /// Factors of `x_{-i}(t) = y_{i_1}(t_1) t_1^{-alpha_{i_1}^vee} ...`.
    pub fn x_minus_factors<F: Field>(&self, word: &Word, t: &[F]) -> Result<Vec<Factor<F>>> {
        check_len(word, t)?;
        let mut factors = Vec::with_capacity(2 * t.len());
        for (&i, s) in word.0.iter().zip(t) {
            if s.is_zero() {
                return Err(Error::ZeroTorusParameter);
            }
            factors.push(Factor::Y(i, s.clone()));
            factors.push(Factor::Torus(i, s.recip()));
        }
        Ok(factors)
    }

    /// `x_{-i}(t)` over any field; parameters need only be nonzero.
    pub fn x_minus_word_any<F: Field>(&self, word: &Word, t: &[F]) -> Result<GroupMatrix<F>> {
        self.product(&self.x_minus_factors(word, t)?)
    }

    /// `x_{-i}(t)` with the positivity precondition enforced.
    pub fn x_minus_word<S: Scalar>(&self, word: &Word, t: &[S]) -> Result<GroupMatrix<S>> {
        if let Some(k) = t.iter().position(|s| *s <= S::zero()) {
            return Err(Error::NonPositiveParameter { index: k + 1 });
        }
        self.x_minus_word_any(word, t)
    }
}

fn check_len<F>(word: &Word, t: &[F]) -> Result<()> {
    if word.len() != t.len() {
        return Err(Error::LengthMismatch { expected: word.len(), found: t.len() });
    }
    Ok(())
}

/// `x_i(t)` in `SL_{rank+1}`.
pub fn gen_x<F: Field>(rank: usize, i: usize, t: F) -> Result<GroupMatrix<F>> {
    Realization::SpecialLinear { rank }.x(i, t)
}

/// `y_i(t)` in `SL_{rank+1}`.
pub fn gen_y<F: Field>(rank: usize, i: usize, t: F) -> Result<GroupMatrix<F>> {
    Realization::SpecialLinear { rank }.y(i, t)
}

/// `t^{alpha_i^vee}` in `SL_{rank+1}`.
pub fn gen_torus<F: Field>(rank: usize, i: usize, t: F) -> Result<GroupMatrix<F>> {
    Realization::SpecialLinear { rank }.torus(i, t)
}

/// The automorphism `x -> x^{iota T}`, computed as `D (x^T)^{-1} D^{-1}` with
/// `D = diag(1, -1, 1, ...)`.
pub fn chevalley_omega<F: Field>(x: &GroupMatrix<F>) -> Result<GroupMatrix<F>> {
    let inv = x.inverse()?;
    let d = x.dim();
    let mut out = GroupMatrix::zero(d);
    for r in 0..d {
        for c in 0..d {
            let v = inv.get(c, r).clone();
            out.set(r, c, if (r + c) % 2 == 0 { v } else { -v });
        }
    }
    Ok(out)
}

/// `x -> x^{iota T}` on a factored product: `x_i <-> y_i`, torus inverted.
pub fn chevalley_omega_factors<F: Field>(factors: &[Factor<F>]) -> Vec<Factor<F>> {
    factors
        .iter()
        .map(|f| match f {
            Factor::X(i, t) => Factor::Y(*i, t.clone()),
            Factor::Y(i, t) => Factor::X(*i, t.clone()),
            Factor::Torus(i, t) => Factor::Torus(*i, t.recip()),
        })
        .collect()
}

/// `x = L H U` with `L` unipotent lower, `H` diagonal, `U` unipotent upper.
pub fn gauss_decompose<F: Field>(
    x: &GroupMatrix<F>,
) -> Result<(GroupMatrix<F>, GroupMatrix<F>, GroupMatrix<F>)> {
    let d = x.dim();
    let mut work = x.clone();
    let mut lower = GroupMatrix::identity(d);
    for k in 0..d {
        let pivot = work.get(k, k).clone();
        if pivot.is_zero() {
            return Err(Error::NotInG0(k + 1));
        }
        for r in k + 1..d {
            let f = work.get(r, k).clone() / pivot.clone();
            if f.is_zero() {
                continue;
            }
            for c in k..d {
                let v = work.get(r, c).clone() - f.clone() * work.get(k, c).clone();
                work.set(r, c, v);
            }
            lower.set(r, k, f);
        }
    }
    let mut diag = GroupMatrix::zero(d);
    let mut upper = GroupMatrix::identity(d);
    for k in 0..d {
        let p = work.get(k, k).clone();
        for c in k + 1..d {
            upper.set(k, c, work.get(k, c).clone() / p.clone());
        }
        diag.set(k, k, p);
    }
    Ok((lower, diag, upper))
}

/// `zeta(x) = [x^{iota T}]_+`.
pub fn zeta<F: Field>(x: &GroupMatrix<F>) -> Result<GroupMatrix<F>> {
    Ok(gauss_decompose(&chevalley_omega(x)?)?.2)
}

/// `t'_k = t_k^{-1} prod_{j>k} t_j^{-a[i_j][i_k]}`.
pub fn zeta_closed_form<F: Field>(datum: &CartanDatum, word: &Word, t: &[F]) -> Result<Vec<F>> {
    check_len(word, t)?;
    datum.check_word(word)?;
    let w = &word.0;
    Ok((0..w.len())
        .map(|k| {
            (k + 1..w.len()).fold(t[k].recip(), |acc, j| acc * t[j].powi(-datum.a(w[j], w[k])))
        })
        .collect())
}

/// Outcome of comparing `x_i(t')` from the closed form against
/// `zeta(x_{-i}(t))`.
#[derive(Debug, Clone, Serialize)]
pub struct ZetaReport {
    pub pass: bool,
    pub word: Word,
    #[serde(with = "crate::scalar::rational_vec")]
    pub t: Vec<BigRational>,
    #[serde(with = "crate::scalar::rational_vec")]
    pub t_prime: Vec<BigRational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_side: Option<GroupMatrix<BigRational>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta_side: Option<GroupMatrix<BigRational>>,
}

pub fn verify_zeta_formula(realization: &Realization, word: &Word, t: &[BigRational]) -> Result<ZetaReport> {
    let datum = realization.cartan();
    datum.require_longest(word)?;
    let t_prime = zeta_closed_form(&datum, word, t)?;
    let lhs = realization.x_word(word, &t_prime)?;
    let rhs = zeta(&realization.x_minus_word(word, t)?)?;
    let pass = lhs == rhs;
    Ok(ZetaReport {
        pass,
        word: word.clone(),
        t: t.to_vec(),
        t_prime,
        closed_form_side: (!pass).then_some(lhs),
        zeta_side: (!pass).then_some(rhs),
    })
}

#[cfg(test)]
mod tests;
