use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Poly, RatFunc};
use crate::scalar::{Field, FromBigInt, Scalar};

/// Subtraction-free rational expression. Variables are 1-based (`t1`, `t2`,
/// ...); constants are positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SfExpr {
    Var(usize),
    Const(BigInt),
    Add(Box<SfExpr>, Box<SfExpr>),
    Mul(Box<SfExpr>, Box<SfExpr>),
    Div(Box<SfExpr>, Box<SfExpr>),
    Pow(Box<SfExpr>, i64),
}

impl SfExpr {
    pub fn var(k: usize) -> SfExpr {
        assert!(k >= 1, "variables are 1-based");
        SfExpr::Var(k)
    }

    pub fn constant(c: impl Into<BigInt>) -> SfExpr {
        let c = c.into();
        assert!(c.is_positive(), "constants must be positive");
        SfExpr::Const(c)
    }

    pub fn add(a: SfExpr, b: SfExpr) -> SfExpr {
        SfExpr::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: SfExpr, b: SfExpr) -> SfExpr {
        SfExpr::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: SfExpr, b: SfExpr) -> SfExpr {
        SfExpr::Div(Box::new(a), Box::new(b))
    }

    pub fn pow(a: SfExpr, k: i64) -> SfExpr {
        SfExpr::Pow(Box::new(a), k)
    }

    /// Largest variable index occurring (0 for a constant expression).
    pub fn arity(&self) -> usize {
        match self {
            SfExpr::Var(k) => *k,
            SfExpr::Const(_) => 0,
            SfExpr::Add(a, b) | SfExpr::Mul(a, b) | SfExpr::Div(a, b) => a.arity().max(b.arity()),
            SfExpr::Pow(a, _) => a.arity(),
        }
    }

    /// `prod t_k^{e_k}`, the positive-exponent part over the negative one.
    pub fn laurent_monomial(exps: &[i64]) -> SfExpr {
        let side = |sign: i64| {
            exps.iter()
                .enumerate()
                .filter(|(_, &e)| e * sign > 0)
                .map(|(k, &e)| if e.abs() == 1 { SfExpr::Var(k + 1) } else { SfExpr::pow(SfExpr::Var(k + 1), e.abs()) })
                .reduce(SfExpr::mul)
        };
        match (side(1), side(-1)) {
            (Some(n), Some(d)) => SfExpr::div(n, d),
            (Some(n), None) => n,
            (None, Some(d)) => SfExpr::div(SfExpr::constant(1), d),
            (None, None) => SfExpr::constant(1),
        }
    }

    /// Evaluation without the positivity check; fails only on division by zero.
    pub fn eval_any<F: Field + FromBigInt>(&self, point: &[F]) -> Result<F> {
        Ok(match self {
            SfExpr::Var(k) => point
                .get(k - 1)
                .cloned()
                .ok_or(Error::ArityMismatch { expected: *k, found: point.len() })?,
            SfExpr::Const(c) => F::from_bigint(c),
            SfExpr::Add(a, b) => a.eval_any(point)? + b.eval_any(point)?,
            SfExpr::Mul(a, b) => a.eval_any(point)? * b.eval_any(point)?,
            SfExpr::Div(a, b) => {
                let d = b.eval_any(point)?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                a.eval_any(point)? / d
            }
            SfExpr::Pow(a, k) => {
                let v = a.eval_any(point)?;
                if *k < 0 && v.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                v.powi(*k)
            }
        })
    }

    /// Expanded sum of monomials; requires positive coefficients.
    pub fn from_poly(p: &Poly) -> Result<SfExpr> {
        check_positive(p)?;
        let mut terms = p.terms().collect::<Vec<_>>();
        terms.reverse();
        terms
            .into_iter()
            .map(|(e, c)| {
                let exps: Vec<i64> = e.iter().map(|&x| i64::from(x)).collect();
                let mono = SfExpr::laurent_monomial(&exps);
                if c.is_one() {
                    mono
                } else if exps.iter().all(|&x| x == 0) {
                    SfExpr::Const(c.clone())
                } else {
                    SfExpr::mul(SfExpr::Const(c.clone()), mono)
                }
            })
            .reduce(SfExpr::add)
            .ok_or_else(|| Error::NotSubtractionFree("zero polynomial".into()))
    }

    /// Nested Horner form: `p = p_0 + t_v * p_1` recursively on the first
    /// variable involved. Requires positive coefficients.
    pub fn horner(p: &Poly) -> Result<SfExpr> {
        check_positive(p)?;
        if p.is_zero() {
            return Err(Error::NotSubtractionFree("zero polynomial".into()));
        }
        if p.num_terms() == 1 {
            return SfExpr::from_poly(p);
        }
        let v = (0..p.nvars()).find(|&k| p.involves(k)).expect("non-constant");
        let n = p.nvars();
        let without = Poly::from_terms(n, p.terms().filter(|(e, _)| e[v] == 0).map(|(e, c)| (e.clone(), c.clone())));
        let with = Poly::from_terms(
            n,
            p.terms().filter(|(e, _)| e[v] > 0).map(|(e, c)| {
                let mut e = e.clone();
                e[v] -= 1;
                (e, c.clone())
            }),
        );
        let tail = SfExpr::mul(SfExpr::Var(v + 1), SfExpr::horner(&with)?);
        Ok(if without.is_zero() { tail } else { SfExpr::add(SfExpr::horner(&without)?, tail) })
    }

    /// `num / den` as an expression, expanded or in Horner form.
    pub fn from_ratfunc(r: &RatFunc, nested: bool) -> Result<SfExpr> {
        let conv = |p: &Poly| if nested { SfExpr::horner(p) } else { SfExpr::from_poly(p) };
        let num = conv(r.numer())?;
        if r.denom().is_one() {
            return Ok(num);
        }
        Ok(SfExpr::div(num, conv(r.denom())?))
    }

    fn precedence(&self) -> u8 {
        match self {
            SfExpr::Add(..) => 1,
            SfExpr::Mul(..) | SfExpr::Div(..) => 2,
            SfExpr::Pow(..) => 3,
            SfExpr::Var(_) | SfExpr::Const(_) => 4,
        }
    }
}

fn check_positive(p: &Poly) -> Result<()> {
    if p.has_positive_coefficients() {
        Ok(())
    } else {
        Err(Error::NotSubtractionFree(p.to_string()))
    }
}

impl fmt::Display for SfExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &SfExpr, min: u8, f: &mut fmt::Formatter<'_>| {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            SfExpr::Var(k) => write!(f, "t{k}"),
            SfExpr::Const(c) => write!(f, "{c}"),
            SfExpr::Add(a, b) => {
                wrap(a, 1, f)?;
                write!(f, " + ")?;
                wrap(b, 1, f)
            }
            SfExpr::Mul(a, b) => {
                wrap(a, 2, f)?;
                write!(f, "*")?;
                wrap(b, 3, f)
            }
            SfExpr::Div(a, b) => {
                wrap(a, 2, f)?;
                write!(f, "/")?;
                wrap(b, 3, f)
            }
            // the grammar has no negative exponents, so write them as 1/x^k
            SfExpr::Pow(a, k) if *k < 0 => {
                write!(f, "(1/")?;
                wrap(a, 4, f)?;
                write!(f, "^{})", -k)
            }
            SfExpr::Pow(a, k) => {
                wrap(a, 4, f)?;
                write!(f, "^{k}")
            }
        }
    }
}

/// Parses the grammar
/// `expr := term ('+' term)*`, `term := factor (('*'|'/') factor)*`,
/// `factor := atom ('^' int)?`, `atom := 't'k | posint | '(' expr ')'`.
pub fn parse_sf(text: &str) -> Result<SfExpr> {
    if let Some(pos) = text.find('-') {
        return Err(Error::SubtractionForbidden { pos });
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<SfExpr> {
        let mut e = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            e = SfExpr::add(e, self.term()?);
        }
        Ok(e)
    }

    fn term(&mut self) -> Result<SfExpr> {
        let mut e = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    e = SfExpr::mul(e, self.factor()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    e = SfExpr::div(e, self.factor()?);
                }
                _ => return Ok(e),
            }
        }
    }

    fn factor(&mut self) -> Result<SfExpr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.integer()?;
            let k = i64::try_from(k).map_err(|_| self.error("exponent too large"))?;
            return Ok(SfExpr::pow(base, k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<SfExpr> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                let k = self.integer()?;
                if k.is_zero() {
                    return Err(self.error("variables start at t1"));
                }
                usize::try_from(k).map(SfExpr::Var).map_err(|_| self.error("variable index too large"))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let c = self.integer()?;
                if c.is_zero() {
                    self.pos = start;
                    return Err(self.error("constants must be positive"));
                }
                Ok(SfExpr::Const(c))
            }
            Some(_) => Err(self.error("expected variable, constant or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }
}

/// Exact evaluation at a strictly positive point.
pub fn sf_eval<S: Scalar>(e: &SfExpr, point: &[S]) -> Result<S> {
    if let Some(k) = point.iter().position(|x| *x <= S::zero()) {
        return Err(Error::NonPositivePoint(k + 1));
    }
    e.eval_any(point)
}

/// Substitutes `g[k-1]` for `t_k`.
pub fn sf_compose(f: &SfExpr, g: &[SfExpr]) -> Result<SfExpr> {
    if f.arity() > g.len() {
        return Err(Error::ArityMismatch { expected: f.arity(), found: g.len() });
    }
    Ok(substitute(f, g))
}

fn substitute(f: &SfExpr, g: &[SfExpr]) -> SfExpr {
    match f {
        SfExpr::Var(k) => g[k - 1].clone(),
        SfExpr::Const(_) => f.clone(),
        SfExpr::Add(a, b) => SfExpr::add(substitute(a, g), substitute(b, g)),
        SfExpr::Mul(a, b) => SfExpr::mul(substitute(a, g), substitute(b, g)),
        SfExpr::Div(a, b) => SfExpr::div(substitute(a, g), substitute(b, g)),
        SfExpr::Pow(a, k) => SfExpr::pow(substitute(a, g), *k),
    }
}

/// Clears denominators bottom-up, never cancelling, so both polynomials keep
/// nonnegative coefficients. Polynomials are in `nvars` variables, which must
/// cover the expression's arity.
pub fn sf_normalize(e: &SfExpr, nvars: usize) -> (Poly, Poly) {
    assert!(e.arity() <= nvars, "nvars too small");
    match e {
        SfExpr::Var(k) => (Poly::var(nvars, k - 1), Poly::one(nvars)),
        SfExpr::Const(c) => (Poly::constant(nvars, c.clone()), Poly::one(nvars)),
        SfExpr::Add(a, b) => {
            let ((p1, q1), (p2, q2)) = (sf_normalize(a, nvars), sf_normalize(b, nvars));
            (&(&p1 * &q2) + &(&p2 * &q1), &q1 * &q2)
        }
        SfExpr::Mul(a, b) => {
            let ((p1, q1), (p2, q2)) = (sf_normalize(a, nvars), sf_normalize(b, nvars));
            (&p1 * &p2, &q1 * &q2)
        }
        SfExpr::Div(a, b) => {
            let ((p1, q1), (p2, q2)) = (sf_normalize(a, nvars), sf_normalize(b, nvars));
            (&p1 * &q2, &q1 * &p2)
        }
        SfExpr::Pow(a, k) => {
            let (p, q) = sf_normalize(a, nvars);
            let e = k.unsigned_abs() as u32;
            if *k >= 0 {
                (p.pow(e), q.pow(e))
            } else {
                (q.pow(e), p.pow(e))
            }
        }
    }
}
