//! Sparse multivariate integer polynomials and their quotients.
//!
//! Only what the symbolic rank-2 solver and the subtraction-free certificates
//! need: ring arithmetic, evaluation, exact division, and a nonnegativity test
//! on coefficients. Variables are numbered from 0 internally and printed as
//! `t1, t2, ...`.

use std::borrow::Cow;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Field, FromBigInt};

/// Exponent vector; lexicographic order doubles as the monomial order.
pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Poly {
        Poly::monomial(nvars, vec![0; nvars], c)
    }

    /// The variable with 0-based index `k`.
    pub fn var(nvars: usize, k: usize) -> Poly {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Poly::monomial(nvars, e, 1)
    }

    pub fn monomial(nvars: usize, exps: Exponents, c: impl Into<BigInt>) -> Poly {
        assert_eq!(exps.len(), nvars);
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, BigInt)>) -> Poly {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.iter().next().filter(|(e, _)| e.iter().all(|&x| x == 0)).map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Every coefficient is positive (the zero polynomial does not qualify).
    pub fn has_positive_coefficients(&self) -> bool {
        !self.is_zero() && self.terms.values().all(|c| c.is_positive())
    }

    pub fn leading(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|e| e[k]).max().unwrap_or(0)
    }

    pub fn involves(&self, k: usize) -> bool {
        self.terms.keys().any(|e| e[k] > 0)
    }

    /// Same polynomial over a larger variable set (new variables appended).
    pub fn extend_vars(&self, nvars: usize) -> Poly {
        assert!(nvars >= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.resize(nvars, 0);
                (e, c.clone())
            })
            .collect();
        Poly { nvars, terms }
    }

    /// Drops trailing variables, which must not occur.
    pub fn truncate_vars(&self, nvars: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                assert!(e[nvars..].iter().all(|&x| x == 0), "truncated variable occurs");
                (e[..nvars].to_vec(), c.clone())
            })
            .collect();
        Poly { nvars, terms }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Componentwise minimum of the exponent vectors.
    pub fn monomial_content(&self) -> Exponents {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars];
        };
        it.fold(first.clone(), |acc, e| acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect())
    }

    fn shift_down(&self, by: &Exponents) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(by).map(|(a, b)| a - b).collect(), c.clone()))
            .collect();
        Poly { nvars: self.nvars, terms }
    }

    fn divide_coefficients(&self, d: &BigInt) -> Poly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c / d)).collect();
        Poly { nvars: self.nvars, terms }
    }

    /// `self / divisor` if the division is exact over the integers.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (this, divisor) = align(self, divisor);
        let this = this.as_ref();
        let divisor = divisor.as_ref();
        let (dlead_e, dlead_c) = divisor.leading()?;
        let mut rem = this.clone();
        let mut quot = Poly::zero(this.nvars);
        while let Some((e, c)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(dlead_e).any(|(a, b)| a < b) {
                return None;
            }
            let (q, r) = c.div_rem(dlead_c);
            if !r.is_zero() {
                return None;
            }
            let shift: Exponents = e.iter().zip(dlead_e).map(|(a, b)| a - b).collect();
            let term = Poly::monomial(this.nvars, shift, q);
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        Some(quot)
    }

    pub fn eval<F: Field + FromBigInt>(&self, point: &[F]) -> F {
        assert!(point.len() >= self.nvars, "evaluation point too short");
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut term = F::from_bigint(c);
            for (k, &x) in e.iter().enumerate() {
                if x > 0 {
                    term = term * point[k].powi(i64::from(x));
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Substitutes rational functions for the variables.
    pub fn compose(&self, subs: &[RatFunc]) -> RatFunc {
        assert!(subs.len() >= self.nvars);
        let target = subs.first().map_or(0, |s| s.nvars());
        let mut acc = RatFunc::zero(target);
        for (e, c) in &self.terms {
            let mut term = RatFunc::constant(target, c.clone());
            for (k, &x) in e.iter().enumerate() {
                if x > 0 {
                    term = &term * &subs[k].pow(x as i64);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Splits into coefficients of monomials in the selected variables:
    /// `self = sum_m m * coeff_m` with `coeff_m` free of the selected variables.
    pub fn collect_by(&self, selected: &[usize]) -> BTreeMap<Exponents, Poly> {
        let mut out: BTreeMap<Exponents, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let key: Exponents = selected.iter().map(|&k| e[k]).collect();
            let mut rest = e.clone();
            for &k in selected {
                rest[k] = 0;
            }
            out.entry(key).or_insert_with(|| Poly::zero(self.nvars)).add_term(rest, c.clone());
        }
        out
    }
}

/// Multivariate gcd over the integers by recursive primitive pseudo-remainder
/// sequences. The result has a positive leading coefficient.
impl Poly {
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (a, b) = align(self, other);
        let (a, b) = (a.as_ref(), b.as_ref());
        if a.is_zero() {
            return b.normalized();
        }
        if b.is_zero() {
            return a.normalized();
        }
        if a.as_constant().is_some() || b.as_constant().is_some() {
            return Poly::constant(a.nvars, a.content().gcd(&b.content()));
        }
        let v = (0..a.nvars).find(|&k| a.involves(k) || b.involves(k)).expect("non-constant");
        if !a.involves(v) {
            return a.gcd(&b.content_in(v));
        }
        if !b.involves(v) {
            return a.content_in(v).gcd(b);
        }
        let (ca, cb) = (a.content_in(v), b.content_in(v));
        let c = ca.gcd(&cb);
        let mut p = a.div_exact(&ca).expect("content divides");
        let mut q = b.div_exact(&cb).expect("content divides");
        if p.degree_in(v) < q.degree_in(v) {
            std::mem::swap(&mut p, &mut q);
        }
        loop {
            let r = p.pseudo_remainder(&q, v);
            if r.is_zero() {
                break;
            }
            if !r.involves(v) {
                q = Poly::one(a.nvars);
                break;
            }
            p = q;
            q = r.div_exact(&r.content_in(v)).expect("content divides");
        }
        (&c * &q).normalized()
    }

    fn normalized(&self) -> Poly {
        match self.leading() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Coefficients in variable `v`, lowest degree first.
    fn coefficients_in(&self, v: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(self.nvars); self.degree_in(v) as usize + 1];
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let d = std::mem::take(&mut rest[v]) as usize;
            out[d].add_term(rest, c.clone());
        }
        out
    }

    fn content_in(&self, v: usize) -> Poly {
        self.coefficients_in(v).iter().fold(Poly::zero(self.nvars), |g, c| g.gcd(c))
    }

    fn times_var_power(&self, v: usize, k: u32) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e[v] += k;
                (e, c.clone())
            })
            .collect();
        Poly { nvars: self.nvars, terms }
    }

    fn pseudo_remainder(&self, divisor: &Poly, v: usize) -> Poly {
        let db = divisor.degree_in(v);
        let lead = divisor.coefficients_in(v).pop().expect("nonzero divisor");
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lr = r.coefficients_in(v).pop().expect("nonzero");
            r = &(&lead * &r) - &(&lr * &divisor.times_var_power(v, dr - db));
        }
        r
    }
}

/// Widens the operand with fewer variables; constants built through
/// `num_traits::Zero`/`One` carry no variables at all.
fn align<'a>(a: &'a Poly, b: &'a Poly) -> (Cow<'a, Poly>, Cow<'a, Poly>) {
    use std::cmp::Ordering::*;
    match a.nvars.cmp(&b.nvars) {
        Equal => (Cow::Borrowed(a), Cow::Borrowed(b)),
        Less => (Cow::Owned(a.extend_vars(b.nvars)), Cow::Borrowed(b)),
        Greater => (Cow::Borrowed(a), Cow::Owned(b.extend_vars(a.nvars))),
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (lhs, rhs) = align(self, rhs);
        let mut out = lhs.into_owned();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let (lhs, rhs) = align(self, rhs);
        let mut out = lhs.into_owned();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let (lhs, rhs) = align(self, rhs);
        let nvars = lhs.nvars;
        let mut acc: BTreeMap<Exponents, BigInt> = BTreeMap::new();
        for (e1, c1) in &lhs.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly { nvars, terms: acc }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if k > 0 {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            } else if negative {
                write!(f, "-")?;
            }
            let mag = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { format!("t{}", i + 1) } else { format!("t{}^{}", i + 1, x) })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// A quotient `num / den` of integer polynomials, kept in a light normal form:
/// no common monomial factor, no common integer content, positive leading
/// denominator coefficient, and the polynomial gcd cancelled.
#[derive(Clone)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = match align(&num, &den) {
            (Cow::Borrowed(_), Cow::Borrowed(_)) => (num, den),
            (n, d) => (n.into_owned(), d.into_owned()),
        };
        let mut r = RatFunc { num, den };
        r.reduce();
        r
    }

    /// Keeps `num / den` exactly as given (only the variable counts aligned).
    pub fn new_unreduced(num: Poly, den: Poly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = align(&num, &den);
        RatFunc { num: num.into_owned(), den: den.into_owned() }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        let n = p.nvars;
        RatFunc::new(p, Poly::one(n))
    }

    pub fn zero(nvars: usize) -> RatFunc {
        RatFunc { num: Poly::zero(nvars), den: Poly::one(nvars) }
    }

    pub fn one(nvars: usize) -> RatFunc {
        RatFunc { num: Poly::one(nvars), den: Poly::one(nvars) }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> RatFunc {
        RatFunc { num: Poly::constant(nvars, c), den: Poly::one(nvars) }
    }

    pub fn var(nvars: usize, k: usize) -> RatFunc {
        RatFunc { num: Poly::var(nvars, k), den: Poly::one(nvars) }
    }

    /// `prod t_k^{exps[k]}` with signed exponents.
    pub fn laurent_monomial(exps: &[i64]) -> RatFunc {
        let n = exps.len();
        let num: Exponents = exps.iter().map(|&e| e.max(0) as u32).collect();
        let den: Exponents = exps.iter().map(|&e| (-e).max(0) as u32).collect();
        RatFunc { num: Poly::monomial(n, num, 1), den: Poly::monomial(n, den, 1) }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(&mut self) {
        let n = self.num.nvars;
        if self.num.is_zero() {
            self.den = Poly::one(n);
            return;
        }
        let mut shift = self.num.monomial_content();
        for (s, d) in shift.iter_mut().zip(self.den.monomial_content()) {
            *s = (*s).min(d);
        }
        if shift.iter().any(|&x| x > 0) {
            self.num = self.num.shift_down(&shift);
            self.den = self.den.shift_down(&shift);
        }
        if self.num.as_constant().is_none() && self.den.as_constant().is_none() {
            let g = self.num.gcd(&self.den);
            if g.as_constant().is_none() {
                self.num = self.num.div_exact(&g).expect("gcd divides");
                self.den = self.den.div_exact(&g).expect("gcd divides");
            }
        }
        let mut g = self.num.content().gcd(&self.den.content());
        if self.den.leading().is_some_and(|(_, c)| c.is_negative()) {
            g = -g;
        }
        if !g.is_one() {
            self.num = self.num.divide_coefficients(&g);
            self.den = self.den.divide_coefficients(&g);
        }
    }

    /// Divides numerator and denominator by a common factor when both are
    /// divisible by it.
    pub fn cancel_factor(&self, factor: &Poly) -> RatFunc {
        match (self.num.div_exact(factor), self.den.div_exact(factor)) {
            (Some(n), Some(d)) => RatFunc::new(n, d),
            _ => self.clone(),
        }
    }

    /// Both numerator and denominator have only positive coefficients, which
    /// certifies the function as a subtraction-free expression.
    pub fn is_subtraction_free(&self) -> bool {
        self.num.has_positive_coefficients() && self.den.has_positive_coefficients()
    }

    pub fn pow(&self, k: i64) -> RatFunc {
        let base = if k < 0 { self.recip() } else { self.clone() };
        let e = k.unsigned_abs() as u32;
        RatFunc::new(base.num.pow(e), base.den.pow(e))
    }

    pub fn recip(&self) -> RatFunc {
        assert!(!self.num.is_zero(), "reciprocal of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn eval<F: Field + FromBigInt>(&self, point: &[F]) -> Option<F> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    pub fn compose(&self, subs: &[RatFunc]) -> RatFunc {
        &self.num.compose(subs) / &self.den.compose(subs)
    }

    pub fn extend_vars(&self, nvars: usize) -> RatFunc {
        RatFunc { num: self.num.extend_vars(nvars), den: self.den.extend_vars(nvars) }
    }

    pub fn truncate_vars(&self, nvars: usize) -> RatFunc {
        RatFunc { num: self.num.truncate_vars(nvars), den: self.den.truncate_vars(nvars) }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num - &rhs.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &rhs.den) - &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        &self / &rhs
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den }
    }
}

// The trait impls below need a variable count that `Zero::zero()` cannot
// supply; zero-variable constants are widened on first contact.
impl num_traits::Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero(0)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl num_traits::One for RatFunc {
    fn one() -> Self {
        RatFunc::one(0)
    }
}

impl FromBigInt for RatFunc {
    fn from_bigint(n: &BigInt) -> Self {
        RatFunc::constant(0, n.clone())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn t(n: usize, k: usize) -> Poly {
        Poly::var(n, k)
    }

    #[test]
    fn arithmetic_and_display() {
        let a = t(2, 0);
        let b = t(2, 1);
        let s = &a + &b;
        let sq = &s * &s;
        assert_eq!(sq.to_string(), "t1^2 + 2*t1*t2 + t2^2");
        assert!((&s - &s).is_zero());
        assert_eq!((&sq - &(&a * &a)).to_string(), "2*t1*t2 + t2^2");
    }

    #[test]
    fn exact_division() {
        let a = t(2, 0);
        let b = t(2, 1);
        let cube = &(&(&a * &a) * &a) + &(&(&b * &b) * &b);
        let s = &a + &b;
        let q = cube.div_exact(&s).unwrap();
        assert_eq!(q.to_string(), "t1^2 - t1*t2 + t2^2");
        assert!(s.div_exact(&a).is_none());
    }

    #[test]
    fn ratfunc_reduces() {
        let n = 3;
        let (a, b, c) = (RatFunc::var(n, 0), RatFunc::var(n, 1), RatFunc::var(n, 2));
        // b - ab/(a+c) = bc/(a+c)
        let r = &b - &(&(&a * &b) / &(&a + &c));
        assert_eq!(r.to_string(), "(t2*t3) / (t1 + t3)");
        assert!(r.is_subtraction_free());
        let one = &r / &r;
        assert_eq!(one.to_string(), "1");
    }

    #[test]
    fn ratfunc_eval_and_compose() {
        let n = 2;
        let f = &RatFunc::var(n, 0) / &(&RatFunc::var(n, 0) + &RatFunc::var(n, 1));
        let p = [BigRational::from_integer(1.into()), BigRational::from_integer(3.into())];
        assert_eq!(f.eval(&p).unwrap(), BigRational::new(1.into(), 4.into()));
        let swapped = f.compose(&[RatFunc::var(n, 1), RatFunc::var(n, 0)]);
        assert_eq!(swapped.eval(&p).unwrap(), BigRational::new(3.into(), 4.into()));
    }

    #[test]
    fn laurent_monomials() {
        let m = RatFunc::laurent_monomial(&[1, -2, 0]);
        assert_eq!(m.to_string(), "(t1) / (t2^2)");
    }

    #[test]
    fn collect_by_variables() {
        let n = 3;
        let p = &(&t(n, 0) * &t(n, 2)) + &(&t(n, 1) + &t(n, 2));
        let parts = p.collect_by(&[2]);
        assert_eq!(parts[&vec![1]].to_string(), "t1 + 1");
        assert_eq!(parts[&vec![0]].to_string(), "t2");
    }

    #[test]
    fn multivariate_gcd() {
        let a = Poly::var(3, 0);
        let b = Poly::var(3, 1);
        let c = Poly::var(3, 2);
        let f = &(&a * &b) + &c; // ab + c
        let g1 = &(&a + &b) * &f;
        let g2 = &(&(&c - &a) * &f) * &f;
        assert_eq!(g1.gcd(&g2), f);
        assert_eq!((&(&a * &a) - &(&b * &b)).gcd(&(&a - &b)), &a - &b);
        let r = RatFunc::new(g2, g1);
        assert_eq!(r.denom(), &(&a + &b));
        assert_eq!(r.numer(), &(&(&c - &a) * &f));
    }
}
