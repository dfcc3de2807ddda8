use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::SfExpr;
use crate::error::{Error, Result};

/// Integer affine form `sum_k coeffs[k] * t_{k+1} + constant`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineForm {
    pub coeffs: Vec<i64>,
    pub constant: i64,
}

impl AffineForm {
    pub fn zero(arity: usize) -> AffineForm {
        AffineForm { coeffs: vec![0; arity], constant: 0 }
    }

    pub fn var(arity: usize, k: usize) -> AffineForm {
        let mut f = AffineForm::zero(arity);
        f.coeffs[k - 1] = 1;
        f
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, point: &[i64]) -> i64 {
        self.coeffs.iter().zip(point).map(|(c, x)| c * x).sum::<i64>() + self.constant
    }

    pub fn add(&self, other: &AffineForm) -> AffineForm {
        AffineForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            constant: self.constant + other.constant,
        }
    }

    pub fn sub(&self, other: &AffineForm) -> AffineForm {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> AffineForm {
        AffineForm { coeffs: self.coeffs.iter().map(|c| c * k).collect(), constant: self.constant * k }
    }

    fn widen(&self, arity: usize) -> AffineForm {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(arity, 0);
        AffineForm { coeffs, constant: self.constant }
    }

    /// Coefficients followed by the constant, the JSON row layout.
    pub fn row(&self) -> Vec<i64> {
        let mut r = self.coeffs.clone();
        r.push(self.constant);
        r
    }
}

/// `min(pos) - min(neg)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlComponent {
    pos: Vec<AffineForm>,
    neg: Vec<AffineForm>,
}

/// Sorts, and drops forms dominated by another with the same linear part.
fn canonical(mut forms: Vec<AffineForm>) -> Vec<AffineForm> {
    forms.sort();
    forms.dedup_by(|later, earlier| later.coeffs == earlier.coeffs);
    forms
}

fn minkowski(a: &[AffineForm], b: &[AffineForm]) -> Vec<AffineForm> {
    canonical(a.iter().flat_map(|x| b.iter().map(move |y| x.add(y))).collect())
}

impl PlComponent {
    pub fn new(pos: Vec<AffineForm>, neg: Vec<AffineForm>) -> PlComponent {
        assert!(!pos.is_empty() && !neg.is_empty(), "pos and neg must be nonempty");
        PlComponent { pos: canonical(pos), neg: canonical(neg) }
    }

    pub fn affine(form: AffineForm) -> PlComponent {
        let zero = AffineForm::zero(form.arity());
        PlComponent::new(vec![form], vec![zero])
    }

    pub fn var(arity: usize, k: usize) -> PlComponent {
        PlComponent::affine(AffineForm::var(arity, k))
    }

    pub fn constant(arity: usize, c: i64) -> PlComponent {
        PlComponent::affine(AffineForm { coeffs: vec![0; arity], constant: c })
    }

    pub fn pos(&self) -> &[AffineForm] {
        &self.pos
    }

    pub fn neg(&self) -> &[AffineForm] {
        &self.neg
    }

    pub fn arity(&self) -> usize {
        self.pos[0].arity()
    }

    pub fn eval(&self, point: &[i64]) -> i64 {
        let m = |fs: &[AffineForm]| fs.iter().map(|f| f.eval(point)).min().expect("nonempty");
        m(&self.pos) - m(&self.neg)
    }

    /// Tropical product: pointwise sum.
    pub fn mul(&self, other: &PlComponent) -> PlComponent {
        PlComponent { pos: minkowski(&self.pos, &other.pos), neg: minkowski(&self.neg, &other.neg) }
    }

    /// Tropical quotient: pointwise difference.
    pub fn div(&self, other: &PlComponent) -> PlComponent {
        PlComponent { pos: minkowski(&self.pos, &other.neg), neg: minkowski(&self.neg, &other.pos) }
    }

    /// Tropical sum: pointwise minimum.
    pub fn add(&self, other: &PlComponent) -> PlComponent {
        let mut pos = minkowski(&self.pos, &other.neg);
        pos.extend(minkowski(&other.pos, &self.neg));
        PlComponent { pos: canonical(pos), neg: minkowski(&self.neg, &other.neg) }
    }

    /// Tropical power: multiplication by `k`.
    pub fn pow(&self, k: i64) -> PlComponent {
        let scale = |fs: &[AffineForm]| canonical(fs.iter().map(|f| f.scale(k.abs())).collect());
        match k {
            0 => PlComponent::constant(self.arity(), 0),
            k if k > 0 => PlComponent { pos: scale(&self.pos), neg: scale(&self.neg) },
            _ => PlComponent { pos: scale(&self.neg), neg: scale(&self.pos) },
        }
    }

    /// The single affine form `pos - neg`, when both sides are singletons.
    pub fn is_affine(&self) -> Option<AffineForm> {
        match (&self.pos[..], &self.neg[..]) {
            ([p], [n]) => Some(p.sub(n)),
            _ => None,
        }
    }

    /// Composition: substitutes `inner[k]` for `t_{k+1}`.
    pub fn substitute(&self, inner: &[PlComponent]) -> PlComponent {
        let arity = inner.first().map_or(0, PlComponent::arity);
        let form_at = |f: &AffineForm| {
            f.coeffs.iter().zip(inner).filter(|(c, _)| **c != 0).fold(
                PlComponent::constant(arity, f.constant),
                |acc, (c, g)| acc.mul(&g.pow(*c)),
            )
        };
        let tropical_min = |fs: &[AffineForm]| fs.iter().map(form_at).reduce(|a, b| a.add(&b)).expect("nonempty");
        tropical_min(&self.pos).div(&tropical_min(&self.neg))
    }

    fn widen(&self, arity: usize) -> PlComponent {
        PlComponent {
            pos: self.pos.iter().map(|f| f.widen(arity)).collect(),
            neg: self.neg.iter().map(|f| f.widen(arity)).collect(),
        }
    }
}

impl Serialize for PlComponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = |fs: &[AffineForm]| fs.iter().map(AffineForm::row).collect::<Vec<_>>();
        let mut st = s.serialize_struct("PlComponent", 2)?;
        st.serialize_field("pos", &rows(&self.pos))?;
        st.serialize_field("neg", &rows(&self.neg))?;
        st.end()
    }
}

/// Structural tropicalization `[e]_Trop` as a function of `arity` variables.
pub fn tropicalize(e: &SfExpr, arity: usize) -> PlComponent {
    assert!(e.arity() <= arity, "arity too small for expression");
    match e {
        SfExpr::Var(k) => PlComponent::var(arity, *k),
        SfExpr::Const(_) => PlComponent::constant(arity, 0),
        SfExpr::Add(a, b) => tropicalize(a, arity).add(&tropicalize(b, arity)),
        SfExpr::Mul(a, b) => tropicalize(a, arity).mul(&tropicalize(b, arity)),
        SfExpr::Div(a, b) => tropicalize(a, arity).div(&tropicalize(b, arity)),
        SfExpr::Pow(a, k) => tropicalize(a, arity).pow(*k),
    }
}

/// A tuple of PL components sharing one arity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlMap {
    pub arity: usize,
    pub components: Vec<PlComponent>,
}

impl PlMap {
    pub fn new(arity: usize, components: Vec<PlComponent>) -> PlMap {
        let components = components.into_iter().map(|c| if c.arity() < arity { c.widen(arity) } else { c }).collect::<Vec<_>>();
        assert!(components.iter().all(|c| c.arity() == arity), "component arity mismatch");
        PlMap { arity, components }
    }

    pub fn identity(arity: usize) -> PlMap {
        PlMap::new(arity, (1..=arity).map(|k| PlComponent::var(arity, k)).collect())
    }

    pub fn from_affine(forms: Vec<AffineForm>) -> PlMap {
        let arity = forms.first().map_or(0, AffineForm::arity);
        PlMap::new(arity, forms.into_iter().map(PlComponent::affine).collect())
    }

    pub fn tropicalize(exprs: &[SfExpr], arity: usize) -> PlMap {
        PlMap::new(arity, exprs.iter().map(|e| tropicalize(e, arity)).collect())
    }

    /// Affine forms of all components, if every component is affine.
    pub fn as_affine(&self) -> Option<Vec<AffineForm>> {
        self.components.iter().map(PlComponent::is_affine).collect()
    }
}

pub fn pl_eval(f: &PlMap, point: &[i64]) -> Result<Vec<i64>> {
    if point.len() != f.arity {
        return Err(Error::ArityMismatch { expected: f.arity, found: point.len() });
    }
    Ok(f.components.iter().map(|c| c.eval(point)).collect())
}

/// `f after g`.
pub fn pl_compose(f: &PlMap, g: &PlMap) -> Result<PlMap> {
    if f.arity != g.components.len() {
        return Err(Error::ArityMismatch { expected: f.arity, found: g.components.len() });
    }
    Ok(PlMap::new(g.arity, f.components.iter().map(|c| c.substitute(&g.components)).collect()))
}
