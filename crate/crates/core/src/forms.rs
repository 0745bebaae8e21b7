//! Exact bivariate homogeneous forms and the covariant constructions
//! (Hessian determinant, Jacobian determinant) that generate the canonical
//! invariants F (degree 12), H (degree 20) and T (degree 30).
//!
//! Coefficients are stored sparsely, keyed by exponent pair; every stored
//! pair (i, j) satisfies i + j = degree and zero coefficients are dropped.
//! The canonical trio is kept in arbitrary-precision rationals so the
//! degree-60 syzygy and the equivariant module relation can be checked with
//! zero tolerance.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{IcosaError, Result};

/// Exact rational scalar used by the canonical forms.
pub type Q = BigRational;

/// Coefficient ring for a form. Implemented by `Q` (exact path) and
/// `Complex64` (numeric path).
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Homogeneous polynomial in two variables with sparse coefficient storage.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariateForm<C> {
    degree: u32,
    terms: BTreeMap<(u32, u32), C>,
}

/// Exact-rational form; the representation used for all symbolic identities.
pub type RationalForm = BivariateForm<Q>;
/// Double-precision complex form; the representation used by dynamics.
pub type ComplexForm = BivariateForm<Complex64>;

impl<C: Coeff> BivariateForm<C> {
    pub fn zero(degree: u32) -> Self {
        BivariateForm {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Build from (x-exponent, y-exponent, coefficient) triples.
    /// Panics if an exponent pair does not match the degree.
    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (u32, u32, C)>) -> Self {
        let mut map = BTreeMap::new();
        for (i, j, c) in terms {
            assert_eq!(i + j, degree, "exponent pair ({i},{j}) off degree {degree}");
            if !c.is_zero() {
                let entry = map.entry((i, j)).or_insert_with(C::zero);
                *entry = entry.clone() + c;
                if entry.is_zero() {
                    map.remove(&(i, j));
                }
            }
        }
        BivariateForm { degree, terms: map }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, i: u32, j: u32) -> C {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &C)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "degree mismatch in add");
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            let entry = out.terms.entry(k).or_insert_with(C::zero);
            *entry = entry.clone() + c.clone();
            if entry.is_zero() {
                out.terms.remove(&k);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&k, c)| (k, -c.clone()))
            .collect::<BTreeMap<_, _>>();
        BivariateForm {
            degree: self.degree,
            terms,
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(self.degree);
        }
        let terms = self
            .terms
            .iter()
            .map(|(&k, c)| (k, c.clone() * s.clone()))
            .collect();
        BivariateForm {
            degree: self.degree,
            terms,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<(u32, u32), C> = BTreeMap::new();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                let key = (i1 + i2, j1 + j2);
                let entry = terms.entry(key).or_insert_with(C::zero);
                *entry = entry.clone() + c1.clone() * c2.clone();
            }
        }
        terms.retain(|_, c| !c.is_zero());
        BivariateForm {
            degree: self.degree + other.degree,
            terms,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = BivariateForm::from_terms(0, [(0, 0, C::one())]);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// d/dx; degree drops by one (zero form of degree 0 for constants).
    pub fn partial_x(&self) -> Self
    where
        C: FromU32<C>,
    {
        let degree = self.degree.saturating_sub(1);
        let terms = self
            .terms
            .iter()
            .filter(|(&(i, _), _)| i > 0)
            .map(|(&(i, j), c)| (i - 1, j, c.clone() * C::from_u32(i)))
            .collect::<Vec<_>>();
        BivariateForm::from_terms(degree, terms)
    }

    /// d/dy.
    pub fn partial_y(&self) -> Self
    where
        C: FromU32<C>,
    {
        let degree = self.degree.saturating_sub(1);
        let terms = self
            .terms
            .iter()
            .filter(|(&(_, j), _)| j > 0)
            .map(|(&(i, j), c)| (i, j - 1, c.clone() * C::from_u32(j)))
            .collect::<Vec<_>>();
        BivariateForm::from_terms(degree, terms)
    }

    /// Exact evaluation at a coordinate pair within the coefficient ring.
    pub fn eval(&self, x: &C, y: &C) -> C {
        let d = self.degree as usize;
        let mut xp = Vec::with_capacity(d + 1);
        let mut yp = Vec::with_capacity(d + 1);
        xp.push(C::one());
        yp.push(C::one());
        for k in 1..=d {
            xp.push(xp[k - 1].clone() * x.clone());
            yp.push(yp[k - 1].clone() * y.clone());
        }
        let mut acc = C::zero();
        for (&(i, j), c) in &self.terms {
            acc = acc + c.clone() * xp[i as usize].clone() * yp[j as usize].clone();
        }
        acc
    }

    /// Dense coefficient vector indexed by x-exponent (the affine restriction
    /// `form(z, 1)` read off coefficient-wise).
    pub fn dense_by_x(&self) -> Vec<C> {
        let mut out = vec![C::zero(); self.degree as usize + 1];
        for (&(i, _), c) in &self.terms {
            out[i as usize] = c.clone();
        }
        out
    }
}

/// Small helper so `partial_x`/`partial_y` can stay generic.
pub trait FromU32<C> {
    fn from_u32(v: u32) -> C;
}

impl FromU32<Q> for Q {
    fn from_u32(v: u32) -> Q {
        Q::from_integer(BigInt::from(v))
    }
}

impl FromU32<Complex64> for Complex64 {
    fn from_u32(v: u32) -> Complex64 {
        Complex64::new(v as f64, 0.0)
    }
}

impl RationalForm {
    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(degree: u32, terms: impl IntoIterator<Item = (u32, u32, i64)>) -> Self {
        Self::from_terms(
            degree,
            terms
                .into_iter()
                .map(|(i, j, c)| (i, j, Q::from_integer(BigInt::from(c)))),
        )
    }

    pub fn to_complex(&self) -> ComplexForm {
        ComplexForm::from_terms(
            self.degree,
            self.terms().map(|(i, j, c)| {
                (i, j, Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
            }),
        )
    }

    /// Exact division in the graded ring; `None` when the remainder is nonzero.
    pub fn try_div_exact(&self, den: &RationalForm) -> Option<RationalForm> {
        if den.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(RationalForm::zero(self.degree.saturating_sub(den.degree)));
        }
        if den.degree > self.degree {
            return None;
        }
        // Homogeneous division is univariate division on the x-exponent
        // coefficient sequences.
        let mut num = self.dense_by_x();
        let den_v = den.dense_by_x();
        let d_lead = den_v.iter().rposition(|c| !c.is_zero())?;
        let out_deg = (self.degree - den.degree) as usize;
        let mut quot = vec![Q::zero(); out_deg + 1];
        for k in (0..=out_deg).rev() {
            let idx = k + d_lead;
            if idx >= num.len() {
                continue;
            }
            let c = &num[idx] / &den_v[d_lead];
            if c.is_zero() {
                continue;
            }
            for (off, dv) in den_v.iter().enumerate() {
                if !dv.is_zero() {
                    num[k + off] = &num[k + off] - &(dv * &c);
                }
            }
            quot[k] = c;
        }
        if num.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let deg = self.degree - den.degree;
        Some(RationalForm::from_terms(
            deg,
            quot.into_iter()
                .enumerate()
                .map(|(i, c)| (i as u32, deg - i as u32, c)),
        ))
    }

    /// Numeric evaluation of an exact form at a complex point.
    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.to_complex().eval(&x, &y)
    }
}

impl ComplexForm {
    /// Largest coefficient magnitude; scale reference for relative tests.
    pub fn max_coeff_norm(&self) -> f64 {
        self.terms()
            .map(|(_, _, c)| c.norm())
            .fold(0.0, f64::max)
    }
}

/// F_xx * F_yy - F_xy^2, exact, NOT normalized. Degree 2(d-2).
pub fn hessian_det<C>(f: &BivariateForm<C>) -> BivariateForm<C>
where
    C: Coeff + FromU32<C>,
{
    let fxx = f.partial_x().partial_x();
    let fyy = f.partial_y().partial_y();
    let fxy = f.partial_x().partial_y();
    fxx.mul(&fyy).sub(&fxy.mul(&fxy))
}

/// F_x * G_y - F_y * G_x, exact, NOT normalized.
pub fn jacobian_det<C>(f: &BivariateForm<C>, g: &BivariateForm<C>) -> BivariateForm<C>
where
    C: Coeff + FromU32<C>,
{
    f.partial_x()
        .mul(&g.partial_y())
        .sub(&f.partial_y().mul(&g.partial_x()))
}

/// The scalar lambda with candidate = lambda * target, or `NotProportional`.
pub fn normalize_to_match(candidate: &RationalForm, target: &RationalForm) -> Result<Q> {
    if target.is_zero() {
        return Err(IcosaError::NotProportional("target form is zero".into()));
    }
    if candidate.degree() != target.degree() {
        return Err(IcosaError::NotProportional(format!(
            "degree {} vs {}",
            candidate.degree(),
            target.degree()
        )));
    }
    if candidate.is_zero() {
        return Ok(Q::zero());
    }
    let (i, j, t) = target
        .terms()
        .next()
        .expect("nonzero target has a leading term");
    let lambda = candidate.coefficient(i, j) / t.clone();
    if candidate == &target.scale(&lambda) {
        Ok(lambda)
    } else {
        Err(IcosaError::NotProportional(
            "exact division leaves a remainder".into(),
        ))
    }
}

/// The canonical invariants with their computed covariant normalizations.
#[derive(Clone, Debug)]
pub struct CanonicalInvariants {
    pub f: RationalForm,
    pub h: RationalForm,
    pub t: RationalForm,
    /// hessian_det(F) = hessian_scale * H (computed, not assumed).
    pub hessian_scale: Q,
    /// jacobian_det(F, H) = jacobian_scale * T (computed, not assumed).
    pub jacobian_scale: Q,
}

impl CanonicalInvariants {
    /// Construct the printed monic-in-x expansions and verify that the raw
    /// covariants reproduce them up to a scalar.
    pub fn build() -> Result<Self> {
        let f = RationalForm::from_int_terms(12, [(11, 1, 1), (6, 6, -11), (1, 11, -1)]);
        let h = RationalForm::from_int_terms(
            20,
            [(20, 0, 1), (15, 5, 228), (10, 10, 494), (5, 15, -228), (0, 20, 1)],
        );
        let t = RationalForm::from_int_terms(
            30,
            [
                (30, 0, 1),
                (25, 5, -522),
                (20, 10, -10005),
                (10, 20, -10005),
                (5, 25, 522),
                (0, 30, 1),
            ],
        );
        let hessian_scale = normalize_to_match(&hessian_det(&f), &h)?;
        let jacobian_scale = normalize_to_match(&jacobian_det(&f, &h), &t)?;
        Ok(CanonicalInvariants {
            f,
            h,
            t,
            hessian_scale,
            jacobian_scale,
        })
    }

    /// 1728 F^5 - H^3 + T^2 vanishes identically (exact arithmetic).
    pub fn verify_syzygy(&self) -> bool {
        syzygy_residual(&self.f, &self.h, &self.t).is_zero()
    }
}

/// The degree-60 combination 1728 F^5 - H^3 + T^2 for arbitrary inputs.
pub fn syzygy_residual(f: &RationalForm, h: &RationalForm, t: &RationalForm) -> RationalForm {
    let c1728 = Q::from_integer(BigInt::from(1728));
    f.pow(5).scale(&c1728).sub(&h.pow(3)).add(&t.pow(2))
}

// JSON schema: { "degree": d, "terms": [[i, j, numerator, denominator], ...] }
impl Serialize for RationalForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut terms = Vec::new();
        for (i, j, c) in self.terms() {
            let num = serde_json::Number::from_string_unchecked(c.numer().to_string());
            let den = serde_json::Number::from_string_unchecked(c.denom().to_string());
            terms.push(serde_json::json!([i, j, num, den]));
        }
        let mut s = serializer.serialize_struct("BivariateForm", 2)?;
        s.serialize_field("degree", &self.degree)?;
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for RationalForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            degree: u32,
            terms: Vec<(u32, u32, serde_json::Number, serde_json::Number)>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for (i, j, num, den) in raw.terms {
            let n: BigInt = num
                .to_string()
                .parse()
                .map_err(|_| D::Error::custom("numerator is not an integer"))?;
            let d: BigInt = den
                .to_string()
                .parse()
                .map_err(|_| D::Error::custom("denominator is not an integer"))?;
            if d.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            terms.push((i, j, Q::new(n, d)));
        }
        Ok(RationalForm::from_terms(raw.degree, terms))
    }
}
