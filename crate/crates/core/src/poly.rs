//! Univariate polynomial utilities: dense exact polynomials over the
//! rationals, an Aberth-Ehrlich simultaneous root finder in double
//! precision, and Newton polishing in exact rational arithmetic for
//! 30+ significant digits.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{IcosaError, Result};
use crate::forms::Q;

/// Dense univariate polynomial with exact rational coefficients, ascending
/// order: `coeffs[k]` multiplies z^k. Trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct QPoly {
    coeffs: Vec<Q>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Q::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Q::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] = c.clone();
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            out[k] = &out[k] + c;
        }
        QPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::from_integer(BigInt::from(1))))
    }

    pub fn scale(&self, s: &Q) -> Self {
        QPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        QPoly::new(out)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * Q::from_integer(BigInt::from(k as i64 + 1)))
                .collect(),
        )
    }

    /// Exact division; `None` when the remainder is nonzero.
    pub fn try_div_exact(&self, den: &Self) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(QPoly::zero());
        }
        if den.degree() > self.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dn = den.degree();
        let lead = den.coeffs[dn].clone();
        let qn = self.degree() - dn;
        let mut quot = vec![Q::zero(); qn + 1];
        for k in (0..=qn).rev() {
            let c = &rem[k + dn] / &lead;
            if !c.is_zero() {
                for (off, dv) in den.coeffs.iter().enumerate() {
                    if !dv.is_zero() {
                        rem[k + off] = &rem[k + off] - &(dv * &c);
                    }
                }
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            None
        } else {
            Some(QPoly::new(quot))
        }
    }

    pub fn eval_q(&self, z: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z.clone() + c.clone();
        }
        acc
    }

    pub fn eval_qc(&self, z: &QComplex) -> QComplex {
        let mut acc = QComplex::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add_re(c);
        }
        acc
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
            .collect()
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        horner(&self.to_c64(), z)
    }
}

/// Exact complex number with rational parts; used only for root polishing.
#[derive(Clone, Debug, PartialEq)]
pub struct QComplex {
    pub re: Q,
    pub im: Q,
}

impl QComplex {
    pub fn zero() -> Self {
        QComplex {
            re: Q::zero(),
            im: Q::zero(),
        }
    }

    pub fn from_c64(z: Complex64) -> Self {
        QComplex {
            re: Q::from_float(z.re).unwrap_or_else(Q::zero),
            im: Q::from_float(z.im).unwrap_or_else(Q::zero),
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        QComplex {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn add_re(&self, r: &Q) -> Self {
        QComplex {
            re: &self.re + r,
            im: self.im.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        QComplex {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        QComplex {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        let n = &(&o.re * &o.re) + &(&o.im * &o.im);
        QComplex {
            re: &(&(&self.re * &o.re) + &(&self.im * &o.im)) / &n,
            im: &(&(&self.im * &o.re) - &(&self.re * &o.im)) / &n,
        }
    }

    /// Round both parts to `digits` decimal digits to keep denominators small
    /// across Newton steps.
    pub fn round_to_digits(&self, digits: u32) -> Self {
        QComplex {
            re: round_digits(&self.re, digits),
            im: round_digits(&self.im, digits),
        }
    }

    pub fn norm_sqr_f64(&self) -> f64 {
        let z = self.to_c64();
        z.norm_sqr()
    }
}

fn round_digits(r: &Q, digits: u32) -> Q {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r * Q::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    Q::new(rounded, scale)
}

pub fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn derivative_c64(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect()
}

/// All complex roots by simultaneous Aberth-Ehrlich iteration.
///
/// Deterministic: fixed initial circle, fixed iteration policy. Coefficients
/// ascending; the leading coefficient must be nonzero.
pub fn aberth_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|v| v.norm() == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|v| v / lead).collect();
    let deriv = derivative_c64(&monic);

    // Initial guesses on a slightly eccentric circle (breaks symmetric stalls).
    let radius = 1.0
        + monic[..n]
            .iter()
            .map(|v| v.norm())
            .fold(0.0f64, f64::max)
            .powf(1.0 / n as f64);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.41;
            let r = radius * (1.0 + 0.05 * ((k % 7) as f64 - 3.0) / 7.0);
            Complex64::from_polar(r, theta)
        })
        .collect();

    let max_iter = 300;
    for _ in 0..max_iter {
        let mut max_step = 0.0f64;
        let snapshot = z.clone();
        for k in 0..n {
            let p = horner(&monic, snapshot[k]);
            let dp = horner(&deriv, snapshot[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let w = if dp.norm() > 0.0 { p / dp } else { p };
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    s += (snapshot[k] - snapshot[j]).finv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * s;
            let step = if denom.norm() > 1e-300 { w / denom } else { w };
            z[k] -= step;
            let rel = step.norm() / z[k].norm().max(1.0);
            max_step = max_step.max(rel);
        }
        if max_step < 1e-14 {
            return Ok(z);
        }
    }
    // Accept if the residuals are small relative to the coefficient scale.
    let ok = z.iter().all(|&r| {
        let p = horner(&monic, r);
        p.norm() < 1e-8 * r.norm().max(1.0).powi(n as i32)
    });
    if ok {
        Ok(z)
    } else {
        Err(IcosaError::RootFindingFailure(format!(
            "Aberth did not converge for degree {n}"
        )))
    }
}

/// A couple of plain Newton steps in f64; good enough for simple well
/// separated roots.
pub fn newton_polish_c64(coeffs: &[Complex64], z0: Complex64, steps: usize) -> Complex64 {
    let deriv = derivative_c64(coeffs);
    let mut z = z0;
    for _ in 0..steps {
        let p = horner(coeffs, z);
        let dp = horner(&deriv, z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        z -= step;
        if step.norm() < 1e-16 * z.norm().max(1.0) {
            break;
        }
    }
    z
}

/// Result of exact-rational Newton polishing.
#[derive(Clone, Debug)]
pub struct PolishedRoot {
    pub value: QComplex,
    /// |imag| as f64 after polishing; the realness discriminator.
    pub imag_abs: f64,
}

/// Polish a double-precision approximation to `digits` significant digits by
/// Newton iteration in exact arithmetic.
///
/// The state is kept as a complex integer pair over the fixed denominator
/// 10^w (w = 2*digits + 10) and the polynomial is integerized, so every
/// Horner pass runs in pure big-integer arithmetic with no gcd reduction;
/// only the Newton correction performs one rounded division per step.
pub fn newton_polish_rational(poly: &QPoly, z0: Complex64, digits: u32) -> PolishedRoot {
    use num_traits::One;

    let work_digits = 2 * digits + 10;
    let denom = BigInt::from(10u32).pow(work_digits);

    // integerize the polynomial: common denominator lcm folded in
    let mut common = BigInt::one();
    for c in poly.coeffs() {
        common = num_integer::lcm(common, c.denom().clone());
    }
    let ints: Vec<BigInt> = poly
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&common / c.denom()))
        .collect();
    let n = ints.len().saturating_sub(1);
    let dints: Vec<BigInt> = ints
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect();

    // p(a/d + i b/d) * d^deg via integer Horner with denominator powers
    let eval_scaled = |coeffs: &[BigInt], a: &BigInt, b: &BigInt| -> (BigInt, BigInt) {
        let deg = coeffs.len().saturating_sub(1);
        let mut dre = BigInt::from(0);
        let mut dim = BigInt::from(0);
        if coeffs.is_empty() {
            return (dre, dim);
        }
        dre = coeffs[deg].clone();
        let mut dpow = BigInt::one();
        for k in (0..deg).rev() {
            // acc <- acc * z + c_k * d^{deg-k}
            let nre = &dre * a - &dim * b;
            let nim = &dre * b + &dim * a;
            dpow *= &denom;
            dre = nre + &coeffs[k] * &dpow;
            dim = nim;
        }
        (dre, dim)
    };

    let to_scaled_int = |v: f64| -> BigInt {
        match Q::from_float(v) {
            Some(q) => {
                let scaled = q * Q::from_integer(denom.clone());
                scaled.round().to_integer()
            }
            None => BigInt::from(0),
        }
    };
    let mut a = to_scaled_int(z0.re);
    let mut b = to_scaled_int(z0.im);

    let steps = 2 + (digits as usize / 12);
    for _ in 0..steps {
        let (pre, pim) = eval_scaled(&ints, &a, &b);
        let (qre, qim) = eval_scaled(&dints, &a, &b);
        // p/p' = (pre + i pim) / (d * (qre + i qim)) since p carries d^n and
        // p' carries d^{n-1}
        let qn = &qre * &qre + &qim * &qim;
        if qn.is_zero() {
            break;
        }
        let num_re = &pre * &qre + &pim * &qim;
        let num_im = &pim * &qre - &pre * &qim;
        // correction in units of 1/d: round(num * d / (d * qn)) = round(num/qn)
        let da = rounded_div(&num_re, &qn);
        let db = rounded_div(&num_im, &qn);
        if da.is_zero() && db.is_zero() {
            break;
        }
        a -= da;
        b -= db;
        let _ = n;
    }

    let value = QComplex {
        re: Q::new(a, denom.clone()),
        im: Q::new(b, denom.clone()),
    };
    let imag_abs = value.im.abs().to_f64().unwrap_or(f64::INFINITY);
    PolishedRoot { value, imag_abs }
}

/// Nearest-integer division (ties away from zero).
fn rounded_div(n: &BigInt, d: &BigInt) -> BigInt {
    use num_integer::Integer;
    let (q, r) = n.div_rem(d);
    if r.abs() * BigInt::from(2) >= d.abs() {
        if n.sign() == d.sign() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aberth_finds_golden_ratio_roots() {
        // z^2 - z - 1
        let coeffs = [
            Complex64::new(-1.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(1.0, 0.0),
        ];
        let mut roots = aberth_roots(&coeffs).unwrap();
        roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!((roots[0].re + 1.0 / phi).abs() < 1e-12);
        assert!((roots[1].re - phi).abs() < 1e-12);
    }

    #[test]
    fn aberth_on_lacunary_degree_30() {
        // affine T: z^30 - 522 z^25 - 10005 z^20 - 10005 z^10 + 522 z^5 + 1
        let mut c = vec![Complex64::new(0.0, 0.0); 31];
        c[0] = 1.0.into();
        c[5] = 522.0.into();
        c[10] = (-10005.0).into();
        c[20] = (-10005.0).into();
        c[25] = (-522.0).into();
        c[30] = 1.0.into();
        let roots = aberth_roots(&c).unwrap();
        assert_eq!(roots.len(), 30);
        for r in &roots {
            let v = horner(&c, *r);
            assert!(v.norm() < 1e-6 * r.norm().max(1.0).powi(30));
        }
        // +-i are edge midpoints
        assert!(roots.iter().any(|r| (r - Complex64::new(0.0, 1.0)).norm() < 1e-8));
    }

    #[test]
    fn rational_polish_reaches_thirty_digits() {
        // polish sqrt(2) on z^2 - 2
        let p = QPoly::from_ints(&[-2, 0, 1]);
        let out = newton_polish_rational(&p, Complex64::new(1.41, 0.0), 40);
        let val = p.eval_qc(&out.value);
        // |p(z)| < 1e-35 certifies ~35 correct digits of the root
        assert!(val.norm_sqr_f64() < 1e-70);
        assert!(out.imag_abs < 1e-30);
    }

    #[test]
    fn exact_division_round_trip() {
        let a = QPoly::from_ints(&[1, 0, -3, 2]);
        let b = QPoly::from_ints(&[5, 1, 7]);
        let prod = a.mul(&b);
        assert_eq!(prod.try_div_exact(&b).unwrap(), a);
        assert!(prod.try_div_exact(&QPoly::from_ints(&[1, 1])).is_none());
    }
}
