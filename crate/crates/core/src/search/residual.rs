//! The critical residual M(z, zbar): the quotient of the forced-critical
//! Jacobian by F*H*T, built two ways.
//!
//! The symbolic route treats zbar as an independent variable w, clears the
//! linear-system denominator, and divides exactly; it is the source of
//! truth. The hard-coded route stores the published coefficient list and is
//! kept as a cross-check: the two agree up to one overall scalar and one
//! constant-term discrepancy, both reported rather than patched.

use num_complex::Complex64;

use crate::equivariants::Equivariants;
use crate::error::{IcosaError, Result};
use crate::forms::CanonicalInvariants;
use crate::poly::{horner, QPoly};

/// M as a quadratic in the independent conjugate variable:
/// M(z, w) = m0(z) + m1(z) w + m2(z) w^2.
#[derive(Clone, Debug)]
pub struct ResidualPolynomial {
    pub m0: QPoly,
    pub m1: QPoly,
    pub m2: QPoly,
    // f64 copies for fast evaluation
    c0: Vec<Complex64>,
    c1: Vec<Complex64>,
    c2: Vec<Complex64>,
}

impl ResidualPolynomial {
    /// Build M symbolically: with p = (z, 1) and target (1, -w), the cleared
    /// solutions of a*(H phi)(p) + b*(F eta)(p) = (1, -w) are
    ///   abar = F(z) (eta2 + w eta1),  bbar = -H(z) (phi2 + w phi1),
    /// the Jacobian of the family is quadratic in (a, b), and the quotient
    /// by F*H*T is exact.
    pub fn build(inv: &CanonicalInvariants, eq: &Equivariants) -> Result<Self> {
        let qp = |form: &crate::forms::RationalForm| QPoly::new(form.dense_by_x());
        let fa = qp(&inv.f);
        let ha = qp(&inv.h);
        let ta = qp(&inv.t);
        let phi1 = qp(&eq.phi.first);
        let phi2 = qp(&eq.phi.second);
        let eta1 = qp(&eq.eta.first);
        let eta2 = qp(&eq.eta.second);

        let j_a = qp(&eq.h_phi.critical_form());
        let j_b = qp(&eq.f_eta.critical_form());
        let j_ab = {
            let m1 = crate::forms::jacobian_det(&eq.h_phi.first, &eq.f_eta.second);
            let m2 = crate::forms::jacobian_det(&eq.f_eta.first, &eq.h_phi.second);
            qp(&m1.add(&m2))
        };

        let abar0 = fa.mul(&eta2);
        let abar1 = fa.mul(&eta1);
        let minus_one = QPoly::from_ints(&[-1]);
        let bbar0 = ha.mul(&phi2).mul(&minus_one);
        let bbar1 = ha.mul(&phi1).mul(&minus_one);

        let n0 = abar0
            .mul(&abar0)
            .mul(&j_a)
            .add(&abar0.mul(&bbar0).mul(&j_ab))
            .add(&bbar0.mul(&bbar0).mul(&j_b));
        let n1 = abar0
            .mul(&abar1)
            .mul(&j_a)
            .scale(&crate::forms::Q::from_integer(2.into()))
            .add(&abar0.mul(&bbar1).add(&abar1.mul(&bbar0)).mul(&j_ab))
            .add(
                &bbar0
                    .mul(&bbar1)
                    .mul(&j_b)
                    .scale(&crate::forms::Q::from_integer(2.into())),
            );
        let n2 = abar1
            .mul(&abar1)
            .mul(&j_a)
            .add(&abar1.mul(&bbar1).mul(&j_ab))
            .add(&bbar1.mul(&bbar1).mul(&j_b));

        let fht = fa.mul(&ha).mul(&ta);
        let m0 = n0
            .try_div_exact(&fht)
            .ok_or_else(|| IcosaError::Invalid("w^0 part not divisible by F*H*T".into()))?;
        let m1 = n1
            .try_div_exact(&fht)
            .ok_or_else(|| IcosaError::Invalid("w^1 part not divisible by F*H*T".into()))?;
        let m2 = n2
            .try_div_exact(&fht)
            .ok_or_else(|| IcosaError::Invalid("w^2 part not divisible by F*H*T".into()))?;

        let c0 = m0.to_c64();
        let c1 = m1.to_c64();
        let c2 = m2.to_c64();
        Ok(ResidualPolynomial {
            m0,
            m1,
            m2,
            c0,
            c1,
            c2,
        })
    }

    /// Evaluate the computed M at (z, w).
    pub fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        horner(&self.c0, z) + horner(&self.c1, z) * w + horner(&self.c2, z) * w * w
    }

    /// Partial derivatives (d/dz, d/dw) at (z, w).
    pub fn eval_grad(&self, z: Complex64, w: Complex64) -> (Complex64, Complex64) {
        let d0 = derivative_vals(&self.c0, z);
        let d1 = derivative_vals(&self.c1, z);
        let d2 = derivative_vals(&self.c2, z);
        let dz = d0 + d1 * w + d2 * w * w;
        let dw = horner(&self.c1, z) + 2.0 * horner(&self.c2, z) * w;
        (dz, dw)
    }

    /// Restriction to the conjugation-symmetric slice w = z; the degree-61
    /// polynomial whose roots carry the whole search.
    pub fn restriction(&self) -> QPoly {
        let z = QPoly::from_ints(&[0, 1]);
        self.m0.add(&self.m1.mul(&z)).add(&self.m2.mul(&z).mul(&z))
    }

    /// Overall scalar relating the computed residual to the published one,
    /// read off at the z^60 w monomial (published coefficient +1).
    pub fn published_scale(&self) -> crate::forms::Q {
        self.m1.coeff(60)
    }

    /// Coefficient-exact comparison against the published list: returns the
    /// monomials (i, j, computed/scale - published) that disagree.
    pub fn diff_against_published(&self) -> Vec<(usize, usize, crate::forms::Q)> {
        let scale = self.published_scale();
        let mut out = Vec::new();
        let published = published_m_parts();
        for (j, (own, public)) in [(&self.m0, &published[0]), (&self.m1, &published[1]), (&self.m2, &published[2])]
            .into_iter()
            .enumerate()
        {
            let n = own.coeffs().len().max(public.coeffs().len());
            for i in 0..n {
                let got = own.coeff(i) / scale.clone();
                let want = public.coeff(i);
                if got != want {
                    out.push((i, j, got - want));
                }
            }
        }
        out
    }
}

fn derivative_vals(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let d: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();
    horner(&d, z)
}

/// Published residual coefficients: (z-exponent, w-exponent, coefficient).
pub const PUBLISHED_M_TERMS: &[(usize, usize, i64)] = &[
    (60, 1, 1),
    (56, 2, -285),
    (55, 1, 2820),
    (54, 0, 3410),
    (51, 2, 3800),
    (50, 1, -37794),
    (49, 0, 83700),
    (46, 2, -3799050),
    (45, 1, 7302980),
    (44, 0, 12227175),
    (41, 2, -15405600),
    (40, 1, 23401665),
    (39, 0, 15580600),
    (36, 2, -143079850),
    (35, 1, 80976024),
    (34, 0, 168348600),
    (31, 2, 203866260),
    (29, 0, -203866260),
    (26, 2, 168348600),
    (25, 1, 80976024),
    (24, 0, -143079850),
    (21, 2, -15580600),
    (20, 1, -23401665),
    (19, 0, 15405600),
    (16, 2, 12227175),
    (15, 1, 7302980),
    (14, 0, -3799050),
    (11, 2, -83700),
    (10, 1, 37794),
    (9, 0, -3800),
    (6, 2, 3410),
    (5, 1, 2820),
    (4, 0, -285),
    (0, 1, -1),
    (0, 0, 1),
];

/// The published list split into w-parts [m0, m1, m2].
pub fn published_m_parts() -> [QPoly; 3] {
    let mut parts = [vec![0i64; 61], vec![0i64; 61], vec![0i64; 61]];
    for &(i, j, c) in PUBLISHED_M_TERMS {
        parts[j][i] = c;
    }
    [
        QPoly::from_ints(&parts[0]),
        QPoly::from_ints(&parts[1]),
        QPoly::from_ints(&parts[2]),
    ]
}

/// Evaluate the published M directly from its coefficient list.
pub fn eval_published_m(z: Complex64, w: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &(i, j, c) in PUBLISHED_M_TERMS {
        acc += c as f64 * z.powu(i as u32) * w.powu(j as u32);
    }
    acc
}

/// Published factorization of the real restriction (degree 61), ascending.
pub fn published_restriction() -> QPoly {
    let z = QPoly::from_ints(&[0, 1]);
    let f1 = QPoly::from_ints(&[1, 0, 1]);
    let f2 = QPoly::from_ints(&[-1, -1, 1]);
    // edge-midpoint quartic, then face-center quartic
    let f3 = QPoly::from_ints(&[1, 2, -6, -2, 1]);
    let f4 = QPoly::from_ints(&[1, -3, -1, 3, 1]);
    let deg48_desc: [i64; 49] = [
        1, 0, 14, -280, 161, -1039, 364, -666, 621, 27291, -32823, 394034, -241717, 557621,
        -499383, 392493, 478383, -854138, 1147057, -3389037, 3865560, 1191562, 5421980, 744833,
        10215020, -744833, 5421980, -1191562, 3865560, 3389037, 1147057, 854138, 478383, -392493,
        -499383, -557621, -241717, -394034, -32823, -27291, 621, 666, 364, 1039, 161, 280, 14, 0,
        1,
    ];
    let mut asc = deg48_desc;
    asc.reverse();
    let f5 = QPoly::from_ints(&asc);
    z.mul(&f1).mul(&f2).mul(&f3).mul(&f4).mul(&f5)
}
