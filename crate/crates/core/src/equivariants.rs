//! The cross-construction, the basic equivariants phi and eta, the
//! degree-31 family a*H*phi + b*F*eta, the exact module relation
//! 5*T*eps + 5*H*phi - 3*F*eta = (0,0), and critical forms.
//!
//! Sign convention: phi = (-F_y, F_x) and eta = (-H_y, H_x). These are the
//! unique scalings for which the module relation above holds exactly with
//! eps the identity map (x, y); phi equals the printed expansion, eta is
//! twenty times the display-normalized one.

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::error::Result;
use crate::forms::{
    jacobian_det, BivariateForm, CanonicalInvariants, Coeff, FromU32, Q, RationalForm,
};
use crate::group::{IcosaGroup, Orbit, ProjectivePoint};

/// Ordered pair of forms of one degree acting on the plane.
#[derive(Clone, Debug)]
pub struct EquivariantMap<C> {
    pub first: BivariateForm<C>,
    pub second: BivariateForm<C>,
}

pub type RationalMap = EquivariantMap<Q>;
pub type ComplexMap = EquivariantMap<Complex64>;

impl<C: Coeff> EquivariantMap<C> {
    pub fn new(first: BivariateForm<C>, second: BivariateForm<C>) -> Self {
        assert_eq!(first.degree(), second.degree(), "component degree mismatch");
        EquivariantMap { first, second }
    }

    pub fn degree(&self) -> u32 {
        self.first.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.first.is_zero() && self.second.is_zero()
    }

    /// Jacobian determinant of the pair; the critical form.
    pub fn critical_form(&self) -> BivariateForm<C>
    where
        C: FromU32<C>,
    {
        jacobian_det(&self.first, &self.second)
    }
}

impl RationalMap {
    pub fn to_complex(&self) -> ComplexMap {
        ComplexMap::new(self.first.to_complex(), self.second.to_complex())
    }
}

impl ComplexMap {
    /// Apply in homogeneous coordinates, renormalizing to prevent overflow.
    pub fn apply(&self, p: &ProjectivePoint) -> ProjectivePoint {
        ProjectivePoint::new(
            self.first.eval(&p.x, &p.y),
            self.second.eval(&p.x, &p.y),
        )
    }

    /// n-fold application.
    pub fn iterate(&self, p: &ProjectivePoint, n: usize) -> ProjectivePoint {
        let mut q = *p;
        for _ in 0..n {
            q = self.apply(&q);
        }
        q
    }

    /// Affine value g(z) as a projective point.
    pub fn apply_affine(&self, z: Complex64) -> ProjectivePoint {
        self.apply(&ProjectivePoint::from_affine(z))
    }

    /// Derivative of the affine map z -> g1(z,1)/g2(z,1) at a finite point.
    pub fn affine_derivative(&self, z: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let f = self.first.eval(&z, &one);
        let g = self.second.eval(&z, &one);
        let fx = self.first.partial_x().eval(&z, &one);
        let gx = self.second.partial_x().eval(&z, &one);
        (fx * g - f * gx) / (g * g)
    }
}

/// The cross-construction: G -> (G_y, -G_x), a relative equivariant of
/// degree deg(G) - 1.
pub fn cross<C>(g: &BivariateForm<C>) -> EquivariantMap<C>
where
    C: Coeff + FromU32<C>,
{
    EquivariantMap::new(g.partial_y(), g.partial_x().neg())
}

/// Basic equivariants and the precomputed degree-31 building blocks.
#[derive(Clone, Debug)]
pub struct Equivariants {
    /// (-F_y, F_x), degree 11.
    pub phi: RationalMap,
    /// (-H_y, H_x), degree 19.
    pub eta: RationalMap,
    /// H * phi, degree 31.
    pub h_phi: RationalMap,
    /// F * eta, degree 31.
    pub f_eta: RationalMap,
}

/// Complex coefficients of the degree-31 family member a*H*phi + b*F*eta.
#[derive(Clone, Copy, Debug)]
pub struct MapFamilyCoefficients {
    pub a: Complex64,
    pub b: Complex64,
}

impl Equivariants {
    pub fn build(inv: &CanonicalInvariants) -> Self {
        let phi = RationalMap::new(inv.f.partial_y().neg(), inv.f.partial_x());
        let eta = RationalMap::new(inv.h.partial_y().neg(), inv.h.partial_x());
        let h_phi = RationalMap::new(inv.h.mul(&phi.first), inv.h.mul(&phi.second));
        let f_eta = RationalMap::new(inv.f.mul(&eta.first), inv.f.mul(&eta.second));
        Equivariants {
            phi,
            eta,
            h_phi,
            f_eta,
        }
    }

    /// Exact family member with rational coefficients.
    pub fn family_map_exact(&self, a: &Q, b: &Q) -> RationalMap {
        RationalMap::new(
            self.h_phi.first.scale(a).add(&self.f_eta.first.scale(b)),
            self.h_phi.second.scale(a).add(&self.f_eta.second.scale(b)),
        )
    }

    /// Numeric family member.
    pub fn family_map(&self, c: MapFamilyCoefficients) -> ComplexMap {
        let hp = self.h_phi.to_complex();
        let fe = self.f_eta.to_complex();
        ComplexMap::new(
            hp.first.scale(&c.a).add(&fe.first.scale(&c.b)),
            hp.second.scale(&c.a).add(&fe.second.scale(&c.b)),
        )
    }

    /// Both components of 5*T*eps + 5*H*phi - 3*F*eta vanish identically.
    pub fn verify_module_relation(&self, inv: &CanonicalInvariants) -> bool {
        module_relation_residual(inv, &self.phi, &self.eta, 5, 5, -3).is_zero()
    }
}

/// c1*T*eps + c2*H*phi + c3*F*eta as an exact map (eps = identity (x, y)).
pub fn module_relation_residual(
    inv: &CanonicalInvariants,
    phi: &RationalMap,
    eta: &RationalMap,
    c1: i64,
    c2: i64,
    c3: i64,
) -> RationalMap {
    let q = |n: i64| Q::from_integer(BigInt::from(n));
    let eps_x = RationalForm::from_int_terms(1, [(1, 0, 1)]);
    let eps_y = RationalForm::from_int_terms(1, [(0, 1, 1)]);
    let first = inv
        .t
        .mul(&eps_x)
        .scale(&q(c1))
        .add(&inv.h.mul(&phi.first).scale(&q(c2)))
        .add(&inv.f.mul(&eta.first).scale(&q(c3)));
    let second = inv
        .t
        .mul(&eps_y)
        .scale(&q(c1))
        .add(&inv.h.mul(&phi.second).scale(&q(c2)))
        .add(&inv.f.mul(&eta.second).scale(&q(c3)));
    RationalMap::new(first, second)
}

/// Projective distance between two image vectors: |u x v| normalized.
pub fn projective_defect(u: (Complex64, Complex64), v: (Complex64, Complex64)) -> f64 {
    let cross = u.0 * v.1 - u.1 * v.0;
    let nu = (u.0.norm_sqr() + u.1.norm_sqr()).sqrt();
    let nv = (v.0.norm_sqr() + v.1.norm_sqr()).sqrt();
    if nu == 0.0 || nv == 0.0 {
        f64::INFINITY
    } else {
        cross.norm() / (nu * nv)
    }
}

/// Check map o A = A o map projectively at sample points for every group
/// element; returns the worst defect.
pub fn equivariance_defect(map: &ComplexMap, group: &IcosaGroup, samples: &[Complex64]) -> f64 {
    let mut worst: f64 = 0.0;
    for e in &group.elements {
        for &z in samples {
            let p = ProjectivePoint::from_affine(z);
            let lhs = map.apply(&e.apply(&p));
            let rhs = e.apply(&map.apply(&p));
            worst = worst.max(projective_defect((lhs.x, lhs.y), (rhs.x, rhs.y)));
        }
    }
    worst
}

/// Behavior of a map on the three special orbits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum OrbitBehavior {
    Fixed,
    ExchangedWithAntipode,
    Other,
}

/// Numeric check of the special-orbit behavior table for phi and eta:
/// phi fixes vertices and antipode-exchanges faces and edges; eta fixes
/// faces and antipode-exchanges vertices and edges.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SpecialOrbitReport {
    pub phi: [OrbitBehavior; 3],
    pub eta: [OrbitBehavior; 3],
}

impl SpecialOrbitReport {
    pub fn expected() -> Self {
        use OrbitBehavior::*;
        SpecialOrbitReport {
            phi: [Fixed, ExchangedWithAntipode, ExchangedWithAntipode],
            eta: [ExchangedWithAntipode, Fixed, ExchangedWithAntipode],
        }
    }

    pub fn matches_expected(&self) -> bool {
        let e = Self::expected();
        self.phi == e.phi && self.eta == e.eta
    }
}

/// Classify how `map` moves every point of an orbit, with tolerance.
pub fn orbit_behavior(map: &ComplexMap, orbit: &Orbit, tol: f64) -> OrbitBehavior {
    let mut fixed = true;
    let mut exchanged = true;
    for p in &orbit.points {
        let img = map.apply(p);
        if img.dist(p) > tol {
            fixed = false;
        }
        if img.dist(&p.antipode()) > tol {
            exchanged = false;
        }
    }
    match (fixed, exchanged) {
        (true, _) => OrbitBehavior::Fixed,
        (_, true) => OrbitBehavior::ExchangedWithAntipode,
        _ => OrbitBehavior::Other,
    }
}

/// Run the special-orbit behavior checks for phi and eta.
pub fn check_special_orbit_table(
    eq: &Equivariants,
    vertices: &Orbit,
    faces: &Orbit,
    edges: &Orbit,
) -> Result<SpecialOrbitReport> {
    let phi = eq.phi.to_complex();
    let eta = eq.eta.to_complex();
    let tol = 1e-8;
    Ok(SpecialOrbitReport {
        phi: [
            orbit_behavior(&phi, vertices, tol),
            orbit_behavior(&phi, faces, tol),
            orbit_behavior(&phi, edges, tol),
        ],
        eta: [
            orbit_behavior(&eta, vertices, tol),
            orbit_behavior(&eta, faces, tol),
            orbit_behavior(&eta, edges, tol),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::normalize_to_match;
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn q(n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }

    fn setup() -> (CanonicalInvariants, Equivariants) {
        let inv = CanonicalInvariants::build().unwrap();
        let eq = Equivariants::build(&inv);
        (inv, eq)
    }

    #[test]
    fn cross_of_xy() {
        let xy = RationalForm::from_int_terms(2, [(1, 1, 1)]);
        let c = cross(&xy);
        // (x, -y)
        assert_eq!(c.first, RationalForm::from_int_terms(1, [(1, 0, 1)]));
        assert_eq!(c.second, RationalForm::from_int_terms(1, [(0, 1, -1)]));
    }

    #[test]
    fn cross_of_f_and_h_match_canonical_up_to_scalar() {
        let (inv, eq) = setup();
        // cross(F) = -phi; cross(H) = -eta; the canonical signs are pinned
        // by the module relation.
        let cf = cross(&inv.f);
        assert_eq!(normalize_to_match(&cf.first, &eq.phi.first).unwrap(), q(-1));
        assert_eq!(normalize_to_match(&cf.second, &eq.phi.second).unwrap(), q(-1));
        let ch = cross(&inv.h);
        assert_eq!(normalize_to_match(&ch.first, &eq.eta.first).unwrap(), q(-1));
    }

    #[test]
    fn phi_matches_printed_expansion() {
        let (_, eq) = setup();
        let printed_first =
            RationalForm::from_int_terms(11, [(11, 0, -1), (6, 5, 66), (1, 10, 11)]);
        let printed_second =
            RationalForm::from_int_terms(11, [(10, 1, 11), (5, 6, -66), (0, 11, -1)]);
        assert_eq!(eq.phi.first, printed_first);
        assert_eq!(eq.phi.second, printed_second);
    }

    #[test]
    fn eta_is_twenty_times_display_normalization() {
        let (_, eq) = setup();
        let display_first = RationalForm::from_int_terms(
            19,
            [(15, 4, -57), (10, 9, -247), (5, 14, 171), (0, 19, -1)],
        );
        let display_second = RationalForm::from_int_terms(
            19,
            [(19, 0, 1), (14, 5, 171), (9, 10, 247), (4, 15, -57)],
        );
        assert_eq!(eq.eta.first, display_first.scale(&q(20)));
        assert_eq!(eq.eta.second, display_second.scale(&q(20)));
    }

    #[test]
    fn module_relation_exact_and_perturbed() {
        let (inv, eq) = setup();
        assert!(eq.verify_module_relation(&inv));
        // wrong sign on the third coefficient
        let bad = module_relation_residual(&inv, &eq.phi, &eq.eta, 5, 5, 3);
        assert!(!bad.is_zero());
        // numeric spot-check at (1, 2): exact zero of both components
        let r = module_relation_residual(&inv, &eq.phi, &eq.eta, 5, 5, -3);
        assert!(r.first.eval(&q(1), &q(2)).is_zero());
        assert!(r.second.eval(&q(1), &q(2)).is_zero());
    }

    #[test]
    fn critical_forms_of_basic_maps() {
        let (inv, eq) = setup();
        // J_phi is proportional to H (20 points), J_eta to F^3 (threefold
        // multiplicity at vertices).
        let jphi = eq.phi.critical_form();
        assert!(normalize_to_match(&jphi, &inv.h).is_ok());
        let jeta = eq.eta.critical_form();
        assert!(normalize_to_match(&jeta, &inv.f.pow(3)).is_ok());
        // identity map has a constant critical form
        let eps = RationalMap::new(
            RationalForm::from_int_terms(1, [(1, 0, 1)]),
            RationalForm::from_int_terms(1, [(0, 1, 1)]),
        );
        let jeps = eps.critical_form();
        assert_eq!(jeps.degree(), 0);
        assert_eq!(jeps.coefficient(0, 0), q(1));
    }

    #[test]
    fn family_degenerations_are_exact_multiples() {
        let (inv, eq) = setup();
        // J of H*phi = const * H^3; J of F*eta = const * F^5;
        // 5*H*phi - 3*F*eta = -5*T*eps with J proportional to T^2.
        let ja = eq.family_map_exact(&q(1), &q(0)).critical_form();
        assert_eq!(normalize_to_match(&ja, &inv.h.pow(3)).unwrap(), q(-341));
        let jb = eq.family_map_exact(&q(0), &q(1)).critical_form();
        assert_eq!(normalize_to_match(&jb, &inv.f.pow(5)).unwrap(), q(2827200));
        let jt = eq.family_map_exact(&q(5), &q(-3)).critical_form();
        assert!(normalize_to_match(&jt, &inv.t.pow(2)).is_ok());
    }

    #[test]
    fn generic_family_member_critical_form_not_divisible_by_invariants() {
        let (inv, eq) = setup();
        let j = eq.family_map_exact(&q(2), &q(3)).critical_form();
        assert_eq!(j.degree(), 60);
        assert!(j.try_div_exact(&inv.f).is_none());
        assert!(j.try_div_exact(&inv.h).is_none());
        assert!(j.try_div_exact(&inv.t).is_none());
    }

    #[test]
    fn family_5_minus_3_acts_as_identity() {
        let (_, eq) = setup();
        let map = eq.family_map(MapFamilyCoefficients {
            a: Complex64::new(5.0, 0.0),
            b: Complex64::new(-3.0, 0.0),
        });
        let mut state = 0xabcdef123u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            (state >> 11) as f64 / (1u64 << 53) as f64 * 3.0 - 1.5
        };
        for _ in 0..20 {
            let p = ProjectivePoint::from_affine(Complex64::new(next(), next()));
            assert!(map.apply(&p).dist(&p) < 1e-9);
        }
    }

    #[test]
    fn basic_maps_are_equivariant() {
        let (_, eq) = setup();
        let group = IcosaGroup::build(1e-10).unwrap();
        let samples: Vec<Complex64> = (0..20)
            .map(|k| {
                let t = k as f64 * 0.3141 + 0.1;
                Complex64::new(t.cos() * (0.4 + 0.07 * k as f64), t.sin() * 0.8)
            })
            .collect();
        assert!(equivariance_defect(&eq.phi.to_complex(), &group, &samples) < 1e-8);
        assert!(equivariance_defect(&eq.eta.to_complex(), &group, &samples) < 1e-8);
        let fam = eq.family_map(MapFamilyCoefficients {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(1.5954, 0.0),
        });
        assert!(equivariance_defect(&fam, &group, &samples) < 1e-8);
    }

    #[test]
    fn special_orbit_table_matches_expected() {
        let (inv, eq) = setup();
        let group = IcosaGroup::build(1e-10).unwrap();
        let (v, f, e) = group.special_orbits(&inv).unwrap();
        let report = check_special_orbit_table(&eq, &v, &f, &e).unwrap();
        assert!(report.matches_expected());
        // phi fixes the vertex at infinity; eta sends it to its antipode 0
        let phi = eq.phi.to_complex();
        let eta = eq.eta.to_complex();
        let inf = ProjectivePoint::infinity();
        assert!(phi.apply(&inf).dist(&inf) < 1e-12);
        assert!(eta.apply(&inf).dist(&inf.antipode()) < 1e-12);
    }

    #[test]
    fn invariance_of_canonical_forms_under_lifts() {
        let (inv, _) = setup();
        let group = IcosaGroup::build(1e-10).unwrap();
        let fc = inv.f.to_complex();
        let hc = inv.h.to_complex();
        let tc = inv.t.to_complex();
        let mut state = 7u64;
        let mut rand_f = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(99);
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        let i = Complex64::new(0.0, 1.0);
        for k in 0..50usize {
            let p = ProjectivePoint::new(
                Complex64::new(rand_f(), rand_f()),
                Complex64::new(rand_f(), rand_f()),
            );
            let e = &group.elements[(k * 17 + 3) % 60];
            let q = e.apply_raw(&p);
            let fv = fc.eval(&p.x, &p.y);
            assert!((fc.eval(&q.0, &q.1) - fv).norm() < 1e-9 * fv.norm().max(1.0));
            let hv = hc.eval(&p.x, &p.y);
            assert!((hc.eval(&q.0, &q.1) - hv).norm() < 1e-8 * hv.norm().max(1.0));
            // T is invariant on the det-1 lift and flips sign on the i-scaled lift
            let tv = tc.eval(&p.x, &p.y);
            assert!((tc.eval(&q.0, &q.1) - tv).norm() < 1e-8 * tv.norm().max(1.0));
            let qi = (q.0 * i, q.1 * i);
            assert!((tc.eval(&qi.0, &qi.1) + tv).norm() < 1e-8 * tv.norm().max(1.0));
        }
    }
}
