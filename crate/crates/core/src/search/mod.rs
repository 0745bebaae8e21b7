//! The search for degree-31 maps with sixty critical 2-periodic points:
//! solve the antipodal-exchange system for (a, b), divide the forced
//! Jacobian by F*H*T, restrict to the real axis, solve the degree-61
//! equation, classify its real roots, and assemble the two special maps.

pub mod basins;
pub mod residual;

use num_complex::Complex64;

use crate::equivariants::{Equivariants, MapFamilyCoefficients};
use crate::error::{IcosaError, Result};
use crate::forms::CanonicalInvariants;
use crate::group::{IcosaGroup, Orbit, ProjectivePoint};
use crate::poly::{aberth_roots, newton_polish_rational, QPoly};

pub use residual::ResidualPolynomial;

/// Affine evaluation tables for the coefficient solve and the numeric
/// residual oracle.
pub struct SearchContext {
    fa: Vec<Complex64>,
    ha: Vec<Complex64>,
    ta: Vec<Complex64>,
    phi1: Vec<Complex64>,
    phi2: Vec<Complex64>,
    eta1: Vec<Complex64>,
    eta2: Vec<Complex64>,
    j_a: Vec<Complex64>,
    j_ab: Vec<Complex64>,
    j_b: Vec<Complex64>,
}

impl SearchContext {
    pub fn build(inv: &CanonicalInvariants, eq: &Equivariants) -> Self {
        let cv = |form: &crate::forms::RationalForm| form.to_complex().dense_by_x();
        let j_ab = {
            let m1 = crate::forms::jacobian_det(&eq.h_phi.first, &eq.f_eta.second);
            let m2 = crate::forms::jacobian_det(&eq.f_eta.first, &eq.h_phi.second);
            m1.add(&m2)
        };
        SearchContext {
            fa: cv(&inv.f),
            ha: cv(&inv.h),
            ta: cv(&inv.t),
            phi1: cv(&eq.phi.first),
            phi2: cv(&eq.phi.second),
            eta1: cv(&eq.eta.first),
            eta2: cv(&eq.eta.second),
            j_a: cv(&eq.h_phi.critical_form()),
            j_ab: cv(&j_ab),
            j_b: cv(&eq.f_eta.critical_form()),
        }
    }

    fn h(&self, v: &[Complex64], z: Complex64) -> Complex64 {
        crate::poly::horner(v, z)
    }

    /// Solve a*(H phi)(p) + b*(F eta)(p) = (1, -conj z) for p = (z, 1).
    pub fn solve_coefficients(&self, z: Complex64) -> Result<MapFamilyCoefficients> {
        self.solve_coefficients_with(z, z.conj())
    }

    /// Same linear solve with the conjugate treated as an independent input.
    pub fn solve_coefficients_with(
        &self,
        z: Complex64,
        zbar: Complex64,
    ) -> Result<MapFamilyCoefficients> {
        let hv = self.h(&self.ha, z);
        let fv = self.h(&self.fa, z);
        let m11 = hv * self.h(&self.phi1, z);
        let m21 = hv * self.h(&self.phi2, z);
        let m12 = fv * self.h(&self.eta1, z);
        let m22 = fv * self.h(&self.eta2, z);
        let det = m11 * m22 - m12 * m21;
        let scale = (m11.norm() + m12.norm()) * (m21.norm() + m22.norm()) + 1.0;
        if det.norm() < 1e-13 * scale {
            return Err(IcosaError::SingularSystem { det: det.norm() });
        }
        let r1 = Complex64::new(1.0, 0.0);
        let r2 = -zbar;
        Ok(MapFamilyCoefficients {
            a: (r1 * m22 - m12 * r2) / det,
            b: (m11 * r2 - r1 * m21) / det,
        })
    }

    /// Numeric residual oracle: the cleared-denominator (a, b), the family
    /// Jacobian, then division by F*H*T. Agrees with the symbolic M
    /// identically (same construction path, floating arithmetic).
    pub fn critical_residual(&self, z: Complex64, zbar: Complex64) -> Result<Complex64> {
        let fv = self.h(&self.fa, z);
        let hv = self.h(&self.ha, z);
        let tv = self.h(&self.ta, z);
        let fht = fv * hv * tv;
        let scale = fv.norm().max(1.0) * hv.norm().max(1.0) * tv.norm().max(1.0);
        if fht.norm() < 1e-12 * scale {
            return Err(IcosaError::DivisionNearZero(format!("{z}")));
        }
        let abar = fv * (self.h(&self.eta2, z) + zbar * self.h(&self.eta1, z));
        let bbar = -hv * (self.h(&self.phi2, z) + zbar * self.h(&self.phi1, z));
        let j = abar * abar * self.h(&self.j_a, z)
            + abar * bbar * self.h(&self.j_ab, z)
            + bbar * bbar * self.h(&self.j_b, z);
        Ok(j / fht)
    }
}

/// Classification of one real root of the degree-61 restriction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum RootClass {
    Vertex,
    FaceCenter,
    EdgeMidpoint,
    New,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct RealRoot {
    pub value: f64,
    pub class: RootClass,
}

/// Census of the degree-61 real restriction.
#[derive(Clone, Debug, serde::Serialize)]
pub struct RootCensus {
    pub total: usize,
    pub real: Vec<RealRoot>,
    pub counts: CensusCounts,
}

#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct CensusCounts {
    pub vertices: usize,
    pub face_centers: usize,
    pub edge_midpoints: usize,
    pub new: usize,
}

/// Solve the restriction, polish every root in exact rational arithmetic,
/// split real from complex at |Im| < 1e-20, and classify the real roots by
/// distance to the special orbits.
pub fn real_restriction_census(
    restriction: &QPoly,
    vertices: &Orbit,
    faces: &Orbit,
    edges: &Orbit,
    digits: u32,
) -> Result<RootCensus> {
    let coeffs = restriction.to_c64();
    let raw = aberth_roots(&coeffs)?;
    if raw.len() != 61 {
        return Err(IcosaError::RootCountMismatch(format!(
            "expected 61 roots, found {}",
            raw.len()
        )));
    }
    let mut real = Vec::new();
    let mut complex_count = 0usize;
    for r in raw {
        let polished = newton_polish_rational(restriction, r, digits);
        if polished.imag_abs < 1e-20 {
            let value = polished.value.to_c64().re;
            let p = ProjectivePoint::from_affine(Complex64::new(value, 0.0));
            let class = if vertices.nearest(&p).1 < 1e-8 {
                RootClass::Vertex
            } else if faces.nearest(&p).1 < 1e-8 {
                RootClass::FaceCenter
            } else if edges.nearest(&p).1 < 1e-8 {
                RootClass::EdgeMidpoint
            } else {
                RootClass::New
            };
            real.push(RealRoot { value, class });
        } else {
            complex_count += 1;
        }
    }
    real.sort_by(|a, b| a.value.partial_cmp(&b.value).unwrap());
    let count = |c: RootClass| real.iter().filter(|r| r.class == c).count();
    let counts = CensusCounts {
        vertices: count(RootClass::Vertex),
        face_centers: count(RootClass::FaceCenter),
        edge_midpoints: count(RootClass::EdgeMidpoint),
        new: count(RootClass::New),
    };
    if real.len() != 19
        || counts.vertices != 3
        || counts.face_centers != 4
        || counts.edge_midpoints != 4
        || counts.new != 8
    {
        return Err(IcosaError::RootCountMismatch(format!(
            "real census {} = {:?} (complex {})",
            real.len(),
            counts,
            complex_count
        )));
    }
    Ok(RootCensus {
        total: 61,
        real,
        counts,
    })
}

/// Group the 8 new real roots into the two slices cut out by the Klein-4
/// stabilizer of the real axis.
pub fn new_root_slices(group: &IcosaGroup, census: &RootCensus) -> Result<[Vec<f64>; 2]> {
    let stab = group.real_axis_stabilizer();
    if stab.len() != 4 {
        return Err(IcosaError::Invalid(format!(
            "real-axis stabilizer has {} elements",
            stab.len()
        )));
    }
    let new_roots: Vec<f64> = census
        .real
        .iter()
        .filter(|r| r.class == RootClass::New)
        .map(|r| r.value)
        .collect();
    let mut assigned = vec![false; new_roots.len()];
    let mut slices: Vec<Vec<f64>> = Vec::new();
    for k in 0..new_roots.len() {
        if assigned[k] {
            continue;
        }
        let mut slice = Vec::new();
        let p = ProjectivePoint::from_affine(Complex64::new(new_roots[k], 0.0));
        for &s in &stab {
            let img = group.elements[s].apply(&p);
            for (j, &r) in new_roots.iter().enumerate() {
                if !assigned[j]
                    && img.dist(&ProjectivePoint::from_affine(Complex64::new(r, 0.0))) < 1e-7
                {
                    assigned[j] = true;
                    slice.push(r);
                }
            }
        }
        slices.push(slice);
    }
    if slices.len() != 2 || slices.iter().any(|s| s.len() != 4) {
        return Err(IcosaError::RootCountMismatch(format!(
            "expected two 4-point real slices, got {:?}",
            slices.iter().map(|s| s.len()).collect::<Vec<_>>()
        )));
    }
    let mut it = slices.into_iter();
    Ok([it.next().unwrap(), it.next().unwrap()])
}

/// Truncation pattern of a 60-point critical orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Polyhedron {
    /// 12 pentagons of 5 around the icosahedral vertices.
    Soccer,
    /// 20 triangles of 3 around the face-centers.
    DualSoccer,
}

/// Decide soccer vs dual soccer from nearest-neighbor patterns.
pub fn classify_polyhedron(orbit: &Orbit, vertices: &Orbit, faces: &Orbit) -> Result<Polyhedron> {
    if orbit.size() != 60 {
        return Err(IcosaError::OrbitSizeError {
            got: orbit.size(),
            expected: 60,
        });
    }
    let ring_count = |centers: &Orbit, expect: usize| -> bool {
        let mut total = 0usize;
        for c in &centers.points {
            let mut dists: Vec<f64> = orbit.points.iter().map(|p| c.sphere_angle(p)).collect();
            dists.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let dmin = dists[0];
            let within = dists.iter().filter(|&&d| d < dmin * 1.05 + 1e-9).count();
            if within != expect {
                return false;
            }
            total += within;
        }
        total == 60
    };
    if ring_count(vertices, 5) {
        Ok(Polyhedron::Soccer)
    } else if ring_count(faces, 3) {
        Ok(Polyhedron::DualSoccer)
    } else {
        Err(IcosaError::Unclassifiable)
    }
}

/// One of the two special maps, its critical orbit, and its solve data.
#[derive(Clone)]
pub struct SpecialMapSolution {
    pub label: Polyhedron,
    /// Solved family coefficients normalized to a = 1.
    pub coeff_b: f64,
    /// The map scaled so the first component is monic in x.
    pub map: crate::equivariants::ComplexMap,
    pub orbit: Orbit,
    /// Real-axis slice of the critical orbit (the four real members).
    pub real_slice: Vec<f64>,
}

/// Expand both new-root slices into 60-point orbits, solve the coefficient
/// system on each, normalize, and classify.
pub fn build_special_maps(
    ctx: &SearchContext,
    eq: &Equivariants,
    group: &IcosaGroup,
    vertices: &Orbit,
    faces: &Orbit,
    slices: &[Vec<f64>; 2],
) -> Result<(SpecialMapSolution, SpecialMapSolution)> {
    let mut solutions = Vec::new();
    for slice in slices {
        // deterministic representative: smallest |z|
        let rep = slice
            .iter()
            .copied()
            .min_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap())
            .expect("slice nonempty");
        let p = ProjectivePoint::from_affine(Complex64::new(rep, 0.0));
        let orbit = group.orbit_of(&p);
        if orbit.size() != 60 {
            return Err(IcosaError::OrbitSizeError {
                got: orbit.size(),
                expected: 60,
            });
        }
        let c = ctx.solve_coefficients(Complex64::new(rep, 0.0))?;
        let b_over_a = c.b / c.a;
        if b_over_a.im.abs() > 1e-8 {
            return Err(IcosaError::Invalid(format!(
                "coefficient ratio is not real: {b_over_a}"
            )));
        }
        let raw = eq.family_map(MapFamilyCoefficients {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(b_over_a.re, 0.0),
        });
        // monic-in-x normalization of the first component
        let lead = raw.first.coefficient(31, 0);
        let inv_lead = lead.finv();
        let map = crate::equivariants::ComplexMap::new(
            raw.first.scale(&inv_lead),
            raw.second.scale(&inv_lead),
        );
        let label = classify_polyhedron(&orbit, vertices, faces)?;
        solutions.push(SpecialMapSolution {
            label,
            coeff_b: b_over_a.re,
            map,
            orbit,
            real_slice: slice.clone(),
        });
    }
    let mut it = solutions.into_iter();
    let s1 = it.next().unwrap();
    let s2 = it.next().unwrap();
    match (s1.label, s2.label) {
        (Polyhedron::Soccer, Polyhedron::DualSoccer) => Ok((s1, s2)),
        (Polyhedron::DualSoccer, Polyhedron::Soccer) => Ok((s2, s1)),
        _ => Err(IcosaError::Unclassifiable),
    }
}

/// Divisibility statement behind the residual, checked numerically: the
/// quotient |J| / |F H T| stays finite along rays into the special orbits.
pub fn divisibility_bounded_near_special_points(
    ctx: &SearchContext,
    orbit_points: &[ProjectivePoint],
    directions: usize,
) -> bool {
    for p in orbit_points.iter().take(6) {
        let Some(z0) = p.to_affine() else { continue };
        for k in 0..directions {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / directions as f64 + 0.13;
            for &eps in &[1e-2, 1e-3, 1e-4] {
                let z = z0 + Complex64::from_polar(eps, theta);
                match ctx.critical_residual(z, z.conj()) {
                    Ok(v) => {
                        if !v.is_finite() {
                            return false;
                        }
                    }
                    Err(_) => return false,
                }
            }
        }
    }
    true
}
