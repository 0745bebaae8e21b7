//! Two-dimensional Newton iteration for the system R = S = 0 (real and
//! imaginary parts of the residual on the conjugation slice), run over a
//! triangular fundamental cell.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{IcosaError, Result};
use crate::group::{Orbit, ProjectivePoint};
use crate::search::ResidualPolynomial;

/// The five solution classes of R = S = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetClass {
    Vertex,
    FaceCenter,
    EdgeMidpoint,
    SoccerOrbit,
    DualSoccerOrbit,
}

pub const TARGET_CLASSES: [TargetClass; 5] = [
    TargetClass::Vertex,
    TargetClass::FaceCenter,
    TargetClass::EdgeMidpoint,
    TargetClass::SoccerOrbit,
    TargetClass::DualSoccerOrbit,
];

/// All known solutions with their class labels.
pub struct NewtonTargets {
    sets: [Orbit; 5],
}

impl NewtonTargets {
    pub fn new(vertices: Orbit, faces: Orbit, edges: Orbit, o1: Orbit, o2: Orbit) -> Self {
        NewtonTargets {
            sets: [vertices, faces, edges, o1, o2],
        }
    }

    pub fn classify(&self, p: &ProjectivePoint, tol: f64) -> Option<TargetClass> {
        for (k, orbit) in self.sets.iter().enumerate() {
            if orbit.nearest(p).1 < tol {
                return Some(TARGET_CLASSES[k]);
            }
        }
        None
    }
}

/// Spherical triangle spanned by two adjacent vertices and the center of a
/// shared face, rasterized in the affine chart with straight edges.
#[derive(Clone, Copy, Debug)]
pub struct FundamentalTriangle {
    pub corners: [Complex64; 3],
}

impl FundamentalTriangle {
    /// Corners: the vertex at 0, its real neighbor, and the face-center
    /// above the connecting edge.
    pub fn standard(vertices: &Orbit, faces: &Orbit) -> Result<Self> {
        let v0 = ProjectivePoint::from_affine(Complex64::new(0.0, 0.0));
        let gold = (1.0 + 5.0f64.sqrt()) / 2.0;
        let v1 = ProjectivePoint::from_affine(Complex64::new(-1.0 / gold, 0.0));
        if vertices.nearest(&v0).1 > 1e-9 || vertices.nearest(&v1).1 > 1e-9 {
            return Err(IcosaError::Invalid("expected vertices at 0 and -1/phi".into()));
        }
        // the two faces adjacent to the edge are equidistant from both ends;
        // take the one in the upper half plane
        let mut best: Option<Complex64> = None;
        for f in &faces.points {
            let a0 = f.sphere_angle(&v0);
            let a1 = f.sphere_angle(&v1);
            if a0 < 0.7 && a1 < 0.7 {
                let z = f.to_affine().expect("face centers are finite");
                if z.im > 0.0 {
                    best = Some(z);
                }
            }
        }
        let c = best.ok_or_else(|| IcosaError::Invalid("no adjacent face-center found".into()))?;
        Ok(FundamentalTriangle {
            corners: [Complex64::new(0.0, 0.0), Complex64::new(-1.0 / gold, 0.0), c],
        })
    }

    pub fn barycentric_point(&self, b: [f64; 3]) -> Complex64 {
        self.corners[0] * b[0] + self.corners[1] * b[1] + self.corners[2] * b[2]
    }

    /// Centers of the downward sub-triangles of an n-row subdivision; count
    /// is n*(n-1)/2.
    pub fn cell_centers(&self, n: usize) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        if n < 2 {
            return out;
        }
        let scale = 3.0 * n as f64;
        for a in 0..=(n - 2) {
            for b in 0..=(n - 2 - a) {
                let c = n - 2 - a - b;
                out.push(self.barycentric_point([
                    (3 * a + 2) as f64 / scale,
                    (3 * b + 2) as f64 / scale,
                    (3 * c + 2) as f64 / scale,
                ]));
            }
        }
        out
    }

    pub fn containsateral(&self, z: Complex64) -> bool {
        // barycentric sign test in the chart
        let [p0, p1, p2] = self.corners;
        let sign = |a: Complex64, b: Complex64, c: Complex64| {
            (a.re - c.re) * (b.im - c.im) - (b.re - c.re) * (a.im - c.im)
        };
        let d1 = sign(z, p0, p1);
        let d2 = sign(z, p1, p2);
        let d3 = sign(z, p2, p0);
        let has_neg = d1 < 0.0 || d2 < 0.0 || d3 < 0.0;
        let has_pos = d1 > 0.0 || d2 > 0.0 || d3 > 0.0;
        !(has_neg && has_pos)
    }
}

/// Outcome for one initial condition.
#[derive(Clone, Copy, Debug)]
pub struct NewtonOutcome {
    pub class: Option<TargetClass>,
    pub iterations: usize,
}

/// Newton's method on (R, S) from (u, v), classified against the targets.
pub fn newton_from(
    m: &ResidualPolynomial,
    targets: &NewtonTargets,
    start: Complex64,
    max_iter: usize,
) -> NewtonOutcome {
    let mut z = start;
    for it in 0..max_iter {
        let w = z.conj();
        let value = m.eval(z, w);
        let (mz, mw) = m.eval_grad(z, w);
        // W(u, v) = M(z, conj z): W_u = M_z + M_w, W_v = i (M_z - M_w)
        let wu = mz + mw;
        let wv = Complex64::new(0.0, 1.0) * (mz - mw);
        let (ru, rv) = (wu.re, wv.re);
        let (su, sv) = (wu.im, wv.im);
        let det = ru * sv - rv * su;
        let scale = (ru.abs() + rv.abs()) * (su.abs() + sv.abs()) + 1e-300;
        if det.abs() < 1e-14 * scale {
            return NewtonOutcome {
                class: None,
                iterations: it,
            };
        }
        let du = (value.re * sv - rv * value.im) / det;
        let dv = (ru * value.im - value.re * su) / det;
        z = Complex64::new(z.re - du, z.im - dv);
        if !z.is_finite() {
            return NewtonOutcome {
                class: None,
                iterations: it,
            };
        }
        let step = (du * du + dv * dv).sqrt();
        if step < 1e-12 * z.norm().max(1.0) {
            let class = targets.classify(&ProjectivePoint::from_affine(z), 1e-6);
            return NewtonOutcome {
                class,
                iterations: it + 1,
            };
        }
    }
    NewtonOutcome {
        class: None,
        iterations: max_iter,
    }
}

/// Aggregate result over the triangular cell grid.
#[derive(Clone, Debug, serde::Serialize)]
pub struct BasinStats {
    pub cells: usize,
    pub converged: usize,
    pub fraction: f64,
    pub per_class: [usize; 5],
}

/// Run Newton from the center of every cell of the n-row grid.
pub fn run_triangle_grid(
    m: &ResidualPolynomial,
    targets: &NewtonTargets,
    tri: &FundamentalTriangle,
    rows: usize,
    max_iter: usize,
) -> (Vec<Option<TargetClass>>, BasinStats) {
    let centers = tri.cell_centers(rows);
    let classes: Vec<Option<TargetClass>> = centers
        .par_iter()
        .map(|&z| newton_from(m, targets, z, max_iter).class)
        .collect();
    let mut per_class = [0usize; 5];
    let mut converged = 0usize;
    for c in classes.iter().flatten() {
        converged += 1;
        per_class[TARGET_CLASSES.iter().position(|t| t == c).unwrap()] += 1;
    }
    let stats = BasinStats {
        cells: classes.len(),
        converged,
        fraction: converged as f64 / classes.len().max(1) as f64,
        per_class,
    };
    (classes, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariants::Equivariants;
    use crate::forms::CanonicalInvariants;
    use crate::group::IcosaGroup;
    use crate::search::{build_special_maps, new_root_slices, real_restriction_census, SearchContext};

    fn setup() -> (ResidualPolynomial, NewtonTargets, FundamentalTriangle) {
        let inv = CanonicalInvariants::build().unwrap();
        let eq = Equivariants::build(&inv);
        let group = IcosaGroup::build(1e-10).unwrap();
        let (v, f, e) = group.special_orbits(&inv).unwrap();
        let ctx = SearchContext::build(&inv, &eq);
        let m = ResidualPolynomial::build(&inv, &eq).unwrap();
        let census = real_restriction_census(&m.restriction(), &v, &f, &e, 30).unwrap();
        let slices = new_root_slices(&group, &census).unwrap();
        let (g, h) = build_special_maps(&ctx, &eq, &group, &v, &f, &slices).unwrap();
        let tri = FundamentalTriangle::standard(&v, &f).unwrap();
        let targets = NewtonTargets::new(v, f, e, g.orbit, h.orbit);
        (m, targets, tri)
    }

    #[test]
    fn cell_count_is_binomial() {
        let (_, _, tri) = setup();
        assert_eq!(tri.cell_centers(10).len(), 45);
        assert_eq!(tri.cell_centers(100).len(), 4950);
        // every center lies inside the triangle
        for z in tri.cell_centers(12) {
            assert!(tri.containsateral(z));
        }
    }

    #[test]
    fn face_center_converges_immediately() {
        let (m, targets, tri) = setup();
        let fc = tri.corners[2];
        let out = newton_from(&m, &targets, fc, 200);
        assert_eq!(out.class, Some(TargetClass::FaceCenter));
        assert!(out.iterations <= 2, "took {} iterations", out.iterations);
    }

    #[test]
    fn small_grid_mostly_converges() {
        let (m, targets, tri) = setup();
        let (_, stats) = run_triangle_grid(&m, &targets, &tri, 60, 200);
        assert!(stats.fraction >= 0.8, "converged fraction {}", stats.fraction);
        // all five classes show up even on a coarse grid
        for (k, n) in stats.per_class.iter().enumerate() {
            assert!(*n > 0, "class {k} missing");
        }
    }
}
