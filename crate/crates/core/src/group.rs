//! The 60-element projective icosahedral action, its antiholomorphic
//! extension (antipodal map and 15 mirror circles), and the special orbits
//! of sizes 12, 20 and 30.
//!
//! Elements are materialized as determinant-1 lifts in double precision;
//! exact identities live in the forms module. The sphere model is the one
//! in which the antipode of z is -1/conj(z).

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{IcosaError, Result};
use crate::forms::CanonicalInvariants;
use crate::poly::{aberth_roots, newton_polish_c64};

const GOLD: f64 = 1.618_033_988_749_895;

/// Point of the Riemann sphere in normalized homogeneous coordinates: the
/// larger-modulus coordinate has modulus 1. Infinity is (1, 0), never a
/// special case.
#[derive(Clone, Copy, Debug)]
pub struct ProjectivePoint {
    pub x: Complex64,
    pub y: Complex64,
}

impl ProjectivePoint {
    pub fn new(x: Complex64, y: Complex64) -> Self {
        let m = x.norm().max(y.norm());
        assert!(m > 0.0, "(0, 0) is not a projective point");
        ProjectivePoint { x: x / m, y: y / m }
    }

    pub fn from_affine(z: Complex64) -> Self {
        Self::new(z, Complex64::new(1.0, 0.0))
    }

    pub fn infinity() -> Self {
        ProjectivePoint {
            x: Complex64::new(1.0, 0.0),
            y: Complex64::new(0.0, 0.0),
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.y.norm() < 1e-13 * self.x.norm()
    }

    /// Affine coordinate z = x/y; `None` at infinity.
    pub fn to_affine(&self) -> Option<Complex64> {
        if self.is_infinite() {
            None
        } else {
            Some(self.x / self.y)
        }
    }

    /// (conj y, -conj x): the antipodal involution z -> -1/conj(z).
    pub fn antipode(&self) -> Self {
        Self::new(self.y.conj(), -self.x.conj())
    }

    /// Chordal (sine) distance, chart-free: |x1 y2 - y1 x2| / (|p||q|).
    pub fn dist(&self, other: &Self) -> f64 {
        let cross = self.x * other.y - self.y * other.x;
        let n1 = (self.x.norm_sqr() + self.y.norm_sqr()).sqrt();
        let n2 = (other.x.norm_sqr() + other.y.norm_sqr()).sqrt();
        cross.norm() / (n1 * n2)
    }

    /// |z_p - z_q| in the affine chart; infinite if either point is infinite
    /// and the other is not.
    pub fn chart_dist(&self, other: &Self) -> f64 {
        match (self.to_affine(), other.to_affine()) {
            (Some(a), Some(b)) => (a - b).norm(),
            (None, None) => 0.0,
            _ => f64::INFINITY,
        }
    }

    /// Unit vector on the embedded sphere (stereographic from the north
    /// pole; z = infinity maps to (0, 0, 1)).
    pub fn sphere_vec(&self) -> [f64; 3] {
        let nx = self.x.norm_sqr();
        let ny = self.y.norm_sqr();
        let d = nx + ny;
        let w = self.x * self.y.conj();
        [2.0 * w.re / d, 2.0 * w.im / d, (nx - ny) / d]
    }

    /// Great-circle angle to another point.
    pub fn sphere_angle(&self, other: &Self) -> f64 {
        let a = self.sphere_vec();
        let b = other.sphere_vec();
        let dot: f64 = a.iter().zip(&b).map(|(u, v)| u * v).sum();
        dot.clamp(-1.0, 1.0).acos()
    }
}

/// One determinant-1 lift of a projective icosahedral element.
#[derive(Clone, Copy, Debug)]
pub struct GroupElement {
    pub m: [[Complex64; 2]; 2],
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement {
            m: [
                [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            ],
        }
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn apply(&self, p: &ProjectivePoint) -> ProjectivePoint {
        ProjectivePoint::new(
            self.m[0][0] * p.x + self.m[0][1] * p.y,
            self.m[1][0] * p.x + self.m[1][1] * p.y,
        )
    }

    /// Matrix action without projective renormalization; for checking
    /// coordinate-level form identities.
    pub fn apply_raw(&self, p: &ProjectivePoint) -> (Complex64, Complex64) {
        (
            self.m[0][0] * p.x + self.m[0][1] * p.y,
            self.m[1][0] * p.x + self.m[1][1] * p.y,
        )
    }

    pub fn apply_affine(&self, z: Complex64) -> ProjectivePoint {
        self.apply(&ProjectivePoint::from_affine(z))
    }

    pub fn compose(&self, other: &Self) -> Self {
        let a = &self.m;
        let b = &other.m;
        let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        GroupElement { m }
    }

    /// Inverse by adjugate; valid because det = 1.
    pub fn inverse(&self) -> Self {
        GroupElement {
            m: [
                [self.m[1][1], -self.m[0][1]],
                [-self.m[1][0], self.m[0][0]],
            ],
        }
    }

    /// Projective equality: M = lambda N for some scalar.
    pub fn proj_eq(&self, other: &Self, tol: f64) -> bool {
        let mut bi = (0, 0);
        let mut bm = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let n = other.m[i][j].norm();
                if n > bm {
                    bm = n;
                    bi = (i, j);
                }
            }
        }
        if bm == 0.0 {
            return false;
        }
        let lambda = self.m[bi.0][bi.1] / other.m[bi.0][bi.1];
        let mut err = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                err = err.max((self.m[i][j] - lambda * other.m[i][j]).norm());
            }
        }
        err < tol
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut m = self.m;
        for row in &mut m {
            for v in row {
                *v *= s;
            }
        }
        GroupElement { m }
    }
}

/// A mirror great circle, stored by its pole (the rotation axis of the
/// half-turn whose composition with the antipodal map fixes the circle).
#[derive(Clone, Copy, Debug)]
pub struct Mirror {
    pub pole: [f64; 3],
}

/// Chart geometry of a mirror: a line through the origin or a circle.
#[derive(Clone, Copy, Debug, Serialize)]
pub enum MirrorChart {
    /// Points with a*u + b*v = 0.
    Line { a: f64, b: f64 },
    Circle { center: (f64, f64), radius: f64 },
}

impl Mirror {
    /// Signed sine of the spherical latitude of `p` relative to the circle.
    pub fn distance(&self, p: &ProjectivePoint) -> f64 {
        let v = p.sphere_vec();
        (v[0] * self.pole[0] + v[1] * self.pole[1] + v[2] * self.pole[2]).abs()
    }

    pub fn contains(&self, p: &ProjectivePoint, tol: f64) -> bool {
        self.distance(p) < tol
    }

    pub fn chart(&self) -> MirrorChart {
        let [a, b, c] = self.pole;
        if c.abs() < 1e-12 {
            MirrorChart::Line { a, b }
        } else {
            MirrorChart::Circle {
                center: (-a / c, -b / c),
                radius: 1.0 / c.abs(),
            }
        }
    }

    /// Unit tangent of the circle at a point assumed to lie on it.
    pub fn tangent_at(&self, p: &ProjectivePoint) -> [f64; 3] {
        let v = p.sphere_vec();
        let n = self.pole;
        let t = [
            n[1] * v[2] - n[2] * v[1],
            n[2] * v[0] - n[0] * v[2],
            n[0] * v[1] - n[1] * v[0],
        ];
        let norm = (t[0] * t[0] + t[1] * t[1] + t[2] * t[2]).sqrt();
        [t[0] / norm, t[1] / norm, t[2] / norm]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OrbitLabel {
    Vertex,
    Face,
    Edge,
    Generic,
}

/// A finite set of projective points closed under the group.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub points: Vec<ProjectivePoint>,
    pub label: OrbitLabel,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.points.len()
    }

    /// Index of the orbit point nearest to `p` plus the distance.
    pub fn nearest(&self, p: &ProjectivePoint) -> (usize, f64) {
        let mut best = (0, f64::INFINITY);
        for (k, q) in self.points.iter().enumerate() {
            let d = p.dist(q);
            if d < best.1 {
                best = (k, d);
            }
        }
        best
    }
}

/// The 60-element icosahedral group with its multiplication table, mirrors
/// and special orbits.
pub struct IcosaGroup {
    pub elements: Vec<GroupElement>,
    pub mirrors: Vec<Mirror>,
    /// mult[i][j] = index of elements[i] * elements[j].
    pub mult: Vec<Vec<usize>>,
    pub inverse: Vec<usize>,
    pub orders: Vec<usize>,
    tol: f64,
}

impl IcosaGroup {
    /// Generate the group by closure from a 1/5-turn about the 0-infinity
    /// axis and a half-turn about an axis through a real edge-midpoint,
    /// then derive the multiplication table and mirrors.
    pub fn build(tol: f64) -> Result<Self> {
        // z -> e^{2 pi i/5} z with determinant 1.
        let w = Complex64::from_polar(1.0, std::f64::consts::PI / 5.0);
        let g1 = GroupElement {
            m: [
                [w, Complex64::new(0.0, 0.0)],
                [Complex64::new(0.0, 0.0), w.conj()],
            ],
        };
        // Real edge-midpoint m = (1 + sqrt5 + sqrt(10 + 2 sqrt5)) / 2 and the
        // unit-quaternion half-turn about the axis through m and -1/m.
        let s5 = 5.0f64.sqrt();
        let em = (1.0 + s5 + (10.0 + 2.0 * s5).sqrt()) / 2.0;
        let n1 = 2.0 * em / (1.0 + em * em);
        let n3 = (em * em - 1.0) / (1.0 + em * em);
        let i = Complex64::new(0.0, 1.0);
        let g2 = GroupElement {
            m: [
                [i * n3, i * n1],
                [i * n1, -i * n3],
            ],
        };

        let mut elements = vec![GroupElement::identity()];
        let mut frontier = vec![g1, g2];
        let proj_tol = 1e-8;
        while !frontier.is_empty() {
            let mut fresh = Vec::new();
            for cand in frontier.drain(..) {
                if !elements.iter().any(|e| cand.proj_eq(e, proj_tol)) {
                    elements.push(cand);
                    fresh.push(cand);
                }
            }
            if elements.len() > 120 {
                return Err(IcosaError::ClosureOverflow(elements.len()));
            }
            let mut next = Vec::new();
            for a in &fresh {
                for b in &elements {
                    next.push(a.compose(b));
                    next.push(b.compose(a));
                }
            }
            frontier = next;
        }
        if elements.len() != 60 {
            return Err(IcosaError::ClosureOverflow(elements.len()));
        }

        let find = |m: &GroupElement| -> Result<usize> {
            elements
                .iter()
                .position(|e| m.proj_eq(e, proj_tol))
                .ok_or_else(|| IcosaError::Invalid("closure is not closed".into()))
        };
        let mut mult = vec![vec![0usize; 60]; 60];
        for i in 0..60 {
            for j in 0..60 {
                mult[i][j] = find(&elements[i].compose(&elements[j]))?;
            }
        }
        let inverse = (0..60)
            .map(|i| {
                (0..60)
                    .find(|&j| mult[i][j] == 0)
                    .expect("every element has an inverse")
            })
            .collect::<Vec<_>>();
        let orders = (0..60)
            .map(|i| {
                let mut k = 1usize;
                let mut cur = i;
                while cur != 0 {
                    cur = mult[cur][i];
                    k += 1;
                }
                k
            })
            .collect::<Vec<_>>();

        // Mirrors: fixed great circles of (antipodal map) o (half-turn),
        // one per order-2 element; the circle's pole is the rotation axis.
        let mut mirrors = Vec::new();
        for (idx, &ord) in orders.iter().enumerate() {
            if ord != 2 {
                continue;
            }
            let e = &elements[idx];
            // For a half-turn lift A = +-i (n . sigma): K = A / (+-i) is
            // Hermitian traceless with K = n . sigma.
            let k11 = e.m[0][0] / i;
            let k12 = e.m[0][1] / i;
            let mut n = [k12.re, k12.im, k11.re];
            let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
            if norm < 0.5 {
                // wrong phase branch: divide by -i instead
                let k11 = e.m[0][0] / (-i);
                let k12 = e.m[0][1] / (-i);
                n = [k12.re, k12.im, k11.re];
            }
            let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
            n = [n[0] / norm, n[1] / norm, n[2] / norm];
            mirrors.push(Mirror { pole: n });
        }
        if mirrors.len() != 15 {
            return Err(IcosaError::Invalid(format!(
                "expected 15 mirrors, found {}",
                mirrors.len()
            )));
        }

        Ok(IcosaGroup {
            elements,
            mirrors,
            mult,
            inverse,
            orders,
            tol,
        })
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Census of element orders, e.g. {1:1, 2:15, 3:20, 5:24}.
    pub fn order_census(&self) -> std::collections::BTreeMap<usize, usize> {
        let mut counts = std::collections::BTreeMap::new();
        for &o in &self.orders {
            *counts.entry(o).or_insert(0) += 1;
        }
        counts
    }

    /// The twelve icosahedral vertices in closed form:
    /// 0, infinity, golden-ratio ring, and the antipodal inner ring.
    pub fn vertices_closed_form() -> Vec<ProjectivePoint> {
        let mut pts = vec![
            ProjectivePoint::from_affine(Complex64::new(0.0, 0.0)),
            ProjectivePoint::infinity(),
        ];
        for k in 0..5 {
            let zeta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 5.0);
            pts.push(ProjectivePoint::from_affine(zeta * GOLD));
            pts.push(ProjectivePoint::from_affine(-zeta / GOLD));
        }
        pts
    }

    /// Apply all 60 elements and deduplicate.
    pub fn orbit_of(&self, p: &ProjectivePoint) -> Orbit {
        let mut points: Vec<ProjectivePoint> = Vec::new();
        for e in &self.elements {
            let q = e.apply(p);
            if !points.iter().any(|r| r.dist(&q) < 1e-8) {
                points.push(q);
            }
        }
        let label = match points.len() {
            12 => OrbitLabel::Vertex,
            20 => OrbitLabel::Face,
            30 => OrbitLabel::Edge,
            _ => OrbitLabel::Generic,
        };
        Orbit { points, label }
    }

    /// The 12/20/30 orbits as polished roots of F, H and T (plus infinity
    /// for the vertex orbit), each cross-validated as a single group orbit.
    pub fn special_orbits(&self, inv: &CanonicalInvariants) -> Result<(Orbit, Orbit, Orbit)> {
        let solve = |form: &crate::forms::RationalForm, with_inf: bool, expect: usize| {
            let coeffs = form
                .to_complex()
                .dense_by_x();
            let mut roots = aberth_roots(&coeffs)?;
            for r in &mut roots {
                *r = newton_polish_c64(&coeffs, *r, 6);
            }
            let mut points: Vec<ProjectivePoint> =
                roots.into_iter().map(ProjectivePoint::from_affine).collect();
            if with_inf {
                points.push(ProjectivePoint::infinity());
            }
            if points.len() != expect {
                return Err(IcosaError::RootFindingFailure(format!(
                    "expected {expect} points, got {}",
                    points.len()
                )));
            }
            // single-orbit cross-validation
            let orb = self.orbit_of(&points[0]);
            if orb.size() != expect {
                return Err(IcosaError::RootFindingFailure(format!(
                    "orbit of a root has size {} != {expect}",
                    orb.size()
                )));
            }
            for p in &points {
                if orb.nearest(p).1 > 1e-7 {
                    return Err(IcosaError::RootFindingFailure(
                        "roots do not form one group orbit".into(),
                    ));
                }
            }
            Ok(points)
        };
        let v = Orbit {
            points: solve(&inv.f, true, 12)?,
            label: OrbitLabel::Vertex,
        };
        let f = Orbit {
            points: solve(&inv.h, false, 20)?,
            label: OrbitLabel::Face,
        };
        let e = Orbit {
            points: solve(&inv.t, false, 30)?,
            label: OrbitLabel::Edge,
        };
        Ok((v, f, e))
    }

    /// A mirror passing within `tol` of `p`, if any.
    pub fn mirror_containing(&self, p: &ProjectivePoint, tol: f64) -> Option<&Mirror> {
        self.mirrors.iter().find(|m| m.contains(p, tol))
    }

    /// Indices of elements mapping the real-axis circle to itself.
    pub fn real_axis_stabilizer(&self) -> Vec<usize> {
        let samples = [0.37, -1.62, 2.9, -0.21];
        let real_mirror = Mirror { pole: [0.0, 1.0, 0.0] };
        (0..60)
            .filter(|&i| {
                samples.iter().all(|&s| {
                    let img = self.elements[i].apply_affine(Complex64::new(s, 0.0));
                    real_mirror.contains(&img, 1e-8)
                })
            })
            .collect()
    }

    /// Permutation action of element `g` on a point list (index map).
    pub fn permutation_on(&self, g: usize, points: &[ProjectivePoint]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(points.len());
        for p in points {
            let q = self.elements[g].apply(p);
            let (k, d) = Orbit {
                points: points.to_vec(),
                label: OrbitLabel::Generic,
            }
            .nearest(&q);
            if d > 1e-7 {
                return Err(IcosaError::Invalid(
                    "point set is not invariant under the element".into(),
                ));
            }
            out.push(k);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::CanonicalInvariants;

    fn group() -> IcosaGroup {
        IcosaGroup::build(1e-10).unwrap()
    }

    #[test]
    fn order_census_is_alt5() {
        let g = group();
        let census = g.order_census();
        assert_eq!(census.get(&1), Some(&1));
        assert_eq!(census.get(&2), Some(&15));
        assert_eq!(census.get(&3), Some(&20));
        assert_eq!(census.get(&5), Some(&24));
    }

    #[test]
    fn determinants_are_one() {
        for e in &group().elements {
            assert!((e.det() - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn vertex_set_is_invariant() {
        let g = group();
        let verts = IcosaGroup::vertices_closed_form();
        for e in &g.elements {
            for v in &verts {
                let img = e.apply(v);
                let d = verts.iter().map(|w| img.dist(w)).fold(f64::INFINITY, f64::min);
                assert!(d < 1e-10, "vertex image strayed by {d}");
            }
        }
    }

    #[test]
    fn antipode_examples() {
        let zero = ProjectivePoint::from_affine(Complex64::new(0.0, 0.0));
        assert!(zero.antipode().is_infinite());

        let p = ProjectivePoint::from_affine(Complex64::new(1.0, 1.0));
        // z -> -1/conj(z)
        let expect = -(Complex64::new(1.0, 1.0).conj()).finv();
        assert!((p.antipode().to_affine().unwrap() - expect).norm() < 1e-14);
    }

    #[test]
    fn antipode_is_involution() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 * 4.0 - 2.0
        };
        for _ in 0..100 {
            let p = ProjectivePoint::from_affine(Complex64::new(next(), next()));
            assert!(p.antipode().antipode().dist(&p) < 1e-14);
        }
    }

    #[test]
    fn special_orbit_sizes_and_membership() {
        let g = group();
        let inv = CanonicalInvariants::build().unwrap();
        let (v, f, e) = g.special_orbits(&inv).unwrap();
        assert_eq!(v.size(), 12);
        assert_eq!(f.size(), 20);
        assert_eq!(e.size(), 30);
        // the two real roots of z^2 - z - 1 are vertices
        for r in [GOLD, -1.0 / GOLD] {
            let p = ProjectivePoint::from_affine(Complex64::new(r, 0.0));
            assert!(v.nearest(&p).1 < 1e-9);
        }
        // generated 12-orbit matches the closed-form list
        for w in IcosaGroup::vertices_closed_form() {
            assert!(v.nearest(&w).1 < 1e-9);
        }
    }

    #[test]
    fn orbit_sizes_by_point_type() {
        let g = group();
        let zero = ProjectivePoint::from_affine(Complex64::new(0.0, 0.0));
        assert_eq!(g.orbit_of(&zero).size(), 12);
        let generic = ProjectivePoint::from_affine(Complex64::new(0.3, 0.41));
        assert_eq!(g.orbit_of(&generic).size(), 60);
        // real edge-midpoint: root of z^4 - 2z^3 - 6z^2 + 2z + 1
        let em = (1.0 + 5.0f64.sqrt() + (10.0 + 2.0 * 5.0f64.sqrt()).sqrt()) / 2.0;
        let p = ProjectivePoint::from_affine(Complex64::new(em, 0.0));
        assert_eq!(g.orbit_of(&p).size(), 30);
    }

    #[test]
    fn real_axis_is_a_mirror_and_contains_reals() {
        let g = group();
        let real = ProjectivePoint::from_affine(Complex64::new(0.73, 0.0));
        assert!(g.mirror_containing(&real, 1e-9).is_some());
        let generic = ProjectivePoint::from_affine(Complex64::new(0.31, 0.57));
        assert!(g.mirror_containing(&generic, 1e-6).is_none());
    }

    #[test]
    fn special_points_lie_on_two_or_more_mirrors() {
        let g = group();
        let inv = CanonicalInvariants::build().unwrap();
        let (v, f, e) = g.special_orbits(&inv).unwrap();
        for orbit in [&v, &f, &e] {
            for p in &orbit.points {
                let count = g.mirrors.iter().filter(|m| m.contains(p, 1e-7)).count();
                assert!(count >= 2, "special point on {count} mirrors");
            }
        }
    }

    #[test]
    fn klein_four_stabilizer_of_real_axis() {
        let g = group();
        let stab = g.real_axis_stabilizer();
        assert_eq!(stab.len(), 4);
        // Klein four: every non-identity element has order 2
        for &i in &stab {
            assert!(g.orders[i] == 1 || g.orders[i] == 2);
        }
    }

    #[test]
    fn half_turns_fix_antipodal_edge_midpoints_and_flip_their_mirror() {
        let g = group();
        let inv = CanonicalInvariants::build().unwrap();
        let (_, _, edges) = g.special_orbits(&inv).unwrap();
        let mut checked = 0;
        for i in 0..60 {
            if g.orders[i] != 2 {
                continue;
            }
            let e = &g.elements[i];
            // fixed points of the half-turn are antipodal edge-midpoints
            let mirror = Mirror {
                pole: {
                    let im = Complex64::new(0.0, 1.0);
                    let k11 = e.m[0][0] / im;
                    let k12 = e.m[0][1] / im;
                    let mut n = [k12.re, k12.im, k11.re];
                    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
                    if norm < 0.5 {
                        let k11 = e.m[0][0] / (-im);
                        let k12 = e.m[0][1] / (-im);
                        n = [k12.re, k12.im, k11.re];
                    }
                    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
                    [n[0] / norm, n[1] / norm, n[2] / norm]
                },
            };
            // pole direction hits the edge orbit
            let d = mirror.pole;
            let zp = if 1.0 - d[2] > 1e-9 {
                ProjectivePoint::from_affine(Complex64::new(
                    d[0] / (1.0 - d[2]),
                    d[1] / (1.0 - d[2]),
                ))
            } else {
                ProjectivePoint::infinity()
            };
            assert!(edges.nearest(&zp).1 < 1e-7);
            // the element sends points of its mirror circle to their antipodes
            let n = mirror.pole;
            let mut u = [n[1], -n[0], 0.0];
            let un = (u[0] * u[0] + u[1] * u[1]).sqrt();
            if un < 1e-6 {
                u = [1.0, 0.0, 0.0];
            } else {
                u = [u[0] / un, u[1] / un, 0.0];
            }
            let q = if (1.0 - u[2]).abs() > 1e-9 {
                ProjectivePoint::from_affine(Complex64::new(
                    u[0] / (1.0 - u[2]),
                    u[1] / (1.0 - u[2]),
                ))
            } else {
                ProjectivePoint::infinity()
            };
            assert!(mirror.contains(&q, 1e-9));
            let img = e.apply(&q);
            assert!(img.dist(&q.antipode()) < 1e-8);
            checked += 1;
        }
        assert_eq!(checked, 15);
    }
}
