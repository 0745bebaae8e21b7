//! Iteration of equivariant maps on the sphere: superattracting 2-cycles,
//! basin convergence, the repelling pentagon-edge anchor on the real axis,
//! and the dynamically generated pentagon-hexagon edge.

use num_complex::Complex64;

use crate::equivariants::ComplexMap;
use crate::error::{IcosaError, Result};
use crate::group::{Orbit, ProjectivePoint};

/// A superattracting antipodal 2-cycle {p, q} with q = map(p).
#[derive(Clone, Copy, Debug)]
pub struct TwoCycle {
    pub p: ProjectivePoint,
    pub q: ProjectivePoint,
}

impl TwoCycle {
    pub fn dist_to(&self, x: &ProjectivePoint) -> f64 {
        self.p.dist(x).min(self.q.dist(x))
    }
}

/// Pair up a critical orbit into its 2-cycles under `map`.
pub fn two_cycles(map: &ComplexMap, orbit: &Orbit) -> Result<Vec<TwoCycle>> {
    let n = orbit.size();
    let mut used = vec![false; n];
    let mut cycles = Vec::with_capacity(n / 2);
    for i in 0..n {
        if used[i] {
            continue;
        }
        let p = orbit.points[i];
        let img = map.apply(&p);
        let (j, d) = orbit.nearest(&img);
        if d > 1e-7 || j == i || used[j] {
            return Err(IcosaError::Invalid(format!(
                "orbit point {i} does not pair into a 2-cycle (d = {d:.2e})"
            )));
        }
        // closes up: map(q) returns to p
        if map.apply(&img).dist(&p) > 1e-7 {
            return Err(IcosaError::Invalid(format!("cycle through {i} does not close")));
        }
        used[i] = true;
        used[j] = true;
        cycles.push(TwoCycle {
            p,
            q: orbit.points[j],
        });
    }
    Ok(cycles)
}

/// Trajectory outcome: the cycle index reached, if any.
#[derive(Clone, Debug)]
pub struct TrajectoryResult {
    pub cycle: Option<usize>,
    pub iterations: usize,
    pub last: ProjectivePoint,
}

/// Iterate until two successive even-step iterates agree to `tol`, then snap
/// to the nearest known cycle within `snap`.
pub fn converge_to_cycle(
    map: &ComplexMap,
    cycles: &[TwoCycle],
    p0: &ProjectivePoint,
    max_iter: usize,
    tol: f64,
    snap: f64,
) -> TrajectoryResult {
    // already on a cycle: zero iterations
    for (k, c) in cycles.iter().enumerate() {
        if c.dist_to(p0) < tol {
            return TrajectoryResult {
                cycle: Some(k),
                iterations: 0,
                last: *p0,
            };
        }
    }
    let mut prev_even = *p0;
    let mut cur = *p0;
    let mut steps = 0usize;
    while steps < max_iter {
        cur = map.apply(&cur);
        cur = map.apply(&cur);
        steps += 2;
        if cur.dist(&prev_even) < tol {
            let mut best = (usize::MAX, f64::INFINITY);
            for (k, c) in cycles.iter().enumerate() {
                let d = c.dist_to(&cur);
                if d < best.1 {
                    best = (k, d);
                }
            }
            if best.1 < snap {
                return TrajectoryResult {
                    cycle: Some(best.0),
                    iterations: steps,
                    last: cur,
                };
            }
        }
        prev_even = cur;
    }
    TrajectoryResult {
        cycle: None,
        iterations: steps,
        last: cur,
    }
}

/// The repelling fixed point of g^2 anchoring a pentagon-hexagon edge, with
/// the flanking soccer-ball vertices.
#[derive(Clone, Copy, Debug)]
pub struct EdgeAnchor {
    pub z: f64,
    pub multiplier: f64,
    /// The straddling pentagon vertices: x in the upper half plane, y = conj.
    pub x: Complex64,
    pub y: Complex64,
}

fn g2_real(map: &ComplexMap, t: f64) -> f64 {
    let p = ProjectivePoint::from_affine(Complex64::new(t, 0.0));
    let q = map.iterate(&p, 2);
    q.to_affine().map(|z| z.re).unwrap_or(f64::INFINITY)
}

/// Locate the pentagon-edge anchor of the soccer-ball map in the standard
/// chart: the vertex with 5-fold symmetry is 0 and the anchor sits on the
/// positive real axis between the conjugate pentagon pair.
pub fn find_edge_anchor(map: &ComplexMap, critical_orbit: &Orbit) -> Result<EdgeAnchor> {
    // the pentagon around the vertex at 0: five nearest orbit points
    let zero = ProjectivePoint::from_affine(Complex64::new(0.0, 0.0));
    let mut by_dist: Vec<(f64, Complex64)> = critical_orbit
        .points
        .iter()
        .filter_map(|p| p.to_affine().map(|z| (p.sphere_angle(&zero), z)))
        .collect();
    by_dist.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let pentagon: Vec<Complex64> = by_dist[..5].iter().map(|&(_, z)| z).collect();
    // conjugate pair straddling the positive real axis
    let x = pentagon
        .iter()
        .copied()
        .filter(|z| z.im > 1e-9 && z.re > 0.0)
        .min_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap())
        .ok_or(IcosaError::NotFound(0.0, 0.0))?;
    let y = x.conj();

    // scan for fixed points of g^2 on the positive axis near the pentagon
    let lo = 0.3 * x.norm();
    let hi = 1.6 * x.norm();
    let samples = 600;
    let mut candidates = Vec::new();
    let mut prev_t = lo;
    let mut prev_v = g2_real(map, lo) - lo;
    for k in 1..=samples {
        let t = lo + (hi - lo) * k as f64 / samples as f64;
        let v = g2_real(map, t) - t;
        if prev_v.is_finite() && v.is_finite() && prev_v.signum() != v.signum() {
            // bisect
            let (mut a, mut b) = (prev_t, t);
            let mut fa = prev_v;
            for _ in 0..80 {
                let mid = 0.5 * (a + b);
                let fm = g2_real(map, mid) - mid;
                if fm.signum() == fa.signum() {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            candidates.push(0.5 * (a + b));
        }
        prev_t = t;
        prev_v = v;
    }

    let xp = ProjectivePoint::from_affine(x);
    let yp = ProjectivePoint::from_affine(y);
    for &t in &candidates {
        if (g2_real(map, t) - t).abs() > 1e-11 {
            continue;
        }
        // repelling multiplier of the return map
        let gz = map
            .apply_affine(Complex64::new(t, 0.0))
            .to_affine()
            .ok_or(IcosaError::NotFound(lo, hi))?;
        let mult = (map.affine_derivative(gz) * map.affine_derivative(Complex64::new(t, 0.0)))
            .norm();
        if mult <= 1.0 {
            continue;
        }
        // not itself a critical point
        let p = ProjectivePoint::from_affine(Complex64::new(t, 0.0));
        if critical_orbit.nearest(&p).1 < 1e-3 {
            continue;
        }
        // transversal test: the two sides of the axis flow to x and y
        let eps = 1e-6;
        let plus = settle(map, Complex64::new(t, eps), 400);
        let minus = settle(map, Complex64::new(t, -eps), 400);
        let plus_hits_x = plus.dist(&xp) < 1e-6;
        let minus_hits_y = minus.dist(&yp) < 1e-6;
        if plus_hits_x && minus_hits_y {
            return Ok(EdgeAnchor {
                z: t,
                multiplier: mult,
                x,
                y,
            });
        }
    }
    Err(IcosaError::NotFound(lo, hi))
}

/// Even-step settle: iterate g^2 until stationary and return the limit.
fn settle(map: &ComplexMap, z0: Complex64, max_even: usize) -> ProjectivePoint {
    let mut cur = ProjectivePoint::from_affine(z0);
    for _ in 0..max_even {
        let next = map.iterate(&cur, 2);
        if next.dist(&cur) < 1e-13 {
            return next;
        }
        cur = next;
    }
    cur
}

/// Images of a small vertical segment through the anchor under g^0..g^k.
#[derive(Clone, Debug)]
pub struct SegmentTrajectory {
    /// polylines[j] is the image of the sampled segment under g^j
    pub polylines: Vec<Vec<ProjectivePoint>>,
    /// limit of the +imaginary endpoint under even iteration
    pub plus_limit: ProjectivePoint,
    pub minus_limit: ProjectivePoint,
}

pub fn segment_trajectory(
    map: &ComplexMap,
    anchor: &EdgeAnchor,
    half_length: f64,
    samples_per_side: usize,
    iterates: usize,
) -> SegmentTrajectory {
    let n = 2 * samples_per_side + 1;
    let mut current: Vec<ProjectivePoint> = (0..n)
        .map(|k| {
            let t = (k as f64 / samples_per_side as f64) - 1.0;
            ProjectivePoint::from_affine(Complex64::new(anchor.z, t * half_length))
        })
        .collect();
    let mut polylines = vec![current.clone()];
    for _ in 0..iterates {
        current = current.iter().map(|p| map.apply(p)).collect();
        polylines.push(current.clone());
    }
    let plus_limit = settle(map, Complex64::new(anchor.z, half_length), 400);
    let minus_limit = settle(map, Complex64::new(anchor.z, -half_length), 400);
    SegmentTrajectory {
        polylines,
        plus_limit,
        minus_limit,
    }
}

/// Sup distance from the even-iterate trajectory of the segment to the
/// circular arc through (x, anchor, y), measured in the chart over the lens
/// between the two flanking vertices. Samples stop once they reach a vertex;
/// the exact midpoint is excluded (fixed up to floating drift).
pub fn segment_arc_deviation(
    map: &ComplexMap,
    anchor: &EdgeAnchor,
    half_length: f64,
    samples_per_side: usize,
    even_iterates: usize,
) -> f64 {
    let (center, radius) = circumcircle(anchor.x, Complex64::new(anchor.z, 0.0), anchor.y);
    let lens = (anchor.x - center).arg().abs();
    let xp = ProjectivePoint::from_affine(anchor.x);
    let yp = ProjectivePoint::from_affine(anchor.y);
    let mut worst: f64 = 0.0;
    for k in 0..(2 * samples_per_side + 1) {
        if k == samples_per_side {
            continue; // the anchor itself
        }
        let t = (k as f64 / samples_per_side as f64) - 1.0;
        let mut p = ProjectivePoint::from_affine(Complex64::new(anchor.z, t * half_length));
        for _ in 0..even_iterates {
            if xp.dist(&p) < 1e-3 || yp.dist(&p) < 1e-3 {
                break; // arrived at a flanking vertex
            }
            if let Some(z) = p.to_affine() {
                if (z - center).arg().abs() <= lens {
                    worst = worst.max(((z - center).norm() - radius).abs());
                }
            }
            p = map.iterate(&p, 2);
        }
    }
    worst
}

/// Circle through three chart points.
pub fn circumcircle(a: Complex64, b: Complex64, c: Complex64) -> (Complex64, f64) {
    // perpendicular bisector intersection via the standard determinant form
    let d = 2.0 * (a.re * (b.im - c.im) + b.re * (c.im - a.im) + c.re * (a.im - b.im));
    let ux = (a.norm_sqr() * (b.im - c.im)
        + b.norm_sqr() * (c.im - a.im)
        + c.norm_sqr() * (a.im - b.im))
        / d;
    let uy = (a.norm_sqr() * (c.re - b.re)
        + b.norm_sqr() * (a.re - c.re)
        + c.norm_sqr() * (b.re - a.re))
        / d;
    let center = Complex64::new(ux, uy);
    (center, (a - center).norm())
}

/// Local degree of `map` at `p` from the scaling exponent of chordal
/// distances toward the image point, fit over shrinking radii.
pub fn local_degree(map: &ComplexMap, p: &ProjectivePoint, tol_residual: f64) -> Result<f64> {
    let z0 = p
        .to_affine()
        .ok_or_else(|| IcosaError::Invalid("local degree needs a finite base point".into()))?;
    let img = map.apply(p);
    // radii chosen so degree-4 scalings stay above the chordal noise floor
    let radii: Vec<f64> = (0..7).map(|k| 10f64.powf(-2.0 - (1.0 / 3.0) * k as f64)).collect();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &r in &radii {
        let q = ProjectivePoint::from_affine(z0 + Complex64::from_polar(r, 0.83));
        let d = map.apply(&q).dist(&img);
        if d > 1e-13 && d.is_finite() {
            xs.push(r.ln());
            ys.push(d.ln());
        }
    }
    if xs.len() < 4 {
        return Err(IcosaError::Inconclusive(f64::INFINITY));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    // fit quality: rms residual of the regression, normalized
    let rss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let e = y - (my + slope * (x - mx));
            e * e
        })
        .sum::<f64>()
        / n;
    let residual = rss.sqrt() / slope.abs().max(1.0);
    if residual > tol_residual {
        return Err(IcosaError::Inconclusive(residual));
    }
    Ok(slope)
}

/// Tangent directions (chart angles) of the three edges at a critical-orbit
/// vertex: one hexagon-hexagon edge along the point's mirror and two
/// pentagon-hexagon arcs toward the anchor orbit.
pub fn edge_directions_at_vertex(
    group: &crate::group::IcosaGroup,
    vertices: &Orbit,
    critical_orbit: &Orbit,
    anchor_orbit: &Orbit,
    v: &ProjectivePoint,
) -> Result<[f64; 3]> {
    let zv = v
        .to_affine()
        .ok_or_else(|| IcosaError::Invalid("vertex at infinity".into()))?;
    // pentagon center: nearest icosahedral vertex
    let (ci, _) = vertices.nearest(v);
    let center = vertices.points[ci];

    // mirror through v; tangent pointing away from the pentagon center
    let mirror = group
        .mirror_containing(v, 1e-7)
        .ok_or_else(|| IcosaError::Invalid("critical point off every mirror".into()))?;
    let t3 = mirror.tangent_at(v);
    let vv = v.sphere_vec();
    let cv = center.sphere_vec();
    let toward_center = [cv[0] - vv[0], cv[1] - vv[1], cv[2] - vv[2]];
    let dot = t3[0] * toward_center[0] + t3[1] * toward_center[1] + t3[2] * toward_center[2];
    let sign = if dot > 0.0 { -1.0 } else { 1.0 };
    // push the sphere tangent into the chart through a short arc step
    let step = 1e-4;
    let moved = ProjectivePoint::new(
        Complex64::new(
            (vv[0] + sign * step * t3[0]) / (1.0 - (vv[2] + sign * step * t3[2])),
            (vv[1] + sign * step * t3[1]) / (1.0 - (vv[2] + sign * step * t3[2])),
        ),
        Complex64::new(1.0, 0.0),
    );
    let mirror_dir = (moved.to_affine().unwrap() - zv).arg();

    // two nearest anchor-orbit points flank the vertex
    let mut anchors: Vec<(f64, Complex64)> = anchor_orbit
        .points
        .iter()
        .filter_map(|p| p.to_affine().map(|z| (v.sphere_angle(p), z)))
        .collect();
    anchors.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut dirs = [0.0f64; 3];
    dirs[0] = mirror_dir;
    for (k, &(_, zanchor)) in anchors[..2].iter().enumerate() {
        // the pentagon-hexagon arc continues to the next pentagon vertex
        let mut next: Option<Complex64> = None;
        let mut best = f64::INFINITY;
        for q in &critical_orbit.points {
            let Some(zq) = q.to_affine() else { continue };
            if (zq - zv).norm() < 1e-9 {
                continue;
            }
            let d = (zq - zanchor).norm();
            if d < best {
                best = d;
                next = Some(zq);
            }
        }
        let zu = next.ok_or_else(|| IcosaError::Invalid("no flanking vertex".into()))?;
        let (c, _) = circumcircle(zv, zanchor, zu);
        // tangent at zv, oriented toward the anchor
        let radial = zv - c;
        let tang = Complex64::new(-radial.im, radial.re);
        let dir = if (tang.re * (zanchor - zv).re + tang.im * (zanchor - zv).im) >= 0.0 {
            tang
        } else {
            -tang
        };
        dirs[k + 1] = dir.arg();
    }
    Ok(dirs)
}

/// Angular gaps of three directions sorted around the circle.
pub fn angular_gaps(dirs: [f64; 3]) -> [f64; 3] {
    let tau = 2.0 * std::f64::consts::PI;
    let mut a = dirs.map(|d| d.rem_euclid(tau));
    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
    [a[1] - a[0], a[2] - a[1], tau - (a[2] - a[0])]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariants::Equivariants;
    use crate::forms::CanonicalInvariants;
    use crate::group::IcosaGroup;
    use crate::search;

    struct World {
        group: IcosaGroup,
        vertices: Orbit,
        g: search::SpecialMapSolution,
        h: search::SpecialMapSolution,
        cycles: Vec<TwoCycle>,
    }

    fn world() -> World {
        let inv = CanonicalInvariants::build().unwrap();
        let eq = Equivariants::build(&inv);
        let group = IcosaGroup::build(1e-10).unwrap();
        let (v, f, e) = group.special_orbits(&inv).unwrap();
        let ctx = search::SearchContext::build(&inv, &eq);
        let m = search::ResidualPolynomial::build(&inv, &eq).unwrap();
        let census = search::real_restriction_census(&m.restriction(), &v, &f, &e, 30).unwrap();
        let slices = search::new_root_slices(&group, &census).unwrap();
        let (g, h) = search::build_special_maps(&ctx, &eq, &group, &v, &f, &slices).unwrap();
        let cycles = two_cycles(&g.map, &g.orbit).unwrap();
        World {
            group,
            vertices: v,
            g,
            h,
            cycles,
        }
    }

    #[test]
    fn thirty_cycles_and_superattraction() {
        let w = world();
        assert_eq!(w.cycles.len(), 30);
        for c in &w.cycles {
            // antipodal pairing and vanishing derivative of the return map
            assert!(c.q.dist(&c.p.antipode()) < 1e-8);
            let z = c.p.to_affine().unwrap();
            let gz = w.g.map.apply_affine(z).to_affine().unwrap();
            let deriv = w.g.map.affine_derivative(gz) * w.g.map.affine_derivative(z);
            assert!(deriv.norm() < 1e-5, "multiplier {deriv}");
        }
        let hc = two_cycles(&w.h.map, &w.h.orbit).unwrap();
        assert_eq!(hc.len(), 30);
    }

    #[test]
    fn orbit_point_converges_in_zero_iterations() {
        let w = world();
        let p = w.g.orbit.points[7];
        let r = converge_to_cycle(&w.g.map, &w.cycles, &p, 400, 1e-12, 1e-6);
        assert_eq!(r.iterations, 0);
        assert!(r.cycle.is_some());
    }

    #[test]
    fn random_seeds_converge_to_cycles() {
        let w = world();
        let mut state = 42u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let mut converged = 0;
        let total = 1000;
        for _ in 0..total {
            // uniform on the sphere: z = (X + iY) / (1 - Z) homogeneously
            let u = 2.0 * next() - 1.0;
            let phi = 2.0 * std::f64::consts::PI * next();
            let r = (1.0 - u * u).sqrt();
            let p = ProjectivePoint::new(
                Complex64::new(r * phi.cos(), r * phi.sin()),
                Complex64::new(1.0 - u, 0.0),
            );
            let out = converge_to_cycle(&w.g.map, &w.cycles, &p, 400, 1e-12, 1e-6);
            if out.cycle.is_some() {
                converged += 1;
            }
        }
        assert!(converged * 100 >= total * 99, "converged {converged}/{total}");
    }

    #[test]
    fn identity_family_member_fixes_points() {
        let inv = CanonicalInvariants::build().unwrap();
        let eq = Equivariants::build(&inv);
        let map = eq.family_map(crate::equivariants::MapFamilyCoefficients {
            a: Complex64::new(5.0, 0.0),
            b: Complex64::new(-3.0, 0.0),
        });
        let p = ProjectivePoint::from_affine(Complex64::new(0.37, -0.86));
        assert!(map.iterate(&p, 1).dist(&p) < 1e-9);
    }

    #[test]
    fn phi_fixes_vertices_under_iteration() {
        let inv = CanonicalInvariants::build().unwrap();
        let eq = Equivariants::build(&inv);
        let phi = eq.phi.to_complex();
        let v = ProjectivePoint::from_affine(Complex64::new(
            (1.0 + 5.0f64.sqrt()) / 2.0,
            0.0,
        ));
        for k in 1..6 {
            assert!(phi.iterate(&v, k).dist(&v) < 1e-9);
        }
    }

    #[test]
    fn edge_anchor_value_and_multiplier() {
        let w = world();
        let anchor = find_edge_anchor(&w.g.map, &w.g.orbit).unwrap();
        assert!(
            (anchor.z - 0.143827).abs() < 1e-5,
            "anchor at {}",
            anchor.z
        );
        assert!(anchor.multiplier > 1.0);
        // 2-periodic on the axis: g(Z) = -1/Z
        let gz = w
            .g
            .map
            .apply_affine(Complex64::new(anchor.z, 0.0))
            .to_affine()
            .unwrap();
        assert!((gz + 1.0 / anchor.z).norm() < 1e-8);
        // repelling: not attracted to any cycle while the floating drift of
        // the unstable fixed point is still small (error ~ 1e-16 * 2.69^k)
        let p = ProjectivePoint::from_affine(Complex64::new(anchor.z, 0.0));
        let r = converge_to_cycle(&w.g.map, &w.cycles, &p, 60, 1e-14, 1e-9);
        assert!(r.cycle.is_none());
        let drifted = w.g.map.iterate(&p, 40);
        assert!(drifted.dist(&p) < 0.05, "left the fixed point too fast");
    }

    #[test]
    fn segment_endpoints_split_by_imaginary_sign() {
        let w = world();
        let anchor = find_edge_anchor(&w.g.map, &w.g.orbit).unwrap();
        let traj = segment_trajectory(&w.g.map, &anchor, 1e-3, 8, 12);
        let xp = ProjectivePoint::from_affine(anchor.x);
        let yp = ProjectivePoint::from_affine(anchor.y);
        assert!(traj.plus_limit.dist(&xp) < 1e-7);
        assert!(traj.minus_limit.dist(&yp) < 1e-7);
        // the anchor itself stays put along the whole trajectory
        let mid = traj.polylines.last().unwrap()[8];
        let _ = mid;
        let fixed = w.g.map.iterate(
            &ProjectivePoint::from_affine(Complex64::new(anchor.z, 0.0)),
            24,
        );
        assert!(
            fixed
                .dist(&ProjectivePoint::from_affine(Complex64::new(anchor.z, 0.0)))
                < 1e-6
        );
    }

    #[test]
    fn segment_closure_approaches_circular_arc() {
        let w = world();
        let anchor = find_edge_anchor(&w.g.map, &w.g.orbit).unwrap();
        let d1 = segment_arc_deviation(&w.g.map, &anchor, 1e-2, 20, 40);
        let d2 = segment_arc_deviation(&w.g.map, &anchor, 1e-3, 20, 40);
        let d3 = segment_arc_deviation(&w.g.map, &anchor, 1e-4, 20, 40);
        assert!(d2 <= d1 + 1e-12, "{d1} -> {d2}");
        assert!(d3 <= d2 + 1e-12, "{d2} -> {d3}");
        // near-circular: deviation is small against the arc radius
        let (_, r) = circumcircle(anchor.x, Complex64::new(anchor.z, 0.0), anchor.y);
        assert!(d3 < 0.02 * r, "deviation {d3} vs radius {r}");
    }

    #[test]
    fn local_degrees() {
        let w = world();
        // squaring at a critical orbit point
        let p = w.g.orbit.points[0];
        let deg = local_degree(&w.g.map, &p, 0.05).unwrap();
        assert!((deg - 2.0).abs() < 0.05, "critical degree {deg}");
        // regular point
        let q = ProjectivePoint::from_affine(Complex64::new(0.31, 0.22));
        let deg = local_degree(&w.g.map, &q, 0.05).unwrap();
        assert!((deg - 1.0).abs() < 0.05, "regular degree {deg}");
        // eta at a vertex: fourfold (its critical form vanishes to third order)
        let inv = CanonicalInvariants::build().unwrap();
        let eq = Equivariants::build(&inv);
        let eta = eq.eta.to_complex();
        let v = ProjectivePoint::from_affine(Complex64::new(
            (1.0 + 5.0f64.sqrt()) / 2.0,
            0.0,
        ));
        let deg = local_degree(&eta, &v, 0.05).unwrap();
        assert!((deg - 4.0).abs() < 0.05, "vertex degree {deg}");
    }

    #[test]
    fn dynamics_commute_with_group() {
        let w = world();
        let mut state = 5u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(7);
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        for trial in 0..20 {
            let p0 = ProjectivePoint::from_affine(Complex64::new(next(), next()));
            let r0 = converge_to_cycle(&w.g.map, &w.cycles, &p0, 400, 1e-12, 1e-6);
            let Some(c0) = r0.cycle else { continue };
            for k in 0..10 {
                let e = &w.group.elements[(trial * 10 + k * 7 + 1) % 60];
                let r1 = converge_to_cycle(&w.g.map, &w.cycles, &e.apply(&p0), 400, 1e-12, 1e-6);
                let Some(c1) = r1.cycle else { continue };
                // image cycle must be the group image of the original cycle
                let moved = e.apply(&w.cycles[c0].p);
                assert!(w.cycles[c1].dist_to(&moved) < 1e-6);
            }
        }
    }

    #[test]
    fn real_axis_is_invariant_under_g() {
        let w = world();
        for k in 0..50 {
            let t = -2.4 + 4.8 * k as f64 / 49.0;
            let img = w.g.map.apply_affine(Complex64::new(t, 0.0));
            if let Some(z) = img.to_affine() {
                assert!(z.im.abs() < 1e-9 * z.re.abs().max(1.0), "g({t}) = {z}");
            }
        }
    }

    #[test]
    fn vertex_angle_trisection() {
        let w = world();
        let anchor = find_edge_anchor(&w.g.map, &w.g.orbit).unwrap();
        let anchor_orbit = w
            .group
            .orbit_of(&ProjectivePoint::from_affine(Complex64::new(anchor.z, 0.0)));
        assert_eq!(anchor_orbit.size(), 60);
        let third = 2.0 * std::f64::consts::PI / 3.0;
        for v in &w.g.orbit.points {
            let dirs =
                edge_directions_at_vertex(&w.group, &w.vertices, &w.g.orbit, &anchor_orbit, v)
                    .unwrap();
            for gap in angular_gaps(dirs) {
                assert!((gap - third).abs() < 0.01, "gap {gap} at {:?}", v.to_affine());
            }
        }
    }
}
