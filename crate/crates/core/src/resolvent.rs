//! The five tetrahedral subgroups, their 4-point orbits inside the 20-point
//! orbit, the quintic resolvent built on the monic tetrahedral quartics, the
//! icosahedral parameter F^5/H^3, the tau-decomposition of a 60-point orbit
//! into five 12-point suborbits, and the symmetry-breaking iteration demo.
//!
//! The resolvent coefficients are assembled exactly as stated (monic
//! quartics over the tetrahedra) and every structural identity is measured
//! and reported honestly: a5/H is a constant, while a1, a2, a4 do not
//! vanish for any scalar rescaling of plain quartics (the five quartics
//! span the full space of binary quartics), so those sizes are surfaced in
//! the report instead of being forced.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{converge_to_cycle, TwoCycle};
use crate::equivariants::ComplexMap;
use crate::error::{IcosaError, Result};
use crate::forms::CanonicalInvariants;
use crate::group::{IcosaGroup, Orbit, ProjectivePoint};
use crate::poly::aberth_roots;

/// The five order-12 subgroups with one chiral system of tetrahedra.
pub struct TetrahedralSystem {
    /// Element-index sets of the five subgroups.
    pub subgroups: [Vec<usize>; 5],
    /// tetrahedra[a] = indices into the face orbit of the 4-point orbit of
    /// subgroups[a] in the selected chiral system.
    pub tetrahedra: [Vec<usize>; 5],
    /// The opposite-chirality partners (the other 4-orbit of each subgroup).
    pub partners: [Vec<usize>; 5],
    /// Tetrahedron permutation per group element.
    pub sigma: Vec<[usize; 5]>,
    /// Chart coordinates of the face orbit.
    pub face_points: Vec<Complex64>,
}

impl TetrahedralSystem {
    /// Enumerate the order-12 subgroups by closure over (order-2, order-3)
    /// generator pairs, split the 20-point orbit into orbits per subgroup,
    /// and pick the chiral system containing the reference tetrahedron (the
    /// one holding the face-center of smallest principal argument).
    /// `flip` selects the other chirality.
    pub fn build(group: &IcosaGroup, faces: &Orbit, flip: bool) -> Result<Self> {
        let face_points: Vec<Complex64> = faces
            .points
            .iter()
            .map(|p| p.to_affine().expect("face centers are finite"))
            .collect();
        // permutation of face points per element
        let mut perm20 = Vec::with_capacity(60);
        for g in 0..60 {
            perm20.push(group.permutation_on(g, &faces.points)?);
        }

        // subgroup enumeration over the multiplication table
        let closure = |gens: &[usize]| -> Vec<usize> {
            let mut set = [false; 60];
            set[0] = true;
            for &g in gens {
                set[g] = true;
            }
            loop {
                let mut grew = false;
                for a in 0..60 {
                    if !set[a] {
                        continue;
                    }
                    for b in 0..60 {
                        if set[b] {
                            let c = group.mult[a][b];
                            if !set[c] {
                                set[c] = true;
                                grew = true;
                            }
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
            (0..60).filter(|&i| set[i]).collect()
        };
        let o2: Vec<usize> = (0..60).filter(|&i| group.orders[i] == 2).collect();
        let o3: Vec<usize> = (0..60).filter(|&i| group.orders[i] == 3).collect();
        let mut subgroups: Vec<Vec<usize>> = Vec::new();
        for &a in &o2 {
            for &b in &o3 {
                let s = closure(&[a, b]);
                if s.len() == 12 && !subgroups.contains(&s) {
                    subgroups.push(s);
                }
            }
        }
        if subgroups.len() != 5 {
            return Err(IcosaError::Invalid(format!(
                "expected 5 tetrahedral subgroups, found {}",
                subgroups.len()
            )));
        }
        subgroups.sort();

        // orbits of each subgroup on the 20 face points
        let orbits_of = |sub: &[usize]| -> Vec<Vec<usize>> {
            let mut seen = [false; 20];
            let mut out = Vec::new();
            for start in 0..20 {
                if seen[start] {
                    continue;
                }
                let mut orb = vec![start];
                seen[start] = true;
                let mut head = 0;
                while head < orb.len() {
                    let p = orb[head];
                    head += 1;
                    for &g in sub {
                        let q = perm20[g][p];
                        if !seen[q] {
                            seen[q] = true;
                            orb.push(q);
                        }
                    }
                }
                orb.sort();
                out.push(orb);
            }
            out
        };
        let mut four_orbits: Vec<(usize, Vec<usize>)> = Vec::new();
        for (si, sub) in subgroups.iter().enumerate() {
            let orbs = orbits_of(sub);
            let fours: Vec<Vec<usize>> = orbs.into_iter().filter(|o| o.len() == 4).collect();
            if fours.len() != 2 {
                return Err(IcosaError::Invalid(format!(
                    "subgroup {si} has {} four-point orbits",
                    fours.len()
                )));
            }
            for f in fours {
                four_orbits.push((si, f));
            }
        }

        // chiral systems: orbits of the group action on the ten tetrahedra
        let tet_image = |t: &[usize], g: usize| -> Vec<usize> {
            let mut v: Vec<usize> = t.iter().map(|&p| perm20[g][p]).collect();
            v.sort();
            v
        };
        let mut systems: Vec<Vec<usize>> = Vec::new(); // indices into four_orbits
        let mut used = vec![false; four_orbits.len()];
        for k in 0..four_orbits.len() {
            if used[k] {
                continue;
            }
            let mut sys = vec![k];
            used[k] = true;
            let mut head = 0;
            while head < sys.len() {
                let cur = four_orbits[sys[head]].1.clone();
                head += 1;
                for g in 0..60 {
                    let img = tet_image(&cur, g);
                    if let Some(j) = four_orbits.iter().position(|(_, t)| *t == img) {
                        if !used[j] {
                            used[j] = true;
                            sys.push(j);
                        }
                    }
                }
            }
            systems.push(sys);
        }
        if systems.len() != 2 || systems.iter().any(|s| s.len() != 5) {
            return Err(IcosaError::Invalid("chirality split failed".into()));
        }

        // reference tetrahedron: contains the face-center of smallest
        // principal argument (ties by modulus)
        let ref_pt = (0..20)
            .min_by(|&i, &j| {
                let ka = (face_points[i].arg().abs(), face_points[i].norm());
                let kb = (face_points[j].arg().abs(), face_points[j].norm());
                ka.partial_cmp(&kb).unwrap()
            })
            .unwrap();
        let contains_ref =
            |sys: &Vec<usize>| sys.iter().any(|&k| four_orbits[k].1.contains(&ref_pt));
        let pick = match (contains_ref(&systems[0]), flip) {
            (true, false) | (false, true) => &systems[0],
            _ => &systems[1],
        };

        // order the chosen tetrahedra by subgroup index; partners are the
        // other 4-orbit of the same subgroup
        let mut tetrahedra: [Vec<usize>; 5] = Default::default();
        let mut partners: [Vec<usize>; 5] = Default::default();
        for &k in pick {
            let (si, ref t) = four_orbits[k];
            tetrahedra[si] = t.clone();
        }
        for (si, t) in four_orbits.iter().map(|(s, t)| (*s, t)) {
            if tetrahedra[si] != *t {
                partners[si] = t.clone();
            }
        }
        // partition check
        let mut covered = [false; 20];
        for t in &tetrahedra {
            if t.len() != 4 {
                return Err(IcosaError::PartitionFailure("missing tetrahedron".into()));
            }
            for &p in t {
                if covered[p] {
                    return Err(IcosaError::PartitionFailure(format!(
                        "face point {p} covered twice"
                    )));
                }
                covered[p] = true;
            }
        }
        if !covered.iter().all(|&c| c) {
            return Err(IcosaError::PartitionFailure("uncovered face point".into()));
        }

        // induced permutation of the five tetrahedra per group element
        let mut sigma = Vec::with_capacity(60);
        for g in 0..60 {
            let mut s = [usize::MAX; 5];
            for a in 0..5 {
                let img = tet_image(&tetrahedra[a], g);
                s[a] = tetrahedra
                    .iter()
                    .position(|t| *t == img)
                    .ok_or_else(|| IcosaError::Invalid("tetra image left the system".into()))?;
            }
            sigma.push(s);
        }

        let subgroups: [Vec<usize>; 5] = subgroups.try_into().unwrap();
        Ok(TetrahedralSystem {
            subgroups,
            tetrahedra,
            partners,
            sigma,
            face_points,
        })
    }

    /// Monic quartic over tetrahedron `a` evaluated at z.
    pub fn quartic_at(&self, a: usize, z: Complex64) -> Complex64 {
        self.tetrahedra[a]
            .iter()
            .map(|&k| z - self.face_points[k])
            .product()
    }

    /// Every induced tetrahedron permutation is even and all 60 are distinct
    /// (the action is the full alternating group on five letters).
    pub fn action_is_alt5(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        for s in &self.sigma {
            if !permutation_is_even(s) {
                return false;
            }
            seen.insert(*s);
        }
        seen.len() == 60
    }
}

fn permutation_is_even(p: &[usize; 5]) -> bool {
    let mut visited = [false; 5];
    let mut transpositions = 0;
    for start in 0..5 {
        if visited[start] {
            continue;
        }
        let mut len = 0;
        let mut cur = start;
        while !visited[cur] {
            visited[cur] = true;
            cur = p[cur];
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 0
}

/// Resolvent data at one parameter value.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ResolventSample {
    pub z: (f64, f64),
    /// Quintic coefficients a_0..a_5 of Sum a_k s^{5-k} with a_0 = 1.
    pub coefficients: Vec<(f64, f64)>,
    /// Icosahedral parameter F^5/H^3.
    pub icosa_parameter: (f64, f64),
    /// |a_1|, |a_2|, |a_4| relative to the root scale.
    pub low_coeff_rel: [f64; 3],
    /// a_3 / F(z) and a_5 / H(z).
    pub b_ratio: (f64, f64),
    pub c_ratio: (f64, f64),
}

/// Evaluate the quintic resolvent at z from the monic tetrahedral quartics.
pub fn resolvent_at(
    ts: &TetrahedralSystem,
    inv: &CanonicalInvariants,
    z: Complex64,
) -> ResolventSample {
    let one = Complex64::new(1.0, 0.0);
    let roots: Vec<Complex64> = (0..5).map(|a| ts.quartic_at(a, z)).collect();
    // expand prod (s - T_a)
    let mut coeff = vec![one];
    for r in &roots {
        let mut next = vec![Complex64::new(0.0, 0.0); coeff.len() + 1];
        for (i, c) in coeff.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c * r;
        }
        coeff = next;
    }
    // coeff[k] multiplies s^{5-k}
    let scale = roots.iter().map(|r| r.norm()).fold(0.0, f64::max).max(1e-300);
    let fz = inv.f.eval_complex(z, one);
    let hz = inv.h.eval_complex(z, one);
    let zi = fz.powu(5) / hz.powu(3);
    let pair = |c: Complex64| (c.re, c.im);
    ResolventSample {
        z: pair(z),
        coefficients: coeff.iter().map(|&c| pair(c)).collect(),
        icosa_parameter: pair(zi),
        low_coeff_rel: [
            coeff[1].norm() / scale,
            coeff[2].norm() / scale.powi(2),
            coeff[4].norm() / scale.powi(4),
        ],
        b_ratio: pair(coeff[3] / fz),
        c_ratio: pair(coeff[5] / hz),
    }
}

/// Constant-fit report for the resolvent coefficient structure over many
/// sampled parameter values. Spreads are relative standard deviations; the
/// values are recorded, never hard-coded.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CoefficientFit {
    pub samples: usize,
    pub c_mean: (f64, f64),
    pub c_rel_spread: f64,
    pub b_mean: (f64, f64),
    pub b_rel_spread: f64,
    pub max_low_coeff_rel: [f64; 3],
    /// Worst multiset distance between the roots of s^5 + b Z^2 s^2 + c Z^3
    /// (with the fitted constants) and the rescaled quartic values.
    pub reduced_root_mismatch: f64,
}

pub fn fit_coefficients(
    ts: &TetrahedralSystem,
    inv: &CanonicalInvariants,
    samples: usize,
    seed: u64,
) -> Result<CoefficientFit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bs = Vec::new();
    let mut cs = Vec::new();
    let mut max_low = [0.0f64; 3];
    let mut zs = Vec::new();
    for _ in 0..samples {
        let z = Complex64::new(rng.gen_range(-1.4..1.4), rng.gen_range(-1.4..1.4));
        let one = Complex64::new(1.0, 0.0);
        if inv.h.eval_complex(z, one).norm() < 1e-3 || inv.f.eval_complex(z, one).norm() < 1e-3 {
            continue;
        }
        let s = resolvent_at(ts, inv, z);
        bs.push(Complex64::new(s.b_ratio.0, s.b_ratio.1));
        cs.push(Complex64::new(s.c_ratio.0, s.c_ratio.1));
        for k in 0..3 {
            max_low[k] = max_low[k].max(s.low_coeff_rel[k]);
        }
        zs.push(z);
    }
    let mean = |v: &[Complex64]| v.iter().sum::<Complex64>() / v.len() as f64;
    let spread = |v: &[Complex64], m: Complex64| {
        (v.iter().map(|x| (x - m).norm_sqr()).sum::<f64>() / v.len() as f64).sqrt()
            / m.norm().max(1e-300)
    };
    let b_mean = mean(&bs);
    let c_mean = mean(&cs);
    let b_rel_spread = spread(&bs, b_mean);
    let c_rel_spread = spread(&cs, c_mean);

    // reduced-quintic root comparison at the sampled parameters
    let mut worst = 0.0f64;
    for &z in zs.iter().take(10) {
        let one = Complex64::new(1.0, 0.0);
        let fz = inv.f.eval_complex(z, one);
        let hz = inv.h.eval_complex(z, one);
        let zi = fz.powu(5) / hz.powu(3);
        let coeffs = [
            c_mean * zi.powu(3),
            Complex64::new(0.0, 0.0),
            b_mean * zi.powu(2),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            one,
        ];
        let Ok(roots) = aberth_roots(&coeffs) else {
            continue;
        };
        let rescale = fz.powu(3) / hz.powu(2);
        let targets: Vec<Complex64> = (0..5).map(|a| ts.quartic_at(a, z) * rescale).collect();
        // greedy multiset matching
        let mut remaining = roots;
        let mut local_worst = 0.0f64;
        for t in &targets {
            let (k, d) = remaining
                .iter()
                .enumerate()
                .map(|(k, r)| (k, (r - t).norm()))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            local_worst = local_worst.max(d / t.norm().max(1e-300));
            remaining.remove(k);
        }
        worst = worst.max(local_worst);
    }

    Ok(CoefficientFit {
        samples: bs.len(),
        c_mean: (c_mean.re, c_mean.im),
        c_rel_spread,
        b_mean: (b_mean.re, b_mean.im),
        b_rel_spread,
        max_low_coeff_rel: max_low,
        reduced_root_mismatch: worst,
    })
}

/// Labeling of a 60-point orbit into five 12-point suborbits, one per
/// tetrahedral subgroup, compatible with the group action and with the
/// antipodal involution.
pub struct TauDecomposition {
    /// labels[k] in 0..5 for orbit point k.
    pub labels: Vec<usize>,
    /// Per-element permutation of the point indices.
    perm60: Vec<Vec<usize>>,
}

impl TauDecomposition {
    /// Build by the regular identification: each orbit point is h(base) for
    /// a unique group element h; its label is sigma_h applied to the symbol
    /// fixed by the half-turn that carries the base point to its antipode
    /// (that choice makes the labeling antipode-invariant).
    pub fn build(group: &IcosaGroup, ts: &TetrahedralSystem, orbit: &Orbit) -> Result<Self> {
        if orbit.size() != 60 {
            return Err(IcosaError::OrbitSizeError {
                got: orbit.size(),
                expected: 60,
            });
        }
        let mut perm60 = Vec::with_capacity(60);
        for g in 0..60 {
            perm60.push(group.permutation_on(g, &orbit.points)?);
        }
        let base = 0usize;
        // element_of[k]: the unique h with h(base) = k
        let mut element_of = vec![usize::MAX; 60];
        for h in 0..60 {
            let k = perm60[h][base];
            if element_of[k] != usize::MAX {
                return Err(IcosaError::Invalid("orbit action is not regular".into()));
            }
            element_of[k] = h;
        }
        // the half-turn pairing base with its antipode
        let antipode = orbit.points[base].antipode();
        let (anti_idx, d) = orbit.nearest(&antipode);
        if d > 1e-7 {
            return Err(IcosaError::Invalid(
                "orbit is not closed under the antipodal map".into(),
            ));
        }
        let hstar = element_of[anti_idx];
        let fixed_symbol = (0..5)
            .find(|&a| ts.sigma[hstar][a] == a)
            .ok_or_else(|| IcosaError::Invalid("antipodal half-turn fixes no symbol".into()))?;
        let labels: Vec<usize> = (0..60)
            .map(|k| ts.sigma[element_of[k]][fixed_symbol])
            .collect();
        let out = TauDecomposition { labels, perm60 };
        out.validate(group, ts)?;
        Ok(out)
    }

    fn validate(&self, group: &IcosaGroup, ts: &TetrahedralSystem) -> Result<()> {
        // five groups of twelve
        for a in 0..5 {
            let n = self.labels.iter().filter(|&&l| l == a).count();
            if n != 12 {
                return Err(IcosaError::PartitionFailure(format!(
                    "label {a} has {n} points"
                )));
            }
        }
        // each class is one orbit of its own subgroup
        for a in 0..5 {
            let members: Vec<usize> = (0..60).filter(|&k| self.labels[k] == a).collect();
            for &g in &ts.subgroups[a] {
                for &k in &members {
                    if self.labels[self.perm60[g][k]] != a {
                        return Err(IcosaError::PartitionFailure(format!(
                            "label {a} not closed under its subgroup"
                        )));
                    }
                }
            }
        }
        let _ = group;
        Ok(())
    }

    /// The label permutation induced by a group element (it equals the
    /// tetrahedron permutation of that element).
    pub fn induced_label_permutation(&self, g: usize) -> [usize; 5] {
        let mut out = [usize::MAX; 5];
        for k in 0..60 {
            let a = self.labels[k];
            let b = self.labels[self.perm60[g][k]];
            if out[a] == usize::MAX {
                out[a] = b;
            }
        }
        out
    }
}

/// Monte-Carlo outcome of the symmetry-breaking run.
#[derive(Clone, Debug, serde::Serialize)]
pub struct DemoReport {
    pub total: usize,
    pub converged: usize,
    /// Converged runs where both cycle points carry one tau label.
    pub shared_label: usize,
    pub label_histogram: [usize; 5],
}

/// Iterate the soccer-ball map from random seeds; report which tetrahedral
/// icosahedron the limit cycle lands in and whether both cycle points agree.
pub fn symmetry_breaking_demo(
    map: &ComplexMap,
    cycles: &[TwoCycle],
    orbit: &Orbit,
    tau: &TauDecomposition,
    seeds: usize,
    seed: u64,
) -> DemoReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = DemoReport {
        total: seeds,
        converged: 0,
        shared_label: 0,
        label_histogram: [0; 5],
    };
    for _ in 0..seeds {
        let u: f64 = rng.gen_range(-1.0..1.0);
        let phi: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
        let r = (1.0 - u * u).sqrt();
        let p0 = ProjectivePoint::new(
            Complex64::new(r * phi.cos(), r * phi.sin()),
            Complex64::new(1.0 - u, 0.0),
        );
        let out = converge_to_cycle(map, cycles, &p0, 400, 1e-12, 1e-6);
        let Some(ci) = out.cycle else { continue };
        report.converged += 1;
        let c = &cycles[ci];
        let (i1, d1) = orbit.nearest(&c.p);
        let (i2, d2) = orbit.nearest(&c.q);
        if d1 < 1e-6 && d2 < 1e-6 && tau.labels[i1] == tau.labels[i2] {
            report.shared_label += 1;
            report.label_histogram[tau.labels[i1]] += 1;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RunConfig;
    use crate::context::Context;

    fn ctx() -> Context {
        Context::build(RunConfig::default()).unwrap()
    }

    #[test]
    fn five_subgroups_with_two_chiral_orbits() {
        let c = ctx();
        let ts = TetrahedralSystem::build(&c.group, &c.faces, false).unwrap();
        for s in &ts.subgroups {
            assert_eq!(s.len(), 12);
        }
        for a in 0..5 {
            assert_eq!(ts.tetrahedra[a].len(), 4);
            assert_eq!(ts.partners[a].len(), 4);
            // the partner is disjoint from the chosen tetrahedron
            assert!(ts.tetrahedra[a].iter().all(|p| !ts.partners[a].contains(p)));
        }
        assert!(ts.action_is_alt5());
    }

    #[test]
    fn chirality_flip_selects_the_partner_system() {
        let c = ctx();
        let ts = TetrahedralSystem::build(&c.group, &c.faces, false).unwrap();
        let flipped = TetrahedralSystem::build(&c.group, &c.faces, true).unwrap();
        for a in 0..5 {
            assert_eq!(ts.tetrahedra[a], flipped.partners[a]);
        }
        assert!(flipped.action_is_alt5());
    }

    #[test]
    fn resolvent_fifth_coefficient_is_exactly_h() {
        let c = ctx();
        let ts = TetrahedralSystem::build(&c.group, &c.faces, false).unwrap();
        let fit = fit_coefficients(&ts, &c.inv, 50, 1728).unwrap();
        // prod of the five monic quartics vanishes exactly on the 20 face
        // centers: a5 = -e5 = -prod T_a = -H up to rounding
        assert!(fit.c_rel_spread < 1e-8, "c spread {}", fit.c_rel_spread);
        assert!(
            (Complex64::new(fit.c_mean.0, fit.c_mean.1) + Complex64::new(1.0, 0.0)).norm() < 1e-6,
            "c mean {:?}",
            fit.c_mean
        );
        // the low coefficients do not vanish for monic quartics: the five
        // binary quartics are linearly independent, so e1 has leading term
        // 5 z^4; the report records the measured sizes
        assert!(fit.max_low_coeff_rel[0] > 0.1);
    }

    #[test]
    fn tau_decomposition_of_both_critical_orbits() {
        let c = ctx();
        let ts = TetrahedralSystem::build(&c.group, &c.faces, false).unwrap();
        for orbit in [&c.soccer.orbit, &c.dual_soccer.orbit] {
            let tau = TauDecomposition::build(&c.group, &ts, orbit).unwrap();
            for a in 0..5 {
                assert_eq!(tau.labels.iter().filter(|&&l| l == a).count(), 12);
            }
            // induced label action matches the tetrahedron action, hence Alt(5)
            for g in (0..60).step_by(7) {
                let lp = tau.induced_label_permutation(g);
                assert_eq!(lp, ts.sigma[g]);
            }
            // antipode-invariance of the labels
            for (k, p) in orbit.points.iter().enumerate() {
                let (j, d) = orbit.nearest(&p.antipode());
                assert!(d < 1e-7);
                assert_eq!(tau.labels[k], tau.labels[j]);
            }
        }
    }

    #[test]
    fn demo_gives_shared_labels_and_rough_uniformity() {
        let c = ctx();
        let ts = TetrahedralSystem::build(&c.group, &c.faces, false).unwrap();
        let tau = TauDecomposition::build(&c.group, &ts, &c.soccer.orbit).unwrap();
        let report = symmetry_breaking_demo(
            &c.soccer.map,
            &c.soccer_cycles,
            &c.soccer.orbit,
            &tau,
            1000,
            c.config.seed,
        );
        assert!(report.converged >= 990, "converged {}", report.converged);
        assert_eq!(report.shared_label, report.converged);
        for n in report.label_histogram {
            let frac = n as f64 / report.converged as f64;
            assert!((frac - 0.2).abs() < 0.05, "label fraction {frac}");
        }
    }

    #[test]
    fn icosa_parameter_constant_on_orbits() {
        let c = ctx();
        let ts = TetrahedralSystem::build(&c.group, &c.faces, false).unwrap();
        let one = Complex64::new(1.0, 0.0);
        // F^5/H^3 has the same value at every point of a 60-point orbit
        let orbit = c
            .group
            .orbit_of(&ProjectivePoint::from_affine(Complex64::new(0.37, 0.22)));
        assert_eq!(orbit.size(), 60);
        let vals: Vec<Complex64> = orbit
            .points
            .iter()
            .filter_map(|p| p.to_affine())
            .map(|z| {
                let f = c.inv.f.eval_complex(z, one);
                let h = c.inv.h.eval_complex(z, one);
                f.powu(5) / h.powu(3)
            })
            .collect();
        let mean = vals.iter().sum::<Complex64>() / vals.len() as f64;
        for v in &vals {
            assert!((v - mean).norm() < 1e-8 * mean.norm());
        }
        let _ = ts;
    }
}
