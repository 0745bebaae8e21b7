//! Image output: basin-of-attraction rasters, Julia-set approximations with
//! the soccer-ball edge overlay, Newton-basin rasters over the fundamental
//! triangle, and orbit scatter plots.
//!
//! Binary PPM (P6) is the byte-exact output contract; PNG is written when
//! the file extension asks for it. Rendering is per-pixel parallel and
//! deterministic regardless of thread count.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dynamics::{converge_to_cycle, EdgeAnchor, TwoCycle};
use crate::equivariants::ComplexMap;
use crate::error::{IcosaError, Result};
use crate::group::{Mirror, Orbit, ProjectivePoint};
use crate::search::basins::{newton_from, FundamentalTriangle, NewtonTargets, TARGET_CLASSES};
use crate::search::ResidualPolynomial;

pub type Rgb = [u8; 3];

/// Rectangular chart window.
#[derive(Clone, Copy, Debug)]
pub struct Viewport {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Viewport {
    pub fn square(half: f64) -> Self {
        Viewport {
            x0: -half,
            y0: -half,
            x1: half,
            y1: half,
        }
    }

    fn pixel_center(&self, px: usize, py: usize, w: usize, h: usize) -> Complex64 {
        let u = self.x0 + (self.x1 - self.x0) * (px as f64 + 0.5) / w as f64;
        // image rows go top-down; the chart axis points up
        let v = self.y1 - (self.y1 - self.y0) * (py as f64 + 0.5) / h as f64;
        Complex64::new(u, v)
    }

    fn to_pixel(&self, z: Complex64, w: usize, h: usize) -> Option<(usize, usize)> {
        let fx = (z.re - self.x0) / (self.x1 - self.x0);
        let fy = (self.y1 - z.im) / (self.y1 - self.y0);
        if !(0.0..1.0).contains(&fx) || !(0.0..1.0).contains(&fy) {
            return None;
        }
        Some(((fx * w as f64) as usize, (fy * h as f64) as usize))
    }
}

/// Row-major RGB image.
#[derive(Clone)]
pub struct Raster {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<Rgb>,
    pub viewport: Viewport,
}

impl Raster {
    pub fn new(width: usize, height: usize, viewport: Viewport) -> Self {
        Raster {
            width,
            height,
            pixels: vec![[0, 0, 0]; width * height],
            viewport,
        }
    }

    pub fn set(&mut self, x: usize, y: usize, c: Rgb) {
        if x < self.width && y < self.height {
            self.pixels[y * self.width + x] = c;
        }
    }

    pub fn get(&self, x: usize, y: usize) -> Rgb {
        self.pixels[y * self.width + x]
    }

    /// Binary PPM (P6), the byte-exact format.
    pub fn write_ppm(&self, path: &Path) -> Result<()> {
        let mut buf = Vec::with_capacity(self.pixels.len() * 3 + 32);
        write!(buf, "P6\n{} {}\n255\n", self.width, self.height)
            .map_err(|e| IcosaError::Invalid(e.to_string()))?;
        for p in &self.pixels {
            buf.extend_from_slice(p);
        }
        std::fs::write(path, buf).map_err(|e| IcosaError::Invalid(e.to_string()))
    }

    pub fn write_png(&self, path: &Path) -> Result<()> {
        let mut img = image::RgbImage::new(self.width as u32, self.height as u32);
        for (k, p) in self.pixels.iter().enumerate() {
            let x = (k % self.width) as u32;
            let y = (k / self.width) as u32;
            img.put_pixel(x, y, image::Rgb(*p));
        }
        img.save(path).map_err(|e| IcosaError::Invalid(e.to_string()))
    }

    /// Dispatch on the file extension; PPM unless `.png` is requested.
    pub fn write(&self, path: &Path) -> Result<()> {
        match path.extension().and_then(|e| e.to_str()) {
            Some("png") => self.write_png(path),
            _ => self.write_ppm(path),
        }
    }
}

/// Distinct colors for the 2-cycles of a map, ordered deterministically.
pub fn cycle_palette(n: usize) -> Vec<Rgb> {
    (0..n)
        .map(|k| hsv(k as f64 / n as f64, 0.85, 0.92))
        .collect()
}

/// Fixed palette of the five Newton classes:
/// red, green, blue for the special orbits; olive and violet for the two
/// critical orbits.
pub const NEWTON_COLORS: [Rgb; 5] = [
    [214, 40, 40],
    [60, 160, 70],
    [55, 90, 220],
    [128, 128, 0],
    [143, 0, 255],
];

fn hsv(h: f64, s: f64, v: f64) -> Rgb {
    let h6 = (h.fract() * 6.0).abs();
    let c = v * s;
    let x = c * (1.0 - ((h6 % 2.0) - 1.0).abs());
    let (r, g, b) = match h6 as usize {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = v - c;
    [
        ((r + m) * 255.0) as u8,
        ((g + m) * 255.0) as u8,
        ((b + m) * 255.0) as u8,
    ]
}

/// Basin raster: per-pixel convergence to the known 2-cycles, colored by
/// cycle identity; non-converged pixels stay black.
pub fn render_basins(
    map: &ComplexMap,
    cycles: &[TwoCycle],
    width: usize,
    height: usize,
    viewport: Viewport,
    max_iter: usize,
) -> (Raster, BasinRenderStats) {
    let palette = cycle_palette(cycles.len());
    let rows: Vec<Vec<(Rgb, bool)>> = (0..height)
        .into_par_iter()
        .map(|py| {
            (0..width)
                .map(|px| {
                    let z = viewport.pixel_center(px, py, width, height);
                    let p = ProjectivePoint::from_affine(z);
                    let out = converge_to_cycle(map, cycles, &p, 400.min(max_iter), 1e-12, 1e-6);
                    match out.cycle {
                        Some(k) => (palette[k], true),
                        None => ([0, 0, 0], false),
                    }
                })
                .collect()
        })
        .collect();
    let mut raster = Raster::new(width, height, viewport);
    let mut converged = 0usize;
    let mut seen = vec![false; cycles.len()];
    for (py, row) in rows.iter().enumerate() {
        for (px, &(color, ok)) in row.iter().enumerate() {
            raster.set(px, py, color);
            if ok {
                converged += 1;
                if let Some(k) = palette.iter().position(|&c| c == color) {
                    seen[k] = true;
                }
            }
        }
    }
    let stats = BasinRenderStats {
        pixels: width * height,
        converged,
        distinct_cycles: seen.iter().filter(|&&s| s).count(),
    };
    (raster, stats)
}

#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct BasinRenderStats {
    pub pixels: usize,
    pub converged: usize,
    pub distinct_cycles: usize,
}

/// Julia proxy: pixels whose convergence time sits above a quantile are
/// marked as boundary, then the soccer-ball edges are overlaid.
pub fn render_julia(
    map: &ComplexMap,
    cycles: &[TwoCycle],
    mirrors: &[Mirror],
    critical_orbit: &Orbit,
    anchor: &EdgeAnchor,
    anchor_orbit: &Orbit,
    width: usize,
    height: usize,
    viewport: Viewport,
    max_iter: usize,
) -> (Raster, JuliaRenderStats) {
    // iteration-count field
    let counts: Vec<Vec<usize>> = (0..height)
        .into_par_iter()
        .map(|py| {
            (0..width)
                .map(|px| {
                    let z = viewport.pixel_center(px, py, width, height);
                    let p = ProjectivePoint::from_affine(z);
                    let out = converge_to_cycle(map, cycles, &p, max_iter, 1e-12, 1e-6);
                    if out.cycle.is_some() {
                        out.iterations
                    } else {
                        max_iter
                    }
                })
                .collect()
        })
        .collect();
    let mut flat: Vec<usize> = counts.iter().flatten().copied().collect();
    flat.sort_unstable();
    let threshold = flat[((flat.len() as f64 * 0.97) as usize).min(flat.len() - 1)];
    let mut raster = Raster::new(width, height, viewport);
    let mut marked = 0usize;
    for py in 0..height {
        for px in 0..width {
            if counts[py][px] >= threshold.max(1) {
                raster.set(px, py, [235, 235, 235]);
                marked += 1;
            }
        }
    }

    // hexagon-hexagon edges: short arcs between consecutive critical points
    // on each mirror circle
    for m in mirrors {
        let mut on_mirror: Vec<Complex64> = critical_orbit
            .points
            .iter()
            .filter(|p| m.contains(p, 1e-7))
            .filter_map(|p| p.to_affine())
            .collect();
        if on_mirror.len() != 4 {
            continue;
        }
        // order by angle along the circle and connect the two short gaps
        let sort_key = |z: Complex64| match m.chart() {
            crate::group::MirrorChart::Line { .. } => z.re.atan2(1.0),
            crate::group::MirrorChart::Circle { center, .. } => {
                (z - Complex64::new(center.0, center.1)).arg()
            }
        };
        on_mirror.sort_by(|&a, &b| sort_key(a).partial_cmp(&sort_key(b)).unwrap());
        for k in 0..4 {
            let a = on_mirror[k];
            let b = on_mirror[(k + 1) % 4];
            let gap = ProjectivePoint::from_affine(a).sphere_angle(&ProjectivePoint::from_affine(b));
            if gap < 0.6 {
                draw_mirror_arc(&mut raster, m, a, b, [255, 80, 80]);
            }
        }
    }

    // pentagon-hexagon edges: circular arcs through each anchor point and
    // its two flanking critical points
    for zp in anchor_orbit.points.iter() {
        let Some(za) = zp.to_affine() else { continue };
        let mut nearest: Vec<Complex64> = critical_orbit
            .points
            .iter()
            .filter_map(|p| p.to_affine())
            .collect();
        nearest.sort_by(|&a, &b| {
            (a - za)
                .norm()
                .partial_cmp(&(b - za).norm())
                .unwrap()
        });
        draw_circle_arc(&mut raster, nearest[0], za, nearest[1], [255, 200, 70]);
    }
    let _ = anchor;

    let stats = JuliaRenderStats {
        pixels: width * height,
        marked,
        threshold,
    };
    (raster, stats)
}

#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct JuliaRenderStats {
    pub pixels: usize,
    pub marked: usize,
    pub threshold: usize,
}

fn draw_mirror_arc(raster: &mut Raster, m: &Mirror, a: Complex64, b: Complex64, color: Rgb) {
    match m.chart() {
        crate::group::MirrorChart::Line { .. } => {
            let n = 600;
            for k in 0..=n {
                let t = k as f64 / n as f64;
                let z = a + (b - a) * t;
                if let Some((px, py)) = raster.viewport.to_pixel(z, raster.width, raster.height) {
                    raster.set(px, py, color);
                }
            }
        }
        crate::group::MirrorChart::Circle { center, radius } => {
            let c = Complex64::new(center.0, center.1);
            let ta = (a - c).arg();
            let mut tb = (b - c).arg();
            // walk the short way around
            if (tb - ta).abs() > std::f64::consts::PI {
                tb -= (tb - ta).signum() * 2.0 * std::f64::consts::PI;
            }
            let n = 600;
            for k in 0..=n {
                let t = ta + (tb - ta) * k as f64 / n as f64;
                let z = c + Complex64::from_polar(radius, t);
                if let Some((px, py)) = raster.viewport.to_pixel(z, raster.width, raster.height) {
                    raster.set(px, py, color);
                }
            }
        }
    }
}

fn draw_circle_arc(raster: &mut Raster, a: Complex64, through: Complex64, b: Complex64, color: Rgb) {
    let (c, r) = crate::dynamics::circumcircle(a, through, b);
    if !r.is_finite() {
        return;
    }
    // two short sub-arcs via the anchor so the drawn arc always passes
    // through it
    for (from, to) in [(a, through), (through, b)] {
        let ta = (from - c).arg();
        let mut tb = (to - c).arg();
        if (tb - ta).abs() > std::f64::consts::PI {
            tb -= (tb - ta).signum() * 2.0 * std::f64::consts::PI;
        }
        let n = 200;
        for k in 0..=n {
            let t = ta + (tb - ta) * k as f64 / n as f64;
            let z = c + Complex64::from_polar(r, t);
            if let Some((px, py)) = raster.viewport.to_pixel(z, raster.width, raster.height) {
                raster.set(px, py, color);
            }
        }
    }
}

/// Newton-basin raster over the bounding box of the fundamental triangle;
/// pixels outside the triangle stay black.
pub fn render_newton_basins(
    m: &ResidualPolynomial,
    targets: &NewtonTargets,
    tri: &FundamentalTriangle,
    width: usize,
    max_iter: usize,
) -> Raster {
    let xs: Vec<f64> = tri.corners.iter().map(|z| z.re).collect();
    let ys: Vec<f64> = tri.corners.iter().map(|z| z.im).collect();
    let (x0, x1) = (
        xs.iter().cloned().fold(f64::INFINITY, f64::min),
        xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    );
    let (y0, y1) = (
        ys.iter().cloned().fold(f64::INFINITY, f64::min),
        ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    );
    let pad_x = 0.03 * (x1 - x0);
    let pad_y = 0.03 * (y1 - y0);
    let viewport = Viewport {
        x0: x0 - pad_x,
        y0: y0 - pad_y,
        x1: x1 + pad_x,
        y1: y1 + pad_y,
    };
    let height = ((viewport.y1 - viewport.y0) / (viewport.x1 - viewport.x0) * width as f64)
        .ceil()
        .max(1.0) as usize;
    let rows: Vec<Vec<Rgb>> = (0..height)
        .into_par_iter()
        .map(|py| {
            (0..width)
                .map(|px| {
                    let z = viewport.pixel_center(px, py, width, height);
                    if !tri.containsateral(z) {
                        return [0, 0, 0];
                    }
                    match newton_from(m, targets, z, max_iter).class {
                        Some(c) => {
                            NEWTON_COLORS
                                [TARGET_CLASSES.iter().position(|t| *t == c).unwrap()]
                        }
                        None => [30, 30, 30],
                    }
                })
                .collect()
        })
        .collect();
    let mut raster = Raster::new(width, height, viewport);
    for (py, row) in rows.iter().enumerate() {
        for (px, &c) in row.iter().enumerate() {
            raster.set(px, py, c);
        }
    }
    raster
}

/// Orthographic scatter of an orbit with optional 5-way labels.
pub fn render_orbit_scatter(
    orbit: &Orbit,
    labels: Option<&[usize]>,
    width: usize,
) -> Raster {
    let viewport = Viewport::square(1.1);
    let mut raster = Raster::new(width, width, viewport);
    let colors = [
        [230, 60, 60],
        [60, 190, 90],
        [70, 90, 230],
        [230, 180, 40],
        [180, 70, 210],
    ];
    let r_dot = (width / 90).max(2) as isize;
    for (k, p) in orbit.points.iter().enumerate() {
        let v = p.sphere_vec();
        // front hemisphere solid, back hemisphere dimmed
        let front = v[2] >= 0.0;
        let z = Complex64::new(v[0], v[1]);
        let color = match labels {
            Some(ls) => colors[ls[k] % 5],
            None => [235, 235, 235],
        };
        let color = if front {
            color
        } else {
            [color[0] / 3, color[1] / 3, color[2] / 3]
        };
        if let Some((px, py)) = viewport.to_pixel(z, width, width) {
            for dy in -r_dot..=r_dot {
                for dx in -r_dot..=r_dot {
                    if dx * dx + dy * dy <= r_dot * r_dot {
                        let (qx, qy) = (px as isize + dx, py as isize + dy);
                        if qx >= 0 && qy >= 0 {
                            raster.set(qx as usize, qy as usize, color);
                        }
                    }
                }
            }
        }
    }
    raster
}

/// Pixel-level symmetry score of the marked set under conjugation
/// (vertical flip of a symmetric viewport).
pub fn reflection_symmetry_score(raster: &Raster, is_marked: impl Fn(Rgb) -> bool) -> f64 {
    let mut marked = 0usize;
    let mut matched = 0usize;
    for py in 0..raster.height {
        for px in 0..raster.width {
            if is_marked(raster.get(px, py)) {
                marked += 1;
                let mirror_py = raster.height - 1 - py;
                if is_marked(raster.get(px, mirror_py)) {
                    matched += 1;
                }
            }
        }
    }
    if marked == 0 {
        return 1.0;
    }
    matched as f64 / marked as f64
}
