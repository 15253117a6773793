//! Tiling, area, boundary dimension, inner points and IFS consistency.

use std::collections::HashSet;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::affine::MapRegistry;
use super::cloud::{ab_ring, attractor_cloud, edge_polyline, hausdorff, CloudMode, WindowLabel};
use super::geometry::segment_distance;
use super::membership::{oracle, Verdict, DEFAULT_DEPTH};
use crate::error::{cap, Error, Result};
use crate::field::{consts, InternalPoint};

pub const MAX_TILING_SAMPLES: usize = 1_000_000;
pub const MIN_AREA_SAMPLES: usize = 10_000;
pub const INNER_THRESHOLD: f64 = 0.01;
/// Coarsest box-counting scale is D·2^-BOX_K_MIN.
pub const BOX_K_MIN: u32 = 3;

/// Tiling lattice generators −β + 1 and β² − 2β (exact).
pub fn tiling_lattice() -> [InternalPoint; 2] {
    let one = InternalPoint::one();
    let b = InternalPoint::beta();
    [&one - &b, &b.pow(2) - &(&b + &b)]
}

#[derive(Clone, Debug, Serialize)]
pub struct TilingReport {
    pub samples: usize,
    pub seed: u64,
    pub covered_once: usize,
    pub covered_other: usize,
    pub boundary_band: usize,
    pub decided_fraction: f64,
    pub pass: bool,
}

pub fn tiling_check(samples: usize, seed: u64) -> Result<TilingReport> {
    cap("tiling samples", samples as u64, MAX_TILING_SAMPLES as u64)?;
    let m = oracle();
    let [l1, l2] = tiling_lattice().map(|v| v.to_complex());
    let hull = m.outer_hull(WindowLabel::Omega);
    let hc = hull.vertices.iter().sum::<Complex64>() / hull.vertices.len() as f64;
    let hr = hull.vertices.iter().map(|v| (v - hc).norm()).fold(0.0, f64::max);
    let pc = (l1 + l2) / 2.0;
    let pr = ((l1 + l2) / 2.0).norm().max(((l1 - l2) / 2.0).norm());
    let mut shifts = Vec::new();
    for i in -8i32..=8 {
        for j in -8i32..=8 {
            let t = l1 * i as f64 + l2 * j as f64;
            if (pc - t - hc).norm() <= hr + pr {
                shifts.push(t);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Complex64> = (0..samples)
        .map(|_| {
            let (u, v): (f64, f64) = (rng.gen(), rng.gen());
            l1 * u + l2 * v
        })
        .collect();
    let counts: Vec<(usize, usize)> = pts
        .par_iter()
        .map(|&z| {
            let mut inside = 0;
            let mut undecided = 0;
            for &t in &shifts {
                let w = z - t;
                if !hull.contains(w) {
                    continue;
                }
                match m.classify(WindowLabel::Omega, w, DEFAULT_DEPTH).expect("depth within cap") {
                    Verdict::Inside => inside += 1,
                    Verdict::Undecided => undecided += 1,
                    Verdict::Outside => {}
                }
            }
            (inside, undecided)
        })
        .collect();
    let boundary_band = counts.iter().filter(|c| c.1 > 0).count();
    let covered_once = counts.iter().filter(|c| c.1 == 0 && c.0 == 1).count();
    let covered_other = counts.iter().filter(|c| c.1 == 0 && c.0 != 1).count();
    let decided_fraction = if samples == 0 {
        1.0
    } else {
        (samples - boundary_band) as f64 / samples as f64
    };
    Ok(TilingReport {
        samples,
        seed,
        covered_once,
        covered_other,
        boundary_band,
        decided_fraction,
        pass: covered_other == 0 && decided_fraction >= 0.99,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AreaEstimate {
    pub label: WindowLabel,
    pub estimate: f64,
    pub stderr: f64,
    pub samples: usize,
    pub undecided: usize,
    pub seed: u64,
}

/// Exact window area |Im β|(α² − α), evaluated numerically.
pub fn omega_area_exact() -> f64 {
    let c = consts();
    c.beta_im.abs() * (c.alpha2 - c.alpha)
}

/// Monte Carlo area from uniform samples in the bounding box of the
/// certified hull; undecided samples count one half.
pub fn area_estimate(label: WindowLabel, samples: usize, seed: u64) -> Result<AreaEstimate> {
    if samples < MIN_AREA_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "area estimate needs at least {MIN_AREA_SAMPLES} samples"
        )));
    }
    cap("area samples", samples as u64, super::cloud::MAX_SAMPLES as u64)?;
    let m = oracle();
    let (lo, hi) = m.outer_hull(label).bbox();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Complex64> = (0..samples)
        .map(|_| {
            let (u, v): (f64, f64) = (rng.gen(), rng.gen());
            Complex64::new(lo.re + u * (hi.re - lo.re), lo.im + v * (hi.im - lo.im))
        })
        .collect();
    let verdicts: Vec<Verdict> = pts
        .par_iter()
        .map(|&z| m.classify(label, z, DEFAULT_DEPTH).expect("depth within cap"))
        .collect();
    let inside = verdicts.iter().filter(|&&v| v == Verdict::Inside).count();
    let undecided = verdicts.iter().filter(|&&v| v == Verdict::Undecided).count();
    let box_area = (hi.re - lo.re) * (hi.im - lo.im);
    let p = (inside as f64 + 0.5 * undecided as f64) / samples as f64;
    Ok(AreaEstimate {
        label,
        estimate: box_area * p,
        stderr: box_area * (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
        undecided,
        seed,
    })
}

/// Box-counting dimension target −ln φ / ln |β| of the boundary.
pub fn boundary_dimension_target() -> f64 {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    -phi.ln() / consts().beta_abs().ln()
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionEstimate {
    pub estimate: f64,
    /// `(ε, N(ε))` per dyadic scale.
    pub scales: Vec<(f64, usize)>,
}

/// Box-counting slope of a polyline over the dyadic scales ε = D·2^-k,
/// `k_min ≤ k ≤ k_max`, where D is the larger side of the bounding box.
/// Segments are subdivided to a quarter box.
pub fn box_dimension(polyline: &[Complex64], k_min: u32, k_max: u32) -> Result<DimensionEstimate> {
    if k_max < k_min + 3 {
        return Err(Error::InvalidArgument("box counting needs at least 4 scales".into()));
    }
    let (lo, hi) = super::geometry::bbox(polyline);
    let side = (hi.re - lo.re).max(hi.im - lo.im);
    if !(side > 0.0) {
        return Err(Error::InvalidArgument("box counting needs a non-degenerate set".into()));
    }
    let mut scales = Vec::new();
    for k in k_min..=k_max {
        let eps = side * 0.5f64.powi(k as i32);
        let mut boxes: HashSet<(i64, i64)> = HashSet::new();
        let mut add = |z: Complex64| {
            boxes.insert(((z.re / eps).floor() as i64, (z.im / eps).floor() as i64));
        };
        for w in polyline.windows(2) {
            let steps = ((w[1] - w[0]).norm() / (eps / 4.0)).ceil().max(1.0) as usize;
            for s in 0..steps {
                add(w[0] + (w[1] - w[0]) * (s as f64 / steps as f64));
            }
        }
        if let Some(&last) = polyline.last() {
            add(last);
        }
        scales.push((eps, boxes.len()));
    }
    let xs: Vec<f64> = scales.iter().map(|(e, _)| -e.ln()).collect();
    let ys: Vec<f64> = scales.iter().map(|(_, n)| (*n as f64).ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(DimensionEstimate {
        estimate: sxy / sxx,
        scales,
    })
}

/// Box-counting estimate on the edge [P2, P3] at boundary depth `depth`,
/// over dyadic scales from D/8 down to twice the largest point spacing.
pub fn boundary_dimension(depth: u32) -> Result<DimensionEstimate> {
    if depth < 12 {
        return Err(Error::InvalidArgument("boundary dimension needs depth ≥ 12".into()));
    }
    let edge = edge_polyline(depth)?;
    let gap = edge.windows(2).map(|w| (w[1] - w[0]).norm()).fold(0.0, f64::max);
    let (lo, hi) = super::geometry::bbox(&edge);
    let side = (hi.re - lo.re).max(hi.im - lo.im);
    let k_max = (side / (2.0 * gap)).log2().floor() as u32;
    box_dimension(&edge, BOX_K_MIN, k_max)
}

#[derive(Clone, Debug, Serialize)]
pub struct InnerPointReport {
    pub depth: u32,
    pub threshold: f64,
    /// Distance from 0 to the boundary of f₁(Ω_AB).
    pub distance_zero: f64,
    /// Distance from −β to the boundary of f₃(Ω_AB).
    pub distance_minus_beta: f64,
    pub zero_verdict: Verdict,
    pub minus_beta_verdict: Verdict,
    pub far_point_verdict: Verdict,
    pub pass: bool,
}

pub fn inner_point_check(depth: u32) -> Result<InnerPointReport> {
    let reg = MapRegistry::new();
    let ring = ab_ring(depth)?;
    let dist = |z: Complex64, m: &super::affine::NumMap| {
        let img: Vec<Complex64> = ring.iter().map(|&w| m.apply(w)).collect();
        let n = img.len();
        (0..n)
            .map(|i| segment_distance(z, img[i], img[(i + 1) % n]))
            .fold(f64::INFINITY, f64::min)
    };
    let zero = Complex64::new(0.0, 0.0);
    let mb = -consts().beta();
    let d0 = dist(zero, &reg.f1.numeric());
    let d1 = dist(mb, &reg.f3.numeric());
    let m = oracle();
    let v0 = m.classify(WindowLabel::AB, reg.f1.numeric().apply_inverse(zero), DEFAULT_DEPTH)?;
    let v1 = m.classify(WindowLabel::AB, reg.f3.numeric().apply_inverse(mb), DEFAULT_DEPTH)?;
    let vf = m.classify(WindowLabel::Omega, Complex64::new(10.0, 0.0), DEFAULT_DEPTH)?;
    Ok(InnerPointReport {
        depth,
        threshold: INNER_THRESHOLD,
        distance_zero: d0,
        distance_minus_beta: d1,
        zero_verdict: v0,
        minus_beta_verdict: v1,
        far_point_verdict: vf,
        pass: d0 > INNER_THRESHOLD
            && d1 > INNER_THRESHOLD
            && v0 == Verdict::Inside
            && v1 == Verdict::Inside
            && vf == Verdict::Outside,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyEntry {
    pub relation: String,
    pub distance: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    pub depth: u32,
    pub bound: f64,
    pub entries: Vec<ConsistencyEntry>,
    pub pass: bool,
}

pub const MAX_CONSISTENCY_DEPTH: u32 = 20;

/// Hausdorff distances between the window clouds and their IFS images.
pub fn ifs_consistency(depth: u32) -> Result<ConsistencyReport> {
    cap("consistency depth", depth as u64, MAX_CONSISTENCY_DEPTH as u64)?;
    let reg = MapRegistry::new();
    let ab = attractor_cloud(WindowLabel::AB, CloudMode::FullDepth { depth })?.points;
    let img = |f: &super::affine::AffineSimilarity, pts: &[Complex64]| {
        let m = f.numeric();
        pts.iter().map(|&z| m.apply(z)).collect::<Vec<_>>()
    };
    let a = img(&reg.f1, &ab);
    let b = [img(&reg.f2, &ab), img(&reg.f3, &ab)].concat();
    let c = img(&reg.f4, &ab);
    let ab_img = [img(&reg.f1, &ab), img(&reg.f2, &ab), img(&reg.f3, &ab)].concat();
    let a_img = [img(&reg.f1, &a), img(&reg.f1, &b)].concat();
    let b_img = [img(&reg.f3, &a), img(&reg.f3, &b), img(&reg.f1, &c)].concat();
    let c_img = img(&reg.f0, &a);
    let entries = vec![
        ConsistencyEntry {
            relation: "AB = f1(AB) ∪ f2(AB) ∪ f3(AB)".into(),
            distance: hausdorff(&ab, &ab_img),
        },
        ConsistencyEntry {
            relation: "A = f1(A) ∪ f1(B)".into(),
            distance: hausdorff(&a, &a_img),
        },
        ConsistencyEntry {
            relation: "B = f3(A) ∪ f3(B) ∪ f1(C)".into(),
            distance: hausdorff(&b, &b_img),
        },
        ConsistencyEntry {
            relation: "C = f0(A)".into(),
            distance: hausdorff(&c, &c_img),
        },
    ];
    let hull = oracle().outer.vertices.clone();
    let mut diam: f64 = 0.0;
    for p in &hull {
        for q in &hull {
            diam = diam.max((p - q).norm());
        }
    }
    let bound = 2.0 * diam * consts().beta_abs().powi(depth as i32);
    let pass = entries.iter().all(|e| e.distance <= bound);
    Ok(ConsistencyReport {
        depth,
        bound,
        entries,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_vectors_are_point_differences() {
        let sp = super::super::points::SpecialPoints::new();
        let [v1, v2] = tiling_lattice();
        assert_eq!(v1, sp.get(2) - sp.get(6));
        assert_eq!(v2, sp.get(2) - sp.get(3));
    }

    #[test]
    fn lattice_covolume_is_window_area() {
        let [v1, v2] = tiling_lattice().map(|v| v.to_complex());
        let det = (v1.re * v2.im - v1.im * v2.re).abs();
        assert!((det - omega_area_exact()).abs() < 1e-12);
        assert!((omega_area_exact() - 1.769428).abs() < 1e-6);
    }

    #[test]
    fn dimension_target() {
        assert!((boundary_dimension_target() - 1.216740).abs() < 1e-5);
    }

    #[test]
    fn segment_has_dimension_one() {
        let seg: Vec<Complex64> = (0..=1000)
            .map(|i| Complex64::new(0.1, 0.2) + Complex64::new(0.7, 0.45) * (i as f64 / 1000.0))
            .collect();
        let d = box_dimension(&seg, BOX_K_MIN, 10).unwrap();
        assert!((d.estimate - 1.0).abs() < 0.05, "{}", d.estimate);
    }

    #[test]
    fn too_few_scales_rejected() {
        let seg = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        assert!(box_dimension(&seg, 1, 3).is_err());
        assert!(boundary_dimension(11).is_err());
    }

    #[test]
    fn boundary_dimension_in_range() {
        let d = boundary_dimension(16).unwrap();
        assert!(d.scales.len() >= 4);
        assert!(d.estimate > 1.12 && d.estimate < 1.32, "{}", d.estimate);
    }

    #[test]
    fn inner_points() {
        let r = inner_point_check(18).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn consistency_depth_14() {
        let r = ifs_consistency(14).unwrap();
        assert!(r.pass, "{r:?}");
        for e in &r.entries {
            assert!(e.distance <= 1e-2, "{}: {}", e.relation, e.distance);
        }
    }

    #[test]
    fn tiling_small() {
        let r = tiling_check(2000, 11).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn area_of_omega() {
        let a = area_estimate(WindowLabel::Omega, 20_000, 5).unwrap();
        assert!((a.estimate - omega_area_exact()).abs() < 0.02 * omega_area_exact(), "{a:?}");
    }
}
