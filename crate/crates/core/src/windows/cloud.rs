//! Point clouds of the windows and of their boundary.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::affine::{MapRegistry, NumMap};
use super::points::SpecialPoints;
use crate::error::{cap, Error, Result};

pub const MAX_CLOUD_DEPTH: u32 = 25;
pub const MAX_SAMPLES: usize = 100_000_000;
pub const MAX_CLOUD_POINTS: u64 = 40_000_000;
/// Exponent of |β| at which a random address is truncated.
const RANDOM_EXPONENT: u32 = 64;

/// Contraction of f₁, f₂, f₃ as powers of |β|.
const WINDOW_EXP: [u32; 3] = [1, 3, 1];
/// Contraction of g₁, g₂, g₃ as powers of |β|.
const BOUNDARY_EXP: [u32; 3] = [2, 3, 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum WindowLabel {
    A,
    B,
    C,
    AB,
    Omega,
    Boundary,
}

impl fmt::Display for WindowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WindowLabel::A => "A",
            WindowLabel::B => "B",
            WindowLabel::C => "C",
            WindowLabel::AB => "AB",
            WindowLabel::Omega => "Omega",
            WindowLabel::Boundary => "Boundary",
        };
        f.write_str(s)
    }
}

impl FromStr for WindowLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(WindowLabel::A),
            "b" => Ok(WindowLabel::B),
            "c" => Ok(WindowLabel::C),
            "ab" => Ok(WindowLabel::AB),
            "omega" => Ok(WindowLabel::Omega),
            "boundary" => Ok(WindowLabel::Boundary),
            _ => Err(Error::InvalidArgument(format!("unknown window label {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CloudMode {
    FullDepth { depth: u32 },
    Random { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct PointCloud {
    pub label: WindowLabel,
    pub mode: CloudMode,
    #[serde(skip)]
    pub points: Vec<Complex64>,
}

impl PointCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Number of addresses emitted at `depth` for contraction exponents `exp`.
fn address_count(exp: &[u32; 3], depth: u32) -> u64 {
    let d = depth as usize;
    let mut n = vec![1u64; d + 1];
    for k in 1..=d {
        n[k] = exp
            .iter()
            .map(|&e| if e as usize >= k { 1 } else { n[k - e as usize] })
            .fold(0u64, |a, b| a.saturating_add(b));
    }
    n[d]
}

/// Images of `seed` under all addresses of combined exponent ≥ `depth`, in
/// lexicographic address order.
fn enumerate(maps: &[NumMap; 3], exp: &[u32; 3], depth: u32, seed: Complex64) -> Vec<Complex64> {
    fn rec(maps: &[NumMap; 3], exp: &[u32; 3], left: i64, m: NumMap, seed: Complex64, out: &mut Vec<Complex64>) {
        if left <= 0 {
            out.push(m.apply(seed));
            return;
        }
        for i in 0..3 {
            rec(maps, exp, left - exp[i] as i64, m.compose(&maps[i]), seed, out);
        }
    }
    let id = NumMap {
        m: Complex64::new(1.0, 0.0),
        d: Complex64::new(0.0, 0.0),
    };
    if depth < 6 {
        let mut out = Vec::new();
        rec(maps, exp, depth as i64, id, seed, &mut out);
        return out;
    }
    // split on two-letter prefixes; rayon keeps the collection ordered
    let prefixes: Vec<(NumMap, i64)> = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| {
            (
                maps[i].compose(&maps[j]),
                depth as i64 - exp[i] as i64 - exp[j] as i64,
            )
        })
        .collect();
    prefixes
        .par_iter()
        .map(|&(m, left)| {
            let mut out = Vec::new();
            rec(maps, exp, left, m, seed, &mut out);
            out
        })
        .collect::<Vec<_>>()
        .concat()
}

/// Branch probabilities (1/α, 1/α³, 1/α) of the area-uniform measure.
pub fn branch_probabilities() -> [f64; 3] {
    let a = crate::field::consts().alpha;
    [1.0 / a, 1.0 / (a * a * a), 1.0 / a]
}

fn pick(rng: &mut ChaCha8Rng, p: &[f64; 3]) -> usize {
    let u: f64 = rng.gen();
    if u < p[0] {
        0
    } else if u < p[0] + p[1] {
        1
    } else {
        2
    }
}

/// Area-uniform random point of Ω_AB.
fn random_ab(rng: &mut ChaCha8Rng, maps: &[NumMap; 3], p: &[f64; 3], seed: Complex64) -> Complex64 {
    // the first pick is the outermost map
    let (mut m, mut d) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let mut e = 0;
    while e < RANDOM_EXPONENT {
        let i = pick(rng, p);
        d += m * maps[i].d;
        m *= maps[i].m;
        e += WINDOW_EXP[i];
    }
    m * seed + d
}

pub fn attractor_cloud(label: WindowLabel, mode: CloudMode) -> Result<PointCloud> {
    let reg = MapRegistry::new();
    let sp = SpecialPoints::new();
    let seed = sp.numeric(5);
    let maps = reg.window_ifs();
    let f1 = reg.f1.numeric();
    let f2 = reg.f2.numeric();
    let f3 = reg.f3.numeric();
    let f4 = reg.f4.numeric();
    let points = match mode {
        CloudMode::FullDepth { depth } => {
            cap("cloud depth", depth as u64, MAX_CLOUD_DEPTH as u64)?;
            let n = address_count(&WINDOW_EXP, depth);
            let factor = match label {
                WindowLabel::AB | WindowLabel::A | WindowLabel::C => 1,
                WindowLabel::B => 2,
                WindowLabel::Omega => 4,
                WindowLabel::Boundary => {
                    return Err(Error::InvalidArgument("use boundary_cloud for the boundary".into()))
                }
            };
            cap("cloud points", n.saturating_mul(factor), MAX_CLOUD_POINTS)?;
            let ab = enumerate(&maps, &WINDOW_EXP, depth, seed);
            let img = |m: &NumMap| ab.iter().map(|&z| m.apply(z)).collect::<Vec<_>>();
            match label {
                WindowLabel::AB => ab,
                WindowLabel::A => img(&f1),
                WindowLabel::B => [img(&f2), img(&f3)].concat(),
                WindowLabel::C => img(&f4),
                _ => [img(&f1), img(&f2), img(&f3), img(&f4)].concat(),
            }
        }
        CloudMode::Random { samples, seed: rs } => {
            cap("samples", samples as u64, MAX_SAMPLES as u64)?;
            if label == WindowLabel::Boundary {
                return Err(Error::InvalidArgument("use boundary_cloud for the boundary".into()));
            }
            let p = branch_probabilities();
            let a2 = crate::field::consts().alpha2;
            let p_small = 1.0 / (a2 + 1.0);
            let mut rng = ChaCha8Rng::seed_from_u64(rs);
            (0..samples)
                .map(|_| {
                    let z = random_ab(&mut rng, &maps, &p, seed);
                    match label {
                        WindowLabel::AB => z,
                        WindowLabel::A => f1.apply(z),
                        WindowLabel::B => {
                            if rng.gen::<f64>() < p_small {
                                f2.apply(z)
                            } else {
                                f3.apply(z)
                            }
                        }
                        WindowLabel::C => f4.apply(z),
                        _ => {
                            if rng.gen::<f64>() < p_small {
                                f4.apply(z)
                            } else {
                                z
                            }
                        }
                    }
                })
                .collect()
        }
    };
    Ok(PointCloud { label, mode, points })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundaryScope {
    /// The edge [P2, P3].
    Edge,
    /// The closed curve ∂Ω_AB through P2, P3, P4, P1.
    AB,
    /// ∂Ω_AB together with its images under f₁, …, f₄ (contains the
    /// boundaries of Ω_A, Ω_B, Ω_C).
    Pieces,
    /// ∂Ω_AB together with f₄(∂Ω_AB) (contains ∂Ω).
    Omega,
}

/// Ordered polyline from P2 to P3 (inclusive) approximating the edge.
pub fn edge_polyline(depth: u32) -> Result<Vec<Complex64>> {
    cap("boundary depth", depth as u64, MAX_CLOUD_DEPTH as u64)?;
    cap("boundary points", address_count(&BOUNDARY_EXP, depth), MAX_CLOUD_POINTS)?;
    let reg = MapRegistry::new();
    let sp = SpecialPoints::new();
    let mut pts = enumerate(&reg.boundary_ifs(), &BOUNDARY_EXP, depth, sp.numeric(2));
    pts.push(sp.numeric(3));
    Ok(pts)
}

/// Closed ring P2 → P3 → P4 → P1 → P2 (last point not repeated).
pub fn ab_ring(depth: u32) -> Result<Vec<Complex64>> {
    let reg = MapRegistry::new();
    let mut edge = edge_polyline(depth)?;
    edge.pop();
    let f1 = reg.f1.numeric();
    let tau = reg.tau.numeric();
    let e2: Vec<Complex64> = edge.iter().map(|&z| f1.apply(z)).collect();
    let e3: Vec<Complex64> = edge.iter().map(|&z| tau.apply(z)).collect();
    let e4: Vec<Complex64> = e2.iter().map(|&z| tau.apply(z)).collect();
    Ok([edge, e2, e3, e4].concat())
}

pub fn boundary_cloud(depth: u32, scope: BoundaryScope) -> Result<PointCloud> {
    let reg = MapRegistry::new();
    let points = match scope {
        BoundaryScope::Edge => edge_polyline(depth)?,
        BoundaryScope::AB => ab_ring(depth)?,
        BoundaryScope::Pieces => {
            let ring = ab_ring(depth)?;
            let mut all = ring.clone();
            for f in [&reg.f1, &reg.f2, &reg.f3, &reg.f4] {
                let m = f.numeric();
                all.extend(ring.iter().map(|&z| m.apply(z)));
            }
            all
        }
        BoundaryScope::Omega => {
            let ring = ab_ring(depth)?;
            let m = reg.f4.numeric();
            let img: Vec<Complex64> = ring.iter().map(|&z| m.apply(z)).collect();
            [ring, img].concat()
        }
    };
    Ok(PointCloud {
        label: WindowLabel::Boundary,
        mode: CloudMode::FullDepth { depth },
        points,
    })
}

/// Uniform-grid index for nearest-neighbour queries.
pub struct PointIndex<'a> {
    points: &'a [Complex64],
    h: f64,
    cells: HashMap<(i64, i64), Vec<u32>>,
}

impl<'a> PointIndex<'a> {
    pub fn new(points: &'a [Complex64], h: f64) -> Self {
        let mut cells: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
        for (i, z) in points.iter().enumerate() {
            cells.entry(Self::key(h, *z)).or_default().push(i as u32);
        }
        Self { points, h, cells }
    }

    /// Cell size giving a few points per occupied cell.
    pub fn auto(points: &'a [Complex64]) -> Self {
        let (lo, hi) = super::geometry::bbox(points);
        let span = (hi - lo).norm().max(1e-12);
        let h = span / (points.len() as f64).sqrt().max(1.0);
        Self::new(points, h)
    }

    fn key(h: f64, z: Complex64) -> (i64, i64) {
        ((z.re / h).floor() as i64, (z.im / h).floor() as i64)
    }

    /// Distance to the nearest indexed point (`inf` if empty).
    pub fn nearest(&self, z: Complex64) -> f64 {
        if self.points.is_empty() {
            return f64::INFINITY;
        }
        let (cx, cy) = Self::key(self.h, z);
        let mut best = f64::INFINITY;
        let mut r: i64 = 0;
        loop {
            for dx in -r..=r {
                for dy in -r..=r {
                    if dx.abs() != r && dy.abs() != r {
                        continue;
                    }
                    if let Some(v) = self.cells.get(&(cx + dx, cy + dy)) {
                        for &i in v {
                            best = best.min((self.points[i as usize] - z).norm());
                        }
                    }
                }
            }
            // every unvisited cell is at least r·h away
            if best <= r as f64 * self.h {
                return best;
            }
            r += 1;
            if r > 1 << 20 {
                return best;
            }
        }
    }
}

/// Directed Hausdorff distance sup over `a` of dist(·, b).
pub fn directed_hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    let idx = PointIndex::auto(b);
    a.par_iter().map(|&z| idx.nearest(z)).reduce(|| 0.0, f64::max)
}

pub fn hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probabilities_sum_to_one() {
        let p = branch_probabilities();
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn depth_zero_is_seed() {
        let c = attractor_cloud(WindowLabel::AB, CloudMode::FullDepth { depth: 0 }).unwrap();
        assert_eq!(c.points.len(), 1);
        assert!((c.points[0] - SpecialPoints::new().numeric(5)).norm() < 1e-15);
        let b = boundary_cloud(0, BoundaryScope::Edge).unwrap();
        let sp = SpecialPoints::new();
        assert_eq!(b.points, vec![sp.numeric(2), sp.numeric(3)]);
    }

    #[test]
    fn counts_match_enumeration() {
        for d in [0, 1, 2, 5, 9] {
            let c = attractor_cloud(WindowLabel::AB, CloudMode::FullDepth { depth: d }).unwrap();
            assert_eq!(c.len() as u64, address_count(&WINDOW_EXP, d));
        }
    }

    #[test]
    fn caps_enforced() {
        assert!(matches!(
            attractor_cloud(WindowLabel::AB, CloudMode::FullDepth { depth: 26 }),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn special_points_near_cloud_bbox() {
        let c = attractor_cloud(WindowLabel::AB, CloudMode::FullDepth { depth: 18 }).unwrap();
        let (lo, hi) = super::super::geometry::bbox(&c.points);
        let sp = SpecialPoints::new();
        for k in 1..=4 {
            let z = sp.numeric(k);
            assert!(z.re >= lo.re - 1e-3 && z.re <= hi.re + 1e-3);
            assert!(z.im >= lo.im - 1e-3 && z.im <= hi.im + 1e-3);
        }
    }

    #[test]
    fn cloud_is_tau_symmetric() {
        let c = attractor_cloud(WindowLabel::AB, CloudMode::FullDepth { depth: 12 }).unwrap();
        let tau = MapRegistry::new().tau.numeric();
        let img: Vec<Complex64> = c.points.iter().map(|&z| tau.apply(z)).collect();
        assert!(directed_hausdorff(&img, &c.points) < 1e-9);
    }

    #[test]
    fn edge_is_kappa_symmetric_and_translates() {
        let reg = MapRegistry::new();
        let e = edge_polyline(14).unwrap();
        let k = reg.kappa.numeric();
        let img: Vec<Complex64> = e.iter().map(|&z| k.apply(z)).collect();
        assert!(hausdorff(&img, &e) < 1e-9);
        // [P4, P1] = τ[P2, P3] differs from [P2, P3] by the translation 1
        let tau = reg.tau.numeric();
        let shifted: Vec<Complex64> = e.iter().map(|&z| tau.apply(z) + 1.0).collect();
        assert!(hausdorff(&shifted, &e) < 1e-9);
    }

    #[test]
    fn g1_endpoints() {
        let reg = MapRegistry::new();
        let sp = SpecialPoints::new();
        let g1 = reg.g1.numeric();
        assert!((g1.apply(sp.numeric(2)) - sp.numeric(2)).norm() < 1e-14);
        assert!((g1.apply(sp.numeric(3)) - sp.numeric(8)).norm() < 1e-14);
    }

    #[test]
    fn random_cloud_reproducible() {
        let m = CloudMode::Random { samples: 1000, seed: 7 };
        let a = attractor_cloud(WindowLabel::Omega, m).unwrap();
        let b = attractor_cloud(WindowLabel::Omega, m).unwrap();
        assert_eq!(a.points, b.points);
    }

    #[test]
    fn nearest_agrees_with_brute_force() {
        let c = attractor_cloud(WindowLabel::AB, CloudMode::FullDepth { depth: 8 }).unwrap();
        let idx = PointIndex::auto(&c.points);
        for z in [Complex64::new(0.3, -0.2), Complex64::new(3.0, 1.0), Complex64::new(-0.1, 0.0)] {
            let brute = c.points.iter().map(|p| (p - z).norm()).fold(f64::INFINITY, f64::min);
            assert_eq!(idx.nearest(z), brute);
        }
    }
}
