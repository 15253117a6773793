//! Point membership in the windows by inverse-map descent.

use std::collections::HashMap;

use num_complex::Complex64;
use once_cell::sync::Lazy;
use rayon::prelude::*;
use serde::Serialize;

use super::affine::{MapRegistry, NumMap};
use super::cloud::{ab_ring, PointIndex, WindowLabel};
use super::geometry::{winding_number, ConvexPolygon};
use super::points::SpecialPoints;
use super::rhombus::rhombus;
use crate::error::{cap, Error, Result};

pub const MAX_MEMBERSHIP_DEPTH: u32 = 40;
pub const DEFAULT_DEPTH: u32 = 40;
/// Boundary depth used to certify the inner disk.
const INNER_RING_DEPTH: u32 = 16;
const INNER_GRID: f64 = 0.02;
const SAFETY: f64 = 0.95;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Inside,
    Outside,
    Undecided,
}

impl Verdict {
    /// Membership in a union of sets.
    fn any(vs: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::Outside;
        for v in vs {
            match v {
                Verdict::Inside => return Verdict::Inside,
                Verdict::Undecided => out = Verdict::Undecided,
                Verdict::Outside => {}
            }
        }
        out
    }
}

/// Membership oracle for Ω_AB and the windows derived from it.
#[derive(Clone, Debug)]
pub struct Membership {
    ifs: [NumMap; 3],
    f1: NumMap,
    f2: NumMap,
    f3: NumMap,
    f4: NumMap,
    /// Certified convex superset of Ω_AB.
    pub outer: ConvexPolygon,
    /// Certified disk inside Ω_AB around the symmetry centre P5.
    pub inner_center: Complex64,
    pub inner_radius: f64,
    /// Grid spacing of the auxiliary inner disks.
    grid: f64,
    /// Certified disks centred on grid nodes `(i·grid, j·grid)`; each radius
    /// exceeds `grid`, so a disk covers the cell of its node.
    disks: HashMap<(i64, i64), f64>,
}

/// Certified lower bound on the distance from `z` to ∂Ω_AB, or `None` if `z`
/// is not enclosed.
fn certified_depth(z: Complex64, ring: &[Complex64], idx: &PointIndex, slack: f64) -> Option<f64> {
    let d = idx.nearest(z) - slack;
    (d > 0.0 && winding_number(ring, z) != 0).then_some(d)
}

impl Membership {
    pub fn new() -> Result<Self> {
        let reg = MapRegistry::new();
        let sp = SpecialPoints::new();
        let r = rhombus(&sp)?;
        let f1 = reg.f1.numeric();
        let tau = reg.tau.numeric();
        let mut corners = r.vertices.clone();
        for m in [f1, tau, tau.compose(&f1)] {
            corners.extend(r.map(&m).vertices);
        }
        let outer = ConvexPolygon::hull(&corners)?;

        // every boundary point lies in a rhombus image g_w(R) that also
        // contains the ring point g_w(P2)
        let ring = ab_ring(INNER_RING_DEPTH)?;
        let idx = PointIndex::auto(&ring);
        let diam = {
            let v = &r.vertices;
            let mut d: f64 = 0.0;
            for a in v {
                for b in v {
                    d = d.max((a - b).norm());
                }
            }
            d
        };
        let slack = crate::field::consts().beta_abs().powi(INNER_RING_DEPTH as i32) * diam;

        let center = sp.numeric(5);
        let inner_radius = certified_depth(center, &ring, &idx, slack)
            .map(|d| SAFETY * d)
            .ok_or_else(|| Error::InvalidArgument("inner disk not certified".into()))?;

        let (lo, hi) = outer.bbox();
        let grid = INNER_GRID;
        let nodes: Vec<(i64, i64)> = ((lo.re / grid).floor() as i64..=(hi.re / grid).ceil() as i64)
            .flat_map(|i| ((lo.im / grid).floor() as i64..=(hi.im / grid).ceil() as i64).map(move |j| (i, j)))
            .collect();
        let disks: HashMap<(i64, i64), f64> = nodes
            .par_iter()
            .filter_map(|&(i, j)| {
                let z = Complex64::new(i as f64 * grid, j as f64 * grid);
                certified_depth(z, &ring, &idx, slack)
                    .map(|d| SAFETY * d)
                    .filter(|&rad| rad > grid)
                    .map(|rad| ((i, j), rad))
            })
            .collect();

        Ok(Self {
            ifs: reg.window_ifs(),
            f1,
            f2: reg.f2.numeric(),
            f3: reg.f3.numeric(),
            f4: reg.f4.numeric(),
            outer,
            inner_center: center,
            inner_radius,
            grid,
            disks,
        })
    }

    /// Whether `z` lies in one of the certified inner disks.
    pub fn in_inner_disk(&self, z: Complex64) -> bool {
        if (z - self.inner_center).norm() < self.inner_radius {
            return true;
        }
        let key = ((z.re / self.grid).round() as i64, (z.im / self.grid).round() as i64);
        self.disks.get(&key).is_some_and(|&rad| {
            let c = Complex64::new(key.0 as f64 * self.grid, key.1 as f64 * self.grid);
            (z - c).norm() < rad
        })
    }

    pub fn inner_disk_count(&self) -> usize {
        self.disks.len() + 1
    }

    fn ab(&self, z: Complex64, left: u32) -> Verdict {
        if !self.outer.contains(z) {
            return Verdict::Outside;
        }
        if self.in_inner_disk(z) {
            return Verdict::Inside;
        }
        if left == 0 {
            return Verdict::Undecided;
        }
        let mut out = Verdict::Outside;
        for m in &self.ifs {
            match self.ab(m.apply_inverse(z), left - 1) {
                Verdict::Inside => return Verdict::Inside,
                Verdict::Undecided => out = Verdict::Undecided,
                Verdict::Outside => {}
            }
        }
        out
    }

    /// Membership of `z` in the window `label` with descent depth `depth`.
    pub fn classify(&self, label: WindowLabel, z: Complex64, depth: u32) -> Result<Verdict> {
        cap("membership depth", depth as u64, MAX_MEMBERSHIP_DEPTH as u64)?;
        let ab = |w: Complex64| self.ab(w, depth);
        Ok(match label {
            WindowLabel::AB => ab(z),
            WindowLabel::A => ab(self.f1.apply_inverse(z)),
            WindowLabel::B => Verdict::any([ab(self.f2.apply_inverse(z)), ab(self.f3.apply_inverse(z))]),
            WindowLabel::C => ab(self.f4.apply_inverse(z)),
            WindowLabel::Omega => Verdict::any([ab(z), ab(self.f4.apply_inverse(z))]),
            WindowLabel::Boundary => {
                return Err(Error::InvalidArgument("membership is defined for windows only".into()))
            }
        })
    }

    /// Certified convex superset of the window `label`.
    pub fn outer_hull(&self, label: WindowLabel) -> ConvexPolygon {
        let img = |m: &NumMap| self.outer.map(m).vertices;
        let pts = match label {
            WindowLabel::A => img(&self.f1),
            WindowLabel::B => [img(&self.f2), img(&self.f3)].concat(),
            WindowLabel::C => img(&self.f4),
            WindowLabel::Omega => [self.outer.vertices.clone(), img(&self.f4)].concat(),
            _ => self.outer.vertices.clone(),
        };
        ConvexPolygon::hull(&pts).expect("hull of a non-degenerate polygon")
    }
}

static ORACLE: Lazy<Membership> = Lazy::new(|| Membership::new().expect("membership oracle"));

/// Shared oracle instance.
pub fn oracle() -> &'static Membership {
    &ORACLE
}

/// Membership of `z` in Ω_AB.
pub fn membership(z: Complex64, max_depth: u32) -> Result<Verdict> {
    oracle().classify(WindowLabel::AB, z, max_depth)
}

pub fn membership_in(label: WindowLabel, z: Complex64, max_depth: u32) -> Result<Verdict> {
    oracle().classify(label, z, max_depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::windows::cloud::{attractor_cloud, CloudMode};
    use crate::windows::geometry::segment_distance;

    #[test]
    fn examples() {
        let sp = SpecialPoints::new();
        assert_eq!(membership(sp.numeric(5), 40).unwrap(), Verdict::Inside);
        assert_eq!(membership(Complex64::new(10.0, 0.0), 1).unwrap(), Verdict::Outside);
        for d in [5, 10, 20, 30] {
            assert_eq!(membership(sp.numeric(2), d).unwrap(), Verdict::Undecided);
        }
        assert!(membership(sp.numeric(2), 41).is_err());
    }

    #[test]
    fn inner_radius_positive() {
        let m = oracle();
        assert!(m.inner_radius > 0.2 && m.inner_radius < 0.3, "{}", m.inner_radius);
    }

    #[test]
    fn outer_hull_contains_boundary() {
        let m = oracle();
        for z in ab_ring(14).unwrap() {
            assert!(m.outer.signed_depth(z) > 0.0);
        }
        assert!(m.inner_disk_count() > 100);
    }

    #[test]
    fn fixed_points_of_f1_and_f3_are_inside() {
        let b = crate::field::consts().beta();
        assert_eq!(membership(Complex64::new(0.0, 0.0), 40).unwrap(), Verdict::Inside);
        assert_eq!(membership(-b, 40).unwrap(), Verdict::Inside);
    }

    #[test]
    fn monotone_in_depth() {
        let m = oracle();
        for i in 0..400 {
            let z = Complex64::new(-1.0 + 0.005 * i as f64, -0.3 + 0.002 * i as f64);
            let mut prev = m.classify(WindowLabel::Omega, z, 0).unwrap();
            for d in 1..=40 {
                let v = m.classify(WindowLabel::Omega, z, d).unwrap();
                if prev != Verdict::Undecided {
                    assert_eq!(v, prev);
                }
                prev = v;
            }
        }
    }

    #[test]
    fn cloud_points_never_outside() {
        let m = oracle();
        let c = attractor_cloud(WindowLabel::AB, CloudMode::Random { samples: 2000, seed: 3 }).unwrap();
        let mut inside = 0;
        for &z in &c.points {
            let v = m.classify(WindowLabel::AB, z, 30).unwrap();
            assert_ne!(v, Verdict::Outside);
            inside += (v == Verdict::Inside) as usize;
        }
        assert!(inside > 1900);
    }

    #[test]
    fn agrees_with_winding_number() {
        let ring = ab_ring(18).unwrap();
        let m = oracle();
        let n = ring.len();
        let mut checked = 0;
        for i in 0..60 {
            for j in 0..60 {
                let z = Complex64::new(-1.2 + 2.4 * i as f64 / 59.0, -1.4 + 2.4 * j as f64 / 59.0);
                let d = (0..n)
                    .map(|k| segment_distance(z, ring[k], ring[(k + 1) % n]))
                    .fold(f64::INFINITY, f64::min);
                if d < 1e-3 {
                    continue;
                }
                let expected = if winding_number(&ring, z) != 0 {
                    Verdict::Inside
                } else {
                    Verdict::Outside
                };
                assert_eq!(m.classify(WindowLabel::AB, z, 40).unwrap(), expected, "{z}");
                checked += 1;
            }
        }
        assert!(checked > 3000);
    }
}
