//! Convex polygons: quads, hulls, containment and separation margins.

use num_complex::Complex64;

use super::affine::NumMap;
use crate::error::{Error, Result};

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Convex polygon with counterclockwise vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon {
    pub vertices: Vec<Complex64>,
}

/// Convex quadrilateral, counterclockwise.
pub type Quad = ConvexPolygon;

impl ConvexPolygon {
    /// Builds a quad from four corners in cyclic order (either orientation).
    pub fn quad(corners: [Complex64; 4]) -> Result<Self> {
        Self::from_cyclic(corners.to_vec())
    }

    pub fn from_cyclic(mut v: Vec<Complex64>) -> Result<Self> {
        let n = v.len();
        if n < 3 {
            return Err(Error::DegenerateQuad);
        }
        let area2: f64 = (0..n).map(|i| cross(v[i], v[(i + 1) % n])).sum();
        let scale = v.iter().map(|z| z.norm()).fold(1.0, f64::max);
        if area2.abs() <= 1e-12 * scale * scale {
            return Err(Error::DegenerateQuad);
        }
        if area2 < 0.0 {
            v.reverse();
        }
        for i in 0..n {
            let a = v[i];
            let b = v[(i + 1) % n];
            let c = v[(i + 2) % n];
            if cross(b - a, c - b) <= 1e-12 * scale * scale {
                return Err(Error::DegenerateQuad);
            }
        }
        Ok(Self { vertices: v })
    }

    /// Convex hull (Andrew's monotone chain).
    pub fn hull(points: &[Complex64]) -> Result<Self> {
        let mut pts: Vec<Complex64> = points.to_vec();
        pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        pts.dedup();
        if pts.len() < 3 {
            return Err(Error::DegenerateQuad);
        }
        let mut lower: Vec<Complex64> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2
                && cross(lower[lower.len() - 1] - lower[lower.len() - 2], p - lower[lower.len() - 1]) <= 0.0
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Complex64> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2
                && cross(upper[upper.len() - 1] - upper[upper.len() - 2], p - upper[upper.len() - 1]) <= 0.0
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() < 3 {
            return Err(Error::DegenerateQuad);
        }
        Ok(Self { vertices: lower })
    }

    pub fn map(&self, m: &NumMap) -> Self {
        // similarities preserve orientation
        Self {
            vertices: self.vertices.iter().map(|&z| m.apply(z)).collect(),
        }
    }

    pub fn area(&self) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        (0..n).map(|i| cross(v[i], v[(i + 1) % n])).sum::<f64>() / 2.0
    }

    fn edges(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Signed distance of `z` to the boundary: positive inside, negative
    /// outside (exact outside only up to corner regions, where it is a lower
    /// bound on the Euclidean distance in magnitude).
    pub fn signed_depth(&self, z: Complex64) -> f64 {
        self.edges()
            .map(|(a, b)| cross(b - a, z - a) / (b - a).norm())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.signed_depth(z) >= 0.0
    }

    /// Minimum signed depth of `inner`'s vertices in `self`: positive iff
    /// `inner` lies strictly inside.
    pub fn containment_margin(&self, inner: &ConvexPolygon) -> f64 {
        inner
            .vertices
            .iter()
            .map(|&z| self.signed_depth(z))
            .fold(f64::INFINITY, f64::min)
    }

    /// Separating-axis margin: positive (the gap along the best edge normal)
    /// iff the closed polygons are disjoint; otherwise minus the smallest
    /// overlap along any edge normal.
    pub fn separation_margin(&self, other: &ConvexPolygon) -> f64 {
        let mut best = f64::NEG_INFINITY;
        for poly in [self, other] {
            for (a, b) in poly.edges() {
                let d = b - a;
                let n = Complex64::new(d.im, -d.re) / d.norm();
                let proj = |p: &ConvexPolygon| {
                    p.vertices.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), z| {
                        let s = n.re * z.re + n.im * z.im;
                        (lo.min(s), hi.max(s))
                    })
                };
                let (l1, h1) = proj(self);
                let (l2, h2) = proj(other);
                let gap = (l2 - h1).max(l1 - h2);
                best = best.max(gap);
            }
        }
        best
    }

    /// Polygon containing the Minkowski sum with a disk of radius `delta`.
    pub fn dilate(&self, delta: f64) -> Self {
        let v = &self.vertices;
        let n = v.len();
        let shifted: Vec<(Complex64, Complex64)> = (0..n)
            .map(|i| {
                let a = v[i];
                let b = v[(i + 1) % n];
                let d = b - a;
                let out = Complex64::new(d.im, -d.re) / d.norm() * delta;
                (a + out, d)
            })
            .collect();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let (p0, d0) = shifted[(i + n - 1) % n];
            let (p1, d1) = shifted[i];
            let den = cross(d0, d1);
            let t = cross(p1 - p0, d1) / den;
            out.push(p0 + d0 * t);
        }
        Self { vertices: out }
    }

    pub fn bbox(&self) -> (Complex64, Complex64) {
        bbox(&self.vertices)
    }
}

pub fn bbox(points: &[Complex64]) -> (Complex64, Complex64) {
    points.iter().fold(
        (
            Complex64::new(f64::INFINITY, f64::INFINITY),
            Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        ),
        |(lo, hi), z| {
            (
                Complex64::new(lo.re.min(z.re), lo.im.min(z.im)),
                Complex64::new(hi.re.max(z.re), hi.im.max(z.im)),
            )
        },
    )
}

/// Distance from `z` to the segment `[a, b]`.
pub fn segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + d * t)).norm()
}

/// Winding number of the closed polyline `ring` around `z`.
pub fn winding_number(ring: &[Complex64], z: Complex64) -> i32 {
    let n = ring.len();
    let mut w = 0;
    for i in 0..n {
        let a = ring[i] - z;
        let b = ring[(i + 1) % n] - z;
        if a.im <= 0.0 {
            if b.im > 0.0 && cross(a, b) > 0.0 {
                w += 1;
            }
        } else if b.im <= 0.0 && cross(a, b) < 0.0 {
            w -= 1;
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit_square() -> ConvexPolygon {
        ConvexPolygon::quad([c(0., 0.), c(1., 0.), c(1., 1.), c(0., 1.)]).unwrap()
    }

    #[test]
    fn quad_orientation_normalised() {
        let q = ConvexPolygon::quad([c(0., 1.), c(1., 1.), c(1., 0.), c(0., 0.)]).unwrap();
        assert!(q.area() > 0.0);
        assert!((q.area() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn collinear_corners_rejected() {
        let r = ConvexPolygon::quad([c(0., 0.), c(1., 0.), c(2., 0.), c(3., 0.)]);
        assert!(matches!(r, Err(Error::DegenerateQuad)));
    }

    #[test]
    fn margins() {
        let sq = unit_square();
        let small = ConvexPolygon::quad([c(0.25, 0.25), c(0.75, 0.25), c(0.75, 0.75), c(0.25, 0.75)]).unwrap();
        assert!((sq.containment_margin(&small) - 0.25).abs() < 1e-15);
        let far = ConvexPolygon::quad([c(2., 0.), c(3., 0.), c(3., 1.), c(2., 1.)]).unwrap();
        assert!((sq.separation_margin(&far) - 1.0).abs() < 1e-15);
        assert!(sq.separation_margin(&small) < 0.0);
    }

    #[test]
    fn hull_and_dilate() {
        let pts = vec![c(0., 0.), c(1., 0.), c(0.5, 0.5), c(1., 1.), c(0., 1.)];
        let h = ConvexPolygon::hull(&pts).unwrap();
        assert_eq!(h.vertices.len(), 4);
        let d = h.dilate(0.1);
        assert!((d.area() - 1.44).abs() < 1e-12);
        assert!(d.contains(c(-0.09, 0.5)));
        assert!(!d.contains(c(-0.11, 0.5)));
    }

    #[test]
    fn winding() {
        let sq = unit_square();
        assert_eq!(winding_number(&sq.vertices, c(0.5, 0.5)), 1);
        assert_eq!(winding_number(&sq.vertices, c(1.5, 0.5)), 0);
        assert!((segment_distance(c(0.5, 1.0), c(0., 0.), c(1., 0.)) - 1.0).abs() < 1e-15);
    }
}
