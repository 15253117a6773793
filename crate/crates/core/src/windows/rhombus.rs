//! Rhombus certificate for the non-self-intersection of the boundary.

use serde::Serialize;

use super::affine::{MapRegistry, NumMap};
use super::geometry::Quad;
use super::points::SpecialPoints;
use crate::error::Result;

pub const MARGIN_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Debug, Serialize)]
pub struct MarginEntry {
    pub condition: String,
    pub margin: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RhombusReport {
    /// `g_i(R) ⊂ R`, margin = minimum depth of the image corners.
    pub containment: Vec<MarginEntry>,
    /// Pairs required to be disjoint, margin = separating gap.
    pub disjoint: Vec<MarginEntry>,
    /// Neighbouring pairs excluded from the conditions; expected to overlap
    /// (negative margin).
    pub neighbours: Vec<MarginEntry>,
    pub pass: bool,
}

impl RhombusReport {
    pub fn min_margin(&self) -> f64 {
        self.containment
            .iter()
            .chain(&self.disjoint)
            .map(|m| m.margin)
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn rhombus(sp: &SpecialPoints) -> Result<Quad> {
    Quad::quad(sp.e)
}

pub fn rhombus_verify(reg: &MapRegistry, sp: &SpecialPoints) -> Result<RhombusReport> {
    let r = rhombus(sp)?;
    let g = reg.boundary_ifs();
    let img = |w: &[usize]| {
        let m = w
            .iter()
            .fold(None::<NumMap>, |acc, &i| Some(acc.map_or(g[i], |a| a.compose(&g[i]))))
            .expect("non-empty word");
        r.map(&m)
    };
    let name = |w: &[usize]| w.iter().map(|i| format!("g{}", i + 1)).collect::<Vec<_>>().join("");

    let containment: Vec<MarginEntry> = (0..3)
        .map(|i| MarginEntry {
            condition: format!("{}(R) in R", name(&[i])),
            margin: r.containment_margin(&img(&[i])),
        })
        .collect();

    let pair = |a: &[usize], b: &[usize]| MarginEntry {
        condition: format!("{}(R) vs {}(R)", name(a), name(b)),
        margin: img(a).separation_margin(&img(b)),
    };
    let mut disjoint = vec![pair(&[0], &[2])];
    let mut neighbours = Vec::new();
    // (outer first-level map, second-level outer map, excluded inner index)
    for (a, b, skip) in [(0usize, 1usize, 0usize), (1, 0, 2), (1, 2, 0), (2, 1, 2)] {
        for i in 0..3 {
            let e = pair(&[a], &[b, i]);
            if i == skip {
                neighbours.push(e);
            } else {
                disjoint.push(e);
            }
        }
    }
    let pass = containment
        .iter()
        .chain(&disjoint)
        .all(|m| m.margin > MARGIN_THRESHOLD);
    Ok(RhombusReport {
        containment,
        disjoint,
        neighbours,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certificate_passes() {
        let rep = rhombus_verify(&MapRegistry::new(), &SpecialPoints::new()).unwrap();
        assert!(rep.pass, "{rep:#?}");
        assert_eq!(rep.containment.len(), 3);
        assert_eq!(rep.disjoint.len(), 9);
        for n in &rep.neighbours {
            assert!(n.margin < 0.0, "{} should overlap", n.condition);
        }
    }

    #[test]
    fn margins_match_reference_values() {
        let rep = rhombus_verify(&MapRegistry::new(), &SpecialPoints::new()).unwrap();
        let c: Vec<f64> = rep.containment.iter().map(|m| m.margin).collect();
        assert!((c[0] - 0.01114).abs() < 1e-4);
        assert!((c[1] - 0.13514).abs() < 1e-4);
        assert!((c[2] - 0.01114).abs() < 1e-4);
        assert!((rep.disjoint[0].margin - 0.2188).abs() < 1e-3);
    }
}
