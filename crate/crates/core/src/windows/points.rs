//! Special points of the window Ω_AB and the rhombus corners.

use num_complex::Complex64;

use super::affine::{chain, IdentityOutcome, MapRegistry};
use crate::field::InternalPoint;

/// `½(a·β² + b·β + c)`.
fn half_poly(a: i64, b: i64, c: i64) -> InternalPoint {
    let beta = InternalPoint::beta();
    let k = |n: i64| InternalPoint::real(n.into());
    let s = &(&(&k(a) * &beta.pow(2)) + &(&k(b) * &beta)) + &k(c);
    s.half()
}

#[derive(Clone, Debug)]
pub struct SpecialPoints {
    /// `p[0]` is P1, …, `p[13]` is P14.
    pub p: Vec<InternalPoint>,
    /// Rhombus corners E1…E4.
    pub e: [Complex64; 4],
}

impl SpecialPoints {
    pub fn new() -> Self {
        let p = vec![
            half_poly(1, -3, -1),
            half_poly(1, -3, 1),
            half_poly(-1, 1, 1),
            half_poly(-1, 1, -1),
            half_poly(0, -1, 0),
            half_poly(1, -1, -1),
            half_poly(-1, -1, -1),
            half_poly(1, -1, 1),
            half_poly(-1, -1, 1),
            half_poly(0, -1, 1),
            half_poly(9, 1, 5),
            half_poly(-3, -3, -1),
            half_poly(5, -1, 3),
            half_poly(3, -1, 2),
        ];
        let b = crate::field::consts().beta();
        let w = (b * b - 2.0 * b) * 0.4;
        let i = Complex64::i();
        let p2 = p[1].to_complex();
        let p3 = p[2].to_complex();
        let p10 = p[9].to_complex();
        let e = [p10 - i * w, p2 + w, p10 + i * w, p3 - w];
        Self { p, e }
    }

    /// P_k for 1 ≤ k ≤ 14.
    pub fn get(&self, k: usize) -> &InternalPoint {
        &self.p[k - 1]
    }

    pub fn numeric(&self, k: usize) -> Complex64 {
        self.get(k).to_complex()
    }
}

impl Default for SpecialPoints {
    fn default() -> Self {
        Self::new()
    }
}

/// Exact relations between the special points and the named maps.
pub fn verify_point_identities(reg: &MapRegistry, sp: &SpecialPoints) -> Vec<IdentityOutcome> {
    let p = |k: usize| sp.get(k).clone();
    let mid = |a: usize, b: usize| (&p(a) + &p(b)).half();
    let beta = InternalPoint::beta();
    let eq9 = chain(&[&reg.f3, &reg.f1, &reg.f1, &reg.f3]);
    let eq9_expected = crate::windows::AffineSimilarity::new(
        beta.pow(4),
        &(&InternalPoint::real(6.into()) * &beta.pow(2)) + &InternalPoint::real(2.into()),
    );
    let ends = |a: &InternalPoint, b: &InternalPoint, x: usize, y: usize| {
        (a == &p(x) && b == &p(y)) || (a == &p(y) && b == &p(x))
    };
    let g1g3 = chain(&[&reg.g1, &reg.g3]);
    let g1g2 = chain(&[&reg.g1, &reg.g2]);
    let g2g1k = chain(&[&reg.g2, &reg.g1, &reg.kappa]);

    let cases: Vec<(&str, bool)> = vec![
        ("P2 = f3(P1)", p(2) == reg.f3.apply(&p(1))),
        ("P3 = f1(P2)", p(3) == reg.f1.apply(&p(2))),
        ("P4 = f1(P3)", p(4) == reg.f1.apply(&p(3))),
        ("P1 = f3(P4)", p(1) == reg.f3.apply(&p(4))),
        ("f3∘f1∘f1∘f3 = β⁴z + 6β² + 2", eq9 == eq9_expected),
        ("P1 fixed by f3∘f1∘f1∘f3", eq9.apply(&p(1)) == p(1)),
        ("P5 = ½(P1 + P3)", p(5) == mid(1, 3)),
        ("P5 = −β/2", p(5) == (-&beta).half()),
        ("P6 = f3(P3)", p(6) == reg.f3.apply(&p(3))),
        ("P7 = f1(P4)", p(7) == reg.f1.apply(&p(4))),
        ("P7 = f2(P1)", p(7) == reg.f2.apply(&p(1))),
        ("P7 = f3(P9)", p(7) == reg.f3.apply(&p(9))),
        ("P8 = f2(P3)", p(8) == reg.f2.apply(&p(3))),
        ("P8 = f1(P6)", p(8) == reg.f1.apply(&p(6))),
        ("P8 = f3(P2)", p(8) == reg.f3.apply(&p(2))),
        ("P8 = kappa(P9)", p(8) == reg.kappa.apply(&p(9))),
        ("P9 = f1(P1)", p(9) == reg.f1.apply(&p(1))),
        ("P10 = ½(P2 + P3)", p(10) == mid(2, 3)),
        ("P10 = ½(P8 + P9)", p(10) == mid(8, 9)),
        ("P1 = tau(P3)", p(1) == reg.tau.apply(&p(3))),
        ("P2 = tau(P4)", p(2) == reg.tau.apply(&p(4))),
        ("P2 = kappa(P3)", p(2) == reg.kappa.apply(&p(3))),
        ("P6 = tau(P9)", p(6) == reg.tau.apply(&p(9))),
        ("P7 = tau(P8)", p(7) == reg.tau.apply(&p(8))),
        ("P14 = g1(g3(P10))", p(14) == g1g3.apply(&p(10))),
        (
            "g1∘g3 maps {P2, P3} to {P13, P8}",
            ends(&g1g3.apply(&p(2)), &g1g3.apply(&p(3)), 13, 8),
        ),
        (
            "g1∘g2 maps {P2, P3} to {P12, P13}",
            ends(&g1g2.apply(&p(2)), &g1g2.apply(&p(3)), 12, 13),
        ),
        (
            "g2∘g1∘kappa maps {P2, P3} to {P8, P11}",
            ends(&g2g1k.apply(&p(2)), &g2g1k.apply(&p(3)), 8, 11),
        ),
        (
            "g1 maps {P2, P3} to {P2, P8}",
            ends(&reg.g1.apply(&p(2)), &reg.g1.apply(&p(3)), 2, 8),
        ),
        (
            "g2 maps {P2, P3} to {P8, P9}",
            ends(&reg.g2.apply(&p(2)), &reg.g2.apply(&p(3)), 8, 9),
        ),
        (
            "g3 maps {P2, P3} to {P9, P3}",
            ends(&reg.g3.apply(&p(2)), &reg.g3.apply(&p(3)), 9, 3),
        ),
        ("f1 maps P2 to P3", reg.f1.apply(&p(2)) == p(3)),
        ("tau maps (P2, P3) to (P4, P1)", reg.tau.apply(&p(2)) == p(4) && reg.tau.apply(&p(3)) == p(1)),
    ];
    cases
        .into_iter()
        .map(|(name, holds)| IdentityOutcome {
            name: name.to_string(),
            holds,
        })
        .collect()
}

/// Endpoint map of each boundary generator on the edge [P2, P3], as
/// `(image of P2, image of P3)` by point index. Determined by evaluation.
pub fn boundary_orientation(reg: &MapRegistry, sp: &SpecialPoints) -> Vec<(String, usize, usize)> {
    let find = |z: &InternalPoint| (1..=14).find(|&k| sp.get(k) == z).unwrap_or(0);
    [("g1", &reg.g1), ("g2", &reg.g2), ("g3", &reg.g3)]
        .iter()
        .map(|(n, g)| (n.to_string(), find(&g.apply(sp.get(2))), find(&g.apply(sp.get(3)))))
        .collect()
}
