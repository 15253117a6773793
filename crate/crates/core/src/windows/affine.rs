//! Affine similarities z ↦ c·z + d of the internal plane, exact and numeric.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::field::InternalPoint;

/// Exact map `z ↦ mult·z + off`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineSimilarity {
    pub mult: InternalPoint,
    pub off: InternalPoint,
}

impl AffineSimilarity {
    pub fn new(mult: InternalPoint, off: InternalPoint) -> Self {
        Self { mult, off }
    }

    pub fn identity() -> Self {
        Self::new(InternalPoint::one(), InternalPoint::zero())
    }

    pub fn apply(&self, z: &InternalPoint) -> InternalPoint {
        &(&self.mult * z) + &self.off
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineSimilarity) -> AffineSimilarity {
        AffineSimilarity {
            mult: &self.mult * &other.mult,
            off: &(&self.mult * &other.off) + &self.off,
        }
    }

    /// Unique fixed point `off / (1 − mult)`; `None` for translations.
    pub fn fixed_point(&self) -> Option<InternalPoint> {
        let den = &InternalPoint::one() - &self.mult;
        den.inv().ok().map(|d| &self.off * &d)
    }

    pub fn numeric(&self) -> NumMap {
        NumMap {
            m: self.mult.to_complex(),
            d: self.off.to_complex(),
        }
    }
}

/// Composes a chain left to right: `chain(&[a, b, c]) = a ∘ b ∘ c`.
pub fn chain(maps: &[&AffineSimilarity]) -> AffineSimilarity {
    maps.iter()
        .fold(AffineSimilarity::identity(), |acc, m| acc.compose(m))
}

/// Floating-point counterpart of [`AffineSimilarity`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumMap {
    pub m: Complex64,
    pub d: Complex64,
}

impl NumMap {
    #[inline]
    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.m * z + self.d
    }

    #[inline]
    pub fn apply_inverse(&self, z: Complex64) -> Complex64 {
        (z - self.d) / self.m
    }

    pub fn ratio(&self) -> f64 {
        self.m.norm()
    }

    pub fn compose(&self, o: &NumMap) -> NumMap {
        NumMap {
            m: self.m * o.m,
            d: self.m * o.d + self.d,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MapName {
    F0,
    F1,
    F2,
    F3,
    F4,
    G1,
    G2,
    G3,
    Tau,
    Kappa,
}

impl fmt::Display for MapName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MapName::F0 => "f0",
            MapName::F1 => "f1",
            MapName::F2 => "f2",
            MapName::F3 => "f3",
            MapName::F4 => "f4",
            MapName::G1 => "g1",
            MapName::G2 => "g2",
            MapName::G3 => "g3",
            MapName::Tau => "tau",
            MapName::Kappa => "kappa",
        };
        f.write_str(s)
    }
}

/// The named maps of the window and boundary systems.
#[derive(Clone, Debug)]
pub struct MapRegistry {
    pub f0: AffineSimilarity,
    pub f1: AffineSimilarity,
    pub f2: AffineSimilarity,
    pub f3: AffineSimilarity,
    pub f4: AffineSimilarity,
    pub g1: AffineSimilarity,
    pub g2: AffineSimilarity,
    pub g3: AffineSimilarity,
    pub tau: AffineSimilarity,
    pub kappa: AffineSimilarity,
}

impl MapRegistry {
    pub fn new() -> Self {
        let one = InternalPoint::one();
        let zero = InternalPoint::zero();
        let b = InternalPoint::beta();
        let b2 = b.pow(2);
        let b3 = b.pow(3);
        let a = AffineSimilarity::new;
        Self {
            f0: a(b.clone(), b2.clone()),
            f1: a(b.clone(), zero),
            f2: a(b3.clone(), b3),
            f3: a(b.clone(), &b2 - &b),
            f4: a(b2.clone(), b2.clone()),
            g1: a(-&b2, -&b),
            g2: a(&(&b2 + &b2) + &one, &b2 + &one),
            g3: a(-&b2, -&b2),
            tau: a(-&one, -&b),
            kappa: a(-&one, &one - &b),
        }
    }

    pub fn get(&self, name: MapName) -> &AffineSimilarity {
        match name {
            MapName::F0 => &self.f0,
            MapName::F1 => &self.f1,
            MapName::F2 => &self.f2,
            MapName::F3 => &self.f3,
            MapName::F4 => &self.f4,
            MapName::G1 => &self.g1,
            MapName::G2 => &self.g2,
            MapName::G3 => &self.g3,
            MapName::Tau => &self.tau,
            MapName::Kappa => &self.kappa,
        }
    }

    /// Numeric maps of the Ω_AB system, in the order f₁, f₂, f₃.
    pub fn window_ifs(&self) -> [NumMap; 3] {
        [self.f1.numeric(), self.f2.numeric(), self.f3.numeric()]
    }

    /// Numeric maps of the boundary system, in the order g₁, g₂, g₃.
    pub fn boundary_ifs(&self) -> [NumMap; 3] {
        [self.g1.numeric(), self.g2.numeric(), self.g3.numeric()]
    }
}

impl Default for MapRegistry {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityOutcome {
    pub name: String,
    pub holds: bool,
}

/// Exact identities between compositions of the named maps.
pub fn verify_map_identities(reg: &MapRegistry) -> Vec<IdentityOutcome> {
    let r = reg;
    let cases: Vec<(&str, AffineSimilarity, AffineSimilarity)> = vec![
        ("f1∘tau = tau∘f3", chain(&[&r.f1, &r.tau]), chain(&[&r.tau, &r.f3])),
        ("f2∘tau = tau∘f2", chain(&[&r.f2, &r.tau]), chain(&[&r.tau, &r.f2])),
        ("f3∘tau = tau∘f1", chain(&[&r.f3, &r.tau]), chain(&[&r.tau, &r.f1])),
        ("g1∘kappa = kappa∘g3", chain(&[&r.g1, &r.kappa]), chain(&[&r.kappa, &r.g3])),
        ("g2∘kappa = kappa∘g2", chain(&[&r.g2, &r.kappa]), chain(&[&r.kappa, &r.g2])),
        ("g3∘kappa = kappa∘g1", chain(&[&r.g3, &r.kappa]), chain(&[&r.kappa, &r.g1])),
        (
            "f2∘tau∘f1 = f3∘kappa∘g2",
            chain(&[&r.f2, &r.tau, &r.f1]),
            chain(&[&r.f3, &r.kappa, &r.g2]),
        ),
        ("f2 = f3∘kappa∘g3", r.f2.clone(), chain(&[&r.f3, &r.kappa, &r.g3])),
        ("g1 = f3∘tau∘f1", r.g1.clone(), chain(&[&r.f3, &r.tau, &r.f1])),
        ("g3 = f1∘tau∘f1", r.g3.clone(), chain(&[&r.f1, &r.tau, &r.f1])),
        (
            "g2 = f1∘tau∘f1∘tau∘f1",
            r.g2.clone(),
            chain(&[&r.f1, &r.tau, &r.f1, &r.tau, &r.f1]),
        ),
        ("f1∘f4 = f2", chain(&[&r.f1, &r.f4]), r.f2.clone()),
        ("f0∘f1 = f4", chain(&[&r.f0, &r.f1]), r.f4.clone()),
        ("tau∘tau = id", chain(&[&r.tau, &r.tau]), AffineSimilarity::identity()),
        ("kappa∘kappa = id", chain(&[&r.kappa, &r.kappa]), AffineSimilarity::identity()),
    ];
    cases
        .into_iter()
        .map(|(name, lhs, rhs)| IdentityOutcome {
            name: name.to_string(),
            holds: lhs == rhs,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_examples() {
        let r = MapRegistry::new();
        assert_eq!(r.f1.compose(&r.f4), r.f2);
        assert_eq!(r.f0.compose(&r.f1), r.f4);
        assert_eq!(AffineSimilarity::identity().compose(&r.f3), r.f3);
    }

    #[test]
    fn all_identities_hold() {
        let r = MapRegistry::new();
        for o in verify_map_identities(&r) {
            assert!(o.holds, "{}", o.name);
        }
    }

    #[test]
    fn a_false_identity_is_detected() {
        let r = MapRegistry::new();
        assert_ne!(r.f1.compose(&r.tau), r.tau.compose(&r.f1));
    }

    #[test]
    fn numeric_agrees_with_exact() {
        let r = MapRegistry::new();
        let z = InternalPoint::beta().pow(5);
        let exact = r.g2.apply(&z).to_complex();
        let num = r.g2.numeric().apply(z.to_complex());
        assert!((exact - num).norm() < 1e-12);
        let back = r.g2.numeric().apply_inverse(num);
        assert!((back - z.to_complex()).norm() < 1e-12);
    }

    #[test]
    fn contraction_ratios() {
        let r = MapRegistry::new();
        let b = crate::field::consts().beta_abs();
        assert!((r.f2.numeric().ratio() - b.powi(3)).abs() < 1e-14);
        assert!((r.g2.numeric().ratio() - b.powi(3)).abs() < 1e-14);
        assert!((r.g1.numeric().ratio() - b.powi(2)).abs() < 1e-14);
    }
}
