use kol31::diffraction::{deformation_params, peak_position, Deformation, PeakIndex};
use kol31::field::{CubicInt, CubicNumber, InternalPoint};
use kol31::modelset::sigma_kol_sites;
use kol31::windows::{oracle, Verdict, WindowLabel};
use num_complex::Complex64;
use once_cell::sync::Lazy;
use proptest::prelude::*;

fn cubic() -> impl Strategy<Value = CubicNumber> {
    (-20i64..20, -20i64..20, -20i64..20, 1i64..12).prop_map(|(a, b, c, d)| CubicNumber::frac(a, b, c, d))
}

fn cubic_int() -> impl Strategy<Value = CubicInt> {
    (-50i64..50, -50i64..50, -50i64..50).prop_map(|(a, b, c)| CubicInt::new(a, b, c))
}

static SITES: Lazy<Vec<CubicInt>> = Lazy::new(|| sigma_kol_sites(2_000, 2_000).unwrap().iter().map(|s| s.pos).collect());

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_ring_axioms(x in cubic(), y in cubic(), z in cubic()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
    }

    #[test]
    fn inverse(x in cubic()) {
        prop_assume!(!x.is_zero());
        prop_assert_eq!(&x * &x.inv().unwrap(), CubicNumber::one());
    }

    #[test]
    fn embedding_is_multiplicative(x in cubic(), y in cubic()) {
        let p = (&x * &y).embed_real();
        let q = x.embed_real() * y.embed_real();
        prop_assert!((p - q).abs() <= 1e-9 * (1.0 + q.abs()));
    }

    #[test]
    fn star_is_a_ring_homomorphism(x in cubic_int(), y in cubic_int()) {
        let (bx, by) = (x.to_cubic(), y.to_cubic());
        let prod: InternalPoint = &bx.internal_decompose() * &by.internal_decompose();
        prop_assert_eq!((&bx * &by).internal_decompose(), prod);
        let sum = &bx.internal_decompose() + &by.internal_decompose();
        prop_assert_eq!((&bx + &by).internal_decompose(), sum);
        let z = (x * y).star() - x.star() * y.star();
        prop_assert!(z.norm() < 1e-6);
    }

    #[test]
    fn membership_monotone_in_depth(re in -1.2f64..1.2, im in -1.4f64..1.0, d in 0u32..30) {
        let m = oracle();
        let z = Complex64::new(re, im);
        let a = m.classify(WindowLabel::Omega, z, d).unwrap();
        let b = m.classify(WindowLabel::Omega, z, d + 10).unwrap();
        if a != Verdict::Undecided {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn deformation_preserves_order(i in 0usize..3_999, gap in 1usize..200) {
        let j = (i + gap).min(SITES.len() - 1);
        prop_assume!(i < j);
        for kind in [Deformation::EqualLengths, Deformation::IntegerLengths] {
            let p = deformation_params(kind);
            prop_assert!((&p.deform(SITES[j]) - &p.deform(SITES[i])).signum() > 0);
        }
    }

    #[test]
    fn dual_vectors_pair_integrally(a in -5i64..5, b in -5i64..5, c in -5i64..5, i in 0usize..4_000) {
        let p = peak_position(PeakIndex::new(a, b, c));
        let x = SITES[i];
        let z = x.star();
        let t = p.k_num * x.embed_real() + p.k_star.re * z.re + p.k_star.im * z.im;
        prop_assert!((t - t.round()).abs() < 1e-8);
    }
}
