//! Exact arithmetic in the cubic field Q(α), α the real root of x³ − 2x² − 1.
//!
//! Elements are stored over the power basis {1, α, α²}. The same triple read
//! with α replaced by the complex root β (Im β > 0) gives the Galois
//! conjugate, which is the star map of the cut-and-project scheme. Points of
//! the internal plane are written as `R + i·Imβ·S` with `R, S ∈ Q(α)`; since
//! (Im β)² = ¾α² − α − 1 lies in Q(α), that representation is a ring.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

/// Element `c0 + c1·α + c2·α²` of Q(α).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CubicNumber {
    c: [BigRational; 3],
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn qr(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl CubicNumber {
    pub fn new(c0: i64, c1: i64, c2: i64) -> Self {
        Self { c: [q(c0), q(c1), q(c2)] }
    }

    pub fn from_rationals(c0: BigRational, c1: BigRational, c2: BigRational) -> Self {
        Self { c: [c0, c1, c2] }
    }

    /// `(n0 + n1·α + n2·α²) / den`.
    pub fn frac(n0: i64, n1: i64, n2: i64, den: i64) -> Self {
        Self {
            c: [qr(n0, den), qr(n1, den), qr(n2, den)],
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0, 0)
    }

    pub fn alpha() -> Self {
        Self::new(0, 1, 0)
    }

    pub fn rational(r: BigRational) -> Self {
        Self {
            c: [r, BigRational::zero(), BigRational::zero()],
        }
    }

    pub fn coeffs(&self) -> &[BigRational; 3] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// True when all three components are integers (the order Z[α]).
    pub fn is_integral(&self) -> bool {
        self.c.iter().all(|r| r.is_integer())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            c: [&self.c[0] * r, &self.c[1] * r, &self.c[2] * r],
        }
    }

    pub fn half(&self) -> Self {
        self.scale(&qr(1, 2))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// polynomials modulo x³ − 2x² − 1.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus = Poly::new(vec![q(-1), q(0), q(-2), q(1)]);
        let a = Poly::new(self.c.to_vec());
        let (g, s) = Poly::ext_gcd(&a, &modulus);
        // the modulus is irreducible, so the gcd is a nonzero constant
        debug_assert_eq!(g.degree(), Some(0));
        let s = s.scale(&g.coeff(0).recip());
        let s = s.rem(&modulus);
        Ok(Self {
            c: [s.coeff(0), s.coeff(1), s.coeff(2)],
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Real embedding α ↦ α, correctly rounded to f64 up to the bracket width.
    pub fn embed_real(&self) -> f64 {
        let k = consts();
        let t = &k.alpha_mid;
        let v = &self.c[0] + &self.c[1] * t + &self.c[2] * t * t;
        v.to_f64().unwrap_or(f64::NAN)
    }

    /// Rigorous enclosure of the real embedding, evaluated over the rational
    /// bracket of α.
    pub fn embed_real_interval(&self) -> (BigRational, BigRational) {
        let k = consts();
        eval_interval(&self.c, &k.alpha_lo, &k.alpha_hi)
    }

    /// Exact sign of the real embedding.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let k = consts();
        let (mut lo, mut hi) = (k.alpha_lo.clone(), k.alpha_hi.clone());
        loop {
            let (vlo, vhi) = eval_interval(&self.c, &lo, &hi);
            if vlo.is_positive() {
                return 1;
            }
            if vhi.is_negative() {
                return -1;
            }
            // A nonzero element of Q(α) cannot vanish at α, so refining the
            // bracket terminates.
            for _ in 0..64 {
                let mid = (&lo + &hi) / q(2);
                if charpoly(&mid).is_negative() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
        }
    }

    /// Galois conjugate α ↦ β as a complex number.
    pub fn embed_internal(&self) -> Complex64 {
        self.internal_decompose().to_complex()
    }

    /// Writes the β-conjugate as `R + i·Imβ·S` with `R, S ∈ Q(α)`.
    pub fn internal_decompose(&self) -> InternalPoint {
        let [c0, c1, c2] = &self.c;
        let re_beta = &*RE_BETA;
        let re_beta2 = &*RE_BETA2;
        let s_beta2 = &*S_BETA2;
        let re = Self::rational(c0.clone()) + re_beta.scale(c1) + re_beta2.scale(c2);
        let ims = Self::rational(c1.clone()) + s_beta2.scale(c2);
        InternalPoint { re, ims }
    }

    /// Field trace of the element (sum of the three conjugates).
    pub fn trace(&self) -> BigRational {
        // tr(1) = 3, tr(α) = 2, tr(α²) = 4
        &self.c[0] * q(3) + &self.c[1] * q(2) + &self.c[2] * q(4)
    }

    pub fn to_cubic_int(&self) -> Option<CubicInt> {
        if !self.is_integral() {
            return None;
        }
        let comp = |r: &BigRational| r.to_integer().to_i64();
        Some(CubicInt::new(comp(&self.c[0])?, comp(&self.c[1])?, comp(&self.c[2])?))
    }

    /// Components serialized as `num/den` (integers without denominator).
    pub fn component_strings(&self) -> [String; 3] {
        self.c.clone().map(|r| fmt_rational(&r))
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn charpoly(t: &BigRational) -> BigRational {
    t * t * t - q(2) * t * t - q(1)
}

fn eval_interval(
    c: &[BigRational; 3],
    lo: &BigRational,
    hi: &BigRational,
) -> (BigRational, BigRational) {
    // lo > 0 so t and t² are increasing on the bracket
    let lin = |coef: &BigRational, a: &BigRational, b: &BigRational| {
        let (x, y) = (coef * a, coef * b);
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    };
    let (l1, h1) = lin(&c[1], lo, hi);
    let (l2, h2) = lin(&c[2], &(lo * lo), &(hi * hi));
    (&c[0] + l1 + l2, &c[0] + h1 + h2)
}

impl fmt::Debug for CubicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.component_strings();
        write!(f, "({a}, {b}, {c})")
    }
}

impl fmt::Display for CubicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.component_strings();
        write!(f, "{a} + {b}·α + {c}·α²")
    }
}

impl From<i64> for CubicNumber {
    fn from(n: i64) -> Self {
        Self::new(n, 0, 0)
    }
}

impl From<CubicInt> for CubicNumber {
    fn from(x: CubicInt) -> Self {
        Self::new(x.c[0], x.c[1], x.c[2])
    }
}

impl<'a> Add<&'a CubicNumber> for &'a CubicNumber {
    type Output = CubicNumber;
    fn add(self, o: &CubicNumber) -> CubicNumber {
        CubicNumber {
            c: [&self.c[0] + &o.c[0], &self.c[1] + &o.c[1], &self.c[2] + &o.c[2]],
        }
    }
}

impl<'a> Sub<&'a CubicNumber> for &'a CubicNumber {
    type Output = CubicNumber;
    fn sub(self, o: &CubicNumber) -> CubicNumber {
        CubicNumber {
            c: [&self.c[0] - &o.c[0], &self.c[1] - &o.c[1], &self.c[2] - &o.c[2]],
        }
    }
}

impl<'a> Mul<&'a CubicNumber> for &'a CubicNumber {
    type Output = CubicNumber;
    fn mul(self, o: &CubicNumber) -> CubicNumber {
        let (a, b) = (&self.c, &o.c);
        let p0 = &a[0] * &b[0];
        let p1 = &a[0] * &b[1] + &a[1] * &b[0];
        let p2 = &a[0] * &b[2] + &a[1] * &b[1] + &a[2] * &b[0];
        let p3 = &a[1] * &b[2] + &a[2] * &b[1];
        let p4 = &a[2] * &b[2];
        // α³ = 2α² + 1, α⁴ = 4α² + α + 2
        CubicNumber {
            c: [
                &p0 + &p3 + &p4 * q(2),
                &p1 + &p4,
                p2 + &p3 * q(2) + &p4 * q(4),
            ],
        }
    }
}

impl Neg for &CubicNumber {
    type Output = CubicNumber;
    fn neg(self) -> CubicNumber {
        CubicNumber {
            c: [-&self.c[0], -&self.c[1], -&self.c[2]],
        }
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, o: &$t) -> $t { (&self).$m(o) }
        }
        impl<'a> $tr<$t> for &'a $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t { self.$m(&o) }
        }
    )*
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t { -&self }
        }
    };
}

forward_owned!(CubicNumber, Add::add, Sub::sub, Mul::mul);

impl Zero for CubicNumber {
    fn zero() -> Self {
        CubicNumber::zero()
    }
    fn is_zero(&self) -> bool {
        CubicNumber::is_zero(self)
    }
}

impl One for CubicNumber {
    fn one() -> Self {
        CubicNumber::one()
    }
}

/// Element of the order Z[α] with machine-integer components. Used for
/// site positions, where big rationals would be wasteful.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct CubicInt {
    pub c: [i64; 3],
}

impl CubicInt {
    pub const ZERO: CubicInt = CubicInt { c: [0, 0, 0] };

    pub const fn new(c0: i64, c1: i64, c2: i64) -> Self {
        Self { c: [c0, c1, c2] }
    }

    pub fn embed_real(&self) -> f64 {
        let k = consts();
        self.c[0] as f64 + self.c[1] as f64 * k.alpha + self.c[2] as f64 * k.alpha2
    }

    /// Numeric star image c0 + c1·β + c2·β².
    pub fn star(&self) -> Complex64 {
        let k = consts();
        Complex64::new(self.c[0] as f64, 0.0)
            + k.beta() * self.c[1] as f64
            + k.beta2() * self.c[2] as f64
    }

    pub fn to_cubic(self) -> CubicNumber {
        self.into()
    }
}

impl Add for CubicInt {
    type Output = CubicInt;
    fn add(self, o: CubicInt) -> CubicInt {
        CubicInt::new(self.c[0] + o.c[0], self.c[1] + o.c[1], self.c[2] + o.c[2])
    }
}

impl AddAssign for CubicInt {
    fn add_assign(&mut self, o: CubicInt) {
        *self = *self + o;
    }
}

impl Sub for CubicInt {
    type Output = CubicInt;
    fn sub(self, o: CubicInt) -> CubicInt {
        CubicInt::new(self.c[0] - o.c[0], self.c[1] - o.c[1], self.c[2] - o.c[2])
    }
}

impl SubAssign for CubicInt {
    fn sub_assign(&mut self, o: CubicInt) {
        *self = *self - o;
    }
}

impl Neg for CubicInt {
    type Output = CubicInt;
    fn neg(self) -> CubicInt {
        CubicInt::new(-self.c[0], -self.c[1], -self.c[2])
    }
}

impl Mul for CubicInt {
    type Output = CubicInt;
    fn mul(self, o: CubicInt) -> CubicInt {
        let (a, b) = (self.c, o.c);
        let p0 = a[0] * b[0];
        let p1 = a[0] * b[1] + a[1] * b[0];
        let p2 = a[0] * b[2] + a[1] * b[1] + a[2] * b[0];
        let p3 = a[1] * b[2] + a[2] * b[1];
        let p4 = a[2] * b[2];
        CubicInt::new(p0 + p3 + 2 * p4, p1 + p4, p2 + 2 * p3 + 4 * p4)
    }
}

impl Mul<i64> for CubicInt {
    type Output = CubicInt;
    fn mul(self, k: i64) -> CubicInt {
        CubicInt::new(self.c[0] * k, self.c[1] * k, self.c[2] * k)
    }
}

/// Point `re + i·Imβ·ims` of the internal plane.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct InternalPoint {
    pub re: CubicNumber,
    pub ims: CubicNumber,
}

/// (Im β)² = ¾α² − α − 1.
pub static IM_BETA_SQ: Lazy<CubicNumber> = Lazy::new(|| CubicNumber::frac(-4, -4, 3, 4));
/// Re β = 1 − α/2.
static RE_BETA: Lazy<CubicNumber> = Lazy::new(|| CubicNumber::frac(2, -1, 0, 2));
/// Re β² = 2 − α²/2.
static RE_BETA2: Lazy<CubicNumber> = Lazy::new(|| CubicNumber::frac(4, 0, -1, 2));
/// Im β² = Imβ·(2 − α).
static S_BETA2: Lazy<CubicNumber> = Lazy::new(|| CubicNumber::new(2, -1, 0));

impl InternalPoint {
    pub fn new(re: CubicNumber, ims: CubicNumber) -> Self {
        Self { re, ims }
    }

    pub fn zero() -> Self {
        Self::new(CubicNumber::zero(), CubicNumber::zero())
    }

    pub fn one() -> Self {
        Self::new(CubicNumber::one(), CubicNumber::zero())
    }

    pub fn real(re: CubicNumber) -> Self {
        Self::new(re, CubicNumber::zero())
    }

    /// β as an internal point.
    pub fn beta() -> Self {
        CubicNumber::alpha().internal_decompose()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(self.re.scale(r), self.ims.scale(r))
    }

    pub fn half(&self) -> Self {
        Self::new(self.re.half(), self.ims.half())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.ims)
    }

    /// |z|² as an element of Q(α).
    pub fn norm_sq(&self) -> CubicNumber {
        &self.re * &self.re + &(&self.ims * &self.ims) * &*IM_BETA_SQ
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sq().inv()?;
        let c = self.conj();
        Ok(Self::new(&c.re * &n, &c.ims * &n))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.ims.is_zero()
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.embed_real(),
            consts().beta_im * self.ims.embed_real(),
        )
    }
}

impl<'a> Add<&'a InternalPoint> for &'a InternalPoint {
    type Output = InternalPoint;
    fn add(self, o: &InternalPoint) -> InternalPoint {
        InternalPoint::new(&self.re + &o.re, &self.ims + &o.ims)
    }
}

impl<'a> Sub<&'a InternalPoint> for &'a InternalPoint {
    type Output = InternalPoint;
    fn sub(self, o: &InternalPoint) -> InternalPoint {
        InternalPoint::new(&self.re - &o.re, &self.ims - &o.ims)
    }
}

impl<'a> Mul<&'a InternalPoint> for &'a InternalPoint {
    type Output = InternalPoint;
    fn mul(self, o: &InternalPoint) -> InternalPoint {
        let re = &self.re * &o.re - &(&self.ims * &o.ims) * &*IM_BETA_SQ;
        let ims = &self.re * &o.ims + &self.ims * &o.re;
        InternalPoint::new(re, ims)
    }
}

impl Neg for &InternalPoint {
    type Output = InternalPoint;
    fn neg(self) -> InternalPoint {
        InternalPoint::new(-&self.re, -&self.ims)
    }
}

forward_owned!(InternalPoint, Add::add, Sub::sub, Mul::mul);

impl From<CubicNumber> for InternalPoint {
    /// Embeds through the star map (α ↦ β).
    fn from(x: CubicNumber) -> Self {
        x.internal_decompose()
    }
}

/// Numeric constants of the two embeddings.
#[derive(Clone, Debug)]
pub struct EmbeddingConstants {
    pub alpha: f64,
    pub alpha2: f64,
    pub beta_re: f64,
    pub beta_im: f64,
    /// Decimal digits to which the rational bracket of α is guaranteed.
    pub precision: u32,
    pub alpha_lo: BigRational,
    pub alpha_hi: BigRational,
    alpha_mid: BigRational,
}

const BRACKET_BITS: u32 = 192;

impl EmbeddingConstants {
    fn compute() -> Self {
        // x³ − 2x² − 1 changes sign on [2.2, 2.21]; bisect on dyadic rationals
        let mut lo = qr(22, 10);
        let mut hi = qr(221, 100);
        debug_assert!(charpoly(&lo).is_negative() && charpoly(&hi).is_positive());
        for _ in 0..BRACKET_BITS {
            let mid = (&lo + &hi) / q(2);
            if charpoly(&mid).is_negative() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mid = (&lo + &hi) / q(2);
        let alpha = mid.to_f64().unwrap();
        let alpha2 = (&mid * &mid).to_f64().unwrap();
        let beta_re = 1.0 - alpha / 2.0;
        let beta_im = im_beta_sq_f64(&mid).sqrt();
        let width = (&hi - &lo).to_f64().unwrap();
        let precision = (-width.log10()).floor() as u32;
        Self {
            alpha,
            alpha2,
            beta_re,
            beta_im,
            precision,
            alpha_lo: lo,
            alpha_hi: hi,
            alpha_mid: mid,
        }
    }

    pub fn beta(&self) -> Complex64 {
        Complex64::new(self.beta_re, self.beta_im)
    }

    pub fn beta2(&self) -> Complex64 {
        self.beta() * self.beta()
    }

    /// |β| = α^(−1/2).
    pub fn beta_abs(&self) -> f64 {
        self.beta().norm()
    }
}

fn im_beta_sq_f64(a: &BigRational) -> f64 {
    (qr(3, 4) * a * a - a - q(1)).to_f64().unwrap()
}

static CONSTS: Lazy<EmbeddingConstants> = Lazy::new(EmbeddingConstants::compute);

pub fn consts() -> &'static EmbeddingConstants {
    &CONSTS
}

/// Dense polynomial over Q, lowest degree first. Only used for inversion.
#[derive(Clone, Debug)]
struct Poly(Vec<BigRational>);

impl Poly {
    fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn coeff(&self, i: usize) -> BigRational {
        self.0.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    fn scale(&self, r: &BigRational) -> Self {
        Poly::new(self.0.iter().map(|c| c * r).collect())
    }

    fn sub(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    fn mul(&self, o: &Poly) -> Poly {
        if self.0.is_empty() || o.0.is_empty() {
            return Poly(vec![]);
        }
        let mut out = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.0[dd].clone();
        let mut r = self.clone();
        let mut quo = vec![BigRational::zero(); self.0.len().saturating_sub(dd).max(1)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let f = &r.0[rd] / &lead;
            let shift = rd - dd;
            quo[shift] = f.clone();
            let mut t = vec![BigRational::zero(); shift];
            t.extend(d.0.iter().map(|c| c * &f));
            r = r.sub(&Poly::new(t));
        }
        (Poly::new(quo), r)
    }

    fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Returns (g, s) with s·a ≡ g (mod m), g = gcd(a, m).
    fn ext_gcd(a: &Poly, m: &Poly) -> (Poly, Poly) {
        let (mut r0, mut r1) = (m.clone(), a.clone());
        let (mut s0, mut s1) = (Poly(vec![]), Poly::new(vec![q(1)]));
        while r1.degree().is_some() {
            let (quo, rem) = r0.divrem(&r1);
            let s2 = s0.sub(&quo.mul(&s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        (r0, s0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn root_oracle() -> f64 {
        // independent Newton iteration in f64 from the right of the root
        let mut x = 3.0f64;
        for _ in 0..60 {
            x -= (x * x * x - 2.0 * x * x - 1.0) / (3.0 * x * x - 4.0 * x);
        }
        x
    }

    #[test]
    fn alpha_squared_and_cubed() {
        let a = CubicNumber::alpha();
        assert_eq!(&a * &a, CubicNumber::new(0, 0, 1));
        assert_eq!(&a * &CubicNumber::new(0, 0, 1), CubicNumber::new(1, 0, 2));
        assert_eq!(&a * &CubicNumber::new(0, -2, 1), CubicNumber::one());
        assert_eq!(a.pow(4), CubicNumber::new(2, 1, 4));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(CubicNumber::alpha().inv().unwrap(), CubicNumber::new(0, -2, 1));
        assert_eq!(CubicNumber::one().inv().unwrap(), CubicNumber::one());
        let ell = CubicNumber::frac(7, 1, -1, 2);
        let inv = ell.inv().unwrap();
        assert_eq!(&inv * &ell, CubicNumber::one());
        let a = root_oracle();
        let ell_f = (7.0 + a - a * a) / 2.0;
        assert!((inv.embed_real() - 1.0 / ell_f).abs() < 1e-12);
        assert!((inv.embed_real() - 0.460720).abs() < 1e-6);
        assert!(matches!(CubicNumber::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn embeddings_match_oracle() {
        let k = consts();
        let a = root_oracle();
        assert!((k.alpha - a).abs() < 1e-15);
        assert!((k.alpha - 2.2055694304).abs() < 1e-10);
        assert!(k.precision >= 50);
        let la = CubicNumber::new(0, -1, 1);
        assert!((la.embed_real() - 2.658967).abs() < 1e-6);
        let beta = CubicNumber::alpha().embed_internal();
        assert!((beta.re - (-0.102785)).abs() < 1e-6);
        assert!((beta.im - 0.665456).abs() < 1e-6);
        assert!((beta.norm() - 0.6733).abs() < 1e-4);
        let z = CubicNumber::one().embed_internal();
        assert_eq!((z.re, z.im), (1.0, 0.0));
        // footnote closed form for Im β
        let fnote = (-8.0 * a * a + 25.0 * a - 6.0) / (2.0 * 59f64.sqrt());
        assert!((fnote - k.beta_im).abs() < 1e-9);
    }

    #[test]
    fn decomposition_examples() {
        let a = CubicNumber::alpha().internal_decompose();
        assert_eq!(a, InternalPoint::new(CubicNumber::frac(2, -1, 0, 2), CubicNumber::one()));
        let a2 = CubicNumber::new(0, 0, 1).internal_decompose();
        assert_eq!(
            a2,
            InternalPoint::new(CubicNumber::frac(4, 0, -1, 2), CubicNumber::new(2, -1, 0))
        );
        let five = CubicNumber::from(5).internal_decompose();
        assert_eq!(five, InternalPoint::real(CubicNumber::from(5)));
    }

    #[test]
    fn imbeta_reduction_and_unimodularity() {
        let re = CubicNumber::frac(2, -1, 0, 2);
        let lhs = &CubicNumber::alpha().inv().unwrap() - &(&re * &re);
        assert_eq!(lhs, *IM_BETA_SQ);
        let beta = InternalPoint::beta();
        let n = beta.norm_sq();
        assert_eq!(n, CubicNumber::alpha().inv().unwrap());
        let nb = CubicNumber::alpha().embed_internal().norm_sqr();
        assert!((nb - n.embed_real()).abs() < 1e-12);
    }

    #[test]
    fn star_is_multiplicative_on_beta_powers() {
        let b = InternalPoint::beta();
        for k in 0..8u32 {
            let lhs = CubicNumber::alpha().pow(k).internal_decompose();
            assert_eq!(lhs, b.pow(k));
        }
        // β³ = 2β² + 1
        let b3 = b.pow(3);
        let rhs = &(&b.pow(2) + &b.pow(2)) + &InternalPoint::one();
        assert_eq!(b3, rhs);
    }

    #[test]
    fn density_relation_exact() {
        let la = CubicNumber::new(0, -1, 1);
        let ell = CubicNumber::frac(7, 1, -1, 2);
        assert_eq!(&la * &ell, CubicNumber::new(0, -4, 3));
    }

    #[test]
    fn signum_exact() {
        assert_eq!(CubicNumber::alpha().signum(), 1);
        assert_eq!((-CubicNumber::alpha()).signum(), -1);
        // α² − 2α − 0.45353... has tiny but nonzero value
        let x = CubicNumber::new(0, -2, 1) - CubicNumber::frac(45353, 0, 0, 100000);
        assert_eq!(x.signum(), if x.embed_real() > 0.0 { 1 } else { -1 });
        assert_eq!(CubicNumber::zero().signum(), 0);
    }

    #[test]
    fn cubic_int_agrees_with_big() {
        let x = CubicInt::new(3, -7, 2);
        let y = CubicInt::new(-1, 4, 5);
        assert_eq!(CubicNumber::from(x * y), CubicNumber::from(x) * CubicNumber::from(y));
        let s = x.star();
        let e = CubicNumber::from(x).embed_internal();
        assert!((s - e).norm() < 1e-12);
    }

    #[test]
    fn internal_inverse() {
        let b = InternalPoint::beta();
        assert_eq!(&b * &b.inv().unwrap(), InternalPoint::one());
    }
}
