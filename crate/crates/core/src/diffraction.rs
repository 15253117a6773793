//! Dual lattice, Fourier–Bohr amplitudes of Λ(Ω) and its linear deformations.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;
use once_cell::sync::Lazy;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{cap, Error, Result};
use crate::field::{consts, CubicInt, CubicNumber, IM_BETA_SQ};
use crate::io::fmt_sig;
use crate::modelset::{lattice_basis, sites_in_range, tile_length};
use crate::sequences::{substitution_data, Letter};
use crate::windows::{attractor_cloud, CloudMode, WindowLabel};

pub const MAX_INDEX_BOUND: u32 = 10;
pub const MIN_WINDOW_SAMPLES: usize = 10_000;
pub const MIN_SUM_RANGE: f64 = 1_000.0;
pub const MAX_SUM_RANGE: f64 = 1_000_000.0;
/// Cap on peaks × samples for one window-integral table.
pub const MAX_WINDOW_EVALUATIONS: u64 = 5_000_000_000;
pub const BATCHES: usize = 20;

/// Rows `(p, q, r)` with w = (p, q, Imβ·r); all entries in Q(α).
#[derive(Clone, Debug)]
pub struct DualBasis {
    pub w: [[f64; 3]; 3],
    pub exact: [[CubicNumber; 3]; 3],
}

impl DualBasis {
    /// π(w_l) = ρ_l/ℓ.
    pub fn projection(&self, l: Letter) -> &CubicNumber {
        &self.exact[l.index()][0]
    }

    /// Largest |v_i·w_j − δ_ij| against the numeric lattice basis.
    pub fn duality_defect(&self) -> f64 {
        let v = lattice_basis().matrix;
        let mut worst: f64 = 0.0;
        for (i, vi) in v.iter().enumerate() {
            for (j, wj) in self.w.iter().enumerate() {
                let dot: f64 = (0..3).map(|t| vi[t] * wj[t]).sum();
                worst = worst.max((dot - if i == j { 1.0 } else { 0.0 }).abs());
            }
        }
        worst
    }
}

fn det3(m: &[[CubicNumber; 3]; 3]) -> CubicNumber {
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| &(&m[r0][c0] * &m[r1][c1]) - &(&m[r0][c1] * &m[r1][c0]);
    let t0 = &m[0][0] * &minor(1, 2, 1, 2);
    let t1 = &m[0][1] * &minor(1, 2, 0, 2);
    let t2 = &m[0][2] * &minor(1, 2, 0, 1);
    &(&t0 - &t1) + &t2
}

fn inverse3(m: &[[CubicNumber; 3]; 3]) -> Result<[[CubicNumber; 3]; 3]> {
    let det = det3(m);
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let dinv = det.inv()?;
    let cof = |i: usize, j: usize| {
        let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
        let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
        &(&(&m[r0][c0] * &m[r1][c1]) - &(&m[r0][c1] * &m[r1][c0])) * &dinv
    };
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| cof(i, j))))
}

fn compute_dual() -> Result<DualBasis> {
    let basis = lattice_basis();
    let m: [[CubicNumber; 3]; 3] =
        std::array::from_fn(|i| {
            let (x, s) = &basis.vectors[i];
            [x.clone(), s.re.clone(), &s.ims * &*IM_BETA_SQ]
        });
    let inv = inverse3(&m)?;
    // column j of the inverse is the dual vector w_j
    let exact: [[CubicNumber; 3]; 3] = std::array::from_fn(|j| std::array::from_fn(|t| inv[t][j].clone()));
    let im = consts().beta_im;
    let w = exact.clone().map(|r| [r[0].embed_real(), r[1].embed_real(), im * r[2].embed_real()]);
    let d = DualBasis { w, exact };
    let sd = substitution_data();
    let ell_inv = sd.mean_length.inv()?;
    let checks = [
        d.projection(Letter::B) == &(&(&CubicNumber::alpha() - &CubicNumber::one()) * d.projection(Letter::A)),
        &(d.projection(Letter::A) + d.projection(Letter::B)) + d.projection(Letter::C) == ell_inv,
        Letter::ALL.iter().all(|&l| d.projection(l) == &(sd.freq(l) * &ell_inv)),
        d.duality_defect() < 1e-9,
    ];
    if checks.iter().all(|&c| c) {
        Ok(d)
    } else {
        Err(Error::InvalidArgument("dual basis invariants violated".into()))
    }
}

static DUAL: Lazy<DualBasis> = Lazy::new(|| compute_dual().expect("dual basis"));

pub fn dual_basis() -> &'static DualBasis {
    &DUAL
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PeakIndex(pub [i64; 3]);

impl PeakIndex {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Self([a, b, c])
    }

    pub fn neg(self) -> Self {
        Self(self.0.map(|x| -x))
    }

    pub fn shifted(self, by: [i64; 3]) -> Self {
        Self(std::array::from_fn(|i| self.0[i] + by[i]))
    }
}

impl fmt::Display for PeakIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

#[derive(Clone, Debug)]
pub struct PeakPosition {
    pub k: CubicNumber,
    pub k_num: f64,
    pub k_star: Complex64,
    /// Exact `(q, r)` with k⋆ = (q, Imβ·r).
    pub k_star_exact: [CubicNumber; 2],
}

fn combine(n: PeakIndex, col: usize) -> CubicNumber {
    let d = dual_basis();
    (0..3).fold(CubicNumber::zero(), |acc, j| {
        &acc + &(&CubicNumber::from(n.0[j]) * &d.exact[j][col])
    })
}

pub fn peak_position(n: PeakIndex) -> PeakPosition {
    let k = combine(n, 0);
    let q = combine(n, 1);
    let r = combine(n, 2);
    PeakPosition {
        k_num: k.embed_real(),
        k_star: Complex64::new(q.embed_real(), consts().beta_im * r.embed_real()),
        k,
        k_star_exact: [q, r],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Deformation {
    None,
    EqualLengths,
    IntegerLengths,
}

impl fmt::Display for Deformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Deformation::None => "none",
            Deformation::EqualLengths => "equal_lengths",
            Deformation::IntegerLengths => "integer_lengths",
        })
    }
}

impl FromStr for Deformation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Deformation::None),
            "equal" | "equal_lengths" => Ok(Deformation::EqualLengths),
            "integer" | "integer_lengths" => Ok(Deformation::IntegerLengths),
            _ => Err(Error::UnknownDeformation(s.to_string())),
        }
    }
}

/// φ(y) = a·y₁ + b·y₂ with b = Imβ·`b_cof`.
#[derive(Clone, Debug)]
pub struct DeformationParams {
    pub kind: Deformation,
    pub a: CubicNumber,
    pub b_cof: CubicNumber,
    /// Bond-length unit: ℓ for equal lengths, ℓ̃ for integer lengths.
    pub unit: Option<CubicNumber>,
    /// Deformed tile lengths in units of `unit`.
    pub multiples: [i64; 3],
    pub a_num: f64,
    pub b_num: f64,
    /// x + φ(x⋆) on the power basis 1, α, α².
    image: [CubicNumber; 3],
}

impl DeformationParams {
    fn build(kind: Deformation, a: CubicNumber, b_cof: CubicNumber, unit: Option<CubicNumber>, multiples: [i64; 3]) -> Self {
        let b2 = &b_cof * &*IM_BETA_SQ;
        let image = [CubicNumber::one(), CubicNumber::alpha(), CubicNumber::alpha().pow(2)].map(|x| {
            let s = x.internal_decompose();
            &(&x + &(&a * &s.re)) + &(&b2 * &s.ims)
        });
        Self {
            kind,
            a_num: a.embed_real(),
            b_num: consts().beta_im * b_cof.embed_real(),
            a,
            b_cof,
            unit,
            multiples,
            image,
        }
    }

    pub fn b(&self) -> f64 {
        self.b_num
    }

    /// x + φ(x⋆), exact.
    pub fn deform(&self, x: CubicInt) -> CubicNumber {
        (0..3).fold(CubicNumber::zero(), |acc, i| &acc + &(&CubicNumber::from(x.c[i]) * &self.image[i]))
    }

    /// Numeric φ at an internal point.
    pub fn phi(&self, y: Complex64) -> f64 {
        self.a_num * y.re + self.b_num * y.im
    }

    /// Whether v_i + φ(v_i⋆) equals the prescribed multiple of the unit for every tile.
    pub fn linear_system_holds(&self) -> bool {
        let Some(unit) = &self.unit else {
            return self.a.is_zero() && self.b_cof.is_zero();
        };
        Letter::ALL.iter().all(|&l| {
            self.deform(tile_length(l)) == &CubicNumber::from(self.multiples[l.index()]) * unit
        })
    }

    /// Index shift and k-offset of one spectral period; the undeformed set
    /// uses the equal-lengths shift for comparison.
    pub fn period(&self) -> ([i64; 3], CubicNumber) {
        let ell = substitution_data().mean_length;
        match &self.unit {
            Some(u) => (self.multiples, u.inv().expect("unit is non-zero")),
            None => ([1, 1, 1], ell.inv().expect("ℓ is non-zero")),
        }
    }
}

/// Solves v_i + a·(v_i⋆)₁ + b·(v_i⋆)₂ = m_i·u for (a, b-cofactor, u), exactly.
pub fn solve_deformation(multiples: [i64; 3]) -> Result<(CubicNumber, CubicNumber, CubicNumber)> {
    let basis = lattice_basis();
    let m: [[CubicNumber; 3]; 3] = std::array::from_fn(|i| {
        let (_, s) = &basis.vectors[i];
        [s.re.clone(), &s.ims * &*IM_BETA_SQ, -&CubicNumber::from(multiples[i])]
    });
    let inv = inverse3(&m)?;
    let rhs: [CubicNumber; 3] = std::array::from_fn(|i| -&basis.vectors[i].0);
    let x: [CubicNumber; 3] = std::array::from_fn(|r| {
        (0..3).fold(CubicNumber::zero(), |acc, c| &acc + &(&inv[r][c] * &rhs[c]))
    });
    let [a, b, u] = x;
    Ok((a, b, u))
}

/// Closed forms `(a, b-cofactor, unit)` as printed in the source: equal
/// lengths a = ½(−α²+α+5), b = Imβ·(−α²−17α+31)/59, unit ℓ; integer lengths
/// ã = ½(7α²−15α−1), b̃ = Imβ·(−179α²+379α+3)/59, ℓ̃ = ¼(7α²−15α+1).
pub fn stated_params(kind: Deformation) -> Option<[CubicNumber; 3]> {
    match kind {
        Deformation::None => None,
        Deformation::EqualLengths => Some([
            CubicNumber::frac(5, 1, -1, 2),
            CubicNumber::frac(31, -17, -1, 59),
            substitution_data().mean_length,
        ]),
        Deformation::IntegerLengths => Some([
            CubicNumber::frac(-1, -15, 7, 2),
            CubicNumber::frac(3, 379, -179, 59),
            CubicNumber::frac(1, -15, 7, 4),
        ]),
    }
}

/// Parameters from the exact solution of the defining linear system.
pub fn deformation_params(kind: Deformation) -> DeformationParams {
    let multiples = match kind {
        Deformation::None => {
            return DeformationParams::build(kind, CubicNumber::zero(), CubicNumber::zero(), None, [0, 0, 0])
        }
        Deformation::EqualLengths => [1, 1, 1],
        Deformation::IntegerLengths => [6, 4, 2],
    };
    let (a, b, u) = solve_deformation(multiples).expect("deformation system is regular");
    DeformationParams::build(kind, a, b, Some(u), multiples)
}

pub fn deformation_params_named(name: &str) -> Result<DeformationParams> {
    Ok(deformation_params(name.parse()?))
}

/// Exact deformed positions, order preserved.
pub fn deform_sites(sites: &[CubicInt], params: &DeformationParams) -> Vec<CubicNumber> {
    sites.par_iter().map(|&x| params.deform(x)).collect()
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Amplitude {
    pub value: Complex64,
    pub stderr: f64,
}

/// Area-uniform points of Ω.
#[derive(Clone, Debug)]
pub struct WindowSample {
    pub points: Vec<Complex64>,
    pub seed: u64,
}

pub fn window_sample(samples: usize, seed: u64) -> Result<WindowSample> {
    if samples < MIN_WINDOW_SAMPLES {
        return Err(Error::InvalidArgument(format!("at least {MIN_WINDOW_SAMPLES} samples required")));
    }
    let c = attractor_cloud(WindowLabel::Omega, CloudMode::Random { samples, seed })?;
    Ok(WindowSample { points: c.points, seed })
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of the Monte Carlo stream for one peak.
pub fn peak_seed(seed: u64, n: PeakIndex) -> u64 {
    n.0.iter().fold(splitmix(seed), |s, &x| splitmix(s ^ x as u64))
}

fn unit_phase(t: f64) -> Complex64 {
    let (s, c) = (std::f64::consts::TAU * (t - t.round())).sin_cos();
    Complex64::new(c, s)
}

/// (1/|Γ|)∫_Ω e^{−2πi(k·φ(y) − k⋆·y)} dy over a fixed sample.
pub fn fb_window_on(n: PeakIndex, params: &DeformationParams, sample: &WindowSample) -> Amplitude {
    let p = peak_position(n);
    let u = Complex64::new(p.k_star.re - p.k_num * params.a_num, p.k_star.im - p.k_num * params.b_num);
    let pts = &sample.points;
    let per = pts.len() / BATCHES;
    let means: Vec<Complex64> = (0..BATCHES)
        .map(|b| {
            let end = if b + 1 == BATCHES { pts.len() } else { (b + 1) * per };
            let chunk = &pts[b * per..end];
            chunk.iter().map(|y| unit_phase(u.re * y.re + u.im * y.im)).sum::<Complex64>() / chunk.len() as f64
        })
        .collect();
    let total = pts.iter().map(|y| unit_phase(u.re * y.re + u.im * y.im)).sum::<Complex64>() / pts.len() as f64;
    let bm = means.iter().sum::<Complex64>() / BATCHES as f64;
    let var = means.iter().map(|m| (m - bm).norm_sqr()).sum::<f64>() / (BATCHES * (BATCHES - 1)) as f64;
    let scale = 1.0 / substitution_data().mean_length.embed_real();
    Amplitude {
        value: total * scale,
        stderr: var.sqrt() * scale,
    }
}

/// Monte Carlo amplitude with the per-peak stream `peak_seed(seed, n)`.
pub fn fb_window(n: PeakIndex, params: &DeformationParams, samples: usize, seed: u64) -> Result<Amplitude> {
    let s = window_sample(samples, peak_seed(seed, n))?;
    Ok(fb_window_on(n, params, &s))
}

/// Deformed site positions in [−L, L] for the exponential sum.
#[derive(Clone, Debug)]
pub struct SumSites {
    pub positions: Vec<f64>,
    pub range: f64,
}

impl SumSites {
    pub fn new(params: &DeformationParams, l: f64) -> Result<Self> {
        if !(MIN_SUM_RANGE..=MAX_SUM_RANGE).contains(&l) {
            return Err(Error::InvalidArgument(format!(
                "L must lie in [{MIN_SUM_RANGE}, {MAX_SUM_RANGE}]"
            )));
        }
        let positions = sites_in_range(l)?
            .par_iter()
            .map(|s| s.real() + params.phi(s.star()))
            .collect();
        Ok(Self { positions, range: l })
    }

    pub fn amplitude(&self, k: f64) -> Complex64 {
        exp_sum(&self.positions, k, self.range)
    }

    /// Edge contribution of a sharp cutoff.
    pub fn edge_bound(&self) -> f64 {
        1.0 / self.range
    }
}

/// (1/2L) Σ e^{−2πikx}.
pub fn exp_sum(positions: &[f64], k: f64, l: f64) -> Complex64 {
    positions.iter().map(|&x| unit_phase(-(k * x).fract())).sum::<Complex64>() / (2.0 * l)
}

pub fn fb_sum(n: PeakIndex, params: &DeformationParams, l: f64) -> Result<Complex64> {
    Ok(SumSites::new(params, l)?.amplitude(peak_position(n).k_num))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    WindowIntegral,
    ExponentialSum,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::WindowIntegral => "window_integral",
            Method::ExponentialSum => "exponential_sum",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodChoice {
    Window,
    Sum,
    Both,
}

impl FromStr for MethodChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "window" => Ok(MethodChoice::Window),
            "sum" => Ok(MethodChoice::Sum),
            "both" => Ok(MethodChoice::Both),
            _ => Err(Error::InvalidArgument(format!("unknown method '{s}' (expected window, sum or both)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SpectrumResources {
    pub samples: usize,
    pub range: f64,
    pub seed: u64,
}

impl Default for SpectrumResources {
    fn default() -> Self {
        Self {
            samples: 1_000_000,
            range: 50_000.0,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumEntry {
    pub index: PeakIndex,
    pub k: f64,
    pub amplitude: Complex64,
    pub intensity: f64,
    pub method: Method,
    pub stderr: Option<f64>,
}

pub fn peak_indices(bound: u32) -> Vec<PeakIndex> {
    let b = bound as i64;
    let mut out = Vec::with_capacity((2 * bound as usize + 1).pow(3));
    for x in -b..=b {
        for y in -b..=b {
            for z in -b..=b {
                out.push(PeakIndex::new(x, y, z));
            }
        }
    }
    out
}

/// All peaks with |n_i| ≤ `bound`, sorted by k. The window method shares one
/// sample of Ω across peaks.
pub fn spectrum_table(
    bound: u32,
    params: &DeformationParams,
    method: MethodChoice,
    res: SpectrumResources,
) -> Result<Vec<SpectrumEntry>> {
    cap("index bound", bound as u64, MAX_INDEX_BOUND as u64)?;
    let peaks = peak_indices(bound);
    let mut out = Vec::new();
    if method != MethodChoice::Sum {
        cap(
            "window evaluations",
            (peaks.len() as u64).saturating_mul(res.samples as u64),
            MAX_WINDOW_EVALUATIONS,
        )?;
        let sample = window_sample(res.samples, res.seed)?;
        out.par_extend(peaks.par_iter().map(|&n| {
            let a = fb_window_on(n, params, &sample);
            SpectrumEntry {
                index: n,
                k: peak_position(n).k_num,
                amplitude: a.value,
                intensity: a.value.norm_sqr(),
                method: Method::WindowIntegral,
                stderr: Some(a.stderr),
            }
        }));
    }
    if method != MethodChoice::Window {
        let sites = SumSites::new(params, res.range)?;
        out.par_extend(peaks.par_iter().map(|&n| {
            let k = peak_position(n).k_num;
            let c = sites.amplitude(k);
            SpectrumEntry {
                index: n,
                k,
                amplitude: c,
                intensity: c.norm_sqr(),
                method: Method::ExponentialSum,
                stderr: None,
            }
        }));
    }
    out.sort_by(|a, b| {
        a.k.total_cmp(&b.k)
            .then(a.index.cmp(&b.index))
            .then((a.method as u8).cmp(&(b.method as u8)))
    });
    Ok(out)
}

pub const SPECTRUM_HEADER: &str = "nA,nB,nC,k,re_c,im_c,intensity,method,stderr";

pub fn spectrum_csv(entries: &[SpectrumEntry]) -> String {
    let mut s = String::from(SPECTRUM_HEADER);
    s.push('\n');
    for e in entries {
        let [a, b, c] = e.index.0;
        let _ = writeln!(
            s,
            "{a},{b},{c},{},{},{},{},{},{}",
            fmt_sig(e.k),
            fmt_sig(e.amplitude.re),
            fmt_sig(e.amplitude.im),
            fmt_sig(e.intensity),
            e.method,
            e.stderr.map(fmt_sig).unwrap_or_default()
        );
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodPair {
    pub index: PeakIndex,
    pub shifted: PeakIndex,
    pub diff: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodicityReport {
    pub params: Deformation,
    pub shift: [i64; 3],
    pub period: f64,
    /// Physical offset, a-term and b-term of the shift; all zero iff the
    /// deformed spectrum has this period.
    #[serde(skip)]
    pub brackets: [CubicNumber; 3],
    pub brackets_zero: bool,
    pub pairs: Vec<PeriodPair>,
    pub max_diff: f64,
}

/// Compares c_k with c_{k+m·period} by the exponential sum, and evaluates
/// the exact bracket terms of the shift.
pub fn periodicity_check(params: &DeformationParams, peaks: &[PeakIndex], multiple: i64, l: f64) -> Result<PeriodicityReport> {
    let (base, period) = params.period();
    let shift = base.map(|x| x * multiple);
    let s = &CubicNumber::from(multiple) * &period;
    let d = dual_basis();
    let col = |c: usize| {
        (0..3).fold(CubicNumber::zero(), |acc, j| &acc + &(&CubicNumber::from(shift[j]) * &d.exact[j][c]))
    };
    let brackets = [&col(0) - &s, &(&s * &params.a) - &col(1), &(&s * &params.b_cof) - &col(2)];
    let brackets_zero = brackets.iter().all(CubicNumber::is_zero);
    let sites = SumSites::new(params, l)?;
    let pairs: Vec<PeriodPair> = peaks
        .par_iter()
        .map(|&n| {
            let m = n.shifted(shift);
            let c0 = sites.amplitude(peak_position(n).k_num);
            let c1 = sites.amplitude(peak_position(m).k_num);
            PeriodPair {
                index: n,
                shifted: m,
                diff: (c0 - c1).norm(),
            }
        })
        .collect();
    let max_diff = pairs.iter().map(|p| p.diff).fold(0.0, f64::max);
    Ok(PeriodicityReport {
        params: params.kind,
        shift,
        period: s.embed_real(),
        brackets,
        brackets_zero,
        pairs,
        max_diff,
    })
}

/// Ten low-order peaks used by the periodicity checks.
pub fn periodicity_peaks() -> Vec<PeakIndex> {
    [
        [0, 0, 0],
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 1, 0],
        [1, 0, 1],
        [0, 1, 1],
        [-1, 1, 0],
        [1, -1, 1],
        [2, 1, 0],
    ]
    .into_iter()
    .map(PeakIndex)
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modelset::sigma_kol_sites;

    fn ell() -> f64 {
        substitution_data().mean_length.embed_real()
    }

    #[test]
    fn dual_basis_exact() {
        let d = dual_basis();
        assert!(d.duality_defect() < 1e-9);
        let s = (0..3).map(|j| d.exact[j][0].embed_real()).sum::<f64>();
        assert!((s - 0.460720).abs() < 1e-6);
        assert!((d.projection(Letter::A).embed_real() - 0.173270).abs() < 1e-6);
    }

    #[test]
    fn peak_positions() {
        assert!(peak_position(PeakIndex::new(0, 0, 0)).k.is_zero());
        let p = peak_position(PeakIndex::new(1, 1, 1));
        assert_eq!(p.k, substitution_data().mean_length.inv().unwrap());
        assert!((p.k_num - 1.0 / ell()).abs() < 1e-12);
    }

    #[test]
    fn dual_pairs_integrally_with_sites() {
        let sites = sigma_kol_sites(50, 50).unwrap();
        let p = peak_position(PeakIndex::new(2, -1, 3));
        for s in sites {
            let z = s.star();
            let t = p.k_num * s.real() + p.k_star.re * z.re + p.k_star.im * z.im;
            assert!((t - t.round()).abs() < 1e-9, "{t}");
        }
    }

    #[test]
    fn parameter_values() {
        let e = deformation_params(Deformation::EqualLengths);
        assert!(e.linear_system_holds());
        assert_eq!(e.a, &substitution_data().mean_length - &CubicNumber::one());
        assert!((e.a_num - 1.170516).abs() < 1e-6);
        assert!((e.b() - 0.128120).abs() < 1e-6);
        let i = deformation_params(Deformation::IntegerLengths);
        assert!(i.linear_system_holds());
        assert!((i.unit.as_ref().unwrap().embed_real() - 0.492054).abs() < 1e-6);
        assert!((i.a_num + 0.015893).abs() < 1e-6);
        assert!((i.b() + 0.359135).abs() < 1e-6);
        let n = deformation_params(Deformation::None);
        assert!(n.linear_system_holds());
        assert!("bogus".parse::<Deformation>().is_err());
    }

    #[test]
    fn stated_closed_forms() {
        let [a, b, u] = stated_params(Deformation::IntegerLengths).unwrap();
        let p = deformation_params(Deformation::IntegerLengths);
        assert_eq!((p.a, p.b_cof, p.unit.unwrap()), (a, b, u));
        let [a, b, u] = stated_params(Deformation::EqualLengths).unwrap();
        let p = deformation_params(Deformation::EqualLengths);
        assert_eq!(p.a, a);
        assert_eq!(p.unit.unwrap(), u);
        // the printed b-cofactor has the opposite sign
        assert_eq!(p.b_cof, -&b);
    }

    #[test]
    fn equal_lengths_gives_consecutive_multiples() {
        let sites = sigma_kol_sites(200, 0).unwrap();
        let p = deformation_params(Deformation::EqualLengths);
        let ell = substitution_data().mean_length;
        let out = deform_sites(&sites.iter().map(|s| s.pos).collect::<Vec<_>>(), &p);
        for (i, x) in out.iter().enumerate() {
            assert_eq!(*x, &CubicNumber::from(i as i64) * &ell);
        }
    }

    #[test]
    fn integer_lengths_gaps() {
        let sites = sigma_kol_sites(200, 0).unwrap();
        let p = deformation_params(Deformation::IntegerLengths);
        let unit = p.unit.clone().unwrap();
        for w in sites.windows(2) {
            let gap = &p.deform(w[1].pos) - &p.deform(w[0].pos);
            let m = [6, 4, 2][w[0].letter.index()];
            assert_eq!(gap, &CubicNumber::from(m) * &unit);
        }
    }

    #[test]
    fn zero_params_are_identity() {
        let p = deformation_params(Deformation::None);
        let x = CubicInt::new(3, -2, 5);
        assert_eq!(p.deform(x), x.to_cubic());
    }

    #[test]
    fn comb_sanity() {
        let l = ell();
        let pos: Vec<f64> = (-2000..=2000).map(|i| i as f64 * l).filter(|x| x.abs() <= 4000.0).collect();
        let c = exp_sum(&pos, 1.0 / l, 4000.0);
        assert!((c.norm() - 1.0 / l).abs() < 1e-3);
    }

    #[test]
    fn zero_peak_is_density() {
        let n0 = PeakIndex::new(0, 0, 0);
        let p = deformation_params(Deformation::None);
        let w = fb_window(n0, &p, 20_000, 1).unwrap();
        assert!((w.value.re - 1.0 / ell()).abs() < 1e-12);
        assert!(w.value.im.abs() < 1e-12);
        let s = fb_sum(n0, &p, 5_000.0).unwrap();
        assert!((s.re - 1.0 / ell()).abs() < 1e-3);
    }

    #[test]
    fn window_conjugation_and_cross_method() {
        let p = deformation_params(Deformation::None);
        let sample = window_sample(200_000, 5).unwrap();
        let n = PeakIndex::new(1, 1, 1);
        let a = fb_window_on(n, &p, &sample);
        let b = fb_window_on(n.neg(), &p, &sample);
        assert!((a.value - b.value.conj()).norm() <= 2.0 * a.stderr + 1e-12);
        let s = fb_sum(n, &p, 20_000.0).unwrap();
        assert!((a.value - s).norm() < 0.01, "{} vs {}", a.value, s);
    }

    #[test]
    fn periodicity_brackets() {
        for kind in [Deformation::EqualLengths, Deformation::IntegerLengths] {
            let p = deformation_params(kind);
            let r = periodicity_check(&p, &periodicity_peaks()[..3], 1, 5_000.0).unwrap();
            assert!(r.brackets_zero, "{kind}");
        }
        let r = periodicity_check(&deformation_params(Deformation::None), &[PeakIndex::new(0, 0, 0)], 1, 5_000.0).unwrap();
        assert!(!r.brackets_zero);
    }

    #[test]
    fn csv_shape() {
        let p = deformation_params(Deformation::EqualLengths);
        let res = SpectrumResources {
            samples: 10_000,
            range: 2_000.0,
            seed: 1,
        };
        let t = spectrum_table(0, &p, MethodChoice::Both, res).unwrap();
        assert_eq!(t.len(), 2);
        let csv = spectrum_csv(&t);
        assert!(csv.starts_with(SPECTRUM_HEADER));
        assert_eq!(csv.lines().count(), 3);
        assert!(spectrum_table(11, &p, MethodChoice::Sum, res).is_err());
    }
}
