//! The cut-and-project scheme and the point set ΣKol(3,1) ⊂ Z[α].

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{cap, Error, Result};
use crate::field::{consts, CubicInt, CubicNumber, InternalPoint};
use crate::sequences::{block_sides, Letter, MAX_LETTERS};
use crate::windows::{boundary_cloud, oracle, BoundaryScope, PointIndex, Verdict, WindowLabel};

pub const MAX_SITES: usize = MAX_LETTERS;
pub const MAX_PROBE_SITES: usize = 100_000;
pub const MAX_CUT_PROJECT_RANGE: f64 = 10_000.0;
pub const DEFAULT_DEPTH: u32 = 30;

/// Exact tile length of a letter: ℓ_A = α² − α, ℓ_B = α, ℓ_C = 1.
pub fn tile_length(l: Letter) -> CubicInt {
    match l {
        Letter::A => CubicInt::new(0, -1, 1),
        Letter::B => CubicInt::new(0, 1, 0),
        Letter::C => CubicInt::new(1, 0, 0),
    }
}

#[derive(Clone, Debug)]
pub struct LatticeBasis {
    /// (physical, internal) parts of v_A, v_B, v_C.
    pub vectors: [(CubicNumber, InternalPoint); 3],
    /// Rows `(physical, Re internal, Im internal)` of v_A, v_B, v_C.
    pub matrix: [[f64; 3]; 3],
}

impl LatticeBasis {
    pub fn determinant(&self) -> f64 {
        let m = &self.matrix;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// The factor 3α² − 4α of |Γ| = |Im β|·(3α² − 4α).
    pub fn covolume_factor() -> CubicNumber {
        CubicNumber::new(0, -4, 3)
    }

    pub fn covolume(&self) -> f64 {
        consts().beta_im.abs() * Self::covolume_factor().embed_real()
    }
}

pub fn lattice_basis() -> LatticeBasis {
    let lens = [Letter::A, Letter::B, Letter::C].map(|l| tile_length(l).to_cubic());
    let vectors = lens.map(|x| {
        let s = star(&x);
        (x, s)
    });
    let matrix = vectors.clone().map(|(x, s)| {
        let z = s.to_complex();
        [x.embed_real(), z.re, z.im]
    });
    LatticeBasis { vectors, matrix }
}

/// Galois conjugate α ↦ β.
pub fn star(x: &CubicNumber) -> InternalPoint {
    x.internal_decompose()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SitePoint {
    #[serde(skip)]
    pub pos: CubicInt,
    pub letter: Letter,
}

impl SitePoint {
    pub fn real(&self) -> f64 {
        self.pos.embed_real()
    }

    pub fn star(&self) -> Complex64 {
        self.pos.star()
    }
}

/// Left endpoints of the tiling from the seed B|A, ordered by position:
/// `n_left` sites left of 0, then `n_right` sites from 0 onwards.
pub fn sigma_kol_sites(n_right: usize, n_left: usize) -> Result<Vec<SitePoint>> {
    cap("sites", (n_right + n_left) as u64, MAX_SITES as u64)?;
    let (right, left_out) = block_sides(n_right, n_left)?;
    let mut left = Vec::with_capacity(n_left);
    let mut x = CubicInt::ZERO;
    for &l in &left_out {
        x -= tile_length(l);
        left.push(SitePoint { pos: x, letter: l });
    }
    left.reverse();
    let mut x = CubicInt::ZERO;
    for &l in &right {
        left.push(SitePoint { pos: x, letter: l });
        x += tile_length(l);
    }
    Ok(left)
}

/// Sites with real position in `[−l, l]`.
pub fn sites_in_range(l: f64) -> Result<Vec<SitePoint>> {
    // every tile has length at least 1
    let n = l.ceil() as usize + 2;
    let sites = sigma_kol_sites(n, n)?;
    Ok(sites
        .into_iter()
        .filter(|s| {
            let x = s.real();
            (-l..=l).contains(&x)
        })
        .collect())
}

fn window_of(l: Letter) -> WindowLabel {
    match l {
        Letter::A => WindowLabel::A,
        Letter::B => WindowLabel::B,
        Letter::C => WindowLabel::C,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SubsetReport {
    pub sites: usize,
    pub depth: u32,
    pub inside: usize,
    pub undecided: usize,
    pub outside: usize,
    pub pass: bool,
}

/// Sites split evenly around the seam.
fn probe_sites(n: usize) -> Result<Vec<SitePoint>> {
    cap("probe sites", n as u64, MAX_PROBE_SITES as u64)?;
    sigma_kol_sites(n - n / 2, n / 2)
}

/// Star images of the sites must lie in the window of their letter.
pub fn verify_window_subset(n: usize, depth: u32) -> Result<SubsetReport> {
    let sites = probe_sites(n)?;
    let m = oracle();
    let verdicts: Vec<Verdict> = sites
        .par_iter()
        .map(|s| m.classify(window_of(s.letter), s.star(), depth))
        .collect::<Result<_>>()?;
    let count = |v: Verdict| verdicts.iter().filter(|&&x| x == v).count();
    let (inside, undecided, outside) = (count(Verdict::Inside), count(Verdict::Undecided), count(Verdict::Outside));
    Ok(SubsetReport {
        sites: n,
        depth,
        inside,
        undecided,
        outside,
        pass: outside == 0 && inside as f64 >= 0.99 * n as f64,
    })
}

/// Sites per unit length in `[−l, l]`.
pub fn density_empirical(l: f64) -> Result<f64> {
    if l < 100.0 {
        return Err(Error::InvalidArgument("density needs L ≥ 100".into()));
    }
    Ok(sites_in_range(l)?.len() as f64 / (2.0 * l))
}

/// Per-letter site densities in `[−l, l]`, in the order A, B, C.
pub fn letter_densities(l: f64) -> Result<[f64; 3]> {
    let sites = sites_in_range(l)?;
    let mut n = [0usize; 3];
    for s in &sites {
        n[s.letter.index()] += 1;
    }
    Ok(n.map(|k| k as f64 / (2.0 * l)))
}

/// Distinct gaps between consecutive sites.
pub fn bond_lengths(sites: &[SitePoint]) -> BTreeSet<CubicInt> {
    sites.windows(2).map(|w| w[1].pos - w[0].pos).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct DifferenceGap {
    pub range: f64,
    pub distinct: usize,
    pub smallest: f64,
    pub min_gap: f64,
}

/// Distinct differences of sites in `[−l, l]` lying in `(0, r]`, and the
/// smallest spacing between them.
pub fn difference_set_gap(l: f64, r: f64) -> Result<DifferenceGap> {
    let sites = sites_in_range(l)?;
    let mut diffs: HashSet<CubicInt> = HashSet::new();
    for i in 0..sites.len() {
        for j in i + 1..sites.len() {
            let d = sites[j].pos - sites[i].pos;
            if d.embed_real() > r {
                break;
            }
            diffs.insert(d);
        }
    }
    let mut v: Vec<f64> = diffs.iter().map(|d| d.embed_real()).collect();
    v.sort_by(f64::total_cmp);
    let min_gap = v.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    Ok(DifferenceGap {
        range: r,
        distinct: v.len(),
        smallest: v.first().copied().unwrap_or(f64::NAN),
        min_gap,
    })
}

/// Reference minimum distance for `genericity_probe(10_000, 18)`.
pub const GENERICITY_BASELINE: f64 = 2.94e-3;

#[derive(Clone, Debug, Serialize)]
pub struct GenericityReport {
    pub sites: usize,
    pub depth: u32,
    pub min_distance: f64,
    /// Counts of distances in decades `[10^-(k+1), 10^-k)`, k = 0..8, with
    /// distances ≥ 1 in the first bin.
    pub histogram: Vec<usize>,
    pub baseline: Option<f64>,
    pub pass: bool,
}

/// Boundary cloud of all three letter windows, with a nearest-point index.
pub struct BoundaryProbe {
    points: Vec<Complex64>,
}

impl BoundaryProbe {
    pub fn new(depth: u32) -> Result<Self> {
        Ok(Self {
            points: boundary_cloud(depth, BoundaryScope::Pieces)?.points,
        })
    }

    pub fn index(&self) -> PointIndex<'_> {
        PointIndex::auto(&self.points)
    }
}

pub fn genericity_probe(n: usize, depth: u32) -> Result<GenericityReport> {
    let sites = probe_sites(n)?;
    let probe = BoundaryProbe::new(depth)?;
    let idx = probe.index();
    let d: Vec<f64> = sites.par_iter().map(|s| idx.nearest(s.star())).collect();
    let min_distance = d.iter().copied().fold(f64::INFINITY, f64::min);
    let mut histogram = vec![0usize; 9];
    for &x in &d {
        let k = if x >= 1.0 { 0 } else { ((-x.log10()).floor() as usize).min(8) };
        histogram[k] += 1;
    }
    let baseline = (n == 10_000 && depth == 18).then_some(GENERICITY_BASELINE);
    let pass = min_distance > 0.0 && baseline.is_none_or(|b| min_distance >= b);
    Ok(GenericityReport {
        sites: n,
        depth,
        min_distance,
        histogram,
        baseline,
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub range: f64,
    pub checked: usize,
    pub unmatched: usize,
    pub pass: bool,
}

/// Exact check that x ↦ −α − x maps the A/B sites in range onto themselves.
pub fn inversion_symmetry_check(l: f64) -> Result<SymmetryReport> {
    let sites = sites_in_range(l + 3.0)?;
    let refl = |x: CubicInt| CubicInt::new(0, -1, 0) - x;
    let keep = |x: CubicInt| x.embed_real() >= -l && refl(x).embed_real() >= -l;
    let set: HashSet<CubicInt> = sites
        .iter()
        .filter(|s| s.letter != Letter::C && keep(s.pos))
        .map(|s| s.pos)
        .collect();
    let unmatched = set.iter().filter(|&&x| !set.contains(&refl(x))).count();
    Ok(SymmetryReport {
        range: l,
        checked: set.len(),
        unmatched,
        pass: unmatched == 0 && !set.is_empty(),
    })
}

/// Generators 1 − α and α² − 2α of the coset group.
pub fn coset_generators() -> [CubicInt; 2] {
    [CubicInt::new(1, -1, 0), CubicInt::new(0, -2, 1)]
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetLocation {
    pub m: i64,
    pub n: i64,
    #[serde(skip)]
    pub site: CubicInt,
    pub hits: usize,
    pub undecided: usize,
    pub radius: i64,
}

/// Finds `(m, n)` with `x − m(1 − α) − n(α² − 2α)` a site, scanning all
/// shells up to `radius` and counting every hit.
pub fn coset_locate(x: CubicInt, radius: i64, depth: u32) -> Result<CosetLocation> {
    let [g1, g2] = coset_generators();
    let m = oracle();
    let mut found: Option<(i64, i64, CubicInt)> = None;
    let mut hits = 0;
    let mut undecided = 0;
    for r in 0..=radius {
        for a in -r..=r {
            for b in -r..=r {
                if a.abs().max(b.abs()) != r {
                    continue;
                }
                let y = x - g1 * a - g2 * b;
                match m.classify(WindowLabel::Omega, y.star(), depth)? {
                    Verdict::Inside => {
                        hits += 1;
                        found.get_or_insert((a, b, y));
                    }
                    Verdict::Undecided => undecided += 1,
                    Verdict::Outside => {}
                }
            }
        }
    }
    let (m, n, site) = found.ok_or(Error::CosetNotFound { radius })?;
    Ok(CosetLocation {
        m,
        n,
        site,
        hits,
        undecided,
        radius,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WindowSpec {
    pub label: WindowLabel,
    #[serde(skip)]
    pub shift: Complex64,
}

impl WindowSpec {
    pub fn new(label: WindowLabel) -> Self {
        Self {
            label,
            shift: Complex64::new(0.0, 0.0),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CutProject {
    pub sites: Vec<SitePoint>,
    /// Candidates whose window membership stayed undecided.
    pub undecided: Vec<CubicInt>,
}

/// All x ∈ Z[α] with real embedding in `[−l, l]` and star image in the
/// (shifted) window; each site is labelled by the letter window holding it.
pub fn cut_and_project(spec: WindowSpec, l: f64, depth: u32) -> Result<CutProject> {
    if !(0.0..=MAX_CUT_PROJECT_RANGE).contains(&l) {
        return Err(Error::ResourceLimit {
            what: "cut-and-project range",
            value: l.max(0.0) as u64,
            cap: MAX_CUT_PROJECT_RANGE as u64,
        });
    }
    let orc = oracle();
    let hull = orc.outer_hull(spec.label);
    let (lo, hi) = hull.bbox();
    let (lo, hi) = (lo + spec.shift, hi + spec.shift);
    let k = consts();
    let (a, a2) = (k.alpha, k.alpha2);
    let (b, b2) = (k.beta(), k.beta2());

    // m₂ bound from the inverse of (m₀, m₁, m₂) ↦ (x, Re x⋆, Im x⋆)
    let mat = [[1.0, a, a2], [1.0, b.re, b2.re], [0.0, b.im, b2.im]];
    let inv = invert3(&mat).ok_or(Error::SingularMatrix)?;
    let center = [0.0, (lo.re + hi.re) / 2.0, (lo.im + hi.im) / 2.0];
    let half = [l, (hi.re - lo.re) / 2.0, (hi.im - lo.im) / 2.0];
    let row = inv[2];
    let c2: f64 = (0..3).map(|j| row[j] * center[j]).sum();
    let w2: f64 = (0..3).map(|j| row[j].abs() * half[j]).sum::<f64>() * 1.1 + 1.0;
    let m2_range = (c2 - w2).floor() as i64..=(c2 + w2).ceil() as i64;

    let candidates: Vec<CubicInt> = m2_range
        .into_par_iter()
        .flat_map_iter(|m2| {
            let v_lo = (lo.im - m2 as f64 * b2.im) / b.im;
            let v_hi = (hi.im - m2 as f64 * b2.im) / b.im;
            let (m1_lo, m1_hi) = (v_lo.min(v_hi).floor() as i64 - 1, v_lo.max(v_hi).ceil() as i64 + 1);
            (m1_lo..=m1_hi).flat_map(move |m1| {
                let base_u = m1 as f64 * b.re + m2 as f64 * b2.re;
                let base_x = m1 as f64 * a + m2 as f64 * a2;
                let m0_lo = ((lo.re - base_u).max(-l - base_x)).floor() as i64 - 1;
                let m0_hi = ((hi.re - base_u).min(l - base_x)).ceil() as i64 + 1;
                (m0_lo..=m0_hi).map(move |m0| CubicInt::new(m0, m1, m2))
            })
        })
        .filter(|x| {
            let r = x.embed_real();
            (-l..=l).contains(&r)
        })
        .collect();

    let classified: Vec<(CubicInt, Option<Letter>, bool)> = candidates
        .par_iter()
        .map(|&x| {
            let z = x.star() - spec.shift;
            match orc.classify(spec.label, z, depth).expect("depth within cap") {
                Verdict::Outside => (x, None, false),
                Verdict::Undecided => (x, None, true),
                Verdict::Inside => {
                    let letter = Letter::ALL.into_iter().find(|&lt| {
                        orc.classify(window_of(lt), z, depth).expect("depth within cap") == Verdict::Inside
                    });
                    match letter {
                        Some(lt) => (x, Some(lt), false),
                        None => (x, None, true),
                    }
                }
            }
        })
        .collect();

    let mut sites: Vec<SitePoint> = classified
        .iter()
        .filter_map(|&(pos, l, _)| l.map(|letter| SitePoint { pos, letter }))
        .collect();
    sites.sort_by(|p, q| p.real().total_cmp(&q.real()));
    let undecided = classified.iter().filter(|c| c.2).map(|c| c.0).collect();
    Ok(CutProject { sites, undecided })
}

fn invert3(m: &[[f64; 3]; 3]) -> Option<[[f64; 3]; 3]> {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if det.abs() < 1e-300 {
        return None;
    }
    let mut inv = [[0.0; 3]; 3];
    for (i, row) in inv.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            *cell = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) / det;
        }
    }
    Some(inv)
}

/// Site export: `index,letter,pos_exact_c0,c1,c2,pos_real`.
pub fn sites_csv(sites: &[SitePoint], first_index: i64) -> String {
    let mut s = String::from("index,letter,pos_exact_c0,c1,c2,pos_real\n");
    for (i, p) in sites.iter().enumerate() {
        let [c0, c1, c2] = p.pos.c;
        let _ = writeln!(
            s,
            "{},{},{}/1,{}/1,{}/1,{}",
            first_index + i as i64,
            p.letter,
            c0,
            c1,
            c2,
            crate::io::fmt_sig(p.real())
        );
    }
    s
}
