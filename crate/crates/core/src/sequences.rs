//! Kolakoski-(p,q) words and the block substitution behind Kol(3,1).
//!
//! Grouping Kol(3,1) into pairs gives the letters A = 33, B = 31, C = 11 and
//! the primitive substitution A ↦ ABC, B ↦ AB, C ↦ B.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{cap, Error, Result};
use crate::field::CubicNumber;

/// Largest prefix any generator will produce.
pub const MAX_LETTERS: usize = 10_000_000;

fn check_pair(p: u32, q: u32) -> Result<()> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidArgument(format!(
            "letters must be positive (got p = {p}, q = {q})"
        )));
    }
    if p == q {
        return Err(Error::DegenerateAlphabet(p));
    }
    Ok(())
}

fn check_len(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    cap("letters", n as u64, MAX_LETTERS as u64)
}

/// First `n` letters of Kol(p,q) by reading the word as its own run lengths.
pub fn kol_selfread(p: u32, q: u32, n: usize) -> Result<Vec<u32>> {
    check_pair(p, q)?;
    check_len(n)?;
    let mut w: Vec<u32> = Vec::with_capacity(n + p.max(q) as usize);
    let mut read = 0;
    while w.len() < n {
        let symbol = if read % 2 == 0 { p } else { q };
        // the run being written may be the one that describes itself
        let len = w.get(read).copied().unwrap_or(symbol);
        w.extend(std::iter::repeat_n(symbol, len as usize));
        read += 1;
    }
    w.truncate(n);
    Ok(w)
}

/// One step of the alternating substitution: letters on even positions are
/// replaced by runs of `p`, letters on odd positions by runs of `q`.
pub fn alternating_step(p: u32, q: u32, w: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(w.iter().map(|&x| x as usize).sum());
    for (i, &x) in w.iter().enumerate() {
        let symbol = if i % 2 == 0 { p } else { q };
        out.extend(std::iter::repeat_n(symbol, x as usize));
    }
    out
}

/// First `n` letters of Kol(p,q) by iterating the alternating substitutions
/// from the seed `p`.
pub fn kol_alternating(p: u32, q: u32, n: usize) -> Result<Vec<u32>> {
    check_pair(p, q)?;
    check_len(n)?;
    let mut w = vec![p];
    if p == 1 {
        // the seed 1 is a fixed point of σ₀; Kol(1,q) always continues with q
        w.push(q);
    }
    while w.len() < n {
        w = alternating_step(p, q, &w);
    }
    w.truncate(n);
    Ok(w)
}

/// Two-sided Kol(p,q); `left` is stored reading away from the seamline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiWord {
    pub p: u32,
    pub q: u32,
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

impl BiWord {
    /// The left half read away from the seam is Kol(q,p).
    pub fn generate(p: u32, q: u32, n_left: usize, n_right: usize) -> Result<Self> {
        Ok(Self {
            p,
            q,
            left: kol_selfread(q, p, n_left)?,
            right: kol_selfread(p, q, n_right)?,
        })
    }

    /// Letter at signed position `i` (0 is the first letter right of the seam).
    pub fn get(&self, i: i64) -> Option<u32> {
        if i >= 0 {
            self.right.get(i as usize).copied()
        } else {
            self.left.get((-i - 1) as usize).copied()
        }
    }
}

impl fmt::Display for BiWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in self.left.iter().rev() {
            write!(f, "{x}")?;
        }
        f.write_str("|")?;
        for x in &self.right {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Mirror symmetry of the two-sided word. For q = 1 the centre is the first
/// letter left of the seam, for p = 1 the first letter right of it; the check
/// runs over every position pair available on both sides.
pub fn mirror_check(bi: &BiWord) -> bool {
    let (a, b) = if bi.q == 1 {
        (&bi.left[1.min(bi.left.len())..], &bi.right[..])
    } else if bi.p == 1 {
        (&bi.right[1.min(bi.right.len())..], &bi.left[..])
    } else {
        return false;
    };
    a.iter().zip(b).all(|(x, y)| x == y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Letter {
    A,
    B,
    C,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::A, Letter::B, Letter::C];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The pair of Kol(3,1) letters the block stands for.
    pub fn code(self) -> [u32; 2] {
        match self {
            Letter::A => [3, 3],
            Letter::B => [3, 1],
            Letter::C => [1, 1],
        }
    }

    pub fn image(self) -> &'static [Letter] {
        use Letter::*;
        match self {
            A => &[A, B, C],
            B => &[A, B],
            C => &[B],
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::B => 'B',
            Letter::C => 'C',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'A' => Some(Letter::A),
            'B' => Some(Letter::B),
            'C' => Some(Letter::C),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

pub fn substitute(w: &[Letter]) -> Vec<Letter> {
    w.iter().flat_map(|l| l.image().iter().copied()).collect()
}

/// Prefix of length `n` of the one-sided fixed point starting with A.
pub fn block_fixed_point(n: usize) -> Result<Vec<Letter>> {
    check_len(n)?;
    let mut w = vec![Letter::A];
    while w.len() < n {
        w = substitute(&w);
    }
    w.truncate(n);
    Ok(w)
}

/// Two-sided block word after `k` substitution steps from the seed B|A.
/// `left` is in natural (left-to-right) order and ends at the seam.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockBiWord {
    pub left: Vec<Letter>,
    pub right: Vec<Letter>,
}

pub fn block_biinfinite(k: u32) -> Result<BlockBiWord> {
    let (mut left, mut right) = (vec![Letter::B], vec![Letter::A]);
    for _ in 0..k {
        left = substitute(&left);
        right = substitute(&right);
        cap("letters", (left.len() + right.len()) as u64, MAX_LETTERS as u64)?;
    }
    Ok(BlockBiWord { left, right })
}

/// Letters of the block fixed point read away from the seam: `n_right` letters
/// from position 0 onwards and `n_left` letters leftwards from position −1.
pub fn block_sides(n_right: usize, n_left: usize) -> Result<(Vec<Letter>, Vec<Letter>)> {
    cap("letters", (n_right + n_left) as u64, MAX_LETTERS as u64)?;
    let mut right = vec![Letter::A];
    while right.len() < n_right {
        right = substitute(&right);
    }
    right.truncate(n_right);
    // σᵏ⁺¹(B) = σᵏ(A)σᵏ(B), so the suffixes of σᵏ(B) stabilise
    let mut left = vec![Letter::B];
    while left.len() < n_left {
        left = substitute(&left);
    }
    let left_outward: Vec<Letter> = left.iter().rev().take(n_left).copied().collect();
    Ok((right, left_outward))
}

pub fn decode_blocks(w: &[Letter]) -> Vec<u32> {
    w.iter().flat_map(|l| l.code()).collect()
}

/// Run-length encoding as (symbol, run length) pairs.
pub fn run_lengths(w: &[u32]) -> Vec<(u32, usize)> {
    let mut runs: Vec<(u32, usize)> = Vec::new();
    for &x in w {
        match runs.last_mut() {
            Some((s, n)) if *s == x => *n += 1,
            _ => runs.push((x, 1)),
        }
    }
    runs
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RunLengthReport {
    pub ok: bool,
    /// Number of complete runs compared against the word's prefix.
    pub checked: usize,
}

/// Compares the run lengths of `w` with `w` itself. The last run may be cut
/// off by the prefix, so only complete runs take part.
pub fn verify_runlength_fixed(w: &[u32]) -> RunLengthReport {
    let runs = run_lengths(w);
    let complete = runs.len().saturating_sub(1);
    let checked = complete.min(w.len());
    let ok = checked > 0
        && runs[..checked]
            .iter()
            .zip(w)
            .all(|(&(_, len), &x)| len == x as usize);
    RunLengthReport { ok, checked }
}

/// Relative frequency of each distinct symbol, sorted by symbol.
pub fn empirical_frequencies<T: Copy + Ord + std::hash::Hash>(w: &[T]) -> Vec<(T, f64)> {
    let mut counts: HashMap<T, usize> = HashMap::new();
    for &x in w {
        *counts.entry(x).or_default() += 1;
    }
    let mut out: Vec<(T, f64)> = counts
        .into_iter()
        .map(|(k, c)| (k, c as f64 / w.len() as f64))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    PisotUnimodular,
    Pisot,
    NonPisot,
    EvenEven,
    MixedParity,
    Degenerate,
}

/// Classifies Kol(p,q) by parity and, for odd pairs, by the Pisot criteria
/// |p − q| = 2 (unimodular) and 2(p + q) ≥ (p − q)².
pub fn classify(p: u32, q: u32) -> Family {
    if p == q {
        return Family::Degenerate;
    }
    match (p % 2, q % 2) {
        (0, 0) => Family::EvenEven,
        (1, 1) => {
            let d = p.abs_diff(q) as u64;
            if d == 2 {
                Family::PisotUnimodular
            } else if 2 * (p as u64 + q as u64) >= d * d {
                Family::Pisot
            } else {
                Family::NonPisot
            }
        }
        _ => Family::MixedParity,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PatchStatistics {
    pub radius: usize,
    pub distinct: usize,
    /// Largest distance between successive starts of the same factor, over
    /// all factors (an empirical repetitivity radius).
    pub max_gap: usize,
}

pub fn patch_statistics<T: Copy + Eq + std::hash::Hash>(w: &[T], r: usize) -> PatchStatistics {
    let mut last: HashMap<&[T], usize> = HashMap::new();
    let mut max_gap = 0;
    if r > 0 && w.len() >= r {
        for i in 0..=w.len() - r {
            let f = &w[i..i + r];
            if let Some(prev) = last.insert(f, i) {
                max_gap = max_gap.max(i - prev);
            }
        }
    }
    PatchStatistics {
        radius: r,
        distinct: last.len(),
        max_gap,
    }
}

/// Substitution matrix, characteristic polynomial and Perron data.
#[derive(Clone, Debug)]
pub struct SubstitutionData {
    /// `matrix[i][j]` counts letter j in σ(i).
    pub matrix: [[u64; 3]; 3],
    /// Coefficients of det(x·I − M), highest degree first.
    pub char_poly: [i64; 4],
    pub lengths: [CubicNumber; 3],
    pub freqs: [CubicNumber; 3],
    pub mean_length: CubicNumber,
    pub rho3: CubicNumber,
    pub rho1: CubicNumber,
}

pub fn substitution_matrix() -> [[u64; 3]; 3] {
    let mut m = [[0u64; 3]; 3];
    for a in Letter::ALL {
        for b in a.image() {
            m[a.index()][b.index()] += 1;
        }
    }
    m
}

pub fn mat_mul(a: &[[u64; 3]; 3], b: &[[u64; 3]; 3]) -> [[u64; 3]; 3] {
    let mut c = [[0u64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn char_poly(m: &[[u64; 3]; 3]) -> [i64; 4] {
    let m = m.map(|r| r.map(|x| x as i64));
    let tr = m[0][0] + m[1][1] + m[2][2];
    let minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[1][1] * m[2][2]
        - m[1][2] * m[2][1];
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    [1, -tr, minors, -det]
}

pub fn substitution_data() -> SubstitutionData {
    let matrix = substitution_matrix();
    SubstitutionData {
        matrix,
        char_poly: char_poly(&matrix),
        lengths: [
            CubicNumber::new(0, -1, 1),
            CubicNumber::alpha(),
            CubicNumber::one(),
        ],
        freqs: [
            CubicNumber::frac(-1, 3, -1, 2),
            CubicNumber::new(0, -2, 1),
            CubicNumber::frac(3, 1, -1, 2),
        ],
        mean_length: CubicNumber::frac(7, 1, -1, 2),
        rho3: CubicNumber::frac(-1, 1, 0, 2),
        rho1: CubicNumber::frac(3, -1, 0, 2),
    }
}

impl SubstitutionData {
    pub fn length(&self, l: Letter) -> &CubicNumber {
        &self.lengths[l.index()]
    }

    pub fn freq(&self, l: Letter) -> &CubicNumber {
        &self.freqs[l.index()]
    }

    /// M·ℓ = α·ℓ (right eigenvector).
    pub fn lengths_are_eigenvector(&self) -> bool {
        let a = CubicNumber::alpha();
        (0..3).all(|i| {
            let lhs = (0..3).fold(CubicNumber::zero(), |acc, j| {
                acc + &self.lengths[j] * &CubicNumber::from(self.matrix[i][j] as i64)
            });
            lhs == &a * &self.lengths[i]
        })
    }

    /// ρ·M = α·ρ (left eigenvector).
    pub fn freqs_are_eigenvector(&self) -> bool {
        let a = CubicNumber::alpha();
        (0..3).all(|j| {
            let lhs = (0..3).fold(CubicNumber::zero(), |acc, i| {
                acc + &self.freqs[i] * &CubicNumber::from(self.matrix[i][j] as i64)
            });
            lhs == &a * &self.freqs[j]
        })
    }

    pub fn freqs_sum_to_one(&self) -> bool {
        self.freqs.iter().fold(CubicNumber::zero(), |a, b| a + b) == CubicNumber::one()
    }

    pub fn mean_length_consistent(&self) -> bool {
        let s = (0..3).fold(CubicNumber::zero(), |acc, i| {
            acc + &self.freqs[i] * &self.lengths[i]
        });
        s == self.mean_length
    }

    /// Frequency of 3s: each A carries two, each B one.
    pub fn rho3_consistent(&self) -> bool {
        let r = &self.freqs[0] + &self.freqs[1].half();
        r == self.rho3 && &self.rho3 + &self.rho1 == CubicNumber::one()
    }
}

/// ASCII export: one character per symbol, no separators, trailing newline.
pub fn format_bits(w: &[u32]) -> String {
    let mut s: String = w
        .iter()
        .map(|&x| char::from_digit(x, 36).unwrap_or('?'))
        .collect();
    s.push('\n');
    s
}

pub fn format_letters(w: &[Letter]) -> String {
    let mut s: String = w.iter().map(|l| l.as_char()).collect();
    s.push('\n');
    s
}
