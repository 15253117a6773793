//! Verification suites behind `kol31 verify`.

use std::collections::HashMap;
use std::time::Instant;

use kol31::diffraction::{
    deform_sites, deformation_params, periodicity_check, periodicity_peaks, Deformation,
};
use kol31::field::CubicNumber;
use kol31::modelset::{
    density_empirical, inversion_symmetry_check, lattice_basis, sigma_kol_sites, verify_window_subset, LatticeBasis,
    MAX_PROBE_SITES,
};
use kol31::report::{Check, Report};
use kol31::sequences::{
    block_fixed_point, decode_blocks, empirical_frequencies, kol_alternating, kol_selfread, mirror_check,
    substitution_data, verify_runlength_fixed, BiWord, Letter,
};
use kol31::windows::{
    rhombus_verify, tiling_check, verify_map_identities, verify_point_identities, MapRegistry, SpecialPoints,
};
use serde_json::json;

use crate::{check_cap, usage, write_or_print, Failure, Suite, VerifyArgs, MAX_DEPTH, MAX_N, MAX_SAMPLES};

const ALL: [Suite; 10] = [
    Suite::Identities,
    Suite::Points,
    Suite::Rhombus,
    Suite::Sequence,
    Suite::Density,
    Suite::Tiling,
    Suite::Subset,
    Suite::Symmetry,
    Suite::Deformation,
    Suite::Periodicity,
];

fn suite_name(s: Suite) -> String {
    format!("{s:?}").to_lowercase()
}

fn identities(r: &mut Report) {
    for o in verify_map_identities(&MapRegistry::new()) {
        r.push(Check::new(o.name, o.holds).param("kind", "map"));
    }
}

fn points(r: &mut Report) {
    for o in verify_point_identities(&MapRegistry::new(), &SpecialPoints::new()) {
        r.push(Check::new(o.name, o.holds).param("kind", "point"));
    }
}

fn rhombus(r: &mut Report) -> Result<(), Failure> {
    let rep = rhombus_verify(&MapRegistry::new(), &SpecialPoints::new())?;
    for e in rep.containment.iter().chain(&rep.disjoint) {
        r.push(Check::new(&e.condition, e.margin > 1e-6).margin(e.margin));
    }
    for e in &rep.neighbours {
        r.push(Check::new(format!("{} (neighbours intersect)", e.condition), e.margin < 0.0).distance(-e.margin));
    }
    Ok(())
}

fn sequence(r: &mut Report, a: &VerifyArgs) -> Result<(), Failure> {
    let n = a.n as usize;
    let w = kol_selfread(3, 1, n)?;
    r.push(Check::new("self-read = alternating substitution", w == kol_alternating(3, 1, n)?).param("n", n));
    let mut blocks = decode_blocks(&block_fixed_point(n.div_ceil(2))?);
    blocks.truncate(n);
    r.push(Check::new("self-read = decoded block fixed point", w == blocks).param("n", n));
    let rl = verify_runlength_fixed(&w);
    r.push(Check::new("run-length fixed point", rl.ok).param("runs", rl.checked));
    let side = n.min(10_000);
    let bi = BiWord::generate(3, 1, side, side)?;
    r.push(Check::new("two-sided mirror symmetry", mirror_check(&bi)).param("per_side", side));
    let sd = substitution_data();
    let f3 = w.iter().filter(|&&x| x == 3).count() as f64 / n as f64;
    let d3 = (f3 - sd.rho3.embed_real()).abs();
    r.push(Check::new("frequency of 3", d3 <= 1e-2).distance(d3).param("empirical", f3));
    let bw = block_fixed_point(n.div_ceil(2))?;
    let freqs: HashMap<Letter, f64> = empirical_frequencies(&bw).into_iter().collect();
    for l in Letter::ALL {
        let f = freqs.get(&l).copied().unwrap_or(0.0);
        let d = (f - sd.freq(l).embed_real()).abs();
        r.push(Check::new(format!("block frequency {l}"), d <= 1e-2).distance(d).param("empirical", f));
    }
    Ok(())
}

fn density(r: &mut Report, a: &VerifyArgs) -> Result<(), Failure> {
    let sd = substitution_data();
    r.push(Check::new("lengths are a right eigenvector", sd.lengths_are_eigenvector()));
    r.push(Check::new("frequencies are a left eigenvector", sd.freqs_are_eigenvector()));
    r.push(Check::new("frequencies sum to 1", sd.freqs_sum_to_one()));
    r.push(Check::new("mean length = sum of frequency × length", sd.mean_length_consistent()));
    let lhs = &(&CubicNumber::alpha().pow(2) - &CubicNumber::alpha()) * &sd.mean_length;
    r.push(Check::new("(α² − α)·ℓ = 3α² − 4α", lhs == LatticeBasis::covolume_factor()));
    let b = lattice_basis();
    let dd = (b.determinant().abs() - b.covolume()).abs();
    r.push(Check::new("|det Γ| = |Im β|(3α² − 4α)", dd < 1e-9).distance(dd));
    let d = density_empirical(a.l)?;
    let inv = 1.0 / sd.mean_length.embed_real();
    r.push(
        Check::new("empirical density = 1/ℓ", (d - inv).abs() <= 1e-3)
            .distance((d - inv).abs())
            .param("L", a.l)
            .param("density", d),
    );
    Ok(())
}

fn deformation(r: &mut Report, a: &VerifyArgs) -> Result<(), Failure> {
    let n = (a.n as usize).min(MAX_PROBE_SITES);
    let sites = sigma_kol_sites(n, 0)?;
    let pos: Vec<_> = sites.iter().map(|s| s.pos).collect();
    for kind in [Deformation::EqualLengths, Deformation::IntegerLengths] {
        let p = deformation_params(kind);
        let unit = p.unit.clone().expect("deformed variants have a unit");
        r.push(
            Check::new(format!("{kind}: defining linear system"), p.linear_system_holds())
                .param("a", p.a_num)
                .param("b", p.b())
                .param("unit", unit.embed_real()),
        );
        let out = deform_sites(&pos, &p);
        let gaps = out
            .windows(2)
            .zip(&sites)
            .all(|(w, s)| &w[1] - &w[0] == &CubicNumber::from(p.multiples[s.letter.index()]) * &unit);
        r.push(Check::new(format!("{kind}: bond lengths {:?} × unit", p.multiples), gaps).param("sites", n));
        let monotone = out.windows(2).all(|w| (&w[1] - &w[0]).signum() > 0);
        r.push(Check::new(format!("{kind}: order preserved"), monotone).param("sites", n));
    }
    Ok(())
}

fn periodicity(r: &mut Report, a: &VerifyArgs) -> Result<(), Failure> {
    let peaks = periodicity_peaks();
    let l = a.l.min(50_000.0);
    for kind in [Deformation::EqualLengths, Deformation::IntegerLengths, Deformation::None] {
        let rep = periodicity_check(&deformation_params(kind), &peaks, 1, l)?;
        if kind == Deformation::None {
            r.push(
                Check::new("none: spectrum not periodic", rep.max_diff > 0.01)
                    .distance(rep.max_diff)
                    .param("L", l),
            );
            continue;
        }
        for (name, v) in ["physical", "a-term", "b-term"].iter().zip(&rep.brackets) {
            r.push(Check::new(format!("{kind}: bracket {name} = 0"), v.is_zero()).param("exact", v.to_string()));
        }
        r.push(
            Check::new(format!("{kind}: |c_k − c_k'| ≤ 0.01"), rep.max_diff <= 0.01)
                .distance(rep.max_diff)
                .param("shift", rep.shift)
                .param("period", rep.period)
                .param("L", l),
        );
    }
    Ok(())
}

fn run(s: Suite, a: &VerifyArgs) -> Result<Report, Failure> {
    let mut r = Report::new(suite_name(s));
    match s {
        Suite::Identities => {
            identities(&mut r);
            points(&mut r);
        }
        Suite::Points => points(&mut r),
        Suite::Rhombus => rhombus(&mut r)?,
        Suite::Sequence => sequence(&mut r, a)?,
        Suite::Density => density(&mut r, a)?,
        Suite::Tiling => {
            let t = tiling_check(a.samples as usize, a.seed)?;
            r.push(
                Check::new("translates cover each sample exactly once", t.pass)
                    .param("covered_once", t.covered_once)
                    .param("covered_other", t.covered_other)
                    .param("decided_fraction", t.decided_fraction)
                    .param("samples", t.samples)
                    .seed(t.seed),
            );
        }
        Suite::Subset => {
            check_cap("probe sites", a.n, MAX_PROBE_SITES as u64)?;
            let t = verify_window_subset(a.n as usize, a.depth)?;
            r.push(
                Check::new("star images lie in their letter windows", t.pass)
                    .param("sites", t.sites)
                    .param("depth", t.depth)
                    .param("inside", t.inside)
                    .param("undecided", t.undecided)
                    .param("outside", t.outside),
            );
        }
        Suite::Symmetry => {
            let t = inversion_symmetry_check(a.l)?;
            r.push(
                Check::new("x ↦ −α − x maps the A/B sites onto themselves", t.pass)
                    .param("L", t.range)
                    .param("checked", t.checked)
                    .param("unmatched", t.unmatched),
            );
        }
        Suite::Deformation => deformation(&mut r, a)?,
        Suite::Periodicity => periodicity(&mut r, a)?,
        Suite::All => {
            for s in ALL {
                r.extend(run(s, a)?);
            }
        }
    }
    Ok(r)
}

pub fn verify(a: &VerifyArgs) -> Result<(), Failure> {
    check_cap("n", a.n, MAX_N)?;
    check_cap("depth", a.depth as u64, MAX_DEPTH)?;
    check_cap("samples", a.samples, MAX_SAMPLES)?;
    if !(a.l.is_finite() && a.l > 0.0) {
        return Err(usage("L must be positive"));
    }
    let start = Instant::now();
    let report = run(a.suite, a)?;
    let failures: Vec<&str> = report.failures().map(|c| c.check.as_str()).collect();
    let doc = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "suite": report.suite,
        "config": {"n": a.n, "L": a.l, "depth": a.depth, "samples": a.samples, "seed": a.seed},
        "seed": a.seed,
        "wall_clock_s": kol31::report::sig12(start.elapsed().as_secs_f64()),
        "passed": report.passed(),
        "failures": failures,
        "checks": report.checks,
    });
    let text = serde_json::to_string_pretty(&doc).map_err(kol31::Error::from)? + "\n";
    write_or_print(a.out.as_ref(), &text)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            message: format!("failed checks: {}", failures.join("; ")),
        })
    }
}
