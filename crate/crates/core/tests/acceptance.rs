//! Acceptance suite: one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use otb_core::arrangement::BUILTIN_NAMES;
use otb_core::divisors::{cohomology, divisor_da, h0_fatpoints, net_split};
use otb_core::exactmath::binomial;
use otb_core::koszul::{b23_formula, betti_table, expected_k_polynomial, tor_dimension, Certificate};
use otb_core::orlik_terao::{
    gradient_degree, hilbert_burch_psi, ideal_dimension, jacobian_containment, terao_series, Certification, OTPresentation,
    EXACT_LIMIT,
};
use otb_core::resonance::{
    is_neighborly, resonance_components, search_multinets, verify_multinet, ComponentKind, Provenance, ResonanceOptions,
};
use otb_core::scroll::{en_prediction, is_one_generic, minors_in_ideal, multiplication_matrix};
use otb_core::{builtin, Arrangement};

/// Wall-clock budget for each Betti table.
const BETTI_TIME_LIMIT: Duration = Duration::from_secs(300);
/// Wall-clock budget for each property suite.
const SUITE_TIME_LIMIT: Duration = Duration::from_secs(120);
/// Primes that must agree when a value is not computed over the rationals.
const MIN_AGREEING_PRIMES: usize = 2;
/// Oracle evaluations required per resonance component.
const REQUIRED_SAMPLES: usize = 2;
/// Highest degree checked against the Hilbert series.
const HILBERT_TOP_DEGREE: usize = 5;
/// Koszul index bound for the strand-3 check.
const STRAND3_MAX_I: usize = 4;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn load(name: &str) -> Result<Arrangement, String> {
    builtin(name).map_err(|e| e.to_string())
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn betti_tables() -> Outcome {
    let expected: [(&str, Vec<usize>, Vec<usize>, Vec<usize>); 3] = [
        ("braid-a3", vec![1, 4, 5, 2], vec![0, 4, 2, 0], vec![0, 0, 3, 2]),
        ("9_3_2", vec![1, 11, 75, 156, 145, 66, 12], vec![0, 9, 0, 0, 0, 0, 0], vec![0, 2, 75, 156, 145, 66, 12]),
        ("9_3_1", vec![1, 13, 77, 156, 145, 66, 12], vec![0, 9, 2, 0, 0, 0, 0], vec![0, 4, 75, 156, 145, 66, 12]),
    ];
    let mut times = Vec::new();
    for (name, totals, row1, row2) in expected {
        let a = load(name)?;
        let start = Instant::now();
        let t = betti_table(&a).map_err(err)?;
        let took = start.elapsed();
        ensure!(took < BETTI_TIME_LIMIT, "{name}: {took:?} exceeds {BETTI_TIME_LIMIT:?}");
        ensure!(t.certificate == Certificate::Exact, "{name}: table not exact");
        ensure!(t.totals() == totals, "{name}: totals {:?}", t.totals());
        ensure!(t.row(1) == row1, "{name}: row 1 {:?}", t.row(1));
        ensure!(t.row(2) == row2, "{name}: row 2 {:?}", t.row(2));
        ensure!(t.regularity() == 2, "{name}: regularity {}", t.regularity());
        times.push(format!("{name} {:.1}s", took.as_secs_f64()));
    }
    Ok(format!("three tables exact ({})", times.join(", ")))
}

fn certified(c: &Certificate) -> bool {
    match c {
        Certificate::Exact => true,
        Certificate::Primes(ps) => ps.len() >= MIN_AGREEING_PRIMES,
    }
}

fn braid_tor() -> Outcome {
    let a = load("braid-a3")?;
    let t24 = tor_dimension(&a, 2, 4, false).map_err(err)?;
    ensure!(certified(&t24.certificate), "Tor_2,4 not certified");
    ensure!(t24.value == 3, "Tor_2,4 = {}", t24.value);
    let t23 = tor_dimension(&a, 2, 3, false).map_err(err)?;
    let f = b23_formula(&a).map_err(err)?;
    ensure!(f.hypothesis_holds, "I != I_2 on braid-a3");
    ensure!(f.value == 2 && t23.value as i64 == f.value, "formula {} vs Tor_2,3 = {}", f.value, t23.value);
    Ok("Tor_2,4 = 3, b23 formula = Tor_2,3 = 2".into())
}

fn hilbert_function() -> Outcome {
    let mut checked = 0;
    for name in BUILTIN_NAMES {
        let a = load(name)?;
        let d = a.len();
        let p = OTPresentation::up_to_degree(&a, HILBERT_TOP_DEGREE);
        let series = terao_series(&a, HILBERT_TOP_DEGREE).coeffs;
        for j in 0..=HILBERT_TOP_DEGREE {
            let (dim_i, cert) = ideal_dimension(&p, j as u32, EXACT_LIMIT).map_err(err)?;
            if let Certification::Primes(ps) = &cert {
                ensure!(ps.len() >= MIN_AGREEING_PRIMES, "{name} j={j}: only {ps:?}");
            }
            let dim = binomial((d - 1 + j) as u64, j as u64) as i64 - dim_i as i64;
            ensure!(dim == series[j], "{name} j={j}: dim C_j = {dim}, series {}", series[j]);
            checked += 1;
        }
    }
    Ok(format!("{checked} (arrangement, degree) pairs agree"))
}

fn section_counts() -> Outcome {
    for name in BUILTIN_NAMES {
        let a = load(name)?;
        let h = h0_fatpoints(&a, &divisor_da(&a)).map_err(err)?.dimension();
        ensure!(h == a.len(), "{name}: h0(D_A) = {h}");
    }
    let a = load("9_3_1")?;
    let net = search_multinets(&a, 3, 1).map_err(err)?;
    ensure!(net.len() == 1, "9_3_1: {} nets", net.len());
    let split = net_split(&a, &net[0]).map_err(err)?;
    let ca = cohomology(&a, &split.a_div).map_err(err)?;
    let hb = h0_fatpoints(&a, &split.b_div).map_err(err)?.dimension();
    ensure!(ca.h0 == 2 && ca.h1 == 1, "9_3_1: h0(A) = {}, h1(A) = {}", ca.h0, ca.h1);
    ensure!(hb == 3, "9_3_1: h0(B) = {hb}");
    let braid = load("braid-a3")?;
    let bnet = search_multinets(&braid, 3, 1).map_err(err)?;
    ensure!(bnet.len() == 1, "braid-a3: {} nets", bnet.len());
    let bound = net_split(&braid, &bnet[0]).map_err(err)?.h0_b_bound;
    ensure!(bound == Some(3), "braid-a3 bound {bound:?}");
    Ok("h0(D_A) = d on all builtins; 9_3_1 h0(A)=2 h1(A)=1 h0(B)=3; braid bound 3".into())
}

fn resonance() -> Outcome {
    let opts = ResonanceOptions::default();
    let mut summary = Vec::new();
    for (name, local, essential) in [("braid-a3", 4, 1), ("9_3_1", 9, 1), ("9_3_2", 9, 0)] {
        let a = load(name)?;
        let comps = resonance_components(&a, &opts).map_err(err)?;
        let l = comps.iter().filter(|c| c.kind == ComponentKind::Local).count();
        let e = comps.len() - l;
        ensure!((l, e) == (local, essential), "{name}: {l} local, {e} essential");
        for c in &comps {
            ensure!(c.samples.len() == REQUIRED_SAMPLES && c.samples.iter().all(|&s| s >= 1), "{name}: samples {:?}", c.samples);
        }
        if name == "9_3_1" {
            let ess = comps.iter().find(|c| c.kind == ComponentKind::Essential).unwrap();
            let Provenance::Multinet(cert) = &ess.provenance else {
                return Err("9_3_1 essential component has no multinet".into());
            };
            ensure!(cert.is_net() && (cert.k, cert.m) == (3, 3), "9_3_1: not a (3,3)-net");
            ensure!(is_neighborly(&a, &cert.blocks).map_err(err)?, "9_3_1: partition not neighborly");
        }
        summary.push(format!("{name} ({l},{e})"));
    }
    Ok(format!("{}; every component passed {REQUIRED_SAMPLES} oracle samples", summary.join(", ")))
}

fn b3_multinet() -> Outcome {
    let a = load("b3")?;
    // x, y, z, x-y, x+y, x-z, x+z, y-z, y+z; weight 2 on the coordinate lines
    let blocks = [vec![0, 7, 8], vec![1, 5, 6], vec![2, 3, 4]];
    let weights = [2, 2, 2, 1, 1, 1, 1, 1, 1];
    let c = verify_multinet(&a, &blocks, &weights).map_err(err)?;
    ensure!((c.k, c.m) == (3, 4), "(k,m) = ({},{})", c.k, c.m);
    let sq: u32 = c.n.iter().map(|n| n * n).sum();
    ensure!(sq == 16 && sq == c.m * c.m, "sum n_p^2 = {sq}");
    let total: u32 = c.weights.iter().sum();
    ensure!(total == c.k as u32 * c.m, "sum of weights {total}");
    for l in 0..a.len() {
        let s: u32 = c.base_locus.iter().zip(&c.n).filter(|(&p, _)| a.flats()[p].contains(l)).map(|(_, &n)| n).sum();
        ensure!(s == c.m, "line {}: sum n_p = {s}", l + 1);
    }
    ensure!(c.connected, "connectivity fails");
    Ok("(3,4)-multinet, sum n_p^2 = 16 = m^2, numerology identities hold".into())
}

fn scroll() -> Outcome {
    for name in ["braid-a3", "9_3_1"] {
        let a = load(name)?;
        let cert = search_multinets(&a, 3, 1).map_err(err)?.into_iter().next().ok_or(format!("{name}: no net"))?;
        let g = multiplication_matrix(&a, &cert).map_err(err)?;
        ensure!((g.rows(), g.cols()) == (2, 3), "{name}: gamma is {}x{}", g.rows(), g.cols());
        ensure!(is_one_generic(&g), "{name}: gamma not 1-generic");
        let m = minors_in_ideal(&a, &g).map_err(err)?;
        ensure!(m.all_members, "{name}: a minor is not in I");
        let p = en_prediction(&cert, a.len()).map_err(err)?;
        let b23 = tor_dimension(&a, 2, 3, false).map_err(err)?;
        ensure!(certified(&b23.certificate), "{name}: b_2,3 not certified");
        ensure!(p.linear_syzygies() == 2 && b23.value == 2, "{name}: beta_1 {} vs b_2,3 {}", p.linear_syzygies(), b23.value);
    }
    Ok("braid-a3 and 9_3_1: 2x3, 1-generic, minors in I, beta_1 = b_2,3 = 2".into())
}

fn timed(label: &str, f: impl FnOnce() -> Result<(), String>) -> Result<String, String> {
    let start = Instant::now();
    f()?;
    let took = start.elapsed();
    ensure!(took < SUITE_TIME_LIMIT, "{label}: {took:?} exceeds {SUITE_TIME_LIMIT:?}");
    Ok(format!("{label} {:.1}s", took.as_secs_f64()))
}

fn property_suites() -> Outcome {
    let all: Vec<(&str, Arrangement)> = BUILTIN_NAMES.iter().map(|&n| Ok((n, load(n)?))).collect::<Result<_, String>>()?;
    let mut done = Vec::new();
    done.push(timed("double count", || {
        for (name, a) in &all {
            let lhs = binomial(a.len() as u64, 2);
            let rhs: u64 = a.flats().iter().map(|p| binomial(p.mu as u64 + 1, 2)).sum();
            ensure!(lhs == rhs, "{name}: {lhs} != {rhs}");
        }
        Ok(())
    })?);
    done.push(timed("K-polynomial", || {
        for (name, a) in &all {
            let t = betti_table(a).map_err(err)?;
            ensure!(t.k_polynomial() == expected_k_polynomial(a), "{name}: K-polynomial mismatch");
        }
        Ok(())
    })?);
    done.push(timed("strand 3", || {
        for (name, a) in &all {
            for i in 0..=STRAND3_MAX_I.min(a.len()) {
                let v = tor_dimension(a, i, i + 3, true).map_err(err)?;
                ensure!(certified(&v.certificate), "{name}: strand 3 at i={i} not certified");
                ensure!(v.value == 0, "{name}: b_{i},{} = {}", i + 3, v.value);
            }
        }
        Ok(())
    })?);
    done.push(timed("Hilbert-Burch", || {
        for (name, a) in &all {
            hilbert_burch_psi(a).map_err(|e| format!("{name}: {e}"))?;
        }
        Ok(())
    })?);
    done.push(timed("Jacobian", || {
        for (name, a) in &all {
            ensure!(jacobian_containment(a).contained, "{name}: partials not in span of l_i");
        }
        Ok(())
    })?);
    done.push(timed("gradient degree", || {
        for (name, a) in &all {
            let b1 = a.len() as i64;
            let b2: i64 = a.flats().iter().map(|p| p.mu as i64).sum();
            ensure!(gradient_degree(a) == b2 - b1 + 1, "{name}: {}", gradient_degree(a));
        }
        Ok(())
    })?);
    Ok(done.join(", "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("betti tables", betti_tables),
        ("braid Tor and b23 formula", braid_tor),
        ("Hilbert function", hilbert_function),
        ("section counts", section_counts),
        ("resonance", resonance),
        ("B3 multinet", b3_multinet),
        ("scroll", scroll),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (label, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} [{label}]: PASS: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} [{label}]: FAIL: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
