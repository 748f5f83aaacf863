use std::collections::BTreeMap;
use std::fmt::Write as _;

use otb_core::arrangement::{format_form, FlatPoint};
use otb_core::circuits::{circuit_relation, enumerate_circuits};
use otb_core::divisors::{cohomology, divisor_da as da_class, h0_fatpoints, pairing, riemann_roch_chi, same_span, DivisorClass};
use otb_core::exactmath::field::format_rational;
use otb_core::exactmath::{binomial, MPoly, Rational};
use otb_core::koszul::{b23_formula, betti_table, expected_k_polynomial, tor_dimension};
use otb_core::orlik_terao::{
    gradient_degree as grad_deg, hilbert_burch_psi, ideal_dimension, jacobian_containment, terao_series, Certification,
    OTPresentation, EXACT_LIMIT,
};
use otb_core::resonance::{
    cartan_test, is_neighborly, resonance_components, search_multinets, ComponentKind, MultinetCertificate, Provenance,
    ResonanceOptions,
};
use otb_core::scroll::{en_prediction, is_one_generic, minors_in_ideal, multiplication_matrix};
use otb_core::{poincare_polynomial, Arrangement, Result};
use serde_json::{json, Value};

/// One block of a report.
pub struct Section {
    pub name: &'static str,
    pub text: String,
    pub json: Value,
    pub verified: bool,
}

fn y_names(d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("y{i}")).collect()
}

fn show_y(p: &MPoly) -> String {
    let names = y_names(p.nvars());
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    p.display_with(&refs)
}

fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn flat_json(p: &FlatPoint) -> Value {
    json!({ "point": rats(&p.point), "lines": one_based(&p.lines), "mu": p.mu })
}

pub fn info(a: &Arrangement) -> Section {
    let d = a.len();
    let mut by_mu: BTreeMap<usize, usize> = BTreeMap::new();
    for p in a.flats() {
        *by_mu.entry(p.mu).or_default() += 1;
    }
    let pairs = binomial(d as u64, 2);
    let incidences: u64 = a.flats().iter().map(|p| binomial(p.mu as u64 + 1, 2)).sum();
    let mut text = String::new();
    writeln!(text, "lines: {d}").unwrap();
    writeln!(text, "forms: {}", a.forms_display().join(", ")).unwrap();
    let counts: Vec<String> = by_mu.iter().map(|(m, c)| format!("mu={m}: {c}")).collect();
    writeln!(text, "flats: {} ({})", a.flats().len(), counts.join(", ")).unwrap();
    writeln!(text, "sum mu: {}", a.mu_sum()).unwrap();
    writeln!(text, "double count: C({d},2) = {pairs}, sum C(mu+1,2) = {incidences}").unwrap();
    let mu_counts: serde_json::Map<String, Value> = by_mu.iter().map(|(m, c)| (m.to_string(), json!(c))).collect();
    Section {
        name: "info",
        text,
        json: json!({
            "d": d,
            "forms": a.forms_display(),
            "flats": a.flats().len(),
            "mu_counts": mu_counts,
            "mu_sum": a.mu_sum(),
            "double_count": { "pairs": pairs, "incidences": incidences },
        }),
        verified: pairs == incidences,
    }
}

pub fn flats(a: &Arrangement) -> Section {
    let mut text = String::new();
    for (i, p) in a.flats().iter().enumerate() {
        writeln!(text, "p{:<3} {:<14} mu {}  lines {}", i + 1, p.point_string(), p.mu, join(&one_based(&p.lines), ",")).unwrap();
    }
    Section { name: "flats", text, json: Value::Array(a.flats().iter().map(flat_json).collect()), verified: true }
}

pub fn poincare(a: &Arrangement) -> Section {
    let p = poincare_polynomial(a);
    let proj = p.projective();
    let ok = p.divisible_by_one_plus_t() && p.coeffs[1] == a.len() as i64 && p.coeffs[2] == a.mu_sum() as i64;
    let text = format!("{p}\nprojective: 1+{}t+{}t^2\n", proj[1], proj[2]);
    Section {
        name: "poincare",
        text,
        json: json!({ "polynomial": p.to_string(), "coefficients": p.coeffs, "projective": proj }),
        verified: ok,
    }
}

pub fn circuits(a: &Arrangement, max_size: usize) -> Section {
    let d = a.len();
    let cs = enumerate_circuits(a, max_size);
    let mut by_size: BTreeMap<usize, usize> = BTreeMap::new();
    for c in &cs {
        *by_size.entry(c.len()).or_default() += 1;
    }
    let mut text = String::new();
    let sizes: Vec<String> = by_size.iter().map(|(s, n)| format!("size {s}: {n}")).collect();
    writeln!(text, "circuits: {} ({})", cs.len(), sizes.join(", ")).unwrap();
    let mut list = Vec::new();
    for c in &cs {
        let rel = show_y(&circuit_relation(c, d));
        writeln!(text, "  {{{}}}  {}", join(&one_based(&c.indices), ","), rel).unwrap();
        list.push(json!({ "lines": one_based(&c.indices), "coefficients": rats(&c.coeffs), "relation": rel }));
    }
    Section { name: "circuits", text, json: json!({ "max_size": max_size, "circuits": list }), verified: true }
}

fn certification(c: &Certification) -> String {
    match c {
        Certification::Exact => "exact".into(),
        Certification::Primes(ps) => format!("primes {}", join(ps, ",")),
    }
}

pub fn ot_hilbert(a: &Arrangement, upto: usize) -> Result<Section> {
    let d = a.len();
    let p = OTPresentation::up_to_degree(a, upto);
    let series = terao_series(a, upto);
    let mut text = String::from(" j   dim C_j   series   certificate\n");
    let mut rows = Vec::new();
    let mut ok = true;
    for j in 0..=upto {
        let (dim_i, cert) = ideal_dimension(&p, j as u32, EXACT_LIMIT)?;
        let dim = binomial((d - 1 + j) as u64, j as u64) as i64 - dim_i as i64;
        let expected = series.coeffs[j];
        ok &= dim == expected;
        writeln!(text, "{j:>2} {dim:>9} {expected:>8}   {}", certification(&cert)).unwrap();
        rows.push(json!({ "j": j, "dim": dim, "series": expected, "certificate": certification(&cert) }));
    }
    writeln!(text, "h(t) = {}", join(&series.h_poly, ",")).unwrap();
    Ok(Section { name: "ot-hilbert", text, json: json!({ "degrees": rows, "h_poly": series.h_poly }), verified: ok })
}

pub fn betti(a: &Arrangement, verify_regularity: bool) -> Result<Section> {
    let t = betti_table(a)?;
    let k_ok = t.k_polynomial() == expected_k_polynomial(a);
    let pd_ok = t.projective_dimension() == a.len() - 3;
    let mut text = t.render_text();
    writeln!(text, "certificate: {}", t.certificate.describe()).unwrap();
    writeln!(text, "projective dimension: {}, regularity: {}", t.projective_dimension(), t.regularity()).unwrap();
    writeln!(text, "K-polynomial matches Hilbert series: {k_ok}").unwrap();
    let b23 = b23_formula(a)?;
    writeln!(
        text,
        "b23 formula: {} (new cubic generators {}, I = I_2: {})",
        b23.value, b23.new_cubic_generators, b23.hypothesis_holds
    )
    .unwrap();
    let mut strand3 = Vec::new();
    let mut reg_ok = true;
    if verify_regularity {
        for i in 0..=4.min(a.len()) {
            let v = tor_dimension(a, i, i + 3, true)?;
            reg_ok &= v.value == 0;
            strand3.push(json!({ "i": i, "value": v.value, "certificate": v.certificate.describe() }));
            writeln!(text, "strand 3, i = {i}: {} ({})", v.value, v.certificate.describe()).unwrap();
        }
    }
    let json = json!({
        "table": t.to_json(),
        "totals": t.totals(),
        "projective_dimension": t.projective_dimension(),
        "regularity": t.regularity(),
        "k_polynomial": t.k_polynomial(),
        "k_polynomial_matches": k_ok,
        "b23_formula": { "value": b23.value, "new_cubic_generators": b23.new_cubic_generators, "hypothesis_holds": b23.hypothesis_holds },
        "strand3": strand3,
    });
    Ok(Section { name: "betti", text, json, verified: k_ok && pd_ok && reg_ok })
}

fn divisor_json(d: &DivisorClass) -> Value {
    json!({ "m": d.m, "mults": d.mults })
}

pub fn divisor_da(a: &Arrangement) -> Result<Section> {
    let da = da_class(a);
    let s = h0_fatpoints(a, &da)?;
    let spans = same_span(&s.basis, &a.l_forms(), da.m as u32);
    let chi = riemann_roch_chi(&da)?;
    let sq = pairing(&da, &da);
    let ok = s.dimension() == a.len() && spans;
    let text = format!(
        "D_A = {}\nD_A^2 = {sq}\nchi = {chi}\nh0 = {} (d = {})\nsections span <l_1..l_d>: {spans}\n",
        da.display(),
        s.dimension(),
        a.len()
    );
    Ok(Section {
        name: "divisor-da",
        text,
        json: json!({ "divisor": divisor_json(&da), "self_intersection": sq, "chi": chi, "h0": s.dimension(), "spans_l_forms": spans }),
        verified: ok,
    })
}

/// `mu`, or one comma-separated integer per flat.
pub fn parse_mults(a: &Arrangement, spec: &str) -> std::result::Result<Vec<i64>, String> {
    if spec.trim() == "mu" {
        return Ok(a.flats().iter().map(|p| p.mu as i64).collect());
    }
    let v: Vec<i64> = spec
        .split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| format!("bad multiplicity '{}' in --mults", s.trim())))
        .collect::<std::result::Result<_, _>>()?;
    if v.len() != a.flats().len() {
        return Err(format!("--mults has {} entries but the arrangement has {} flats (see `otb flats`)", v.len(), a.flats().len()));
    }
    Ok(v)
}

pub fn h0(a: &Arrangement, m: i64, mults: Vec<i64>) -> Result<Section> {
    let d = DivisorClass::new(m, mults);
    let s = h0_fatpoints(a, &d)?;
    let c = cohomology(a, &d)?;
    let mut text = format!("D = {}\nh0 = {}\nchi = {}\nh1 = {}\nbasis:\n", d.display(), c.h0, c.chi, c.h1);
    for f in &s.basis {
        writeln!(text, "  {f}").unwrap();
    }
    let basis: Vec<String> = s.basis.iter().map(MPoly::to_string).collect();
    Ok(Section {
        name: "h0",
        text,
        json: json!({ "divisor": divisor_json(&d), "h0": c.h0, "chi": c.chi, "h1": c.h1, "basis": basis }),
        verified: true,
    })
}

fn certificate_json(a: &Arrangement, c: &MultinetCertificate) -> Result<Value> {
    let base: Vec<Value> = c
        .base_locus
        .iter()
        .zip(&c.n)
        .map(|(&p, &n)| json!({ "point": rats(&a.flats()[p].point), "n": n }))
        .collect();
    let blocks: Vec<Vec<usize>> = c.blocks.iter().map(|b| one_based(b)).collect();
    Ok(json!({
        "partition": c.partition_string(),
        "blocks": blocks,
        "weights": c.weights,
        "k": c.k,
        "m": c.m,
        "net": c.is_net(),
        "neighborly": is_neighborly(a, &c.blocks)?,
        "base_locus": base,
    }))
}

pub fn net_search(a: &Arrangement, k: usize, max_weight: u32) -> Result<Section> {
    let found = search_multinets(a, k, max_weight)?;
    let mut text = format!("multinets with k = {k}, weights <= {max_weight}: {}\n", found.len());
    let mut list = Vec::new();
    for c in &found {
        let j = certificate_json(a, c)?;
        let kind = if c.is_net() { "net" } else { "multinet" };
        writeln!(
            text,
            "  {} ({},{})-{kind} weights {} base points {} neighborly {}",
            c.partition_string(),
            c.k,
            c.m,
            join(&c.weights, ","),
            c.base_locus.len(),
            j["neighborly"]
        )
        .unwrap();
        let z = cartan_test(a, &c.base_locus);
        writeln!(text, "    cartan blocks: {} affine of {}, criterion {}", z.affine_count(), z.blocks.len(), z.criterion).unwrap();
        list.push(j);
    }
    Ok(Section { name: "net-search", text, json: json!({ "k": k, "max_weight": max_weight, "certificates": list }), verified: true })
}

pub fn resonance(a: &Arrangement) -> Result<Section> {
    let opts = ResonanceOptions::default();
    let comps = resonance_components(a, &opts)?;
    let local = comps.iter().filter(|c| c.kind == ComponentKind::Local).count();
    let essential = comps.len() - local;
    let mut text = format!("components: {} local, {} essential\n", local, essential);
    let mut list = Vec::new();
    for c in &comps {
        let (kind, origin, origin_json) = match &c.provenance {
            Provenance::Flat(p) => ("local", a.flats()[*p].point_string(), json!(rats(&a.flats()[*p].point))),
            Provenance::Multinet(cert) => ("essential", cert.partition_string(), json!(cert.partition_string())),
        };
        writeln!(text, "  {kind:<9} dim {}  {origin}  H1 at samples {}", c.span.len(), join(&c.samples, ",")).unwrap();
        let span: Vec<Vec<String>> = c.span.iter().map(|v| rats(v)).collect();
        list.push(json!({ "kind": kind, "dimension": c.span.len(), "origin": origin_json, "span": span, "h1_samples": c.samples }));
    }
    Ok(Section {
        name: "resonance",
        text,
        json: json!({ "local": local, "essential": essential, "search_ks": opts.ks, "max_weight": opts.max_weight, "components": list }),
        verified: true,
    })
}

pub fn scroll_check(a: &Arrangement) -> Result<Section> {
    let mut nets: Vec<MultinetCertificate> = Vec::new();
    for k in 3..=4.min(a.len()) {
        nets.extend(search_multinets(a, k, 1)?.into_iter().filter(MultinetCertificate::is_net));
    }
    let mut text = format!("nets: {}\n", nets.len());
    let mut list = Vec::new();
    let mut ok = true;
    for cert in &nets {
        let g = multiplication_matrix(a, cert)?;
        let generic = is_one_generic(&g);
        let minors = minors_in_ideal(a, &g)?;
        ok &= generic && minors.all_members;
        writeln!(text, "  {} ({},{})-net: gamma is {}x{}", cert.partition_string(), cert.k, cert.m, g.rows(), g.cols()).unwrap();
        for row in &g.entries {
            let cells: Vec<String> = row.iter().map(show_y).collect();
            writeln!(text, "    [ {} ]", cells.join(" | ")).unwrap();
        }
        writeln!(text, "    1-generic: {generic}").unwrap();
        writeln!(text, "    minors in I: {} ({} independent)", minors.all_members, minors.independent).unwrap();
        let prediction = match en_prediction(cert, a.len()) {
            Ok(p) => {
                let b23 = tor_dimension(a, 2, 3, false)?;
                writeln!(
                    text,
                    "    Eagon-Northcott: b = {}, quadrics {}, linear syzygies {}; computed b_2,3 = {}",
                    p.b,
                    p.quadrics(),
                    p.linear_syzygies(),
                    b23.value
                )
                .unwrap();
                json!({ "b": p.b, "betas": p.betas, "computed_b23": b23.value })
            }
            Err(e) => {
                writeln!(text, "    Eagon-Northcott: {e}").unwrap();
                json!({ "error": e.to_string() })
            }
        };
        let entries: Vec<Vec<String>> = g.entries.iter().map(|r| r.iter().map(show_y).collect()).collect();
        list.push(json!({
            "partition": cert.partition_string(),
            "matrix": entries,
            "one_generic": generic,
            "minors_in_ideal": minors.all_members,
            "independent_minors": minors.independent,
            "prediction": prediction,
        }));
    }
    Ok(Section { name: "scroll-check", text, json: json!({ "nets": list }), verified: ok })
}

pub fn jacobian_check(a: &Arrangement) -> Result<Section> {
    let j = jacobian_containment(a);
    let mut text = format!("partials of alpha in <l_1..l_d>: {}\n", j.contained);
    for (v, c) in ["x", "y", "z"].iter().zip(&j.coordinates) {
        writeln!(text, "  d/d{v} = [{}]", rats(c).join(", ")).unwrap();
    }
    let coords: Vec<Vec<String>> = j.coordinates.iter().map(|c| rats(c)).collect();
    Ok(Section { name: "jacobian-check", text, json: json!({ "contained": j.contained, "coordinates": coords }), verified: j.contained })
}

pub fn gradient_degree(a: &Arrangement) -> Section {
    let g = grad_deg(a);
    let text = format!("gradient degree: {g} (b2 = {}, b1 = {})\n", a.mu_sum(), a.len());
    Section { name: "gradient-degree", text, json: json!({ "degree": g, "b1": a.len(), "b2": a.mu_sum() }), verified: true }
}

pub fn hilbert_burch(a: &Arrangement) -> Section {
    let (ok, detail) = match hilbert_burch_psi(a) {
        Ok(_) => (true, "maximal minors of psi are +-l_i".to_string()),
        Err(e) => (false, e.to_string()),
    };
    let forms: Vec<String> = a.forms().iter().map(format_form).collect();
    Section {
        name: "hilbert-burch",
        text: format!("{detail}\n"),
        json: json!({ "verified": ok, "detail": detail, "forms": forms }),
        verified: ok,
    }
}
