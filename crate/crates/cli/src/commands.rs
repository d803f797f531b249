//! One function per subcommand, each returning a report with its verdict.

use fibercheck::cohomology::{h2 as compute_h2, Cochain};
use fibercheck::cover::{build_cover, h1_cover};
use fibercheck::extension::{build_extension, extension_class};
use fibercheck::group::FiniteGroup;
use fibercheck::moduli::{
    dihedral_example, mumford_map, verify_fiber_theorem, weyl_example, weyl_orbit_check, weyl_suite,
};
use fibercheck::scenario::{select_cover, Scenario};
use fibercheck::surface::{commutator_convolution_count, enumerate_homs_parallel, surjections, SurfaceRep};
use fibercheck::verify::{run_all, Options};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::Report;
use crate::{CliError, Settings};

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// Orders that fit in 64 bits print as numbers, larger ones as decimal strings.
fn count(x: &BigUint) -> Value {
    u64::try_from(x).map(Value::from).unwrap_or_else(|_| Value::from(x.to_string()))
}

/// A factor set as a flat array: entry `w₁·|W| + w₂` holds the coordinates of `f(w₁, w₂)`.
fn factor_set(f: &Cochain) -> Value {
    to_value(&f.values().iter().map(|v| &v.0).collect::<Vec<_>>())
}

fn rep_value(rho: &SurfaceRep, w: &FiniteGroup) -> Value {
    json!({
        "images": rho.images,
        "labels": rho.images.iter().map(|&x| w.label(x)).collect::<Vec<_>>(),
    })
}

fn header(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|c| c.to_string()).collect()
}

fn coords_text(c: &[u64]) -> String {
    c.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

pub fn h2(s: &Scenario, st: &Settings) -> Result<Report, CliError> {
    let sigma = s.sigma()?;
    let h = compute_h2(sigma, &st.budget)?;
    let basis: Vec<Value> = h
        .basis()
        .iter()
        .map(|c| json!({ "coords": c.coords, "factor_set": factor_set(&c.rep) }))
        .collect();
    let payload = json!({
        "w_order": sigma.source().order(),
        "t_orders": sigma.target().orders(),
        "order": count(&h.order()),
        "invariants": h.group().orders(),
        "z2_order": count(&h.z2().order()),
        "b2_order": count(&h.b2().order()),
        "basis": basis,
        "verdict": true,
    });
    Ok(Report {
        payload,
        verdict: true,
        csv: None,
    })
}

pub fn extensions(s: &Scenario, st: &Settings) -> Result<Report, CliError> {
    let sigma = s.sigma()?;
    let h = compute_h2(sigma, &st.budget)?;
    let mut classes = Vec::new();
    let mut rows = vec![header(&["class", "n_order", "abelian", "center_order", "round_trip"])];
    let mut verdict = true;
    for c in h.classes() {
        let ext = build_extension(sigma, &c.rep)?;
        let back = extension_class(&ext, &h)?;
        let round_trip = back.coords == c.coords;
        verdict &= round_trip;
        let n = ext.group();
        let (_, element_orders) = n.fingerprint();
        rows.push(vec![
            coords_text(&c.coords),
            n.order().to_string(),
            n.is_abelian().to_string(),
            n.center().len().to_string(),
            round_trip.to_string(),
        ]);
        classes.push(json!({
            "coords": c.coords,
            "factor_set": factor_set(&c.rep),
            "carrier": {
                "order": n.order(),
                "abelian": n.is_abelian(),
                "center_order": n.center().len(),
                "element_orders": element_orders,
            },
            "round_trip": round_trip,
        }));
    }
    let payload = json!({
        "order": count(&h.order()),
        "invariants": h.group().orders(),
        "classes": classes,
        "verdict": verdict,
    });
    Ok(Report {
        payload,
        verdict,
        csv: Some(rows),
    })
}

pub fn homs(s: &Scenario, st: &Settings) -> Result<Report, CliError> {
    let genus = s.genus()?;
    let w = s.w()?;
    let all = enumerate_homs_parallel(genus, w, &st.budget, st.workers)?;
    let surjective = all.iter().filter(|r| r.is_surjective(w)).count();
    let convolution = commutator_convolution_count(genus, w);
    let verdict = convolution == BigUint::from(all.len());
    let payload = json!({
        "genus": genus,
        "group_order": w.order(),
        "enumeration": all.len(),
        "convolution": count(&convolution),
        "surjective": surjective,
        "verdict": verdict,
    });
    let rows = vec![
        header(&["genus", "group_order", "enumeration", "convolution", "surjective"]),
        vec![
            genus.to_string(),
            w.order().to_string(),
            all.len().to_string(),
            convolution.to_string(),
            surjective.to_string(),
        ],
    ];
    Ok(Report {
        payload,
        verdict,
        csv: Some(rows),
    })
}

pub fn cover(s: &Scenario, st: &Settings) -> Result<Report, CliError> {
    let w = s.w()?;
    let genus = s.genus()?;
    let rho = s.rho_bar(&st.budget)?;
    let cover = build_cover(&rho, w)?;
    let inv = cover.k_ab_invariants();
    let expected_rank = 2 * (w.order() * (genus - 1) + 1);
    let verdict = inv.len() == expected_rank && inv.iter().all(|d| *d == 0u32.into());
    let h1_order = match &s.sigma {
        Some(sigma) => count(&h1_cover(&cover, sigma)?.h1().order()),
        None => Value::Null,
    };
    let payload = json!({
        "genus": genus,
        "rho_bar": rep_value(&rho, w),
        "degree": w.order(),
        "cover_genus": cover.cover_genus(),
        "schreier_generators": cover.schreier_generators(),
        "k_ab_invariants": inv.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "h1_order": h1_order,
        "verdict": verdict,
    });
    Ok(Report {
        payload,
        verdict,
        csv: None,
    })
}

pub fn invariants(s: &Scenario, st: &Settings) -> Result<Report, CliError> {
    let sigma = s.sigma()?;
    let w = s.w()?;
    let rho = s.rho_bar(&st.budget)?;
    let ch = h1_cover(&build_cover(&rho, w)?, sigma)?;
    let h = compute_h2(sigma, &st.budget)?;
    let map = mumford_map(&ch, &h)?;
    let kernel = map.kernel().order();
    let mut classes = Vec::new();
    let mut rows = vec![header(&["class", "coset_size"])];
    let mut total = BigUint::from(0u32);
    let mut verdict = true;
    for c in h.classes() {
        let size = map.fiber(&c.coords).map(|f| f.order()).unwrap_or_default();
        verdict &= size == BigUint::from(0u32) || size == kernel;
        total += &size;
        rows.push(vec![coords_text(&c.coords), size.to_string()]);
        classes.push(json!({ "coords": c.coords, "coset_size": count(&size) }));
    }
    verdict &= total == map.invariants().order();
    let payload = json!({
        "rho_bar": rep_value(&rho, w),
        "h1_order": count(&ch.h1().order()),
        "invariants_order": count(&map.invariants().order()),
        "kernel_order": count(&kernel),
        "classes": classes,
        "verdict": verdict,
    });
    Ok(Report {
        payload,
        verdict,
        csv: Some(rows),
    })
}

pub fn fiber(s: &Scenario, st: &Settings) -> Result<Report, CliError> {
    let ext = s.extension()?;
    let rho = s.rho_bar(&st.budget)?;
    let h = compute_h2(ext.action(), &st.budget)?;
    let r = verify_fiber_theorem(ext, &rho, &h, &st.budget, st.workers)?;
    let mut rows = vec![header(&["phi", "lifts", "t_classes"])];
    rows.extend(r.buckets.iter().map(|b| {
        vec![coords_text(&b.phi), b.lifts.to_string(), b.t_classes.to_string()]
    }));
    Ok(Report {
        payload: to_value(&r),
        verdict: r.verdict,
        csv: Some(rows),
    })
}

pub fn orbit(s: &Scenario, st: &Settings) -> Result<Report, CliError> {
    let r = weyl_orbit_check(s.genus()?, s.extension()?, &st.budget)?;
    let mut rows = vec![header(&["orbit_size", "orbits"])];
    rows.extend(r.orbit_sizes.iter().map(|(k, v)| vec![k.to_string(), v.to_string()]));
    Ok(Report {
        payload: to_value(&r),
        verdict: r.verdict,
        csv: Some(rows),
    })
}

pub fn dihedral(s: &Scenario, st: &Settings) -> Result<Report, CliError> {
    let genus = s.genus()?;
    let n = s.example()?.n as u64;
    let z2 = FiniteGroup::cyclic(2)?;
    let covers = match &s.cover {
        Some(sel) => vec![select_cover(Some(sel), genus, &z2, &st.budget)?],
        None => surjections(genus, &z2, &st.budget)?,
    };
    let reports = covers
        .iter()
        .map(|rho| dihedral_example(n, rho, &st.budget))
        .collect::<Result<Vec<_>, _>>()?;
    let verdict = reports.iter().all(|r| r.verdict);
    let mut rows = vec![header(&["rho_bar", "fixed", "anti_fixed", "h1", "verdict"])];
    for (rho, r) in covers.iter().zip(&reports) {
        rows.push(vec![
            rho.images.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
            r.fixed_order.to_string(),
            r.anti_fixed_order.to_string(),
            r.h1_order.to_string(),
            r.verdict.to_string(),
        ]);
    }
    let payload = json!({
        "n": n,
        "genus": genus,
        "covers": covers.iter().map(|r| &r.images).collect::<Vec<_>>(),
        "reports": to_value(&reports),
        "verdict": verdict,
    });
    Ok(Report {
        payload,
        verdict,
        csv: Some(rows),
    })
}

pub fn weyl(s: &Scenario, st: &Settings) -> Result<Report, CliError> {
    let genus = s.genus()?;
    let ex = s.example()?;
    let family = ex
        .family
        .ok_or_else(|| CliError::Usage("`weyl` needs `family` in [example]".into()))?;
    match &s.cover {
        Some(sel) => {
            let w = FiniteGroup::symmetric(ex.n)?;
            let rho = select_cover(Some(sel), genus, &w, &st.budget)?;
            let r = weyl_example(ex.n, family, &rho, &st.budget)?;
            Ok(Report {
                payload: to_value(&r),
                verdict: r.verdict,
                csv: None,
            })
        }
        None => {
            let r = weyl_suite(genus, ex.n, family, &st.budget)?;
            let mut rows = vec![header(&["rho_bar", "invariants", "h1_eta", "verdict"])];
            rows.extend(r.reports.iter().map(|x| {
                vec![
                    x.rho_bar.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
                    x.invariants_order.to_string(),
                    x.h1_eta_order.to_string(),
                    x.verdict.to_string(),
                ]
            }));
            Ok(Report {
                payload: to_value(&r),
                verdict: r.verdict,
                csv: Some(rows),
            })
        }
    }
}

pub fn verify_all(st: &Settings) -> Result<Report, CliError> {
    let r = run_all(&Options {
        workers: st.workers,
        budget: st.budget,
    })?;
    let mut rows = vec![header(&["criterion", "name", "passed", "checks"])];
    rows.extend(r.criteria.iter().map(|c| {
        vec![c.id.to_string(), c.name.clone(), c.passed.to_string(), c.checks.to_string()]
    }));
    Ok(Report {
        payload: to_value(&r),
        verdict: r.passed,
        csv: Some(rows),
    })
}
