use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use k3lattice::cusps::{is_isotropic, zero_cusp_count, zero_cusp_invariants};
use k3lattice::fixtures;
use k3lattice::homology::{homology, is_quasi_iso};
use k3lattice::io::{config_from_json, config_to_doc, config_to_json_pretty, lattice_from_json, lattice_to_value, parse_vector, Int};
use k3lattice::kulikov::{
    base_change_resolution, lambda_lattice_unchecked, monodromy_operator, numerically_cartier_unchecked, picard_lefschetz_t,
    validate, KulikovConfig, KulikovType, MonodromyData, ValidationReport,
};
use k3lattice::lattice::{discriminant_group, hyperbolic_twisted, parse_lattice_name, IntegerLattice, Signature};
use k3lattice::linalg::{invariant_factors, IntMatrix};
use k3lattice::small_cones::{h_n_walls, rank2_walls, WallOrigin, WallSet};
use k3lattice::toric::{independent_h0_form, intermediate_complex};
use k3lattice::yau_zaslow::{colored_partitions_table, yz_counts};
use k3lattice::{Error, Result};

use crate::report::{CheckOutcome, InputDigest, Outcome};

fn read_input(path: &Path, digest: &mut InputDigest) -> Result<String> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    digest.add(text.as_bytes());
    Ok(text)
}

fn in_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Malformed(m) => Error::Malformed(format!("{}: {m}", path.display())),
        e => e,
    }
}

fn load_config(path: &Path, digest: &mut InputDigest) -> Result<KulikovConfig> {
    config_from_json(&read_input(path, digest)?).map_err(|e| in_file(path, e))
}

fn int(x: &BigInt) -> Value {
    serde_json::to_value(Int(x.clone())).expect("integer")
}

fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

fn matrix(m: &IntMatrix) -> Value {
    Value::Array(m.rows_iter().map(ints).collect())
}

fn sig_str(s: &Signature) -> String {
    if s.zero == 0 {
        format!("({},{})", s.positive, s.negative)
    } else {
        format!("({},{},{})", s.positive, s.negative, s.zero)
    }
}

fn nontrivial_factors(l: &IntegerLattice) -> Vec<BigInt> {
    invariant_factors(l.gram()).into_iter().filter(|d| d != &BigInt::from(1)).collect()
}

fn validation_checks(rep: &ValidationReport) -> Vec<CheckOutcome> {
    if rep.is_valid() {
        return vec![CheckOutcome::new("configuration is valid", true)];
    }
    rep.failures.iter().map(|f| CheckOutcome::new("configuration is valid", false).at(&f.location).detail(&f.message)).collect()
}

fn validation_summary(rep: &ValidationReport) -> String {
    let mut s = format!("type {}, ", rep.kind);
    match rep.total_charge {
        Some(q) => write!(s, "total charge {q}").unwrap(),
        None => s.push_str("total charge undefined"),
    }
    if let Some(t) = rep.triple_points {
        write!(s, ", triple points {t}").unwrap();
    }
    s
}

pub fn validate_configs(paths: &[std::path::PathBuf], digest: &mut InputDigest) -> Result<Outcome> {
    let configs = paths.iter().map(|p| load_config(p, digest)).collect::<Result<Vec<_>>>()?;
    let reports = configs.par_iter().map(validate).collect::<Result<Vec<_>>>()?;
    let mut text = String::new();
    let mut checks = Vec::new();
    let mut results = Vec::new();
    for (path, rep) in paths.iter().zip(&reports) {
        let name = path.display().to_string();
        let status = if rep.is_valid() { "valid" } else { "INVALID" };
        writeln!(text, "{name}: {status}, {}", validation_summary(rep)).unwrap();
        for c in validation_checks(rep) {
            let location = c.location.clone().map_or(name.clone(), |l| format!("{name}: {l}"));
            checks.push(CheckOutcome { location: Some(location), ..c });
        }
        results.push(json!({ "input": name, "report": rep }));
    }
    Ok(Outcome { results: Value::Array(results), checks, text })
}

fn invalid_outcome(rep: &ValidationReport) -> Outcome {
    Outcome {
        results: json!({ "validation": rep }),
        checks: validation_checks(rep),
        text: format!("configuration is invalid: {}\n", validation_summary(rep)),
    }
}

pub fn lambda(path: &Path, digest: &mut InputDigest) -> Result<Outcome> {
    let cfg = load_config(path, digest)?;
    let rep = validate(&cfg)?;
    if !rep.is_valid() {
        return Ok(invalid_outcome(&rep));
    }
    let lam = lambda_lattice_unchecked(&cfg)?;
    let tilde = &lam.tilde.lattice;
    let mut text = format!("Λ̃: rank {}, signature {}\n", tilde.rank(), sig_str(&tilde.signature()));
    writeln!(text, "Ξ: rank {}; radical of Λ̃: rank {}", lam.xi_rank, lam.radical_rank).unwrap();
    let mut checks = vec![
        CheckOutcome::new("ξ_i sum to zero", lam.xi_sum_zero),
        CheckOutcome::new("ξ_i are numerically Cartier", lam.xi.iter().all(Option::is_some)),
        CheckOutcome::new("Ξ is the radical of Λ̃", lam.xi_is_radical),
        CheckOutcome::new("Λ̃/Ξ is torsion-free", lam.torsion_free).detail(format!("torsion {:?}", lam.torsion)),
    ];
    let expected = match cfg.kind {
        KulikovType::III => Some(Signature { positive: 1, negative: 18, zero: 0 }),
        KulikovType::II => Some(Signature { positive: 1, negative: 17, zero: 0 }),
        KulikovType::I => None,
    };
    let lambda_value = match &lam.lambda {
        Some(l) => {
            let disc = discriminant_group(l)?;
            writeln!(text, "Λ: rank {}, signature {}, det {}", l.rank(), sig_str(&l.signature()), l.determinant()).unwrap();
            writeln!(text, "discriminant group: {:?}", disc.invariant_factors.iter().map(ToString::to_string).collect::<Vec<_>>())
                .unwrap();
            if let Some(e) = expected {
                checks.push(CheckOutcome::new("Λ has the expected signature", l.signature() == e).detail(format!(
                    "expected {}, got {}",
                    sig_str(&e),
                    sig_str(&l.signature())
                )));
            }
            json!({
                "rank": l.rank(),
                "signature": l.signature(),
                "determinant": int(l.determinant()),
                "discriminant_factors": ints(&disc.invariant_factors),
                "lattice": lattice_to_value(l),
            })
        }
        None => {
            checks.push(CheckOutcome::new("Λ = Λ̃/Ξ is defined", false));
            Value::Null
        }
    };
    for f in &lam.failures {
        text.push_str(f);
        text.push('\n');
    }
    let results = json!({
        "lambda_tilde": { "rank": tilde.rank(), "signature": tilde.signature() },
        "xi_rank": lam.xi_rank,
        "radical_rank": lam.radical_rank,
        "xi_is_radical": lam.xi_is_radical,
        "torsion": ints(&lam.torsion),
        "lambda": lambda_value,
        "failures": lam.failures,
    });
    Ok(Outcome { results, checks, text })
}

pub fn quasi_iso(path: &Path, digest: &mut InputDigest) -> Result<Outcome> {
    let cfg = load_config(path, digest)?;
    let rep = validate(&cfg)?;
    if !rep.is_valid() {
        return Ok(invalid_outcome(&rep));
    }
    let ic = intermediate_complex(&cfg)?;
    let from_gluing = is_quasi_iso(&ic.from_gluing);
    let from_period = is_quasi_iso(&ic.from_period);
    let hg = homology(&ic.from_gluing.source);
    let hp = homology(&ic.from_period.source);
    let form = independent_h0_form(&cfg)?;
    let nc = numerically_cartier_unchecked(&cfg)?.lattice;
    let (ff, nf) = (nontrivial_factors(&form), nontrivial_factors(&nc));
    let checks = vec![
        CheckOutcome::new("gluing complex → intermediate complex is a quasi-isomorphism", from_gluing),
        CheckOutcome::new("period complex → intermediate complex is a quasi-isomorphism", from_period),
        CheckOutcome::new("H⁰ ranks agree", form.rank() == nc.rank())
            .detail(format!("{} vs {}", form.rank(), nc.rank())),
        CheckOutcome::new("H⁰ signatures agree", form.signature() == nc.signature())
            .detail(format!("{} vs {}", sig_str(&form.signature()), sig_str(&nc.signature()))),
        CheckOutcome::new("H⁰ discriminant invariant factors agree", ff == nf),
    ];
    let text = format!(
        "gluing complex: C0 {}, C1 {}, H⁰ rank {}, H¹ rank {}\nperiod complex: C0 {}, C1 {}, H⁰ rank {}, H¹ rank {}\nH⁰ form: rank {}, signature {}, factors {:?}\n",
        ic.from_gluing.source.c0(),
        ic.from_gluing.source.c1(),
        hg.h0_rank(),
        hg.h1_rank(),
        ic.from_period.source.c0(),
        ic.from_period.source.c1(),
        hp.h0_rank(),
        hp.h1_rank(),
        form.rank(),
        sig_str(&form.signature()),
        ff.iter().map(ToString::to_string).collect::<Vec<_>>(),
    );
    let results = json!({
        "gluing": { "c0": ic.from_gluing.source.c0(), "c1": ic.from_gluing.source.c1(), "h0_rank": hg.h0_rank(), "h1_rank": hg.h1_rank(), "h1_torsion": ints(hg.h1_torsion()) },
        "period": { "c0": ic.from_period.source.c0(), "c1": ic.from_period.source.c1(), "h0_rank": hp.h0_rank(), "h1_rank": hp.h1_rank(), "h1_torsion": ints(hp.h1_torsion()) },
        "h0_form": { "rank": form.rank(), "signature": form.signature(), "factors": ints(&ff) },
        "numerically_cartier": { "rank": nc.rank(), "signature": nc.signature(), "factors": ints(&nf) },
    });
    Ok(Outcome { results, checks, text })
}

pub fn base_change(path: &Path, k: usize, output: Option<&Path>, digest: &mut InputDigest) -> Result<Outcome> {
    let cfg = load_config(path, digest)?;
    let rep = validate(&cfg)?;
    if !rep.is_valid() {
        return Ok(invalid_outcome(&rep));
    }
    let bc = base_change_resolution(&cfg, k)?;
    let after = validate(&bc)?;
    let mut checks = validation_checks(&after);
    checks.push(CheckOutcome::new("total charge is 24", after.total_charge == Some(24)));
    if cfg.kind == KulikovType::III {
        let expected = cfg.triangles.len() * k * k;
        checks.push(
            CheckOutcome::new("triangles multiply by k²", bc.triangles.len() == expected)
                .detail(format!("expected {expected}, got {}", bc.triangles.len())),
        );
    }
    let mut text = format!(
        "k = {k}: {} components, {} edges, {} triangles; {}\n",
        bc.components.len(),
        bc.edges.len(),
        bc.triangles.len(),
        validation_summary(&after)
    );
    if let Some(out) = output {
        std::fs::write(out, config_to_json_pretty(&bc) + "\n")
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", out.display())))?;
        writeln!(text, "wrote {}", out.display()).unwrap();
    }
    let results = json!({
        "k": k,
        "components": bc.components.len(),
        "edges": bc.edges.len(),
        "triangles": bc.triangles.len(),
        "validation": after,
        "config": config_to_doc(&bc),
    });
    Ok(Outcome { results, checks, text })
}

pub fn cusps(d: u64) -> Result<Outcome> {
    let count = zero_cusp_count(d)?;
    let inv = zero_cusp_invariants(d)?;
    let (n, d0) = (inv[0].n, inv[0].d0);
    let checks = vec![
        CheckOutcome::new("count equals the number of classes", count == inv.len() as u64),
        CheckOutcome::new("every δ* is isotropic", inv.iter().all(|c| is_isotropic(d, c.delta_star))),
    ];
    let mut text = format!("d = {d} = {n}²·{d0}: {count} zero-dimensional cusps\n  q  δ*\n");
    for c in &inv {
        writeln!(text, "  {}  {}", c.q, c.delta_star).unwrap();
    }
    let cusps: Vec<Value> = inv.iter().map(|c| json!({ "q": c.q, "delta_star": c.delta_star })).collect();
    let results = json!({ "d": d, "N": n, "d0": d0, "count": count, "cusps": cusps });
    Ok(Outcome { results, checks, text })
}

pub fn yz(dmax: usize, oracle: bool) -> Result<Outcome> {
    let n = yz_counts(dmax);
    let mut checks = vec![CheckOutcome::new("n_d > 0", n.iter().all(|x| x > &BigInt::from(0)))];
    if oracle {
        let p = colored_partitions_table(dmax + 1, 24);
        let bad: Vec<usize> = (0..=dmax).filter(|&d| n[d] != p[d + 1]).collect();
        checks.push(
            CheckOutcome::new("n_d equals the number of 24-coloured partitions of d + 1", bad.is_empty())
                .detail(format!("mismatches at {bad:?}")),
        );
    }
    let mut text = String::new();
    for (d, x) in n.iter().enumerate() {
        writeln!(text, "n_{d} = {x}").unwrap();
    }
    let counts: Vec<Value> = n.iter().enumerate().map(|(d, x)| json!({ "d": d, "n": int(x) })).collect();
    Ok(Outcome { results: json!({ "counts": counts }), checks, text })
}

/// `H(n)` written as `H(n)`.
fn parse_h_n(spec: &str) -> Option<u64> {
    spec.trim().strip_prefix("H(")?.strip_suffix(')')?.trim().parse().ok()
}

fn describe_origin(o: &WallOrigin) -> String {
    match o {
        WallOrigin::Hn { a, b } => format!("a={a} b={b}"),
        WallOrigin::Root { beta } => format!("root ({},{})", beta[0], beta[1]),
        WallOrigin::Dual { pairing, norm } => format!("dual ({},{}) norm {norm}", pairing[0], pairing[1]),
    }
}

fn wall_checks(w: &WallSet) -> Result<Vec<CheckOutcome>> {
    let mut positive = true;
    for wall in &w.walls {
        positive &= w.lattice.norm(&wall.ray)? > BigInt::from(0);
    }
    Ok(vec![CheckOutcome::new("walls meet the positive cone", positive)])
}

pub fn walls(spec: &str, bound: Option<u64>, digest: &mut InputDigest) -> Result<Outcome> {
    let (w, mut checks) = if let Some(n) = parse_h_n(spec) {
        let w = h_n_walls(n)?;
        let mut checks = wall_checks(&w)?;
        if let Some(b) = bound {
            let r = rank2_walls(&hyperbolic_twisted(&BigInt::from(n))?, b)?;
            let same = r.walls.iter().map(|x| &x.ray).eq(w.walls.iter().map(|x| &x.ray));
            checks.push(CheckOutcome::new(format!("agrees with the dual-vector enumeration at bound {b}"), same));
        }
        (w, checks)
    } else {
        let path = Path::new(spec);
        let l = lattice_from_json(&read_input(path, digest)?).map_err(|e| in_file(path, e))?;
        let w = rank2_walls(&l, bound.unwrap_or(10))?;
        let checks = wall_checks(&w)?;
        (w, checks)
    };
    let mut text = format!("{} walls, {} chambers\n", w.walls.len(), w.chamber_count);
    for wall in &w.walls {
        let origins: Vec<String> = wall.origins.iter().map(describe_origin).collect();
        writeln!(text, "  ({},{})  {}", wall.ray[0], wall.ray[1], origins.join("; ")).unwrap();
    }
    if let Some(a) = w.assumption {
        writeln!(text, "({a})").unwrap();
    }
    checks.push(CheckOutcome::new("chamber count is walls + 1", w.chamber_count == w.walls.len() + 1));
    Ok(Outcome { results: serde_json::to_value(&w).expect("plain data"), checks, text })
}

fn load_lattice(spec: &str, digest: &mut InputDigest) -> Result<IntegerLattice> {
    let path = Path::new(spec);
    if path.exists() {
        lattice_from_json(&read_input(path, digest)?).map_err(|e| in_file(path, e))
    } else {
        parse_lattice_name(spec).map_err(|e| Error::Malformed(format!("'{spec}' is neither a file nor a lattice name: {e}")))
    }
}

pub fn monodromy(lattice: &str, delta: &str, lambda: &str, digest: &mut InputDigest) -> Result<Outcome> {
    let l = load_lattice(lattice, digest)?;
    let (delta, lambda) = (parse_vector(delta)?, parse_vector(lambda)?);
    let m = MonodromyData::new(l, delta, lambda)?;
    let g = m.ambient.gram();
    let n = monodromy_operator(&m);
    let n2 = n.mul(&n)?;
    let t2 = m.t();
    let ty = k3lattice::kulikov::classify_type(&m)?;
    let k = m.k()?;
    let mut checks = vec![
        CheckOutcome::new("N is skew for the form", n.transpose().mul(g)?.add(&g.mul(&n)?)?.is_zero()),
        CheckOutcome::new("N³ = 0", n2.mul(&n)?.is_zero()),
        CheckOutcome::new("N² = 0 exactly when λ² = 0", n2.is_zero() == (t2 == BigInt::from(0))),
    ];
    let t = match picard_lefschetz_t(&m) {
        Ok(t) => {
            checks.push(CheckOutcome::new("T is an isometry", t.transpose().mul(g)?.mul(&t)? == *g));
            let u = t.sub(&IntMatrix::identity(t.nrows()))?;
            checks.push(CheckOutcome::new("T is unipotent", u.mul(&u)?.mul(&u)?.is_zero()));
            matrix(&t)
        }
        Err(e) => {
            checks.push(CheckOutcome::new("T is integral", false).detail(e.to_string()));
            Value::Null
        }
    };
    let k_str = k.as_ref().map_or("undefined".to_string(), ToString::to_string);
    let text = format!("type {ty:?}, λ² = {t2}, k = {k_str}\n");
    let results = json!({
        "type": ty,
        "lambda_squared": int(&t2),
        "k": k.as_ref().map(int),
        "N": matrix(&n),
        "T": t,
    });
    Ok(Outcome { results, checks, text })
}

pub fn fixture(name: &str) -> Result<Outcome> {
    let cfg = fixtures::by_name(name).ok_or_else(|| {
        Error::InvalidArgument(format!("unknown fixture '{name}' (known: {})", fixtures::NAMES.join(", ")))
    })?;
    let rep = validate(&cfg)?;
    Ok(Outcome {
        results: json!({ "name": name, "config": config_to_doc(&cfg) }),
        checks: validation_checks(&rep),
        text: config_to_json_pretty(&cfg) + "\n",
    })
}
