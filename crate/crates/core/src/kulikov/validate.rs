use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};

use super::config::{KulikovConfig, KulikovType};
use super::pair::{charge, BoundaryKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// Where the check failed, e.g. `component 3` or `edge 7`.
    pub location: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub kind: String,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    pub charges: Vec<Option<i64>>,
    pub total_charge: Option<i64>,
    pub triple_points: Option<usize>,
    pub euler_characteristic: Option<i64>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, location: impl Into<String>, message: impl Into<String>) {
        self.failures.push(Failure { location: location.into(), message: message.into() });
    }
}

pub const TOTAL_CHARGE: i64 = 24;

/// Checks the dual complex, the double-curve identities, the pair data of
/// each component and conservation of charge. Semantic problems are
/// reported; only malformed incidence data is an error.
pub fn validate(cfg: &KulikovConfig) -> Result<ValidationReport> {
    cfg.check_incidence()?;
    let mut rep = ValidationReport {
        kind: cfg.kind.to_string(),
        failures: Vec::new(),
        notes: Vec::new(),
        charges: Vec::new(),
        total_charge: None,
        triple_points: None,
        euler_characteristic: None,
    };

    for (c, p) in cfg.components.iter().enumerate() {
        for msg in p.check() {
            rep.fail(format!("component {c}"), msg);
        }
        rep.charges.push(charge(p).ok());
    }
    if rep.charges.iter().all(Option::is_some) {
        let total = rep.charges.iter().map(|q| q.unwrap()).sum::<i64>();
        rep.total_charge = Some(total);
        if total != TOTAL_CHARGE && cfg.kind != KulikovType::I {
            rep.fail("configuration", format!("total charge is {total}, expected {TOTAL_CHARGE}"));
        }
    }

    // Every boundary component is glued along exactly one edge end.
    let mut uses: HashMap<(usize, usize), usize> = HashMap::new();
    for e in &cfg.edges {
        *uses.entry(e.end(0)).or_default() += 1;
        *uses.entry(e.end(1)).or_default() += 1;
    }
    if cfg.kind != KulikovType::I {
        for (c, p) in cfg.components.iter().enumerate() {
            for b in 0..p.boundary.len() {
                let u = uses.get(&(c, b)).copied().unwrap_or(0);
                if u != 1 {
                    rep.fail(format!("component {c}"), format!("boundary curve {b} is glued {u} times"));
                }
            }
        }
    }

    for (k, e) in cfg.edges.iter().enumerate() {
        let expected_genus = if cfg.kind == KulikovType::II { 1 } else { 0 };
        if e.genus != expected_genus {
            rep.fail(format!("edge {k}"), format!("genus {} in a Type {} configuration", e.genus, cfg.kind));
        }
        let s1 = cfg.components[e.i].self_ints[e.bi] as i128;
        let s2 = cfg.components[e.j].self_ints[e.bj] as i128;
        if s1 + s2 != 2 * e.genus as i128 - 2 {
            rep.fail(
                format!("edge {k}"),
                format!("D_ij² + D_ji² = {s1} + {s2} = {}, expected 2g-2 = {}", s1 + s2, 2 * e.genus - 2),
            );
        }
    }

    match cfg.kind {
        KulikovType::I => {
            rep.notes.push("no double curves: accepted as a degenerate Type I stand-in".into());
            if !cfg.edges.is_empty() || !cfg.triangles.is_empty() {
                rep.fail("configuration", "a Type I stand-in must not have edges or triangles");
            }
        }
        KulikovType::II => check_type_ii(cfg, &mut rep),
        KulikovType::III => check_type_iii(cfg, &mut rep),
    }
    Ok(rep)
}

fn check_type_ii(cfg: &KulikovConfig, rep: &mut ValidationReport) {
    let n = cfg.components.len();
    if !cfg.triangles.is_empty() {
        rep.fail("dual complex", "a Type II configuration has no triangles");
    }
    if n < 2 {
        rep.fail("dual complex", "a Type II chain needs at least two components");
        return;
    }
    if cfg.edges.len() != n - 1 {
        rep.fail("dual complex", format!("{} edges for {n} components; a chain has {}", cfg.edges.len(), n - 1));
    }
    let mut degree = vec![0usize; n];
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (k, e) in cfg.edges.iter().enumerate() {
        if e.is_loop() {
            rep.fail(format!("edge {k}"), "self-loop in a Type II chain");
            continue;
        }
        degree[e.i] += 1;
        degree[e.j] += 1;
        let (a, b) = (find(&mut parent, e.i), find(&mut parent, e.j));
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    if (0..n).any(|v| find(&mut parent, v) != root) {
        rep.fail("dual complex", "the chain is not connected");
    }
    for (c, p) in cfg.components.iter().enumerate() {
        let want = if degree[c] == 1 { BoundaryKind::SmoothElliptic } else { BoundaryKind::TwoElliptic };
        if degree[c] > 2 || degree[c] == 0 {
            rep.fail(format!("component {c}"), format!("has {} neighbours in a chain", degree[c]));
        } else if p.kind != want {
            rep.fail(format!("component {c}"), format!("boundary is {} but {} is required here", p.kind, want));
        }
    }
}

fn check_type_iii(cfg: &KulikovConfig, rep: &mut ValidationReport) {
    for (c, p) in cfg.components.iter().enumerate() {
        if p.kind != BoundaryKind::CycleOfRationals {
            rep.fail(format!("component {c}"), format!("boundary is {} in a Type III configuration", p.kind));
        }
    }
    let euler = cfg.euler_characteristic();
    rep.euler_characteristic = Some(euler);
    rep.triple_points = Some(cfg.triangles.len());
    if euler != 2 {
        rep.fail("dual complex", format!("V - E + F = {euler}, expected 2"));
    }
    if cfg.triangles.is_empty() {
        rep.fail("dual complex", "a Type III configuration needs triangles");
        return;
    }
    let resolved = match cfg.resolve_triangles() {
        Ok(r) => r,
        Err(msg) => {
            rep.fail("dual complex", msg);
            return;
        }
    };
    let mut on_triangles = vec![0usize; cfg.edges.len()];
    for t in &resolved {
        for &(e, _) in &t.sides {
            on_triangles[e] += 1;
        }
    }
    for (k, &count) in on_triangles.iter().enumerate() {
        if count != 2 {
            rep.fail(format!("edge {k}"), format!("lies on {count} triangles, expected 2"));
        }
    }
    // Triangle corners are exactly the nodes of the boundary cycles.
    let corners: usize = resolved.len() * 3;
    let nodes: usize = cfg.components.iter().map(|p| p.boundary.len()).sum();
    if corners != nodes {
        rep.fail("dual complex", format!("{corners} triangle corners but {nodes} nodes on the boundary cycles"));
    }
}

/// Number of triangles of a Type III dual complex.
pub fn triple_point_count(cfg: &KulikovConfig) -> Result<usize> {
    if cfg.kind != KulikovType::III {
        return Err(Error::InvalidArgument(format!("triple points are defined for Type III, not Type {}", cfg.kind)));
    }
    Ok(cfg.triangles.len())
}

/// `V − E + F = 2` for a Type III dual complex.
pub fn euler_check(cfg: &KulikovConfig) -> Result<bool> {
    triple_point_count(cfg)?;
    Ok(cfg.euler_characteristic() == 2)
}
