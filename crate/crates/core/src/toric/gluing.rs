use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::homology::{homology, ChainMap, TwoTermComplex};
use crate::kulikov::{restriction_matrix, KulikovConfig, KulikovType, Orientation, PairData};
use crate::lattice::IntegerLattice;
use crate::linalg::{solve_rational, IntMatrix};

use super::{OrderedToricModel, Ray};

/// `𝒢₀ → 𝒢₁` with `𝒢₀ = ⊕ Z E_ik ⊕ ⊕ Z D_e` and `𝒢₁ = ⊕ N_i`.
#[derive(Clone, Debug)]
pub struct GluingComplexData {
    pub complex: TwoTermComplex,
    /// `(component, blow-up index)` of each `E` column, in column order.
    pub blowup_columns: Vec<(usize, usize)>,
    /// Column of the first edge generator `D_e`.
    pub edge_offset: usize,
}

impl GluingComplexData {
    pub fn edge_column(&self, e: usize) -> usize {
        self.edge_offset + e
    }
}

/// `𝒢̃` together with the chain maps `𝒢 → 𝒢̃` and `𝒫 → 𝒢̃`.
#[derive(Clone, Debug)]
pub struct IntermediateComplex {
    pub complex: TwoTermComplex,
    pub from_gluing: ChainMap,
    pub from_period: ChainMap,
}

struct Models<'a> {
    models: Vec<&'a OrderedToricModel>,
    pairs: Vec<PairData>,
}

fn models(cfg: &KulikovConfig) -> Result<Models<'_>> {
    if cfg.kind != KulikovType::III {
        return Err(Error::InvalidArgument(format!("gluing complexes need a Type III configuration, got Type {}", cfg.kind)));
    }
    cfg.check_incidence()?;
    let mut models = Vec::with_capacity(cfg.components.len());
    let mut pairs = Vec::with_capacity(cfg.components.len());
    for (i, p) in cfg.components.iter().enumerate() {
        let m = p
            .toric_model
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument(format!("component {i} has no ordered toric model")))?;
        let q = m.pair_data()?;
        let mismatch = |what: &str| Error::Validation(format!("component {i}: toric model disagrees with the pair data ({what})"));
        if q.boundary_count() != p.boundary_count() {
            return Err(mismatch("number of boundary curves"));
        }
        if q.self_ints != p.self_ints {
            return Err(mismatch("boundary self-intersections"));
        }
        if q.h2.rank() != p.h2.rank() {
            return Err(mismatch("rank of H2"));
        }
        if q.h2.determinant().magnitude() != p.h2.determinant().magnitude() {
            return Err(mismatch("discriminant of H2"));
        }
        models.push(m);
        pairs.push(q);
    }
    Ok(Models { models, pairs })
}

/// `w⁻¹: N → M ≅ N`, the quarter turn fixed by the orientation.
fn w_inv(orientation: Orientation, v: Ray) -> [i64; 2] {
    match orientation {
        Orientation::Ccw => [v[1], -v[0]],
        Orientation::Cw => [-v[1], v[0]],
    }
}

fn add_ray(m: &mut IntMatrix, row: usize, col: usize, r: [i64; 2]) {
    m[(row, col)] += r[0];
    m[(row + 1, col)] += r[1];
}

pub fn gluing_complex(cfg: &KulikovConfig) -> Result<GluingComplexData> {
    let md = models(cfg)?;
    let blowup_columns: Vec<(usize, usize)> =
        md.models.iter().enumerate().flat_map(|(i, m)| (0..m.blowups.len()).map(move |k| (i, k))).collect();
    let edge_offset = blowup_columns.len();
    let mut d = IntMatrix::zeros(2 * cfg.components.len(), edge_offset + cfg.edges.len());
    for (col, &(i, k)) in blowup_columns.iter().enumerate() {
        let m = md.models[i];
        add_ray(&mut d, 2 * i, col, w_inv(cfg.orientation, m.base.rays()[m.blowups[k]]));
    }
    for (e, edge) in cfg.edges.iter().enumerate() {
        for (c, b) in [edge.end(0), edge.end(1)] {
            add_ray(&mut d, 2 * c, edge_offset + e, w_inv(cfg.orientation, md.models[c].base.rays()[b]));
        }
    }
    Ok(GluingComplexData { complex: TwoTermComplex::new(d, None)?, blowup_columns, edge_offset })
}

/// The configuration with every component replaced by its toric model's
/// pair data, so that `H²` is written in the model basis.
fn model_config(cfg: &KulikovConfig, md: &Models) -> KulikovConfig {
    KulikovConfig { components: md.pairs.clone(), ..cfg.clone() }
}

/// `𝒫₀ = ⊕ H²(V_i) → 𝒫₁ = Z^{edges}`, the signed restriction map, with the
/// intersection form on `𝒫₀`.
pub fn period_complex(cfg: &KulikovConfig) -> Result<TwoTermComplex> {
    let md = models(cfg)?;
    period_from_models(cfg, &md)
}

fn period_from_models(cfg: &KulikovConfig, md: &Models) -> Result<TwoTermComplex> {
    let mc = model_config(cfg, md);
    let r = restriction_matrix(&mc)?;
    let grams: Vec<&IntMatrix> = md.pairs.iter().map(|p| p.h2.gram()).collect();
    TwoTermComplex::new(r, Some(IntMatrix::block_diag(&grams)))
}

pub fn intermediate_complex(cfg: &KulikovConfig) -> Result<IntermediateComplex> {
    let md = models(cfg)?;
    let g = gluing_complex(cfg)?;
    let p = period_from_models(cfg, &md)?;
    let nc = cfg.components.len();
    let ne = cfg.edges.len();

    // 𝒢̃₀ columns per component: D̄_i0 .. D̄_i(n−1), then E_i0 .. E_i(Q−1).
    let mut tilde_offsets = Vec::with_capacity(nc);
    let mut total = 0;
    for m in &md.models {
        tilde_offsets.push(total);
        total += m.base.len() + m.blowups.len();
    }
    let n_row = |i: usize| ne + 2 * i;
    let mut d = IntMatrix::zeros(ne + 2 * nc, total);
    for (i, m) in md.models.iter().enumerate() {
        let n = m.base.len();
        for (b, ray) in m.base.rays().iter().enumerate() {
            add_ray(&mut d, n_row(i), tilde_offsets[i] + b, w_inv(cfg.orientation, *ray));
        }
        for (k, &b) in m.blowups.iter().enumerate() {
            add_ray(&mut d, n_row(i), tilde_offsets[i] + n + k, w_inv(cfg.orientation, m.base.rays()[b]));
        }
    }
    for (e, edge) in cfg.edges.iter().enumerate() {
        let (src, tgt) = edge.oriented();
        d[(e, tilde_offsets[src.0] + src.1)] += 1;
        d[(e, tilde_offsets[tgt.0] + tgt.1)] -= 1;
    }
    let tilde = TwoTermComplex::new(d, None)?;

    // 𝒢 → 𝒢̃: E ↦ E, D_e ↦ D̄ at both ends; on degree 1 the inclusion of ⊕ N_i.
    let mut f0 = IntMatrix::zeros(total, g.complex.c0());
    for (col, &(i, k)) in g.blowup_columns.iter().enumerate() {
        f0[(tilde_offsets[i] + md.models[i].base.len() + k, col)] += 1;
    }
    for (e, edge) in cfg.edges.iter().enumerate() {
        for (c, b) in [edge.end(0), edge.end(1)] {
            f0[(tilde_offsets[c] + b, g.edge_column(e))] += 1;
        }
    }
    let f1 = IntMatrix::from_fn(ne + 2 * nc, 2 * nc, |r, c| BigInt::from((r == ne + c) as i64));
    let from_gluing = ChainMap::new(g.complex, tilde.clone(), f0, f1)?;

    // 𝒫 → 𝒢̃: α ↦ Σ (α·D_b) D̄_b + Σ (α·E_k) E_k; on degree 1 the inclusion of Z^{edges}.
    let mut p_offsets = Vec::with_capacity(nc);
    let mut p_total = 0;
    for q in &md.pairs {
        p_offsets.push(p_total);
        p_total += q.h2.rank();
    }
    let mut f0 = IntMatrix::zeros(total, p_total);
    for (i, (m, q)) in md.models.iter().zip(&md.pairs).enumerate() {
        let n = m.base.len();
        for (b, db) in q.boundary.iter().enumerate() {
            for (t, x) in q.h2.pairings(db)?.into_iter().enumerate() {
                f0[(tilde_offsets[i] + b, p_offsets[i] + t)] = x;
            }
        }
        let g = q.h2.gram();
        for k in 0..m.blowups.len() {
            let row = m.exceptional_offset() + k;
            for t in 0..q.h2.rank() {
                f0[(tilde_offsets[i] + n + k, p_offsets[i] + t)] = g[(row, t)].clone();
            }
        }
    }
    let f1 = IntMatrix::from_fn(ne + 2 * nc, ne, |r, c| BigInt::from((r == c) as i64));
    let from_period = ChainMap::new(p, tilde.clone(), f0, f1)?;

    Ok(IntermediateComplex { complex: tilde, from_gluing, from_period })
}

/// The intersection form on `H⁰(𝒢)`, computed directly from the toric data
/// in the basis returned by `homology(&gluing_complex(cfg)?.complex)`.
///
/// A cycle `Σ y_k E_k + Σ x_e D_e` determines on each component the class
/// `α = π*L̄ + Σ c_k E_k` with `c_k = −y_k` and `L̄·D̄_b = x_b + Σ_{k on b} y_k`.
pub fn independent_h0_form(cfg: &KulikovConfig) -> Result<IntegerLattice> {
    let md = models(cfg)?;
    let g = gluing_complex(cfg)?;
    let h = homology(&g.complex);
    let basis = h.h0_basis();
    let nc = cfg.components.len();

    // For each basis cycle and component: the degrees d_b, a rational
    // solution z of (divisor Gram) z = d, and the exceptional coefficients c_k.
    struct Local {
        d: Vec<BigInt>,
        z: Vec<BigRational>,
        c: Vec<BigInt>,
    }
    let mut grams: Vec<IntMatrix> = Vec::with_capacity(nc);
    for m in &md.models {
        let s = m.base.self_intersections();
        let n = s.len();
        let mut gm = IntMatrix::zeros(n, n);
        for j in 0..n {
            gm[(j, j)] = BigInt::from(s[j]);
            let k = (j + 1) % n;
            gm[(j, k)] += 1;
            gm[(k, j)] += 1;
        }
        grams.push(gm);
    }
    // Boundary curve (component, b) belongs to exactly one edge end.
    let mut edge_at = vec![Vec::new(); nc];
    for (i, m) in md.models.iter().enumerate() {
        edge_at[i] = vec![None; m.base.len()];
    }
    for (e, edge) in cfg.edges.iter().enumerate() {
        for (c, b) in [edge.end(0), edge.end(1)] {
            edge_at[c][b] = Some(e);
        }
    }

    let mut locals: Vec<Vec<Local>> = Vec::with_capacity(basis.nrows());
    for cycle in basis.rows_iter() {
        let mut per = Vec::with_capacity(nc);
        let mut col = 0;
        for (i, m) in md.models.iter().enumerate() {
            let y: Vec<BigInt> = cycle[col..col + m.blowups.len()].to_vec();
            col += m.blowups.len();
            let mut d: Vec<BigInt> =
                edge_at[i].iter().map(|e| e.map_or_else(BigInt::zero, |e| cycle[g.edge_column(e)].clone())).collect();
            for (k, &b) in m.blowups.iter().enumerate() {
                d[b] += &y[k];
            }
            let z = solve_rational(&grams[i], &d)
                .ok_or_else(|| Error::Validation(format!("component {i}: degrees of a cycle do not come from Pic")))?;
            let c = y.iter().map(|v| -v).collect();
            per.push(Local { d, z, c });
        }
        locals.push(per);
    }

    let r = basis.nrows();
    let mut out = IntMatrix::zeros(r, r);
    for a in 0..r {
        for b in a..r {
            let mut v = BigRational::zero();
            for i in 0..nc {
                let (la, lb) = (&locals[a][i], &locals[b][i]);
                for (z, d) in la.z.iter().zip(&lb.d) {
                    v += z * BigRational::from_integer(d.clone());
                }
                for (x, y) in la.c.iter().zip(&lb.c) {
                    v -= BigRational::from_integer(x * y);
                }
            }
            if !v.is_integer() {
                return Err(Error::Validation("the form on H0 of the gluing complex is not integral".into()));
            }
            out[(a, b)] = v.to_integer();
            out[(b, a)] = out[(a, b)].clone();
        }
    }
    IntegerLattice::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::is_quasi_iso;
    use crate::toric::ToricPairFan;

    fn single(model: OrderedToricModel) -> KulikovConfig {
        KulikovConfig {
            kind: KulikovType::III,
            components: vec![model.pair_data().unwrap()],
            edges: vec![],
            triangles: vec![],
            orientation: Orientation::Ccw,
        }
    }

    fn p1p1() -> ToricPairFan {
        ToricPairFan::new(vec![[1, 0], [0, 1], [-1, 0], [0, -1]]).unwrap()
    }

    #[test]
    fn toric_component_without_blowups() {
        let cfg = single(OrderedToricModel::new(p1p1(), vec![]).unwrap());
        let g = gluing_complex(&cfg).unwrap();
        assert_eq!(g.complex.c0(), 0);
        assert_eq!(g.complex.c1(), 2);
    }

    #[test]
    fn one_internal_blowup_column() {
        let cfg = single(OrderedToricModel::new(p1p1(), vec![1]).unwrap());
        let g = gluing_complex(&cfg).unwrap();
        assert_eq!(g.complex.c0(), 1);
        // ray (0,1) under the quarter turn
        assert_eq!(g.complex.boundary.column(0), vec![BigInt::from(1), BigInt::from(0)]);
        let mut cw = cfg.clone();
        cw.orientation = Orientation::Cw;
        let g2 = gluing_complex(&cw).unwrap();
        assert_eq!(g2.complex.boundary, g.complex.boundary.scale(&BigInt::from(-1)));
    }

    #[test]
    fn chain_maps_on_a_single_component() {
        let cfg = single(OrderedToricModel::new(p1p1(), vec![0, 0, 2]).unwrap());
        let ic = intermediate_complex(&cfg).unwrap();
        assert!(is_quasi_iso(&ic.from_period));
        // H⁰(𝒢) = 0 while H⁰(𝒫) = H²(V) has rank 5; the maps are still chain maps.
        assert!(!is_quasi_iso(&ic.from_gluing));
    }

    #[test]
    fn rejects_missing_models_and_other_types() {
        let mut cfg = single(OrderedToricModel::new(p1p1(), vec![]).unwrap());
        cfg.components[0].toric_model = None;
        assert!(gluing_complex(&cfg).is_err());
        let mut cfg = single(OrderedToricModel::new(p1p1(), vec![]).unwrap());
        cfg.kind = KulikovType::II;
        assert!(period_complex(&cfg).is_err());
    }

    #[test]
    fn inconsistent_model_is_rejected() {
        let mut cfg = single(OrderedToricModel::new(p1p1(), vec![0]).unwrap());
        cfg.components[0].toric_model = Some(OrderedToricModel::new(p1p1(), vec![1]).unwrap());
        assert!(matches!(gluing_complex(&cfg), Err(Error::Validation(_))));
    }
}
