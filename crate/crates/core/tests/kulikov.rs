use k3lattice::fixtures::{cube, cube_component, cube_toric, rational_elliptic, type_ii_two_rational_elliptic};
use k3lattice::kulikov::{
    base_change_resolution, charge, euler_check, lambda_lattice, numerically_cartier_lattice, triple_point_count, validate,
    BoundaryKind, Edge, KulikovConfig, KulikovType, Orientation, PairData,
};
use k3lattice::lattice::{IntegerLattice, LatticeVector, Signature};
use k3lattice::Error;

fn sig(p: usize, n: usize) -> Signature {
    Signature { positive: p, negative: n, zero: 0 }
}

#[test]
fn charges_of_basic_pairs() {
    assert_eq!(charge(&cube_component()).unwrap(), 4);
    assert_eq!(charge(&rational_elliptic()).unwrap(), 12);
    assert_eq!(charge(&k3lattice::kulikov::elliptic_ruled(0)).unwrap(), 0);
    assert_eq!(charge(&k3lattice::kulikov::elliptic_ruled(3)).unwrap(), 0);
}

#[test]
fn nodal_curve_charge() {
    // A nodal cubic in P²: 11 − 9 = 2.
    let h2 = IntegerLattice::from_i64(&[&[1]]).unwrap();
    let p = PairData::new(h2, vec![LatticeVector::from_i64(&[3])], BoundaryKind::CycleOfRationals, 1).unwrap();
    assert_eq!(charge(&p).unwrap(), 2);
}

#[test]
fn charge_rejects_inconsistent_kind() {
    let mut p = rational_elliptic();
    p.kind = BoundaryKind::TwoElliptic;
    assert!(charge(&p).is_err());
}

#[test]
fn cube_is_valid() {
    let cfg = cube();
    let rep = validate(&cfg).unwrap();
    assert!(rep.is_valid(), "{:?}", rep.failures);
    assert_eq!(rep.charges, vec![Some(4); 6]);
    assert_eq!(rep.total_charge, Some(24));
    assert_eq!(triple_point_count(&cfg).unwrap(), 8);
    assert!(euler_check(&cfg).unwrap());
}

#[test]
fn cube_toric_is_valid() {
    let rep = validate(&cube_toric()).unwrap();
    assert!(rep.is_valid(), "{:?}", rep.failures);
    assert_eq!(rep.total_charge, Some(24));
}

#[test]
fn type_ii_is_valid() {
    let cfg = type_ii_two_rational_elliptic();
    let rep = validate(&cfg).unwrap();
    assert!(rep.is_valid(), "{:?}", rep.failures);
    assert_eq!(rep.charges, vec![Some(12), Some(12)]);
    assert!(triple_point_count(&cfg).is_err());
    assert!(euler_check(&cfg).is_err());
}

#[test]
fn perturbed_cube_fails() {
    let mut cfg = cube();
    cfg.components[0].self_ints[0] = -2;
    let rep = validate(&cfg).unwrap();
    assert!(!rep.is_valid());
    assert_eq!(rep.total_charge, Some(25));
    let edge = cfg.edges.iter().position(|e| (e.i == 0 && e.bi == 0) || (e.j == 0 && e.bj == 0)).unwrap();
    assert!(rep.failures.iter().any(|f| f.location == format!("edge {edge}")));
    assert!(rep.failures.iter().any(|f| f.message.contains("total charge is 25")));
}

#[test]
fn malformed_incidence_is_an_error() {
    let mut cfg = cube();
    cfg.edges[0].bi = 9;
    assert!(matches!(validate(&cfg), Err(Error::Malformed(_))));
    let mut cfg = cube();
    cfg.triangles[0][1] = 17;
    assert!(matches!(validate(&cfg), Err(Error::Malformed(_))));
}

#[test]
fn broken_triangulation_is_reported() {
    let mut cfg = cube();
    cfg.triangles.pop();
    let rep = validate(&cfg).unwrap();
    assert!(rep.failures.iter().any(|f| f.message.contains("V - E + F")));
    let mut cfg = cube();
    cfg.orientation = Orientation::Cw;
    assert!(!validate(&cfg).unwrap().is_valid());
}

/// Four copies of `P²` blown up at two points on each side of a triangle of
/// lines, glued along a tetrahedron.
fn tetrahedron() -> KulikovConfig {
    let mut g = vec![vec![0i64; 7]; 7];
    g[0][0] = 1;
    for (k, row) in g.iter_mut().enumerate().skip(1) {
        row[k] = -1;
    }
    let rows: Vec<&[i64]> = g.iter().map(Vec::as_slice).collect();
    let h2 = IntegerLattice::from_i64(&rows).unwrap();
    let boundary: Vec<LatticeVector> = (0..3)
        .map(|j| {
            let mut v = vec![0i64; 7];
            v[0] = 1;
            v[1 + 2 * j] = -1;
            v[2 + 2 * j] = -1;
            LatticeVector::from_i64(&v)
        })
        .collect();
    let comp = PairData::new(h2, boundary, BoundaryKind::CycleOfRationals, 1).unwrap();
    assert_eq!(comp.self_ints, vec![-1, -1, -1]);
    assert_eq!(charge(&comp).unwrap(), 6);
    let triangles = vec![[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]];
    // Neighbour order at each vertex, matching the face orientation.
    let nb: [[usize; 3]; 4] = [[1, 3, 2], [0, 2, 3], [0, 3, 1], [0, 1, 2]];
    let mut edges = Vec::new();
    for i in 0..4 {
        for (bi, &j) in nb[i].iter().enumerate() {
            if i < j {
                let bj = nb[j].iter().position(|&x| x == i).unwrap();
                edges.push(Edge::new(i, j, bi, bj, 0));
            }
        }
    }
    KulikovConfig { kind: KulikovType::III, components: vec![comp; 4], edges, triangles, orientation: Orientation::Ccw }
}

#[test]
fn tetrahedral_dual_complex() {
    let cfg = tetrahedron();
    assert_eq!(triple_point_count(&cfg).unwrap(), 4);
    assert!(euler_check(&cfg).unwrap());
    let rep = validate(&cfg).unwrap();
    assert_eq!(rep.total_charge, Some(24));
    assert!(rep.is_valid(), "{:?}", rep.failures);
    let lam = lambda_lattice(&cfg).unwrap();
    assert!(lam.passed(), "{:?}", lam.failures);
    assert_eq!(lam.lambda.as_ref().unwrap().rank(), 19);
}

#[test]
fn cube_base_changes() {
    let cfg = cube();
    assert_eq!(base_change_resolution(&cfg, 1).unwrap(), cfg);
    assert!(base_change_resolution(&cfg, 0).is_err());
    for k in [2usize, 3] {
        let bc = base_change_resolution(&cfg, k).unwrap();
        let rep = validate(&bc).unwrap();
        assert!(rep.is_valid(), "k = {k}: {:?}", rep.failures);
        assert_eq!(rep.total_charge, Some(24));
        assert_eq!(triple_point_count(&bc).unwrap(), 8 * k * k);
        // Vertices of a k-fold subdivided octahedron: 4k² + 2.
        assert_eq!(bc.components.len(), 4 * k * k + 2);
        for p in &bc.components[6..] {
            assert_eq!(charge(p).unwrap(), 0);
        }
    }
}

#[test]
fn base_change_composes() {
    let twice = base_change_resolution(&base_change_resolution(&cube(), 2).unwrap(), 2).unwrap();
    let direct = base_change_resolution(&cube(), 4).unwrap();
    assert_eq!(twice.triangles.len(), direct.triangles.len());
    assert_eq!(twice.components.len(), direct.components.len());
}

#[test]
fn base_change_of_type_ii() {
    let cfg = type_ii_two_rational_elliptic();
    let bc = base_change_resolution(&cfg, 3).unwrap();
    assert_eq!(bc.components.len(), 4);
    let rep = validate(&bc).unwrap();
    assert!(rep.is_valid(), "{:?}", rep.failures);
    assert_eq!(rep.charges, vec![Some(12), Some(12), Some(0), Some(0)]);
    let lam = lambda_lattice(&bc).unwrap();
    assert!(lam.passed(), "{:?}", lam.failures);
    assert_eq!(lam.signature(), Some(sig(1, 17)));
}

#[test]
fn base_change_rejects_invalid_input() {
    let mut cfg = cube();
    cfg.components[0].self_ints[0] = -2;
    assert!(matches!(base_change_resolution(&cfg, 2), Err(Error::Validation(_))));
}

#[test]
fn numerically_cartier_ranks() {
    let nc = numerically_cartier_lattice(&cube()).unwrap();
    assert_eq!(nc.lattice.rank(), 24);
    assert_eq!(nc.restriction.nrows(), 12);
    let nc2 = numerically_cartier_lattice(&type_ii_two_rational_elliptic()).unwrap();
    assert_eq!(nc2.lattice.rank(), 19);
}

#[test]
fn type_i_stand_in() {
    let cfg = KulikovConfig {
        kind: KulikovType::I,
        components: vec![cube_component()],
        edges: vec![],
        triangles: vec![],
        orientation: Orientation::Ccw,
    };
    let rep = validate(&cfg).unwrap();
    assert!(rep.is_valid());
    assert!(!rep.notes.is_empty());
    let nc = numerically_cartier_lattice(&cfg).unwrap();
    assert_eq!(nc.lattice.gram(), cfg.components[0].h2.gram());
}

#[test]
fn lambda_of_fixtures() {
    let cube_lambda = lambda_lattice(&cube()).unwrap();
    assert!(cube_lambda.passed(), "{:?}", cube_lambda.failures);
    assert!(cube_lambda.torsion_free && cube_lambda.xi_is_radical && cube_lambda.xi_sum_zero);
    assert_eq!(cube_lambda.radical_rank, 5);
    assert_eq!(cube_lambda.signature(), Some(sig(1, 18)));

    let ii = lambda_lattice(&type_ii_two_rational_elliptic()).unwrap();
    assert!(ii.passed(), "{:?}", ii.failures);
    assert_eq!(ii.signature(), Some(sig(1, 17)));

    let bc = lambda_lattice(&base_change_resolution(&cube(), 2).unwrap()).unwrap();
    assert!(bc.passed(), "{:?}", bc.failures);
    assert_eq!(bc.signature(), Some(sig(1, 18)));
}

#[test]
fn edge_orientation_does_not_change_lambda() {
    let mut cfg = cube();
    for e in cfg.edges.iter_mut().step_by(3) {
        e.reversed = true;
    }
    let a = lambda_lattice(&cube()).unwrap().lambda.unwrap();
    let b = lambda_lattice(&cfg).unwrap().lambda.unwrap();
    assert_eq!(a.determinant(), b.determinant());
    assert_eq!(a.signature(), b.signature());
}
