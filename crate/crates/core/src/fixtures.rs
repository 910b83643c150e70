//! Worked configurations: the cube Type III model (with and without toric
//! models) and a Type II chain of two rational elliptic surfaces.

use crate::kulikov::{BoundaryKind, Edge, KulikovConfig, KulikovType, Orientation, PairData};
use crate::lattice::{IntegerLattice, LatticeVector};
use crate::toric::{OrderedToricModel, ToricPairFan};

pub const NAMES: [&str; 3] = ["cube", "typeII_2re", "cube_toric"];

pub fn by_name(name: &str) -> Option<KulikovConfig> {
    match name {
        "cube" => Some(cube()),
        "typeII_2re" => Some(type_ii_two_rational_elliptic()),
        "cube_toric" => Some(cube_toric()),
        _ => None,
    }
}

type V3 = [i64; 3];

/// Octahedron vertices `+x, −x, +y, −y, +z, −z`.
const VERTS: [V3; 6] = [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]];

fn cross(a: V3, b: V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn neg(a: V3) -> V3 {
    [-a[0], -a[1], -a[2]]
}

fn vertex(p: V3) -> usize {
    VERTS.iter().position(|&v| v == p).expect("octahedron vertex")
}

/// Neighbours of a vertex, counterclockwise seen from outside.
fn neighbours(v: usize) -> [usize; 4] {
    let p = VERTS[v];
    let u = if p[0] != 0 {
        [0, 1, 0]
    } else if p[1] != 0 {
        [0, 0, 1]
    } else {
        [1, 0, 0]
    };
    let w = cross(p, u);
    [vertex(u), vertex(w), vertex(neg(u)), vertex(neg(w))]
}

/// `P¹ × P¹` blown up once on each boundary curve: basis `(a, b, E1..E4)`
/// and boundary `a − E1, b − E2, a − E3, b − E4`, all of square `−1`.
pub fn cube_component() -> PairData {
    let mut g = vec![vec![0i64; 6]; 6];
    g[0][1] = 1;
    g[1][0] = 1;
    for (k, row) in g.iter_mut().enumerate().skip(2) {
        row[k] = -1;
    }
    let rows: Vec<&[i64]> = g.iter().map(Vec::as_slice).collect();
    let h2 = IntegerLattice::from_i64(&rows).expect("symmetric");
    let boundary = (0..4)
        .map(|j| {
            let mut v = [0i64; 6];
            v[j % 2] = 1;
            v[2 + j] = -1;
            LatticeVector::from_i64(&v)
        })
        .collect();
    PairData::new(h2, boundary, BoundaryKind::CycleOfRationals, 1).expect("small entries")
}

fn octahedron(component: impl Fn(usize) -> PairData) -> KulikovConfig {
    let nb: Vec<[usize; 4]> = (0..6).map(neighbours).collect();
    let mut edges = Vec::new();
    for i in 0..6 {
        for (bi, &j) in nb[i].iter().enumerate() {
            if i < j {
                let bj = nb[j].iter().position(|&x| x == i).expect("symmetric adjacency");
                edges.push(Edge::new(i, j, bi, bj, 0));
            }
        }
    }
    let mut triangles = Vec::new();
    for &sx in &[1, -1] {
        for &sy in &[1, -1] {
            for &sz in &[1, -1] {
                let (a, b, c) = ([sx, 0, 0], [0, sy, 0], [0, 0, sz]);
                let n = cross([b[0] - a[0], b[1] - a[1], b[2] - a[2]], [c[0] - a[0], c[1] - a[1], c[2] - a[2]]);
                let outward = n[0] * sx + n[1] * sy + n[2] * sz > 0;
                triangles.push(if outward {
                    [vertex(a), vertex(b), vertex(c)]
                } else {
                    [vertex(a), vertex(c), vertex(b)]
                });
            }
        }
    }
    let names = ["+x", "-x", "+y", "-y", "+z", "-z"];
    KulikovConfig {
        kind: KulikovType::III,
        components: (0..6).map(|v| component(v).with_label(format!("V{}", names[v]))).collect(),
        edges,
        triangles,
        orientation: Orientation::Ccw,
    }
}

/// Six copies of `cube_component` glued along the faces of a cube; the dual
/// complex is the octahedron.
pub fn cube() -> KulikovConfig {
    octahedron(|_| cube_component())
}

pub fn cube_toric_model() -> OrderedToricModel {
    let fan = ToricPairFan::new(vec![[1, 0], [0, 1], [-1, 0], [0, -1]]).expect("P1 x P1").with_label("P1xP1");
    OrderedToricModel::new(fan, vec![0, 1, 2, 3]).expect("indices in range")
}

/// The cube with every component given by `cube_toric_model`.
pub fn cube_toric() -> KulikovConfig {
    octahedron(|_| cube_toric_model().pair_data().expect("toric model"))
}

/// A rational elliptic surface with its smooth anticanonical fibre:
/// `H² = ⟨1⟩ ⊕ ⟨−1⟩⁹`, `D = 3h − Σ e_k`.
pub fn rational_elliptic() -> PairData {
    let mut d = vec![-1i64; 10];
    d[0] = 3;
    let diag: Vec<i64> = (0..10).map(|k| if k == 0 { 1 } else { -1 }).collect();
    let g: Vec<Vec<i64>> = (0..10).map(|i| (0..10).map(|j| if i == j { diag[i] } else { 0 }).collect()).collect();
    let rows: Vec<&[i64]> = g.iter().map(Vec::as_slice).collect();
    let h2 = IntegerLattice::from_i64(&rows).expect("diagonal");
    PairData::new(h2, vec![LatticeVector::from_i64(&d)], BoundaryKind::SmoothElliptic, 1).expect("small entries")
}

/// Two rational elliptic surfaces glued along their anticanonical fibres.
pub fn type_ii_two_rational_elliptic() -> KulikovConfig {
    KulikovConfig {
        kind: KulikovType::II,
        components: vec![rational_elliptic().with_label("V0"), rational_elliptic().with_label("V1")],
        edges: vec![Edge::new(0, 1, 0, 0, 1)],
        triangles: vec![],
        orientation: Orientation::Ccw,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_neighbours() {
        assert_eq!(neighbours(0), [2, 4, 3, 5]);
        assert_eq!(neighbours(2), [4, 0, 5, 1]);
        assert_eq!(neighbours(4), [0, 2, 1, 3]);
    }

    #[test]
    fn shapes() {
        let c = cube();
        assert_eq!((c.components.len(), c.edges.len(), c.triangles.len()), (6, 12, 8));
        let t = type_ii_two_rational_elliptic();
        assert_eq!(t.components[0].self_ints, vec![0]);
        assert_eq!(cube_toric().components[0].self_ints, vec![-1; 4]);
        for name in NAMES {
            assert!(by_name(name).is_some());
        }
    }
}
