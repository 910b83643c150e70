use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

use super::pair::PairData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KulikovType {
    /// No double curves. Only accepted as a degenerate test input.
    I,
    II,
    III,
}

impl KulikovType {
    pub fn as_str(self) -> &'static str {
        match self {
            KulikovType::I => "I",
            KulikovType::II => "II",
            KulikovType::III => "III",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "I" => Ok(KulikovType::I),
            "II" => Ok(KulikovType::II),
            "III" => Ok(KulikovType::III),
            _ => Err(Error::Malformed(format!("unknown Kulikov type '{s}'"))),
        }
    }
}

impl fmt::Display for KulikovType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Ccw,
    Cw,
}

impl Orientation {
    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::Ccw => "ccw",
            Orientation::Cw => "cw",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "ccw" => Ok(Orientation::Ccw),
            "cw" => Ok(Orientation::Cw),
            _ => Err(Error::Malformed(format!("unknown orientation '{s}'"))),
        }
    }
}

/// A double curve: boundary component `bi` of `V_i` glued to `bj` of `V_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub bi: usize,
    pub bj: usize,
    pub genus: i64,
    /// Flips the default orientation (from lower to higher component index)
    /// used for signed restriction maps.
    pub reversed: bool,
}

/// One end of an edge: a component and one of its boundary indices.
pub type EdgeEnd = (usize, usize);

impl Edge {
    pub fn new(i: usize, j: usize, bi: usize, bj: usize, genus: i64) -> Self {
        Edge { i, j, bi, bj, genus, reversed: false }
    }

    pub fn end(&self, which: usize) -> EdgeEnd {
        if which == 0 {
            (self.i, self.bi)
        } else {
            (self.j, self.bj)
        }
    }

    pub fn is_loop(&self) -> bool {
        self.i == self.j
    }

    /// `(source, target)` under the edge orientation.
    pub fn oriented(&self) -> (EdgeEnd, EdgeEnd) {
        let forward = (self.i <= self.j) != self.reversed;
        if forward {
            (self.end(0), self.end(1))
        } else {
            (self.end(1), self.end(0))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KulikovConfig {
    pub kind: KulikovType,
    pub components: Vec<PairData>,
    pub edges: Vec<Edge>,
    /// Vertex triples, listed in the orientation of the dual complex.
    pub triangles: Vec<[usize; 3]>,
    pub orientation: Orientation,
}

/// A triangle of the dual complex with each side matched to an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolvedTriangle {
    pub vertices: [usize; 3],
    /// Side `s` joins `vertices[s]` to `vertices[s+1]`: `(edge, end at vertices[s])`.
    pub sides: [(usize, usize); 3],
}

impl ResolvedTriangle {
    /// Boundary index at `vertices[s]` of side `s`.
    pub fn out_index(&self, cfg: &KulikovConfig, s: usize) -> usize {
        let (e, end) = self.sides[s];
        cfg.edges[e].end(end).1
    }

    /// Boundary index at `vertices[s]` of side `s − 1`.
    pub fn in_index(&self, cfg: &KulikovConfig, s: usize) -> usize {
        let (e, end) = self.sides[(s + 2) % 3];
        cfg.edges[e].end(1 - end).1
    }
}

const RESOLVE_STEP_LIMIT: usize = 1_000_000;

impl KulikovConfig {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Index-level sanity of the incidence data. Failures here make the
    /// input malformed rather than merely invalid.
    pub fn check_incidence(&self) -> Result<()> {
        let n = self.components.len();
        for (c, p) in self.components.iter().enumerate() {
            let r = p.h2.rank();
            if let Some(b) = p.boundary.iter().position(|v| v.len() != r) {
                return Err(Error::Malformed(format!("component {c}: boundary class {b} does not have length {r}")));
            }
            if p.self_ints.len() != p.boundary.len() {
                return Err(Error::Malformed(format!(
                    "component {c}: {} self-intersections for {} boundary classes",
                    p.self_ints.len(),
                    p.boundary.len()
                )));
            }
        }
        for (k, e) in self.edges.iter().enumerate() {
            if e.i >= n || e.j >= n {
                return Err(Error::Malformed(format!("edge {k} joins missing components ({}, {})", e.i, e.j)));
            }
            if e.bi >= self.components[e.i].boundary.len() || e.bj >= self.components[e.j].boundary.len() {
                return Err(Error::Malformed(format!("edge {k} refers to a missing boundary component")));
            }
            if e.is_loop() && e.bi == e.bj {
                return Err(Error::Malformed(format!("edge {k} glues a boundary component to itself")));
            }
        }
        for (t, tri) in self.triangles.iter().enumerate() {
            if tri.iter().any(|&v| v >= n) {
                return Err(Error::Malformed(format!("triangle {t} refers to a missing component")));
            }
        }
        Ok(())
    }

    /// Matches triangle sides to edges so that consecutive sides at each
    /// corner are adjacent boundary curves in the orientation's order, and
    /// each corner of each cycle is used at most once.
    pub fn resolve_triangles(&self) -> std::result::Result<Vec<ResolvedTriangle>, String> {
        let mut options: Vec<Vec<[(usize, usize); 3]>> = Vec::with_capacity(self.triangles.len());
        for (t, tri) in self.triangles.iter().enumerate() {
            let cands: Vec<Vec<(usize, usize)>> = (0..3).map(|s| self.side_candidates(tri[s], tri[(s + 1) % 3])).collect();
            let mut combos = Vec::new();
            for &a in &cands[0] {
                for &b in &cands[1] {
                    for &c in &cands[2] {
                        let sides = [a, b, c];
                        let rt = ResolvedTriangle { vertices: *tri, sides };
                        if (0..3).all(|s| self.corner_ok(&rt, s)) {
                            combos.push(sides);
                        }
                    }
                }
            }
            if combos.is_empty() {
                return Err(format!("triangle {t} {tri:?}: no choice of edges is compatible with the boundary cycles"));
            }
            options.push(combos);
        }

        let mut chosen = Vec::with_capacity(options.len());
        let mut used = HashSet::new();
        let mut steps = 0usize;
        if self.search(&options, 0, &mut chosen, &mut used, &mut steps) {
            Ok(chosen.into_iter().zip(&self.triangles).map(|(sides, v)| ResolvedTriangle { vertices: *v, sides }).collect())
        } else if steps >= RESOLVE_STEP_LIMIT {
            Err("triangle resolution exceeded its search limit".into())
        } else {
            Err("triangles cannot be matched to edges using each corner once".into())
        }
    }

    fn search(
        &self,
        options: &[Vec<[(usize, usize); 3]>],
        t: usize,
        chosen: &mut Vec<[(usize, usize); 3]>,
        used: &mut HashSet<(usize, usize)>,
        steps: &mut usize,
    ) -> bool {
        if t == options.len() {
            return true;
        }
        for sides in &options[t] {
            *steps += 1;
            if *steps >= RESOLVE_STEP_LIMIT {
                return false;
            }
            let rt = ResolvedTriangle { vertices: self.triangles[t], sides: *sides };
            let corners: Vec<(usize, usize)> = (0..3).map(|s| (rt.vertices[s], rt.out_index(self, s))).collect();
            let distinct = corners.iter().collect::<HashSet<_>>().len() == 3;
            if !distinct || corners.iter().any(|c| used.contains(c)) {
                continue;
            }
            used.extend(corners.iter().copied());
            chosen.push(*sides);
            if self.search(options, t + 1, chosen, used, steps) {
                return true;
            }
            chosen.pop();
            for c in &corners {
                used.remove(c);
            }
        }
        false
    }

    fn side_candidates(&self, u: usize, w: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (k, e) in self.edges.iter().enumerate() {
            if e.i == u && e.j == w {
                out.push((k, 0));
            }
            if e.j == u && e.i == w {
                out.push((k, 1));
            }
        }
        out
    }

    fn corner_ok(&self, rt: &ResolvedTriangle, s: usize) -> bool {
        let v = rt.vertices[s];
        let n = self.components[v].boundary.len();
        if n == 0 {
            return false;
        }
        let (out, inn) = (rt.out_index(self, s), rt.in_index(self, s));
        match self.orientation {
            Orientation::Ccw => (out + 1) % n == inn,
            Orientation::Cw => (inn + 1) % n == out,
        }
    }

    /// Vertices, edges and faces of the dual complex.
    pub fn euler_characteristic(&self) -> i64 {
        self.components.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }
}
