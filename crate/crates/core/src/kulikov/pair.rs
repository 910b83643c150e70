use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::{IntegerLattice, LatticeVector, Signature};
use crate::toric::OrderedToricModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryKind {
    /// A cycle of smooth rational curves, or one nodal rational curve.
    CycleOfRationals,
    /// A single smooth elliptic curve.
    SmoothElliptic,
    /// Two disjoint elliptic curves (elliptic ruled surfaces).
    TwoElliptic,
}

impl BoundaryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundaryKind::CycleOfRationals => "cycle",
            BoundaryKind::SmoothElliptic => "smooth-elliptic",
            BoundaryKind::TwoElliptic => "two-elliptic",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "cycle" | "cycle-of-rationals" => Ok(BoundaryKind::CycleOfRationals),
            "smooth-elliptic" | "elliptic" => Ok(BoundaryKind::SmoothElliptic),
            "two-elliptic" => Ok(BoundaryKind::TwoElliptic),
            _ => Err(Error::Malformed(format!("unknown boundary kind '{s}'"))),
        }
    }

    /// Arithmetic genus of each boundary component when there are `n` of them.
    pub fn component_genus(self, n: usize) -> i64 {
        match self {
            BoundaryKind::CycleOfRationals if n >= 2 => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for BoundaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Intersection-theoretic data of an anticanonical pair `(V, D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairData {
    pub h2: IntegerLattice,
    /// Classes of the boundary components, in cyclic order for cycles.
    pub boundary: Vec<LatticeVector>,
    pub kind: BoundaryKind,
    /// Stored values of `D_j²`; `check` compares them with the classes.
    pub self_ints: Vec<i64>,
    pub chi_o: i64,
    pub label: Option<String>,
    pub toric_model: Option<OrderedToricModel>,
}

impl PairData {
    /// Builds pair data whose stored self-intersections are read off the classes.
    pub fn new(h2: IntegerLattice, boundary: Vec<LatticeVector>, kind: BoundaryKind, chi_o: i64) -> Result<Self> {
        let mut self_ints = Vec::with_capacity(boundary.len());
        for b in &boundary {
            let n = h2.norm(b)?;
            self_ints.push(i64::try_from(n).map_err(|_| Error::Overflow("boundary self-intersection"))?);
        }
        Ok(PairData { h2, boundary, kind, self_ints, chi_o, label: None, toric_model: None })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary.len()
    }

    /// `−K = Σ D_j`.
    pub fn anticanonical(&self) -> LatticeVector {
        self.boundary.iter().fold(LatticeVector::zero(self.h2.rank()), |acc, d| acc.add(d))
    }

    /// Consistency of the boundary count with the boundary kind.
    pub fn check_kind(&self) -> Result<()> {
        let n = self.boundary.len();
        let ok = match self.kind {
            BoundaryKind::CycleOfRationals => n >= 1,
            BoundaryKind::SmoothElliptic => n == 1,
            BoundaryKind::TwoElliptic => n == 2,
        };
        if ok && self.self_ints.len() == n {
            Ok(())
        } else {
            Err(Error::Validation(format!(
                "{} boundary classes and {} self-intersections for boundary kind {}",
                n,
                self.self_ints.len(),
                self.kind
            )))
        }
    }

    /// Failed consistency checks, as human-readable messages.
    pub fn check(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Err(e) = self.check_kind() {
            out.push(e.to_string());
            return out;
        }
        let r = self.h2.rank();
        if let Some(j) = self.boundary.iter().position(|b| b.len() != r) {
            out.push(format!("boundary class {j} has length {} but H2 has rank {r}", self.boundary[j].len()));
            return out;
        }
        if !self.h2.is_nondegenerate() {
            out.push("H2 form is degenerate".into());
        } else if r > 0 && self.h2.signature() != (Signature { positive: 1, negative: r - 1, zero: 0 }) {
            out.push(format!("H2 signature is {:?}, expected (1,{})", self.h2.signature(), r - 1));
        }
        let n = self.boundary.len();
        let genus = self.kind.component_genus(n);
        let k = self.anticanonical();
        for (j, d) in self.boundary.iter().enumerate() {
            let norm = self.h2.norm(d).unwrap();
            if norm != BigInt::from(self.self_ints[j]) {
                out.push(format!("D_{j}² is {norm} but the stored self-intersection is {}", self.self_ints[j]));
            }
            // adjunction: (−K)·D_j = D_j² + 2 − 2g
            let kd = self.h2.pair(&k, d).unwrap();
            if kd != &norm + 2 - 2 * genus {
                out.push(format!("adjunction fails on D_{j}: (-K)·D_j = {kd}, D_j² = {norm}, genus {genus}"));
            }
        }
        if self.kind == BoundaryKind::CycleOfRationals && n >= 2 {
            for a in 0..n {
                for b in a + 1..n {
                    let expect = match n {
                        2 => 2,
                        _ if b == a + 1 || (a == 0 && b == n - 1) => 1,
                        _ => 0,
                    };
                    let got = self.h2.pair(&self.boundary[a], &self.boundary[b]).unwrap();
                    if got != BigInt::from(expect) {
                        out.push(format!("D_{a}·D_{b} = {got}, expected {expect} in a cycle of length {n}"));
                    }
                }
            }
        }
        if self.kind == BoundaryKind::TwoElliptic {
            let got = self.h2.pair(&self.boundary[0], &self.boundary[1]).unwrap();
            if got != BigInt::from(0) {
                out.push(format!("the two elliptic boundary curves meet: D_0·D_1 = {got}"));
            }
        }
        out
    }
}

/// Charge `Q(V, D)`, computed from the stored self-intersections:
/// `12 + Σ(−3 − D_j²)` for a cycle of length ≥ 2, `11 − D²` for a nodal
/// curve, and `12χ(O_V) − D²` for smooth boundaries.
pub fn charge(p: &PairData) -> Result<i64> {
    p.check_kind()?;
    let s = &p.self_ints;
    let sum: i64 = s.iter().try_fold(0i64, |a, &x| a.checked_add(x)).ok_or(Error::Overflow("charge"))?;
    let q = match p.kind {
        BoundaryKind::CycleOfRationals if s.len() >= 2 => {
            (s.len() as i64).checked_mul(-3).and_then(|t| t.checked_sub(sum)).and_then(|t| t.checked_add(12))
        }
        BoundaryKind::CycleOfRationals => 11i64.checked_sub(sum),
        BoundaryKind::SmoothElliptic | BoundaryKind::TwoElliptic => {
            p.chi_o.checked_mul(12).and_then(|t| t.checked_sub(sum))
        }
    };
    q.ok_or(Error::Overflow("charge"))
}
