use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal, `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, in order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        diag_nonzero(&self.d)
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

fn diag_nonzero(d: &IntMatrix) -> Vec<BigInt> {
    (0..d.nrows().min(d.ncols())).map(|i| d[(i, i)].clone()).take_while(|x| !x.is_zero()).collect()
}

struct Transforms {
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

struct Calc {
    a: IntMatrix,
    t: Option<Transforms>,
}

impl Calc {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_rows(i, j);
        if let Some(t) = self.t.as_mut() {
            t.u.swap_rows(i, j);
            t.u_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_cols(i, j);
        if let Some(t) = self.t.as_mut() {
            t.v.swap_cols(i, j);
            t.v_inv.swap_rows(i, j);
        }
    }

    /// row[target] += c * row[source]
    fn add_row(&mut self, target: usize, source: usize, c: &BigInt) {
        self.a.add_row_multiple(target, source, c);
        if let Some(t) = self.t.as_mut() {
            t.u.add_row_multiple(target, source, c);
            t.u_inv.add_col_multiple(source, target, &-c);
        }
    }

    /// col[target] += c * col[source]
    fn add_col(&mut self, target: usize, source: usize, c: &BigInt) {
        self.a.add_col_multiple(target, source, c);
        if let Some(t) = self.t.as_mut() {
            t.v.add_col_multiple(target, source, c);
            t.v_inv.add_row_multiple(source, target, &-c);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(t) = self.t.as_mut() {
            t.u.negate_row(i);
            t.u_inv.negate_col(i);
        }
    }

    fn run(&mut self) {
        let (rows, cols) = (self.a.nrows(), self.a.ncols());
        for t in 0..rows.min(cols) {
            // smallest nonzero entry of the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &self.a[(i, j)];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < self.a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { return };
            self.swap_rows(t, bi);
            self.swap_cols(t, bj);

            loop {
                let mut dirty = false;
                for i in t + 1..rows {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
                    self.add_row(i, t, &-q);
                    dirty |= !self.a[(i, t)].is_zero();
                }
                for j in t + 1..cols {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
                    self.add_col(j, t, &-q);
                    dirty |= !self.a[(t, j)].is_zero();
                }
                if dirty {
                    // move the smallest remainder in row/column t onto the pivot
                    let mut best = (t, t);
                    for i in t + 1..rows {
                        let x = &self.a[(i, t)];
                        if !x.is_zero() && x.abs() < self.a[best].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..cols {
                        let x = &self.a[(t, j)];
                        if !x.is_zero() && x.abs() < self.a[best].abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // divisibility of the rest of the block
                let p = self.a[(t, t)].clone();
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !self.a[(i, j)].is_multiple_of(&p)));
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Smith normal form with unimodular transforms and their inverses.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.nrows(), m.ncols());
    let mut calc = Calc {
        a: m.clone(),
        t: Some(Transforms {
            u: IntMatrix::identity(r),
            u_inv: IntMatrix::identity(r),
            v: IntMatrix::identity(c),
            v_inv: IntMatrix::identity(c),
        }),
    };
    calc.run();
    let t = calc.t.unwrap();
    SmithForm { u: t.u, d: calc.a, v: t.v, u_inv: t.u_inv, v_inv: t.v_inv }
}

/// Nonzero invariant factors (including units) without computing transforms.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let mut calc = Calc { a: m.clone(), t: None };
    calc.run();
    diag_nonzero(&calc.a)
}

/// Description of the cokernel `Z^rows / im(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub free_rank: usize,
    /// Invariant factors ≥ 2, each dividing the next.
    pub torsion: Vec<BigInt>,
}

pub fn cokernel(m: &IntMatrix) -> Cokernel {
    let f = invariant_factors(m);
    let free_rank = m.nrows() - f.len();
    let torsion = f.into_iter().filter(|x| !x.is_one()).collect();
    Cokernel { free_rank, torsion }
}
