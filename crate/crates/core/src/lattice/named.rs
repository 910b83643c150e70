//! Standard lattices and a small grammar for naming them.
//!
//! Accepted names: `H`, `H(n)`, `E8`, `A2`, `LK3`, `L2d(d)`, `<n>` (rank one
//! with Gram `[n]`), and sums of these joined by `+` or `⊕`, optionally with
//! a multiplicity suffix `^k` (`E8^2`). Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntegerLattice;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

pub fn hyperbolic() -> IntegerLattice {
    IntegerLattice::from_i64(&[&[0, 1], &[1, 0]]).unwrap().with_label("H")
}

/// `H(n)`: basis `e, f` with `e² = f² = 0`, `e·f = n`.
pub fn hyperbolic_twisted(n: &BigInt) -> Result<IntegerLattice> {
    if !n.is_positive() {
        return Err(Error::InvalidArgument(format!("H(n) needs n >= 1, got {n}")));
    }
    let mut g = IntMatrix::zeros(2, 2);
    g[(0, 1)] = n.clone();
    g[(1, 0)] = n.clone();
    Ok(IntegerLattice::new(g)?.with_label(format!("H({n})")))
}

pub fn rank_one(n: i64) -> IntegerLattice {
    diagonal(&[BigInt::from(n)])
}

pub fn diagonal(entries: &[BigInt]) -> IntegerLattice {
    let label = entries.iter().map(|x| format!("<{x}>")).collect::<Vec<_>>().join("+");
    IntegerLattice::new(IntMatrix::diagonal(entries)).unwrap().with_label(label)
}

/// Negative of the A2 Cartan matrix.
pub fn a2() -> IntegerLattice {
    IntegerLattice::from_i64(&[&[-2, 1], &[1, -2]]).unwrap().with_label("A2")
}

/// Negative of the E8 Cartan matrix, Bourbaki numbering: simple roots
/// `a1..a8` with edges 1-3, 3-4, 4-5, 5-6, 6-7, 7-8 and 2-4.
pub fn e8() -> IntegerLattice {
    const EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    let mut g = IntMatrix::zeros(8, 8);
    for i in 0..8 {
        g[(i, i)] = BigInt::from(-2);
    }
    for (a, b) in EDGES {
        g[(a, b)] = BigInt::one();
        g[(b, a)] = BigInt::one();
    }
    IntegerLattice::new(g).unwrap().with_label("E8")
}

/// `H ⊕ H ⊕ H ⊕ E8 ⊕ E8`, signature (3,19).
pub fn k3_lattice() -> IntegerLattice {
    let h = hyperbolic();
    let e = e8();
    IntegerLattice::direct_sum_all([&h, &h, &h, &e, &e]).with_label("LK3")
}

/// `⟨−2d⟩ ⊕ H ⊕ H ⊕ E8 ⊕ E8`, the orthogonal complement of a degree `2d`
/// polarization in the K3 lattice.
pub fn l2d(d: &BigInt) -> Result<IntegerLattice> {
    if !d.is_positive() {
        return Err(Error::InvalidArgument(format!("L2d(d) needs d >= 1, got {d}")));
    }
    let h = hyperbolic();
    let e = e8();
    let m = diagonal(&[-(d * BigInt::from(2))]);
    Ok(IntegerLattice::direct_sum_all([&m, &h, &h, &e, &e]).with_label(format!("L2d({d})")))
}

const MAX_PARSED_RANK: usize = 1024;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if !c.is_ascii_alphanumeric() {
                break;
            }
            self.pos += 1;
        }
        self.src[start..self.pos].to_string()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = &self.src[start..self.pos];
        // Keep fuzzed inputs from requesting absurdly large forms.
        if text.len() > 40 {
            return self.err("integer literal too long");
        }
        match text.parse::<BigInt>() {
            Ok(n) => Ok(n),
            Err(_) => {
                self.pos = start;
                self.err("expected an integer")
            }
        }
    }

    fn term(&mut self) -> Result<IntegerLattice> {
        let base = if self.eat('<') {
            let n = self.integer()?;
            self.expect('>')?;
            diagonal(&[n])
        } else {
            let start = self.pos;
            let name = self.ident();
            match name.as_str() {
                "H" => {
                    if self.eat('(') {
                        let n = self.integer()?;
                        self.expect(')')?;
                        hyperbolic_twisted(&n)?
                    } else {
                        hyperbolic()
                    }
                }
                "E8" => e8(),
                "A2" => a2(),
                "LK3" => k3_lattice(),
                "L2d" => {
                    self.expect('(')?;
                    let d = self.integer()?;
                    self.expect(')')?;
                    l2d(&d)?
                }
                _ => {
                    self.pos = start;
                    return self.err(format!("unknown lattice name '{name}'"));
                }
            }
        };
        if self.eat('^') {
            let k = self.integer()?;
            if k.is_zero() || k.is_negative() || k > BigInt::from(64) {
                return self.err("multiplicity must be between 1 and 64");
            }
            let k: usize = k.try_into().unwrap();
            let label = format!("{}^{k}", base.label().unwrap_or("?"));
            let parts = vec![&base; k];
            return Ok(IntegerLattice::direct_sum_all(parts).with_label(label));
        }
        Ok(base)
    }

    fn sum(&mut self) -> Result<IntegerLattice> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') || self.eat('⊕') {
                acc = acc.direct_sum(&self.term()?);
                if acc.rank() > MAX_PARSED_RANK {
                    return self.err(format!("lattice rank exceeds {MAX_PARSED_RANK}"));
                }
            } else {
                break;
            }
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return self.err("unexpected trailing input");
        }
        Ok(acc)
    }
}

/// Parses a lattice name such as `H(3)`, `L2d(2)` or `<-2>+H+E8^2`.
pub fn parse_lattice_name(s: &str) -> Result<IntegerLattice> {
    let mut p = Parser { src: s, pos: 0 };
    let l = p.sum()?;
    Ok(l.with_label(s.trim()))
}
