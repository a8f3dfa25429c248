//! Monomials (exponent vectors) ordered by graded lex, plus variable
//! partitions for set-multilinear structure.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exponent vector. The ordering is graded lexicographic: first by total
/// degree, then lexicographically on the exponents, so `x1^2 > x1*x2 > x2^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    /// Exponent vector with a single 1 in position `var`.
    pub fn var(num_vars: usize, var: usize) -> Self {
        assert!(var < num_vars, "variable index out of range");
        let mut e = vec![0; num_vars];
        e[var] = 1;
        Monomial(e)
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.0.len(), other.0.len(), "variable count mismatch");
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Componentwise a ≤ b.
    pub fn divides(&self, other: &Monomial) -> bool {
        assert_eq!(self.0.len(), other.0.len(), "variable count mismatch");
        self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    /// other / self. Panics unless `self.divides(other)`.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        assert!(self.divides(other), "monomial does not divide");
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| b - a).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.0.len(), other.0.len(), "variable count mismatch");
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `num_vars` variables of total degree exactly `t`,
/// ascending in the graded-lex order.
pub fn monomials_of_degree(num_vars: usize, t: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if num_vars == 0 {
        if t == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    let mut current = vec![0u16; num_vars];
    fill(&mut out, &mut current, 0, t);
    out.sort();
    out
}

fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u16>, pos: usize, remaining: u32) {
    if pos == current.len() - 1 {
        current[pos] = remaining as u16;
        out.push(Monomial(current.clone()));
        return;
    }
    for e in 0..=remaining {
        current[pos] = e as u16;
        fill(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}

/// All monomials of total degree at most `d`, ascending in graded-lex order.
pub fn monomials_up_to_degree(num_vars: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|t| monomials_of_degree(num_vars, t)).collect()
}

/// A partition of the variable set {0, …, n−1} into ordered blocks. Block
/// indices are 0-based internally; the JSON interfaces use 1-based labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariablePartition {
    num_vars: usize,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl VariablePartition {
    /// Validates that the blocks are disjoint and cover every variable.
    pub fn new(num_vars: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; num_vars];
        for (j, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidInput(format!("block {} is empty", j + 1)));
            }
            for &v in block {
                if v >= num_vars {
                    return Err(Error::InvalidInput(format!(
                        "block {} lists variable {} but there are only {num_vars} variables",
                        j + 1,
                        v + 1
                    )));
                }
                if block_of[v] != usize::MAX {
                    return Err(Error::InvalidInput(format!(
                        "variable {} appears in two blocks",
                        v + 1
                    )));
                }
                block_of[v] = j;
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidInput(format!(
                "variable {} is not covered by any block",
                v + 1
            )));
        }
        Ok(VariablePartition { num_vars, blocks, block_of })
    }

    /// d consecutive blocks of n variables each: block j holds variables
    /// j·n … j·n+n−1. This is the layout of tensor variables x_{j,i}.
    pub fn uniform(d: usize, n: usize) -> Self {
        let blocks = (0..d).map(|j| (j * n..(j + 1) * n).collect()).collect();
        VariablePartition::new(d * n, blocks).expect("uniform partition is valid")
    }

    /// Consecutive blocks of the given sizes.
    pub fn from_sizes(sizes: &[usize]) -> Result<Self> {
        let num_vars = sizes.iter().sum();
        let mut start = 0;
        let mut blocks = Vec::with_capacity(sizes.len());
        for &s in sizes {
            blocks.push((start..start + s).collect());
            start += s;
        }
        VariablePartition::new(num_vars, blocks)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, j: usize) -> &[usize] {
        &self.blocks[j]
    }

    pub fn block_of(&self, var: usize) -> usize {
        self.block_of[var]
    }

    /// Total degree of the monomial inside each block.
    pub fn block_degrees(&self, m: &Monomial) -> Vec<u32> {
        assert_eq!(m.num_vars(), self.num_vars, "variable count mismatch");
        let mut deg = vec![0u32; self.blocks.len()];
        for (v, &e) in m.0.iter().enumerate() {
            if e > 0 {
                deg[self.block_of[v]] += e as u32;
            }
        }
        deg
    }
}
