//! The posets `Π_{m,n}` and `Π̄_{m,n}` as ranked lattices with exact Möbius
//! values, Whitney numbers of both kinds, and the Stirling-number readoffs
//! `S(G,k) = W(L, n-k)`, `s(G,k) = w(L, n-k)`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::colored::{enumerate_partitions, ColoredElement, ColoredPartition};
use crate::poly::{factorial, mstep_factorial};
use crate::stirling;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("lattice for m={m}, n={n} would have {size} elements, exceeding the cap {cap}")]
    CapExceeded { m: u32, n: u32, size: u64, cap: u64 },
    #[error("element does not belong to this lattice")]
    NotAnElement,
}

/// Size guard configuration.
#[derive(Clone, Copy, Debug)]
pub struct LatticeConfig {
    pub max_elements: u64,
}

impl Default for LatticeConfig {
    fn default() -> Self {
        LatticeConfig {
            max_elements: 100_000,
        }
    }
}

/// A fully materialized partition lattice: elements in a canonical order
/// (by rank, then lexicographically), the order relation as a matrix, and
/// lazily computed Möbius values.
pub struct PartitionLattice {
    m: u32,
    n: u32,
    barred: bool,
    classical: bool,
    elements: Vec<ColoredPartition>,
    index: BTreeMap<ColoredPartition, usize>,
    /// leq[i][j] = elements[i] ≤ elements[j] (refinement).
    leq: Vec<Vec<bool>>,
    rank: Vec<u32>,
    mobius: OnceLock<Vec<BigInt>>,
}

/// Build `Π_{m,n}` (barred = false) or `Π̄_{m,n}` (barred = true).
///
/// For `m = 1` both requests route to the classical partition lattice
/// `Π_n`, realized as the type `(1,n)` partitions whose zero block is `{0}`;
/// the zero block of a plain type `(1,n)` partition has no geometric
/// counterpart among the `A_{n-1}` hyperplanes.
pub fn build_lattice(
    m: u32,
    n: u32,
    barred: bool,
    config: LatticeConfig,
) -> Result<PartitionLattice, LatticeError> {
    assert!(m >= 1);
    let classical = m == 1;
    // closed-form size before materializing anything
    let mut size: u64 = 0;
    for k in 0..=n {
        let count = if classical {
            stirling::classical_stirling2(n, k)
        } else {
            stirling::stirling2(m, n, k as i64, barred)
        };
        size += u64::try_from(&count).unwrap_or(u64::MAX);
    }
    if size > config.max_elements {
        return Err(LatticeError::CapExceeded {
            m,
            n,
            size,
            cap: config.max_elements,
        });
    }

    let mut elements: Vec<ColoredPartition> = Vec::with_capacity(size as usize);
    // ascending rank = descending k
    for k in (0..=n as i64).rev() {
        let mut layer: Vec<ColoredPartition> = enumerate_partitions(m, n, k, barred && !classical)
            .into_iter()
            .filter(|p| !classical || p.zero_block().len() == 1)
            .collect();
        layer.sort();
        elements.extend(layer);
    }
    debug_assert_eq!(elements.len() as u64, size);

    let index: BTreeMap<ColoredPartition, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let rank: Vec<u32> = elements.iter().map(|p| n - p.k() as u32).collect();
    let count = elements.len();
    let mut leq = vec![vec![false; count]; count];
    for i in 0..count {
        for j in 0..count {
            if rank[i] <= rank[j] {
                leq[i][j] = elements[i].refines(&elements[j]);
            }
        }
    }
    Ok(PartitionLattice {
        m,
        n,
        barred,
        classical,
        elements,
        index,
        leq,
        rank,
        mobius: OnceLock::new(),
    })
}

impl PartitionLattice {
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn barred(&self) -> bool {
        self.barred
    }
    pub fn is_classical(&self) -> bool {
        self.classical
    }
    pub fn len(&self) -> usize {
        self.elements.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
    pub fn elements(&self) -> &[ColoredPartition] {
        &self.elements
    }
    pub fn rank_of(&self, idx: usize) -> u32 {
        self.rank[idx]
    }

    pub fn index_of(&self, p: &ColoredPartition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Covering relations, derived on demand: i ⋖ j iff i < j with nothing
    /// strictly between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let count = self.elements.len();
        let mut edges = Vec::new();
        for i in 0..count {
            for j in 0..count {
                if i == j || !self.leq[i][j] {
                    continue;
                }
                let covered = (0..count)
                    .any(|t| t != i && t != j && self.leq[i][t] && self.leq[t][j]);
                if !covered {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    fn mobius_table(&self) -> &Vec<BigInt> {
        self.mobius.get_or_init(|| {
            // elements are sorted by rank, so everything below x precedes it
            let count = self.elements.len();
            let mut mu: Vec<BigInt> = Vec::with_capacity(count);
            for i in 0..count {
                if self.rank[i] == 0 {
                    mu.push(BigInt::one());
                    continue;
                }
                let mut acc = BigInt::from(0);
                for j in 0..i {
                    if self.leq[j][i] {
                        acc -= &mu[j];
                    }
                }
                mu.push(acc);
            }
            mu
        })
    }

    /// Exact Möbius value by the memoized recursion `μ(x) = -Σ_{y<x} μ(y)`.
    pub fn mobius_recursive(&self, p: &ColoredPartition) -> Result<BigInt, LatticeError> {
        let idx = self.index_of(p).ok_or(LatticeError::NotAnElement)?;
        Ok(self.mobius_table()[idx].clone())
    }

    pub fn mobius_at(&self, idx: usize) -> BigInt {
        self.mobius_table()[idx].clone()
    }

    /// Whitney numbers `(w, W)` of the first and second kind, indexed by rank
    /// `0..=n`.
    pub fn whitney_numbers(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let mu = self.mobius_table();
        let mut w = vec![BigInt::from(0); self.n as usize + 1];
        let mut big_w = vec![BigInt::from(0); self.n as usize + 1];
        for (i, &r) in self.rank.iter().enumerate() {
            w[r as usize] += &mu[i];
            big_w[r as usize] += 1;
        }
        (w, big_w)
    }

    /// `(S(G,k), s(G,k)) = (W(L, n-k), w(L, n-k))`.
    pub fn stirling_from_lattice(&self, k: u32) -> (BigInt, BigInt) {
        assert!(k <= self.n);
        let (w, big_w) = self.whitney_numbers();
        let r = (self.n - k) as usize;
        (big_w[r].clone(), w[r].clone())
    }
}

/// Closed-form Möbius value, exactly as printed in the μ-product theorem.
///
/// Plain: `(-1)^{n-k} (b-m)!_m Π (b_j - 1)!`.
/// Barred: `(-1)^{n-k} (b-m-n) (b-2m)!_m Π (b_j - 1)!`. The barred form is a
/// transcription of the printed formula and is NOT reliable when the zero
/// block misses some bases; callers must treat it as a value to cross-check
/// against `mobius_recursive`, never as ground truth.
pub fn mobius_product(p: &ColoredPartition) -> BigInt {
    let m = p.m() as i64;
    let n = p.n() as i64;
    let k = p.k() as i64;
    let b = p.zero_block().len() as i64;
    let sign = if (n - k) % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let mut acc = sign;
    if p.barred() {
        acc *= BigInt::from(b - m - n);
        acc *= mstep_factorial(b - 2 * m, p.m());
    } else {
        acc *= mstep_factorial(b - m, p.m());
    }
    for tuple in p.tuples() {
        let bj = tuple[0].len() as u64;
        acc *= factorial(bj - 1);
    }
    acc
}

/// Convenience: the all-singleton bottom element of `Π_{m,n}`.
pub fn bottom_element(m: u32, n: u32, barred: bool) -> ColoredPartition {
    let parts = enumerate_partitions(m, n, n as i64, barred);
    debug_assert_eq!(parts.len(), 1);
    parts.into_iter().next().unwrap()
}

/// Whether the zero block of `p` is exactly `{0}` (used by the classical
/// m = 1 model).
pub fn has_empty_zero_block(p: &ColoredPartition) -> bool {
    p.zero_block().len() == 1 && p.zero_block().contains(&ColoredElement::Zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> LatticeConfig {
        LatticeConfig::default()
    }

    #[test]
    fn barred_2_2_lattice() {
        let lat = build_lattice(2, 2, true, cfg()).unwrap();
        assert_eq!(lat.len(), 4);
        let (w, big_w) = lat.whitney_numbers();
        assert_eq!(big_w, vec![1.into(), 2.into(), 1.into()]);
        assert_eq!(w, vec![1.into(), (-2).into(), 1.into()]);
        assert_eq!(lat.stirling_from_lattice(1), (2.into(), (-2).into()));
        assert_eq!(lat.stirling_from_lattice(2), (1.into(), 1.into()));
    }

    #[test]
    fn plain_2_2_lattice() {
        let lat = build_lattice(2, 2, false, cfg()).unwrap();
        assert_eq!(lat.len(), 6);
        let (w, big_w) = lat.whitney_numbers();
        assert_eq!(big_w, vec![1.into(), 4.into(), 1.into()]);
        // top Möbius of Π_{2,2} is 3!_2 = 3
        assert_eq!(w[2], 3.into());
        assert_eq!(lat.stirling_from_lattice(0), (1.into(), 3.into()));
    }

    #[test]
    fn trivial_lattice() {
        let lat = build_lattice(3, 0, false, cfg()).unwrap();
        assert_eq!(lat.len(), 1);
        assert_eq!(lat.mobius_at(0), BigInt::one());
    }

    #[test]
    fn mobius_examples() {
        let lat = build_lattice(2, 2, true, cfg()).unwrap();
        let bottom = &lat.elements()[0];
        assert_eq!(lat.mobius_recursive(bottom).unwrap(), BigInt::one());
        for idx in 1..3 {
            assert_eq!(lat.mobius_at(idx), BigInt::from(-1));
        }
        assert_eq!(lat.mobius_at(3), BigInt::one());
    }

    #[test]
    fn mobius_product_examples() {
        // the [4^3] example: b = 4, tuple sizes (2,1) -> (+1)·1!_3·1!·0! = 1
        let p = ColoredPartition::parse(
            "0 4^0 4^1 4^2 | 1^1 3^0/1^2 3^1/1^0 3^2 | 2^1/2^2/2^0",
            3,
            4,
            false,
        )
        .unwrap();
        assert_eq!(mobius_product(&p), BigInt::one());
        let lat = build_lattice(3, 4, false, cfg()).unwrap();
        assert_eq!(lat.mobius_recursive(&p).unwrap(), BigInt::one());
        // all singletons
        let bottom = bottom_element(3, 4, false);
        assert_eq!(mobius_product(&bottom), BigInt::one());
        // top of Π_{2,2}: 3!_2 = 3
        let top = ColoredPartition::parse("0 1^0 1^1 2^0 2^1", 2, 2, false).unwrap();
        assert_eq!(mobius_product(&top), BigInt::from(3));
    }

    #[test]
    fn classical_lattice_m1() {
        // Π_4 has 15 elements; Whitney numbers are shifted Stirling numbers
        let lat = build_lattice(1, 4, true, cfg()).unwrap();
        assert_eq!(lat.len(), 15);
        let (w, big_w) = lat.whitney_numbers();
        // W(Π_4, k) = S(4, 4-k): 1, 6, 7, 1
        assert_eq!(big_w, vec![1.into(), 6.into(), 7.into(), 1.into(), 0.into()]);
        // w(Π_4, k) = s(4, 4-k): 1, -6, 11, -6
        assert_eq!(
            w,
            vec![1.into(), (-6).into(), 11.into(), (-6).into(), 0.into()]
        );
    }

    #[test]
    fn cap_guard() {
        let err = build_lattice(2, 3, false, LatticeConfig { max_elements: 5 })
            .map(|_| ())
            .unwrap_err();
        assert!(matches!(err, LatticeError::CapExceeded { .. }));
    }
}
