//! Colored permutations (elements of `G(m,p,n)` in base-map/color-shift
//! form), their cycle decompositions on `[n^m] ∪ {0}`, zero-cycle fullness,
//! underlying partitions, and the census of full permutations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;

use crate::colored::{Block, ColoredElement, ColoredPartition, PartitionError};

/// An element of `G(m,p,n)` stored as a base permutation plus a color shift
/// per base: `g(i^c) = base_map[i]^(c + shift[i])`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ColoredPermutation {
    m: u32,
    p: u32,
    n: u32,
    /// 1-indexed images: `base_map[i-1]` is the image base of `i`.
    base_map: Vec<u32>,
    /// color added when mapping base `i`.
    color_shift: Vec<u32>,
}

impl ColoredPermutation {
    pub fn new(m: u32, p: u32, n: u32, base_map: Vec<u32>, color_shift: Vec<u32>) -> Self {
        assert!(m >= 1 && p >= 1 && m % p == 0);
        assert_eq!(base_map.len(), n as usize);
        assert_eq!(color_shift.len(), n as usize);
        let mut seen = vec![false; n as usize];
        for &b in &base_map {
            assert!(b >= 1 && b <= n && !seen[(b - 1) as usize], "not a permutation");
            seen[(b - 1) as usize] = true;
        }
        let shift_sum: u32 = color_shift.iter().map(|&c| c % m).sum::<u32>() % m;
        assert!(
            shift_sum % p == 0,
            "color shifts sum to {shift_sum} mod m; not an element of G({m},{p},{n})"
        );
        ColoredPermutation {
            m,
            p,
            n,
            base_map,
            color_shift: color_shift.into_iter().map(|c| c % m).collect(),
        }
    }

    pub fn identity(m: u32, p: u32, n: u32) -> Self {
        ColoredPermutation::new(m, p, n, (1..=n).collect(), vec![0; n as usize])
    }

    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn base_map(&self) -> &[u32] {
        &self.base_map
    }
    pub fn color_shift(&self) -> &[u32] {
        &self.color_shift
    }

    /// The action on `[n^m] ∪ {0}` by left multiplication.
    pub fn apply(&self, x: ColoredElement) -> ColoredElement {
        match x {
            ColoredElement::Zero => ColoredElement::Zero,
            ColoredElement::El { base, color } => {
                let i = (base - 1) as usize;
                ColoredElement::el(self.base_map[i], color + self.color_shift[i], self.m)
            }
        }
    }

    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let m = self.m;
        let n = self.n;
        let mut ground: Vec<ColoredElement> = vec![ColoredElement::Zero];
        for b in 1..=n {
            for c in 0..m {
                ground.push(ColoredElement::el(b, c, m));
            }
        }
        let mut visited: BTreeSet<ColoredElement> = BTreeSet::new();
        let mut cycles = Vec::new();
        for &start in &ground {
            if visited.contains(&start) {
                continue;
            }
            let mut elements = vec![start];
            visited.insert(start);
            let mut cur = self.apply(start);
            while cur != start {
                visited.insert(cur);
                elements.push(cur);
                cur = self.apply(cur);
            }
            let kind = classify_cycle(&elements, m);
            cycles.push(Cycle { elements, kind });
        }
        CycleDecomposition { cycles }
    }

    /// Primitive cycles become blocks; the union of all zero-cycle supports
    /// (plus 0) becomes the zero block. `barred` controls which partition
    /// type the result is validated as.
    pub fn underlying_partition(&self, barred: bool) -> Result<ColoredPartition, PartitionError> {
        let dec = self.cycle_decomposition();
        let mut zero_block = Block::new();
        let mut blocks: Vec<Block> = Vec::new();
        for cyc in &dec.cycles {
            match cyc.kind {
                CycleKind::ZeroFixed | CycleKind::ZeroCycle { .. } => {
                    zero_block.extend(cyc.elements.iter().copied());
                }
                CycleKind::Primitive => {
                    blocks.push(cyc.elements.iter().copied().collect());
                }
            }
        }
        let mut all = vec![zero_block];
        all.extend(blocks);
        ColoredPartition::from_blocks(self.m, self.n, barred, all)
    }
}

impl fmt::Display for ColoredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let images = (1..=self.n)
            .map(|b| {
                format!(
                    "{}^{}",
                    self.base_map[(b - 1) as usize],
                    self.color_shift[(b - 1) as usize]
                )
            })
            .join(" ");
        write!(f, "[{images}]")
    }
}

/// Classification of one cycle of the permutation action on `[n^m] ∪ {0}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CycleKind {
    /// The fixed cycle `(0)`, full by convention.
    ZeroFixed,
    /// Every base occurs at most once.
    Primitive,
    /// `(δ, ξδ, ξ²δ, ...)` with `ξ = ζ_m^xi_exp` a primitive root of unity.
    ZeroCycle { xi_exp: u32, full: bool },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cycle {
    pub elements: Vec<ColoredElement>,
    pub kind: CycleKind,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleDecomposition {
    pub cycles: Vec<Cycle>,
}

impl CycleDecomposition {
    pub fn is_full(&self) -> bool {
        self.cycles.iter().all(|c| match c.kind {
            CycleKind::ZeroCycle { full, .. } => full,
            _ => true,
        })
    }

    /// Number of m-tuples of primitive cycles.
    pub fn tuple_count(&self, m: u32) -> usize {
        let prim = self
            .cycles
            .iter()
            .filter(|c| c.kind == CycleKind::Primitive)
            .count();
        debug_assert_eq!(prim % m as usize, 0);
        prim / m as usize
    }

    pub fn to_text(&self) -> String {
        self.cycles
            .iter()
            .map(|c| format!("({})", c.elements.iter().map(|e| e.to_string()).join(",")))
            .join("")
    }
}

fn classify_cycle(elements: &[ColoredElement], m: u32) -> CycleKind {
    if elements[0] == ColoredElement::Zero {
        return CycleKind::ZeroFixed;
    }
    let bases: BTreeSet<u32> = elements.iter().map(|e| e.base()).collect();
    if bases.len() == elements.len() {
        return CycleKind::Primitive;
    }
    // first return to the starting base fixes δ and ξ
    let b0 = elements[0].base();
    let c0 = elements[0].color().unwrap();
    let d = elements[1..]
        .iter()
        .position(|e| e.base() == b0)
        .expect("repeated base in a zero cycle")
        + 1;
    let e = (elements[d].color().unwrap() + m - c0) % m;
    CycleKind::ZeroCycle {
        xi_exp: e,
        full: e == 1 % m,
    }
}

/// Every `g` in `G(m,p,n)` in a fixed deterministic order (base maps in
/// lexicographic order, color shifts odometer).
pub fn all_group_elements(m: u32, p: u32, n: u32) -> Vec<ColoredPermutation> {
    assert!(p == 1 || p == m, "census supports p = 1 or p = m");
    let mut out = Vec::new();
    for perm in (1..=n).permutations(n as usize) {
        let mut shifts = vec![0u32; n as usize];
        loop {
            let total: u32 = shifts.iter().sum::<u32>() % m;
            if total % p == 0 {
                out.push(ColoredPermutation::new(
                    m,
                    p,
                    n,
                    perm.clone(),
                    shifts.clone(),
                ));
            }
            if !crate::colored::advance(&mut shifts, 0, m - 1) {
                break;
            }
        }
    }
    out
}

/// Full permutations of `G(m,p,n)` grouped by underlying partition.
pub fn full_census(
    m: u32,
    p: u32,
    n: u32,
) -> BTreeMap<ColoredPartition, Vec<ColoredPermutation>> {
    let barred = p == m && m > 1;
    let mut map: BTreeMap<ColoredPartition, Vec<ColoredPermutation>> = BTreeMap::new();
    for g in all_group_elements(m, p, n) {
        let dec = g.cycle_decomposition();
        if !dec.is_full() {
            continue;
        }
        let part = g
            .underlying_partition(barred)
            .expect("underlying partition of a full permutation is valid");
        map.entry(part).or_default().push(g);
    }
    map
}

/// Filter for `enumerate_full`.
#[derive(Clone, Debug)]
pub enum FullFilter {
    /// Target underlying partition.
    Partition(ColoredPartition),
    /// Target number of m-tuples of cycles.
    TupleCount(usize),
}

/// The `g` in `G(m,p,n)` whose action is full and matches the filter.
pub fn enumerate_full(m: u32, p: u32, n: u32, filter: &FullFilter) -> Vec<ColoredPermutation> {
    let census = full_census(m, p, n);
    match filter {
        FullFilter::Partition(target) => census.get(target).cloned().unwrap_or_default(),
        FullFilter::TupleCount(k) => census
            .into_iter()
            .filter(|(part, _)| part.k() == *k)
            .flat_map(|(_, gs)| gs)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_cycle_example() {
        // g in G(4,1,3): e_1 -> i e_2, e_2 -> e_1, e_3 -> e_3
        let g = ColoredPermutation::new(4, 1, 3, vec![2, 1, 3], vec![1, 0, 0]);
        let dec = g.cycle_decomposition();
        assert_eq!(
            dec.to_text(),
            "(0)(1^0,2^1,1^1,2^2,1^2,2^3,1^3,2^0)(3^0)(3^1)(3^2)(3^3)"
        );
        let big = &dec.cycles[1];
        assert_eq!(big.kind, CycleKind::ZeroCycle { xi_exp: 1, full: true });
        assert!(dec.is_full());
        assert_eq!(dec.tuple_count(4), 1);
    }

    #[test]
    fn identity_cycles() {
        let g = ColoredPermutation::identity(3, 1, 2);
        let dec = g.cycle_decomposition();
        assert!(dec
            .cycles
            .iter()
            .all(|c| c.elements.len() == 1));
        assert!(dec
            .cycles
            .iter()
            .skip(1)
            .all(|c| c.kind == CycleKind::Primitive));
        assert_eq!(dec.cycles[0].kind, CycleKind::ZeroFixed);
    }

    #[test]
    fn non_full_zero_cycle() {
        // g(1^0) = 1^2 in m=4: zero cycle (1^0,1^2) with ξ = ζ_4^2
        let g = ColoredPermutation::new(4, 1, 1, vec![1], vec![2]);
        let dec = g.cycle_decomposition();
        let zc = dec
            .cycles
            .iter()
            .find(|c| matches!(c.kind, CycleKind::ZeroCycle { .. }))
            .unwrap();
        assert_eq!(zc.kind, CycleKind::ZeroCycle { xi_exp: 2, full: false });
        assert!(!dec.is_full());
    }

    #[test]
    fn paper_underlying_partition() {
        // π_g = (0)(1^0,1^2)(1^1,1^3)(2^0,3^2)(2^1,3^3)(2^2,3^0)(2^3,3^1), m=4
        let g = ColoredPermutation::new(4, 1, 3, vec![1, 3, 2], vec![2, 2, 2]);
        let dec = g.cycle_decomposition();
        assert_eq!(
            dec.to_text(),
            "(0)(1^0,1^2)(1^1,1^3)(2^0,3^2)(2^1,3^3)(2^2,3^0)(2^3,3^1)"
        );
        let part = g.underlying_partition(false).unwrap();
        assert_eq!(
            part.to_text(),
            "0 1^0 1^1 1^2 1^3 | 2^1 3^3/2^2 3^0/2^3 3^1/2^0 3^2"
        );
    }

    #[test]
    fn full_counts() {
        // k = n: only the identity
        let identity_only = enumerate_full(3, 1, 2, &FullFilter::TupleCount(2));
        assert_eq!(identity_only, vec![ColoredPermutation::identity(3, 1, 2)]);
        // (2,1,2) with k=0: 3 full permutations on a zero block of size 5
        assert_eq!(enumerate_full(2, 1, 2, &FullFilter::TupleCount(0)).len(), 3);
        // determinant condition kills the two 4-cycle decompositions
        let sigma = ColoredPartition::parse("0 1^0 1^1 2^0 2^1 | 3^0/3^1", 2, 3, true).unwrap();
        assert_eq!(
            enumerate_full(2, 2, 3, &FullFilter::Partition(sigma)).len(),
            1
        );
    }
}
