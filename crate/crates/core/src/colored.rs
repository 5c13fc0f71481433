//! Colored set partitions of `[n^m] ∪ {0}`: the plain and barred types
//! modeling the intersection lattices of `G(m,p,n)`, the super and ordered
//! variants, standard form, the inversion statistic, and deterministic
//! enumerators for all of them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

/// An element of `[n^m] ∪ {0}`: either the zero vector or `i^c = ζ_m^c e_i`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ColoredElement {
    Zero,
    El { base: u32, color: u32 },
}

impl ColoredElement {
    pub fn el(base: u32, color: u32, m: u32) -> Self {
        ColoredElement::El {
            base,
            color: color % m,
        }
    }

    pub fn base(&self) -> u32 {
        match self {
            ColoredElement::Zero => 0,
            ColoredElement::El { base, .. } => *base,
        }
    }

    pub fn color(&self) -> Option<u32> {
        match self {
            ColoredElement::Zero => None,
            ColoredElement::El { color, .. } => Some(*color),
        }
    }

    /// Multiplication by `ζ_m^a`, as in the scalar action on `[n^m]`.
    pub fn rotate(&self, a: u32, m: u32) -> Self {
        match self {
            ColoredElement::Zero => ColoredElement::Zero,
            ColoredElement::El { base, color } => ColoredElement::El {
                base: *base,
                color: (color + a) % m,
            },
        }
    }
}

impl fmt::Display for ColoredElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColoredElement::Zero => write!(f, "0"),
            ColoredElement::El { base, color } => write!(f, "{base}^{color}"),
        }
    }
}

pub type Block = BTreeSet<ColoredElement>;

/// Minimum base of a block; 0 when the block contains the zero vector.
pub fn minb(block: &Block) -> u32 {
    if block.contains(&ColoredElement::Zero) {
        return 0;
    }
    block.iter().map(|e| e.base()).min().unwrap_or(0)
}

/// Maximum base of a block; 0 when only the zero vector is present.
pub fn maxb(block: &Block) -> u32 {
    block.iter().map(|e| e.base()).max().unwrap_or(0)
}

fn rotate_block(block: &Block, a: u32, m: u32) -> Block {
    block.iter().map(|e| e.rotate(a, m)).collect()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("blocks do not partition [n^m] ∪ {{0}}: {0}")]
    NotAPartition(String),
    #[error("zero block is not closed under colorings: base {base} is only partially present")]
    ZeroBlockNotClosed { base: u32 },
    #[error("blocks with minimum base {base} do not form an m-tuple: {reason}")]
    NotAnMTuple { base: u32, reason: String },
    #[error("barred partition has zero block {{0}} ∪ all colors of single base {base}")]
    BarredSingleBase { base: u32 },
    #[error("ordered partition violates S_{{i+1}} = ζ S_i at block {index}")]
    BadChunk { index: usize },
    #[error("super zero ordering for base {base} has start color {color}; 0 is not permitted")]
    BadZeroOrdering { base: u32, color: u32 },
    #[error("invalid element {0}")]
    BadElement(String),
    #[error("parse error: {0}")]
    Parse(String),
}

// ---------------------------------------------------------------------------
// ColoredPartition
// ---------------------------------------------------------------------------

/// A colored set partition of type `(m,n)` (or `(m,n)`-bar), stored in
/// standard form: m-tuples sorted by minimum base, blocks within a tuple
/// rotated so the block at overall index `j` contains `s^(j mod m)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ColoredPartition {
    m: u32,
    n: u32,
    barred: bool,
    zero_block: Block,
    tuples: Vec<Vec<Block>>,
}

impl ColoredPartition {
    /// Validate raw blocks and bring them to standard form.
    pub fn from_blocks(
        m: u32,
        n: u32,
        barred: bool,
        blocks: Vec<Block>,
    ) -> Result<Self, PartitionError> {
        assert!(m >= 1);
        // partition check: disjoint, nonempty, union = [n^m] ∪ {0}
        let mut seen: BTreeSet<ColoredElement> = BTreeSet::new();
        let mut total = 0usize;
        for b in &blocks {
            if b.is_empty() {
                return Err(PartitionError::NotAPartition("empty block".into()));
            }
            total += b.len();
            for e in b {
                if let ColoredElement::El { base, color } = e {
                    if *base < 1 || *base > n || *color >= m {
                        return Err(PartitionError::BadElement(e.to_string()));
                    }
                }
                if !seen.insert(*e) {
                    return Err(PartitionError::NotAPartition(format!(
                        "element {e} appears twice"
                    )));
                }
            }
        }
        let expect = (n * m + 1) as usize;
        if total != expect || !seen.contains(&ColoredElement::Zero) {
            return Err(PartitionError::NotAPartition(format!(
                "{total} elements covered, expected {expect}"
            )));
        }

        let mut zero_block = Block::new();
        let mut rest: Vec<Block> = Vec::new();
        for b in blocks {
            if b.contains(&ColoredElement::Zero) {
                zero_block = b;
            } else {
                rest.push(b);
            }
        }

        // condition (i): zero block closed under colorings
        for e in &zero_block {
            if let ColoredElement::El { base, .. } = e {
                for c in 0..m {
                    if !zero_block.contains(&ColoredElement::el(*base, c, m)) {
                        return Err(PartitionError::ZeroBlockNotClosed { base: *base });
                    }
                }
            }
        }

        // condition (ii): group the remaining blocks into m-tuples by minimum base
        let mut groups: BTreeMap<u32, Vec<Block>> = BTreeMap::new();
        for b in rest {
            groups.entry(minb(&b)).or_default().push(b);
        }
        let mut tuples: Vec<Vec<Block>> = Vec::new();
        for (s, group) in groups {
            if group.len() != m as usize {
                return Err(PartitionError::NotAnMTuple {
                    base: s,
                    reason: format!("{} blocks share minimum base {s}", group.len()),
                });
            }
            // locate the block holding each coloring of s
            let mut by_color: Vec<Option<&Block>> = vec![None; m as usize];
            for b in &group {
                for c in 0..m {
                    if b.contains(&ColoredElement::el(s, c, m)) {
                        if by_color[c as usize].is_some() {
                            return Err(PartitionError::NotAnMTuple {
                                base: s,
                                reason: format!("color {c} of base {s} appears twice"),
                            });
                        }
                        by_color[c as usize] = Some(b);
                    }
                }
            }
            let mut anchored: Vec<Block> = Vec::with_capacity(m as usize);
            for c in 0..m as usize {
                match by_color[c] {
                    Some(b) => anchored.push(b.clone()),
                    None => {
                        return Err(PartitionError::NotAnMTuple {
                            base: s,
                            reason: format!("color {c} of base {s} missing from the group"),
                        })
                    }
                }
            }
            // blocks must be pairwise distinct ζ-multiples in color order
            for c in 0..m as usize {
                let next = (c + 1) % m as usize;
                if rotate_block(&anchored[c], 1, m) != anchored[next] {
                    return Err(PartitionError::NotAnMTuple {
                        base: s,
                        reason: format!("block of {s}^{c} times ζ is not the block of {s}^{}", next),
                    });
                }
                if m > 1 && anchored[c] == anchored[next] {
                    return Err(PartitionError::NotAnMTuple {
                        base: s,
                        reason: "blocks of an m-tuple are not distinct".into(),
                    });
                }
            }
            // standard rotation for the tuple at index tuples.len()
            let l = tuples.len() as u32;
            let first_color = (l * m + 1) % m;
            let tuple: Vec<Block> = (0..m)
                .map(|p| anchored[((first_color + p) % m) as usize].clone())
                .collect();
            tuples.push(tuple);
        }

        let part = ColoredPartition {
            m,
            n,
            barred,
            zero_block,
            tuples,
        };
        if barred {
            if let Some(base) = part.single_zero_base() {
                return Err(PartitionError::BarredSingleBase { base });
            }
        }
        Ok(part)
    }

    /// Constructor for callers that already hold standard-form parts
    /// (the enumerators); validated in debug builds.
    pub(crate) fn from_standard_parts(
        m: u32,
        n: u32,
        barred: bool,
        zero_block: Block,
        tuples: Vec<Vec<Block>>,
    ) -> Self {
        let part = ColoredPartition {
            m,
            n,
            barred,
            zero_block,
            tuples,
        };
        debug_assert!({
            let blocks = part.blocks_seq().into_iter().cloned().collect();
            ColoredPartition::from_blocks(m, n, barred, blocks).as_ref() == Ok(&part)
        });
        part
    }

    fn single_zero_base(&self) -> Option<u32> {
        let bases = self.zero_bases();
        if bases.len() == 1 {
            Some(bases[0])
        } else {
            None
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn barred(&self) -> bool {
        self.barred
    }
    pub fn zero_block(&self) -> &Block {
        &self.zero_block
    }
    pub fn tuples(&self) -> &[Vec<Block>] {
        &self.tuples
    }

    /// Number of m-tuples.
    pub fn k(&self) -> usize {
        self.tuples.len()
    }

    /// Bases whose colorings lie in the zero block, ascending.
    pub fn zero_bases(&self) -> Vec<u32> {
        let mut bases: Vec<u32> = self
            .zero_block
            .iter()
            .filter_map(|e| match e {
                ColoredElement::Zero => None,
                ColoredElement::El { base, .. } => Some(*base),
            })
            .collect();
        bases.dedup();
        bases
    }

    /// Blocks in standard order `S_0, S_1, ..., S_{km}`.
    pub fn blocks_seq(&self) -> Vec<&Block> {
        let mut out = vec![&self.zero_block];
        for t in &self.tuples {
            out.extend(t.iter());
        }
        out
    }

    /// Refinement order: every block of `self` contained in some block of `other`.
    pub fn refines(&self, other: &ColoredPartition) -> bool {
        assert_eq!((self.m, self.n, self.barred), (other.m, other.n, other.barred));
        let others = other.blocks_seq();
        self.blocks_seq()
            .into_iter()
            .all(|b| others.iter().any(|o| b.is_subset(o)))
    }

    /// Inversions of the standard form.
    pub fn inversion_set(&self) -> InversionData {
        inversions_of_blocks(&self.blocks_seq(), None, self.m)
    }

    pub fn to_text(&self) -> String {
        let mut out = zero_block_text(&self.zero_block, None, self.m);
        for t in &self.tuples {
            out.push_str(" | ");
            out.push_str(&tuple_text(t));
        }
        out
    }

    /// Parse the paper text format and standardize.
    pub fn parse(s: &str, m: u32, n: u32, barred: bool) -> Result<Self, PartitionError> {
        let blocks = parse_block_seq(s, m)?;
        ColoredPartition::from_blocks(m, n, barred, blocks)
    }

    pub fn to_json(&self) -> serde_json::Value {
        partition_json(
            if self.barred { "barred" } else { "plain" },
            &self.zero_block,
            None,
            self.m,
            self.tuples.iter().map(|t| t.as_slice()),
        )
    }
}

impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

fn zero_block_text(zero_block: &Block, orderings: Option<&BTreeMap<u32, u32>>, m: u32) -> String {
    let mut out = String::from("0");
    match orderings {
        None => {
            for e in zero_block {
                if *e != ColoredElement::Zero {
                    out.push(' ');
                    out.push_str(&e.to_string());
                }
            }
        }
        Some(ords) => {
            // super form: each base rendered as its ordered run
            let bases: BTreeSet<u32> = zero_block
                .iter()
                .filter_map(|e| match e {
                    ColoredElement::Zero => None,
                    ColoredElement::El { base, .. } => Some(*base),
                })
                .collect();
            for b in bases {
                let c = *ords.get(&b).expect("ordering for zero-block base");
                for j in 0..m {
                    out.push(' ');
                    out.push_str(&ColoredElement::el(b, c + j, m).to_string());
                }
            }
        }
    }
    out
}

fn block_text(b: &Block) -> String {
    b.iter().map(|e| e.to_string()).join(" ")
}

fn tuple_text(t: &[Block]) -> String {
    t.iter().map(block_text).join("/")
}

fn partition_json<'a>(
    flavor: &str,
    zero_block: &Block,
    orderings: Option<&BTreeMap<u32, u32>>,
    m: u32,
    tuples: impl Iterator<Item = &'a [Block]>,
) -> serde_json::Value {
    use serde_json::{json, Value};
    let zero: Vec<Value> = match orderings {
        None => zero_block.iter().map(|e| Value::String(e.to_string())).collect(),
        Some(_) => zero_block_text(zero_block, orderings, m)
            .split(' ')
            .map(|t| Value::String(t.to_string()))
            .collect(),
    };
    let tuples: Vec<Value> = tuples
        .map(|t| {
            Value::Array(
                t.iter()
                    .map(|b| {
                        Value::Array(b.iter().map(|e| Value::String(e.to_string())).collect())
                    })
                    .collect(),
            )
        })
        .collect();
    json!({ "flavor": flavor, "zero_block": zero, "tuples": tuples })
}

// ---------------------------------------------------------------------------
// inversion statistic
// ---------------------------------------------------------------------------

/// The inversion set of a (possibly ordered, possibly super) partition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InversionData {
    /// Pairs `(i^0, l)` where `i^0` lies in an earlier block than `S_l` and
    /// `i >= minb(S_l)`.
    pub block_pairs: Vec<(ColoredElement, usize)>,
    /// Super-only pairs `(i^0, i^c)` inside the zero block ordering.
    pub zero_pairs: Vec<(ColoredElement, ColoredElement)>,
}

impl InversionData {
    pub fn count(&self) -> usize {
        self.block_pairs.len() + self.zero_pairs.len()
    }

    pub fn count_for_base(&self, base: u32) -> usize {
        self.block_pairs
            .iter()
            .filter(|(e, _)| e.base() == base)
            .count()
            + self
                .zero_pairs
                .iter()
                .filter(|(e, _)| e.base() == base)
                .count()
    }
}

/// Inversions over an explicit block sequence, `blocks[0]` being the zero
/// block. The comparison `i >= minb(S_l)` is used uniformly; equality can
/// only occur for ordered partitions.
pub(crate) fn inversions_of_blocks(
    blocks: &[&Block],
    zero_orderings: Option<&BTreeMap<u32, u32>>,
    m: u32,
) -> InversionData {
    let mins: Vec<u32> = blocks.iter().map(|b| minb(b)).collect();
    let mut data = InversionData::default();
    for (j, b) in blocks.iter().enumerate() {
        for e in b.iter() {
            if e.color() != Some(0) {
                continue;
            }
            for l in (j + 1)..blocks.len() {
                if e.base() >= mins[l] {
                    data.block_pairs.push((*e, l));
                }
            }
        }
    }
    if let Some(ords) = zero_orderings {
        for (&base, &c) in ords {
            for color in 1..c {
                data.zero_pairs.push((
                    ColoredElement::el(base, 0, m),
                    ColoredElement::el(base, color, m),
                ));
            }
        }
    }
    data
}

// ---------------------------------------------------------------------------
// SuperPartition
// ---------------------------------------------------------------------------

/// A super colored set partition: a plain partition plus a cyclic ordering of
/// each zero-block base, recorded by its start color (never 0).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SuperPartition {
    partition: ColoredPartition,
    zero_orderings: BTreeMap<u32, u32>,
}

impl SuperPartition {
    pub fn new(
        partition: ColoredPartition,
        zero_orderings: BTreeMap<u32, u32>,
    ) -> Result<Self, PartitionError> {
        let m = partition.m();
        let bases: BTreeSet<u32> = partition.zero_bases().into_iter().collect();
        let keyed: BTreeSet<u32> = zero_orderings.keys().copied().collect();
        if bases != keyed {
            return Err(PartitionError::Parse(
                "zero orderings must cover exactly the zero-block bases".into(),
            ));
        }
        for (&base, &c) in &zero_orderings {
            if c == 0 || c >= m {
                return Err(PartitionError::BadZeroOrdering { base, color: c });
            }
        }
        Ok(SuperPartition {
            partition,
            zero_orderings,
        })
    }

    pub fn partition(&self) -> &ColoredPartition {
        &self.partition
    }
    pub fn zero_orderings(&self) -> &BTreeMap<u32, u32> {
        &self.zero_orderings
    }
    pub fn k(&self) -> usize {
        self.partition.k()
    }

    pub fn inversion_set(&self) -> InversionData {
        inversions_of_blocks(
            &self.partition.blocks_seq(),
            Some(&self.zero_orderings),
            self.partition.m(),
        )
    }

    pub fn to_text(&self) -> String {
        let mut out = zero_block_text(
            &self.partition.zero_block,
            Some(&self.zero_orderings),
            self.partition.m(),
        );
        for t in &self.partition.tuples {
            out.push_str(" | ");
            out.push_str(&tuple_text(t));
        }
        out
    }

    pub fn parse(s: &str, m: u32, n: u32) -> Result<Self, PartitionError> {
        let segments: Vec<&str> = s.split(" | ").collect();
        let (zero_block, ords) = parse_super_zero(segments[0], m)?;
        let mut blocks = vec![zero_block];
        for seg in &segments[1..] {
            for btext in seg.split('/') {
                blocks.push(parse_block(btext, m)?);
            }
        }
        let partition = ColoredPartition::from_blocks(m, n, false, blocks)?;
        SuperPartition::new(partition, ords)
    }

    pub fn to_json(&self) -> serde_json::Value {
        partition_json(
            "super",
            &self.partition.zero_block,
            Some(&self.zero_orderings),
            self.partition.m(),
            self.partition.tuples.iter().map(|t| t.as_slice()),
        )
    }
}

impl fmt::Display for SuperPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

// ---------------------------------------------------------------------------
// OrderedPartition
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Flavor {
    Super,
    Cr,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Super => write!(f, "super"),
            Flavor::Cr => write!(f, "cr"),
        }
    }
}

/// An ordered (super or CR) set partition: an explicit block sequence
/// `S_1..S_{km}` with `S_{i+1} = ζ S_i` inside each m-chunk, plus the zero
/// block (with per-base orderings in the super flavor).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OrderedPartition {
    m: u32,
    n: u32,
    flavor: Flavor,
    zero_block: Block,
    zero_orderings: BTreeMap<u32, u32>,
    blocks: Vec<Block>,
}

impl OrderedPartition {
    pub fn from_parts(
        m: u32,
        n: u32,
        flavor: Flavor,
        zero_block: Block,
        zero_orderings: BTreeMap<u32, u32>,
        blocks: Vec<Block>,
    ) -> Result<Self, PartitionError> {
        assert!(m >= 1);
        if !zero_block.contains(&ColoredElement::Zero) {
            return Err(PartitionError::NotAPartition(
                "zero block must contain 0".into(),
            ));
        }
        if blocks.len() % m as usize != 0 {
            return Err(PartitionError::NotAPartition(format!(
                "{} nonzero blocks is not a multiple of m",
                blocks.len()
            )));
        }
        // disjoint cover
        let mut seen: BTreeSet<ColoredElement> = zero_block.iter().copied().collect();
        if seen.len() != zero_block.len() {
            return Err(PartitionError::NotAPartition("duplicate".into()));
        }
        let mut total = zero_block.len();
        for b in &blocks {
            if b.is_empty() {
                return Err(PartitionError::NotAPartition("empty block".into()));
            }
            total += b.len();
            for e in b {
                if let ColoredElement::El { base, color } = e {
                    if *base < 1 || *base > n || *color >= m {
                        return Err(PartitionError::BadElement(e.to_string()));
                    }
                }
                if !seen.insert(*e) {
                    return Err(PartitionError::NotAPartition(format!(
                        "element {e} appears twice"
                    )));
                }
            }
        }
        if total != (n * m + 1) as usize {
            return Err(PartitionError::NotAPartition(format!(
                "{total} elements covered, expected {}",
                n * m + 1
            )));
        }
        // zero block closure
        for e in &zero_block {
            if let ColoredElement::El { base, .. } = e {
                for c in 0..m {
                    if !zero_block.contains(&ColoredElement::el(*base, c, m)) {
                        return Err(PartitionError::ZeroBlockNotClosed { base: *base });
                    }
                }
            }
        }
        // chunk condition S_{i+1} = ζ S_i for i not divisible by m (1-based)
        for i in 1..blocks.len() {
            if i % m as usize != 0 && rotate_block(&blocks[i - 1], 1, m) != blocks[i] {
                return Err(PartitionError::BadChunk { index: i });
            }
        }
        // orderings: super covers exactly the zero bases with colors != 0
        let zero_bases: BTreeSet<u32> = zero_block
            .iter()
            .filter_map(|e| match e {
                ColoredElement::Zero => None,
                ColoredElement::El { base, .. } => Some(*base),
            })
            .collect();
        match flavor {
            Flavor::Super => {
                let keyed: BTreeSet<u32> = zero_orderings.keys().copied().collect();
                if keyed != zero_bases {
                    return Err(PartitionError::Parse(
                        "zero orderings must cover exactly the zero-block bases".into(),
                    ));
                }
                for (&base, &c) in &zero_orderings {
                    if c == 0 || c >= m {
                        return Err(PartitionError::BadZeroOrdering { base, color: c });
                    }
                }
            }
            Flavor::Cr => {
                if !zero_orderings.is_empty() {
                    return Err(PartitionError::Parse(
                        "CR-ordered partitions carry no zero orderings".into(),
                    ));
                }
            }
        }
        Ok(OrderedPartition {
            m,
            n,
            flavor,
            zero_block,
            zero_orderings,
            blocks,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn flavor(&self) -> Flavor {
        self.flavor
    }
    pub fn zero_block(&self) -> &Block {
        &self.zero_block
    }
    pub fn zero_orderings(&self) -> &BTreeMap<u32, u32> {
        &self.zero_orderings
    }
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn k(&self) -> usize {
        self.blocks.len() / self.m as usize
    }

    /// Blocks of the 1-based chunk `j`.
    pub fn chunk(&self, j: usize) -> &[Block] {
        let m = self.m as usize;
        &self.blocks[(j - 1) * m..j * m]
    }

    /// 1-based chunk containing base `b`, or `None` if `b` is in the zero block.
    pub fn chunk_of_base(&self, b: u32) -> Option<usize> {
        let m = self.m as usize;
        for j in 0..self.k() {
            if self.blocks[j * m]
                .iter()
                .any(|e| e.base() == b)
            {
                return Some(j + 1);
            }
        }
        None
    }

    pub fn inversion_set(&self) -> InversionData {
        let mut seq: Vec<&Block> = vec![&self.zero_block];
        seq.extend(self.blocks.iter());
        let ords = match self.flavor {
            Flavor::Super => Some(&self.zero_orderings),
            Flavor::Cr => None,
        };
        inversions_of_blocks(&seq, ords, self.m)
    }

    pub fn inv(&self) -> usize {
        self.inversion_set().count()
    }

    pub fn to_text(&self) -> String {
        let ords = match self.flavor {
            Flavor::Super => Some(&self.zero_orderings),
            Flavor::Cr => None,
        };
        let mut out = String::from("(");
        out.push_str(&zero_block_text(&self.zero_block, ords, self.m));
        let m = self.m as usize;
        for j in 0..self.k() {
            out.push_str(" | ");
            out.push_str(&tuple_text(&self.blocks[j * m..(j + 1) * m]));
        }
        out.push(')');
        out
    }

    pub fn parse(s: &str, m: u32, n: u32, flavor: Flavor) -> Result<Self, PartitionError> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| PartitionError::Parse("ordered partition must be parenthesized".into()))?;
        let segments: Vec<&str> = inner.split(" | ").collect();
        let (zero_block, ords) = match flavor {
            Flavor::Super => parse_super_zero(segments[0], m)?,
            Flavor::Cr => (parse_block(segments[0], m)?, BTreeMap::new()),
        };
        let mut blocks = Vec::new();
        for seg in &segments[1..] {
            for btext in seg.split('/') {
                blocks.push(parse_block(btext, m)?);
            }
        }
        OrderedPartition::from_parts(m, n, flavor, zero_block, ords, blocks)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let m = self.m as usize;
        let chunks: Vec<&[Block]> = (0..self.k()).map(|j| &self.blocks[j * m..(j + 1) * m]).collect();
        partition_json(
            match self.flavor {
                Flavor::Super => "ordered-super",
                Flavor::Cr => "ordered-cr",
            },
            &self.zero_block,
            match self.flavor {
                Flavor::Super => Some(&self.zero_orderings),
                Flavor::Cr => None,
            },
            self.m,
            chunks.into_iter(),
        )
    }

    /// Forget the ordering: standardize into the underlying plain partition.
    pub fn to_unordered(&self) -> ColoredPartition {
        let mut blocks: Vec<Block> = vec![self.zero_block.clone()];
        blocks.extend(self.blocks.iter().cloned());
        ColoredPartition::from_blocks(self.m, self.n, false, blocks)
            .expect("ordered partition has a valid underlying partition")
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

// ---------------------------------------------------------------------------
// parsing helpers
// ---------------------------------------------------------------------------

fn parse_element(tok: &str, m: u32) -> Result<ColoredElement, PartitionError> {
    if tok == "0" {
        return Ok(ColoredElement::Zero);
    }
    let (b, c) = tok
        .split_once('^')
        .ok_or_else(|| PartitionError::BadElement(tok.to_string()))?;
    let base: u32 = b
        .parse()
        .map_err(|_| PartitionError::BadElement(tok.to_string()))?;
    let color: u32 = c
        .parse()
        .map_err(|_| PartitionError::BadElement(tok.to_string()))?;
    if base < 1 || color >= m {
        return Err(PartitionError::BadElement(tok.to_string()));
    }
    Ok(ColoredElement::El { base, color })
}

fn parse_block(text: &str, m: u32) -> Result<Block, PartitionError> {
    let mut block = Block::new();
    for tok in text.split_whitespace() {
        block.insert(parse_element(tok, m)?);
    }
    if block.is_empty() {
        return Err(PartitionError::Parse(format!("empty block in {text:?}")));
    }
    Ok(block)
}

fn parse_block_seq(s: &str, m: u32) -> Result<Vec<Block>, PartitionError> {
    let mut blocks = Vec::new();
    for (i, seg) in s.split(" | ").enumerate() {
        if i == 0 {
            blocks.push(parse_block(seg, m)?);
        } else {
            for btext in seg.split('/') {
                blocks.push(parse_block(btext, m)?);
            }
        }
    }
    Ok(blocks)
}

/// Parse a super zero-block segment ("0 1^2 1^0 1^1 3^2 3^0 3^1"), recovering
/// the start colors from the base runs.
fn parse_super_zero(seg: &str, m: u32) -> Result<(Block, BTreeMap<u32, u32>), PartitionError> {
    let toks: Vec<&str> = seg.split_whitespace().collect();
    if toks.is_empty() || toks[0] != "0" {
        return Err(PartitionError::Parse(format!(
            "zero block must start with 0: {seg:?}"
        )));
    }
    let rest = &toks[1..];
    if rest.len() % m as usize != 0 {
        return Err(PartitionError::Parse(format!(
            "zero block run length not a multiple of m: {seg:?}"
        )));
    }
    let mut block = Block::new();
    block.insert(ColoredElement::Zero);
    let mut ords = BTreeMap::new();
    for run in rest.chunks(m as usize) {
        let first = parse_element(run[0], m)?;
        let base = first.base();
        let start = first.color().unwrap();
        for (j, tok) in run.iter().enumerate() {
            let e = parse_element(tok, m)?;
            if e.base() != base || e.color() != Some((start + j as u32) % m) {
                return Err(PartitionError::Parse(format!(
                    "run for base {base} is not consecutively colored: {seg:?}"
                )));
            }
            block.insert(e);
        }
        ords.insert(base, start);
    }
    Ok((block, ords))
}

// ---------------------------------------------------------------------------
// enumerators
// ---------------------------------------------------------------------------

/// All type `(m,n)` (or barred) partitions with `km+1` blocks, in the
/// deterministic order of the recursive insertion of bases `1..n`
/// (new-tuple case first, then joining blocks by ascending block index).
pub fn enumerate_partitions(m: u32, n: u32, k: i64, barred: bool) -> Vec<ColoredPartition> {
    assert!(m >= 1);
    if k < 0 || k > n as i64 {
        return Vec::new();
    }
    let k = k as usize;
    let mut out = Vec::new();
    let mut zero_bases: Vec<u32> = Vec::new();
    let mut tuples: Vec<Vec<Block>> = Vec::new();
    insert_rec(m, n, k, barred, 1, &mut zero_bases, &mut tuples, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn insert_rec(
    m: u32,
    n: u32,
    k: usize,
    barred: bool,
    b: u32,
    zero_bases: &mut Vec<u32>,
    tuples: &mut Vec<Vec<Block>>,
    out: &mut Vec<ColoredPartition>,
) {
    if b > n {
        if tuples.len() == k && !(barred && zero_bases.len() == 1) {
            let mut zero_block = Block::new();
            zero_block.insert(ColoredElement::Zero);
            for &zb in zero_bases.iter() {
                for c in 0..m {
                    zero_block.insert(ColoredElement::el(zb, c, m));
                }
            }
            out.push(ColoredPartition::from_standard_parts(
                m,
                n,
                barred,
                zero_block,
                tuples.clone(),
            ));
        }
        return;
    }
    let remaining = (n - b + 1) as usize;
    // new m-tuple (appended; bases ascend, so standard order is maintained)
    if tuples.len() < k {
        let l = tuples.len() as u32;
        let tuple: Vec<Block> = (0..m)
            .map(|p| {
                let color = (l * m + p + 1) % m;
                let mut blk = Block::new();
                blk.insert(ColoredElement::el(b, color, m));
                blk
            })
            .collect();
        tuples.push(tuple);
        insert_rec(m, n, k, barred, b + 1, zero_bases, tuples, out);
        tuples.pop();
    }
    // joining leaves tuple count unchanged; prune if k is then unreachable
    if tuples.len() + remaining - 1 >= k {
        // block index 0: the zero block
        zero_bases.push(b);
        insert_rec(m, n, k, barred, b + 1, zero_bases, tuples, out);
        zero_bases.pop();
        // blocks S_1.. in ascending index order
        for t in 0..tuples.len() {
            for p in 0..m as usize {
                for c in 0..m {
                    let pos = (p + c as usize) % m as usize;
                    tuples[t][pos].insert(ColoredElement::el(b, c, m));
                }
                insert_rec(m, n, k, barred, b + 1, zero_bases, tuples, out);
                for c in 0..m {
                    let pos = (p + c as usize) % m as usize;
                    tuples[t][pos].remove(&ColoredElement::el(b, c, m));
                }
            }
        }
    }
}

/// All super partitions: each plain partition paired with every admissible
/// zero-ordering choice, `m-1` start colors per zero-block base.
pub fn enumerate_super(m: u32, n: u32, k: i64) -> Vec<SuperPartition> {
    let mut out = Vec::new();
    for p in enumerate_partitions(m, n, k, false) {
        let bases = p.zero_bases();
        if bases.is_empty() {
            out.push(SuperPartition {
                partition: p,
                zero_orderings: BTreeMap::new(),
            });
            continue;
        }
        if m == 1 {
            // no admissible start color: such partitions carry no super structure
            continue;
        }
        // odometer over start colors 1..=m-1, last base fastest
        let mut choice = vec![1u32; bases.len()];
        loop {
            let ords: BTreeMap<u32, u32> =
                bases.iter().copied().zip(choice.iter().copied()).collect();
            out.push(SuperPartition {
                partition: p.clone(),
                zero_orderings: ords,
            });
            if !advance(&mut choice, 1, m - 1) {
                break;
            }
        }
    }
    out
}

/// All ordered partitions of the flavor: the base family (super partitions,
/// or plain partitions for CR) with the k tuples arranged in every order and
/// every leading rotation.
pub fn enumerate_ordered(m: u32, n: u32, k: i64, flavor: Flavor) -> Vec<OrderedPartition> {
    let mut out = Vec::new();
    match flavor {
        Flavor::Super => {
            for sp in enumerate_super(m, n, k) {
                push_orderings(
                    m,
                    n,
                    flavor,
                    sp.partition.zero_block.clone(),
                    sp.zero_orderings.clone(),
                    &sp.partition.tuples,
                    &mut out,
                );
            }
        }
        Flavor::Cr => {
            for p in enumerate_partitions(m, n, k, false) {
                push_orderings(
                    m,
                    n,
                    flavor,
                    p.zero_block.clone(),
                    BTreeMap::new(),
                    &p.tuples,
                    &mut out,
                );
            }
        }
    }
    out
}

fn push_orderings(
    m: u32,
    n: u32,
    flavor: Flavor,
    zero_block: Block,
    zero_orderings: BTreeMap<u32, u32>,
    tuples: &[Vec<Block>],
    out: &mut Vec<OrderedPartition>,
) {
    let k = tuples.len();
    if k == 0 {
        out.push(OrderedPartition {
            m,
            n,
            flavor,
            zero_block,
            zero_orderings,
            blocks: Vec::new(),
        });
        return;
    }
    for perm in (0..k).permutations(k) {
        // odometer over rotations, last chunk fastest
        let mut rot = vec![0u32; k];
        loop {
            let mut blocks = Vec::with_capacity(k * m as usize);
            for (slot, &t) in perm.iter().enumerate() {
                let tup = &tuples[t];
                for i in 0..m as usize {
                    blocks.push(tup[(rot[slot] as usize + i) % m as usize].clone());
                }
            }
            out.push(OrderedPartition {
                m,
                n,
                flavor,
                zero_block: zero_block.clone(),
                zero_orderings: zero_orderings.clone(),
                blocks,
            });
            if !advance(&mut rot, 0, m - 1) {
                break;
            }
        }
    }
}

/// Advance a uniform-range odometer (last slot fastest); `false` once every
/// slot sits at `max` (the next state would wrap).
pub(crate) fn advance(slots: &mut [u32], min: u32, max: u32) -> bool {
    for i in (0..slots.len()).rev() {
        if slots[i] < max {
            slots[i] += 1;
            for s in slots.iter_mut().skip(i + 1) {
                *s = min;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent brute-force oracle: enumerate every set partition of
    // [n^m] ∪ {0} and keep the valid colored partitions.
    fn brute_force_partitions(m: u32, n: u32, k: usize, barred: bool) -> Vec<ColoredPartition> {
        let mut ground: Vec<ColoredElement> = vec![ColoredElement::Zero];
        for b in 1..=n {
            for c in 0..m {
                ground.push(ColoredElement::el(b, c, m));
            }
        }
        let mut out = Vec::new();
        let mut assignment: Vec<usize> = Vec::new();
        fn rec(
            ground: &[ColoredElement],
            assignment: &mut Vec<usize>,
            m: u32,
            n: u32,
            k: usize,
            barred: bool,
            out: &mut Vec<ColoredPartition>,
        ) {
            if assignment.len() == ground.len() {
                let parts = assignment.iter().max().map_or(0, |&mx| mx + 1);
                let mut blocks: Vec<Block> = vec![Block::new(); parts];
                for (i, &p) in assignment.iter().enumerate() {
                    blocks[p].insert(ground[i]);
                }
                if blocks.len() != k * m as usize + 1 {
                    return;
                }
                if let Ok(p) = ColoredPartition::from_blocks(m, n, barred, blocks) {
                    out.push(p);
                }
                return;
            }
            let next = assignment.iter().max().map_or(0, |&mx| mx + 1);
            for p in 0..=next {
                assignment.push(p);
                rec(ground, assignment, m, n, k, barred, out);
                assignment.pop();
            }
        }
        rec(&ground, &mut assignment, m, n, k, barred, &mut out);
        out
    }

    #[test]
    fn standardize_paper_example() {
        // the partition displayed for [4^3] with k=2 standardizes to eq (std)
        let raw = "0 4^0 4^1 4^2 | 1^0 3^2/1^1 3^0/1^2 3^1 | 2^0/2^1/2^2";
        let p = ColoredPartition::parse(raw, 3, 4, false).unwrap();
        assert_eq!(
            p.to_text(),
            "0 4^0 4^1 4^2 | 1^1 3^0/1^2 3^1/1^0 3^2 | 2^1/2^2/2^0"
        );
    }

    #[test]
    fn standardize_singleton() {
        let p = ColoredPartition::parse("0 | 1^0/1^1", 2, 1, false).unwrap();
        assert_eq!(p.to_text(), "0 | 1^1/1^0");
    }

    #[test]
    fn standardize_rejects_bad_tuple() {
        // {1^0} and {1^1 2^0 2^1} share minimum base 1 but ζ·{1^0} = {1^1}
        // is not the other block, so condition (ii) fails
        let mut b1 = Block::new();
        b1.insert(ColoredElement::el(1, 0, 2));
        let mut b2 = Block::new();
        b2.insert(ColoredElement::el(1, 1, 2));
        b2.insert(ColoredElement::el(2, 0, 2));
        b2.insert(ColoredElement::el(2, 1, 2));
        let mut z = Block::new();
        z.insert(ColoredElement::Zero);
        let err = ColoredPartition::from_blocks(2, 2, false, vec![z, b1, b2]).unwrap_err();
        assert!(matches!(err, PartitionError::NotAnMTuple { .. }));
    }

    #[test]
    fn barred_condition_rejected() {
        let err = ColoredPartition::parse("0 1^0 1^1 | 2^0/2^1", 2, 2, true).unwrap_err();
        assert_eq!(err, PartitionError::BarredSingleBase { base: 1 });
    }

    #[test]
    fn inversion_count_of_std_example() {
        let p = ColoredPartition::parse(
            "0 4^0 4^1 4^2 | 1^1 3^0/1^2 3^1/1^0 3^2 | 2^1/2^2/2^0",
            3,
            4,
            false,
        )
        .unwrap();
        let inv = p.inversion_set();
        assert_eq!(inv.count(), 11);
        // (4^0, S_1..S_6) and (3^0, S_2..S_6)
        let four: Vec<usize> = inv
            .block_pairs
            .iter()
            .filter(|(e, _)| e.base() == 4)
            .map(|&(_, l)| l)
            .collect();
        assert_eq!(four, vec![1, 2, 3, 4, 5, 6]);
        let three: Vec<usize> = inv
            .block_pairs
            .iter()
            .filter(|(e, _)| e.base() == 3)
            .map(|&(_, l)| l)
            .collect();
        assert_eq!(three, vec![2, 3, 4, 5, 6]);
    }

    #[test]
    fn super_inversion_example() {
        let sp = SuperPartition::parse("0 1^2 1^0 1^1 3^2 3^0 3^1 | 2^1/2^2/2^0", 3, 3).unwrap();
        let inv = sp.inversion_set();
        assert_eq!(inv.zero_pairs.len(), 2); // (1^0,1^1) and (3^0,3^1)
        assert_eq!(inv.count(), 5);
    }

    #[test]
    fn single_base_partition_has_no_inversions() {
        let p = ColoredPartition::parse("0 | 1^1/1^0", 2, 1, false).unwrap();
        assert_eq!(p.inversion_set().count(), 0);
    }

    #[test]
    fn enumerate_counts_match_brute_force() {
        for (m, n) in [(1u32, 3u32), (2, 2), (2, 3), (3, 2)] {
            for k in 0..=n as usize {
                for barred in [false, true] {
                    if barred && m == 1 {
                        continue;
                    }
                    let fast = enumerate_partitions(m, n, k as i64, barred);
                    let slow = brute_force_partitions(m, n, k, barred);
                    let fast_set: BTreeSet<_> = fast.iter().cloned().collect();
                    let slow_set: BTreeSet<_> = slow.into_iter().collect();
                    assert_eq!(fast.len(), fast_set.len(), "duplicates at {m},{n},{k}");
                    assert_eq!(fast_set, slow_set, "mismatch at {m},{n},{k},{barred}");
                }
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_partitions(2, 2, 1, false).len(), 4);
        assert_eq!(enumerate_partitions(2, 2, 1, true).len(), 2);
        let stream = enumerate_partitions(3, 3, 2, false);
        let target =
            ColoredPartition::parse("0 | 1^0 2^2/1^1 2^0/1^2 2^1 | 3^0/3^1/3^2", 3, 3, false)
                .unwrap();
        assert!(stream.contains(&target));
        assert!(enumerate_partitions(2, 2, -1, false).is_empty());
        assert!(enumerate_partitions(2, 2, 3, false).is_empty());
    }

    #[test]
    fn enumerate_is_deterministic() {
        let a = enumerate_partitions(3, 3, 1, false);
        let b = enumerate_partitions(3, 3, 1, false);
        assert_eq!(a, b);
    }

    #[test]
    fn super_enumeration() {
        let supers = enumerate_super(3, 3, 1);
        let a = SuperPartition::parse("0 1^1 1^2 1^0 3^2 3^0 3^1 | 2^1/2^2/2^0", 3, 3).unwrap();
        let b = SuperPartition::parse("0 1^2 1^0 1^1 3^2 3^0 3^1 | 2^1/2^2/2^0", 3, 3).unwrap();
        assert!(supers.contains(&a));
        assert!(supers.contains(&b));
        assert_ne!(a, b);
        // all singletons: unique super structure
        assert_eq!(enumerate_super(3, 3, 3).len(), enumerate_partitions(3, 3, 3, false).len());
        // (2,1,0): one partition, one ordering choice
        assert_eq!(enumerate_super(2, 1, 0).len(), 1);
        // m = 1: only empty zero blocks admit super structure
        assert_eq!(enumerate_super(1, 2, 1).len(), 1);
    }

    #[test]
    fn ordered_enumeration() {
        let ordered = enumerate_ordered(3, 3, 2, Flavor::Super);
        let a = OrderedPartition::parse(
            "(0 3^2 3^0 3^1 | 1^0/1^1/1^2 | 2^1/2^2/2^0)",
            3,
            3,
            Flavor::Super,
        )
        .unwrap();
        let b = OrderedPartition::parse(
            "(0 3^2 3^0 3^1 | 1^2/1^0/1^1 | 2^1/2^2/2^0)",
            3,
            3,
            Flavor::Super,
        )
        .unwrap();
        assert!(ordered.contains(&a));
        assert!(ordered.contains(&b));
        assert_ne!(a, b);
        // the sequence violating S_2 = ζ S_1 cannot even be constructed
        assert!(OrderedPartition::parse(
            "(0 3^2 3^0 3^1 | 1^1/1^0/1^2 | 2^1/2^2/2^0)",
            3,
            3,
            Flavor::Super
        )
        .is_err());
        // counts: m^k k! per base object
        assert_eq!(ordered.len(), 9 * 2 * enumerate_super(3, 3, 2).len());
        let cr = enumerate_ordered(2, 1, 1, Flavor::Cr);
        let texts: Vec<String> = cr.iter().map(|o| o.to_text()).collect();
        assert_eq!(texts.len(), 2);
        assert!(texts.contains(&"(0 | 1^0/1^1)".to_string()));
        assert!(texts.contains(&"(0 | 1^1/1^0)".to_string()));
    }

    #[test]
    fn refines_examples() {
        let bottom = ColoredPartition::parse("0 | 1^1/1^0 | 2^1/2^0", 2, 2, false).unwrap();
        let top = ColoredPartition::parse("0 1^0 1^1 2^0 2^1", 2, 2, false).unwrap();
        assert!(bottom.refines(&top));
        assert!(bottom.refines(&bottom));
        let a = ColoredPartition::parse("0 | 1^0 2^0/1^1 2^1", 2, 2, false).unwrap();
        let b = ColoredPartition::parse("0 | 1^0 2^1/1^1 2^0", 2, 2, false).unwrap();
        assert!(!a.refines(&b));
        assert!(!b.refines(&a));
    }

    #[test]
    fn standardize_idempotent_over_enumeration() {
        for p in enumerate_partitions(3, 3, 1, false) {
            let blocks: Vec<Block> = p.blocks_seq().into_iter().cloned().collect();
            let again = ColoredPartition::from_blocks(3, 3, false, blocks).unwrap();
            assert_eq!(p, again);
            assert_eq!(p.inversion_set(), again.inversion_set());
        }
    }

    #[test]
    fn text_roundtrip() {
        for p in enumerate_partitions(3, 2, 1, false) {
            let parsed = ColoredPartition::parse(&p.to_text(), 3, 2, false).unwrap();
            assert_eq!(p, parsed);
        }
        for sp in enumerate_super(3, 2, 1) {
            let parsed = SuperPartition::parse(&sp.to_text(), 3, 2).unwrap();
            assert_eq!(sp, parsed);
        }
        for op in enumerate_ordered(3, 2, 1, Flavor::Super) {
            let parsed = OrderedPartition::parse(&op.to_text(), 3, 2, Flavor::Super).unwrap();
            assert_eq!(op, parsed);
        }
        for op in enumerate_ordered(2, 2, 1, Flavor::Cr) {
            let parsed = OrderedPartition::parse(&op.to_text(), 2, 2, Flavor::Cr).unwrap();
            assert_eq!(op, parsed);
        }
    }
}
