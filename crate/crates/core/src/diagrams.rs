//! Set-partition diagrams of the partition monoid `A_k` and its submonoids.
//!
//! A diagram is a set partition of the `2k` vertices `1..k` (top row) and
//! `1'..k'` (bottom row). Internally every diagram uses the *standard
//! labels* of the one-row picture: top vertex `j` keeps label `j`, bottom
//! vertex `j'` gets label `2k - j + 1`. Blocks are stored as sorted label
//! lists, ordered by their smallest label.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vertex in the two-row picture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Top(usize),
    Bottom(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Top(j) => write!(f, "{j}"),
            Vertex::Bottom(j) => write!(f, "{j}'"),
        }
    }
}

/// The submonoids that can be enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// All set partitions.
    A,
    /// Permutations.
    S,
    /// Brauer diagrams: every block has two vertices.
    B,
    /// Rook diagrams: at most one top and one bottom vertex per block.
    R,
    /// Planar diagrams.
    P,
    /// Temperley-Lieb diagrams: planar Brauer.
    T,
    /// Planar rook diagrams.
    PR,
    /// `A_{k-1/2}`: diagrams of `A_k` with `k` and `k'` in one block.
    HalfA,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::A,
        Family::S,
        Family::B,
        Family::R,
        Family::P,
        Family::T,
        Family::PR,
        Family::HalfA,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::S => "S",
            Family::B => "B",
            Family::R => "R",
            Family::P => "P",
            Family::T => "T",
            Family::PR => "PR",
            Family::HalfA => "half_A",
        }
    }

    /// Largest `k` that [`enumerate`] accepts by default.
    pub fn default_limit(self) -> usize {
        match self {
            Family::A | Family::P | Family::HalfA => 5,
            Family::B | Family::T | Family::R | Family::PR => 6,
            Family::S => 8,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "a" => Ok(Family::A),
            "s" => Ok(Family::S),
            "b" => Ok(Family::B),
            "r" => Ok(Family::R),
            "p" => Ok(Family::P),
            "t" | "tl" => Ok(Family::T),
            "pr" => Ok(Family::PR),
            "half_a" | "halfa" | "a_half" => Ok(Family::HalfA),
            other => Err(Error::InvalidArgument(format!(
                "unknown family {other:?} (expected A, S, B, R, P, T, PR or half_A)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram", into = "RawDiagram")]
pub struct SetPartitionDiagram {
    k: usize,
    half: bool,
    blocks: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawDiagram {
    k: usize,
    half: bool,
    blocks: Vec<Vec<usize>>,
}

impl TryFrom<RawDiagram> for SetPartitionDiagram {
    type Error = Error;

    fn try_from(raw: RawDiagram) -> Result<Self> {
        let d = SetPartitionDiagram::from_standard_blocks(raw.k, raw.blocks)?;
        if raw.half {
            d.with_half_flag()
        } else {
            Ok(d)
        }
    }
}

impl From<SetPartitionDiagram> for RawDiagram {
    fn from(d: SetPartitionDiagram) -> Self {
        RawDiagram {
            k: d.k,
            half: d.half,
            blocks: d.blocks,
        }
    }
}

impl SetPartitionDiagram {
    /// Builds a diagram from blocks given in standard labels `1..=2k`.
    pub fn from_standard_blocks(k: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidDiagram("k must be positive".into()));
        }
        let mut seen = vec![false; 2 * k + 1];
        let mut blocks: Vec<Vec<usize>> = blocks.into_iter().filter(|b| !b.is_empty()).collect();
        for block in &mut blocks {
            for &v in block.iter() {
                if v == 0 || v > 2 * k {
                    return Err(Error::InvalidDiagram(format!(
                        "label {v} is outside 1..={}",
                        2 * k
                    )));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidDiagram(format!("label {v} appears twice")));
                }
            }
            block.sort_unstable();
        }
        if let Some(missing) = (1..=2 * k).find(|&v| !seen[v]) {
            return Err(Error::InvalidDiagram(format!(
                "vertex {} is not covered",
                vertex_of(k, missing)
            )));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartitionDiagram {
            k,
            half: false,
            blocks,
        })
    }

    /// Builds a diagram from blocks over the two-row alphabet.
    pub fn from_blocks(k: usize, blocks: Vec<Vec<Vertex>>) -> Result<Self> {
        let mut standard = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mut labels = Vec::with_capacity(block.len());
            for v in block {
                let j = match v {
                    Vertex::Top(j) | Vertex::Bottom(j) => j,
                };
                if j == 0 || j > k {
                    return Err(Error::InvalidDiagram(format!("vertex {v} is outside 1..={k}")));
                }
                labels.push(label_of(k, v));
            }
            standard.push(labels);
        }
        Self::from_standard_blocks(k, standard)
    }

    /// The identity: every `j` joined to `j'`.
    pub fn identity(k: usize) -> Self {
        let blocks = (1..=k).map(|j| vec![j, 2 * k - j + 1]).collect();
        Self::from_standard_blocks(k, blocks).expect("identity is a valid diagram")
    }

    /// All `2k` vertices in singleton blocks.
    pub fn singletons(k: usize) -> Self {
        let blocks = (1..=2 * k).map(|v| vec![v]).collect();
        Self::from_standard_blocks(k, blocks).expect("singletons form a valid diagram")
    }

    /// Marks the diagram as an element of `A_{k-1/2}`; `k` and `k'` must
    /// share a block.
    pub fn with_half_flag(mut self) -> Result<Self> {
        let b = self.block_of();
        if b[self.k] != b[self.k + 1] {
            return Err(Error::InvalidDiagram(format!(
                "{} and {}' are in different blocks",
                self.k, self.k
            )));
        }
        self.half = true;
        Ok(self)
    }

    pub fn without_half_flag(mut self) -> Self {
        self.half = false;
        self
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_half(&self) -> bool {
        self.half
    }

    /// Blocks in standard labels.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Blocks over the two-row alphabet, in standard-label order.
    pub fn to_blocks(&self) -> Vec<Vec<Vertex>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&v| vertex_of(self.k, v)).collect())
            .collect()
    }

    /// `block_of()[label]` is the index of the block holding `label`;
    /// index 0 is unused.
    pub fn block_of(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; 2 * self.k + 1];
        for (i, b) in self.blocks.iter().enumerate() {
            for &v in b {
                out[v] = i;
            }
        }
        out
    }

    /// Nearest-neighbour edges of the one-row picture, sorted by left end.
    pub fn standard_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = self
            .blocks
            .iter()
            .flat_map(|b| b.windows(2).map(|w| (w[0], w[1])))
            .collect();
        edges.sort_unstable();
        edges
    }

    /// Edge label of the edge whose right end is `right`.
    pub fn edge_label(&self, right: usize) -> u32 {
        (2 * self.k + 1 - right) as u32
    }

    pub fn insertion_sequence(&self) -> InsertionSequence {
        let mut slots = vec![None; 4 * self.k];
        for (left, right) in self.standard_edges() {
            let label = self.edge_label(right);
            // E_left at doubled index 2*left, E_{right - 1/2} at 2*right - 1
            slots[2 * left - 1] = Some(label);
            slots[2 * right - 2] = Some(label);
        }
        InsertionSequence { k: self.k, slots }
    }

    /// Stacks `self` on top of `other` and returns the composite together
    /// with the number of components that lived only in the middle row.
    pub fn compose(&self, other: &SetPartitionDiagram) -> Result<(SetPartitionDiagram, usize)> {
        if self.k != other.k || self.half != other.half {
            return Err(Error::SizeMismatch(format!(
                "cannot compose a diagram of A_{}{} with one of A_{}{}",
                self.k,
                if self.half { "-1/2" } else { "" },
                other.k,
                if other.half { "-1/2" } else { "" },
            )));
        }
        let k = self.k;
        // nodes: 0..k top, k..2k middle, 2k..3k bottom
        let mut dsu = Dsu::new(3 * k);
        let node = |v: Vertex, shift: usize| match v {
            Vertex::Top(j) => shift + j - 1,
            Vertex::Bottom(j) => shift + k + j - 1,
        };
        for block in self.to_blocks() {
            for w in block.windows(2) {
                dsu.union(node(w[0], 0), node(w[1], 0));
            }
        }
        for block in other.to_blocks() {
            for w in block.windows(2) {
                dsu.union(node(w[0], k), node(w[1], k));
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut touches_outer: BTreeMap<usize, bool> = BTreeMap::new();
        for n in 0..3 * k {
            let root = dsu.find(n);
            let outer = n < k || n >= 2 * k;
            *touches_outer.entry(root).or_default() |= outer;
            if outer {
                let v = if n < k {
                    Vertex::Top(n + 1)
                } else {
                    Vertex::Bottom(n - 2 * k + 1)
                };
                groups.entry(root).or_default().push(label_of(k, v));
            }
        }
        let removed = touches_outer.values().filter(|&&t| !t).count();
        let mut d = Self::from_standard_blocks(k, groups.into_values().collect())?;
        d.half = self.half;
        Ok((d, removed))
    }

    /// Number of blocks meeting both rows.
    pub fn propagating_number(&self) -> usize {
        self.blocks
            .iter()
            .filter(|b| b[0] <= self.k && *b.last().unwrap() > self.k)
            .count()
    }

    /// Reflection across the horizontal axis: `j ↔ j'`.
    pub fn flip(&self) -> SetPartitionDiagram {
        let n = 2 * self.k + 1;
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&v| n - v).collect())
            .collect();
        let mut d = Self::from_standard_blocks(self.k, blocks).expect("flip keeps a valid partition");
        d.half = self.half;
        d
    }

    pub fn is_symmetric(&self) -> bool {
        self.blocks == self.flip().blocks
    }

    /// No two one-row edges `(a, b)`, `(c, d)` with `a < c < b < d`.
    pub fn is_planar(&self) -> bool {
        let edges = self.standard_edges();
        !edges.iter().any(|&(a, b)| {
            edges.iter().any(|&(c, d)| a < c && c < b && b < d)
        })
    }

    pub fn is_permutation(&self) -> bool {
        self.propagating_number() == self.k
    }

    pub fn is_brauer(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 2)
    }

    pub fn is_rook(&self) -> bool {
        self.blocks.iter().all(|b| {
            let top = b.iter().filter(|&&v| v <= self.k).count();
            top <= 1 && b.len() - top <= 1
        })
    }

    pub fn is_temperley_lieb(&self) -> bool {
        self.is_brauer() && self.is_planar()
    }

    pub fn is_planar_rook(&self) -> bool {
        self.is_rook() && self.is_planar()
    }

    /// Membership in the ideal `I_t`: propagating number at most `t`.
    pub fn in_ideal(&self, t: usize) -> bool {
        self.propagating_number() <= t
    }

    /// Whether `k` and `k'` share a block.
    pub fn joins_middle(&self) -> bool {
        let b = self.block_of();
        b[self.k] == b[self.k + 1]
    }

    pub fn belongs_to(&self, family: Family) -> bool {
        match family {
            Family::A => true,
            Family::S => self.is_permutation(),
            Family::B => self.is_brauer(),
            Family::R => self.is_rook(),
            Family::P => self.is_planar(),
            Family::T => self.is_temperley_lieb(),
            Family::PR => self.is_planar_rook(),
            Family::HalfA => self.joins_middle(),
        }
    }
}

pub(crate) fn label_of(k: usize, v: Vertex) -> usize {
    match v {
        Vertex::Top(j) => j,
        Vertex::Bottom(j) => 2 * k - j + 1,
    }
}

pub(crate) fn vertex_of(k: usize, label: usize) -> Vertex {
    if label <= k {
        Vertex::Top(label)
    } else {
        Vertex::Bottom(2 * k - label + 1)
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl fmt::Display for SetPartitionDiagram {
    /// `1 3 4' | 2 1' | 4 3' 2'`: blocks by smallest standard label, members
    /// in standard-label order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            for (j, &v) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", vertex_of(self.k, v))?;
            }
        }
        Ok(())
    }
}

impl FromStr for SetPartitionDiagram {
    type Err = Error;

    /// Parses `1 3 4' | 2 1' | 4 3' 2'`. `k` is the largest index that
    /// appears; every vertex of both rows must be covered exactly once.
    fn from_str(s: &str) -> Result<Self> {
        let mut blocks: Vec<Vec<(Vertex, usize)>> = vec![Vec::new()];
        let chars: Vec<(usize, char)> = s.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (pos, c) = chars[i];
            let column = s[..pos].chars().count() + 1;
            if c.is_whitespace() || c == ',' {
                i += 1;
            } else if c == '|' {
                if blocks.last().unwrap().is_empty() {
                    return Err(Error::parse(column, "empty block"));
                }
                blocks.push(Vec::new());
                i += 1;
            } else if c.is_ascii_digit() {
                let mut value: usize = 0;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(chars[i].1 as usize - '0' as usize))
                        .ok_or_else(|| Error::parse(column, "vertex index too large"))?;
                    i += 1;
                }
                if value == 0 {
                    return Err(Error::parse(column, "vertex indices start at 1"));
                }
                let primed = i < chars.len() && matches!(chars[i].1, '\'' | '′');
                if primed {
                    i += 1;
                }
                let v = if primed {
                    Vertex::Bottom(value)
                } else {
                    Vertex::Top(value)
                };
                blocks.last_mut().unwrap().push((v, column));
            } else {
                return Err(Error::parse(column, format!("unexpected character {c:?}")));
            }
        }
        if blocks.last().unwrap().is_empty() {
            let column = s.chars().count() + 1;
            return Err(Error::parse(column, "empty block"));
        }
        let k = blocks
            .iter()
            .flatten()
            .map(|(v, _)| match v {
                Vertex::Top(j) | Vertex::Bottom(j) => *j,
            })
            .max()
            .unwrap_or(0);
        let mut seen = BTreeMap::new();
        for &(v, column) in blocks.iter().flatten() {
            if seen.insert(v, column).is_some() {
                return Err(Error::parse(column, format!("vertex {v} appears twice")));
            }
        }
        let blocks = blocks
            .into_iter()
            .map(|b| b.into_iter().map(|(v, _)| v).collect())
            .collect();
        Self::from_blocks(k, blocks)
    }
}

/// The insertion sequence `E`: slots indexed by `j = 1/2, 1, 3/2, …, 2k`,
/// stored at doubled indices `1..=4k`. Integer slots hold the label of the
/// edge whose left end is `j`; half slots `j - 1/2` hold the label of the
/// edge whose right end is `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InsertionSequence {
    k: usize,
    slots: Vec<Option<u32>>,
}

impl InsertionSequence {
    /// Builds a sequence from its `4k` slots (doubled indices `1..=4k`).
    pub fn new(k: usize, slots: Vec<Option<u32>>) -> Result<Self> {
        if slots.len() != 4 * k {
            return Err(Error::SizeMismatch(format!(
                "an insertion sequence for k = {k} has {} slots, got {}",
                4 * k,
                slots.len()
            )));
        }
        Ok(InsertionSequence { k, slots })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Slot at doubled index `m` (`1..=4k`).
    pub fn get(&self, m: usize) -> Option<u32> {
        self.slots[m - 1]
    }

    pub fn slots(&self) -> &[Option<u32>] {
        &self.slots
    }

    /// Rebuilds the diagram. Fails unless every inserted label is deleted
    /// later at the matching right endpoint and vice versa.
    pub fn to_diagram(&self) -> Result<SetPartitionDiagram> {
        let k2 = 2 * self.k;
        let mut dsu = Dsu::new(k2 + 1);
        let mut deletions = 0;
        for m in 1..=2 * k2 {
            let Some(label) = self.get(m) else { continue };
            if label == 0 || label as usize >= k2 {
                return Err(Error::InvalidDiagram(format!(
                    "edge label {label} outside 1..{k2}"
                )));
            }
            let right = k2 + 1 - label as usize;
            if m % 2 == 0 {
                let left = m / 2;
                if left >= right || self.get(2 * right - 1) != Some(label) {
                    return Err(Error::InvalidDiagram(format!(
                        "label {label} inserted at vertex {left} is not deleted at vertex {right}"
                    )));
                }
                dsu.union(left, right);
            } else {
                if m.div_ceil(2) != right {
                    return Err(Error::InvalidDiagram(format!(
                        "label {label} deleted at the wrong vertex {}",
                        m.div_ceil(2)
                    )));
                }
                deletions += 1;
            }
        }
        let insertions = self.slots.iter().flatten().count() - deletions;
        if insertions != deletions {
            return Err(Error::InvalidDiagram("unmatched edge labels".into()));
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 1..=k2 {
            let root = dsu.find(v);
            groups.entry(root).or_default().push(v);
        }
        SetPartitionDiagram::from_standard_blocks(self.k, groups.into_values().collect())
    }
}

impl fmt::Display for InsertionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.slots.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match s {
                Some(v) => write!(f, "{v}")?,
                None => f.write_str("-")?,
            }
        }
        Ok(())
    }
}

/// Iterator over the diagrams of a family.
pub struct Diagrams {
    inner: Box<dyn Iterator<Item = SetPartitionDiagram> + Send>,
}

impl Iterator for Diagrams {
    type Item = SetPartitionDiagram;

    fn next(&mut self) -> Option<SetPartitionDiagram> {
        self.inner.next()
    }
}

/// Enumerates `family` at size `k` under the family's default limit.
pub fn enumerate(k: usize, family: Family) -> Result<Diagrams> {
    enumerate_with_limit(k, family, family.default_limit())
}

/// Every member of `family` in `A_k` exactly once, in a fixed order. `A_k`
/// itself is generated from restricted-growth strings over the standard
/// labels; the sparse families are generated directly.
pub fn enumerate_with_limit(k: usize, family: Family, limit: usize) -> Result<Diagrams> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if k > limit {
        return Err(Error::LimitExceeded {
            what: format!("exhaustive enumeration of {family} at k = {k}"),
            limit,
        });
    }
    let inner: Box<dyn Iterator<Item = SetPartitionDiagram> + Send> = match family {
        Family::A => Box::new(RestrictedGrowth::new(2 * k).map(move |blocks| diagram(k, blocks))),
        Family::P => Box::new(
            RestrictedGrowth::new(2 * k)
                .map(move |blocks| diagram(k, blocks))
                .filter(SetPartitionDiagram::is_planar),
        ),
        Family::HalfA => Box::new(RestrictedGrowth::new(2 * k - 1).map(move |blocks| {
            // element e < k is label e + 1, the rest shift past label k + 1,
            // which joins the block of label k
            let blocks = blocks
                .into_iter()
                .map(|b| {
                    let mut out = Vec::with_capacity(b.len() + 1);
                    for e in b {
                        if e <= k {
                            out.push(e);
                            if e == k {
                                out.push(k + 1);
                            }
                        } else {
                            out.push(e + 1);
                        }
                    }
                    out
                })
                .collect();
            diagram(k, blocks)
                .with_half_flag()
                .expect("k and k' share a block by construction")
        })),
        Family::S => Box::new(permutations(k).into_iter().map(move |p| {
            let blocks = p
                .iter()
                .enumerate()
                .map(|(i, &j)| vec![i + 1, 2 * k - j + 1])
                .collect();
            diagram(k, blocks)
        })),
        Family::B => Box::new(matchings(2 * k).into_iter().map(move |m| diagram(k, m))),
        Family::T => Box::new(
            matchings(2 * k)
                .into_iter()
                .map(move |m| diagram(k, m))
                .filter(SetPartitionDiagram::is_planar),
        ),
        Family::R => Box::new(rook_diagrams(k).into_iter()),
        Family::PR => Box::new(
            rook_diagrams(k)
                .into_iter()
                .filter(SetPartitionDiagram::is_planar),
        ),
    };
    Ok(Diagrams { inner })
}

fn diagram(k: usize, blocks: Vec<Vec<usize>>) -> SetPartitionDiagram {
    SetPartitionDiagram::from_standard_blocks(k, blocks).expect("generator yields set partitions")
}

/// Restricted-growth strings `a_1 … a_n` (`a_1 = 0`, `a_i ≤ 1 + max a_{<i}`)
/// in lexicographic order, yielded as blocks over `1..=n`.
struct RestrictedGrowth {
    a: Vec<usize>,
    done: bool,
}

impl RestrictedGrowth {
    fn new(n: usize) -> Self {
        RestrictedGrowth {
            a: vec![0; n],
            done: n == 0,
        }
    }

    fn advance(&mut self) {
        let n = self.a.len();
        for i in (1..n).rev() {
            let prefix_max = *self.a[..i].iter().max().unwrap();
            if self.a[i] <= prefix_max {
                self.a[i] += 1;
                for x in &mut self.a[i + 1..] {
                    *x = 0;
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Vec<Vec<usize>>;

    fn next(&mut self) -> Option<Vec<Vec<usize>>> {
        if self.done {
            return None;
        }
        let count = self.a.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); count];
        for (i, &b) in self.a.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        self.advance();
        Some(blocks)
    }
}

/// Permutations of `1..=k` in lexicographic order.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (1..=k).collect();
    loop {
        out.push(current.clone());
        // next permutation
        let Some(i) = (1..k).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..k).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

/// Perfect matchings of `1..=n`, pairing the smallest free point first.
fn matchings(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(free: &[usize], current: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        let Some((&first, rest)) = free.split_first() else {
            out.push(current.clone());
            return;
        };
        for (i, &partner) in rest.iter().enumerate() {
            let mut remaining = rest.to_vec();
            remaining.remove(i);
            current.push(vec![first, partner]);
            go(&remaining, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        let free: Vec<usize> = (1..=n).collect();
        go(&free, &mut Vec::new(), &mut out);
    }
    out
}

/// Rook diagrams: each top vertex is joined to at most one unused bottom
/// vertex; "unmatched" is tried before each bottom vertex.
fn rook_diagrams(k: usize) -> Vec<SetPartitionDiagram> {
    fn go(
        k: usize,
        i: usize,
        used: &mut Vec<bool>,
        image: &mut Vec<Option<usize>>,
        out: &mut Vec<SetPartitionDiagram>,
    ) {
        if i > k {
            let mut blocks = Vec::new();
            for (top, target) in image.iter().enumerate() {
                match target {
                    Some(j) => blocks.push(vec![top + 1, 2 * k - j + 1]),
                    None => blocks.push(vec![top + 1]),
                }
            }
            for (j, _) in used.iter().enumerate().skip(1).filter(|(_, u)| !**u) {
                blocks.push(vec![2 * k - j + 1]);
            }
            out.push(diagram(k, blocks));
            return;
        }
        image.push(None);
        go(k, i + 1, used, image, out);
        image.pop();
        for j in 1..=k {
            if !used[j] {
                used[j] = true;
                image.push(Some(j));
                go(k, i + 1, used, image, out);
                image.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(k, 1, &mut vec![false; k + 1], &mut Vec::new(), &mut out);
    out
}
