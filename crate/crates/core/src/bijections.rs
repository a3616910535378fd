//! The delete-insert bijection between sequences and (standard tableau,
//! vacillating tableau) pairs, and the insertion bijection between set
//! partition diagrams and pairs of vacillating tableaux.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagrams::{InsertionSequence, SetPartitionDiagram};
use crate::error::{Error, Result};
use crate::partitions::{parse_partition_at, IntegerPartition};
use crate::tableaux::{Cell, StandardTableau};

/// Which index set the shapes of a vacillating tableau live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coords {
    /// Partitions with at most `k` boxes; steps start at `∅`.
    Gamma,
    /// Partitions of `n` (integer steps) or `n - 1` (half steps); steps
    /// start at the row `(n)`.
    Lambda,
}

/// A sequence `λ^(0), λ^(1/2), …` of partitions, one per half-integer
/// index. Steps from an integer index to the next half index lose at most
/// one box, steps from a half index to the next integer index gain at most
/// one box (`Γ`-form); in `Λ`-form every step moves exactly one box.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawVacillating", into = "RawVacillating")]
pub struct VacillatingTableau {
    coords: Coords,
    n: Option<u32>,
    steps: Vec<IntegerPartition>,
}

#[derive(Serialize, Deserialize)]
struct RawVacillating {
    coords: Coords,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    steps: Vec<IntegerPartition>,
}

impl TryFrom<RawVacillating> for VacillatingTableau {
    type Error = Error;

    fn try_from(raw: RawVacillating) -> Result<Self> {
        match raw.coords {
            Coords::Gamma => {
                if raw.n.is_some() {
                    return Err(Error::InvalidArgument("n is only meaningful in lambda coordinates".into()));
                }
                VacillatingTableau::gamma(raw.steps)
            }
            Coords::Lambda => {
                let n = raw
                    .n
                    .or_else(|| raw.steps.first().map(IntegerPartition::size))
                    .ok_or_else(|| Error::InvalidPath {
                        index: 0,
                        reason: "a vacillating tableau has at least one step".into(),
                    })?;
                VacillatingTableau::lambda(n, raw.steps)
            }
        }
    }
}

impl From<VacillatingTableau> for RawVacillating {
    fn from(v: VacillatingTableau) -> Self {
        RawVacillating {
            coords: v.coords,
            n: v.n,
            steps: v.steps,
        }
    }
}

fn bad(index: usize, reason: impl Into<String>) -> Error {
    Error::InvalidPath {
        index,
        reason: reason.into(),
    }
}

impl VacillatingTableau {
    /// Validates a `Γ`-form path, reporting the first offending index.
    pub fn gamma(steps: Vec<IntegerPartition>) -> Result<Self> {
        let Some(first) = steps.first() else {
            return Err(bad(0, "a vacillating tableau has at least one step"));
        };
        if !first.is_empty() {
            return Err(bad(0, format!("must start at the empty partition, found {first}")));
        }
        for i in 1..steps.len() {
            let (prev, cur) = (&steps[i - 1], &steps[i]);
            let ok = if i % 2 == 1 {
                prev == cur || prev.single_box_row(cur).is_some() && cur.size() < prev.size()
            } else {
                prev == cur || prev.single_box_row(cur).is_some() && cur.size() > prev.size()
            };
            if !ok {
                let verb = if i % 2 == 1 { "remove" } else { "add" };
                return Err(bad(i, format!("{prev} -> {cur} does not {verb} at most one box")));
            }
        }
        Ok(VacillatingTableau {
            coords: Coords::Gamma,
            n: None,
            steps,
        })
    }

    /// Validates a `Λ`-form path for parameter `n`.
    pub fn lambda(n: u32, steps: Vec<IntegerPartition>) -> Result<Self> {
        if steps.is_empty() {
            return Err(bad(0, "a vacillating tableau has at least one step"));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        if steps[0] != IntegerPartition::row(n) {
            return Err(bad(0, format!("must start at ({n}), found {}", steps[0])));
        }
        for i in 1..steps.len() {
            let (prev, cur) = (&steps[i - 1], &steps[i]);
            let (size, shrinks) = if i % 2 == 1 { (n - 1, true) } else { (n, false) };
            if cur.size() != size {
                return Err(bad(i, format!("{cur} should have {size} boxes")));
            }
            let ok = prev.single_box_row(cur).is_some() && (cur.size() < prev.size()) == shrinks;
            if !ok {
                let verb = if shrinks { "remove" } else { "add" };
                return Err(bad(i, format!("{prev} -> {cur} does not {verb} exactly one box")));
            }
        }
        Ok(VacillatingTableau {
            coords: Coords::Lambda,
            n: Some(n),
            steps,
        })
    }

    pub fn coords(&self) -> Coords {
        self.coords
    }

    /// The parameter `n` of a `Λ`-form path.
    pub fn n(&self) -> Option<u32> {
        self.n
    }

    pub fn steps(&self) -> &[IntegerPartition] {
        &self.steps
    }

    /// Number of half steps: twice the length `k`.
    pub fn k2(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn final_shape(&self) -> &IntegerPartition {
        self.steps.last().expect("at least one step")
    }

    /// Every shape has at most one row (or, in `Λ`-form, at most two).
    pub fn is_one_row(&self) -> bool {
        self.to_gamma().steps.iter().all(|s| s.length() <= 1)
    }

    /// Drops the first row of every shape.
    pub fn to_gamma(&self) -> VacillatingTableau {
        match self.coords {
            Coords::Gamma => self.clone(),
            Coords::Lambda => VacillatingTableau {
                coords: Coords::Gamma,
                n: None,
                steps: self.steps.iter().map(IntegerPartition::star).collect(),
            },
        }
    }

    /// Prepends a first row so integer steps have `n` boxes and half steps
    /// `n - 1`.
    pub fn to_lambda(&self, n: u32) -> Result<VacillatingTableau> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        let gamma = self.to_gamma();
        let steps = gamma
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| s.bar(if i % 2 == 0 { n } else { n - 1 }))
            .collect::<Result<Vec<_>>>()?;
        VacillatingTableau::lambda(n, steps)
    }

    /// The first `len` steps.
    pub fn truncated(&self, len: usize) -> Result<VacillatingTableau> {
        if len == 0 || len > self.steps.len() {
            return Err(Error::InvalidArgument(format!(
                "cannot keep {len} of {} steps",
                self.steps.len()
            )));
        }
        Ok(VacillatingTableau {
            coords: self.coords,
            n: self.n,
            steps: self.steps[..len].to_vec(),
        })
    }
}

impl fmt::Display for VacillatingTableau {
    /// `Γ`-form: `-;-;1;1;1,1`. `Λ`-form wraps each shape in parentheses:
    /// `(6);(5);(5,1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            match self.coords {
                Coords::Gamma => write!(f, "{s}")?,
                Coords::Lambda => write!(f, "({s})")?,
            }
        }
        Ok(())
    }
}

impl FromStr for VacillatingTableau {
    type Err = Error;

    /// Parenthesised shapes select `Λ`-form with `n` read off the first
    /// shape; anything else is `Γ`-form.
    fn from_str(s: &str) -> Result<Self> {
        let mut steps = Vec::new();
        let mut offset = 0;
        for piece in s.trim_end().split(';') {
            steps.push(parse_partition_at(piece, offset)?);
            offset += piece.len() + 1;
        }
        if s.contains('(') {
            let n = steps[0].size();
            VacillatingTableau::lambda(n, steps)
        } else {
            VacillatingTableau::gamma(steps)
        }
    }
}

/// The tableaux `T^(0), T^(1/2), …, T^(k)` of the delete-insert process:
/// start from the row `1..n`, then for each entry `i` of `seq` delete `i`
/// by jeu de taquin and row-insert it again.
pub fn di_trace(seq: &[u32], n: u32) -> Result<Vec<StandardTableau>> {
    let k = seq.len();
    if (n as usize) < 2 * k {
        return Err(Error::InvalidArgument(format!(
            "n = {n} is smaller than twice the sequence length {k}"
        )));
    }
    if let Some(&bad) = seq.iter().find(|&&x| x == 0 || x > n) {
        return Err(Error::InvalidArgument(format!("entry {bad} is outside 1..={n}")));
    }
    let mut t = StandardTableau::single_row(n);
    let mut out = Vec::with_capacity(2 * k + 1);
    out.push(t.clone());
    for &x in seq {
        t.delete(x)?;
        out.push(t.clone());
        t.insert(x)?;
        out.push(t.clone());
    }
    Ok(out)
}

/// Delete-insert: returns the final tableau and the shape sequence in
/// `Λ`-form.
pub fn di_insert(seq: &[u32], n: u32) -> Result<(StandardTableau, VacillatingTableau)> {
    let trace = di_trace(seq, n)?;
    let steps = trace.iter().map(StandardTableau::shape).collect();
    let path = VacillatingTableau::lambda(n, steps)?;
    Ok((trace.last().expect("trace is nonempty").clone(), path))
}

/// Inverse of [`di_insert`]. `p` may be given in either form; `n` is taken
/// from `p` in `Λ`-form and from the tableau otherwise.
pub fn di_invert(t: &StandardTableau, p: &VacillatingTableau) -> Result<Vec<u32>> {
    let n = match p.n() {
        Some(n) => n,
        None => t.len() as u32,
    };
    let p = match p.coords() {
        Coords::Lambda => p.clone(),
        Coords::Gamma => p.to_lambda(n)?,
    };
    if p.k2() % 2 == 1 {
        return Err(bad(p.k2(), "path must end at an integer index"));
    }
    let k = p.k2() / 2;
    if (n as usize) < 2 * k {
        return Err(Error::InvalidArgument(format!(
            "n = {n} is smaller than twice the length {k}"
        )));
    }
    if t.shape() != *p.final_shape() {
        return Err(Error::ShapeMismatch(format!(
            "tableau has shape {} but the path ends at {}",
            t.shape(),
            p.final_shape()
        )));
    }
    let mut entries = t.entries();
    entries.sort_unstable();
    if entries != (1..=n).collect::<Vec<_>>() {
        return Err(Error::InvalidTableau(format!("entries must be exactly 1..={n}")));
    }
    let steps = p.steps();
    let mut t = t.clone();
    let mut seq = vec![0; k];
    for j in (0..k).rev() {
        let (whole, half, prev) = (&steps[2 * j + 2], &steps[2 * j + 1], &steps[2 * j]);
        let x = t.uninsert(box_between(whole, half))?;
        t.reverse_slide(box_between(prev, half), x)?;
        seq[j] = x;
    }
    debug_assert_eq!(t, StandardTableau::single_row(n));
    Ok(seq)
}

/// The cell of the single box in `big` but not in `small`.
fn box_between(big: &IntegerPartition, small: &IntegerPartition) -> Cell {
    let row = big
        .single_box_row(small)
        .expect("validated paths move one box per step");
    Cell::new(row, big.part(row - 1) as usize)
}

/// One step of the diagram insertion, for tracing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InsertionStep {
    /// Doubled half-integer index: `1` is `1/2`, `2` is `1`.
    pub index: usize,
    /// Edge label deleted (odd index) or inserted (even index).
    pub label: Option<u32>,
    pub tableau: StandardTableau,
}

/// Runs the insertion on `d`, returning `T^(0)` followed by every later
/// tableau `T^(1/2), T^(1), …, T^(2k)`.
pub fn vac_insert_traced(d: &SetPartitionDiagram) -> Vec<InsertionStep> {
    let e = d.insertion_sequence();
    let mut t = StandardTableau::empty();
    let mut out = Vec::with_capacity(4 * d.k() + 1);
    out.push(InsertionStep {
        index: 0,
        label: None,
        tableau: t.clone(),
    });
    for m in 1..=4 * d.k() {
        let label = e.get(m);
        if let Some(x) = label {
            if m % 2 == 1 {
                let slide = t.delete(x).expect("deleted labels are present");
                // the label being deleted is always the largest entry
                assert!(slide.is_empty(), "deletion of {x} slid through {slide:?}");
            } else {
                t.insert(x).expect("inserted labels are fresh");
            }
        }
        out.push(InsertionStep {
            index: m,
            label,
            tableau: t.clone(),
        });
    }
    out
}

/// The insertion bijection `d -> (P, Q)`: `Q` records the shapes up to the
/// middle index `k`, `P` the shapes from `2k` back down to `k`.
pub fn vac_insert(d: &SetPartitionDiagram) -> (VacillatingTableau, VacillatingTableau) {
    let shapes: Vec<IntegerPartition> = vac_insert_traced(d)
        .iter()
        .map(|s| s.tableau.shape())
        .collect();
    let k2 = 2 * d.k();
    let q = shapes[..=k2].to_vec();
    let p = shapes[k2..].iter().rev().cloned().collect();
    (
        VacillatingTableau::gamma(p).expect("insertion produces a valid path"),
        VacillatingTableau::gamma(q).expect("insertion produces a valid path"),
    )
}

/// Checks that `p` and `q` are `Γ`-form paths of the same even length with
/// the same final shape, returning `k`.
pub(crate) fn check_pair(p: &VacillatingTableau, q: &VacillatingTableau) -> Result<usize> {
    let p = p.to_gamma();
    let q = q.to_gamma();
    if p.k2() != q.k2() {
        return Err(Error::SizeMismatch(format!(
            "P has {} steps and Q has {}",
            p.steps().len(),
            q.steps().len()
        )));
    }
    if p.k2() % 2 == 1 || p.k2() == 0 {
        return Err(Error::SizeMismatch(format!(
            "paths need 2k + 1 steps with k positive, got {}",
            p.steps().len()
        )));
    }
    if p.final_shape() != q.final_shape() {
        return Err(Error::ShapeMismatch(format!(
            "P ends at {} and Q ends at {}",
            p.final_shape(),
            q.final_shape()
        )));
    }
    Ok(p.k2() / 2)
}

/// Inverse of [`vac_insert`].
pub fn vac_invert(p: &VacillatingTableau, q: &VacillatingTableau) -> Result<SetPartitionDiagram> {
    let k = check_pair(p, q)?;
    let (p, q) = (p.to_gamma(), q.to_gamma());
    let k2 = 2 * k;
    let mut shapes: Vec<IntegerPartition> = q.steps().to_vec();
    shapes.extend(p.steps()[..k2].iter().rev().cloned());
    let mut slots = vec![None; 2 * k2];
    let mut t = StandardTableau::empty();
    for i in (0..k2).rev() {
        let (prev, half, next) = (&shapes[2 * i], &shapes[2 * i + 1], &shapes[2 * i + 2]);
        if half != next {
            slots[2 * i + 1] = Some(t.uninsert(box_between(next, half))?);
        }
        if prev != half {
            let label = (k2 - i) as u32;
            t.place(box_between(prev, half), label)?;
            slots[2 * i] = Some(label);
        }
    }
    InsertionSequence::new(k, slots)?.to_diagram()
}
