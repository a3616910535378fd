//! Standard tableaux with distinct (not necessarily contiguous) entries and
//! the four moves the insertion algorithms are built from: row insertion,
//! row uninsertion, jeu de taquin deletion and its reverse.
//!
//! Cells are addressed `(row, column)`, both 1-based, row 1 on top.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::IntegerPartition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct StandardTableau {
    rows: Vec<Vec<u32>>,
}

impl StandardTableau {
    /// Validates partition shape, strictly increasing rows and columns and
    /// pairwise distinct positive entries. Empty trailing rows are dropped.
    pub fn new(mut rows: Vec<Vec<u32>>) -> Result<Self> {
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        if rows.iter().any(|r| r.is_empty()) {
            return Err(Error::InvalidTableau("empty row above a nonempty row".into()));
        }
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::InvalidTableau("row lengths are not weakly decreasing".into()));
        }
        let mut seen = HashSet::new();
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v == 0 {
                    return Err(Error::InvalidTableau("entries must be positive".into()));
                }
                if !seen.insert(v) {
                    return Err(Error::DuplicateEntry(v));
                }
                if j > 0 && row[j - 1] >= v {
                    return Err(Error::InvalidTableau(format!("row {} is not increasing", i + 1)));
                }
                if i > 0 && rows[i - 1][j] >= v {
                    return Err(Error::InvalidTableau(format!(
                        "column {} is not increasing",
                        j + 1
                    )));
                }
            }
        }
        Ok(StandardTableau { rows })
    }

    pub fn empty() -> Self {
        StandardTableau { rows: Vec::new() }
    }

    /// The one-row tableau `1 2 … n`.
    pub fn single_row(n: u32) -> Self {
        if n == 0 {
            return Self::empty();
        }
        StandardTableau {
            rows: vec![(1..=n).collect()],
        }
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Number of cells.
    pub fn len(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> IntegerPartition {
        IntegerPartition::from_parts_unchecked(self.rows.iter().map(|r| r.len() as u32).collect())
    }

    /// Entries in increasing order.
    pub fn entries(&self) -> Vec<u32> {
        let mut all: Vec<u32> = self.rows.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    pub fn max_entry(&self) -> Option<u32> {
        self.rows.iter().flatten().copied().max()
    }

    pub fn get(&self, cell: Cell) -> Option<u32> {
        if cell.row == 0 || cell.col == 0 {
            return None;
        }
        self.rows.get(cell.row - 1)?.get(cell.col - 1).copied()
    }

    pub fn position(&self, x: u32) -> Option<Cell> {
        self.rows.iter().enumerate().find_map(|(i, row)| {
            row.iter()
                .position(|&v| v == x)
                .map(|j| Cell::new(i + 1, j + 1))
        })
    }

    pub fn contains_entry(&self, x: u32) -> bool {
        self.rows.iter().any(|r| r.contains(&x))
    }

    /// A cell whose removal leaves a partition shape.
    pub fn is_corner(&self, cell: Cell) -> bool {
        cell.row >= 1
            && cell.row <= self.rows.len()
            && cell.col == self.rows[cell.row - 1].len()
            && self.rows.get(cell.row).is_none_or(|below| below.len() < cell.col)
    }

    /// A cell that can be added while keeping a partition shape.
    pub fn is_addable(&self, cell: Cell) -> bool {
        if cell.row == 0 || cell.row > self.rows.len() + 1 {
            return false;
        }
        let len = self.rows.get(cell.row - 1).map_or(0, Vec::len);
        let above = if cell.row == 1 {
            usize::MAX
        } else {
            self.rows[cell.row - 2].len()
        };
        cell.col == len + 1 && len < above
    }

    /// Row-inserts `x` in place and returns the bumping path: every cell
    /// whose value was replaced, ending with the newly created cell.
    pub fn insert(&mut self, x: u32) -> Result<Vec<Cell>> {
        if x == 0 {
            return Err(Error::InvalidArgument("entries must be positive".into()));
        }
        if self.contains_entry(x) {
            return Err(Error::DuplicateEntry(x));
        }
        let mut path = Vec::new();
        let mut x = x;
        for r in 0.. {
            if r == self.rows.len() {
                self.rows.push(vec![x]);
                path.push(Cell::new(r + 1, 1));
                break;
            }
            let row = &mut self.rows[r];
            // first entry greater than x; rows are sorted
            let j = row.partition_point(|&v| v < x);
            if j == row.len() {
                row.push(x);
                path.push(Cell::new(r + 1, j + 1));
                break;
            }
            std::mem::swap(&mut row[j], &mut x);
            path.push(Cell::new(r + 1, j + 1));
        }
        Ok(path)
    }

    pub fn rsk_insert(&self, x: u32) -> Result<(StandardTableau, Vec<Cell>)> {
        let mut t = self.clone();
        let path = t.insert(x)?;
        Ok((t, path))
    }

    /// Removes the value in `corner` and runs the bumping backwards,
    /// returning the value that leaves the first row.
    pub fn uninsert(&mut self, corner: Cell) -> Result<u32> {
        if !self.is_corner(corner) {
            return Err(Error::NotACorner(corner));
        }
        let r = corner.row - 1;
        let mut y = self.rows[r].pop().expect("corner row is nonempty");
        if self.rows[r].is_empty() {
            self.rows.pop();
        }
        for row in self.rows[..r].iter_mut().rev() {
            // largest entry smaller than y
            let j = row.partition_point(|&v| v < y) - 1;
            std::mem::swap(&mut row[j], &mut y);
        }
        Ok(y)
    }

    pub fn rsk_uninsert(&self, corner: Cell) -> Result<(StandardTableau, u32)> {
        let mut t = self.clone();
        let x = t.uninsert(corner)?;
        Ok((t, x))
    }

    /// Deletes `x` by jeu de taquin in place. Returns the cells the hole
    /// slid into; empty when `x` already sat in a corner.
    pub fn delete(&mut self, x: u32) -> Result<Vec<Cell>> {
        let mut c = self.position(x).ok_or(Error::MissingEntry(x))?;
        let mut path = Vec::new();
        while !self.is_corner(c) {
            let below = self.get(Cell::new(c.row + 1, c.col));
            let right = self.get(Cell::new(c.row, c.col + 1));
            let next = match (below, right) {
                (Some(b), Some(r)) if b < r => Cell::new(c.row + 1, c.col),
                (Some(_), None) => Cell::new(c.row + 1, c.col),
                (_, Some(_)) => Cell::new(c.row, c.col + 1),
                (None, None) => unreachable!("a cell with no neighbour below or right is a corner"),
            };
            let moved = self.get(next).expect("neighbour exists");
            self.rows[c.row - 1][c.col - 1] = moved;
            self.rows[next.row - 1][next.col - 1] = x;
            path.push(next);
            c = next;
        }
        self.rows[c.row - 1].pop();
        if self.rows[c.row - 1].is_empty() {
            self.rows.pop();
        }
        Ok(path)
    }

    pub fn jdt_delete(&self, x: u32) -> Result<StandardTableau> {
        let mut t = self.clone();
        t.delete(x)?;
        Ok(t)
    }

    /// [`jdt_delete`](Self::jdt_delete) together with the slide path.
    pub fn jdt_delete_traced(&self, x: u32) -> Result<(StandardTableau, Vec<Cell>)> {
        let mut t = self.clone();
        let path = t.delete(x)?;
        Ok((t, path))
    }

    /// Places `x` in the addable box `target` and moves it up and left,
    /// swapping with the larger of its upper and left neighbours while that
    /// neighbour exceeds `x`. Inverts [`delete`](Self::delete).
    pub fn reverse_slide(&mut self, target: Cell, x: u32) -> Result<()> {
        if !self.is_addable(target) {
            return Err(Error::NotAddable(target));
        }
        if x == 0 {
            return Err(Error::InvalidArgument("entries must be positive".into()));
        }
        if self.contains_entry(x) {
            return Err(Error::DuplicateEntry(x));
        }
        if target.row > self.rows.len() {
            self.rows.push(Vec::new());
        }
        self.rows[target.row - 1].push(x);
        let mut c = target;
        loop {
            let above = (c.row > 1).then(|| self.rows[c.row - 2][c.col - 1]);
            let left = (c.col > 1).then(|| self.rows[c.row - 1][c.col - 2]);
            let next = match (above, left) {
                (Some(a), Some(l)) if a > l => Cell::new(c.row - 1, c.col),
                (Some(_), None) => Cell::new(c.row - 1, c.col),
                (_, Some(_)) => Cell::new(c.row, c.col - 1),
                (None, None) => break,
            };
            let v = self.rows[next.row - 1][next.col - 1];
            if v < x {
                break;
            }
            self.rows[c.row - 1][c.col - 1] = v;
            self.rows[next.row - 1][next.col - 1] = x;
            c = next;
        }
        Ok(())
    }

    pub fn jdt_reverse(&self, target: Cell, x: u32) -> Result<StandardTableau> {
        let mut t = self.clone();
        t.reverse_slide(target, x)?;
        Ok(t)
    }

    /// Puts `x` into the addable box `target` without sliding; `x` must
    /// exceed its upper and left neighbours.
    pub fn place(&mut self, target: Cell, x: u32) -> Result<()> {
        if !self.is_addable(target) {
            return Err(Error::NotAddable(target));
        }
        if self.contains_entry(x) {
            return Err(Error::DuplicateEntry(x));
        }
        let above = (target.row > 1).then(|| self.rows[target.row - 2][target.col - 1]);
        let left = (target.col > 1).then(|| self.rows[target.row - 1][target.col - 2]);
        if above.is_some_and(|a| a > x) || left.is_some_and(|l| l > x) {
            return Err(Error::InvalidTableau(format!(
                "placing {x} at {target} breaks standardness"
            )));
        }
        if target.row > self.rows.len() {
            self.rows.push(Vec::new());
        }
        self.rows[target.row - 1].push(x);
        Ok(())
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return f.write_str("-");
        }
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for StandardTableau {
    type Err = Error;

    /// Rows separated by `/`, entries by `,`; `-` is the empty tableau.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "-" || t == "∅" {
            return Ok(Self::empty());
        }
        let mut rows = Vec::new();
        let mut col = s.len() - s.trim_start().len();
        for row_text in t.split('/') {
            let mut row = Vec::new();
            for piece in row_text.split(',') {
                let at = col + (piece.len() - piece.trim_start().len()) + 1;
                let v: u32 = piece.trim().parse().map_err(|_| {
                    Error::parse(at, format!("expected a positive integer, found {:?}", piece.trim()))
                })?;
                row.push(v);
                col += piece.len() + 1;
            }
            rows.push(row);
        }
        StandardTableau::new(rows)
    }
}

impl TryFrom<Vec<Vec<u32>>> for StandardTableau {
    type Error = Error;

    fn try_from(rows: Vec<Vec<u32>>) -> Result<Self> {
        StandardTableau::new(rows)
    }
}

impl From<StandardTableau> for Vec<Vec<u32>> {
    fn from(t: StandardTableau) -> Self {
        t.rows
    }
}
