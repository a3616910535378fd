//! Fomin growth diagrams for set partition diagrams.
//!
//! The grid has columns and rows `1..=2k`; lattice points `(i, j)` satisfy
//! `i + j <= 2k`. The cell in column `i` and row `j` has corners
//! `λ = (i-1, j-1)`, `μ = (i, j-1)`, `ν = (i-1, j)` and `ρ = (i, j)`.
//! An edge of the one-row picture with left end `i` and label `j` puts an
//! X in cell `(i, j)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::bijections::{check_pair, VacillatingTableau};
use crate::diagrams::{InsertionSequence, SetPartitionDiagram};
use crate::error::{Error, Result};
use crate::partitions::IntegerPartition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthDiagram {
    k2: usize,
    xmarks: BTreeSet<(usize, usize)>,
    /// `labels[i][j]` for `i + j <= k2`.
    labels: Vec<Vec<Option<IntegerPartition>>>,
}

impl GrowthDiagram {
    fn blank(k2: usize) -> Self {
        let labels = (0..=k2).map(|i| vec![None; k2 - i + 1]).collect();
        GrowthDiagram {
            k2,
            xmarks: BTreeSet::new(),
            labels,
        }
    }

    pub fn k2(&self) -> usize {
        self.k2
    }

    pub fn xmarks(&self) -> &BTreeSet<(usize, usize)> {
        &self.xmarks
    }

    pub fn has_x(&self, column: usize, row: usize) -> bool {
        self.xmarks.contains(&(column, row))
    }

    /// Label at lattice point `(i, j)`, if assigned.
    pub fn label(&self, i: usize, j: usize) -> Option<&IntegerPartition> {
        self.labels.get(i)?.get(j)?.as_ref()
    }

    fn set(&mut self, i: usize, j: usize, p: IntegerPartition) {
        self.labels[i][j] = Some(p);
    }

    fn get(&self, i: usize, j: usize) -> &IntegerPartition {
        self.label(i, j).expect("label assigned before use")
    }

    pub fn is_filled(&self) -> bool {
        self.labels.iter().flatten().all(Option::is_some)
    }

    /// Reflection across the main diagonal.
    pub fn transpose(&self) -> GrowthDiagram {
        let mut t = GrowthDiagram::blank(self.k2);
        t.xmarks = self.xmarks.iter().map(|&(i, j)| (j, i)).collect();
        for (i, col) in self.labels.iter().enumerate() {
            for (j, l) in col.iter().enumerate() {
                t.labels[j][i] = l.clone();
            }
        }
        t
    }

    /// Re-applies the local rule at every cell.
    pub fn audit(&self) -> Result<()> {
        for i in 1..=self.k2 {
            for j in 1..=self.k2 - i {
                let rho = local_rule(
                    self.get(i - 1, j - 1),
                    self.get(i, j - 1),
                    self.get(i - 1, j),
                    self.has_x(i, j),
                )
                .map_err(|e| inconsistent(i, j, e.to_string()))?;
                if &rho != self.get(i, j) {
                    return Err(inconsistent(i, j, format!("expected {rho}, found {}", self.get(i, j))));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Point<'a> {
            i: usize,
            j: usize,
            shape: &'a IntegerPartition,
        }
        let labels: Vec<Point> = self
            .labels
            .iter()
            .enumerate()
            .flat_map(|(i, col)| {
                col.iter()
                    .enumerate()
                    .filter_map(move |(j, l)| l.as_ref().map(|shape| Point { i, j, shape }))
            })
            .collect();
        serde_json::json!({
            "k2": self.k2,
            "xmarks": self.xmarks.iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
            "labels": labels,
        })
    }
}

fn inconsistent(column: usize, row: usize, reason: impl Into<String>) -> Error {
    Error::InconsistentGrowth {
        column,
        row,
        reason: reason.into(),
    }
}

impl fmt::Display for GrowthDiagram {
    /// Rows from the top (`j = 2k`) down; an `X` sits between the four
    /// lattice points of its cell.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = |i: usize, j: usize| self.label(i, j).map_or(".".to_string(), |p| p.to_string());
        let w = self
            .labels
            .iter()
            .enumerate()
            .flat_map(|(i, col)| (0..col.len()).map(move |j| (i, j)))
            .map(|(i, j)| text(i, j).len())
            .max()
            .unwrap_or(1);
        for j in (0..=self.k2).rev() {
            let mut line = String::new();
            for i in 0..=self.k2 - j {
                if i > 0 {
                    line.push_str("   ");
                }
                line.push_str(&format!("{:<w$}", text(i, j)));
            }
            writeln!(f, "{}", line.trim_end())?;
            if j > 0 {
                let mut cells = " ".repeat(w);
                for i in 1..=self.k2 - j + 1 {
                    let mark = if i + j <= self.k2 && self.has_x(i, j) { " X " } else { "   " };
                    cells.push_str(mark);
                    cells.push_str(&" ".repeat(w));
                }
                writeln!(f, "{}", cells.trim_end())?;
            }
        }
        Ok(())
    }
}

/// The grid of `d` with X-marks placed and the axes labelled `∅`.
pub fn build_xmarks(d: &SetPartitionDiagram) -> GrowthDiagram {
    let k2 = 2 * d.k();
    let mut g = GrowthDiagram::blank(k2);
    for (left, right) in d.standard_edges() {
        g.xmarks.insert((left, k2 + 1 - right));
    }
    for t in 0..=k2 {
        g.set(t, 0, IntegerPartition::empty());
        g.set(0, t, IntegerPartition::empty());
    }
    g
}

/// Forward local rules:
/// * `μ ≠ ν`: `ρ = μ ∪ ν`;
/// * `μ = ν ⊋ λ` with the box `μ/λ` in row `r`: `ρ` is `μ` plus a box in row `r + 1`;
/// * `λ = μ = ν`: `ρ = λ`, or `λ` with its first part grown when the cell has an X.
pub fn local_rule(
    lambda: &IntegerPartition,
    mu: &IntegerPartition,
    nu: &IntegerPartition,
    has_x: bool,
) -> Result<IntegerPartition> {
    if has_x && (mu != lambda || nu != lambda) {
        return Err(Error::InvalidArgument(format!(
            "an X needs λ = μ = ν, got {lambda}, {mu}, {nu}"
        )));
    }
    if mu != nu {
        return Ok(mu.union(nu));
    }
    if mu == lambda {
        return Ok(if has_x {
            lambda.with_box_added(1).expect("row 1 is always addable")
        } else {
            lambda.clone()
        });
    }
    let row = lambda
        .single_box_row(mu)
        .filter(|_| lambda.is_contained_in(mu))
        .ok_or_else(|| Error::InvalidArgument(format!("{mu} is not {lambda} plus one box")))?;
    mu.with_box_added(row + 1)
        .ok_or_else(|| Error::InvalidArgument(format!("cannot add a box to row {} of {mu}", row + 1)))
}

/// Labels every lattice point, anti-diagonal by anti-diagonal.
pub fn forward_fill(mut g: GrowthDiagram) -> Result<GrowthDiagram> {
    for s in 2..=g.k2 {
        for i in 1..s {
            let j = s - i;
            let rho = local_rule(g.get(i - 1, j - 1), g.get(i, j - 1), g.get(i - 1, j), g.has_x(i, j))
                .map_err(|e| inconsistent(i, j, e.to_string()))?;
            g.set(i, j, rho);
        }
    }
    Ok(g)
}

/// Reads `(P, Q)` off the frontier `i + j ∈ {2k - 1, 2k}`. `Q` runs from
/// `(0, 2k)` to `(k, k)`, `P` from `(2k, 0)` to `(k, k)`, each alternating
/// a step towards the origin with a step along the other axis.
pub fn staircase_paths(g: &GrowthDiagram) -> Result<(VacillatingTableau, VacillatingTableau)> {
    let k2 = g.k2;
    if k2 % 2 == 1 {
        return Err(Error::InvalidArgument("the grid parameter must be even".into()));
    }
    let k = k2 / 2;
    let mut q = Vec::with_capacity(k2 + 1);
    let mut p = Vec::with_capacity(k2 + 1);
    for t in 0..=k {
        let at = |i: usize, j: usize| {
            g.label(i, j)
                .cloned()
                .ok_or_else(|| inconsistent(i, j, "unlabelled frontier point"))
        };
        q.push(at(t, k2 - t)?);
        p.push(at(k2 - t, t)?);
        if t < k {
            q.push(at(t, k2 - t - 1)?);
            p.push(at(k2 - t - 1, t)?);
        }
    }
    Ok((VacillatingTableau::gamma(p)?, VacillatingTableau::gamma(q)?))
}

/// Undoes one cell: the unique `(λ, X)` with `local_rule(λ, μ, ν, X) = ρ`.
pub fn inverse_local_rule(
    mu: &IntegerPartition,
    nu: &IntegerPartition,
    rho: &IntegerPartition,
) -> Result<(IntegerPartition, bool)> {
    let (lambda, has_x) = if mu != nu {
        (mu.intersection(nu), false)
    } else if rho == mu {
        (mu.clone(), false)
    } else {
        match mu.single_box_row(rho).filter(|_| mu.is_contained_in(rho)) {
            Some(1) => (mu.clone(), true),
            Some(r) => match mu.with_box_removed(r - 1) {
                Some(l) => (l, false),
                None => return Err(not_in_image(mu, nu, rho)),
            },
            None => return Err(not_in_image(mu, nu, rho)),
        }
    };
    match local_rule(&lambda, mu, nu, has_x) {
        Ok(r) if &r == rho => Ok((lambda, has_x)),
        _ => Err(not_in_image(mu, nu, rho)),
    }
}

fn not_in_image(mu: &IntegerPartition, nu: &IntegerPartition, rho: &IntegerPartition) -> Error {
    Error::InvalidArgument(format!(
        "no cell has μ = {mu}, ν = {nu}, ρ = {rho}"
    ))
}

/// Places `(P, Q)` on the frontier and runs the inverse rules towards the
/// origin, recovering the X-marks and hence the diagram.
pub fn reconstruct_grid(p: &VacillatingTableau, q: &VacillatingTableau) -> Result<GrowthDiagram> {
    let k = check_pair(p, q)?;
    let (p, q) = (p.to_gamma(), q.to_gamma());
    let k2 = 2 * k;
    let mut g = GrowthDiagram::blank(k2);
    for t in 0..=k {
        g.set(t, k2 - t, q.steps()[2 * t].clone());
        g.set(k2 - t, t, p.steps()[2 * t].clone());
        if t < k {
            g.set(t, k2 - t - 1, q.steps()[2 * t + 1].clone());
            g.set(k2 - t - 1, t, p.steps()[2 * t + 1].clone());
        }
    }
    for s in (2..=k2).rev() {
        for i in 1..s {
            let j = s - i;
            let (lambda, has_x) = inverse_local_rule(g.get(i, j - 1), g.get(i - 1, j), g.get(i, j))
                .map_err(|e| inconsistent(i, j, e.to_string()))?;
            if has_x {
                g.xmarks.insert((i, j));
            }
            g.set(i - 1, j - 1, lambda);
        }
    }
    for t in 0..=k2 {
        for (i, j) in [(t, 0), (0, t)] {
            if !g.get(i, j).is_empty() {
                return Err(inconsistent(i, j, format!("axis label {} is not empty", g.get(i, j))));
            }
        }
    }
    let mut columns = BTreeSet::new();
    let mut rows = BTreeSet::new();
    for &(i, j) in &g.xmarks {
        if !columns.insert(i) || !rows.insert(j) {
            return Err(inconsistent(i, j, "two X-marks share a row or column"));
        }
    }
    Ok(g)
}

/// The diagram whose growth diagram has staircase paths `(P, Q)`.
pub fn reconstruct(p: &VacillatingTableau, q: &VacillatingTableau) -> Result<SetPartitionDiagram> {
    let g = reconstruct_grid(p, q)?;
    let k2 = g.k2;
    let mut slots = vec![None; 2 * k2];
    for &(i, j) in &g.xmarks {
        let right = k2 + 1 - j;
        slots[2 * i - 1] = Some(j as u32);
        slots[2 * right - 2] = Some(j as u32);
    }
    InsertionSequence::new(k2 / 2, slots)?.to_diagram()
}

/// `build_xmarks` followed by `forward_fill`.
pub fn growth_diagram(d: &SetPartitionDiagram) -> GrowthDiagram {
    forward_fill(build_xmarks(d)).expect("X-marks from a diagram always fill")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijections::vac_insert;
    use crate::diagrams::{enumerate, Family};

    fn p(s: &str) -> IntegerPartition {
        s.parse().unwrap()
    }

    fn example_4_1() -> SetPartitionDiagram {
        "1 3 4' | 2 1' | 4 3' 2'".parse().unwrap()
    }

    #[test]
    fn xmarks() {
        let g = build_xmarks(&example_4_1());
        let marks: Vec<_> = g.xmarks().iter().copied().collect();
        assert_eq!(marks, vec![(1, 6), (2, 1), (3, 4), (4, 3), (6, 2)]);
        assert!(build_xmarks(&SetPartitionDiagram::singletons(3)).xmarks().is_empty());
        let id = build_xmarks(&SetPartitionDiagram::identity(1));
        assert_eq!(id.xmarks().iter().copied().collect::<Vec<_>>(), vec![(1, 1)]);
    }

    #[test]
    fn local_rules() {
        let e = IntegerPartition::empty();
        assert_eq!(local_rule(&e, &e, &e, true).unwrap(), p("1"));
        assert_eq!(local_rule(&e, &e, &e, false).unwrap(), e);
        assert_eq!(local_rule(&p("1"), &p("2"), &p("1,1"), false).unwrap(), p("2,1"));
        assert_eq!(local_rule(&p("1"), &p("2"), &p("2"), false).unwrap(), p("2,1"));
        assert_eq!(local_rule(&p("1"), &p("1,1"), &p("1,1"), false).unwrap(), p("1,1,1"));
        assert!(local_rule(&p("1"), &p("2"), &p("1"), true).is_err());
    }

    #[test]
    fn inverse_local_rules() {
        let e = IntegerPartition::empty();
        assert_eq!(inverse_local_rule(&e, &e, &p("1")).unwrap(), (e.clone(), true));
        assert_eq!(inverse_local_rule(&p("2"), &p("1,1"), &p("2,1")).unwrap(), (p("1"), false));
        assert_eq!(inverse_local_rule(&p("2"), &p("2"), &p("2,1")).unwrap(), (p("1"), false));
        assert_eq!(inverse_local_rule(&p("1"), &p("1"), &p("1")).unwrap(), (p("1"), false));
        assert!(inverse_local_rule(&p("2"), &p("2"), &p("3,1")).is_err());
        assert!(inverse_local_rule(&p("2"), &p("1,1"), &p("2,2")).is_err());
    }

    #[test]
    fn inverse_undoes_forward() {
        for lambda in crate::partitions::enumerate_gamma(4) {
            let grown: Vec<_> = std::iter::once(lambda.clone())
                .chain(lambda.addable_boxes().into_iter().map(|(_, q)| q))
                .collect();
            for mu in &grown {
                for nu in &grown {
                    for has_x in [false, true] {
                        let Ok(rho) = local_rule(&lambda, mu, nu, has_x) else { continue };
                        assert_eq!(inverse_local_rule(mu, nu, &rho).unwrap(), (lambda.clone(), has_x));
                    }
                }
            }
        }
    }

    #[test]
    fn example_4_1_grid() {
        let g = growth_diagram(&example_4_1());
        assert!(g.is_filled());
        assert_eq!(g.label(4, 4), Some(&p("2,1")));
        g.audit().unwrap();
        let (pd, qd) = staircase_paths(&g).unwrap();
        assert_eq!(qd.to_string(), "-;-;1;1;1,1;1;2;2;2,1");
        assert_eq!(pd.to_string(), "-;-;1;1;2;1;2;2;2,1");
        assert_eq!(reconstruct(&pd, &qd).unwrap(), example_4_1());
    }

    #[test]
    fn empty_grid() {
        let g = growth_diagram(&SetPartitionDiagram::singletons(2));
        for i in 0..=4 {
            for j in 0..=4 - i {
                assert!(g.label(i, j).unwrap().is_empty());
            }
        }
        let (pd, qd) = staircase_paths(&g).unwrap();
        assert_eq!(pd.to_string(), "-;-;-;-;-");
        assert_eq!(qd, pd);
        assert_eq!(reconstruct(&pd, &qd).unwrap(), SetPartitionDiagram::singletons(2));
    }

    #[test]
    fn equivalence_with_insertion() {
        for k in 1..=3 {
            for d in enumerate(k, Family::A).unwrap() {
                let g = growth_diagram(&d);
                g.audit().unwrap();
                let paths = staircase_paths(&g).unwrap();
                assert_eq!(paths, vac_insert(&d), "{d}");
                assert_eq!(reconstruct(&paths.0, &paths.1).unwrap(), d);
            }
        }
    }

    #[test]
    fn monotone_edges() {
        for d in enumerate(3, Family::A).unwrap() {
            let g = growth_diagram(&d);
            for i in 0..=6 {
                for j in 0..=6 - i {
                    let here = g.label(i, j).unwrap();
                    for next in [g.label(i + 1, j), g.label(i, j + 1)].into_iter().flatten() {
                        assert!(here.is_contained_in(next));
                        assert!(next.size() - here.size() <= 1);
                    }
                }
            }
            let mut cols = BTreeSet::new();
            let mut rows = BTreeSet::new();
            for &(i, j) in g.xmarks() {
                assert!(cols.insert(i) && rows.insert(j));
            }
        }
    }

    #[test]
    fn transpose_symmetry() {
        for d in enumerate(3, Family::A).unwrap() {
            let g = growth_diagram(&d);
            let f = growth_diagram(&d.flip());
            assert_eq!(f, g.transpose());
            let (p, q) = staircase_paths(&g).unwrap();
            assert_eq!(staircase_paths(&f).unwrap(), (q, p));
        }
    }

    #[test]
    fn reconstruct_reports_bad_boundaries() {
        let p: VacillatingTableau = "-;-;1;1;2".parse().unwrap();
        let q: VacillatingTableau = "-;-;1;1;1,1".parse().unwrap();
        assert!(reconstruct(&p, &q).is_err());
    }

    #[test]
    fn render_and_json() {
        let g = growth_diagram(&SetPartitionDiagram::identity(1));
        assert_eq!(g.to_string(), "-\n\n-   1\n  X\n-   -   -\n");
        let json = g.to_json();
        assert_eq!(json["k2"], 2);
        assert_eq!(json["xmarks"], serde_json::json!([[1, 1]]));
        assert_eq!(json["labels"].as_array().unwrap().len(), 6);
    }
}
