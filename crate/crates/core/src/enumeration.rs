//! Counting sequences, Bratteli diagrams with path counts, and exhaustive
//! verification of the dimension identities.
//!
//! Every verifier runs the actual bijections over a complete enumeration,
//! buckets the results by shape and compares each bucket with the count
//! predicted from path counting. Work fans out over a rayon pool; all
//! aggregation is order independent.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bijections::{di_insert, di_invert, vac_insert, VacillatingTableau};
use crate::diagrams::{enumerate_with_limit, Family, SetPartitionDiagram};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_gamma, IntegerPartition};

/// Bell number via the Bell triangle.
pub fn bell(l: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for _ in 0..l {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row.swap_remove(0)
}

pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn catalan(l: u64) -> BigUint {
    binomial(2 * l, l) / (l + 1)
}

/// `(2l - 1)(2l - 3) ⋯ 3 · 1`, with value 1 at `l = 0`.
pub fn odd_double_factorial(l: u64) -> BigUint {
    (1..=l).map(|i| BigUint::from(2 * i - 1)).product()
}

pub fn factorial(l: u64) -> BigUint {
    (1..=l).map(BigUint::from).product()
}

fn ser_big<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::Error as _;
    let n: serde_json::Number = x.to_string().parse().map_err(S::Error::custom)?;
    n.serialize(s)
}

fn ser_opt_big<S: Serializer>(x: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => ser_big(x, s),
        None => s.serialize_none(),
    }
}

/// Renders a doubled index as `3` or `2.5`.
pub fn half_label(k2: usize) -> String {
    if k2.is_multiple_of(2) {
        (k2 / 2).to_string()
    } else {
        format!("{}.5", k2 / 2)
    }
}

fn ser_half<S: Serializer>(k2: &usize, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::Error as _;
    let n: serde_json::Number = half_label(*k2).parse().map_err(S::Error::custom)?;
    n.serialize(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BratteliVertex {
    pub shape: IntegerPartition,
    #[serde(serialize_with = "ser_big")]
    pub paths: BigUint,
}

/// Levels of shapes with edges between consecutive levels and the number
/// of paths from the top to each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BratteliDiagram {
    family: Family,
    k2: usize,
    half_steps: bool,
    levels: Vec<Vec<BratteliVertex>>,
    edges: Vec<Vec<(usize, usize)>>,
}

impl BratteliDiagram {
    pub fn family(&self) -> Family {
        self.family
    }

    /// Depth as a doubled index.
    pub fn k2(&self) -> usize {
        self.k2
    }

    /// Whether levels are indexed by half integers (partition algebra
    /// towers) or by integers.
    pub fn half_steps(&self) -> bool {
        self.half_steps
    }

    pub fn levels(&self) -> &[Vec<BratteliVertex>] {
        &self.levels
    }

    /// Edges `(upper index, lower index)` between level `m` and `m + 1`.
    pub fn edges(&self) -> &[Vec<(usize, usize)>] {
        &self.edges
    }

    pub fn level_label(&self, m: usize) -> String {
        if self.half_steps {
            half_label(m)
        } else {
            m.to_string()
        }
    }

    /// Path count of `shape` at level `m` (0 when absent).
    pub fn paths_at(&self, m: usize, shape: &IntegerPartition) -> BigUint {
        self.levels
            .get(m)
            .and_then(|l| l.iter().find(|v| &v.shape == shape))
            .map_or_else(BigUint::zero, |v| v.paths.clone())
    }

    pub fn bottom(&self) -> &[BratteliVertex] {
        self.levels.last().expect("at least one level")
    }

    /// Path count at the bottom level.
    pub fn m(&self, shape: &IntegerPartition) -> BigUint {
        self.paths_at(self.levels.len() - 1, shape)
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph bratteli_{} {{\n  node [shape=plaintext];\n", self.family.name());
        for (m, level) in self.levels.iter().enumerate() {
            out.push_str(&format!("  subgraph level_{m} {{\n    rank=same;\n"));
            for (i, v) in level.iter().enumerate() {
                let shape = if v.shape.is_empty() { "∅".to_string() } else { v.shape.to_string() };
                out.push_str(&format!("    L{m}_{i} [label=\"{shape}\\n{}\"];\n", v.paths));
            }
            out.push_str("  }\n");
        }
        for (m, edges) in self.edges.iter().enumerate() {
            for (a, b) in edges {
                out.push_str(&format!("  L{m}_{a} -> L{}_{b};\n", m + 1));
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let levels: Vec<_> = self
            .levels
            .iter()
            .enumerate()
            .map(|(m, l)| {
                serde_json::json!({
                    "level": self.level_label(m),
                    "vertices": l,
                })
            })
            .collect();
        let edges: Vec<_> = self
            .edges
            .iter()
            .enumerate()
            .flat_map(|(m, es)| es.iter().map(move |&(a, b)| [m, a, b]))
            .collect();
        serde_json::json!({
            "family": self.family.name(),
            "k2": self.k2,
            "levels": levels,
            "edges": edges,
        })
    }
}

impl fmt::Display for BratteliDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, level) in self.levels.iter().enumerate() {
            write!(f, "{:>4}:", self.level_label(m))?;
            for v in level {
                write!(f, "  {}:{}", v.shape, v.paths)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

const BRATTELI_LIMIT: usize = 40;
const ROOK_BRATTELI_LIMIT: usize = 7;

/// Builds the Bratteli diagram of `family` down to doubled depth `k2`.
///
/// `A`, `P` and `half_A` use half-integer levels: going to a half level
/// removes at most one box, going to an integer level adds at most one.
/// `S` adds one box per level, `B` adds or removes one, `PR` adds at most
/// one; `T` and `PR` keep only one-row shapes. The rook tower is read off
/// the insertion paths of every rook diagram.
pub fn build_bratteli(family: Family, k2: usize) -> Result<BratteliDiagram> {
    let half_steps = matches!(family, Family::A | Family::P | Family::HalfA);
    if !half_steps && k2 % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "the {family} tower only has integer levels"
        )));
    }
    if k2 > 2 * BRATTELI_LIMIT {
        return Err(Error::LimitExceeded {
            what: format!("Bratteli diagram depth {}", half_label(k2)),
            limit: BRATTELI_LIMIT,
        });
    }
    let depth = if half_steps { k2 } else { k2 / 2 };
    let rook_moves = if family == Family::R {
        if depth > ROOK_BRATTELI_LIMIT {
            return Err(Error::LimitExceeded {
                what: format!("rook Bratteli diagram at k = {depth}"),
                limit: ROOK_BRATTELI_LIMIT,
            });
        }
        Some(rook_moves(depth)?)
    } else {
        None
    };
    let one_row = matches!(family, Family::P | Family::T | Family::PR);
    let successors = |m: usize, shape: &IntegerPartition| -> Vec<IntegerPartition> {
        let stay = std::iter::once(shape.clone());
        let added = || shape.addable_boxes().into_iter().map(|(_, p)| p);
        let removed = || shape.removable_boxes().into_iter().map(|(_, p)| p);
        let all: Vec<IntegerPartition> = match family {
            Family::A | Family::P | Family::HalfA => {
                if m.is_multiple_of(2) {
                    stay.chain(removed()).collect()
                } else {
                    stay.chain(added()).collect()
                }
            }
            Family::S => added().collect(),
            Family::B | Family::T => added().chain(removed()).collect(),
            Family::PR => stay.chain(added()).collect(),
            Family::R => rook_moves
                .as_ref()
                .and_then(|moves| moves.get(&(m, shape.clone())))
                .map(|s| s.iter().cloned().collect())
                .unwrap_or_default(),
        };
        all.into_iter().filter(|p| !one_row || p.length() <= 1).collect()
    };
    let mut levels = vec![vec![BratteliVertex {
        shape: IntegerPartition::empty(),
        paths: BigUint::one(),
    }]];
    let mut edges = Vec::new();
    for m in 0..depth {
        let mut next: BTreeMap<IntegerPartition, BigUint> = BTreeMap::new();
        let mut raw = Vec::new();
        for (a, v) in levels[m].iter().enumerate() {
            for s in successors(m, &v.shape) {
                *next.entry(s.clone()).or_default() += &v.paths;
                raw.push((a, s));
            }
        }
        let index: BTreeMap<&IntegerPartition, usize> = next.keys().enumerate().map(|(i, s)| (s, i)).collect();
        let mut es: Vec<(usize, usize)> = raw.iter().map(|(a, s)| (*a, index[s])).collect();
        es.sort_unstable();
        edges.push(es);
        levels.push(
            next.into_iter()
                .map(|(shape, paths)| BratteliVertex { shape, paths })
                .collect(),
        );
    }
    Ok(BratteliDiagram {
        family,
        k2,
        half_steps,
        levels,
        edges,
    })
}

/// Integer-level transitions seen along `Q` paths of every rook diagram.
fn rook_moves(k: usize) -> Result<BTreeMap<(usize, IntegerPartition), BTreeSet<IntegerPartition>>> {
    let mut moves: BTreeMap<(usize, IntegerPartition), BTreeSet<IntegerPartition>> = BTreeMap::new();
    if k == 0 {
        return Ok(moves);
    }
    let diagrams: Vec<SetPartitionDiagram> = enumerate_with_limit(k, Family::R, ROOK_BRATTELI_LIMIT)?.collect();
    let paths: Vec<VacillatingTableau> = diagrams.par_iter().map(|d| vac_insert(d).1).collect();
    for q in paths {
        let steps = q.steps();
        for m in 0..k {
            moves
                .entry((m, steps[2 * m].clone()))
                .or_default()
                .insert(steps[2 * m + 2].clone());
        }
    }
    Ok(moves)
}

/// `m_k^λ`: number of paths from the top to `lambda` at doubled depth `k2`.
pub fn m_k_lambda(k2: usize, lambda: &IntegerPartition, family: Family) -> Result<BigUint> {
    Ok(build_bratteli(family, k2)?.m(lambda))
}

/// One row of a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeRow {
    pub shape: IntegerPartition,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_big")]
    pub f: Option<BigUint>,
    #[serde(serialize_with = "ser_big")]
    pub m: BigUint,
    /// What the identity predicts for this shape.
    #[serde(serialize_with = "ser_big")]
    pub contribution: BigUint,
    /// What the bijection produced.
    #[serde(serialize_with = "ser_big")]
    pub observed: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub identity: String,
    #[serde(rename = "k", serialize_with = "ser_half")]
    pub k2: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(serialize_with = "ser_big")]
    pub lhs: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub rhs: BigUint,
    pub per_shape: Vec<ShapeRow>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl Report {
    fn finish(mut self) -> Self {
        if self.lhs != self.rhs {
            self.failures.push(format!("lhs {} differs from rhs {}", self.lhs, self.rhs));
        }
        for row in &self.per_shape {
            if row.observed != row.contribution {
                self.failures.push(format!(
                    "shape {}: observed {} but expected {}",
                    row.shape, row.observed, row.contribution
                ));
            }
        }
        self.pass = self.failures.is_empty();
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("reports serialize")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} k={}", self.identity, half_label(self.k2))?;
        if let Some(n) = self.n {
            write!(f, " n={n}")?;
        }
        writeln!(f)?;
        let show_f = self.per_shape.iter().any(|r| r.f.is_some());
        let mut rows = vec![{
            let mut h = vec!["shape".to_string()];
            if show_f {
                h.push("f".into());
            }
            h.extend(["m".into(), "expected".into(), "observed".into()]);
            h
        }];
        for r in &self.per_shape {
            let mut cells = vec![r.shape.to_string()];
            if show_f {
                cells.push(r.f.as_ref().map_or(String::new(), ToString::to_string));
            }
            cells.extend([r.m.to_string(), r.contribution.to_string(), r.observed.to_string()]);
            rows.push(cells);
        }
        let widths: Vec<usize> = (0..rows[0].len())
            .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect();
        for r in &rows {
            let line: Vec<String> = r
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:>w$}"))
                .collect();
            writeln!(f, "  {}", line.join("  "))?;
        }
        writeln!(f, "lhs = {}", self.lhs)?;
        writeln!(f, "rhs = {}", self.rhs)?;
        for failure in &self.failures {
            writeln!(f, "failure: {failure}")?;
        }
        writeln!(f, "{}", if self.pass { "pass" } else { "FAIL" })
    }
}

/// Worker count and size-guard override for the verifiers.
#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Threads in a dedicated pool; `None` uses the global pool.
    pub workers: Option<usize>,
    /// Raises the default size limits.
    pub force: bool,
}

impl VerifyOptions {
    pub fn with_workers(workers: usize) -> Self {
        VerifyOptions {
            workers: Some(workers),
            force: false,
        }
    }

    fn run<R: Send>(&self, job: impl FnOnce() -> Result<R> + Send) -> Result<R> {
        match self.workers {
            None => job(),
            Some(0) => Err(Error::InvalidArgument("workers must be positive".into())),
            Some(w) => rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::InvalidArgument(e.to_string()))?
                .install(job),
        }
    }

    /// Largest `k` an exhaustive check over `family` may use.
    fn limit(&self, family: Family) -> usize {
        let (default, forced) = match family {
            Family::A | Family::P | Family::HalfA => (4, 6),
            _ => (6, 8),
        };
        if self.force {
            forced
        } else {
            default
        }
    }

    fn diagrams(&self, k: usize, family: Family) -> Result<Vec<SetPartitionDiagram>> {
        let limit = self.limit(family);
        if k > limit {
            return Err(Error::LimitExceeded {
                what: format!("exhaustive verification over {family} at k = {k}"),
                limit,
            });
        }
        Ok(enumerate_with_limit(k, family, limit)?.collect())
    }
}

/// Inserts every diagram, in parallel, keeping input order.
fn insert_all(diagrams: &[SetPartitionDiagram]) -> Vec<(VacillatingTableau, VacillatingTableau)> {
    diagrams.par_iter().map(vac_insert).collect()
}

/// `(family used for path counting, doubled depth)` for diagrams of
/// `family` at size `k`.
fn tower(family: Family, k: usize) -> (Family, usize) {
    match family {
        Family::HalfA => (Family::A, 2 * k - 1),
        f => (f, 2 * k),
    }
}

/// The shape a diagram is bucketed by: the final shape, or for `half_A`
/// the shape at index `k - 1/2`, together with the (possibly truncated)
/// pair and whether the truncation was consistent.
fn bucket_key(
    family: Family,
    k: usize,
    p: &VacillatingTableau,
    q: &VacillatingTableau,
) -> (IntegerPartition, (VacillatingTableau, VacillatingTableau), bool) {
    if family == Family::HalfA {
        let cut = 2 * k;
        let consistent = p.steps()[cut - 1] == q.steps()[cut - 1];
        let pair = (p.truncated(cut).unwrap(), q.truncated(cut).unwrap());
        (q.steps()[cut - 1].clone(), pair, consistent)
    } else {
        (q.final_shape().clone(), (p.clone(), q.clone()), true)
    }
}

fn count_families(family: Family, k: usize) -> BigUint {
    let k64 = k as u64;
    match family {
        Family::A => bell(2 * k),
        Family::HalfA => bell(2 * k - 1),
        Family::S => factorial(k64),
        Family::B => odd_double_factorial(k64),
        Family::T => catalan(k64),
        Family::P => catalan(2 * k64),
        Family::PR => binomial(2 * k64, k64),
        Family::R => (0..=k64)
            .map(|l| binomial(k64, l).pow(2) * factorial(l))
            .sum(),
    }
}

fn identity_name(family: Family) -> &'static str {
    match family {
        Family::A => "bell",
        Family::HalfA => "odd-bell",
        Family::S => "rsk",
        Family::B => "brauer",
        Family::T => "temperley-lieb",
        Family::P => "planar",
        Family::R => "rook",
        Family::PR => "planar-rook",
    }
}

/// `|family_k| = Σ_λ (m_k^λ)²`, checked shape by shape on the insertion
/// output. Also checks injectivity and, for `half_A`, that the shapes at
/// `k - 1/2` and `k + 1/2` agree.
pub fn verify_squares(family: Family, k: usize, opts: &VerifyOptions) -> Result<Report> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    opts.run(|| {
        let diagrams = opts.diagrams(k, family)?;
        let pairs = insert_all(&diagrams);
        let (tower_family, depth) = tower(family, k);
        let bratteli = build_bratteli(tower_family, depth)?;
        let mut failures = Vec::new();
        let mut buckets: BTreeMap<IntegerPartition, usize> = BTreeMap::new();
        let mut seen = HashSet::with_capacity(pairs.len());
        for (d, (p, q)) in diagrams.iter().zip(&pairs) {
            let (shape, pair, consistent) = bucket_key(family, k, p, q);
            if !consistent {
                failures.push(format!("{d}: shapes at k - 1/2 and k + 1/2 differ"));
            }
            if !seen.insert(pair) {
                failures.push(format!("{d}: insertion output repeats"));
            }
            *buckets.entry(shape).or_default() += 1;
        }
        let lhs = count_families(family, k);
        if BigUint::from(diagrams.len()) != lhs {
            failures.push(format!("enumerated {} diagrams, expected {lhs}", diagrams.len()));
        }
        let per_shape = rows(&bratteli, &buckets, |m| m * m, |_| None);
        let rhs = per_shape.iter().map(|r| &r.contribution).sum();
        Ok(Report {
            identity: identity_name(family).into(),
            k2: if family == Family::HalfA { 2 * k - 1 } else { 2 * k },
            n: None,
            lhs,
            rhs,
            per_shape,
            pass: false,
            failures,
        }
        .finish())
    })
}

/// One row per shape at the bottom of `bratteli` plus any observed shape
/// the tower does not contain.
fn rows(
    bratteli: &BratteliDiagram,
    buckets: &BTreeMap<IntegerPartition, usize>,
    contribution: impl Fn(&BigUint) -> BigUint,
    f: impl Fn(&IntegerPartition) -> Option<BigUint>,
) -> Vec<ShapeRow> {
    let mut shapes: BTreeSet<IntegerPartition> = bratteli.bottom().iter().map(|v| v.shape.clone()).collect();
    shapes.extend(buckets.keys().cloned());
    shapes
        .into_iter()
        .map(|shape| {
            let m = bratteli.m(&shape);
            ShapeRow {
                f: f(&shape),
                contribution: contribution(&m),
                observed: BigUint::from(buckets.get(&shape).copied().unwrap_or(0)),
                m,
                shape,
            }
        })
        .collect()
}

/// `B(2k) = Σ_{λ ∈ Γ_k} (m_k^λ)²` over the insertion of all of `A_k`.
pub fn verify_bell(k: usize, opts: &VerifyOptions) -> Result<Report> {
    verify_squares(Family::A, k, opts)
}

/// `B(2k - 1) = Σ (m_{k-1/2}^λ)²` over `A_{k-1/2}`; the report's `k` is
/// `k - 1/2`.
pub fn verify_odd_bell(k: usize, opts: &VerifyOptions) -> Result<Report> {
    verify_squares(Family::HalfA, k, opts)
}

/// `n^k = Σ_{λ ∈ Λ_n^k} f^λ m_k^λ` over the delete-insert bijection, with
/// injectivity and a round trip for every sequence.
pub fn verify_nk(n: u32, k: usize, opts: &VerifyOptions) -> Result<Report> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if (n as usize) < 2 * k {
        return Err(Error::InvalidArgument(format!("n = {n} must be at least 2k = {}", 2 * k)));
    }
    let total = (n as u64).checked_pow(k as u32).filter(|&t| t <= sequence_limit(opts));
    let Some(total) = total else {
        return Err(Error::LimitExceeded {
            what: format!("{n}^{k} sequences"),
            limit: sequence_limit(opts) as usize,
        });
    };
    opts.run(|| {
        let decode = |mut idx: u64| -> Vec<u32> {
            let mut seq = vec![0; k];
            for x in seq.iter_mut().rev() {
                *x = (idx % n as u64) as u32 + 1;
                idx /= n as u64;
            }
            seq
        };
        let results: Vec<_> = (0..total)
            .into_par_iter()
            .map(|i| {
                let seq = decode(i);
                let (t, p) = di_insert(&seq, n)?;
                let back = di_invert(&t, &p)?;
                Ok((seq == back, t, p))
            })
            .collect::<Result<_>>()?;
        let mut failures = Vec::new();
        let mut buckets: BTreeMap<IntegerPartition, usize> = BTreeMap::new();
        let mut seen = HashSet::with_capacity(results.len());
        for (round_trips, t, p) in results {
            if !round_trips {
                failures.push(format!("sequence with output {t} does not round trip"));
            }
            *buckets.entry(t.shape()).or_default() += 1;
            seen.insert((t, p));
        }
        if seen.len() as u64 != total {
            failures.push(format!("{} distinct outputs for {total} sequences", seen.len()));
        }
        let bratteli = build_bratteli(Family::A, 2 * k)?;
        let mut per_shape = Vec::new();
        for mu in enumerate_gamma(k as u32) {
            let Ok(lambda) = mu.bar(n) else { continue };
            let f = lambda.f_lambda();
            let m = bratteli.m(&mu);
            per_shape.push(ShapeRow {
                contribution: &f * &m,
                observed: BigUint::from(buckets.remove(&lambda).unwrap_or(0)),
                f: Some(f),
                m,
                shape: lambda,
            });
        }
        for (shape, count) in buckets {
            per_shape.push(ShapeRow {
                f: Some(shape.f_lambda()),
                m: BigUint::zero(),
                contribution: BigUint::zero(),
                observed: BigUint::from(count),
                shape,
            });
        }
        let rhs = per_shape.iter().map(|r| &r.contribution).sum();
        Ok(Report {
            identity: "nk".into(),
            k2: 2 * k,
            n: Some(n),
            lhs: BigUint::from(total),
            rhs,
            per_shape,
            pass: false,
            failures,
        }
        .finish())
    })
}

fn sequence_limit(opts: &VerifyOptions) -> u64 {
    if opts.force {
        50_000_000
    } else {
        1_000_000
    }
}

/// `|{d ∈ A_k : pn(d) = t}| = Σ_{|λ| = t} (m_k^λ)²`, also checking that
/// the final shape of every diagram has `pn(d)` boxes.
pub fn verify_ideal(k: usize, t: usize, opts: &VerifyOptions) -> Result<Report> {
    if k == 0 || t > k {
        return Err(Error::InvalidArgument(format!("need 0 <= t <= k with k positive, got k = {k}, t = {t}")));
    }
    opts.run(|| {
        let diagrams = opts.diagrams(k, Family::A)?;
        let pairs = insert_all(&diagrams);
        let bratteli = build_bratteli(Family::A, 2 * k)?;
        let mut failures = Vec::new();
        let mut buckets: BTreeMap<IntegerPartition, usize> = BTreeMap::new();
        let mut lhs = 0usize;
        for (d, (_, q)) in diagrams.iter().zip(&pairs) {
            let pn = d.propagating_number();
            if q.final_shape().size() as usize != pn {
                failures.push(format!("{d}: pn {pn} but final shape {}", q.final_shape()));
            }
            if pn == t {
                lhs += 1;
                *buckets.entry(q.final_shape().clone()).or_default() += 1;
            }
        }
        let mut per_shape = rows(&bratteli, &buckets, |m| m * m, |_| None);
        per_shape.retain(|r| r.shape.size() as usize == t || !r.observed.is_zero());
        let rhs = per_shape.iter().map(|r| &r.contribution).sum();
        Ok(Report {
            identity: format!("ideal-{t}"),
            k2: 2 * k,
            n: None,
            lhs: BigUint::from(lhs),
            rhs,
            per_shape,
            pass: false,
            failures,
        }
        .finish())
    })
}

/// `C(2k) = Σ_ℓ (C(2k, ⌊k⌋ - ℓ) - C(2k, ⌊k⌋ - ℓ - 1))²` against the planar
/// diagrams of `A_k`; `k2 = 2k` may be odd, in which case the diagrams are
/// the planar ones in `A_{k}` with `k` a half integer. Each planar diagram
/// must yield one-row shapes only, and the closed form must match the
/// planar tower's path counts.
pub fn verify_catalan(k2: usize, opts: &VerifyOptions) -> Result<Report> {
    if k2 == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let (family, k) = if k2.is_multiple_of(2) {
        (Family::A, k2 / 2)
    } else {
        (Family::HalfA, k2.div_ceil(2))
    };
    opts.run(|| {
        let all = opts.diagrams(k, family)?;
        let planar: Vec<_> = all.into_iter().filter(SetPartitionDiagram::is_planar).collect();
        let pairs = insert_all(&planar);
        let bratteli = build_bratteli(Family::P, k2)?;
        let mut failures = Vec::new();
        let mut buckets: BTreeMap<IntegerPartition, usize> = BTreeMap::new();
        for (d, (p, q)) in planar.iter().zip(&pairs) {
            if !(p.is_one_row() && q.is_one_row()) {
                failures.push(format!("{d}: planar but a path leaves the first row"));
            }
            *buckets.entry(q.steps()[k2].clone()).or_default() += 1;
        }
        let floor = (k2 / 2) as u64;
        let mut per_shape = Vec::new();
        for l in 0..=floor {
            let shape = IntegerPartition::row(l as u32);
            let hi = binomial(k2 as u64, floor - l);
            let lo = if floor > l { binomial(k2 as u64, floor - l - 1) } else { BigUint::zero() };
            let m = hi - lo;
            if m != bratteli.m(&shape) {
                failures.push(format!("closed form {m} differs from path count {} at {shape}", bratteli.m(&shape)));
            }
            per_shape.push(ShapeRow {
                contribution: &m * &m,
                observed: BigUint::from(buckets.remove(&shape).unwrap_or(0)),
                f: None,
                m,
                shape,
            });
        }
        for (shape, count) in buckets {
            per_shape.push(ShapeRow {
                f: None,
                m: BigUint::zero(),
                contribution: BigUint::zero(),
                observed: BigUint::from(count),
                shape,
            });
        }
        let lhs = catalan(k2 as u64);
        if BigUint::from(planar.len()) != lhs {
            failures.push(format!("{} planar diagrams, expected {lhs}", planar.len()));
        }
        let rhs = per_shape.iter().map(|r| &r.contribution).sum();
        Ok(Report {
            identity: "catalan".into(),
            k2,
            n: None,
            lhs,
            rhs,
            per_shape,
            pass: false,
            failures,
        }
        .finish())
    })
}

/// `Σ_ℓ C(k, ℓ)² = C(2k, k)`, arithmetically and by bucketing the planar
/// rook diagrams by final shape.
pub fn verify_binomial(k: usize, opts: &VerifyOptions) -> Result<Report> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    opts.run(|| {
        let k64 = k as u64;
        let diagrams = opts.diagrams(k, Family::PR)?;
        let pairs = insert_all(&diagrams);
        let bratteli = build_bratteli(Family::PR, 2 * k)?;
        let mut failures = Vec::new();
        let mut buckets: BTreeMap<IntegerPartition, usize> = BTreeMap::new();
        for (_, q) in &pairs {
            *buckets.entry(q.final_shape().clone()).or_default() += 1;
        }
        let mut per_shape = Vec::new();
        for l in 0..=k64 {
            let shape = IntegerPartition::row(l as u32);
            let m = binomial(k64, l);
            if m != bratteli.m(&shape) {
                failures.push(format!("C({k},{l}) = {m} but the tower has {}", bratteli.m(&shape)));
            }
            per_shape.push(ShapeRow {
                contribution: &m * &m,
                observed: BigUint::from(buckets.remove(&shape).unwrap_or(0)),
                f: None,
                m,
                shape,
            });
        }
        for (shape, count) in buckets {
            per_shape.push(ShapeRow {
                f: None,
                m: BigUint::zero(),
                contribution: BigUint::zero(),
                observed: BigUint::from(count),
                shape,
            });
        }
        let lhs = binomial(2 * k64, k64);
        if BigUint::from(diagrams.len()) != lhs {
            failures.push(format!("{} planar rook diagrams, expected {lhs}", diagrams.len()));
        }
        let rhs = per_shape.iter().map(|r| &r.contribution).sum();
        Ok(Report {
            identity: "binomial".into(),
            k2: 2 * k,
            n: None,
            lhs,
            rhs,
            per_shape,
            pass: false,
            failures,
        }
        .finish())
    })
}

/// The number of diagrams `d = flip(d)` in `family_k` equals `Σ_λ m_k^λ`.
/// Also checks `d = flip(d) ⇔ P = Q` on every diagram of the family.
pub fn verify_symmetric(family: Family, k: usize, opts: &VerifyOptions) -> Result<Report> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    opts.run(|| {
        let diagrams = opts.diagrams(k, family)?;
        let pairs = insert_all(&diagrams);
        let (tower_family, depth) = tower(family, k);
        let bratteli = build_bratteli(tower_family, depth)?;
        let mut failures = Vec::new();
        let mut buckets: BTreeMap<IntegerPartition, usize> = BTreeMap::new();
        let mut lhs = 0usize;
        for (d, (p, q)) in diagrams.iter().zip(&pairs) {
            let (shape, (tp, tq), _) = bucket_key(family, k, p, q);
            let symmetric = d.is_symmetric();
            if symmetric != (tp == tq) {
                failures.push(format!("{d}: symmetric = {symmetric} but P = Q is {}", tp == tq));
            }
            if symmetric {
                lhs += 1;
                *buckets.entry(shape).or_default() += 1;
            }
        }
        let f = |s: &IntegerPartition| (family == Family::S).then(|| s.f_lambda());
        let per_shape = rows(&bratteli, &buckets, Clone::clone, f);
        let rhs = per_shape.iter().map(|r| &r.contribution).sum();
        Ok(Report {
            identity: format!("symmetric-{}", family.name()),
            k2: if family == Family::HalfA { 2 * k - 1 } else { 2 * k },
            n: None,
            lhs: BigUint::from(lhs),
            rhs,
            per_shape,
            pass: false,
            failures,
        }
        .finish())
    })
}

/// Converts a count to `u64` for display in tests and the CLI.
pub fn to_u64(x: &BigUint) -> Option<u64> {
    x.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntegerPartition {
        s.parse().unwrap()
    }

    fn counts(b: &BratteliDiagram, m: usize) -> Vec<u64> {
        b.levels()[m].iter().map(|v| to_u64(&v.paths).unwrap()).collect()
    }

    #[test]
    fn sequences() {
        let bells: Vec<u64> = (0..=8).map(|l| to_u64(&bell(l)).unwrap()).collect();
        assert_eq!(bells, [1, 1, 2, 5, 15, 52, 203, 877, 4140]);
        assert_eq!(bell(10), BigUint::from(115_975u32));
        assert_eq!(catalan(6), BigUint::from(132u32));
        assert_eq!(catalan(5), BigUint::from(42u32));
        assert_eq!(odd_double_factorial(3), BigUint::from(15u32));
        assert_eq!(odd_double_factorial(0), BigUint::one());
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(factorial(5), BigUint::from(120u32));
    }

    #[test]
    fn partition_algebra_tower() {
        let b = build_bratteli(Family::A, 6).unwrap();
        let shapes: Vec<String> = b.bottom().iter().map(|v| v.shape.to_string()).collect();
        assert_eq!(shapes, ["-", "1", "2", "1,1", "3", "2,1", "1,1,1"]);
        assert_eq!(counts(&b, 6), [5, 10, 6, 6, 1, 2, 1]);
        assert_eq!(counts(&b, 5), [5, 5, 1, 1]);
        assert_eq!(counts(&b, 2), [1, 1]);
        assert_eq!(to_u64(&m_k_lambda(6, &p("1"), Family::A).unwrap()), Some(10));
        assert_eq!(to_u64(&m_k_lambda(0, &p("-"), Family::A).unwrap()), Some(1));
        assert_eq!(to_u64(&m_k_lambda(6, &p("4"), Family::A).unwrap()), Some(0));
        for k in 1..=5 {
            let b = build_bratteli(Family::A, 2 * k).unwrap();
            let total: BigUint = b.bottom().iter().map(|v| &v.paths * &v.paths).sum();
            assert_eq!(total, bell(2 * k));
        }
    }

    #[test]
    fn other_towers() {
        let pr = build_bratteli(Family::PR, 6).unwrap();
        assert_eq!(counts(&pr, 3), [1, 3, 3, 1]);
        let b = build_bratteli(Family::B, 6).unwrap();
        let total: BigUint = b.bottom().iter().map(|v| &v.paths * &v.paths).sum();
        assert_eq!(total, BigUint::from(15u32));
        let s = build_bratteli(Family::S, 8).unwrap();
        for v in s.bottom() {
            assert_eq!(v.paths, v.shape.f_lambda());
        }
        let t = build_bratteli(Family::T, 8).unwrap();
        let total: BigUint = t.bottom().iter().map(|v| &v.paths * &v.paths).sum();
        assert_eq!(total, catalan(4));
        assert!(build_bratteli(Family::B, 5).is_err());
    }

    #[test]
    fn rook_tower() {
        for k in 1..=4u64 {
            let r = build_bratteli(Family::R, 2 * k as usize).unwrap();
            for v in r.bottom() {
                let expected = binomial(k, v.shape.size() as u64) * v.shape.f_lambda();
                assert_eq!(v.paths, expected, "k={k} {}", v.shape);
            }
        }
    }

    #[test]
    fn exports() {
        let b = build_bratteli(Family::A, 2).unwrap();
        let dot = b.to_dot();
        assert!(dot.starts_with("digraph bratteli_A {"));
        assert!(dot.contains("L2_1 [label=\"1\\n1\"];"));
        assert!(dot.contains("L1_0 -> L2_1;"));
        let json = b.to_json();
        assert_eq!(json["levels"][1]["level"], "0.5");
        assert_eq!(json["levels"][2]["vertices"][1]["paths"], 1);
        assert_eq!(b.to_string(), "   0:  -:1\n 0.5:  -:1\n   1:  -:1  1:1\n");
    }

    #[test]
    fn verifiers_pass() {
        let opts = VerifyOptions::default();
        let r = verify_nk(6, 3, &opts).unwrap();
        assert!(r.pass, "{r}");
        assert_eq!(r.lhs, BigUint::from(216u32));
        let fm: Vec<(u64, u64)> = r
            .per_shape
            .iter()
            .map(|row| (to_u64(row.f.as_ref().unwrap()).unwrap(), to_u64(&row.m).unwrap()))
            .collect();
        assert_eq!(fm, [(1, 5), (5, 10), (9, 6), (10, 6), (5, 1), (16, 2), (10, 1)]);
        let r = verify_bell(3, &opts).unwrap();
        assert!(r.pass, "{r}");
        let observed: Vec<u64> = r.per_shape.iter().map(|row| to_u64(&row.observed).unwrap()).collect();
        assert_eq!(observed, [25, 100, 36, 36, 1, 4, 1]);
        assert!(verify_odd_bell(3, &opts).unwrap().pass);
        for t in 0..=3 {
            assert!(verify_ideal(3, t, &opts).unwrap().pass);
        }
        for k2 in 1..=6 {
            let r = verify_catalan(k2, &opts).unwrap();
            assert!(r.pass, "{r}");
        }
        assert!(verify_binomial(4, &opts).unwrap().pass);
        for family in Family::ALL {
            let r = verify_symmetric(family, 3, &opts).unwrap();
            assert!(r.pass, "{r}");
            let r = verify_squares(family, 3, &opts).unwrap();
            assert!(r.pass, "{r}");
        }
        assert_eq!(verify_symmetric(Family::A, 3, &opts).unwrap().lhs, BigUint::from(31u32));
        assert_eq!(verify_symmetric(Family::S, 4, &opts).unwrap().lhs, BigUint::from(10u32));
    }

    #[test]
    fn worker_count_does_not_change_reports() {
        let one = verify_bell(3, &VerifyOptions::with_workers(1)).unwrap();
        let four = verify_bell(3, &VerifyOptions::with_workers(4)).unwrap();
        assert_eq!(one, four);
        assert!(verify_bell(3, &VerifyOptions::with_workers(0)).is_err());
    }

    #[test]
    fn limits() {
        let opts = VerifyOptions::default();
        assert!(matches!(verify_bell(5, &opts), Err(Error::LimitExceeded { .. })));
        assert!(verify_nk(5, 3, &opts).is_err());
        assert!(verify_ideal(3, 4, &opts).is_err());
    }

    #[test]
    fn report_json() {
        let r = verify_binomial(2, &VerifyOptions::default()).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.starts_with(r#"{"identity":"binomial","k":2,"lhs":6,"rhs":6,"per_shape":[{"shape":[],"m":1,"contribution":1,"observed":1}"#), "{json}");
        let half = verify_odd_bell(2, &VerifyOptions::default()).unwrap();
        assert_eq!(half.to_json()["k"].to_string(), "1.5");
    }
}
