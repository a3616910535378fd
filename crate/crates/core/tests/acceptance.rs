use std::collections::{BTreeMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use vacillating::diagrams::enumerate;
use vacillating::enumeration::{binomial, build_bratteli};
use vacillating::growth::{growth_diagram, staircase_paths};
use vacillating::{
    di_insert, di_invert, vac_insert, vac_invert, Family, IntegerPartition, SetPartitionDiagram,
    VacillatingTableau,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all(k: usize, family: Family) -> Vec<SetPartitionDiagram> {
    enumerate(k, family).expect("within limits").collect()
}

fn shape(s: &str) -> IntegerPartition {
    s.parse().unwrap()
}

fn gamma3() -> Vec<IntegerPartition> {
    ["-", "1", "2", "1,1", "3", "2,1", "1,1,1"].iter().map(|s| shape(s)).collect()
}

fn bucket_sizes(buckets: &BTreeMap<IntegerPartition, usize>, shapes: &[IntegerPartition]) -> Vec<usize> {
    shapes.iter().map(|s| buckets.get(s).copied().unwrap_or(0)).collect()
}

fn bell_decomposition() -> Outcome {
    let diagrams = all(3, Family::A);
    check(diagrams.len() == 203, || format!("{} diagrams", diagrams.len()))?;
    let mut buckets = BTreeMap::new();
    for d in &diagrams {
        let (p, q) = vac_insert(d);
        check(p.final_shape() == q.final_shape(), || format!("{d}: P and Q end apart"))?;
        *buckets.entry(q.final_shape().clone()).or_insert(0) += 1;
    }
    let sizes = bucket_sizes(&buckets, &gamma3());
    check(sizes == [25, 100, 36, 36, 1, 4, 1], || format!("bucket sizes {sizes:?}"))?;
    check(sizes.iter().sum::<usize>() == 203, || "buckets do not cover A_3".into())
}

fn di_decomposition() -> Outcome {
    let (n, k) = (6u32, 3usize);
    let mut seen = HashSet::new();
    let mut buckets: BTreeMap<IntegerPartition, (HashSet<String>, HashSet<String>, usize)> = BTreeMap::new();
    for a in 1..=n {
        for b in 1..=n {
            for c in 1..=n {
                let (t, p) = di_insert(&[a, b, c], n).map_err(|e| e.to_string())?;
                check(p.k2() == 2 * k, || "path has the wrong length".into())?;
                let entry = buckets.entry(t.shape()).or_default();
                entry.0.insert(t.to_string());
                entry.1.insert(p.to_string());
                entry.2 += 1;
                seen.insert((t.to_string(), p.to_string()));
            }
        }
    }
    check(seen.len() == 216, || format!("{} distinct outputs", seen.len()))?;
    let expected = [
        ("6", 1, 5),
        ("5,1", 5, 10),
        ("4,2", 9, 6),
        ("4,1,1", 10, 6),
        ("3,3", 5, 1),
        ("3,2,1", 16, 2),
        ("3,1,1,1", 10, 1),
    ];
    check(buckets.len() == expected.len(), || format!("{} buckets", buckets.len()))?;
    for (lambda, f, m) in expected {
        let (ts, ps, count) = buckets.get(&shape(lambda)).ok_or(format!("no bucket {lambda}"))?;
        check(ts.len() == f && ps.len() == m && *count == f * m, || {
            format!("({lambda}): {} tableaux, {} paths, {count} sequences", ts.len(), ps.len())
        })?;
    }
    Ok(())
}

fn round_trips() -> Outcome {
    let diagrams = all(4, Family::A);
    check(diagrams.len() == 4140, || format!("{} diagrams", diagrams.len()))?;
    for d in &diagrams {
        let (p, q) = vac_insert(d);
        let back = vac_invert(&p, &q).map_err(|e| format!("{d}: {e}"))?;
        check(&back == d, || format!("{d} came back as {back}"))?;
    }
    let n = 8u32;
    let mut count = 0;
    for idx in 0..n.pow(4) {
        let seq: Vec<u32> = (0..4).rev().map(|i| idx / n.pow(i) % n + 1).collect();
        let (t, p) = di_insert(&seq, n).map_err(|e| e.to_string())?;
        let back = di_invert(&t, &p).map_err(|e| format!("{seq:?}: {e}"))?;
        check(back == seq, || format!("{seq:?} came back as {back:?}"))?;
        count += 1;
    }
    check(count == 4096, || format!("{count} sequences"))
}

fn growth_equivalence() -> Outcome {
    let mut a = all(3, Family::A);
    let b = all(3, Family::B);
    check(a.len() == 203 && b.len() == 15, || format!("{} and {} diagrams", a.len(), b.len()))?;
    a.extend(b);
    for d in &a {
        let grid = growth_diagram(d);
        let paths = staircase_paths(&grid).map_err(|e| format!("{d}: {e}"))?;
        check(paths == vac_insert(d), || format!("{d}: staircase paths differ"))?;
    }
    Ok(())
}

fn symmetry() -> Outcome {
    for d in all(4, Family::A) {
        let (p, q) = vac_insert(&d);
        let (fp, fq) = vac_insert(&d.flip());
        check(fp == q && fq == p, || format!("{d}: flip does not swap P and Q"))?;
        if d.is_symmetric() {
            check(p == q, || format!("{d}: symmetric but P differs from Q"))?;
        }
    }
    let mut symmetric = 0;
    for d in all(3, Family::A) {
        let (p, q) = vac_insert(&d);
        check(d.is_symmetric() == (p == q), || format!("{d}: symmetry and P = Q disagree"))?;
        symmetric += usize::from(d.is_symmetric());
    }
    check(symmetric == 31, || format!("{symmetric} symmetric diagrams in A_3"))
}

fn planarity() -> Outcome {
    let k = 3u64;
    let mut buckets: BTreeMap<IntegerPartition, usize> = BTreeMap::new();
    let mut planar = 0;
    for d in all(3, Family::A).into_iter().filter(SetPartitionDiagram::is_planar) {
        planar += 1;
        let (p, q) = vac_insert(&d);
        check(p.is_one_row() && q.is_one_row(), || format!("{d}: shape with two rows"))?;
        *buckets.entry(q.final_shape().clone()).or_insert(0) += 1;
    }
    check(planar == 132, || format!("{planar} planar diagrams"))?;
    let mut total = BigUint::from(0u32);
    for l in 0..=k {
        let upper = binomial(2 * k, k - l);
        let lower = if l < k { binomial(2 * k, k - l - 1) } else { BigUint::from(0u32) };
        let m = upper - lower;
        let observed = buckets.get(&IntegerPartition::row(l as u32)).copied().unwrap_or(0);
        check(BigUint::from(observed) == &m * &m, || format!("({l}): {observed} diagrams, m = {m}"))?;
        total += &m * &m;
    }
    check(total == BigUint::from(132u32), || format!("sum of squares {total}"))
}

fn family_counts() -> Outcome {
    let expected = [
        (Family::S, 6),
        (Family::B, 15),
        (Family::R, 34),
        (Family::PR, 20),
        (Family::A, 203),
        (Family::HalfA, 52),
    ];
    for (family, count) in expected {
        let got = enumerate(3, family).map_err(|e| e.to_string())?.count();
        check(got == count, || format!("{family}: {got} diagrams, expected {count}"))?;
    }
    Ok(())
}

fn rsk(word: &[u32]) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let mut p: Vec<Vec<u32>> = Vec::new();
    let mut q: Vec<Vec<u32>> = Vec::new();
    for (step, &x) in word.iter().enumerate() {
        let mut x = x;
        let mut row = 0;
        loop {
            if row == p.len() {
                p.push(vec![x]);
                q.push(vec![step as u32 + 1]);
                break;
            }
            match p[row].iter().position(|&y| y > x) {
                Some(col) => {
                    x = std::mem::replace(&mut p[row][col], x);
                    row += 1;
                }
                None => {
                    p[row].push(x);
                    q[row].push(step as u32 + 1);
                    break;
                }
            }
        }
    }
    (p, q)
}

fn recording(path: &VacillatingTableau) -> Result<Vec<Vec<u32>>, String> {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut label = 0;
    for pair in path.steps().windows(2) {
        let (before, after) = (&pair[0], &pair[1]);
        if before == after {
            continue;
        }
        let row = (0..after.length())
            .find(|&r| after.part(r) == before.part(r) + 1)
            .filter(|_| after.size() == before.size() + 1)
            .ok_or(format!("{before} to {after} is not a single added box"))?;
        label += 1;
        if row == rows.len() {
            rows.push(Vec::new());
        }
        rows[row].push(label);
    }
    Ok(rows)
}

fn subalgebra_restriction() -> Outcome {
    let permutations = all(4, Family::S);
    check(permutations.len() == 24, || format!("{} permutations", permutations.len()))?;
    for d in &permutations {
        let block = d.block_of();
        let word: Vec<u32> = (1..=4)
            .map(|j| {
                let b = block[j];
                let bottom = (1..=4).find(|&i| block[9 - i] == b).expect("permutation block");
                bottom as u32
            })
            .collect();
        let (p, q) = vac_insert(d);
        let (rp, rq) = rsk(&word);
        check(recording(&p)? == rp && recording(&q)? == rq, || {
            format!("{d}: word {word:?} gives P {rp:?}, Q {rq:?}")
        })?;
    }
    Ok(())
}

fn odd_bell() -> Outcome {
    let diagrams = all(3, Family::HalfA);
    check(diagrams.len() == 52, || format!("{} diagrams", diagrams.len()))?;
    let k2 = 6;
    let mut buckets: BTreeMap<IntegerPartition, usize> = BTreeMap::new();
    for d in &diagrams {
        let (p, q) = vac_insert(d);
        let below = &q.steps()[k2 - 1];
        let above = &p.steps()[k2 - 1];
        check(below == above, || format!("{d}: {below} at k - 1/2 but {above} at k + 1/2"))?;
        let truncated = q.truncated(k2).map_err(|e| e.to_string())?;
        *buckets.entry(truncated.final_shape().clone()).or_insert(0) += 1;
    }
    let bratteli = build_bratteli(Family::HalfA, k2 - 1).map_err(|e| e.to_string())?;
    let mut total = BigUint::from(0u32);
    for v in bratteli.bottom() {
        let observed = buckets.remove(&v.shape).unwrap_or(0);
        check(BigUint::from(observed) == &v.paths * &v.paths, || {
            format!("{}: {observed} diagrams, m = {}", v.shape, v.paths)
        })?;
        total += &v.paths * &v.paths;
    }
    check(buckets.is_empty(), || format!("unexpected shapes {buckets:?}"))?;
    check(total == BigUint::from(52u32), || format!("sum of squares {total}"))
}

fn ideal_filtration() -> Outcome {
    let m3: Vec<BigUint> = {
        let b = build_bratteli(Family::A, 6).map_err(|e| e.to_string())?;
        gamma3().iter().map(|s| b.m(s)).collect()
    };
    let figure: Vec<BigUint> = [5u32, 10, 6, 6, 1, 2, 1].into_iter().map(BigUint::from).collect();
    check(m3 == figure, || format!("m_3 = {m3:?}"))?;

    let bratteli = build_bratteli(Family::A, 8).map_err(|e| e.to_string())?;
    let mut by_pn = [0usize; 5];
    for d in all(4, Family::A) {
        let pn = d.propagating_number();
        let (_, q) = vac_insert(&d);
        check(q.final_shape().size() as usize == pn, || format!("{d}: final shape has the wrong size"))?;
        by_pn[pn] += 1;
    }
    for (t, &observed) in by_pn.iter().enumerate() {
        let rhs: BigUint = bratteli
            .bottom()
            .iter()
            .filter(|v| v.shape.size() as usize == t)
            .map(|v| &v.paths * &v.paths)
            .sum();
        check(BigUint::from(observed) == rhs, || format!("t = {t}: {observed} diagrams, sum {rhs}"))?;
    }
    Ok(())
}

fn binomial_identity() -> Outcome {
    for k in 1..=5u64 {
        let lhs: BigUint = (0..=k).map(|l| binomial(k, l) * binomial(k, l)).sum();
        check(lhs == binomial(2 * k, k), || format!("k = {k}: sum {lhs}"))?;
        let mut buckets = vec![0u64; k as usize + 1];
        for d in all(k as usize, Family::PR) {
            let (p, q) = vac_insert(&d);
            check(p.is_one_row() && q.is_one_row(), || format!("{d}: shape with two rows"))?;
            buckets[q.final_shape().size() as usize] += 1;
        }
        for (l, &count) in buckets.iter().enumerate() {
            let c = binomial(k, l as u64);
            check(BigUint::from(count) == &c * &c, || format!("k = {k}, ({l}): {count} diagrams"))?;
        }
        let total: u64 = buckets.iter().sum();
        check(BigUint::from(total) == binomial(2 * k, k), || format!("|PR_{k}| = {total}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("Bell decomposition of A_3", bell_decomposition, 1),
        ("DI decomposition n = 6, k = 3", di_decomposition, 1),
        ("round trips on A_4 and n = 8, k = 4", round_trips, 30),
        ("growth equivalence on A_3 and B_3", growth_equivalence, 5),
        ("flip symmetry", symmetry, 30),
        ("planarity", planarity, 2),
        ("family counts at k = 3", family_counts, 1),
        ("permutations follow RSK", subalgebra_restriction, 1),
        ("odd Bell on A_{5/2}", odd_bell, 1),
        ("ideal filtration", ideal_filtration, 10),
        ("binomial identity", binomial_identity, 1),
    ];
    let mut failed = 0;
    for (i, (name, run, bound)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            check(elapsed < Duration::from_secs(bound), || format!("took {elapsed:?}, bound {bound} s"))
        });
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({elapsed:.2?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({elapsed:.2?}): {e}", i + 1);
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
