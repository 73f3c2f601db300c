//! Brute-force reference computations shared by the integration tests.
//! None of them uses the library's algorithms beyond permutation
//! arithmetic and parsing.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use cgt::{PermGroup, Permutation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn group(s: &str) -> PermGroup {
    PermGroup::parse_generators(s, None).unwrap()
}

pub fn group_of_degree(s: &str, degree: usize) -> PermGroup {
    PermGroup::parse_generators(s, Some(degree)).unwrap()
}

pub fn perm(s: &str, degree: usize) -> Permutation {
    Permutation::parse(s, Some(degree)).unwrap()
}

/// Every element of `<gens>`, by breadth-first closure.
pub fn closure(degree: usize, gens: &[Permutation]) -> Vec<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut all = vec![id];
    let mut i = 0;
    while i < all.len() {
        for g in gens {
            let p = &all[i] * g;
            if seen.insert(p.clone()) {
                all.push(p);
            }
        }
        i += 1;
    }
    all
}

pub fn elements(g: &PermGroup) -> Vec<Permutation> {
    closure(g.degree(), g.generators())
}

/// Subgroups of index `n` in the free group of rank `r`, by Hall's
/// recursion `N_n = n(n!)^(r-1) − Σ_{i<n} ((n−i)!)^(r-1) N_i`.
pub fn hall_counts(r: u32, max: usize) -> Vec<u128> {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    let mut counts: Vec<u128> = Vec::new();
    for n in 1..=max {
        let mut v = n as u128 * fact(n).pow(r - 1);
        for i in 1..n {
            v -= fact(n - i).pow(r - 1) * counts[i - 1];
        }
        counts.push(v);
    }
    counts
}

fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut total = 0i128;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * i128::from(m[0][j]) * det(&minor);
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
        .collect()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Invariant factors from determinantal divisors: `D_k` is the gcd of all
/// k×k minors and `d_k = D_k / D_(k-1)`.
pub fn invariant_factors(rows: &[Vec<i64>], cols: usize) -> Vec<u128> {
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.len().min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows.len(), k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i64>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| rows[i][j]).collect())
                    .collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        out.push((g / prev) as u128);
        prev = g;
    }
    out
}

pub fn random_matrix(rng: &mut ChaCha8Rng, max_dim: usize, bound: i64) -> (usize, Vec<Vec<i64>>) {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    let m = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    (cols, m)
}

/// All set partitions of `0..n`, each as a block label per point.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, labels: &mut Vec<usize>, blocks: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(labels.clone());
            return;
        }
        for b in 0..=blocks {
            labels.push(b);
            go(i + 1, n, labels, blocks.max(b + 1), out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), 0, &mut out);
    out
}

/// Whether every generator maps blocks onto blocks.
pub fn is_invariant(labels: &[usize], gens: &[Permutation]) -> bool {
    gens.iter().all(|g| {
        let mut image: HashMap<usize, usize> = HashMap::new();
        (0..labels.len()).all(|p| {
            let target = labels[g.image(p)];
            *image.entry(labels[p]).or_insert(target) == target
        })
    })
}

/// Labels as sorted blocks listed by least point.
pub fn blocks_of(labels: &[usize]) -> Vec<Vec<usize>> {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<usize, usize> = HashMap::new();
    for (p, &l) in labels.iter().enumerate() {
        let k = *index.entry(l).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[k].push(p);
    }
    blocks
}

/// The finest invariant partition in which `a` and `b` share a block, by
/// exhaustive search over all partitions.
pub fn finest_block_system(n: usize, gens: &[Permutation], a: usize, b: usize) -> Vec<Vec<usize>> {
    set_partitions(n)
        .into_iter()
        .filter(|l| l[a] == l[b] && is_invariant(l, gens))
        .map(|l| blocks_of(&l))
        .max_by_key(Vec::len)
        .expect("the one-block partition always qualifies")
}

pub fn is_primitive_by_partitions(n: usize, gens: &[Permutation]) -> bool {
    set_partitions(n).into_iter().all(|l| {
        let k = blocks_of(&l).len();
        k == 1 || k == n || !is_invariant(&l, gens)
    })
}

pub fn is_transitive(n: usize, gens: &[Permutation]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    if n > 0 {
        seen[0] = true;
    }
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = g.image(p);
            if !seen[q] {
                seen[q] = true;
                stack.push(q);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Named transitive groups of degree ≤ 7 plus random transitive pairs.
pub fn transitive_corpus() -> Vec<(String, PermGroup)> {
    let mut out: Vec<(String, PermGroup)> = [
        ("C2", "(1,2)", 2),
        ("C3", "(1,2,3)", 3),
        ("S3", "(1,2),(1,2,3)", 3),
        ("C4", "(1,2,3,4)", 4),
        ("V4", "(1,2)(3,4),(1,3)(2,4)", 4),
        ("D4", "(1,2,3,4),(1,3)", 4),
        ("A4", "(1,2,3),(2,3,4)", 4),
        ("S4", "(1,2),(1,2,3,4)", 4),
        ("C5", "(1,2,3,4,5)", 5),
        ("D5", "(1,2,3,4,5),(2,5)(3,4)", 5),
        ("F20", "(1,2,3,4,5),(2,3,5,4)", 5),
        ("A5", "(1,2,3,4,5),(1,2,3)", 5),
        ("S5", "(1,2),(1,2,3,4,5)", 5),
        ("C6", "(1,2,3,4,5,6)", 6),
        ("D6", "(1,2,3,4,5,6),(2,6)(3,5)", 6),
        ("S3 regular", "(1,2,3)(4,5,6),(1,4)(2,6)(3,5)", 6),
        ("C2 wr S3", "(1,2),(1,3,5)(2,4,6),(1,3)(2,4)", 6),
        ("S3 wr C2", "(1,2,3),(1,2),(1,4)(2,5)(3,6)", 6),
        ("A5 on 6", "(1,2,3,4,5),(1,6)(2,5)", 6),
        ("A6", "(1,2,3),(2,3,4,5,6)", 6),
        ("S6", "(1,2),(1,2,3,4,5,6)", 6),
        ("C7", "(1,2,3,4,5,6,7)", 7),
        ("D7", "(1,2,3,4,5,6,7),(2,7)(3,6)(4,5)", 7),
        ("F21", "(1,2,3,4,5,6,7),(2,3,5)(4,7,6)", 7),
        ("F42", "(1,2,3,4,5,6,7),(2,4,3,7,5,6)", 7),
        ("PSL(3,2)", "(1,2,3,4,5,6,7),(2,3)(4,7)", 7),
        ("A7", "(1,2,3),(3,4,5,6,7)", 7),
        ("S7", "(1,2),(1,2,3,4,5,6,7)", 7),
    ]
    .into_iter()
    .map(|(name, gens, n)| (name.to_string(), group_of_degree(gens, n)))
    .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=7 {
        let mut found = 0;
        while found < 6 {
            let mut gens = Vec::new();
            for _ in 0..2 {
                let mut images: Vec<usize> = (0..n).collect();
                // Bias towards small supports so imprimitive groups turn up.
                let support = rng.gen_range(2..=n);
                images[..support].shuffle(&mut rng);
                let mut relabel: Vec<usize> = (0..n).collect();
                relabel.shuffle(&mut rng);
                let mut conj = vec![0; n];
                for p in 0..n {
                    conj[relabel[p]] = relabel[images[p]];
                }
                gens.push(Permutation::from_images(conj).unwrap());
            }
            if is_transitive(n, &gens) {
                found += 1;
                out.push((
                    format!("random degree {n} #{found}"),
                    PermGroup::new(n, gens).unwrap(),
                ));
            }
        }
    }
    out
}

/// Groups of order ≤ 5,000 for the backtrack comparisons.
pub fn backtrack_corpus() -> Vec<(&'static str, PermGroup)> {
    [
        ("C2xC2", "(1,2),(3,4)", 4),
        ("D4", "(1,2,3,4),(1,3)", 4),
        ("A4", "(1,2,3),(2,3,4)", 4),
        ("S4", "(1,2),(1,2,3,4)", 4),
        ("A5", "(1,2,3,4,5),(1,2,3)", 5),
        ("S5", "(1,2),(1,2,3,4,5)", 5),
        ("C2 wr S3", "(1,2),(1,3,5)(2,4,6),(1,3)(2,4)", 6),
        ("S3 x S3", "(1,2,3),(1,2),(4,5,6),(4,5)", 6),
        ("PSL(3,2)", "(1,2,3,4,5,6,7),(2,3)(4,7)", 7),
        ("A6", "(1,2,3),(2,3,4,5,6)", 6),
        ("S6", "(1,2),(1,2,3,4,5,6)", 6),
        ("AGL(1,8)", "(1,2,3,4,5,6,7),(1,8)(2,4)(3,7)(5,6)", 8),
        ("C4 wr C2", "(1,2,3,4),(1,5)(2,6)(3,7)(4,8)", 8),
        ("A7", "(1,2,3),(3,4,5,6,7)", 7),
    ]
    .into_iter()
    .map(|(name, gens, n)| (name, group_of_degree(gens, n)))
    .collect()
}
