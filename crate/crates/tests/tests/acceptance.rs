//! Acceptance checks, one line per criterion. Exits non-zero if any
//! criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use cgt::perm::{is_primitive, minimal_block_partition, random_schreier, verify_chain};
use cgt::{
    abelian_invariants, centralizer, element_conjugacy, enumerate, low_index_subgroups,
    order_of_group, quotient_abelian_probe, reidemeister_presentation, set_stabilizer,
    smith_normal_form, tietze_simplify, EnumerationResult, IntMatrix, Letter, Permutation,
    Presentation, StabilizerChain, Strategy, SubgroupSpec, Word,
};
use num_bigint::BigUint;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

const MENNICKE: &str = "<x,y,z | x^y*x^-3, y^z*y^-2, z^x*z^-4>";

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    check(t <= limit, || format!("took {t:.2?}, limit {limit:?}"))
}

fn pres(s: &str) -> Presentation {
    Presentation::parse(s).unwrap()
}

/// Evaluates `w` in the permutation images of the generators.
fn evaluate(w: &Word, gens: &[Permutation]) -> Permutation {
    let mut p = Permutation::identity(gens[0].degree());
    for l in w.letters() {
        let g = &gens[l.generator()];
        p = if l.is_inverse() {
            &p * &g.inverse()
        } else {
            &p * g
        };
    }
    p
}

fn criterion_1() -> Outcome {
    let p = pres(MENNICKE);
    let mut report = Vec::new();
    let mut failures = Vec::new();
    for (label, subgroup, expected) in [("<x>", "x", 105), ("1", "", 210)] {
        let h = SubgroupSpec::parse(subgroup, &p).unwrap();
        for (name, s) in [("hlt", Strategy::hlt()), ("felsch", Strategy::felsch())] {
            let start = Instant::now();
            let s = s.with_max_total(1_000_000);
            match enumerate(&p, &h, &s) {
                Ok(r) => {
                    let st = r.stats();
                    let t = start.elapsed();
                    report.push(format!(
                        "H={label} {name}: index {} max {} total {} {t:.2?}",
                        r.index(),
                        st.max_active,
                        st.total_defined
                    ));
                    if r.index() != expected || st.total_defined > 1_000_000 || t.as_secs() > 60 {
                        failures.push(format!("H={label} {name}"));
                    }
                }
                Err(e) => {
                    report.push(format!("H={label} {name}: {e}"));
                    failures.push(format!("H={label} {name}"));
                }
            }
        }
    }
    let text = report.join("; ");
    if failures.is_empty() {
        Ok(text)
    } else {
        Err(format!(
            "not within limits: {} [{text}]",
            failures.join(", ")
        ))
    }
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let corpus: &[(&str, &str, &str)] = &[
        ("C5", "<a | a^5>", ""),
        ("C7 over trivial", "<a | a^7>", ""),
        ("D3", "<a,b | a^3, b^2, (a*b)^2>", ""),
        ("D5", "<a,b | a^5, b^2, (a*b)^2>", ""),
        ("D6 over <b>", "<a,b | a^6, b^2, (a*b)^2>", "b"),
        ("S3", "<a,b | a^2, b^3, (a*b)^2>", ""),
        ("S4", "<a,b | a^2, b^3, (a*b)^4>", ""),
        ("S4 over <b>", "<a,b | a^2, b^3, (a*b)^4>", "b"),
        ("Q8", "<a,b | a^4, a^2*b^-2, b^-1*a*b*a>", ""),
        ("A4", "<a,b | a^2, b^3, (a*b)^3>", ""),
        ("A5", "<a,b | a^2, b^3, (a*b)^5>", ""),
        ("C2xC2", "<a,b | a^2, b^2, [a,b]>", ""),
        ("Mennicke over <x>", MENNICKE, "x"),
    ];
    let mut mismatches = Vec::new();
    for (name, text, sub) in corpus {
        let p = pres(text);
        let h = SubgroupSpec::parse(sub, &p).unwrap();
        let a = enumerate(&p, &h, &Strategy::hlt()).map(|r| r.table().dump());
        let b = enumerate(&p, &h, &Strategy::felsch()).map(|r| r.table().dump());
        match (a, b) {
            (Ok(a), Ok(b)) if a == b => {}
            _ => mismatches.push(*name),
        }
    }
    check(mismatches.is_empty(), || {
        format!("disagreement on {mismatches:?}")
    })?;
    within(start, Duration::from_secs(300))?;
    Ok(format!("{} presentations agree", corpus.len()))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let r = low_index_subgroups(&pres("<a,b | >"), 5, false);
    let got: Vec<u128> = r
        .counts_by_index(5)
        .into_iter()
        .map(|c| c as u128)
        .collect();
    let want = hall_counts(2, 5);
    check(got == want, || format!("counts {got:?}, oracle {want:?}"))?;
    check(want == [1, 3, 13, 71, 461], || {
        format!("oracle gave {want:?}")
    })?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("counts {got:?}"))
}

/// `|H/H'|` for the permutation group `H = <gens>`, by closure, and for each
/// `m ≤ |H|` the number of elements of `H/H'` whose order divides `m`. These
/// counts determine a finite abelian group up to isomorphism.
fn brute_force_abelianization(degree: usize, gens: &[Permutation]) -> (usize, Vec<usize>) {
    let h = closure(degree, gens);
    let comms: Vec<Permutation> = h
        .iter()
        .flat_map(|a| h.iter().map(move |b| Permutation::commutator(a, b)))
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    let derived: HashSet<Permutation> = closure(degree, &comms).into_iter().collect();
    let counts = (1..=h.len())
        .map(|m| {
            let n = h
                .iter()
                .filter(|x| derived.contains(&x.pow(m as i64)))
                .count();
            n / derived.len()
        })
        .collect();
    (h.len() / derived.len(), counts)
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for text in ["<a,b | a^2, b^3, (a*b)^2>", "<a,b | a^2, b^3, (a*b)^4>"] {
        let p = pres(text);
        let regular: EnumerationResult =
            enumerate(&p, &SubgroupSpec::trivial(), &Strategy::default()).unwrap();
        let images = regular.permutations();
        let degree = images[0].degree();
        let found = low_index_subgroups(&p, 6, false);
        for (s, probe) in found
            .subgroups
            .iter()
            .zip(quotient_abelian_probe(&found, &p))
        {
            let gens: Vec<Permutation> = s
                .generators
                .generators
                .iter()
                .map(|w| evaluate(w, &images))
                .collect();
            let gens = if gens.is_empty() {
                vec![Permutation::identity(degree)]
            } else {
                gens
            };
            let (order, counts) = brute_force_abelianization(degree, &gens);
            check(probe.free_rank == 0, || {
                format!("{text}: index {} subgroup has free rank", s.index())
            })?;
            let predicted = |m: usize| -> usize {
                probe
                    .torsion
                    .iter()
                    .map(|d| BigUint::from(m).gcd(d))
                    .product::<BigUint>()
                    .try_into()
                    .unwrap()
            };
            let inv_order: usize = probe
                .torsion
                .iter()
                .product::<BigUint>()
                .try_into()
                .unwrap();
            check(inv_order == order, || {
                format!("{text}: index {}: |H/H'| {inv_order} vs {order}", s.index())
            })?;
            for (m, &c) in counts.iter().enumerate() {
                check(predicted(m + 1) == c, || {
                    format!("{text}: index {}: elements of order | {}", s.index(), m + 1)
                })?;
            }
            // The simplified presentation must describe the same quotient.
            let q = reidemeister_presentation(&p, &s.table).unwrap();
            let simplified = abelian_invariants(&tietze_simplify(&q, 1000));
            check(
                simplified.torsion == probe.torsion && simplified.free_rank == 0,
                || format!("{text}: index {}: Tietze changed H/H'", s.index()),
            )?;
            checked += 1;
        }
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("{checked} subgroups match"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..200 {
        let (cols, rows) = random_matrix(&mut rng, 5, 9);
        let m = IntMatrix::from_rows(cols, &rows).unwrap();
        let got: Vec<BigUint> = smith_normal_form(&m).diagonal;
        let want: Vec<BigUint> = invariant_factors(&rows, cols)
            .into_iter()
            .map(BigUint::from)
            .collect();
        check(got == want, || {
            format!("matrix {k} {rows:?}: {got:?} vs {want:?}")
        })?;
        for pair in got.windows(2) {
            check(pair[1].is_multiple_of(&pair[0]), || {
                format!("matrix {k}: {} does not divide {}", pair[0], pair[1])
            })?;
        }
    }
    within(start, Duration::from_secs(30))?;
    Ok("200 matrices match".into())
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let corpus = [
        ("S4", "(1,2),(1,2,3,4)", 4, 24usize),
        ("A5", "(1,2,3,4,5),(1,2,3)", 5, 60),
        ("D4", "(1,2,3,4),(1,3)", 4, 8),
        ("C2xC2", "(1,2),(3,4)", 4, 4),
        (
            "M11",
            "(1,2,3,4,5,6,7,8,9,10,11),(3,7,11,8)(4,10,5,6)",
            11,
            7920,
        ),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (name, gens, degree, expected) in corpus {
        let g = group_of_degree(gens, degree);
        let all = elements(&g);
        check(all.len() == expected, || {
            format!("{name}: closure gave {}", all.len())
        })?;
        let order = g.order();
        check(order == BigUint::from(expected), || {
            format!("{name}: order {order}")
        })?;
        let members: HashSet<&Permutation> = all.iter().collect();
        for _ in 0..200 {
            let mut images: Vec<usize> = (0..degree).collect();
            rand::seq::SliceRandom::shuffle(&mut images[..], &mut rng);
            let p = Permutation::from_images(images).unwrap();
            check(g.contains(&p) == members.contains(&p), || {
                format!("{name}: membership of {p}")
            })?;
        }
        let chain = StabilizerChain::schreier_sims(degree, g.generators());
        for seed in 0..5 {
            let random = verify_chain(&g, &random_schreier(&g, 20, seed));
            check(random.order() == chain.order(), || {
                format!(
                    "{name}: random chain (seed {seed}) order {}",
                    random.order()
                )
            })?;
            check(all.iter().all(|e| random.contains(e)), || {
                format!("{name}: random chain misses elements")
            })?;
        }
    }
    within(start, Duration::from_secs(120))?;
    Ok("5 groups, deterministic and randomized chains agree".into())
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let corpus = transitive_corpus();
    for (name, g) in &corpus {
        let n = g.degree();
        for b in 1..n {
            let got = minimal_block_partition(g, 0, b).unwrap();
            let want = finest_block_system(n, g.generators(), 0, b);
            check(got == want, || {
                format!("{name}: blocks for (1,{}) {got:?} vs {want:?}", b + 1)
            })?;
        }
        let prim = is_primitive(g).unwrap();
        check(
            prim == is_primitive_by_partitions(n, g.generators()),
            || format!("{name}: primitivity {prim}"),
        )?;
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{} transitive groups match", corpus.len()))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut conjugacy_checks = 0;
    for (name, g) in backtrack_corpus() {
        let all = elements(&g);
        check(all.len() <= 5000, || format!("{name} too large"))?;
        let n = g.degree();
        for _ in 0..6 {
            let z = &all[rng.gen_range(0..all.len())];
            let c = centralizer(&g, z).unwrap();
            let want = all.iter().filter(|&h| h * z == z * h).count();
            check(c.order() == BigUint::from(want), || {
                format!("{name}: centralizer of {z}: {} vs {want}", c.order())
            })?;
            check(c.generators().iter().all(|h| h * z == z * h), || {
                format!("{name}: centralizer generator does not commute with {z}")
            })?;
        }
        for _ in 0..6 {
            let set: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
            let s = set_stabilizer(&g, &set).unwrap();
            let stabilizes = |h: &Permutation| {
                let image: HashSet<usize> = set.iter().map(|&p| h.image(p)).collect();
                set.iter().all(|p| image.contains(p))
            };
            let want = all.iter().filter(|h| stabilizes(h)).count();
            check(s.order() == BigUint::from(want), || {
                format!("{name}: stabilizer of {set:?}: {} vs {want}", s.order())
            })?;
            check(s.generators().iter().all(stabilizes), || {
                format!("{name}: stabilizer generator moves {set:?}")
            })?;
        }
        if all.len() > 1000 {
            continue;
        }
        for _ in 0..10 {
            let x = &all[rng.gen_range(0..all.len())];
            let y = if rng.gen_bool(0.5) {
                x.conjugate_by(&all[rng.gen_range(0..all.len())])
            } else {
                all[rng.gen_range(0..all.len())].clone()
            };
            let exists = all.iter().any(|h| &(&h.inverse() * x) * h == y);
            match element_conjugacy(&g, x, &y).unwrap() {
                Some(h) => {
                    check(g.contains(&h) && &(&h.inverse() * x) * &h == y, || {
                        format!("{name}: bad witness {h} for {x} ~ {y}")
                    })?;
                }
                None => check(!exists, || format!("{name}: missed {x} ~ {y}"))?,
            }
            conjugacy_checks += 1;
        }
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!(
        "centralizers and set stabilizers match, {conjugacy_checks} conjugacy checks"
    ))
}

fn random_word(rng: &mut ChaCha8Rng, rank: usize, len: usize) -> Vec<Letter> {
    (0..len)
        .map(|_| Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5)))
        .collect()
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let p = pres(MENNICKE);
    // The default definition order does not finish within the budget of
    // criterion 1 here, so the table comes from the preferred-definition
    // variant with a larger row limit.
    let s = Strategy::felsch()
        .with_preferred_definitions(10)
        .with_max_cosets(5_000_000);
    let r = enumerate(&p, &SubgroupSpec::trivial(), &s).map_err(|e| e.to_string())?;
    check(r.index() == 210, || format!("index {}", r.index()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1000 {
        let len = rng.gen_range(0..=40);
        let w = random_word(&mut rng, 3, len);
        let inv: Vec<Letter> = w.iter().rev().map(|l| l.inverse()).collect();
        let cat = Word::from_letters([w, inv].concat());
        check(r.word_image(&cat) == 0, || {
            format!("w w^-1 = {cat:?} not trivial")
        })?;
    }
    for _ in 0..1000 {
        let rel = &p.relators()[rng.gen_range(0..p.relators().len())];
        let len = rng.gen_range(0..=20);
        let u = random_word(&mut rng, 3, len);
        let u_inv: Vec<Letter> = u.iter().rev().map(|l| l.inverse()).collect();
        let conj = Word::from_letters([u, rel.letters().to_vec(), u_inv].concat());
        check(r.word_image(&conj) == 0, || {
            format!("relator conjugate {conj:?} not trivial")
        })?;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "2000 words trace to coset 1 (table built with total {})",
        r.stats().total_defined
    ))
}

fn criterion_10() -> Outcome {
    // The large historical runs are excluded by design; the Coxeter
    // presentation is available as the `coxeter` example. This checks the
    // small end of that example.
    let p = pres("<a,b,c,d | a^2, b^2, c^2, d^2, (a*b)^5, (b*c)^3, (c*d)^3, [a,c], [b,d], [a,d]>");
    let classes = low_index_subgroups(&p, 4, true);
    let indices: Vec<usize> = classes.subgroups.iter().map(|s| s.index()).collect();
    check(indices == [1, 2], || {
        format!("classes of index <= 4: {indices:?}")
    })?;
    let order = order_of_group(&p, &Strategy::default()).map_err(|e| e.to_string())?;
    check(order == 14400, || format!("order {order}"))?;
    Ok("excluded runs replaced by the suites above; Coxeter example smoke test passes".into())
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = 0;
    for (k, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let t = start.elapsed();
        match outcome {
            Ok(msg) => println!("criterion {k}: PASS ({t:.2?}) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {k}: FAIL ({t:.2?}) {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
