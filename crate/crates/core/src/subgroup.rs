//! Subgroups read off coset tables: Schreier transversals and generators,
//! Reidemeister-Schreier presentations, and Tietze simplification.

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::coset_table::CosetTable;
use crate::words::{Letter, Presentation, SubgroupSpec, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubgroupError {
    #[error("coset table is incomplete")]
    IncompleteTable,
    #[error("coset table has {table} generators but the presentation has {presentation}")]
    RankMismatch { table: usize, presentation: usize },
}

/// Coset representatives forming a Schreier (prefix-closed) set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transversal {
    reps: Vec<Word>,
}

impl Transversal {
    /// `reps()[i]` traces from coset 0 to coset `i`; `reps()[0]` is empty.
    pub fn reps(&self) -> &[Word] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

fn check_complete(table: &CosetTable) -> Result<(), SubgroupError> {
    if table.is_complete() && table.dead_count() == 0 {
        Ok(())
    } else {
        Err(SubgroupError::IncompleteTable)
    }
}

/// Breadth-first spanning tree of the coset graph, visiting columns in
/// order. For a standardized table the tree discovers cosets in numbering
/// order.
pub fn schreier_transversal(table: &CosetTable) -> Result<Transversal, SubgroupError> {
    check_complete(table)?;
    let n = table.rows();
    let mut reps: Vec<Option<Word>> = vec![None; n];
    reps[0] = Some(Word::empty());
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for x in 0..table.columns() {
            let d = table.entry(c, x).expect("complete table");
            if reps[d].is_none() {
                let mut letters = reps[c].as_ref().expect("visited").letters().to_vec();
                letters.push(Letter::from_column(x));
                reps[d] = Some(Word::from_letters(letters));
                queue.push_back(d);
            }
        }
    }
    Ok(Transversal {
        // Every row of a complete compact table built from coset 0 is reachable.
        reps: reps.into_iter().map(|r| r.unwrap_or_default()).collect(),
    })
}

/// The Schreier generator `reps[coset] · x · reps[coset·x]^-1`, freely
/// reduced; empty exactly on tree edges.
fn schreier_word(table: &CosetTable, reps: &[Word], coset: usize, generator: usize) -> Word {
    let column = 2 * generator;
    let target = table.entry(coset, column).expect("complete table");
    let mut letters = reps[coset].letters().to_vec();
    letters.push(Letter::from_column(column));
    letters.extend(reps[target].inverse().into_letters());
    Word::from_letters(letters).free_reduce()
}

/// Nontrivial Schreier generators `(coset, generator, word)` in coset-major
/// order.
fn schreier_table(table: &CosetTable, t: &Transversal) -> Vec<(usize, usize, Word)> {
    let mut out = Vec::new();
    for c in 0..table.rows() {
        for x in 0..table.rank() {
            let w = schreier_word(table, &t.reps, c, x);
            if !w.is_empty() {
                out.push((c, x, w));
            }
        }
    }
    out
}

/// Generators of the subgroup stabilizing coset 0, as words in the group's
/// generators. Tree edges are omitted, leaving `n·r − (n − 1)` words for an
/// `n`-row table over `r` generators.
pub fn schreier_generators(table: &CosetTable, transversal: &Transversal) -> Vec<Word> {
    schreier_table(table, transversal)
        .into_iter()
        .map(|(_, _, w)| w)
        .collect()
}

/// The Schreier generators of a complete table, packaged as a subgroup.
pub fn subgroup_of_table(table: &CosetTable) -> Result<SubgroupSpec, SubgroupError> {
    let t = schreier_transversal(table)?;
    Ok(SubgroupSpec::new(schreier_generators(table, &t)))
}

/// A Reidemeister-Schreier presentation together with the meaning of each
/// new generator as a word in the original generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rewritten {
    pub presentation: Presentation,
    pub definitions: Vec<Word>,
}

/// Presentation of the subgroup stabilizing coset 0, on the nontrivial
/// Schreier generators.
///
/// The generator for coset `i` and original generator `a` is named
/// `a_{i+1}`. Relators are the rewritten conjugates `reps[i]·R·reps[i]^-1`,
/// cyclically reduced, with empty words and cyclic duplicates removed.
pub fn reidemeister_presentation(
    presentation: &Presentation,
    table: &CosetTable,
) -> Result<Presentation, SubgroupError> {
    reidemeister_rewrite(presentation, table).map(|r| r.presentation)
}

pub fn reidemeister_rewrite(
    presentation: &Presentation,
    table: &CosetTable,
) -> Result<Rewritten, SubgroupError> {
    if table.rank() != presentation.rank() {
        return Err(SubgroupError::RankMismatch {
            table: table.rank(),
            presentation: presentation.rank(),
        });
    }
    let t = schreier_transversal(table)?;
    let gens = schreier_table(table, &t);
    let rank = presentation.rank();
    // index[coset * rank + generator] = new generator number, if nontrivial.
    let mut index = vec![None; table.rows() * rank];
    let mut names = Vec::with_capacity(gens.len());
    for (k, (c, x, _)) in gens.iter().enumerate() {
        index[c * rank + x] = Some(k);
        names.push(format!("{}_{}", presentation.generators()[*x], c + 1));
    }
    let mut seen = HashSet::new();
    let mut relators = Vec::new();
    for start in 0..table.rows() {
        for r in presentation.relators() {
            let mut coset = start;
            let mut letters = Vec::new();
            for &l in r.letters() {
                let next = table.entry(coset, l.column()).expect("complete table");
                let (from, x) = if l.is_inverse() {
                    (next, l.generator())
                } else {
                    (coset, l.generator())
                };
                if let Some(k) = index[from * rank + x] {
                    letters.push(Letter::new(k, l.is_inverse()));
                }
                coset = next;
            }
            let w = Word::from_letters(letters).cyclically_reduce();
            if !w.is_empty() && seen.insert(w.cyclic_key()) {
                relators.push(w);
            }
        }
    }
    let presentation = Presentation::new(names, relators).expect("generated names are valid");
    Ok(Rewritten {
        presentation,
        definitions: gens.into_iter().map(|(_, _, w)| w).collect(),
    })
}

/// Simplifies a presentation by Tietze transformations without increasing
/// its total relator length.
///
/// Rules are tried cheapest first: (1) drop empty relators and cyclic
/// duplicates; (2) eliminate a generator occurring exactly once in some
/// relator, choosing the elimination with the smallest resulting length
/// (ties: lowest generator, then lowest relator); (3) replace a long piece
/// of one relator by the shorter complement from another relator. Each
/// application of rule (2) or (3) costs one unit of `budget`.
pub fn tietze_simplify(presentation: &Presentation, budget: usize) -> Presentation {
    let mut names = presentation.generators().to_vec();
    let mut relators = presentation.relators().to_vec();
    let mut budget = budget;
    loop {
        dedup_relators(&mut relators);
        if budget == 0 {
            break;
        }
        let total: usize = relators.iter().map(Word::len).sum();
        if let Some((g, result)) = best_elimination(names.len(), &relators) {
            if result.iter().map(Word::len).sum::<usize>() <= total {
                relators = result;
                names.remove(g);
                budget -= 1;
                continue;
            }
        }
        if let Some((i, w)) = best_shortening(&relators) {
            relators[i] = w;
            budget -= 1;
            continue;
        }
        break;
    }
    Presentation::new(names, relators).expect("names come from a valid presentation")
}

fn dedup_relators(relators: &mut Vec<Word>) {
    let mut seen = HashSet::new();
    relators.retain(|w| !w.is_empty() && seen.insert(w.cyclic_key()));
}

/// The elimination with the smallest resulting total length, as
/// `(generator, new relators)` with generators above the eliminated one
/// renumbered down.
fn best_elimination(rank: usize, relators: &[Word]) -> Option<(usize, Vec<Word>)> {
    let mut best: Option<(usize, usize, Vec<Word>)> = None;
    for g in 0..rank {
        for (i, r) in relators.iter().enumerate() {
            if r.occurrences(g) != 1 {
                continue;
            }
            let result = eliminate(g, i, relators);
            let len: usize = result.iter().map(Word::len).sum();
            if best.as_ref().is_none_or(|b| len < b.0) {
                best = Some((len, g, result));
            }
        }
    }
    best.map(|(_, g, result)| (g, result))
}

/// Solves relator `i` for generator `g` and substitutes everywhere else.
fn eliminate(g: usize, i: usize, relators: &[Word]) -> Vec<Word> {
    let r = &relators[i];
    let pos = r
        .letters()
        .iter()
        .position(|l| l.generator() == g)
        .expect("generator occurs");
    let rotated = r.rotate(pos);
    // rotated = g^e · w = 1, so g = w^-1 when e = 1 and g = w when e = -1.
    let w = Word::from_letters(rotated.letters()[1..].to_vec());
    let value = if rotated.letters()[0].is_inverse() {
        w
    } else {
        w.inverse()
    };
    let value_inv = value.inverse();
    relators
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, s)| {
            let mut letters = Vec::with_capacity(s.len());
            for &l in s.letters() {
                if l.generator() == g {
                    let sub = if l.is_inverse() { &value_inv } else { &value };
                    letters.extend(sub.letters().iter().map(|&m| lower(m, g)));
                } else {
                    letters.push(lower(l, g));
                }
            }
            Word::from_letters(letters).cyclically_reduce()
        })
        .collect()
}

fn lower(l: Letter, removed: usize) -> Letter {
    if l.generator() > removed {
        Letter::new(l.generator() - 1, l.is_inverse())
    } else {
        l
    }
}

/// The largest strict shortening of one relator by another: if a cyclic
/// conjugate of relator `i` starts with more than half of a cyclic
/// conjugate `s = u·t` of relator `j` (or its inverse), `u` is replaced by
/// `t^-1`.
fn best_shortening(relators: &[Word]) -> Option<(usize, Word)> {
    let mut best: Option<(usize, usize, Word)> = None;
    for (i, r) in relators.iter().enumerate() {
        let n = r.len();
        for (j, s) in relators.iter().enumerate() {
            if i == j || s.len() > 2 * n {
                continue;
            }
            let m = s.len();
            let s_inv = s.inverse();
            for rot in 0..n {
                let rr = r.rotate(rot);
                for base in [s, &s_inv] {
                    for sr in 0..m {
                        let ss = base.rotate(sr);
                        let k = rr
                            .letters()
                            .iter()
                            .zip(ss.letters())
                            .take_while(|(a, b)| a == b)
                            .count();
                        if 2 * k <= m {
                            continue;
                        }
                        let mut letters = Word::from_letters(ss.letters()[k..].to_vec())
                            .inverse()
                            .into_letters();
                        letters.extend_from_slice(&rr.letters()[k..]);
                        let w = Word::from_letters(letters).cyclically_reduce();
                        let gain = n - w.len().min(n);
                        if w.len() < n && best.as_ref().is_none_or(|b| gain > b.0) {
                            best = Some((gain, i, w));
                        }
                    }
                }
            }
        }
    }
    best.map(|(_, i, w)| (i, w))
}
