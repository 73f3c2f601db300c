//! Subgroups of small index, found by backtracking over standard coset
//! tables.
//!
//! Entries are filled in row-major order. Each undefined entry is tried with
//! every existing coset whose inverse entry is free, then with one new
//! coset; after each choice the relators are scanned through every new
//! entry without defining cosets. A forced coincidence prunes the branch.
//! Because new cosets only ever appear at the first undefined entry, every
//! complete table produced is already standard, so each subgroup appears
//! exactly once.

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::abelian::abelian_invariants;
use crate::coset_table::{CosetTable, ScanResult};
use crate::enumerate::rotations_by_column;
use crate::subgroup::{reidemeister_presentation, subgroup_of_table};
use crate::words::{Presentation, SubgroupSpec, Word};

/// A subgroup of finite index: its standard coset table and Schreier
/// generators read from that table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowIndexSubgroup {
    pub table: CosetTable,
    pub generators: SubgroupSpec,
}

impl LowIndexSubgroup {
    pub fn index(&self) -> usize {
        self.table.rows()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LowIndexResult {
    pub subgroups: Vec<LowIndexSubgroup>,
}

impl LowIndexResult {
    /// Number of subgroups found of each index `1..=max`.
    pub fn counts_by_index(&self, max: usize) -> Vec<usize> {
        let mut counts = vec![0; max];
        for s in &self.subgroups {
            if (1..=max).contains(&s.index()) {
                counts[s.index() - 1] += 1;
            }
        }
        counts
    }
}

/// All subgroups of index at most `n`, or one per conjugacy class when
/// `classes_only` is set. Output order is the depth-first order of the
/// search, which is deterministic.
pub fn low_index_subgroups(
    presentation: &Presentation,
    n: usize,
    classes_only: bool,
) -> LowIndexResult {
    if n == 0 {
        return LowIndexResult::default();
    }
    let mut search = Search {
        relators: presentation.relators(),
        rotations: rotations_by_column(presentation.relators(), presentation.rank()),
        n,
        found: Vec::new(),
    };
    let mut root = CosetTable::new(presentation.rank(), n);
    root.set_record_deductions(true);
    if search.propagate(&mut root) {
        search.descend(root);
    }
    let mut tables = search.found;
    if classes_only {
        tables = class_representatives(tables);
    }
    LowIndexResult {
        subgroups: tables
            .into_iter()
            .map(|table| {
                let generators = subgroup_of_table(&table).expect("tables are complete");
                LowIndexSubgroup { table, generators }
            })
            .collect(),
    }
}

struct Search<'a> {
    relators: &'a [Word],
    rotations: Vec<Vec<Word>>,
    n: usize,
    found: Vec<CosetTable>,
}

impl Search<'_> {
    fn descend(&mut self, table: CosetTable) {
        let Some((c, x)) = first_gap(&table) else {
            if self.closes(&table) {
                let mut table = table;
                table.set_record_deductions(false);
                debug_assert!(table.is_standard());
                self.found.push(table);
            }
            return;
        };
        for d in 0..table.rows() {
            if table.entry(d, x ^ 1).is_some() {
                continue;
            }
            let mut t = table.clone();
            t.assign(c, x, d).expect("both entries are free");
            if self.propagate(&mut t) {
                self.descend(t);
            }
        }
        if table.rows() < self.n {
            let mut t = table;
            t.define(c, x).expect("below capacity");
            if self.propagate(&mut t) {
                self.descend(t);
            }
        }
    }

    /// Scans every relator through each queued entry; false on a forced
    /// coincidence.
    fn propagate(&self, t: &mut CosetTable) -> bool {
        while let Some((c, x)) = t.pop_deduction() {
            for (coset, column) in [(Some(c), x), (t.entry(c, x), x ^ 1)] {
                let coset = coset.expect("deduction entries are defined");
                for w in &self.rotations[column] {
                    if let Ok(ScanResult::Coincidence(..)) = t.scan(coset, w, false) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn closes(&self, t: &CosetTable) -> bool {
        (0..t.rows()).all(|c| self.relators.iter().all(|r| t.trace(c, r) == Some(c)))
    }
}

fn first_gap(t: &CosetTable) -> Option<(usize, usize)> {
    (0..t.rows()).find_map(|c| {
        (0..t.columns())
            .find(|&x| t.entry(c, x).is_none())
            .map(|x| (c, x))
    })
}

/// Keeps the first table of each conjugacy class: tables are conjugate iff
/// re-rooting one at some coset and standardizing gives the other.
fn class_representatives(tables: Vec<CosetTable>) -> Vec<CosetTable> {
    let mut seen: HashSet<String> = HashSet::new();
    let mut out = Vec::new();
    for t in tables {
        if seen.contains(&t.dump()) {
            continue;
        }
        for k in 0..t.rows() {
            let conj = t.standardize_from(k).expect("complete table");
            seen.insert(conj.dump());
        }
        out.push(t);
    }
    out
}

/// Abelian invariants of one subgroup's Reidemeister-Schreier presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianProbe {
    pub index: usize,
    pub free_rank: usize,
    pub torsion: Vec<BigUint>,
}

/// For each subgroup `H`, the structure of `H/H'`. A positive free rank for
/// any subgroup proves the group infinite.
pub fn quotient_abelian_probe(
    result: &LowIndexResult,
    presentation: &Presentation,
) -> Vec<AbelianProbe> {
    result
        .subgroups
        .iter()
        .map(|s| {
            let q = reidemeister_presentation(presentation, &s.table)
                .expect("low-index tables are complete");
            let inv = abelian_invariants(&q);
            AbelianProbe {
                index: s.index(),
                free_rank: inv.free_rank,
                torsion: inv.torsion,
            }
        })
        .collect()
}
