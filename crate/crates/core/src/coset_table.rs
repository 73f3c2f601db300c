//! Partial coset tables.
//!
//! Row `0` is the subgroup itself; coset numbers in this API are 0-based.
//! The text dump format is 1-based with `0` meaning "undefined".
//!
//! Columns interleave generators and their inverses: column `2g` is generator
//! `g` and column `2g + 1` its inverse, matching [`Letter::column`].
//!
//! Coincidences are merged with a union-find structure in which the lower
//! numbered coset survives. Merged rows stay allocated (dead) until
//! [`CosetTable::compact`] renumbers the table.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

use crate::perm::Permutation;
use crate::words::{Letter, Word};

const UNDEF: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("coset table capacity of {0} rows exhausted")]
    CapacityExceeded(usize),
    #[error("coset {0} is not live")]
    DeadCoset(usize),
    #[error("entry ({coset}, {column}) is already defined")]
    EntryDefined { coset: usize, column: usize },
    #[error("coset table is incomplete")]
    Incomplete,
    #[error("malformed table dump: {0}")]
    Dump(String),
}

/// Counters describing the cost of an enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TableStats {
    /// Every coset ever allocated, including the subgroup and later-dead rows.
    pub total_defined: u64,
    /// Largest number of simultaneously live cosets.
    pub max_active: usize,
    pub current_active: usize,
}

/// Outcome of scanning a word through the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanResult {
    /// The scan closed consistently.
    Complete,
    /// Exactly one gap remained and was filled with `table[coset][column] = value`.
    Deduction {
        coset: usize,
        column: usize,
        value: usize,
    },
    /// Forward and backward scans met at different cosets.
    Coincidence(usize, usize),
    /// More than one letter is still untraced (only without `fill`). The
    /// forward scan stopped at the undefined entry `(coset, column)`; `gap`
    /// letters separate it from the backward scan.
    Incomplete {
        coset: usize,
        column: usize,
        gap: usize,
    },
}

#[derive(Debug, Clone)]
pub struct CosetTable {
    columns: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    capacity: usize,
    deductions: VecDeque<(u32, u32)>,
    record_deductions: bool,
    stats: TableStats,
}

impl CosetTable {
    /// A table with the single coset of the subgroup, for a presentation on
    /// `rank` generators, that may allocate at most `capacity` rows.
    pub fn new(rank: usize, capacity: usize) -> Self {
        let columns = 2 * rank;
        CosetTable {
            columns,
            table: vec![UNDEF; columns],
            parent: vec![0],
            capacity: capacity.max(1),
            deductions: VecDeque::new(),
            record_deductions: true,
            stats: TableStats {
                total_defined: 1,
                max_active: 1,
                current_active: 1,
            },
        }
    }

    pub fn rank(&self) -> usize {
        self.columns / 2
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    /// Allocated rows, live or dead.
    pub fn rows(&self) -> usize {
        self.parent.len()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn set_capacity(&mut self, capacity: usize) {
        self.capacity = capacity.max(1);
    }

    pub fn stats(&self) -> TableStats {
        self.stats
    }

    pub fn live_count(&self) -> usize {
        self.stats.current_active
    }

    pub fn dead_count(&self) -> usize {
        self.rows() - self.stats.current_active
    }

    pub fn is_live(&self, coset: usize) -> bool {
        coset < self.parent.len() && self.parent[coset] as usize == coset
    }

    pub fn live_cosets(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rows()).filter(move |&c| self.is_live(c))
    }

    pub fn entry(&self, coset: usize, column: usize) -> Option<usize> {
        match self.table[coset * self.columns + column] {
            UNDEF => None,
            v => Some(v as usize),
        }
    }

    #[inline]
    fn get(&self, coset: u32, column: usize) -> u32 {
        self.table[coset as usize * self.columns + column]
    }

    #[inline]
    fn put(&mut self, coset: u32, column: usize, value: u32) {
        self.table[coset as usize * self.columns + column] = value;
    }

    /// Controls whether newly filled entries are queued as deductions.
    pub fn set_record_deductions(&mut self, record: bool) {
        self.record_deductions = record;
        if !record {
            self.deductions.clear();
        }
    }

    pub fn pop_deduction(&mut self) -> Option<(usize, usize)> {
        self.deductions
            .pop_front()
            .map(|(c, x)| (c as usize, x as usize))
    }

    pub fn pending_deductions(&self) -> usize {
        self.deductions.len()
    }

    fn push_deduction(&mut self, coset: u32, column: usize) {
        if self.record_deductions {
            self.deductions.push_back((coset, column as u32));
        }
    }

    /// Allocates a new coset as the image of `coset` under `column`.
    pub fn define(&mut self, coset: usize, column: usize) -> Result<usize, TableError> {
        if !self.is_live(coset) {
            return Err(TableError::DeadCoset(coset));
        }
        if self.entry(coset, column).is_some() {
            return Err(TableError::EntryDefined { coset, column });
        }
        if self.rows() >= self.capacity {
            return Err(TableError::CapacityExceeded(self.capacity));
        }
        let new = self.rows() as u32;
        self.parent.push(new);
        self.table.extend(std::iter::repeat_n(UNDEF, self.columns));
        self.put(coset as u32, column, new);
        self.put(new, column ^ 1, coset as u32);
        self.push_deduction(coset as u32, column);
        self.stats.total_defined += 1;
        self.stats.current_active += 1;
        self.stats.max_active = self.stats.max_active.max(self.stats.current_active);
        Ok(new as usize)
    }

    /// Sets `table[coset][column] = value` and the matching inverse entry,
    /// queueing a deduction. Both entries must be undefined.
    pub fn assign(&mut self, coset: usize, column: usize, value: usize) -> Result<(), TableError> {
        for c in [coset, value] {
            if !self.is_live(c) {
                return Err(TableError::DeadCoset(c));
            }
        }
        if self.entry(coset, column).is_some() {
            return Err(TableError::EntryDefined { coset, column });
        }
        if self.entry(value, column ^ 1).is_some() {
            return Err(TableError::EntryDefined {
                coset: value,
                column: column ^ 1,
            });
        }
        self.put(coset as u32, column, value as u32);
        self.put(value as u32, column ^ 1, coset as u32);
        self.push_deduction(coset as u32, column);
        Ok(())
    }

    /// Scans `word` from `coset` forwards and backwards.
    ///
    /// With `fill`, gaps are closed by defining new cosets, so the result is
    /// never [`ScanResult::Incomplete`]. A single remaining gap is always
    /// filled as a deduction. Coincidences are reported, not processed.
    pub fn scan(
        &mut self,
        coset: usize,
        word: &Word,
        fill: bool,
    ) -> Result<ScanResult, TableError> {
        if !self.is_live(coset) {
            return Err(TableError::DeadCoset(coset));
        }
        let letters = word.letters();
        let start = coset as u32;
        let (mut f, mut i) = (start, 0usize);
        let (mut b, mut j) = (start, letters.len());
        loop {
            while i < j {
                let next = self.get(f, letters[i].column());
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == j {
                return Ok(closed(f, b));
            }
            while j > i {
                let next = self.get(b, letters[j - 1].column() ^ 1);
                if next == UNDEF {
                    break;
                }
                b = next;
                j -= 1;
            }
            if i == j {
                return Ok(closed(f, b));
            }
            if j == i + 1 {
                let column = letters[i].column();
                self.put(f, column, b);
                self.put(b, column ^ 1, f);
                self.push_deduction(f, column);
                return Ok(ScanResult::Deduction {
                    coset: f as usize,
                    column,
                    value: b as usize,
                });
            }
            if !fill {
                return Ok(ScanResult::Incomplete {
                    coset: f as usize,
                    column: letters[i].column(),
                    gap: j - i,
                });
            }
            self.define(f as usize, letters[i].column())?;
        }
    }

    fn find(&mut self, coset: u32) -> u32 {
        let mut root = coset;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut c = coset;
        while self.parent[c as usize] != root {
            let next = self.parent[c as usize];
            self.parent[c as usize] = root;
            c = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32, dead: &mut Vec<u32>) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
        self.stats.current_active -= 1;
        dead.push(hi);
    }

    /// Identifies cosets `a` and `b`, along with every coincidence that
    /// follows from it. Entries gained by surviving rows are queued as
    /// deductions.
    pub fn process_coincidence(&mut self, a: usize, b: usize) {
        let mut dead = Vec::new();
        self.merge(a as u32, b as u32, &mut dead);
        let mut next = 0;
        while next < dead.len() {
            let e = dead[next];
            next += 1;
            for x in 0..self.columns {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                let xi = x ^ 1;
                if self.get(f, xi) == e {
                    self.put(f, xi, UNDEF);
                }
                let e1 = self.find(e);
                let f1 = self.find(f);
                let image = self.get(e1, x);
                if image != UNDEF {
                    self.merge(f1, image, &mut dead);
                    continue;
                }
                let preimage = self.get(f1, xi);
                if preimage != UNDEF {
                    self.merge(e1, preimage, &mut dead);
                    continue;
                }
                self.put(e1, x, f1);
                self.put(f1, xi, e1);
                self.push_deduction(e1, x);
            }
        }
    }

    /// Renumbers the live rows consecutively, preserving their order.
    /// Returns the old-to-new map (`None` for dead rows).
    pub fn compact(&mut self) -> Vec<Option<usize>> {
        let mut map = vec![UNDEF; self.rows()];
        let mut next = 0u32;
        for (c, slot) in map.iter_mut().enumerate() {
            if self.is_live(c) {
                *slot = next;
                next += 1;
            }
        }
        let live = next as usize;
        let mut table = Vec::with_capacity(live * self.columns);
        for c in 0..self.rows() {
            if map[c] == UNDEF {
                continue;
            }
            for x in 0..self.columns {
                let v = self.get(c as u32, x);
                table.push(if v == UNDEF { UNDEF } else { map[v as usize] });
            }
        }
        self.table = table;
        self.parent = (0..live as u32).collect();
        let deductions = std::mem::take(&mut self.deductions);
        self.deductions = deductions
            .into_iter()
            .filter(|&(c, _)| map[c as usize] != UNDEF)
            .map(|(c, x)| (map[c as usize], x))
            .collect();
        map.into_iter()
            .map(|m| (m != UNDEF).then_some(m as usize))
            .collect()
    }

    /// True if every entry of every live row is defined.
    pub fn is_complete(&self) -> bool {
        self.live_cosets()
            .all(|c| (0..self.columns).all(|x| self.entry(c, x).is_some()))
    }

    pub fn is_row_complete(&self, coset: usize) -> bool {
        (0..self.columns).all(|x| self.entry(coset, x).is_some())
    }

    /// Follows `word` from `coset`; `None` if the trace hits an undefined entry.
    pub fn trace(&self, coset: usize, word: &Word) -> Option<usize> {
        word.letters()
            .iter()
            .try_fold(coset, |c, l| self.entry(c, l.column()))
    }

    /// The standard (breadth-first) renumbering of a complete table.
    pub fn standardize(&self) -> Result<CosetTable, TableError> {
        self.standardize_from(0)
    }

    /// Standardizes with `root` playing the role of the subgroup coset. For a
    /// table of a subgroup `H` this is the table of the conjugate subgroup
    /// stabilizing `root`. Rows unreachable from `root` are discarded.
    pub fn standardize_from(&self, root: usize) -> Result<CosetTable, TableError> {
        if !self.is_complete() {
            return Err(TableError::Incomplete);
        }
        if !self.is_live(root) {
            return Err(TableError::DeadCoset(root));
        }
        let mut map = vec![UNDEF; self.rows()];
        let mut order = vec![root as u32];
        map[root] = 0;
        let mut next = 0;
        while next < order.len() {
            let old = order[next];
            next += 1;
            for x in 0..self.columns {
                let t = self.get(old, x);
                if map[t as usize] == UNDEF {
                    map[t as usize] = order.len() as u32;
                    order.push(t);
                }
            }
        }
        let mut table = Vec::with_capacity(order.len() * self.columns);
        for &old in &order {
            for x in 0..self.columns {
                table.push(map[self.get(old, x) as usize]);
            }
        }
        let n = order.len();
        Ok(CosetTable {
            columns: self.columns,
            table,
            parent: (0..n as u32).collect(),
            capacity: self.capacity.max(n),
            deductions: VecDeque::new(),
            record_deductions: self.record_deductions,
            stats: TableStats {
                current_active: n,
                ..self.stats
            },
        })
    }

    /// True if the table is complete, compact and in standard numbering.
    pub fn is_standard(&self) -> bool {
        self.dead_count() == 0 && self.standardize().is_ok_and(|s| s.table == self.table)
    }

    /// Compares entries of live rows only (statistics are ignored).
    pub fn same_entries(&self, other: &CosetTable) -> bool {
        let a = self.dump();
        let b = other.dump();
        a == b
    }

    /// One permutation per generator describing the action on the live rows
    /// (numbered in order).
    pub fn to_permutations(&self) -> Result<Vec<Permutation>, TableError> {
        if !self.is_complete() {
            return Err(TableError::Incomplete);
        }
        let mut map = vec![UNDEF; self.rows()];
        for (i, c) in self.live_cosets().enumerate() {
            map[c] = i as u32;
        }
        let live: Vec<usize> = self.live_cosets().collect();
        Ok((0..self.rank())
            .map(|g| {
                let images = live
                    .iter()
                    .map(|&c| map[self.get(c as u32, 2 * g) as usize] as usize)
                    .collect();
                Permutation::from_images(images).expect("complete table rows form a bijection")
            })
            .collect())
    }

    /// Text dump of the live rows, renumbered in order.
    pub fn dump(&self) -> String {
        let mut map = vec![0u32; self.rows()];
        for (i, c) in self.live_cosets().enumerate() {
            map[c] = i as u32 + 1;
        }
        let mut out = format!("cosets {} generators {}\n", self.live_count(), self.rank());
        for c in self.live_cosets() {
            let row: Vec<String> = (0..self.columns)
                .map(|x| match self.get(c as u32, x) {
                    UNDEF => "0".to_string(),
                    v => map[v as usize].to_string(),
                })
                .collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    /// Parses the format written by [`CosetTable::dump`].
    pub fn from_dump(text: &str) -> Result<CosetTable, TableError> {
        let bad = |m: &str| TableError::Dump(m.to_string());
        let mut tokens = text.split_whitespace();
        let mut keyword = |k: &str| -> Result<usize, TableError> {
            if tokens.next() != Some(k) {
                return Err(bad(&format!("expected `{k}`")));
            }
            tokens
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| bad(&format!("expected a count after `{k}`")))
        };
        let n = keyword("cosets")?;
        let r = keyword("generators")?;
        if n == 0 {
            return Err(bad("a table has at least one coset"));
        }
        let entries: Vec<usize> = tokens
            .map(|t| t.parse().map_err(|_| bad("non-integer entry")))
            .collect::<Result<_, _>>()?;
        if entries.len() != n * 2 * r {
            return Err(bad("wrong number of entries"));
        }
        let mut table = Vec::with_capacity(entries.len());
        for e in entries {
            if e > n {
                return Err(bad("entry out of range"));
            }
            table.push(if e == 0 { UNDEF } else { e as u32 - 1 });
        }
        let t = CosetTable {
            columns: 2 * r,
            table,
            parent: (0..n as u32).collect(),
            capacity: n,
            deductions: VecDeque::new(),
            record_deductions: true,
            stats: TableStats {
                total_defined: n as u64,
                max_active: n,
                current_active: n,
            },
        };
        if !t.is_inverse_consistent() {
            return Err(bad("table is not inverse consistent"));
        }
        Ok(t)
    }

    /// Checks `table[i][x] = j` ⇒ `table[j][x^-1] = i` over live rows, and
    /// that no live row refers to a dead one.
    pub fn is_inverse_consistent(&self) -> bool {
        self.live_cosets().all(|c| {
            (0..self.columns).all(|x| match self.entry(c, x) {
                None => true,
                Some(j) => self.is_live(j) && self.entry(j, x ^ 1) == Some(c),
            })
        })
    }

    /// Letter for `column`, for callers walking the table by columns.
    pub fn column_letter(column: usize) -> Letter {
        Letter::from_column(column)
    }
}

fn closed(f: u32, b: u32) -> ScanResult {
    if f == b {
        ScanResult::Complete
    } else {
        ScanResult::Coincidence(f as usize, b as usize)
    }
}

impl PartialEq for CosetTable {
    fn eq(&self, other: &Self) -> bool {
        self.columns == other.columns && self.same_entries(other)
    }
}

impl Eq for CosetTable {}
