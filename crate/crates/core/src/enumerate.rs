//! Todd-Coxeter coset enumeration.
//!
//! Two strategies are provided:
//!
//! * [`StrategyKind::RelatorDriven`] (HLT): cosets are processed in order and
//!   every relator is force-closed at each of them, defining new cosets as
//!   needed.
//! * [`StrategyKind::DeductionDriven`] (Felsch): the first undefined entry of
//!   the lowest live coset is defined, then every relator is scanned through
//!   every new entry before the next definition.
//!
//! Both finish with a verification pass over every coset and relator, and
//! return the table in standard numbering.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::coset_table::{CosetTable, ScanResult, TableError};
use crate::perm::Permutation;
use crate::words::{ParseError, Presentation, SubgroupSpec, Word};

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;
pub const DEFAULT_COMPACTION_THRESHOLD: f64 = 0.2;
const PREFERRED_CAPACITY: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrategyKind {
    RelatorDriven,
    DeductionDriven,
}

impl StrategyKind {
    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::RelatorDriven => "hlt",
            StrategyKind::DeductionDriven => "felsch",
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hlt" | "relator" => Ok(StrategyKind::RelatorDriven),
            "felsch" | "deduction" => Ok(StrategyKind::DeductionDriven),
            other => Err(format!(
                "unknown strategy `{other}` (expected hlt or felsch)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Strategy {
    pub kind: StrategyKind,
    /// Most rows (live or dead) the table may hold at once.
    pub max_cosets: usize,
    /// Most cosets that may be defined over the whole run.
    pub max_total: Option<u64>,
    /// Compact when dead rows exceed this fraction of allocated rows.
    pub compaction_threshold: f64,
    /// Felsch only: when set, entries that would immediately close a relator
    /// cycle are defined first, as long as the live cosets number at most
    /// this factor times the index of the lowest incomplete row. `None`
    /// keeps the plain lowest-coset, first-column definition order.
    pub preferred_fill_factor: Option<usize>,
}

impl Strategy {
    pub fn new(kind: StrategyKind) -> Self {
        Strategy {
            kind,
            max_cosets: DEFAULT_MAX_COSETS,
            max_total: None,
            compaction_threshold: DEFAULT_COMPACTION_THRESHOLD,
            preferred_fill_factor: None,
        }
    }

    pub fn hlt() -> Self {
        Strategy::new(StrategyKind::RelatorDriven)
    }

    pub fn felsch() -> Self {
        Strategy::new(StrategyKind::DeductionDriven)
    }

    #[must_use]
    pub fn with_max_cosets(mut self, max_cosets: usize) -> Self {
        self.max_cosets = max_cosets.max(1);
        self
    }

    /// Enables preferred definitions with the given fill factor (see
    /// [`Strategy::preferred_fill_factor`]).
    #[must_use]
    pub fn with_preferred_definitions(mut self, fill_factor: usize) -> Self {
        self.preferred_fill_factor = Some(fill_factor.max(1));
        self
    }

    #[must_use]
    pub fn with_max_total(mut self, max_total: u64) -> Self {
        self.max_total = Some(max_total);
        self
    }
}

impl Default for Strategy {
    fn default() -> Self {
        Strategy::felsch()
    }
}

/// Cost of an enumeration, available whether or not it completed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationStats {
    pub max_active: usize,
    pub total_defined: u64,
    pub strategy: StrategyKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnumerationError {
    #[error(
        "coset limit exceeded (max active {}, total defined {})",
        .stats.max_active, .stats.total_defined
    )]
    LimitExceeded { stats: EnumerationStats },
    #[error("invalid subgroup generator: {0}")]
    InvalidSubgroupWord(#[from] ParseError),
}

#[derive(Debug, Clone)]
pub struct EnumerationResult {
    table: CosetTable,
    stats: EnumerationStats,
}

impl EnumerationResult {
    /// The complete table in standard numbering.
    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn into_table(self) -> CosetTable {
        self.table
    }

    /// The index of the subgroup: the number of rows of the table.
    pub fn index(&self) -> usize {
        self.table.live_count()
    }

    pub fn stats(&self) -> EnumerationStats {
        self.stats
    }

    /// Coset reached by tracing `word` from the subgroup coset. Over the
    /// trivial subgroup, `word` is the identity exactly when this is 0.
    ///
    /// # Panics
    ///
    /// Panics if `word` uses generators outside the presentation.
    pub fn word_image(&self, word: &Word) -> usize {
        self.table
            .trace(0, word)
            .expect("complete tables trace every word")
    }

    pub fn permutations(&self) -> Vec<Permutation> {
        self.table
            .to_permutations()
            .expect("enumeration results are complete")
    }
}

/// Enumerates the cosets of `subgroup` in the group of `presentation`.
pub fn enumerate(
    presentation: &Presentation,
    subgroup: &SubgroupSpec,
    strategy: &Strategy,
) -> Result<EnumerationResult, EnumerationError> {
    subgroup.validate(presentation)?;
    let mut e = Enumerator::new(presentation, subgroup, strategy);
    e.run()?;
    e.table.compact();
    let table = e.table.standardize().expect("enumeration ends complete");
    Ok(EnumerationResult {
        table,
        stats: e.stats(),
    })
}

/// The order of the group, as the index of the trivial subgroup.
pub fn order_of_group(
    presentation: &Presentation,
    strategy: &Strategy,
) -> Result<usize, EnumerationError> {
    enumerate(presentation, &SubgroupSpec::trivial(), strategy).map(|r| r.index())
}

/// Distinct cyclic rotations of `relators`, grouped by the column of their
/// first letter.
pub(crate) fn rotations_by_column(relators: &[Word], rank: usize) -> Vec<Vec<Word>> {
    let mut rotations = vec![Vec::new(); 2 * rank];
    for r in relators {
        for k in 0..r.len() {
            let w = r.rotate(k);
            let list: &mut Vec<Word> = &mut rotations[w.letters()[0].column()];
            if !list.contains(&w) {
                list.push(w);
            }
        }
    }
    rotations
}

struct Enumerator {
    table: CosetTable,
    relators: Vec<Word>,
    subgroup: Vec<Word>,
    strategy: Strategy,
    /// Distinct rotations of the relators, indexed by their first letter's column.
    rotations: Vec<Vec<Word>>,
    /// HLT: coset being closed. Felsch: no live coset below it has a gap.
    cursor: usize,
    /// Entries whose definition would close a relator cycle (newest last).
    preferred: VecDeque<(usize, usize)>,
}

impl Enumerator {
    fn new(presentation: &Presentation, subgroup: &SubgroupSpec, strategy: &Strategy) -> Self {
        let relators: Vec<Word> = presentation.relators().to_vec();
        let rotations = rotations_by_column(&relators, presentation.rank());
        let mut table = CosetTable::new(presentation.rank(), strategy.max_cosets);
        table.set_record_deductions(strategy.kind == StrategyKind::DeductionDriven);
        Enumerator {
            table,
            relators,
            subgroup: subgroup
                .generators
                .iter()
                .map(Word::free_reduce)
                .filter(|w| !w.is_empty())
                .collect(),
            strategy: *strategy,
            rotations,
            cursor: 0,
            preferred: Default::default(),
        }
    }

    fn stats(&self) -> EnumerationStats {
        let s = self.table.stats();
        EnumerationStats {
            max_active: s.max_active,
            total_defined: s.total_defined,
            strategy: self.strategy.kind,
        }
    }

    fn limit(&self) -> EnumerationError {
        EnumerationError::LimitExceeded {
            stats: self.stats(),
        }
    }

    fn check_total(&self) -> Result<(), EnumerationError> {
        match self.strategy.max_total {
            Some(max) if self.table.stats().total_defined > max => Err(self.limit()),
            _ => Ok(()),
        }
    }

    fn run(&mut self) -> Result<(), EnumerationError> {
        loop {
            self.cursor = 0;
            match self.strategy.kind {
                StrategyKind::RelatorDriven => self.hlt()?,
                StrategyKind::DeductionDriven => self.felsch()?,
            }
            if self.verify() {
                return Ok(());
            }
        }
    }

    /// Renumbers the table and moves the cursor to the first live row at or
    /// after its old position.
    fn compact(&mut self) -> Vec<Option<usize>> {
        self.preferred.clear();
        let map = self.table.compact();
        self.cursor = map[..self.cursor.min(map.len())]
            .iter()
            .filter(|m| m.is_some())
            .count();
        map
    }

    fn maybe_compact(&mut self) {
        let rows = self.table.rows();
        if self.table.dead_count() as f64 > self.strategy.compaction_threshold * rows as f64 {
            self.compact();
        }
    }

    /// Defines `table[cursor][column]`, compacting once if the table is full.
    fn define_at_cursor(&mut self, column: usize) -> Result<(), EnumerationError> {
        self.define_at(self.cursor, column)
    }

    /// Defines `table[coset][column]`, compacting once if the table is full.
    fn define_at(&mut self, coset: usize, column: usize) -> Result<(), EnumerationError> {
        match self.table.define(coset, column) {
            Ok(_) => {}
            Err(TableError::CapacityExceeded(_)) if self.table.dead_count() > 0 => {
                let coset = self.compact()[coset].expect("defining at a live coset");
                self.table.define(coset, column).map_err(|_| self.limit())?;
            }
            Err(TableError::CapacityExceeded(_)) => return Err(self.limit()),
            Err(e) => unreachable!("define at a live cursor failed: {e}"),
        }
        self.check_total()
    }

    /// Scans `word` at the cursor, defining cosets until it closes.
    fn close_at_cursor(&mut self, word: &Word) -> Result<(), EnumerationError> {
        loop {
            match self.table.scan(self.cursor, word, true) {
                Ok(ScanResult::Complete | ScanResult::Deduction { .. }) => {
                    return self.check_total();
                }
                Ok(ScanResult::Coincidence(a, b)) => {
                    self.table.process_coincidence(a, b);
                    return self.check_total();
                }
                Ok(ScanResult::Incomplete { .. }) => unreachable!("filling scans close"),
                Err(TableError::CapacityExceeded(_)) if self.table.dead_count() > 0 => {
                    self.check_total()?;
                    self.compact();
                }
                Err(TableError::CapacityExceeded(_)) => return Err(self.limit()),
                Err(e) => unreachable!("scan at a live cursor failed: {e}"),
            }
        }
    }

    fn hlt(&mut self) -> Result<(), EnumerationError> {
        let subgroup = std::mem::take(&mut self.subgroup);
        for h in &subgroup {
            self.close_at_cursor(h)?;
        }
        self.subgroup = subgroup;
        let relators = std::mem::take(&mut self.relators);
        let result = self.hlt_rows(&relators);
        self.relators = relators;
        result
    }

    fn hlt_rows(&mut self, relators: &[Word]) -> Result<(), EnumerationError> {
        while self.cursor < self.table.rows() {
            if self.table.is_live(self.cursor) {
                for r in relators {
                    if !self.table.is_live(self.cursor) {
                        break;
                    }
                    self.close_at_cursor(r)?;
                }
                for x in 0..self.table.columns() {
                    if !self.table.is_live(self.cursor) {
                        break;
                    }
                    if self.table.entry(self.cursor, x).is_none() {
                        self.define_at_cursor(x)?;
                    }
                }
                if self.table.is_live(self.cursor) {
                    self.maybe_compact();
                }
            }
            self.cursor += 1;
        }
        Ok(())
    }

    fn felsch(&mut self) -> Result<(), EnumerationError> {
        let subgroup = std::mem::take(&mut self.subgroup);
        let mut result = Ok(());
        for h in &subgroup {
            result = self.close_at_cursor(h);
            if result.is_err() {
                break;
            }
        }
        self.subgroup = subgroup;
        result?;
        self.process_deductions();
        loop {
            let columns = self.table.columns();
            while self.cursor < self.table.rows()
                && (!self.table.is_live(self.cursor) || self.table.is_row_complete(self.cursor))
            {
                self.cursor += 1;
            }
            if self.cursor >= self.table.rows() {
                return Ok(());
            }
            let (c, x) = self.next_preferred().unwrap_or_else(|| {
                let column = (0..columns)
                    .find(|&x| self.table.entry(self.cursor, x).is_none())
                    .expect("row has a gap");
                (self.cursor, column)
            });
            self.define_at(c, x)?;
            self.process_deductions();
            self.maybe_compact();
        }
    }

    /// The most recently recorded preferred entry that is still undefined,
    /// if the fill factor allows using it.
    fn next_preferred(&mut self) -> Option<(usize, usize)> {
        let ff = self.strategy.preferred_fill_factor?;
        if self.table.live_count() > ff * (self.cursor + 1) {
            return None;
        }
        while let Some((c, x)) = self.preferred.pop_back() {
            if self.table.is_live(c) && self.table.entry(c, x).is_none() {
                return Some((c, x));
            }
        }
        None
    }

    /// Scans every relator through every queued entry (without defining).
    fn process_deductions(&mut self) {
        while let Some((c, x)) = self.table.pop_deduction() {
            if !self.table.is_live(c) {
                continue;
            }
            for k in 0..self.rotations[x].len() {
                if !self.table.is_live(c) {
                    break;
                }
                self.scan_and_merge(c, x, k);
            }
            for k in 0..self.rotations[x ^ 1].len() {
                let Some(d) = self.live_image(c, x) else {
                    break;
                };
                self.scan_and_merge(d, x ^ 1, k);
            }
        }
    }

    fn live_image(&self, c: usize, x: usize) -> Option<usize> {
        if !self.table.is_live(c) {
            return None;
        }
        self.table.entry(c, x)
    }

    fn scan_and_merge(&mut self, coset: usize, column: usize, k: usize) {
        let w = &self.rotations[column][k];
        match self.table.scan(coset, w, false) {
            Ok(ScanResult::Coincidence(a, b)) => self.table.process_coincidence(a, b),
            Ok(ScanResult::Incomplete {
                coset,
                column,
                gap: 2,
            }) if self.strategy.preferred_fill_factor.is_some() => {
                if self.preferred.len() >= PREFERRED_CAPACITY {
                    self.preferred.pop_front();
                }
                self.preferred.push_back((coset, column));
            }
            _ => {}
        }
    }

    /// Checks closure rules at every coset of a complete table, merging any
    /// coincidences found. Returns true if the table was already closed.
    fn verify(&mut self) -> bool {
        if !self.table.is_complete() {
            return false;
        }
        let mut closed = true;
        let checks = self
            .subgroup
            .iter()
            .map(|h| (true, h))
            .chain(self.relators.iter().map(|r| (false, r)));
        let checks: Vec<(bool, Word)> = checks.map(|(s, w)| (s, w.clone())).collect();
        for (only_first, w) in &checks {
            let cosets: Vec<usize> = if *only_first {
                vec![0]
            } else {
                self.table.live_cosets().collect()
            };
            for c in cosets {
                if !self.table.is_live(c) {
                    continue;
                }
                if let Ok(ScanResult::Coincidence(a, b)) = self.table.scan(c, w, false) {
                    self.table.process_coincidence(a, b);
                    closed = false;
                }
            }
        }
        // Deductions queued by merges are re-derived by the next pass.
        while self.table.pop_deduction().is_some() {}
        closed && self.table.is_complete()
    }
}
