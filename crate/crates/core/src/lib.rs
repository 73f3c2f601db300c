//! Computational group theory for finitely presented and permutation groups.
//!
//! * [`words`]: free-group words and presentations.
//! * [`coset_table`], [`enumerate`]: Todd-Coxeter coset enumeration.
//! * [`subgroup`], [`abelian`]: Schreier generators, Reidemeister-Schreier
//!   rewriting, Tietze simplification and abelian invariants.
//! * [`low_index`]: subgroups of small index.
//! * [`perm`]: permutation groups, stabilizer chains, blocks and series.
//! * [`backtrack`]: centralizers, set stabilizers and conjugacy by search.

pub mod abelian;
pub mod backtrack;
pub mod coset_table;
pub mod enumerate;
pub mod low_index;
pub mod perm;
pub mod subgroup;
pub mod words;

pub use abelian::{
    abelian_invariants, relation_matrix, smith_normal_form, AbelianInvariants, IntMatrix,
    MatrixError, SmithForm,
};
pub use backtrack::{centralizer, element_conjugacy, set_stabilizer};
pub use coset_table::{CosetTable, ScanResult, TableError, TableStats};
pub use enumerate::{
    enumerate, order_of_group, EnumerationError, EnumerationResult, EnumerationStats, Strategy,
    StrategyKind,
};
pub use low_index::{
    low_index_subgroups, quotient_abelian_probe, AbelianProbe, LowIndexResult, LowIndexSubgroup,
};
pub use perm::{PermError, PermGroup, Permutation, StabilizerChain};
pub use subgroup::{
    reidemeister_presentation, reidemeister_rewrite, schreier_generators, schreier_transversal,
    subgroup_of_table, tietze_simplify, Rewritten, SubgroupError, Transversal,
};
pub use words::{Letter, ParseError, Presentation, SubgroupSpec, Word};
