//! Normal closures, derived and lower central series.

use super::{PermError, PermGroup, Permutation, StabilizerChain};

/// The smallest normal subgroup of `group` containing `subgroup`.
///
/// Generators are closed under conjugation by the generators of `group`;
/// for finite groups that suffices for normality.
pub fn normal_closure(group: &PermGroup, subgroup: &PermGroup) -> Result<PermGroup, PermError> {
    if group.degree() != subgroup.degree() {
        return Err(PermError::DegreeMismatch {
            left: group.degree(),
            right: subgroup.degree(),
        });
    }
    Ok(closure_of(group, subgroup.generators().to_vec()))
}

fn closure_of(group: &PermGroup, seeds: Vec<Permutation>) -> PermGroup {
    let degree = group.degree();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut chain = StabilizerChain::schreier_sims(degree, &[]);
    for s in seeds {
        if !chain.contains(&s) {
            chain.add_generator(&s);
            gens.push(s);
        }
    }
    let mut next = 0;
    while next < gens.len() {
        for x in group.generators() {
            let c = gens[next].conjugate_by(x);
            if !chain.contains(&c) {
                chain.add_generator(&c);
                gens.push(c);
            }
        }
        next += 1;
    }
    PermGroup::with_chain(gens, chain)
}

fn commutators(a: &[Permutation], b: &[Permutation]) -> Vec<Permutation> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| Permutation::commutator(x, y)))
        .filter(|c| !c.is_identity())
        .collect()
}

/// `G ⊇ G' ⊇ G'' ⊇ …`, stopping at the trivial group or at the first term
/// equal to its predecessor (which is included).
pub fn derived_series(group: &PermGroup) -> Vec<PermGroup> {
    descending_series(group, |current, _| {
        closure_of(
            current,
            commutators(current.generators(), current.generators()),
        )
    })
}

/// `γ1 = G`, `γ(i+1) = [γi, G]`, with the same stopping rule as
/// [`derived_series`].
pub fn lower_central_series(group: &PermGroup) -> Vec<PermGroup> {
    descending_series(group, |current, g| {
        closure_of(g, commutators(current.generators(), g.generators()))
    })
}

fn descending_series(
    group: &PermGroup,
    next_term: impl Fn(&PermGroup, &PermGroup) -> PermGroup,
) -> Vec<PermGroup> {
    let mut series = vec![group.clone()];
    loop {
        let last = series.last().expect("nonempty");
        let order = last.order();
        if order == 1u32.into() {
            break;
        }
        let next = next_term(last, group);
        let stalled = next.order() == order;
        series.push(next);
        if stalled {
            break;
        }
    }
    series
}

pub fn is_soluble(group: &PermGroup) -> bool {
    derived_series(group)
        .last()
        .is_some_and(|g| g.order() == 1u32.into())
}

pub fn is_nilpotent(group: &PermGroup) -> bool {
    lower_central_series(group)
        .last()
        .is_some_and(|g| g.order() == 1u32.into())
}

pub fn is_perfect(group: &PermGroup) -> bool {
    let series = derived_series(group);
    series.len() == 1 || series[1].order() == group.order()
}
