//! Backtrack searches over a stabilizer chain: centralizers, set
//! stabilizers and conjugating elements.
//!
//! Elements of `G` are enumerated through their base images. At depth `i`
//! the partial element `g` fixes the images of the first `i` base points;
//! each point `δ` of the `i`-th basic orbit extends it to `u_δ · g`, which
//! sends the `i`-th base point to `δ^g`. A branch is abandoned as soon as
//! the images chosen so far rule out the property being searched for.
//!
//! Subgroup searches run from the deepest level up. When level `i` is
//! reached the part of the answer fixing the first `i + 1` base points is
//! already known as `K`; a candidate image is skipped when `K` already
//! reaches it, or when it lies in the `K`-orbit of an image that failed.

use crate::perm::{Level, PermError, PermGroup, Permutation, StabilizerChain};

const UNSET: usize = usize::MAX;

/// The property a searched element must have.
enum Target<'a> {
    /// `h^-1 x h = y`; with `x = y` this is the centralizer of `x`.
    Conjugates {
        x: &'a Permutation,
        y: &'a Permutation,
        x_inv: Permutation,
        x_len: Vec<usize>,
        y_len: Vec<usize>,
    },
    /// `S^h = S`.
    Stabilizes { member: Vec<bool> },
}

impl<'a> Target<'a> {
    fn conjugates(x: &'a Permutation, y: &'a Permutation) -> Self {
        Target::Conjugates {
            x,
            y,
            x_inv: x.inverse(),
            x_len: cycle_lengths(x),
            y_len: cycle_lengths(y),
        }
    }

    /// Whether `p ↦ q`, together with the images already in `img`, can
    /// still extend to an element with the property.
    fn allows(&self, p: usize, q: usize, img: &[usize]) -> bool {
        match self {
            Target::Stabilizes { member } => member[p] == member[q],
            Target::Conjugates {
                x,
                y,
                x_inv,
                x_len,
                y_len,
            } => {
                // x h = h y means (p^x)^h = (p^h)^y.
                if x_len[p] != y_len[q] {
                    return false;
                }
                let next = img[x.image(p)];
                if next != UNSET && next != y.image(q) {
                    return false;
                }
                let prev = img[x_inv.image(p)];
                prev == UNSET || y.image(prev) == q
            }
        }
    }

    fn accepts(&self, h: &Permutation) -> bool {
        match self {
            Target::Stabilizes { member } => {
                (0..h.degree()).all(|p| member[p] == member[h.image(p)])
            }
            Target::Conjugates { x, y, .. } => *x * h == h * *y,
        }
    }
}

fn cycle_lengths(g: &Permutation) -> Vec<usize> {
    let mut len = vec![1; g.degree()];
    for c in g.cycles() {
        for &p in &c {
            len[p] = c.len();
        }
    }
    len
}

struct Search<'a> {
    levels: &'a [Level],
    target: Target<'a>,
    /// Images of base points fixed along the current branch.
    img: Vec<usize>,
}

impl Search<'_> {
    /// Some element `h·g` with `h` in the stabilizer of the first `depth`
    /// base points and the property, if one exists.
    fn find(&mut self, depth: usize, g: &Permutation) -> Option<Permutation> {
        if depth == self.levels.len() {
            return self.target.accepts(g).then(|| g.clone());
        }
        let level = &self.levels[depth];
        let b = level.base_point();
        let mut candidates: Vec<(usize, usize)> =
            level.orbit().iter().map(|&d| (g.image(d), d)).collect();
        candidates.sort_unstable();
        for (gamma, delta) in candidates {
            if !self.target.allows(b, gamma, &self.img) {
                continue;
            }
            self.img[b] = gamma;
            let u = level
                .schreier_vector()
                .transversal_element(delta)
                .expect("orbit point");
            let found = self.find(depth + 1, &(&u * g));
            self.img[b] = UNSET;
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// Points reached from `start` under `gens`, marked in a boolean vector.
fn orbit_marks(degree: usize, start: usize, gens: &[Permutation]) -> Vec<bool> {
    let mut seen = vec![false; degree];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = g.image(p);
            if !seen[q] {
                seen[q] = true;
                stack.push(q);
            }
        }
    }
    seen
}

fn mark_orbit(marks: &mut [bool], start: usize, gens: &[Permutation]) {
    for (p, reached) in orbit_marks(marks.len(), start, gens)
        .into_iter()
        .enumerate()
    {
        marks[p] |= reached;
    }
}

/// The subgroup of all elements of `group` with the property.
fn subgroup_search(group: &PermGroup, target: Target<'_>, hint: &[usize]) -> PermGroup {
    let n = group.degree();
    let chain = StabilizerChain::with_base_prefix(n, &group.chain().strong_generators(), hint);
    let levels = chain.levels();
    let mut search = Search {
        levels,
        target,
        img: vec![UNSET; n],
    };
    let mut found: Vec<Permutation> = Vec::new();
    for i in (0..levels.len()).rev() {
        for level in &levels[..i] {
            search.img[level.base_point()] = level.base_point();
        }
        let b = levels[i].base_point();
        let mut covered = orbit_marks(n, b, &found);
        let mut failed = vec![false; n];
        let mut orbit = levels[i].orbit().to_vec();
        orbit.sort_unstable();
        for delta in orbit {
            if covered[delta] || failed[delta] {
                continue;
            }
            let mut result = None;
            if search.target.allows(b, delta, &search.img) {
                search.img[b] = delta;
                let u = levels[i]
                    .schreier_vector()
                    .transversal_element(delta)
                    .expect("orbit point");
                result = search.find(i + 1, &u);
                search.img[b] = UNSET;
            }
            match result {
                Some(h) => {
                    found.push(h);
                    covered = orbit_marks(n, b, &found);
                }
                None => mark_orbit(&mut failed, delta, &found),
            }
        }
        for level in &levels[..i] {
            search.img[level.base_point()] = UNSET;
        }
    }
    let chain = StabilizerChain::schreier_sims(n, &found);
    PermGroup::with_chain(found, chain)
}

fn check_degree(group: &PermGroup, g: &Permutation) -> Result<(), PermError> {
    if g.degree() == group.degree() {
        Ok(())
    } else {
        Err(PermError::DegreeMismatch {
            left: group.degree(),
            right: g.degree(),
        })
    }
}

/// Points of the nontrivial cycles of `g`, cycle by cycle.
fn cycle_points(g: &Permutation) -> Vec<usize> {
    g.cycles()
        .into_iter()
        .filter(|c| c.len() > 1)
        .flatten()
        .collect()
}

/// `{h ∈ G : hz = zh}`, with a verified chain.
pub fn centralizer(group: &PermGroup, z: &Permutation) -> Result<PermGroup, PermError> {
    check_degree(group, z)?;
    if z.is_identity() {
        return Ok(group.clone());
    }
    Ok(subgroup_search(
        group,
        Target::conjugates(z, z),
        &cycle_points(z),
    ))
}

/// `{h ∈ G : S^h = S}` for the 0-based point set `set`, with a verified
/// chain.
pub fn set_stabilizer(group: &PermGroup, set: &[usize]) -> Result<PermGroup, PermError> {
    let n = group.degree();
    let mut member = vec![false; n];
    for &p in set {
        if p >= n {
            return Err(PermError::PointOutOfRange {
                point: p + 1,
                degree: n,
            });
        }
        member[p] = true;
    }
    let mut hint: Vec<usize> = (0..n).filter(|&p| member[p]).collect();
    if hint.is_empty() || hint.len() == n {
        return Ok(group.clone());
    }
    // When S is the larger part, its complement is the cheaper hint.
    if 2 * hint.len() > n {
        hint = (0..n).filter(|&p| !member[p]).collect();
    }
    Ok(subgroup_search(group, Target::Stabilizes { member }, &hint))
}

/// Some `h ∈ G` with `h^-1 x h = y`, or `None` if `x` and `y` are not
/// conjugate in `G`.
pub fn element_conjugacy(
    group: &PermGroup,
    x: &Permutation,
    y: &Permutation,
) -> Result<Option<Permutation>, PermError> {
    check_degree(group, x)?;
    check_degree(group, y)?;
    if x.cycle_type() != y.cycle_type() {
        return Ok(None);
    }
    if x == y {
        return Ok(Some(group.identity()));
    }
    // Solutions form a right coset of C(y): failing at an image rules out
    // its whole C(y)-orbit.
    let cy = centralizer(group, y)?;
    let n = group.degree();
    let chain =
        StabilizerChain::with_base_prefix(n, &group.chain().strong_generators(), &cycle_points(x));
    let levels = chain.levels();
    if levels.is_empty() {
        return Ok(None);
    }
    let mut search = Search {
        levels,
        target: Target::conjugates(x, y),
        img: vec![UNSET; n],
    };
    let b = levels[0].base_point();
    let mut failed = vec![false; n];
    let mut orbit = levels[0].orbit().to_vec();
    orbit.sort_unstable();
    for delta in orbit {
        if failed[delta] {
            continue;
        }
        if search.target.allows(b, delta, &search.img) {
            search.img[b] = delta;
            let u = levels[0]
                .schreier_vector()
                .transversal_element(delta)
                .expect("orbit point");
            let found = search.find(1, &u);
            search.img[b] = UNSET;
            if found.is_some() {
                return Ok(found);
            }
        }
        mark_orbit(&mut failed, delta, cy.generators());
    }
    Ok(None)
}
