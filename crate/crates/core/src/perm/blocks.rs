//! Block systems of transitive groups (Atkinson's algorithm).

use super::{PermError, PermGroup};

struct Classes {
    parent: Vec<usize>,
}

impl Classes {
    fn new(n: usize) -> Self {
        Classes {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut p: usize) -> usize {
        while self.parent[p] != p {
            self.parent[p] = self.parent[self.parent[p]];
            p = self.parent[p];
        }
        p
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// The finest `G`-invariant partition of the points in which `alpha` and
/// `beta` share a block. Blocks are sorted and listed by smallest point.
pub fn minimal_block_partition(
    group: &PermGroup,
    alpha: usize,
    beta: usize,
) -> Result<Vec<Vec<usize>>, PermError> {
    let n = group.degree();
    for p in [alpha, beta] {
        if p >= n {
            return Err(PermError::PointOutOfRange {
                point: p + 1,
                degree: n,
            });
        }
    }
    if alpha == beta {
        return Err(PermError::EqualPoints);
    }
    if !group.is_transitive() {
        return Err(PermError::Intransitive);
    }
    let mut classes = Classes::new(n);
    classes.union(alpha, beta);
    // Each queued pair records a merge whose images still need merging.
    let mut pending = vec![(alpha, beta)];
    while let Some((a, b)) = pending.pop() {
        for g in group.generators() {
            let (ga, gb) = (g.image(a), g.image(b));
            if classes.union(ga, gb) {
                pending.push((ga, gb));
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for p in 0..n {
        let r = classes.find(p);
        blocks[r].push(p);
    }
    Ok(blocks.into_iter().filter(|b| !b.is_empty()).collect())
}

/// True if the only invariant partitions are the trivial ones. Only the
/// pairs `(0, beta)` need to be checked.
pub fn is_primitive(group: &PermGroup) -> Result<bool, PermError> {
    if !group.is_transitive() {
        return Err(PermError::Intransitive);
    }
    for beta in 1..group.degree() {
        if minimal_block_partition(group, 0, beta)?.len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}
