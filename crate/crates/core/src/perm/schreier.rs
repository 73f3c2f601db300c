//! Schreier vectors and base/strong generating sets.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PermError, PermGroup, Permutation};

const UNREACHED: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

/// Length of the random words used by [`random_schreier`].
pub const RANDOM_WORD_LENGTH: usize = 30;

/// An orbit together with a spanning tree stored as back edges: the label of
/// a reached point is the index of the generator that maps its parent to it.
#[derive(Clone, Debug)]
pub struct SchreierVector {
    root: usize,
    labels: Vec<u32>,
    orbit: Vec<usize>,
    generators: Vec<Permutation>,
    inverses: Vec<Permutation>,
}

impl SchreierVector {
    pub fn new(degree: usize, root: usize, generators: &[Permutation]) -> Self {
        let mut labels = vec![UNREACHED; degree];
        labels[root] = ROOT;
        let mut orbit = vec![root];
        let mut next = 0;
        while next < orbit.len() {
            let p = orbit[next];
            next += 1;
            for (k, g) in generators.iter().enumerate() {
                let q = g.image(p);
                if labels[q] == UNREACHED {
                    labels[q] = k as u32;
                    orbit.push(q);
                }
            }
        }
        SchreierVector {
            root,
            labels,
            orbit,
            generators: generators.to_vec(),
            inverses: generators.iter().map(Permutation::inverse).collect(),
        }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Orbit points in breadth-first order, starting with the root.
    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn len(&self) -> usize {
        self.orbit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit.is_empty()
    }

    pub fn contains(&self, point: usize) -> bool {
        point < self.labels.len() && self.labels[point] != UNREACHED
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Generator label of `point`: `None` for the root or unreached points.
    pub fn label(&self, point: usize) -> Option<usize> {
        match self.labels.get(point) {
            Some(&l) if l != UNREACHED && l != ROOT => Some(l as usize),
            _ => None,
        }
    }

    /// A permutation `u` with `root^u = point`.
    pub fn transversal_element(&self, point: usize) -> Result<Permutation, PermError> {
        if !self.contains(point) {
            return Err(PermError::Unreached(point));
        }
        let mut u = Permutation::identity(self.labels.len());
        let mut p = point;
        while self.labels[p] != ROOT {
            let k = self.labels[p] as usize;
            u = &self.generators[k] * &u;
            p = self.inverses[k].image(p);
        }
        Ok(u)
    }

    /// Replaces `g` by `g * u^-1` where `u` is the transversal element for
    /// `root^g`, so that the result fixes the root.
    fn strip(&self, g: &mut Permutation) {
        let mut p = g.image(self.root);
        while self.labels[p] != ROOT {
            let k = self.labels[p] as usize;
            *g = &*g * &self.inverses[k];
            p = self.inverses[k].image(p);
        }
    }
}

/// One level of a stabilizer chain: a base point, the strong generators
/// fixing all earlier base points, and the orbit of the base point under them.
#[derive(Clone, Debug)]
pub struct Level {
    sv: SchreierVector,
}

impl Level {
    fn new(degree: usize, base_point: usize, generators: Vec<Permutation>) -> Self {
        Level {
            sv: SchreierVector::new(degree, base_point, &generators),
        }
    }

    pub fn base_point(&self) -> usize {
        self.sv.root
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.sv.generators
    }

    pub fn orbit(&self) -> &[usize] {
        self.sv.orbit()
    }

    pub fn schreier_vector(&self) -> &SchreierVector {
        &self.sv
    }

    fn push_generator(&mut self, degree: usize, g: Permutation) {
        let mut gens = std::mem::take(&mut self.sv.generators);
        gens.push(g);
        *self = Level::new(degree, self.sv.root, gens);
    }
}

/// A base and strong generating set with per-level Schreier vectors.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    /// Deterministic Schreier-Sims.
    pub fn schreier_sims(degree: usize, generators: &[Permutation]) -> Self {
        Self::with_base_prefix(degree, generators, &[])
    }

    /// Deterministic Schreier-Sims whose base starts with the points of
    /// `prefix` (in order) that have a nontrivial orbit in the corresponding
    /// stabilizer; the remaining prefix points are dropped.
    pub fn with_base_prefix(degree: usize, generators: &[Permutation], prefix: &[usize]) -> Self {
        let mut chain = StabilizerChain::initial(degree, generators, prefix);
        chain.complete();
        chain.remove_redundant_levels();
        chain
    }

    /// Levels built directly from `generators` without any sifting.
    fn initial(degree: usize, generators: &[Permutation], prefix: &[usize]) -> Self {
        let mut base: Vec<usize> = Vec::new();
        for &p in prefix {
            if p < degree && !base.contains(&p) {
                base.push(p);
            }
        }
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        for g in &gens {
            if base.iter().all(|&b| g.image(b) == b) {
                base.push(g.first_moved_point().expect("non-identity"));
            }
        }
        let mut levels = Vec::with_capacity(base.len());
        for (i, &b) in base.iter().enumerate() {
            let level_gens = gens
                .iter()
                .filter(|g| base[..i].iter().all(|&p| g.image(p) == p))
                .cloned()
                .collect();
            levels.push(Level::new(degree, b, level_gens));
        }
        StabilizerChain { degree, levels }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(Level::base_point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit().len()).collect()
    }

    /// Product of the orbit lengths.
    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| {
            acc * BigUint::from(l.orbit().len())
        })
    }

    /// All strong generators, without repeats, in level order.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in l.generators() {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Sifts `g` through the chain, returning the residue and the index of
    /// the level where sifting stopped (`levels().len()` when it got through).
    /// `g` is in the group iff the residue is the identity.
    pub fn sift(&self, g: &Permutation) -> Result<(Permutation, usize), PermError> {
        if g.degree() != self.degree {
            return Err(PermError::DegreeMismatch {
                left: self.degree,
                right: g.degree(),
            });
        }
        Ok(self.sift_from(g.clone(), 0))
    }

    fn sift_from(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            if !level.sv.contains(g.image(level.base_point())) {
                return (g, i);
            }
            level.sv.strip(&mut g);
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(g.clone(), 0).0.is_identity()
    }

    /// Drops every level from `levels` on (for building deliberately
    /// incomplete chains).
    pub fn truncate(&mut self, levels: usize) {
        self.levels.truncate(levels);
    }

    /// Adds `g` to the generators of levels `from..=to`, where `g` fixes the
    /// base points of all earlier levels. When `to` is one past the last
    /// level a new base point moved by `g` is appended.
    fn absorb(&mut self, g: Permutation, from: usize, to: usize) {
        if to == self.levels.len() {
            let point = g
                .first_moved_point()
                .expect("absorbed residue is not the identity");
            self.levels.push(Level::new(self.degree, point, Vec::new()));
        }
        for level in &mut self.levels[from..=to] {
            level.push_generator(self.degree, g.clone());
        }
    }

    /// Adds a generator of the group and restores the chain invariants.
    pub fn add_generator(&mut self, g: &Permutation) {
        if self.contains(g) {
            return;
        }
        let depth = self
            .levels
            .iter()
            .take_while(|l| g.image(l.base_point()) == l.base_point())
            .count();
        self.absorb(g.clone(), 0, depth);
        self.complete();
    }

    /// Runs the Schreier generator test at every level, bottom up, absorbing
    /// every residue that fails to sift.
    fn complete(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() - 1;
        'outer: loop {
            let level = &self.levels[i];
            let sv = &level.sv;
            for &beta in sv.orbit() {
                let u = sv.transversal_element(beta).expect("orbit point");
                for s in sv.generators() {
                    let us = &u * s;
                    let mut h = us.clone();
                    sv.strip(&mut h);
                    if h.is_identity() {
                        continue;
                    }
                    let (residue, j) = self.sift_from(h, i + 1);
                    if !residue.is_identity() {
                        self.absorb(residue, i + 1, j);
                        i = j;
                        continue 'outer;
                    }
                }
            }
            if i == 0 {
                break;
            }
            i -= 1;
        }
    }

    /// Runs the Schreier generator test on every level without changing
    /// the chain.
    pub fn is_verified(&self) -> bool {
        self.levels.iter().enumerate().all(|(i, level)| {
            let sv = &level.sv;
            sv.orbit().iter().all(|&beta| {
                let u = sv.transversal_element(beta).expect("orbit point");
                sv.generators().iter().all(|s| {
                    let mut h = &u * s;
                    sv.strip(&mut h);
                    self.sift_from(h, i + 1).0.is_identity()
                })
            })
        })
    }

    fn remove_redundant_levels(&mut self) {
        let mut i = 0;
        while i < self.levels.len() {
            if self.levels[i].orbit().len() > 1 {
                i += 1;
                continue;
            }
            let removed = self.levels.remove(i);
            if let Some(next) = self.levels.get_mut(i) {
                let mut gens = next.generators().to_vec();
                for g in removed.generators() {
                    if !gens.contains(g) {
                        gens.push(g.clone());
                    }
                }
                *next = Level::new(self.degree, next.base_point(), gens);
            }
        }
    }

    /// A verified chain for the same group whose base begins with the usable
    /// points of `prefix`. Rebuilt from the current strong generators.
    pub fn change_base(&self, prefix: &[usize]) -> StabilizerChain {
        StabilizerChain::with_base_prefix(self.degree, &self.strong_generators(), prefix)
    }
}

/// Builds a probable chain by sifting `trials` pseudo-random elements.
/// The result contains the group's generators but is only guaranteed
/// complete after [`verify_chain`].
pub fn random_schreier(group: &PermGroup, trials: usize, seed: u64) -> StabilizerChain {
    let mut chain = StabilizerChain::initial(group.degree(), group.generators(), &[]);
    let gens: Vec<Permutation> = group
        .generators()
        .iter()
        .filter(|g| !g.is_identity())
        .cloned()
        .collect();
    if gens.is_empty() {
        return chain;
    }
    let inverses: Vec<Permutation> = gens.iter().map(Permutation::inverse).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut g = Permutation::identity(group.degree());
        for _ in 0..RANDOM_WORD_LENGTH {
            let k = rng.gen_range(0..gens.len());
            g = if rng.gen_bool(0.5) {
                &g * &gens[k]
            } else {
                &g * &inverses[k]
            };
        }
        let (residue, j) = chain.sift_from(g, 0);
        if !residue.is_identity() {
            chain.absorb(residue, 1.min(j), j);
        }
    }
    chain
}

/// Completes `chain` into a verified chain for `group`: makes sure every
/// group generator is present, then runs the full Schreier generator test,
/// absorbing failures.
pub fn verify_chain(group: &PermGroup, chain: &StabilizerChain) -> StabilizerChain {
    let mut chain = chain.clone();
    for g in group.generators() {
        if g.is_identity()
            || chain
                .levels
                .first()
                .is_some_and(|l| l.generators().contains(g))
        {
            continue;
        }
        let depth = chain
            .levels
            .iter()
            .take_while(|l| g.image(l.base_point()) == l.base_point())
            .count();
        chain.absorb(g.clone(), 0, depth);
    }
    chain.complete();
    chain
}
