//! Permutation groups given by generators.
//!
//! Points are 0-based in the API and 1-based in cycle notation. Products
//! compose left to right: `a * b` applies `a` first, so `i^(a*b) = (i^a)^b`.

mod blocks;
mod schreier;
mod series;

use std::fmt;
use std::ops::Mul;
use std::sync::OnceLock;

use num_bigint::BigUint;
use thiserror::Error;

pub use blocks::{is_primitive, minimal_block_partition};
pub use schreier::{random_schreier, verify_chain, Level, SchreierVector, StabilizerChain};
pub use series::{
    derived_series, is_nilpotent, is_perfect, is_soluble, lower_central_series, normal_closure,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("malformed permutation at offset {position}: {message}")]
    Malformed { position: usize, message: String },
    #[error("point {0} repeated in cycle notation")]
    RepeatedPoint(usize),
    #[error("point {point} outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("image list is not a bijection")]
    NotBijection,
    #[error("point {0} is not in the orbit")]
    Unreached(usize),
    #[error("group is not transitive")]
    Intransitive,
    #[error("block seeds must be distinct points")]
    EqualPoints,
    #[error("malformed group file: {0}")]
    GroupFile(String),
}

/// A permutation of `{0, …, n-1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(PermError::NotBijection);
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    /// Builds a permutation from disjoint 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(PermError::PointOutOfRange {
                        point: p + 1,
                        degree,
                    });
                }
                if std::mem::replace(&mut seen[p], true) {
                    return Err(PermError::RepeatedPoint(p + 1));
                }
                images[p] = cycle[(k + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(1,2,3)(4,5)`; `()` is the identity.
    /// Without an explicit degree, the largest point mentioned is used.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Self, PermError> {
        let malformed = |position: usize, message: &str| PermError::Malformed {
            position,
            message: message.to_string(),
        };
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let bytes = text.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(malformed(pos, "empty input"));
        }
        while pos < bytes.len() {
            if bytes[pos] != b'(' {
                return Err(malformed(pos, "expected `(`"));
            }
            pos += 1;
            let mut cycle = Vec::new();
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b')' {
                pos += 1;
                skip_ws(&mut pos);
                continue;
            }
            loop {
                skip_ws(&mut pos);
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let point: usize = text[start..pos]
                    .parse()
                    .map_err(|_| malformed(start, "expected a point"))?;
                if point == 0 {
                    return Err(malformed(start, "points are numbered from 1"));
                }
                cycle.push(point - 1);
                skip_ws(&mut pos);
                match bytes.get(pos) {
                    Some(b',') => pos += 1,
                    Some(b')') => {
                        pos += 1;
                        break;
                    }
                    _ => return Err(malformed(pos, "expected `,` or `)`")),
                }
            }
            cycles.push(cycle);
            skip_ws(&mut pos);
        }
        let max_point = cycles.iter().flatten().map(|&p| p + 1).max().unwrap_or(0);
        let degree = degree.unwrap_or(max_point);
        if max_point > degree {
            return Err(PermError::PointOutOfRange {
                point: max_point,
                degree,
            });
        }
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    #[must_use]
    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `self * other`: apply `self`, then `other`.
    pub fn multiply(&self, other: &Permutation) -> Result<Self, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self * other)
    }

    #[must_use]
    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut result = Permutation::identity(self.degree());
        for _ in 0..n.unsigned_abs() {
            result = &result * &base;
        }
        result
    }

    /// `h^-1 * self * h`.
    #[must_use]
    pub fn conjugate_by(&self, h: &Permutation) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[h.images[i] as usize] = h.images[j as usize];
        }
        Permutation { images }
    }

    /// `a^-1 * b^-1 * a * b`.
    #[must_use]
    pub fn commutator(a: &Permutation, b: &Permutation) -> Self {
        &(&a.inverse() * &b.inverse()) * &(a * b)
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.image(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.image(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted multiset of cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = lengths.iter().sum();
        lengths.extend(std::iter::repeat_n(1, self.degree() - moved));
        lengths.sort_unstable();
        lengths
    }

    pub fn order(&self) -> BigUint {
        self.cycles().iter().fold(BigUint::from(1u32), |acc, c| {
            num_integer::Integer::lcm(&acc, &BigUint::from(c.len()))
        })
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &j)| i as u32 != j)
            .map(|(i, _)| i)
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Left-to-right composition; panics on a degree mismatch.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| rhs.images[i as usize])
                .collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A permutation group of a fixed degree given by generators, with a lazily
/// built stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabilizerChain>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    /// Attaches an already verified chain for the same group.
    pub fn with_chain(generators: Vec<Permutation>, chain: StabilizerChain) -> Self {
        PermGroup {
            degree: chain.degree(),
            generators,
            chain: OnceLock::from(chain),
        }
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("no generators")
    }

    /// Parses cycle-notation generators separated by commas, e.g.
    /// `(1,2),(1,2,3,4)`.
    pub fn parse_generators(text: &str, degree: Option<usize>) -> Result<Self, PermError> {
        let pieces = split_cycle_list(text);
        PermGroup::from_pieces(&pieces, degree)
    }

    /// Parses the group file format: an optional `degree n` line followed by
    /// one permutation per line. Blank lines and `#` comments are ignored;
    /// `;` also separates permutations.
    pub fn parse(text: &str) -> Result<Self, PermError> {
        let mut degree = None;
        let mut pieces = Vec::new();
        for raw in text.lines().flat_map(|l| l.split(';')) {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("degree") {
                if degree.is_some() || !pieces.is_empty() {
                    return Err(PermError::GroupFile("misplaced `degree` line".into()));
                }
                degree = Some(
                    rest.trim()
                        .parse()
                        .map_err(|_| PermError::GroupFile("bad degree".into()))?,
                );
                continue;
            }
            pieces.extend(split_cycle_list(line));
        }
        PermGroup::from_pieces(&pieces, degree)
    }

    fn from_pieces(pieces: &[String], degree: Option<usize>) -> Result<Self, PermError> {
        let degree = match degree {
            Some(d) => d,
            None => pieces
                .iter()
                .map(|p| Permutation::parse(p, None).map(|g| g.degree()))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .max()
                .unwrap_or(0),
        };
        let gens = pieces
            .iter()
            .map(|p| Permutation::parse(p, Some(degree)))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::new(degree, gens)
    }

    /// Group file text accepted by [`PermGroup::parse`].
    pub fn to_file_string(&self) -> String {
        let mut s = format!("degree {}\n", self.degree);
        for g in &self.generators {
            s += &format!("{g}\n");
        }
        s
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[(0..n).collect()]).unwrap());
        }
        PermGroup::new(n, gens).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        let gens = (2..n)
            .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]).unwrap())
            .collect();
        PermGroup::new(n, gens).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        let gens = if n >= 2 {
            vec![Permutation::from_cycles(n, &[(0..n).collect()]).unwrap()]
        } else {
            Vec::new()
        };
        PermGroup::new(n, gens).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// The verified stabilizer chain, built on first use.
    pub fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| StabilizerChain::schreier_sims(self.degree, &self.generators))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.chain().contains(g)
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// The orbit of `point` with a Schreier vector rooted there.
    pub fn orbit(&self, point: usize) -> Result<SchreierVector, PermError> {
        if point >= self.degree {
            return Err(PermError::PointOutOfRange {
                point: point + 1,
                degree: self.degree,
            });
        }
        Ok(SchreierVector::new(self.degree, point, &self.generators))
    }

    /// All orbits, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let mut orbit = SchreierVector::new(self.degree, p, &self.generators)
                .orbit()
                .to_vec();
            orbit.sort_unstable();
            for &q in &orbit {
                seen[q] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a * b == b * a))
    }
}

fn split_cycle_list(text: &str) -> Vec<String> {
    // Commas inside parentheses belong to cycles; commas between `)` and `(`
    // separate permutations.
    let mut out = Vec::new();
    let mut current = String::new();
    let mut depth = 0usize;
    for c in text.chars() {
        match c {
            '(' => {
                depth += 1;
                current.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                current.push(c);
            }
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut current));
            }
            _ => current.push(c),
        }
    }
    out.push(current);
    out.into_iter()
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}
