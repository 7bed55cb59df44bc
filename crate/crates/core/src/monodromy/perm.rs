//! Permutations of {0, …, d−1} and fully enumerated groups they generate.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::MonodromyError;

/// Largest degree for which groups are enumerated (8! = 40320 elements).
pub const MAX_DEGREE: usize = 8;

/// A bijection given by its image array: i ↦ images[i].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl TryFrom<Vec<usize>> for Permutation {
    type Error = MonodromyError;

    fn try_from(images: Vec<usize>) -> Result<Self, Self::Error> {
        Self::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, MonodromyError> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &j in &images {
            if j >= d || seen[j] {
                return Err(MonodromyError::NotABijection(images));
            }
            seen[j] = true;
        }
        Ok(Self(images))
    }

    pub fn identity(d: usize) -> Self {
        Self((0..d).collect())
    }

    /// A permutation from disjoint cycles written with 1-based points, as
    /// in (1 2)(3 4 5).
    pub fn from_cycles(d: usize, cycles: &[&[usize]]) -> Result<Self, MonodromyError> {
        let mut images: Vec<usize> = (0..d).collect();
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                let b = c[(k + 1) % c.len()];
                if a == 0 || b == 0 || a > d || b > d {
                    return Err(MonodromyError::DegreeMismatch { expected: d, found: a.max(b) });
                }
                images[a - 1] = b - 1;
            }
        }
        Self::new(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// self ∘ other: first other, then self.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Self(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn is_transposition(&self) -> bool {
        let moved = self.0.iter().enumerate().filter(|(i, j)| i != *j).count();
        moved == 2
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points; "()" for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.0[i];
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// The subgroup of S_d generated by a list of permutations, with every
/// element materialized.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: HashSet<Permutation>,
}

pub fn factorial(d: usize) -> usize {
    (1..=d).product()
}

/// Closure of the generators under composition, by breadth-first search.
pub fn group_generate(degree: usize, perms: &[Permutation]) -> Result<PermGroup, MonodromyError> {
    let mut g = PermGroup { degree, generators: Vec::new(), elements: HashSet::from([Permutation::identity(degree)]) };
    for p in perms {
        g.add_generator(p.clone())?;
    }
    Ok(g)
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        Self { degree, generators: Vec::new(), elements: HashSet::from([Permutation::identity(degree)]) }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.contains(p)
    }

    /// Sorted, for deterministic output.
    pub fn elements(&self) -> BTreeSet<Permutation> {
        self.elements.iter().cloned().collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.order() == factorial(self.degree)
    }

    /// Adds a generator and closes up again. Returns whether the group grew.
    pub fn add_generator(&mut self, p: Permutation) -> Result<bool, MonodromyError> {
        if p.degree() != self.degree {
            return Err(MonodromyError::DegreeMismatch { expected: self.degree, found: p.degree() });
        }
        if self.degree > MAX_DEGREE {
            return Err(MonodromyError::DegreeMismatch { expected: MAX_DEGREE, found: self.degree });
        }
        if self.elements.contains(&p) {
            return Ok(false);
        }
        self.generators.push(p);
        // every element is a word in the generators; left-multiplying the
        // whole current set by each generator until nothing new appears
        let mut queue: VecDeque<Permutation> = self.elements.iter().cloned().collect();
        while let Some(e) = queue.pop_front() {
            for g in &self.generators {
                let h = g.compose(&e);
                if self.elements.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
        Ok(true)
    }

    /// Orbit of a point.
    pub fn orbit(&self, i: usize) -> BTreeSet<usize> {
        self.elements.iter().map(|g| g.apply(i)).collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// Largest s such that the group acts transitively on ordered s-tuples
    /// of distinct points (0 if not transitive).
    pub fn transitivity_degree(&self) -> usize {
        let mut s = 0;
        while s < self.degree {
            let tuple: Vec<usize> = (0..=s).collect();
            let orbit: HashSet<Vec<usize>> = self.elements.iter().map(|g| tuple.iter().map(|&i| g.apply(i)).collect()).collect();
            let needed = factorial(self.degree) / factorial(self.degree - s - 1);
            if orbit.len() != needed {
                break;
            }
            s += 1;
        }
        s
    }

    pub fn has_transposition(&self) -> bool {
        self.elements.iter().any(Permutation::is_transposition)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(d, cycles).unwrap()
    }

    #[test]
    fn standard_generators_give_the_symmetric_group() {
        let g = group_generate(6, &[p(6, &[&[1, 2]]), p(6, &[&[1, 2, 3, 4, 5, 6]])]).unwrap();
        assert_eq!(g.order(), 720);
        assert!(g.is_symmetric());
        assert_eq!(g.transitivity_degree(), 6);
        assert!(g.has_transposition());
    }

    #[test]
    fn empty_generating_set() {
        let g = group_generate(5, &[]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.transitivity_degree(), 0);
    }

    #[test]
    fn three_cycle() {
        let g = group_generate(6, &[p(6, &[&[1, 2, 3]])]).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.orbit(0), BTreeSet::from([0, 1, 2]));
        assert_eq!(g.orbit(4), BTreeSet::from([4]));
        assert!(!g.is_transitive());
        assert!(!g.has_transposition());
    }

    #[test]
    fn alternating_and_dihedral_subgroups() {
        let a5 = group_generate(5, &[p(5, &[&[1, 2, 3]]), p(5, &[&[1, 2, 3, 4, 5]])]).unwrap();
        assert_eq!(a5.order(), 60);
        assert_eq!(a5.transitivity_degree(), 3);
        let d4 = group_generate(4, &[p(4, &[&[1, 2, 3, 4]]), p(4, &[&[1, 3]])]).unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.transitivity_degree(), 1);
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let r = group_generate(4, &[p(5, &[&[1, 2]])]);
        assert!(matches!(r, Err(MonodromyError::DegreeMismatch { expected: 4, found: 5 })));
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn cycle_notation_and_types() {
        let q = p(6, &[&[1, 3], &[2, 4, 5]]);
        assert_eq!(q.to_string(), "(1 3)(2 4 5)");
        assert_eq!(q.cycle_type(), vec![3, 2, 1]);
        assert_eq!(q.compose(&q.inverse()), Permutation::identity(6));
        assert_eq!(Permutation::identity(3).to_string(), "()");
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(json, "[2,3,0,4,1,5]");
        assert!(serde_json::from_str::<Permutation>("[0,0]").is_err());
    }
}
