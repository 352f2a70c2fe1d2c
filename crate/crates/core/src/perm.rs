//! Permutations on `{1, ..., k}`, stored as 1-based image lists.
//!
//! Composition convention, used everywhere in this crate: `a.then(&b)` applies
//! `a` first, then `b`. "Ordered product" of a list always means fold by
//! `then` from the left, so the first element acts first.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::CoreError;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from a 1-based image list: `images[i - 1]` is the
    /// image of `i`. Rejects anything that is not a bijection of `{1..k}`.
    pub fn from_images(images: Vec<usize>) -> Result<Self, CoreError> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &v in &images {
            if v < 1 || v > k || seen[v - 1] {
                return Err(CoreError::NotAPermutation { images });
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(k: usize) -> Self {
        Permutation {
            images: (1..=k).collect(),
        }
    }

    /// Builds from disjoint cycles on `{1..k}`; points not mentioned are fixed.
    pub fn from_cycles(k: usize, cycles: &[&[usize]]) -> Self {
        let mut images: Vec<usize> = (1..=k).collect();
        for cycle in cycles {
            for (pos, &p) in cycle.iter().enumerate() {
                let q = cycle[(pos + 1) % cycle.len()];
                assert!(p >= 1 && p <= k && q >= 1 && q <= k);
                images[p - 1] = q;
            }
        }
        Permutation::from_images(images).expect("cycles must be disjoint")
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &Permutation) -> Self {
        assert_eq!(self.degree(), next.degree());
        Permutation {
            images: self.images.iter().map(|&v| next.apply(v)).collect(),
        }
    }

    /// Conjugate by `g`: the permutation acting as `g^{-1}` then `self` then `g`.
    /// Relabels every point `p` of `self` as `g(p)`.
    pub fn conjugated_by(&self, g: &Permutation) -> Self {
        let mut images = vec![0; self.degree()];
        for p in 1..=self.degree() {
            images[g.apply(p) - 1] = g.apply(self.apply(p));
        }
        Permutation { images }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let k = self.degree();
        let mut seen = vec![false; k];
        let mut cycles = Vec::new();
        for start in 1..=k {
            if seen[start - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p - 1] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            cycles.push(cycle);
        }
        cycles
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// The cycle of `self` through `point`, starting at `point`.
    pub fn cycle_of(&self, point: usize) -> Vec<usize> {
        let mut cycle = vec![point];
        let mut p = self.apply(point);
        while p != point {
            cycle.push(p);
            p = self.apply(p);
        }
        cycle
    }

    /// Sorted cycle lengths; equal iff two permutations are conjugate.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable();
        t
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<Vec<usize>> =
            self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for cycle in nontrivial {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// All permutations of degree `k` in lexicographic order of their image lists.
pub fn all_permutations(k: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (1..=k).collect();
    loop {
        out.push(Permutation {
            images: current.clone(),
        });
        // next_permutation on the image list
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..k).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

/// Whether the group generated by `gens` acts transitively on `{1..k}`.
/// Orbit closure of 1 under the generators and their inverses.
pub fn transitive(gens: &[Permutation], k: usize) -> bool {
    if k == 0 {
        return false;
    }
    let mut reached = vec![false; k];
    reached[0] = true;
    let mut frontier = vec![1];
    let mut count = 1;
    while let Some(p) = frontier.pop() {
        for g in gens {
            for q in [g.apply(p), g.inverse().apply(p)] {
                if !reached[q - 1] {
                    reached[q - 1] = true;
                    count += 1;
                    frontier.push(q);
                }
            }
        }
    }
    count == k
}
