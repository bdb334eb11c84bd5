//! Permutations of `1..=n` with cycle decomposition and order.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("permutation must act on at least one point")]
    Empty,
    #[error("image {image} of point {point} is outside 1..={size}")]
    OutOfRange { point: usize, image: usize, size: usize },
    #[error("point {image} is hit twice")]
    NotInjective { image: usize },
}

/// A bijection of `1..=size`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from 1-based images: `images[i - 1]` is the image of `i`.
    pub fn new(images: Vec<usize>) -> Result<Self, PermutationError> {
        let size = images.len();
        if size == 0 {
            return Err(PermutationError::Empty);
        }
        let mut seen = vec![false; size];
        for (idx, &image) in images.iter().enumerate() {
            if image == 0 || image > size {
                return Err(PermutationError::OutOfRange {
                    point: idx + 1,
                    image,
                    size,
                });
            }
            if std::mem::replace(&mut seen[image - 1], true) {
                return Err(PermutationError::NotInjective { image });
            }
        }
        Ok(Self { images })
    }

    pub fn identity(size: usize) -> Self {
        Self {
            images: (1..=size).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.size()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Self { images }
    }

    /// `self.compose(other)` maps `i` to `self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.size(), other.size(), "size mismatch in compose");
        Self {
            images: other.images.iter().map(|&v| self.images[v - 1]).collect(),
        }
    }

    /// Disjoint cycles, each starting at its least point, ordered by that point.
    /// Fixed points appear as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut visited = vec![false; self.size()];
        let mut out = Vec::new();
        for start in 1..=self.size() {
            if visited[start - 1] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !visited[cur - 1] {
                visited[cur - 1] = true;
                cycle.push(cur);
                cur = self.images[cur - 1];
            }
            out.push(cycle);
        }
        out
    }

    /// Multiplicative order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation without fixed points, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let body: Vec<String> = cycle.iter().map(|v| v.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Order of `perm` in the symmetric group.
pub fn permutation_order(perm: &Permutation) -> u64 {
    perm.order()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_order_one() {
        assert_eq!(Permutation::identity(5).order(), 1);
        assert!(Permutation::identity(3).is_identity());
    }

    #[test]
    fn transposition_on_four_points() {
        let t = Permutation::new(vec![2, 1, 3, 4]).unwrap();
        assert_eq!(permutation_order(&t), 2);
        assert_eq!(t.to_string(), "(1 2)");
    }

    #[test]
    fn three_cycle_times_two_cycle() {
        // (1 2 3)(4 5)
        let p = Permutation::new(vec![2, 3, 1, 5, 4]).unwrap();
        // multiply out: p^k is the identity first at k = 6
        let mut acc = p.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc.compose(&p);
            k += 1;
        }
        assert_eq!(k, 6);
        assert_eq!(p.order(), 6);
    }

    #[test]
    fn rejects_non_bijections() {
        assert_eq!(
            Permutation::new(vec![1, 1]),
            Err(PermutationError::NotInjective { image: 1 })
        );
        assert!(matches!(
            Permutation::new(vec![3, 1]),
            Err(PermutationError::OutOfRange { point: 1, .. })
        ));
        assert_eq!(Permutation::new(vec![]), Err(PermutationError::Empty));
    }

    #[test]
    fn inverse_composes_to_identity() {
        let p = Permutation::new(vec![3, 1, 4, 2]).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(p.inverse().compose(&p).is_identity());
    }
}
