//! Pair closure: the partial map on a rack generated by seed pairs `u ↦ u'`
//! and closed under `(u,u'), (v,v') ⇒ (u ▷ v, u' ▷ v')` and the same for `▷̄`.

use thiserror::Error;

use crate::perm::Permutation;
use crate::rack::{Element, RackTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ClosureConflict {
    #[error("element {element} would map to both {first} and {second}")]
    TwoImages {
        element: Element,
        first: Element,
        second: Element,
    },
    #[error("element {image} would have both {first} and {second} as preimages")]
    TwoPreimages {
        image: Element,
        first: Element,
        second: Element,
    },
    #[error("closure image differs from its domain (element {0} is hit but not mapped)")]
    ImageNotDomain(Element),
}

/// A closed, functional and injective set of pairs over a finite rack.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationClosure {
    forward: Vec<Option<usize>>,
    backward: Vec<Option<usize>>,
    pairs: Vec<(usize, usize)>,
}

impl PermutationClosure {
    /// Closes `seeds` (1-based pairs) under the componentwise rack operations.
    pub fn close(
        rack: &RackTable,
        seeds: impl IntoIterator<Item = (Element, Element)>,
    ) -> Result<Self, ClosureConflict> {
        let n = rack.order();
        let mut c = Self {
            forward: vec![None; n],
            backward: vec![None; n],
            pairs: Vec::new(),
        };
        let mut pending = 0usize;
        for (u, v) in seeds {
            c.insert(u - 1, v - 1)?;
        }
        while pending < c.pairs.len() {
            let (u, u2) = c.pairs[pending];
            pending += 1;
            let mut i = 0;
            while i < c.pairs.len() {
                let (v, v2) = c.pairs[i];
                c.insert(rack.op0(u, v), rack.op0(u2, v2))?;
                c.insert(rack.inv0(u, v), rack.inv0(u2, v2))?;
                c.insert(rack.op0(v, u), rack.op0(v2, u2))?;
                c.insert(rack.inv0(v, u), rack.inv0(v2, u2))?;
                i += 1;
            }
        }
        Ok(c)
    }

    fn insert(&mut self, u: usize, v: usize) -> Result<(), ClosureConflict> {
        match self.forward[u] {
            Some(existing) if existing == v => return Ok(()),
            Some(existing) => {
                return Err(ClosureConflict::TwoImages {
                    element: u + 1,
                    first: existing + 1,
                    second: v + 1,
                })
            }
            None => {}
        }
        if let Some(existing) = self.backward[v] {
            return Err(ClosureConflict::TwoPreimages {
                image: v + 1,
                first: existing + 1,
                second: u + 1,
            });
        }
        self.forward[u] = Some(v);
        self.backward[v] = Some(u);
        self.pairs.push((u, v));
        Ok(())
    }

    /// Elements with an image, ascending.
    pub fn domain(&self) -> Vec<Element> {
        (0..self.forward.len())
            .filter(|&i| self.forward[i].is_some())
            .map(|i| i + 1)
            .collect()
    }

    pub fn image_of(&self, u: Element) -> Option<Element> {
        self.forward[u - 1].map(|v| v + 1)
    }

    /// Number of pairs.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Extends the closure by the identity outside its domain.
    ///
    /// Fails when the image of the closure is not its domain; for seeds of
    /// the form `(f(s), f(A s))` the two always agree.
    pub fn to_permutation(&self) -> Result<Permutation, ClosureConflict> {
        if let Some(v) = (0..self.backward.len())
            .find(|&v| self.backward[v].is_some() && self.forward[v].is_none())
        {
            return Err(ClosureConflict::ImageNotDomain(v + 1));
        }
        let images = (0..self.forward.len())
            .map(|i| self.forward[i].unwrap_or(i) + 1)
            .collect();
        Ok(Permutation::new(images).expect("domain equals image"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rack::validate_rack;

    fn dihedral3() -> RackTable {
        validate_rack(&[vec![1, 3, 2], vec![3, 2, 1], vec![2, 1, 3]]).unwrap()
    }

    #[test]
    fn swap_extends_in_dihedral() {
        let r = dihedral3();
        let c = PermutationClosure::close(&r, [(1, 2), (2, 1)]).unwrap();
        assert_eq!(c.domain(), vec![1, 2, 3]);
        assert_eq!(c.to_permutation().unwrap().images(), &[2, 1, 3]);
    }

    #[test]
    fn conflict_in_non_quandle() {
        let r = validate_rack(&[vec![1, 1, 1], vec![2, 3, 3], vec![3, 2, 2]]).unwrap();
        // 1 ▷ 1 = 1 but 2 ▷ 2 = 3, so 1 would need images 2 and 3
        let err = PermutationClosure::close(&r, [(1, 2), (2, 1)]).unwrap_err();
        assert!(matches!(err, ClosureConflict::TwoImages { element: 1, .. }));
        // swapping 2 and 3 is an automorphism of {2, 3}
        let ok = PermutationClosure::close(&r, [(2, 3), (3, 2)]).unwrap();
        assert_eq!(ok.to_permutation().unwrap().images(), &[1, 3, 2]);
    }

    #[test]
    fn empty_seed_gives_identity() {
        let c = PermutationClosure::close(&dihedral3(), []).unwrap();
        assert!(c.is_empty());
        assert!(c.to_permutation().unwrap().is_identity());
        let trivial = validate_rack(&[vec![1, 1], vec![2, 2]]).unwrap();
        let one_way = PermutationClosure::close(&trivial, [(1, 2)]).unwrap();
        assert_eq!(one_way.to_permutation(), Err(ClosureConflict::ImageNotDomain(2)));
    }
}
