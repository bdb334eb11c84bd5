//! Counting invariants summed over framing classes.
//!
//! For a target rack of rank `N`, framings of an `n`-component link only
//! matter modulo `N`, so each invariant is a sum over the `N^n` diagrams of
//! [`LensDiagram::framing_representatives`]. The symmetry invariants weight
//! each homomorphism `f` by `x^(ord σ_f − 1)`, where `σ_f` is the
//! permutation of the target induced by the generator of `π₁(L(p,1))`.

use thiserror::Error;

use crate::closure::{ClosureConflict, PermutationClosure};
use crate::diagram::LensDiagram;
use crate::oracle::oracle_enumerate_homomorphisms;
use crate::perm::Permutation;
use crate::poly::Polynomial;
use crate::rack::RackTable;
use crate::solver::{
    apply_a_power, enumerate_homomorphisms_with, Homomorphism, Semantics, SolverError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("induced action is not well defined for homomorphism {flattened:?} at framing {framing:?}: {conflict}")]
    ClosureConflict {
        framing: Vec<u64>,
        flattened: Vec<usize>,
        conflict: ClosureConflict,
    },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Which enumerator supplies the homomorphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enumerator {
    Search(Semantics),
    /// Brute force; presentation semantics only.
    Oracle,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator::Search(Semantics::Presentation)
    }
}

impl Enumerator {
    fn homs(self, d: &LensDiagram, t: &RackTable) -> Result<Vec<Homomorphism>, SolverError> {
        match self {
            Enumerator::Search(s) => Ok(enumerate_homomorphisms_with(d, t, s)),
            Enumerator::Oracle => oracle_enumerate_homomorphisms(d, t),
        }
    }
}

/// Homomorphisms of one framed representative.
#[derive(Debug, Clone)]
pub struct FramedHoms {
    pub framing: Vec<u64>,
    pub diagram: LensDiagram,
    pub homs: Vec<Homomorphism>,
}

pub fn framed_homomorphisms(
    d: &LensDiagram,
    t: &RackTable,
    e: Enumerator,
) -> Result<Vec<FramedHoms>, SolverError> {
    d.framing_representatives(t.rank())
        .into_iter()
        .map(|(framing, diagram)| {
            let homs = e.homs(&diagram, t)?;
            Ok(FramedHoms {
                framing,
                diagram,
                homs,
            })
        })
        .collect()
}

/// `σ_f`: closes `{(f(s), f(A s))}` under the rack operations and extends
/// by the identity.
pub fn symmetry_permutation(
    d: &LensDiagram,
    t: &RackTable,
    f: &Homomorphism,
) -> Result<Permutation, ClosureConflict> {
    let p = d.p() as usize;
    let k = if p > 1 { 1 } else { 0 };
    let mut seeds = Vec::with_capacity(p * d.arc_count());
    for level in 0..p {
        for arc in 1..=d.arc_count() {
            let image = if p == 1 {
                // A = F when p = 1; apply_a_power only covers k < p
                wrap_once(d, t, f, arc)
            } else {
                apply_a_power(d, t, f, k, arc, level).expect("indices in range")
            };
            seeds.push((f.value(arc, level), image));
        }
    }
    PermutationClosure::close(t, seeds)?.to_permutation()
}

/// `f(F(arc, 0))` for `p = 1`.
fn wrap_once(d: &LensDiagram, t: &RackTable, f: &Homomorphism, arc: usize) -> usize {
    d.strands().iter().rev().fold(f.value(arc, 0), |u, s| {
        let y = f.value(s.in_arc, 0);
        if s.eps.is_positive() {
            t.op(u, y)
        } else {
            t.inv_op(u, y)
        }
    })
}

/// `Σ_w |Hom(R(D, w), X)|`.
pub fn integral_invariant(d: &LensDiagram, t: &RackTable) -> u64 {
    integral_invariant_using(d, t, Enumerator::default()).expect("search enumerator does not fail")
}

pub fn integral_invariant_using(d: &LensDiagram, t: &RackTable, e: Enumerator) -> Result<u64, SolverError> {
    Ok(framed_homomorphisms(d, t, e)?
        .iter()
        .map(|fh| fh.homs.len() as u64)
        .sum())
}

/// `Σ_w |Hom(R(D, w), X)| q^w`.
pub fn writhe_enhanced_invariant(d: &LensDiagram, t: &RackTable) -> Polynomial {
    writhe_enhanced_invariant_using(d, t, Enumerator::default()).expect("search enumerator does not fail")
}

pub fn writhe_enhanced_invariant_using(
    d: &LensDiagram,
    t: &RackTable,
    e: Enumerator,
) -> Result<Polynomial, SolverError> {
    let framed = framed_homomorphisms(d, t, e)?;
    Ok(writhe_poly(d, &framed))
}

fn writhe_poly(d: &LensDiagram, framed: &[FramedHoms]) -> Polynomial {
    let mut poly = Polynomial::zero(Polynomial::writhe_vars(d.component_count()));
    for fh in framed {
        poly.add_term(fh.framing.clone(), fh.homs.len() as u64);
    }
    poly
}

/// `Σ_w Σ_f x^(ord σ_f − 1)`.
pub fn symmetry_invariant(d: &LensDiagram, t: &RackTable) -> Result<Polynomial, InvariantError> {
    symmetry_invariant_using(d, t, Enumerator::default())
}

pub fn symmetry_invariant_using(
    d: &LensDiagram,
    t: &RackTable,
    e: Enumerator,
) -> Result<Polynomial, InvariantError> {
    Ok(writhe_symmetry_invariant_using(d, t, e)?
        .specialize_to_one(&Polynomial::writhe_vars(d.component_count()).iter().map(String::as_str).collect::<Vec<_>>()))
}

/// `Σ_w Σ_f x^(ord σ_f − 1) q^w`; variables `q1..qn, x`.
pub fn writhe_symmetry_invariant(d: &LensDiagram, t: &RackTable) -> Result<Polynomial, InvariantError> {
    writhe_symmetry_invariant_using(d, t, Enumerator::default())
}

pub fn writhe_symmetry_invariant_using(
    d: &LensDiagram,
    t: &RackTable,
    e: Enumerator,
) -> Result<Polynomial, InvariantError> {
    let framed = framed_homomorphisms(d, t, e)?;
    writhe_symmetry_poly(d, t, &framed)
}

fn writhe_symmetry_poly(
    d: &LensDiagram,
    t: &RackTable,
    framed: &[FramedHoms],
) -> Result<Polynomial, InvariantError> {
    let mut vars = Polynomial::writhe_vars(d.component_count());
    vars.push("x".to_string());
    let mut poly = Polynomial::zero(vars);
    for fh in framed {
        for f in &fh.homs {
            let sigma = symmetry_permutation(&fh.diagram, t, f).map_err(|conflict| {
                InvariantError::ClosureConflict {
                    framing: fh.framing.clone(),
                    flattened: f.flattened(),
                    conflict,
                }
            })?;
            let mut exps = fh.framing.clone();
            exps.push(sigma.order() - 1);
            poly.add_term(exps, 1);
        }
    }
    Ok(poly)
}

/// All four invariants from one enumeration pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSet {
    pub integral: u64,
    pub writhe: Polynomial,
    pub symmetry: Result<Polynomial, InvariantError>,
    pub writhe_symmetry: Result<Polynomial, InvariantError>,
}

pub fn all_invariants(d: &LensDiagram, t: &RackTable, e: Enumerator) -> Result<InvariantSet, SolverError> {
    let framed = framed_homomorphisms(d, t, e)?;
    let writhe = writhe_poly(d, &framed);
    let wsym = writhe_symmetry_poly(d, t, &framed);
    let qs = Polynomial::writhe_vars(d.component_count());
    let qs: Vec<&str> = qs.iter().map(String::as_str).collect();
    Ok(InvariantSet {
        integral: writhe.coefficient_sum(),
        symmetry: wsym.as_ref().map(|p| p.specialize_to_one(&qs)).map_err(Clone::clone),
        writhe,
        writhe_symmetry: wsym,
    })
}
