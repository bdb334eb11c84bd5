//! Rack counting invariants of framed links in the lens spaces `L(p,1)`.
//!
//! A link is given by a lens diagram: a classical diagram plus `d` strands
//! passing through the disk bounding the lens space. Homomorphisms from its
//! augmented fundamental rack to a finite rack are enumerated level by
//! level, and summed over framings into the integral, writhe-enhanced,
//! symmetry and writhe-symmetry invariants.
//!
//! ```
//! use lensrack::{parse_diagram, validate_rack, integral_invariant};
//!
//! let r3 = validate_rack(&[vec![1, 3, 2], vec![3, 2, 1], vec![2, 1, 3]]).unwrap();
//! let unknot = parse_diagram("p 3\narcs 1\ncomponent 1: 1\n").unwrap();
//! assert_eq!(integral_invariant(&unknot, &r3), 9);
//! ```

pub mod cli;
pub mod closure;
pub mod diagram;
pub mod enumerate;
pub mod invariants;
pub mod oracle;
pub mod perm;
pub mod poly;
pub mod rack;
pub mod solver;

pub use closure::{ClosureConflict, PermutationClosure};
pub use diagram::{
    parse_diagram, serialize_diagram, writhe_vector, ArcId, Crossing, DiagramError, LensDiagram, Sign, Strand,
    ValidationError,
};
pub use enumerate::{canonical_form, enumerate_racks, MAX_ENUM_ORDER};
pub use invariants::{
    all_invariants, integral_invariant, symmetry_invariant, symmetry_permutation, writhe_enhanced_invariant,
    writhe_symmetry_invariant, Enumerator, InvariantError, InvariantSet,
};
pub use oracle::{oracle_enumerate_homomorphisms, ORACLE_BUDGET};
pub use perm::{permutation_order, Permutation, PermutationError};
pub use poly::{format_polynomial, Polynomial};
pub use rack::{parse_rack, rack_rank, validate_rack, Convention, Element, RackError, RackTable};
pub use solver::{
    count_homomorphisms, count_homomorphisms_with, enumerate_homomorphisms, enumerate_homomorphisms_with,
    enumerate_level_colorings, Homomorphism, LevelColoring, Semantics, SolverError,
};
