//! Homomorphisms from the fundamental rack of a diagram in `L(p,1)` to a
//! finite rack.
//!
//! The generators are pairs `(arc, level)` with `level ∈ 0..p`, so a
//! homomorphism is a tuple `(f_0, …, f_{p-1})` of colorings of the tangle
//! obtained by cutting the link along the surgery disk. The generator of
//! `π₁(L(p,1))` acts by `A(x, k) = (x, k + 1)` for `k < p - 1` and
//! `A(x, p - 1) = (x, 0) ▷^{ε_d} (in_d, 0) … ▷^{ε_1} (in_1, 0)`.
//!
//! A tuple is accepted when
//! 1. every level satisfies the crossing relations,
//! 2. `f_k(out_i) = f_{k+1}(in_i)` for `k < p - 1` and
//!    `f_{p-1}(out_i) = f_0(in_i) ▷^{ε_d} f_0(in_d) … ▷^{ε_1} f_0(in_1)`,
//! 3. for every `k ∈ 1..p`, `s ↦ f(A^k s)` has the same kernel partition on
//!    the generators as `f`.
//!
//! [`Semantics::Equivariant`] additionally requires the action induced on
//! the image to be well defined on the whole subrack generated by the
//! image of the generators, not just on the generators themselves.

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::closure::PermutationClosure;
use crate::diagram::{ArcId, LensDiagram};
use crate::rack::{Element, RackTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("index out of range: arc {arc}, level {level}, power {power}")]
    IndexOutOfRange {
        arc: ArcId,
        level: usize,
        power: usize,
    },
    #[error("brute-force search space |X|^(A*p) = {size} exceeds the budget of {budget}")]
    SearchSpaceTooLarge { size: u128, budget: u128 },
}

/// Which maps count as homomorphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum Semantics {
    /// Crossing, chain/wrap and generator-kernel conditions.
    #[default]
    Presentation,
    /// As above, and the induced action on the generated image subrack is a
    /// well-defined bijection.
    Equivariant,
}

/// A coloring of the arcs of one level: `colors()[arc - 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelColoring(pub Vec<Element>);

impl LevelColoring {
    pub fn color(&self, arc: ArcId) -> Element {
        self.0[arc - 1]
    }

    pub fn colors(&self) -> &[Element] {
        &self.0
    }
}

/// `levels()[k]` is `f_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Homomorphism {
    levels: Vec<LevelColoring>,
}

impl Homomorphism {
    pub fn new(levels: Vec<LevelColoring>) -> Self {
        Self { levels }
    }

    pub fn levels(&self) -> &[LevelColoring] {
        &self.levels
    }

    /// `f((arc, level))`.
    pub fn value(&self, arc: ArcId, level: usize) -> Element {
        self.levels[level].color(arc)
    }

    /// `(f_0(1), …, f_0(A), f_1(1), …, f_{p-1}(A))`.
    pub fn flattened(&self) -> Vec<Element> {
        self.levels.iter().flat_map(|l| l.0.iter().copied()).collect()
    }
}

/// Partition of the generators `(arc, level)` into blocks of equal value.
/// Blocks hold `(arc, level)` pairs and are ordered by their first member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelPartition {
    pub blocks: Vec<Vec<(ArcId, usize)>>,
}

impl KernelPartition {
    /// Kernel of `value`, a function of `(arc, level)` for arcs `1..=arcs`
    /// and levels `0..p`.
    pub fn of(arcs: usize, p: usize, value: impl Fn(ArcId, usize) -> Element) -> Self {
        let mut index: HashMap<Element, usize> = HashMap::new();
        let mut blocks: Vec<Vec<(ArcId, usize)>> = Vec::new();
        for level in 0..p {
            for arc in 1..=arcs {
                let v = value(arc, level);
                let b = *index.entry(v).or_insert_with(|| {
                    blocks.push(Vec::new());
                    blocks.len() - 1
                });
                blocks[b].push((arc, level));
            }
        }
        Self { blocks }
    }
}

/// Precomputed adjacency used by the searches.
struct Plan<'a> {
    rack: &'a RackTable,
    arcs: usize,
    p: usize,
    /// crossing indices touching each arc (0-based arc)
    touching: Vec<Vec<usize>>,
    /// (over, in, out, positive), 0-based arcs
    crossings: Vec<(usize, usize, usize, bool)>,
    /// (in, out, positive), 0-based arcs, in disk order
    strands: Vec<(usize, usize, bool)>,
}

impl<'a> Plan<'a> {
    fn new(diagram: &'a LensDiagram, rack: &'a RackTable) -> Self {
        let arcs = diagram.arc_count();
        let crossings: Vec<_> = diagram
            .crossings()
            .iter()
            .map(|c| (c.over - 1, c.under_in - 1, c.under_out - 1, c.sign.is_positive()))
            .collect();
        let mut touching = vec![Vec::new(); arcs];
        for (i, &(o, a, b, _)) in crossings.iter().enumerate() {
            for x in [o, a, b] {
                if !touching[x].contains(&i) {
                    touching[x].push(i);
                }
            }
        }
        let strands = diagram
            .strands()
            .iter()
            .map(|s| (s.in_arc - 1, s.out_arc - 1, s.eps.is_positive()))
            .collect();
        Self {
            rack,
            arcs,
            p: diagram.p() as usize,
            touching,
            crossings,
            strands,
        }
    }

    /// `x ▷^{ε_d} level[in_d] … ▷^{ε_1} level[in_1]`, all 0-based.
    fn wrap_word(&self, x: usize, level: &[usize]) -> usize {
        self.strands
            .iter()
            .rev()
            .fold(x, |u, &(inn, _, pos)| self.rack.act0(u, level[inn], pos))
    }

    /// `f(A^k (arc, level))`, 0-based arc, `f` as 0-based levels.
    fn shifted(&self, f: &[Vec<usize>], k: usize, arc: usize, level: usize) -> usize {
        let t = level + k;
        if t < self.p {
            f[t][arc]
        } else {
            let r = t - self.p;
            self.wrap_word(f[r][arc], &f[r])
        }
    }

    fn chain_and_wrap(&self, f: &[Vec<usize>]) -> bool {
        let p = self.p;
        for k in 0..p.saturating_sub(1) {
            if self.strands.iter().any(|&(inn, out, _)| f[k][out] != f[k + 1][inn]) {
                return false;
            }
        }
        self.strands
            .iter()
            .all(|&(inn, out, _)| f[p - 1][out] == self.wrap_word(f[0][inn], &f[0]))
    }

    /// Kernel of `s ↦ f(A^k s)` equals kernel of `f` for `k ∈ 1..p`.
    fn kernel_preserved(&self, f: &[Vec<usize>], powers: std::ops::Range<usize>) -> bool {
        let n = self.rack.order();
        let mut fwd = vec![usize::MAX; n];
        let mut bwd = vec![usize::MAX; n];
        for k in powers {
            fwd.fill(usize::MAX);
            bwd.fill(usize::MAX);
            for level in 0..self.p {
                for arc in 0..self.arcs {
                    let a = f[level][arc];
                    let b = self.shifted(f, k, arc, level);
                    if fwd[a] == usize::MAX && bwd[b] == usize::MAX {
                        fwd[a] = b;
                        bwd[b] = a;
                    } else if fwd[a] != b || bwd[b] != a {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn equivariant(&self, f: &[Vec<usize>]) -> bool {
        let seeds = (0..self.p).flat_map(|level| {
            (0..self.arcs).map(move |arc| (f[level][arc] + 1, self.shifted(f, 1, arc, level) + 1))
        });
        PermutationClosure::close(self.rack, seeds)
            .and_then(|c| c.to_permutation())
            .is_ok()
    }

    fn level_colorings(&self) -> Vec<Vec<usize>> {
        let mut colors = vec![usize::MAX; self.arcs];
        let mut out = Vec::new();
        self.color_from(0, &mut colors, &mut out);
        out.sort();
        out
    }

    fn color_from(&self, start: usize, colors: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(arc) = (start..self.arcs).find(|&a| colors[a] == usize::MAX) else {
            out.push(colors.clone());
            return;
        };
        let mut trail = Vec::new();
        for value in 0..self.rack.order() {
            if self.assign(arc, value, colors, &mut trail) {
                self.color_from(arc + 1, colors, out);
            }
            for a in trail.drain(..) {
                colors[a] = usize::MAX;
            }
        }
    }

    /// Assigns and propagates along crossings; records every set arc in `trail`.
    fn assign(&self, arc: usize, value: usize, colors: &mut [usize], trail: &mut Vec<usize>) -> bool {
        let mut queue = vec![(arc, value)];
        while let Some((a, v)) = queue.pop() {
            if colors[a] != usize::MAX {
                if colors[a] != v {
                    return false;
                }
                continue;
            }
            colors[a] = v;
            trail.push(a);
            for &ci in &self.touching[a] {
                let (o, i, x, pos) = self.crossings[ci];
                let (co, cin, cout) = (colors[o], colors[i], colors[x]);
                if co == usize::MAX {
                    continue;
                }
                if cin != usize::MAX {
                    let want = self.rack.act0(cin, co, pos);
                    if cout == usize::MAX {
                        queue.push((x, want));
                    } else if cout != want {
                        return false;
                    }
                } else if cout != usize::MAX {
                    queue.push((i, self.rack.act0(cout, co, !pos)));
                }
            }
        }
        true
    }

    fn homomorphisms(&self, semantics: Semantics) -> Vec<Vec<Vec<usize>>> {
        let colorings = self.level_colorings();
        let mut by_inputs: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for (idx, c) in colorings.iter().enumerate() {
            let key: Vec<usize> = self.strands.iter().map(|&(inn, _, _)| c[inn]).collect();
            by_inputs.entry(key).or_default().push(idx);
        }
        let mut out: Vec<Vec<Vec<usize>>> = (0..colorings.len())
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut found = Vec::new();
                let mut chosen = vec![first];
                self.extend(&colorings, &by_inputs, &mut chosen, semantics, &mut found);
                found.into_iter()
            })
            .collect();
        out.sort();
        out
    }

    fn extend(
        &self,
        colorings: &[Vec<usize>],
        by_inputs: &HashMap<Vec<usize>, Vec<usize>>,
        chosen: &mut Vec<usize>,
        semantics: Semantics,
        found: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if chosen.len() == self.p {
            let f: Vec<Vec<usize>> = chosen.iter().map(|&i| colorings[i].clone()).collect();
            if self.chain_and_wrap(&f)
                && self.kernel_preserved(&f, 1..self.p)
                && (semantics == Semantics::Presentation || self.equivariant(&f))
            {
                found.push(f);
            }
            return;
        }
        let prev = &colorings[*chosen.last().unwrap()];
        let key: Vec<usize> = self.strands.iter().map(|&(_, out, _)| prev[out]).collect();
        let Some(candidates) = by_inputs.get(&key) else {
            return;
        };
        for &next in candidates {
            chosen.push(next);
            self.extend(colorings, by_inputs, chosen, semantics, found);
            chosen.pop();
        }
    }
}

fn to_zero_based(f: &Homomorphism) -> Vec<Vec<usize>> {
    f.levels
        .iter()
        .map(|l| l.0.iter().map(|&c| c - 1).collect())
        .collect()
}

fn from_zero_based(f: Vec<Vec<usize>>) -> Homomorphism {
    Homomorphism::new(
        f.into_iter()
            .map(|l| LevelColoring(l.into_iter().map(|c| c + 1).collect()))
            .collect(),
    )
}

/// All colorings of the cut-open tangle, sorted lexicographically.
pub fn enumerate_level_colorings(diagram: &LensDiagram, rack: &RackTable) -> Vec<LevelColoring> {
    Plan::new(diagram, rack)
        .level_colorings()
        .into_iter()
        .map(|c| LevelColoring(c.into_iter().map(|v| v + 1).collect()))
        .collect()
}

/// True iff `coloring` satisfies every crossing relation.
pub fn satisfies_crossings(diagram: &LensDiagram, rack: &RackTable, coloring: &LevelColoring) -> bool {
    diagram.crossings().iter().all(|c| {
        let want = if c.sign.is_positive() {
            rack.op(coloring.color(c.under_in), coloring.color(c.over))
        } else {
            rack.inv_op(coloring.color(c.under_in), coloring.color(c.over))
        };
        coloring.color(c.under_out) == want
    })
}

/// `f(A^k (arc, level))`.
pub fn apply_a_power(
    diagram: &LensDiagram,
    rack: &RackTable,
    f: &Homomorphism,
    k: usize,
    arc: ArcId,
    level: usize,
) -> Result<Element, SolverError> {
    let p = diagram.p() as usize;
    if k >= p || level >= p || arc == 0 || arc > diagram.arc_count() {
        return Err(SolverError::IndexOutOfRange {
            arc,
            level,
            power: k,
        });
    }
    let plan = Plan::new(diagram, rack);
    Ok(plan.shifted(&to_zero_based(f), k, arc - 1, level) + 1)
}

/// Chain, wrap and kernel conditions; each level is assumed to satisfy the
/// crossing relations already.
pub fn check_conditions(diagram: &LensDiagram, rack: &RackTable, f: &Homomorphism) -> bool {
    let plan = Plan::new(diagram, rack);
    let z = to_zero_based(f);
    plan.chain_and_wrap(&z) && plan.kernel_preserved(&z, 1..plan.p)
}

/// Kernel check for `A^k` with `k` in `powers` (which may exceed `p - 1`;
/// powers are reduced through `A^p = F`).
pub fn kernel_preserved_for_powers(
    diagram: &LensDiagram,
    rack: &RackTable,
    f: &Homomorphism,
    powers: std::ops::Range<usize>,
) -> bool {
    let plan = Plan::new(diagram, rack);
    let z = to_zero_based(f);
    let p = plan.p;
    // f ∘ A^k as a tuple of levels, built by repeated single shifts
    let mut current = z.clone();
    let mut k = 0;
    for target in powers {
        while k < target {
            current = (0..p)
                .map(|level| (0..plan.arcs).map(|arc| plan.shifted(&current, 1, arc, level)).collect())
                .collect();
            k += 1;
        }
        let same = KernelPartition::of(plan.arcs, p, |a, l| z[l][a - 1])
            == KernelPartition::of(plan.arcs, p, |a, l| current[l][a - 1]);
        if !same {
            return false;
        }
    }
    true
}

/// `f ∘ A`, i.e. the tuple `s ↦ f(A s)`.
pub fn shift_once(diagram: &LensDiagram, rack: &RackTable, f: &Homomorphism) -> Homomorphism {
    let plan = Plan::new(diagram, rack);
    let z = to_zero_based(f);
    from_zero_based(
        (0..plan.p)
            .map(|level| (0..plan.arcs).map(|arc| plan.shifted(&z, 1, arc, level)).collect())
            .collect(),
    )
}

/// True iff the action induced by `A` on the generated image subrack is a
/// well-defined bijection.
pub fn is_equivariant(diagram: &LensDiagram, rack: &RackTable, f: &Homomorphism) -> bool {
    Plan::new(diagram, rack).equivariant(&to_zero_based(f))
}

/// All homomorphisms, sorted by flattened color tuple.
pub fn enumerate_homomorphisms(diagram: &LensDiagram, rack: &RackTable) -> Vec<Homomorphism> {
    enumerate_homomorphisms_with(diagram, rack, Semantics::Presentation)
}

pub fn enumerate_homomorphisms_with(
    diagram: &LensDiagram,
    rack: &RackTable,
    semantics: Semantics,
) -> Vec<Homomorphism> {
    Plan::new(diagram, rack)
        .homomorphisms(semantics)
        .into_iter()
        .map(from_zero_based)
        .collect()
}

pub fn count_homomorphisms(diagram: &LensDiagram, rack: &RackTable) -> usize {
    enumerate_homomorphisms(diagram, rack).len()
}

pub fn count_homomorphisms_with(diagram: &LensDiagram, rack: &RackTable, semantics: Semantics) -> usize {
    enumerate_homomorphisms_with(diagram, rack, semantics).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;
    use crate::rack::validate_rack;

    fn ex3() -> RackTable {
        validate_rack(&[vec![1, 1, 1], vec![2, 3, 3], vec![3, 2, 2]]).unwrap()
    }

    fn dihedral3() -> RackTable {
        validate_rack(&[vec![1, 3, 2], vec![3, 2, 1], vec![2, 1, 3]]).unwrap()
    }

    fn unknot(p: u32) -> LensDiagram {
        parse_diagram(&format!("p {p}\narcs 1\ncomponent 1: 1\n")).unwrap()
    }

    fn hom(levels: &[&[usize]]) -> Homomorphism {
        Homomorphism::new(levels.iter().map(|l| LevelColoring(l.to_vec())).collect())
    }

    const TREFOIL: &str = "p 1
arcs 3
component 1: 1 2 3
crossing + over=3 in=1 out=2
crossing + over=1 in=2 out=3
crossing + over=2 in=3 out=1
";

    #[test]
    fn level_colorings_small() {
        assert_eq!(enumerate_level_colorings(&unknot(3), &ex3()).len(), 3);
        let t = parse_diagram(TREFOIL).unwrap();
        assert_eq!(enumerate_level_colorings(&t, &dihedral3()).len(), 9);
        let one = validate_rack(&[vec![1]]).unwrap();
        assert_eq!(enumerate_level_colorings(&t, &one).len(), 1);
    }

    #[test]
    fn apply_a_power_cases() {
        let u2 = unknot(2);
        let r = ex3();
        let f = hom(&[&[1], &[2]]);
        assert_eq!(apply_a_power(&u2, &r, &f, 0, 1, 1), Ok(2));
        // d = 0: empty wrap word
        assert_eq!(apply_a_power(&u2, &r, &f, 1, 1, 1), Ok(1));
        assert!(apply_a_power(&u2, &r, &f, 2, 1, 0).is_err());
        assert!(apply_a_power(&u2, &r, &f, 0, 2, 0).is_err());

        // one strand, eps = +1: wraps to f_0(x) ▷ f_0(in)
        let d = parse_diagram("p 2\narcs 1\ncomponent 1: 1\nstrand in=1 out=1 eps=+1\n").unwrap();
        let f = hom(&[&[2], &[3]]);
        assert_eq!(apply_a_power(&d, &r, &f, 1, 1, 1), Ok(r.op(2, 2)));
    }

    #[test]
    fn conditions_on_the_unknot() {
        let r = ex3();
        let u2 = unknot(2);
        for a in 1..=3 {
            for b in 1..=3 {
                assert!(check_conditions(&u2, &r, &hom(&[&[a], &[b]])));
            }
        }
        let u3 = unknot(3);
        assert!(!check_conditions(&u3, &r, &hom(&[&[1], &[1], &[2]])));
        assert!(check_conditions(&u3, &r, &hom(&[&[1], &[2], &[3]])));
        assert!(check_conditions(&unknot(1), &r, &hom(&[&[3]])));
    }

    #[test]
    fn counts() {
        assert_eq!(count_homomorphisms(&unknot(2), &ex3()), 9);
        assert_eq!(count_homomorphisms(&unknot(3), &ex3()), 9);
        let t = parse_diagram(TREFOIL).unwrap();
        assert_eq!(count_homomorphisms(&t, &dihedral3()), 9);
    }

    #[test]
    fn equivariant_semantics_is_stricter() {
        // (1, 2) on the unknot in L(2,1) is rejected: 1 ▷ 1 = 1 but 2 ▷ 2 = 3
        let homs = enumerate_homomorphisms_with(&unknot(2), &ex3(), Semantics::Equivariant);
        assert_eq!(homs.len(), 5);
        assert!(homs.iter().all(|h| h.value(1, 0) == h.value(1, 1) || h.value(1, 0) != 1 && h.value(1, 1) != 1));
    }

    #[test]
    fn output_is_sorted() {
        let homs = enumerate_homomorphisms(&unknot(3), &dihedral3());
        let flat: Vec<_> = homs.iter().map(|h| h.flattened()).collect();
        let mut sorted = flat.clone();
        sorted.sort();
        assert_eq!(flat, sorted);
        assert_eq!(flat.len(), 9);
    }

    #[test]
    fn kernel_partition_blocks() {
        let k = KernelPartition::of(1, 3, |_, l| if l == 2 { 2 } else { 1 });
        assert_eq!(k.blocks, vec![vec![(1, 0), (1, 1)], vec![(1, 2)]]);
    }
}
