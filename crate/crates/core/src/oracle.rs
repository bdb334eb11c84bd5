//! Brute-force reference enumerator.
//!
//! Walks every map from the generators `(arc, level)` to the rack and keeps
//! those meeting the crossing, chain/wrap and kernel conditions, each checked
//! directly from its definition. Shares no search code with [`crate::solver`].

use crate::diagram::LensDiagram;
use crate::rack::RackTable;
use crate::solver::{Homomorphism, LevelColoring, SolverError};

/// Largest `|X|^(arcs * p)` the oracle accepts.
pub const ORACLE_BUDGET: u128 = 10_000_000;

pub fn oracle_enumerate_homomorphisms(
    diagram: &LensDiagram,
    rack: &RackTable,
) -> Result<Vec<Homomorphism>, SolverError> {
    let n = rack.order();
    let arcs = diagram.arc_count();
    let p = diagram.p() as usize;
    let cells = arcs * p;
    let size = (n as u128).checked_pow(cells as u32).unwrap_or(u128::MAX);
    if size > ORACLE_BUDGET {
        return Err(SolverError::SearchSpaceTooLarge {
            size,
            budget: ORACLE_BUDGET,
        });
    }

    // values[level * arcs + (arc - 1)], 1-based colors
    let mut values = vec![1usize; cells];
    let mut out = Vec::new();
    loop {
        let f = |arc: usize, level: usize| values[level * arcs + arc - 1];
        if crossings_hold(diagram, rack, &f, p)
            && presentation_relations_hold(diagram, rack, &f, p)
            && kernel_condition_holds(diagram, rack, &f, p)
        {
            out.push(Homomorphism::new(
                (0..p)
                    .map(|l| LevelColoring(values[l * arcs..(l + 1) * arcs].to_vec()))
                    .collect(),
            ));
        }
        // odometer with the last cell fastest, so output is lexicographic
        let mut i = cells;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if values[i] < n {
                values[i] += 1;
                break;
            }
            values[i] = 1;
        }
    }
}

fn crossings_hold(
    d: &LensDiagram,
    rack: &RackTable,
    f: &impl Fn(usize, usize) -> usize,
    p: usize,
) -> bool {
    (0..p).all(|k| {
        d.crossings().iter().all(|c| {
            let lhs = f(c.under_out, k);
            if c.sign.is_positive() {
                rack.op(f(c.under_in, k), f(c.over, k)) == lhs
            } else {
                // out = in ▷̄ over  ⇔  out ▷ over = in
                rack.op(lhs, f(c.over, k)) == f(c.under_in, k)
            }
        })
    })
}

/// `F` evaluated at level `r`: `x ▷^{ε_d} f_r(in_d) … ▷^{ε_1} f_r(in_1)`.
fn twist(d: &LensDiagram, rack: &RackTable, f: &impl Fn(usize, usize) -> usize, x: usize, r: usize) -> usize {
    let mut u = x;
    for s in d.strands().iter().rev() {
        let y = f(s.in_arc, r);
        u = if s.eps.is_positive() {
            rack.op(u, y)
        } else {
            (1..=rack.order()).find(|&z| rack.op(z, y) == u).unwrap()
        };
    }
    u
}

fn presentation_relations_hold(
    d: &LensDiagram,
    rack: &RackTable,
    f: &impl Fn(usize, usize) -> usize,
    p: usize,
) -> bool {
    d.strands().iter().all(|s| {
        (0..p - 1).all(|k| f(s.out_arc, k) == f(s.in_arc, k + 1))
            && f(s.out_arc, p - 1) == twist(d, rack, f, f(s.in_arc, 0), 0)
    })
}

/// `f(A^k (arc, j))` for `0 <= j, k < p`.
fn f_after_a_power(
    d: &LensDiagram,
    rack: &RackTable,
    f: &impl Fn(usize, usize) -> usize,
    p: usize,
    k: usize,
    arc: usize,
    j: usize,
) -> usize {
    if j + k <= p - 1 {
        f(arc, j + k)
    } else {
        let r = (j + k) % p;
        twist(d, rack, f, f(arc, r), r)
    }
}

/// `f(x) = f(y) ⇔ f(A^k x) = f(A^k y)` over all generator pairs and `0 <= k < p`.
fn kernel_condition_holds(
    d: &LensDiagram,
    rack: &RackTable,
    f: &impl Fn(usize, usize) -> usize,
    p: usize,
) -> bool {
    let gens: Vec<(usize, usize)> = (0..p)
        .flat_map(|j| (1..=d.arc_count()).map(move |a| (a, j)))
        .collect();
    for k in 0..p {
        let shifted: Vec<usize> = gens
            .iter()
            .map(|&(a, j)| f_after_a_power(d, rack, f, p, k, a, j))
            .collect();
        for (x, &(ax, jx)) in gens.iter().enumerate() {
            for (y, &(ay, jy)) in gens.iter().enumerate() {
                if (f(ax, jx) == f(ay, jy)) != (shifted[x] == shifted[y]) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;
    use crate::rack::validate_rack;

    #[test]
    fn unknot_in_l21() {
        let r = validate_rack(&[vec![1, 1, 1], vec![2, 3, 3], vec![3, 2, 2]]).unwrap();
        let u = parse_diagram("p 2\narcs 1\ncomponent 1: 1\n").unwrap();
        let homs = oracle_enumerate_homomorphisms(&u, &r).unwrap();
        assert_eq!(homs.len(), 9);
    }

    #[test]
    fn unknot_in_l31_constant_or_distinct() {
        let r = validate_rack(&[vec![1, 1, 1], vec![2, 3, 3], vec![3, 2, 2]]).unwrap();
        let u = parse_diagram("p 3\narcs 1\ncomponent 1: 1\n").unwrap();
        let homs = oracle_enumerate_homomorphisms(&u, &r).unwrap();
        assert_eq!(homs.len(), 9);
        for h in homs {
            let v: Vec<_> = h.flattened();
            let all_eq = v[0] == v[1] && v[1] == v[2];
            let all_ne = v[0] != v[1] && v[1] != v[2] && v[0] != v[2];
            assert!(all_eq || all_ne);
        }
    }

    #[test]
    fn trivial_target_rack() {
        let one = validate_rack(&[vec![1]]).unwrap();
        let d = parse_diagram("p 3\narcs 2\ncomponent 1: 1\ncomponent 2: 2\ncrossing + over=2 in=1 out=1\ncrossing + over=1 in=2 out=2\n").unwrap();
        assert_eq!(oracle_enumerate_homomorphisms(&d, &one).unwrap().len(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let r = validate_rack(&[vec![1, 1, 1], vec![2, 3, 3], vec![3, 2, 2]]).unwrap();
        let u = parse_diagram("p 15\narcs 1\ncomponent 1: 1\n").unwrap();
        assert!(matches!(
            oracle_enumerate_homomorphisms(&u, &r),
            Err(SolverError::SearchSpaceTooLarge { .. })
        ));
    }
}
