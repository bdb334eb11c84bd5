//! Exhaustive enumeration of small racks.
//!
//! A table is a rack iff every column `R_b : x ↦ x ▷ b` is a permutation and
//! `R_b ∘ R_a = R_{a ▷ b} ∘ R_b` for all `a, b`. The search picks columns one
//! at a time and uses that identity to force the column of `a ▷ b` as soon as
//! the columns of `a` and `b` are both known.

use rayon::prelude::*;

use crate::rack::{RackError, RackTable};

/// Largest order accepted by [`enumerate_racks`].
pub const MAX_ENUM_ORDER: usize = 6;

type Column = Vec<usize>;

/// All racks of order `n` (`n <= 6`), optionally one per isomorphism class.
///
/// Output is sorted by flattened table, so it does not depend on how the
/// search was scheduled.
pub fn enumerate_racks(n: usize, up_to_iso: bool) -> Result<Vec<RackTable>, RackError> {
    if n > MAX_ENUM_ORDER {
        return Err(RackError::OrderTooLarge(n));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let perms = all_permutations(n);
    let relabelings = if up_to_iso { perms.clone() } else { Vec::new() };

    let mut tables: Vec<Vec<usize>> = perms
        .par_iter()
        .flat_map_iter(|first| {
            let mut cols: Vec<Option<Column>> = vec![None; n];
            let mut found = Vec::new();
            if assign(&mut cols, 0, first.clone()) {
                search(&mut cols, &perms, &mut found);
            }
            found.into_iter()
        })
        .filter(|t| !up_to_iso || is_canonical(t, n, &relabelings))
        .collect();
    tables.sort();
    tables.dedup();

    Ok(tables
        .into_iter()
        .map(|t| RackTable::from_zero_based(n, t).expect("search only emits racks"))
        .collect())
}

fn all_permutations(n: usize) -> Vec<Column> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Column>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Sets column `b` and propagates forced columns. Returns false on conflict;
/// on conflict `cols` may be partially modified and must be restored by the caller.
fn assign(cols: &mut [Option<Column>], b: usize, col: Column) -> bool {
    let mut queue = vec![(b, col)];
    while let Some((b, col)) = queue.pop() {
        match &cols[b] {
            Some(existing) if *existing == col => continue,
            Some(_) => return false,
            None => cols[b] = Some(col),
        }
        let known: Vec<usize> = (0..cols.len()).filter(|&i| cols[i].is_some()).collect();
        for &a in &known {
            for (x, y) in [(a, b), (b, a)] {
                let rx = cols[x].as_ref().unwrap();
                let ry = cols[y].as_ref().unwrap();
                // R_{x ▷ y} = R_y R_x R_y^{-1}
                let target = ry[x];
                let mut ry_inv = vec![0; ry.len()];
                for (i, &v) in ry.iter().enumerate() {
                    ry_inv[v] = i;
                }
                let forced: Column = (0..ry.len()).map(|t| ry[rx[ry_inv[t]]]).collect();
                queue.push((target, forced));
            }
        }
    }
    true
}

fn search(cols: &mut Vec<Option<Column>>, perms: &[Column], found: &mut Vec<Vec<usize>>) {
    let Some(b) = cols.iter().position(|c| c.is_none()) else {
        let n = cols.len();
        let mut table = vec![0; n * n];
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.as_ref().unwrap().iter().enumerate() {
                table[i * n + j] = v;
            }
        }
        found.push(table);
        return;
    };
    for p in perms {
        let saved = cols.clone();
        if assign(cols, b, p.clone()) {
            search(cols, perms, found);
        }
        *cols = saved;
    }
}

/// True iff no relabeling produces a lexicographically smaller flattened table.
fn is_canonical(table: &[usize], n: usize, relabelings: &[Column]) -> bool {
    relabelings
        .iter()
        .all(|s| compare_relabeled(table, n, s) != std::cmp::Ordering::Less)
}

/// Compares the table relabeled by `s` (element `x` renamed `s[x]`) with the original.
fn compare_relabeled(table: &[usize], n: usize, s: &[usize]) -> std::cmp::Ordering {
    let mut inv = vec![0; n];
    for (x, &y) in s.iter().enumerate() {
        inv[y] = x;
    }
    for i in 0..n {
        for j in 0..n {
            let relabeled = s[table[inv[i] * n + inv[j]]];
            match relabeled.cmp(&table[i * n + j]) {
                std::cmp::Ordering::Equal => continue,
                other => return other,
            }
        }
    }
    std::cmp::Ordering::Equal
}

/// Lexicographically least flattened table (1-based) over all relabelings.
pub fn canonical_form(rack: &RackTable) -> Vec<usize> {
    let n = rack.order();
    let table = rack.flat_zero_based();
    let mut best: Option<Vec<usize>> = None;
    for s in all_permutations(n) {
        let mut inv = vec![0; n];
        for (x, &y) in s.iter().enumerate() {
            inv[y] = x;
        }
        let cand: Vec<usize> = (0..n * n)
            .map(|idx| s[table[inv[idx / n] * n + inv[idx % n]]] + 1)
            .collect();
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.unwrap()
}
