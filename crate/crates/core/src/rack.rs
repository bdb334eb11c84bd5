//! Finite racks given by their operation tables.
//!
//! Elements are numbered `1..=n`. Entry `(i, j)` of a table is `i ▷ j`: the
//! row is the element being acted on and the column is the acting element.
//! Racks are validated once on construction and immutable afterwards.

use std::fmt;

use thiserror::Error;

use crate::perm::Permutation;

/// A rack element, 1-based.
pub type Element = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RackError {
    #[error("rack table is empty")]
    Empty,
    #[error("rack table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry ({row},{col}) = {value} is outside 1..={order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: i64,
        order: usize,
    },
    #[error("column {0} is not a permutation")]
    ColumnNotPermutation(usize),
    #[error("self-distributivity fails at (i,j,k) = ({i},{j},{k})")]
    SelfDistributivityFailure { i: usize, j: usize, k: usize },
    #[error("unresolved arc reference {0}")]
    UnresolvedReference(usize),
    #[error("rack order {0} exceeds the enumeration limit of 6")]
    OrderTooLarge(usize),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

/// How an input matrix is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// `M[i][j] = i ▷ j`.
    #[default]
    RowActedOn,
    /// `M[i][j] = j ▷ i`; the matrix is transposed before validation.
    Transposed,
}

/// A validated finite rack.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RackTable {
    order: usize,
    // row-major, 0-based values
    table: Vec<usize>,
    inv_table: Vec<usize>,
    rank: u64,
}

/// Checks both rack axioms on `matrix` and builds the table.
///
/// Violations are reported by their first witness in row-major order.
pub fn validate_rack(matrix: &[Vec<i64>]) -> Result<RackTable, RackError> {
    let n = matrix.len();
    if n == 0 {
        return Err(RackError::Empty);
    }
    for (r, row) in matrix.iter().enumerate() {
        if row.len() != n {
            return Err(RackError::NotSquare {
                row: r + 1,
                len: row.len(),
                expected: n,
            });
        }
    }
    let mut table = vec![0usize; n * n];
    for (r, row) in matrix.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            if v < 1 || v as u64 > n as u64 {
                return Err(RackError::EntryOutOfRange {
                    row: r + 1,
                    col: c + 1,
                    value: v,
                    order: n,
                });
            }
            table[r * n + c] = (v - 1) as usize;
        }
    }
    RackTable::from_zero_based(n, table)
}

impl RackTable {
    /// Builds a rack from a 0-based row-major table, checking both axioms.
    pub(crate) fn from_zero_based(n: usize, table: Vec<usize>) -> Result<Self, RackError> {
        let mut inv_table = vec![usize::MAX; n * n];
        for j in 0..n {
            for i in 0..n {
                let v = table[i * n + j];
                if inv_table[v * n + j] != usize::MAX {
                    return Err(RackError::ColumnNotPermutation(j + 1));
                }
                inv_table[v * n + j] = i;
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = table[i * n + j];
                for k in 0..n {
                    let lhs = table[ij * n + k];
                    let rhs = table[table[i * n + k] * n + table[j * n + k]];
                    if lhs != rhs {
                        return Err(RackError::SelfDistributivityFailure {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                        });
                    }
                }
            }
        }
        let mut rack = Self {
            order: n,
            table,
            inv_table,
            rank: 1,
        };
        rack.rank = rack.diagonal().order();
        Ok(rack)
    }

    /// Validates a matrix read under the given convention.
    pub fn from_matrix(matrix: &[Vec<i64>], convention: Convention) -> Result<Self, RackError> {
        match convention {
            Convention::RowActedOn => validate_rack(matrix),
            Convention::Transposed => {
                let n = matrix.len();
                if let Some((r, row)) = matrix.iter().enumerate().find(|(_, r)| r.len() != n) {
                    return Err(RackError::NotSquare {
                        row: r + 1,
                        len: row.len(),
                        expected: n,
                    });
                }
                let t: Vec<Vec<i64>> = (0..n)
                    .map(|c| (0..n).map(|r| matrix[r][c]).collect())
                    .collect();
                validate_rack(&t)
            }
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `i ▷ j`.
    pub fn op(&self, i: Element, j: Element) -> Element {
        self.check(i);
        self.check(j);
        self.table[(i - 1) * self.order + (j - 1)] + 1
    }

    /// `i ▷̄ j`: the unique `z` with `z ▷ j = i`.
    pub fn inv_op(&self, i: Element, j: Element) -> Element {
        self.check(i);
        self.check(j);
        self.inv_table[(i - 1) * self.order + (j - 1)] + 1
    }

    #[inline]
    pub(crate) fn op0(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order + j]
    }

    #[inline]
    pub(crate) fn inv0(&self, i: usize, j: usize) -> usize {
        self.inv_table[i * self.order + j]
    }

    /// `i ▷ j` for `positive`, `i ▷̄ j` otherwise, 0-based.
    #[inline]
    pub(crate) fn act0(&self, i: usize, j: usize, positive: bool) -> usize {
        if positive {
            self.op0(i, j)
        } else {
            self.inv0(i, j)
        }
    }

    fn check(&self, i: Element) {
        assert!(
            (1..=self.order).contains(&i),
            "element {i} outside 1..={}",
            self.order
        );
    }

    /// Rows of the table with 1-based entries.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.op0(i, j) + 1).collect())
            .collect()
    }

    /// Rows of the inverse table, `inv_rows()[i-1][j-1] = i ▷̄ j`.
    pub fn inv_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.inv0(i, j) + 1).collect())
            .collect()
    }

    pub(crate) fn flat_zero_based(&self) -> &[usize] {
        &self.table
    }

    /// The diagonal permutation `x ↦ x ▷ x`.
    pub fn diagonal(&self) -> Permutation {
        Permutation::new((0..self.order).map(|i| self.op0(i, i) + 1).collect())
            .expect("diagonal of a rack is a permutation")
    }

    /// Rack rank: the order of the diagonal permutation.
    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn is_quandle(&self) -> bool {
        self.rank == 1
    }

    /// True iff `z ▷ i = z ▷ j` for every `z`.
    pub fn operator_equivalent(&self, i: Element, j: Element) -> bool {
        self.check(i);
        self.check(j);
        (0..self.order).all(|z| self.op0(z, i - 1) == self.op0(z, j - 1))
    }

    /// Operator-equivalence classes, each sorted, ordered by least member.
    pub fn operator_classes(&self) -> Vec<Vec<Element>> {
        let mut classes: Vec<Vec<Element>> = Vec::new();
        for j in 1..=self.order {
            match classes
                .iter_mut()
                .find(|c| self.operator_equivalent(c[0], j))
            {
                Some(c) => c.push(j),
                None => classes.push(vec![j]),
            }
        }
        classes
    }

    /// Evaluates an operator word left to right starting at `start`.
    pub fn eval_word<F>(&self, start: Element, word: &OpWord, env: F) -> Result<Element, RackError>
    where
        F: Fn(usize) -> Option<Element>,
    {
        self.check(start);
        let mut u = start;
        for letter in &word.letters {
            let y = match letter.operand {
                Operand::Element(e) => e,
                Operand::Arc(a) => env(a).ok_or(RackError::UnresolvedReference(a))?,
            };
            u = if letter.positive {
                self.op(u, y)
            } else {
                self.inv_op(u, y)
            };
        }
        Ok(u)
    }
}

impl fmt::Display for RackTable {
    /// Rack file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rack {}", self.order)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Free function form of [`RackTable::rank`].
pub fn rack_rank(rack: &RackTable) -> u64 {
    rack.rank()
}

/// One letter of an operator word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub operand: Operand,
    /// `true` for `▷`, `false` for `▷̄`.
    pub positive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operand {
    Element(Element),
    /// Symbolic reference to an arc, resolved through an environment.
    Arc(usize),
}

/// A sequence of signed right actions `▷^{±1} y`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OpWord {
    pub letters: Vec<Letter>,
}

impl OpWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, operand: Operand, positive: bool) -> &mut Self {
        self.letters.push(Letter { operand, positive });
        self
    }

    pub fn from_elements(letters: &[(Element, i8)]) -> Self {
        Self {
            letters: letters
                .iter()
                .map(|&(e, s)| Letter {
                    operand: Operand::Element(e),
                    positive: s > 0,
                })
                .collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }
}

/// Parses the rack file format: `rack <n>` followed by `n` rows.
///
/// Blank lines and `#` comments are skipped.
pub fn parse_rack(text: &str, convention: Convention) -> Result<RackTable, RackError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(RackError::Syntax {
        line: 1,
        msg: "missing `rack <n>` header".into(),
    })?;
    let mut words = header.split_whitespace();
    if words.next() != Some("rack") {
        return Err(RackError::Syntax {
            line: hline,
            msg: "expected `rack <n>`".into(),
        });
    }
    let n: usize = words
        .next()
        .and_then(|w| w.parse().ok())
        .filter(|&n: &usize| n > 0)
        .ok_or(RackError::Syntax {
            line: hline,
            msg: "rack order must be a positive integer".into(),
        })?;
    if words.next().is_some() {
        return Err(RackError::Syntax {
            line: hline,
            msg: "trailing tokens after rack order".into(),
        });
    }
    let mut matrix = Vec::with_capacity(n);
    for (lno, line) in lines {
        if matrix.len() == n {
            return Err(RackError::Syntax {
                line: lno,
                msg: format!("more than {n} rows"),
            });
        }
        let row = line
            .split_whitespace()
            .map(|w| w.parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| RackError::Syntax {
                line: lno,
                msg: format!("bad integer: {e}"),
            })?;
        matrix.push(row);
    }
    if matrix.len() != n {
        return Err(RackError::Syntax {
            line: hline,
            msg: format!("expected {n} rows, found {}", matrix.len()),
        });
    }
    RackTable::from_matrix(&matrix, convention)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex3() -> RackTable {
        validate_rack(&[vec![1, 1, 1], vec![2, 3, 3], vec![3, 2, 2]]).unwrap()
    }

    #[test]
    fn small_examples() {
        let r = ex3();
        assert_eq!(r.rank(), 2);
        assert_eq!(r.op(2, 3), 3);
        assert_eq!(r.inv_op(3, 2), 2);
        assert!(!r.is_quandle());

        let t = validate_rack(&[vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(t.rank(), 1);
        assert!(t.is_quandle());
        for i in 1..=2 {
            for j in 1..=2 {
                assert_eq!(t.op(i, j), i);
                assert_eq!(t.inv_op(i, j), i);
                assert!(t.operator_equivalent(i, j));
            }
        }
    }

    #[test]
    fn error_witnesses() {
        assert_eq!(
            validate_rack(&[vec![1, 1], vec![1, 2]]),
            Err(RackError::ColumnNotPermutation(1))
        );
        assert!(matches!(
            validate_rack(&[vec![1, 2], vec![1]]),
            Err(RackError::NotSquare { row: 2, .. })
        ));
        assert!(matches!(
            validate_rack(&[vec![1, 3], vec![2, 1]]),
            Err(RackError::EntryOutOfRange { row: 1, col: 2, value: 3, .. })
        ));
        // columns are permutations but x▷y = y-th rotation is not distributive here
        let bad = vec![vec![2, 3, 1], vec![3, 1, 2], vec![1, 2, 3]];
        assert!(matches!(
            validate_rack(&bad),
            Err(RackError::SelfDistributivityFailure { .. })
        ));
        assert_eq!(validate_rack(&[]), Err(RackError::Empty));
    }

    #[test]
    fn eval_word_left_to_right() {
        let r = ex3();
        assert_eq!(r.eval_word(2, &OpWord::new(), |_| None), Ok(2));
        let w = OpWord::from_elements(&[(3, 1), (2, -1)]);
        // (2 ▷ 3) ▷̄ 2 = 3 ▷̄ 2 = 2
        assert_eq!(r.eval_word(2, &w, |_| None), Ok(2));

        let mut sym = OpWord::new();
        sym.push(Operand::Arc(7), true);
        assert_eq!(
            r.eval_word(2, &sym, |_| None),
            Err(RackError::UnresolvedReference(7))
        );
        assert_eq!(r.eval_word(2, &sym, |a| (a == 7).then_some(2)), Ok(3));
    }

    #[test]
    fn transposed_convention() {
        // Ex3 transposed is not a rack: its rows are not permutations.
        let m = vec![vec![1, 1, 1], vec![2, 3, 3], vec![3, 2, 2]];
        assert!(RackTable::from_matrix(&m, Convention::Transposed).is_err());
        let tq: Vec<Vec<i64>> = vec![vec![1, 2], vec![1, 2]];
        let t = RackTable::from_matrix(&tq, Convention::Transposed).unwrap();
        assert_eq!(t.rows(), vec![vec![1, 1], vec![2, 2]]);
    }

    #[test]
    fn parse_and_display_round_trip() {
        let text = "# example\nrack 3\n1 1 1\n\n2 3 3  # row 2\n3 2 2\n";
        let r = parse_rack(text, Convention::RowActedOn).unwrap();
        assert_eq!(r, ex3());
        assert_eq!(parse_rack(&r.to_string(), Convention::RowActedOn).unwrap(), r);
        assert!(matches!(
            parse_rack("rack 2\n1 1\n", Convention::RowActedOn),
            Err(RackError::Syntax { .. })
        ));
        assert!(matches!(
            parse_rack("rk 2\n", Convention::RowActedOn),
            Err(RackError::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn operator_classes_of_ex3() {
        // columns 2 and 3 of the Ex3 table coincide
        assert_eq!(ex3().operator_classes(), vec![vec![1], vec![2, 3]]);
    }
}
