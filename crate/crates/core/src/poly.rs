//! Sparse polynomials with positive integer coefficients.

use std::collections::BTreeMap;
use std::fmt;

/// A polynomial over named variables. Terms are keyed by exponent vectors
/// (one entry per variable); zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u64>, u64>,
}

impl Polynomial {
    pub fn zero(vars: Vec<String>) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    /// Variables `q1..qn`.
    pub fn writhe_vars(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("q{i}")).collect()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u64>, u64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[u64]) -> u64 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, exponents: Vec<u64>, coefficient: u64) {
        assert_eq!(exponents.len(), self.vars.len(), "exponent vector length");
        if coefficient == 0 {
            return;
        }
        *self.terms.entry(exponents).or_insert(0) += coefficient;
    }

    /// Sum of all coefficients, i.e. the value at all variables = 1.
    pub fn coefficient_sum(&self) -> u64 {
        self.terms.values().sum()
    }

    /// Sets each named variable to 1 and drops it.
    pub fn specialize_to_one(&self, names: &[&str]) -> Self {
        let keep: Vec<usize> = (0..self.vars.len())
            .filter(|&i| !names.contains(&self.vars[i].as_str()))
            .collect();
        let mut out = Self::zero(keep.iter().map(|&i| self.vars[i].clone()).collect());
        for (e, &c) in &self.terms {
            out.add_term(keep.iter().map(|&i| e[i]).collect(), c);
        }
        out
    }

    /// `header` line then `e1 e2 ...<TAB>coefficient` per term.
    pub fn to_machine(&self, key: &str) -> String {
        let mut s = format!("# {key} vars={}\n", self.vars.join(","));
        for (e, c) in &self.terms {
            let ev: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("{}\t{c}\n", ev.join(" ")));
        }
        s
    }
}

/// Canonical text form of `poly`.
pub fn format_polynomial(poly: &Polynomial) -> String {
    poly.to_string()
}

impl fmt::Display for Polynomial {
    /// Ascending exponent order; `12 + 10*q1`, `4 + 12*x^2`, `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let factors: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(&x, _)| x > 0)
                .map(|(&x, v)| if x == 1 { v.clone() } else { format!("{v}^{x}") })
                .collect();
            match (factors.is_empty(), c) {
                (true, _) => write!(f, "{c}")?,
                (false, 1) => write!(f, "{}", factors.join("*"))?,
                (false, _) => write!(f, "{c}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(vars: &[&str], terms: &[(&[u64], u64)]) -> Polynomial {
        let mut p = Polynomial::zero(vars.iter().map(|s| s.to_string()).collect());
        for (e, c) in terms {
            p.add_term(e.to_vec(), *c);
        }
        p
    }

    #[test]
    fn formatting() {
        assert_eq!(poly(&["q1"], &[(&[0], 12), (&[1], 10)]).to_string(), "12 + 10*q1");
        assert_eq!(poly(&["x"], &[(&[0], 4), (&[2], 12)]).to_string(), "4 + 12*x^2");
        assert_eq!(poly(&["q1"], &[]).to_string(), "0");
        assert_eq!(
            poly(&["q1", "q2"], &[(&[0, 0], 1), (&[1, 1], 7)]).to_string(),
            "1 + 7*q1*q2"
        );
        assert_eq!(
            poly(&["q1", "q2"], &[(&[1, 0], 3), (&[0, 1], 1)]).to_string(),
            "q2 + 3*q1"
        );
        assert_eq!(poly(&[], &[(&[], 1)]).to_string(), "1");
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = poly(&["x"], &[(&[3], 0)]);
        assert!(p.is_zero());
    }

    #[test]
    fn specialization() {
        let p = poly(&["q1", "x"], &[(&[0, 0], 2), (&[0, 1], 3), (&[1, 1], 5)]);
        assert_eq!(p.specialize_to_one(&["x"]).to_string(), "5 + 5*q1");
        assert_eq!(p.specialize_to_one(&["q1"]).to_string(), "2 + 8*x");
        assert_eq!(p.specialize_to_one(&["q1", "x"]).to_string(), "10");
        assert_eq!(p.coefficient_sum(), 10);
    }

    #[test]
    fn machine_format() {
        let p = poly(&["q1", "q2"], &[(&[0, 0], 1), (&[1, 1], 7)]);
        assert_eq!(p.to_machine("phi_W"), "# phi_W vars=q1,q2\n0 0\t1\n1 1\t7\n");
    }
}
