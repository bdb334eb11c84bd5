//! Python module `pylensrack`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use lensrack::invariants::{
    integral_invariant_using, symmetry_invariant_using, writhe_enhanced_invariant_using,
    writhe_symmetry_invariant_using,
};
use lensrack::{
    enumerate_homomorphisms_with, oracle_enumerate_homomorphisms, parse_diagram, parse_rack, serialize_diagram,
    validate_rack, Convention, Enumerator, LensDiagram, Polynomial, RackTable, Semantics,
};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn convention(transposed: bool) -> Convention {
    if transposed {
        Convention::Transposed
    } else {
        Convention::RowActedOn
    }
}

fn enumerator(oracle: bool, semantics: &str) -> PyResult<Enumerator> {
    if oracle {
        return Ok(Enumerator::Oracle);
    }
    match semantics {
        "presentation" => Ok(Enumerator::Search(Semantics::Presentation)),
        "equivariant" => Ok(Enumerator::Search(Semantics::Equivariant)),
        other => Err(PyValueError::new_err(format!("unknown semantics {other:?}"))),
    }
}

/// A finite rack given by its operation table, `table[i][j] = i ▷ j`.
#[pyclass(name = "Rack", module = "pylensrack", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyRack(RackTable);

#[pymethods]
impl PyRack {
    #[new]
    #[pyo3(signature = (matrix, transposed = false))]
    fn new(matrix: Vec<Vec<i64>>, transposed: bool) -> PyResult<Self> {
        RackTable::from_matrix(&matrix, convention(transposed))
            .map(PyRack)
            .map_err(value_error)
    }

    /// Parses the `rack <n>` text format.
    #[staticmethod]
    #[pyo3(signature = (text, transposed = false))]
    fn parse(text: &str, transposed: bool) -> PyResult<Self> {
        parse_rack(text, convention(transposed)).map(PyRack).map_err(value_error)
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn rank(&self) -> u64 {
        self.0.rank()
    }

    fn is_quandle(&self) -> bool {
        self.0.is_quandle()
    }

    fn op(&self, i: usize, j: usize) -> PyResult<usize> {
        self.check(i)?;
        self.check(j)?;
        Ok(self.0.op(i, j))
    }

    fn inv_op(&self, i: usize, j: usize) -> PyResult<usize> {
        self.check(i)?;
        self.check(j)?;
        Ok(self.0.inv_op(i, j))
    }

    fn rows(&self) -> Vec<Vec<usize>> {
        self.0.rows()
    }

    fn operator_classes(&self) -> Vec<Vec<usize>> {
        self.0.operator_classes()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Rack(order={}, rank={})", self.0.order(), self.0.rank())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0.rows() == other.0.rows()
    }
}

impl PyRack {
    fn check(&self, x: usize) -> PyResult<()> {
        if (1..=self.0.order()).contains(&x) {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!("element {x} outside 1..={}", self.0.order())))
        }
    }
}

/// A lens diagram of a link in L(p,1).
#[pyclass(name = "Diagram", module = "pylensrack", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyDiagram(LensDiagram);

#[pymethods]
impl PyDiagram {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_diagram(text).map(PyDiagram).map_err(value_error)
    }

    #[getter]
    fn p(&self) -> u32 {
        self.0.p()
    }

    #[getter]
    fn arc_count(&self) -> usize {
        self.0.arc_count()
    }

    #[getter]
    fn component_count(&self) -> usize {
        self.0.component_count()
    }

    /// Number of strands through the disk.
    #[getter]
    fn d(&self) -> usize {
        self.0.d()
    }

    fn is_affine(&self) -> bool {
        self.0.is_affine()
    }

    fn writhe_vector(&self) -> Vec<i64> {
        self.0.writhe_vector()
    }

    /// `component` is 0-based.
    #[pyo3(signature = (component, count = 1))]
    fn add_positive_kinks(&self, component: usize, count: u64) -> PyResult<Self> {
        self.0
            .add_positive_kinks(component, count)
            .map(PyDiagram)
            .map_err(value_error)
    }

    fn apply_omega2(&self, moving_arc: usize, over_arc: usize) -> PyResult<Self> {
        self.0
            .apply_omega2(moving_arc, over_arc)
            .map(PyDiagram)
            .map_err(value_error)
    }

    fn mirrored(&self) -> Self {
        PyDiagram(self.0.mirrored())
    }

    fn __str__(&self) -> String {
        serialize_diagram(&self.0)
    }

    fn __repr__(&self) -> String {
        format!(
            "Diagram(p={}, arcs={}, components={}, d={})",
            self.0.p(),
            self.0.arc_count(),
            self.0.component_count(),
            self.0.d()
        )
    }
}

/// An invariant value: variable names and `{exponents: coefficient}`.
#[pyclass(name = "Polynomial", module = "pylensrack", frozen)]
pub struct PyPolynomial(Polynomial);

#[pymethods]
impl PyPolynomial {
    #[getter]
    fn vars(&self) -> Vec<String> {
        self.0.vars().to_vec()
    }

    #[getter]
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (exps, c) in self.0.terms() {
            d.set_item(PyTuple::new(py, exps)?, c)?;
        }
        Ok(d)
    }

    fn coefficient_sum(&self) -> u64 {
        self.0.coefficient_sum()
    }

    fn specialize_to_one(&self, names: Vec<String>) -> Self {
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        PyPolynomial(self.0.specialize_to_one(&refs))
    }

    fn to_machine(&self, key: &str) -> String {
        self.0.to_machine(key)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({:?})", self.0.to_string())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

/// Homomorphisms as lists of levels, each a list of arc colors.
#[pyfunction]
#[pyo3(signature = (diagram, rack, oracle = false, semantics = "presentation"))]
fn homomorphisms(
    py: Python<'_>,
    diagram: &PyDiagram,
    rack: &PyRack,
    oracle: bool,
    semantics: &str,
) -> PyResult<Vec<Vec<Vec<usize>>>> {
    let e = enumerator(oracle, semantics)?;
    let homs = py.detach(|| match e {
        Enumerator::Oracle => oracle_enumerate_homomorphisms(&diagram.0, &rack.0),
        Enumerator::Search(s) => Ok(enumerate_homomorphisms_with(&diagram.0, &rack.0, s)),
    });
    Ok(homs
        .map_err(value_error)?
        .iter()
        .map(|h| h.levels().iter().map(|l| l.colors().to_vec()).collect())
        .collect())
}

#[pyfunction]
#[pyo3(signature = (diagram, rack, oracle = false, semantics = "presentation"))]
fn count_homomorphisms(
    py: Python<'_>,
    diagram: &PyDiagram,
    rack: &PyRack,
    oracle: bool,
    semantics: &str,
) -> PyResult<usize> {
    homomorphisms(py, diagram, rack, oracle, semantics).map(|h| h.len())
}

/// `kind` is one of `z`, `w`, `sym`, `wsym`.
#[pyfunction]
#[pyo3(signature = (diagram, rack, kind = "z", oracle = false, semantics = "presentation"))]
fn invariant(
    py: Python<'_>,
    diagram: &PyDiagram,
    rack: &PyRack,
    kind: &str,
    oracle: bool,
    semantics: &str,
) -> PyResult<PyPolynomial> {
    let e = enumerator(oracle, semantics)?;
    let (d, r) = (&diagram.0, &rack.0);
    let poly = py.detach(|| -> Result<Polynomial, String> {
        match kind {
            "z" => {
                let z = integral_invariant_using(d, r, e).map_err(|e| e.to_string())?;
                let mut p = Polynomial::zero(vec![]);
                p.add_term(vec![], z);
                Ok(p)
            }
            "w" => writhe_enhanced_invariant_using(d, r, e).map_err(|e| e.to_string()),
            "sym" => symmetry_invariant_using(d, r, e).map_err(|e| e.to_string()),
            "wsym" => writhe_symmetry_invariant_using(d, r, e).map_err(|e| e.to_string()),
            other => Err(format!("unknown invariant kind {other:?}")),
        }
    });
    poly.map(PyPolynomial).map_err(PyValueError::new_err)
}

#[pyfunction]
#[pyo3(signature = (n, up_to_iso = false))]
fn enumerate_racks(py: Python<'_>, n: usize, up_to_iso: bool) -> PyResult<Vec<PyRack>> {
    let racks = py
        .detach(|| lensrack::enumerate_racks(n, up_to_iso))
        .map_err(value_error)?;
    Ok(racks.into_iter().map(PyRack).collect())
}

/// Raises `ValueError` with the first witness when `matrix` is not a rack.
#[pyfunction]
fn check_rack(matrix: Vec<Vec<i64>>) -> PyResult<()> {
    validate_rack(&matrix).map(|_| ()).map_err(value_error)
}

#[pymodule]
fn pylensrack(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRack>()?;
    m.add_class::<PyDiagram>()?;
    m.add_class::<PyPolynomial>()?;
    m.add_function(wrap_pyfunction!(homomorphisms, m)?)?;
    m.add_function(wrap_pyfunction!(count_homomorphisms, m)?)?;
    m.add_function(wrap_pyfunction!(invariant, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_racks, m)?)?;
    m.add_function(wrap_pyfunction!(check_rack, m)?)?;
    Ok(())
}
