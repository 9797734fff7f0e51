//! Python bindings for the `fdds` crate.
//!
//! Systems and trees are immutable value objects. Equality on `Fdds` is
//! isomorphism, so equal systems hash alike.

#[pyo3::pymodule]
mod fdds_py {
    use std::collections::hash_map::DefaultHasher;
    use std::hash::{Hash, Hasher};

    use fdds::solvers::{self, ExtremalMode};
    use fdds::{Certificate, Forest, SolveOutcome, Status};
    use pyo3::basic::CompareOp;
    use pyo3::exceptions::{PyIOError, PyValueError};
    use pyo3::prelude::*;

    fn value_error(e: impl std::fmt::Display) -> PyErr {
        PyValueError::new_err(e.to_string())
    }

    /// A finite discrete-time dynamical system given by its successor map.
    #[pyclass(name = "Fdds", frozen, skip_from_py_object, module = "fdds_py")]
    #[derive(Clone)]
    pub struct PyFdds {
        inner: fdds::Fdds,
    }

    impl From<fdds::Fdds> for PyFdds {
        fn from(inner: fdds::Fdds) -> Self {
            PyFdds { inner }
        }
    }

    #[pymethods]
    impl PyFdds {
        /// Builds a system from `succ`, where node `i` maps to `succ[i]`.
        #[new]
        fn new(succ: Vec<usize>) -> PyResult<Self> {
            fdds::Fdds::from_succ(succ)
                .map(Into::into)
                .map_err(value_error)
        }

        #[staticmethod]
        fn empty() -> Self {
            fdds::Fdds::empty().into()
        }

        #[staticmethod]
        fn fixed_point() -> Self {
            fdds::Fdds::fixed_point().into()
        }

        #[staticmethod]
        fn cycle(p: usize) -> PyResult<Self> {
            if p == 0 {
                return Err(PyValueError::new_err("cycle length must be positive"));
            }
            Ok(fdds::Fdds::cycle(p).into())
        }

        /// Parses the line format `i j` (meaning `f(i) = j`).
        #[staticmethod]
        fn parse(text: &str) -> PyResult<Self> {
            fdds::io::parse_fdds(text)
                .map(Into::into)
                .map_err(value_error)
        }

        #[staticmethod]
        fn load(path: &str) -> PyResult<Self> {
            let text =
                std::fs::read_to_string(path).map_err(|e| PyIOError::new_err(e.to_string()))?;
            Self::parse(&text)
        }

        #[getter]
        fn succ(&self) -> Vec<usize> {
            self.inner.successors().to_vec()
        }

        fn __len__(&self) -> usize {
            self.inner.len()
        }

        fn sum(&self, other: &PyFdds) -> Self {
            self.inner.sum(&other.inner).into()
        }

        fn product(&self, other: &PyFdds) -> Self {
            self.inner.product(&other.inner).into()
        }

        fn power(&self, k: u32) -> Self {
            self.inner.power(k).into()
        }

        fn __add__(&self, other: &PyFdds) -> Self {
            self.sum(other)
        }

        fn __mul__(&self, other: &PyFdds) -> Self {
            self.product(other)
        }

        fn __pow__(&self, k: u32, _modulo: Option<Py<PyAny>>) -> Self {
            self.power(k)
        }

        fn canonical_form(&self) -> String {
            self.inner.canonical_form()
        }

        fn is_isomorphic(&self, other: &PyFdds) -> bool {
            self.inner.is_isomorphic(&other.inner)
        }

        fn is_connected(&self) -> bool {
            self.inner.is_connected()
        }

        fn component_count(&self) -> usize {
            self.inner.component_count()
        }

        /// Connected components as separate systems.
        fn components(&self) -> Vec<PyFdds> {
            self.inner.split().into_iter().map(Into::into).collect()
        }

        fn periodic_nodes(&self) -> Vec<usize> {
            self.inner.periodic_nodes()
        }

        #[getter]
        fn depth(&self) -> usize {
            self.inner.depth()
        }

        #[getter]
        fn alpha(&self) -> usize {
            self.inner.alpha()
        }

        /// The system in canonical numbering, as text in the line format.
        fn to_text(&self) -> String {
            fdds::io::format_fdds(&self.inner)
        }

        fn to_dot(&self) -> String {
            fdds::io::to_dot(&self.inner)
        }

        /// Trees of the unroll cut at depth `n`, one per periodic node.
        fn cut_unroll(&self, n: usize) -> Vec<PyTree> {
            forest_to_list(&fdds::unroll::cut_unroll(&self.inner, n).forest)
        }

        fn required_depth(&self) -> usize {
            fdds::unroll::required_depth(&self.inner)
        }

        fn __eq__(&self, other: &PyFdds) -> bool {
            self.inner.is_isomorphic(&other.inner)
        }

        fn __hash__(&self) -> u64 {
            let mut h = DefaultHasher::new();
            self.inner.canonical_form().hash(&mut h);
            h.finish()
        }

        fn __repr__(&self) -> String {
            format!("Fdds({:?})", self.inner.successors())
        }
    }

    /// A finite rooted tree, up to isomorphism.
    #[pyclass(name = "Tree", frozen, skip_from_py_object, module = "fdds_py")]
    #[derive(Clone)]
    pub struct PyTree {
        inner: fdds::Tree,
    }

    impl From<fdds::Tree> for PyTree {
        fn from(inner: fdds::Tree) -> Self {
            PyTree { inner }
        }
    }

    fn forest_to_list(f: &Forest) -> Vec<PyTree> {
        f.trees().cloned().map(Into::into).collect()
    }

    fn list_to_forest(trees: &[PyRef<'_, PyTree>]) -> Forest {
        Forest::from_trees(trees.iter().map(|t| t.inner.clone()))
    }

    #[pymethods]
    impl PyTree {
        /// Parses nested brackets, `"()"` being a single node.
        #[new]
        fn new(brackets: &str) -> PyResult<Self> {
            fdds::Tree::from_brackets(brackets)
                .map(Into::into)
                .map_err(value_error)
        }

        /// Builds a tree from parent links; exactly one entry is `None`.
        #[staticmethod]
        fn from_parents(parents: Vec<Option<usize>>) -> PyResult<Self> {
            fdds::Tree::from_parents(&parents)
                .map(Into::into)
                .map_err(value_error)
        }

        #[staticmethod]
        fn leaf() -> Self {
            fdds::Tree::leaf().into()
        }

        #[staticmethod]
        fn path(depth: usize) -> Self {
            fdds::Tree::path(depth).into()
        }

        #[getter]
        fn depth(&self) -> usize {
            self.inner.depth()
        }

        #[getter]
        fn size(&self) -> u64 {
            self.inner.size()
        }

        fn children(&self) -> Vec<PyTree> {
            forest_to_list(self.inner.children())
        }

        fn product(&self, other: &PyTree) -> Self {
            self.inner.product(&other.inner).into()
        }

        fn power(&self, k: u32) -> Self {
            self.inner.power(k).into()
        }

        fn cut(&self, depth: usize) -> Self {
            self.inner.cut(depth).into()
        }

        fn code(&self) -> Vec<u64> {
            self.inner.code().0
        }

        fn level_counts(&self) -> Vec<u64> {
            self.inner.level_counts()
        }

        fn __mul__(&self, other: &PyTree) -> Self {
            self.product(other)
        }

        fn __richcmp__(&self, other: &PyTree, op: CompareOp) -> bool {
            op.matches(self.inner.cmp(&other.inner))
        }

        fn __hash__(&self) -> u64 {
            let mut h = DefaultHasher::new();
            self.inner.hash(&mut h);
            h.finish()
        }

        fn __str__(&self) -> String {
            self.inner.to_brackets()
        }

        fn __repr__(&self) -> String {
            format!("Tree({:?})", self.inner.to_brackets())
        }
    }

    /// Result of a solver: `status` is `"found"`, `"not-divisible"` or
    /// `"not-supported"`; `solution` is set only when found and verified.
    #[pyclass(name = "SolveOutcome", frozen, module = "fdds_py")]
    pub struct PyOutcome {
        #[pyo3(get)]
        status: &'static str,
        #[pyo3(get)]
        solution: Option<PyFdds>,
        /// Depth of the cut-unroll certificate, when the check was done on cuts.
        #[pyo3(get)]
        certified_depth: Option<usize>,
    }

    impl From<SolveOutcome> for PyOutcome {
        fn from(out: SolveOutcome) -> Self {
            let status = match out.status {
                Status::Found => "found",
                Status::NotDivisible => "not-divisible",
                Status::NotSupported => "not-supported",
            };
            let certified_depth = match out.certificate {
                Some(Certificate::CutProduct { n, .. }) => Some(n),
                _ => None,
            };
            PyOutcome {
                status,
                solution: out
                    .solution
                    .filter(|_| out.status == Status::Found)
                    .map(Into::into),
                certified_depth,
            }
        }
    }

    #[pymethods]
    impl PyOutcome {
        fn __bool__(&self) -> bool {
            self.status == "found"
        }

        fn __repr__(&self) -> String {
            match &self.solution {
                Some(x) => format!("SolveOutcome({}, {})", self.status, x.__repr__()),
                None => format!("SolveOutcome({})", self.status),
            }
        }
    }

    /// Connected `X` with `a * X = b`.
    #[pyfunction]
    fn divide_connected(a: &PyFdds, b: &PyFdds) -> PyOutcome {
        solvers::divide_connected(&a.inner, &b.inner).into()
    }

    /// Connected `X` with `X ** k = a`.
    #[pyfunction]
    fn root_connected(a: &PyFdds, k: u32) -> PyOutcome {
        solvers::root_connected(&a.inner, k).into()
    }

    /// Connected `X` with `a * X ** k = b`.
    #[pyfunction]
    fn solve_axk(a: &PyFdds, b: &PyFdds, k: u32) -> PyOutcome {
        solvers::solve_axk(&a.inner, &b.inner, k).into()
    }

    /// `X` whose unroll is the quotient of the unrolls of `b` and `a`.
    #[pyfunction]
    fn unroll_divide(a: &PyFdds, b: &PyFdds) -> PyOutcome {
        solvers::unroll_divide(&a.inner, &b.inner).into()
    }

    /// Component-minimal or component-maximal `X` with `a * X = b`.
    #[pyfunction]
    #[pyo3(signature = (a, b, mode = "minimal"))]
    fn divide_extremal(a: &PyFdds, b: &PyFdds, mode: &str) -> PyResult<PyOutcome> {
        let mode = match mode {
            "minimal" => ExtremalMode::Minimal,
            "maximal" => ExtremalMode::Maximal,
            other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
        };
        Ok(solvers::solve_component_extremal(&a.inner, &b.inner, mode).into())
    }

    /// The tree `x` with `a * x = b`, or `None`.
    #[pyfunction]
    fn tree_divide(b: &PyTree, a: &PyTree) -> Option<PyTree> {
        fdds::tree_divide(&b.inner, &a.inner).map(Into::into)
    }

    /// The forest `R` with `R ** k = a`, or `None`.
    #[pyfunction]
    fn root_forest(a: Vec<PyRef<'_, PyTree>>, k: u32) -> Option<Vec<PyTree>> {
        solvers::root_forest(&list_to_forest(&a), k).map(|r| forest_to_list(&r))
    }

    /// Every class `X` with `a * X = b`, by exhaustive search (small inputs only).
    #[pyfunction]
    #[pyo3(signature = (a, b, connected = false))]
    fn brute_divide(a: &PyFdds, b: &PyFdds, connected: bool) -> PyResult<Vec<PyFdds>> {
        fdds::oracle::brute_divide(&a.inner, &b.inner, connected)
            .map(|v| v.into_iter().map(Into::into).collect())
            .map_err(value_error)
    }

    #[allow(non_upper_case_globals)]
    #[pymodule_export]
    const __version__: &str = env!("CARGO_PKG_VERSION");
}

pub use fdds_py::{PyFdds, PyOutcome, PyTree};
