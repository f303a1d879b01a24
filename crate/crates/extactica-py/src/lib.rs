//! Python bindings: a thin wrapper class around `extactica::VectorField`
//! plus free functions for polynomial utilities, bounds and pencil analysis.
//! Structured results are returned as JSON strings with the same schemas as
//! the command-line reports.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use extactica::{parse_polynomial, parse_vector_field, render, MPoly};

fn err(e: extactica::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn poly(text: &str, vars: &[String]) -> PyResult<MPoly> {
    let vars = std::sync::Arc::new(vars.to_vec());
    parse_polynomial(text, &vars).map_err(err)
}

/// A polynomial vector field on the plane, affine or projective.
#[pyclass(name = "VectorField")]
struct PyVectorField {
    inner: extactica::VectorField,
}

#[pymethods]
impl PyVectorField {
    /// Parse from the text form or the JSON field schema.
    #[new]
    fn new(source: &str) -> PyResult<Self> {
        let parsed = parse_vector_field(source).map_err(err)?;
        Ok(PyVectorField {
            inner: extactica::VectorField::from_parsed(parsed).map_err(err)?,
        })
    }

    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    fn kind(&self) -> String {
        format!("{:?}", self.inner.kind()).to_lowercase()
    }

    fn vars(&self) -> Vec<String> {
        self.inner.geometric_vars().to_vec()
    }

    fn coefficients(&self) -> Vec<String> {
        self.inner.coefficients().iter().map(render).collect()
    }

    /// Apply the field to a polynomial (Lie derivative), as canonical text.
    fn apply(&self, f: &str) -> PyResult<String> {
        let f = poly(f, self.inner.all_vars())?;
        Ok(render(&self.inner.lie_derivative(&f).map_err(err)?))
    }

    /// JSON report for the n-th extactic polynomial.
    fn extactic(&self, n: u32) -> PyResult<String> {
        let rep = extactica::extactic(&self.inner, n).map_err(err)?;
        let obj = serde_json::json!({
            "n": n,
            "polynomial": render(&rep.polynomial),
            "basis": rep.basis.iter().map(render).collect::<Vec<_>>(),
            "expected_degree": rep.expected_degree,
            "row_degrees": rep.row_degrees,
            "vanished": rep.vanished,
        });
        Ok(obj.to_string())
    }

    /// Smallest degree up to `dmax` with an identically vanishing extactic
    /// polynomial, i.e. the degree of a rational first integral.
    fn first_integral_degree(&self, dmax: u32) -> PyResult<Option<u32>> {
        extactica::first_integral_degree(&self.inner, dmax).map_err(err)
    }

    /// Invariance certificate `(curve, cofactor, invariant)`.
    fn invariance(&self, curve: &str) -> PyResult<(String, String, bool)> {
        let c = poly(curve, self.inner.all_vars())?;
        let cert = extactica::invariance_cofactor(&self.inner, &c).map_err(err)?;
        Ok((render(&cert.curve), render(&cert.cofactor), cert.invariant))
    }

    /// Rational invariant lines as `(line, cofactor)` pairs.
    fn invariant_lines(&self) -> PyResult<Vec<(String, String)>> {
        let lines = extactica::invariant_lines(&self.inner).map_err(err)?;
        Ok(lines
            .iter()
            .map(|c| (render(&c.curve), render(&c.cofactor)))
            .collect())
    }

    /// JSON report of the degree/count bounds at level n.
    fn bounds(&self, n: u32) -> String {
        let d = self.inner.degree();
        let cc = extactica::curve_count_bound(d, n);
        let jb = extactica::jouanolou_bound(d);
        serde_json::json!({
            "degree": d,
            "n": n,
            "solution_count_bound": extactica::solution_count_bound(d, n),
            "curve_count_bound": { "exact": cc.exact.to_string(), "floor": cc.floor },
            "jouanolou_bound": { "exact": jb.exact.to_string(), "floor": jb.floor },
            "field_extension_bound": extactica::field_extension_bound(d, n),
        })
        .to_string()
    }
}

/// Degree of E_n for a degree-d field.
#[pyfunction]
fn expected_degree(d: u32, n: u32) -> i64 {
    extactica::expected_degree(d, n)
}

/// Greatest common divisor of two polynomials over the given variables.
#[pyfunction]
fn gcd(p: &str, q: &str, vars: Vec<String>) -> PyResult<String> {
    let a = poly(p, &vars)?;
    let b = poly(q, &vars)?;
    Ok(render(&extactica::gcd(&a, &b).map_err(err)?))
}

/// Square-free part of a polynomial over the given variables.
#[pyfunction]
fn squarefree_part(p: &str, vars: Vec<String>) -> PyResult<String> {
    let a = poly(p, &vars)?;
    Ok(render(&extactica::squarefree_part(&a).map_err(err)?))
}

/// JSON pencil report for `s*X + t*Y` at level n.
#[pyfunction]
fn family(field_x: &str, field_y: &str, n: u32) -> PyResult<String> {
    let fx = extactica::VectorField::from_parsed(parse_vector_field(field_x).map_err(err)?)
        .map_err(err)?;
    let fy = extactica::VectorField::from_parsed(parse_vector_field(field_y).map_err(err)?)
        .map_err(err)?;
    let rep = extactica::family_analysis(&fx, &fy, n).map_err(err)?;
    let obj = serde_json::json!({
        "pencil_degree": rep.pencil_degree,
        "n": rep.n,
        "params": [rep.param_names.0, rep.param_names.1],
        "gcd_form": render(&rep.gcd_form),
        "rational_roots": rep.rational_roots.iter()
            .map(|(s, t)| format!("({s}:{t})"))
            .collect::<Vec<_>>(),
        "degree_bound": rep.degree_bound,
        "identically_zero": rep.identically_zero,
    });
    Ok(obj.to_string())
}

#[pymodule]
fn extactica_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyVectorField>()?;
    m.add_function(wrap_pyfunction!(expected_degree, m)?)?;
    m.add_function(wrap_pyfunction!(gcd, m)?)?;
    m.add_function(wrap_pyfunction!(squarefree_part, m)?)?;
    m.add_function(wrap_pyfunction!(family, m)?)?;
    Ok(())
}
