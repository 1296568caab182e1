//! Python bindings. Elements, cochains and reports cross the boundary as JSON
//! strings in the formats of the core crate.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

use cochain_operads::algebra_core::{Coefficients, FormalSum};
use cochain_operads::barratt_eccles::{e_compose_partial, e_differential, e_normalize, EElement, ESimplex};
use cochain_operads::interval_cut::{cup_i, steenrod_square};
use cochain_operads::linalg::Field;
use cochain_operads::simplicial_sets::{Cochain, SimplicialModel};
use cochain_operads::sphere_suspension::sphere_eval as sphere_value;
use cochain_operads::surjections::{x_compose_partial, x_differential, Surjection, XElement};
use cochain_operads::table_reduction::{section as tr_section, tr_linear};
use cochain_operads::verify::{run_suite, VerifyConfig};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn from_json<T: DeserializeOwned>(s: &str) -> PyResult<T> {
    serde_json::from_str(s).map_err(err)
}

fn to_json<T: Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(err)
}

fn coefficients(characteristic: u32) -> PyResult<Coefficients> {
    Coefficients::new(characteristic).map_err(err)
}

/// A formal sum, or a single basis element with coefficient 1.
fn element<B: Ord + Clone + DeserializeOwned>(s: &str, coeffs: Coefficients) -> PyResult<FormalSum<B>> {
    let v: serde_json::Value = from_json(s)?;
    if v.get("terms").is_some() {
        serde_json::from_value::<FormalSum<B>>(v).map_err(err)?.with_coefficients(coeffs).map_err(err)
    } else {
        Ok(FormalSum::single(coeffs, serde_json::from_value(v).map_err(err)?))
    }
}

fn e_element(s: &str, characteristic: u32) -> PyResult<EElement> {
    e_normalize(&element(s, coefficients(characteristic)?)?).map_err(err)
}

fn model(name: &str) -> PyResult<SimplicialModel> {
    match name.split_once(':') {
        Some(("standard", n)) => Ok(SimplicialModel::standard(n.parse().map_err(err)?)),
        Some(("sphere", n)) => SimplicialModel::sphere(n.parse().map_err(err)?).map_err(err),
        _ if name == "interval" => Ok(SimplicialModel::interval()),
        _ if name == "rp2" => Ok(SimplicialModel::rp2()),
        _ => Err(PyValueError::new_err(format!("unknown model {name:?}"))),
    }
}

#[pyfunction]
#[pyo3(signature = (element, characteristic = 0))]
fn e_diff(element: &str, characteristic: u32) -> PyResult<String> {
    to_json(&e_differential(&e_element(element, characteristic)?))
}

#[pyfunction]
#[pyo3(signature = (u, k, v, characteristic = 0))]
fn e_compose(u: &str, k: usize, v: &str, characteristic: u32) -> PyResult<String> {
    to_json(&e_compose_partial(&e_element(u, characteristic)?, k, &e_element(v, characteristic)?).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (element, characteristic = 0))]
fn x_diff(element: &str, characteristic: u32) -> PyResult<String> {
    let x: XElement = self::element(element, coefficients(characteristic)?)?;
    to_json(&x_differential(&x))
}

#[pyfunction]
#[pyo3(signature = (u, k, v, characteristic = 0))]
fn x_compose(u: &str, k: usize, v: &str, characteristic: u32) -> PyResult<String> {
    let coeffs = coefficients(characteristic)?;
    let (u, v): (XElement, XElement) = (element(u, coeffs)?, element(v, coeffs)?);
    to_json(&x_compose_partial(&u, k, &v).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (element, characteristic = 0))]
fn tr(element: &str, characteristic: u32) -> PyResult<String> {
    to_json(&tr_linear(&e_element(element, characteristic)?))
}

#[pyfunction]
fn section(surjection: &str) -> PyResult<String> {
    to_json(&tr_section(&from_json::<Surjection>(surjection)?))
}

#[pyfunction]
#[pyo3(signature = (model_name, characteristic = 0))]
fn homology(model_name: &str, characteristic: u32) -> PyResult<Vec<usize>> {
    let field = Field::from_characteristic(characteristic).map_err(err)?;
    Ok(model(model_name)?.homology_ranks(field))
}

#[pyfunction]
#[pyo3(signature = (i, f, g, model_name, characteristic = 0))]
fn cupi(i: usize, f: &str, g: &str, model_name: &str, characteristic: u32) -> PyResult<String> {
    let coeffs = coefficients(characteristic)?;
    let load = |s: &str| -> PyResult<Cochain> {
        let c: Cochain = from_json(s)?;
        Ok(Cochain { degree: c.degree, values: c.values.with_coefficients(coeffs).map_err(err)? })
    };
    to_json(&cup_i(&load(f)?, &load(g)?, i, &model(model_name)?).map_err(err)?)
}

#[pyfunction]
fn sq(k: usize, f: &str, model_name: &str) -> PyResult<String> {
    let c: Cochain = from_json(f)?;
    let c = Cochain { degree: c.degree, values: c.values.with_coefficients(Coefficients::F2).map_err(err)? };
    to_json(&steenrod_square(k, &c, &model(model_name)?).map_err(err)?)
}

#[pyfunction]
fn sphere_eval(n: usize, simplex: &str) -> PyResult<i64> {
    sphere_value(n, &from_json::<ESimplex>(simplex)?).map_err(err)
}

/// Runs one verification suite and returns its report as JSON.
#[pyfunction]
#[pyo3(signature = (suite, seed = 0, max_arity = None, max_degree = None))]
fn verify(suite: &str, seed: u64, max_arity: Option<usize>, max_degree: Option<usize>) -> PyResult<String> {
    to_json(&run_suite(suite, &VerifyConfig { seed, max_arity, max_degree }).map_err(err)?)
}

#[pymodule]
fn pycochain(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(e_diff, m)?)?;
    m.add_function(wrap_pyfunction!(e_compose, m)?)?;
    m.add_function(wrap_pyfunction!(x_diff, m)?)?;
    m.add_function(wrap_pyfunction!(x_compose, m)?)?;
    m.add_function(wrap_pyfunction!(tr, m)?)?;
    m.add_function(wrap_pyfunction!(section, m)?)?;
    m.add_function(wrap_pyfunction!(homology, m)?)?;
    m.add_function(wrap_pyfunction!(cupi, m)?)?;
    m.add_function(wrap_pyfunction!(sq, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_eval, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
