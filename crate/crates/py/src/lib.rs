//! Python bindings for the q-immanant library.
//!
//! Exact rationals cross the boundary as "p/r" strings and matrices as dense
//! row-major lists of such strings, so nothing is ever rounded.  The
//! `run_verify` entry point accepts the same JSON configuration as the
//! command-line harness and returns the JSON report.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qimm_core::combinatorics::{self, Shape};
use qimm_core::exact::QConfig;
use qimm_core::immanants::{self, eval_matrix_poly, AuxChain};
use qimm_core::mat::SqMat;
use qimm_core::suites::{self, VerifyConfig};
use qimm_core::tensor;
use qimm_core::uqgln_rep::Rep;
use qimm_core::Scalar;

fn err(e: qimm_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn shape(parts: Vec<usize>) -> PyResult<Shape> {
    Shape::new(parts).map_err(err)
}

fn config(q: &str) -> PyResult<QConfig> {
    QConfig::parse(q).map_err(err)
}

fn scalar(s: &str) -> PyResult<Scalar> {
    s.parse::<Scalar>().map_err(err)
}

fn dense(m: &SqMat<Scalar>) -> Vec<Vec<String>> {
    (0..m.dim())
        .map(|r| (0..m.dim()).map(|c| m.entry(r, c).to_string()).collect())
        .collect()
}

/// Entries of the R-matrix on C^n tensor C^n.
#[pyfunction]
fn r_matrix(n: usize, q: &str) -> PyResult<Vec<Vec<String>>> {
    Ok(dense(&tensor::r_matrix(n, &config(q)?)))
}

/// Entries of the braided R-matrix P R, the Hecke generator image.
#[pyfunction]
fn r_check(n: usize, q: &str) -> PyResult<Vec<Vec<String>>> {
    Ok(dense(&tensor::r_check(n, &config(q)?)))
}

/// Entries of the q-trace weight matrix diag[1, q^-2, ..., q^(-2n+2)].
#[pyfunction]
fn d_matrix(n: usize, q: &str) -> PyResult<Vec<Vec<String>>> {
    Ok(dense(&tensor::d_matrix(n, &config(q)?)))
}

/// Standard tableaux of the given partition shape, as lists of rows.
#[pyfunction]
fn standard_tableaux(parts: Vec<usize>) -> PyResult<Vec<Vec<Vec<usize>>>> {
    let sh = shape(parts)?;
    Ok(combinatorics::standard_tableaux(&sh)
        .iter()
        .map(|t| {
            sh.parts()
                .iter()
                .enumerate()
                .map(|(r, &len)| (0..len).map(|c| t.entry(r, c)).collect())
                .collect()
        })
        .collect())
}

/// Semistandard tableaux of the given shape with entries at most n.
#[pyfunction]
fn semistandard_tableaux(parts: Vec<usize>, n: usize) -> PyResult<Vec<Vec<Vec<usize>>>> {
    Ok(combinatorics::ssyt(&shape(parts)?, n))
}

/// Number of semistandard tableaux of the given shape with entries at most n.
#[pyfunction]
fn ssyt_count(parts: Vec<usize>, n: usize) -> PyResult<usize> {
    Ok(combinatorics::ssyt_count(&shape(parts)?, n))
}

/// Eigenvalue of the q-immanant S_mu(z) on the irreducible with highest
/// weight lambda: the factorial Schur polynomial evaluated by its tableau sum.
#[pyfunction]
fn immanant_eigenvalue(
    n: usize,
    mu: Vec<usize>,
    lambda: Vec<usize>,
    z: &str,
    q: &str,
) -> PyResult<String> {
    let value = immanants::immanant_eigenvalue(
        n,
        &shape(mu)?,
        &shape(lambda)?,
        &scalar(z)?,
        &config(q)?,
    )
    .map_err(err)?;
    Ok(value.to_string())
}

/// Eigenvalue of the Gelfand invariant tr_q L^m on the irreducible with
/// highest weight lambda.
#[pyfunction]
fn gelfand_eigenvalue(n: usize, m: usize, lambda: Vec<usize>, q: &str) -> PyResult<String> {
    let value = immanants::gelfand_eigenvalue(n, m, &shape(lambda)?, &config(q)?).map_err(err)?;
    Ok(value.to_string())
}

/// The q-immanant S_mu(z) as an operator on the tensor-product module with
/// the given number of vector-representation legs, evaluated at z.
#[pyfunction]
fn immanant_operator(
    n: usize,
    module_sites: usize,
    mu: Vec<usize>,
    z: &str,
    q: &str,
) -> PyResult<Vec<Vec<String>>> {
    let cfg = config(q)?;
    let mu = shape(mu)?;
    let rep = Rep::new(n, module_sites, &cfg).map_err(err)?;
    let chain = AuxChain::new(&rep, mu.size()).map_err(err)?;
    let u = combinatorics::standard_tableaux(&mu)
        .into_iter()
        .next()
        .expect("every shape has a standard tableau");
    let poly = chain.immanant_poly(&u).map_err(err)?;
    let dim = rep.module_space().dim();
    Ok(dense(&eval_matrix_poly(&poly, &scalar(z)?, dim)))
}

/// Runs verification suites from a JSON configuration and returns the JSON
/// report; see the command-line harness for the configuration fields.
#[pyfunction]
fn run_verify(config_json: &str) -> PyResult<String> {
    let config: VerifyConfig = serde_json::from_str(config_json)
        .map_err(|e| PyValueError::new_err(format!("invalid config: {}", e)))?;
    let report = suites::run(&config).map_err(err)?;
    Ok(report.to_json())
}

#[pymodule]
fn qimm_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(r_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(r_check, m)?)?;
    m.add_function(wrap_pyfunction!(d_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(standard_tableaux, m)?)?;
    m.add_function(wrap_pyfunction!(semistandard_tableaux, m)?)?;
    m.add_function(wrap_pyfunction!(ssyt_count, m)?)?;
    m.add_function(wrap_pyfunction!(immanant_eigenvalue, m)?)?;
    m.add_function(wrap_pyfunction!(gelfand_eigenvalue, m)?)?;
    m.add_function(wrap_pyfunction!(immanant_operator, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
