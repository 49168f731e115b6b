//! Python bindings: polynomials, resolutions and the verification suite.
//!
//! Build with `cargo build --release -p veronese-syzygy-py`, then copy the
//! produced cdylib next to your script as `veronese_syzygy.so`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList};

use veronese_syzygy::field::{Field, PrimeField, Rationals};
use veronese_syzygy::json::{complex_to_json_string, load_complex, AnyComplex, FieldDesc};
use veronese_syzygy::poly::Homogeneity;
use veronese_syzygy::verify::{
    check_complex, check_minimal, graded_exactness, hilbert_from_resolution, theta_vanishing_check,
    RankCache,
};
use veronese_syzygy::{
    build_even, build_odd, parse_poly as parse_poly_rs, random_curve as random_curve_rs,
    syzygy_oracle as syzygy_oracle_rs, Parity, Polynomial, ResolutionComplex, RingId,
};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_ring(name: &str) -> PyResult<RingId> {
    match name {
        "curve" | "CURVE" => Ok(RingId::Curve),
        "ambient" | "AMBIENT" => Ok(RingId::Ambient),
        other => Err(value_err(format!("unknown ring '{other}'"))),
    }
}

fn parse_field(desc: &str) -> PyResult<FieldDesc> {
    FieldDesc::parse(desc).map_err(value_err)
}

#[derive(Clone)]
enum AnyPoly {
    Rational(Polynomial<Rationals>),
    Prime(Polynomial<PrimeField>),
}

macro_rules! poly_binop {
    ($name:ident, $method:ident) => {
        fn $name(&self, other: &AnyPoly) -> PyResult<AnyPoly> {
            match (self, other) {
                (AnyPoly::Rational(a), AnyPoly::Rational(b)) if a.ring() == b.ring() => {
                    Ok(AnyPoly::Rational(a.$method(b)))
                }
                (AnyPoly::Prime(a), AnyPoly::Prime(b))
                    if a.ring() == b.ring() && a.field() == b.field() =>
                {
                    Ok(AnyPoly::Prime(a.$method(b)))
                }
                _ => Err(value_err("operands live in different rings or fields")),
            }
        }
    };
}

impl AnyPoly {
    poly_binop!(add, add_ref);
    poly_binop!(sub, sub_ref);
    poly_binop!(mul, mul_ref);

    fn homogeneity(&self) -> Homogeneity {
        match self {
            AnyPoly::Rational(p) => p.homogeneous_degree(),
            AnyPoly::Prime(p) => p.homogeneous_degree(),
        }
    }
}

/// A sparse polynomial over q or fp:<p> in one of the two fixed rings.
#[pyclass(name = "Poly", skip_from_py_object)]
#[derive(Clone)]
struct PyPoly {
    inner: AnyPoly,
}

#[pymethods]
impl PyPoly {
    fn __str__(&self) -> String {
        match &self.inner {
            AnyPoly::Rational(p) => p.to_string(),
            AnyPoly::Prime(p) => p.to_string(),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Poly({} over {}, {})",
            self.__str__(),
            self.field(),
            self.ring()
        )
    }

    fn __add__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: self.inner.add(&other.inner)?,
        })
    }

    fn __sub__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: self.inner.sub(&other.inner)?,
        })
    }

    fn __mul__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: self.inner.mul(&other.inner)?,
        })
    }

    fn __neg__(&self) -> PyPoly {
        let inner = match &self.inner {
            AnyPoly::Rational(p) => AnyPoly::Rational(p.neg_ref()),
            AnyPoly::Prime(p) => AnyPoly::Prime(p.neg_ref()),
        };
        PyPoly { inner }
    }

    fn __eq__(&self, other: &PyPoly) -> bool {
        match (&self.inner, &other.inner) {
            (AnyPoly::Rational(a), AnyPoly::Rational(b)) => a == b,
            (AnyPoly::Prime(a), AnyPoly::Prime(b)) => a == b,
            _ => false,
        }
    }

    fn ring(&self) -> String {
        let ring = match &self.inner {
            AnyPoly::Rational(p) => p.ring(),
            AnyPoly::Prime(p) => p.ring(),
        };
        ring.name().to_lowercase()
    }

    fn field(&self) -> String {
        match &self.inner {
            AnyPoly::Rational(p) => p.field().descriptor(),
            AnyPoly::Prime(p) => p.field().descriptor(),
        }
    }

    fn is_zero(&self) -> bool {
        match &self.inner {
            AnyPoly::Rational(p) => p.is_zero(),
            AnyPoly::Prime(p) => p.is_zero(),
        }
    }

    fn is_homogeneous(&self) -> bool {
        !matches!(self.inner.homogeneity(), Homogeneity::Inhomogeneous)
    }

    /// Total degree for nonzero homogeneous polynomials, otherwise None.
    fn degree(&self) -> Option<u32> {
        match self.inner.homogeneity() {
            Homogeneity::Homogeneous(d) => Some(d),
            _ => None,
        }
    }

    fn num_terms(&self) -> usize {
        match &self.inner {
            AnyPoly::Rational(p) => p.num_terms(),
            AnyPoly::Prime(p) => p.num_terms(),
        }
    }
}

enum AnyComplexInner {
    Rational(ResolutionComplex<Rationals>),
    Prime(ResolutionComplex<PrimeField>),
}

/// A graded free resolution complex with its verification suite.
#[pyclass(name = "Complex")]
struct PyComplex {
    inner: AnyComplexInner,
}

impl PyComplex {
    fn as_prime(&self, prime: Option<u64>) -> PyResult<ResolutionComplex<PrimeField>> {
        match &self.inner {
            AnyComplexInner::Prime(c) => {
                if let Some(p) = prime {
                    if p != c.field().prime() {
                        return Err(value_err(format!(
                            "complex is over fp:{}, not fp:{p}",
                            c.field().prime()
                        )));
                    }
                }
                Ok(c.clone())
            }
            AnyComplexInner::Rational(c) => {
                let fp = PrimeField::new(prime.unwrap_or(32003)).map_err(value_err)?;
                c.to_prime_field(&fp).map_err(value_err)
            }
        }
    }
}

#[pymethods]
impl PyComplex {
    fn __repr__(&self) -> String {
        let (field, len) = match &self.inner {
            AnyComplexInner::Rational(c) => (c.field().descriptor(), c.len()),
            AnyComplexInner::Prime(c) => (c.field().descriptor(), c.len()),
        };
        format!("Complex(length {len} over {field})")
    }

    /// Betti table as a dict mapping (i, j) to the count of S(-j) summands.
    fn betti<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let table = match &self.inner {
            AnyComplexInner::Rational(c) => c.betti_table(),
            AnyComplexInner::Prime(c) => c.betti_table(),
        };
        let dict = PyDict::new(py);
        for ((i, j), count) in table.entries {
            dict.set_item((i, j), count)?;
        }
        Ok(dict)
    }

    fn modules(&self) -> Vec<Vec<u32>> {
        let modules = match &self.inner {
            AnyComplexInner::Rational(c) => &c.modules,
            AnyComplexInner::Prime(c) => &c.modules,
        };
        modules.iter().map(|m| m.twists().to_vec()).collect()
    }

    /// Entries of the i-th differential (1-based), row-major, as text.
    fn differential(&self, i: usize) -> PyResult<Vec<Vec<String>>> {
        let render = |rows: &[Vec<String>]| rows.to_vec();
        let grid = match &self.inner {
            AnyComplexInner::Rational(c) => {
                if i == 0 || i > c.len() {
                    return Err(value_err("differential index out of range"));
                }
                c.differential(i)
                    .entries()
                    .iter()
                    .map(|r| r.iter().map(|e| e.to_string()).collect())
                    .collect::<Vec<Vec<String>>>()
            }
            AnyComplexInner::Prime(c) => {
                if i == 0 || i > c.len() {
                    return Err(value_err("differential index out of range"));
                }
                c.differential(i)
                    .entries()
                    .iter()
                    .map(|r| r.iter().map(|e| e.to_string()).collect())
                    .collect::<Vec<Vec<String>>>()
            }
        };
        Ok(render(&grid))
    }

    fn to_json(&self) -> String {
        match &self.inner {
            AnyComplexInner::Rational(c) => complex_to_json_string(c),
            AnyComplexInner::Prime(c) => complex_to_json_string(c),
        }
    }

    /// Symbolic check that consecutive differentials compose to zero.
    fn check_complex(&self) -> PyResult<bool> {
        let outcome = match &self.inner {
            AnyComplexInner::Rational(c) => check_complex(c).map_err(value_err)?.is_pass(),
            AnyComplexInner::Prime(c) => check_complex(c).map_err(value_err)?.is_pass(),
        };
        Ok(outcome)
    }

    fn check_minimal(&self) -> bool {
        match &self.inner {
            AnyComplexInner::Rational(c) => check_minimal(c).is_pass(),
            AnyComplexInner::Prime(c) => check_minimal(c).is_pass(),
        }
    }

    fn theta_vanishing(&self) -> PyResult<bool> {
        let outcome = match &self.inner {
            AnyComplexInner::Rational(c) => theta_vanishing_check(c).map_err(value_err)?.is_pass(),
            AnyComplexInner::Prime(c) => theta_vanishing_check(c).map_err(value_err)?.is_pass(),
        };
        Ok(outcome)
    }

    /// Degree-wise exactness report up to `n_max` (default: max twist + 2)
    /// over `prime` (default 32003 when the complex is rational).
    #[pyo3(signature = (n_max=None, prime=None))]
    fn graded_exactness<'py>(
        &self,
        py: Python<'py>,
        n_max: Option<u32>,
        prime: Option<u64>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let complex = self.as_prime(prime)?;
        let bound = n_max.unwrap_or_else(|| {
            complex
                .modules
                .iter()
                .flat_map(|m| m.twists())
                .max()
                .copied()
                .unwrap_or(4)
                + 2
        });
        let cache = RankCache::new();
        let report = graded_exactness(&complex, bound, &cache).map_err(value_err)?;
        let value = serde_json::to_value(&report).map_err(value_err)?;
        json_to_py(py, &value)
    }

    fn hilbert(&self, n: i64) -> i64 {
        match &self.inner {
            AnyComplexInner::Rational(c) => hilbert_from_resolution(c, n),
            AnyComplexInner::Prime(c) => hilbert_from_resolution(c, n),
        }
    }
}

fn json_to_py<'py>(py: Python<'py>, value: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    use serde_json::Value;
    Ok(match value {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any(),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any()
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any()
            }
        }
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, v) in map {
                dict.set_item(k, json_to_py(py, v)?)?;
            }
            dict.into_any()
        }
    })
}

/// Parses polynomial text in the given ring over q or fp:<p>.
#[pyfunction]
#[pyo3(signature = (text, ring="curve", field="q"))]
fn parse_poly(text: &str, ring: &str, field: &str) -> PyResult<PyPoly> {
    let ring = parse_ring(ring)?;
    let inner = match parse_field(field)? {
        FieldDesc::Rational => {
            AnyPoly::Rational(parse_poly_rs(text, ring, Rationals).map_err(value_err)?)
        }
        FieldDesc::Prime(p) => {
            let fp = PrimeField::new(p).map_err(value_err)?;
            AnyPoly::Prime(parse_poly_rs(text, ring, fp).map_err(value_err)?)
        }
    };
    Ok(PyPoly { inner })
}

/// Applies the ring map x_ij -> x_i * x_j.
#[pyfunction]
fn theta(p: &PyPoly) -> PyResult<PyPoly> {
    let inner = match &p.inner {
        AnyPoly::Rational(q) => AnyPoly::Rational(veronese_syzygy::theta(q).map_err(value_err)?),
        AnyPoly::Prime(q) => AnyPoly::Prime(veronese_syzygy::theta(q).map_err(value_err)?),
    };
    Ok(PyPoly { inner })
}

/// The six quadric minor generators, in index order 00, 01, 02, 11, 12, 22.
#[pyfunction]
#[pyo3(signature = (field="q"))]
fn minors(field: &str) -> PyResult<Vec<PyPoly>> {
    Ok(match parse_field(field)? {
        FieldDesc::Rational => veronese_syzygy::minors(Rationals)
            .deltas
            .into_iter()
            .map(|p| PyPoly {
                inner: AnyPoly::Rational(p),
            })
            .collect(),
        FieldDesc::Prime(p) => {
            let fp = PrimeField::new(p).map_err(value_err)?;
            veronese_syzygy::minors(fp)
                .deltas
                .into_iter()
                .map(|p| PyPoly {
                    inner: AnyPoly::Prime(p),
                })
                .collect()
        }
    })
}

/// Lift of an even-degree curve: theta(F) = f.
#[pyfunction]
fn lift_even(f: &PyPoly) -> PyResult<PyPoly> {
    let inner = match &f.inner {
        AnyPoly::Rational(p) => {
            AnyPoly::Rational(veronese_syzygy::lift_even(p).map_err(value_err)?.lift)
        }
        AnyPoly::Prime(p) => AnyPoly::Prime(veronese_syzygy::lift_even(p).map_err(value_err)?.lift),
    };
    Ok(PyPoly { inner })
}

/// Lift of an odd-degree curve: returns (h_parts, F_lifts) with
/// theta(F_lifts[n]) = x_n * f.
#[pyfunction]
fn lift_odd(f: &PyPoly) -> PyResult<(Vec<PyPoly>, Vec<PyPoly>)> {
    Ok(match &f.inner {
        AnyPoly::Rational(p) => {
            let l = veronese_syzygy::lift_odd(p).map_err(value_err)?;
            (
                l.h.iter()
                    .map(|q| PyPoly {
                        inner: AnyPoly::Rational(q.clone()),
                    })
                    .collect(),
                l.f_lifts
                    .iter()
                    .map(|q| PyPoly {
                        inner: AnyPoly::Rational(q.clone()),
                    })
                    .collect(),
            )
        }
        AnyPoly::Prime(p) => {
            let l = veronese_syzygy::lift_odd(p).map_err(value_err)?;
            (
                l.h.iter()
                    .map(|q| PyPoly {
                        inner: AnyPoly::Prime(q.clone()),
                    })
                    .collect(),
                l.f_lifts
                    .iter()
                    .map(|q| PyPoly {
                        inner: AnyPoly::Prime(q.clone()),
                    })
                    .collect(),
            )
        }
    })
}

/// Builds the resolution of the curve ideal (either parity).
#[pyfunction]
#[pyo3(signature = (f, assume_irreducible=true))]
fn resolve(f: &PyPoly, assume_irreducible: bool) -> PyResult<PyComplex> {
    let degree = match f.inner.homogeneity() {
        Homogeneity::Homogeneous(d) if d >= 2 => d,
        _ => return Err(value_err("curve must be homogeneous of degree >= 2")),
    };
    let inner = match (&f.inner, Parity::of(degree)) {
        (AnyPoly::Rational(p), Parity::Even) => {
            AnyComplexInner::Rational(build_even(p, assume_irreducible).map_err(value_err)?)
        }
        (AnyPoly::Rational(p), Parity::Odd) => {
            AnyComplexInner::Rational(build_odd(p, assume_irreducible).map_err(value_err)?)
        }
        (AnyPoly::Prime(p), Parity::Even) => {
            AnyComplexInner::Prime(build_even(p, assume_irreducible).map_err(value_err)?)
        }
        (AnyPoly::Prime(p), Parity::Odd) => {
            AnyComplexInner::Prime(build_odd(p, assume_irreducible).map_err(value_err)?)
        }
    };
    Ok(PyComplex { inner })
}

/// The fixed resolution of the Veronese surface.
#[pyfunction]
#[pyo3(signature = (field="q"))]
fn veronese_complex(field: &str) -> PyResult<PyComplex> {
    Ok(PyComplex {
        inner: match parse_field(field)? {
            FieldDesc::Rational => {
                AnyComplexInner::Rational(veronese_syzygy::veronese_complex(Rationals))
            }
            FieldDesc::Prime(p) => {
                let fp = PrimeField::new(p).map_err(value_err)?;
                AnyComplexInner::Prime(veronese_syzygy::veronese_complex(fp))
            }
        },
    })
}

/// Deterministic random homogeneous degree-d curve.
#[pyfunction]
#[pyo3(signature = (degree, seed, field="q"))]
fn random_curve(degree: u32, seed: u64, field: &str) -> PyResult<PyPoly> {
    let inner = match parse_field(field)? {
        FieldDesc::Rational => {
            AnyPoly::Rational(random_curve_rs(Rationals, degree, seed).map_err(value_err)?)
        }
        FieldDesc::Prime(p) => {
            let fp = PrimeField::new(p).map_err(value_err)?;
            AnyPoly::Prime(random_curve_rs(fp, degree, seed).map_err(value_err)?)
        }
    };
    Ok(PyPoly { inner })
}

/// Basis of the degree-n syzygies of the given generators.
#[pyfunction]
fn syzygy_oracle(gens: Vec<PyRef<'_, PyPoly>>, degree: i64) -> PyResult<Vec<Vec<PyPoly>>> {
    if gens.is_empty() {
        return Err(value_err("no generators"));
    }
    match &gens[0].inner {
        AnyPoly::Rational(_) => {
            let rust_gens: Vec<Polynomial<Rationals>> = gens
                .iter()
                .map(|g| match &g.inner {
                    AnyPoly::Rational(p) => Ok(p.clone()),
                    _ => Err(value_err("generators must share a field")),
                })
                .collect::<PyResult<_>>()?;
            let basis = syzygy_oracle_rs(&rust_gens, degree).map_err(value_err)?;
            Ok(basis
                .into_iter()
                .map(|v| {
                    v.into_iter()
                        .map(|p| PyPoly {
                            inner: AnyPoly::Rational(p),
                        })
                        .collect()
                })
                .collect())
        }
        AnyPoly::Prime(_) => {
            let rust_gens: Vec<Polynomial<PrimeField>> = gens
                .iter()
                .map(|g| match &g.inner {
                    AnyPoly::Prime(p) => Ok(p.clone()),
                    _ => Err(value_err("generators must share a field")),
                })
                .collect::<PyResult<_>>()?;
            let basis = syzygy_oracle_rs(&rust_gens, degree).map_err(value_err)?;
            Ok(basis
                .into_iter()
                .map(|v| {
                    v.into_iter()
                        .map(|p| PyPoly {
                            inner: AnyPoly::Prime(p),
                        })
                        .collect()
                })
                .collect())
        }
    }
}

/// Loads a complex from its JSON interchange form.
#[pyfunction]
fn load_complex_json(text: &str) -> PyResult<PyComplex> {
    Ok(PyComplex {
        inner: match load_complex(text).map_err(value_err)? {
            AnyComplex::Rational(c) => AnyComplexInner::Rational(c),
            AnyComplex::Prime(c) => AnyComplexInner::Prime(c),
        },
    })
}

#[pymodule(name = "veronese_syzygy")]
fn veronese_syzygy_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyComplex>()?;
    m.add_function(wrap_pyfunction!(parse_poly, m)?)?;
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    m.add_function(wrap_pyfunction!(minors, m)?)?;
    m.add_function(wrap_pyfunction!(lift_even, m)?)?;
    m.add_function(wrap_pyfunction!(lift_odd, m)?)?;
    m.add_function(wrap_pyfunction!(resolve, m)?)?;
    m.add_function(wrap_pyfunction!(veronese_complex, m)?)?;
    m.add_function(wrap_pyfunction!(random_curve, m)?)?;
    m.add_function(wrap_pyfunction!(syzygy_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(load_complex_json, m)?)?;
    Ok(())
}
