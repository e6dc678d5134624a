//! Python bindings: contexts, classes, models and the command line.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use burnloc_core::cli;
use burnloc_core::model::{self, BlowupCenter, ModelDescription};
use burnloc_core::relations::{filtered_structure, phi_g, FilterSpec, Presentation};
use burnloc_core::symbol::{BurnsideClass, Context as CoreContext};

create_exception!(burnloc, BurnlocError, PyValueError);

fn err(e: burnloc_core::Error) -> PyErr {
    BurnlocError::new_err((e.to_string(), e.exit_code()))
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (None, Some(u)) => u.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let out = PyList::empty(py);
            for item in items {
                out.append(to_py(py, item)?)?;
            }
            out.into_any()
        }
        Value::Object(map) => {
            let out = PyDict::new(py);
            for (k, item) in map {
                out.set_item(k, to_py(py, item)?)?;
            }
            out.into_any()
        }
    })
}

fn filter_spec(name: &str) -> PyResult<Option<FilterSpec>> {
    match name {
        "all" => Ok(None),
        "maximal" => Ok(Some(FilterSpec::MaximalStabilizer)),
        other => Err(BurnlocError::new_err((format!("unknown filter `{other}`"), 2))),
    }
}

/// A finite group with an action catalog, plus its lazily built presentation.
#[pyclass(module = "burnloc", frozen)]
struct Context {
    inner: CoreContext,
    presentation: OnceLock<Presentation>,
}

impl Context {
    fn wrap(inner: CoreContext) -> Self {
        Context { inner, presentation: OnceLock::new() }
    }

    fn presentation(&self) -> PyResult<&Presentation> {
        if let Some(p) = self.presentation.get() {
            return Ok(p);
        }
        let p = Presentation::new(&self.inner).map_err(err)?;
        Ok(self.presentation.get_or_init(|| p))
    }

    /// A symbol string or a `{symbol: coefficient}` mapping.
    fn class(&self, obj: &Bound<'_, PyAny>) -> PyResult<BurnsideClass> {
        if let Ok(text) = obj.extract::<String>() {
            let s = self.inner.parse_symbol(&text).map_err(err)?;
            return Ok(BurnsideClass::from_symbol(s));
        }
        let terms: BTreeMap<String, i64> = obj.extract()?;
        let mut class = BurnsideClass::zero();
        for (text, c) in terms {
            class.add_term(self.inner.parse_symbol(&text).map_err(err)?, c);
        }
        Ok(class)
    }

    fn class_dict<'py>(&self, py: Python<'py>, c: &BurnsideClass) -> PyResult<Bound<'py, PyDict>> {
        let out = PyDict::new(py);
        for (s, &k) in c.terms() {
            out.set_item(self.inner.render(s), k)?;
        }
        Ok(out)
    }
}

#[pymethods]
impl Context {
    /// `catalog` and `group` are fixture names, file paths or inline JSON.
    #[new]
    #[pyo3(signature = (catalog, group = None))]
    fn new(catalog: &str, group: Option<&str>) -> PyResult<Self> {
        Ok(Self::wrap(cli::load_context(group, catalog).map_err(err)?))
    }

    #[getter]
    fn group_order(&self) -> usize {
        self.inner.group().order()
    }

    #[getter]
    fn genus(&self) -> u32 {
        self.inner.genus()
    }

    fn symbols(&self) -> PyResult<Vec<String>> {
        Ok(self.presentation()?.symbols.iter().map(|s| self.inner.render(s)).collect())
    }

    fn canonicalize(&self, symbol: &str) -> PyResult<String> {
        let s = self.inner.parse_symbol(symbol).map_err(err)?;
        Ok(self.inner.render(&self.inner.canonicalize(&s).map_err(err)?))
    }

    /// `{"free_rank": r, "torsion": [...]}` of the full or filtered group.
    #[pyo3(signature = (filter = "all"))]
    fn structure<'py>(&self, py: Python<'py>, filter: &str) -> PyResult<Bound<'py, PyAny>> {
        let s = match filter_spec(filter)? {
            None => self.presentation()?.structure(),
            Some(f) => filtered_structure(&self.inner, f).map_err(err)?,
        };
        to_py(py, &serde_json::to_value(&s).expect("structure serializes"))
    }

    /// Generated relations as `(rule, source symbol, class)` triples.
    fn relations<'py>(&self, py: Python<'py>) -> PyResult<Vec<(String, String, Bound<'py, PyDict>)>> {
        self.presentation()?
            .relations
            .iter()
            .map(|r| Ok((r.rule.to_string(), self.inner.render(&r.source), self.class_dict(py, &r.vector)?)))
            .collect()
    }

    fn reduce<'py>(&self, py: Python<'py>, class: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyDict>> {
        let c = self.class(class)?;
        let r = self.presentation()?.reduce(&c).map_err(err)?;
        self.class_dict(py, &r)
    }

    fn classes_equal(&self, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<bool> {
        let (a, b) = (self.class(a)?, self.class(b)?);
        self.presentation()?.classes_equal(&a, &b).map_err(err)
    }

    fn render(&self, class: &Bound<'_, PyAny>) -> PyResult<String> {
        Ok(self.inner.render_class(&self.class(class)?))
    }

    /// phi of the projection onto maximal-stabilizer symbols.
    fn phi(&self, class: &Bound<'_, PyAny>) -> PyResult<i64> {
        let c = FilterSpec::MaximalStabilizer.project(&self.inner, &self.class(class)?);
        phi_g(&self.inner, &c).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Context(order={}, genus={})", self.inner.group().order(), self.inner.genus())
    }
}

/// A model description together with its context.
#[pyclass(module = "burnloc", frozen)]
struct Model {
    inner: ModelDescription,
    ctx: Py<Context>,
}

#[pymethods]
impl Model {
    /// `model` is a fixture name, file path or inline JSON.
    #[new]
    fn new(py: Python<'_>, model: &str) -> PyResult<Self> {
        let inner = cli::load_model(model).map_err(err)?;
        let ctx = inner.context().map_err(err)?;
        model::validate_model(&ctx, &inner).map_err(err)?;
        Ok(Model { inner, ctx: Py::new(py, Context::wrap(ctx))? })
    }

    #[getter]
    fn name(&self) -> Option<String> {
        self.inner.name.clone()
    }

    #[getter]
    fn context(&self, py: Python<'_>) -> Py<Context> {
        self.ctx.clone_ref(py)
    }

    fn class_of_action<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let ctx = self.ctx.get();
        let c = model::class_of_action(&ctx.inner, &self.inner).map_err(err)?;
        ctx.class_dict(py, &c)
    }

    fn counts(&self) -> PyResult<(u64, u64, u64)> {
        let c = model::invariant_counts(&self.ctx.get().inner, &self.inner).map_err(err)?;
        Ok((c.i1, c.i2, c.i3))
    }

    fn verdict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let r = model::verdict(&self.ctx.get().inner, &self.inner).map_err(err)?;
        to_py(py, &serde_json::to_value(&r).expect("report serializes"))
    }

    /// Whether blowing up `center` leaves the class unchanged.
    fn verify_blowup(&self, center: &str) -> PyResult<bool> {
        let ctx = self.ctx.get();
        let center: BlowupCenter = cli::load_center(center).map_err(err)?;
        model::verify_blowup_invariance(&ctx.inner, ctx.presentation()?, &self.inner, &center).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Model({:?})", self.inner.name.as_deref().unwrap_or("<unnamed>"))
    }
}

/// `-I1 - 2*I2 + I3`.
#[pyfunction]
fn invariant(i1: u64, i2: u64, i3: u64) -> PyResult<i64> {
    model::invariant_i(i1, i2, i3).map_err(err)
}

/// Runs the command line with `args` (without the program name) and returns
/// `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String, String) {
    let (mut out, mut errs) = (Vec::new(), Vec::new());
    let argv = std::iter::once("burnloc".to_string()).chain(args);
    let code = cli::run(argv, &mut out, &mut errs);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&errs).into_owned())
}

#[pymodule]
fn burnloc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Context>()?;
    m.add_class::<Model>()?;
    m.add_function(wrap_pyfunction!(invariant, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add("BurnlocError", m.py().get_type::<BurnlocError>())?;
    m.add("CATALOGS", burnloc_core::fixtures::CATALOG_NAMES.to_vec())?;
    m.add("MODELS", burnloc_core::fixtures::MODEL_NAMES.to_vec())?;
    m.add("CENTERS", burnloc_core::fixtures::CENTER_NAMES.to_vec())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
