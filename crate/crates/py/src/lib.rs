use pyo3::prelude::*;
#[pymodule]
fn uwrsense_py(_m: &Bound<PyModule>) -> PyResult<()> { Ok(()) }
