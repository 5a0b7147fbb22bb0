//! Float rendering for emitted data files.
//!
//! All floats written to CSV/JSON outputs use 17 significant digits so that
//! round-trips through text are lossless and repeated runs are
//! byte-identical.

/// Render with 17 significant digits in scientific notation.
pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}
