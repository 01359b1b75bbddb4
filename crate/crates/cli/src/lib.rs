//! File formats and the bundled problem corpus behind the `teneig` binary.

pub mod fixtures;
pub mod io;
