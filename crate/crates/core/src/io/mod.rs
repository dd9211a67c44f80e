//! SteinLib STP input, solution files and the benchmark results CSV.

mod results;
mod stp;

pub use results::{format_number, read_results, read_results_from, write_results, write_results_to, ResultRow, ResultsError, RESULTS_HEADER};
pub use stp::{
    parse_stp, to_instance, write_solution, write_stp, Link, LoadedInstance, RawStpInstance, RootPolicy, RootRule,
    StpError,
};
