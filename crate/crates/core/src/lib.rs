pub mod cnf;
pub mod formula;
pub mod pipeline;
pub mod sat;
pub mod stats;
pub mod translate;
pub mod validate;
