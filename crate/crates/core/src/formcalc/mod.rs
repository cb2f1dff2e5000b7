//! Matrix-valued one-forms, trace-wedge products, the two-form of a jump
//! graph and log-canonical coefficient extraction.

mod forms;
mod graph;

pub use forms::{
    maurer_cartan, poisson_from_form, to_log_canonical, wedge_trace, LogCanonicalForm,
    LogCanonicalJson, OneForm, Side, TwoForm, TwoFormJson,
};
pub use graph::{
    graph_two_form, graph_two_form_at, sequence_two_form, sequence_two_form_at, vertex_two_form_at,
    Edge, JumpGraph, MatrixJetGraph, VertexRelation,
};
