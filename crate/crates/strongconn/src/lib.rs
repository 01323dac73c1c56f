//! Strong connectivity of directed graphs under a single edge or vertex deletion.

pub mod blocks;
pub mod cli;
pub mod decomposition;
pub mod edge_analytics;
pub mod flow_forest;
mod frame;
pub mod graph_core;
pub mod oracle;
pub mod query_engine;
pub mod vertex_analytics;
