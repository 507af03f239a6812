//! Embedding oriented cycles and paths.

mod check;
mod connectors;
mod cycles;
mod oracle;
mod pipeline;
mod split;
mod tournament;

pub use check::{check_embedding, CheckReport, Embedding, PatternRef};
pub use connectors::{select_connectors, ConnectorSelection, Direction};
pub use oracle::{
    embed_path_between, embed_template, exact_embed, OracleOptions, OracleResult, Template, TemplateOutcome,
    TemplateSearch, ORACLE_VERTEX_CAP,
};
pub use tournament::{tt_embed_path, tt_validates};
pub use pipeline::{
    embed_hamilton_orientation, embed_with_classes, Case2Boundary, ConnectorRecord, EmbedParams, EmbedPlan,
    PipelineCase, PipelineOutcome,
};
pub use cycles::{
    pancyclic_suite, two_factor, CellOutcome, PancyclicCell, PancyclicOptions, PancyclicReport, TwoFactor,
};
pub use split::{split_expander, SplitClassReport, SplitOutcome, SplitParams};
