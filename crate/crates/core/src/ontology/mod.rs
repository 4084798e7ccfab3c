//! The UTO schema, its alignment with neighbouring vocabularies, rule-based
//! inference and graph validation.

mod align;
mod inference;
pub mod owl;
mod schema;
mod validate;

pub use align::{canonicalize_term, expand_graph, normalize_literals};
pub use inference::infer_closure;
pub use owl::export_owl;
pub use schema::{
    builtin, load_schema, AlignmentEntry, AlignmentKind, Concept, ConceptDef, Relation, RelationDef,
    UtoSchema, UtoTerm, ValueType,
};
pub use validate::{tagging_nodes, validate, Rule, Violation};
