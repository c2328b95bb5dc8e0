//! Predicate modal logic at desk scale.
//!
//! * [`syntax`]: modal and first-order ASTs, parsers, printers, and the
//!   named formula families.
//! * [`kripke`]: frames, predicate frames, models, classical structures and
//!   both satisfaction relations.
//! * [`frames`]: chains, rings, marked chains, unions, graph predicates and
//!   depth truncation.
//! * [`translate`]: standard translation, relativization, `M`, frame
//!   describers and the two embeddings.
//! * [`validity`]: frame validity by exhaustive interpretation search and
//!   bounded membership in the chain and ring logics.
//! * [`efgames`]: Ehrenfeucht–Fraïssé games over `{R, =}`-structures.
//! * [`document`]: the JSON exchange format for frames and models.
//! * [`gen`]: seeded random frames, models and formulas.
//! * [`verify`]: the batch report behind `predmodal verify-lemmas`.

pub mod document;
pub mod efgames;
pub mod frames;
pub mod gen;
pub mod kripke;
pub mod syntax;
pub mod translate;
pub mod validity;
pub mod verify;

pub use kripke::{
    eval_fol, eval_modal, model_to_structure, structure_to_model, Assignment, ClassicalStructure,
    Frame, KripkeModel, ModelError, PredicateFrame, World,
};
pub use syntax::{parse_fol, parse_modal, FolFormula, FormulaFamily, ModalFormula};
