//! Abstract syntax for predicate modal formulas and classical first-order
//! formulas over `{R, =}` extended with the translation letters.
//!
//! Both ASTs keep only the primitive connectives (`¬`, `∧`, `□`, `∀`) plus a
//! falsum constant; `∨`, `→`, `◇`, `∃`, `⊤` are desugared by the builder
//! functions and re-sugared by the printers.

mod families;
mod fol;
mod modal;
mod parse;

pub use families::{
    mk_alpha, mk_alt2, mk_beta, mk_delta, mk_epsilon, mk_gamma, mk_zeta, FamilyError, FormulaFamily,
};
pub use fol::FolFormula;
pub use modal::ModalFormula;
pub use parse::{parse_fol, parse_modal, ParseError};

use std::collections::BTreeMap;

use thiserror::Error;

/// Arity bookkeeping failures shared by both formula kinds.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArityError {
    #[error("predicate letter `{letter}` used with arity {first} and arity {second}")]
    Inconsistent {
        letter: String,
        first: usize,
        second: usize,
    },
    #[error("reserved letter `{letter}` must have arity {expected}, found {found}")]
    Reserved {
        letter: String,
        expected: usize,
        found: usize,
    },
}

/// Records `letter/arity` into `sig`, failing on a conflicting earlier use.
pub(crate) fn record_letter(
    sig: &mut BTreeMap<String, usize>,
    letter: &str,
    arity: usize,
) -> Result<(), ArityError> {
    match sig.get(letter) {
        Some(&known) if known != arity => Err(ArityError::Inconsistent {
            letter: letter.to_string(),
            first: known,
            second: arity,
        }),
        Some(_) => Ok(()),
        None => {
            sig.insert(letter.to_string(), arity);
            Ok(())
        }
    }
}
