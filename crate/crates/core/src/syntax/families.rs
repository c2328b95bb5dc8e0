//! The named formula families: α, β, γ, δ, ε, alt₂ and ζ.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::ModalFormula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{family} needs n >= {min}, got {n}")]
    IndexTooSmall {
        family: &'static str,
        min: usize,
        n: usize,
    },
    #[error("unknown formula family `{0}`")]
    Unknown(String),
}

fn at_least(family: &'static str, min: usize, n: usize) -> Result<(), FamilyError> {
    if n < min {
        Err(FamilyError::IndexTooSmall { family, min, n })
    } else {
        Ok(())
    }
}

fn p() -> ModalFormula {
    ModalFormula::prop("p")
}

/// `◇□⊥`: the world sees a dead end.
fn sees_dead_end() -> ModalFormula {
    ModalFormula::poss(ModalFormula::nec(ModalFormula::bot()))
}

/// `α_n = ◇□⊥ ∧ ◇ⁿ□⊥`.
pub fn mk_alpha(n: usize) -> Result<ModalFormula, FamilyError> {
    at_least("alpha", 1, n)?;
    Ok(ModalFormula::and(
        sees_dead_end(),
        ModalFormula::diamond_n(n, ModalFormula::nec(ModalFormula::bot())),
    ))
}

/// `β_n = ◇□⊥ ∧ ◇ⁿ◇□⊥ ∧ ⋀_{k=2}^{n-1} ¬◇ᵏ◇□⊥`.
///
/// For `n = 2` the trailing conjunction is empty and is left out.
pub fn mk_beta(n: usize) -> Result<ModalFormula, FamilyError> {
    at_least("beta", 2, n)?;
    let head = ModalFormula::and(sees_dead_end(), ModalFormula::diamond_n(n, sees_dead_end()));
    Ok((2..n).fold(head, |acc, k| {
        ModalFormula::and(
            acc,
            ModalFormula::not(ModalFormula::diamond_n(k, sees_dead_end())),
        )
    }))
}

/// `γ = ◇□⊥ ∨ (◇p → □p)`.
pub fn mk_gamma() -> ModalFormula {
    ModalFormula::or(sees_dead_end(), mk_zeta())
}

/// `δᵏ_n = ◇ᵏβ_n ∧ p → ◇ⁿp`.
pub fn mk_delta(k: usize, n: usize) -> Result<ModalFormula, FamilyError> {
    let beta = mk_beta(n)?;
    Ok(ModalFormula::implies(
        ModalFormula::and(ModalFormula::diamond_n(k, beta), p()),
        ModalFormula::diamond_n(n, p()),
    ))
}

/// `ε_n = β_n ∧ p → □ⁿ(β_n ∧ p)`.
pub fn mk_epsilon(n: usize) -> Result<ModalFormula, FamilyError> {
    let guarded = ModalFormula::and(mk_beta(n)?, p());
    Ok(ModalFormula::implies(
        guarded.clone(),
        ModalFormula::box_n(n, guarded),
    ))
}

/// `alt₂ = □p₁ ∨ □(p₁ → p₂) ∨ □(p₁ ∧ p₂ → p₃)`.
pub fn mk_alt2() -> ModalFormula {
    let (p1, p2, p3) = (
        ModalFormula::prop("p1"),
        ModalFormula::prop("p2"),
        ModalFormula::prop("p3"),
    );
    ModalFormula::or(
        ModalFormula::or(
            ModalFormula::nec(p1.clone()),
            ModalFormula::nec(ModalFormula::implies(p1.clone(), p2.clone())),
        ),
        ModalFormula::nec(ModalFormula::implies(ModalFormula::and(p1, p2), p3)),
    )
}

/// `ζ = ◇p → □p`.
pub fn mk_zeta() -> ModalFormula {
    ModalFormula::implies(ModalFormula::poss(p()), ModalFormula::nec(p()))
}

/// A member of one of the named families, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormulaFamily {
    Alpha(usize),
    Beta(usize),
    Gamma,
    Delta { k: usize, n: usize },
    Epsilon(usize),
    Alt2,
    Zeta,
}

impl FormulaFamily {
    pub fn formula(&self) -> Result<ModalFormula, FamilyError> {
        match *self {
            FormulaFamily::Alpha(n) => mk_alpha(n),
            FormulaFamily::Beta(n) => mk_beta(n),
            FormulaFamily::Gamma => Ok(mk_gamma()),
            FormulaFamily::Delta { k, n } => mk_delta(k, n),
            FormulaFamily::Epsilon(n) => mk_epsilon(n),
            FormulaFamily::Alt2 => Ok(mk_alt2()),
            FormulaFamily::Zeta => Ok(mk_zeta()),
        }
    }
}

impl fmt::Display for FormulaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaFamily::Alpha(n) => write!(f, "alpha{n}"),
            FormulaFamily::Beta(n) => write!(f, "beta{n}"),
            FormulaFamily::Gamma => f.write_str("gamma"),
            FormulaFamily::Delta { k, n } => write!(f, "delta{k}_{n}"),
            FormulaFamily::Epsilon(n) => write!(f, "epsilon{n}"),
            FormulaFamily::Alt2 => f.write_str("alt2"),
            FormulaFamily::Zeta => f.write_str("zeta"),
        }
    }
}

/// Accepts the `Display` spelling: `alpha3`, `beta4`, `gamma`, `delta1_2`,
/// `epsilon3`, `alt2`, `zeta`.
impl FromStr for FormulaFamily {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || FamilyError::Unknown(s.to_string());
        let num = |digits: &str| digits.parse::<usize>().map_err(|_| unknown());
        match s {
            "gamma" => return Ok(FormulaFamily::Gamma),
            "alt2" => return Ok(FormulaFamily::Alt2),
            "zeta" => return Ok(FormulaFamily::Zeta),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("alpha") {
            Ok(FormulaFamily::Alpha(num(rest)?))
        } else if let Some(rest) = s.strip_prefix("beta") {
            Ok(FormulaFamily::Beta(num(rest)?))
        } else if let Some(rest) = s.strip_prefix("epsilon") {
            Ok(FormulaFamily::Epsilon(num(rest)?))
        } else if let Some(rest) = s.strip_prefix("delta") {
            let (k, n) = rest.split_once('_').ok_or_else(unknown)?;
            Ok(FormulaFamily::Delta {
                k: num(k)?,
                n: num(n)?,
            })
        } else {
            Err(unknown())
        }
    }
}
