//! Büchi automata over letters that are sets of atoms.

mod complement;
mod emptiness;
mod guard;
mod hoa;
mod nba;
mod ops;
mod product;

use thiserror::Error;

pub use complement::{complement, complement_with_method, Method, MAX_LETTER_ATOMS};
pub use emptiness::{is_empty, LassoWitness, ReplayError};
pub use guard::{bits, minterms, Cube, Guard, Mask};
pub use hoa::{parse_hoa, to_dot, to_hoa};
pub use nba::{Nba, NbaStats};
pub use ops::{at_marker, bound_counter, exactly_once, intersect, mask_of, only_at_zero, project_markers, retarget_marker, union, Retarget};
pub use product::{find_pumpable_fair_path, product_with_kripke, replay_pumpable, FairProduct, PumpReplayError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomataError {
    #[error("automata support at most 64 atoms, got {0}")]
    TooManyAtoms(usize),
    #[error("atom inventories differ (`{0}`)")]
    InventoryMismatch(String),
    #[error("unknown marker or atom `{0}`")]
    UnknownMarker(String),
    #[error("blow-up budget of {budget} states exceeded{context}")]
    Budget { budget: usize, context: String },
    #[error("letter enumeration over {0} atoms exceeds the limit")]
    Alphabet(usize),
    #[error("bound must be at least 1")]
    ZeroBound,
    #[error("HOA line {line}: {msg}")]
    Hoa { line: usize, msg: String },
}

impl AutomataError {
    /// Attaches the subformula whose compilation failed.
    pub fn in_context(self, what: &str) -> Self {
        match self {
            AutomataError::Budget { budget, .. } => AutomataError::Budget { budget, context: format!(" while compiling `{what}`") },
            e => e,
        }
    }
}
