//! Exit codes and the mapping of library errors onto them.

use std::fmt;

use thurwitz::chambers::ChamberError;
use thurwitz::hurwitz::HurwitzError;
use thurwitz::symgroup::{ConditionError, OracleError, ParseError, TypeError};
use thurwitz::wallcross::WallCrossError;

pub const VERIFICATION_FAILED: u8 = 1;
pub const FLAG_ERROR: u8 = 2;
pub const ON_WALL: u8 = 3;
pub const BUDGET_EXCEEDED: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: FLAG_ERROR, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError { code: VERIFICATION_FAILED, message: message.into() }
    }

    fn with(code: u8, e: &dyn fmt::Display) -> Self {
        CliError { code, message: e.to_string() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<ChamberError> for CliError {
    fn from(e: ChamberError) -> Self {
        match e {
            ChamberError::OnWall(_) => CliError::with(ON_WALL, &e),
            ChamberError::ZeroOnChamber(_) => CliError::with(VERIFICATION_FAILED, &e),
            _ => CliError::with(FLAG_ERROR, &e),
        }
    }
}

impl From<TypeError> for CliError {
    fn from(e: TypeError) -> Self {
        CliError::with(FLAG_ERROR, &e)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::with(FLAG_ERROR, &e)
    }
}

impl From<ConditionError> for CliError {
    fn from(e: ConditionError) -> Self {
        CliError::with(FLAG_ERROR, &e)
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BudgetExceeded(_) => CliError::with(BUDGET_EXCEEDED, &e),
            OracleError::Type(t) => t.into(),
            OracleError::Condition(c) => c.into(),
            OracleError::Sigma1Type(_) => CliError::with(VERIFICATION_FAILED, &e),
        }
    }
}

impl From<HurwitzError> for CliError {
    fn from(e: HurwitzError) -> Self {
        match e {
            HurwitzError::Chamber(c) => c.into(),
            HurwitzError::Type(t) => t.into(),
            HurwitzError::Branching { .. } => CliError::with(FLAG_ERROR, &e),
            _ => CliError::with(VERIFICATION_FAILED, &e),
        }
    }
}

impl From<WallCrossError> for CliError {
    fn from(e: WallCrossError) -> Self {
        match e {
            WallCrossError::Hurwitz(h) => h.into(),
            WallCrossError::Chamber(c) => c.into(),
            WallCrossError::Oracle(o) => o.into(),
            WallCrossError::Condition(c) => c.into(),
            WallCrossError::NonAdjacent | WallCrossError::InconsistentConditions(_) | WallCrossError::MixedMonotone => {
                CliError::with(FLAG_ERROR, &e)
            }
        }
    }
}
