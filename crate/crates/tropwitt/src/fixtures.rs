//! Reference tables shipped as data files and read with [`crate::expr`].

use tropwitt_core::QPoly;

use crate::expr::{parse_poly, ExprError};

/// `S_1 … S_10` in `x, y`, as typeset.
pub const WITT_POLYS_K2: &str = include_str!("../fixtures/witt_polys_k2.tex");

/// `a_1 … a_6` in `b_1 … b_5`, as typeset.
pub const T_POWER_TABLE: &str = include_str!("../fixtures/t_power_table.tex");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FixtureError {
    #[error("row {row}: {source}")]
    Expr { row: String, source: ExprError },
    #[error("row {0:?} has no index")]
    BadName(String),
}

/// A named row `name_i = expression`.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub index: usize,
    pub source: String,
    pub poly: QPoly,
}

/// Reads every `NAME_i = & expr \\` row of an `array` block.
pub fn parse_table(text: &str, vars: &[&str]) -> Result<Vec<TableRow>, FixtureError> {
    let mut out = Vec::new();
    for line in text.lines() {
        let Some((lhs, rhs)) = line.split_once('&') else { continue };
        let name = lhs.trim().trim_end_matches('=').trim();
        let index = name
            .split_once('_')
            .map(|(_, i)| i.trim_matches(|c| c == '{' || c == '}'))
            .and_then(|i| i.parse().ok())
            .ok_or_else(|| FixtureError::BadName(name.into()))?;
        let src = rhs.trim().trim_end_matches("\\\\").trim();
        let poly = parse_poly(src, vars).map_err(|source| FixtureError::Expr { row: name.into(), source })?;
        out.push(TableRow { index, source: src.into(), poly });
    }
    Ok(out)
}

pub fn witt_polys_k2() -> Result<Vec<TableRow>, FixtureError> {
    parse_table(WITT_POLYS_K2, &["x", "y"])
}

pub const B_VARS: [&str; 5] = ["b_1", "b_2", "b_3", "b_4", "b_5"];

pub fn t_power_table() -> Result<Vec<TableRow>, FixtureError> {
    parse_table(T_POWER_TABLE, &B_VARS)
}
