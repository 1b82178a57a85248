//! Executable game semantics for sequoidal categories.

pub mod coalgebra;
pub mod comonoid;
pub mod composition;
pub mod connectives;
pub mod error;
pub mod game;
pub mod rel_model;
pub mod stateful;
pub mod strategy;
pub mod transfinite_win;

pub use error::{GameError, Result};
