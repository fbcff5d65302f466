//! Limit linear series: EHT data, linked series and the maps between them.

pub mod adapted;
pub mod chain;
pub mod compare;
pub mod eht;
pub mod increase_b;
pub mod linked;
pub mod vanishing;
pub mod witness;

pub use compare::{eht_to_linked, eht_to_linked_unchecked, eht_to_linked_with, TieBreak};
pub use eht::EhtSeries;
pub use linked::{LinkedSeries, Variant};
pub use vanishing::{vanishing_sequence, ComponentSpace};
