//! Welded graphs, Gauss diagrams, reduced Magnus expansions and non-repeated
//! Milnor invariants.
//!
//! The crate is organised bottom-up: [`freegroup`] words are the currency of
//! every other module, [`magnus`] turns them into power series, [`wgraph`]
//! holds the move engine, [`gauss`] the diagram side, [`convert`] the maps
//! between the two, and [`peripheral`] / [`milnor`] the invariants.
//! Text formats live in [`format`] and the randomized harness in [`fuzz`].

pub mod convert;
pub mod format;
pub mod freegroup;
pub mod fuzz;
pub mod gauss;
pub mod magnus;
pub mod milnor;
pub mod peripheral;
pub mod random;
pub mod wgraph;
pub mod wirtinger;

pub use freegroup::{Gen, Letter, Sign, Word};
pub use gauss::{ArrowId, GaussDiagram, GaussMove};
pub use magnus::Series;
pub use milnor::MilnorTable;
pub use wgraph::{Move, WGraph};
