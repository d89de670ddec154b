//! Crystal bases as lattice points of polyhedra: tensor-product crystals, the
//! `Z^∞` realizations of `B(∞)` and `B(λ)`, generation of their defining
//! inequality systems, closed-form systems for rank 2 and type `A_n`, and the
//! piecewise-linear braid isomorphisms between elementary-crystal tensors.

pub mod braid;
pub mod cartan;
pub mod crystal;
pub mod error;
pub mod graph;
pub mod polyhedral;
pub mod registry;
pub mod special;
pub mod zcrystal;

pub use cartan::{CartanData, CartanFile, Sequence, Weight};
pub use crystal::{
    Bracketing, Crystal, ExtInt, Letter, TensorCrystal, TensorElem, Violation, ViolationKind,
};
pub use error::{Error, Result};
pub use graph::CrystalGraph;
pub use polyhedral::{FormSet, LinearForm};
pub use registry::Builtin;
pub use zcrystal::{Mode, ZCrystal, ZVector};
