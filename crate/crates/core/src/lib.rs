//! Executable point-free topology on finite structures.
//!
//! The crate works without `std` (it needs `alloc`). Modules:
//!
//! - [`order`]: carriers, covers, refinement, meets, stars, restriction.
//! - [`frames`]: finite frames, spaces, points and spatiality.
//! - [`covering`]: covering relations, monoids of covers, the locally fine
//!   coreflection and Noetherian witnesses.
//! - [`products`]: products of covering monoids and frame coproducts.
//! - [`game`]: the supercompleteness game.
//! - [`formal`]: entailment over a commutative monoid presentation.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod bits;
pub mod covering;
pub mod formal;
pub mod frames;
pub mod game;
pub mod order;
pub mod products;
