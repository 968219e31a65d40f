//! Lambda terms compiled to interaction nets over the `{lam, psi, del, eps}`
//! system and its directed six-symbol variant, reduced in the interaction
//! calculus and read back to lambda terms.

pub mod directed;
pub mod encode;
pub mod lambda;
pub mod net;
pub mod pipeline;
pub mod readback;
pub mod supply;
pub mod undirected;

pub use lambda::LambdaTerm;
pub use net::{Configuration, Equation, NetTerm, Symbol};
pub use supply::NameSupply;
