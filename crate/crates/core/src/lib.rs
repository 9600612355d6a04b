//! Cactus groups `J_n` and affine cactus groups `AJ_n`: word problem, Cayley
//! balls, cube-complex conditions and the `{4,6}` picture of `AJ_3`.

pub mod cayley;
pub mod cli;
pub mod graph;
pub mod group;
pub mod hyperbolic;
pub mod rewriting;
pub mod verify;

pub use group::{Family, Generator, GroupError, GroupSpec, RelationKind};
pub use rewriting::{normalize, NormalForm, Word};
