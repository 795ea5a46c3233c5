//! Finite topological spaces with pairs of associated operators.
//!
//! Subsets of a ground set of at most 16 points are bitmasks; a finite
//! topology is stored through the minimal open neighbourhood of each point.
//! On top of that sit the classical generalized open sets (pre, semi, α, β,
//! b), bi-operator spaces with their B-open sets, maps between spaces, and
//! an exhaustive law verifier and witness miner for small sizes.

pub mod classes;
pub mod cover;
pub mod enumerate;
pub mod error;
pub mod expr;
pub mod io;
pub mod laws;
pub mod maps;
pub mod mine;
pub mod operator;
pub mod space;
pub mod subset;
pub mod topology;

pub use classes::{classify, ClassFlags, OpenClass};
pub use enumerate::{enumerate_topologies, EnumerationMode};
pub use error::{Error, Result};
pub use expr::Expr;
pub use maps::FiniteMap;
pub use operator::{NamedOperator, Operator, OperatorTable};
pub use space::{BiOperatorSpace, ConnectednessMode};
pub use subset::{GroundSet, Subset, SubsetFamily};
pub use topology::{product, Preorder, Topology};
