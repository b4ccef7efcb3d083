pub mod cone;
pub mod error;
pub mod exactlin;
pub mod facedecomp;
pub mod grothendieck;
pub mod hilbert;
pub mod monoidexpr;
pub mod sampling;
pub mod treegroup;

pub use error::{ExprError, LinError, PresentationError, TreeError};
