//! Reductive Lie-algebra data: Cartan split 𝔤 = 𝔭 ⊕ 𝔨, structure constants,
//! the invariant form, semisimple elements and centralizer decompositions.

mod centralizer;
mod element;
mod io;
mod model;

pub use centralizer::{centralizer_decomposition, null_space_in, CentralizerDecomposition, SVD_CUTOFF};
pub use element::{ElementKind, SemisimpleElement};
pub use io::{load_model, parse_model};
pub use model::{casimir_constants, laplacian_shift, LieAlgebraModel, ModelResiduals};
