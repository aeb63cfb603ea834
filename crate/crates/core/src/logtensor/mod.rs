//! Residue tensors Λ^p(C^r*), their decompositions, and the correspondence
//! with denominator-cleared logarithmic forms.

pub mod poles;
pub mod tensor;

pub use poles::{expand, LogFoliationSpec, PoleSystem};
pub use tensor::{
    decompose, decompose_corank2, is_decomposable, plucker_defects, radial_contraction, radial_kernel, random_covector,
    random_decomposable, random_tensor, tensor_contract, tensor_kernel, tensor_wedge, wedge_all, Corank2Decomposition,
    Covector, Decomposition, ResidueTensor,
};
