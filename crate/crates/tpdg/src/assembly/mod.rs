//! Discrete operators: interior-penalty forms, block system, load vectors.

pub mod block;
pub mod forms;
pub mod loads;
pub mod penalty;

pub use block::{build_block_system, BlockSystem};
pub use forms::{assemble_forms, assemble_forms_detailed, verify_quadrature, Forms};
pub use loads::{LoadAssembler, LoadModel, ZeroLoads};
pub use penalty::{penalty_on_face, penalty_value, PenaltyCoefficients, PenaltyKind};
