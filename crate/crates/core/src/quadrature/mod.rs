mod adjoints;
mod bigcomplex;
mod ct;
mod inner;
mod norms;
mod weight;

pub use bigcomplex::{bits_for_digits, with_precision, working_precision, BigComplex, DEFAULT_PRECISION_BITS};
pub use ct::{circle_points, constant_term, Certificate, CtValue, Refinement, WeightMoments, N_MAX, N_START};
pub use weight::{
    delta_closed, eval_weight, nabla_closed, nabla_star, pochhammer, pochhammer_inf, pochhammer_inf_all, NumericParams,
    WeightEvaluator, WeightKind,
};
pub use inner::{inner_product, InnerKind, QuadConfig, Quadrature};
pub use norms::{
    norm_closed, norm_numeric, norm_table, normalized_norm, normalized_norm_displayed_positive, rat_pochhammer, recursion,
    verify_norms, NormRow, NormTolerances,
};
pub use adjoints::{
    apply_pointwise, named_adjoint_residual, phi_identity_sides, phi_matrix, random_laurent, random_symmetric,
    symmetric_adjoint_residual, verify_adjoints_numeric, AdjointTolerances,
};
