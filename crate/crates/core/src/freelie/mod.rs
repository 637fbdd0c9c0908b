//! The free Lie algebra on `X0, X1, X2`: formal brackets, a Hall basis with
//! exact rewriting, the named bracket families and their expansion identities.

mod bracket;
mod coefficients;
mod families;
mod hall;
mod lie;
mod obstruction_set;

pub use bracket::{hall_cmp, hall_decompose, Bracket, Counts, Generator};
pub use coefficients::{expand_coefficients, shift_coefficients, CoeffKind};
pub use families::{c, identify, m, w, Control, Family};
pub use hall::{BasisConfig, HallBasis, HallError, DEFAULT_CAP};
pub use lie::LieElement;
pub use obstruction_set::{in_obstruction_set, truncation_order, ObstructionParams, ParamError};
