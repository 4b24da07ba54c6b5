//! W(1+infinity) and Heisenberg-Virasoro fields, the vertex-operator mode
//! engine, and spectral-flow twists of vacuum states.

pub mod engine;
pub mod fields;
pub mod relations;
pub mod states;
pub mod twist;

pub use engine::{mode_act, translation, Engine};
pub use fields::{act_h, act_l, act_lw, derivative_coefficient, FieldOp};
pub use relations::relation_probe;
pub use twist::delta_twist;
