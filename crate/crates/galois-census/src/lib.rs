pub mod balls;
pub mod classify;
pub mod matrix;
pub mod modp;
pub mod poly;
pub mod stauduhar;
pub mod wedge;
