pub mod engine;
pub mod frontend;
pub mod ground;
pub mod logic;
pub mod model;
pub mod sat;
pub mod unify;
