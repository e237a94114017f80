pub mod error;
pub mod fluent;
pub mod geometry;
pub mod motion;
pub mod narrative;
pub mod schemas;
pub mod spatial;
pub mod store;
pub mod temporal;
pub mod time;
