//! Operators, series and connection matrices over `K((x))`.

pub mod matrix;
pub mod newton;
pub mod operator;
pub mod series;

pub use matrix::ConnectionMatrix;
pub use newton::{newton_polygon, slopes, Edge, NewtonPolygon};
pub use operator::DiffOperator;
pub use series::Series;
