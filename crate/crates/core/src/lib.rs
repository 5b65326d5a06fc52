pub mod category;
pub mod error;
pub mod fi;
pub mod functors;
pub mod homological;
pub mod linalg;
pub mod module;
