pub mod atlas;
pub mod cli;
pub mod complex;
pub mod flips;
pub mod homology;
pub mod iso;
pub mod search;
pub mod symmetry;
