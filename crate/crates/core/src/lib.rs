//! Cohomology and Chern-class bookkeeping for codimension-one distributions
//! on weighted complete intersection Fano threefolds of Picard rank one.

pub mod bott;
pub mod chow;
pub mod criteria;
pub mod exact_arith;
pub mod les;
pub mod reproduce;
pub mod variety;
