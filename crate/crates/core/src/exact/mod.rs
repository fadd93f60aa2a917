//! Exact scalar arithmetic and the elementary combinatorics shared by every
//! other module.

pub mod bernoulli;
pub mod combinat;
pub mod poly;
pub mod rational;

pub use bernoulli::{bernoulli_at, bernoulli_polynomial};
pub use combinat::{
    elementary_symmetric, falling_factorial, generalized_stirling, multiset_partition_tuples,
    partition_automorphisms, partitions_bounded, MultisetPartitionTuple, Partition,
};
pub use poly::UniPoly;
pub use rational::Rational;
