//! Minimum cost homomorphisms to semicomplete digraphs with possible loops:
//! a complete polynomial/NP-hard classifier with verifiable certificates,
//! exact solvers for the polynomial cases (minimum cut over a threshold
//! network, and cycle label propagation), a brute-force oracle, and the
//! independent-set reductions that witness the hard cases.

pub mod classifier;
pub mod digraph;
pub mod enumerate;
pub mod graph;
mod maxflow;
pub mod ordering;
pub mod random;
pub mod recognition;
pub mod reductions;
pub mod solver;

pub use classifier::{
    classify_reflexive, classify_via_composition, classify_wpl, Classification, ClassifyError,
    HardnessWitness,
};
pub use digraph::{Digraph, GraphError, LoopSplit};
pub use enumerate::{all_semicomplete_wpl, all_simple_graphs};
pub use graph::Graph;
pub use ordering::{
    build_minmax_wpl, check_minmax, decompose_tt_composition, orient_component, order_components,
    slices_are_intervals, Block, BlockKind, DecomposeFailure, Decomposition, MinMaxViolation,
    MissingPair, OrderingError, VertexOrdering,
};
pub use random::{
    random_costs, random_digraph, random_graph, random_semicomplete_wpl, SplitMix64,
};
pub use recognition::{
    check_umbrella, find_pattern, find_pig_witness, is_transitive_tournament, umbrella_ordering,
    PatternHit, PatternKind, PigWitness, PigWitnessKind, RecognitionError, UmbrellaOutcome,
};
pub use reductions::{
    extract_independent_set, is_independent, mis_bruteforce, reduce_mis_gadget, reduce_mis_rprime,
    ReductionError, ReductionInstance, ReductionKind, VertexOrigin,
};
pub use solver::{
    build_network, solve, solve_bruteforce, solve_cycle, solve_minmax, verify_hom, Capacity, Cost,
    CostMatrix, Homomorphism, NetArc, SolveOutcome, SolverError, ThresholdNetwork,
};
