//! Combinatorial models of polyhedral products and the group theory that
//! feeds them: simplicial complexes, exact integral homology via Smith
//! normal form, the cubical model of a product of marked intervals over a
//! complex, finite-group analysis (central series, transitive commutation,
//! commuting tuples), and graph products of groups with canonical word
//! forms and the extension-problem decision.

pub mod cli;
pub mod corpus;
pub mod graphprod;
pub mod groups;
pub mod homology;
pub mod io;
pub mod polyproduct;
pub mod simplicial;
