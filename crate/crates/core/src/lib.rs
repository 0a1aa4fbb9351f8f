//! Exact non-backtracking random walk quantities on small simple graphs:
//! hitting times, return times, fundamental matrices and both vertex-space
//! Kemeny constants, together with the simple-walk counterparts, closed forms
//! for named families and corpus survey records.
//!
//! ```
//! use nbkemeny::{families::FamilySpec, nb_vertex::nb_kemeny_pair};
//!
//! let k4 = FamilySpec::Complete { n: 4 }.generate().unwrap();
//! let (hitting, trace) = nb_kemeny_pair(&k4).unwrap();
//! assert!((hitting - 1.75).abs() < 1e-12);
//! assert!((trace.unwrap() - 1.75).abs() < 1e-12);
//! ```

pub mod closed_forms;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod nb_edge;
pub mod nb_vertex;
pub mod numerics;
pub mod report;
pub mod srw;
pub mod survey;
pub mod symmetry;

pub use error::{Error, Result};
pub use families::FamilySpec;
pub use graph::{validate_for_nbrw, EdgeSpace, Graph, NbrwClass};
pub use graph6::{parse_graph6, write_graph6};
pub use numerics::DenseMatrix;
