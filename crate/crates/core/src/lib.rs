//! Character degree graphs `Δ(G)` of finite groups.
//!
//! * [`arith`]: exact 64-bit factorization, `π(n)`, Zsigmondy primes.
//! * [`chargraph`]: the graph type, degree sets and graph predicates.
//! * [`degrees`]: degree-set models for `PSL2(q)` and related groups.
//! * [`shapes`]: the `K3^c * C4` style shape language.
//! * [`classify`]: case classification for K4-free seven-vertex graphs with
//!   a `PSL2(2^f)` socle, plus the supporting enumeration scanners.

pub mod arith;
pub mod chargraph;
pub mod classify;
pub mod degrees;
pub mod shapes;

pub use arith::{factorize, is_prime, prime_divisors, zsigmondy, ArithError, Factorization};
pub use chargraph::{are_isomorphic, graph_from_cd, CharGraph, DegreeSet, GraphError};
pub use classify::{classify_f, verify_main, Case, CaseReport, ClassifyError};
pub use degrees::{cd_psl2, graph_psl2, DegreeError, GroupModel};
pub use shapes::{eval_shape, parse_shape, render_shape, GraphExpr, ParseError};
