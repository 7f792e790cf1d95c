//! Series solutions of trinomial and multi-term power equations.
//!
//! The building block is the master series
//!
//! ```text
//! M(m;a;b;x) = m + x + sum_{l>=2} x^l/l! prod_{g=1}^{l-1} (m - a g + b l)
//! ```
//!
//! whose m = 1 member is the principal branch of the ultra-radical, the root
//! of y^a = 1 + a x y^b that tends to 1 as x -> 0. Other branches come from a
//! phase factor, points beyond the radius of convergence from two conjugate
//! transforms, and arbitrary trinomials A Y^a + B Y^b + C = 0 from a rescaling.
//!
//! ```
//! use ultraradical::{ultra, SolveOptions};
//! use num_complex::Complex64;
//!
//! let y = ultra(0, Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.0),
//!               &SolveOptions::default()).unwrap();
//! assert!((y.y.re - 1.618033988749895).abs() < 1e-14);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail range checks

pub mod continuation;
pub mod cx;
pub mod equation;
pub mod error;
pub mod hyper;
pub mod master;
pub mod merge;
pub mod radical;
pub mod series;
pub mod solver;

pub use continuation::{
    branch_phase, candidate_angle, imag_bf, principal_rule, sector_bounds, select_conjugate, select_trinomial,
    strict_candidate_count, transform_row, trinomial_row, Phase, PqProblem, Row, Sector, Selection, TransformRow,
};
pub use equation::{parse_ratio, MultiTermEq, PowerEquation, TrinomialEq};
pub use error::{Error, Result};
pub use hyper::{gauss_2f1, hyper_master_eval, pochhammer_2f1_reference, HyperParams, Triple};
pub use master::{
    convergence_radius, master_number, master_series_eval, series_coefficient, series_parity_part, super_master_eval,
    MasterParams, Parity, Radius, RadiusKind,
};
pub use merge::{merged_master_number, merged_series_eval, solve_multiterm, MergeOptions};
pub use radical::{
    ulog_derivative, ultra, ultra_derivative, ultra_from_ode, ultra_integral, ultralog, BranchValue, UltraLog,
};
pub use series::{SeriesEval, SeriesOptions, SeriesStatus};
pub use solver::{
    find_u, normalize, reduce_general, solve_pq, solver_aabbc, solver_abc, t_criterion, verify_root, RootReport, Route,
    SolveOptions,
};
