//! Exact eta invariants, harmonic spinors and holonomy data of compact flat
//! manifolds with holonomy group `Z_p`, `p` an odd prime.
//!
//! A manifold is described by [`ZpParams`] `(p, a, b, c)`, of dimension
//! `n = a(p − 1) + bp + c`. Spin structures are labelled by sign vectors and
//! an index `h ∈ {1, 2}`, and the Dirac operator is twisted by the characters
//! `k ↦ e^{2πikℓ/p}`.
//!
//! ```
//! use flateta_core::{eta_invariant, reduced_eta, validate, Rational, SpinStructure};
//!
//! let tricosm = validate(3, 1, 0, 1).unwrap();
//! assert_eq!(eta_invariant(&tricosm, 1, 0).unwrap(), Rational::new(-2, 3));
//! let rec = reduced_eta(&tricosm, &SpinStructure::trivial(&tricosm), 1).unwrap();
//! assert_eq!(rec.eta_bar_mod_z.value(), &Rational::new(2, 3));
//! ```

pub mod charsums;
pub mod error;
pub mod eta;
pub mod exact;
pub mod manifold;
pub mod numtheory;
pub mod spectrum;
pub mod verify;

pub use charsums::{
    f_direct, f_h_chi0, f_h_chip, g_h_chi0, g_h_chip, gauss_direct, gauss_g, trig_prod,
    trig_prod_direct, CharacterChoice, TrigKind,
};
pub use error::{Error, Result};
pub use eta::{
    eta_invariant, eta_invariant_via_series, eta_series_closed_form, eta_series_eval,
    eta_spectral_partial, hurwitz_zeta, invariant_records, reduced_eta, spectral_tail_bound,
    untwisted_closed_form, EtaClosedForm, InvariantRecord,
};
pub use exact::{radical_to_float, reduce_mod_z, RadicalValue, Rational, ResidueModZ, Unit};
pub use manifold::{
    build_holonomy, enumerate_spin_structures, holonomy_blocks, holonomy_checks, homology_h1,
    structure_classes, validate, validate_with_ideal, HolonomyBlock, HolonomyReport, Homology,
    IntegerMatrix, SpinStructure, StructureClass, ZpParams,
};
pub use numtheory::{
    class_number, delta_p, legendre, s_direct, s_h_pm, sum_legendre_odd_shift, sum_legendre_shift,
    weighted_legendre_sum, OddPrime, Sign,
};
pub use spectrum::{dim_ker, dim_ker_oracle, mult_diff, mult_diff_oracle, MultDiff, SpectralIndex};
pub use verify::{run_suite, Failure, Report, Suite, SweepSpec};
