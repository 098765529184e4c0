//! Combinatorial calculus of Lefschetz fibrations over surfaces.
//!
//! A fibration is recorded by its monodromy sequence: a word of signed Dehn
//! twists (one per critical value), bundle words for the base generators, and
//! structure-twist bookkeeping for exceptional fibers. Mapping classes are
//! compared through their integral symplectic images, signatures come from
//! the Meyer cocycle in exact arithmetic, and the cobordism invariants
//! `sigma` and `eta` are evaluated on lists of representatives.

pub mod cobordism;
pub mod error;
pub mod fibration;
pub mod io;
pub mod linalg;
pub mod mcg;
pub mod meyer;
pub mod surfaces;
pub mod universal;
pub mod verdict;

pub use cobordism::{
    apply_move, class_sum, eta_class, forgetful_phi, invariant_image_lattice, sigma_class,
    CobordismClass, ImageLattice, MoveWitness,
};
pub use error::{Error, Result};
pub use fibration::{
    critical_counts, euler_characteristic, eta, fiber_sum, pullback_cover, reverse_orientation,
    singular_compatibility_check, twist, twist_normalize, validate, BaseSurface, CoverAssignment,
    CoverComponent, FibrationData, HurwitzDirection, SingularMonodromyData, ValidationReport,
};
pub use io::{parse, print, Diagnostic, DiagnosticCode, Document};
pub use mcg::{
    relation_library, transvection_matrix, validate_presentation, word_to_matrix, Presentation,
    PresentationReport, RelationName, Sign, SignedTwist, SymplecticMatrix, TwistWord,
};
pub use meyer::{
    calibrate_local_terms, fibration_signature, meyer_cocycle, signature_of_form, Calibration,
    MeyerValue, RationalSymmetricForm,
};
pub use surfaces::{
    essential_curve_class_count, intersection_pairing, is_exceptional, surger, CurveClass,
    FiberSurface, HomologyClass, MarkedSurface, Pi1Kind, StructureTwist,
};
pub use universal::{
    build_universal_dim2, build_universal_dim3_plan, cobordism_image_report, lambda_generator,
    universality_report_dim2, universality_report_dim3, HandlePlan3, PlanStep, UniversalData2,
    UniversalityReport,
};
pub use verdict::{Evidence, Verdict};
