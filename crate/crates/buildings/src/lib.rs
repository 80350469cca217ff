//! Exact-arithmetic buildings for `GL_n`.
//!
//! The crate has three concrete geometries sharing one filtration calculus:
//!
//! * [`tits`] — the vectorial Tits building of `GL_n` over an exact field:
//!   frames, flags, pairings, the vector distance, dominance order,
//!   filtration addition and retractions.
//! * [`valnorm`] — the Goldman-Iwahori building of splittable norms over
//!   `(Q, v_p)`: adapted bases, Cartan invariants, Moy-Prasad balls and the
//!   residue-field `loc` functor.
//! * [`symspace`] — the symmetric space of Euclidean norms on `R^n`,
//!   with Fischer-Courant invariants (floating point, explicit tolerances).
//!
//! [`axioms`] checks the affine building axioms A1-A8 against all three
//! through one `BuildingInstance` contract; [`oracles`] holds the
//! independent brute-force references the fast paths are tested against,
//! [`sample`] the seeded generators, and [`jsonio`] the file formats.
//!
//! The exact kernel ([`linalg`], [`filtration`], [`tits`]) is generic over a
//! [`field::Field`] scalar; the aliases below fix the two instances used
//! throughout: arbitrary-precision rationals and prime residue fields.

pub mod axioms;
pub mod field;
pub mod filtration;
pub mod jsonio;
pub mod linalg;
pub mod oracles;
pub mod sample;
pub mod symspace;
pub mod tits;
pub mod valnorm;

pub use field::{Fp, Rat};

/// Subspace of `Q^n` in canonical echelon form.
pub type QSubspace = linalg::Subspace<Rat>;
/// Dense matrix over `Q`.
pub type QMatrix = linalg::Matrix<Rat>;
/// Rational-weight filtration on `Q^n`.
pub type QFiltration = filtration::Filtration<Rat>;
/// Rational-weight filtration on `F_p^n` (the target of `valnorm::loc`).
pub type FpFiltration = filtration::Filtration<Fp>;
/// Graduation (direct-sum splitting) over `Q`.
pub type QGraduation = filtration::Graduation<Rat>;
/// Frame (decomposition into lines) over `Q`.
pub type QFrame = tits::Frame<Rat>;
/// Flag (increasing chain of proper subspaces) over `Q`.
pub type QFlag = tits::Flag<Rat>;
