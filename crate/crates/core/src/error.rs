use thiserror::Error;

use crate::scalar::ScalarField;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large")]
    ModulusTooLarge(u64),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(ScalarField, ScalarField),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("structure constants have wrong shape: {0}")]
    Shape(String),
    #[error("associativity fails on (e{i} e{j}) e{l}: {left} != {right}")]
    AssociativityViolation {
        i: usize,
        j: usize,
        l: usize,
        left: String,
        right: String,
    },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not a ring morphism: f(e{i} e{j}) != f(e{i}) f(e{j})")]
    NotMultiplicative { i: usize, j: usize },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(ScalarField, ScalarField),
    #[error("idempotent family entry {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("sup table entry for {0:?} does not dominate its members")]
    BadSup(Vec<usize>),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ModuleError {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("action does not respect multiplication at (e{i}, e{j})")]
    ActionNotMultiplicative { i: usize, j: usize },
    #[error("left and right actions do not commute at (a{i}, b{j})")]
    ActionsDoNotCommute { i: usize, j: usize },
    #[error("subspace is not invariant under the action of e{0}")]
    NotInvariant(usize),
    #[error("map does not intertwine the action of e{0}")]
    NotIntertwiner(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TensorError {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("induced map does not annihilate relation {0}")]
    RelationNotAnnihilated(usize),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SeparabilityError {
    #[error("no idempotent in the family covers the coefficients of the element")]
    NoLocalUnit,
    #[error("|G| e is not invertible in eBe (|G|B = B fails)")]
    NotInvertible,
    #[error("module is not firm")]
    NotFirm,
    #[error("map is not linear over the base ring (basis element {0})")]
    NotBLinear(usize),
    #[error("operator output is not linear over the extension (basis element {0})")]
    OutputNotLinear(usize),
    #[error("assembled certificate was rejected: {0}")]
    CertificateRejected(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SemisimpleError {
    #[error("module is not s-unital over an s-unital ring")]
    NotSUnital,
    #[error("radical over {0} requires dimension at most {1}")]
    UnsupportedCharacteristic(ScalarField, usize),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CategoryError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("composition {0} o {1} is missing")]
    MissingComposite(String, String),
    #[error("composition {0} o {1} = {2} has the wrong type")]
    IllTypedComposite(String, String, String),
    #[error("composition of non-composable {0} o {1}")]
    NotComposable(String, String),
    #[error("identity law fails for `{0}`")]
    IdentityLaw(String),
    #[error("associativity fails on ({0} o {1}) o {2}")]
    Associativity(String, String, String),
    #[error("functor error: {0}")]
    Functor(String),
    #[error("search budget of {0} evaluations exceeded")]
    SearchBudgetExceeded(u64),
}
