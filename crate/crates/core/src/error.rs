use std::fmt;

/// A single failed axiom instance, named by the elements that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TypeMismatch(String),
    NotTransitive(String),
    NoIdentity(String),
    NotEnriched(String),
    NotCompatible(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TypeMismatch(w) => write!(f, "type mismatch at {w}"),
            Violation::NotTransitive(w) => write!(f, "composition not bounded at {w}"),
            Violation::NoIdentity(w) => write!(f, "identity not below diagonal at {w}"),
            Violation::NotEnriched(w) => write!(f, "functor condition fails at {w}"),
            Violation::NotCompatible(w) => write!(f, "action not bounded at {w}"),
        }
    }
}

fn list(vs: &[Violation]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("lattice has no elements")]
    EmptyLattice,
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    Cycle(String, String),
    #[error("not a complete lattice: {0}")]
    NotALattice(String),
    #[error("missing table entry for {0}")]
    MissingEntry(String),
    #[error("conflicting table entry for {0}")]
    ConflictingEntry(String),
    #[error("multiplication is not associative at {0}")]
    NotAssociative(String),
    #[error("multiplication does not preserve joins at {0}")]
    NotJoinPreserving(String),
    #[error("bad unit: {0}")]
    BadUnit(String),
    #[error("bad identity: {0}")]
    BadIdentity(String),
    #[error("bad involution: {0}")]
    BadInvolution(String),
    #[error("no involution available")]
    NoInvolution,
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("invalid Q-category: {}", list(.0))]
    InvalidCategory(Vec<Violation>),
    #[error("invalid functor: {}", list(.0))]
    InvalidFunctor(Vec<Violation>),
    #[error("invalid distributor: {}", list(.0))]
    InvalidDistributor(Vec<Violation>),
    #[error("operands live over different base quantaloids")]
    BaseMismatch,
    #[error("categories do not match: {0}")]
    CategoryMismatch(String),
    #[error("distributor is not a left adjoint: {0}")]
    NotLeftAdjoint(String),
    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    EnumerationBudgetExceeded { needed: u128, budget: u64 },
    #[error("category is not separated: {0}")]
    NotSeparated(String),
    #[error("category is not cocomplete: {0}")]
    NotCocomplete(String),
    #[error("category is not Cauchy complete: {0}")]
    NotCauchyComplete(String),
    #[error("base is not stable at `{0}`")]
    NotStable(String),
    #[error("cone does not factor: {0}")]
    ConeFails(String),
    #[error("not symmetric: {0}")]
    NotSymmetric(String),
    #[error("base is not a diagonal quantaloid of the given quantale")]
    WrongBase,
    #[error("value is not in the required hom-space: {0}")]
    MembershipFails(String),
    #[error("divisibility fails at {0}")]
    DivisibilityFails(String),
    #[error("transitivity fails at {0}")]
    TransitivityFails(String),
    #[error("symmetry fails at {0}")]
    SymmetryFails(String),
    #[error("quantale has no unit")]
    NotUnital,
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
