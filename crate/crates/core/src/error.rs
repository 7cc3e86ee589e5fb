use thiserror::Error;

/// Errors raised by fan, surgery, class and invariant computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("fan is not Calabi-Yau")]
    NotCalabiYau,
    #[error("rays do not span the lattice")]
    RaysDoNotSpan,
    #[error("ray {0} is not a compact divisor ray")]
    NotCompactRay(usize),
    #[error("ray index {0} out of range")]
    RayOutOfRange(usize),
    #[error("cone {0:?} is not a maximal cone of the fan")]
    NotAMaximalCone([usize; 3]),
    #[error("cone {cone:?} is not smooth (|det| = {det})")]
    NotSmooth { cone: [usize; 3], det: i64 },
    #[error("compactification failed at cone {cone:?}: {reason}")]
    CompactificationFailed { cone: [usize; 3], reason: String },
    #[error("wall {0:?} is not a compact wall")]
    NotCompactWall([usize; 2]),
    #[error(
        "wall is not a simple (-1,-1) flop wall: relation {relation:?} on rays {rays:?} (apexes first)"
    )]
    NotSimpleFlopWall { rays: [usize; 4], relation: [i64; 4] },
    #[error("chosen fixed point does not yield a simple flop: {0}")]
    FixedPointNotSimpleFlop(String),
    #[error("removing ray {ray} leaves an invalid fan: {reason}")]
    RemoveRayFailed { ray: usize, reason: String },
    #[error("expected a {0} step")]
    WrongStepKind(&'static str),
    #[error("surgery trace does not replay: {0}")]
    TraceMismatch(String),
    #[error("class is not in the kernel of the ray matrix")]
    NotInKernel,
    #[error("class has length {got}, fan has {expected} rays")]
    ClassLength { expected: usize, got: usize },
    #[error("class has entry {entry} at removed ray {ray}; it does not descend")]
    ClassDoesNotDescend { ray: usize, entry: i64 },
    #[error("rays {0} and {1} are not opposite")]
    RaysNotOpposite(usize, usize),
    #[error("class is not an integral combination of the basis")]
    NotIntegralInBasis,
    #[error("basis classes are linearly dependent")]
    DependentBasis,
    #[error("skew shape is invalid: inner partition is not contained in outer")]
    InvalidSkewShape,
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole of order {0} at t = 1")]
    PoleAtOne(u32),
    #[error("convention mismatch: non-integer invariant {value} for class {class:?}")]
    ConventionMismatch { class: Vec<i64>, value: String },
    #[error("no positive grading on the curve classes of the web")]
    NoPositiveGrading,
    #[error("class {0:?} is not reachable within the degree cap; increase degree cap to {1}")]
    IncreaseDegreeCap(Vec<i64>, usize),
    #[error("class {0:?} is not effective on the web")]
    NotEffective(Vec<i64>),
    #[error("α must be nonzero (the basic disc class has n_b = 1)")]
    ZeroAlpha,
    #[error("open invariants differ between fixed points: {0:?}")]
    ChoiceDependence(Vec<i64>),
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
