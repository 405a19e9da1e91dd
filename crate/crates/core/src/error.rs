use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in Q(sqrt2)")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("trajectory direction is the zero vector")]
    ZeroDirection,
    #[error("trajectory hits the singular point at crossing {crossing}")]
    SingularHit { crossing: usize },
    #[error("point is not inside the closed octagon")]
    OutsideOctagon,
    #[error("trajectory sector is {found}, expected {expected}")]
    WrongSector { expected: usize, found: usize },
    #[error("no translate of the point lies in the octagon within search depth {depth}")]
    NotReducible { depth: usize },
    #[error("several inequivalent translates of the point lie in the octagon")]
    AmbiguousReduction,
    #[error("word is admissible in more than one diagram: {0:?}")]
    AmbiguousDiagram(Vec<usize>),
    #[error("word is admissible in no diagram")]
    NotAdmissible,
    #[error("point is outside the domain of the map")]
    OutOfDomain,
    #[error("point is outside the range of the requested branch")]
    OutOfRange,
    #[error("parabolic fixed point: the return time is infinite")]
    ParabolicFixedPoint,
    #[error("rectangle touches the diagonal u = v")]
    DiagonalTouch,
    #[error("point does not lie on the cross-section")]
    OutOfSection,
    #[error("invalid tree path: {0}")]
    InvalidPath(String),
    #[error("geodesic endpoint within {0} of an ideal vertex; float coding unreliable")]
    TooCloseToVertex(f64),
    #[error("empty orbit or word")]
    Empty,
}
