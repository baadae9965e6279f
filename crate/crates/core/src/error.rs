use thiserror::Error;

/// Errors raised by domain construction and the analyses built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polygon has no vertices")]
    EmptyPolygon,
    #[error("polygon is not convex at vertex {vertex}")]
    PolygonNotConvex { vertex: usize },
    #[error("lattice basis is singular (det = {det:e})")]
    SingularLattice { det: f64 },
    #[error("triangle is degenerate (area = {area:e})")]
    DegenerateTriangle { area: f64 },

    #[error("boundary piece {piece} is invalid: {reason}")]
    InvalidPiece { piece: usize, reason: String },
    #[error("boundary is not closed: piece {piece} ends {gap:e} away from the start of the next piece")]
    NotClosed { piece: usize, gap: f64 },
    #[error("boundary is not convex near piece {piece}")]
    NotConvex { piece: usize },
    #[error("boundary is not centrally symmetric: piece {piece} has no negated partner")]
    NotSymmetric { piece: usize },
    #[error("origin is not strictly interior (piece {piece})")]
    OriginNotInterior { piece: usize },
    #[error("invalid named domain {spec:?}: {reason}")]
    InvalidNamed { spec: String, reason: String },

    #[error("offset {t} is outside the slab [-{h}, {h}]")]
    OutOfSlab { t: f64, h: f64 },

    #[error("invalid anchor triple {0:?}: angles must increase strictly within a 2*pi window")]
    InvalidTriple([f64; 3]),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("domain is inextensible (relative spread {spread:e}); no extension witness exists")]
    NotExtensible { spread: f64 },
    #[error("family pieces do not close: largest gap {gap:e}")]
    ClosureFailure { gap: f64 },
    #[error("family solver did not converge: closure {closure:e}, convexity {convexity:e}, spread {spread:e}")]
    NoConvergence {
        closure: f64,
        convexity: f64,
        spread: f64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
