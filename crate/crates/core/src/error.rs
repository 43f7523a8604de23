use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("radicands {0} and {1} cannot share one computation")]
    MixedRadicands(i64, i64),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected {0}")]
    Shape(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("Gram matrix is not square and symmetric")]
    NotSymmetric,
    #[error("lattice is degenerate")]
    Degenerate,
    #[error("lattice is not even")]
    NotEven,
    #[error("lattice is not definite")]
    NotDefinite,
    #[error("search bound exceeded: {0}")]
    TooLarge(String),
    #[error("embedding does not preserve the form")]
    NotIsometric,
    #[error("glue vector is invalid: {0}")]
    BadGlue(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("cannot parse lattice expression: {0}")]
    Parse(String),
    #[error("unsupported parameter: {0}")]
    Parameter(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("model is singular: A and B both vanish identically or Δ = 0")]
    Singular,
    #[error("model is not minimal at {0}")]
    NonMinimal(String),
    #[error("surface is a product (constant model)")]
    Product,
    #[error("not a Weierstrass model: {0}")]
    BadModel(String),
    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("section does not lie on the surface")]
    NotOnSurface,
    #[error("fibre at {0} is irreducible")]
    IrreducibleFibre(String),
    #[error("intersection undefined: {0}")]
    Intersection(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("pullback precondition failed: {0}")]
    Pullback(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenchError {
    #[error("unknown example id {0}")]
    UnknownExample(String),
    #[error("bad parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
