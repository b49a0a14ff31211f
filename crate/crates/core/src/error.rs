use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// The pair lies in the degenerate regime ab >= 1 where the class is
    /// either trivial or spanned by the ground state.
    #[error("out of regime: a*b = {product} >= 1 (class E(a, b) is {{0}} or spanned by phi_0 there)")]
    OutOfRegime { a: f64, b: f64, product: f64 },

    #[error("quadrature order {order} below policy minimum {required} for n_max = {n_max}")]
    QuadratureOrder {
        order: usize,
        required: usize,
        n_max: usize,
    },

    #[error("insufficient data: {found} nonzero entries, at least {required} needed")]
    InsufficientData { found: usize, required: usize },

    #[error("range error: {0}")]
    Range(String),

    #[error("not a member of E({a}, {b}): domination fails near x = {violation_point}")]
    NotMember { a: f64, b: f64, violation_point: f64 },

    #[error("unsupported input: {0}")]
    UnsupportedInput(String),

    #[error("insufficient truncation: tail e^(-2 n_max t) = {tail:e} exceeds 1e-14")]
    InsufficientTruncation { tail: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
