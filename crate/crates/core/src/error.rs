use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix entry ({row}, {col}) is not finite or outside [0, 1]: {value}")]
    BadEntry { row: usize, col: usize, value: f64 },

    #[error("row {row} sums to {sum}, not 1")]
    NonStochastic { row: usize, sum: f64 },

    #[error("chain is not ergodic")]
    NotErgodic,

    #[error("chain is not reversible (detailed-balance residual {residual:e})")]
    NotReversible { residual: f64 },

    #[error("chain is not lazy: diagonal entry {vertex} is {value} < 1/2")]
    NotLazy { vertex: usize, value: f64 },

    #[error("marked set is empty")]
    EmptyMarkedSet,

    #[error("every vertex is marked")]
    AllMarked,

    #[error("vertex {vertex} out of range for a chain on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("interpolation parameter s = {0} outside [0, 1]")]
    SOutOfRange(f64),

    #[error("unmarked block eigenvalue {eigenvalue} is within 1e-12 of 1")]
    DegenerateUnmarkedBlock { eigenvalue: f64 },

    #[error("linear system is singular")]
    SingularSystem,

    #[error("r = {r} exceeds the largest admissible step count {max_r}")]
    ROutOfRange { r: usize, max_r: usize },

    #[error("parameter chain Q is not row-stochastic: {0}")]
    NonStochasticQ(String),

    #[error("overlap threshold q = {0} outside (0, 1)")]
    QOutOfRange(f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("eigenvalue {eigenvalue} of component {k} equals 1 (chain not ergodic)")]
    DegenerateEigenvalue { k: usize, eigenvalue: f64 },

    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),

    #[error("state needs {required} amplitudes, budget is {budget}")]
    AncillaTooLarge { required: usize, budget: usize },

    #[error("step index {i} outside 1..={r}")]
    StepIndexOutOfRange { i: usize, r: usize },

    #[error("operator dimension {dim} exceeds materialization cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("bad spec: {0}")]
    BadSpec(String),
}

impl Error {
    /// Stable machine-readable name used in error records.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotSquare { .. } => "not_square",
            Error::BadEntry { .. } => "bad_entry",
            Error::NonStochastic { .. } => "non_stochastic",
            Error::NotErgodic => "not_ergodic",
            Error::NotReversible { .. } => "not_reversible",
            Error::NotLazy { .. } => "not_lazy",
            Error::EmptyMarkedSet => "empty_marked_set",
            Error::AllMarked => "all_marked",
            Error::VertexOutOfRange { .. } => "vertex_out_of_range",
            Error::SOutOfRange(_) => "s_out_of_range",
            Error::DegenerateUnmarkedBlock { .. } => "degenerate_unmarked_block",
            Error::SingularSystem => "singular_system",
            Error::ROutOfRange { .. } => "schedule_infeasible",
            Error::NonStochasticQ(_) => "non_stochastic_q",
            Error::QOutOfRange(_) => "q_out_of_range",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::DegenerateEigenvalue { .. } => "degenerate_eigenvalue",
            Error::NumericalBreakdown(_) => "numerical_breakdown",
            Error::AncillaTooLarge { .. } => "ancilla_too_large",
            Error::StepIndexOutOfRange { .. } => "step_index_out_of_range",
            Error::DimensionCap { .. } => "dimension_cap",
            Error::Precondition(_) => "precondition",
            Error::BadSpec(_) => "bad_spec",
        }
    }

    /// Process exit code: 2 invalid spec, 3 infeasible schedule, 4 memory cap,
    /// 5 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ROutOfRange { .. } | Error::QOutOfRange(_) => 3,
            Error::AncillaTooLarge { .. } | Error::DimensionCap { .. } => 4,
            Error::DegenerateUnmarkedBlock { .. }
            | Error::SingularSystem
            | Error::DegenerateEigenvalue { .. }
            | Error::NumericalBreakdown(_) => 5,
            _ => 2,
        }
    }
}
