from _thanos import (
    ConfigError,
    DivergenceError,
    IngestionError,
    MixingMatrix,
    Problem,
    ReferenceResult,
    RunOutcome,
    RunRecord,
    SparsePcaData,
    StationarityCertificate,
    check_epsilon_stationary,
    env_grad,
    env_value,
    feasibility,
    generate_data,
    load_data_csv,
    metropolis_weights,
    proj_tangent,
    prox,
    random_stiefel,
    retract,
    run,
    solve_centralized,
    sparse_pca_problem,
)

__all__ = [
    "ConfigError",
    "DivergenceError",
    "IngestionError",
    "MixingMatrix",
    "Problem",
    "ReferenceResult",
    "RunOutcome",
    "RunRecord",
    "SparsePcaData",
    "StationarityCertificate",
    "check_epsilon_stationary",
    "env_grad",
    "env_value",
    "feasibility",
    "generate_data",
    "load_data_csv",
    "metropolis_weights",
    "proj_tangent",
    "prox",
    "random_stiefel",
    "retract",
    "run",
    "solve_centralized",
    "sparse_pca_problem",
]
