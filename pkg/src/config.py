"""Configuration for the solver, the random generators and the oracle."""

from pydantic import BaseModel, ConfigDict, Field, model_validator

# Solver defaults
DEFAULT_WORKERS = 4
DEFAULT_INCREASING_CHAIN_CAP = 64
DEFAULT_CHAIN_SAMPLES = (0, 1, 2)

# Generator defaults
DEFAULT_VERTEX_COUNT = 5
DEFAULT_LEAF_COUNT = 2
DEFAULT_PAYOFF_RANGE = (-1, 3)
DEFAULT_MAX_OUT_DEGREE = 2
DEFAULT_MEALY_STATES = 2
DEFAULT_PARAM_STATES = 2

# Oracle guards
DEFAULT_MAX_ORACLE_VERTICES = 7
DEFAULT_ORACLE_MEMORY_BOUND = 2


class SolverConfig(BaseModel):
    """Knobs of the decision procedures.

    All fields are optional with sensible defaults.
    """

    # Thread pool size for independent pairwise dominance checks
    workers: int = Field(DEFAULT_WORKERS, ge=1)

    # Index cap applied by the CLI to the factorial increasing-chain bound
    increasing_chain_cap: int = Field(DEFAULT_INCREASING_CHAIN_CAP, ge=0)

    # Counter values checked against the input by synthesis contract runs
    chain_samples: tuple[int, ...] = DEFAULT_CHAIN_SAMPLES

    model_config = ConfigDict(frozen=True)


class GenConfig(BaseModel):
    """Shape of randomly generated games and automata."""

    seed: int = 0
    vertex_count: int = Field(DEFAULT_VERTEX_COUNT, ge=1)
    leaf_count: int = Field(DEFAULT_LEAF_COUNT, ge=1)
    payoff_range: tuple[int, int] = DEFAULT_PAYOFF_RANGE
    max_out_degree: int = Field(DEFAULT_MAX_OUT_DEGREE, ge=1)
    mealy_states: int = Field(DEFAULT_MEALY_STATES, ge=1)
    param_states: int = Field(DEFAULT_PARAM_STATES, ge=1)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_shape(self) -> "GenConfig":
        if self.leaf_count > self.vertex_count:
            raise ValueError("leaf_count cannot exceed vertex_count")
        low, high = self.payoff_range
        if low > high:
            raise ValueError("payoff_range must be ordered")
        return self


class OracleGuards(BaseModel):
    """Size limits of the brute-force reference implementations."""

    max_vertices: int = Field(DEFAULT_MAX_ORACLE_VERTICES, ge=1)
    memory_bound: int = Field(DEFAULT_ORACLE_MEMORY_BOUND, ge=1, le=2)

    model_config = ConfigDict(frozen=True)
