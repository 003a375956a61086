from .drc import (
    DrcResult,
    Electrocution,
    Regularized,
    dependent_random_choice,
    eel_drc,
    electrocution,
    max_cut_partition,
    regularize,
)
from .sampler import (
    BipartitePattern,
    EmbeddingTrace,
    Estimate,
    SamplerConfig,
    Slippery,
    default_prefix_size,
    estimate_induced_probability,
    is_slippery,
    replay,
    sample_embedding,
    wilson_interval,
)
