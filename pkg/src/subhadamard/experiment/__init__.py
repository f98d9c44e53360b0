"""Random row sampling, kernel-witness search, moments and Monte-Carlo checks."""

from .moments import (
    BoundTerms,
    MomentReport,
    covariance_ratio,
    covariance_ratio_direct,
    first_moment,
    moment_report,
    pair_counts_for,
    paper_bound_terms,
    variance_ratio_bound,
    variance_ratio_exact,
    variance_ratio_pairwise,
)
from .rip import non_injectivity_pair, verify_kernel
from .sampling import SampleMask, SamplingParams, sample_mask, sample_masks
from .search import WitnessReport, count_witnesses, find_kernel_witness
from .simulate import (
    empirical_variance_ratio,
    estimate_existence_probability,
    estimate_pair_moment,
    mean_and_stderr,
    simulate_counts,
)
from .sweep import (
    monotone_violations,
    parse_grid,
    pick_threshold_point,
    run_sweep,
    sweep_from_csv,
    sweep_to_csv,
)
