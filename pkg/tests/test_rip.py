import numpy as np
import pytest

from subhadamard.errors import DimensionMismatch, WitnessInvalid
from subhadamard.experiment.rip import non_injectivity_pair, verify_kernel
from subhadamard.experiment.sampling import SampleMask, SamplingParams, sample_mask
from subhadamard.experiment.search import find_kernel_witness
from subhadamard.gf2 import Subspace, canonicalize, orthogonal_complement, span_elements
from subhadamard.transform import fwht


def test_empty_mask_residual_is_zero():
    assert verify_kernel(SampleMask.from_rows(4, []), canonicalize([0b11], n=4)) == 0.0


def test_valid_witnesses_have_tiny_residual():
    for n in (6, 8, 10, 12):
        params = SamplingParams(n, n // 2, 0.05, seed=5)
        for t in range(5):
            Q = sample_mask(params, t)
            rep = find_kernel_witness(Q, n // 2)
            if rep.found:
                assert verify_kernel(Q, rep.witness) < 1e-12


def test_corrupted_witness_raises():
    params = SamplingParams(6, 3, 0.1, seed=1)
    Q = sample_mask(params, 0)
    V = find_kernel_witness(Q, 3).witness
    assert V is not None
    raised = 0
    for i, r in enumerate(V.basis):
        for bit in range(6):
            basis = list(V.basis)
            basis[i] = r ^ (1 << bit)
            W = canonicalize(basis, n=6)
            comp = span_elements(orthogonal_complement(W))
            if any(Q.bits[x] for x in comp):
                with pytest.raises(WitnessInvalid):
                    verify_kernel(Q, W)
                raised += 1
    assert raised > 0


def test_split_example():
    V = canonicalize([0b11], n=2)
    y, z = non_injectivity_pair(V, k=0)
    s = 2**-0.5
    assert np.allclose(y, [s, 0, 0, 0]) and np.allclose(z, [0, 0, 0, -s])


def test_split_wrong_dimension():
    with pytest.raises(DimensionMismatch):
        non_injectivity_pair(canonicalize([0b11, 0b01], n=3), k=0)


@pytest.mark.parametrize("n,k", [(6, 2), (8, 3), (10, 5), (12, 5)])
def test_split_invariants(n, k):
    params = SamplingParams(n, k, 0.02, seed=2)
    Q = sample_mask(params, 1)
    V = find_kernel_witness(Q, k + 1).witness
    assert V is not None
    y, z = non_injectivity_pair(V)
    sy, sz = set(np.flatnonzero(y)), set(np.flatnonzero(z))
    assert len(sy) == len(sz) == 1 << k and not sy & sz
    assert max(sy) < min(sz)
    assert np.allclose(y - z, np.abs(y) + np.abs(z))
    assert np.max(np.abs(fwht(y)[Q.rows] - fwht(z)[Q.rows])) < 1e-10
