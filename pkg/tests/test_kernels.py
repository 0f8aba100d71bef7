import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arcseymour import kernels
from arcseymour._accel import BACKEND_ENV, HAVE_NUMBA

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba backend disabled")


@st.composite
def integer_instances(draw, max_n=7, top=50):
    n = draw(st.integers(1, max_n))
    P = np.zeros((n, n), dtype=np.bool_)
    W = np.zeros((n, n), dtype=np.int64)
    for u in range(n):
        for v in range(u + 1, n):
            c = draw(st.sampled_from((0, 1, 2)))
            if c:
                a, b = (u, v) if c == 1 else (v, u)
                P[a, b] = True
                W[a, b] = draw(st.integers(0, top))
    return P, W


def _same_beta(x, y):
    for a, b in zip(x, y):
        assert [int(t) for t in np.ravel(a)] == [int(t) for t in np.ravel(b)]


@given(integer_instances())
def test_beta_numpy_matches_loops(inst):
    P, W = inst
    _same_beta(kernels.beta_numpy(P, W), kernels._beta_loops(P, W))


@given(integer_instances())
def test_beta_object_dtype_matches_int64(inst):
    P, W = inst
    _same_beta(kernels.beta_numpy(P, W.astype(object)), kernels.beta_numpy(P, W))


@needs_numba
@given(integer_instances())
def test_beta_numba_matches_numpy(inst):
    P, W = inst
    _same_beta(kernels.beta_numba(P, W), kernels.beta_numpy(P, W))


@settings(deadline=None)
@given(integer_instances(max_n=8))
def test_median_numpy_matches_loops(inst):
    _, W = inst
    o1, b1 = kernels.median_numpy(W)
    o2, b2 = kernels._median_loops(W)
    assert list(o1) == list(o2) and int(b1) == int(b2)


@settings(deadline=None)
@given(integer_instances(max_n=6))
def test_median_object_dtype_matches_int64(inst):
    _, W = inst
    o1, b1 = kernels.median_numpy(W.astype(object))
    o2, b2 = kernels.median_numpy(W)
    assert list(o1) == list(o2) and int(b1) == int(b2)


@needs_numba
@settings(deadline=None)
@given(integer_instances(max_n=9))
def test_median_numba_matches_numpy(inst):
    _, W = inst
    o1, b1 = kernels.median_numba(W)
    o2, b2 = kernels.median_numpy(W)
    assert list(o1) == list(o2) and int(b1) == int(b2)


def test_large_integers_route_to_object_path():
    big = 10**25
    W = kernels.as_integer_matrix([[0, big], [0, 0]])
    assert W.dtype == object
    order, best = kernels.median_kernel(W)
    assert list(order) == [0, 1] and best == 0
    W = kernels.as_integer_matrix([[0, 0], [big, 0]])
    assert kernels.median_kernel(W)[1] == 0
    assert kernels.as_integer_matrix([[0, 1], [0, 0]]).dtype == np.int64


def test_numpy_backend_env_flag():
    code = (
        "from arcseymour._accel import backend\n"
        "from arcseymour import report, median_order, ArcWeightedDigraph\n"
        "D = ArcWeightedDigraph.from_arcs(3, [(0, 1, 1), (1, 2, 2), (2, 0, 4)])\n"
        "print(backend(), report(D)[0].delta, median_order(D, 'weight').order)\n"
    )
    env = {**os.environ, BACKEND_ENV: "numpy"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split()[0] == "numpy"
    assert "(1, 2, 0)" in out.stdout
