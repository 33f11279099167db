import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from geomon import _kernels_py, kernels

from strategies import patterns

_kernels = pytest.importorskip("geomon._kernels")

gen_words = st.lists(st.integers(-4, 4).filter(bool), max_size=30).map(tuple)


@given(gen_words)
def test_free_reduce_parity(w):
    assert _kernels.free_reduce(w) == _kernels_py.free_reduce(w)


@given(gen_words, st.lists(st.integers(-2, 2).filter(bool), max_size=3).map(tuple))
def test_find_all_parity(w, p):
    assert _kernels.find_all(w, p) == _kernels_py.find_all(w, p)


@given(patterns(), patterns(), patterns(), patterns())
def test_compose_seeds_parity(fd, fi, gd, gi):
    # offsets beyond the strategy's variable ranges keep the two sides apart
    assert _kernels.compose_seeds(fd, fi, gd, gi, 4, 2) == _kernels_py.compose_seeds(fd, fi, gd, gi, 4, 2)


@given(st.lists(patterns(), min_size=1, max_size=3).map(tuple))
def test_canonical_rename_parity(ps):
    assert _kernels.canonical_rename(ps) == _kernels_py.canonical_rename(ps)


def test_backend_selection():
    assert kernels.BACKEND == ("python" if os.environ.get("GEOMON_PURE") else "cython")
    env = dict(os.environ, GEOMON_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from geomon import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
