import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from aal import kernels
from aal.congruence import _flat, translations
from aal.demorgan import named
from aal.partition import Partition

py = kernels.python_backend
cy = kernels.compiled_backend
needs_compiled = pytest.mark.skipif(cy is None, reason="compiled extension not built")


@st.composite
def translation_sets(draw):
    n = draw(st.integers(1, 7))
    m = draw(st.integers(0, 5))
    flat = draw(st.lists(st.integers(0, n - 1), min_size=n * m, max_size=n * m))
    return n, flat


@st.composite
def fusion_candidates(draw):
    base = named(draw(st.sampled_from(["B2", "S3", "C4", "D4"])))
    fuse = list(base.table("fuse"))
    for _ in range(draw(st.integers(0, 2))):
        i = draw(st.integers(0, len(fuse) - 1))
        fuse[i] = draw(st.integers(0, base.size - 1))
    return base.size, fuse, list(base.table("meet")), list(base.table("neg")), base.const("e")


def test_backend_flag():
    assert kernels.BACKEND in ("cython", "python")
    assert (kernels.BACKEND == "cython") == (cy is not None)


def test_pure_python_override():
    env = dict(os.environ, AAL_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import aal.kernels as k; print(k.BACKEND)"], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"


def test_named_tables_pass_prefilter():
    for name in ("B2", "S3", "C4", "D4"):
        A = named(name)
        args = (A.size, list(A.table("fuse")), list(A.table("meet")), list(A.table("neg")), A.const("e"))
        assert py.fusion_violation(*args) == -1


def test_fusion_violation_index():
    C4 = named("C4")
    fuse = list(C4.table("fuse"))
    fuse[1 * 4 + 2] = 0  # e·f no longer f
    law = py.fusion_violation(4, fuse, list(C4.table("meet")), list(C4.table("neg")), C4.const("e"))
    assert kernels.FUSION_LAWS[law] == "fuse_identity"


def test_closure_and_refinement_semantics():
    A = named("C4")
    flat = _flat(translations(A))
    labels = py.closure_labels(A.size, flat, [(0, 1)])
    assert Partition.from_labels(labels).is_total()
    assert Partition.from_labels(py.refine_labels(A.size, flat, [1, 0, 0, 0])).is_identity()


@needs_compiled
@settings(max_examples=200, deadline=None)
@given(fusion_candidates())
def test_fusion_parity(case):
    assert py.fusion_violation(*case) == cy.fusion_violation(*case)


@needs_compiled
@settings(max_examples=200, deadline=None)
@given(translation_sets(), st.data())
def test_closure_parity(ts, data):
    n, flat = ts
    pairs = data.draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=4))
    a = Partition.from_labels(py.closure_labels(n, flat, pairs))
    b = Partition.from_labels(cy.closure_labels(n, flat, pairs))
    assert a == b


@needs_compiled
@settings(max_examples=200, deadline=None)
@given(translation_sets(), st.data())
def test_refinement_parity(ts, data):
    n, flat = ts
    labels = data.draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
    a = Partition.from_labels(py.refine_labels(n, flat, labels))
    b = Partition.from_labels(cy.refine_labels(n, flat, labels))
    assert a == b
