import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclodensity import _feasible_py, kernel
from cyclodensity.errors import ResourceLimitError

BACKENDS = ["python"] + (["compiled"] if kernel.BACKEND == "compiled" else [])


@st.composite
def instances(draw):
    dim = draw(st.integers(1, 4))
    G = draw(st.integers(0, 5))
    vec = st.tuples(*[st.sampled_from([-1, 0, 1])] * dim)
    vectors = draw(st.lists(vec, min_size=G, max_size=G))
    sizes = draw(st.lists(st.integers(0, 4), min_size=G, max_size=G))
    target = draw(st.tuples(*[st.integers(-5, 5)] * dim))
    return vectors, sizes, target


def enumerate_solutions(vectors, sizes, target):
    """Oracle: every multiplicity choice, lexicographic order."""
    dim = len(target)
    for t in itertools.product(*[range(s + 1) for s in sizes]):
        if all(sum(ti * v[m] for ti, v in zip(t, vectors)) == target[m] for m in range(dim)):
            return list(t)
    return None


@pytest.mark.parametrize("backend", BACKENDS)
@settings(max_examples=400, deadline=None)
@given(instances())
def test_search_matches_enumeration(backend, inst):
    vectors, sizes, target = inst
    # depth-first with increasing multiplicities finds the lexicographically first solution
    assert kernel.search(vectors, sizes, target, backend=backend) == enumerate_solutions(*inst)


def test_empty_instance():
    for b in BACKENDS:
        assert kernel.search([], [], (0, 0), backend=b) == []
        assert kernel.search([], [], (1, 0), backend=b) is None


@pytest.mark.parametrize("backend", BACKENDS)
def test_state_cap(backend):
    vectors = [(1, 0), (0, 1), (1, 1), (1, -1), (-1, 1)] * 2
    sizes = [5] * 10
    with pytest.raises(ResourceLimitError):
        kernel.search(vectors, sizes, (7, 3), max_states=3, backend=backend)
    assert kernel.search(vectors, sizes, (7, 3), backend=backend) is not None


def test_huge_sizes_fall_back():
    # sizes beyond 64-bit range: compiled path declines, answer still exact
    vectors = [(1, 0), (-1, 1), (0, -1)]
    sizes = [2**80, 2**80, 2**80]
    assert kernel.search(vectors, sizes, (-2, 2)) == _feasible_py.search(vectors, sizes, (-2, 2))
    assert kernel.search(vectors, sizes, (-2, 2)) is not None


@pytest.mark.skipif(kernel.BACKEND != "compiled", reason="extension not built")
def test_compiled_declines_out_of_range():
    from cyclodensity import _feasible

    assert _feasible.search([(1,)], [2**70], (3,)) is NotImplemented
    assert _feasible.search([(2,)], [1], (2,)) is NotImplemented
