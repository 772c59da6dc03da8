import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cdlat import _pykernels, constructions as cons, kernels
from cdlat.groups import as_group

ck = pytest.importorskip("cdlat._ckernels")

GROUPS = [p for p in cons.corpus(include_large=False) if p.order <= 2187]


def _flat(pres):
    n = pres.ngens
    pow_ptr, pow_let = [0], []
    for i in range(n):
        pow_let += pres._letters(pres.power_word(i))
        pow_ptr.append(len(pow_let))
    conj_ptr, conj_let = [0], []
    for i in range(n):
        for j in range(n):
            if i < j:
                conj_let += pres._letters(pres.conjugation_word(i, j))
            conj_ptr.append(len(conj_let))
    return pres.relative_orders, pow_ptr, pow_let, conj_ptr, conj_let


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")
    assert _pykernels.BACKEND == "python"
    assert ck.BACKEND == "cython"


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(GROUPS), st.data())
def test_collectors_agree(pres, data):
    args = _flat(pres)
    py, cy = _pykernels.Collector(*args), ck.Collector(*args)
    start = [data.draw(st.integers(0, p - 1)) for p in pres.relative_orders]
    word = data.draw(st.lists(st.integers(0, pres.ngens - 1), max_size=30))
    assert tuple(py.collect(start, word)) == tuple(cy.collect(start, word))


def test_collectors_same_budget_error():
    pres = cons.build_l2n(2)
    args = _flat(pres)
    word = list(range(pres.ngens))[::-1] * 5
    for mod in (_pykernels, ck):
        with pytest.raises(Exception) as info:
            mod.Collector(*args, budget=2).collect([0] * pres.ngens, word)
        assert type(info.value).__name__ == "CollectionError"


@pytest.mark.parametrize("name", ["D8", "l1n(2)", "3^1+2_exp9", "C3xS3"])
def test_closure_and_centralizer_agree(name):
    G = as_group(cons.corpus_group(name))
    table = G.table
    rng = np.random.default_rng(1)
    start = np.zeros(G.order, dtype=np.uint8)
    start[0] = 1
    for _ in range(20):
        gens = [int(x) for x in rng.integers(0, G.order, size=rng.integers(1, 3))]
        a = _pykernels.table_closure(table, gens, start)
        b = np.asarray(ck.table_closure(table, gens, start))
        assert np.array_equal(a, b)
        x = int(rng.integers(0, G.order))
        letters = G.letters(x)
        ca = _pykernels.centralizer_mask(G._right, G._left, letters)
        cb = np.asarray(ck.centralizer_mask(G._right, G._left, letters))
        assert np.array_equal(ca, cb)
        expected = table[x] == table[:, x]
        assert np.array_equal(ca.astype(bool), expected)


def test_pure_python_fallback_selected_by_env():
    import os
    import subprocess
    import sys

    env = dict(os.environ, CDLAT_PURE_PYTHON="1")
    code = ("from cdlat import kernels, constructions as c, cd_lattice;"
            "print(kernels.BACKEND, cd_lattice(c.dihedral(3)).m)")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "16"]


def test_benchmark_script_runs():
    import subprocess
    import sys
    from pathlib import Path

    script = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    out = subprocess.run([sys.executable, str(script), "--repeat", "1"], capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    assert out.stdout.count("x\n") == 3
