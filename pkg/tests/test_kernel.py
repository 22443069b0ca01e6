from __future__ import annotations

import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from colorquant import kernel
from colorquant.colorlie import double
from colorquant.fixtures import borel2, gl11, gl11_z, sl2, sl2_bialgebra
from colorquant.scalars import CyclotomicField
from colorquant.uea import UEA

COMPILED = kernel.compiled_straightener()
needs_compiled = pytest.mark.skipif(COMPILED is None, reason="compiled kernel not built")

ALGEBRAS = {
    "sl2": sl2,
    "gl11": gl11,
    "gl11_z_q4": lambda: gl11_z(CyclotomicField(4)),
    "double_borel2": lambda: double(borel2()).algebra,
    "double_sl2": lambda: double(sl2_bialgebra()).algebra,
}


@needs_compiled
@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_backends_agree(name):
    alg = ALGEBRAS[name]()
    pure = UEA(alg, straightener=kernel.PureStraightener)
    fast = UEA(alg, straightener=COMPILED)
    word = st.lists(st.integers(0, alg.dim - 1), max_size=7).map(tuple)

    @given(word, word)
    def run(a, b):
        assert pure.normalize(a) == fast.normalize(a)
        assert pure.mul_words(a, b) == fast.mul_words(a, b)

    run()


@needs_compiled
def test_compiled_kernel_is_default():
    if os.environ.get("COLORQUANT_PURE"):
        pytest.skip("pure backend forced by the environment")
    assert kernel.BACKEND == "cython"


def test_pure_backend_can_be_forced():
    code = "import colorquant.kernel as k; print(k.BACKEND)"
    env = dict(os.environ, COLORQUANT_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_scalar_types_preserved():
    # rational fields return Fractions, cyclotomic fields their own elements
    u = UEA(sl2())
    for c in u.normalize((2, 1, 0)).values():
        assert type(c).__name__ == "Fraction"
    k = CyclotomicField(4)
    z = UEA(gl11_z(k))
    vals = list(z.normalize((3, 2, 0)).values())
    assert vals and all(type(c).__name__ == "Cyc" for c in vals)
