import sys
import numpy as np
import pytest

from sympcond.conductor import OpenSubgroup
from sympcond.subgroup import FiberSpec, close, commutator_subgroup, fiber_product
from sympcond.sympgroup import SymplecticContext, batch_multiplier, gsp_generators


def full(g, n):
    return close(SymplecticContext.of(g, n), gsp_generators(g, n))


def entangled_gl2_6() -> OpenSubgroup:
    """GL2(F2) x_{C2} GL2(F3): sign on the left, multiplier a non-square on the right."""
    left, right = full(1, 2), full(1, 3)
    derived = commutator_subgroup(left)
    ctx3 = right.ctx

    def sign(arr):
        return (~derived.contains_array(arr)).astype(np.int64)

    def det_class(arr):
        return (batch_multiplier(arr, ctx3) == 2).astype(np.int64)

    spec = FiberSpec.from_characters(left, right, sign, det_class, 2)
    return OpenSubgroup(1, 6, fiber_product(spec))


@pytest.fixture(scope="session")
def entangled():
    return entangled_gl2_6()


@pytest.fixture(scope="session")
def gsp4_f3():
    return full(2, 3)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = mod.pytest_terminal_summary_lines() if mod else []
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
