import json
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from affine_line.modcat import EndoPair, FpModule
from affine_line.polyalg.poly import Poly

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def frozen():
    return json.loads((DATA / "frozen_oracles.json").read_text())


small = st.integers(-3, 3)
rationals = st.builds(Fraction, st.integers(-4, 4), st.sampled_from([1, 2, 3]))


def polys(max_deg=4, var="t", nonzero=False):
    coeffs = st.lists(rationals, min_size=1, max_size=max_deg + 1)
    p = coeffs.map(lambda cs: Poly((var,), {(k,): c for k, c in enumerate(cs)}))
    return p.filter(lambda q: not q.is_zero()) if nonzero else p


@st.composite
def endos(draw, max_dim=4, min_dim=0):
    n = draw(st.integers(min_dim, max_dim))
    rows = [[Fraction(draw(st.integers(-2, 2))) for _ in range(n)] for _ in range(n)]
    return EndoPair.from_rows(rows) if n else EndoPair.zero(0)


@st.composite
def structured_endos(draw, max_dim=4):
    """Jordan blocks with coinciding eigenvalues, in a random basis."""
    from affine_line.corpus import random_invertible

    blocks, dim = [], 0
    cap = draw(st.integers(1, max_dim))
    while dim < cap:
        size = draw(st.integers(1, cap - dim))
        blocks.append(EndoPair.jordan(draw(st.integers(-1, 1)), size))
        dim += size
    m = EndoPair.direct_sum(*blocks)
    seed = draw(st.integers(0, 10_000))
    import random

    return m.conjugate(random_invertible(random.Random(seed), m.dim))


@st.composite
def modules(draw, max_gens=3, max_rels=3, max_deg=2, var="t"):
    g = draw(st.integers(0, max_gens))
    r = draw(st.integers(0, max_rels))
    rows = [[draw(polys(max_deg, var)) for _ in range(r)] for _ in range(g)]
    return FpModule.from_relations((var,), g, rows) if g else FpModule.zero((var,))


@st.composite
def vector_spaces(draw, max_dim=4):
    g = draw(st.integers(0, max_dim))
    r = draw(st.integers(0, max_dim))
    rows = [[Fraction(draw(small)) for _ in range(r)] for _ in range(g)]
    return FpModule.from_relations((), g, rows) if g else FpModule.zero(())


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
