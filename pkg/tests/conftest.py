import pytest

from nlca.constructions import cur_simple3, rank2_alternating, rank2_family_i, rank2_family_ii
from nlca.poly import D, MultiPoly, lam

X = MultiPoly.var(lam(1))
Y = MultiPoly.var(lam(2))


@pytest.fixture(scope="session")
def cur():
    return cur_simple3()


@pytest.fixture(scope="session")
def fam_ii():
    return rank2_family_ii(3, X - Y)


@pytest.fixture(scope="session")
def fam_i():
    return rank2_family_i(3, 1)


@pytest.fixture(scope="session")
def alt():
    return rank2_alternating(3)


@pytest.fixture(scope="session")
def passing_algebras(cur, fam_ii, alt):
    return {"cur": cur, "ii": fam_ii, "alt": alt}


def family_i_variants():
    return {"g=1": rank2_family_i(3, 1), "g=l1+l2": rank2_family_i(3, X + Y), "g=d": rank2_family_i(3, D)}


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
