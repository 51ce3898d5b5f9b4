import pytest

from toric_thresholds.toricvar import (
    Fan,
    ToricDivisor,
    anticanonical,
    hirzebruch_fan,
    product_fan,
    projective_space_fan,
    weighted_p112_fan,
)


@pytest.fixture(scope="session")
def p1():
    return projective_space_fan(1)


@pytest.fixture(scope="session")
def p2():
    return projective_space_fan(2)


@pytest.fixture(scope="session")
def p3():
    return projective_space_fan(3)


@pytest.fixture(scope="session")
def p112():
    return weighted_p112_fan()


@pytest.fixture(scope="session")
def p1xp1(p1):
    return product_fan(p1, p1)


@pytest.fixture(scope="session")
def f2():
    return hirzebruch_fan(2)


@pytest.fixture(scope="session")
def p2_O1(p2):
    # rays e1, e2, (-1,-1); O(1) = D_3
    return ToricDivisor(p2, (0, 0, 1))


@pytest.fixture(scope="session")
def p2_K(p2):
    return anticanonical(p2)


@pytest.fixture(scope="session")
def p1_O1(p1):
    return ToricDivisor(p1, (0, 1))


@pytest.fixture(scope="session")
def p1_O2(p1):
    return ToricDivisor(p1, (0, 2))


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
