import pytest

from gpilab.algebra import product_algebra, standard_algebra


@pytest.fixture(scope="session")
def m2f3():
    return standard_algebra("matrix", p=3, n=2)


@pytest.fixture(scope="session")
def m2f2():
    return standard_algebra("matrix", p=2, n=2)


@pytest.fixture(scope="session")
def gf9():
    return standard_algebra("field", p=3, k=2)


@pytest.fixture(scope="session")
def gf3():
    return standard_algebra("field", p=3)


@pytest.fixture(scope="session")
def gf5():
    return standard_algebra("field", p=5)


@pytest.fixture(scope="session")
def f2xf2():
    return product_algebra(2, 2)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
