import pytest

from creal.field import make_field

# acceptance criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion: int, passed: bool, detail: str) -> None:
    prev = ACCEPTANCE.get(criterion)
    if prev is not None:
        passed = passed and prev[0]
        detail = f"{prev[1]}; {detail}"
    ACCEPTANCE[criterion] = (passed, detail)


@pytest.fixture(scope="session")
def F2():
    return make_field("F2")


@pytest.fixture(scope="session")
def F4():
    return make_field("F4")


@pytest.fixture(scope="session")
def F9():
    return make_field("F9")


@pytest.fixture(scope="session")
def F16():
    return make_field("F16")


@pytest.fixture(scope="session")
def F25():
    return make_field("F25")


@pytest.fixture(scope="session")
def Qi():
    return make_field("Qi")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
