import pytest

import triact

SHIPPED = [
    "t3",
    "colored-t3",
    "oriented-t3",
    "joined-ngons(3)",
    "joined-ngons(4)",
    "joined-2ngons(2)",
    "joined-2ngons(3)",
    "delta-p(2)",
    "delta-p(3)",
    "strip",
    "theta(0)",
    "theta(1)",
    "theta(2)",
    "rotation-tree(3)",
    "rotation-tree(4)",
]

TRIVALENT = [f for f in SHIPPED if not f.startswith(("delta-p", "rotation-tree(4)"))]
COLORED = ["colored-t3", "joined-ngons(3)", "joined-ngons(4)", "joined-2ngons(2)",
           "joined-2ngons(3)", "strip", "theta(0)", "theta(1)", "theta(2)"]


@pytest.fixture(scope="session")
def make():
    return triact.make


# lines from the acceptance tests, repeated in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
