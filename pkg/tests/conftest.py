from math import gcd

ACCEPTANCE_LINES = []


def coprime_pairs(dmax, dmin=2):
    """All (d, q) with dmin <= d <= dmax, 1 <= q < d, gcd(d, q) = 1."""
    return [
        (d, q)
        for d in range(dmin, dmax + 1)
        for q in range(1, d)
        if gcd(d, q) == 1
    ]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
