import itertools

import numpy as np
import pytest


def int_rank(rows):
    """Reference GF(2) rank on Python-int row bitsets (XOR basis insertion)."""
    basis = []
    for v in rows:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def rows_as_ints(arr):
    return [int("".join(map(str, row[::-1])) or "0", 2) for row in np.asarray(arr, dtype=int)]


def span(gen):
    """All codewords of the row space of a small 0/1 matrix, by brute force."""
    gen = np.asarray(gen, dtype=np.int64)
    k, n = gen.shape
    out = set()
    for coeffs in itertools.product((0, 1), repeat=k):
        out.add(tuple((np.array(coeffs, dtype=np.int64) @ gen % 2).tolist()) if k else (0,) * n)
    return sorted(out)


@pytest.fixture
def rng():
    return np.random.default_rng(20260101)


_ACCEPTANCE: list[str] = []


@pytest.fixture
def verdict(request):
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""

    def record(label: str, ok: bool, detail: str = "") -> None:
        _ACCEPTANCE.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  [{detail}]" if detail else ""))
        assert ok, f"{label}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
