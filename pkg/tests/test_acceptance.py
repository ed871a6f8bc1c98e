"""Acceptance criteria AC1-AC10; prints one PASS/FAIL line per criterion."""

from __future__ import annotations

import pytest

from conespec.acceptance import CRITERIA, SEEDED


@pytest.mark.parametrize("cid", list(CRITERIA))
def test_criterion(cid, capsys):
    fn = CRITERIA[cid]
    result = fn(None) if cid in SEEDED else fn()
    with capsys.disabled():
        print(f"\n{result.line()}")
    assert result.passed, result.detail
