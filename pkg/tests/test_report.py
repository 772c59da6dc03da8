import json

import numpy as np
import pytest

from cdlat.report import VerificationReport


def test_statuses_and_exit_semantics():
    rep = VerificationReport("G")
    rep.add("a", True, n=1)
    rep.add("b", "vacuous")
    rep.add("c", "skipped")
    assert rep.passed and rep.status_of("b") == "vacuous"
    rep.add("d", False)
    assert not rep.passed and [c.id for c in rep.failures] == ["d"]
    with pytest.raises(ValueError):
        rep.add("e", "maybe")
    with pytest.raises(KeyError):
        rep.status_of("zz")


def test_extend_prefix_and_json():
    inner = VerificationReport("H")
    inner.add("x", True, value=np.int64(3), items={1, 2})
    outer = VerificationReport("G", tier="structural")
    outer.extend(inner, prefix="H:")
    outer.finish()
    data = json.loads(outer.to_json())
    assert data["checks"][0]["id"] == "H:x"
    assert data["checks"][0]["details"]["value"] == 3
    assert data["tier"] == "structural" and data["passed"]
    assert "seconds" in data["stats"]
    assert outer.summary().startswith("PASS G [tier=structural]")
