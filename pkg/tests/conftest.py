import json

import pytest

from hslab_config import DEFAULT_FIXTURE_PATH


@pytest.fixture
def perturbed_fixtures(tmp_path):
    """Reference tables with one flag Eulerian number off by one."""
    with open(DEFAULT_FIXTURE_PATH, "r", encoding="utf-8") as f:
        data = json.load(f)
    for entry in data["flag_eulerian"]:
        if entry["r"] == 1 and entry["n"] == 3:
            entry["row"] = ["1", "5", "1"]
    path = tmp_path / "golden.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)
