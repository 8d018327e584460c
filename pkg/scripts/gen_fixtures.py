"""Measure the acceptance constants and write src/glfiber/data/acceptance_fixtures.json."""

import json
from pathlib import Path

from glfiber.acceptance import measure_fixtures

OUT = Path(__file__).resolve().parents[1] / "src" / "glfiber" / "data" / "acceptance_fixtures.json"

if __name__ == "__main__":
    data = measure_fixtures()
    OUT.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    print(f"wrote {OUT}")
