#!/usr/bin/env python3
"""Regenerate tests/fixtures/ from a live in-process cadscript service.

The frontend promises byte-for-byte display of server numbers, so the
fixtures must be the server's actual response bytes, not hand-written
JSON. Run from the frontend directory:

    python3 tools/capture-fixtures.py
"""

import pathlib
import warnings

warnings.filterwarnings("ignore")

from fastapi.testclient import TestClient

from cadscript.service import create_app

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def main() -> None:
    client = TestClient(create_app(default_seed=17, offline=True))
    out = {}

    resp = client.post("/sessions", json={})
    out["session.json"] = resp.content
    sid = resp.json()["session_id"]

    out["command_box.json"] = client.post(
        f"/sessions/{sid}/commands", json={"text": "box 1 1 1", "mode": "dsl"}
    ).content
    out["scene_draft.json"] = client.get(f"/sessions/{sid}/scene").content

    client.post(f"/sessions/{sid}/commands", json={"text": "bake obj1", "mode": "dsl"})
    out["scene_baked.json"] = client.get(f"/sessions/{sid}/scene").content
    out["history.json"] = client.get(f"/sessions/{sid}/history").content

    out["command_error.json"] = client.post(
        f"/sessions/{sid}/commands", json={"text": "box -1 1 1", "mode": "dsl"}
    ).content
    out["nl_error.json"] = client.post(
        f"/sessions/{sid}/commands",
        json={"text": "sculpt me a swan", "mode": "nl"},
    ).content

    # A second session for the study so the building is the only object:
    # a 2 x 2 x 8 m tower shades a 17 x 17 grid of 2 m cells.
    sid2 = client.post("/sessions", json={}).json()["session_id"]
    client.post(
        f"/sessions/{sid2}/commands", json={"text": "box 2 2 8 name tower", "mode": "dsl"}
    )
    out["sun_study.json"] = client.post(
        f"/sessions/{sid2}/sun-study",
        json={"date": "2026-06-21", "interval_min": 60, "cell_size_m": 2.0},
    ).content
    out["scene_with_study.json"] = client.get(f"/sessions/{sid2}/scene").content

    FIXTURES.mkdir(parents=True, exist_ok=True)
    for name, content in out.items():
        (FIXTURES / name).write_bytes(content)
        print(f"wrote {name} ({len(content)} bytes)")


if __name__ == "__main__":
    main()
