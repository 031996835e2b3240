#!/usr/bin/env python3
"""Record real service responses as frontend test fixtures.

Run from the repo root:  python3 scripts/make_frontend_fixtures.py

Writes frontend/tests/fixtures/*.json plus manifest.json mapping canonical
request keys (METHOD + URL [+ canonical body]) to fixture files. The URL and
body canonicalization here mirrors frontend/src/state.ts and api.ts, so the
recorded keys match what the UI core will request.
"""

import json
import pathlib
import sys
import urllib.parse

sys.path.insert(0, "tests")

import fixture_data  # noqa: E402
from fastapi.testclient import TestClient  # noqa: E402

from gatherplot.service import create_app  # noqa: E402

OUT = pathlib.Path("frontend/tests/fixtures")


def enc(value: str) -> str:
    return urllib.parse.quote(str(value), safe="")


def layout_url(ds_id: str, c: dict) -> str:
    parts = []
    for key in ("x", "y", "color"):
        if c.get(key):
            parts.append(f"{key}={enc(c[key])}")
    parts.append(f"mode={c.get('mode', 'auto')}")
    parts.append(f"width={c.get('width', 800)}")
    parts.append(f"height={c.get('height', 600)}")
    for f in c.get("folds", []):
        parts.append("fold=" + enc(f"{f['axis']}={f['value']}:{f['state']}"))
    return f"/datasets/{ds_id}/layout?" + "&".join(parts)


def canonical_body(body: dict) -> str:
    return json.dumps(body, sort_keys=True, separators=(",", ":"))


def lens_body(ds: dict) -> dict:
    return {
        "x": ds["x"],
        "y": ds["y"],
        "mark_size": ds.get("mark_size", 6),
        "plot": ds.get("plot", {"x": 0, "y": 0, "w": 800, "h": 600}),
        "region": ds["region"],
        "mode": ds.get("mode", "standard"),
        "group_dim": ds["group_dim"],
    }


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    client = TestClient(create_app())
    manifest: dict[str, str] = {}

    def save(key: str, name: str, content: bytes) -> None:
        (OUT / name).write_bytes(content)
        manifest[key] = name

    tid = client.post("/datasets?name=titanic", content=fixture_data.titanic_csv()).json()["id"]
    aid = client.post("/datasets?name=airline", content=fixture_data.airline_csv()).json()["id"]

    save(f"GET /datasets/{tid}", "handle_titanic.json", client.get(f"/datasets/{tid}").content)
    save(f"GET /datasets/{aid}", "handle_airline.json", client.get(f"/datasets/{aid}").content)

    base = {"x": "class", "y": "sex", "color": "survived", "mode": "absolute"}
    layouts = {
        "layout_absolute.json": base,
        "layout_normalized.json": {**base, "mode": "normalized"},
        "layout_fold_one.json": {
            **base,
            "folds": [{"axis": "x", "value": "Crew", "state": "min"}],
        },
        "layout_fold_two.json": {
            **base,
            "folds": [
                {"axis": "x", "value": "Crew", "state": "min"},
                {"axis": "y", "value": "Male", "state": "min"},
            ],
        },
        "layout_swapped.json": {**base, "x": "sex", "y": "class"},
    }
    for name, controls in layouts.items():
        url = layout_url(tid, controls)
        resp = client.get(url)
        assert resp.status_code == 200, (url, resp.text)
        save(f"GET {url}", name, resp.content)

    region_a = {"x": 180, "y": 140, "w": 200, "h": 200}
    region_b = {"x": 300, "y": 220, "w": 200, "h": 200}
    lenses = {
        "lens_a_standard.json": {"x": "dep_delay", "y": "arr_delay", "group_dim": "day", "region": region_a},
        "lens_b_standard.json": {"x": "dep_delay", "y": "arr_delay", "group_dim": "day", "region": region_b},
        "lens_b_pie.json": {
            "x": "dep_delay", "y": "arr_delay", "group_dim": "day", "region": region_b, "mode": "pie",
        },
    }
    for name, ds in lenses.items():
        body = canonical_body(lens_body(ds))
        resp = client.post(f"/datasets/{aid}/lens", content=body)
        assert resp.status_code == 200, resp.text
        save(f"POST /datasets/{aid}/lens {body}", name, resp.content)

    manifest["dataset_ids"] = json.dumps({"titanic": tid, "airline": aid})
    (OUT / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True))
    print(f"wrote {len(manifest)} fixtures to {OUT}")


if __name__ == "__main__":
    main()
