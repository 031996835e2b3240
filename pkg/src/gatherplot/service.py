"""HTTP layout service: ingest CSV datasets into an in-memory LRU store and
serve layout / lens geometry as canonical JSON.

Layout responses depend only on (dataset bytes, query), so identical requests
return byte-identical bodies and the service is restart-safe given
re-ingestion."""

from __future__ import annotations

import os
import secrets
from collections import OrderedDict
from threading import Lock

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from .data_model import Dataset, ingest_csv
from .errors import GatherplotError, UnknownDimensionError
from .geom import Rect
from .layout import GatherplotSpec, Mode, layout_gatherplot, parse_fold_arg
from .lens import LensMode, LensSpec, capture, layout_lens, scatter_positions
from .schema import layout_document, lens_document, to_bytes

DEFAULT_DATASET_CAP = 32
DEFAULT_PORT = 8040


class DatasetStore:
    """Thread-safe LRU of ingested datasets; ids are opaque per-process."""

    def __init__(self, cap: int):
        self.cap = max(1, cap)
        self._items: OrderedDict[str, tuple[str, Dataset]] = OrderedDict()
        self._lock = Lock()

    def put(self, name: str, dataset: Dataset) -> str:
        ds_id = secrets.token_hex(8)
        with self._lock:
            self._items[ds_id] = (name, dataset)
            while len(self._items) > self.cap:
                self._items.popitem(last=False)
        return ds_id

    def get(self, ds_id: str) -> tuple[str, Dataset]:
        with self._lock:
            if ds_id not in self._items:
                raise KeyError(ds_id)
            self._items.move_to_end(ds_id)
            return self._items[ds_id]

    def delete(self, ds_id: str) -> bool:
        with self._lock:
            return self._items.pop(ds_id, None) is not None


def _handle(name: str, ds_id: str, dataset: Dataset) -> dict:
    doc = dataset.descriptor()
    doc.update({"id": ds_id, "name": name})
    return doc


def _rect_from(doc: dict, what: str) -> Rect:
    try:
        return Rect(float(doc["x"]), float(doc["y"]), float(doc["w"]), float(doc["h"]))
    except (KeyError, TypeError, ValueError):
        raise HTTPException(status_code=400, detail=f"{what} must carry numeric x, y, w, h")


def create_app(dataset_cap: int | None = None) -> FastAPI:
    cap = dataset_cap or int(os.environ.get("GATHERPLOT_DATASET_CAP", DEFAULT_DATASET_CAP))
    app = FastAPI(title="gatherplot layout service", version="1")
    app.add_middleware(  # the frontend is served separately from the API
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = DatasetStore(cap)
    app.state.store = store

    def resolve(ds_id: str) -> tuple[str, Dataset]:
        try:
            return store.get(ds_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown dataset {ds_id!r}")

    @app.post("/datasets", status_code=201)
    async def post_dataset(request: Request, name: str = "dataset"):
        body = await request.body()
        if not body:
            raise HTTPException(status_code=400, detail="empty request body")
        try:
            dataset = ingest_csv(body)
        except GatherplotError as e:
            raise HTTPException(status_code=400, detail=str(e))
        ds_id = store.put(name, dataset)
        return _handle(name, ds_id, dataset)

    @app.get("/datasets/{ds_id}")
    def get_dataset(ds_id: str):
        name, dataset = resolve(ds_id)
        return _handle(name, ds_id, dataset)

    @app.delete("/datasets/{ds_id}", status_code=204)
    def delete_dataset(ds_id: str):
        if not store.delete(ds_id):
            raise HTTPException(status_code=404, detail=f"unknown dataset {ds_id!r}")
        return Response(status_code=204)

    @app.get("/datasets/{ds_id}/layout")
    def get_layout(
        ds_id: str,
        request: Request,
        x: str | None = None,
        y: str | None = None,
        color: str | None = None,
        mode: str = "auto",
        width: int = 800,
        height: int = 600,
    ):
        _, dataset = resolve(ds_id)
        try:
            folds = tuple(
                parse_fold_arg(arg) for arg in request.query_params.getlist("fold")
            )
            spec = GatherplotSpec(
                region=Rect(0, 0, width, height),
                x_dim=x,
                y_dim=y,
                color_dim=color,
                mode=Mode(mode),
                folds=folds,
            )
            layout = layout_gatherplot(dataset, spec)
        except ValueError:
            raise HTTPException(status_code=400, detail=f"unknown mode {mode!r}")
        except UnknownDimensionError as e:
            raise HTTPException(status_code=400, detail=f"unknown dimension {e.name!r}")
        except GatherplotError as e:
            raise HTTPException(status_code=400, detail=str(e))
        return Response(content=to_bytes(layout_document(layout)), media_type="application/json")

    @app.post("/datasets/{ds_id}/lens")
    async def post_lens(ds_id: str, request: Request):
        _, dataset = resolve(ds_id)
        body = await request.json()
        for key in ("x", "y", "region", "group_dim"):
            if key not in body:
                raise HTTPException(status_code=400, detail=f"lens request misses {key!r}")
        plot = _rect_from(body.get("plot", {"x": 0, "y": 0, "w": 800, "h": 600}), "plot")
        region = _rect_from(body["region"], "region")
        try:
            lens_mode = LensMode(body.get("mode", "standard"))
        except ValueError:
            raise HTTPException(status_code=400, detail=f"unknown lens mode {body.get('mode')!r}")
        try:
            scatter = scatter_positions(
                dataset, body["x"], body["y"], plot, float(body.get("mark_size", 6.0))
            )
            spec = LensSpec(region=region, mode=lens_mode, group_dim=body["group_dim"])
            captured = capture(scatter, spec)
            lens = layout_lens(captured, dataset, spec)
        except UnknownDimensionError as e:
            raise HTTPException(status_code=400, detail=f"unknown dimension {e.name!r}")
        except GatherplotError as e:
            raise HTTPException(status_code=400, detail=str(e))
        return Response(content=to_bytes(lens_document(lens)), media_type="application/json")

    return app


def run(bind: str = f"127.0.0.1:{DEFAULT_PORT}", dataset_cap: int | None = None) -> None:
    import uvicorn

    host, _, port = bind.rpartition(":")
    uvicorn.run(create_app(dataset_cap), host=host or "127.0.0.1", port=int(port), log_level="warning")
