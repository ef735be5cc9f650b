"""The HTTP service the dashboard and CLI talk to.

Configuration comes from the environment: REQSIM_DATA_DIR points at the
persistence directory (default ./data) and REQSIM_ZONE_TABLE optionally
replaces the built-in IP zone table. Every error body is
{"code": ..., "message": ...}.
"""

from __future__ import annotations

import os

from fastapi import FastAPI, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import experiments as lifecycle
from . import schemas
from .errors import ReqsimError
from .experiments import consolidate_file, export_bundle
from .generation import ZoneTable, default_zone_table
from .csvio import consolidated_csv, zip_csvs
from .quantification import QuantifyMode, apportion, quantify
from .store import ExperimentStore

_STATUS_BY_CODE = {
    "FILE_NOT_FOUND": 404,
    "EXPERIMENT_NOT_FOUND": 404,
    "FILE_EXISTS": 409,
    "SEQUENCE": 409,
    "NOT_READY": 409,
    "NOTHING_TO_CONSOLIDATE": 409,
}


def create_app(
    data_dir: str | None = None,
    zone_table: ZoneTable | None = None,
) -> FastAPI:
    data_dir = data_dir or os.environ.get("REQSIM_DATA_DIR", "./data")
    if zone_table is None:
        table_path = os.environ.get("REQSIM_ZONE_TABLE")
        zone_table = ZoneTable.load(table_path) if table_path else default_zone_table()

    app = FastAPI(title="reqsim", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = ExperimentStore(data_dir)

    @app.exception_handler(ReqsimError)
    def _reqsim_error(_, exc: ReqsimError) -> JSONResponse:
        status = _STATUS_BY_CODE.get(exc.code, 400)
        return JSONResponse(status_code=status, content={"code": exc.code, "message": exc.message})

    @app.exception_handler(RequestValidationError)
    def _validation_error(_, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=422, content={"code": "VALIDATION", "message": str(exc.errors())}
        )

    @app.post("/files", response_model=schemas.FileSummaryModel, status_code=201)
    def create_file(body: schemas.CreateFileRequest):
        file = lifecycle.new_file(body.name)
        store.create(file)
        return schemas.FileSummaryModel(
            name=file.name, created_at=file.created_at, experiments=len(file.experiments)
        )

    @app.get("/files", response_model=list[schemas.FileSummaryModel])
    def list_files():
        return [schemas.FileSummaryModel(**summary) for summary in store.list_files()]

    @app.get("/files/{name}", response_model=schemas.FileDetailModel)
    def get_file(name: str):
        file = store.load(name)
        return schemas.FileDetailModel(
            name=file.name,
            created_at=file.created_at,
            experiments=[schemas.experiment_detail(e) for e in file.experiments],
        )

    @app.post(
        "/files/{name}/experiments",
        response_model=schemas.ExperimentDetailModel,
        status_code=201,
    )
    def next_experiment(name: str, body: schemas.NextExperimentRequest):
        with store.mutate(name) as file:
            experiment = lifecycle.next_experiment(
                file, body.added_demands, body.new_arrival_hi
            )
            return schemas.experiment_detail(experiment)

    @app.put(
        "/files/{name}/experiments/{experiment_id}/config",
        response_model=schemas.ExperimentDetailModel,
    )
    def put_config(name: str, experiment_id: int, body: schemas.CloudConfigModel):
        with store.mutate(name) as file:
            lifecycle.set_config(file, experiment_id, body.to_domain())
            return schemas.experiment_detail(
                lifecycle.get_experiment(file, experiment_id)
            )

    @app.post(
        "/files/{name}/experiments/{experiment_id}/generate",
        response_model=schemas.ExperimentDetailModel,
    )
    def generate(name: str, experiment_id: int, body: schemas.GenerateRequest | None = None):
        seed = body.seed if body else None
        with store.mutate(name) as file:
            experiment = lifecycle.generate(file, experiment_id, seed, zone_table)
            return schemas.experiment_detail(experiment)

    @app.post(
        "/files/{name}/experiments/{experiment_id}/refresh",
        response_model=schemas.ExperimentDetailModel,
    )
    def refresh(name: str, experiment_id: int):
        with store.mutate(name) as file:
            experiment = lifecycle.refresh(file, experiment_id, zone_table)
            return schemas.experiment_detail(experiment)

    @app.post(
        "/files/{name}/experiments/{experiment_id}/run",
        response_model=schemas.ResultsModel,
    )
    def run(name: str, experiment_id: int, body: schemas.RunRequest | None = None):
        body = body or schemas.RunRequest()
        with store.mutate(name) as file:
            experiment = lifecycle.run(
                file,
                experiment_id,
                selected=body.strategies,
                mode=body.mode,
                options_override=body.options.to_domain() if body.options else None,
            )
            return schemas.experiment_results(experiment)

    @app.get(
        "/files/{name}/experiments/{experiment_id}/results",
        response_model=schemas.ResultsModel,
    )
    def results(name: str, experiment_id: int):
        file = store.load(name)
        experiment = lifecycle.get_experiment(file, experiment_id)
        if experiment.status is not lifecycle.ExperimentStatus.COMPLETED:
            raise ReqsimError(
                "NOT_READY",
                f"experiment {experiment_id} is {experiment.status.value}; run it first",
            )
        return schemas.experiment_results(experiment)

    @app.get("/files/{name}/experiments/{experiment_id}/results.csv")
    def results_csv(name: str, experiment_id: int):
        file = store.load(name)
        bundle = export_bundle(file, experiment_id)
        payload = zip_csvs(bundle)
        return Response(
            content=payload,
            media_type="application/zip",
            headers={
                "Content-Disposition": f'attachment; filename="{name}-{experiment_id}.zip"'
            },
        )

    @app.get("/files/{name}/experiments/{experiment_id}/csv/{doc}")
    def single_csv(name: str, experiment_id: int, doc: str):
        """One export document as plain CSV; doc is the file name without .csv."""
        file = store.load(name)
        bundle = export_bundle(file, experiment_id)
        key = f"{doc}.csv"
        if key not in bundle:
            raise ReqsimError(
                "UNKNOWN_DOC",
                f"no CSV named {doc!r}; expected one of "
                + ", ".join(sorted(n[:-4] for n in bundle)),
            )
        return Response(content=bundle[key], media_type="text/csv")

    @app.get("/files/{name}/consolidated", response_model=schemas.ConsolidatedModel)
    def consolidated(name: str):
        file = store.load(name)
        return schemas.ConsolidatedModel.from_domain(consolidate_file(file))

    @app.get("/files/{name}/consolidated.csv")
    def consolidated_csv_endpoint(name: str):
        file = store.load(name)
        return Response(
            content=consolidated_csv(consolidate_file(file)), media_type="text/csv"
        )

    @app.get("/files/{name}/events", response_model=list[schemas.EventModel])
    def events(name: str):
        file = store.load(name)
        return [schemas.EventModel.from_domain(e) for e in file.event_log]

    @app.get("/quantify", response_model=schemas.QuantifyResponseModel)
    def quantify_preview(capacities: str, mode: str = "exact", requests: int | None = None):
        try:
            values = [float(part) for part in capacities.split(",") if part.strip()]
        except ValueError:
            raise ReqsimError("BAD_CAPACITIES", f"cannot parse capacities {capacities!r}") from None
        try:
            mode_value = QuantifyMode(mode)
        except ValueError:
            raise ReqsimError("BAD_MODE", f"mode must be exact or paper_compat, got {mode!r}") from None
        result = quantify(values, mode_value)
        counts = None
        if requests is not None:
            counts = apportion(list(result.percentages), requests)
        return schemas.QuantifyResponseModel(
            capacities=list(result.capacities),
            mean=result.mean,
            stddev=result.stddev,
            z_values=list(result.z_values),
            percentages=list(result.percentages),
            total_percentage=result.total_percentage,
            mode=result.mode.value,
            requests=requests,
            counts=counts,
        )

    return app


app = create_app()
