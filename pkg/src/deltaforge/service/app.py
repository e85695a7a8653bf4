"""HTTP JSON API for external RL trainers.

Endpoints:
    POST /score/manufactoria   {response, instance | instance_id, tests?,
                                test_count?, test_seed?, limits?} -> Score
    POST /score/bouncingsim    {source, entry | entry_id}         -> Score
    POST /reward               {step, schedule, score}            -> {reward}
    POST /replay/{prompt_id}   {trace, score}                     -> {stored}
    GET  /replay/{prompt_id}?k=3                                  -> {traces}
    POST /feedback             {score, cap?}                      -> {text}

Scoring endpoints are pure wrappers: identical payloads produce identical
response bodies. The replay store is the only stateful piece.
"""

from __future__ import annotations

import threading
from typing import Any

from fastapi import Body, FastAPI, HTTPException, Query

from deltaforge.bounce.dataset import DatasetEntry, load_entries
from deltaforge.bounce.runner import ExecPolicy, score_source
from deltaforge.manufactoria.dsl import RunLimits
from deltaforge.manufactoria.families import (
    InfeasibleBalance,
    ProblemInstance,
    TestCase,
    generate_tests,
    sample_instance,
)
from deltaforge.manufactoria.judge import score_submission
from deltaforge.rewards.feedback import DEFAULT_FEEDBACK_CAP, format_failure_feedback
from deltaforge.rewards.replay import NotFullPass, ReplayStore
from deltaforge.rewards.schedule import RewardSchedule, staged_reward
from deltaforge.scoring import Score
from deltaforge.service.config import ServiceConfig


def _resolve_instance(payload: dict[str, Any]) -> ProblemInstance:
    if "instance" in payload and payload["instance"]:
        return ProblemInstance.from_dict(payload["instance"])
    instance_id = payload.get("instance_id")
    if not instance_id:
        raise HTTPException(400, "provide 'instance' or 'instance_id'")
    family, sep, seed = str(instance_id).partition(":")
    if not sep:
        raise HTTPException(400, "instance_id format is FAMILY:seed")
    try:
        return sample_instance(family, seed)
    except ValueError as exc:
        raise HTTPException(400, str(exc)) from None


def _score_from(payload: dict[str, Any], key: str = "score") -> Score:
    try:
        return Score.from_dict(payload[key])
    except (KeyError, TypeError, ValueError) as exc:
        raise HTTPException(400, f"bad score payload: {exc}") from None


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    app = FastAPI(title="deltaforge reward service", version="0.1.0")
    app.state.config = config
    app.state.replay = ReplayStore(config.store_path)
    app.state.exec_gate = threading.Semaphore(max(1, config.workers))
    app.state.entry_index = None  # lazy {id: DatasetEntry}

    policy = ExecPolicy(
        guest_command=config.guest_command,
        wall_timeout=config.wall_timeout,
        memory_cap=config.memory_cap,
    )

    def _resolve_entry(payload: dict[str, Any]) -> DatasetEntry:
        if "entry" in payload and payload["entry"]:
            try:
                return DatasetEntry.from_dict(payload["entry"])
            except (KeyError, TypeError, ValueError) as exc:
                raise HTTPException(400, f"bad entry payload: {exc}") from None
        entry_id = payload.get("entry_id")
        if not entry_id:
            raise HTTPException(400, "provide 'entry' or 'entry_id'")
        if config.entry_index_path is None:
            raise HTTPException(400, "entry_id lookup needs entry_index_path in the config")
        if app.state.entry_index is None:
            app.state.entry_index = {e.id: e for e in load_entries(config.entry_index_path)}
        entry = app.state.entry_index.get(entry_id)
        if entry is None:
            raise HTTPException(404, f"unknown entry id '{entry_id}'")
        return entry

    @app.post("/score/manufactoria")
    def score_manufactoria(payload: dict[str, Any] = Body(...)) -> dict[str, Any]:
        if "response" not in payload:
            raise HTTPException(400, "missing 'response'")
        instance = _resolve_instance(payload)
        if payload.get("tests"):
            tests = [TestCase.from_dict(t) for t in payload["tests"]]
        else:
            count = int(payload.get("test_count", config.default_test_count))
            seed = payload.get("test_seed", instance.seed)
            try:
                tests = generate_tests(instance, count, seed)
            except (InfeasibleBalance, ValueError) as exc:
                raise HTTPException(400, str(exc)) from None
        limits = RunLimits(**payload["limits"]) if payload.get("limits") else RunLimits()
        score = score_submission(payload["response"], instance, tests, limits)
        return score.to_dict()

    @app.post("/score/bouncingsim")
    def score_bouncingsim(payload: dict[str, Any] = Body(...)) -> dict[str, Any]:
        if "source" not in payload:
            raise HTTPException(400, "missing 'source'")
        entry = _resolve_entry(payload)
        with app.state.exec_gate:
            score = score_source(payload["source"], entry, policy)
        return score.to_dict()

    @app.post("/reward")
    def reward(payload: dict[str, Any] = Body(...)) -> dict[str, Any]:
        try:
            step = int(payload["step"])
            schedule = RewardSchedule(**payload.get("schedule", {}))
        except (KeyError, TypeError, ValueError) as exc:
            raise HTTPException(400, f"bad reward payload: {exc}") from None
        score = _score_from(payload)
        try:
            return {"reward": staged_reward(step, schedule, score)}
        except ValueError as exc:
            raise HTTPException(400, str(exc)) from None

    @app.post("/replay/{prompt_id}")
    def post_replay(prompt_id: str, payload: dict[str, Any] = Body(...)) -> dict[str, Any]:
        if "trace" not in payload:
            raise HTTPException(400, "missing 'trace'")
        score = _score_from(payload)
        try:
            stored = app.state.replay.record_success(prompt_id, payload["trace"], score)
        except NotFullPass as exc:
            raise HTTPException(409, str(exc)) from None
        return {"stored": stored}

    @app.get("/replay/{prompt_id}")
    def get_replay(prompt_id: str, k: int = Query(3, ge=1)) -> dict[str, Any]:
        traces = app.state.replay.fetch_recent(prompt_id, k)
        return {"traces": [t.to_dict() for t in traces]}

    @app.post("/feedback")
    def feedback(payload: dict[str, Any] = Body(...)) -> dict[str, Any]:
        score = _score_from(payload)
        cap = int(payload.get("cap", DEFAULT_FEEDBACK_CAP))
        return {"text": format_failure_feedback(score, cap)}

    return app
