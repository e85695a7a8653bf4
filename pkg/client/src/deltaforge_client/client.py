"""HTTP client for the reward service.

Mirrors the service API verbatim:

    POST /score/manufactoria    score_manufactoria(response_text, instance_ref)
    POST /score/bouncingsim     score_bouncingsim(source_text, entry_ref)
    POST /reward                reward(step, schedule, score)
    POST /replay/{prompt_id}    post_replay(prompt_id, trace, score)
    GET  /replay/{prompt_id}    fetch_replay(prompt_id, k)
    POST /feedback              feedback(score, cap)

Connection failures and 5xx responses are retried with exponential backoff
up to the configured count, then raised as TransportError; other non-2xx
responses surface immediately as ServiceError with status and body.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Any

import requests


class TransportError(Exception):
    """The service could not be reached (after retries)."""


class ServiceError(Exception):
    """The service answered with a non-2xx status."""

    def __init__(self, status: int, body: Any):
        self.status = status
        self.body = body
        super().__init__(f"HTTP {status}: {body}")


@dataclass(frozen=True)
class ClientConfig:
    base_url: str
    timeout: float = 10.0
    retries: int = 2
    backoff_base: float = 0.2  # seconds; doubles per attempt

    def __post_init__(self) -> None:
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if self.retries < 0:
            raise ValueError("retries must be non-negative")


class RewardClient:
    def __init__(self, config: ClientConfig | str):
        if isinstance(config, str):
            config = ClientConfig(base_url=config)
        self.config = config
        self._base = config.base_url.rstrip("/")

    # -- transport ---------------------------------------------------------

    def _request(self, method: str, path: str, json_body: dict | None = None,
                 params: dict | None = None) -> Any:
        url = self._base + path
        last_error: Exception | None = None
        for attempt in range(self.config.retries + 1):
            try:
                response = requests.request(
                    method, url, json=json_body, params=params, timeout=self.config.timeout
                )
            except (requests.ConnectionError, requests.Timeout) as exc:
                last_error = exc
            else:
                if response.status_code >= 500:
                    last_error = ServiceError(response.status_code, response.text)
                else:
                    if response.status_code >= 400:
                        try:
                            body = response.json()
                        except ValueError:
                            body = response.text
                        raise ServiceError(response.status_code, body)
                    return response.json()
            if attempt < self.config.retries:
                time.sleep(self.config.backoff_base * (2 ** attempt))
        raise TransportError(f"{method} {url} failed after "
                             f"{self.config.retries + 1} attempts: {last_error}")

    # -- scoring -----------------------------------------------------------

    def score_manufactoria(self, response_text: str, instance_ref: str | dict,
                           tests: list[dict] | None = None,
                           limits: dict | None = None,
                           test_count: int | None = None,
                           test_seed: Any = None) -> dict:
        payload: dict[str, Any] = {"response": response_text}
        if isinstance(instance_ref, str):
            payload["instance_id"] = instance_ref
        else:
            payload["instance"] = instance_ref
        if tests is not None:
            payload["tests"] = tests
        if limits is not None:
            payload["limits"] = limits
        if test_count is not None:
            payload["test_count"] = test_count
        if test_seed is not None:
            payload["test_seed"] = test_seed
        return self._request("POST", "/score/manufactoria", payload)

    def score_bouncingsim(self, source_text: str, entry_ref: str | dict) -> dict:
        payload: dict[str, Any] = {"source": source_text}
        if isinstance(entry_ref, str):
            payload["entry_id"] = entry_ref
        else:
            payload["entry"] = entry_ref
        return self._request("POST", "/score/bouncingsim", payload)

    # -- rewards ------------------------------------------------------------

    def reward(self, step: int, schedule: dict, score: dict) -> float:
        body = self._request("POST", "/reward",
                             {"step": step, "schedule": schedule, "score": score})
        return body["reward"]

    def post_replay(self, prompt_id: str, trace: str, score: dict) -> int:
        body = self._request("POST", f"/replay/{prompt_id}",
                             {"trace": trace, "score": score})
        return body["stored"]

    def fetch_replay(self, prompt_id: str, k: int = 3) -> list[dict]:
        body = self._request("GET", f"/replay/{prompt_id}", params={"k": k})
        return body["traces"]

    def feedback(self, score: dict, cap: int | None = None) -> str:
        payload: dict[str, Any] = {"score": score}
        if cap is not None:
            payload["cap"] = cap
        return self._request("POST", "/feedback", payload)["text"]
