"""Shared fixture: a live reward service on a loopback port."""

import socket
import threading
import time

import pytest
import uvicorn

from deltaforge.service.app import create_app
from deltaforge.service.config import ServiceConfig


def _free_port() -> int:
    sock = socket.socket()
    sock.bind(("127.0.0.1", 0))
    port = sock.getsockname()[1]
    sock.close()
    return port


@pytest.fixture(scope="session")
def service_url(tmp_path_factory):
    port = _free_port()
    store = tmp_path_factory.mktemp("store") / "replay.jsonl"
    config = ServiceConfig(host="127.0.0.1", port=port, store_path=str(store),
                           wall_timeout=30.0)
    server = uvicorn.Server(uvicorn.Config(create_app(config), host="127.0.0.1",
                                           port=port, log_level="warning"))
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.time() + 15
    while not server.started:
        if time.time() > deadline:
            raise RuntimeError("service did not start")
        time.sleep(0.05)
    yield f"http://127.0.0.1:{port}"
    server.should_exit = True
    thread.join(timeout=5)
