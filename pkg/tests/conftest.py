import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from hifactmix import ReferenceEncoder, ReferenceGenerator, TrainConfig
from hifactmix import build_artifacts, generate_fixture, stratified_split


class StubServer:
    """Tiny configurable HTTP stub for exercising the remote clients.

    `responder` is a callable (path, payload) -> (status, body_dict_or_str)
    or the string "hang" to trigger client timeouts.
    """

    def __init__(self, responder):
        self.responder = responder
        self.requests = []
        outer = self

        class Handler(BaseHTTPRequestHandler):
            def do_POST(self):
                length = int(self.headers.get("Content-Length", 0))
                payload = json.loads(self.rfile.read(length) or b"{}")
                outer.requests.append((self.path, payload))
                result = outer.responder(self.path, payload)
                if result == "hang":
                    import time

                    time.sleep(5)
                    result = (200, {})
                status, body = result
                raw = (
                    body.encode() if isinstance(body, str)
                    else json.dumps(body).encode()
                )
                self.send_response(status)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(raw)))
                self.end_headers()
                self.wfile.write(raw)

            def log_message(self, *args):
                pass

        self.server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self.url = f"http://127.0.0.1:{self.server.server_port}/"
        self.thread = threading.Thread(target=self.server.serve_forever, daemon=True)
        self.thread.start()

    def close(self):
        self.server.shutdown()
        self.server.server_close()


@pytest.fixture
def stub_server():
    servers = []

    def make(responder):
        s = StubServer(responder)
        servers.append(s)
        return s

    yield make
    for s in servers:
        s.close()


@pytest.fixture(scope="session")
def small_corpus():
    return generate_fixture(80, (1, 1, 1, 1), 0.55, seed=42)


@pytest.fixture(scope="session")
def small_split(small_corpus):
    return stratified_split(small_corpus, (0.7, 0.1, 0.2), seed=7)


@pytest.fixture(scope="session")
def small_artifacts(small_corpus, small_split):
    config = TrainConfig(seed=1, max_epochs=5, hidden_width=32, patience=3)
    return build_artifacts(
        small_corpus, small_split, ReferenceEncoder(), ReferenceGenerator(), config
    )
