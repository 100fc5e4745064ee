"""Stateless JSON-over-HTTP service exposing the core operations.

Handlers call only pure functions, so requests can be served concurrently
and any request sequence replays to the same responses.
"""

from __future__ import annotations

import logging
import mimetypes
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .ag import derived_equivalent
from .errors import (
    InvalidParameters,
    InvariantViolation,
    NotInClass,
    ParseError,
    SizeLimit,
    UnknownVertex,
    WorkbenchError,
)
from .jsonio import dump_doc, load_doc
from .quiver import mutate, quiver_from_doc, quiver_to_doc
from .report import analyze
from .structure import Parameters, build_normal_form, reduce_to_normal_form

log = logging.getLogger("tildea.server")

BAD_REQUEST_ERRORS = (ParseError, InvariantViolation, UnknownVertex,
                      InvalidParameters, SizeLimit)


def _quiver_field(doc, key):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"request body needs a {key!r} field")
    return quiver_from_doc(doc[key])


def handle_mutate(doc):
    q = _quiver_field(doc, "quiver")
    vertex = doc.get("vertex")
    if not isinstance(vertex, str):
        raise ParseError("request body needs a string 'vertex' field")
    return {"quiver": quiver_to_doc(mutate(q, vertex))}


def handle_analyze(doc):
    return analyze(_quiver_field(doc, "quiver")).to_doc()


def handle_reduce(doc):
    trace, nf = reduce_to_normal_form(_quiver_field(doc, "quiver"))
    return {"steps": trace.to_doc()["steps"], "normal_form": quiver_to_doc(nf)}


def handle_derived_eq(doc):
    a = _quiver_field(doc, "a")
    b = _quiver_field(doc, "b")
    return derived_equivalent(a, b).to_doc()


def handle_normal_form(query):
    try:
        p = Parameters(*(int(query.get(k, ["0"])[0]) for k in ("r1", "r2", "s1", "s2")))
    except ValueError:
        raise ParseError("r1, r2, s1, s2 must be integers") from None
    return {"quiver": quiver_to_doc(build_normal_form(p))}


POST_ROUTES = {
    "/api/mutate": handle_mutate,
    "/api/analyze": handle_analyze,
    "/api/reduce": handle_reduce,
    "/api/derived-eq": handle_derived_eq,
}


class WorkbenchHandler(BaseHTTPRequestHandler):
    server_version = "tildea"
    ui_dir = None

    def log_message(self, fmt, *args):
        log.info("%s %s", self.address_string(), fmt % args)

    def _send(self, status, payload, content_type="application/json"):
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(payload)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.end_headers()
        self.wfile.write(payload)

    def _send_error(self, status, kind, message):
        self._send(status, dump_doc({"error": kind, "message": message}))

    def _run(self, fn, arg):
        try:
            doc = fn(arg)
        except NotInClass as e:
            self._send_error(422, "NotInClass", str(e))
        except BAD_REQUEST_ERRORS as e:
            self._send_error(400, type(e).__name__, str(e))
        except Exception as e:
            log.error("internal failure: %s", e)
            kind = type(e).__name__ if isinstance(e, WorkbenchError) else "InternalError"
            self._send_error(500, kind, str(e))
        else:
            self._send(200, dump_doc(doc))

    def do_OPTIONS(self):
        self._send(204, b"")

    def do_POST(self):
        path = urlparse(self.path).path
        handler = POST_ROUTES.get(path)
        if handler is None:
            self._send_error(400, "UnknownEndpoint", f"no POST endpoint {path!r}")
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            body = load_doc(self.rfile.read(length))
        except (ParseError, ValueError) as e:
            self._send_error(400, "ParseError", str(e))
            return
        self._run(handler, body)

    def do_GET(self):
        url = urlparse(self.path)
        if url.path == "/api/normal-form":
            self._run(handle_normal_form, parse_qs(url.query))
            return
        if self.ui_dir is not None:
            self._serve_static(url.path)
            return
        self._send_error(400, "UnknownEndpoint", f"no GET endpoint {url.path!r}")

    def _serve_static(self, path):
        root = Path(self.ui_dir).resolve()
        rel = path.lstrip("/") or "index.html"
        target = (root / rel).resolve()
        if root not in target.parents and target != root:
            self._send_error(400, "BadPath", "path escapes the UI directory")
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._send_error(400, "NotFound", f"no file {rel!r}")
            return
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        self._send(200, target.read_bytes(), content_type=ctype)


def make_server(port, ui_dir=None):
    handler = type("BoundHandler", (WorkbenchHandler,), {"ui_dir": ui_dir})
    return ThreadingHTTPServer(("0.0.0.0", port), handler)


def serve(port, ui_dir=None):
    httpd = make_server(port, ui_dir)
    log.info("serving on port %d", httpd.server_address[1])
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()


def start_background(port=0, ui_dir=None):
    """Server on an ephemeral port for tests; returns (server, thread)."""
    httpd = make_server(port, ui_dir)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    return httpd, thread
