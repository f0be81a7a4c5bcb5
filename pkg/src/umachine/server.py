"""HTTP simplification service.

Endpoints:
  POST /simplify?scope=<theory-ref>&fuel=<n>  — body is a term, either
      ``text/plain`` in notation syntax (scope required) or
      ``application/openmath+xml``; the response mirrors the request format
      and carries ``X-Simplify-Steps`` and ``X-Simplify-Exhausted`` headers.
      400 parse error, 404 unknown scope, 422 fuel exhausted (partial result
      in the body), 200 success.
  POST /theories  — ingest an OMDoc document; theories become available as
      scopes; no rules are gained.  400 subset violation, 409 name collision.
  GET /theories   — loaded module URIs, one per line.
  GET /health     — "ok".
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlsplit

from .graph import (DuplicateModuleError, GraphError, TheoryGraph,
                    UnresolvedModuleError)
from .machine import RuleBase, SimplifyBudget, simplify
from .notation import SyntaxErrorAt, parse_term, render_term
from .omdoc import OmdocError, ingest_omdoc
from .omxml import XmlDecodeError, decode_xml, encode_xml

TEXT = "text/plain; charset=utf-8"
OMXML = "application/openmath+xml"

DEFAULT_FUEL = 10000
MAX_FUEL = 10 ** 7


@dataclass
class Response:
    status: int
    body: str
    content_type: str = TEXT
    headers: dict = field(default_factory=dict)


@dataclass
class Service:
    """Framework-free request handling over a frozen graph and rule base."""

    graph: TheoryGraph
    base: RuleBase
    default_fuel: int = DEFAULT_FUEL
    _ingest_lock: threading.Lock = field(default_factory=threading.Lock)

    def simplify_request(self, body: bytes, content_type: str,
                         scope_ref: str | None, fuel: str | None) -> Response:
        xml = content_type.split(";")[0].strip().lower() == OMXML
        out_type = OMXML if xml else TEXT
        try:
            fuel_n = int(fuel) if fuel else self.default_fuel
        except ValueError:
            return Response(400, f"bad fuel value: {fuel}\n")
        if fuel_n <= 0 or fuel_n > MAX_FUEL:
            return Response(400, f"fuel out of range: {fuel_n}\n")
        scope = None
        if scope_ref:
            try:
                scope = self.graph.scope_for(self.graph.resolve(scope_ref))
            except (UnresolvedModuleError, GraphError) as e:
                return Response(404, f"{e}\n")
        try:
            text = body.decode("utf-8")
        except UnicodeDecodeError:
            return Response(400, "body is not UTF-8\n")
        if xml:
            try:
                term = decode_xml(text)
            except XmlDecodeError as e:
                return Response(400, f"{e}\n")
        else:
            if scope is None:
                return Response(400, "text requests need a scope parameter\n")
            try:
                term = parse_term(text.strip(), scope)
            except SyntaxErrorAt as e:
                return Response(400, f"parse error: {e}\n")
            except ValueError as e:
                return Response(400, f"parse error: {e}\n")
        result = simplify(self.base, term, SimplifyBudget(fuel_n))
        if xml:
            payload = encode_xml(result.term)
        else:
            payload = render_term(result.term, scope)
        headers = {"X-Simplify-Steps": str(result.steps),
                   "X-Simplify-Exhausted": "true" if result.exhausted else "false"}
        status = 422 if result.exhausted else 200
        return Response(status, payload, out_type, headers)

    def ingest(self, body: bytes) -> Response:
        try:
            text = body.decode("utf-8")
        except UnicodeDecodeError:
            return Response(400, "body is not UTF-8\n")
        with self._ingest_lock:
            try:
                added = ingest_omdoc(self.graph, text)
            except DuplicateModuleError as e:
                return Response(409, f"{e}\n")
            except OmdocError as e:
                return Response(400, f"{e}\n")
        names = "".join(f"{t.name}\n" for t in added)
        return Response(201, names)

    def theories(self) -> Response:
        return Response(200, "".join(f"{ref}\n" for ref in self.graph.modules))

    def health(self) -> Response:
        return Response(200, "ok")


class _Handler(BaseHTTPRequestHandler):
    service: Service  # set on the subclass by make_server

    def log_message(self, *args):  # tests stay quiet
        pass

    def _send(self, r: Response):
        body = r.body.encode("utf-8")
        self.send_response(r.status)
        self.send_header("Content-Type", r.content_type)
        self.send_header("Content-Length", str(len(body)))
        for k, v in r.headers.items():
            self.send_header(k, v)
        self.end_headers()
        self.wfile.write(body)

    def _read_body(self) -> bytes:
        length = int(self.headers.get("Content-Length", "0") or "0")
        return self.rfile.read(length)

    def do_GET(self):
        try:
            path = urlsplit(self.path).path
            if path == "/health":
                self._send(self.service.health())
            elif path == "/theories":
                self._send(self.service.theories())
            else:
                self._send(Response(404, "not found\n"))
        except Exception as e:  # keep the connection answered
            self._send(Response(500, f"internal error: {e}\n"))

    def do_POST(self):
        try:
            url = urlsplit(self.path)
            query = parse_qs(url.query)
            if url.path == "/simplify":
                r = self.service.simplify_request(
                    self._read_body(),
                    self.headers.get("Content-Type", TEXT),
                    (query.get("scope") or [None])[0],
                    (query.get("fuel") or [None])[0])
                self._send(r)
            elif url.path == "/theories":
                self._send(self.service.ingest(self._read_body()))
            else:
                self._send(Response(404, "not found\n"))
        except Exception as e:
            self._send(Response(500, f"internal error: {e}\n"))


def make_server(service: Service, port: int = 8080,
                host: str = "127.0.0.1") -> ThreadingHTTPServer:
    handler = type("BoundHandler", (_Handler,), {"service": service})
    return ThreadingHTTPServer((host, port), handler)


def serve(service: Service, port: int = 8080, host: str = "0.0.0.0"):
    server = make_server(service, port, host)
    try:
        server.serve_forever()
    finally:
        server.server_close()
