"""TCP servers and client for the wire protocol."""

from __future__ import annotations

import logging
import socket
import socketserver
import threading
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .. import pir
from ..algebra import FieldSpec
from ..errors import FieldMismatch, ProtocolError, ProtocolVersionMismatch, Timeout
from . import wire

log = logging.getLogger(__name__)


class _Handler(socketserver.BaseRequestHandler):
    def handle(self):
        srv: PIRServer = self.server
        sock = self.request
        f = srv.field
        while True:
            try:
                msg = wire.read_message(sock)
            except ProtocolVersionMismatch as e:
                self._error(wire.ERR_VERSION, str(e))
                return
            except wire.UnknownTag as e:
                self._error(wire.ERR_UNKNOWN_TAG, str(e))
                continue
            except (ProtocolError, OSError, Timeout):
                return
            try:
                if msg.tag == wire.HELLO:
                    theirs = wire.parse_hello(msg.payload)
                    mine = wire.Hello.of(f, srv.n)
                    wire.send_message(sock, wire.WireMessage(wire.HELLO, wire.hello_payload(mine)))
                    if theirs != mine:
                        self._error(wire.ERR_FIELD_MISMATCH, "field or length disagree")
                        return
                elif msg.tag == wire.STORE:
                    vals = wire.parse_store(f, msg.payload)
                    with srv.lock:
                        if srv.column is None:
                            srv.column = np.array(vals, dtype=np.int64)
                    wire.send_message(sock, wire.WireMessage(wire.STORE, msg.payload[:4]))
                elif msg.tag == wire.QUERY:
                    if srv.column is None:
                        self._error(wire.ERR_BAD_REQUEST, "nothing stored")
                        continue
                    rnd, q = wire.parse_query(f, msg.payload, len(srv.column))
                    with srv.lock:
                        srv.transcript[rnd] = tuple(q)
                    v = pir.server_respond(f, srv.column, q)
                    if srv.mutate is not None:
                        v = f.check(int(srv.mutate(rnd, v)))
                    wire.send_message(sock, wire.WireMessage(wire.RESPONSE, wire.response_payload(f, rnd, v)))
                elif msg.tag == wire.BYE:
                    return
                else:
                    self._error(wire.ERR_BAD_REQUEST, f"unexpected {msg.name}")
            except ProtocolError as e:
                self._error(wire.ERR_BAD_REQUEST, str(e))
            except OSError:
                return

    def _error(self, code, text):
        try:
            wire.send_message(self.request, wire.WireMessage(wire.ERROR, wire.error_payload(code, text)))
        except OSError:
            pass


class PIRServer(socketserver.ThreadingTCPServer):
    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, addr, field: FieldSpec, n: int, column=None, mutate=None):
        super().__init__(addr, _Handler)
        self.field = field
        self.n = n
        self.column = None if column is None else np.asarray(column, dtype=np.int64)
        self.mutate = mutate
        self.transcript: dict[int, tuple[int, ...]] = {}
        self.lock = threading.Lock()
        self._thread = None

    @property
    def port(self) -> int:
        return self.server_address[1]

    def start(self) -> PIRServer:
        self._thread = threading.Thread(target=self.serve_forever, kwargs={"poll_interval": 0.05}, daemon=True)
        self._thread.start()
        return self

    def stop(self):
        self.shutdown()
        self.server_close()


def serve(port: int, column, field: FieldSpec, n: int, host: str = "127.0.0.1", mutate=None) -> PIRServer:
    """Start a server in a background thread (port 0 picks a free port)."""
    return PIRServer((host, port), field, n, column, mutate).start()


class _Conn:
    def __init__(self, endpoint, field, n, timeout):
        self.field = field
        self.sock = socket.create_connection(endpoint, timeout=timeout)
        self.sock.settimeout(timeout)
        mine = wire.Hello.of(field, n)
        wire.send_message(self.sock, wire.WireMessage(wire.HELLO, wire.hello_payload(mine)))
        reply = wire.read_message(self.sock)
        if reply.tag == wire.ERROR:
            raise ProtocolError(wire.parse_error(reply.payload)[1])
        if wire.parse_hello(reply.payload) != mine:
            raise FieldMismatch("server disagrees on field or length")

    def ask(self, rnd: int, query) -> int:
        wire.send_message(self.sock, wire.WireMessage(wire.QUERY, wire.query_payload(self.field, rnd, query)))
        reply = wire.read_message(self.sock)
        if reply.tag != wire.RESPONSE:
            raise ProtocolError(f"expected RESPONSE, got {reply.name}")
        got_rnd, v = wire.parse_response(self.field, reply.payload)
        if got_rnd != rnd:
            raise ProtocolError(f"response for round {got_rnd}, expected {rnd}")
        return v

    def close(self):
        try:
            wire.send_message(self.sock, wire.WireMessage(wire.BYE))
        except OSError:
            pass
        self.sock.close()


def store(endpoint, field: FieldSpec, n: int, column, timeout: float = 2.0) -> int:
    conn = _Conn(endpoint, field, n, timeout)
    try:
        wire.send_message(conn.sock, wire.WireMessage(wire.STORE, wire.store_payload(field, column)))
        reply = wire.read_message(conn.sock)
        return int.from_bytes(reply.payload[:4], "big")
    finally:
        conn.close()


def client_retrieve(endpoints, session: pir.RetrievalSession, timeout: float = 2.0):
    """Run every round of ``session`` against the endpoints.

    Unreachable or slow servers count as unresponsive.  Returns
    (file, responses, missing).
    """
    f = session.field
    n = session.n
    conns: list[_Conn | None] = []
    for ep in endpoints:
        try:
            conns.append(_Conn(tuple(ep), f, n, timeout))
        except ProtocolVersionMismatch:
            raise
        except (OSError, ProtocolError) as e:
            log.info("server %s unavailable: %s", ep, e)
            conns.append(None)
    responses, missing = [], []

    def one(j, rnd, q):
        c = conns[j]
        if c is None:
            return None
        try:
            return c.ask(rnd, q)
        except ProtocolVersionMismatch:
            raise
        except (OSError, ProtocolError) as e:
            log.info("server %d failed in round %d: %s", j, rnd, e)
            conns[j] = None
            return None

    try:
        with ThreadPoolExecutor(max_workers=max(1, n)) as pool:
            for rnd in range(len(session.rounds)):
                qs = pir.make_queries(session, rnd)
                row = list(pool.map(lambda j: one(j, rnd, qs[j]), range(n)))
                responses.append(row)
                missing.append(tuple(j for j, v in enumerate(row) if v is None))
    finally:
        for c in conns:
            if c is not None:
                c.close()
    X = pir.decode_session(session, responses, missing)
    return X, responses, missing


__all__ = ["PIRServer", "client_retrieve", "serve", "store"]
