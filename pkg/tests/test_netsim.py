import socket
import struct
import threading

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from starpir import pir
from starpir.algebra import field_make
from starpir.errors import FieldMismatch, ProtocolError, ProtocolVersionMismatch, Timeout, UnknownTag
from starpir.families import AgCodeSpec, EllipticCurve, elliptic_ag
from starpir.netsim import BusAdversary, bus_run, client_retrieve, serve, simulate, store, wire

F5 = field_make(5)
FIELDS = [field_make(2), F5, field_make(2, 8), field_make(257), field_make(3, 7)]


def elliptic_system(m=2, seed=0):
    E = EllipticCurve(F5, 0, 0, 0, 1, 1)
    C, D = elliptic_ag(AgCodeSpec(E, 2)), elliptic_ag(AgCodeSpec(E, 3))
    sys_ = pir.encode_storage(C, pir.random_files(C, m, 1, np.random.default_rng(seed)))
    return sys_, D


def free_port():
    s = socket.socket()
    s.bind(("127.0.0.1", 0))
    port = s.getsockname()[1]
    s.close()
    return port


class Stalled:
    """Accepts connections and never answers."""

    def __init__(self):
        self.sock = socket.socket()
        self.sock.bind(("127.0.0.1", 0))
        self.sock.listen()
        self.port = self.sock.getsockname()[1]
        self.conns = []
        threading.Thread(target=self._loop, daemon=True).start()

    def _loop(self):
        while True:
            try:
                c, _ = self.sock.accept()
            except OSError:
                return
            self.conns.append(c)

    def close(self):
        for c in self.conns:
            c.close()
        self.sock.close()


# ---- framing --------------------------------------------------------------------


@given(st.sampled_from(sorted(wire.TAGS)), st.binary(max_size=300), st.binary(max_size=20))
def test_frame_roundtrip(tag, payload, tail):
    msg = wire.WireMessage(tag, payload)
    got, rest = wire.decode_message(wire.encode_message(msg) + tail)
    assert got == msg and rest == tail


@given(st.data())
@settings(max_examples=60)
def test_elements_roundtrip(data):
    f = data.draw(st.sampled_from(FIELDS))
    vals = data.draw(st.lists(st.integers(0, f.q - 1), max_size=40))
    enc = wire.encode_elements(f, vals)
    assert len(enc) == f.width * len(vals)
    assert wire.decode_elements(f, enc) == vals
    rnd = data.draw(st.integers(0, 2**32 - 1))
    assert wire.parse_query(f, wire.query_payload(f, rnd, vals)) == (rnd, vals)
    if vals:
        assert wire.parse_response(f, wire.response_payload(f, rnd, vals[0])) == (rnd, vals[0])
    assert wire.parse_store(f, wire.store_payload(f, vals)) == vals


def test_element_width_and_little_endian():
    f = field_make(2, 9)  # q = 512 needs two bytes
    assert f.width == 2
    assert wire.encode_elements(f, [0x1FF]) == b"\xff\x01"
    with pytest.raises(ProtocolError):
        wire.decode_elements(f, b"\x00\x02")  # 512 out of range


@pytest.mark.parametrize("f", FIELDS)
def test_hello_roundtrip(f):
    h = wire.Hello.of(f, 17)
    back = wire.parse_hello(wire.hello_payload(h))
    assert back == h and back.field() == f


def test_version_two_rejected():
    frame = wire.HEADER.pack(wire.MAGIC, 2, wire.HELLO, 0)
    with pytest.raises(ProtocolVersionMismatch):
        wire.decode_message(frame)
    assert issubclass(ProtocolVersionMismatch, ProtocolError)


def test_unknown_tag_and_bad_magic():
    with pytest.raises(UnknownTag):
        wire.decode_message(wire.HEADER.pack(wire.MAGIC, 1, 0x7F, 0))
    with pytest.raises(ProtocolError):
        wire.decode_message(wire.HEADER.pack(b"NOPE", 1, wire.HELLO, 0))
    with pytest.raises(ProtocolError):
        wire.decode_message(wire.HEADER.pack(wire.MAGIC, 1, wire.QUERY, 10) + b"abc")


# ---- live servers ---------------------------------------------------------------


def raw_conn(port):
    s = socket.create_connection(("127.0.0.1", port), timeout=2)
    return s


def test_server_version_and_unknown_tag():
    srv = serve(0, [1, 2, 3], F5, 3)
    try:
        s = raw_conn(srv.port)
        # unknown tag with a payload: error reply, stream stays usable
        s.sendall(wire.HEADER.pack(wire.MAGIC, 1, 0x42, 3) + b"xyz")
        reply = wire.read_message(s)
        assert reply.tag == wire.ERROR
        assert wire.parse_error(reply.payload)[0] == wire.ERR_UNKNOWN_TAG
        wire.send_message(s, wire.WireMessage(wire.HELLO, wire.hello_payload(wire.Hello.of(F5, 3))))
        assert wire.read_message(s).tag == wire.HELLO
        s.close()
        s = raw_conn(srv.port)
        s.sendall(wire.HEADER.pack(wire.MAGIC, 2, wire.HELLO, 0))
        reply = wire.read_message(s)
        assert wire.parse_error(reply.payload)[0] == wire.ERR_VERSION
        s.close()
    finally:
        srv.stop()


def test_client_raises_on_version_mismatch():
    lst = socket.socket()
    lst.bind(("127.0.0.1", 0))
    lst.listen()

    def answer():
        c, _ = lst.accept()
        wire.read_message(c)
        c.sendall(wire.HEADER.pack(wire.MAGIC, 2, wire.HELLO, 0))
        c.close()

    threading.Thread(target=answer, daemon=True).start()
    sys_, D = elliptic_system()
    session = pir.plan_retrieval(sys_, 1, D)
    eps = [("127.0.0.1", lst.getsockname()[1])] + [("127.0.0.1", free_port())] * 7
    with pytest.raises(ProtocolVersionMismatch):
        client_retrieve(eps, session, timeout=0.5)
    lst.close()


def test_field_mismatch_handshake():
    srv = serve(0, [1, 2, 3], F5, 3)
    try:
        with pytest.raises(FieldMismatch):
            store(("127.0.0.1", srv.port), field_make(7), 3, [1, 2, 3])
    finally:
        srv.stop()


def test_store_then_query():
    srv = serve(0, None, F5, 8)
    try:
        assert store(("127.0.0.1", srv.port), F5, 8, [4, 3, 2]) == 3
        from starpir.netsim.node import _Conn

        c = _Conn(("127.0.0.1", srv.port), F5, 8, 1.0)
        assert c.ask(0, [1, 1, 1]) == (4 + 3 + 2) % 5
        assert c.ask(1, [0, 2, 0]) == 1
        c.close()
        assert srv.transcript == {0: (1, 1, 1), 1: (0, 2, 0)}
    finally:
        srv.stop()


def test_recv_timeout_on_stalled_peer():
    st_ = Stalled()
    try:
        s = socket.create_connection(("127.0.0.1", st_.port), timeout=0.2)
        with pytest.raises(Timeout):
            wire.read_message(s)
        s.close()
    finally:
        st_.close()


def test_wire_matches_bus_with_stalled_and_dead_servers():
    sys_, D = elliptic_system()
    servers = [serve(0, sys_.server_contents(j), F5, 8) for j in range(6)]
    stalled = Stalled()
    try:
        eps = [("127.0.0.1", s.port) for s in servers]
        eps += [("127.0.0.1", stalled.port), ("127.0.0.1", free_port())]
        s_wire = pir.plan_retrieval(sys_, 2, D, seed=5, b_byz=0, a=2)
        X, _, missing = client_retrieve(eps, s_wire, timeout=0.3)
        s_bus = pir.plan_retrieval(sys_, 2, D, seed=5, b_byz=0, a=2)
        res = bus_run(sys_, s_bus, BusAdversary(drop=frozenset({6, 7})))
        X2 = pir.decode_session(s_bus, res.responses, res.missing)
        assert np.array_equal(X, X2) and sys_.verify(2, X)
        assert all(set(U) == {6, 7} for U in missing)
        assert s_wire.transcripts == s_bus.transcripts
        for j, srv in enumerate(servers):
            assert srv.transcript == s_bus.transcripts[j]
    finally:
        for s in servers:
            s.stop()
        stalled.close()


def test_wire_byzantine_server():
    sys_, D = elliptic_system()
    f = F5
    servers = [
        serve(0, sys_.server_contents(j), f, 8, mutate=(lambda rnd, v: (v + 1) % 5) if j == 3 else None)
        for j in range(8)
    ]
    try:
        session = pir.plan_retrieval(sys_, 1, D, seed=2, b_byz=1)
        X, _, _ = client_retrieve([("127.0.0.1", s.port) for s in servers], session)
        assert sys_.verify(1, X)
    finally:
        for s in servers:
            s.stop()


# ---- bus ------------------------------------------------------------------------


def test_bus_records_colluding_view_and_simulate():
    sys_, D = elliptic_system()
    session = pir.plan_retrieval(sys_, 1, D, seed=1)
    res = bus_run(sys_, session, BusAdversary(record=frozenset({0, 5})))
    assert set(res.colluding_view) == {0, 5}
    assert res.colluding_view[0] == session.transcripts[0]
    out = simulate(sys_.C, D, m=2, b=1, w=2, seed=3)
    assert out["correct"]
