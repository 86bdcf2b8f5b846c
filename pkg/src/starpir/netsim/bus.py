"""In-memory message bus with adversarial hooks."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from .. import pir


@dataclass
class BusAdversary:
    """``mutate[j](round, value)`` rewrites server j's response, ``drop``
    servers never answer and ``record`` servers have their queries logged."""

    mutate: dict[int, Callable[[int, int], int]] = dc_field(default_factory=dict)
    drop: frozenset = frozenset()
    record: frozenset = frozenset()


@dataclass
class BusResult:
    responses: list[list[int | None]]
    missing: list[tuple[int, ...]]
    colluding_view: dict[int, dict[int, tuple[int, ...]]]


def bus_run(sys: pir.StorageSystem, session: pir.RetrievalSession, adversary: BusAdversary | None = None):
    adv = adversary or BusAdversary()
    f = sys.field
    responses, missing = [], []
    view = {j: {} for j in sorted(adv.record)}
    for rho in range(len(session.rounds)):
        qs = pir.make_queries(session, rho)
        row, lost = [], []
        for j in range(sys.n):
            if j in adv.record:
                view[j][rho] = tuple(int(v) for v in qs[j])
            if j in adv.drop:
                row.append(None)
                lost.append(j)
                continue
            v = pir.server_respond(f, sys.server_contents(j), qs[j])
            if j in adv.mutate:
                v = f.check(int(adv.mutate[j](rho, v)))
            row.append(v)
        responses.append(row)
        missing.append(tuple(lost))
    return BusResult(responses, missing, view)


def simulate(C, D, m: int, b: int, w: int, seed: int = 0, adversary=None, b_byz=0, a=0, files=None):
    """Encode random files, retrieve file w over the bus and check it."""
    rng = np.random.default_rng(seed)
    files = files if files is not None else pir.random_files(C, m, b, rng)
    sys = pir.encode_storage(C, files)
    session = pir.plan_retrieval(sys, w, D, seed, b_byz=b_byz, a=a)
    res = bus_run(sys, session, adversary)
    X = pir.decode_session(session, res.responses, res.missing)
    return {
        "system": sys,
        "session": session,
        "file": X,
        "correct": sys.verify(w, X),
        "result": res,
    }
