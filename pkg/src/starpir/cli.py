"""Command-line driver: ``starpir <subcommand> [--config FILE] [flags]``.

Exit status is 0 on success, 1 when an audit or end-to-end check fails and
2 on configuration errors (the offending config location is printed).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import bounds, codes, families, pir
from .errors import ConfigError, StarPIRError
from .report import FORMATS, Report, report_emit

log = logging.getLogger(__name__)

EXIT_OK, EXIT_VIOLATION, EXIT_CONFIG = 0, 1, 2


@dataclass
class ExperimentConfig:
    storage: dict | None = None
    retrieval: dict | None = None
    m: int = 2
    b: int | None = None
    k: int | None = None
    t: int | None = None
    b_byz: int = 0
    a: int = 0
    byzantine: list[int] = dc_field(default_factory=list)
    unresponsive: list[int] = dc_field(default_factory=list)
    w: int | None = None
    seed: int = 0
    output: str = "json"
    budget: int = codes.DEFAULT_BUDGET
    extra: dict = dc_field(default_factory=dict)

    @classmethod
    def from_dict(cls, doc: dict) -> ExperimentConfig:
        if not isinstance(doc, dict):
            raise ConfigError("$", "config must be an object")
        doc = dict(doc)
        files = doc.pop("files", {}) or {}
        adv = doc.pop("adversary", {}) or {}
        if not isinstance(files, dict):
            raise ConfigError("files", "must be an object")
        if not isinstance(adv, dict):
            raise ConfigError("adversary", "must be an object")
        cfg = cls(
            storage=doc.pop("storage", None),
            retrieval=doc.pop("retrieval", None),
            m=_int(files, "m", "files", 2, lo=1),
            b=_int(files, "b", "files", None, lo=1),
            k=_int(files, "k", "files", None, lo=1),
            t=_int(adv, "t", "adversary", None),
            b_byz=_int(adv, "b_byz", "adversary", 0),
            a=_int(adv, "a", "adversary", 0),
            byzantine=_servers(adv, "byzantine"),
            unresponsive=_servers(adv, "unresponsive"),
            w=_int(doc, "w", "", None, lo=1),
            seed=_int(doc, "seed", "", 0),
            output=doc.pop("output", "json"),
            budget=_int(doc, "budget", "", codes.DEFAULT_BUDGET, lo=1),
        )
        for key in ("w", "seed", "budget"):
            doc.pop(key, None)
        if cfg.output not in FORMATS:
            raise ConfigError("output", f"expected one of {FORMATS}, got {cfg.output!r}")
        cfg.extra = doc
        return cfg

    def codes(self) -> tuple[codes.LinearCode, codes.LinearCode]:
        if self.storage is None:
            raise ConfigError("storage", "missing storage-code descriptor")
        if self.retrieval is None:
            raise ConfigError("retrieval", "missing retrieval-code descriptor")
        C = families.build_code(self.storage, "storage")
        D = families.build_code(self.retrieval, "retrieval")
        if C.n != D.n or C.field != D.field:
            raise ConfigError("retrieval", f"length/field differ from storage ([{C.n}] vs [{D.n}])")
        if self.k is not None and self.k != C.k:
            raise ConfigError("files.k", f"storage code has dimension {C.k}, config says {self.k}")
        return C, D


def _int(doc, key, where, default, lo=0):
    loc = f"{where}.{key}" if where else key
    if key not in doc or doc[key] is None:
        return default
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(loc, f"expected an integer, got {v!r}")
    if v < lo:
        raise ConfigError(loc, f"must be >= {lo}, got {v}")
    return v


def _servers(adv, key):
    v = adv.get(key, []) or []
    if not isinstance(v, list) or not all(isinstance(j, int) and j >= 0 for j in v):
        raise ConfigError(f"adversary.{key}", "expected a list of server indices")
    return v


def load_config(path: str | None, overrides: dict) -> ExperimentConfig:
    doc = {}
    if path:
        try:
            with open(path) as fh:
                doc = json.load(fh)
        except OSError as e:
            raise ConfigError("--config", str(e)) from None
        except json.JSONDecodeError as e:
            raise ConfigError(f"--config:{e.lineno}:{e.colno}", e.msg) from None
    for k, v in overrides.items():
        if v is not None:
            doc[k] = v
    return ExperimentConfig.from_dict(doc)


# ---- subcommands ----------------------------------------------------------------


def _cert(c, where):
    if not isinstance(c, dict) or "lo" not in c:
        raise ConfigError(where, "certificate override needs at least 'lo'")
    lo, hi = c["lo"], c.get("hi", c["lo"])
    return codes.DistanceCertificate(lo, hi, "override", "override")


def cmd_audit_bound(cfg: ExperimentConfig, args) -> Report:
    C, D = cfg.codes()
    ov = cfg.extra.get("overrides") or {}
    certs = {k: _cert(v, f"overrides.{k}") for k, v in ov.items() if k in ("d_perp_D", "d_perp_C", "d_CD")}
    extra = set(ov) - set(certs)
    if extra:
        raise ConfigError(f"overrides.{sorted(extra)[0]}", "unknown certificate name")
    rep = bounds.singleton_audit(C, D, cfg.budget, certs)
    row = {"storage": C.name, "retrieval": D.name, **rep.to_dict()}
    return Report("audit-bound", [row], {"seed": cfg.seed, "budget": cfg.budget},
                  status=EXIT_VIOLATION if rep.violated else EXIT_OK)


def ledger_row(C, D, budget, transitive=False) -> dict:
    L = bounds.rate_ledger(C, D, budget, transitive_asserted=transitive)
    d = L.to_dict()
    return {
        "storage": C.name,
        "retrieval": D.name,
        "t": d.pop("t"),
        "rate": d["R_retrieval_transitive"],
        **d,
    }


def cmd_rates(cfg: ExperimentConfig, args) -> Report:
    meta = {"budget": cfg.budget}
    if args.length128 or cfg.extra.get("length128"):
        return Report("length128", bounds.length128_report(cfg.budget), meta)
    C, D = cfg.codes()
    row = ledger_row(C, D, cfg.budget, bool(cfg.extra.get("transitive")))
    return Report("rates", [row], meta)


def _m_rule(f):
    return lambda rnd, v: f.add(v, 1)


def derive_system(cfg: ExperimentConfig, C, D) -> pir.StorageSystem:
    """Files are a deterministic function of (config, seed)."""
    b = cfg.b or pir.recommend_rows(C, D)
    rng = np.random.default_rng(cfg.seed)
    return pir.encode_storage(C, pir.random_files(C, cfg.m, b, rng))


def cmd_simulate(cfg: ExperimentConfig, args) -> Report:
    C, D = cfg.codes()
    sys_ = derive_system(cfg, C, D)
    for j in cfg.byzantine + cfg.unresponsive:
        if j >= C.n:
            raise ConfigError("adversary", f"server index {j} outside 0..{C.n - 1}")
    adv = pir.AdversaryModel(
        byzantine={j: _m_rule(C.field) for j in cfg.byzantine},
        unresponsive=frozenset(cfg.unresponsive),
    )
    targets = [cfg.w] if cfg.w else list(range(1, cfg.m + 1))
    rows, ok = [], True
    for w in targets:
        if w > cfg.m:
            raise ConfigError("w", f"file index {w} outside 1..{cfg.m}")
        X, session = pir.retrieve(sys_, w, D, cfg.seed, adv, b_byz=cfg.b_byz, a=cfg.a)
        good = sys_.verify(w, X)
        ok &= good
        rows.append({
            "w": w,
            "correct": good,
            "rounds": len(session.rounds),
            "achieved_rate": session.achieved_rate,
            "robust": session.robust,
            "digest": pir.file_digest(X),
        })
    meta = {
        "storage": C.name,
        "retrieval": D.name,
        "n": C.n,
        "m": cfg.m,
        "b": sys_.b,
        "k": sys_.k,
        "seed": cfg.seed,
        "b_byz": cfg.b_byz,
        "a": cfg.a,
    }
    if cfg.t is not None:
        meta["privacy"] = pir.privacy_audit_structural(D, cfg.t).to_dict()
        ok &= meta["privacy"]["passed"]
    return Report("simulate", rows, meta, status=EXIT_OK if ok else EXIT_VIOLATION)


def cmd_bch_table(cfg: ExperimentConfig, args) -> Report:
    spec = dict(cfg.extra.get("bch") or {})
    for key in ("q", "m"):
        if getattr(args, key, None) is not None:
            spec[key] = getattr(args, key)
    q, m = spec.get("q", 2), spec.get("m")
    if not isinstance(m, int) or m < 3:
        raise ConfigError("bch.m", f"need an integer m >= 3, got {m!r}")
    if not isinstance(q, int) or q < 2:
        raise ConfigError("bch.q", f"need an integer q >= 2, got {q!r}")
    rows = []
    for u in spec.get("params") or range(2, m):
        try:
            row = bounds.bch_tables(q, m, u)
        except StarPIRError as e:
            raise ConfigError("bch.params", str(e)) from None
        rows.append({"table": "dually-bch", **row, "provenance": "formula"})
    for delta in spec.get("delta") or []:
        try:
            row = bounds.long_bch_row(q, m, delta)
        except StarPIRError as e:
            raise ConfigError("bch.delta", str(e)) from None
        rows.append({"table": "bch-q^m+1", **row, "provenance": "formula"})
    return Report("bch-table", rows, {"q": q, "m": m})


AG_KEYS = ("n", "g", "degG1", "degG2", "degG3", "b", "a", "N")


def cmd_ag_params(cfg: ExperimentConfig, args) -> Report:
    spec = dict(cfg.extra.get("ag") or {})
    for key in AG_KEYS:
        if getattr(args, key, None) is not None:
            spec[key] = getattr(args, key)
    for key in ("n", "g", "degG1", "degG2"):
        if key not in spec:
            raise ConfigError(f"ag.{key}", "missing required parameter")
    unknown = set(spec) - set(AG_KEYS)
    if unknown:
        raise ConfigError(f"ag.{sorted(unknown)[0]}", "unknown parameter")
    try:
        row = bounds.ag_params(**spec)
    except StarPIRError as e:
        raise ConfigError("ag", f"{type(e).__name__}: {e}") from None
    row["provenance"] = "formula"
    return Report("ag-params", [row], {})


def cmd_families(cfg: ExperimentConfig, args) -> Report:
    return Report("families", families.families_list(), {}, columns=["family", "params"])


def _server_index(cfg, args, n):
    j = args.index if args.index is not None else (cfg.extra.get("server") or {}).get("index")
    if not isinstance(j, int) or not 0 <= j < n:
        raise ConfigError("server.index", f"need a server index in 0..{n - 1}, got {j!r}")
    return j


def cmd_serve(cfg: ExperimentConfig, args) -> Report:
    from .netsim import serve

    C, D = cfg.codes()
    sys_ = derive_system(cfg, C, D)
    j = _server_index(cfg, args, C.n)
    mutate = _m_rule(C.field) if j in cfg.byzantine else None
    srv = serve(args.port, sys_.server_contents(j), C.field, C.n, host=args.host, mutate=mutate)
    print(f"listening {args.host}:{srv.port} server {j}", flush=True)
    try:
        srv._thread.join()
    except KeyboardInterrupt:
        pass
    finally:
        srv.stop()
    return Report("serve", [], {"server": j}, columns=[])


def _endpoint(s: str):
    host, _, port = s.rpartition(":")
    if not host or not port.isdigit():
        raise ConfigError("endpoints", f"expected host:port, got {s!r}")
    return host, int(port)


def cmd_retrieve(cfg: ExperimentConfig, args) -> Report:
    from .netsim import client_retrieve

    C, D = cfg.codes()
    sys_ = derive_system(cfg, C, D)
    eps = args.endpoint or cfg.extra.get("endpoints") or []
    eps = [_endpoint(e) if isinstance(e, str) else tuple(e) for e in eps]
    if len(eps) != C.n:
        raise ConfigError("endpoints", f"need {C.n} endpoints, got {len(eps)}")
    w = cfg.w or 1
    if w > cfg.m:
        raise ConfigError("w", f"file index {w} outside 1..{cfg.m}")
    session = pir.plan_retrieval(sys_, w, D, cfg.seed, b_byz=cfg.b_byz, a=cfg.a)
    X, _, missing = client_retrieve(eps, session, timeout=float(cfg.extra.get("timeout", 2.0)))
    good = sys_.verify(w, X)
    row = {
        "w": w,
        "correct": good,
        "rounds": len(session.rounds),
        "achieved_rate": session.achieved_rate,
        "missing": sorted({j for r in missing for j in r}),
        "digest": pir.file_digest(X),
    }
    return Report("retrieve", [row], {"seed": cfg.seed}, status=EXIT_OK if good else EXIT_VIOLATION)


COMMANDS = {
    "audit-bound": cmd_audit_bound,
    "rates": cmd_rates,
    "simulate": cmd_simulate,
    "bch-table": cmd_bch_table,
    "ag-params": cmd_ag_params,
    "families": cmd_families,
    "serve": cmd_serve,
    "retrieve": cmd_retrieve,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON experiment config")
    common.add_argument("--seed", type=int)
    common.add_argument("--budget", type=int, help="enumeration budget (codewords)")
    common.add_argument("--output", choices=FORMATS)
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="starpir", description="Star-product PIR toolkit")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("audit-bound", parents=[common], help="Singleton-type bound audit of (C, D)")
    p = sub.add_parser("rates", parents=[common], help="rate ledger of (C, D)")
    p.add_argument("--length128", action="store_true", help="emit the length-128 comparison table")
    sub.add_parser("simulate", parents=[common], help="end-to-end retrieval over the in-memory bus")
    p = sub.add_parser("bch-table", parents=[common], help="dually-BCH rate rows")
    p.add_argument("--q", type=int)
    p.add_argument("--m", type=int)
    p = sub.add_parser("ag-params", parents=[common], help="AG-code scheme parameters")
    for key in AG_KEYS:
        p.add_argument(f"--{key}", type=int)
    p = sub.add_parser("families", parents=[common], help="code family descriptors")
    p.add_argument("action", choices=["list"])
    p = sub.add_parser("serve", parents=[common], help="run one storage server")
    p.add_argument("--index", type=int)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=0)
    p = sub.add_parser("retrieve", parents=[common], help="retrieve a file from running servers")
    p.add_argument("--endpoint", action="append", help="host:port, once per server in order")
    return ap


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout.buffer
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        cfg = load_config(args.config, {"seed": args.seed, "budget": args.budget, "output": args.output})
        rep = COMMANDS[args.command](cfg, args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except StarPIRError as e:
        # the pair itself cannot support the request (e.g. zero retrieval rate)
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_CONFIG
    if args.command != "serve":
        out.write(report_emit(rep, cfg.output))
        out.flush()
    return rep.status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
