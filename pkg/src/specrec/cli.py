"""Command-line harness: verification suites, single-value evaluators with a
persistent cache, micro-benchmarks, and report merging.

Commands
    verify <suite...> [--config FILE] [--q ...] [--tol ...] [--jobs N]
    compute <object> [key=value ...]
    bench <kind> --size N
    report --merge <files...>
    exponents --alpha A --beta B [--theta0 T]

Exit codes: 0 all pass, 1 any fail, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from .errors import ConfigInvalid, SpecrecError, UnknownEvaluator
from .reports import VerificationReport
from .suites import SUITES, run_suite

DEFAULT_CACHE = Path.home() / ".cache" / "specrec"


# ---------------------------------------------------------------------------
# configuration

def load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "rb") as fh:
            cfg = tomllib.load(fh)
    except FileNotFoundError as exc:
        raise ConfigInvalid(f"config file not found: {path}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigInvalid(f"config parse error in {path}: {exc}") from exc
    _validate_config(cfg)
    return cfg


def _validate_config(cfg: dict) -> None:
    suites = cfg.get("suites", {})
    if not isinstance(suites, dict):
        raise ConfigInvalid("[suites] must be a table of suite sections")
    for name, section in suites.items():
        if not isinstance(section, dict):
            raise ConfigInvalid(f"[suites.{name}] must be a table")
        tol = section.get("tol")
        if tol is not None and not (isinstance(tol, (int, float)) and tol > 0):
            raise ConfigInvalid(f"[suites.{name}] tol must be positive")
        for key in ("q", "d", "n", "c", "ell", "v"):
            grid = section.get(key)
            if grid is not None and (not isinstance(grid, list) or not grid):
                raise ConfigInvalid(f"[suites.{name}] {key} must be a nonempty list")


def suite_config(cfg: dict, suite: str, args) -> dict:
    section = dict(cfg.get("suites", {}).get(suite, {}))
    if args.q:
        section["q"] = args.q
    if args.tol is not None:
        if args.tol <= 0:
            raise ConfigInvalid("--tol must be positive")
        section["tol"] = args.tol
    return section


# ---------------------------------------------------------------------------
# verify

def cmd_verify(args) -> int:
    cfg = load_config(args.config)
    names = list(dict.fromkeys(
        SUITES if "all" in args.suite else args.suite))
    jobs = max(1, args.jobs)

    def run(name: str) -> list[VerificationReport]:
        return run_suite(name, suite_config(cfg, name, args))

    if jobs > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(run, names))
    else:
        batches = [run(n) for n in names]

    out = open(args.out, "w") if args.out else None
    n_fail = n_total = 0
    for batch in batches:
        for rep in batch:
            line = rep.to_line()
            print(line)
            if out:
                out.write(line + "\n")
            n_total += 1
            n_fail += rep.status == "fail"
    if out:
        out.close()
    print(f"# {n_total} cases, {n_total - n_fail} pass, {n_fail} fail",
          file=sys.stderr)
    return 1 if n_fail else 0


# ---------------------------------------------------------------------------
# compute evaluators and the persistent cache

def _ev_gauss_sum(q: int = 5, index: int = 0, chi: str = ""):
    from .charkit import primitive_characters, quadratic_character
    from .expsums import gauss_sum
    if chi in ("legendre", "quadratic"):
        char = quadratic_character(int(q))
    else:
        char = primitive_characters(int(q))[int(index)]
    return gauss_sum(char), {"error": 1e-14, "character": list(char.label)}


def _ev_kloosterman(m: int = 1, n: int = 1, c: int = 5):
    from .expsums import kloosterman
    return kloosterman(int(m), int(n), int(c)), {"error": 1e-12 * int(c)}


def _ev_tau3(n: int = 4):
    from .gl3 import tau3
    return complex(tau3(int(n))), {"error": 0.0, "exact": True}


def _ev_theta(q: int = 5, d: int = 3, n: int = 1, v: complex = 2 + 0j,
              index: int = 0):
    from .charkit import primitive_characters
    from .theta import ThetaArgs, theta_q
    chi = primitive_characters(int(q))[int(index)]
    val = theta_q(ThetaArgs(int(n), int(d), complex(v), chi))
    return val, {"error": 1e-12 * abs(val), "continuation": "hurwitz"}


def _ev_hurwitz(v: complex = 1.5 + 0j, a: float = 0.25):
    from .special import DEFAULT, hurwitz_zeta
    val = hurwitz_zeta(complex(v), float(a), DEFAULT)
    return val, {"error": 10.0 ** (-DEFAULT.digits + 2) * max(1.0, abs(val))}


def _ev_k_transform(T: float = 10.0, x: float = 3.0):
    from .transforms import AdmissibleTestFunction, K_transform
    h = AdmissibleTestFunction(T=float(T))
    val = K_transform(h, float(x))
    return val, {"error": 1e-8 * abs(val), "sup_norm": h.sup_norm()}


def _ev_k_mellin(T: float = 10.0, u: complex = 0.5 + 0j):
    from .transforms import AdmissibleTestFunction, k_mellin
    h = AdmissibleTestFunction(T=float(T))
    val = k_mellin(h, complex(u))
    return val, {"error": 1e-7 * abs(val)}


def _ev_dirichlet_l(s: complex = 2 + 0j, q: int = 5, index: int = 0):
    from .charkit import primitive_characters
    from .special import DEFAULT, dirichlet_l
    chi = primitive_characters(int(q))[int(index)]
    val = dirichlet_l(complex(s), chi, DEFAULT)
    return val, {"error": 10.0 ** (-DEFAULT.digits + 2) * max(1.0, abs(val))}


EVALUATORS = {
    "gauss-sum": _ev_gauss_sum,
    "kloosterman": _ev_kloosterman,
    "tau3": _ev_tau3,
    "theta": _ev_theta,
    "hurwitz": _ev_hurwitz,
    "k-transform": _ev_k_transform,
    "k-mellin": _ev_k_mellin,
    "dirichlet-l": _ev_dirichlet_l,
}


def _parse_value(text: str):
    for cast in (int, float, complex):
        try:
            return cast(text)
        except ValueError:
            continue
    return text


def _canonical(params: dict) -> str:
    enc = {k: [v.real, v.imag] if isinstance(v, complex) else v
           for k, v in sorted(params.items())}
    return json.dumps(enc, sort_keys=True)


def cache_key(evaluator: str, params: dict, precision: str) -> str:
    payload = f"{evaluator}|{_canonical(params)}|{precision}"
    return hashlib.sha256(payload.encode()).hexdigest()


def compute_value(evaluator: str, params: dict, cache_dir: Path | None,
                  precision: str = "default") -> dict:
    if evaluator not in EVALUATORS:
        raise UnknownEvaluator(
            f"unknown evaluator {evaluator!r}; known: {sorted(EVALUATORS)}")
    key = cache_key(evaluator, params, precision)
    if cache_dir is not None:
        hit = cache_dir / f"{key}.json"
        if hit.exists():
            rec = json.loads(hit.read_text())
            body = json.dumps(rec.get("record"), sort_keys=True)
            if (rec.get("precision") == precision
                    and rec.get("integrity")
                    == hashlib.sha256(body.encode()).hexdigest()):
                rec["record"]["cached"] = True
                return rec["record"]
    t0 = time.perf_counter()
    value, meta = EVALUATORS[evaluator](**params)
    value = complex(value)
    record = {
        "evaluator": evaluator,
        "params": json.loads(_canonical(params)),
        "value": {"re": value.real, "im": value.imag},
        "error": meta.pop("error", None),
        "meta": meta,
        "wall_time": time.perf_counter() - t0,
        "cached": False,
    }
    if cache_dir is not None:
        cache_dir.mkdir(parents=True, exist_ok=True)
        body = dict(record)
        body.pop("wall_time")
        stored = {"precision": precision, "record": body,
                  "integrity": hashlib.sha256(
                      json.dumps(body, sort_keys=True).encode()).hexdigest()}
        (cache_dir / f"{key}.json").write_text(json.dumps(stored))
    return record


def cmd_compute(args) -> int:
    params = {}
    for item in args.params:
        if "=" not in item:
            raise ConfigInvalid(f"parameters must be key=value, got {item!r}")
        k, v = item.split("=", 1)
        params[k] = _parse_value(v)
    cache_dir = None if args.no_cache else Path(args.cache)
    record = compute_value(args.object, params, cache_dir)
    print(json.dumps(record, sort_keys=True))
    return 0


# ---------------------------------------------------------------------------
# bench

def _bench_kloosterman(size: int) -> list[float]:
    from .expsums import kloosterman
    lats = []
    for c in range(1, size + 1):
        t0 = time.perf_counter()
        kloosterman(1, 1, c)
        lats.append(time.perf_counter() - t0)
    return lats


def _bench_hurwitz(size: int) -> list[float]:
    from .special import DEFAULT, hurwitz_zeta
    lats = []
    for i in range(size):
        a = (i % 997 + 1) / 998.0
        t0 = time.perf_counter()
        hurwitz_zeta(1.5 + 0.1j, a, DEFAULT)
        lats.append(time.perf_counter() - t0)
    return lats


def _bench_contour(size: int) -> list[float]:
    from .series import contour_residue
    lats = []
    for i in range(size):
        t0 = time.perf_counter()
        contour_residue(lambda z: 1.0 / (z - 1.0) + (i % 7), 1.0)
        lats.append(time.perf_counter() - t0)
    return lats


BENCHES = {
    "kloosterman-sweep": _bench_kloosterman,
    "hurwitz-grid": _bench_hurwitz,
    "contour-quadrature": _bench_contour,
}

BENCH_CEILING = {"kloosterman-sweep": 5000, "hurwitz-grid": 10 ** 5,
                 "contour-quadrature": 10 ** 4}


def cmd_bench(args) -> int:
    if args.kind not in BENCHES:
        raise ConfigInvalid(
            f"unknown bench kind {args.kind!r}; known: {sorted(BENCHES)}")
    if args.size > BENCH_CEILING[args.kind]:
        raise ConfigInvalid(
            f"size {args.size} exceeds ceiling {BENCH_CEILING[args.kind]}")
    lats = sorted(BENCHES[args.kind](args.size))
    total = sum(lats)
    pct = lambda p: lats[min(len(lats) - 1, int(p * len(lats)))]
    print(json.dumps({
        "kind": args.kind, "size": args.size,
        "ops_per_sec": len(lats) / total if total else float("inf"),
        "latency_p50": pct(0.50), "latency_p90": pct(0.90),
        "latency_p99": pct(0.99), "total_time": total,
    }, sort_keys=True))
    return 0


# ---------------------------------------------------------------------------
# report merging

def cmd_report(args) -> int:
    records = []
    for path in args.merge:
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if line and not line.startswith("#"):
                    records.append(json.loads(line))
    seen = set()
    merged = []
    for rec in sorted(records, key=lambda r: (r["suite"], r["case_id"])):
        key = (rec["suite"], rec["case_id"])
        if key not in seen:
            seen.add(key)
            merged.append(rec)
    n_fail = 0
    for rec in merged:
        print(json.dumps(rec, sort_keys=True))
        n_fail += rec.get("status") == "fail"
    print(f"# merged {len(merged)} cases, {n_fail} fail", file=sys.stderr)
    return 1 if n_fail else 0


# ---------------------------------------------------------------------------
# exponents

def cmd_exponents(args) -> int:
    from .exponents import balance_amplifier, subconvex_exponent
    alpha = Fraction(args.alpha)
    beta = Fraction(args.beta)
    theta0 = Fraction(args.theta0)
    q_exp, (c0, c1) = subconvex_exponent(alpha, beta)
    bal = balance_amplifier(theta0)
    print(f"q-exponent: {q_exp}")
    print(f"t-exponent: {c0} - {c1}*(1 - 2*theta0)"
          f" = {c0 - c1 * (1 - 2 * theta0)} at theta0 = {theta0}")
    print(f"amplifier length: L = q^({bal['L_q_exp']}) T^({bal['L_T_exp']})")
    print(f"fourth-root exponents: q^({bal['fourth_root_q_exp']})"
          f" T^({bal['fourth_root_T_exp']})")
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="specrec")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", nargs="+",
                   help=f"suite name(s) or 'all'; known: {sorted(SUITES)}")
    v.add_argument("--config", default=None, help="TOML config file")
    v.add_argument("--q", type=int, action="append", default=[],
                   help="override the modulus grid (repeatable)")
    v.add_argument("--tol", type=float, default=None)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--out", default=None, help="also write reports to a file")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("compute", help="evaluate a single named quantity")
    c.add_argument("object", help=f"evaluator; known: {sorted(EVALUATORS)}")
    c.add_argument("params", nargs="*", help="key=value parameters")
    c.add_argument("--cache", default=str(DEFAULT_CACHE))
    c.add_argument("--no-cache", action="store_true")
    c.set_defaults(func=cmd_compute)

    b = sub.add_parser("bench", help="micro-benchmark a kernel operation")
    b.add_argument("kind", help=f"known: {sorted(BENCHES)}")
    b.add_argument("--size", type=int, required=True)
    b.set_defaults(func=cmd_bench)

    r = sub.add_parser("report", help="merge report files")
    r.add_argument("--merge", nargs="+", required=True)
    r.set_defaults(func=cmd_report)

    e = sub.add_parser("exponents", help="print the exact exponent recipe")
    e.add_argument("--alpha", default="3/8")
    e.add_argument("--beta", default="1/4")
    e.add_argument("--theta0", default="0")
    e.set_defaults(func=cmd_exponents)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        return args.func(args)
    except SpecrecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
