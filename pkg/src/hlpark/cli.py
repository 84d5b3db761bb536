"""Command-line front end.

Data goes to stdout, diagnostics to stderr.  Exit codes: 0 success, 2 parse
error, 3 domain-invariant violation, 4 internal inconsistency (including a
failed ``verify``).

R_n results are cached in ``--cache-dir``, defaulting to ``$HLPARK_CACHE_DIR``
or ``~/.cache/hlpark``.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .bs_codec import bs_decode, bs_encode, classify_shape
from .checkpoint import FORMAT_VERSION, digest
from .core import (
    AdmissiblePair,
    BivariatePolynomial,
    HLPair,
    HLParkError,
    InternalConsistencyError,
    ParkingFunction,
    Permutation,
    dumps,
    from_json,
    to_json,
)
from .enumeration import compute_r_polynomial, verify_bijections
from .hl_codec import hl_decode, hl_encode
from .stats import descent_set, maj, u_vector

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_INTERNAL = 0, 2, 3, 4
CACHE_ENV = "HLPARK_CACHE_DIR"

log = logging.getLogger("hlpark")


class ParseError(Exception):
    pass


def _load(text: str | None):
    if text is None:
        text = sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from None


def _int_list(value, what: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise ParseError(f"{what} must be a JSON array of integers")
    return value


def _fields(value, names: tuple[str, ...]) -> dict:
    if not isinstance(value, dict) or set(value) != set(names):
        raise ParseError(f"expected an object with keys {list(names)}")
    for name in names:
        _int_list(value[name], name)
    return value


def cmd_encode(args) -> int:
    value = _load(args.input)
    if args.codec == "hl":
        pair = from_json(HLPair, _fields(value, ("sigma", "k")))
        out = hl_encode(pair)
    else:
        pair = from_json(AdmissiblePair, _fields(value, ("k", "l")))
        out = bs_encode(pair)
    print(dumps(out))
    return EXIT_OK


def cmd_decode(args) -> int:
    q = ParkingFunction(tuple(_int_list(_load(args.input), "parking function")))
    out = hl_decode(q) if args.codec == "hl" else bs_decode(q)
    print(dumps(out))
    return EXIT_OK


def cmd_stats(args) -> int:
    sigma = Permutation(tuple(_int_list(_load(args.input), "permutation")))
    out = {
        "descents": sorted(descent_set(sigma)),
        "maj": maj(sigma),
        "u": list(u_vector(sigma)),
        "shape": to_json(classify_shape(sigma)),
    }
    print(json.dumps(out, separators=(",", ":")))
    return EXIT_OK


def _cache_file(cache_dir: Path, n: int) -> Path:
    return cache_dir / f"rpoly-n{n}-v{FORMAT_VERSION}.json"


def _read_cache(path: Path, n: int) -> BivariatePolynomial | None:
    if not path.exists():
        return None
    try:
        entry = json.loads(path.read_text(encoding="utf-8"))
        poly = from_json(BivariatePolynomial, entry["polynomial"])
        ok = entry["n"] == n and entry["digest"] == digest(dumps(poly))
    except (ValueError, KeyError, TypeError):
        ok = False
    if not ok:
        log.warning("cache entry %s is corrupt; recomputing", path)
        return None
    return poly


def _write_cache(path: Path, n: int, poly: BivariatePolynomial) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    canonical = dumps(poly)
    entry = {"n": n, "format_version": FORMAT_VERSION, "digest": digest(canonical), "polynomial": to_json(poly)}
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(json.dumps(entry, separators=(",", ":")), encoding="utf-8")
    os.replace(tmp, path)


def _parse_eval(spec: str) -> tuple[int, int]:
    values = {}
    for part in spec.split(","):
        name, _, number = part.partition("=")
        name = name.strip()
        if name not in ("q", "t") or not number.strip().lstrip("-").isdigit():
            raise ParseError(f"--eval expects q=<int>,t=<int>, got {spec!r}")
        values[name] = int(number)
    if set(values) != {"q", "t"}:
        raise ParseError(f"--eval expects q=<int>,t=<int>, got {spec!r}")
    return values["q"], values["t"]


def format_csv(poly: BivariatePolynomial) -> str:
    rows = poly.to_matrix()
    width = len(rows[0]) if rows else 1
    lines = ["a\\b," + ",".join(str(b) for b in range(width))]
    for a, row in enumerate(rows):
        lines.append(f"{a}," + ",".join(map(str, row)))
    return "\n".join(lines)


def cmd_rpoly(args) -> int:
    if args.n < 1:
        raise ParseError("--n must be >= 1")
    point = _parse_eval(args.eval) if args.eval else None
    cache_dir = Path(args.cache_dir or os.environ.get(CACHE_ENV) or Path.home() / ".cache" / "hlpark")
    path = _cache_file(cache_dir, args.n)
    poly = None if args.no_cache else _read_cache(path, args.n)
    if poly is None:
        poly = compute_r_polynomial(
            args.n, partitions=args.partitions or args.workers, workers=args.workers,
            checkpoint_path=args.checkpoint,
        )
        if not args.no_cache:
            _write_cache(path, args.n, poly)
    if point is not None:
        print(poly.evaluate(*point))
    elif args.format == "json":
        print(dumps(poly))
    elif args.format == "csv":
        print(format_csv(poly))
    else:
        print(poly.to_text())
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.n < 1:
        raise ParseError("--n must be >= 1")
    report = verify_bijections(args.n)
    for line in report.summary_lines():
        print(line, file=sys.stderr)
    print(json.dumps(report.to_json(), separators=(",", ":"), default=str))
    return EXIT_OK if report.passed else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hlpark", description="HL-pairs, admissible pairs and parking functions.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="pair JSON -> parking function")
    p.add_argument("input", nargs="?", help="JSON (default: stdin)")
    p.add_argument("--codec", choices=("hl", "bs"), default="hl")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="parking function JSON -> pair")
    p.add_argument("input", nargs="?", help="JSON array (default: stdin)")
    p.add_argument("--codec", choices=("hl", "bs"), default="hl")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("stats", help="descents, maj, u-vector and shape of a permutation")
    p.add_argument("input", nargs="?", help="JSON array (default: stdin)")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("rpoly", help="compute R_n(q,t)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--partitions", type=int, default=None, help="rank blocks (default: --workers)")
    p.add_argument("--format", choices=("json", "text", "csv"), default="text")
    p.add_argument("--cache-dir", default=None, help=f"default: ${CACHE_ENV} or ~/.cache/hlpark")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--checkpoint", default=None, help="checkpoint directory for resumable runs")
    p.add_argument("--eval", default=None, metavar="q=<int>,t=<int>", help="print R_n at a point")
    p.set_defaults(func=cmd_rpoly)

    p = sub.add_parser("verify", help="exhaustively cross-check both encodings at size n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InternalConsistencyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except HLParkError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
