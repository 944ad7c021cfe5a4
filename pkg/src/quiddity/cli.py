"""Batch command line: verify, enumerate, classify, decompose, phi, rescale,
triangulate, even-search and selftest.

Output is deterministic for a fixed configuration: results are fully sorted,
JSON is dumped with sorted keys and fixed separators, and worker count never
leaks into the payload.  Exit codes: 0 success, 1 mathematical counterexample
found by a falsification probe, 2 usage error, 3 work-limit abort.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .core import Quiddity, TheoremViolation, is_quiddity
from .even import MODE_EQUIV, MODES, EvenSearchState, search_evenly_irreducible
from .maps import OddSizeError, phi, phi_inverse, rescale_even, rescale_even_inverse
from .rings import (
    ElementSyntaxError,
    GeneratorSpec,
    GeneratorSyntaxError,
    format_element,
    parse_element,
)
from .solve import (
    DEFAULT_WORK_LIMIT,
    EnumSpec,
    NotAQuiddityError,
    WorkLimitExceeded,
    classify_irreducibles,
    enumerate_quiddities,
    find_decomposition,
)
from .triangulation import find_labeling, quiddity_of_labeling, render_labeling, vertex_sums
from . import audits

WORK_LIMIT_ENV = "QUIDDITY_WORK_LIMIT"

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2
EXIT_WORK_LIMIT = 3


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _default_work_limit() -> int:
    raw = os.environ.get(WORK_LIMIT_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_WORK_LIMIT


def _parse_tuple_arg(text: str, gen: GeneratorSpec) -> tuple[int, ...]:
    """JSON array of coefficients (ints) or element strings."""
    data = json.loads(text)
    if not isinstance(data, list) or not data:
        raise ValueError("tuple must be a non-empty JSON array")
    coeffs = []
    for item in data:
        if isinstance(item, bool):
            raise ValueError("tuple entries must be integers or element strings")
        if isinstance(item, int):
            coeffs.append(item)
        elif isinstance(item, str):
            m = gen.extract(parse_element(item))
            if m is None:
                raise ValueError(
                    f"element {item!r} is not in the subgroup of {gen.to_string()}"
                )
            coeffs.append(m)
        else:
            raise ValueError("tuple entries must be integers or element strings")
    return tuple(coeffs)


def _quiddity_payload(q: Quiddity, irreducible=None) -> dict:
    out = q.to_json_dict(irreducible)
    out["size"] = q.size
    out["elements"] = [format_element(e) for e in q.elements()]
    return out


def _csv_items(items) -> str:
    lines = ["size,coeffs,sign,canonical,irreducible"]
    for it in items:
        coeffs = "[" + " ".join(str(c) for c in it["coeffs"]) + "]"
        canonical = "[" + " ".join(str(c) for c in it["canonical"]) + "]"
        irr = it.get("irreducible")
        irr_text = "" if irr is None else str(irr).lower()
        lines.append(f"{it['size']},{coeffs},{it['sign']},{canonical},{irr_text}")
    return "\n".join(lines)


def _emit_items(args, config: dict, items: list[dict], out) -> None:
    fmt = args.format
    if fmt == "jsonl":
        print(_dump({"type": "config", **config}), file=out)
        for it in items:
            print(_dump({"type": "quiddity", **it}), file=out)
        print(_dump({"type": "summary", "count": len(items)}), file=out)
    elif fmt == "csv":
        print(_csv_items(items), file=out)
    elif fmt == "text":
        print(f"# {_dump(config)}", file=out)
        for it in items:
            print(f"size {it['size']}  sign {it['sign']:+d}  {tuple(it['coeffs'])}", file=out)
        print(f"# count {len(items)}", file=out)
    else:
        print(_dump({"config": config, "count": len(items), "items": items}), file=out)


def _emit_object(args, payload: dict, out, text_lines=None) -> None:
    if args.format == "text" and text_lines is not None:
        for line in text_lines:
            print(line, file=out)
    else:
        print(_dump(payload), file=out)


# ----------------------------------------------------------------------------
# handlers


def _cmd_verify(args, out) -> int:
    gen = GeneratorSpec.from_string(args.gen)
    coeffs = _parse_tuple_arg(args.tuple, gen)
    config = {"command": "verify", "generator": gen.descriptor()}
    elements = tuple(gen.embed(c) for c in coeffs)
    eps = is_quiddity(elements, cross_check=True)
    payload = {
        "config": config,
        "size": len(coeffs),
        "coeffs": list(coeffs),
        "elements": [format_element(e) for e in elements],
        "is_quiddity": eps is not None,
        "sign": eps,
        "canonical": [int(c) for c in Quiddity(gen, coeffs).canonical_coeffs()],
    }
    verdict = f"sign {eps:+d}" if eps is not None else "not a solution"
    _emit_object(args, payload, out, [f"{tuple(coeffs)} over {gen.to_string()}: {verdict}"])
    return EXIT_OK


def _cmd_enumerate(args, out) -> int:
    gen = GeneratorSpec.from_string(args.gen)
    spec = EnumSpec(gen, args.size, args.bound, canonical_only=args.canonical_only)
    config = {
        "command": "enumerate",
        "generator": gen.descriptor(),
        "size": args.size,
        "bound": args.bound,
        "canonical_only": args.canonical_only,
        "work_limit": args.work_limit,
    }
    found = enumerate_quiddities(spec, work_limit=args.work_limit, workers=args.workers)
    items = [_quiddity_payload(q) for q in found]
    _emit_items(args, config, items, out)
    return EXIT_OK


def _cmd_classify(args, out) -> int:
    gen = GeneratorSpec.from_string(args.gen)
    config = {
        "command": "classify",
        "generator": gen.descriptor(),
        "min_size": args.min_size,
        "max_size": args.max_size,
        "bound": args.bound,
        "work_limit": args.work_limit,
    }
    found = classify_irreducibles(
        gen,
        args.max_size,
        args.bound,
        min_size=args.min_size,
        work_limit=args.work_limit,
        workers=args.workers,
    )
    items = [_quiddity_payload(q, irreducible=True) for q in found]
    _emit_items(args, config, items, out)
    return EXIT_OK


def _cmd_decompose(args, out) -> int:
    gen = GeneratorSpec.from_string(args.gen)
    coeffs = _parse_tuple_arg(args.tuple, gen)
    q = Quiddity.verified(gen, coeffs)
    if q is None:
        raise NotAQuiddityError(f"{tuple(coeffs)} does not verify over {gen.to_string()}")
    config = {
        "command": "decompose",
        "generator": gen.descriptor(),
        "parity": args.parity,
        "min_left": args.min_left,
        "min_right": args.min_right,
    }
    witness = None
    if q.size >= 4:
        witness = find_decomposition(
            q, min_left=args.min_left, min_right=args.min_right, parity=args.parity
        )
    payload = {
        "config": config,
        "input": _quiddity_payload(q),
        "reducible": witness is not None,
        "witness": witness.to_json_dict() if witness else None,
    }
    lines = [f"{tuple(coeffs)}: " + ("reducible" if witness else "no decomposition found")]
    if witness:
        lines.append(
            f"  representative {witness.representative} = "
            f"{tuple(witness.left)} (+) {tuple(witness.right.coeffs)}"
        )
    _emit_object(args, payload, out, lines)
    return EXIT_OK


def _cmd_phi(args, out) -> int:
    gen = GeneratorSpec.from_string(args.gen)
    coeffs = _parse_tuple_arg(args.tuple, gen)
    q = Quiddity.verified(gen, coeffs)
    if q is None:
        raise NotAQuiddityError(f"{tuple(coeffs)} does not verify over {gen.to_string()}")
    image = phi_inverse(q) if args.inverse else phi(q)
    config = {
        "command": "phi",
        "generator": gen.descriptor(),
        "inverse": args.inverse,
    }
    payload = {
        "config": config,
        "source": _quiddity_payload(q),
        "target": _quiddity_payload(image),
    }
    _emit_object(
        args,
        payload,
        out,
        [f"{tuple(q.coeffs)} over {gen.to_string()} -> "
         f"{tuple(image.coeffs)} over {image.gen.to_string()}"],
    )
    return EXIT_OK


def _cmd_rescale(args, out) -> int:
    gen = GeneratorSpec.from_string(args.gen)
    if gen.family != "sqrt":
        raise ValueError("rescale expects a sqrt:k generator")
    k = gen.param
    coeffs = _parse_tuple_arg(args.tuple, gen)
    z = GeneratorSpec("int", 1)
    if args.inverse:
        source = rescale_even_inverse(coeffs, k)
        in_sign = is_quiddity(tuple(z.embed(c) for c in coeffs))
        out_sign = is_quiddity(tuple(gen.embed(c) for c in source))
        result = {"input": list(coeffs), "output": list(source),
                  "input_sign": in_sign, "output_sign": out_sign}
        line = f"{tuple(coeffs)} over z -> coefficients {tuple(source)} over {gen.to_string()}"
    else:
        image = rescale_even(coeffs, k)
        in_sign = is_quiddity(tuple(gen.embed(c) for c in coeffs))
        out_sign = is_quiddity(tuple(z.embed(c) for c in image))
        result = {"input": list(coeffs), "output": list(image),
                  "input_sign": in_sign, "output_sign": out_sign}
        line = f"coefficients {tuple(coeffs)} over {gen.to_string()} -> {tuple(image)} over z"
    config = {"command": "rescale", "generator": gen.descriptor(), "inverse": args.inverse}
    _emit_object(args, {"config": config, **result}, out, [line])
    return EXIT_OK


def _cmd_triangulate(args, out) -> int:
    gen = GeneratorSpec.from_string(args.gen)
    coeffs = _parse_tuple_arg(args.tuple, gen)
    q = Quiddity.verified(gen, coeffs)
    if q is None:
        raise NotAQuiddityError(f"{tuple(coeffs)} does not verify over {gen.to_string()}")
    config = {
        "command": "triangulate",
        "generator": gen.descriptor(),
        "label_bound": args.label_bound,
    }
    witness = find_labeling(q, args.label_bound)
    if witness is None:
        payload = {"config": config, "found": False, "witness": None}
        _emit_object(args, payload, out, ["no labeling within bounds (bound-scoped)"])
        return EXIT_OK
    induced = quiddity_of_labeling(witness)  # re-verifies; raises on violation
    payload = {
        "config": config,
        "found": True,
        "witness": {
            "triangles": [list(t) for t in witness.triangulation.triangles],
            "labels": list(witness.labels),
            "vertex_sums": list(vertex_sums(witness)),
            "quiddity": _quiddity_payload(induced),
        },
    }
    _emit_object(args, payload, out, [render_labeling(witness)])
    return EXIT_OK


def _cmd_even_search(args, out) -> int:
    config = {
        "command": "even-search",
        "size": args.size,
        "bound": args.bound,
        "mode": args.mode,
        "work_limit": args.work_limit,
    }
    state = None
    if args.resume:
        if not args.checkpoint or not os.path.exists(args.checkpoint):
            raise ValueError("--resume needs an existing --checkpoint file")
        with open(args.checkpoint, "r", encoding="utf-8") as fh:
            state = EvenSearchState.from_json(fh.read())
    try:
        results, final = search_evenly_irreducible(
            args.size,
            args.bound,
            mode=args.mode,
            work_limit=args.work_limit,
            workers=args.workers,
            state=state,
        )
    except WorkLimitExceeded as exc:
        if args.checkpoint and exc.state is not None:
            with open(args.checkpoint, "w", encoding="utf-8") as fh:
                fh.write(exc.state.to_json())
            print(f"work limit hit; checkpoint written to {args.checkpoint}", file=sys.stderr)
        else:
            print("work limit hit; no checkpoint path given", file=sys.stderr)
        return EXIT_WORK_LIMIT
    if args.checkpoint:
        with open(args.checkpoint, "w", encoding="utf-8") as fh:
            fh.write(final.to_json())
    items = []
    for q, equiv_red in results:
        it = _quiddity_payload(q)
        it["equiv_reducible"] = equiv_red
        items.append(it)
    _emit_items(args, config, items, out)
    return EXIT_OK


def _cmd_selftest(args, out) -> int:
    results = audits.run_selftest(full=args.full, workers=args.workers)
    failed = [r for r in results if not r.ok]
    for r in results:
        mark = "ok" if r.ok else "FAIL"
        detail = f"  ({r.detail})" if r.detail else ""
        print(f"{r.name}: {mark}{detail}", file=out)
    print(f"{len(results) - len(failed)}/{len(results)} probes passed", file=out)
    return EXIT_COUNTEREXAMPLE if failed else EXIT_OK


# ----------------------------------------------------------------------------
# parser


def _add_common(sub, gen=True, fmt=True, workers=True, work_limit=True):
    if gen:
        sub.add_argument("--gen", required=True, help="generator: z | z:s | sqrt:k | isqrt:k | alpha [+nonneg]")
    if fmt:
        sub.add_argument("--format", choices=("json", "jsonl", "csv", "text"), default="json")
    if workers:
        sub.add_argument("--workers", type=int, default=1)
    if work_limit:
        sub.add_argument("--work-limit", type=int, default=_default_work_limit())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quiddity",
        description="Exact search and classification for cyclic tuples whose "
        "elementary matrix product is plus or minus the identity.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("verify", help="check one tuple and report its sign")
    _add_common(p, workers=False, work_limit=False)
    p.add_argument("--tuple", required=True, help='JSON array of coefficients or element strings')
    p.set_defaults(handler=_cmd_verify)

    p = subs.add_parser("enumerate", help="all solutions of one size within a bound")
    _add_common(p)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--canonical-only", action="store_true")
    p.set_defaults(handler=_cmd_enumerate)

    p = subs.add_parser("classify", help="canonical irreducible solutions up to a size")
    _add_common(p)
    p.add_argument("--min-size", type=int, default=3)
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(handler=_cmd_classify)

    p = subs.add_parser("decompose", help="exact splice decomposition of one tuple")
    _add_common(p, workers=False, work_limit=False)
    p.add_argument("--tuple", required=True)
    p.add_argument("--parity", choices=("any", "even"), default="any")
    p.add_argument("--min-left", type=int, default=3)
    p.add_argument("--min-right", type=int, default=3)
    p.set_defaults(handler=_cmd_decompose)

    p = subs.add_parser("phi", help="alternating-sign transport between i*sqrt(k) and sqrt(k)")
    _add_common(p, workers=False, work_limit=False)
    p.add_argument("--tuple", required=True)
    p.add_argument("--inverse", action="store_true", help="map from the real to the imaginary side")
    p.set_defaults(handler=_cmd_phi)

    p = subs.add_parser("rescale", help="even-position rescaling between sqrt(k) and z")
    _add_common(p, workers=False, work_limit=False)
    p.add_argument("--tuple", required=True)
    p.add_argument("--inverse", action="store_true")
    p.set_defaults(handler=_cmd_rescale)

    p = subs.add_parser("triangulate", help="labeling witness for an integer tuple")
    _add_common(p, workers=False, work_limit=False)
    p.add_argument("--tuple", required=True)
    p.add_argument("--label-bound", type=int, default=4)
    p.set_defaults(handler=_cmd_triangulate)

    p = subs.add_parser("even-search", help="evenly irreducible integer tuples of one even size")
    _add_common(p, gen=False)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--mode", choices=MODES, default=MODE_EQUIV)
    p.add_argument("--checkpoint", help="state file to write (and resume from)")
    p.add_argument("--resume", action="store_true")
    p.set_defaults(handler=_cmd_even_search)

    p = subs.add_parser("selftest", help="falsification probes and audits")
    p.add_argument("--full", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(handler=_cmd_selftest)

    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args, out)
    except TheoremViolation as exc:
        print(f"counterexample: {exc}", file=sys.stderr)
        return EXIT_COUNTEREXAMPLE
    except WorkLimitExceeded as exc:
        print(f"work limit: {exc}", file=sys.stderr)
        return EXIT_WORK_LIMIT
    except (
        GeneratorSyntaxError,
        ElementSyntaxError,
        NotAQuiddityError,
        OddSizeError,
        json.JSONDecodeError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def console() -> None:
    raise SystemExit(main())
