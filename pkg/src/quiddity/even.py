"""Even splice reducibility of even-size integer tuples, its link to tuples
over <i>, and the resumable search for evenly irreducible solutions.

An even-size verified integer tuple is evenly reducible when it splits as a
splice sum of two verified tuples of even size at least 4.  Two readings are
implemented: strict (a literal equality, no dihedral move applied first) and
up-to-equivalence (any rotation/reflection may be split).  Strict witnesses
are also up-to-equivalence witnesses; the converse can fail, and search runs
record such divergences.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .core import Quiddity, canonical_coeffs
from .maps import OddSizeError, phi
from .rings import GeneratorSpec
from .solve import (
    DEFAULT_WORK_LIMIT,
    EnumSpec,
    NotAQuiddityError,
    PARITY_EVEN,
    WorkLimitExceeded,
    _coeff_values,
    _map_shards,
    _scan_representative,
    enumerate_quiddities,
    find_decomposition,
    is_irreducible,
    predicted_nodes,
)

MODE_STRICT = "strict"
MODE_EQUIV = "up-to-equivalence"
MODES = (MODE_STRICT, MODE_EQUIV)

_Z = GeneratorSpec("int", 1)


def is_evenly_reducible(q: Quiddity, mode: str = MODE_EQUIV) -> bool:
    """Splice split into two verified even tuples of size >= 4?

    strict demands the literal alignment q = left (+) right; the default
    allows any dihedral representative of q to split.  Sizes below 6 can
    never split (the two summand sizes add to size + 2), so every size-4
    tuple comes out evenly irreducible.
    """
    eps = q.sign if q.sign is not None else q.verify()
    if eps is None:
        raise NotAQuiddityError("even reducibility is defined for verified tuples")
    if q.size % 2:
        raise OddSizeError("even reducibility concerns even sizes")
    if q.size < 4:
        raise ValueError("even reducibility concerns sizes >= 4")
    if mode == MODE_STRICT:
        return _scan_representative(q.coeffs, q.gen, 4, 4, PARITY_EVEN) is not None
    if mode == MODE_EQUIV:
        return find_decomposition(q, min_left=4, min_right=4, parity=PARITY_EVEN) is not None
    raise ValueError(f"unknown mode {mode!r}")


@dataclass
class LinkAuditReport:
    """Outcome of the <i>-to-integers irreducibility link probe."""

    max_size: int
    bound: int
    status: str  # "ok" | "counterexample"
    checked: int = 0
    counterexamples: list | None = None

    def to_json_dict(self) -> dict:
        return {
            "max_size": self.max_size,
            "bound": self.bound,
            "status": self.status,
            "checked": self.checked,
            "counterexamples": self.counterexamples or [],
        }


def phi1_link_check(
    max_size: int,
    bound: int,
    work_limit: int = DEFAULT_WORK_LIMIT,
    workers: int = 1,
) -> LinkAuditReport:
    """Probe: a tuple over <i> is irreducible exactly when its alternating
    sign integer image is evenly irreducible.

    Sizes start at 4: the size-2 tuple is excluded from irreducibility by
    convention, which would fake a counterexample.
    """
    gen = GeneratorSpec("isqrt", 1)
    report = LinkAuditReport(max_size, bound, status="ok", counterexamples=[])
    for n in range(4, max_size + 1):
        spec = EnumSpec(gen, n, bound, canonical_only=True)
        for q in enumerate_quiddities(spec, work_limit=work_limit, workers=workers):
            img = phi(q)
            report.checked += 1
            if is_irreducible(q) != (not is_evenly_reducible(img, MODE_EQUIV)):
                report.status = "counterexample"
                report.counterexamples.append(
                    {"source": list(q.coeffs), "image": list(img.coeffs)}
                )
    return report


@dataclass(frozen=True)
class EvenSearchState:
    """Resumable cursor for one (size, bound, mode) sweep.

    Progress is tracked at first-coefficient shard granularity, so merging
    finished shards is associative and order-independent and serialized
    states are byte-stable.  found keeps every canonical candidate that
    survives the strict filter, together with its up-to-equivalence verdict;
    the mode only selects which of those count as results.
    """

    size: int
    bound: int
    mode: str
    done: tuple[int, ...]
    found: tuple[tuple[tuple[int, ...], int, bool], ...]  # (coeffs, sign, equiv_reducible)
    complete: bool = False

    def to_json(self) -> str:
        obj = {
            "size": self.size,
            "bound": self.bound,
            "mode": self.mode,
            "done": sorted(self.done),
            "found": [
                {"coeffs": list(cc), "sign": sign, "equiv_reducible": red}
                for cc, sign, red in sorted(self.found)
            ],
            "complete": self.complete,
        }
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "EvenSearchState":
        obj = json.loads(text)
        return cls(
            size=int(obj["size"]),
            bound=int(obj["bound"]),
            mode=obj["mode"],
            done=tuple(sorted(int(c) for c in obj["done"])),
            found=tuple(
                sorted(
                    (tuple(rec["coeffs"]), int(rec["sign"]), bool(rec["equiv_reducible"]))
                    for rec in obj["found"]
                )
            ),
            complete=bool(obj["complete"]),
        )


def search_evenly_irreducible(
    size: int,
    bound: int,
    mode: str = MODE_EQUIV,
    work_limit: int = DEFAULT_WORK_LIMIT,
    workers: int = 1,
    state: EvenSearchState | None = None,
):
    """All canonical evenly irreducible integer tuples of one even size.

    Returns (results, final_state).  When the node budget runs out first,
    WorkLimitExceeded is raised carrying a state that resumes the sweep
    exactly where it stopped.  results lists (quiddity, equiv_reducible)
    pairs filtered by mode, sorted; divergent records (strictly irreducible
    yet reducible up to equivalence) stay visible through the flag.
    """
    if size % 2 or size < 4:
        raise ValueError("the search runs over even sizes >= 4")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if state is not None and (state.size, state.bound, state.mode) != (size, bound, mode):
        raise ValueError("checkpoint does not match this search")
    vals = _coeff_values(_Z, bound)
    shard_cost = predicted_nodes(len(vals), size - 1)
    done = set(state.done) if state else set()
    records = {tuple(cc): (sign, red) for cc, sign, red in state.found} if state else {}
    pending = [c for c in vals if c not in done]
    affordable = max(0, work_limit // shard_cost)
    batch, overflow = pending[:affordable], pending[affordable:]
    if batch:
        chunks = _map_shards(_Z, size, bound, batch, workers)
        for first, chunk in zip(batch, chunks):
            for coeffs, eps in chunk:
                cc = canonical_coeffs(coeffs, _Z)
                if cc in records:
                    continue
                q = Quiddity(_Z, cc, eps)
                if _scan_representative(cc, _Z, 4, 4, PARITY_EVEN) is not None:
                    continue  # strictly reducible, hence reducible in both modes
                equiv_red = (
                    find_decomposition(q, min_left=4, min_right=4, parity=PARITY_EVEN)
                    is not None
                )
                records[cc] = (eps, equiv_red)
            done.add(first)
    final = EvenSearchState(
        size=size,
        bound=bound,
        mode=mode,
        done=tuple(sorted(done)),
        found=tuple(sorted((cc, sign, red) for cc, (sign, red) in records.items())),
        complete=not overflow,
    )
    if overflow:
        raise WorkLimitExceeded(
            f"{len(overflow)} of {len(vals)} shards still pending", state=final
        )
    results = []
    for cc, (sign, equiv_red) in sorted(records.items()):
        if mode == MODE_EQUIV and equiv_red:
            continue
        results.append((Quiddity(_Z, cc, sign), equiv_red))
    results.sort(key=lambda pair: pair[0].order_key())
    return results, final
