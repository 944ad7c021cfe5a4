"""Structure transport between tuple families.

Two coefficient-level maps:

* the alternating-sign bijection between verified tuples over <i*sqrt(k)>
  and over <sqrt(k)> (negate every second coefficient), and
* the even-position rescaling that turns a tuple over <sqrt(k)> into a plain
  integer tuple with the same verification status.

Both act on coefficient vectors rather than ring elements, which keeps them
exact, generator-agnostic, and automatic in the square-k corner cases.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Quiddity, TheoremViolation
from .rings import GeneratorSpec
from .solve import (
    DEFAULT_WORK_LIMIT,
    EnumSpec,
    NotAQuiddityError,
    enumerate_quiddities,
    is_irreducible,
)


class OddSizeError(ValueError):
    """The map is only defined for even tuple sizes."""


def _alternate(coeffs):
    return tuple(-c if i % 2 else c for i, c in enumerate(coeffs))


def _transport(q: Quiddity, target: GeneratorSpec) -> Quiddity:
    if q.size % 2:
        raise OddSizeError("the alternating-sign map needs even size")
    eps = q.sign if q.sign is not None else q.verify()
    if eps is None:
        raise NotAQuiddityError("the alternating-sign map needs a verified tuple")
    out = Quiddity.verified(target, _alternate(q.coeffs))
    if out is None:
        raise TheoremViolation(
            f"alternating-sign image of {q.coeffs} over {q.gen.to_string()} "
            f"does not verify over {target.to_string()}"
        )
    return out


def phi(q: Quiddity) -> Quiddity:
    """Verified even tuple over <i*sqrt(k)> to one over <sqrt(k)>.

    (k_1, k_2, k_3, k_4, ...) maps to (k_1, -k_2, k_3, -k_4, ...); the image
    is re-verified and a failure raises TheoremViolation.
    """
    if q.gen.family != "isqrt":
        raise ValueError("phi expects an imaginary square-root generator")
    return _transport(q, GeneratorSpec("sqrt", q.gen.param))


def phi_inverse(q: Quiddity) -> Quiddity:
    """Verified even tuple over <sqrt(k)> (or <s> read as <sqrt(s*s)>) to one
    over <i*sqrt(k)>; the same alternating coefficient map."""
    if q.gen.family == "sqrt":
        k = q.gen.param
    elif q.gen.family == "int":
        k = q.gen.param * q.gen.param
    else:
        raise ValueError("phi_inverse expects a real generator")
    return _transport(q, GeneratorSpec("isqrt", k))


def rescale_even(coeffs, k: int):
    """(k_1, k_2, k_3, k_4, ...) -> (k_1, k*k_2, k_3, k*k_4, ...).

    For k >= 1 the output is a verified integer tuple exactly when the input
    coefficients verify over <sqrt(k)>; k = 0 kills the transfer (the zero
    generator forgets the coefficients), so it is rejected.
    """
    t = tuple(coeffs)
    if len(t) % 2:
        raise OddSizeError("rescaling is defined for even sizes")
    if k < 1:
        raise ValueError("rescaling needs k >= 1")
    return tuple(c * k if i % 2 else c for i, c in enumerate(t))


def rescale_even_inverse(values, k: int):
    """Inverse direction; defined only when every second entry is divisible
    by k.  Used to import integer facts back into <sqrt(k)>."""
    t = tuple(values)
    if len(t) % 2:
        raise OddSizeError("rescaling is defined for even sizes")
    if k < 1:
        raise ValueError("rescaling needs k >= 1")
    out = []
    for i, v in enumerate(t):
        if i % 2:
            if v % k:
                raise ValueError(f"entry {v} at position {i} is not divisible by {k}")
            out.append(v // k)
        else:
            out.append(v)
    return tuple(out)


@dataclass
class BijectionAuditReport:
    """Outcome of the irreducibility-transport audit for one k."""

    k: int
    max_size: int
    bound: int
    status: str  # "ok" | "skipped" | "counterexample"
    checked: int = 0
    counterexamples: list = field(default_factory=list)
    note: str = ""

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "max_size": self.max_size,
            "bound": self.bound,
            "status": self.status,
            "checked": self.checked,
            "counterexamples": self.counterexamples,
            "note": self.note,
        }


def phi_preserves_irreducibility_check(
    k: int,
    max_size: int,
    bound: int,
    work_limit: int = DEFAULT_WORK_LIMIT,
    workers: int = 1,
) -> BijectionAuditReport:
    """Probe: irreducibility over <i*sqrt(k)> must match irreducibility of
    the alternating-sign image over <sqrt(k)>, tuple by tuple.

    k = 1 is skipped: odd-size integer tuples exist while odd sizes over <i>
    are empty, so the transport genuinely fails there.
    """
    if k == 1:
        return BijectionAuditReport(
            k, max_size, bound, status="skipped",
            note="irreducibility does not transport onto the integers",
        )
    src = GeneratorSpec("isqrt", k)
    report = BijectionAuditReport(k, max_size, bound, status="ok")
    for n in range(2, max_size + 1):
        spec = EnumSpec(src, n, bound, canonical_only=True)
        for q in enumerate_quiddities(spec, work_limit=work_limit, workers=workers):
            img = phi(q)
            report.checked += 1
            if is_irreducible(q) != is_irreducible(img):
                report.status = "counterexample"
                report.counterexamples.append(
                    {"source": list(q.coeffs), "image": list(img.coeffs)}
                )
    return report
