"""Decision procedures over bounded coefficient spaces: closed-form completion
of the last two entries, exhaustive enumeration, the exact splice
decomposition test, and irreducible classification.

The enumeration core walks the first n-2 coefficients depth first while
accumulating the ordered matrix product as flat integer state (one small
tuple per ring kind), then completes the final two entries in closed form.
Everything it emits is a plain Quiddity that re-verifies through the generic
matrix route, and the test suite holds the two routes against each other.

Reducibility is decided exactly, with no coefficient bound: for a fixed
dihedral representative and summand size, the interior of the right summand
is a fixed window of the representative and its two boundary entries are
forced by the window's matrix product.  Enumerating candidate summands
instead could never terminate over an infinite subgroup.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .core import Mat2, Quiddity, canonical_coeffs, is_quiddity, mat_of
from .rings import GeneratorSpec, NoModulusError, cmp_abs_squared_with_4

DEFAULT_WORK_LIMIT = 10 ** 8

PARITY_ANY = "any"
PARITY_EVEN = "even"


class NotUnimodularError(ValueError):
    """Tail completion needs a determinant-1 prefix product."""


class NotAQuiddityError(ValueError):
    """The operation is only defined for verified tuples."""


class WorkLimitExceeded(RuntimeError):
    """The search would exceed its node budget; never a partial answer.

    Resumable searches attach a checkpointable state.
    """

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


@dataclass(frozen=True)
class EnumSpec:
    """Bounded exhaustive search space: size-n tuples over gen, |k_j| <= bound
    (0 <= k_j <= bound for nonneg generators)."""

    gen: GeneratorSpec
    size: int
    bound: int
    canonical_only: bool = False


def solve_tail2(P: Mat2, gen: GeneratorSpec):
    """All (kx, ky, eps) with M(y)*M(x)*P = eps*Id, x = kx*w, y = ky*w.

    M(y)*M(x) equals [[xy-1, -y], [x, -1]], so eps*P^-1 must carry -1 in its
    lower-right entry; that forces eps, then x and y, and the upper-left
    entry is the remaining consistency check.  At most one eps can match.
    """
    if P.det() != 1:
        raise NotUnimodularError("tail completion needs det(P) = 1")
    out = []
    r = P.e11.rational_value()
    for eps in (1, -1):
        if r != -eps:
            continue
        x = (-eps) * P.e21
        y = eps * P.e12
        if x * y - 1 != eps * P.e22:
            continue
        kx = gen.extract(x)
        ky = gen.extract(y)
        if kx is not None and ky is not None:
            out.append((kx, ky, eps))
    return out


def _coeff_values(gen: GeneratorSpec, bound: int):
    lo = 0 if gen.nonneg else -bound
    vals = list(range(lo, bound + 1))
    kind, p, _ = gen._ring()
    if kind == "int" and p == 0:
        vals = [0]  # the zero generator maps every coefficient to one element
    return vals


def predicted_nodes(num_values: int, size: int) -> int:
    """DFS states for a full prefix tree over size-2 levels, root included."""
    total, level = 1, 1
    for _ in range(size - 2):
        level *= num_values
        total += level
    return total


def _shard_int(s, vals, n, bound, nonneg, first, emit):
    def tail(prefix, p11, p12, p21, p22):
        if p11 == 1 or p11 == -1:
            eps = -p11
            x = -eps * p21
            y = eps * p12
            if x * y - 1 == eps * p22:
                if s == 0:
                    if x == 0 and y == 0:
                        emit((prefix + (0, 0), eps))
                elif x % s == 0 and y % s == 0:
                    kx, ky = x // s, y // s
                    if abs(kx) <= bound and abs(ky) <= bound and not (
                        nonneg and (kx < 0 or ky < 0)
                    ):
                        emit((prefix + (kx, ky), eps))

    def rec(depth, prefix, p11, p12, p21, p22):
        if depth == n - 2:
            tail(prefix, p11, p12, p21, p22)
            return
        for c in vals:
            e = c * s
            rec(depth + 1, prefix + (c,), e * p11 - p21, e * p12 - p22, p11, p12)

    if first is None:
        rec(0, (), 1, 0, 0, 1)
    else:
        e = first * s
        rec(1, (first,), e, -1, 1, 0)


def _shard_quad(d, scale, vals, n, bound, nonneg, first, emit):
    # matrix entries are pairs (a, b) for a + b*w, flattened row by row
    def tail(prefix, a11, b11, a12, b12, a21, b21, a22, b22):
        if b11 == 0 and (a11 == 1 or a11 == -1):
            eps = -a11
            if a21 == 0 and a12 == 0 and b22 == 0:
                xb = -eps * b21
                yb = eps * b12
                if xb * yb * d - 1 == eps * a22 and xb % scale == 0 and yb % scale == 0:
                    kx, ky = xb // scale, yb // scale
                    if abs(kx) <= bound and abs(ky) <= bound and not (
                        nonneg and (kx < 0 or ky < 0)
                    ):
                        emit((prefix + (kx, ky), eps))

    def rec(depth, prefix, a11, b11, a12, b12, a21, b21, a22, b22):
        if depth == n - 2:
            tail(prefix, a11, b11, a12, b12, a21, b21, a22, b22)
            return
        for c in vals:
            e = c * scale
            # M(e*w)*P: new first row is e*w*row1 - row2, new second row is row1
            rec(
                depth + 1,
                prefix + (c,),
                e * b11 * d - a21,
                e * a11 - b21,
                e * b12 * d - a22,
                e * a12 - b22,
                a11,
                b11,
                a12,
                b12,
            )

    if first is None:
        rec(0, (), 1, 0, 0, 0, 0, 0, 1, 0)
    else:
        e = first * scale
        rec(1, (first,), 0, e, -1, 0, 1, 0, 0, 0)


def _poly_strip(t):
    n = len(t)
    while n and t[n - 1] == 0:
        n -= 1
    return t[:n]


def _poly_sub(u, v):
    m = max(len(u), len(v))
    return _poly_strip(
        tuple((u[i] if i < len(u) else 0) - (v[i] if i < len(v) else 0) for i in range(m))
    )


def _poly_xmul(u, c):
    # c*X*u; u carries no trailing zeros, so neither does the result
    if c == 0 or not u:
        return ()
    return (0,) + tuple(c * x for x in u)


def _poly_lin(t):
    if not t:
        return 0
    if len(t) == 2 and t[0] == 0:
        return t[1]
    return None


def _shard_poly(vals, n, bound, nonneg, first, emit):
    def tail(prefix, p11, p12, p21, p22):
        for eps in (1, -1):
            if p11 != (-eps,):
                continue
            kx = _poly_lin(tuple(-eps * c for c in p21))
            ky = _poly_lin(tuple(eps * c for c in p12))
            if kx is None or ky is None:
                continue
            prod = kx * ky
            lhs = (-1,) if prod == 0 else (-1, 0, prod)
            if lhs != tuple(eps * c for c in p22):
                continue
            if abs(kx) <= bound and abs(ky) <= bound and not (
                nonneg and (kx < 0 or ky < 0)
            ):
                emit((prefix + (kx, ky), eps))

    def rec(depth, prefix, p11, p12, p21, p22):
        if depth == n - 2:
            tail(prefix, p11, p12, p21, p22)
            return
        for c in vals:
            rec(
                depth + 1,
                prefix + (c,),
                _poly_sub(_poly_xmul(p11, c), p21),
                _poly_sub(_poly_xmul(p12, c), p22),
                p11,
                p12,
            )

    if first is None:
        rec(0, (), (1,), (), (), (1,))
    else:
        p11 = (0, first) if first else ()
        rec(1, (first,), p11, (-1,), (1,), ())


def _run_shard(gen, n, bound, first):
    """Enumerate all solutions whose first coefficient is `first` (every
    solution when first is None, used for n = 2)."""
    kind, p, scale = gen._ring()
    vals = _coeff_values(gen, bound)
    found = []
    emit = found.append
    if kind == "int":
        _shard_int(p, vals, n, bound, gen.nonneg, first, emit)
    elif kind == "quad":
        _shard_quad(p, scale, vals, n, bound, gen.nonneg, first, emit)
    else:
        _shard_poly(vals, n, bound, gen.nonneg, first, emit)
    return found


def _run_shard_star(args):
    return _run_shard(*args)


def _map_shards(gen, n, bound, shards, workers):
    args = [(gen, n, bound, first) for first in shards]
    if workers <= 1 or len(args) <= 1:
        return [_run_shard(*a) for a in args]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_shard_star, args))


def _collect(spec: EnumSpec, found):
    gen = spec.gen
    if spec.canonical_only:
        seen = {}
        for coeffs, eps in found:
            cc = canonical_coeffs(coeffs, gen)
            if cc not in seen:
                seen[cc] = eps
        qs = [Quiddity(gen, cc, eps) for cc, eps in seen.items()]
    else:
        qs = [Quiddity(gen, coeffs, eps) for coeffs, eps in found]
    qs.sort(key=Quiddity.order_key)
    return qs


def enumerate_quiddities(spec: EnumSpec, work_limit: int = DEFAULT_WORK_LIMIT, workers: int = 1):
    """Every verified tuple in the bounded space, deterministically sorted.

    The space is sharded on the first coefficient; results are merged and
    re-sorted, so worker count never changes the output.  The node count of
    the full prefix tree is known up front, which keeps the work limit a
    hard precondition rather than a mid-flight truncation.
    """
    gen, n, bound = spec.gen, spec.size, spec.bound
    if n < 2:
        raise ValueError("enumeration needs size >= 2")
    if bound < 0:
        raise ValueError("coefficient bound must be >= 0")
    vals = _coeff_values(gen, bound)
    if predicted_nodes(len(vals), n) > work_limit:
        raise WorkLimitExceeded(
            f"enumeration would visit {predicted_nodes(len(vals), n)} nodes "
            f"(limit {work_limit})"
        )
    shards = [None] if n == 2 else list(vals)
    chunks = _map_shards(gen, n, bound, shards, workers)
    return _collect(spec, [pair for chunk in chunks for pair in chunk])


@dataclass(frozen=True)
class Decomposition:
    """Witness q ~ left (+) right for a verified tuple q.

    representative is the dihedral image of q actually split; left is a
    plain coefficient tuple, right a verified summand; the splice of the two
    reproduces representative exactly.
    """

    rotation: int
    reflected: bool
    representative: tuple[int, ...]
    left: tuple[int, ...]
    right: Quiddity

    @property
    def left_size(self) -> int:
        return len(self.left)

    @property
    def right_size(self) -> int:
        return self.right.size

    def to_json_dict(self) -> dict:
        return {
            "rotation": self.rotation,
            "reflected": self.reflected,
            "representative": list(self.representative),
            "left": list(self.left),
            "right": self.right.to_json_dict(),
            "left_size": self.left_size,
            "right_size": self.right_size,
        }


def _scan_representative(rep, gen, min_left, min_right, parity):
    """First forced-boundary split of one fixed representative, or None.

    Scans right-summand sizes l ascending; the interior window rep[m:] grows
    one factor at a time so each candidate costs one matrix multiply.
    """
    n = len(rep)
    l_max = n + 2 - min_left
    elems = [gen.embed(c) for c in rep]
    mats = [mat_of(e) for e in elems]
    block = Mat2.identity()
    ws = n
    for l in range(3, l_max + 1):
        m = n + 2 - l
        while ws > m:
            ws -= 1
            block = block * mats[ws]
        if l < min_right:
            continue
        if parity == PARITY_EVEN and (l % 2 or m % 2):
            continue
        r = block.e11.rational_value()
        if r not in (1, -1):
            continue
        eps = -r
        b_first = eps * block.e12
        b_last = (-eps) * block.e21
        if block.e22 != eps * (b_first * b_last - 1):
            continue
        kb_first = gen.extract(b_first)
        kb_last = gen.extract(b_last)
        if kb_first is None or kb_last is None:
            continue
        ka_first = rep[0] - kb_last
        ka_last = rep[m - 1] - kb_first
        if gen.nonneg and (ka_first < 0 or ka_last < 0):
            continue
        left = (ka_first,) + rep[1 : m - 1] + (ka_last,)
        if is_quiddity(tuple(gen.embed(c) for c in left)) is None:
            continue
        right = (kb_first,) + rep[m:] + (kb_last,)
        return left, right, eps
    return None


def find_decomposition(
    q: Quiddity,
    min_left: int = 3,
    min_right: int = 3,
    parity: str = PARITY_ANY,
):
    """First splice decomposition q ~ left (+) right, or None.

    Scan order is rotation index, then reflection flag, then right-summand
    size ascending, so witnesses are reproducible across runs and platforms.
    """
    if parity not in (PARITY_ANY, PARITY_EVEN):
        raise ValueError(f"unknown parity {parity!r}")
    if min_left < 3 or min_right < 3:
        raise ValueError("summand sizes below 3 are never legal")
    eps = q.sign if q.sign is not None else q.verify()
    if eps is None:
        raise NotAQuiddityError("decomposition is defined for verified tuples")
    n = q.size
    if parity == PARITY_EVEN and n % 2:
        return None
    for rotation in range(n):
        for reflected in (False, True):
            base = q.coeffs[::-1] if reflected else q.coeffs
            rep = base[rotation:] + base[:rotation]
            hit = _scan_representative(rep, q.gen, min_left, min_right, parity)
            if hit is not None:
                left, right, right_eps = hit
                return Decomposition(
                    rotation, reflected, rep, left, Quiddity(q.gen, right, right_eps)
                )
    return None


def is_irreducible(q: Quiddity) -> bool:
    """Not expressible, up to rotation/reflection, as left (+) right with a
    verified right summand and both sizes >= 3.

    Size 2 is excluded by convention; size 3 admits no legal split.
    """
    eps = q.sign if q.sign is not None else q.verify()
    if eps is None:
        raise NotAQuiddityError("irreducibility is defined for verified tuples")
    if q.size == 2:
        return False
    if q.size == 3:
        return True
    return find_decomposition(q) is None


def classify_irreducibles(
    gen: GeneratorSpec,
    max_size: int,
    bound: int,
    min_size: int = 3,
    work_limit: int = DEFAULT_WORK_LIMIT,
    workers: int = 1,
):
    """Canonical irreducible tuples for every size in [min_size, max_size]."""
    out = []
    for n in range(min_size, max_size + 1):
        spec = EnumSpec(gen, n, bound, canonical_only=True)
        for q in enumerate_quiddities(spec, work_limit=work_limit, workers=workers):
            if is_irreducible(q):
                out.append(q)
    out.sort(key=Quiddity.order_key)
    return out


def check_two_small_entries(q: Quiddity) -> bool:
    """True when at least two positions carry an entry of modulus below 2.

    Every verified tuple over a subset of C is expected to satisfy this; the
    enumeration suites call it as a falsification probe and treat False as a
    counterexample.
    """
    if not q.gen.has_modulus():
        raise NoModulusError("two-small-entries needs a modulus; not defined over X")
    small = 0
    for e in q.elements():
        if cmp_abs_squared_with_4(e) < 0:
            small += 1
            if small >= 2:
                return True
    return False
