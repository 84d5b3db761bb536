"""Domain types, validation and canonical serialization.

All sequences are 0-indexed.  A permutation of ``range(n)`` is stored in
one-line notation: ``values[i]`` is the image of ``i``.

Text forms are bracketed comma lists (``[2,0,1]``); JSON forms are integer
arrays, ``{"sigma": [...], "k": [...]}``, ``{"k": [...], "l": [...]}`` and, for
polynomials, a list of ``{"a": .., "b": .., "c": ..}`` sorted by ``(a, b)``.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "INT64_MAX",
    "HLParkError",
    "InvalidInputError",
    "UnsupportedSizeError",
    "UnsupportedShapeError",
    "NoCorrespondenceError",
    "InternalConsistencyError",
    "CoefficientOverflowError",
    "Permutation",
    "ParkingFunction",
    "HLPair",
    "AdmissiblePair",
    "BivariatePolynomial",
    "ShapeVariant",
    "ShapeDescriptor",
    "validate_parking_function",
    "inverse",
    "render",
    "parse",
    "to_json",
    "from_json",
    "dumps",
]

INT64_MAX = 2**63 - 1


class HLParkError(Exception):
    """Base class for all library errors."""


class InvalidInputError(HLParkError, ValueError):
    """An argument violates a domain invariant."""


class UnsupportedSizeError(HLParkError, ValueError):
    """The requested size exceeds a configured search bound."""


class UnsupportedShapeError(HLParkError, ValueError):
    """A permutation or l-sequence lies outside every tabulated shape family."""


class NoCorrespondenceError(HLParkError, ValueError):
    """The shape has no sigma -> l correspondence (four-tail-s3s1s2)."""


class InternalConsistencyError(HLParkError, RuntimeError):
    """A case that the construction proves unreachable was reached."""


class CoefficientOverflowError(HLParkError, OverflowError):
    """A polynomial coefficient left the signed 64-bit range."""


def _int_tuple(values: Iterable[int], what: str) -> tuple[int, ...]:
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int):
            # numpy integers are accepted through __index__
            try:
                v = v.__index__()
            except AttributeError:
                raise InvalidInputError(f"{what}: entries must be integers, got {v!r}") from None
        out.append(v)
    return tuple(out)


def _check_permutation(values: tuple[int, ...]) -> None:
    n = len(values)
    if n < 1:
        raise InvalidInputError("permutation must have length >= 1")
    seen = [False] * n
    for v in values:
        if v < 0 or v >= n or seen[v]:
            raise InvalidInputError(f"{list(values)} is not a permutation of 0..{n - 1}")
        seen[v] = True


class _IntSequence:
    """Shared sequence protocol for the wrapped-tuple types."""

    values: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    @property
    def n(self) -> int:
        return len(self.values)

    @classmethod
    def _trusted(cls, values: tuple[int, ...]):
        # skips validation; only for values produced by this package
        obj = object.__new__(cls)
        object.__setattr__(obj, "values", values)
        return obj


@dataclass(frozen=True)
class Permutation(_IntSequence):
    """A permutation of ``range(n)`` in one-line notation."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        values = _int_tuple(self.values, "permutation")
        _check_permutation(values)
        object.__setattr__(self, "values", values)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        if n < 1:
            raise InvalidInputError("n must be >= 1")
        return cls._trusted(tuple(range(n)))

    def inverse(self) -> "Permutation":
        return inverse(self)


def validate_parking_function(values: Sequence[int]) -> bool:
    """Return True iff ``values`` is a parking function.

    Sorting gives the O(n log n) test ``s_i <= i``; this is equivalent to the
    existence of a permutation ``tau`` with ``values[i] <= tau(i)``.

    Raises InvalidInputError for an empty sequence or a negative entry.
    """
    vals = _int_tuple(values, "parking function")
    if not vals:
        raise InvalidInputError("parking function must be nonempty")
    if any(v < 0 for v in vals):
        raise InvalidInputError(f"negative entry in {list(vals)}")
    return all(s <= i for i, s in enumerate(sorted(vals)))


@dataclass(frozen=True)
class ParkingFunction(_IntSequence):
    """A sequence of nonnegative integers majorated by some permutation."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        values = _int_tuple(self.values, "parking function")
        if not validate_parking_function(values):
            raise InvalidInputError(f"{list(values)} is not a parking function")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class HLPair:
    """A permutation with a sequence ``k`` satisfying ``u_i(sigma) <= k_i <= i``."""

    sigma: Permutation
    k: tuple[int, ...]

    def __post_init__(self) -> None:
        from .stats import u_vector

        sigma = self.sigma if isinstance(self.sigma, Permutation) else Permutation(tuple(self.sigma))
        k = _int_tuple(self.k, "k")
        if len(k) != sigma.n:
            raise InvalidInputError(f"length mismatch: sigma has {sigma.n} entries, k has {len(k)}")
        u = u_vector(sigma)
        for i, (ui, ki) in enumerate(zip(u, k)):
            if not ui <= ki <= i:
                raise InvalidInputError(f"not an HL-pair: need u_{i}={ui} <= k_{i}={ki} <= {i}")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "k", k)

    @property
    def n(self) -> int:
        return self.sigma.n

    @classmethod
    def _trusted(cls, sigma: tuple[int, ...], k: tuple[int, ...]) -> "HLPair":
        obj = object.__new__(cls)
        object.__setattr__(obj, "sigma", Permutation._trusted(sigma))
        object.__setattr__(obj, "k", k)
        return obj


def admissibility_violation(k: Sequence[int], l: Sequence[int]) -> str | None:
    """Describe the first violated admissibility condition, or return None."""
    n = len(k)
    for i in range(n):
        if not 0 <= l[i] <= k[i] <= i:
            return f"condition 1 fails at i={i}: need 0 <= l_i={l[i]} <= k_i={k[i]} <= {i}"
    for j in range(1, n):
        for i in range(j):
            if l[i] > l[j] and k[j] < i + 1:
                return f"condition 2 fails at (i,j)=({i},{j}): l_i > l_j but k_j={k[j]} < {i + 1}"
    return None


@dataclass(frozen=True)
class AdmissiblePair:
    """A pair of sequences with ``0 <= l_i <= k_i <= i`` and the inversion rule."""

    k: tuple[int, ...]
    l: tuple[int, ...]

    def __post_init__(self) -> None:
        k = _int_tuple(self.k, "k")
        l = _int_tuple(self.l, "l")
        if not k or len(k) != len(l):
            raise InvalidInputError("k and l must be nonempty and of equal length")
        why = admissibility_violation(k, l)
        if why is not None:
            raise InvalidInputError(f"not admissible: {why}")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "l", l)

    @property
    def n(self) -> int:
        return len(self.k)

    @classmethod
    def _trusted(cls, k: tuple[int, ...], l: tuple[int, ...]) -> "AdmissiblePair":
        obj = object.__new__(cls)
        object.__setattr__(obj, "k", k)
        object.__setattr__(obj, "l", l)
        return obj


def _checked(c: int) -> int:
    if c > INT64_MAX or c < -INT64_MAX - 1:
        raise CoefficientOverflowError(f"coefficient {c} exceeds signed 64-bit range")
    return c


@dataclass(frozen=True)
class BivariatePolynomial:
    """Sparse polynomial in ``q, t`` with exact nonnegative integer coefficients.

    Keys are exponent pairs ``(a, b)`` for ``q^a t^b``.  Zero coefficients are
    never stored.  Addition is checked against the signed 64-bit range.
    """

    coefficients: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for (a, b), c in self.coefficients.items():
            a, b, c = int(a), int(b), int(c)
            if a < 0 or b < 0:
                raise InvalidInputError(f"negative exponent ({a}, {b})")
            if c < 0:
                raise InvalidInputError(f"negative coefficient {c} at ({a}, {b})")
            if c:
                clean[(a, b)] = _checked(c)
        object.__setattr__(self, "coefficients", dict(sorted(clean.items())))

    @classmethod
    def from_matrix(cls, rows) -> "BivariatePolynomial":
        """Build from a dense matrix indexed ``[a][b]``."""
        coeffs = {}
        for a, row in enumerate(rows):
            for b, c in enumerate(row):
                if c:
                    coeffs[(a, b)] = int(c)
        return cls(coeffs)

    def __add__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        out = dict(self.coefficients)
        for key, c in other.coefficients.items():
            out[key] = _checked(out.get(key, 0) + c)
        return BivariatePolynomial(out)

    def __hash__(self) -> int:
        return hash(tuple(self.coefficients.items()))

    def coefficient(self, a: int, b: int) -> int:
        return self.coefficients.get((a, b), 0)

    def items(self) -> list[tuple[int, int, int]]:
        return [(a, b, c) for (a, b), c in self.coefficients.items()]

    def evaluate(self, q: int, t: int) -> int:
        return sum(c * q**a * t**b for (a, b), c in self.coefficients.items())

    def substitute_q(self, q: int) -> "BivariatePolynomial":
        """Return the polynomial in ``t`` alone obtained by setting ``q``."""
        out: dict[tuple[int, int], int] = {}
        for (a, b), c in self.coefficients.items():
            out[(0, b)] = out.get((0, b), 0) + c * q**a
        return BivariatePolynomial(out)

    def swap_variables(self) -> "BivariatePolynomial":
        return BivariatePolynomial({(b, a): c for (a, b), c in self.coefficients.items()})

    @property
    def q_degree(self) -> int:
        return max((a for a, _ in self.coefficients), default=0)

    @property
    def t_degree(self) -> int:
        return max((b for _, b in self.coefficients), default=0)

    def to_matrix(self) -> list[list[int]]:
        rows = [[0] * (self.t_degree + 1) for _ in range(self.q_degree + 1)]
        for (a, b), c in self.coefficients.items():
            rows[a][b] = c
        return rows

    def to_text(self) -> str:
        """Render as ``c q^a t^b`` terms in graded order (``1 + 1 q^1 + 1 t^1``)."""
        if not self.coefficients:
            return "0"
        keys = sorted(self.coefficients, key=lambda ab: (ab[0] + ab[1], -ab[0]))
        terms = []
        for a, b in keys:
            parts = [str(self.coefficients[(a, b)])]
            if a:
                parts.append(f"q^{a}")
            if b:
                parts.append(f"t^{b}")
            terms.append(" ".join(parts))
        return " + ".join(terms)

    @classmethod
    def from_text(cls, text: str) -> "BivariatePolynomial":
        text = text.strip()
        if text == "0":
            return cls({})
        coeffs: dict[tuple[int, int], int] = {}
        for term in text.split("+"):
            m = _TERM_RE.fullmatch(term.strip())
            if m is None:
                raise InvalidInputError(f"cannot parse polynomial term {term!r}")
            c, a, b = int(m["c"]), int(m["a"] or 0), int(m["b"] or 0)
            coeffs[(a, b)] = coeffs.get((a, b), 0) + c
        return cls(coeffs)


_TERM_RE = re.compile(r"(?P<c>\d+)(?:\s+q\^(?P<a>\d+))?(?:\s+t\^(?P<b>\d+))?")


class ShapeVariant(str, enum.Enum):
    IDENTITY = "identity"
    ONE_CYCLE_TAIL = "one-cycle-tail"
    TWO_TAIL_INCREASING = "two-tail-increasing"
    THREE_TAIL_INCREASING = "three-tail-increasing"
    THREE_TAIL_2INV = "three-tail-2inv"
    FOUR_TAIL_INCREASING = "four-tail-increasing"
    FOUR_TAIL_S1S3S2 = "four-tail-s1s3s2"
    FOUR_TAIL_S3S1S2 = "four-tail-s3s1s2"
    UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class ShapeDescriptor:
    """Classification of a small-maj permutation into one of the tail forms.

    ``params`` are the s-parameters in the order they are named for the
    variant, e.g. ``(s1, s2, s3)`` for four-tail-s1s3s2 whose tail reads
    ``s1, s2, s3`` with ``s1 < s3 < s2``.  For ``unsupported`` the params are
    empty and ``maj_value`` is the actual major index.
    """

    maj_value: int
    variant: ShapeVariant
    params: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "variant", ShapeVariant(self.variant))
        object.__setattr__(self, "params", tuple(int(s) for s in self.params))


def inverse(sigma: Sequence[int]) -> Permutation:
    """Return the inverse permutation ``r`` with ``r[sigma[i]] == i``."""
    if not isinstance(sigma, Permutation):
        sigma = Permutation(tuple(sigma))
    inv = [0] * sigma.n
    for i, v in enumerate(sigma.values):
        inv[v] = i
    return Permutation._trusted(tuple(inv))


# --- serialization ---------------------------------------------------------

def to_json(obj):
    """Convert a core object to its JSON-compatible value."""
    if isinstance(obj, (Permutation, ParkingFunction)):
        return list(obj.values)
    if isinstance(obj, HLPair):
        return {"sigma": list(obj.sigma.values), "k": list(obj.k)}
    if isinstance(obj, AdmissiblePair):
        return {"k": list(obj.k), "l": list(obj.l)}
    if isinstance(obj, BivariatePolynomial):
        return [{"a": a, "b": b, "c": c} for a, b, c in obj.items()]
    if isinstance(obj, ShapeDescriptor):
        return {"maj": obj.maj_value, "variant": obj.variant.value, "params": list(obj.params)}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_json(kind: type, value):
    """Inverse of :func:`to_json` for the given type."""
    try:
        if kind in (Permutation, ParkingFunction):
            if not isinstance(value, list):
                raise InvalidInputError(f"expected an integer array, got {value!r}")
            return kind(tuple(value))
        if kind is HLPair:
            return HLPair(Permutation(tuple(value["sigma"])), tuple(value["k"]))
        if kind is AdmissiblePair:
            return AdmissiblePair(tuple(value["k"]), tuple(value["l"]))
        if kind is BivariatePolynomial:
            return BivariatePolynomial({(m["a"], m["b"]): m["c"] for m in value})
        if kind is ShapeDescriptor:
            return ShapeDescriptor(value["maj"], value["variant"], tuple(value["params"]))
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed {kind.__name__} JSON: {exc}") from None
    raise TypeError(f"cannot deserialize {kind.__name__}")


def dumps(obj) -> str:
    """Canonical compact JSON (no whitespace, keys in schema order)."""
    return json.dumps(to_json(obj), separators=(",", ":"))


def render(obj) -> str:
    """Canonical text form: ``[2,0,1]`` for sequences, JSON for pairs."""
    if isinstance(obj, (Permutation, ParkingFunction)):
        return "[" + ",".join(map(str, obj.values)) + "]"
    if isinstance(obj, BivariatePolynomial):
        return obj.to_text()
    return dumps(obj)


def parse(kind: type, text: str):
    """Inverse of :func:`render`."""
    if kind is BivariatePolynomial:
        return BivariatePolynomial.from_text(text)
    try:
        value = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"cannot parse {kind.__name__}: {exc}") from None
    return from_json(kind, value)
