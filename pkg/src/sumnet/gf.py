"""Prime-field arithmetic and the small amount of linear algebra the codes need.

Field elements are stored as canonical ints in ``[0, p)`` throughout the
library; :class:`FieldElement` wraps one when an explicit value type is
wanted (public API, tests, reports).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import DivisionByZero, FieldMismatch, InvalidAlpha, InvalidField

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """GF(p) for a prime p."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise InvalidField(f"{self.p!r} is not a prime")

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value % self.p, self)

    def __iter__(self):
        return (FieldElement(v, self) for v in range(self.p))

    def __len__(self) -> int:
        return self.p

    def __str__(self) -> str:
        return f"GF({self.p})"

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    # int-level helpers used on hot paths
    def inv_int(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self}")
        return pow(a, self.p - 2, self.p)

    def neg_int(self, a: int) -> int:
        return (-a) % self.p

    def signs(self) -> tuple[int, ...]:
        """The distinct values of +1 and -1 (a single value in GF(2))."""
        return (1,) if self.p == 2 else (1, self.p - 1)


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: PrimeField

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.field.p:
            raise ValueError(f"{self.value} is not a canonical element of {self.field}")

    def _coerce(self, other: "FieldElement | int") -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented  # type: ignore[return-value]

    def _new(self, value: int) -> "FieldElement":
        return FieldElement(value % self.field.p, self.field)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value * o)

    __rmul__ = __mul__

    def __neg__(self) -> "FieldElement":
        return self._new(-self.value)

    def inverse(self) -> "FieldElement":
        return self._new(self.field.inv_int(self.value))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._new(self.value * self.field.inv_int(o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._new(o * self.field.inv_int(self.value))

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return self._new(pow(self.value, exponent, self.field.p))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.field.p))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.field.p})"


def _check_pair(a: FieldElement, b: FieldElement) -> None:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_pair(a, b)
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_pair(a, b)
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_pair(a, b)
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def default_alpha(field: PrimeField) -> FieldElement:
    """Smallest usable alpha, i.e. 2."""
    if field.p < 3:
        raise InvalidAlpha("GF(2) has no element outside {0, 1}")
    return field(2)


def theorem2_constants(field: PrimeField, alpha: FieldElement | int) -> tuple[FieldElement, FieldElement]:
    """Return ``(beta, gamma)`` with beta = 1/(1 - alpha) and gamma = 1 - 1/alpha.

    With these, ``x1 + a*x3``, ``x3 + b*x2`` and ``x2 + g*x1`` pairwise
    combine to ``x1 + x2 + x3``.
    """
    if field.p < 3:
        raise InvalidAlpha("GF(2) has no element outside {0, 1}")
    if isinstance(alpha, FieldElement):
        if alpha.field != field:
            raise FieldMismatch(f"alpha lives in {alpha.field}, not {field}")
    else:
        alpha = field(alpha)
    if alpha.value in (0, 1):
        raise InvalidAlpha(f"alpha must avoid 0 and 1, got {alpha.value}")
    beta = (field.one - alpha).inverse()
    gamma = field.one - alpha.inverse()
    return beta, gamma


# ---------------------------------------------------------------------------
# linear algebra over GF(p) on int tuples

def rref(rows: Iterable[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[v % p for v in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        iv = pow(m[r][c], p - 2, p)
        m[r] = [(v * iv) % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Iterable[Sequence[int]], p: int) -> int:
    return len(rref(rows, p)[0])


def row_basis(rows: Iterable[Sequence[int]], p: int) -> Matrix:
    return tuple(tuple(r) for r in rref(rows, p)[0])


def solve_combination(rows: Sequence[Sequence[int]], target: Sequence[int], p: int) -> Vector | None:
    """Find c with sum_i c[i] * rows[i] == target, or None.

    Free variables are set to zero, so the answer is deterministic.
    """
    n = len(rows)
    width = len(target)
    # augmented system: columns are the rows, one equation per coordinate
    aug = [[rows[i][j] % p for i in range(n)] + [target[j] % p] for j in range(width)]
    red, pivots = rref(aug, p)
    if n in pivots:
        return None
    sol = [0] * n
    for row, c in zip(red, pivots):
        sol[c] = row[n]
    return tuple(sol)


def in_row_space(rows: Sequence[Sequence[int]], target: Sequence[int], p: int) -> bool:
    if not any(v % p for v in target):
        return True
    if not rows:
        return False
    return solve_combination(rows, target, p) is not None


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], p: int) -> Matrix:
    if not a:
        return ()
    cols = list(zip(*b)) if b else []
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % p for col in cols) for row in a)


def mat_add(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], p: int) -> Matrix:
    return tuple(tuple((x + y) % p for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((0,) * cols for _ in range(rows))


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@lru_cache(maxsize=None)
def echelon_coefficients(d: int, n: int, p: int) -> tuple[Matrix, ...]:
    """All n x d matrices over GF(p) in reduced row echelon form with rank n.

    Each one picks out a distinct n-dimensional subspace of a d-dimensional
    space (relative to a fixed basis), so iterating them enumerates every
    such subspace exactly once.
    """
    if n > d:
        return ()
    out: list[Matrix] = []
    for pivots in combinations(range(d), n):
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, d) if c not in pivots]
        for values in product(range(p), repeat=len(free)):
            m = [[0] * d for _ in range(n)]
            for r, pc in enumerate(pivots):
                m[r][pc] = 1
            for (r, c), v in zip(free, values):
                m[r][c] = v
            out.append(tuple(tuple(row) for row in m))
    return tuple(out)
