"""Exact matrix and quaternion images of words over the binary group alphabet.

``rho`` sends a, b to the integer matrices [[1,2],[0,1]] and [[1,0],[2,1]];
a word pair becomes the 4x4 block matrix rho(s) (+) rho(t).  ``xi`` sends
a, b to the unit quaternions 3/5 + 4/5 i and 3/5 + 4/5 j.  Entries are Python
ints and ``fractions.Fraction`` throughout.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, NonUnitRotor, UnknownLetter
from .freegroup import GroupWord
from .icp import IcpInstance, TaggedIcpInstance, WordPair

__all__ = [
    "IntMatrix",
    "IntMatrix2",
    "IntMatrix4",
    "RationalQuaternion",
    "RHO",
    "XI",
    "rho_word",
    "direct_sum",
    "embed_icp_as_matrices",
    "search_matrix_identity_bounded",
    "find_diagonal_bounded",
    "xi_word",
    "rotate_point",
    "embed_icp_as_rotations",
    "format_matrix",
    "format_quaternion",
]


@dataclass(frozen=True, eq=False)
class IntMatrix:
    """Square matrix of arbitrary-precision integers, stored row-major.

    Equality and hashing look at the entries only, so a 2x2 ``IntMatrix2``
    equals a plain ``IntMatrix`` with the same rows.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DomainError("matrix must be square")
        if any(type(x) is not int for r in rows for x in r):
            raise DomainError("matrix entries must be ints")
        object.__setattr__(self, "rows", rows)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    @property
    def size(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int):
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def __matmul__(self, other: IntMatrix):
        if self.size != other.size:
            raise DomainError("size mismatch")
        cols = list(zip(*other.rows))
        return type(self)(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def is_identity(self) -> bool:
        return self == self.identity(self.size)

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def det(self) -> int:
        # fraction-free Bareiss elimination; exact for integer input
        m = [list(r) for r in self.rows]
        n, sign, prev = self.size, 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def key(self) -> bytes:
        """Canonical serialization used for memoization."""
        return ";".join(",".join(map(str, r)) for r in self.rows).encode()

    def __str__(self):
        return format_matrix(self)


class IntMatrix2(IntMatrix):
    def __post_init__(self):
        super().__post_init__()
        if self.size != 2:
            raise DomainError("IntMatrix2 must be 2x2")


class IntMatrix4(IntMatrix):
    def __post_init__(self):
        super().__post_init__()
        if self.size != 4:
            raise DomainError("IntMatrix4 must be 4x4")


RHO = {
    ("a", False): IntMatrix2(((1, 2), (0, 1))),
    ("b", False): IntMatrix2(((1, 0), (2, 1))),
    ("a", True): IntMatrix2(((1, -2), (0, 1))),
    ("b", True): IntMatrix2(((1, 0), (-2, 1))),
}


def _check_binary(w: GroupWord) -> None:
    stray = w.bases() - {"a", "b"}
    if stray:
        raise UnknownLetter(f"letters {sorted(stray)} are not in the binary alphabet {{a, b}}")


def rho_word(w: GroupWord) -> IntMatrix2:
    _check_binary(w)
    out = IntMatrix2.identity(2)
    for x in w:
        out = out @ RHO[x]
    return out


def direct_sum(p: WordPair) -> IntMatrix4:
    top, bottom = rho_word(p[0]).rows, rho_word(p[1]).rows
    return IntMatrix4(
        (
            (top[0][0], top[0][1], 0, 0),
            (top[1][0], top[1][1], 0, 0),
            (0, 0, bottom[0][0], bottom[0][1]),
            (0, 0, bottom[1][0], bottom[1][1]),
        )
    )


def _pairs_of(inst) -> tuple[WordPair, ...]:
    if isinstance(inst, (IcpInstance, TaggedIcpInstance)):
        return inst.pairs
    return tuple(WordPair(*p) for p in inst)


def embed_icp_as_matrices(inst: IcpInstance) -> list[IntMatrix4]:
    return [direct_sum(p) for p in _pairs_of(inst)]


def _flat_mul(n: int):
    idx = [[(i * n + k, k * n + j) for k in range(n)] for i in range(n) for j in range(n)]

    def mul(x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(sum(x[p] * y[q] for p, q in cell) for cell in idx)

    return mul


def _product_search(gens: Sequence[IntMatrix], max_len: int, accept, stats):
    if max_len < 1:
        raise DomainError("max_len must be >= 1")
    if not gens:
        return None
    n = gens[0].size
    if any(g.size != n for g in gens):
        raise DomainError("generators differ in size")
    # flat row-major tuples in the inner loop; IntMatrix only at the boundary
    mul = _flat_mul(n)
    flat = [tuple(x for r in g.rows for x in r) for g in gens]
    wrap = lambda f: type(gens[0])(tuple(f[i * n:(i + 1) * n] for i in range(n)))
    root = tuple(x for r in IntMatrix.identity(n).rows for x in r)
    seen = {root}
    frontier = [(root, ())]
    explored = 0
    for depth in range(1, max_len + 1):
        nxt = []
        for m, path in frontier:
            for k, g in enumerate(flat, 1):
                explored += 1
                child = mul(m, g)
                if accept(child, n):
                    if stats is not None:
                        stats["states"] = explored
                    return path + (k,), wrap(child)
                if child in seen or depth == max_len:
                    continue
                seen.add(child)
                nxt.append((child, path + (k,)))
        frontier = nxt
    if stats is not None:
        stats["states"] = explored
    return None


def _flat_is_identity(f, n):
    return all(f[i * n + j] == (i == j) for i in range(n) for j in range(n))


def _flat_is_diagonal(f, n):
    return all(f[i * n + j] == 0 for i in range(n) for j in range(n) if i != j)


def search_matrix_identity_bounded(
    gens: Sequence[IntMatrix4], max_len: int, stats: dict | None = None
) -> tuple[int, ...] | None:
    """First product (length, lex order) equal to the identity, or None."""
    found = _product_search(gens, max_len, _flat_is_identity, stats)
    return None if found is None else found[0]


def find_diagonal_bounded(
    gens: Sequence[IntMatrix4], max_len: int, stats: dict | None = None
) -> tuple[tuple[int, ...], IntMatrix4] | None:
    """First product (length, lex order) that is a diagonal matrix, or None."""
    return _product_search(gens, max_len, _flat_is_diagonal, stats)


@dataclass(frozen=True)
class RationalQuaternion:
    w: Fraction
    x: Fraction = Fraction(0)
    y: Fraction = Fraction(0)
    z: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("w", "x", "y", "z"):
            value = getattr(self, name)
            if not isinstance(value, (int, Fraction)) or isinstance(value, bool):
                raise DomainError(f"quaternion component {name} must be int or Fraction, got {value!r}")
            object.__setattr__(self, name, Fraction(value))

    def __mul__(self, o: RationalQuaternion) -> RationalQuaternion:
        return RationalQuaternion(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )

    def conjugate(self) -> RationalQuaternion:
        return RationalQuaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self) -> Fraction:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def inverse(self) -> RationalQuaternion:
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        c = self.conjugate()
        return RationalQuaternion(c.w / n, c.x / n, c.y / n, c.z / n)

    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.w, self.x, self.y, self.z)

    def __str__(self):
        return format_quaternion(self)


ONE = RationalQuaternion(Fraction(1))

XI = {
    ("a", False): RationalQuaternion(Fraction(3, 5), Fraction(4, 5)),
    ("b", False): RationalQuaternion(Fraction(3, 5), Fraction(0), Fraction(4, 5)),
}
XI[("a", True)] = XI[("a", False)].conjugate()
XI[("b", True)] = XI[("b", False)].conjugate()


def xi_word(w: GroupWord) -> RationalQuaternion:
    _check_binary(w)
    out = ONE
    for x in w:
        out = out * XI[x]
    return out


def rotate_point(a: RationalQuaternion, b: RationalQuaternion, p: RationalQuaternion) -> RationalQuaternion:
    """The 4D rotation p -> a p b^-1 given by two unit quaternions."""
    for name, q in (("a", a), ("b", b)):
        if q.norm2() != 1:
            raise NonUnitRotor(f"rotor {name} has squared norm {q.norm2()}, not 1")
    return a * p * b.conjugate()


def embed_icp_as_rotations(inst: IcpInstance) -> list[tuple[RationalQuaternion, RationalQuaternion]]:
    return [(xi_word(p.s), xi_word(p.t)) for p in _pairs_of(inst)]


def format_matrix(m: IntMatrix) -> str:
    return "\n".join(" ".join(str(x) for x in r) for r in m.rows)


def format_quaternion(q: RationalQuaternion) -> str:
    return " ".join(f"{c.numerator}/{c.denominator}" for c in q.components())
