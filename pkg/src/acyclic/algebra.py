"""Finite fields GF(p^d), subspaces of GF(q)^n in reduced row-echelon form,
and Gaussian binomial coefficients.

Field elements are integers ``0..q-1``: element ``c_0 + c_1 x + ... + c_{d-1} x^{d-1}``
is stored as ``c_0 + c_1 p + ... + c_{d-1} p^{d-1}``.  Element order is integer
order, so the prime subfield occupies indices ``0..p-1``.  Polynomials (moduli)
are little-endian coefficient lists, constant term first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import sympy


def _trim(poly):
    poly = list(poly)
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _polymod(a, m, p):
    """Remainder of ``a`` mod monic ``m`` over GF(p)."""
    a = _trim(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        a = _trim(a)
    return a


def _monic_polys(p, degree):
    for lower in itertools.product(range(p), repeat=degree):
        yield list(lower) + [1]


def is_irreducible(poly, p) -> bool:
    """Trial division by every monic polynomial of degree up to deg/2."""
    poly = _trim([c % p for c in poly])
    d = len(poly) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    for deg in range(1, d // 2 + 1):
        for cand in _monic_polys(p, deg):
            if not _polymod(poly, cand, p):
                return False
    return True


def smallest_irreducible(p, d):
    """Monic irreducible of degree d whose lower coefficients, read as a
    base-p integer (constant term least significant), are smallest."""
    if d == 1:
        return [0, 1]
    for code in range(p**d):
        lower = [(code // p**i) % p for i in range(d)]
        cand = lower + [1]
        if is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")


def format_poly(coeffs, var="x") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


class FiniteField:
    """GF(p^d) with an explicit modulus; arithmetic on integer element codes.

    >>> F = FiniteField(3, 2, [1, 0, 1])
    >>> x = F.element([0, 1])
    >>> F.mul(x, x)
    2
    """

    def __init__(self, p: int, d: int = 1, modulus=None):
        if not sympy.isprime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if d < 1:
            raise ValueError("extension degree must be at least 1")
        if modulus is None:
            modulus = smallest_irreducible(p, d)
        modulus = [int(c) % p for c in modulus]
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {d}")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {format_poly(modulus)} is reducible over GF({p})")
        self.p, self.d, self.modulus = p, d, tuple(modulus)
        self.q = p**d
        q = self.q
        powers = p ** np.arange(d)
        self.digits = (np.arange(q)[:, None] // powers[None, :]) % p
        self._powers = powers
        self._build_log_tables()

    def __repr__(self):
        return f"FiniteField(p={self.p}, d={self.d}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.d, self.modulus) == (
            other.p,
            other.d,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.d, self.modulus))

    def __len__(self):
        return self.q

    # -- construction helpers -------------------------------------------------

    def _polymul_code(self, a: int, b: int) -> int:
        p, d = self.p, self.d
        da, db = self.digits[a], self.digits[b]
        prod = [0] * (2 * d - 1)
        for i in range(d):
            if da[i]:
                for j in range(d):
                    prod[i + j] += int(da[i]) * int(db[j])
        rem = _polymod([c % p for c in prod], self.modulus, p)
        return self.encode(rem)

    def _build_log_tables(self):
        q = self.q
        order = q - 1
        exp = [1]
        for g in range(2 if q > 2 else 1, q):
            seq = [1]
            cur = g
            while cur != 1 and len(seq) < order:
                seq.append(cur)
                cur = self._polymul_code(cur, g)
            if len(seq) == order and cur == 1:
                exp = seq
                break
        self.generator = exp[1] if order > 1 else 1
        self.exp = np.array(exp + exp, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        log[np.array(exp)] = np.arange(order)
        self.log = log

    # -- element encoding -----------------------------------------------------

    def encode(self, coeffs) -> int:
        coeffs = list(coeffs) + [0] * (self.d - len(coeffs))
        if len(coeffs) > self.d:
            raise ValueError("too many coefficients for this field")
        return int(sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs)))

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.digits[a])

    def element(self, coeffs) -> int:
        return self.encode(coeffs)

    def wrap(self, a) -> "FieldElement":
        if isinstance(a, FieldElement):
            return a
        if isinstance(a, int):
            return FieldElement(self, a % self.q if self.d == 1 else self._check(a))
        return FieldElement(self, self.encode(a))

    def _check(self, a):
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element code of GF({self.q})")
        return a

    def label(self, a: int) -> str:
        return format_poly(self.coeffs(a))

    @cached_property
    def labels(self) -> list[str]:
        return [self.label(a) for a in range(self.q)]

    # -- arithmetic on codes --------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(((self.digits[a] + self.digits[b]) % self.p) @ self._powers)

    def neg(self, a: int) -> int:
        return int(((-self.digits[a]) % self.p) @ self._powers)

    def sub(self, a: int, b: int) -> int:
        return int(((self.digits[a] - self.digits[b]) % self.p) @ self._powers)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return int(self.exp[(-self.log[a]) % (self.q - 1)])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        return int(self.exp[(self.log[a] * e) % (self.q - 1)])

    @cached_property
    def add_table(self) -> np.ndarray:
        dig = self.digits
        return ((dig[:, None, :] + dig[None, :, :]) % self.p) @ self._powers

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.q
        table = np.zeros((q, q), dtype=np.int64)
        la = self.log[1:]
        table[1:, 1:] = self.exp[(la[:, None] + la[None, :]) % (q - 1)]
        return table

    @cached_property
    def neg_table(self) -> np.ndarray:
        return ((-self.digits) % self.p) @ self._powers

    def difference_codes(self, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
        """Codes of ``rows[i] - cols[j]`` as a ``len(rows) x len(cols)`` array."""
        diff = (self.digits[rows][:, None, :] - self.digits[cols][None, :, :]) % self.p
        return diff @ self._powers

    def frobenius_fixed(self, r: int) -> list[int]:
        """Elements with ``a^r == a``; for ``r`` a power of p this is a subfield."""
        return [a for a in range(self.q) if self.pow(a, r) == a]


def field_make(p: int, d: int = 1, modulus=None) -> FiniteField:
    return FiniteField(p, d, modulus)


@dataclass(frozen=True)
class FieldElement:
    field: FiniteField = field(repr=False)
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements from different fields")
            return other.code
        return self.field.wrap(other).code

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.code))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.code))

    def __truediv__(self, other):
        return self * FieldElement(self.field, self._other(other)).inverse()

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def __lt__(self, other):
        return self.code < other.code

    def __str__(self):
        return self.field.label(self.code)


def field_arith(F: FiniteField, op: str, *operands):
    """Dispatch ``add|sub|mul|inv|pow`` on element codes."""
    if op == "add":
        return F.add(*operands)
    if op == "sub":
        return F.sub(*operands)
    if op == "mul":
        return F.mul(*operands)
    if op == "inv":
        return F.inv(*operands)
    if op == "pow":
        return F.pow(*operands)
    raise ValueError(f"unknown field operation {op!r}")


def quadratic_residues(F: FiniteField) -> frozenset[int]:
    """Nonzero squares of F."""
    if F.p == 2:
        raise ValueError("quadratic residues are only used in odd characteristic")
    return frozenset(F.mul(a, a) for a in range(1, F.q))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if not 0 <= k <= n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


@dataclass(frozen=True)
class Subspace:
    """Row space of ``basis`` (RREF rows over ``field``) inside GF(q)^n."""

    basis: tuple[tuple[int, ...], ...]
    n: int
    field: FiniteField = field(repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[tuple[int, ...]]:
        """All q^k vectors of the subspace (including zero)."""
        F = self.field
        out = []
        for coeffs in itertools.product(range(F.q), repeat=self.dim):
            v = [0] * self.n
            for c, row in zip(coeffs, self.basis):
                if c:
                    for j, x in enumerate(row):
                        if x:
                            v[j] = F.add(v[j], F.mul(c, x))
            out.append(tuple(v))
        return out

    def label(self) -> str:
        return "[" + ";".join(",".join(self.field.label(x) for x in row) for row in self.basis) + "]"


def rank(rows, F: FiniteField) -> int:
    """Rank of a matrix over F (list of rows of element codes)."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def subspaces(n: int, k: int, F: FiniteField) -> list[Subspace]:
    """Every k-subspace of F^n as an RREF basis.

    Order: pivot-column tuples lexicographically, then the free entries in
    ``itertools.product`` order over element codes.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    out = []
    for pivots in itertools.combinations(range(n), k):
        pivot_set = set(pivots)
        free = [
            (i, j)
            for i, pc in enumerate(pivots)
            for j in range(pc + 1, n)
            if j not in pivot_set
        ]
        for values in itertools.product(range(F.q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), val in zip(free, values):
                rows[i][j] = val
            out.append(Subspace(tuple(tuple(r) for r in rows), n, F))
    return out


def subspace_meet_trivial(a: Subspace, b: Subspace) -> bool:
    if a.n != b.n or a.field != b.field:
        raise ValueError("subspaces live in different ambient spaces")
    return rank(a.basis + b.basis, a.field) == a.dim + b.dim
