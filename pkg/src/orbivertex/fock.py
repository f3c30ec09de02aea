"""Fock space of colored partitions as the basic gl(n+1)^ representation.

States are partitions (wedge basis).  A position ``p`` of the Maya diagram
(``p_i = lambda_i - i``) is written ``p = (n+1) r + a - 1`` with gl index
``a`` in ``1..n+1``; the vacuum is ``r < 0`` for every ``a``.  Index ``a``
is the quotient slot ``a mod (n+1)`` of the partitions module.
``E_ab(k)`` moves a bead from ``(b, r + k)`` to ``(a, r)``, so ``k < 0``
creates.

Everything at the level of Hilbert schemes is specialized to the
antidiagonal torus: ``s1 = s``, ``s2 = -s``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .partitions import (
    dimension,
    format_partition,
    from_quotient,
    normalize,
    partition_tuples,
    partitions_of,
    quotient_core,
    z_factor,
)
from .ring import RFunc, rf_eq, rf_sum

S = RFunc.var("s")
ZERO = RFunc.zero()
ONE = RFunc.one()


# -- vectors ------------------------------------------------------------------

class FockVector:
    """Sparse combination of wedge states (partitions) with RFunc coefficients."""

    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs=None):
        self.n = n
        self.c = {}
        if coeffs:
            for lam, v in coeffs.items():
                v = RFunc.of(v)
                if not v.is_zero():
                    self.c[normalize(lam)] = v

    @classmethod
    def vacuum(cls, n: int) -> "FockVector":
        return cls(n, {(): 1})

    @classmethod
    def basis(cls, n: int, lam) -> "FockVector":
        return cls(n, {normalize(lam): 1})

    def is_zero(self) -> bool:
        return not self.c

    def coeff(self, lam) -> RFunc:
        return self.c.get(normalize(lam), ZERO)

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self.c)
        for lam, v in other.c.items():
            out[lam] = out[lam] + v if lam in out else v
        return FockVector(self.n, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, r) -> "FockVector":
        r = RFunc.of(r)
        if r.is_zero():
            return FockVector(self.n)
        return FockVector(self.n, {lam: v * r for lam, v in self.c.items()})

    def equals(self, other: "FockVector") -> bool:
        keys = set(self.c) | set(other.c)
        return all(rf_eq(self.coeff(k), other.coeff(k)) for k in keys)

    def level(self) -> int:
        sizes = {sum(lam) for lam in self.c}
        if len(sizes) > 1:
            raise ValueError("vector mixes levels")
        size = sizes.pop() if sizes else 0
        return size // (self.n + 1)

    def to_column(self, basis) -> list:
        index = {lam: i for i, lam in enumerate(basis)}
        col = [ZERO] * len(basis)
        for lam, v in self.c.items():
            if lam not in index:
                raise ValueError(f"state {lam} is outside the basis")
            col[index[lam]] = v
        return col

    @classmethod
    def from_column(cls, n, basis, col) -> "FockVector":
        return cls(n, {lam: v for lam, v in zip(basis, col)})

    def __repr__(self):
        terms = [f"({v})|{format_partition(lam) or '0'}>" for lam, v in sorted(self.c.items())]
        return " + ".join(terms) or "0"


@lru_cache(maxsize=None)
def level_basis(n: int, m: int) -> tuple:
    """Multi-regular partitions of size m(n+1), ordered by their quotients."""
    k = n + 1
    states = [from_quotient(quot, n).parts for quot in partition_tuples(m, k)]
    states.sort(key=lambda lam: (lam, ), reverse=True)
    return tuple(states)


# -- fermion bilinears ----------------------------------------------------

def _position(n: int, a: int, r: int) -> int:
    return (n + 1) * r + a - 1


def _beads(lam, floor: int) -> list:
    """Occupied positions above ``floor`` (everything at or below is full)."""
    depth = -floor
    padded = list(lam) + [0] * (depth - len(lam))
    return [padded[i - 1] - i for i in range(1, depth + 1) if padded[i - 1] - i > floor]


def _from_beads(occupied: set, floor: int):
    ordered = sorted(occupied, reverse=True)
    return normalize(p + i for i, p in enumerate(ordered, start=1))


def _sublattice_charge(occupied: set, floor: int, n: int, c: int) -> int:
    """Beads above the vacuum minus holes below it, on sublattice c."""
    k = n + 1
    charge = 0
    for p in range(floor + 1, max(occupied, default=floor) + 1):
        if (p + 1) % k != c:
            continue
        if p >= 0 and p in occupied:
            charge += 1
        elif p < 0 and p not in occupied:
            charge -= 1
    return charge


def _bilinear_state(n: int, a: int, b: int, k: int, lam) -> dict:
    """E_ab(k) on one wedge state, as {partition: integer coefficient}."""
    floor = -(len(lam) + abs(k) + 2) * (n + 2)
    occupied = set(_beads(lam, floor))
    if a == b and k == 0:
        charge = _sublattice_charge(occupied, floor, n, a % (n + 1))
        return {lam: charge} if charge else {}
    top = max(occupied, default=floor)
    out = {}
    r_lo = (floor - (n + 1)) // (n + 1) - abs(k) - 1
    r_hi = (top + (n + 1)) // (n + 1) + abs(k) + 1
    for r in range(r_lo, r_hi + 1):
        src = _position(n, b, r + k)
        dst = _position(n, a, r)
        src_full = src in occupied or src <= floor
        dst_full = dst in occupied or dst <= floor
        if not src_full or dst_full:
            continue
        if src <= floor or dst <= floor:
            raise AssertionError("bead move reaches below the window")
        lo, hi = min(src, dst), max(src, dst)
        between = sum(1 for p in occupied if lo < p < hi)
        new = set(occupied)
        new.discard(src)
        new.add(dst)
        state = _from_beads(new, floor)
        out[state] = out.get(state, 0) + (-1 if between % 2 else 1)
    return {s: v for s, v in out.items() if v}


def _check_index(n, a):
    if not 1 <= a <= n + 1:
        raise ValueError(f"color index {a} outside 1..{n + 1}")


def bilinear_EE(a: int, b: int, k: int, vec: FockVector) -> FockVector:
    """Action of t^k (x) e_ab, normally ordered."""
    n = vec.n
    _check_index(n, a)
    _check_index(n, b)
    acc = {}
    for lam, v in vec.c.items():
        for state, c in _cached_bilinear(n, a, b, k, lam).items():
            acc.setdefault(state, []).append(v * c)
    return FockVector(n, {s: rf_sum(vs) for s, vs in acc.items()})


@lru_cache(maxsize=None)
def _cached_bilinear(n, a, b, k, lam):
    return _bilinear_state(n, a, b, k, lam)


def identity_current(k: int, vec: FockVector) -> FockVector:
    out = FockVector(vec.n)
    for a in range(1, vec.n + 2):
        out = out + bilinear_EE(a, a, k, vec)
    return out


# -- classes and Nakajima operators -----------------------------------------

CLASS_SYMBOLS = ("1", "pt", "E", "omega", "p")


@dataclass(frozen=True)
class NakajimaLabel:
    k: int
    symbol: str
    index: int | None = None

    def __post_init__(self):
        if self.k == 0:
            raise ValueError("Nakajima operators need k != 0")
        if self.symbol not in CLASS_SYMBOLS:
            raise ValueError(f"unknown class {self.symbol!r}")

    def text(self) -> str:
        cls = self.symbol if self.index is None else f"{self.symbol}{self.index}"
        return f"p_{self.k}({cls})"


def cartan_inverse(n: int, i: int, j: int) -> Fraction:
    return Fraction(min(i, j) * (n + 1 - max(i, j)), n + 1)


def cartan(i: int, j: int) -> int:
    return 2 if i == j else (-1 if abs(i - j) == 1 else 0)


# sign relating the point classes of the resolution to exceptional curves;
# fixed by ``calibrate_point_labels``
POINT_SIGN = -1


def point_omega_pairing(n: int, i: int, j: int, sign: int = POINT_SIGN) -> RFunc:
    """<omega_i, [p_j]>: restriction of omega_i to the j-th fixed point."""
    value = (n + 1 - i) if j <= i else -i
    return S * (sign * value)


def class_in_basis(n: int, symbol: str, index=None, sign: int = POINT_SIGN) -> dict:
    """Express a class as {"1": c, ("E", l): c_l} at s1 + s2 = 0."""
    if symbol == "1":
        return {"1": ONE}
    if symbol == "pt":
        return {"1": S * S * (-(n + 1))}
    if symbol == "E":
        _check_range(n, index)
        return {("E", index): ONE}
    if symbol == "omega":
        _check_range(n, index)
        return {("E", l): RFunc.const_of(-cartan_inverse(n, index, l)) for l in range(1, n + 1)}
    if symbol == "p":
        if not 1 <= index <= n + 1:
            raise ValueError("point index out of range")
        out = {"1": S * S * (-(n + 1))}
        for i in range(1, n + 1):
            out[("E", i)] = point_omega_pairing(n, i, index, sign)
        return out
    raise ValueError(symbol)


def _check_range(n, i):
    if i is None or not 1 <= i <= n:
        raise ValueError(f"class index {i} outside 1..{n}")


def current_coefficients(n: int, label: NakajimaLabel, sign: int = POINT_SIGN) -> dict:
    """p_k(gamma) = sum_a coeff[a] * e_aa(k)."""
    parts = class_in_basis(n, label.symbol, label.index, sign)
    k1 = n + 1
    coeffs = {a: ZERO for a in range(1, k1 + 1)}
    for key, c in parts.items():
        if key == "1":
            # p_{-k}(1) = Id(-k), p_k(1) = Id(k) / ((n+1)^2 s^2)
            unit = ONE if label.k < 0 else (S * S * (k1 * k1)).inverse()
            for a in coeffs:
                coeffs[a] = coeffs[a] + c * unit
        else:
            l = key[1]
            coeffs[l] = coeffs[l] + c
            coeffs[l + 1] = coeffs[l + 1] - c
    return {a: v for a, v in coeffs.items() if not v.is_zero()}


def nakajima_apply(label: NakajimaLabel, vec: FockVector, sign: int = POINT_SIGN) -> FockVector:
    out = FockVector(vec.n)
    for a, c in current_coefficients(vec.n, label, sign).items():
        out = out + bilinear_EE(a, a, label.k, vec).scale(c)
    return out


def class_pairing(n: int, left: tuple, right: tuple, sign: int = POINT_SIGN) -> RFunc:
    """Geometric pairing of two classes given as (symbol, index)."""
    x = class_in_basis(n, *left, sign=sign)
    y = class_in_basis(n, *right, sign=sign)
    total = ZERO
    unit = (S * S * (n + 1)).inverse() * -1
    for kx, cx in x.items():
        for ky, cy in y.items():
            if kx == "1" and ky == "1":
                total = total + cx * cy * unit
            elif kx != "1" and ky != "1":
                total = total + cx * cy * (-cartan(kx[1], ky[1]))
    return total


def nakajima_basis_vector(mu, classes, n: int, normalize_z: bool = True) -> FockVector:
    """p_{-mu_1}(gamma_1) ... p_{-mu_l}(gamma_l) |0>, divided by z(mu) if asked.

    ``classes`` is a list of (symbol, index) pairs, one per part.
    """
    mu = tuple(mu)
    if len(classes) != len(mu):
        raise ValueError("one class per part")
    vec = FockVector.vacuum(n)
    for part, (symbol, index) in zip(reversed(mu), reversed(list(classes))):
        vec = nakajima_apply(NakajimaLabel(-part, symbol, index), vec)
    if normalize_z:
        vec = vec.scale(Fraction(1, z_factor(normalize(mu))))
    return vec


def fundamental_class(n: int, m: int) -> FockVector:
    """p_{-1}(1)^m |0> / m!."""
    return nakajima_basis_vector((1,) * m, [("1", None)] * m, n, normalize_z=True)


# -- boson monomials and the pairing -----------------------------------------

@lru_cache(maxsize=None)
def boson_monomials(n: int, m: int) -> tuple:
    """Multisets of (a, k) with sum of k equal to m, as sorted tuples."""
    slots = [(a, k) for k in range(1, m + 1) for a in range(1, n + 2)]
    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(tuple(sorted(acc)))
            return
        for idx in range(start, len(slots)):
            a, k = slots[idx]
            if k <= remaining:
                acc.append((a, k))
                rec(idx, remaining - k, acc)
                acc.pop()

    rec(0, m, [])
    return tuple(out)


def boson_to_wedge(n: int, mono) -> FockVector:
    vec = FockVector.vacuum(n)
    for a, k in mono:
        vec = bilinear_EE(a, a, -k, vec)
    return vec


@lru_cache(maxsize=None)
def _boson_matrix(n: int, m: int):
    """Integer matrix W with boson monomial i = sum_j W[i][j] wedge_j, and its inverse."""
    basis = level_basis(n, m)
    monos = boson_monomials(n, m)
    rows = []
    for mono in monos:
        col = boson_to_wedge(n, mono).to_column(basis)
        rows.append([Fraction(x.const_value()) for x in col])
    return rows, _invert(rows)


def _invert(rows):
    size = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(size)] for i, r in enumerate(rows)]
    for col in range(size):
        piv = next(r for r in range(col, size) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [r[size:] for r in aug]


def creator_adjoint_matrix(n: int) -> list:
    """H with e_a(-k)^* = (-1)^k sum_b H[a][b] e_b(k) on the pairing."""
    k1 = n + 1
    scalar = (S * S * (k1 ** 3)).inverse()
    out = []
    for a in range(k1):
        row = []
        for b in range(k1):
            row.append(RFunc.const_of(Fraction(int(a == b)) - Fraction(1, k1)) + scalar)
        out.append(row)
    return out


def _boson_pairing(n, left, right, h):
    if sorted(k for _, k in left) != sorted(k for _, k in right):
        return ZERO
    total = []
    for perm in set(itertools.permutations(range(len(right)))):
        term = ONE
        for (a, k), j in zip(left, perm):
            b, l = right[j]
            if k != l:
                term = None
                break
            term = term * (h[a - 1][b - 1] * ((-1) ** k * k))
        if term is not None:
            total.append(term)
    # permutations over repeated factors are counted as distinct matchings
    return rf_sum(total)


@lru_cache(maxsize=None)
def wedge_gram(n: int, m: int) -> tuple:
    """Gram matrix of the pairing on level_basis(n, m)."""
    monos = boson_monomials(n, m)
    h = creator_adjoint_matrix(n)
    g_mono = [[_boson_pairing(n, x, y, h) for y in monos] for x in monos]
    _, winv = _boson_matrix(n, m)
    size = len(monos)
    # G_wedge = W^{-1} G_mono W^{-T}
    tmp = [[rf_sum(g_mono[i][j] * winv[l][i] for i in range(size) if winv[l][i]) for j in range(size)]
           for l in range(size)]
    out = [[rf_sum(tmp[l][j] * winv[r][j] for j in range(size) if winv[r][j]) for r in range(size)]
           for l in range(size)]
    return tuple(tuple(row) for row in out)


def poincare_pairing(u: FockVector, v: FockVector) -> RFunc:
    if u.is_zero() or v.is_zero():
        return ZERO
    m = u.level()
    if v.level() != m:
        raise ValueError("pairing of vectors at different levels")
    basis = level_basis(u.n, m)
    g = wedge_gram(u.n, m)
    x, y = u.to_column(basis), v.to_column(basis)
    terms = []
    for i, xi in enumerate(x):
        if xi.is_zero():
            continue
        for j, yj in enumerate(y):
            if not yj.is_zero() and not g[i][j].is_zero():
                terms.append(xi * g[i][j] * yj)
    return rf_sum(terms)


# -- Schur functions and fixed points ---------------------------------------

@lru_cache(maxsize=None)
def mn_character(lam: tuple, rho: tuple) -> int:
    """Symmetric group character chi^lam(rho) by rim-hook removal on beta-numbers."""
    if sum(lam) != sum(rho):
        raise ValueError("size mismatch")
    if not rho:
        return 1
    r, rest = rho[0], rho[1:]
    length = len(lam)
    beta = [lam[i] + length - 1 - i for i in range(length)]
    occupied = set(beta)
    total = 0
    for b in beta:
        target = b - r
        if target < 0 or target in occupied:
            continue
        between = sum(1 for x in beta if target < x < b)
        new = sorted((target if x == b else x for x in beta), reverse=True)
        smaller = normalize(new[i] - (length - 1 - i) for i in range(length))
        total += (-1) ** between * mn_character(smaller, rest)
    return total


def schur_power_expansion(lam: tuple) -> dict:
    """s_lam = sum_rho chi^lam(rho)/z(rho) p_rho."""
    out = {}
    for rho in partitions_of(sum(lam)):
        chi = mn_character(tuple(lam), rho)
        if chi:
            out[rho] = Fraction(chi, z_factor(rho))
    return out


def slot_weight(n: int) -> RFunc:
    """w^+ at s1 = s, s2 = -s."""
    return S * (-(n + 1))


def slot_point(n: int, slot: int) -> int:
    """Point index j in 1..n+1 attached to quotient slot ``slot``."""
    return slot if slot else n + 1


def _boson_add(acc: dict, mono, coeff):
    key = tuple(sorted(mono))
    acc[key] = acc[key] + coeff if key in acc else coeff


def _creator_combination(n, k, point, sign):
    """p_{-k}([p_point]) as {a: coeff} over e_aa(-k)."""
    return current_coefficients(n, NakajimaLabel(-k, "p", point), sign)


def fixed_point_boson(state, n: int, sign: int = POINT_SIGN, factorial_norm: bool = True) -> dict:
    """Fixed-point class as a polynomial in the commuting creators e_aa(-k)."""
    core, quot = quotient_core(state, n)
    if core:
        raise ValueError("fixed points are multi-regular partitions")
    w = slot_weight(n)
    poly = {(): ONE}
    for slot, lam in enumerate(quot):
        if not lam:
            continue
        size = sum(lam)
        norm = Fraction(factorial(size) if factorial_norm else size, dimension(lam))
        scale = ((-w) ** size) * norm
        slot_poly = {}
        point = slot_point(n, slot)
        for rho, coeff in schur_power_expansion(lam).items():
            # each p_k becomes p_{-k}([p_point]) / w
            term = {(): scale * coeff * (w ** (-len(rho)))}
            for part in rho:
                comb = _creator_combination(n, part, point, sign)
                nxt = {}
                for mono, c in term.items():
                    for a, ca in comb.items():
                        _boson_add(nxt, mono + ((a, part),), c * ca)
                term = nxt
            for mono, c in term.items():
                _boson_add(slot_poly, mono, c)
        nxt = {}
        for m1, c1 in poly.items():
            for m2, c2 in slot_poly.items():
                _boson_add(nxt, m1 + m2, c1 * c2)
        poly = nxt
    return {m: c for m, c in poly.items() if not c.is_zero()}


def boson_vector(n: int, m: int, poly: dict) -> FockVector:
    basis = level_basis(n, m)
    rows, _ = _boson_matrix(n, m)
    index = {mono: i for i, mono in enumerate(boson_monomials(n, m))}
    col = [[] for _ in basis]
    for mono, c in poly.items():
        row = rows[index[mono]]
        for j, w in enumerate(row):
            if w:
                col[j].append(c * w)
    return FockVector.from_column(n, basis, [rf_sum(x) for x in col])


def fixed_point_vector(state, n: int, sign: int = POINT_SIGN, factorial_norm: bool = True) -> FockVector:
    state = normalize(state)
    m = sum(state) // (n + 1)
    return boson_vector(n, m, fixed_point_boson(state, n, sign, factorial_norm))


def fixed_point_norm(state, n: int) -> RFunc:
    """Localization norm prod over slots of (-w^2)^|lam| (|lam|!/dim lam)^2."""
    _, quot = quotient_core(state, n)
    w = slot_weight(n)
    out = ONE
    for lam in quot:
        if lam:
            size = sum(lam)
            out = out * ((w * w * -1) ** size) * (Fraction(factorial(size), dimension(lam)) ** 2)
    return out


# -- divisors -------------------------------------------------------------

DIVISORS = ("V", "D")


def c1_eigenvalue(state, n: int, color: int) -> RFunc:
    """Weight of c1(V_color) at a fixed point: sum of (col - row) s over its boxes."""
    k = n + 1
    total = sum(col - row for row, length in enumerate(state) for col in range(length)
                if (col - row) % k == color)
    return S * total


def divisor_eigenvalue(state, n: int, divisor: tuple) -> RFunc:
    """``divisor`` is ("V", i) for c1(V_i) or ("D", l) for D_l."""
    kind, idx = divisor
    if not 0 <= idx <= n:
        raise ValueError("divisor index out of range")
    if kind == "V" or idx == 0:
        return c1_eigenvalue(state, n, idx)
    if kind == "D":
        return c1_eigenvalue(state, n, idx) - c1_eigenvalue(state, n, 0)
    raise ValueError(kind)


def parse_divisor(text: str) -> tuple:
    text = text.strip()
    if text.startswith("D"):
        return ("D", int(text[1:]))
    if text.startswith("V"):
        return ("V", int(text[1:]))
    raise ValueError(f"unknown divisor {text!r}")


class OpMatrix:
    """Square matrix of RFunc acting on columns in a fixed basis."""

    def __init__(self, basis, rows):
        self.basis = tuple(basis)
        self.rows = [list(r) for r in rows]

    @classmethod
    def zero(cls, basis):
        size = len(basis)
        return cls(basis, [[ZERO] * size for _ in range(size)])

    @classmethod
    def from_operator(cls, n, basis, op):
        """Columns are the images of the basis states."""
        size = len(basis)
        rows = [[ZERO] * size for _ in range(size)]
        for j, lam in enumerate(basis):
            col = op(FockVector.basis(n, lam)).to_column(basis)
            for i in range(size):
                rows[i][j] = col[i]
        return cls(basis, rows)

    def __len__(self):
        return len(self.basis)

    def __add__(self, other):
        return OpMatrix(self.basis, [[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return OpMatrix(self.basis, [[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c):
        c = RFunc.of(c)
        return OpMatrix(self.basis, [[x * c for x in r] for r in self.rows])

    def __matmul__(self, other):
        size = len(self.basis)
        out = [[rf_sum(self.rows[i][l] * other.rows[l][j] for l in range(size)
                       if not self.rows[i][l].is_zero() and not other.rows[l][j].is_zero())
                for j in range(size)] for i in range(size)]
        return OpMatrix(self.basis, out)

    def transpose(self):
        return OpMatrix(self.basis, [list(c) for c in zip(*self.rows)])

    def apply(self, vec: FockVector) -> FockVector:
        col = vec.to_column(self.basis)
        out = [rf_sum(r[j] * col[j] for j in range(len(col)) if not col[j].is_zero() and not r[j].is_zero())
               for r in self.rows]
        return FockVector.from_column(vec.n, self.basis, out)

    def equals(self, other) -> bool:
        return all(rf_eq(x, y) for r, s in zip(self.rows, other.rows) for x, y in zip(r, s))

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    def is_scalar(self):
        """The scalar if this is c * identity, else None."""
        size = len(self.basis)
        if not size:
            return ZERO
        c = self.rows[0][0]
        for i in range(size):
            for j in range(size):
                want = c if i == j else ZERO
                if not rf_eq(self.rows[i][j], want):
                    return None
        return c

    def is_symmetric(self) -> bool:
        return self.equals(self.transpose())

    def map(self, fn):
        return OpMatrix(self.basis, [[fn(x) for x in r] for r in self.rows])

    def to_json(self, n: int):
        k = n + 1
        return {"basis": [f"{format_partition(lam) or '0'} mod {k}" for lam in self.basis],
                "entries": [[x.canonical() for x in r] for r in self.rows]}


def gram_matrix(n: int, m: int) -> OpMatrix:
    return OpMatrix(level_basis(n, m), wedge_gram(n, m))


def classical_divisor_matrix(divisor: tuple, n: int, m: int) -> OpMatrix:
    """Cup product with a divisor, in the wedge basis.

    Built as F diag(eigenvalue / norm) F^T G, using orthogonality of the
    fixed-point vectors F instead of a matrix inverse.
    """
    basis = level_basis(n, m)
    size = len(basis)
    if m == 0:
        return OpMatrix.zero(basis)
    cols = [fixed_point_vector(lam, n).to_column(basis) for lam in basis]
    weights = [divisor_eigenvalue(lam, n, divisor) / fixed_point_norm(lam, n) for lam in basis]
    g = wedge_gram(n, m)
    # F^T G
    ftg = [[rf_sum(cols[f][l] * g[l][j] for l in range(size)
                   if not cols[f][l].is_zero() and not g[l][j].is_zero()) for j in range(size)]
           for f in range(size)]
    rows = [[rf_sum(cols[f][i] * weights[f] * ftg[f][j] for f in range(size)
                    if not cols[f][i].is_zero() and not weights[f].is_zero() and not ftg[f][j].is_zero())
             for j in range(size)] for i in range(size)]
    return OpMatrix(basis, rows)


def divisor_class_vector(divisor: tuple, n: int, m: int) -> FockVector:
    """The divisor as a cohomology class, in Nakajima form.

    D_0 = 1/2 p_{-2}(1) p_{-1}(1)^{m-2}, D_l = p_{-1}(omega_l) p_{-1}(1)^{m-1},
    c1(V_0) = D_0 and c1(V_i) = D_0 + D_i; the powers of p_{-1}(1) carry the
    usual 1/(m-1)! resp. 1/(m-2)! so that the classes restrict correctly.
    """
    kind, idx = divisor
    if m == 0:
        return FockVector(n)

    def d0():
        if m < 2:
            return FockVector(n)
        vec = nakajima_basis_vector((2,) + (1,) * (m - 2), [("1", None)] * (m - 1), n, normalize_z=False)
        return vec.scale(Fraction(1, 2 * factorial(m - 2)))

    def dl(l):
        vec = nakajima_basis_vector((1,) * m, [("omega", l)] + [("1", None)] * (m - 1), n, normalize_z=False)
        return vec.scale(Fraction(1, factorial(m - 1)))

    if idx == 0:
        return d0()
    if kind == "D":
        return dl(idx)
    return d0() + dl(idx)


# -- calibration ------------------------------------------------------------

def hook_state(n: int, j: int):
    """The m=1 fixed point whose quotient has a single box in slot j mod (n+1)."""
    k = n + 1
    quot = [()] * k
    quot[j % k] = (1,)
    return from_quotient(tuple(quot), n).parts


def calibrate_point_labels(n: int) -> int:
    """Sign making D_l restricted to the m=1 fixed point of slot j equal <omega_l, [p_j]>."""
    found = []
    for sign in (1, -1):
        ok = all(rf_eq(divisor_eigenvalue(hook_state(n, j), n, ("D", l)),
                       point_omega_pairing(n, l, j, sign))
                 for l in range(1, n + 1) for j in range(1, n + 2))
        if ok:
            found.append(sign)
    if n == 0:
        return POINT_SIGN  # no exceptional curves, nothing to fix
    if len(found) != 1:
        raise ValueError(f"point labels not determined at n={n}: {found}")
    return found[0]


def dump_matrix_json(mat: OpMatrix, n: int) -> str:
    return json.dumps(mat.to_json(n))
