"""Quantum multiplication by divisors on the level-m Fock space.

Roots of gl(n+1)^ are ``k delta + sign * alpha_ij`` (real) or ``k delta``
(imaginary), with ``alpha_ij = alpha_i + ... + alpha_{j-1}``.  Curve classes
are read in q-coordinates by ``delta = (1, ..., 1)`` and ``alpha_l`` the
l-th unit vector.  The purely quantum operator of a divisor is

    P = sum over admissible roots of (lambda, beta) f(q_kappa^beta) :e_beta e_-beta:
        + imaginary-root terms + f(q_kappa^delta) L0

with ``f(x) = x / (1 - x)``, ``q_kappa^beta = (-1)^k q^beta`` and the
lowering operator on the right in every normally ordered product.  The full
operator is ``classical + h * P`` where the symbol h stands for -(s1+s2).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .fock import (
    FockVector,
    NakajimaLabel,
    OpMatrix,
    bilinear_EE,
    classical_divisor_matrix,
    divisor_class_vector,
    fundamental_class,
    level_basis,
    nakajima_apply,
    parse_divisor,
    poincare_pairing,
    wedge_gram,
)
from .ring import CycRat, RFunc, SPoly, Series, var_key

ORBIFOLD = "orbifold"
RESOLUTION = "resolution"
CHAMBERS = (ORBIFOLD, RESOLUTION)
H = RFunc.var("h")


@dataclass(frozen=True, order=True)
class Root:
    """``k delta + sign * alpha_ij``; ``sign == 0`` marks the imaginary root k delta."""

    k: int
    i: int = 0
    j: int = 0
    sign: int = 0

    @property
    def imaginary(self) -> bool:
        return self.sign == 0

    def eps(self, n: int) -> tuple:
        """Coordinates in the simple roots alpha_0 .. alpha_n."""
        out = [self.k] * (n + 1)
        if not self.imaginary:
            for l in range(self.i, self.j):
                out[l] += self.sign
        return tuple(out)

    def theta_pairing(self, n: int) -> int:
        """Pairing with the orbifold stability vector (all ones)."""
        return sum(self.eps(n))

    def negated(self) -> "Root":
        return Root(-self.k, self.i, self.j, -self.sign)

    def text(self) -> str:
        if self.imaginary:
            return f"{self.k}d"
        sgn = "+" if self.sign > 0 else "-"
        return f"{self.k}d{sgn}a{self.i}{self.j}"


def positive_real_parts(n: int):
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 2)]


def in_chamber(root: Root, chamber: str, n: int) -> bool:
    if root.imaginary:
        return root.k > 0
    if chamber == ORBIFOLD:
        return root.theta_pairing(n) > 0
    if chamber == RESOLUTION:
        return root.sign > 0
    raise ValueError(f"unknown chamber {chamber!r}")


def admissible_roots(chamber: str, n: int, m: int) -> list:
    """Chamber roots whose operators can act on level m (|k| <= m + 1)."""
    if chamber not in CHAMBERS:
        raise ValueError(f"unknown chamber {chamber!r}")
    if m == 0:
        return []
    bound = m + 1
    out = []
    for k in range(-bound, bound + 1):
        if k > 0:
            out.append(Root(k))
        for i, j in positive_real_parts(n):
            for sign in (1, -1):
                root = Root(k, i, j, sign)
                if in_chamber(root, chamber, n):
                    out.append(root)
    _assert_energy_bound(chamber, n, m, bound)
    return out


def _assert_energy_bound(chamber, n, m, bound):
    """The first k past the bound must kill the whole level."""
    basis = level_basis(n, m)
    for k in (bound + 1, -(bound + 1)):
        for i, j in positive_real_parts(n):
            for sign in (1, -1):
                root = Root(k, i, j, sign)
                if not in_chamber(root, chamber, n):
                    continue
                lower, _ = _ordered_pair(root, n)
                for lam in basis:
                    if not root_vector_apply(lower, FockVector.basis(n, lam)).is_zero():
                        raise AssertionError(f"energy bound {bound} too small at {root.text()}")


def root_vector_apply(root: Root, vec: FockVector) -> FockVector:
    """e_{k delta + alpha_ij} = E_ij(k), e_{k delta - alpha_ij} = E_ji(k)."""
    if root.imaginary:
        raise ValueError("imaginary roots act through the dedicated formula")
    if root.sign > 0:
        return bilinear_EE(root.i, root.j, root.k, vec)
    return bilinear_EE(root.j, root.i, root.k, vec)


def _ordered_pair(root: Root, n: int):
    """(lowering, raising) among e_root and e_-root."""
    if root.theta_pairing(n) > 0:
        return root, root.negated()
    return root.negated(), root


def normal_ordered_matrix(root: Root, n: int, m: int) -> OpMatrix:
    """:e_root e_-root: on the level-m basis (lowering operator applied first)."""
    basis = level_basis(n, m)
    if root.imaginary:
        def op(v):
            out = FockVector(n)
            for a in range(1, n + 2):
                out = out + bilinear_EE(a, a, -root.k, bilinear_EE(a, a, root.k, v))
            return out
    else:
        lower, raise_ = _ordered_pair(root, n)

        def op(v):
            return root_vector_apply(raise_, root_vector_apply(lower, v))
    return OpMatrix.from_operator(n, basis, op)


def energy_operator(n: int, m: int, kmax: int | None = None) -> OpMatrix:
    """L0 = sum_k p_{-k}(1) p_k(pt) + sum_i p_{-k}(E_i) p_k(omega_i)."""
    basis = level_basis(n, m)
    kmax = m if kmax is None else kmax

    def op(v):
        out = FockVector(n)
        for k in range(1, kmax + 1):
            out = out + nakajima_apply(NakajimaLabel(-k, "1"), nakajima_apply(NakajimaLabel(k, "pt"), v))
            for i in range(1, n + 1):
                out = out + nakajima_apply(NakajimaLabel(-k, "E", i),
                                           nakajima_apply(NakajimaLabel(k, "omega", i), v))
        return out
    return OpMatrix.from_operator(n, basis, op)


# -- divisor pairings -------------------------------------------------------

def divisor_root_pairing(divisor: tuple, root: Root, printed_minus_sign: bool = False) -> int:
    """(lambda, beta): (D_0, beta) = k, (D_l, k delta +- alpha_ij) = +-[i <= l < j].

    ``printed_minus_sign`` uses +1 on the -alpha roots instead, for comparison.
    """
    kind, idx = divisor
    total = 0
    if kind == "V" or idx == 0:
        total += root.k
    if idx > 0 and not root.imaginary and root.i <= idx < root.j:
        total += 1 if printed_minus_sign else root.sign
    return total


# -- assembled operators ------------------------------------------------------

@dataclass
class QuantumTerm:
    coeff: Fraction
    eps: tuple
    sign: int
    matrix: OpMatrix
    label: str


def kappa_sign(root_eps: tuple) -> int:
    """(-1)^k from q^delta -> -q^delta; k is the q0 exponent."""
    return -1 if root_eps[0] % 2 else 1


def quantum_terms(divisor, chamber: str, n: int, m: int, printed_minus_sign: bool = False) -> list:
    """The purely quantum operator as a list of coeff * f(sign q^eps) * matrix."""
    if isinstance(divisor, str):
        divisor = parse_divisor(divisor)
    terms = []
    if m == 0:
        return terms
    for root in admissible_roots(chamber, n, m):
        eps = root.eps(n)
        if root.imaginary:
            c = divisor_root_pairing(divisor, root)
            if c:
                terms.append(QuantumTerm(Fraction(c), eps, kappa_sign(eps),
                                         normal_ordered_matrix(root, n, m), root.text()))
            continue
        c = divisor_root_pairing(divisor, root, printed_minus_sign)
        if c:
            mat = normal_ordered_matrix(root, n, m)
            if not mat.is_zero():
                terms.append(QuantumTerm(Fraction(c), eps, kappa_sign(eps), mat, root.text()))
    kind, idx = divisor
    if kind == "V" or idx == 0:
        delta = (1,) * (n + 1)
        terms.append(QuantumTerm(Fraction(1), delta, kappa_sign(delta), energy_operator(n, m), "L0"))
    return terms


def q_monomial(eps) -> tuple:
    """(numerator, denominator) SPoly monomials of q^eps."""
    pos = {f"q{l}": e for l, e in enumerate(eps) if e > 0}
    neg = {f"q{l}": -e for l, e in enumerate(eps) if e < 0}

    def mono(d):
        key = 0
        for name, e in d.items():
            key += var_key(name, e)
        return SPoly({key: 1})
    return mono(pos), mono(neg)


def geometric_factor(eps, sign: int) -> RFunc:
    """f(x) = x/(1-x) at x = sign * q^eps, as an exact rational function."""
    num, den = q_monomial(eps)
    x_num = num * sign
    return RFunc(x_num, den={den - x_num: 1})


def purely_quantum_matrix(divisor, chamber: str, n: int, m: int, printed_minus_sign: bool = False) -> OpMatrix:
    basis = level_basis(n, m)
    out = OpMatrix.zero(basis)
    for term in quantum_terms(divisor, chamber, n, m, printed_minus_sign):
        out = out + term.matrix.scale(geometric_factor(term.eps, term.sign) * term.coeff)
    return out


@dataclass
class QuantumMatrix:
    classical: OpMatrix
    quantum: OpMatrix
    chamber: str
    divisor: tuple

    def full(self) -> OpMatrix:
        return self.classical + self.quantum.scale(H)

    def to_json(self, n: int):
        kind, idx = self.divisor
        cl = self.classical.to_json(n)
        return {"chamber": self.chamber, "divisor": f"{kind}{idx}", "basis": cl["basis"],
                "matrix_classical": cl["entries"],
                "matrix_quantum": self.quantum.to_json(n)["entries"]}


def full_divisor_matrix(divisor, chamber: str, n: int, m: int) -> QuantumMatrix:
    if isinstance(divisor, str):
        divisor = parse_divisor(divisor)
    return QuantumMatrix(classical_divisor_matrix(divisor, n, m),
                         purely_quantum_matrix(divisor, chamber, n, m), chamber, divisor)


def quantum_series_matrices(divisor, n: int, m: int, order: int) -> dict:
    """Orbifold chamber: eps -> matrix of the q^eps coefficient of P."""
    if isinstance(divisor, str):
        divisor = parse_divisor(divisor)
    out = {}
    for term in quantum_terms(divisor, ORBIFOLD, n, m):
        step = sum(term.eps)
        if step <= 0:
            raise AssertionError("orbifold roots have positive degree")
        r = 1
        while r * step <= order:
            eps = tuple(r * e for e in term.eps)
            mat = term.matrix.scale(term.coeff * (term.sign ** r))
            out[eps] = out[eps] + mat if eps in out else mat
            r += 1
    return out


def three_point(a: FockVector, b: FockVector, divisor, n: int, m: int, order: int) -> Series:
    """<A, D * B> in the orbifold chamber: classical q^0 term plus h-marked corrections.

    ``divisor`` may be the string "1" for the fundamental class.
    """
    if a.level() != m or b.level() != m:
        raise ValueError("three_point inputs must be at level m")
    nv = n + 1
    zero = (0,) * nv
    if divisor == "1":
        return Series(nv, order, {zero: poincare_pairing(a, b)})
    if isinstance(divisor, str):
        divisor = parse_divisor(divisor)
    coeffs = {zero: poincare_pairing(a, classical_divisor_matrix(divisor, n, m).apply(b))}
    for eps, mat in quantum_series_matrices(divisor, n, m, order).items():
        value = poincare_pairing(a, mat.apply(b))
        if not value.is_zero():
            coeffs[eps] = value * H
    return Series(nv, order, coeffs)


def effective_membership(eps, chamber: str) -> bool:
    """Whether eps lies in the semigroup generated by the chamber's roots.

    Orbifold: every coordinate >= 0.  Resolution: eps = K delta + (sum of
    positive A_n roots) with K arbitrary when the A_n part is nonzero and
    K > 0 otherwise.
    """
    eps = tuple(eps)
    if not any(eps):
        return True
    if chamber == ORBIFOLD:
        return all(e >= 0 for e in eps)
    if chamber == RESOLUTION:
        k = eps[0]
        rest = [e - k for e in eps[1:]]
        if any(e < 0 for e in rest):
            return False
        return any(rest) or k > 0
    raise ValueError(f"unknown chamber {chamber!r}")


def chamber_compare(divisor, n: int, m: int) -> OpMatrix:
    """Full orbifold matrix minus full resolution matrix, as exact rational functions.

    Both chambers share the classical part here, so this is h times the
    difference of the purely quantum parts.  Each resolution root
    -k delta + alpha pairs with the orbifold root k delta - alpha through
    f(1/x) = -1 - f(x), leaving a constant times the same normally ordered
    product; the sum of those constants is q-free but in general not scalar.
    """
    diff = (purely_quantum_matrix(divisor, ORBIFOLD, n, m)
            - purely_quantum_matrix(divisor, RESOLUTION, n, m))
    return diff.scale(H)


def is_q_free(mat: OpMatrix, n: int) -> bool:
    qvars = {5 + l for l in range(n + 1)}
    return all(not (x.reduced().variables() & qvars) for r in mat.rows for x in r)


# -- descendant dictionaries -------------------------------------------------

def dprime_divisor(i: int, n: int, require_rational: bool = False) -> list:
    """Coefficients of D'_i over c1(V_0), ..., c1(V_n), as cyclotomic numbers."""
    k = n + 1
    if not 0 <= i <= n:
        raise ValueError("index out of range")
    if i == 0:
        coeffs = [CycRat.rational(k, Fraction(-1, k)) for _ in range(k)]
    else:
        pref = (CycRat.rational(k, 2) - CycRat.zeta(k, i) - CycRat.zeta(k, -i)) * Fraction(-1, k)
        coeffs = [pref * CycRat.zeta(k, -i * j) for j in range(k)]
    if require_rational:
        return [c.to_fraction() for c in coeffs]
    return coeffs


def rigidification_coefficient(i: int, eps, n: int | None = None) -> CycRat:
    eps = tuple(eps)
    k = len(eps) if n is None else n + 1
    if i == 0:
        return CycRat.rational(k, Fraction(-sum(eps), k))
    pref = (CycRat.rational(k, 2) - CycRat.zeta(k, i) - CycRat.zeta(k, -i)) * Fraction(-1, k)
    total = CycRat(k)
    for j, e in enumerate(eps):
        total = total + CycRat.zeta(k, -i * j) * e
    return pref * total


def dprime_pairing(i: int, eps, n: int) -> CycRat:
    """sum_j coeff_j(D'_i) eps_j, using c1(V_j) . beta = eps_j."""
    total = CycRat(n + 1)
    for c, e in zip(dprime_divisor(i, n), eps):
        total = total + c * e
    return total


def dprime_determinant(n: int) -> CycRat:
    rows = [dprime_divisor(i, n) for i in range(n + 1)]
    k = n + 1
    det = CycRat(k)
    for perm in itertools.permutations(range(k)):
        sign = 1
        for x in range(k):
            for y in range(x + 1, k):
                if perm[x] > perm[y]:
                    sign = -sign
        term = CycRat.rational(k, sign)
        for r, c in enumerate(perm):
            term = term * rows[r][c]
        det = det + term
    return det


# -- contract checks used by the CLI and tests ----------------------------

def annihilates_fundamental(divisor, chamber: str, n: int, m: int) -> bool:
    p = purely_quantum_matrix(divisor, chamber, n, m)
    return p.apply(fundamental_class(n, m)).is_zero()


def self_adjoint(mat: OpMatrix, n: int, m: int) -> bool:
    """G M symmetric, G the Gram matrix of the pairing."""
    g = OpMatrix(level_basis(n, m), wedge_gram(n, m))
    return (g.transpose() @ mat).is_symmetric()


def commutator(x: OpMatrix, y: OpMatrix) -> OpMatrix:
    return (x @ y) - (y @ x)


def classical_action_matches_class(divisor, n: int, m: int) -> bool:
    """Cup product with the divisor sends the fundamental class to the divisor class."""
    if isinstance(divisor, str):
        divisor = parse_divisor(divisor)
    got = classical_divisor_matrix(divisor, n, m).apply(fundamental_class(n, m))
    return got.equals(divisor_class_vector(divisor, n, m))
