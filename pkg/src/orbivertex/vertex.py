"""Equivariant DT vertex of [C^2/Z_{n+1}] x C.

The brute-force side sums the reciprocal Euler class of the invariant part
of the vertex character over colored plane partitions.  The closed side
assembles MacMahon products.  Torus weights: t1^a t2^b t3^c is the linear
form a*s1 + b*s2 + c*s3; the group acts on t1, t2 with opposite weights, so
a monomial is invariant when a - b = 0 mod (n+1).
"""
from __future__ import annotations

import itertools
import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from pathlib import Path

from .partitions import PlanePartition, plane_partitions_by_base
from .ring import (
    RFunc,
    S1,
    S2,
    PoleAtSpecialization,
    SPoly,
    Series,
    VAR_INDEX,
    ZeroDenominator,
    macmahon_log,
    q_log_derivative,
    rf_eq,
    rf_sum,
    series_exp,
)


class ZeroWeight(ZeroDivisionError):
    """The trivial character appears in a tangent space."""


# -- characters ---------------------------------------------------------------

def _add(counter: Counter, key, mult):
    value = counter.get(key, 0) + mult
    if value:
        counter[key] = value
    else:
        counter.pop(key, None)


def vertex_character(pp: PlanePartition) -> dict:
    """V = Q - Qbar/(t1 t2 t3) + Q Qbar (1-t1)(1-t2)(1-t3)/(t1 t2 t3)."""
    boxes = pp.boxes()
    out = Counter()
    for a, b, c in boxes:
        _add(out, (a, b, c), 1)
        _add(out, (-a - 1, -b - 1, -c - 1), -1)
    if not boxes:
        return {}
    # Q * Qbar as a character, then times the cube factor
    diffs = Counter()
    for x in boxes:
        for y in boxes:
            diffs[(x[0] - y[0], x[1] - y[1], x[2] - y[2])] += 1
    cube = [((0, 0, 0), 1), ((1, 0, 0), -1), ((0, 1, 0), -1), ((0, 0, 1), -1),
            ((1, 1, 0), 1), ((1, 0, 1), 1), ((0, 1, 1), 1), ((1, 1, 1), -1)]
    for (da, db, dc), m in diffs.items():
        for (ea, eb, ec), sign in cube:
            _add(out, (da + ea - 1, db + eb - 1, dc + ec - 1), m * sign)
    return dict(out)


def invariant_part(char: dict, n: int) -> dict:
    k = n + 1
    return {w: m for w, m in char.items() if (w[0] - w[1]) % k == 0}


def _linear_form(weight) -> SPoly:
    a, b, c = weight
    return SPoly.linear({"s1": a, "s2": b, "s3": c})


def euler_weight(char: dict, inverse: bool = False) -> RFunc:
    """prod over weights of (a s1 + b s2 + c s3) ** multiplicity.

    With ``inverse`` the reciprocal is built directly, so the denominator
    keeps its linear factors instead of one expanded product.
    """
    if char.get((0, 0, 0), 0):
        raise ZeroWeight("weight (0,0,0) has nonzero multiplicity")
    # a weight and its negative give the same factor up to sign
    folded = Counter()
    sign = 1
    for w, m in char.items():
        if not m:
            continue
        neg = tuple(-x for x in w)
        if w > neg:
            folded[w] += m
        else:
            folded[neg] += m
            if m % 2:
                sign = -sign
    num = SPoly.const(sign)
    den = {}
    for w, m in folded.items():
        if inverse:
            m = -m
        if m > 0:
            num = num * (_linear_form(w) ** m)
        elif m < 0:
            den[_linear_form(w)] = -m
    return RFunc(num, den=den)


def vertex_measure(pp: PlanePartition, n: int) -> RFunc:
    return _measure_by_key(pp.slices, n)


@lru_cache(maxsize=None)
def _measure_by_key(slices, n):
    char = invariant_part(vertex_character(PlanePartition(slices, n + 1)), n)
    return euler_weight(char, inverse=True)


# -- brute force --------------------------------------------------------------

def _sign(chi, eps) -> int:
    out = 1
    for c, e in zip(chi, eps):
        if c < 0 and e % 2:
            out = -out
    return out


def _group_terms(args):
    """Per-color-vector sums for one block of plane partitions."""
    n, slices_list = args
    acc = {}
    for slices in slices_list:
        pp = PlanePartition(slices, n + 1)
        acc.setdefault(pp.color_counts(), []).append(_measure_by_key(slices, n))
    return acc


def _thread_count(threads):
    if threads is None:
        threads = int(os.environ.get("ORBIVERTEX_THREADS", "1") or 1)
    return max(1, threads)


def enumerated_terms(n: int, order: int, threads: int | None = None) -> dict:
    """Map color vector -> list of vertex measures (no signs applied)."""
    groups = plane_partitions_by_base(order, n)
    blocks = [(n, [pp.slices for pp in grp]) for grp in groups.values()]
    threads = _thread_count(threads)
    if threads > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_group_terms, blocks))
    else:
        parts = [_group_terms(b) for b in blocks]
    merged = {}
    for part in parts:
        for eps, terms in part.items():
            merged.setdefault(eps, []).extend(terms)
    return merged


def _sum_block(args):
    return args[0], rf_sum(args[1])


def z_enumerated(n: int, order: int, chi=None, threads: int | None = None) -> Series:
    """Sum of chi(eps) w(pi) q^eps over plane partitions with at most ``order`` boxes."""
    if chi is None:
        chi = calibrated_chi(n)
    chi = tuple(chi)
    terms = enumerated_terms(n, order, threads)
    threads = _thread_count(threads)
    items = sorted(terms.items())
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            sums = list(pool.map(_sum_block, items))
    else:
        sums = [_sum_block(it) for it in items]
    coeffs = {}
    for eps, total in sums:
        coeffs[eps] = total if _sign(chi, eps) > 0 else -total
    return Series(n + 1, order, coeffs)


# -- closed forms -----------------------------------------------------------

def _s(name):
    return RFunc.var(name)


def punctual_exponent(n: int) -> RFunc:
    """Exponent of M(1, -Q) in the orbifold vertex."""
    s1, s2, s3 = _s("s1"), _s("s2"), _s("s3")
    k = n + 1
    return -(s1 + s2) * k / s3 - (s1 + s2) * (s1 + s2 + s3) / (s1 * s2 * k)


def root_exponent() -> RFunc:
    s1, s2, s3 = _s("s1"), _s("s2"), _s("s3")
    return -(s1 + s2) / s3


def interval_monomial(n: int, a: int, b: int, inverse: bool = False) -> tuple:
    """Exponents of q_a q_{a+1} ... q_b (or its inverse) in n+1 variables."""
    sign = -1 if inverse else 1
    return tuple(sign if a <= i <= b else 0 for i in range(n + 1))


def _root_log(n: int, order: int, negate_q: bool) -> Series:
    out = Series(n + 1, order)
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            for inv in (False, True):
                out = out + macmahon_log(interval_monomial(n, a, b, inv), negate_q, order, n + 1)
    return out


def z_closed(n: int, order: int, root_negate_q: bool = True) -> Series:
    """Closed product formula.

    The root factors are M(q_[a,b]^{+-1}, -Q); pass ``root_negate_q=False``
    for the variant with +Q there, which disagrees with enumeration from
    total degree 3 on.
    """
    nv = n + 1
    log_z = macmahon_log((0,) * nv, True, order, nv).scale(punctual_exponent(n))
    log_z = log_z + _root_log(n, order, root_negate_q).scale(root_exponent())
    return series_exp(log_z)


def z_an_closed(n: int, order: int) -> Series:
    nv = n + 1
    return series_exp(macmahon_log((0,) * nv, True, order, nv).scale(punctual_exponent(n)))


def cy_closed(n: int, order: int, root_negate_q: bool = True) -> Series:
    """M(1,-Q)^{n+1} prod_{a<=b} M(q_[a,b], -Q) M(q_[a,b]^-1, -Q)."""
    nv = n + 1
    log_z = macmahon_log((0,) * nv, True, order, nv).scale(nv) + _root_log(n, order, root_negate_q)
    return series_exp(log_z)


def cy_specialize(series: Series) -> Series:
    """Substitute s3 = -s1 - s2 in every coefficient."""
    target = {VAR_INDEX["s3"]: -(S1 + S2)}

    def special(value: RFunc) -> RFunc:
        reduced = value.reduced()
        try:
            return reduced.substitute(target)
        except ZeroDenominator as exc:
            raise PoleAtSpecialization("coefficient has a pole on s1+s2+s3=0") from exc

    return series.map_coeffs(special)


def degree0_exponent(n: int, k: int) -> RFunc:
    s1, s2 = _s("s1"), _s("s2")
    return (s1 + s2) * (s1 + s2) * (k - 2) / (s1 * s2 * (n + 1))


def degree0_relative(n: int, k: int, order: int) -> Series:
    """Degree-zero relative series with k relative insertions."""
    if k < 1:
        raise ValueError("need at least one insertion")
    nv = n + 1
    return series_exp(macmahon_log((0,) * nv, True, order, nv).scale(degree0_exponent(n, k)))


def descendant_check(n: int, order: int) -> Series:
    """Residual of two routes to -s3 Q d/dQ of the punctual part; should vanish.

    Route one differentiates the expanded series.  Route two multiplies the
    series by Q d/dQ of its logarithm, taken term by term from the MacMahon
    logarithm.
    """
    nv = n + 1
    s3 = _s("s3")
    z = z_an_closed(n, order)
    direct = q_log_derivative(z).scale(-s3)
    log_z = macmahon_log((0,) * nv, True, order, nv).scale(punctual_exponent(n))
    via_log = (z * q_log_derivative(log_z)).scale(-s3)
    return direct - via_log


# -- sign calibration -------------------------------------------------------

GOLDEN_CHI = Path(__file__).with_name("calibrated_chi.json")


def calibrate_chi(n: int, order: int = 2) -> tuple:
    """Find the sign character matching the closed form through ``order``.

    Returns the lexicographically largest matching sign vector (so +1 wins
    ties); raises if nothing matches.
    """
    terms = enumerated_terms(n, order)
    raw = {eps: rf_sum(v) for eps, v in terms.items()}
    closed = z_closed(n, order)
    matches = []
    for chi in itertools.product((1, -1), repeat=n + 1):
        if all(rf_eq(raw[eps] if _sign(chi, eps) > 0 else -raw[eps], closed.coeff(eps))
               for eps in set(raw) | set(closed.c)):
            matches.append(chi)
    if not matches:
        raise ValueError(f"no sign character matches at n={n}")
    return matches[0]


def calibrated_chi(n: int) -> tuple:
    """Frozen calibration if recorded, otherwise calibrate now."""
    if GOLDEN_CHI.exists():
        table = json.loads(GOLDEN_CHI.read_text())
        if str(n) in table:
            return tuple(table[str(n)])
    return calibrate_chi(n)


def compare(a: Series, b: Series) -> dict:
    flags = {}
    first = None
    for eps in sorted(set(a.c) | set(b.c), key=lambda e: (sum(e), tuple(-x for x in e))):
        ok = rf_eq(a.coeff(eps), b.coeff(eps))
        flags[eps] = ok
        if not ok and first is None:
            first = eps
    return {"equal": first is None, "flags": flags, "first_mismatch": first}
