"""Exact coefficient arithmetic.

* ``CycRat``   rationals adjoined a root of unity of order n+1
* ``SPoly``    sparse polynomials with rational coefficients in the symbols
               s1, s2, s3, s, h and q0, q1, ...
* ``RFunc``    rational functions ``const * num / prod(factor ** e)`` with the
               denominator kept as a product of primitive polynomials
* ``Series``   truncated power series in q0..qn with ``RFunc`` coefficients

Monomials of ``SPoly`` are packed into one Python int, 16 bits per variable,
so multiplying monomials is integer addition.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Iterable

SYMBOLS = ("s1", "s2", "s3", "s", "h")
MAX_Q = 24
VARS = SYMBOLS + tuple(f"q{i}" for i in range(MAX_Q))
VAR_INDEX = {name: i for i, name in enumerate(VARS)}
BITS = 16
FIELD = (1 << BITS) - 1
GUARD = sum(1 << (BITS * i + BITS - 1) for i in range(len(VARS)))


class ZeroDenominator(ZeroDivisionError):
    pass


class PoleAtSpecialization(ValueError):
    pass


# -- monomials ---------------------------------------------------------------

def pack(exps: Iterable[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e >= 1 << (BITS - 1):
            raise ValueError("exponent out of range")
        key |= e << (BITS * i)
    return key


def unpack(key: int) -> tuple:
    out = []
    while key:
        out.append(key & FIELD)
        key >>= BITS
    return tuple(out)


def var_key(name: str, power: int = 1) -> int:
    return power << (BITS * VAR_INDEX[name])


def divides(small: int, big: int) -> bool:
    return ((big | GUARD) - small) & GUARD == GUARD


def mono_degree(key: int) -> int:
    return sum(unpack(key))


def _grlex(key: int):
    exps = unpack(key)
    return (sum(exps), exps + (0,) * (len(VARS) - len(exps)))


# -- cyclotomic rationals ----------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_poly(k: int) -> tuple:
    """Integer coefficients (low degree first) of the k-th cyclotomic polynomial."""
    num = [-1] + [0] * (k - 1) + [1]
    for d in range(1, k):
        if k % d == 0:
            num = _int_poly_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _int_poly_div(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    assert not any(num), "inexact cyclotomic division"
    return out


class CycRat:
    """Element of Q[zeta]/(zeta^k - 1); equality and rationality are judged
    after projecting to the field Q(zeta) at a primitive k-th root."""

    __slots__ = ("k", "c")

    def __init__(self, k: int, coeffs=None):
        self.k = k
        c = [Fraction(0)] * k
        if coeffs is not None:
            if isinstance(coeffs, dict):
                for e, v in coeffs.items():
                    c[e % k] += Fraction(v)
            else:
                for e, v in enumerate(coeffs):
                    c[e % k] += Fraction(v)
        self.c = tuple(c)

    @classmethod
    def zeta(cls, k: int, power: int = 1) -> "CycRat":
        return cls(k, {power % k: 1})

    @classmethod
    def rational(cls, k: int, value) -> "CycRat":
        return cls(k, {0: value})

    def _coerce(self, other):
        if isinstance(other, CycRat):
            if other.k != self.k:
                raise ValueError("mismatched cyclotomic orders")
            return other
        return CycRat.rational(self.k, other)

    def __add__(self, other):
        o = self._coerce(other)
        return CycRat(self.k, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return CycRat(self.k, [-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        out = [Fraction(0)] * self.k
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        out[(i + j) % self.k] += a * b
        return CycRat(self.k, out)

    __rmul__ = __mul__

    def projected(self) -> tuple:
        """Coefficients reduced modulo the cyclotomic polynomial."""
        phi = cyclotomic_poly(self.k)
        rem = list(self.c)
        deg = len(phi) - 1
        for i in range(len(rem) - 1, deg - 1, -1):
            c = rem[i]
            if c:
                for j, p in enumerate(phi):
                    rem[i - deg + j] -= c * p
        return tuple(rem[:deg])

    def is_rational(self) -> bool:
        return not any(self.projected()[1:])

    def to_fraction(self) -> Fraction:
        proj = self.projected()
        if any(proj[1:]):
            raise ValueError("cyclotomic value is not rational")
        return proj[0] if proj else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, CycRat):
            try:
                other = CycRat.rational(self.k, other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.k == other.k and (self - other).projected() == (Fraction(0),) * len((self - other).projected())

    def __hash__(self):
        return hash((self.k, self.projected()))

    def __repr__(self):
        terms = [f"{v}*z^{e}" for e, v in enumerate(self.c) if v]
        return f"CycRat[{self.k}](" + (" + ".join(terms) or "0") + ")"


# -- sparse polynomials ------------------------------------------------------

def _fmt_coeff(c) -> str:
    return str(c)


class SPoly:
    """Sparse polynomial: packed monomial -> nonzero rational coefficient."""

    __slots__ = ("t",)

    def __init__(self, terms=None):
        if terms is None:
            self.t = {}
        elif isinstance(terms, dict):
            self.t = {k: v for k, v in terms.items() if v}
        else:
            self.t = {}
            for k, v in terms:
                if v:
                    nv = self.t.get(k, 0) + v
                    if nv:
                        self.t[k] = nv
                    else:
                        self.t.pop(k, None)

    @classmethod
    def const(cls, c) -> "SPoly":
        return cls({0: c}) if c else cls()

    @classmethod
    def var(cls, name: str, power: int = 1) -> "SPoly":
        return cls({var_key(name, power): 1})

    @classmethod
    def linear(cls, coeffs: dict) -> "SPoly":
        return cls({var_key(v): c for v, c in coeffs.items() if c})

    @classmethod
    def monomial(cls, exps, coeff=1) -> "SPoly":
        return cls({pack(exps): coeff})

    def __bool__(self):
        return bool(self.t)

    def is_zero(self) -> bool:
        return not self.t

    def is_const(self) -> bool:
        return not self.t or (len(self.t) == 1 and 0 in self.t)

    def const_value(self):
        return self.t.get(0, 0)

    def __eq__(self, other):
        if isinstance(other, SPoly):
            return self.t == other.t
        if isinstance(other, (int, Fraction)):
            return self.t == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.t.items()))

    def __add__(self, other):
        if not isinstance(other, SPoly):
            other = SPoly.const(other)
        out = dict(self.t)
        for k, v in other.t.items():
            nv = out.get(k, 0) + v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        r = SPoly()
        r.t = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = SPoly()
        r.t = {k: -v for k, v in self.t.items()}
        return r

    def __sub__(self, other):
        if not isinstance(other, SPoly):
            other = SPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return SPoly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, SPoly):
            if not other:
                return SPoly()
            r = SPoly()
            r.t = {k: v * other for k, v in self.t.items()}
            return r
        a, b = (self.t, other.t) if len(self.t) >= len(other.t) else (other.t, self.t)
        out = {}
        get = out.get
        for k2, v2 in b.items():
            for k1, v1 in a.items():
                k = k1 + k2
                out[k] = get(k, 0) + v1 * v2
        r = SPoly()
        r.t = {k: v for k, v in out.items() if v}
        return r

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = SPoly.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def leading_key(self) -> int:
        return max(self.t)

    def content(self):
        """Positive rational content; the primitive part has integer coefficients."""
        vals = list(self.t.values())
        if not vals:
            return Fraction(0)
        dens = [v.denominator if isinstance(v, Fraction) else 1 for v in vals]
        lcm = reduce(lambda a, b: a * b // gcd(a, b), dens, 1)
        nums = [int(v * lcm) for v in vals]
        g = reduce(gcd, (abs(x) for x in nums), 0)
        return Fraction(g, lcm)

    def primitive(self):
        """Return ``(c, p)`` with ``self = c * p``, ``p`` integral, primitive and
        with positive leading coefficient."""
        if not self.t:
            return Fraction(0), SPoly()
        c = self.content()
        if self.t[max(self.t)] < 0:
            c = -c
        r = SPoly()
        r.t = {k: int(v / c) if isinstance(v, Fraction) or c != 1 else v for k, v in self.t.items()}
        return c, r

    def divide_exact(self, d: "SPoly"):
        """Quotient if ``d`` divides ``self`` exactly, else ``None``."""
        if not d.t:
            raise ZeroDenominator("division by zero polynomial")
        if not self.t:
            return SPoly()
        lk = max(d.t)
        lc = d.t[lk]
        rest = [(k - lk, v) for k, v in d.t.items() if k != lk]
        rem = dict(self.t)
        quo = {}
        import heapq
        heap = [-k for k in rem]
        heapq.heapify(heap)
        while heap:
            k = -heapq.heappop(heap)
            c = rem.pop(k, 0)
            if not c:
                continue
            while heap and -heap[0] == k:
                heapq.heappop(heap)
            if not divides(lk, k):
                return None
            q = Fraction(c) / lc
            if q.denominator == 1:
                q = q.numerator
            m = k - lk
            quo[m] = q
            for dk, dv in rest:
                key = m + dk + lk
                nv = rem.get(key, 0) - q * dv
                if key not in rem:
                    heapq.heappush(heap, -key)
                if nv:
                    rem[key] = nv
                else:
                    rem.pop(key, None)
        r = SPoly()
        r.t = quo
        return r

    def substitute(self, mapping: dict) -> "SPoly":
        """Replace variables (by index) with polynomials."""
        out = SPoly()
        cache = {}
        for key, c in self.t.items():
            term = SPoly.const(c)
            rest = 0
            for i, e in enumerate(unpack(key)):
                if not e:
                    continue
                if i in mapping:
                    pk = (i, e)
                    if pk not in cache:
                        cache[pk] = mapping[i] ** e
                    term = term * cache[pk]
                else:
                    rest |= e << (BITS * i)
            if rest:
                term = term * SPoly({rest: 1})
            out = out + term
        return out

    def evaluate(self, values: dict, modulus: int | None = None):
        total = 0
        for key, c in self.t.items():
            term = c if modulus is None else (c.numerator * pow(c.denominator, -1, modulus) if isinstance(c, Fraction) else c) % modulus
            for i, e in enumerate(unpack(key)):
                if e:
                    term = term * (values[i] ** e if modulus is None else pow(values[i], e, modulus))
                    if modulus is not None:
                        term %= modulus
            total = total + term
        return total % modulus if modulus is not None else total

    def variables(self) -> set:
        out = set()
        for key in self.t:
            for i, e in enumerate(unpack(key)):
                if e:
                    out.add(i)
        return out

    def total_degree(self) -> int:
        return max((mono_degree(k) for k in self.t), default=0)

    def is_homogeneous(self, variables=None):
        degs = {sum(e for i, e in enumerate(unpack(k)) if variables is None or i in variables) for k in self.t}
        return len(degs) <= 1

    def __str__(self):
        if not self.t:
            return "0"
        parts = []
        for key in sorted(self.t, key=_grlex, reverse=True):
            c = self.t[key]
            mono = "*".join(f"{VARS[i]}^{e}" if e > 1 else VARS[i] for i, e in enumerate(unpack(key)) if e)
            if not mono:
                parts.append(_fmt_coeff(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{_fmt_coeff(c)}*{mono}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    __repr__ = __str__


# -- rational functions ------------------------------------------------------

def _factor_key(p: SPoly):
    return tuple(sorted(p.t.items()))


def _factor_poly(key) -> SPoly:
    r = SPoly()
    r.t = dict(key)
    return r


def _factor_sort_key(fk):
    return (len(fk), str(_factor_poly(fk)))


class RFunc:
    """``const * num / prod(factor ** e)``.

    ``num`` is an integral primitive polynomial with positive leading
    coefficient; each factor is integral, primitive, non-constant and has a
    positive leading coefficient.  Monomial factors of the denominator are
    always cancelled against the numerator, other factors only when
    ``reduced()`` is called.
    """

    __slots__ = ("const", "num", "den")

    def __init__(self, num=None, den=None, const=Fraction(1), _raw=False):
        if _raw:
            self.const, self.num, self.den = const, num, den
            return
        if num is None:
            num = SPoly.const(1)
        if not isinstance(num, SPoly):
            num = SPoly.const(Fraction(num))
        c, p = num.primitive()
        const = Fraction(const) * c
        self.const, self.num, self.den = const, p, {}
        if not const:
            self.num = SPoly()
            return
        if den is not None:
            if isinstance(den, SPoly):
                den = {den: 1}
            for f, e in (den.items() if isinstance(den, dict) else den):
                if not isinstance(f, SPoly):
                    f = _factor_poly(f)
                if f.is_zero():
                    raise ZeroDenominator("zero denominator")
                self._absorb_den(f, e)
        self._cancel_monomials()

    def _absorb_den(self, f: SPoly, e: int):
        c, p = f.primitive()
        self.const /= c ** e
        if p.is_const():
            return
        # split off a common monomial factor so monomials stay separate factors
        mono = reduce(lambda a, b: _key_min(a, b), p.t.keys())
        if mono:
            for i, x in enumerate(unpack(mono)):
                if x:
                    fk = _factor_key(SPoly({var_key(VARS[i]): 1}))
                    self.den[fk] = self.den.get(fk, 0) + x * e
            p = SPoly({k - mono: v for k, v in p.t.items()})
            if p.is_const():
                return
        fk = _factor_key(p)
        self.den[fk] = self.den.get(fk, 0) + e

    def _cancel_monomials(self):
        if not self.num.t:
            self.den = {}
            return
        for fk in list(self.den):
            if len(fk) == 1:
                (vk, _), = fk
                e = self.den[fk]
                shift = vk.bit_length() - 1
                mind = min(((k >> shift) & FIELD) for k in self.num.t)
                cut = min(mind, e)
                if cut:
                    self.num = SPoly({k - (cut << shift): v for k, v in self.num.t.items()})
                    if e == cut:
                        del self.den[fk]
                    else:
                        self.den[fk] = e - cut

    # constructors
    @classmethod
    def zero(cls) -> "RFunc":
        return cls(SPoly(), const=0)

    @classmethod
    def one(cls) -> "RFunc":
        return cls(SPoly.const(1))

    @classmethod
    def const_of(cls, c) -> "RFunc":
        return cls(SPoly.const(1), const=Fraction(c)) if c else cls.zero()

    @classmethod
    def of(cls, x) -> "RFunc":
        if isinstance(x, RFunc):
            return x
        if isinstance(x, SPoly):
            return cls(x)
        if isinstance(x, CycRat):
            return cls.const_of(x.to_fraction())
        return cls.const_of(x)

    @classmethod
    def var(cls, name: str) -> "RFunc":
        return cls(SPoly.var(name))

    def is_zero(self) -> bool:
        return not self.const

    def is_const(self) -> bool:
        return self.is_zero() or (not self.den and self.num.is_const())

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError("not a constant")
        return self.const * self.num.const_value() if self.const else Fraction(0)

    def denominator_poly(self) -> SPoly:
        out = SPoly.const(1)
        for fk, e in self.den.items():
            out = out * (_factor_poly(fk) ** e)
        return out

    def numerator_poly(self) -> SPoly:
        return self.num * self.const

    # arithmetic
    def __mul__(self, other):
        if not isinstance(other, RFunc):
            other = RFunc.of(other)
        if self.is_zero() or other.is_zero():
            return RFunc.zero()
        # constant factor: only the scalar changes
        if not other.den and other.num.is_const():
            return RFunc(self.num, _raw=True, den=dict(self.den), const=self.const * other.const * other.num.const_value())
        if not self.den and self.num.is_const():
            return RFunc(other.num, _raw=True, den=dict(other.den), const=self.const * other.const * self.num.const_value())
        den = dict(self.den)
        for fk, e in other.den.items():
            den[fk] = den.get(fk, 0) + e
        out = RFunc(self.num * other.num, _raw=True, den=den, const=self.const * other.const)
        c, p = out.num.primitive()
        out.num = p
        out.const *= c
        out._cancel_monomials()
        return out

    __rmul__ = __mul__

    def inverse(self) -> "RFunc":
        if self.is_zero():
            raise ZeroDenominator("inverse of zero")
        num = SPoly.const(1)
        for fk, e in self.den.items():
            num = num * (_factor_poly(fk) ** e)
        return RFunc(num, den={self.num: 1}, const=1 / self.const)

    def __truediv__(self, other):
        if not isinstance(other, RFunc):
            other = RFunc.of(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RFunc.of(other) * self.inverse()

    def __neg__(self):
        return RFunc(self.num, _raw=True, den=dict(self.den), const=-self.const)

    def __add__(self, other):
        if not isinstance(other, RFunc):
            other = RFunc.of(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lcm = dict(self.den)
        for fk, e in other.den.items():
            if lcm.get(fk, 0) < e:
                lcm[fk] = e
        a = self._lift(lcm)
        b = other._lift(lcm)
        # clear rational constants before adding
        ca, cb = self.const, other.const
        l = ca.denominator * cb.denominator // gcd(ca.denominator, cb.denominator)
        num = a * int(ca * l) + b * int(cb * l)
        if num.is_zero():
            return RFunc.zero()
        out = RFunc(num, _raw=True, den=lcm, const=Fraction(1, l))
        c, p = num.primitive()
        out.num = p
        out.const *= c
        out._cancel_monomials()
        return out

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, RFunc):
            other = RFunc.of(other)
        return self + (-other)

    def __rsub__(self, other):
        return RFunc.of(other) - self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = RFunc.one()
        for _ in range(e):
            out = out * self
        return out

    def _lift(self, lcm: dict) -> SPoly:
        out = self.num
        for fk, e in lcm.items():
            extra = e - self.den.get(fk, 0)
            if extra:
                out = out * (_factor_poly(fk) ** extra)
        return out

    def reduced(self) -> "RFunc":
        """Cancel every denominator factor that divides the numerator."""
        if self.is_zero():
            return self
        num = self.num
        den = dict(self.den)
        for fk in sorted(den, key=_factor_sort_key):
            f = _factor_poly(fk)
            while den.get(fk):
                q = num.divide_exact(f)
                if q is None:
                    break
                num = q
                den[fk] -= 1
                if not den[fk]:
                    del den[fk]
        out = RFunc(num, _raw=True, den=den, const=self.const)
        c, p = num.primitive()
        out.num = p
        out.const *= c
        return out

    def __eq__(self, other):
        if not isinstance(other, RFunc):
            try:
                other = RFunc.of(other)
            except (TypeError, ValueError):
                return NotImplemented
        return rf_eq(self, other)

    def __hash__(self):
        raise TypeError("RFunc is not hashable; compare with rf_eq")

    def substitute(self, mapping: dict) -> "RFunc":
        """Substitute polynomials for variables (by index or name)."""
        mapping = {VAR_INDEX[k] if isinstance(k, str) else k: v for k, v in mapping.items()}
        num = self.num.substitute(mapping) * self.const
        den = []
        for fk, e in self.den.items():
            f = _factor_poly(fk).substitute(mapping)
            if f.is_zero():
                raise ZeroDenominator("denominator vanishes under substitution")
            den.append((f, e))
        return RFunc(num, den=den)

    def evaluate_mod(self, values: dict, modulus: int) -> int | None:
        """Value modulo a prime, ``None`` if a denominator vanishes there."""
        d = 1
        for fk, e in self.den.items():
            d = d * pow(_factor_poly(fk).evaluate(values, modulus), e, modulus) % modulus
        if d == 0:
            return None
        c = self.const.numerator * pow(self.const.denominator, -1, modulus)
        return c * self.num.evaluate(values, modulus) * pow(d, -1, modulus) % modulus

    def variables(self) -> set:
        out = set(self.num.variables())
        for fk in self.den:
            out |= _factor_poly(fk).variables()
        return out

    def is_homogeneous_degree(self, variables) -> int | None:
        """Degree in the given variable indices if homogeneous, else ``None``."""
        if self.is_zero():
            return 0
        if not self.num.is_homogeneous(variables):
            return None
        deg = sum(e for i, e in enumerate(unpack(next(iter(self.num.t)))) if i in variables)
        for fk, e in self.den.items():
            f = _factor_poly(fk)
            if not f.is_homogeneous(variables):
                return None
            deg -= e * sum(x for i, x in enumerate(unpack(next(iter(f.t)))) if i in variables)
        return deg

    def canonical(self) -> str:
        r = self.reduced()
        if r.is_zero():
            return "0"
        num = r.num * r.const
        if not r.den:
            return str(num)
        facs = []
        for fk in sorted(r.den, key=_factor_sort_key):
            f = str(_factor_poly(fk))
            e = r.den[fk]
            facs.append(f"({f})" + (f"^{e}" if e > 1 else ""))
        return f"({num})/(" + "*".join(facs) + ")"

    def __str__(self):
        return self.canonical()

    __repr__ = __str__


def _key_min(a: int, b: int) -> int:
    out = 0
    i = 0
    while a or b:
        out |= min(a & FIELD, b & FIELD) << (BITS * i)
        a >>= BITS
        b >>= BITS
        i += 1
    return out


def rf_eq(a: RFunc, b: RFunc) -> bool:
    """Exact equality by cross-multiplication over the common denominator."""
    a, b = RFunc.of(a), RFunc.of(b)
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    lcm = dict(a.den)
    for fk, e in b.den.items():
        if lcm.get(fk, 0) < e:
            lcm[fk] = e
    return a._lift(lcm) * a.const == b._lift(lcm) * b.const


_PRIME = (1 << 61) - 1


def rf_prescreen(a: RFunc, b: RFunc, trials: int = 2, seed: int = 7) -> bool:
    """Cheap probabilistic test; ``False`` proves the two values differ."""
    rng = random.Random(seed)
    for _ in range(trials):
        vals = {i: rng.randrange(2, _PRIME - 1) for i in range(len(VARS))}
        x, y = a.evaluate_mod(vals, _PRIME), b.evaluate_mod(vals, _PRIME)
        if x is not None and y is not None and x != y:
            return False
    return True


def rf_sum(items) -> RFunc:
    """Balanced pairwise sum; keeps intermediate denominators small."""
    items = [RFunc.of(x) for x in items]
    if not items:
        return RFunc.zero()
    while len(items) > 1:
        nxt = [items[i] + items[i + 1] for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]


S1, S2, S3 = (SPoly.var(v) for v in ("s1", "s2", "s3"))


def rf(text_or_poly, den=None) -> RFunc:
    """Small helper: ``rf(num_poly, den_poly)``."""
    num = text_or_poly if isinstance(text_or_poly, SPoly) else SPoly.const(Fraction(text_or_poly))
    if den is None:
        return RFunc(num)
    if not isinstance(den, SPoly):
        den = SPoly.const(Fraction(den))
    if den.is_const():
        return RFunc(num, const=1 / Fraction(den.const_value()))
    return RFunc(num, den={den: 1})


# -- truncated power series ------------------------------------------------

def _exps_add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


class Series:
    """Truncated power series in ``nvars`` q-variables up to total degree ``order``."""

    __slots__ = ("nvars", "order", "c")

    def __init__(self, nvars: int, order: int, coeffs=None):
        if order < 0:
            raise ValueError("order must be >= 0")
        self.nvars = nvars
        self.order = order
        self.c = {}
        if coeffs:
            for exps, v in coeffs.items():
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise ValueError("exponent length mismatch")
                if any(e < 0 for e in exps):
                    raise ValueError("negative exponent in a power series")
                if sum(exps) > order:
                    continue
                v = RFunc.of(v)
                if not v.is_zero():
                    self.c[exps] = v

    @classmethod
    def one(cls, nvars: int, order: int) -> "Series":
        return cls(nvars, order, {(0,) * nvars: 1})

    @classmethod
    def zero(cls, nvars: int, order: int) -> "Series":
        return cls(nvars, order)

    def _check(self, other: "Series"):
        if not isinstance(other, Series):
            raise TypeError("expected a Series")
        if other.nvars != self.nvars:
            raise ValueError("mismatched variable counts")
        if other.order != self.order:
            raise ValueError("mismatched truncation orders")

    def coeff(self, exps) -> RFunc:
        return self.c.get(tuple(exps), RFunc.zero())

    def constant_term(self) -> RFunc:
        return self.coeff((0,) * self.nvars)

    def __add__(self, other):
        self._check(other)
        out = dict(self.c)
        for k, v in other.c.items():
            out[k] = out[k] + v if k in out else v
        return Series(self.nvars, self.order, out)

    def __neg__(self):
        return Series(self.nvars, self.order, {k: -v for k, v in self.c.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, r) -> "Series":
        r = RFunc.of(r)
        return Series(self.nvars, self.order, {k: v * r for k, v in self.c.items()})

    def __mul__(self, other):
        if not isinstance(other, Series):
            return self.scale(other)
        self._check(other)
        acc = {}
        for k1, v1 in self.c.items():
            d1 = sum(k1)
            for k2, v2 in other.c.items():
                if d1 + sum(k2) > self.order:
                    continue
                acc.setdefault(_exps_add(k1, k2), []).append(v1 * v2)
        return Series(self.nvars, self.order, {k: rf_sum(v) for k, v in acc.items()})

    def truncate(self, order: int) -> "Series":
        return Series(self.nvars, order, {k: v for k, v in self.c.items() if sum(k) <= order})

    def components(self) -> list:
        comps = [dict() for _ in range(self.order + 1)]
        for k, v in self.c.items():
            comps[sum(k)][k] = v
        return comps

    def map_coeffs(self, fn) -> "Series":
        return Series(self.nvars, self.order, {k: fn(v) for k, v in self.c.items()})

    def equals(self, other: "Series") -> bool:
        self._check(other)
        keys = set(self.c) | set(other.c)
        return all(rf_eq(self.coeff(k), other.coeff(k)) for k in keys)

    def first_mismatch(self, other: "Series"):
        self._check(other)
        for k in sorted(set(self.c) | set(other.c), key=lambda e: (sum(e), tuple(-x for x in e))):
            if not rf_eq(self.coeff(k), other.coeff(k)):
                return k
        return None

    def sorted_items(self):
        """Graded-lex order: by total degree, then lexicographically descending."""
        return sorted(self.c.items(), key=lambda kv: (sum(kv[0]), tuple(-x for x in kv[0])))

    def to_json(self):
        return [{"exps": list(k), "coeff": v.canonical()} for k, v in self.sorted_items()]

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for k, v in self.sorted_items():
            mono = "*".join(f"q{i}^{e}" if e > 1 else f"q{i}" for i, e in enumerate(k) if e)
            parts.append(f"({v.canonical()})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    __repr__ = __str__


def _component_mul(a: dict, b: dict) -> dict:
    acc = {}
    for k1, v1 in a.items():
        for k2, v2 in b.items():
            acc.setdefault(_exps_add(k1, k2), []).append(v1 * v2)
    return {k: rf_sum(v) for k, v in acc.items()}


def _component_axpy(acc: dict, comp: dict, scale):
    for k, v in comp.items():
        term = v * scale
        acc[k] = acc[k] + term if k in acc else term


def series_mul(a: Series, b: Series) -> Series:
    return a * b


def series_exp(a: Series) -> Series:
    """exp of a series with zero constant term, via f_d = (1/d) sum j g_j f_{d-j}."""
    if not a.constant_term().is_zero():
        raise ValueError("series_exp needs a zero constant term")
    g = a.components()
    f = [{(0,) * a.nvars: RFunc.one()}]
    for d in range(1, a.order + 1):
        acc = {}
        for j in range(1, d + 1):
            if g[j] and f[d - j]:
                prod = _component_mul(g[j], f[d - j])
                _component_axpy(acc, prod, Fraction(j, d))
        f.append({k: v for k, v in acc.items() if not v.is_zero()})
    out = {}
    for comp in f:
        out.update(comp)
    return Series(a.nvars, a.order, out)


def series_log(a: Series) -> Series:
    """log of a series with constant term 1."""
    if not rf_eq(a.constant_term(), RFunc.one()):
        raise ValueError("series_log needs constant term 1")
    f = a.components()
    g = [dict()]
    for d in range(1, a.order + 1):
        acc = dict(f[d])
        for j in range(1, d):
            if g[j] and f[d - j]:
                prod = _component_mul(g[j], f[d - j])
                _component_axpy(acc, prod, Fraction(-j, d))
        g.append({k: v for k, v in acc.items() if not v.is_zero()})
    out = {}
    for comp in g:
        out.update(comp)
    return Series(a.nvars, a.order, out)


def series_pow_rf(a: Series, e) -> Series:
    if not rf_eq(a.constant_term(), RFunc.one()):
        raise ValueError("series_pow_rf needs constant term 1")
    e = RFunc.of(e)
    if e.is_zero():
        return Series.one(a.nvars, a.order)
    return series_exp(series_log(a).scale(e))


def punctual_unit(nvars: int) -> tuple:
    return (1,) * nvars


def macmahon_log(x, negate_q: bool, order: int, nvars: int) -> Series:
    """log M(x, +-Q) = sum_k k sum_r (x (+-Q)^k)^r / r, truncated."""
    x = tuple(x)
    if len(x) != nvars:
        raise ValueError("monomial length mismatch")
    out = {}
    k = 1
    while sum(x) + k * nvars <= order:
        base = tuple(e + k for e in x)
        r = 1
        while r * sum(base) <= order:
            exps = tuple(r * e for e in base)
            if any(e < 0 for e in exps):
                raise ValueError(f"monomial {exps} with a negative exponent below the truncation order")
            sign = -1 if (negate_q and (k * r) % 2) else 1
            out[exps] = out.get(exps, Fraction(0)) + Fraction(sign * k, r)
            if sum(base) <= 0:
                raise ValueError("MacMahon argument does not raise the degree")
            r += 1
        k += 1
    return Series(nvars, order, {e: v for e, v in out.items() if v})


def macmahon_factor(x, negate_q: bool, order: int, nvars: int | None = None) -> Series:
    """Truncated prod_{k>=1} (1 - x (+-Q)^k)^(-k) with Q = q0 q1 ... qn."""
    if nvars is None:
        nvars = len(tuple(x))
    return series_exp(macmahon_log(x, negate_q, order, nvars))


def substitute_vars(a: Series, mapping: dict, nvars: int | None = None, order: int | None = None) -> Series:
    """Monomial substitution ``q_i -> sign * q^exps``; unmapped variables
    are kept when the target has the same number of variables."""
    nvars = a.nvars if nvars is None else nvars
    order = a.order if order is None else order
    images = []
    for i in range(a.nvars):
        if i in mapping:
            sign, exps = mapping[i]
            exps = tuple(exps)
        else:
            if nvars != a.nvars:
                raise ValueError(f"variable {i} has no image")
            sign, exps = 1, tuple(1 if j == i else 0 for j in range(nvars))
        if len(exps) != nvars:
            raise ValueError("image monomial length mismatch")
        if any(e < 0 for e in exps):
            raise ValueError("substitution produces a negative exponent")
        images.append((sign, exps))
    out = {}
    for k, v in a.c.items():
        sign = 1
        exps = (0,) * nvars
        for (sg, im), e in zip(images, k):
            if e:
                sign *= sg ** e
                exps = tuple(x + e * y for x, y in zip(exps, im))
        if sum(exps) > order:
            continue
        term = v if sign == 1 else -v
        out[exps] = out[exps] + term if exps in out else term
    return Series(nvars, order, out)


def q_log_derivative(a: Series) -> Series:
    """Q d/dQ on a series supported on powers of Q = q0...qn."""
    out = {}
    for k, v in a.c.items():
        if len(set(k)) > 1:
            raise ValueError("Q d/dQ is only defined on punctual series")
        if k[0]:
            out[k] = v * k[0]
    return Series(a.nvars, a.order, out)


def is_punctual(a: Series) -> bool:
    return all(len(set(k)) <= 1 for k in a.c)
