"""Exact scalar arithmetic.

Scalars live in the field ``Q(p)[θ]/(f)``: rational numbers, optionally
extended by one formal parameter ``p`` (transcendental, e.g. ``t`` or ``b``)
and by one algebraic generator ``θ`` with a monic irreducible minimal
polynomial ``f`` over Q plus an isolating interval that selects the real root.

Equality and zero-testing are exact and total.  Sign queries are exact for
algebraic values (interval bisection) and raise :class:`ParameterizedInput`
when the value genuinely depends on the formal parameter.

Representation: plain rationals ride on ``gmpy2.mpq`` (the fast path used by
every concrete Cartan datum); general values are polynomials in θ of degree
``< deg f`` whose coefficients are reduced rational functions of the
parameter.  All values are kept canonical at all times, so structural
equality is value equality.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import gmpy2
from gmpy2 import mpq, mpz

from .errors import FieldMismatch, InvalidParameters, ParameterizedInput

THETA = "θ"

_Q0 = mpq(0)
_Q1 = mpq(1)

# ---------------------------------------------------------------------------
# dense univariate polynomials over mpq: tuples of coefficients, ascending
# degree, no trailing zeros; () is the zero polynomial.

Poly = tuple

_P1 = (_Q1,)


def _pnorm(cs) -> Poly:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _pnorm(out)


def _pneg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def _psub(a: Poly, b: Poly) -> Poly:
    return _padd(a, _pneg(b))


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [_Q0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _pnorm(out)


def _pscale(a: Poly, c) -> Poly:
    if not c:
        return ()
    return tuple(x * c for x in a)


def _pdivmod(a: Poly, b: Poly) -> tuple:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    q = [_Q0] * (len(a) - len(b) + 1)
    r = list(a)
    lb = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = r[i + len(b) - 1] / lb
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                r[i + j] -= c * bj
    return _pnorm(q), _pnorm(r)


def _pgcd(a: Poly, b: Poly) -> Poly:
    a, b = _pnorm(a), _pnorm(b)
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if not a:
        return ()
    lc = a[-1]
    if lc == 1:
        return a
    return tuple(c / lc for c in a)


def _plcm(a: Poly, b: Poly) -> Poly:
    g = _pgcd(a, b)
    m = _pmul(a, _pdivmod(b, g)[0])
    lc = m[-1]
    if lc == 1:
        return m
    return tuple(c / lc for c in m)


def _peval(a: Poly, x) -> "mpq":
    acc = _Q0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _pderiv(a: Poly) -> Poly:
    return _pnorm([i * a[i] for i in range(1, len(a))])


def _ieval(a: Poly, lo, hi) -> tuple:
    """Exact interval evaluation of ``a`` on ``[lo, hi]`` (Horner)."""
    rlo = rhi = _Q0
    for c in reversed(a):
        cands = (rlo * lo, rlo * hi, rhi * lo, rhi * hi)
        rlo = min(cands) + c
        rhi = max(cands) + c
    return rlo, rhi


def _sturm_count(f: Poly, lo, hi) -> int:
    """Distinct real roots of squarefree ``f`` in ``(lo, hi]``."""
    chain = [f, _pderiv(f)]
    while chain[-1]:
        r = _pdivmod(chain[-2], chain[-1])[1]
        if not r:
            break
        chain.append(_pneg(r))

    def changes(x) -> int:
        signs = []
        for p in chain:
            v = _peval(p, x)
            if v:
                signs.append(1 if v > 0 else -1)
        return sum(1 for i in range(len(signs) - 1) if signs[i] != signs[i + 1])

    return changes(lo) - changes(hi)


def _has_rational_root(f: Poly) -> bool:
    # rational root theorem on the integer-cleared polynomial
    den = mpz(1)
    for c in f:
        den = gmpy2.lcm(den, c.denominator)
    ints = [mpz(c * den) for c in f]
    g = mpz(0)
    for c in ints:
        g = gmpy2.gcd(g, c)
    ints = [c // g for c in ints]
    a0, an = ints[0], ints[-1]
    if a0 == 0:
        return True
    ps = [d for d in range(1, abs(int(a0)) + 1) if a0 % d == 0]
    qs = [d for d in range(1, abs(int(an)) + 1) if an % d == 0]
    for p in ps:
        for q in qs:
            for cand in (mpq(p, q), mpq(-p, q)):
                if _peval(f, cand) == 0:
                    return True
    return False


def _is_irreducible(f: Poly) -> bool:
    deg = len(f) - 1
    if deg == 1:
        return True
    if _has_rational_root(f):
        return False
    if deg <= 3:
        return True  # no rational root ⇒ irreducible for cubics and below
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(
        sum(sympy.Rational(int(c.numerator), int(c.denominator)) * x ** i
            for i, c in enumerate(f)),
        x,
        domain="QQ",
    )
    return poly.is_irreducible


# ---------------------------------------------------------------------------
# reduced rational functions of the parameter: (num, den) with den monic,
# gcd(num, den) = 1; the zero function is ((), (1,)).

_R0 = ((), _P1)
_R1 = (_P1, _P1)


def _rnorm(num: Poly, den: Poly):
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return _R0
    g = _pgcd(num, den)
    if len(g) > 1:
        num = _pdivmod(num, g)[0]
        den = _pdivmod(den, g)[0]
    lc = den[-1]
    if lc != 1:
        num = tuple(c / lc for c in num)
        den = tuple(c / lc for c in den)
    return num, den


def _r_from_q(q) -> tuple:
    return ((q,), _P1) if q else _R0


def _radd(a, b):
    return _rnorm(_padd(_pmul(a[0], b[1]), _pmul(b[0], a[1])), _pmul(a[1], b[1]))


def _rneg(a):
    return (_pneg(a[0]), a[1])


def _rsub(a, b):
    return _radd(a, _rneg(b))


def _rmul(a, b):
    return _rnorm(_pmul(a[0], b[0]), _pmul(a[1], b[1]))


def _rinv(a):
    if not a[0]:
        raise ZeroDivisionError("inverse of zero rational function")
    return _rnorm(a[1], a[0])


def _r_is_param_free(a) -> bool:
    return len(a[0]) <= 1 and a[1] == _P1


# ---------------------------------------------------------------------------
# θ-polynomials: tuples of rational functions, ascending θ-degree,
# trailing zeros trimmed, always reduced modulo the minimal polynomial.


def _tnorm(cs) -> tuple:
    cs = list(cs)
    while cs and not cs[-1][0]:
        cs.pop()
    return tuple(cs)


def _tadd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = _radd(out[i], c)
    return _tnorm(out)


def _tneg(a):
    return tuple(_rneg(c) for c in a)


def _tmul_raw(a, b):
    if not a or not b:
        return ()
    out = [_R0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai[0]:
            for j, bj in enumerate(b):
                if bj[0]:
                    out[i + j] = _radd(out[i + j], _rmul(ai, bj))
    return _tnorm(out)


def _tmod(a, f_r):
    """Reduce a θ-polynomial modulo the monic minimal polynomial."""
    df = len(f_r) - 1
    r = list(a)
    while len(r) > df:
        c = r[-1]
        k = len(r) - 1 - df
        if c[0]:
            for j in range(df):
                if f_r[j][0]:
                    r[k + j] = _rsub(r[k + j], _rmul(c, f_r[j]))
        r.pop()
    return _tnorm(r)


def _tdivmod(a, b):
    if not b:
        raise ZeroDivisionError("θ-polynomial division by zero")
    if len(a) < len(b):
        return (), a
    inv_lb = _rinv(b[-1])
    q = [_R0] * (len(a) - len(b) + 1)
    r = list(a)
    for i in range(len(a) - len(b), -1, -1):
        c = _rmul(r[i + len(b) - 1], inv_lb)
        if c[0]:
            q[i] = c
            for j, bj in enumerate(b):
                r[i + j] = _rsub(r[i + j], _rmul(c, bj))
    return _tnorm(q), _tnorm(r)


def _tinv(a, f_r):
    """Inverse of ``a`` modulo the monic irreducible ``f_r``."""
    r0, r1 = list(f_r), list(a)
    s0, s1 = (), (_R1,)
    while _tnorm(r1):
        q, r = _tdivmod(tuple(r0), tuple(r1))
        r0, r1 = r1, list(r)
        s0, s1 = s1, _tadd(tuple(s0), _tneg(_tmul_raw(q, tuple(s1))))
    g = _tnorm(r0)
    if len(g) != 1:
        raise ZeroDivisionError("not invertible modulo the minimal polynomial")
    c = _rinv(g[0])
    return _tmod(tuple(_rmul(c, s) for s in s0), f_r)


# ---------------------------------------------------------------------------


def _to_mpq(x) -> "mpq":
    if isinstance(x, (int, mpz)) or type(x) is mpq:
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class ScalarField:
    """The coefficient field Q(param)[θ]/(minpoly).

    Parameters
    ----------
    param:
        Name of the formal parameter, or None.  At most one parameter is
        supported; multi-parameter input raises :class:`InvalidParameters`.
    minpoly:
        Coefficients of the minimal polynomial of θ over Q, ascending degree.
        Normalized to monic; must be irreducible.  A degree-1 polynomial
        makes θ a plain rational constant (degenerate but accepted).
    interval:
        Pair (lo, hi) of rationals isolating exactly one real root of the
        minimal polynomial; required whenever a genuine θ is present.
    assumptions:
        Strings recording declared non-vanishing/genericity side conditions
        on the parameter (e.g. "b-1").  They are echoed through
        serialization; the formal-parameter representation already treats
        the parameter as transcendental, so the assumptions hold by
        construction in every probe.
    """

    __slots__ = ("param", "minpoly", "interval", "assumptions",
                 "_theta_const", "_f_ratf", "_flo_sign")

    def __init__(self, param: Optional[str] = None,
                 minpoly: Optional[Sequence] = None,
                 interval: Optional[Sequence] = None,
                 assumptions: Iterable[str] = ()):
        if param is not None:
            if not isinstance(param, str) or not re.fullmatch(r"[A-Za-z_]\w*", param):
                raise InvalidParameters(f"bad parameter name {param!r}")
            if param in (THETA, "theta"):
                raise InvalidParameters("the parameter may not be called θ")
        self.param = param
        self._theta_const = None
        if minpoly is not None:
            f = _pnorm([_to_mpq(c) for c in minpoly])
            if len(f) < 2:
                raise InvalidParameters("minimal polynomial must have degree ≥ 1")
            lc = f[-1]
            if lc != 1:
                f = tuple(c / lc for c in f)
            if len(f) == 2:
                # θ is the rational -f[0]; fold it away
                self.minpoly = None
                self.interval = None
                self._theta_const = -f[0]
            else:
                if not _is_irreducible(f):
                    raise InvalidParameters("minimal polynomial is reducible over Q")
                if interval is None:
                    raise InvalidParameters("an isolating interval is required for θ")
                lo, hi = (_to_mpq(interval[0]), _to_mpq(interval[1]))
                if not lo < hi:
                    raise InvalidParameters("empty isolating interval")
                if _peval(f, lo) == 0 or _peval(f, hi) == 0:
                    raise InvalidParameters("isolating interval endpoints must not be roots")
                if _sturm_count(f, lo, hi) != 1:
                    raise InvalidParameters("interval must isolate exactly one real root")
                self.minpoly = f
                self.interval = (lo, hi)
        else:
            if interval is not None:
                raise InvalidParameters("isolating interval given without a minimal polynomial")
            self.minpoly = None
            self.interval = None
        self._f_ratf = (tuple(_r_from_q(c) for c in self.minpoly)
                        if self.minpoly else None)
        self._flo_sign = (1 if _peval(self.minpoly, self.interval[0]) > 0 else -1) \
            if self.minpoly else 0
        self.assumptions = tuple(assumptions)
        for s in self.assumptions:
            try:
                val = self.parse(s)
            except ValueError:
                continue  # free-form declaration; kept verbatim
            if val.is_zero:
                raise InvalidParameters(f"assumption {s!r} is identically zero")

    # -- identity ----------------------------------------------------------

    def _key(self):
        return (self.param, self.minpoly, self.interval, self._theta_const)

    def __eq__(self, other):
        if not isinstance(other, ScalarField):
            return NotImplemented
        return self._key() == other._key() and self.assumptions == other.assumptions

    def __hash__(self):
        return hash(self._key())

    def compatible(self, other: "ScalarField") -> bool:
        return self._key() == other._key()

    @property
    def is_rationals(self) -> bool:
        return self.param is None and self.minpoly is None

    def __repr__(self):
        bits = []
        if self.param:
            bits.append(f"param={self.param!r}")
        if self.minpoly:
            bits.append(f"minpoly={[str(c) for c in self.minpoly]}")
        return f"ScalarField({', '.join(bits)})"

    # -- constructors ------------------------------------------------------

    def scalar(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            return coerce_to(self, value)
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, float):
            raise TypeError("floats are not exact; pass a Fraction or string")
        return Scalar(self, q=_to_mpq(value))

    def zero(self) -> "Scalar":
        return Scalar(self, q=_Q0)

    def one(self) -> "Scalar":
        return Scalar(self, q=_Q1)

    def parameter(self) -> "Scalar":
        if self.param is None:
            raise InvalidParameters("field has no formal parameter")
        return Scalar(self, t=(((_Q0, _Q1), _P1),))

    def theta(self) -> "Scalar":
        if self._theta_const is not None:
            return Scalar(self, q=self._theta_const)
        if self.minpoly is None:
            raise InvalidParameters("field has no algebraic generator")
        return Scalar(self, t=(_R0, _R1))

    def parse(self, text: str) -> "Scalar":
        return _parse_scalar(text, self)

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        d = {
            "parameters": [self.param] if self.param else [],
            "minpoly": [str(c) for c in self.minpoly] if self.minpoly else [],
            "nonzero_assumptions": list(self.assumptions),
        }
        if self.interval is not None:
            d["isolating_interval"] = [str(self.interval[0]), str(self.interval[1])]
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "ScalarField":
        params = d.get("parameters", [])
        if len(params) > 1:
            raise InvalidParameters("at most one formal parameter is supported")
        minpoly = d.get("minpoly") or None
        return cls(
            param=params[0] if params else None,
            minpoly=minpoly,
            interval=d.get("isolating_interval") if minpoly else None,
            assumptions=d.get("nonzero_assumptions", ()),
        )


QQ = ScalarField()


def _join_fields(f1: ScalarField, f2: ScalarField) -> ScalarField:
    if f1 is f2 or f1.compatible(f2):
        return f1
    if f1.is_rationals:
        return f2
    if f2.is_rationals:
        return f1
    raise FieldMismatch("scalars from incompatible fields")


def coerce_to(field: ScalarField, s: "Scalar") -> "Scalar":
    if s.field is field or s.field.compatible(field):
        return Scalar(field, q=s._q, t=s._t) if s.field is not field else s
    if s.field.is_rationals:
        return Scalar(field, q=s._q)
    raise FieldMismatch("cannot move a non-rational scalar between fields")


class Scalar:
    """An exact element of a :class:`ScalarField`.

    Immutable and hashable; arithmetic keeps values canonical, so ``==`` is
    value equality and plain rationals always travel on the mpq fast path.
    """

    __slots__ = ("field", "_q", "_t")

    def __init__(self, field: ScalarField, q=None, t=None):
        self.field = field
        if t is not None:
            t = _tnorm(t)
            if not t:
                q, t = _Q0, None
            elif len(t) == 1 and _r_is_param_free(t[0]):
                q, t = (t[0][0][0] if t[0][0] else _Q0), None
        self._q = q
        self._t = t

    # -- representation conversions -----------------------------------------

    def _theta_form(self):
        if self._t is not None:
            return self._t
        return (_r_from_q(self._q),) if self._q else ()

    @property
    def is_rational(self) -> bool:
        return self._q is not None

    @property
    def is_zero(self) -> bool:
        return self._q is not None and self._q == 0

    @property
    def has_parameter(self) -> bool:
        return self._t is not None and any(
            len(n) > 1 or d != _P1 for (n, d) in self._t)

    def as_mpq(self) -> "mpq":
        if self._q is None:
            raise ParameterizedInput(f"{self} is not a plain rational")
        return self._q

    def as_fraction(self) -> Fraction:
        q = self.as_mpq()
        return Fraction(int(q.numerator), int(q.denominator))

    # -- arithmetic ----------------------------------------------------------

    def _pair(self, other):
        if isinstance(other, Scalar):
            field = _join_fields(self.field, other.field)
            return field, other
        if isinstance(other, (int, mpz, Fraction)) or type(other) is mpq:
            return self.field, Scalar(self.field, q=_to_mpq(other))
        return None, None

    def __add__(self, other):
        field, other = self._pair(other)
        if field is None:
            return NotImplemented
        if self._q is not None and other._q is not None:
            return Scalar(field, q=self._q + other._q)
        return Scalar(field, t=_tadd(self._theta_form(), other._theta_form()))

    __radd__ = __add__

    def __neg__(self):
        if self._q is not None:
            return Scalar(self.field, q=-self._q)
        return Scalar(self.field, t=_tneg(self._t))

    def __sub__(self, other):
        field, other = self._pair(other)
        if field is None:
            return NotImplemented
        if self._q is not None and other._q is not None:
            return Scalar(field, q=self._q - other._q)
        return Scalar(field, t=_tadd(self._theta_form(), _tneg(other._theta_form())))

    def __rsub__(self, other):
        field, other = self._pair(other)
        if field is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        field, other = self._pair(other)
        if field is None:
            return NotImplemented
        if self._q is not None and other._q is not None:
            return Scalar(field, q=self._q * other._q)
        prod = _tmul_raw(self._theta_form(), other._theta_form())
        if field._f_ratf is not None:
            prod = _tmod(prod, field._f_ratf)
        return Scalar(field, t=prod)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero:
            raise ZeroDivisionError("scalar division by zero")
        if self._q is not None:
            return Scalar(self.field, q=1 / self._q)
        t = self._t
        if len(t) == 1:
            return Scalar(self.field, t=(_rinv(t[0]),))
        return Scalar(self.field, t=_tinv(t, self.field._f_ratf))

    def __truediv__(self, other):
        field, other = self._pair(other)
        if field is None:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("scalar division by zero")
        if self._q is not None and other._q is not None:
            return Scalar(field, q=self._q / other._q)
        return Scalar(field, t=self._theta_form()) * coerce_to(field, other).inverse()

    def __rtruediv__(self, other):
        field, other = self._pair(other)
        if field is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = Scalar(self.field, q=_Q1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- predicates and order -------------------------------------------------

    def sign(self) -> int:
        """Exact sign (-1, 0, 1); raises ParameterizedInput when the value
        depends on the formal parameter."""
        if self._q is not None:
            return (self._q > 0) - (self._q < 0)
        if self.has_parameter:
            raise ParameterizedInput(
                f"sign of {self} depends on the formal parameter")
        g = tuple(n[0] if n else _Q0 for (n, _) in self._t)
        lo, hi = self.field.interval
        flo = self.field._flo_sign
        f = self.field.minpoly
        while True:
            glo, ghi = _ieval(g, lo, hi)
            if glo > 0:
                return 1
            if ghi < 0:
                return -1
            mid = (lo + hi) / 2
            fm = _peval(f, mid)
            assert fm != 0, "irreducible minimal polynomial has no rational root"
            if (fm > 0) == (flo > 0):
                lo = mid
            else:
                hi = mid

    def __eq__(self, other):
        if isinstance(other, (int, mpz, Fraction)) or type(other) is mpq:
            return self._q is not None and self._q == _to_mpq(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        if self._q is not None or other._q is not None:
            return self._q == other._q
        return self.field.compatible(other.field) and self._t == other._t

    def __hash__(self):
        if self._q is not None:
            return hash(self._q)
        return hash(self._t)

    def _cmp(self, other) -> int:
        diff = self - other
        if diff is NotImplemented:
            raise TypeError("incomparable")
        return diff.sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return not self.is_zero

    # -- printing --------------------------------------------------------------

    def __str__(self):
        if self._q is not None:
            return str(self._q)
        return _format_general(self._t, self.field)

    def __repr__(self):
        return f"Scalar({str(self)!r})"


# ---------------------------------------------------------------------------
# canonical string form.
#
# General values are printed as N/Dz where N is an integer-coefficient
# polynomial in (param, θ) and Dz an integer-coefficient polynomial in the
# parameter with positive leading coefficient; the integer contents of N and
# Dz are coprime and their polynomial gcd is 1.  Examples: "3/2", "(3*t-1)/2",
# "θ^2/3", "(t+1)/(t-1)".


def _format_general(t, field: ScalarField) -> str:
    dens = [den for (num, den) in t if num]
    D = _P1
    for d in dens:
        D = _plcm(D, d)
    nums = [_pmul(num, _pdivmod(D, den)[0]) if num else () for (num, den) in t]
    L = mpz(1)
    for p in nums + [D]:
        for c in p:
            L = gmpy2.lcm(L, c.denominator)
    nums = [[mpz(c * L) for c in p] for p in nums]
    Dz = [mpz(c * L) for c in D]
    g = mpz(0)
    for p in nums + [Dz]:
        for c in p:
            g = gmpy2.gcd(g, c)
    nums = [[c // g for c in p] for p in nums]
    Dz = [c // g for c in Dz]

    terms = []  # (coefficient, param degree, θ degree), canonical order
    for hd in range(len(nums) - 1, -1, -1):
        p = nums[hd]
        for td in range(len(p) - 1, -1, -1):
            if p[td]:
                terms.append((p[td], td, hd))
    num_str, nterms = _format_terms(terms, field.param)

    if len(Dz) == 1 and Dz[0] == 1:
        return num_str
    den_terms = [(Dz[td], td, 0) for td in range(len(Dz) - 1, -1, -1) if Dz[td]]
    den_str, dterms = _format_terms(den_terms, field.param)
    if nterms > 1:
        num_str = f"({num_str})"
    bare = dterms == 1 and (den_terms[0][1] == 0 or den_terms[0][0] == 1)
    if not bare:
        den_str = f"({den_str})"
    return f"{num_str}/{den_str}"


def _format_terms(terms, param: Optional[str]) -> tuple:
    parts = []
    for coef, td, hd in terms:
        mag = abs(coef)
        factors = []
        if mag != 1 or (td == 0 and hd == 0):
            factors.append(str(mag))
        if td:
            factors.append(param if td == 1 else f"{param}^{td}")
        if hd:
            factors.append(THETA if hd == 1 else f"{THETA}^{hd}")
        parts.append(("-" if coef < 0 else "+", "*".join(factors)))
    out = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
    for sgn, s in parts[1:]:
        out += sgn + s
    return out, len(parts)


# ---------------------------------------------------------------------------
# parsing.  Grammar (whitespace-insensitive):
#   expr   := term (('+'|'-') term)*
#   term   := unary (('*'|'/') unary)*
#   unary  := '-' unary | power
#   power  := atom ('^' integer)?
#   atom   := integer | symbol | '(' expr ')'


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_θ][A-Za-z_0-9θ]*)"
                    r"|(?P<op>[-+*/^()]))")


def _tokenize(text: str):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"bad scalar syntax near {text[pos:]!r}")
            break
        if m.group("int") is not None:
            out.append(("int", int(m.group("int"))))
        elif m.group("name") is not None:
            out.append(("name", m.group("name")))
        else:
            out.append(("op", m.group("op")))
        pos = m.end()
    return out


def _parse_scalar(text: str, field: ScalarField) -> Scalar:
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty scalar string")
    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else (None, None)

    def take():
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def atom() -> Scalar:
        kind, val = peek()
        if kind == "int":
            take()
            return field.scalar(val)
        if kind == "name":
            take()
            if val in (THETA, "theta"):
                return field.theta()
            if field.param is not None and val == field.param:
                return field.parameter()
            raise ValueError(f"unknown symbol {val!r} in scalar string")
        if (kind, val) == ("op", "("):
            take()
            e = expr()
            if peek() != ("op", ")"):
                raise ValueError("unbalanced parenthesis in scalar string")
            take()
            return e
        raise ValueError(f"unexpected token {val!r} in scalar string")

    def power() -> Scalar:
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = peek()
            if kind != "int":
                raise ValueError("exponent must be a nonnegative integer")
            take()
            return base ** val
        return base

    def unary() -> Scalar:
        if peek() == ("op", "-"):
            take()
            return -unary()
        return power()

    def term() -> Scalar:
        acc = unary()
        while peek()[0] == "op" and peek()[1] in "*/":
            op = take()[1]
            rhs = unary()
            acc = acc * rhs if op == "*" else acc / rhs
        return acc

    def expr() -> Scalar:
        acc = term()
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    result = expr()
    if idx != len(tokens):
        raise ValueError(f"trailing garbage in scalar string {text!r}")
    return result


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntegralityResult:
    """Outcome of :func:`integrality_probe`.

    ``tag`` is one of "NotInteger", "Integer", "NonpositiveInteger",
    "NonnegativeInteger" (0 reports the plain "Integer" tag; the boolean
    accessors treat it as both nonpositive and nonnegative).
    """

    tag: str
    value: Optional[int]

    @property
    def is_integer(self) -> bool:
        return self.value is not None

    @property
    def is_nonpositive_integer(self) -> bool:
        return self.value is not None and self.value <= 0

    @property
    def is_nonnegative_integer(self) -> bool:
        return self.value is not None and self.value >= 0


def integrality_probe(s: Union[Scalar, int, Fraction]) -> IntegralityResult:
    """Decide exactly whether a scalar is a (signed) integer.

    Total: any value involving the formal parameter or a genuine θ component
    is NotInteger, because the canonical representative of an integer is a
    plain rational constant.
    """
    if not isinstance(s, Scalar):
        s = QQ.scalar(s)
    if s._q is None or s._q.denominator != 1:
        return IntegralityResult("NotInteger", None)
    n = int(s._q)
    if n < 0:
        return IntegralityResult("NonpositiveInteger", n)
    if n > 0:
        return IntegralityResult("NonnegativeInteger", n)
    return IntegralityResult("Integer", 0)
