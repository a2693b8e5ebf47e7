"""Exact coefficient field for the whole engine.

Scalars are rational functions over Q in the three formal parameters

    mu   -- the quantum-group deformation parameter (real),
    lam  -- the 1-dimensional calculus parameter (real),
    nu   -- the normalization constant playing the role of 2*pi*i
            (purely imaginary, so conjugation negates it).

The canonical reduced form -- numerator and denominator coprime
integer-coefficient polynomials with coprime integer contents and a
positive trailing denominator coefficient -- makes equal values print
identically and hash identically, so scalars are usable as dict keys.

Internally a value may sit in an unreduced state between operations;
cancellation is performed lazily (and cached) the first time a
canonical view is required, plus eagerly whenever an intermediate
result grows past a size threshold.  This keeps bulk linear algebra
over the field orders of magnitude cheaper than reducing at every
step, without ever leaving exact arithmetic.

Everything observable here (the operator surface, conjugation,
specialization rules, text syntax) is part of this module's contract.

Polynomials are sparse dicts keyed by packed exponent triples: the
exponents of mu, lam and nu occupy three 20-bit fields of one integer,
mu highest, so packed keys compare in lexicographic monomial order and
multiplying monomials is a single integer addition.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd
from typing import Dict, Iterable, List, Mapping, Tuple, Union

PARAMETER_NAMES = ("mu", "lam", "nu")
_NU_POSITION = 2

_SHIFTS = (40, 20, 0)
_FIELD_MASK = (1 << 20) - 1

_Poly = Dict[int, int]

_Coercible = Union["Scalar", int, Fraction]


def _pack(exponents: Tuple[int, int, int]) -> int:
    return (exponents[0] << 40) | (exponents[1] << 20) | exponents[2]


def _unpack(m: int) -> Tuple[int, int, int]:
    return (m >> 40, (m >> 20) & _FIELD_MASK, m & _FIELD_MASK)


def _exp(m: int, var: int) -> int:
    return (m >> _SHIFTS[var]) & _FIELD_MASK


# -- integer polynomial helpers -------------------------------------------
#
# The zero polynomial is the empty dict; stored coefficients are never
# zero.  Helpers never mutate their arguments.


def _padd(a: _Poly, b: _Poly) -> _Poly:
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for m, c in b.items():
        v = out.get(m)
        if v is None:
            out[m] = c
        else:
            v += c
            if v:
                out[m] = v
            else:
                del out[m]
    return out


def _psub(a: _Poly, b: _Poly) -> _Poly:
    if not b:
        return dict(a)
    out = dict(a)
    for m, c in b.items():
        v = out.get(m)
        if v is None:
            out[m] = -c
        else:
            v -= c
            if v:
                out[m] = v
            else:
                del out[m]
    return out


def _pneg(a: _Poly) -> _Poly:
    return {m: -c for m, c in a.items()}


def _pmul_int(a: _Poly, k: int) -> _Poly:
    if k == 1:
        return dict(a)
    return {m: c * k for m, c in a.items()}


def _pdiv_int(a: _Poly, k: int) -> _Poly:
    if k == 1:
        return dict(a)
    return {m: c // k for m, c in a.items()}


def _pmul(a: _Poly, b: _Poly) -> _Poly:
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        ((mb, cb),) = b.items()
        if mb == 0:
            if cb == 1:
                return dict(a)
            return {m: c * cb for m, c in a.items()}
        return {m + mb: c * cb for m, c in a.items()}
    out: _Poly = {}
    get = out.get
    for ma, ca in a.items():
        for mb, cb in b.items():
            key = ma + mb
            v = get(key)
            if v is None:
                out[key] = ca * cb
            else:
                v += ca * cb
                if v:
                    out[key] = v
                else:
                    del out[key]
    return out


def _ppow(a: _Poly, e: int) -> _Poly:
    result = {0: 1}
    base = a
    while e:
        if e & 1:
            result = _pmul(result, base)
        e >>= 1
        if e:
            base = _pmul(base, base)
    return result


def _pcontent(a: _Poly) -> int:
    g = 0
    for c in a.values():
        g = _igcd(g, c)
        if g == 1:
            return 1
    return g


def _min_monom(a: _Poly) -> int:
    i = j = k = _FIELD_MASK
    for m in a:
        x, y, z = m >> 40, (m >> 20) & _FIELD_MASK, m & _FIELD_MASK
        if x < i:
            i = x
        if y < j:
            j = y
        if z < k:
            k = z
        if not (i or j or k):
            return 0
    return (i << 40) | (j << 20) | k


def _shift_down(a: _Poly, m: int) -> _Poly:
    # each exponent of m is bounded by the matching exponent in every
    # monomial of a, so packed subtraction cannot borrow across fields
    if m == 0:
        return a
    return {key - m: c for key, c in a.items()}


def _vars_used(a: _Poly) -> frozenset:
    used = set()
    for m in a:
        if m >> 40:
            used.add(0)
        if (m >> 20) & _FIELD_MASK:
            used.add(1)
        if m & _FIELD_MASK:
            used.add(2)
        if len(used) == 3:
            break
    return frozenset(used)


def _divides(mb: int, ma: int) -> bool:
    """Componentwise <= for packed monomials."""
    return ((ma >> 40) >= (mb >> 40)
            and ((ma >> 20) & _FIELD_MASK) >= ((mb >> 20) & _FIELD_MASK)
            and (ma & _FIELD_MASK) >= (mb & _FIELD_MASK))


def _pdiv_exact(a: _Poly, b: _Poly):
    """Quotient a / b when the division is exact, else None."""
    if not a:
        return {}
    if len(b) == 1:
        ((mb, cb),) = b.items()
        out = {}
        for m, c in a.items():
            if not _divides(mb, m) or c % cb:
                return None
            out[m - mb] = c // cb
        return out
    mb = max(b)
    cb = b[mb]
    r = dict(a)
    out: _Poly = {}
    while r:
        m = max(r)
        c = r[m]
        if not _divides(mb, m) or c % cb:
            return None
        q = c // cb
        mq = m - mb
        out[mq] = q
        for mm, cc in b.items():
            key = mq + mm
            v = r.get(key, 0) - q * cc
            if v:
                r[key] = v
            else:
                r.pop(key, None)
    return out


# -- polynomial gcd --------------------------------------------------------


def _gcd_univar(a: _Poly, b: _Poly, var: int) -> _Poly:
    """Primitive-PRS gcd of two primitive univariate polynomials."""
    shift = _SHIFTS[var]

    def to_list(p: _Poly) -> List[int]:
        deg = max(p) >> shift
        out = [0] * (deg + 1)
        for m, c in p.items():
            out[m >> shift] = c
        return out

    def trim(f: List[int]) -> List[int]:
        while f and f[-1] == 0:
            f.pop()
        return f

    def content_list(f: List[int]) -> int:
        g = 0
        for c in f:
            g = _igcd(g, c)
            if g == 1:
                return 1
        return g or 1

    f, g = to_list(a), to_list(b)
    if len(f) < len(g):
        f, g = g, f
    while g:
        # pseudo-remainder of f by g, content-stripped each round
        r = trim(list(f))
        lg = g[-1]
        dg = len(g) - 1
        while r and len(r) - 1 >= dg:
            lr = r[-1]
            r = [c * lg for c in r]
            sh = len(r) - 1 - dg
            for idx, c in enumerate(g):
                r[sh + idx] -= lr * c
            trim(r)
        if r:
            cr = content_list(r)
            if cr != 1:
                r = [c // cr for c in r]
        f, g = g, r
    if f[-1] < 0:
        f = [-c for c in f]
    return {e << shift: c for e, c in enumerate(f) if c}


def _to_rec(p: _Poly, var: int) -> Dict[int, _Poly]:
    shift = _SHIFTS[var]
    clear = ~(_FIELD_MASK << shift)
    out: Dict[int, _Poly] = {}
    for m, c in p.items():
        e = (m >> shift) & _FIELD_MASK
        out.setdefault(e, {})[m & clear] = c
    return out


def _from_rec(rec: Dict[int, _Poly], var: int) -> _Poly:
    shift = _SHIFTS[var]
    out: _Poly = {}
    for e, coeff in rec.items():
        packed = e << shift
        for m, c in coeff.items():
            out[m | packed] = c
    return out


def _gcd_recursive(a: _Poly, b: _Poly, var: int) -> _Poly:
    """Primitive-PRS gcd in Z[rest][var] for multivariate operands."""

    def cont(rec: Dict[int, _Poly]) -> _Poly:
        g: _Poly = {}
        for coeff in rec.values():
            g = _gcd_poly(g, coeff)
            if g == {0: 1}:
                break
        return g

    def strip(rec: Dict[int, _Poly]) -> Dict[int, _Poly]:
        c = cont(rec)
        if c == {0: 1}:
            return rec
        return {e: _pdiv_exact(coeff, c) for e, coeff in rec.items()}

    fa, fb = _to_rec(a, var), _to_rec(b, var)
    ca, cb = cont(fa), cont(fb)
    c = _gcd_poly(ca, cb)
    f = {e: _pdiv_exact(co, ca) for e, co in fa.items()} if ca != {0: 1} else fa
    g = {e: _pdiv_exact(co, cb) for e, co in fb.items()} if cb != {0: 1} else fb
    if max(f) < max(g):
        f, g = g, f
    while g:
        # pseudo-remainder of f by g in the main variable
        r = {e: dict(co) for e, co in f.items()}
        dg = max(g)
        lg = g[dg]
        while r and max(r) >= dg:
            dr = max(r)
            lr = r[dr]
            r = {e: _pmul(co, lg) for e, co in r.items()}
            sh = dr - dg
            for e, co in g.items():
                key = e + sh
                v = _psub(r.get(key, {}), _pmul(lr, co))
                if v:
                    r[key] = v
                else:
                    r.pop(key, None)
        if r:
            r = strip(r)
        f, g = g, r
    pp = _from_rec(f, var)
    if pp[max(pp)] < 0:
        pp = _pneg(pp)
    return _pmul(c, pp)


def _gcd_poly(a: _Poly, b: _Poly) -> _Poly:
    """Gcd of integer polynomials, leading coefficient positive."""
    if not a:
        if not b:
            return {}
        return _pneg(b) if b[max(b)] < 0 else dict(b)
    if not b:
        return _pneg(a) if a[max(a)] < 0 else dict(a)
    ca, cb = _pcontent(a), _pcontent(b)
    c = _igcd(ca, cb)
    a = _pdiv_int(a, ca)
    b = _pdiv_int(b, cb)
    ma, mb = _min_monom(a), _min_monom(b)
    ia, ja, ka = _unpack(ma)
    ib, jb, kb = _unpack(mb)
    m = (min(ia, ib) << 40) | (min(ja, jb) << 20) | min(ka, kb)
    a = _shift_down(a, ma)
    b = _shift_down(b, mb)
    base: _Poly = {m: c}
    if len(a) == 1 or len(b) == 1:
        return base
    va, vb = _vars_used(a), _vars_used(b)
    common = va & vb
    if not common:
        return base
    var = min(common)
    if va <= {var} and vb <= {var}:
        g = _gcd_univar(a, b, var)
    else:
        g = _gcd_recursive(a, b, var)
    return _pmul(base, g)


# -- size threshold for eager cancellation ---------------------------------

_EAGER_LIMIT = 288


class Scalar:
    """Immutable exact rational function in mu, lam and nu."""

    __slots__ = ("_num", "_den", "_norm")

    def __init__(self, value: _Coercible | object = 0):
        if isinstance(value, Scalar):
            self._num = value._num
            self._den = value._den
            self._norm = value._norm
        elif isinstance(value, int):
            self._num = {0: value} if value else {}
            self._den = {0: 1}
            self._norm = True
        elif isinstance(value, Fraction):
            self._num = {0: value.numerator} if value.numerator else {}
            self._den = {0: value.denominator}
            self._norm = True
        else:
            raise TypeError(f"cannot build Scalar from {type(value).__name__}")

    @classmethod
    def _make(cls, num: _Poly, den: _Poly, norm: bool = False) -> "Scalar":
        self = cls.__new__(cls)
        if not num:
            self._num = {}
            self._den = {0: 1}
            self._norm = True
            return self
        self._num = num
        self._den = den
        # a denominator of exactly 1 leaves nothing to cancel
        self._norm = norm or den == {0: 1}
        if not self._norm and len(num) * len(den) > _EAGER_LIMIT:
            self._normalize()
        return self

    # -- canonicalization ----------------------------------------------

    def _normalize(self):
        if self._norm:
            return
        num, den = self._num, self._den
        if not num:
            self._num = {}
            self._den = {0: 1}
            self._norm = True
            return
        g = _gcd_poly(num, den)
        if g != {0: 1}:
            num = _pdiv_exact(num, g)
            den = _pdiv_exact(den, g)
        if den[min(den)] < 0:
            num = _pneg(num)
            den = _pneg(den)
        self._num = num
        self._den = den
        self._norm = True

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other: _Coercible):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not o._num:
            return self
        if not self._num:
            return o
        if self._den == o._den:
            return Scalar._make(_padd(self._num, o._num), self._den)
        return Scalar._make(
            _padd(_pmul(self._num, o._den), _pmul(o._num, self._den)),
            _pmul(self._den, o._den))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not o._num:
            return self
        if self._den == o._den:
            return Scalar._make(_psub(self._num, o._num), self._den)
        return Scalar._make(
            _psub(_pmul(self._num, o._den), _pmul(o._num, self._den)),
            _pmul(self._den, o._den))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o.__sub__(self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not self._num or not o._num:
            return ZERO
        return Scalar._make(_pmul(self._num, o._num),
                            _pmul(self._den, o._den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not o._num:
            raise ZeroDivisionError("scalar division by zero")
        if not self._num:
            return ZERO
        return Scalar._make(_pmul(self._num, o._den),
                            _pmul(self._den, o._num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o.__truediv__(self)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent == 0:
            return ONE
        if exponent < 0:
            if not self._num:
                raise ZeroDivisionError("zero scalar to a negative power")
            return Scalar._make(_ppow(self._den, -exponent),
                                _ppow(self._num, -exponent))
        if not self._num:
            return ZERO
        return Scalar._make(_ppow(self._num, exponent),
                            _ppow(self._den, exponent))

    def __neg__(self):
        out = Scalar.__new__(Scalar)
        out._num = _pneg(self._num)
        out._den = self._den
        out._norm = self._norm
        return out

    def __pos__(self):
        return self

    # -- comparisons / hashing -----------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        elif not isinstance(other, Scalar):
            return NotImplemented
        if not self._num:
            return not other._num
        if not other._num:
            return False
        if self._den == other._den:
            return self._num == other._num
        if self._norm and other._norm:
            return False
        return _pmul(self._num, other._den) == _pmul(other._num, self._den)

    def __hash__(self):
        self._normalize()
        return hash((frozenset(self._num.items()),
                     frozenset(self._den.items())))

    def __bool__(self):
        return bool(self._num)

    # -- structure -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._num

    @property
    def is_one(self) -> bool:
        return self._num == self._den

    def conj(self) -> "Scalar":
        """Conjugation: fixes mu and lam, negates nu."""

        def flip(p: _Poly) -> _Poly:
            # the nu exponent occupies the low bits of the packed key
            return {m: -c if m & 1 else c for m, c in p.items()}

        num, den = flip(self._num), flip(self._den)
        if self._norm and num and den[min(den)] < 0:
            num, den = _pneg(num), _pneg(den)
        out = Scalar.__new__(Scalar)
        out._num = num
        out._den = den
        out._norm = self._norm
        return out

    def numerator_degree(self) -> int:
        """Total degree of the numerator (pivot heuristic for elimination)."""
        self._normalize()
        if not self._num:
            return 0
        return max((m >> 40) + ((m >> 20) & _FIELD_MASK) + (m & _FIELD_MASK)
                   for m in self._num)

    def substitute(self, assignments: Mapping[str, Fraction | int]) -> "Scalar":
        """Specialize parameters to rational values.

        The calculus parameter lam admits only real values outside
        {-1, 0, 1}; other substitutions merely must not annihilate the
        denominator.
        """
        values: Dict[int, Fraction] = {}
        for name, value in assignments.items():
            if name not in PARAMETER_NAMES:
                raise ValueError(f"unknown parameter {name!r}")
            value = Fraction(value)
            if name == "lam" and value in (Fraction(-1), Fraction(0),
                                           Fraction(1)):
                raise ValueError("lam may not be specialized to -1, 0 or 1")
            values[PARAMETER_NAMES.index(name)] = value

        def evaluate(p: _Poly) -> Dict[int, Fraction]:
            out: Dict[int, Fraction] = {}
            for m, c in p.items():
                factor = Fraction(c)
                key = m
                for pos, val in values.items():
                    e = _exp(key, pos)
                    if e:
                        factor *= val ** e
                        key &= ~(_FIELD_MASK << _SHIFTS[pos])
                v = out.get(key, 0) + factor
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
            return out

        def clear(p: Dict[int, Fraction]) -> Tuple[_Poly, int]:
            scale = 1
            for c in p.values():
                scale = scale * c.denominator // _igcd(scale, c.denominator)
            return ({m: int(c * scale) for m, c in p.items()}, scale)

        num_f = evaluate(self._num)
        den_f = evaluate(self._den)
        if not den_f:
            raise ZeroDivisionError(
                "specialization annihilates the denominator")
        num, num_scale = clear(num_f)
        den, den_scale = clear(den_f)
        return Scalar._make(_pmul_int(num, den_scale),
                            _pmul_int(den, num_scale))

    def as_fraction(self) -> Fraction:
        """Return the value as a rational number; fails if parameters remain."""
        self._normalize()
        if not self._num:
            return Fraction(0)
        if set(self._num) | set(self._den) != {0}:
            raise ValueError("scalar is not constant")
        return Fraction(self._num[0], self._den[0])

    def as_expression(self):
        """Return the value as a sympy expression in mu, lam and nu.

        This is the export hatch for callers that need to hand scalars
        to generic sympy machinery (polynomial solving, factorisation).
        """
        import sympy

        self._normalize()
        symbols = [sympy.Symbol(n) for n in PARAMETER_NAMES]

        def expr(p: _Poly):
            terms = []
            for m, c in p.items():
                t = sympy.Integer(c)
                for s, e in zip(symbols, _unpack(m)):
                    if e:
                        t *= s ** e
                terms.append(t)
            return sympy.Add(*terms) if terms else sympy.Integer(0)

        den = self._den
        if den == {0: 1}:
            return expr(self._num)
        return expr(self._num) / expr(den)

    def replace(self, assignments: Mapping[str, "Scalar"]) -> "Scalar":
        """Substitute scalars for parameters (general composition).

        Unlike :meth:`substitute` this admits arbitrary scalar values,
        e.g. replacing lam by a rational function of mu.  Raises
        ZeroDivisionError when the composition annihilates a
        denominator.
        """
        images = list(_GENERATORS)
        for name, value in assignments.items():
            if name not in PARAMETER_NAMES:
                raise ValueError(f"unknown parameter {name!r}")
            images[PARAMETER_NAMES.index(name)] = Scalar(value)

        powers: Dict[Tuple[int, int], Scalar] = {}

        def power(pos: int, e: int) -> Scalar:
            key = (pos, e)
            hit = powers.get(key)
            if hit is None:
                hit = powers[key] = images[pos] ** e
            return hit

        def compose(p: _Poly) -> Scalar:
            total = ZERO
            for m, c in p.items():
                term = Scalar(c)
                for pos in range(3):
                    e = _exp(m, pos)
                    if e:
                        term = term * power(pos, e)
                total = total + term
            return total

        den = compose(self._den)
        if den.is_zero:
            raise ZeroDivisionError(
                "composition annihilates the denominator")
        return compose(self._num) / den

    def fraction_terms(self):
        """Numerator and denominator as sorted sparse term lists.

        Each list holds (exponents, coefficient) pairs, the exponents
        being a tuple aligned with PARAMETER_NAMES and the coefficient an
        exact Fraction.  The canonical form guarantees the lists identify
        the value uniquely.
        """
        self._normalize()

        def terms_of(p: _Poly):
            return [(_unpack(m), Fraction(p[m])) for m in sorted(p)]

        return terms_of(self._num), terms_of(self._den)

    # -- text ------------------------------------------------------------

    def __str__(self):
        self._normalize()

        def poly_str(p: _Poly) -> str:
            if not p:
                return "0"
            parts = []
            for m in sorted(p, reverse=True):
                c = p[m]
                factors = []
                for name, e in zip(PARAMETER_NAMES, _unpack(m)):
                    if e == 1:
                        factors.append(name)
                    elif e:
                        factors.append(f"{name}^{e}")
                if not factors:
                    parts.append(str(c))
                elif c == 1:
                    parts.append("*".join(factors))
                elif c == -1:
                    parts.append("-" + "*".join(factors))
                else:
                    parts.append("*".join([str(c)] + factors))
            out = parts[0]
            for piece in parts[1:]:
                if piece.startswith("-"):
                    out += " - " + piece[1:]
                else:
                    out += " + " + piece
            return out

        num, den = self._num, self._den
        if den == {0: 1}:
            return poly_str(num)
        # display with a positive leading denominator coefficient
        if num and den[max(den)] < 0:
            num, den = _pneg(num), _pneg(den)
        ntext = poly_str(num)
        dtext = poly_str(den)
        if " " in ntext:
            ntext = f"({ntext})"
        if " " in dtext or "*" in dtext:
            dtext = f"({dtext})"
        return f"{ntext}/{dtext}"

    def __repr__(self):
        return f"Scalar({self})"


def _generator(position: int) -> Scalar:
    out = Scalar.__new__(Scalar)
    out._num = {1 << _SHIFTS[position]: 1}
    out._den = {0: 1}
    out._norm = True
    return out


ZERO = Scalar(0)
ONE = Scalar(1)
MU = _generator(0)
LAM = _generator(1)
NU = _generator(2)

_GENERATORS = (MU, LAM, NU)


def parameter(name: str) -> Scalar:
    """Return the generator scalar with the given name."""
    try:
        return {"mu": MU, "lam": LAM, "nu": NU}[name]
    except KeyError:
        raise ValueError(f"unknown parameter {name!r}") from None


def from_fraction(value: Fraction | int) -> Scalar:
    return Scalar(Fraction(value))


def binomial(s: Scalar | int, k: int) -> Scalar:
    """Generalized binomial coefficient s (s-1) ... (s-k+1) / k!.

    The upper argument may be any scalar, which is what the factorized
    Chern comparison needs for exponents such as mu + 1/mu.
    """
    if k < 0:
        raise ValueError("lower index must be nonnegative")
    s = Scalar(s) if not isinstance(s, Scalar) else s
    result = ONE
    for j in range(k):
        result = result * (s - j)
    factorial = 1
    for j in range(2, k + 1):
        factorial *= j
    return result / factorial


def dot(coeffs: Iterable[Scalar], values: Iterable[Scalar]) -> Scalar:
    total = ZERO
    for c, v in zip(coeffs, values):
        total = total + c * v
    return total
