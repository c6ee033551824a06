"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Values are stored in the power basis {1, z, ..., z^(phi(N)-1)} of
Q[x]/(Phi_N), with integer coefficient vectors over a common positive
denominator.  zeta(N, 1) is e^(2*pi*i/N).  Mixed conductors are promoted
to the lcm on the fly; equality is conductor-blind.  Instances are
immutable, so they can be shared freely between threads.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm


class NotRootOfUnity(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message, position, expected=()):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.expected = tuple(expected)


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(num, den):
    """Exact division of integer polynomials (den monic up to sign)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        assert c % lead == 0
        q = c // lead
        out[k] = q
        if q:
            for j, y in enumerate(den):
                num[k + j] -= q * y
    assert not any(num), "division was not exact"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Coefficients of Phi_n, low degree first, monic with integer entries."""
    if n < 1:
        raise ValueError("conductor must be positive")
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, cyclotomic_polynomial(d))
    return tuple(num)


@lru_cache(maxsize=None)
def euler_phi(n):
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _reduction_rows(n):
    """x^e mod Phi_n as integer rows, for e = phi(n) .. 2*phi(n)-2."""
    phi = euler_phi(n)
    poly = cyclotomic_polynomial(n)
    rows = []
    cur = [-c for c in poly[:phi]]  # x^phi
    for _ in range(phi - 1):
        rows.append(tuple(cur))
        head = cur[phi - 1]
        nxt = [0] + cur[: phi - 1]
        if head:
            for j in range(phi):
                nxt[j] += head * rows[0][j]
        cur = nxt
    return tuple(rows)


def _reduce_exponent(n, e):
    """Integer coefficient vector of zeta_n^e in the power basis."""
    phi = euler_phi(n)
    e %= n
    if e < phi:
        row = [0] * phi
        row[e] = 1
        return row
    # repeated single-step reduction: write x^e = x^(e-phi) * x^phi
    top = [-c for c in cyclotomic_polynomial(n)[:phi]]
    cur = [0] * phi
    cur[phi - 1] = 1
    steps = e - (phi - 1)
    for _ in range(steps):
        head = cur[phi - 1]
        nxt = [0] + cur[: phi - 1]
        if head:
            for j in range(phi):
                nxt[j] += head * top[j]
        cur = nxt
    return cur


@lru_cache(maxsize=None)
def _promotion_rows(n, m):
    """Rows expressing the basis of Q(zeta_n) inside Q(zeta_m), n | m."""
    assert m % n == 0
    step = m // n
    return tuple(tuple(_reduce_exponent(m, i * step)) for i in range(euler_phi(n)))


class Cyclotomic:
    __slots__ = ("n", "num", "den")

    def __init__(self, n, num, den):
        # Internal constructor; use zeta()/from_rational()/parse_cyclo().
        self.n = n
        self.num = num
        self.den = den

    @staticmethod
    def _make(n, num, den):
        if den < 0:
            den = -den
            num = [-x for x in num]
        g = den
        for x in num:
            g = gcd(g, x)
            if g == 1:
                break
        if g > 1:
            num = [x // g for x in num]
            den //= g
        return Cyclotomic(n, tuple(num), den)

    @staticmethod
    def from_rational(q, conductor=1):
        q = Fraction(q)
        phi = euler_phi(conductor)
        num = [0] * phi
        num[0] = q.numerator
        return Cyclotomic._make(conductor, num, q.denominator)

    def promote(self, m):
        if m == self.n:
            return self
        if m % self.n != 0:
            raise ValueError(f"cannot promote conductor {self.n} to {m}")
        rows = _promotion_rows(self.n, m)
        phi = euler_phi(m)
        out = [0] * phi
        for i, c in enumerate(self.num):
            if c:
                row = rows[i]
                for j in range(phi):
                    out[j] += c * row[j]
        return Cyclotomic._make(m, out, self.den)

    def fit(self, m):
        """Express the value at conductor m, promoting or demoting as needed.

        Raises ValueError when the value does not lie in Q(zeta_m).
        """
        if m == self.n:
            return self
        if m % self.n == 0:
            return self.promote(m)
        big = lcm(m, self.n)
        x = self.promote(big)
        rows = _promotion_rows(m, big)
        phi_m, phi_big = euler_phi(m), euler_phi(big)
        # solve sum_i c_i rows[i] = x over Q by Gaussian elimination
        aug = [
            [Fraction(rows[i][j]) for i in range(phi_m)] + [Fraction(x.num[j], x.den)]
            for j in range(phi_big)
        ]
        pivots = []
        r = 0
        for col in range(phi_m):
            piv = next((i for i in range(r, phi_big) if aug[i][col]), None)
            if piv is None:
                continue
            aug[r], aug[piv] = aug[piv], aug[r]
            inv = 1 / aug[r][col]
            aug[r] = [e * inv for e in aug[r]]
            for i in range(phi_big):
                if i != r and aug[i][col]:
                    f = aug[i][col]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
            pivots.append(col)
            r += 1
        for i in range(r, phi_big):
            if aug[i][phi_m]:
                raise ValueError(f"{self!r} does not lie in Q(zeta_{m})")
        coeffs = [Fraction(0)] * phi_m
        for row_idx, col in enumerate(pivots):
            coeffs[col] = aug[row_idx][phi_m]
        den = 1
        for c in coeffs:
            den = lcm(den, c.denominator)
        return Cyclotomic._make(m, [int(c * den) for c in coeffs], den)

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(other)
        return None

    def _align(self, other):
        m = lcm(self.n, other.n)
        return self.promote(m), other.promote(m)

    # ---- ring operations -------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._align(other)
        d = lcm(a.den, b.den)
        fa, fb = d // a.den, d // b.den
        num = [x * fa + y * fb for x, y in zip(a.num, b.num)]
        return Cyclotomic._make(a.n, num, d)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, tuple(-x for x in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._align(other)
        phi = euler_phi(a.n)
        conv = [0] * (2 * phi - 1)
        for i, x in enumerate(a.num):
            if x:
                bn = b.num
                for j in range(phi):
                    y = bn[j]
                    if y:
                        conv[i + j] += x * y
        out = conv[:phi]
        if phi > 1:
            rows = _reduction_rows(a.n)
            for e in range(phi, 2 * phi - 1):
                c = conv[e]
                if c:
                    row = rows[e - phi]
                    for j in range(phi):
                        out[j] += c * row[j]
        return Cyclotomic._make(a.n, out, a.den * b.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic")
        phi = euler_phi(self.n)
        if phi == 1:
            return Cyclotomic._make(self.n, [self.den], self.num[0])
        # extended Euclid on (self as polynomial, Phi_n) over Q
        def deg(p):
            d = len(p) - 1
            while d >= 0 and not p[d]:
                d -= 1
            return d

        def submul(a, q, b, shift):
            # a -= q * x^shift * b, in place
            for j, y in enumerate(b):
                if y:
                    a[shift + j] -= q * y

        r0 = [Fraction(x, self.den) for x in self.num] + [Fraction(0)]
        r1 = [Fraction(c) for c in cyclotomic_polynomial(self.n)]
        width = len(r1) + 1
        r0 += [Fraction(0)] * (width - len(r0))
        r1 += [Fraction(0)] * (width - len(r1))
        s0 = [Fraction(1)] + [Fraction(0)] * (width - 1)
        s1 = [Fraction(0)] * width
        while deg(r1) >= 0:
            d1 = deg(r1)
            lead = r1[d1]
            while deg(r0) >= d1:
                d0 = deg(r0)
                q = r0[d0] / lead
                submul(r0, q, r1, d0 - d1)
                submul(s0, q, s1, d0 - d1)
            r0, r1, s0, s1 = r1, r0, s1, s0
        assert deg(r0) == 0, "Phi_n is coprime to every nonzero reduced element"
        c = r0[0]
        inv = [x / c for x in s0[:phi]]
        den = 1
        for f in inv:
            den = lcm(den, f.denominator)
        num = [int(f * den) for f in inv]
        return Cyclotomic._make(self.n, num, den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.from_rational(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # ---- predicates and views ---------------------------------------------

    def is_zero(self):
        return not any(self.num)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.n == other.n:
            return self.num == other.num and self.den == other.den
        a, b = self._align(other)
        return a.num == b.num and a.den == b.den

    __hash__ = None  # use key_at() when a canonical dict key is needed

    def key_at(self, m):
        """Canonical hashable key of the value inside Q(zeta_m)."""
        p = self.promote(m)
        return (p.den, p.num)

    def coeffs(self):
        return tuple(Fraction(x, self.den) for x in self.num)

    def is_rational(self):
        return not any(self.num[1:])

    def as_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def galois(self, k):
        """Image under zeta_n -> zeta_n^k; requires gcd(k, n) = 1."""
        if gcd(k, self.n) != 1:
            raise ValueError("galois exponent must be coprime to the conductor")
        phi = euler_phi(self.n)
        out = [0] * phi
        for i, c in enumerate(self.num):
            if c:
                row = _reduce_exponent(self.n, (i * k) % self.n)
                for j in range(phi):
                    out[j] += c * row[j]
        return Cyclotomic._make(self.n, out, self.den)

    def conj(self):
        """Complex conjugation, zeta -> zeta^-1."""
        return self.galois(self.n - 1) if self.n > 1 else self

    def to_complex(self):
        z = 0j
        for i, c in enumerate(self.num):
            if c:
                z += c * cmath.exp(2j * cmath.pi * i / self.n)
        return z / self.den

    def __repr__(self):
        return f"Cyclotomic({render(self)!r})"

    def __str__(self):
        return render(self)


def zeta(n, k=1):
    """zeta_n^k with zeta_n = e^(2*pi*i/n)."""
    if n < 1:
        raise ValueError("conductor must be positive")
    return Cyclotomic._make(n, _reduce_exponent(n, k % n), 1)


def cyc(value, conductor=1):
    """Coerce an int/Fraction/Cyclotomic to Cyclotomic."""
    if isinstance(value, Cyclotomic):
        return value
    return Cyclotomic.from_rational(value, conductor)


ZERO = cyc(0)
ONE = cyc(1)


def order_of_root(x):
    """Smallest m with x^m = 1, or None if x is not a root of unity."""
    x = cyc(x)
    if x.is_zero():
        return None
    bound = lcm(2, x.n)
    if x ** bound != ONE:
        return None
    divisors = sorted(d for d in range(1, bound + 1) if bound % d == 0)
    for d in divisors:
        if x ** d == ONE:
            return d
    raise AssertionError("unreachable")


def sqrt_of_root(x):
    """Principal square root on roots of unity: zeta_m^k -> zeta_(2m)^k.

    Deterministic, so equal inputs always receive equal square roots.
    """
    x = cyc(x)
    m = order_of_root(x)
    if m is None:
        raise NotRootOfUnity(f"{x} is not a root of unity")
    if m == 1:
        return ONE
    for k in range(1, m):
        if gcd(k, m) == 1 and x == zeta(m, k):
            return zeta(2 * m, k)
    raise AssertionError("an element of order m must be a primitive power")


# ---- text grammar ----------------------------------------------------------
#
# expr     := term (('+'|'-') term)*
# term     := factor (('*'|'/') factor)*
# factor   := atom ('^' int)?
# atom     := rational | 'z'INT | '(' expr ')' | '-' factor
# rational := INT ('/' INT)?


class _Tokenizer:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text):
            return ("end", None, self.pos)
        ch = self.text[self.pos]
        if ch.isdigit():
            j = self.pos
            while j < len(self.text) and self.text[j].isdigit():
                j += 1
            return ("int", int(self.text[self.pos : j]), self.pos)
        if ch == "z":
            j = self.pos + 1
            while j < len(self.text) and self.text[j].isdigit():
                j += 1
            if j == self.pos + 1:
                raise ParseError("expected conductor after 'z'", self.pos + 1, ("INT",))
            return ("zeta", int(self.text[self.pos + 1 : j]), self.pos)
        if ch in "+-*/^()":
            return (ch, ch, self.pos)
        raise ParseError(f"unexpected character {ch!r}", self.pos, ("INT", "'z'", "operator"))

    def advance(self):
        kind, value, pos = self.peek()
        if kind == "int":
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
        elif kind == "zeta":
            self.pos += 1
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
        elif kind != "end":
            self.pos += 1
        return kind, value, pos


def _parse_int(tok):
    kind, value, pos = tok.advance()
    sign = 1
    if kind == "-":
        sign = -1
        kind, value, pos = tok.advance()
    if kind != "int":
        raise ParseError("expected integer", pos, ("INT",))
    return sign * value


def _parse_atom(tok):
    kind, value, pos = tok.peek()
    if kind == "-":
        tok.advance()
        return -_parse_factor(tok)
    if kind == "int":
        tok.advance()
        save = tok.pos
        k2, _, _ = tok.peek()
        if k2 == "/":
            tok.advance()
            k3, v3, _ = tok.peek()
            if k3 == "int":
                tok.advance()
                return cyc(Fraction(value, v3))
            tok.pos = save
        return cyc(value)
    if kind == "zeta":
        tok.advance()
        if value < 1:
            raise ParseError("conductor must be positive", pos, ("INT>=1",))
        return zeta(value, 1)
    if kind == "(":
        tok.advance()
        inner = _parse_expr(tok)
        k2, _, pos2 = tok.advance()
        if k2 != ")":
            raise ParseError("expected ')'", pos2, ("')'",))
        return inner
    raise ParseError("expected atom", pos, ("INT", "'z'N", "'('", "'-'"))


def _parse_factor(tok):
    base = _parse_atom(tok)
    kind, _, _ = tok.peek()
    if kind == "^":
        tok.advance()
        expo = _parse_int(tok)
        return base**expo
    return base


def _parse_term(tok):
    value = _parse_factor(tok)
    while True:
        kind, _, _ = tok.peek()
        if kind == "*":
            tok.advance()
            value = value * _parse_factor(tok)
        elif kind == "/":
            tok.advance()
            value = value / _parse_factor(tok)
        else:
            return value


def _parse_expr(tok):
    value = _parse_term(tok)
    while True:
        kind, _, _ = tok.peek()
        if kind == "+":
            tok.advance()
            value = value + _parse_term(tok)
        elif kind == "-":
            tok.advance()
            value = value - _parse_term(tok)
        else:
            return value


def parse_cyclo(text):
    tok = _Tokenizer(text)
    value = _parse_expr(tok)
    kind, _, pos = tok.peek()
    if kind != "end":
        raise ParseError("trailing input", pos, ("end",))
    return value


def render(x):
    """Canonical text form: basis terms sorted by exponent, c*zN^k."""
    x = cyc(x)
    if x.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(x.coeffs()):
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            z = f"z{x.n}" if k == 1 else f"z{x.n}^{k}"
            body = z if mag == 1 else f"{mag}*{z}"
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    out = body if sign == "+" else f"-{body}"
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
