"""Characters of a torus as sparse Laurent polynomials, plus exact Q(q).

``Character`` is an element of the representation ring R(T) = Z[t1^±1, ..., tn^±1]
stored as a map exponent-vector -> nonzero integer coefficient.
``RationalFunctionQ`` is a reduced fraction of univariate polynomials over Q,
used to hold vertex-cone terms after specializing to a one-parameter subgroup.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class DimensionMismatch(ValueError):
    pass


def _term_order(exponent: tuple[int, ...]):
    # lower total |degree| first, then t1 before t2 before ...
    return (sum(abs(e) for e in exponent), tuple(-e for e in exponent))


class Character:
    """Immutable sparse Laurent polynomial with integer coefficients."""

    __slots__ = ("num_vars", "_terms", "_hash")

    def __init__(self, num_vars: int, terms: Mapping[Sequence[int], int] | Iterable = ()):
        self.num_vars = num_vars
        clean: dict[tuple[int, ...], int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, coeff in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != num_vars:
                raise DimensionMismatch(f"exponent {exp} has length {len(exp)}, expected {num_vars}")
            if int(coeff) != coeff:
                raise ValueError("character coefficients must be integers")
            clean[exp] = clean.get(exp, 0) + int(coeff)
        self._terms = {e: c for e, c in clean.items() if c != 0}
        self._hash = None

    @classmethod
    def zero(cls, num_vars: int) -> "Character":
        return cls(num_vars)

    @classmethod
    def one(cls, num_vars: int) -> "Character":
        return cls(num_vars, {(0,) * num_vars: 1})

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: _term_order(kv[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def support(self) -> set[tuple[int, ...]]:
        return set(self._terms)

    def coefficient(self, exponent: Sequence[int]) -> int:
        return self._terms.get(tuple(exponent), 0)

    def _check(self, other: "Character"):
        if not isinstance(other, Character):
            return NotImplemented
        if other.num_vars != self.num_vars:
            raise DimensionMismatch(f"{self.num_vars} vs {other.num_vars} variables")
        return None

    def __eq__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        return self.num_vars == other.num_vars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num_vars, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Character(self.num_vars, out)

    def __neg__(self):
        return Character(self.num_vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Character(self.num_vars, {e: c * other for e, c in self._terms.items()})
        if self._check(other) is NotImplemented:
            return NotImplemented
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Character(self.num_vars, out)

    __rmul__ = __mul__

    def to_text(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"t{i + 1}" for i in range(self.num_vars)]
        if not self._terms:
            return "0"
        out = []
        for exp, coeff in self.items():
            factors = []
            for name, e in zip(names, exp):
                if e == 1:
                    factors.append(name)
                elif e != 0:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            mag = abs(coeff)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not out:
                out.append(body if coeff > 0 else "-" + body)
            else:
                out.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(out)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Character({self.num_vars}, {self.to_text()!r})"


def char_monomial(xi: Sequence[int]) -> Character:
    xi = tuple(xi)
    if any(int(c) != c for c in xi):
        raise ValueError(f"weight {xi} is not integral")
    return Character(len(xi), {xi: 1})


def char_add(a: Character, b: Character) -> Character:
    return a + b


def char_sub(a: Character, b: Character) -> Character:
    return a - b


def char_mul(a: Character, b: Character) -> Character:
    return a * b


def char_sum(chars: Iterable[Character], num_vars: int) -> Character:
    out: dict[tuple[int, ...], int] = {}
    for ch in chars:
        if ch.num_vars != num_vars:
            raise DimensionMismatch(f"{ch.num_vars} vs {num_vars} variables")
        for e, c in ch._terms.items():
            out[e] = out.get(e, 0) + c
    return Character(num_vars, out)


def dimension_of(c: Character) -> int:
    """Value at the identity of T, i.e. the sum of the coefficients."""
    return sum(c._terms.values())


def specialize(c: Character, a: Sequence[int]) -> Character:
    """Restrict to the circle t_i = q^{a_i}; the result is a 1-variable character in q."""
    if len(a) != c.num_vars:
        raise DimensionMismatch(f"direction has length {len(a)}, expected {c.num_vars}")
    out: dict[tuple[int], int] = {}
    for e, coeff in c._terms.items():
        k = sum(x * y for x, y in zip(e, a))
        out[(k,)] = out.get((k,), 0) + coeff
    return Character(1, out)


# --- univariate polynomials over Q, coefficient lists in increasing degree ---

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_add(p, q):
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_neg(p):
    return [-c for c in p]


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def poly_divmod(p, q):
    q = _trim(q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    p = _trim([Fraction(c) for c in p])
    if len(p) < len(q):
        return [], p
    quot = [Fraction(0)] * (len(p) - len(q) + 1)
    lead = Fraction(q[-1])
    while len(p) >= len(q) and p:
        shift = len(p) - len(q)
        f = p[-1] / lead
        quot[shift] = f
        for i, c in enumerate(q):
            p[i + shift] -= f * c
        p = _trim(p)
    return _trim(quot), p


def poly_gcd(p, q):
    p, q = _trim(p), _trim(q)
    while q:
        p, q = q, poly_divmod(p, q)[1]
    if not p:
        return []
    lead = p[-1]
    return [Fraction(c) / lead for c in p]


class RationalFunctionQ:
    """Reduced element of Q(q): gcd(num, den) = 1 and den monic."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=(1,)):
        num = _trim([Fraction(c) for c in numerator])
        den = _trim([Fraction(c) for c in denominator])
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.numerator, self.denominator = (), (Fraction(1),)
            return
        g = poly_gcd(num, den)
        if len(g) > 1:
            num = poly_divmod(num, g)[0]
            den = poly_divmod(den, g)[0]
        lead = den[-1]
        self.numerator = tuple(c / lead for c in num)
        self.denominator = tuple(c / lead for c in den)

    @classmethod
    def monomial(cls, k: int, coeff=1) -> "RationalFunctionQ":
        if k >= 0:
            return cls([0] * k + [coeff])
        return cls([coeff], [0] * (-k) + [1])

    @classmethod
    def from_laurent(cls, c: Character) -> "RationalFunctionQ":
        """Embed a 1-variable character into Q(q)."""
        if c.num_vars != 1:
            raise DimensionMismatch("only univariate characters embed into Q(q)")
        if c.is_zero():
            return cls(())
        low = min(e[0] for e in c.support())
        shift = max(0, -low)
        num = [0] * (max(e[0] for e in c.support()) + shift + 1)
        for (e,), coeff in c.terms.items():
            num[e + shift] = coeff
        return cls(num, [0] * shift + [1])

    def is_zero(self) -> bool:
        return not self.numerator

    def is_polynomial(self) -> bool:
        return self.denominator == (Fraction(1),)

    def is_laurent(self) -> bool:
        return all(c == 0 for c in self.denominator[:-1])

    def to_laurent(self) -> Character:
        """Inverse of ``from_laurent``; raises if the denominator is not a monomial."""
        if not self.is_laurent():
            raise ValueError("rational function is not a Laurent polynomial")
        shift = len(self.denominator) - 1
        terms = {}
        for i, c in enumerate(self.numerator):
            if c.denominator != 1:
                raise ValueError("non-integral coefficient")
            if c:
                terms[(i - shift,)] = int(c)
        return Character(1, terms)

    def __add__(self, other):
        if isinstance(other, int):
            other = RationalFunctionQ([other])
        num = poly_add(poly_mul(self.numerator, other.denominator), poly_mul(other.numerator, self.denominator))
        return RationalFunctionQ(num, poly_mul(self.denominator, other.denominator))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionQ(poly_neg(self.numerator), self.denominator)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = RationalFunctionQ([other])
        return RationalFunctionQ(poly_mul(self.numerator, other.numerator), poly_mul(self.denominator, other.denominator))

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunctionQ":
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return RationalFunctionQ(self.denominator, self.numerator)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = RationalFunctionQ([other])
        return self * other.inverse()

    def __eq__(self, other):
        if isinstance(other, int):
            other = RationalFunctionQ([other])
        if not isinstance(other, RationalFunctionQ):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def to_text(self, var: str = "q") -> str:
        if self.is_laurent():
            try:
                return self.to_laurent().to_text([var])
            except ValueError:
                pass
        return f"({_poly_text(self.numerator, var)})/({_poly_text(self.denominator, var)})"

    def __repr__(self):
        return f"RationalFunctionQ({self.to_text()!r})"


def _poly_text(p, var):
    parts = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        sign = "-" if c < 0 else "+"
        parts.append(body if not parts and c > 0 else (f"-{body}" if not parts else f"{sign} {body}"))
    return " ".join(parts) if parts else "0"


def ratfun_add(f: RationalFunctionQ, g: RationalFunctionQ) -> RationalFunctionQ:
    return f + g


def ratfun_mul(f: RationalFunctionQ, g: RationalFunctionQ) -> RationalFunctionQ:
    return f * g


def ratfun_eq(f: RationalFunctionQ, g: RationalFunctionQ) -> bool:
    return f == g
