"""Sparse multivariate polynomials over the integers in X_0, X_1, ...

Plus the closed-form products that the enumerations are checked against.
"""

from __future__ import annotations

from functools import total_ordering
from math import comb
from typing import Iterable, Mapping, Sequence


@total_ordering
class Monomial:
    """Product of X_i^e, stored as sorted (i, e) pairs with e > 0."""

    __slots__ = ("exps", "_hash")

    def __init__(self, exps: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = exps.items() if isinstance(exps, Mapping) else exps
        acc: dict[int, int] = {}
        for var, e in items:
            if var < 0 or e < 0:
                raise ValueError(f"bad exponent X_{var}^{e}")
            if e:
                acc[var] = acc.get(var, 0) + e
        self.exps = tuple(sorted(acc.items()))
        self._hash = hash(self.exps)

    @classmethod
    def var(cls, i: int) -> Monomial:
        return cls(((i, 1),))

    @classmethod
    def from_vars(cls, vars: Iterable[int]) -> Monomial:
        """Square-free monomial (repeats multiply)."""
        return cls((v, 1) for v in vars)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    def variables(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.exps)

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(self.exps + other.exps)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps

    def __hash__(self):
        return self._hash

    def __lt__(self, other: Monomial):
        return _vec_key(self) < _vec_key(other)

    def __repr__(self):
        return f"Monomial({dict(self.exps)})"

    def __str__(self):
        if not self.exps:
            return "1"
        return "*".join(f"X{v}" if e == 1 else f"X{v}^{e}" for v, e in self.exps)


def _vec_key(m: Monomial, width: int = 0):
    # ascending graded-lex: lower degree first; within a degree, the
    # monomial with the smaller exponent on the lowest variable comes first
    top = max([v for v, _ in m.exps] + [width - 1])
    vec = [0] * (top + 1)
    for v, e in m.exps:
        vec[v] = e
    return (m.degree, tuple(vec))


class Polynomial:
    """Immutable integer polynomial: a map from Monomial to nonzero coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            if not isinstance(c, int):
                raise TypeError(f"coefficient {c!r} is not an integer")
            if c:
                clean[mono] = clean.get(mono, 0) + c
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def constant(cls, c: int) -> Polynomial:
        return cls({Monomial(): c})

    @classmethod
    def var(cls, i: int, coeff: int = 1) -> Polynomial:
        return cls({Monomial.var(i): coeff})

    @classmethod
    def from_monomial(cls, m: Monomial, coeff: int = 1) -> Polynomial:
        return cls({m: coeff})

    @classmethod
    def linear(cls, i: int, coeff: int, const: int) -> Polynomial:
        """coeff * X_i + const."""
        return cls({Monomial.var(i): coeff, Monomial(): const})

    @classmethod
    def from_counts(cls, counts: Mapping[Monomial, int]) -> Polynomial:
        return cls(dict(counts))

    @staticmethod
    def _lift(x) -> Polynomial:
        if isinstance(x, Polynomial):
            return x
        if isinstance(x, int):
            return Polynomial.constant(x)
        if isinstance(x, Monomial):
            return Polynomial.from_monomial(x)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[int]:
        return {v for m in self.terms for v in m.variables()}

    def coefficient(self, m: Monomial) -> int:
        return self.terms.get(m, 0)

    def exact_div(self, d: int) -> Polynomial:
        """Divide every coefficient by ``d``; raises if any is not divisible."""
        out = {}
        for m, c in self.terms.items():
            q, rem = divmod(c, d)
            if rem:
                raise ArithmeticError(f"coefficient {c} of {m} is not divisible by {d}")
            out[m] = q
        return Polynomial(out)

    def evaluate(self, values: Mapping[int, int] | Sequence[int] | int) -> int:
        """Evaluate with X_i := values[i]; an int assigns every variable."""
        total = 0
        for m, c in self.terms.items():
            term = c
            for v, e in m.exps:
                x = values if isinstance(values, int) else values[v]
                term *= x**e
            total += term
        return total

    def substitute(self, mapping: Mapping[int, int]) -> Polynomial:
        """Rename variables X_i -> X_mapping[i]; unmapped variables are kept."""
        out: dict[Monomial, int] = {}
        for m, c in self.terms.items():
            m2 = Monomial((mapping.get(v, v), e) for v, e in m.exps)
            out[m2] = out.get(m2, 0) + c
        return Polynomial(out)

    def specialize(self, values: Mapping[int, int]) -> Polynomial:
        """Set some variables to integers, keeping the others symbolic."""
        out: dict[Monomial, int] = {}
        for m, c in self.terms.items():
            kept = []
            for v, e in m.exps:
                if v in values:
                    c *= values[v] ** e
                else:
                    kept.append((v, e))
            m2 = Monomial(kept)
            out[m2] = out.get(m2, 0) + c
        return Polynomial(out)

    def sorted_terms(self, descending: bool = False) -> list[tuple[Monomial, int]]:
        width = max(self.variables(), default=-1) + 1
        return sorted(self.terms.items(), key=lambda mc: _vec_key(mc[0], width), reverse=descending)

    def to_json(self) -> list[dict]:
        return [
            {"coeff": str(c), "vars": {str(v): e for v, e in m.exps}}
            for m, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: list[dict]) -> Polynomial:
        terms = {}
        for t in data:
            m = Monomial((int(v), int(e)) for v, e in t["vars"].items())
            terms[m] = terms.get(m, 0) + int(t["coeff"])
        return cls(terms)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms(descending=True):
            mag = abs(c)
            if not m.exps:
                body = str(mag)
            elif mag == 1:
                body = str(m)
            else:
                body = f"{mag}*{m}"
            if not pieces:
                pieces.append(body if c > 0 else "-" + body)
            else:
                pieces.append(("+ " if c > 0 else "- ") + body)
        return " ".join(pieces)

    def __repr__(self):
        return f"Polynomial({self})"


def product(factors: Iterable[Polynomial]) -> Polynomial:
    out = Polynomial.constant(1)
    for f in factors:
        out = out * f
    return out


def _check_type(a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(a)
    if not a or any(not isinstance(x, int) or x < 2 for x in a):
        raise ValueError(f"invalid factorization type {a}: need parts >= 2")
    return a


def theorem1_rhs(a: Sequence[int]) -> Polynomial:
    """prod_{i=1}^{r-1} (b_i X_i + n - b_i) with b_i = sum_{j<=i} (a_j - 1)."""
    a = _check_type(getattr(a, "parts", a))
    n = sum(x - 1 for x in a) + 1
    factors = []
    b = 0
    for i in range(1, len(a)):
        b += a[i - 1] - 1
        factors.append(Polynomial.linear(i, b, n - b))
    return product(factors)


def hook_rhs(n: int) -> Polynomial:
    """prod_{i=1}^{n-1} (i X_i + n + 1 - i)."""
    if n < 1:
        raise ValueError("n must be positive")
    return product(Polynomial.linear(i, i, n + 1 - i) for i in range(1, n))


def cayley_rhs(n: int) -> Polynomial:
    """prod_{i=1}^{n-2} (i X_i + n - i)."""
    if n < 1:
        raise ValueError("n must be positive")
    return product(Polynomial.linear(i, i, n - i) for i in range(1, n - 1))


def final_chain_rhs(n: int, k: int) -> Polynomial:
    """(1/n) C(n, k) prod_{i=n-k}^{n-2} (i X_i + n - i), divided exactly at the end."""
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got n={n}, k={k}")
    full = Polynomial.constant(comb(n, k)) * product(
        Polynomial.linear(i, i, n - i) if i else Polynomial.constant(n)
        for i in range(n - k, n - 1)
    )
    try:
        return full.exact_div(n)
    except ArithmeticError as exc:  # pragma: no cover - would falsify the identity
        raise AssertionError(f"final chain product not divisible by n={n} at k={k}") from exc
