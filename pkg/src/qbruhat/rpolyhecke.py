"""Integer (Laurent) polynomials in q, the Hecke algebra of S_n, classical
Kazhdan-Lusztig R-polynomials, and tilted R-polynomials by three routes:

* the Deodhar sum (q-1)^{|Jo|} q^{|J-|} over tilted distinguished subwords,
* the descent/flatten recursion over (u, v, a),
* the trace formula q^{l(u,v)} eps(T_v^{-1} T_u) over tilted words.

The generator inverse is T_i^{-1} = q^{-1} T_i - (q-1) q^{-1}, the unique
element with T_i T_i^{-1} = T_id under T_i^2 = (q-1) T_i + q.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from .permcore import (
    InternalConsistencyError,
    Perm,
    apply_simple,
    bruhat_leq,
    descents,
    identity,
    length,
    reduced_word,
)
from .tiltorder import (
    Tilt,
    a_descents,
    a_length,
    a_lesssim,
    a_step_type,
    adj_increases,
    witness_a,
)
from .tiltwords import (
    BAR,
    TiltedWord,
    flatten,
    flattenable,
    regular_tilted_reduced_word,
    tilt_sequence,
    tilted_reduced_word,
    word_length,
)

Scalar = Union[int, Fraction]


class LaurentPoly:
    """Sparse Laurent polynomial in q with integer coefficients.

    Immutable; zero coefficients are never stored.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[Mapping[int, int]] = None):
        cleaned = {}
        if coeffs:
            for e, c in coeffs.items():
                if c:
                    cleaned[int(e)] = cleaned.get(int(e), 0) + int(c)
        object.__setattr__(self, "coeffs", {e: c for e, c in cleaned.items() if c})

    # construction -----------------------------------------------------
    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def q_power(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls({e: c})

    # structure --------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return max(self.coeffs)

    @property
    def min_exponent(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no exponents")
        return min(self.coeffs)

    def leading_coefficient(self) -> int:
        return self.coeffs[self.degree]

    def is_polynomial(self) -> bool:
        return all(e >= 0 for e in self.coeffs)

    def __getitem__(self, e: int) -> int:
        return self.coeffs.get(e, 0)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other if isinstance(other, LaurentPoly) else LaurentPoly.const(-other))

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative power")
        out = LaurentPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def shifted(self, e: int) -> "LaurentPoly":
        """Multiply by q^e."""
        return LaurentPoly({k + e: c for k, c in self.coeffs.items()})

    def __call__(self, x: Scalar) -> Scalar:
        if any(e < 0 for e in self.coeffs) and x == 0:
            raise ZeroDivisionError("negative exponent at 0")
        return sum(c * Fraction(x) ** e for e, c in self.coeffs.items()) if isinstance(
            x, Fraction
        ) else self._eval_int(x)

    def _eval_int(self, x: int) -> Scalar:
        total: Scalar = 0
        for e, c in self.coeffs.items():
            total += c * (x ** e if e >= 0 else Fraction(1, x ** (-e)))
        return total

    # printing -----------------------------------------------------------
    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            elif e == 1:
                body = "q" if mag == 1 else f"{mag}q"
            else:
                body = f"q^{e}" if mag == 1 else f"{mag}q^{e}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    __repr__ = __str__


class QPoly(LaurentPoly):
    """LaurentPoly restricted to nonnegative exponents."""

    def __init__(self, coeffs: Optional[Mapping[int, int]] = None):
        super().__init__(coeffs)
        if not self.is_polynomial():
            raise ValueError(f"negative exponent in polynomial: {self}")


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
Q = LaurentPoly.q_power(1)
Q_MINUS_1 = Q - ONE


def as_qpoly(p: LaurentPoly) -> QPoly:
    """Assert p clears to a genuine polynomial in q."""
    if not p.is_polynomial():
        raise InternalConsistencyError(f"expected a polynomial in q, got {p}")
    return QPoly(p.coeffs)


def parse_poly(text: str) -> LaurentPoly:
    """Inverse of str(); accepts the descending-exponent format."""
    text = text.strip()
    if text == "0":
        return ZERO
    out: dict[int, int] = {}
    for chunk in text.replace("- ", "+ -").split("+"):
        chunk = chunk.strip().replace(" ", "")
        if not chunk:
            continue
        sign = 1
        if chunk.startswith("-"):
            sign, chunk = -1, chunk[1:]
        if "q" not in chunk:
            coeff, exp = int(chunk), 0
        else:
            head, _, tail = chunk.partition("q")
            coeff = int(head) if head else 1
            exp = int(tail[1:]) if tail.startswith("^") else 1
        out[exp] = out.get(exp, 0) + sign * coeff
    return LaurentPoly(out)


# ---------------------------------------------------------------------------
# the Hecke algebra


class HeckeElt:
    """Element of the Hecke algebra of S_n in the T_w basis."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Mapping[Perm, LaurentPoly]] = None):
        self.n = n
        self.terms: dict[Perm, LaurentPoly] = {
            w: c for w, c in (terms or {}).items() if c
        }

    @classmethod
    def unit(cls, n: int) -> "HeckeElt":
        return cls(n, {identity(n): ONE})

    @classmethod
    def basis(cls, w: Perm) -> "HeckeElt":
        return cls(len(w), {w: ONE})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HeckeElt)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, ZERO) + c
        return HeckeElt(self.n, out)

    def scale(self, c: LaurentPoly) -> "HeckeElt":
        return HeckeElt(self.n, {w: c * cw for w, cw in self.terms.items()})

    def mul_gen(self, i: int) -> "HeckeElt":
        """Right multiplication by T_i."""
        out: dict[Perm, LaurentPoly] = {}

        def bump(w: Perm, c: LaurentPoly) -> None:
            if c:
                out[w] = out.get(w, ZERO) + c

        for w, c in self.terms.items():
            ws = apply_simple(w, i)
            if length(ws) > length(w):
                bump(ws, c)
            else:
                bump(w, c * Q_MINUS_1)
                bump(ws, c * Q)
        return HeckeElt(self.n, out)

    def mul_gen_inverse(self, i: int) -> "HeckeElt":
        """Right multiplication by T_i^{-1} = q^{-1} T_i - (q-1) q^{-1}."""
        qinv = LaurentPoly.q_power(-1)
        out: dict[Perm, LaurentPoly] = {}

        def bump(w: Perm, c: LaurentPoly) -> None:
            if c:
                out[w] = out.get(w, ZERO) + c

        for w, c in self.terms.items():
            ws = apply_simple(w, i)
            if length(ws) > length(w):
                bump(ws, c * qinv)
                bump(w, -(c * Q_MINUS_1 * qinv))
            else:
                bump(ws, c)
        return HeckeElt(self.n, out)

    def __mul__(self, other: "HeckeElt") -> "HeckeElt":
        if self.n != other.n:
            raise ValueError("size mismatch")
        total = HeckeElt(self.n)
        for w, c in other.terms.items():
            piece = self
            for i in reduced_word(w):
                piece = piece.mul_gen(i)
            total = total + piece.scale(c)
        return total

    def __str__(self) -> str:
        from .permcore import format_perm

        if not self.terms:
            return "0"
        return " + ".join(
            f"({self.terms[w]})*T[{format_perm(w)}]" for w in sorted(self.terms)
        )

    __repr__ = __str__


def hecke_mul(x: HeckeElt, y: HeckeElt) -> HeckeElt:
    return x * y


def hecke_gen(n: int, i: int) -> HeckeElt:
    return HeckeElt.basis(apply_simple(identity(n), i))


def hecke_gen_inverse(n: int, i: int) -> HeckeElt:
    return HeckeElt.unit(n).mul_gen_inverse(i)


def trace(x: HeckeElt) -> LaurentPoly:
    """The trace eps: the coefficient of T_id."""
    return x.terms.get(identity(x.n), ZERO)


def hecke_t(word_gens: Iterable[int], n: int) -> HeckeElt:
    """T_w for a word: the product of the T_i over its generator factors."""
    out = HeckeElt.unit(n)
    for i in word_gens:
        out = out.mul_gen(i)
    return out


def hecke_t_inverse(word_gens: Iterable[int], n: int) -> HeckeElt:
    """(T_w)^{-1}: the T_i^{-1} in reverse order."""
    out = HeckeElt.unit(n)
    for i in reversed(list(word_gens)):
        out = out.mul_gen_inverse(i)
    return out


# ---------------------------------------------------------------------------
# classical R-polynomials


@functools.lru_cache(maxsize=1 << 18)
def classical_r(u: Perm, v: Perm) -> LaurentPoly:
    """Kazhdan-Lusztig R-polynomial by the descent recursion."""
    if len(u) != len(v):
        raise ValueError("size mismatch")
    if u == v:
        return ONE
    if not bruhat_leq(u, v):
        return ZERO
    i = min(descents(v))
    vs = apply_simple(v, i)
    us = apply_simple(u, i)
    if i in descents(u):
        return classical_r(us, vs)
    return Q * classical_r(us, vs) + Q_MINUS_1 * classical_r(u, vs)


# ---------------------------------------------------------------------------
# tilted R-polynomials, three ways


def _gens_of(word: TiltedWord) -> list[int]:
    return [f for f in word.factors if f is not BAR]


def rtilt_deodhar(
    u: Perm, v: Perm, a: Optional[Tilt] = None, word: Optional[TiltedWord] = None
) -> LaurentPoly:
    """Sum of (q-1)^{|Jo|} q^{|J-|} over distinguished subwords for u.

    Computed as a prefix-product DP over the word rather than by explicit
    enumeration; identical by distributivity.
    """
    if len(u) != len(v):
        raise ValueError("size mismatch")
    if a is None:
        a = witness_a(u, v)
    if word is None:
        word = regular_tilted_reduced_word(a, v)
    seqs = tilt_sequence(word)
    factors = word.factors
    total = len(factors)

    @functools.lru_cache(maxsize=None)
    def dp(pos: int, w: Perm) -> LaurentPoly:
        if pos == total:
            return ONE if w == u else ZERO
        f = factors[pos]
        aj = seqs[pos + 1]
        if f is BAR:
            if flattenable(aj, w) is None:
                return ZERO
            return dp(pos + 1, w)
        ws = apply_simple(w, f)
        if adj_increases(aj, w, f):
            return Q_MINUS_1 * dp(pos + 1, w) + dp(pos + 1, ws)
        return Q * dp(pos + 1, ws)

    result = dp(0, identity(word.n))
    dp.cache_clear()
    return result


_REC_MEMO: dict[tuple[Perm, Perm, Tilt], LaurentPoly] = {}


def _rtilt_rec(u: Perm, v: Perm, a: Tilt, budget: int) -> LaurentPoly:
    if budget < 0:
        raise InternalConsistencyError("tilted R recursion failed to terminate")
    key = (u, v, a)
    hit = _REC_MEMO.get(key)
    if hit is not None:
        return hit
    if u == v:
        out = ONE
    elif not a_lesssim(a, u, v, check=False):
        out = ZERO
    else:
        des = a_descents(a, v)
        if des:
            i = min(des)
            vs = apply_simple(v, i)
            us = apply_simple(u, i)
            if a_step_type(a, u, i) == "descent":
                out = _rtilt_rec(us, vs, a, budget - 1)
            else:
                out = Q * _rtilt_rec(us, vs, a, budget - 1) + Q_MINUS_1 * _rtilt_rec(
                    u, vs, a, budget - 1
                )
        else:
            out = _rtilt_rec(u, v, flatten(a), budget - 1)
    if len(_REC_MEMO) < (1 << 18):  # bounded memo
        _REC_MEMO[key] = out
    return out


def rtilt_recursive(u: Perm, v: Perm, a: Optional[Tilt] = None) -> LaurentPoly:
    """The descent/flatten recursion for the tilted R-polynomial."""
    if len(u) != len(v):
        raise ValueError("size mismatch")
    if a is None:
        a = witness_a(u, v)
    return _rtilt_rec(u, v, a, word_length(a, v) + 1)


def rtilt_hecke(u: Perm, v: Perm, a: Optional[Tilt] = None) -> LaurentPoly:
    """(-q)^{l(u,v)} times the trace of T_v^{-1} T_u over tilted words.

    With the genuine generator inverse the trace picks up a sign
    (-1)^{l(u,v)}, absorbed here so that the result is the point count.
    A result with negative exponents is reported as a hard failure.
    """
    if len(u) != len(v):
        raise ValueError("size mismatch")
    n = len(u)
    if a is None:
        a = witness_a(u, v)
    wu = tilted_reduced_word(a, u)
    wv = tilted_reduced_word(a, v)
    elt = hecke_t_inverse(_gens_of(wv), n)
    for i in _gens_of(wu):
        elt = elt.mul_gen(i)
    dist = a_length(a, v) - a_length(a, u)
    signed = trace(elt).shifted(dist)
    return as_qpoly(signed if dist % 2 == 0 else -signed)


def rtilt(u: Perm, v: Perm, method: str = "deodhar") -> LaurentPoly:
    """Dispatch by method name; 'all' cross-checks the three routes."""
    if method == "deodhar":
        return rtilt_deodhar(u, v)
    if method == "recursive":
        return rtilt_recursive(u, v)
    if method == "hecke":
        return rtilt_hecke(u, v)
    if method == "all":
        d = rtilt_deodhar(u, v)
        r = rtilt_recursive(u, v)
        h = rtilt_hecke(u, v)
        if not (d == r == h):
            raise InternalConsistencyError(
                f"tilted R-polynomial routes disagree: {d} / {r} / {h}"
            )
        return d
    raise ValueError(f"unknown method {method!r}")
