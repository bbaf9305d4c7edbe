"""Exact sparse polynomial arithmetic over the affinized weight variables.

The ring is Q[lambda^(a)] with one variable per affinized weight `(tag, level)`.
Internally a variable is identified by its integer position key (see
:func:`spinlaw.weightlattice.apos`), so a monomial is a tuple of
``(key, exponent)`` pairs sorted by key, and a polynomial is a sparse mapping
from monomials to ``fractions.Fraction`` coefficients.  All arithmetic is
exact; no floating point enters anywhere.

Monomial order
--------------
``cmp_monomials`` realizes the graded reverse lexicographic order attached to
the total variable enumeration: higher total degree wins, and ties are broken
by scanning exponents upward from the *bottom* variable — at the first key
where the exponents differ, the monomial with the **smaller** exponent there
is the **larger** monomial.  With this order the leading monomial of each of
the defining quadrics is its pair of incomparable weights.

Text syntax
-----------
Polynomials serialize to a plain-text form accepted back by ``parse_poly``::

    3/2 * l{(12)^0}^2 * l{(23)^0} - l{(13)^1}

Each factor ``l{TAG^LEVEL}`` names a variable (the weight syntax inside the
braces is anything :func:`spinlaw.weightlattice.parse_weight` accepts), with
an optional ``^e`` power outside the braces.

>>> f = lam(("(14)", 0)) * lam(("(23)", 0)) - lam(("(13)", 0)) * lam(("(24)", 0))
>>> format_poly(f)
'l{(14)^0} * l{(23)^0} - l{(13)^0} * l{(24)^0}'
>>> tip(f) == monomial_from_weights([("(14)", 0), ("(23)", 0)])
True
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import cmp_to_key

from .weightlattice import Weight, apos, format_weight, parse_weight, weight_from_apos

# A monomial: ((key, exponent), ...) with keys strictly increasing, exponents > 0.
Monomial = tuple[tuple[int, int], ...]

ONE: Monomial = ()


# ------------------------------------------------------------- monomials


def monomial(keys) -> Monomial:
    """Build a monomial from an iterable of variable keys (with repetition).

    >>> monomial([4, 0, 4])
    ((0, 1), (4, 2))
    """
    exps: dict[int, int] = {}
    for k in keys:
        exps[k] = exps.get(k, 0) + 1
    return tuple(sorted(exps.items()))


def monomial_from_weights(ws) -> Monomial:
    """Build a monomial from an iterable of weights (with repetition)."""
    return monomial(apos(w) for w in ws)


def monomial_weights(m: Monomial) -> list[Weight]:
    """The multiset of weights dividing `m`, smallest variable first."""
    out: list[Weight] = []
    for k, e in m:
        out.extend([weight_from_apos(k)] * e)
    return out


def monomial_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    exps = dict(a)
    for k, e in b:
        exps[k] = exps.get(k, 0) + e
    return tuple(sorted(exps.items()))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True when `a` divides `b`."""
    eb = dict(b)
    return all(eb.get(k, 0) >= e for k, e in a)


def monomial_div(b: Monomial, a: Monomial) -> Monomial:
    """The quotient monomial b / a; `a` must divide `b`."""
    exps = dict(b)
    for k, e in a:
        r = exps.get(k, 0) - e
        if r < 0:
            raise ValueError(f"{a!r} does not divide {b!r}")
        if r == 0:
            exps.pop(k, None)
        else:
            exps[k] = r
    return tuple(sorted(exps.items()))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    exps = dict(a)
    for k, e in b:
        exps[k] = max(exps.get(k, 0), e)
    return tuple(sorted(exps.items()))


def cmp_monomials(a: Monomial, b: Monomial) -> int:
    """Three-way comparison in the graded reverse lexicographic order.

    Returns -1, 0 or 1 according to a < b, a == b, a > b.  Higher total
    degree is larger; on equal degrees scan exponents from the smallest
    variable key upward and at the first difference the monomial with the
    smaller exponent is the larger one.

    >>> x, y = monomial([0]), monomial([2])
    >>> cmp_monomials(monomial_mul(x, y), monomial_mul(y, y))
    -1
    """
    da, db = monomial_degree(a), monomial_degree(b)
    if da != db:
        return -1 if da < db else 1
    ia = ib = 0
    while ia < len(a) and ib < len(b):
        ka, ea = a[ia]
        kb, eb = b[ib]
        if ka != kb:
            # the monomial with exponent 0 at the smaller key is larger
            return -1 if ka < kb else 1
        if ea != eb:
            return 1 if ea < eb else -1
        ia += 1
        ib += 1
    if ia == len(a) and ib == len(b):
        return 0
    return 1 if ia == len(a) else -1


monomial_sort_key = cmp_to_key(cmp_monomials)


# ------------------------------------------------------------ polynomials


class Poly:
    """A sparse polynomial: mapping from monomials to nonzero Fractions."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[Monomial, Fraction] | None = None):
        cleaned: dict[Monomial, Fraction] = {}
        if coeffs:
            for m, c in coeffs.items():
                c = Fraction(c)
                if c:
                    cleaned[m] = c
        self.coeffs = cleaned

    # -- constructors

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def from_terms(cls, terms) -> "Poly":
        """Sum an iterable of ``(coefficient, monomial)`` pairs."""
        acc: dict[Monomial, Fraction] = {}
        for c, m in terms:
            acc[m] = acc.get(m, Fraction(0)) + Fraction(c)
        return cls(acc)

    # -- predicates and views

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Total degree (-1 for the zero polynomial)."""
        if not self.coeffs:
            return -1
        return max(monomial_degree(m) for m in self.coeffs)

    def is_homogeneous(self) -> bool:
        degs = {monomial_degree(m) for m in self.coeffs}
        return len(degs) <= 1

    def terms_desc(self) -> list[tuple[Monomial, Fraction]]:
        """Terms sorted with the leading monomial first."""
        return sorted(
            self.coeffs.items(), key=lambda t: monomial_sort_key(t[0]), reverse=True
        )

    def __getitem__(self, m: Monomial) -> Fraction:
        return self.coeffs.get(m, Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"

    # -- arithmetic

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        acc = dict(self.coeffs)
        for m, c in other.coeffs.items():
            acc[m] = acc.get(m, Fraction(0)) + c
        return Poly(acc)

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        acc = dict(self.coeffs)
        for m, c in other.coeffs.items():
            acc[m] = acc.get(m, Fraction(0)) - c
        return Poly(acc)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, Poly):
            acc: dict[Monomial, Fraction] = {}
            for ma, ca in self.coeffs.items():
                for mb, cb in other.coeffs.items():
                    m = monomial_mul(ma, mb)
                    acc[m] = acc.get(m, Fraction(0)) + ca * cb
            return Poly(acc)
        if isinstance(other, (int, Fraction)):
            return Poly({m: c * other for m, c in self.coeffs.items()})
        return NotImplemented

    __rmul__ = __mul__


def monomial_poly(m: Monomial, c=1) -> Poly:
    return Poly({m: Fraction(c)})


def variable(key: int) -> Poly:
    return Poly({((key, 1),): Fraction(1)})


def lam(w: Weight) -> Poly:
    """The variable attached to a weight.

    >>> format_poly(lam(("(12)", 1)))
    'l{(12)^1}'
    """
    return variable(apos(w))


# ------------------------------------------------------ division algebra


def tip(f: Poly) -> Monomial:
    """Leading monomial of a nonzero polynomial."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no leading monomial")
    return max(f.coeffs, key=monomial_sort_key)


def lc(f: Poly) -> Fraction:
    """Leading coefficient of a nonzero polynomial."""
    return f.coeffs[tip(f)]


def s_polynomial(f: Poly, g: Poly) -> Poly:
    """lc(f) * (T / tip(g)) * g  -  lc(g) * (T / tip(f)) * f,   T = lcm of tips.

    Both products share the leading monomial T (with coefficient
    lc(f) * lc(g)), so the difference cancels it.
    """
    tf, tg = tip(f), tip(g)
    big = monomial_lcm(tf, tg)
    left = lc(f) * monomial_poly(monomial_div(big, tg)) * g
    right = lc(g) * monomial_poly(monomial_div(big, tf)) * f
    return left - right


def reduce(f: Poly, basis, *, track: bool = False):
    """Fully reduce `f` modulo an ordered list of nonzero polynomials.

    At each step the largest monomial of the remainder divisible by some
    leading monomial is rewritten using the first basis element (in list
    order) whose tip divides it.  The result has no monomial divisible by
    any tip.  With ``track=True`` the quotients are returned as well, so
    that ``f == sum(q[i] * basis[i]) + remainder`` exactly.
    """
    basis = list(basis)
    tips = [tip(g) for g in basis]
    lcs = [lc(g) for g in basis]
    r = Poly(dict(f.coeffs))
    quotients = [Poly.zero() for _ in basis]
    while True:
        hit = None
        for m in sorted(r.coeffs, key=monomial_sort_key, reverse=True):
            for i, tg in enumerate(tips):
                if monomial_divides(tg, m):
                    hit = (m, i)
                    break
            if hit:
                break
        if hit is None:
            break
        m, i = hit
        q = monomial_poly(monomial_div(m, tips[i]), r[m] / lcs[i])
        r = r - q * basis[i]
        if track:
            quotients[i] = quotients[i] + q
    return (r, quotients) if track else r


def buchberger_check(basis) -> dict[tuple[int, int], Poly]:
    """First Buchberger iteration: reduce the S-polynomial of every pair of
    basis elements whose leading monomials share a variable.

    Returns ``{(i, j): remainder}`` over those pairs; the rewriting system
    is confluent at this stage exactly when every remainder is zero.  Pairs
    with coprime leading monomials are skipped (their S-polynomials reduce
    to zero automatically).
    """
    basis = list(basis)
    out: dict[tuple[int, int], Poly] = {}
    for i in range(len(basis)):
        keys_i = {k for k, _ in tip(basis[i])}
        for j in range(i + 1, len(basis)):
            keys_j = {k for k, _ in tip(basis[j])}
            if keys_i.isdisjoint(keys_j):
                continue
            out[(i, j)] = reduce(s_polynomial(basis[i], basis[j]), basis)
    return out


# ------------------------------------------------------- graded dimension


def sparse_rank(rows) -> int:
    """Rank of a sparse matrix given as an iterable of {column: Fraction}."""
    pivots: dict[int, dict[int, Fraction]] = {}
    rank = 0
    for row in rows:
        row = {c: Fraction(v) for c, v in row.items() if v}
        while row:
            col = min(row)
            prow = pivots.get(col)
            if prow is None:
                inv = 1 / row[col]
                pivots[col] = {c: v * inv for c, v in row.items()}
                rank += 1
                break
            factor = row.pop(col)
            for c2, v2 in prow.items():
                if c2 == col:
                    continue
                nv = row.get(c2, Fraction(0)) - factor * v2
                if nv:
                    row[c2] = nv
                else:
                    row.pop(c2, None)
    return rank


def graded_quotient_dim(relations, var_keys, k: int) -> int:
    """Dimension of the degree-`k` piece of Q[vars] / (relations).

    `relations` must be homogeneous polynomials in the variables listed in
    `var_keys`.  The dimension is computed by exact linear algebra: the
    number of degree-`k` monomials minus the rank of the ideal's degree-`k`
    slice, spanned by all products (monomial of degree k - deg g) * g.

    >>> x, y = variable(0), variable(1)
    >>> [graded_quotient_dim([x * y], [0, 1], k) for k in range(4)]
    [1, 2, 2, 2]
    """
    keys = sorted(var_keys)
    key_set = set(keys)
    for g in relations:
        if not g.is_homogeneous():
            raise ValueError("relations must be homogeneous")
        used = {kk for m in g.coeffs for kk, _ in m}
        if not used <= key_set:
            raise ValueError("relation uses a variable outside var_keys")
    if k < 0:
        return 0
    monos = [monomial(c) for c in itertools.combinations_with_replacement(keys, k)]
    index = {m: i for i, m in enumerate(monos)}

    def rows():
        for g in relations:
            d = g.degree()
            if d < 0 or d > k:
                continue
            for c in itertools.combinations_with_replacement(keys, k - d):
                shift_m = monomial(c)
                yield {
                    index[monomial_mul(shift_m, m)]: coeff
                    for m, coeff in g.coeffs.items()
                }

    return len(monos) - sparse_rank(rows())


# ------------------------------------------------------------ text format


_VAR_RE = re.compile(r"^l\{([^{}]+)\}(?:\^(\d+))?$")
_COEFF_RE = re.compile(r"^\d+(?:/\d+)?$")


def format_poly(f: Poly) -> str:
    """Serialize a polynomial; inverse of :func:`parse_poly`.

    >>> format_poly(Poly.zero())
    '0'
    >>> format_poly(3 * lam(("(0)", 0)) * lam(("(0)", 0)) - lam(("(1)", 2)))
    '3 * l{(0)^0}^2 - l{(1)^2}'
    """
    if f.is_zero():
        return "0"
    parts: list[str] = []
    for m, c in f.terms_desc():
        factors: list[str] = []
        if abs(c) != 1 or m == ONE:
            factors.append(str(abs(c)))
        for key, e in m:
            tag, level = weight_from_apos(key)
            v = f"l{{{tag}^{level}}}"
            if e > 1:
                v += f"^{e}"
            factors.append(v)
        term = " * ".join(factors)
        if not parts:
            parts.append(term if c > 0 else "-" + term)
        else:
            parts.append((" + " if c > 0 else " - ") + term)
    return "".join(parts)


def parse_poly(text: str) -> Poly:
    """Parse the textual polynomial syntax emitted by :func:`format_poly`.

    >>> parse_poly("l{(14)^0} * l{(23)^0} - l{(13)^0} * l{(24)^0}") == (
    ...     lam(("(14)", 0)) * lam(("(23)", 0)) - lam(("(13)", 0)) * lam(("(24)", 0)))
    True
    """
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    if s == "0":
        return Poly.zero()
    acc = Poly.zero()
    for chunk in s.replace(" - ", " + -").split(" + "):
        chunk = chunk.strip()
        sign = Fraction(1)
        while chunk.startswith("-"):
            sign = -sign
            chunk = chunk[1:].strip()
        if not chunk:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = sign
        exps: dict[int, int] = {}
        for factor in chunk.split(" * "):
            factor = factor.strip()
            if _COEFF_RE.match(factor):
                coeff *= Fraction(factor)
                continue
            mv = _VAR_RE.match(factor)
            if not mv:
                raise ValueError(f"cannot parse factor {factor!r}")
            w = parse_weight(mv.group(1))
            e = int(mv.group(2)) if mv.group(2) else 1
            if e <= 0:
                raise ValueError(f"nonpositive exponent in {factor!r}")
            key = apos(w)
            exps[key] = exps.get(key, 0) + e
        acc = acc + Poly({tuple(sorted(exps.items())): coeff})
    return acc


def poly_weights_used(f: Poly) -> list[Weight]:
    """Sorted list of distinct weights whose variables occur in `f`."""
    keys = {k for m in f.coeffs for k, _ in m}
    return [weight_from_apos(k) for k in sorted(keys)]


def describe_poly(f: Poly) -> str:
    """Human-oriented one-liner: leading term first, then the rest."""
    if f.is_zero():
        return "0"
    ws = ", ".join(format_weight(w) for w in poly_weights_used(f))
    return f"{format_poly(f)}   [vars: {ws}]"
