"""A decidable model of diagonal projections on l^2(N+).

A diagonal projection is identified with its support, a subset of the basis
indices ``N+ = {1, 2, 3, ...}``.  The supports handled here are

    ({x : v2(x) in V} | extra) - minus

where ``v2`` is the 2-adic valuation and ``V`` is an eventually periodic set
of valuations (a :class:`ResidueSet`).  Every valuation class
``{x : v2(x) = v}`` is infinite, which is what makes the family rich enough
to contain a projection equivalent to a proper subprojection of itself.

All Boolean operations, containment and cardinality are decided exactly.
"""

import re
from dataclasses import dataclass
from math import gcd

from .errors import FormatError, NotOrthogonal

__all__ = [
    'ResidueSet', 'ValuationProjection', 'Cardinality', 'DedekindReport',
    'v2', 'card', 'leq', 'orth_sum', 'complement', 'mv_equiv',
    'valuation_row', 'valuation_class', 'dedekind_pair',
    'ball_disjoint_family',
]


def v2(x):
    """2-adic valuation of a positive integer."""
    if x <= 0:
        raise ValueError(f'valuation is defined on positive integers, got {x}')
    return (x & -x).bit_length() - 1


def _lcm(a, b):
    return a * b // gcd(a, b)


def _fmt_set(items):
    return '{' + ','.join(str(i) for i in sorted(items)) + '}'


@dataclass(frozen=True)
class ResidueSet:
    """``{v >= 0 : v mod modulus in residues} | added - removed``.

    Instances are kept canonical: the modulus is the minimal period, ``added``
    avoids the periodic part and ``removed`` lies inside it.  Equal sets thus
    compare equal.
    """
    modulus: int = 1
    residues: frozenset = frozenset()
    added: frozenset = frozenset()
    removed: frozenset = frozenset()

    def __post_init__(self):
        m = int(self.modulus)
        if m < 1:
            raise ValueError(f'modulus must be positive, got {m}')
        residues = frozenset(int(r) for r in self.residues)
        if any(not 0 <= r < m for r in residues):
            raise ValueError(f'residues must lie in [0, {m})')
        added = frozenset(int(a) for a in self.added)
        removed = frozenset(int(a) for a in self.removed)
        if any(a < 0 for a in added | removed):
            raise ValueError('corrections must be non-negative')
        in_periodic = lambda v: v % m in residues  # noqa: E731
        # canonical corrections
        added_c = frozenset(a for a in added if not in_periodic(a))
        removed_c = frozenset(a for a in removed
                              if in_periodic(a) and a not in added)
        m, residues = _minimal_period(m, residues)
        object.__setattr__(self, 'modulus', m)
        object.__setattr__(self, 'residues', residues)
        object.__setattr__(self, 'added', added_c)
        object.__setattr__(self, 'removed', removed_c)

    @classmethod
    def empty(cls):
        return cls()

    @classmethod
    def full(cls):
        return cls(1, {0})

    @classmethod
    def finite(cls, items):
        return cls(1, frozenset(), frozenset(items))

    @classmethod
    def congruence(cls, residue, modulus):
        return cls(modulus, {residue % modulus})

    def __contains__(self, v):
        if v < 0:
            return False
        if v in self.added:
            return True
        if v in self.removed:
            return False
        return v % self.modulus in self.residues

    def _periodic(self, v):
        return v % self.modulus in self.residues

    def is_empty(self):
        return not self.residues and not self.added

    def is_finite(self):
        return not self.residues

    def __bool__(self):
        return not self.is_empty()

    def __len__(self):
        if not self.is_finite():
            raise OverflowError('residue set is infinite')
        return len(self.added)

    def _combine(self, other, op):
        m = _lcm(self.modulus, other.modulus)
        residues = {r for r in range(m)
                    if op(self._periodic(r), other._periodic(r))}
        candidates = self.added | self.removed | other.added | other.removed
        added = {v for v in candidates
                 if op(v in self, v in other) and v % m not in residues}
        removed = {v for v in candidates
                   if not op(v in self, v in other) and v % m in residues}
        return ResidueSet(m, residues, added, removed)

    def __or__(self, other):
        return self._combine(other, lambda a, b: a or b)

    def __and__(self, other):
        return self._combine(other, lambda a, b: a and b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a and not b)

    def complement(self):
        residues = set(range(self.modulus)) - self.residues
        return ResidueSet(self.modulus, residues, self.removed, self.added)

    def issubset(self, other):
        return (self - other).is_empty()

    def __le__(self, other):
        return self.issubset(other)

    def members(self, limit):
        """The elements below ``limit``, ascending."""
        return [v for v in range(limit) if v in self]

    def __str__(self):
        return (f'mod {self.modulus} {_fmt_set(self.residues)} '
                f'+{_fmt_set(self.added)} -{_fmt_set(self.removed)}')


def _minimal_period(m, residues):
    for d in sorted(d for d in range(1, m + 1) if m % d == 0):
        reduced = frozenset(r % d for r in residues)
        if all((r % d in reduced) == (r in residues) for r in range(m)):
            return d, reduced
    return m, residues


@dataclass(frozen=True)
class Cardinality:
    """Either ``Finite(count)`` or ``Infinite`` (``count is None``)."""
    count: object = None

    @classmethod
    def infinite(cls):
        return cls(None)

    @property
    def is_infinite(self):
        return self.count is None

    def __str__(self):
        return 'Infinite' if self.count is None else f'Finite({self.count})'


@dataclass(frozen=True)
class ValuationProjection:
    """Diagonal projection onto ``{x : v2(x) in vals} | extra - minus``.

    Kept canonical like :class:`ResidueSet`: ``extra`` avoids the valuation
    part, ``minus`` lies inside it.
    """
    vals: ResidueSet = ResidueSet()
    extra: frozenset = frozenset()
    minus: frozenset = frozenset()

    def __post_init__(self):
        extra = frozenset(int(x) for x in self.extra)
        minus = frozenset(int(x) for x in self.minus)
        if any(x <= 0 for x in extra | minus):
            raise ValueError('basis indices start at 1')
        vals = self.vals
        extra_c = frozenset(x for x in extra if v2(x) not in vals)
        minus_c = frozenset(x for x in minus
                            if v2(x) in vals and x not in extra)
        object.__setattr__(self, 'extra', extra_c)
        object.__setattr__(self, 'minus', minus_c)

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls(ResidueSet.full())

    def __contains__(self, x):
        if x <= 0:
            return False
        if x in self.extra:
            return True
        if x in self.minus:
            return False
        return v2(x) in self.vals

    def support(self, limit):
        """First ``limit`` basis indices in the support."""
        out = []
        x = 1
        while len(out) < limit:
            if x in self:
                out.append(x)
            elif self.vals.is_empty() and x > max(self.extra, default=0):
                break
            x += 1
        return out

    def _combine(self, other, op):
        vals = self.vals._combine(other.vals, op)
        candidates = self.extra | self.minus | other.extra | other.minus
        extra = {x for x in candidates
                 if op(x in self, x in other) and v2(x) not in vals}
        minus = {x for x in candidates
                 if not op(x in self, x in other) and v2(x) in vals}
        return ValuationProjection(vals, extra, minus)

    def __or__(self, other):
        return self._combine(other, lambda a, b: a or b)

    def __and__(self, other):
        return self._combine(other, lambda a, b: a and b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a and not b)

    def is_zero(self):
        return self.vals.is_empty() and not self.extra

    def __str__(self):
        text = f'vals {self.vals}'
        if self.extra or self.minus:
            text += f' extra {_fmt_set(self.extra)} minus {_fmt_set(self.minus)}'
        return text

    _PATTERN = re.compile(
        r'^\s*vals\s+mod\s+(\d+)\s*\{([^}]*)\}\s*\+\s*\{([^}]*)\}'
        r'\s*-\s*\{([^}]*)\}'
        r'(?:\s*extra\s*\{([^}]*)\}\s*minus\s*\{([^}]*)\})?\s*$')

    @classmethod
    def parse(cls, text):
        """Inverse of ``str``."""
        match = cls._PATTERN.match(text)
        if not match:
            raise FormatError(f'cannot parse valuation projection: {text!r}')

        def ints(group):
            group = group or ''
            try:
                return frozenset(int(t) for t in group.split(',') if t.strip())
            except ValueError:
                raise FormatError(f'bad integer list {group!r}') from None

        m, res, add, rem, extra, minus = match.groups()
        vals = ResidueSet(int(m), ints(res), ints(add), ints(rem))
        return cls(vals, ints(extra), ints(minus))


def card(s):
    """Cardinality of the support (the rank of the projection)."""
    if not s.vals.is_empty():
        return Cardinality.infinite()
    return Cardinality(len(s.extra))


def leq(s, t):
    """``s <= t``: the support of ``s`` is contained in that of ``t``."""
    return (s - t).is_zero()


def orth_sum(s, t):
    """Sum of two orthogonal projections.

    Raises
    ------
    NotOrthogonal
        If the supports meet.
    """
    if not (s & t).is_zero():
        raise NotOrthogonal(f'supports of {s} and {t} intersect')
    return s | t


def complement(s):
    """``1 - s``; an involution."""
    vals = s.vals.complement()
    return ValuationProjection(vals, s.minus, s.extra)


def mv_equiv(s, t):
    """Murray-von Neumann equivalence: equal cardinality of supports."""
    return card(s) == card(t)


def valuation_row(n):
    """``p_n``: the projection onto ``{x : v2(x) = n}``."""
    return ValuationProjection(ResidueSet.finite({n}))


def valuation_class(j, modulus):
    """``{x : v2(x) = j mod modulus}``, i.e. the sum of ``p_{modulus*n + j}``."""
    return ValuationProjection(ResidueSet.congruence(j, modulus))


@dataclass(frozen=True)
class DedekindReport:
    p_leq_q: bool
    p_equiv_q: bool
    distinct: bool
    all_equivalent: bool

    @property
    def ok(self):
        return self.p_leq_q and self.p_equiv_q and self.distinct \
            and self.all_equivalent


def dedekind_pair():
    """A pair ``p <= q`` with ``p ~ q`` but ``p != q``.

    The rows ``p_n = {v2 = n}`` are infinite, pairwise orthogonal and sum to
    1.  Grouping them by ``n mod 3`` gives ``e_0, e_1, e_2``; then ``p = e_0``
    and ``q = e_0 + e_1``.  ``p``, ``q`` and both complements are all
    equivalent.

    Returns
    -------
    p, q : ValuationProjection
    report : DedekindReport
    """
    e0, e1 = valuation_class(0, 3), valuation_class(1, 3)
    p = e0
    q = orth_sum(e0, e1)
    quartet = [p, q, complement(p), complement(q)]
    report = DedekindReport(
        p_leq_q=leq(p, q),
        p_equiv_q=mv_equiv(p, q),
        distinct=p != q,
        all_equivalent=all(mv_equiv(a, b) for a in quartet for b in quartet))
    return p, q, report


def ball_disjoint_family(k_max):
    """Strictly increasing, pairwise equivalent projections ``p_1 < ... < p_k``.

    ``p_k = {x : v2(x) < k}`` is the sum of the first ``k`` rows.
    """
    if k_max < 2:
        raise ValueError(f'k_max must be at least 2, got {k_max}')
    family = []
    acc = valuation_row(0)
    family.append(acc)
    for k in range(1, k_max):
        acc = orth_sum(acc, valuation_row(k))
        family.append(acc)
    return family
