"""Veech groups of tori with two rationally placed marked points.

Matrices act on column vectors.  The ground truth for membership is the
stabilizer test M x == +-x (mod Z^2); `membership_congruence` evaluates the
published congruence conditions branch by branch, exactly as written, so
the two can be compared.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Iterator

from .lattice import visible_density_G_In
from .numtheory import coprime_pair_count, euler_phi, l_chi0_coefficient


@dataclass(frozen=True)
class IntegerMatrix2:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.rows()} is not 1")

    @classmethod
    def identity(cls) -> "IntegerMatrix2":
        return cls(1, 0, 0, 1)

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.a, self.b), (self.c, self.d)

    def __matmul__(self, o: "IntegerMatrix2") -> "IntegerMatrix2":
        return IntegerMatrix2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                              self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def __neg__(self) -> "IntegerMatrix2":
        return IntegerMatrix2(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "IntegerMatrix2":
        return IntegerMatrix2(self.d, -self.b, -self.c, self.a)

    def apply(self, x: Fraction, y: Fraction) -> tuple[Fraction, Fraction]:
        return self.a * x + self.b * y, self.c * x + self.d * y

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


T_GEN = IntegerMatrix2(1, 1, 0, 1)
U_GEN = IntegerMatrix2(1, 0, 1, 1)
MINUS_I = IntegerMatrix2(-1, 0, 0, -1)
ROTATION = IntegerMatrix2(0, 1, -1, 0)


@dataclass(frozen=True)
class RationalMarking2:
    """The marked point (p1/q1, p2/q2) of T^2 marked also at the origin."""

    p1: int
    q1: int
    p2: int
    q2: int

    def __post_init__(self):
        for p, q in ((self.p1, self.q1), (self.p2, self.q2)):
            if q < 1 or not 0 <= p < q:
                raise ValueError(f"{p}/{q} is not in [0, 1)")
            if gcd(p, q) != 1:
                raise ValueError(f"{p}/{q} is not in lowest terms")
        if self.p1 == 0 and self.p2 == 0:
            raise ValueError("the marked point must differ from the origin")

    @classmethod
    def of(cls, x, y) -> "RationalMarking2":
        fx, fy = Fraction(x) % 1, Fraction(y) % 1
        return cls(fx.numerator, fx.denominator, fy.numerator, fy.denominator)

    @property
    def point(self) -> tuple[Fraction, Fraction]:
        return Fraction(self.p1, self.q1), Fraction(self.p2, self.q2)

    @property
    def n(self) -> int:
        """Common denominator of the point."""
        return self.q1 * self.q2 // gcd(self.q1, self.q2)

    def __str__(self) -> str:
        return f"({self.p1}/{self.q1}, {self.p2}/{self.q2})"


def membership_stabilizer(x: RationalMarking2, M: IntegerMatrix2) -> bool:
    px, py = x.point
    ux, uy = M.apply(px, py)
    return ((ux - px).denominator == 1 and (uy - py).denominator == 1) or \
        ((ux + px).denominator == 1 and (uy + py).denominator == 1)


def congruence_branch(x: RationalMarking2) -> str:
    """Which case of the congruence description applies to x: axis, equal, divides or general."""
    if x.p1 == 0 or x.p2 == 0:
        return "axis"
    if x.q1 == x.q2:
        return "equal"
    if x.q2 % x.q1 == 0 or x.q1 % x.q2 == 0:
        return "divides"
    return "general"


def _positive_case(x: RationalMarking2, a: int, b: int, c: int, d: int) -> bool:
    p1, q1, p2, q2 = x.p1, x.q1, x.p2, x.q2
    branch = congruence_branch(x)
    if branch == "axis":
        if p2 == 0:
            return (a - 1) % q1 == 0 and c % q1 == 0 and (d - 1) % q1 == 0
        return (d - 1) % q2 == 0 and b % q2 == 0 and (a - 1) % q2 == 0
    if branch == "equal":
        return (a * p1 + b * p2 - p1) % q1 == 0 and (c * p1 + d * p2 - p2) % q1 == 0
    if branch == "divides":
        if q2 % q1 == 0:
            m = q2 // q1
            return (b % m == 0 and (a + p2 * (b // m) - 1) % q1 == 0
                    and c % q1 == 0 and (d - 1) % q2 == 0)
        m = q1 // q2
        return (c % m == 0 and (d + p1 * (c // m) - 1) % q2 == 0
                and b % q2 == 0 and (a - 1) % q1 == 0)
    return (a - 1) % q1 == 0 and b % q2 == 0 and c % q1 == 0 and (d - 1) % q2 == 0


def membership_congruence(x: RationalMarking2, M: IntegerMatrix2) -> bool:
    cands = [M]
    if (x.p1, x.q1, x.p2, x.q2) == (1, 2, 1, 2):
        # the point (1/2, 1/2) also admits the quarter rotation
        cands.append(ROTATION.inverse() @ M)
    return any(_positive_case(x, G.a, G.b, G.c, G.d) or _positive_case(x, -G.a, -G.b, -G.c, -G.d)
               for G in cands)


def generator_words(max_length: int) -> set[IntegerMatrix2]:
    """All products of at most max_length factors from {T, U, -I}."""
    seen = {IntegerMatrix2.identity()}
    frontier = set(seen)
    for _ in range(max_length):
        frontier = {M @ G for M in frontier for G in (T_GEN, U_GEN, MINUS_I)} - seen
        seen |= frontier
    return seen


def rational_markings(q_max: int) -> Iterator[RationalMarking2]:
    for q1 in range(1, q_max + 1):
        for q2 in range(1, q_max + 1):
            for p1 in range(q1):
                for p2 in range(q2):
                    if gcd(p1, q1) == 1 and gcd(p2, q2) == 1 and (p1, p2) != (0, 0):
                        yield RationalMarking2(p1, q1, p2, q2)


@dataclass(frozen=True)
class Disagreement:
    marking: RationalMarking2
    matrix: IntegerMatrix2
    congruence: bool
    stabilizer: bool


def membership_disagreements(q_max: int = 8, max_length: int = 6) -> list[Disagreement]:
    words = sorted(generator_words(max_length), key=lambda M: (M.a, M.b, M.c, M.d))
    out = []
    for x in rational_markings(q_max):
        for M in words:
            c, s = membership_congruence(x, M), membership_stabilizer(x, M)
            if c != s:
                out.append(Disagreement(x, M, c, s))
    return out


def reduce_to_canonical(p: int, q: int, n: int) -> IntegerMatrix2:
    """A in SL2(Z) with A (p/n, q/n) == (1/n, 0) mod Z^2."""
    if n < 1:
        raise ValueError("n must be positive")
    if gcd(gcd(p, q), n) != 1:
        raise ValueError(f"gcd({p}, {q}, {n}) != 1")
    p, q = p % n, q % n
    if n == 1 or (p, q) == (1, 0):
        return IntegerMatrix2.identity()
    c = gcd(p, q)
    u, v = p // c, q // c
    a, b = _bezout(u, v)
    A1 = IntegerMatrix2(a, b, -v, u)              # (p, q) -> (c, 0)
    k = pow(c, -1, n)
    A2 = IntegerMatrix2(1, 0, k, 1)               # (c, 0) -> (c, 1) mod n
    A3 = IntegerMatrix2(1, -c, 0, 1)              # (c, 1) -> (0, 1)
    A = ROTATION @ A3 @ A2 @ A1                   # (0, 1) -> (1, 0)
    img = A.apply(Fraction(p, n), Fraction(q, n))
    if (img[0] - Fraction(1, n)).denominator != 1 or img[1].denominator != 1:
        raise AssertionError(f"reduction of ({p}, {q}, {n}) failed: {A}")
    return A


def _bezout(u: int, v: int) -> tuple[int, int]:
    old_r, r, old_s, s, old_t, t = u, v, 1, 0, 0, 1
    while r:
        qq = old_r // r
        old_r, r = r, old_r - qq * r
        old_s, s = s, old_s - qq * s
        old_t, t = t, old_t - qq * t
    return old_s, old_t


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError("n must be >= 2")


def orbit_index(n: int) -> int:
    _check_n(n)
    return coprime_pair_count(n)


def orbit_index_bruteforce(n: int) -> int:
    _check_n(n)
    return sum(1 for a in range(1, n + 1) for b in range(1, n + 1) if gcd(gcd(a, b), n) == 1)


def veech_index(n: int) -> int:
    _check_n(n)
    if n == 2:
        return 3
    half = Fraction(n * n, 2) * l_chi0_coefficient(n)
    if half.denominator != 1:
        raise AssertionError(f"non-integral index for n={n}")
    return int(half)


def gamma1_index(n: int) -> int:
    _check_n(n)
    return 3 if n == 2 else coprime_pair_count(n)


def cusp_count(n: int) -> int:
    _check_n(n)
    return 1 if n == 2 else euler_phi(n) // 2


def index_via_asymptotics(n: int) -> int:
    """Index recovered from the cusp count and the visible density of G_{I^n}."""
    _check_n(n)
    idx = 3 * cusp_count(n) / visible_density_G_In(n).coef_inv_pi
    if idx.denominator != 1:
        raise AssertionError(f"non-integral asymptotic index for n={n}: {idx}")
    return int(idx)


def ratio_invariant(n: int, x: int) -> Fraction:
    if not 0 < x < n or gcd(x, n) != 1:
        raise ValueError(f"need 0 < x < n with gcd(x, n) = 1, got x={x}, n={n}")
    return Fraction(min(x, n - x), max(x, n - x))


def ratio_invariant_classes(n: int) -> set[Fraction]:
    _check_n(n)
    return {ratio_invariant(n, x) for x in range(1, n) if gcd(x, n) == 1}


def orbit_coset_index(n: int) -> int:
    """Index of the stabilizer of +-(1/n, 0), by walking the SL2(Z/n) orbit of (1, 0)."""
    _check_n(n)
    start = (1, 0)
    seen = {start}
    todo = deque([start])
    while todo:
        u, v = todo.popleft()
        for G in (T_GEN, U_GEN, T_GEN.inverse(), U_GEN.inverse()):
            w = ((G.a * u + G.b * v) % n, (G.c * u + G.d * v) % n)
            if w not in seen:
                seen.add(w)
                todo.append(w)
    classes = {min(w, ((-w[0]) % n, (-w[1]) % n)) for w in seen}
    return len(classes)


def coset_index(member: Callable[[IntegerMatrix2], bool], limit: int = 10_000) -> int:
    """Right cosets of {M : member(M)} in SL2(Z), found by breadth-first search."""
    reps = [IntegerMatrix2.identity()]
    todo = deque(reps)
    gens = (T_GEN, U_GEN, T_GEN.inverse(), U_GEN.inverse())
    while todo:
        g = todo.popleft()
        for s in gens:
            h = g @ s
            if not any(member(h @ r.inverse()) for r in reps):
                reps.append(h)
                todo.append(h)
                if len(reps) > limit:
                    raise RuntimeError("coset enumeration exceeded limit")
    return len(reps)


def is_closed(members: Iterable[IntegerMatrix2], member: Callable[[IntegerMatrix2], bool]) -> bool:
    ms = list(members)
    return all(member(A @ B) for A in ms for B in ms) and all(member(A.inverse()) for A in ms)
