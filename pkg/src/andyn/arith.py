"""Exact integer arithmetic for sizes of the form a*k + b = q**N.

Everything here uses Python integers; no floating point is involved.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator

from .errors import PreconditionViolated


@dataclass(frozen=True)
class SolutionWitness:
    K: int
    N: int


@dataclass(frozen=True)
class CoprimeDecomp:
    eta: int
    a_prime: int


@dataclass(frozen=True)
class GeomSeq:
    """Sizes ``q**(N0 + l*mu)`` for l = 0, 1, 2, ..."""

    a: int
    b: int
    q: int
    N0: int
    mu: int

    def exponent(self, l: int) -> int:
        return self.N0 + l * self.mu

    def size(self, l: int) -> int:
        return self.q ** self.exponent(l)

    def k(self, l: int) -> int:
        return (self.size(l) - self.b) // self.a

    def terms(self, max_size: int) -> Iterator[int]:
        l = 0
        while self.size(l) <= max_size:
            yield self.size(l)
            l += 1


class Emptiness(enum.Enum):
    Empty = "Empty"
    UniqueAtZero = "UniqueAtZero"
    Inapplicable = "Inapplicable"


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError("n must be positive")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def totient(n: int) -> int:
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def coprime_power(a: int, q: int) -> CoprimeDecomp:
    """Least eta with a / gcd(a, q**eta) coprime to q."""
    if a < 1 or q < 2:
        raise PreconditionViolated("need a >= 1 and q >= 2")
    eta = 0
    for p, vq in factorize(q).items():
        eta = max(eta, -(-_valuation(a, p) // vq))
    return CoprimeDecomp(eta, a // math.gcd(a, q ** eta))


def find_solutions(a: int, b: int, q: int, n_max: int = 64, *, k_min: int = 0) -> list[SolutionWitness]:
    """All (K, N) with a*K + b = q**N, K >= k_min and N <= n_max, by ascending N."""
    out = []
    for n in range(n_max + 1):
        t = q ** n - b
        if t >= 0 and t % a == 0 and t // a >= k_min:
            out.append(SolutionWitness(t // a, n))
    return out


def divisibility_emptiness(a: int, b: int, q: int) -> Emptiness:
    """Emptiness when q divides a but not b (only (0, 0) can survive, if b = 1)."""
    if a % q == 0 and b % q != 0:
        return Emptiness.UniqueAtZero if b == 1 else Emptiness.Empty
    return Emptiness.Inapplicable


@dataclass(frozen=True)
class Normalized:
    a: int
    b: int
    q: int
    m: int
    eta0: int

    def lift(self, w: SolutionWitness) -> SolutionWitness | None:
        """Map a witness of the reduced triple back; None if K would be negative."""
        k = w.K - self.m
        return SolutionWitness(k, w.N + self.eta0) if k >= 0 else None

    def lower(self, w: SolutionWitness) -> SolutionWitness:
        return SolutionWitness(w.K + self.m, w.N - self.eta0)


def normalize(a: int, b: int, q: int) -> Normalized:
    """Reduce b below a, then divide out common factors q from a and b."""
    m, b2 = divmod(b, a)
    a2, eta0 = a, 0
    while a2 % q == 0 and b2 % q == 0 and b2 > 0:
        a2 //= q
        b2 //= q
        eta0 += 1
    return Normalized(a2, b2, q, m, eta0)


def _first_solution(a: int, b: int, q: int) -> SolutionWitness | None:
    # residues q**N mod a become periodic after at most eta steps with period
    # at most a, so this window is exhaustive
    n_floor = 0
    while q ** n_floor < b:
        n_floor += 1
    limit = n_floor + coprime_power(a, q).eta + a + 1
    sols = find_solutions(a, b, q, limit)
    return sols[0] if sols else None


def periodicity(a: int, b: int, q: int) -> tuple[int, int] | None:
    """Least mu >= 1 with b*q**mu = a*kappa + b, returned as (mu, kappa)."""
    if b < 1 or a < 1 or q < 2:
        raise PreconditionViolated("periodicity needs a >= 1, b >= 1, q >= 2")
    bound = max(2 * a * totient(a), 1)
    found = None
    for mu in range(1, bound + 1):
        if (b * pow(q, mu, a)) % a == b % a:
            found = (mu, (b * q ** mu - b) // a)
            break
    # independent route: a solution with N >= eta forces the period to divide
    # phi(a') (or be 1 when a' = 1)
    cp = coprime_power(a, q)
    base = _first_solution(a, b, q)
    if base is not None and base.N >= cp.eta:
        expected = 1 if cp.a_prime == 1 else totient(cp.a_prime)
        if found is None or expected % found[0] != 0:
            raise AssertionError(f"periodicity({a},{b},{q}) disagrees with the Euler construction")
    return found


def geometric_sequence(a: int, b: int, q: int) -> GeomSeq | None:
    """Base solution plus period, or None when at most one solution exists."""
    if a < 1 or q < 2 or b < 0:
        raise PreconditionViolated("need a >= 1, b >= 0, q >= 2")
    if b == 0:
        cp = coprime_power(a, q)
        return GeomSeq(a, b, q, cp.eta, 1) if cp.a_prime == 1 else None
    base = _first_solution(a, b, q)
    if base is None:
        return None
    per = periodicity(a, b, q)
    if per is None:
        return None
    return GeomSeq(a, b, q, base.N, per[0])


def exact_log(value: int, base: int) -> int:
    """``e`` with base**e == value, else PreconditionViolated."""
    if value < 1:
        raise PreconditionViolated(f"{value} is not a power of {base}")
    e = 0
    while value % base == 0:
        value //= base
        e += 1
    if value != 1:
        raise PreconditionViolated(f"not a power of {base}")
    return e


def is_power_of(value: int, base: int) -> bool:
    try:
        exact_log(value, base)
        return True
    except PreconditionViolated:
        return False


def padding_boolean(a: int, b: int, alpha: int, s: int) -> int:
    """Padding L making a*(alpha*2**s + L) + b a power of two."""
    if a < 1 or b < 0 or s < 0:
        raise PreconditionViolated("need a >= 1, b >= 0, s >= 0")
    if not is_power_of(a + b, 2):
        raise PreconditionViolated("a + b must be a power of two")
    if not is_power_of(alpha, 2):
        raise PreconditionViolated("alpha must be a power of two")
    lp = s + exact_log(alpha, 2)
    big = 2 ** (lp * totient(a))
    if (b * (big - 1)) % a:
        raise PreconditionViolated("a does not divide b*(2**(l'*phi(a)) - 1)")
    L = big + b * (big - 1) // a - alpha * 2 ** s
    if L < 0:
        raise PreconditionViolated("negative padding")
    return L


def boolean_automata(a: int, b: int, alpha: int, s: int) -> int:
    return exact_log(a + b, 2) + (exact_log(alpha, 2) + s) * totient(a)


def padding_q(a: int, b: int, q: int, mu: int, alpha: int, s: int) -> int:
    """Padding L making a*(alpha*2**s + L) + b equal to q**(N + l'*mu)."""
    if a < 1 or s < 0 or mu < 1:
        raise PreconditionViolated("need a >= 1, s >= 0, mu >= 1")
    if b < a:
        raise PreconditionViolated("need b >= a")
    n = exact_log(b, q)
    if n < coprime_power(a, q).eta:
        raise PreconditionViolated("b = q**N needs N at least the coprime power of q for a")
    if not is_power_of(alpha, q):
        raise PreconditionViolated(f"alpha must be a power of {q}")
    if (b * q ** mu - b) % a:
        raise PreconditionViolated(f"mu = {mu} is not a period for (a, b, q)")
    lp = s + exact_log(alpha, q) + 1
    L = b * (q ** (lp * mu) - 1) // a - alpha * 2 ** s
    if L < 0:
        raise PreconditionViolated("negative padding")
    return L


def q_automata(a: int, b: int, q: int, mu: int, alpha: int, s: int) -> int:
    return exact_log(b, q) + mu * (s + 1) + mu * exact_log(alpha, q)


def minimal_padding(a: int, b: int, q: int, alpha: int, s: int, n_max: int = 256) -> int | None:
    """Brute-force least L >= 0 with a*(alpha*2**s + L) + b a power of q."""
    floor = a * alpha * 2 ** s + b
    for n in range(n_max + 1):
        t = q ** n
        if t >= floor and (t - floor) % a == 0:
            return (t - floor) // a
    return None
