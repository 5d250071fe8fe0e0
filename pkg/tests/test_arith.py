import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from andyn.arith import (
    Emptiness,
    boolean_automata,
    coprime_power,
    divisibility_emptiness,
    exact_log,
    factorize,
    find_solutions,
    geometric_sequence,
    is_power_of,
    minimal_padding,
    normalize,
    padding_boolean,
    padding_q,
    periodicity,
    q_automata,
    totient,
)
from andyn.errors import PreconditionViolated


def brute_eta(a, q):
    for eta in range(33):
        ap = a // math.gcd(a, q ** eta)
        if math.gcd(ap, q) == 1:
            return eta, ap
    raise AssertionError


def test_totient_examples():
    assert (totient(1), totient(7), totient(12)) == (1, 6, 4)
    assert all(totient(n) == sum(math.gcd(n, k) == 1 for k in range(1, n + 1)) for n in range(1, 200))
    assert factorize(360) == {2: 3, 3: 2, 5: 1}


def test_coprime_power_examples():
    assert (coprime_power(3, 2).eta, coprime_power(3, 2).a_prime) == (0, 3)
    assert (coprime_power(8, 2).eta, coprime_power(8, 2).a_prime) == (3, 1)
    assert (coprime_power(12, 6).eta, coprime_power(12, 6).a_prime) == (2, 1)


def test_coprime_power_matches_brute_force():
    for q in range(2, 7):
        for a in range(1, 31):
            cp = coprime_power(a, q)
            assert (cp.eta, cp.a_prime) == brute_eta(a, q)
            assert a == cp.a_prime * math.gcd(a, q ** cp.eta)


def test_find_solutions_examples():
    assert [(w.K, w.N) for w in find_solutions(2, 4, 2, 5)] == [(0, 2), (2, 3), (6, 4), (14, 5)]
    assert [(w.K, w.N) for w in find_solutions(4, 2, 2, 20)] == [(0, 1)]
    assert find_solutions(2, 1, 2, 20, k_min=1) == []
    for w in find_solutions(7, 3, 3, 30):
        assert 7 * w.K + 3 == 3 ** w.N


def test_divisibility_emptiness_examples():
    assert divisibility_emptiness(2, 1, 2) is Emptiness.UniqueAtZero
    assert divisibility_emptiness(4, 3, 2) is Emptiness.Empty
    assert divisibility_emptiness(3, 2, 2) is Emptiness.Inapplicable


def test_divisibility_emptiness_agrees_with_enumeration():
    for q in range(2, 6):
        for a in range(q, 31, q):
            for b in range(1, 31):
                verdict = divisibility_emptiness(a, b, q)
                sols = [(w.K, w.N) for w in find_solutions(a, b, q, 40)]
                if verdict is Emptiness.Empty:
                    assert sols == []
                elif verdict is Emptiness.UniqueAtZero:
                    assert sols == [(0, 0)]


def test_normalize_examples():
    n = normalize(3, 10, 2)
    assert (n.b, n.m) == (1, 3)
    n = normalize(3, 1, 2)
    assert (n.a, n.b, n.m) == (3, 1, 0)
    n = normalize(6, 4, 2)
    assert (n.a, n.b, n.eta0) == (3, 2, 1)


def test_normalize_lift_preserves_solutions():
    for a, b, q in [(6, 4, 2), (3, 10, 2), (12, 18, 3), (5, 30, 5)]:
        n = normalize(a, b, q)
        for w in find_solutions(n.a, n.b, q, 30):
            lifted = n.lift(w)
            if lifted is not None:
                assert a * lifted.K + b == q ** lifted.N
                assert n.lower(lifted) == w


def test_periodicity_examples():
    assert periodicity(2, 4, 2) == (1, 2)
    assert periodicity(4, 2, 2) is None
    for b in range(1, 6):
        for q in range(2, 5):
            assert periodicity(1, b, q) == (1, b * (q - 1))
    with pytest.raises(PreconditionViolated):
        periodicity(3, 0, 2)


def test_geometric_sequence_examples():
    gs = geometric_sequence(2, 4, 2)
    assert (gs.N0, gs.mu) == (2, 1)
    assert list(gs.terms(64)) == [4, 8, 16, 32, 64]
    assert [gs.k(l) for l in range(5)] == [2 ** (l + 1) - 2 for l in range(5)]
    assert geometric_sequence(4, 2, 2) is None
    gs = geometric_sequence(3, 5, 2)
    assert (gs.N0, gs.mu) == (3, 2) and list(gs.terms(200)) == [8, 32, 128]


def test_geometric_terms_are_solutions():
    for q in range(2, 7):
        for a in range(1, 31):
            for b in range(0, 31):
                gs = geometric_sequence(a, b, q)
                if gs is None:
                    continue
                for t in gs.terms(1 << 20):
                    assert t >= b and (t - b) % a == 0


def test_periodic_congruence_is_multiplicative():
    """b*q**n = b (mod a) implies b*q**(m*n) = b (mod a)."""
    for q in range(2, 7):
        for a in range(1, 31):
            for b in range(1, 31):
                for n in range(1, 13):
                    if (b * q ** n - b) % a == 0:
                        assert all((b * q ** (m * n) - b) % a == 0 for m in range(1, 9))


def test_exact_logs():
    assert exact_log(81, 3) == 4 and is_power_of(1, 7) and not is_power_of(12, 2)
    with pytest.raises(PreconditionViolated):
        exact_log(12, 2)


def test_padding_boolean_examples():
    assert padding_boolean(3, 5, 2, 1) == 37
    assert 3 * (4 + 37) + 5 == 2 ** 7
    assert padding_boolean(1, 1, 1, 0) == 0
    L = padding_boolean(3, 5, 2, 2)
    assert is_power_of(3 * (2 * 4 + L) + 5, 2)
    assert minimal_padding(3, 5, 2, 2, 2) <= L
    assert boolean_automata(3, 5, 2, 1) == 7


def test_padding_q_examples():
    assert padding_q(2, 9, 3, 1, 1, 1) == 34
    assert 2 * 36 + 9 == 81
    assert q_automata(2, 9, 3, 1, 1, 1) == 4
    for q in range(2, 6):
        for n in range(0, 3):
            a = b = q ** n
            L = padding_q(a, b, q, 1, 1, 0)
            assert L >= 0 and is_power_of(a * (1 + L) + b, q)
        L = padding_q(1, q, q, 1, 1, 0)
        assert 1 + L + q == q ** 2
    with pytest.raises(PreconditionViolated):
        padding_q(2, 9, 3, 1, 2, 1)  # alpha not a power of 3


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 12), st.integers(0, 12), st.integers(0, 3), st.integers(0, 5))
def test_padding_boolean_total_is_power_of_two(a, b, alpha_log, s):
    alpha = 2 ** alpha_log
    try:
        L = padding_boolean(a, b, alpha, s)
    except PreconditionViolated:
        return
    total = a * (alpha * 2 ** s + L) + b
    assert is_power_of(total, 2)
    assert minimal_padding(a, b, 2, alpha, s, 400) <= L
