import itertools
from fractions import Fraction

import pytest

from qmodular.qcore import INF, QSeries
from qmodular.specials import (
    Family,
    NormalizedVector,
    SeriesId,
    _nonincreasing_tuples,
    ag_exponent,
    ag_product,
    ag_sum,
    build_series,
    chi5,
    companion_product,
    eisenstein,
    lambert_unweighted,
    lambert_weighted,
    normalized_vector,
    rr_series,
    schur_polynomial,
    schur_polynomial_direct,
)

from conftest import divisors, partition_counts


def _conv(a, b, order):
    out = [0] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j, y in enumerate(b[: order + 1 - i]):
                out[i + j] += x * y
    return out


def ag_sum_oracle(k, i, order):
    """Direct enumeration over (n_1..n_{k-1}); 1/(q)_n counts partitions into parts <= n."""
    total = [0] * (order + 1)
    for ns in itertools.product(range(order + 1), repeat=k - 1):
        Ns = [sum(ns[j:]) for j in range(k - 1)]
        e = sum(N * N for N in Ns) + sum(Ns[i - 1 :])
        if e > order:
            continue
        term = [1] + [0] * order
        for n in ns:
            term = _conv(term, partition_counts(range(1, n + 1), order), order)
        for d in range(order + 1 - e):
            total[e + d] += term[d]
    return total


def test_rr_series_against_partitions():
    assert rr_series("G", 8).dense() == [1, 1, 1, 1, 2, 2, 3, 3, 4]
    assert rr_series("H", 9).dense() == [1, 0, 1, 1, 1, 1, 2, 2, 3, 3]
    N = 60
    assert rr_series("G", N).dense() == partition_counts([n for n in range(1, N + 1) if n % 5 in (1, 4)], N)
    assert rr_series("H", N).dense() == partition_counts([n for n in range(1, N + 1) if n % 5 in (2, 3)], N)


def test_schur_polynomials():
    assert schur_polynomial("A", 0, 10) == QSeries.one(10)
    assert schur_polynomial("A", 2, 10).dense()[:3] == [1, 1, 0]
    assert schur_polynomial("B", 1, 10) == QSeries.one(10)
    for kind in "AB":
        for m in range(0, 25):
            assert schur_polynomial(kind, m, 40) == schur_polynomial_direct(kind, m, 40)


def test_schur_at_q_equals_one_is_fibonacci():
    fib = [1, 1]
    for _ in range(20):
        fib.append(fib[-1] + fib[-2])
    for m in range(15):
        deg = m * m
        assert sum(schur_polynomial("A", m, deg).dense()) == fib[m]


def test_schur_approximates_rr():
    G, H = rr_series("G", 40), rr_series("H", 40)
    for m in range(1, 30):
        assert (schur_polynomial("A", m, 40) - G).offset >= m
        assert (schur_polynomial("B", m, 40) - H).offset >= m


def test_companion_products():
    assert companion_product("P", 0, 10) == QSeries.one(10)
    assert companion_product("P", 1, 4).dense() == [1, 1, 1, 1, 2]
    for m in range(1, 9):
        diff = companion_product("P", m, 60) - companion_product("P", m - 1, 60)
        assert diff.offset >= 5 * m - 4
        diff = companion_product("Q", m, 60) - companion_product("Q", m - 1, 60)
        assert diff.offset >= 5 * m - 3


def test_lambert_against_divisor_sums():
    N = 40
    for M in (1, 5, 7):
        for r in range(M):
            w = lambert_weighted(r, M, N)
            u = lambert_unweighted(r, M, N)
            for n in range(1, N + 1):
                ds = [d for d in divisors(n) if d % M == r]
                assert w[n] == sum(ds)
                assert u[n] == len(ds)
            assert w[0] == 0 and u[0] == 0
    assert lambert_weighted(1, 5, 10)[6] == 7
    assert lambert_weighted(4, 5, 4).dense() == [0, 0, 0, 0, 4]
    assert lambert_unweighted(1, 5, 10)[6] == 2
    assert lambert_unweighted(0, 5, 4).is_zero()
    assert lambert_unweighted(2, 5, 10)[4] == 1


def test_lambert_classes_sum_to_sigma():
    total = QSeries.zero(50)
    for r in range(5):
        total = total + lambert_weighted(r, 5, 50)
    assert total.dense()[1:] == [sum(divisors(n)) for n in range(1, 51)]


def test_eisenstein():
    E2 = eisenstein("E2", 30)
    assert E2.dense() == [1] + [-24 * sum(divisors(n)) for n in range(1, 31)]
    Ep = eisenstein("E+", 30)
    assert (Ep[0], Ep[1], Ep[5]) == (-4, -24, -24)
    for n in range(1, 31):
        s5 = sum(divisors(n // 5)) if n % 5 == 0 else 0
        assert Ep[n] == -24 * (sum(divisors(n)) - 5 * s5)
    Ec = eisenstein("Echi", 30)
    assert Ec.dense()[:7] == [0, 1, -1, -2, 3, 1, 2]
    legendre = {0: 0, 1: 1, 4: 1, 2: -1, 3: -1}
    for n in range(1, 31):
        assert Ec[n] == sum(legendre[d % 5] * d for d in divisors(n))
    assert [chi5(d) for d in range(6)] == [0, 1, -1, -1, 1, 0]


def test_nonincreasing_tuples_enumeration():
    for length, bound, budget in [(1, INF, 20), (2, INF, 30), (3, 2, 40), (4, INF, 12)]:
        got = sorted(tuple(t) for t in _nonincreasing_tuples(length, bound, budget))
        cap = 6 if bound == INF else bound
        brute = sorted(t for t in itertools.product(range(cap + 1), repeat=length)
                       if all(t[j] >= t[j + 1] for j in range(length - 1)) and sum(x * x for x in t) <= budget)
        assert got == brute


@pytest.mark.parametrize("k,i", [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (4, 2)])
def test_ag_sum_against_direct_enumeration(k, i):
    order = 14
    assert ag_sum(k, i, order).dense() == ag_sum_oracle(k, i, order)


def test_ag_sum_specializations():
    assert ag_sum(2, 2, 20) == rr_series("G", 20)
    assert ag_sum(2, 1, 20) == rr_series("H", 20)
    assert ag_sum(3, 3, 8).dense() == partition_counts([n for n in range(1, 9) if n % 7 in (1, 2, 5, 6)], 8)
    for k in (2, 3, 4):
        for i in range(1, k + 1):
            assert ag_sum(k, i, 15, 0) == QSeries.one(15)


def test_ag_sum_stabilizes_in_L():
    order = 30
    full = ag_sum(3, 2, order)
    # N_1 <= L drops only terms with exponent >= (L+1)^2 > order once L >= 5
    assert ag_sum(3, 2, order, 5) == full
    assert ag_sum(3, 2, order, 4) != full
    assert (ag_sum(3, 2, order, 4) - full).offset >= 25


def test_gordon_partition_identity():
    # product side: partitions avoiding parts 0, +-i mod 2k+1
    N = 40
    for k in (2, 3, 4, 5):
        M = 2 * k + 1
        for i in range(1, k + 1):
            allowed = [n for n in range(1, N + 1) if n % M not in (0, i, M - i)]
            assert ag_product(k, i, N).dense() == partition_counts(allowed, N)
            assert ag_product(k, i, N)[0] == 1


def test_ag_exponents():
    assert ag_exponent(2, 2) == Fraction(-1, 60)
    assert ag_exponent(2, 1) == Fraction(11, 60)
    assert tuple(ag_exponent(3, i) for i in (1, 2, 3)) == (Fraction(17, 42), Fraction(5, 42), Fraction(-1, 42))
    for k in range(2, 11):
        M = 2 * k + 1
        vals = [ag_exponent(k, i) for i in range(1, k + 1)]
        assert len(set(vals)) == k
        # theta-quotient weight of the product side: q^{(M-2i)^2/(8M)} over q^{1/24} from (q;q)
        for i in range(1, k + 1):
            assert vals[i - 1] == Fraction((M - 2 * i) ** 2, 8 * M) - Fraction(1, 24)


def test_normalized_vectors():
    v = normalized_vector("RR", 2, 50)
    assert v.alphas == (Fraction(-1, 60), Fraction(11, 60))
    assert v.level == 5
    w = normalized_vector("AG", 2, 50)
    assert w.bodies == (rr_series("H", 50), rr_series("G", 50))
    for k in (3, 4):
        for body in normalized_vector("AG", k, 30).bodies:
            assert body[0] == 1
        assert normalized_vector("AG", k, 30).level == 2 * k + 1
    with pytest.raises(ValueError):
        normalized_vector("RR", 3)
    with pytest.raises(ValueError):
        NormalizedVector([v.components[0], v.components[0]], 5)


def test_series_ids():
    for text in ["G", "H", "A_5", "B_0", "P_3", "Q_2", "SW:1,5", "SU:0,5", "E2", "E+", "Echi", "AG:3,2", "AGprod:4,1"]:
        assert str(SeriesId.parse(text)) == text
    assert SeriesId.parse("AG:3,2") == SeriesId(Family.AG_SUM, (3, 2))
    for bad in ["X", "A_", "AG:3,4", "SW:5,5", "AG:1,1"]:
        with pytest.raises(ValueError):
            SeriesId.parse(bad)
    assert build_series("SW:1,5", 10) == lambert_weighted(1, 5, 10)
    assert build_series("AGprod:3,3", 10) == ag_product(3, 3, 10)
    assert build_series("B_4", 10) == schur_polynomial("B", 4, 10)
