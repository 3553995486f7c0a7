import math
import random

import pytest

from kummercover.exactlin import (ExactLinError, IntMatrix, egcd, smith_full,
                                  smith_row, solve_congruence_param,
                                  structured_smith, unimodular_inverse)


def test_egcd_basic():
    g, u, v = egcd(10, 15)
    assert g == 5 and 10 * u + 15 * v == 5


def test_egcd_negative_and_zero():
    for a, b in [(-10, 15), (10, -15), (-10, -15), (0, 7), (7, 0), (-7, 0)]:
        g, u, v = egcd(a, b)
        assert g == math.gcd(a, b)
        assert u * a + v * b == g


def test_egcd_rejects_double_zero():
    with pytest.raises(ExactLinError):
        egcd(0, 0)


def test_smith_row_identity_on_examples():
    snf = smith_row([10, 15, 20])
    assert snf.gcd == 5
    assert snf.r_matrix.det() in (1, -1)
    row = IntMatrix.from_rows([[10, 15, 20]])
    assert (row @ snf.r_matrix).entries == ((5, 0, 0),)


def test_smith_row_random(rng):
    for _ in range(200):
        m = rng.randint(1, 6)
        d = [rng.choice([-1, 1]) * rng.randint(1, 500) for _ in range(m)]
        snf = smith_row(d)
        assert snf.gcd == math.gcd(*d)
        prod = IntMatrix.from_rows([d]) @ snf.r_matrix
        assert prod.entries[0] == (snf.gcd,) + (0,) * (m - 1)
        assert snf.r_matrix.det() in (1, -1)


def test_smith_row_rejects_zero_entry():
    with pytest.raises(ExactLinError):
        smith_row([4, 0, 6])


def test_smith_full_random(rng):
    for _ in range(60):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        a = IntMatrix.from_rows([[rng.randint(-20, 20) for _ in range(n)]
                                 for _ in range(m)])
        l, d, r = smith_full(a)
        assert l.det() in (1, -1) and r.det() in (1, -1)
        assert (l @ a @ r).entries == d.entries
        diag = [d[i, i] for i in range(min(m, n))]
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert d[i, j] == 0
        for x, y in zip(diag, diag[1:]):
            assert x >= 0
            if x != 0:
                assert y % x == 0
            else:
                assert y == 0


def test_unimodular_inverse_roundtrip(rng):
    ident = IntMatrix.identity(4)
    for _ in range(40):
        # random product of elementary matrices is unimodular
        m = IntMatrix.identity(4)
        for _ in range(8):
            e = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
            i, j = rng.sample(range(4), 2)
            e[i][j] = rng.randint(-3, 3)
            m = m @ IntMatrix.from_rows(e)
        inv = unimodular_inverse(m)
        assert (m @ inv).entries == ident.entries
        assert (inv @ m).entries == ident.entries


def test_unimodular_inverse_rejects_singular():
    with pytest.raises(ExactLinError):
        unimodular_inverse(IntMatrix.from_rows([[2, 0], [0, 1]]))


def test_structured_smith_identity(rng):
    # the candidate always satisfies d . C = (g, 0, ..., 0), unimodular or not
    for d in ([10, 15, 20], [12, 9, 15], [6, 10, 15, 21]):
        cand, det, is_snf = structured_smith(d, 7)
        g = math.gcd(*d)
        prod = IntMatrix.from_rows([d]) @ cand
        assert prod.entries[0] == (g,) + (0,) * (len(d) - 1)
        assert is_snf == (abs(det) == 1)


def test_structured_smith_determinant_formula(rng):
    # |det| = gcd(d) * d_1^{m-2} / prod_{i>=2} (d_1, d_i)
    for _ in range(80):
        m = rng.randint(2, 5)
        d = [rng.randint(1, 60) for _ in range(m)]
        cand, det, _ = structured_smith(d, 5)
        num = math.gcd(*d) * d[0] ** (m - 2)
        den = math.prod(math.gcd(d[0], x) for x in d[1:])
        assert abs(det) * den == num


def test_solve_congruence_param_mod_n(rng):
    for _ in range(100):
        n = rng.randint(2, 15)
        m = rng.randint(2, 5)
        d = [rng.randint(1, 40) for _ in range(m)]
        if math.gcd(math.gcd(*d), n) != 1:
            continue
        t = [rng.randint(-5, 5) for _ in range(m)]
        sol = solve_congruence_param(d, n, t)
        assert sum(x * y for x, y in zip(sol, d)) % n == 0
        sol0 = solve_congruence_param(d, n, t, integral=True)
        assert sum(x * y for x, y in zip(sol0, d)) == 0


def test_solve_congruence_param_surjective_mod_small():
    # every residue-0 vector mod n is hit for a small case
    n, d = 4, [1, 3]
    hits = set()
    for t1 in range(-4, 5):
        for t2 in range(-4, 5):
            sol = solve_congruence_param(d, n, [t1, t2])
            hits.add(tuple(x % n for x in sol))
    want = {(a, b) for a in range(n) for b in range(n) if (a + 3 * b) % n == 0}
    assert hits == want


def test_matrix_json_roundtrip_big_ints():
    big = 2 ** 80
    m = IntMatrix.from_rows([[big, -1], [0, 1]])
    obj = m.to_obj()
    assert obj["entries"][0][0] == str(big)
    assert IntMatrix.from_obj(obj) == m
