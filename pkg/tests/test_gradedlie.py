import random
from fractions import Fraction

import pytest

from derlie.gradedlie import (
    GeneratorSet,
    GradedLieError,
    LieElement,
    Presentation,
    basis_element,
    bracket,
    center_up_to,
    format_element,
    ideal_basis,
    koszul,
    lyndon_basis,
    parse_element,
    pbw_dim_oracle,
    quotient_dims,
)


def alg_even(n=2, names=None):
    names = names or [f"x{i}" for i in range(n)]
    return GeneratorSet(names, 2)  # d = 3


def alg_odd(n=2, names=None):
    names = names or [f"x{i}" for i in range(n)]
    return GeneratorSet(names, 3)  # d = 4


def witt(n, k):
    # classical Witt number via Moebius
    from sympy import mobius  # not available; do it by hand

def moebius(n):
    if n == 1:
        return 1
    m, p, cnt = n, 2, 0
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            cnt += 1
        p += 1
    if m > 1:
        cnt += 1
    return -1 if cnt % 2 else 1


def witt_number(n, k):
    s = 0
    for e in range(1, k + 1):
        if k % e == 0:
            s += moebius(e) * n ** (k // e)
    return s // k


def test_lyndon_counts_even():
    a = alg_even(2)
    assert len(lyndon_basis(a, 2)) == 1          # (2^2-2)/2
    assert [len(lyndon_basis(a, k)) for k in range(1, 7)] == [2, 1, 2, 3, 6, 9]
    a4 = alg_even(4)
    assert len(lyndon_basis(a4, 3)) == 20        # (4^3-4)/3


def test_lyndon_counts_odd():
    a = alg_odd(2)
    assert len(lyndon_basis(a, 1)) == 2
    assert len(lyndon_basis(a, 2)) == 3          # [x,x], [x,y], [y,y]
    assert len(lyndon_basis(a, 3)) == 2


def test_basis_matches_pbw_oracle_both_parities():
    for parity_alg in (alg_even, alg_odd):
        for n in (1, 2, 3, 4):
            a = parity_alg(n)
            for k in range(1, 7):
                assert len(lyndon_basis(a, k)) == pbw_dim_oracle(a, k), (n, k)


def test_even_matches_witt():
    for n in (2, 3, 4, 6):
        a = alg_even(n)
        for k in range(1, 7):
            assert len(lyndon_basis(a, k)) == witt_number(n, k)


def test_bracket_basics():
    a = alg_even(2, ["e", "f"])
    e = LieElement.generator(a, 0)
    f = LieElement.generator(a, 1)
    assert bracket(e, e).is_zero()               # even degree self-bracket
    ef = bracket(e, f)
    assert ef.terms == {("w", (0, 1)): Fraction(1)}
    assert bracket(f, e).terms == {("w", (0, 1)): Fraction(-1)}
    # graded Jacobi for odd generators: [x,[x,x]] = 0
    b = alg_odd(1, ["x"])
    x = LieElement.generator(b, 0)
    xx = bracket(x, x)
    assert xx.terms == {("q", (0,)): Fraction(1)}
    assert bracket(x, xx).is_zero()


def test_mismatched_algebras_rejected():
    a = alg_even(2)
    b = alg_even(3)
    with pytest.raises(GradedLieError):
        bracket(LieElement.generator(a, 0), LieElement.generator(b, 0))


def random_homogeneous(a, rng, k):
    keys = a.basis_keys(k)
    terms = {}
    for key in keys:
        if rng.random() < 0.5:
            c = rng.randint(-3, 3)
            if c:
                terms[key] = Fraction(c)
    return LieElement(a, terms)


@pytest.mark.parametrize("mkalg", [alg_even, alg_odd])
def test_graded_antisymmetry_and_jacobi(mkalg):
    rng = random.Random(5)
    a = mkalg(2)
    for _ in range(100):
        kx, ky, kz = rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 2)
        x = random_homogeneous(a, rng, kx)
        y = random_homogeneous(a, rng, ky)
        z = random_homogeneous(a, rng, kz)
        dx, dy, dz = (k * a.gen_degree for k in (kx, ky, kz))
        # antisymmetry
        lhs = bracket(x, y)
        rhs = Fraction(-koszul(dx, dy)) * bracket(y, x)
        assert lhs.terms == rhs.terms
        # graded Jacobi: [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]]
        j1 = bracket(x, bracket(y, z))
        j2 = bracket(bracket(x, y), z) + Fraction(koszul(dx, dy)) * bracket(y, bracket(x, z))
        assert j1.terms == j2.terms


@pytest.mark.parametrize("mkalg", [alg_even, alg_odd])
def test_normal_form_against_tensor_expansion(mkalg):
    # expansion of the normal form of [x,y] must equal the tensor-algebra bracket
    rng = random.Random(9)
    a = mkalg(2)
    for _ in range(40):
        kx, ky = rng.randint(1, 3), rng.randint(1, 3)
        x = random_homogeneous(a, rng, kx)
        y = random_homogeneous(a, rng, ky)
        br = bracket(x, y)
        tx = a.expand_terms(x.terms)
        ty = a.expand_terms(y.terms)
        s = koszul(kx * a.gen_degree, ky * a.gen_degree)
        expect = {}
        for wa, ca in tx.items():
            for wb, cb in ty.items():
                for w, c in ((wa + wb, ca * cb), (wb + wa, -s * ca * cb)):
                    v = expect.get(w, Fraction(0)) + c
                    if v:
                        expect[w] = v
                    else:
                        expect.pop(w, None)
        assert a.expand_terms(br.terms) == expect


@pytest.mark.parametrize("mkalg", [alg_even, alg_odd])
def test_basis_expansions_independent(mkalg):
    # tensor expansions of basis keys are linearly independent (true basis)
    from derlie.exactla import Echelon
    a = mkalg(2)
    for k in range(1, 6):
        ech = Echelon()
        index = {}
        for key in a.basis_keys(k):
            exp = a.expand_key(key)
            vec = {}
            for w, c in exp.items():
                vec[index.setdefault(w, len(index))] = c
            assert ech.insert(vec), (k, key)


def test_dynkin_specht_wever():
    # left-normed bracketing of the expansion returns k times the element
    for mkalg in (alg_even, alg_odd):
        a = mkalg(2)
        rng = random.Random(3)
        for k in (2, 3, 4, 5):
            for key in a.basis_keys(k)[:6]:
                exp = a.expand_key(key)
                acc = {}
                for w, c in exp.items():
                    for bk, bc in a.dynkin(w).items():
                        v = acc.get(bk, Fraction(0)) + c * bc
                        if v:
                            acc[bk] = v
                        else:
                            acc.pop(bk, None)
                assert acc == {key: Fraction(k)}, (a.gen_degree, k, key)


def test_integer_coefficients_closed_under_bracket():
    rng = random.Random(11)
    for mkalg in (alg_even, alg_odd):
        a = mkalg(2)
        for _ in range(50):
            x = random_homogeneous(a, rng, rng.randint(1, 3))
            y = random_homogeneous(a, rng, rng.randint(1, 3))
            br = bracket(x, y)
            assert all(c.denominator == 1 for c in br.terms.values())


def test_pbw_oracle_examples():
    assert pbw_dim_oracle(alg_even(2), 3) == 2
    assert pbw_dim_oracle(alg_odd(2), 1) == 2
    assert pbw_dim_oracle(alg_odd(2), 2) == 3


def test_ideal_and_quotient_abelianization():
    a = alg_even(2, ["e", "f"])
    ef = parse_element(a, "[e,f]")
    pres = Presentation(a, [ef])
    ib2 = ideal_basis(pres, 2)
    assert len(ib2) == 1
    ib3 = ideal_basis(pres, 3)
    assert len(ib3) == 2  # all of word length 3
    dims = quotient_dims(pres, 5)
    assert dims == [2, 0, 0, 0, 0]


def test_center_abelian_quotient():
    a = alg_even(2, ["e", "f"])
    pres = Presentation(a, [parse_element(a, "[e,f]")])
    c = center_up_to(pres, 3)
    assert len(c[1]) == 2 and len(c[2]) == 0 and len(c[3]) == 0


def test_center_free_algebra_trivial():
    a = alg_even(2, ["e", "f"])
    pres = Presentation(a, [])
    c = center_up_to(pres, 4)
    assert all(len(v) == 0 for v in c.values())


def test_parse_and_format_roundtrip():
    a = alg_even(4, ["e1", "f1", "e2", "f2"])
    e = parse_element(a, "[[e1,f1],e2] - 3/2*[e2,f2]")
    txt = format_element(e)
    again = parse_element(a, txt)
    assert again.terms == e.terms


def test_koszul_hilbert_series_constraint():
    # quotient dims of H_g/(omega) satisfy the UL Hilbert series
    # 1/(1 - 2g t + t^2) in the word-length variable (d odd case).
    a = alg_even(4, ["e1", "f1", "e2", "f2"])
    omega = parse_element(a, "[e1,f1] + [e2,f2]")
    pres = Presentation(a, [omega])
    dims = quotient_dims(pres, 5)
    # UL coefficients by recursion a_m = n a_{m-1} - a_{m-2}
    n = 4
    ul = [1, n]
    for m in range(2, 6):
        ul.append(n * ul[-1] - ul[-2])
    # PBW product (all generators even degree): prod (1-u^k)^{-dims[k-1]}
    from math import comb
    prod = [1] + [0] * 5
    for k in range(1, 6):
        factor = [0] * 6
        for m in range(0, 5 // k + 1):
            factor[m * k] = comb(dims[k - 1] + m - 1, m)
        nxt = [0] * 6
        for i in range(6):
            for j in range(6 - i):
                nxt[i + j] += prod[i] * factor[j]
        prod = nxt
    assert prod == ul
