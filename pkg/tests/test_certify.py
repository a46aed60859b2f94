from decimal import Decimal
from fractions import Fraction

import pytest

from pgap.certify import (
    GOLDEN,
    check_classical_inequalities,
    euler_product_partial,
    golden_reports,
    pair_tail_sum,
    primorial_log_bounds,
    ratio_inequality_holds,
    sqfree_parity_sum,
    squarefree_flags,
    telescoping_tail,
    verify_final_bound,
    verify_red_count_chain,
    verify_tower_bound,
)
from pgap.errors import DomainError

# 30-digit values from mpmath at 40 significant digits (frozen).
MPMATH = {
    "euler_product": "0.66017573898997677921187171029",
    "pair_sum": "0.727089417741948478674406633181",
    "sqfree_even": "0.303923082993007583070985067357",
    "sqfree_odd": "0.607886600147474384755424275076",
    "log10_W": "17.7887972765829400960449507286",
    "exponent": "1.83383491155387688603206674426e76",
}


def near(iv, text, tol):
    v = Fraction(Decimal(text))
    return iv.lo - tol <= v <= iv.hi + tol


def test_euler_product():
    assert near(euler_product_partial(5000, 128), MPMATH["euler_product"], Fraction(1, 10**28))
    assert euler_product_partial(5000, 128).width <= Fraction(1, 10**12)
    assert euler_product_partial(4).lo == euler_product_partial(4).hi == Fraction(3, 4)
    assert euler_product_partial(6).lo == Fraction(45, 64)
    with pytest.raises(DomainError):
        euler_product_partial(2)


def test_pair_tail_sum():
    assert near(pair_tail_sum(20000), MPMATH["pair_sum"], Fraction(1, 10**28))
    zero = pair_tail_sum(2)
    assert zero.lo == zero.hi == 0
    assert pair_tail_sum(3).contains(Fraction(1, 2))
    with pytest.raises(DomainError):
        pair_tail_sum(1)


def test_sqfree_sums():
    assert near(sqfree_parity_sum(5000, "even"), MPMATH["sqfree_even"], Fraction(1, 10**28))
    assert near(sqfree_parity_sum(5000, "odd"), MPMATH["sqfree_odd"], Fraction(1, 10**28))
    assert sqfree_parity_sum(2, "even").contains(Fraction(1, 4))
    assert sqfree_parity_sum(2, "odd").contains(Fraction(1, 2) + Fraction(1, 18))


def test_squarefree_flags():
    flags = squarefree_flags(30)
    brute = [n >= 1 and all(n % (d * d) for d in range(2, 6)) for n in range(31)]
    assert [bool(f) for f in flags[1:31]] == brute[1:31]


def test_primorial_log_bounds():
    log10_W, exponent = primorial_log_bounds()
    assert near(log10_W, MPMATH["log10_W"], Fraction(1, 10**25))
    assert near(exponent, MPMATH["exponent"], Fraction(10**50))
    assert exponent.width <= exponent.lo * Fraction(1, 10**10)


def test_golden_reports():
    reports = golden_reports()
    assert [r.name for r in reports] == ["euler_product", "pair_sum", "sqfree_even", "sqfree_odd", "primorial_power"]
    assert all(r.verified for r in reports)
    js = reports[0].to_json()
    assert set(js) == {"name", "claimed", "verified", "lo", "hi"}
    assert Decimal(js["lo"]) <= Decimal(GOLDEN["euler_product"]) + Decimal("1e-12")


def test_red_count_chain():
    reports = verify_red_count_chain()
    assert len(reports) == 8
    assert [r.name[0] for r in reports] == list("abcdefgh")
    assert all(r.verified for r in reports), [r.name for r in reports if not r.verified]


def test_chain_rejects_false_claim():
    # 5.2817 * 1.2583 = 6.64596311..., so a tighter ceiling must fail
    from pgap.certify import report_less
    from pgap.interval import interval

    assert not report_less("x", "", interval("5.2817") * interval("1.2583"), interval("6.6459")).verified
    assert not report_less("tie", "", interval(1), interval(1)).verified


def test_final_bound():
    assert all(r.verified for r in verify_final_bound())


def test_telescoping_tail():
    assert telescoping_tail(20002) == Fraction(1, 10000)
    # the partial sum over 10 <= n < 2000 leaves exactly the tail from 2000
    partial = sum(Fraction(2, n - 2) - Fraction(2, n - 1) for n in range(10, 2000))
    assert telescoping_tail(10) - partial == telescoping_tail(2000)
    with pytest.raises(DomainError):
        telescoping_tail(2)


@pytest.mark.parametrize("m", [3, 4, 10, 57, 200])
def test_tower_bound(m):
    assert verify_tower_bound(m).verified


def test_tower_bound_domain():
    with pytest.raises(DomainError):
        verify_tower_bound(2)


@pytest.mark.parametrize("p", [3, 5, 7, 97, 7919, 104729])
def test_ratio_inequality(p):
    assert ratio_inequality_holds(p)


def test_classical_small():
    reports = check_classical_inequalities(10**5, 10**4)
    assert [r.name for r in reports] == ["rosser_schoenfeld_pi", "rosser_schoenfeld_theta", "dusart_pk"]
    assert all(r.verified for r in reports)


def test_classical_domain():
    with pytest.raises(DomainError):
        check_classical_inequalities(10, 100)
