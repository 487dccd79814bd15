import pytest
from helpers import element

from grassindex.index import (
    IndexSearchError,
    closed_form_power,
    ideal_slice,
    index_power,
    kernel_generators,
    prop_relation,
    relation_case,
    t_power_in_ideal,
    two_adic,
    verify_prop_relations,
    verify_t_vanishing,
)
from grassindex.wreath import WreathContext, WreathElement, wreath_sw_component


def test_two_adic():
    assert two_adic(12) == (2, 1)
    assert two_adic(1) == (0, 0)
    with pytest.raises(ValueError):
        two_adic(0)


@pytest.mark.parametrize(
    "n,oriented,expected",
    [(6, True, 3), (8, False, 16), (1, True, 2), (2, True, 3), (4, True, 8), (12, False, 8), (3, False, 2)],
)
def test_closed_form(n, oriented, expected):
    assert closed_form_power(n, oriented) == expected


@pytest.mark.parametrize(
    "n,oriented,s", [(1, False, 2), (2, False, 4), (2, True, 3), (3, False, 2), (4, False, 8), (4, True, 8), (6, True, 3)]
)
def test_index_examples(n, oriented, s):
    cert = index_power(n, oriented)
    assert cert.s == s
    assert cert.witness_in and cert.witness_out
    assert not cert.closed_form_only


def test_certificate_soundness_and_principality():
    for n, oriented in [(2, False), (2, True), (4, False), (6, True), (3, False)]:
        cert = index_power(n, oriented)
        ctx = WreathContext(n, oriented)
        gens = kernel_generators(ctx)
        assert t_power_in_ideal(ctx, gens, cert.s)[0]
        assert not t_power_in_ideal(ctx, gens, cert.s - 1)[0]
        # once a power of t is in the ideal, every higher power is too
        assert t_power_in_ideal(ctx, gens, cert.s + 1)[0]
        assert [d["degree"] for d in cert.slice_dims] == list(range(1, cert.s + 1))


def test_oriented_odd_is_closed_form_only():
    cert = index_power(3, True)
    assert cert.closed_form_only and cert.s == 2 and cert.witness_in is None
    assert cert.to_json()["closed_form_only"] is True


def test_invalid_n():
    with pytest.raises(ValueError):
        index_power(0, False)


def test_cap_signals_bug(monkeypatch):
    import grassindex.index as mod

    monkeypatch.setattr(mod, "t_power_in_ideal", lambda ctx, gens, d: (False, 0, 0))
    with pytest.raises(IndexSearchError):
        index_power(2, False)


def test_empty_slice_at_degree_zero():
    ctx = WreathContext(2)
    assert ideal_slice(ctx, kernel_generators(ctx), 0).rows.rows == 0


def test_n2_kernel_generators():
    ctx = WreathContext(2)
    expected = ["Q(w0|w1)", "Q(w0|w2)+t^2+P(w1)", "Q(w1|w2)+P(w1)t", "P(w2)"]
    assert kernel_generators(ctx) == [element(ctx, e) for e in expected]
    sl = ideal_slice(ctx, kernel_generators(ctx), 3)
    assert sl.contains(element(ctx, "t^3 + P(w1)t"))
    assert sl.contains(element(ctx, "t^3 + Q(w1|w2)"))


def test_n2_oriented_generators():
    ctx = WreathContext(2, oriented=True)
    assert kernel_generators(ctx) == [element(ctx, "Q(w0|w2)+t^2"), element(ctx, "P(w2)")]


N4_ORIENTED = [
    "Q(w0|w2)",
    "Q(w0|w3)",
    "t^4+P(w2)+Q(w0|w4)",
    "Q(w2|w3)",
    "P(w2)t^2+P(w3)+Q(w2|w4)",
    "P(w3)t+Q(w3|w4)",
    "P(w4)",
]
N4_UNORIENTED = [
    "Q(w0|w1)",
    "Q(w0|w2)+P(w1)",
    "Q(w0|w3)+Q(w1|w2)+P(w1)t",
    "Q(w0|w4)+Q(w1|w3)+t^4+P(w1)t^2+P(w2)",
    "Q(w1|w4)+Q(w2|w3)+P(w1)t^3",
    "Q(w2|w4)+P(w2)t^2+P(w3)",
    "Q(w3|w4)+P(w3)t",
    "P(w4)",
]


@pytest.mark.parametrize("oriented,listing", [(True, N4_ORIENTED), (False, N4_UNORIENTED)])
def test_n4_generators_and_chain(oriented, listing):
    ctx = WreathContext(4, oriented)
    gens = kernel_generators(ctx)
    assert gens == [element(ctx, e) for e in listing]
    assert ideal_slice(ctx, gens, 6).contains(element(ctx, "t^6+P(w3)+Q(w2|w4)"))
    s7 = ideal_slice(ctx, gens, 7)
    assert s7.contains(element(ctx, "t^7+P(w3)t"))
    assert s7.contains(element(ctx, "t^7+Q(w3|w4)"))
    assert not s7.contains(WreathElement.t(ctx, 7))
    assert ideal_slice(ctx, gens, 8).contains(WreathElement.t(ctx, 8))


def test_relation_cases():
    assert [relation_case(4, k) for k in range(1, 8)] == ["i", "ii", "i", "iii", "i", "iii", "iv"]
    assert [relation_case(2, k) for k in range(1, 4)] == ["i", "iii", "iv"]


def test_prop_relation_n4_k4():
    ctx = WreathContext(4)
    assert prop_relation(ctx, 4) == element(ctx, "P(w2)+t^4+Q(w0|w4)+Q(w1|w3)")
    with pytest.raises(ValueError):
        prop_relation(ctx, 8)


@pytest.mark.parametrize("n", [2, 4, 6])
@pytest.mark.parametrize("oriented", [False, True])
def test_prop_relations(n, oriented):
    a, _ = two_adic(n)
    for k in range(1, 2 ** (a + 1)):
        assert verify_prop_relations(n, oriented, k)


def test_prop_relation_check_can_fail():
    """Dropping the t-power from a case (iii) relation must break membership."""
    ctx = WreathContext(4)
    broken = prop_relation(ctx, 4) + WreathElement.t(ctx, 4)
    diff = wreath_sw_component(ctx, 4) + broken
    assert not ideal_slice(ctx, kernel_generators(ctx, 3), 4).contains(diff)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_t_vanishing(n):
    assert verify_t_vanishing(n, False) and verify_t_vanishing(n, True)


def test_t_vanishing_is_sharp():
    ctx = WreathContext(4)
    inside, _, _ = t_power_in_ideal(ctx, kernel_generators(ctx, 6), 8)
    assert not inside
