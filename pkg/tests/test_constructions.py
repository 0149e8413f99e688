import pytest
from hypothesis import given, settings, strategies as st

from conftest import models
from ddbar.constructions import (BlowupStep, blow_down, blow_up, delta_blow_up,
                                 delta_projectivize, evaluate_blowup_sequence,
                                 exceptional_divisor, heredity_lift, product_with_cpk,
                                 projectivize)
from ddbar.diamond import DeltaVector, delta, is_ddbar, validate_model
from ddbar.errors import ConstructionError
from ddbar.registry import builtin_model, cpn, point, torus
from ddbar.verify import GRID, admissible_pairs


@pytest.fixture(scope="module")
def iw():
    return builtin_model("iwasawa")


def test_projectivize_rank_one_is_identity():
    m = torus(3)
    assert projectivize(m, 1).same_tables(m)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_projectivize_point_is_cpk(k):
    assert projectivize(point(), k + 1).same_tables(cpn(k))


def test_ruled_surface_over_t1():
    m = projectivize(torus(1), 2)
    assert m.n == 2
    assert m.betti.b == (1, 2, 2, 2, 1)
    assert m.bott_chern.h == ((1, 1, 0), (1, 2, 1), (0, 1, 1))


def test_projectivize_rank_error():
    with pytest.raises(ConstructionError):
        projectivize(torus(1), 0)


def test_delta_projectivize_examples(iw):
    assert delta_projectivize(DeltaVector(2, (0,) * 5), 3, 2).delta == (0,) * 9
    d = delta(iw)
    assert delta_projectivize(d, 1, 3) == d
    two = delta_projectivize(d, 2, 3)
    assert two.delta == tuple(d[k] + d[k - 2] for k in range(9))
    assert two == delta(projectivize(iw, 2))


def test_product_with_cpk(iw):
    assert product_with_cpk(point(), 2).same_tables(cpn(2))
    assert is_ddbar(product_with_cpk(torus(2), 1))
    assert not is_ddbar(product_with_cpk(iw, 1))
    with pytest.raises(ConstructionError):
        product_with_cpk(point(), 0)


def test_blow_up_surface_at_point():
    x = torus(2)
    bl = blow_up(x, point(), 2)
    assert bl.betti.b == (1, 4, 7, 4, 1)
    assert bl.bott_chern[1, 1] == 5
    changed = [pq for pq, v in bl.bott_chern.items() if v != x.bott_chern[pq]]
    assert changed == [(1, 1)]
    assert is_ddbar(bl)


def test_blow_up_t3_along_t1():
    bl = blow_up(torus(3), torus(1), 2)
    assert bl.betti[2] == 16 and bl.betti[3] == 22
    assert bl.bott_chern[1, 1] == 10
    assert is_ddbar(bl)


def test_blow_up_t5_along_iwasawa(iw):
    bl = blow_up(torus(5), iw, 2)
    assert not is_ddbar(bl)
    assert max(delta(bl)) > 0


def test_blow_up_errors():
    with pytest.raises(ConstructionError) as e:
        blow_up(torus(2), torus(1), 1)
    assert e.value.code == "codim-too-small"
    with pytest.raises(ConstructionError) as e:
        blow_up(torus(3), torus(2), 2)
    assert e.value.code == "dimension-mismatch"
    two_points = point().__class__.from_lists("2pt", 0, [2], [[2]])
    with pytest.raises(ConstructionError) as e:
        blow_up(torus(2), two_points, 2)
    assert e.value.code == "center-not-connected"
    assert blow_up(torus(2), two_points, 2, strict=False).betti[2] == 8


def test_delta_blow_up_examples():
    zero3, zero1 = DeltaVector(3, (0,) * 7), DeltaVector(1, (0,) * 3)
    assert delta_blow_up(zero3, zero1, 2).is_zero()
    dy = DeltaVector(1, (0, 2, 0))
    assert delta_blow_up(zero3, dy, 2).delta == (0, 0, 0, 2, 0, 0, 0)
    with pytest.raises(ConstructionError):
        delta_blow_up(zero3, DeltaVector(2, (0,) * 5), 2)


def test_exceptional_divisor(iw):
    assert exceptional_divisor(point(), 2).same_tables(cpn(1))
    assert exceptional_divisor(torus(1), 2).same_tables(projectivize(torus(1), 2))
    assert not is_ddbar(exceptional_divisor(iw, 2))
    with pytest.raises(ConstructionError):
        exceptional_divisor(point(), 1)


def test_heredity_lift(iw):
    amb, codim = heredity_lift(torus(2), 1, 1)
    assert codim == 2 and is_ddbar(amb) and amb.n == 3
    amb, codim = heredity_lift(cpn(2), 2, 3)
    assert codim == 5 and amb.n == 5
    amb, codim = heredity_lift(iw, 1, 2)
    assert codim == 3 and not is_ddbar(amb)
    with pytest.raises(ConstructionError):
        heredity_lift(torus(2), 0, 1)


@settings(max_examples=200)
@given(models(), st.integers(1, 5))
def test_route_independence_projectivize(m, r):
    assert delta(projectivize(m, r)) == delta_projectivize(delta(m), r, m.n)


@st.composite
def blowup_data(draw):
    n = draw(st.integers(2, 6))
    r = draw(st.integers(2, n))
    return draw(models(min_n=n, max_n=n)), draw(models(min_n=n - r, max_n=n - r)), r


@settings(max_examples=200)
@given(blowup_data())
def test_route_independence_blow_up(data):
    x, y, r = data
    assert delta(blow_up(x, y, r, strict=False)) == delta_blow_up(delta(x), delta(y), r)


@given(blowup_data())
def test_blow_down_inverts_blow_up(data):
    x, y, r = data
    assert blow_down(blow_up(x, y, r, strict=False), y, r).same_tables(x)


@given(models(), st.integers(1, 4))
def test_projectivize_preserves_symmetries(m, r):
    n = m.n
    m = m.__class__.from_lists("sym", n, [m.betti[min(k, 2 * n - k)] for k in range(2 * n + 1)],
                               [[m.bott_chern[min(p, q), max(p, q)] for q in range(n + 1)]
                                for p in range(n + 1)])
    names = set(validate_model(projectivize(m, r)).names())
    assert not names & {"poincare-duality", "conjugation-symmetry"}


@pytest.mark.parametrize("name", GRID)
@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_projective_bundle_verdict(name, r):
    m = builtin_model(name)
    assert is_ddbar(projectivize(m, r)) == is_ddbar(m)


@pytest.mark.parametrize("x,y,r", list(admissible_pairs()),
                         ids=lambda v: getattr(v, "name", str(v)))
def test_blow_up_verdict(x, y, r):
    bl = blow_up(x, y, r)
    assert validate_model(bl).ok
    assert is_ddbar(bl) == (is_ddbar(x) and is_ddbar(y))
    assert is_ddbar(bl) == (is_ddbar(x) and is_ddbar(exceptional_divisor(y, r)))


def test_sequence_round_trip():
    t1 = torus(1)
    out = evaluate_blowup_sequence(torus(3), [BlowupStep("up", t1, 2), BlowupStep("down", t1, 2)])
    assert out[-1].model == torus(3)


def test_sequence_point_center():
    out = evaluate_blowup_sequence(torus(3), [BlowupStep("up", point(), 3)])
    assert out[0].verdict


def test_sequence_iwasawa(iw):
    out = evaluate_blowup_sequence(torus(5), [BlowupStep("up", iw, 2), BlowupStep("down", iw, 2)])
    assert [s.verdict for s in out] == [False, True]
    assert out[-1].model == torus(5)


def test_sequence_unmatched_down():
    with pytest.raises(ConstructionError) as e:
        evaluate_blowup_sequence(torus(3), [BlowupStep("down", torus(1), 2)])
    assert e.value.code == "not-invertible"
    # arithmetic subtraction is possible here and is accepted on request
    out = evaluate_blowup_sequence(torus(3), [BlowupStep("down", torus(1), 2)],
                                   allow_unrecorded=True)
    assert out[0].model.betti[2] == 14


def test_sequence_negative_subtraction():
    with pytest.raises(ConstructionError) as e:
        evaluate_blowup_sequence(cpn(2), [BlowupStep("down", point(), 2)] * 2,
                                 allow_unrecorded=True)
    assert e.value.code == "not-invertible"


def test_sequence_constant_verdict_with_ddbar_centers():
    steps = [BlowupStep("up", point(), 3), BlowupStep("up", torus(1), 2),
             BlowupStep("down", torus(1), 2), BlowupStep("down", point(), 3)]
    out = evaluate_blowup_sequence(torus(3), steps)
    assert all(s.verdict for s in out)
    assert out[-1].model == torus(3)


def test_blowup_step_validation():
    with pytest.raises(ConstructionError):
        BlowupStep("sideways", point(), 2)
    with pytest.raises(ConstructionError):
        BlowupStep("up", point(), 1)
