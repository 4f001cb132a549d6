from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padicpaths.characters import Character
from padicpaths.localfield import FieldConfig, plog, teichmuller
from padicpaths.periods import (
    LOGP,
    NeedsLogP,
    NotGraded,
    Period,
    TorsionDivide,
    branch_log,
    galois_images,
    reduced_log,
)


def L(cfg, name):
    return Period.symbol(cfg, name)


def test_arithmetic_and_repr(cfg):
    x = L(cfg, "eps") * 2 + 3
    assert repr(x) == "3 + 2·λ_eps"
    assert (x - x).is_zero()


def test_division_by_linear_form(cfg):
    y = (Period.scalar(cfg, 2) + L(cfg, "eps") * 3).divide_by_form({"eps": 1})
    assert (y * L(cfg, "eps")).equals(Period.scalar(cfg, 2) + L(cfg, "eps") * 3)


def test_division_by_torsion_form(cfg):
    with pytest.raises(TorsionDivide):
        Period.scalar(cfg, 1).divide_by_form({})


def test_fil_truncate(cfg):
    assert (L(cfg, "eps") ** 2).fil_truncate(2).is_zero()
    assert (Period.scalar(cfg, 5) + L(cfg, "p")).fil_truncate(1).equals(5)
    y = (Period.scalar(cfg, 2) + L(cfg, "eps") * 3).divide_by_form({"eps": 1})
    assert y.fil_truncate(1).equals(Period.scalar(cfg, 2).divide_by_form({"eps": 1}))


def test_fil_truncate_needs_a_single_form(cfg):
    x = Period.scalar(cfg, 1).divide_by_form({"eps": 1}) + Period.scalar(cfg, 1).divide_by_form({"p": 1})
    with pytest.raises(NotGraded):
        x.fil_truncate(0)


def test_galois_images(cfg):
    assert L(cfg, "eps").substitute(galois_images(2, None)).equals(L(cfg, "eps") * 2)
    assert L(cfg, "p").substitute(galois_images(1, {"p": 3})).equals(L(cfg, "p") + L(cfg, "eps") * 3)


def test_json_roundtrip(cfg):
    y = (Period.scalar(cfg, 2) + L(cfg, "eps") * 3).divide_by_form({"eps": 1, "p": 2})
    assert Period.from_json(cfg, y.to_json()).equals(y)


def test_branch_log_kills_teichmuller(cfg, reg):
    assert branch_log(teichmuller(cfg, 2), reg).equals(0)
    assert branch_log(cfg(6), reg).equals(Period.scalar(cfg, plog(cfg(6))))
    assert branch_log(cfg(12), reg).equals(Period.scalar(cfg, plog(cfg(12) / teichmuller(cfg, 2))))


def test_branch_log_needs_logp(cfg, reg):
    with pytest.raises(NeedsLogP):
        branch_log(cfg(5), reg)
    v = branch_log(cfg(5), reg, LOGP)
    assert v.equals(L(cfg, LOGP))


def test_reduced_log_examples(cfg, reg):
    assert reduced_log(Character.gen("eps"), reg).equals(L(cfg, "eps"))
    r = reduced_log(Character.gen("ua"), reg)
    assert r.equals(L(cfg, "ua") - Period.scalar(cfg, plog(cfg(6))) * 4)
    with pytest.raises(NeedsLogP):
        reduced_log(Character.gen("p"), reg)


def test_reduced_log_independent_of_logp_on_units(cfg, reg):
    x = Character.gen("ua", 3)
    assert reduced_log(x, reg).equals(reduced_log(x, reg, LOGP))


small = st.integers(-5, 5)


@given(small, small, small, small)
def test_ring_laws(a, b, c, d):
    cfg = FieldConfig(5, 30)
    x = Period.scalar(cfg, a) + L(cfg, "eps") * b
    y = Period.scalar(cfg, c) + L(cfg, "p") * d
    assert (x * y).equals(y * x)
    assert ((x + y) * x).equals(x * x + y * x)


@given(small.filter(bool), small, small)
def test_divide_then_multiply(k, a, b):
    cfg = FieldConfig(5, 30)
    x = Period.scalar(cfg, a) + L(cfg, "eps") * b
    form = {"eps": k, "p": 1}
    assert (x.divide_by_form(form) * Period.linear(cfg, form)).equals(x)
