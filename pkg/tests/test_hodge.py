import random
from math import comb

import pytest

from ocijac import instances
from ocijac.hodge import (
    PreconditionError,
    hodge_number,
    hodge_symmetric,
    hodge_table,
    trivial_count,
    trivial_dim,
)
from ocijac.instances import FP
from ocijac.quotient import dim_B


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_plane_curve_genus(d):
    assert hodge_number(instances.plane_curve(d), 1, 0, 0, "prim") == comb(d - 1, 2)


def test_k3_table(k3):
    assert hodge_table(k3, 0).as_rows() == [(2, 0, 1, 1), (1, 1, 19, 20), (0, 2, 1, 1)]
    assert hodge_number(k3, 1, 1, 0, "full") == 20


def test_elliptic_table(elliptic):
    assert hodge_table(elliptic).as_rows() == [(1, 0, 1, 1), (0, 1, 1, 1)]


def test_quintic_h21():
    assert hodge_number(instances.quintic(), 2, 1) == 101


def test_elliptic_line_log_forms(ell_line):
    # g + deg Z - 1
    assert hodge_number(ell_line, 1, 0) == 3


def test_full_equals_prim_when_divisor_present():
    cfg = instances.quartic_surface(planes=1, field=FP)
    for e in hodge_table(cfg).entries:
        assert e.full_dim == e.prim_dim


def test_twisted_table_has_no_correction(k3):
    t = hodge_table(k3, ell=1)
    assert all(e.full_dim == e.prim_dim for e in t.entries)
    assert t.entries[1].prim_dim == dim_B(k3, (1, 1))


def test_preconditions(k3):
    with pytest.raises(PreconditionError):
        hodge_number(k3, 1, 0)
    with pytest.raises(PreconditionError):
        hodge_number(k3, 3, -1)
    with pytest.raises(PreconditionError):
        hodge_number(k3, 1, 1, ell=-1)
    with pytest.raises(ValueError):
        hodge_number(k3, 1, 1, mode="both")
    # two quadrics in P^2: a zero-dimensional X, no H^{p,q} with n >= r + 1
    points = instances.make(2, ["X0^2 - X1^2", "X1^2 - X2^2"])
    with pytest.raises(PreconditionError):
        hodge_table(points)


@pytest.mark.parametrize(
    "s, q, expect", [(3, 1, 2), (0, 1, 0), (1, 1, 0), (1, 4, 0), (4, 2, 3), (2, 2, 0)]
)
def test_trivial_count(s, q, expect):
    assert trivial_count(s, q) == expect


def test_trivial_dim_rejects_nonpositive(elliptic):
    with pytest.raises(PreconditionError):
        trivial_dim(elliptic, 0)


@pytest.mark.parametrize(
    "n, d",
    [(2, 3), (2, 5), (3, 3), (3, 4), (3, 5), (4, 3), (4, 4), (3, (2, 2)), (4, (2, 2)), (4, (2, 3))],
)
def test_hodge_symmetry_random_s0(n, d):
    d = (d,) if isinstance(d, int) else d
    cfg = instances.random_config(random.Random(n * 10 + sum(d)), n, d)
    assert hodge_symmetric(cfg)


def test_trivial_forms_fit():
    rng = random.Random(7)
    for n, d, e in [(2, (3,), (1, 1)), (2, (4,), (1, 1, 1)), (3, (2,), (1, 1, 1)), (3, (3,), (1, 2))]:
        cfg = instances.random_config(rng, n, d, e)
        deg = cfg.d_total + cfg.e_total - n - 1
        assert trivial_dim(cfg, cfg.m) <= dim_B(cfg, (0, deg))
