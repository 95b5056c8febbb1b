import random

import numpy as np
import pytest

from ocijac import instances
from ocijac.duality import eta_kernel
from ocijac.family import FamilyInput, nabla_kernel, nl_bound, sigma_component_codim
from ocijac.hodge import PreconditionError
from ocijac.instances import FP
from ocijac.koszul import SubspaceSpec, full_subspace, random_subspace
from ocijac.quotient import dim_B


class TestNabla:
    def test_quartic_two_lines(self):
        cfg = instances.quartic_curve(lines=2, field=FP)
        rep = nabla_kernel(FamilyInput(cfg), 1, 0)
        assert (rep.case, rep.condition_holds, rep.kernel_dim, rep.verdict) == ("2", True, 1, "holds")
        assert rep.ring_level_only

    def test_quartic_surface(self, k3_fp):
        rep = nabla_kernel(FamilyInput(k3_fp), 1, 1)
        assert (rep.case, rep.condition_holds, rep.kernel_dim, rep.verdict) == ("1", True, 0, "holds")
        assert not rep.ring_level_only

    def test_quartic_surface_three_planes(self):
        cfg = instances.quartic_surface(planes=3, field=FP)
        rep = nabla_kernel(FamilyInput(cfg), 2, 0)
        assert (rep.case, rep.kernel_dim, rep.trivial_expected, rep.verdict) == ("2", 1, 1, "holds")

    def test_zero_subspace(self, k3_fp):
        W = random_subspace(k3_fp, dim_B(k3_fp, (1, 0)), 0)
        rep = nabla_kernel(FamilyInput(k3_fp, W), 1, 1)
        assert rep.kernel_dim == rep.source_dim == 19
        assert not rep.condition_holds and rep.verdict == "no_claim"

    def test_edge_not_claimed(self, k3_fp):
        rep = nabla_kernel(FamilyInput(k3_fp), 0, 2)
        assert rep.case == "none" and rep.verdict == "no_claim"

    def test_condition_uses_c_and_cS(self, k3_fp):
        # 4 >= 3 + 1 + c_S + c fails once c_S = 1
        rep = nabla_kernel(FamilyInput(k3_fp, c_S=1), 1, 1)
        assert not rep.condition_holds and rep.verdict == "no_claim"
        assert FamilyInput(k3_fp, random_subspace(k3_fp, 2, 0)).codim == 2
        with pytest.raises(ValueError):
            FamilyInput(k3_fp, c_S=-1)

    def test_preconditions(self, k3_fp):
        with pytest.raises(PreconditionError):
            nabla_kernel(FamilyInput(k3_fp), 1, 0)
        with pytest.raises(PreconditionError):
            nabla_kernel(FamilyInput(k3_fp), 3, -1)


def test_trivial_forms_in_kernel():
    rng = random.Random(8)
    for n, d, e in [(2, (3,), (1, 1)), (2, (4,), (1, 1, 1)), (2, (3,), (1, 2)), (3, (3,), (1, 1))]:
        cfg = instances.random_config(rng, n, d, e)
        rep = nabla_kernel(FamilyInput(cfg), cfg.m, 0)
        assert rep.kernel_dim >= rep.trivial_expected == eta_kernel(cfg).expected


def test_monotone_in_W():
    cfg = instances.quartic_curve(lines=2, field=FP)
    b1 = dim_B(cfg, (1, 0))
    full = full_subspace(cfg)
    rng = np.random.default_rng(3)
    order = rng.permutation(b1)
    previous = None
    for k in range(b1 + 1):
        W = SubspaceSpec("explicit", full.basis[order[:k]], b1)
        kdim = nabla_kernel(FamilyInput(cfg, W), 1, 0).kernel_dim
        if previous is not None:
            assert kdim <= previous
        previous = kdim
    assert previous == 1


class TestBounds:
    @pytest.mark.parametrize("d", range(3, 11))
    def test_plane_curves(self, d):
        for s, e in [(1, [1]), (2, [1, 1]), (3, [1, 2, 2])]:
            assert nl_bound(2, 1, s, [d], e).value == d - 2

    def test_arithmetic(self):
        assert nl_bound(3, 1, 1, [5], [1]).value == 3

    def test_vacuous(self):
        b = nl_bound(3, 1, 1, [5], [1], c_S=10)
        assert b.value == -7 and b.vacuous

    def test_malformed(self):
        with pytest.raises(ValueError):
            nl_bound(2, 1, 1, [3], [])
        with pytest.raises(ValueError):
            nl_bound(2, 0, 0, [], [])
        with pytest.raises(ValueError):
            nl_bound(2, 1, 1, [0], [1])

    @pytest.mark.parametrize("d", range(2, 13))
    def test_sigma(self, d):
        rep = sigma_component_codim(d)
        assert rep.codim_in_S == d + 1 and rep.sigma_codim == d - 2

    def test_sigma_known_values(self):
        assert sigma_component_codim(4).codim_in_S == 5
        assert sigma_component_codim(3).codim_in_S == 4
        with pytest.raises(ValueError):
            sigma_component_codim(1)
