import pytest

from mustafin.coeffs import DomainError, GF
from mustafin.degeneration import SubvarietyInput, ambient_universe
from mustafin.polyring import MPoly
from mustafin.syzygy import (
    SyzygyDatum,
    admissibility_certificate,
    curve_cover_check,
    sigma_membership,
    upsilon,
)
from mustafin.varieties import LatticeConfig, random_config

F = GF(32003)


def identity_config(d, n, n_vec):
    ident = tuple(
        tuple(tuple((F.one,) if i == j else () for j in range(d)) for i in range(d))
        for _ in range(n + 1)
    )
    return LatticeConfig(d, n, n_vec, F, ident)


def grid_var(cfg, name):
    return MPoly.var(cfg.universe(), F, name)


def test_upsilon_identity_examples():
    cfg = identity_config(2, 1, (1,))
    # x[1][1] maps to y1 (pi powers cancel)
    h, e = upsilon(grid_var(cfg, "x[1][1]"), 0, cfg)
    assert h.text() == "y[1]" and e == 0
    # x[2][1] maps to pi^{-1} y2
    h2, e2 = upsilon(grid_var(cfg, "x[2][1]"), 0, cfg)
    assert h2.text() == "y[2]" and e2 == -1
    # degree bookkeeping: output degree equals the sum of block degrees
    cfg3 = random_config(3, 2, (1, 2), F, seed=2)
    uni = cfg3.universe()
    Fw = MPoly.var(uni, F, "x[3][1]") * MPoly.var(uni, F, "x[3][2]")
    h3, _e3 = upsilon(Fw, 0, cfg3)
    assert h3.total_degree() == 2


def test_upsilon_profile_errors():
    cfg = identity_config(2, 1, (1,))
    with pytest.raises(DomainError):
        upsilon(grid_var(cfg, "x[1][0]"), 0, cfg)  # block-0 degree not 0
    mixed = grid_var(cfg, "x[1][1]") + grid_var(cfg, "x[1][0]")
    with pytest.raises(DomainError):
        upsilon(mixed, 0, cfg)  # not multihomogeneous


def test_sigma_membership_examples():
    cfg = identity_config(2, 1, (1,))
    uni = cfg.universe()
    x11 = MPoly.var(uni, F, "x[1][1]")
    x21 = MPoly.var(uni, F, "x[2][1]")
    pi = MPoly.var(uni, F, "pi")
    assert not sigma_membership(x11, 0, 2, 1)
    assert sigma_membership(x21, 0, 2, 1)
    # pi content is stripped first
    assert sigma_membership(pi * x21, 0, 2, 1)
    assert not sigma_membership(MPoly.zero(uni, F), 0, 2, 1)
    # invariance under unit and pi-power scaling
    assert sigma_membership((pi * pi) * x21.scale(F.from_int(17)), 0, 2, 1)


def test_admissibility_certificate():
    # last-row monomial witnesses are always admissible
    cfg = random_config(3, 2, (1, 2), F, seed=3)
    uni = cfg.universe()

    def xv(i, j):
        return MPoly.var(uni, F, f"x[{i}][{j}]")

    # rho = 2, degrees (2, 1, 1): witness i has block-j degree rho - d_j for
    # j != i (so blocks of full degree rho are simply absent) and 0 in block i
    rho, degrees = 2, (2, 1, 1)
    witnesses = (
        xv(3, 1) * xv(3, 2),  # blocks 1, 2 with degree 1 each
        xv(3, 2),             # block 0 contributes degree 0, block 2 degree 1
        xv(3, 1),
    )
    datum = SyzygyDatum(rho, degrees, witnesses)
    admissible, sections = admissibility_certificate(datum, cfg)
    assert admissible
    for (h, _e), d_i in zip(sections, degrees):
        assert h.total_degree() == d_i
    # a witness landing in the forbidden ideal kills admissibility
    bad = SyzygyDatum(
        rho,
        degrees,
        (xv(1, 1) * xv(3, 2), witnesses[1], witnesses[2]),
    )
    admissible2, _ = admissibility_certificate(bad, cfg)
    assert not admissible2
    # degree constraint must hold
    with pytest.raises(DomainError):
        admissibility_certificate(SyzygyDatum(2, (2, 2, 1), witnesses), cfg)


def test_sigma_invariant_under_pi_scaling():
    cfg = random_config(3, 2, (1, 2), F, seed=5)
    uni = cfg.universe()
    pi = MPoly.var(uni, F, "pi")
    w = MPoly.var(uni, F, "x[3][1]") * MPoly.var(uni, F, "x[3][2]")
    assert sigma_membership(w, 0, 3, 2) == sigma_membership(pi * w, 0, 3, 2)
    assert sigma_membership(w.scale(F.from_int(5)), 0, 3, 2)


def test_curve_cover_check_examples():
    amb = ambient_universe(2)
    y1 = MPoly.var(amb, F, "y[1]")
    y2 = MPoly.var(amb, F, "y[2]")
    X = SubvarietyInput((y1,), 0, 1)
    # V(y1) in P^1 is the point (0:1); y2 does not vanish there
    assert curve_cover_check(X, [y2])
    # a tuple vanishing on X fails
    assert not curve_cover_check(X, [y1])
    # several sections: enough that their common zero misses X
    amb3 = ambient_universe(3)
    z1 = MPoly.var(amb3, F, "y[1]")
    z2 = MPoly.var(amb3, F, "y[2]")
    z3 = MPoly.var(amb3, F, "y[3]")
    Xline = SubvarietyInput((z1,), 1, 1)
    assert curve_cover_check(Xline, [z2, z3])
    assert not curve_cover_check(Xline, [z2 * z3])  # hits (0:0:1) and (0:1:0)


def test_admissible_sections_nonzero_on_primary_components():
    # at d=3 the membership test is exactly: the normalized reduction keeps
    # a term avoiding the first two rows outside block i, i.e. it stays
    # nonzero on the matching primary fibre component
    cfg = random_config(3, 2, (1, 2), F, seed=7)
    uni = cfg.universe()

    def xv(i, j):
        return MPoly.var(uni, F, f"x[{i}][{j}]")

    witness = xv(3, 1) * xv(3, 2)
    assert sigma_membership(witness, 0, 3, 2)
    from mustafin.varieties import fibre_universe
    from mustafin.groebner import normal_form
    from mustafin.polyring import DegRevLex, Ideal

    # reduction mod the 0-th primary component ideal stays nonzero
    uni_k = fibre_universe(3, 2)
    comp0 = Ideal(
        [MPoly.var(uni_k, F, "x[1][0]")]
        + [MPoly.var(uni_k, F, f"x[{r}][{j}]") for j in (1, 2) for r in (1, 2)],
        uni_k,
        F,
    )
    reduced = MPoly.var(uni_k, F, "x[3][1]") * MPoly.var(uni_k, F, "x[3][2]")
    assert normal_form(reduced, list(comp0.generators), DegRevLex())
