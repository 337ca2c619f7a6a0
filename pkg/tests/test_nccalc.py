import numpy as np
import pytest
from hypothesis import given, settings

from conftest import seeds
from nckahler import nccalc
from nckahler.errors import DimensionError, ParameterError
from nckahler.fock import FockSpace, born_jordan, build_coordinate_operators, polynomial
from nckahler.geometry import HOMOGENEOUS
from nckahler.kahler import bracket, eval_f
from nckahler.sampling import random_hermitian, random_operator, random_state


@pytest.fixture
def sp():
    return FockSpace(2, 4, hbar=0.8)


def _faithful(m, sp, degree):
    return m[:, sp.faithful_mask(degree)]


def test_partial_examples(sp):
    c = build_coordinate_operators(sp)
    for i in range(2):
        for j in range(2):
            d = nccalc.nc_partial(c.alpha[j], "alpha", i).matrix
            assert np.max(np.abs(_faithful(d - (i == j) * np.eye(sp.dim), sp, 2))) < 1e-12
            d = nccalc.nc_partial(c.alphabar[j], "alphabar", i).matrix
            assert np.max(np.abs(_faithful(d - (i == j) * np.eye(sp.dim), sp, 2))) < 1e-12
            assert np.max(np.abs(nccalc.nc_partial(c.alpha[j], "alphabar", i).matrix)) < 1e-12
    x2 = c.x[0] @ c.x[0]
    assert np.max(np.abs(_faithful(nccalc.nc_partial(x2, "x").matrix - 2 * c.x[0].matrix, sp, 3))) < 1e-12
    assert np.max(np.abs(nccalc.nc_partial(c.x[0], "p").matrix)) < 1e-12
    assert np.max(np.abs(_faithful(nccalc.nc_partial(c.p[1], "p", 1).matrix - np.eye(sp.dim), sp, 2))) < 1e-12


def test_partial_validation(sp):
    c = build_coordinate_operators(sp)
    with pytest.raises(ParameterError):
        nccalc.nc_partial(c.x[0], "q")
    with pytest.raises(ParameterError):
        nccalc.nc_partial(c.x[0], "x", 2)
    with pytest.raises(ParameterError):
        nccalc.NCDerivation("y")
    assert np.array_equal(nccalc.NCDerivation("p", 1)(c.x[1]).matrix, nccalc.nc_partial(c.x[1], "p", 1).matrix)


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_leibniz_and_commuting_derivations(seed):
    rng = np.random.default_rng(seed)
    sp = FockSpace(1, 6)
    b, g = random_operator(sp, rng), random_operator(sp, rng)
    for wrt in nccalc.WRT:
        lhs = nccalc.nc_partial(b @ g, wrt).matrix
        rhs = nccalc.nc_partial(b, wrt).matrix @ g.matrix + b.matrix @ nccalc.nc_partial(g, wrt).matrix
        assert np.max(np.abs(lhs - rhs)) <= 1e-12 * max(1.0, np.max(np.abs(rhs)))
    # polynomial of degree 2; two derivations keep it faithful below total occupation n_cut - 4
    poly = polynomial(sp, {"xp": 0.3, "px": -1.1, "xx": 0.7, "pp": 2.0})
    for a in nccalc.WRT:
        for b_ in nccalc.WRT:
            ab = nccalc.nc_partial(nccalc.nc_partial(poly, b_), a).matrix
            ba = nccalc.nc_partial(nccalc.nc_partial(poly, a), b_).matrix
            assert np.max(np.abs(_faithful(ab - ba, sp, 4))) < 1e-12


def test_poisson_examples():
    sp = FockSpace(1, 8)
    c = build_coordinate_operators(sp)
    assert np.max(np.abs(_faithful(nccalc.nc_poisson(c.x[0], c.p[0]).matrix - np.eye(sp.dim), sp, 2))) < 1e-12
    lhs = nccalc.nc_poisson(c.x[0] @ c.x[0], c.p[0] @ c.p[0]).matrix
    xp = c.x[0].matrix @ c.p[0].matrix
    assert np.max(np.abs(_faithful(lhs - 2 * (xp + c.p[0].matrix @ c.x[0].matrix), sp, 4))) < 1e-12
    assert np.max(np.abs(_faithful(lhs - 4 * born_jordan(sp, 1, 1).matrix, sp, 4))) < 1e-12
    with pytest.raises(DimensionError):
        nccalc.nc_poisson(c.x[0], build_coordinate_operators(FockSpace(1, 3)).x[0])


@pytest.mark.parametrize("hbar", [0.5, 1.0])
def test_born_jordan_bracket_identity(hbar):
    sp = FockSpace(1, 8, hbar=hbar)
    c = build_coordinate_operators(sp)
    for m in range(1, 5):
        for n in range(1, 5):
            if m + n > sp.n_cut:
                continue
            lhs = nccalc.nc_poisson(c.x[0] ** m, c.p[0] ** n).matrix
            rhs = m * n * born_jordan(sp, m - 1, n - 1).matrix
            diff = _faithful(lhs - rhs, sp, m + n)
            assert np.max(np.abs(diff)) <= 1e-12 * max(1.0, np.max(np.abs(_faithful(rhs, sp, m + n))))


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_poisson_properties(seed):
    rng = np.random.default_rng(seed)
    sp = FockSpace(1, 5)
    a, b, g = (random_operator(sp, rng) for _ in range(3))
    P = nccalc.nc_poisson
    assert np.max(np.abs((P(a, b) + P(b, a)).matrix)) < 1e-12
    cyc = P(a, P(b, g)) + P(b, P(g, a)) + P(g, P(a, b))
    assert np.max(np.abs(cyc.matrix)) < 1e-11
    c = build_coordinate_operators(sp)
    mask = sp.faithful_mask(1)
    # Hamilton form: {x, beta} = d_p beta and {p, beta} = -d_x beta
    assert np.max(np.abs((P(c.x[0], a) - nccalc.nc_partial(a, "p")).matrix)) < 1e-12
    assert np.max(np.abs((P(c.p[0], a) + nccalc.nc_partial(a, "x")).matrix[:, mask])) < 1e-12
    assert np.max(np.abs((nccalc.hamiltonian_derivation(a, b) - P(b, a)).matrix)) < 1e-12


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_operator_bracket_matches_function_bracket(seed):
    rng = np.random.default_rng(seed)
    sp = FockSpace(1, 5, hbar=1.7)
    b, g = random_hermitian(sp, rng), random_hermitian(sp, rng)
    st = random_state(sp, rng)
    assert eval_f(nccalc.nc_poisson(b, g), st).value == pytest.approx(
        bracket(b, g, st, "poisson", HOMOGENEOUS), abs=1e-10)


def test_omega_components():
    assert nccalc.omega_components("cov", 1, 1, "01") == 0.5j
    assert nccalc.omega_components("cov", 2, 1, "01", d=2) == 0
    assert nccalc.omega_components("contra", 1, 1, "01") == -2j
    assert nccalc.omega_components("contra", 1, 1, "10") == 2j
    assert nccalc.omega_components("cov", 1, 1, "00") == 0
    assert nccalc.omega_components("contra", 2, 2, "11") == 0
    for args in (("cov", 0, 1, "01"), ("cov", 3, 1, "01", 2), ("tensor", 1, 1, "01"), ("cov", 1, 1, "02")):
        with pytest.raises(ParameterError):
            nccalc.omega_components(*args)


def test_omega_matches_operator_pairings(sp):
    c = build_coordinate_operators(sp)
    mask = sp.faithful_mask(2)
    for i in range(2):
        for j in range(2):
            # d alpha^i (X_{alphabar^j}) = X_{alphabar^j} alpha^i = -(1/i hbar)[alphabar^j, alpha^i]
            pairing = nccalc.hamiltonian_derivation(c.alphabar[j], c.alpha[i]).matrix
            target = nccalc.omega_components("contra", i + 1, j + 1, "01", d=2) * np.eye(sp.dim)
            assert np.max(np.abs((pairing - target)[:, mask])) < 1e-12
            # the contravariant components are the brackets of the coordinates
            br = nccalc.nc_poisson(c.alpha[i], c.alphabar[j]).matrix
            assert np.max(np.abs((br - target)[:, mask])) < 1e-12
            assert np.max(np.abs(nccalc.nc_poisson(c.alpha[i], c.alpha[j]).matrix)) < 1e-12
    # covariant block is the inverse of the contravariant one
    assert nccalc.omega_components("cov", 1, 1, "01") * nccalc.omega_components("contra", 1, 1, "10") == pytest.approx(-1)


def test_classical_form_counterexample():
    sp = FockSpace(2, 6, hbar=0.7)
    c = build_coordinate_operators(sp)
    lin = nccalc.classical_form_counterexample(c.x[1], c.p[1])
    assert np.max(np.abs(lin.deviation.matrix[:, sp.faithful_mask(2)])) < 1e-12
    r = nccalc.classical_form_counterexample(c.x[0] @ c.x[0], c.p[0] @ c.p[0])
    mask = sp.faithful_mask(4)
    assert np.max(np.abs((r.deviation.matrix - (-2j * sp.hbar) * np.eye(sp.dim))[:, mask])) < 1e-12
    classical = 4 * c.x[0].matrix @ c.p[0].matrix
    assert np.max(np.abs((r.classical_form.matrix - classical)[:, mask])) < 1e-12


def test_classical_form_fails_for_random_quartics():
    rng = np.random.default_rng(7)
    sp = FockSpace(1, 10)
    letters = ["xxxx", "xxpp", "xpxp", "pppp", "xxxp", "ppxx"]
    for _ in range(10):
        b = polynomial(sp, {w: float(rng.normal()) for w in letters})
        g = polynomial(sp, {w: float(rng.normal()) for w in letters})
        r = nccalc.classical_form_counterexample(b, g)
        assert np.max(np.abs(r.deviation.matrix[:, sp.faithful_mask(8)])) > 1e-3
