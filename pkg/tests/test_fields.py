import numpy as np
import pytest
from hypothesis import given, settings

from conftest import seeds, two_level
from nckahler import fields
from nckahler.errors import ChartError, DimensionError, ParameterError
from nckahler.fock import FockSpace, Operator, build_coordinate_operators
from nckahler.geometry import AFFINE, HILBERT, HOMOGENEOUS
from nckahler.kahler import bracket, eval_H, evaluate
from nckahler.sampling import random_hermitian, random_operator, random_state


def test_schrodinger_field():
    sp = FockSpace(2, 2, hbar=0.7)
    rng = np.random.default_rng(0)
    H = random_hermitian(sp, rng)
    st = random_state(sp, rng)
    X = fields.hamiltonian_field(H, st, HILBERT)
    flow = H.matrix @ st.z / (1j * sp.hbar)
    assert np.max(np.abs(X.comp_holo - flow)) < 1e-12
    assert np.max(np.abs(X.comp_anti - flow.conj())) < 1e-12


def test_norm_generator_rotates_phase(rng):
    sp = FockSpace(1, 4, hbar=1.5)
    st = random_state(sp, rng)
    r2 = Operator(sp, 2 * sp.hbar * np.eye(sp.dim))
    X = fields.hamiltonian_field(r2, st, HILBERT)
    ph = fields.phase_vector(st)
    assert np.max(np.abs(X.comp_holo + 2 * ph.comp_holo)) < 1e-12
    assert fields.hamiltonian_field(r2, st, HOMOGENEOUS).max_abs() < 1e-12


def test_identity_field_vanishes_on_projective_space(rng):
    sp = FockSpace(1, 4)
    st = random_state(sp, rng)
    ident = build_coordinate_operators(sp).I
    for pic in (HOMOGENEOUS, AFFINE):
        for kind in fields.KINDS:
            assert fields.hamiltonian_field(ident, st, pic, kind).max_abs() < 1e-14


def test_explicit_fields_at_vacuum():
    sp = FockSpace(1, 4)
    vac = sp.basis_state(0)
    cov = fields.explicit_alpha_fields(0, vac, HILBERT, "covector")
    # no upper neighbour is occupied, so every antiholomorphic component vanishes
    assert np.max(np.abs(cov.comp_anti)) == 0
    assert cov.comp_holo[1] == pytest.approx(1j * np.sqrt(1 / 2))


def test_explicit_fields_two_level():
    sp = FockSpace(1, 4)
    st = two_level(sp)
    cov = fields.explicit_alpha_fields(0, st, HILBERT, "covector")
    assert cov.comp_holo[1] == pytest.approx(1j * np.sqrt(1 / 2) * np.conj(st.z[0]))
    gen = fields.hamiltonian_field(build_coordinate_operators(sp).alpha[0], st, HILBERT, "covector")
    assert (gen - cov).max_abs() < 1e-15


@pytest.mark.parametrize("picture", fields.PICTURES)
@pytest.mark.parametrize("kind", fields.KINDS)
@pytest.mark.parametrize("d,n_cut", [(1, 6), (2, 3), (3, 2)])
def test_explicit_matches_generic(picture, kind, d, n_cut):
    rng = np.random.default_rng(d * 100 + n_cut)
    sp = FockSpace(d, n_cut, hbar=0.8)
    c = build_coordinate_operators(sp)
    st = random_state(sp, rng, support_cut=sp.n_cut - 1, vacuum_floor=0.2)
    for j in range(d):
        for conj, op in ((False, c.alpha[j]), (True, c.alphabar[j])):
            gen = fields.hamiltonian_field(op, st, picture, kind)
            exp = fields.explicit_alpha_fields(j, st, picture, kind, conj)
            assert (gen - exp).max_abs() <= 1e-12 * max(1.0, gen.max_abs())


def test_conjugate_chain(rng):
    sp = FockSpace(2, 2)
    st = random_state(sp, rng)
    for pic in fields.PICTURES:
        a = fields.explicit_alpha_fields(1, st, pic, "vector")
        ab = fields.explicit_alpha_fields(1, st, pic, "vector", conjugate=True)
        assert np.array_equal(ab.comp_holo, a.comp_anti.conj())
        assert np.array_equal(ab.comp_anti, a.comp_holo.conj())


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_no_radial_component_and_pairing(seed):
    rng = np.random.default_rng(seed)
    sp = FockSpace(1, 5, hbar=0.6)
    b, g = random_hermitian(sp, rng), random_hermitian(sp, rng)
    st = random_state(sp, rng)
    dr = fields.radial_covector(st)
    for pic in (HILBERT, HOMOGENEOUS):
        X = fields.hamiltonian_field(b, st, pic)
        assert abs(fields.pair(dr, X)) < 1e-12 * max(1.0, X.max_abs())
        F = evaluate(g, st, pic)
        assert fields.pair(fields.differential(F, st), X) == pytest.approx(
            bracket(g, b, st, "poisson", pic), abs=1e-10)
    Xh = fields.hamiltonian_field(b, st, HOMOGENEOUS)
    theta_dual = fields.TangentData(st.z.conj(), st.z, "covector", HOMOGENEOUS, st)
    assert abs(fields.pair(theta_dual, Xh)) < 1e-12
    hc = fields.hamiltonian_field(b, st, HILBERT, "covector")
    assert np.max(np.abs(hc.comp_anti - hc.comp_holo.conj())) < 1e-12


def test_differential_pairs_with_H(rng):
    sp = FockSpace(1, 4)
    b, g = random_hermitian(sp, rng), random_hermitian(sp, rng)
    st = random_state(sp, rng)
    dH = fields.differential(eval_H(g, st), st)
    assert fields.pair(dH, fields.hamiltonian_field(b, st, HILBERT)) == pytest.approx(
        bracket(g, b, st, "poisson", HILBERT), abs=1e-10)


def test_pair_validation(rng):
    sp = FockSpace(1, 3)
    st = random_state(sp, rng)
    X = fields.hamiltonian_field(random_hermitian(sp, rng), st, HILBERT)
    with pytest.raises(ParameterError):
        fields.pair(X, X)
    Y = fields.hamiltonian_field(random_hermitian(sp, rng), st, AFFINE, "covector")
    with pytest.raises(DimensionError):
        fields.pair(Y, X)
    with pytest.raises(ParameterError):
        fields.hamiltonian_field(random_hermitian(sp, rng), st, "conformal")


def test_decomposition_of_norm_generator(rng):
    sp = FockSpace(1, 4, hbar=0.5)
    st = random_state(sp, rng)
    x = fields.xhf_decomposition(Operator(sp, 2 * sp.hbar * np.eye(sp.dim)), st)
    assert x.X_horizontal.max_abs() < 1e-12
    assert (x.lhs - x.r2_term).max_abs() < 1e-12


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_decomposition_and_theta(seed):
    rng = np.random.default_rng(seed)
    sp = FockSpace(2, 2, hbar=float(rng.uniform(0.3, 2)))
    b = random_hermitian(sp, rng)
    st = random_state(sp, rng, norm2=float(rng.uniform(0.5, 4)), vacuum_floor=0.2)
    x = fields.xhf_decomposition(b, st)
    assert x.residual <= 1e-10
    assert (x.r2_term - x.theta_term).max_abs() <= 1e-10
    assert x.theta_component == pytest.approx(x.theta_closed_z, abs=1e-10)
    assert x.theta_component == pytest.approx(x.theta_closed_w, abs=1e-10)


def test_theta_component_number_operator():
    sp = FockSpace(1, 3)
    st = two_level(sp).normalized()
    x = fields.xhf_decomposition(build_coordinate_operators(sp).N[0], st)
    f = evaluate(build_coordinate_operators(sp).N[0], st, HOMOGENEOUS)
    z0 = st.z[0]
    direct = -(f.grad_anti[0] / z0 + f.grad_holo[0] / np.conj(z0)).real
    assert x.theta_component == pytest.approx(direct, abs=1e-12)
    # the Hilbert-space N field fixes z^[0], so the horizontal part rotates it at rate f_N/hbar = 1/2
    assert x.theta_component == pytest.approx(0.5, abs=1e-12)


def test_decomposition_chart_error():
    sp = FockSpace(1, 3)
    with pytest.raises(ChartError):
        fields.xhf_decomposition(build_coordinate_operators(sp).N[0], sp.basis_state(1))


def test_affine_covector_chain_rule(rng):
    sp = FockSpace(1, 4)
    b = random_operator(sp, rng)
    st = random_state(sp, rng)
    aff = fields.hamiltonian_field(b, st, AFFINE, "covector")
    hom = fields.hamiltonian_field(b, st, HOMOGENEOUS, "covector")
    assert (fields.affine_covector_to_homogeneous(aff) - hom).max_abs() < 1e-12
