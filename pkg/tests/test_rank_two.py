import itertools

import numpy as np
import pytest

from ckspaces.core import GeneratorIndex, OmegaSignature, canonical_signatures, generators
from ckspaces.errors import ChartDomainError, DegenerateLineError, DegenerateMetricError, SingularLocusError, UnsupportedDimensionError
from ckspaces.numerics import numerical_jacobian
from ckspaces.rank_one import beltrami_metric_matrix, origin, parallel_to_weierstrass
from ckspaces.rank_two import (
    RankTwoGenerator,
    ambient_metric_rank2,
    ambient_pullback_rank2,
    beltrami_norm2_rank2,
    beltrami_to_pluecker,
    bivector_generator,
    bivector_group_element,
    eliminate_inessential,
    foliation_report_rank2,
    grassmann_invariant_n3,
    invariant_form_rank2,
    is_metric_degenerate_rank2,
    metric_at_origin_rank2,
    origin_rank2,
    pluecker_from_line,
    pluecker_residuals,
    rank2_beltrami,
    rank2_metric,
    rank2_metric_matrix,
    rank2_sphere_residual,
    rank_two_generators,
    sectional_curvature_rank2_origin,
    subsidiary_metric_rank2,
    tangent_vector,
    transform_rank2,
)
from ckspaces.vector_rep import one_param_subgroup, random_group_element, vector_generator
from commutation import all_pairs, expected_table, same_index_pairs
from oracles import antisymmetrized_square, fd_pullback, symmetric_space_curvature, wedge_product

NONDEG_PATTERNS = [(w1, w2) for w1 in (1, -1) for w2 in (1, 0, -1)]


def _comm(x, y):
    return x @ y - y @ x


def test_rank_two_rejects_n2():
    sig = OmegaSignature((1, 1))
    with pytest.raises(UnsupportedDimensionError):
        bivector_generator(sig, RankTwoGenerator("P1", 1))
    with pytest.raises(UnsupportedDimensionError):
        metric_at_origin_rank2(sig)
    with pytest.raises(UnsupportedDimensionError):
        foliation_report_rank2(sig)


def test_generator_naming_is_bijective():
    for n in (3, 4, 5):
        gens = rank_two_generators(n)
        images = {g.to_index()[1] for g in gens}
        assert images == set(generators(n))
        for g in gens:
            assert RankTwoGenerator.from_index(g.to_index()[1]) == g
    assert RankTwoGenerator("J12").to_index() == (-1, GeneratorIndex(0, 1))
    assert RankTwoGenerator("P1", 2).label() == "P_(1)2"


def _oracle(sig, g):
    sign, idx = g.to_index()
    return sign * antisymmetrized_square(vector_generator(sig, idx))


@pytest.mark.parametrize("n", [3, 4])
def test_bivector_matches_oracle(n):
    rng = np.random.default_rng(n)
    for _ in range(20):
        sig = OmegaSignature([int(v) for v in rng.integers(-3, 4, n)])
        for g in rank_two_generators(n):
            assert np.array_equal(bivector_generator(sig, g), _oracle(sig, g))
        real = OmegaSignature(list(rng.uniform(-2, 2, n)))
        for g in rank_two_generators(n):
            assert np.max(np.abs(bivector_generator(real, g) - _oracle(real, g))) <= 1e-14


@pytest.mark.parametrize("n", [3, 4])
def test_bivector_generators_preserve_form(n):
    for sig in canonical_signatures(n):
        lam = invariant_form_rank2(sig)
        for g in rank_two_generators(n):
            x = bivector_generator(sig, g)
            assert np.array_equal(x.T @ lam + lam @ x, np.zeros_like(x))


def _commutator_defects(sig, table):
    mats = {g: bivector_generator(sig, g) for g in rank_two_generators(sig.n)}
    out = {}
    for a, b in all_pairs(sig.n):
        if (a, b) in table:
            coef, c = table[a, b]
            rhs = coef * mats[c]
        elif (b, a) in table:
            coef, c = table[b, a]
            rhs = -coef * mats[c]
        else:
            rhs = np.zeros_like(mats[a])
        out[a, b] = float(np.max(np.abs(_comm(mats[a], mats[b]) - rhs)))
    return out


@pytest.mark.parametrize("n", [3, 4])
def test_commutators_match_abstract_brackets(n):
    rng = np.random.default_rng(20 + n)
    for _ in range(20):
        sig = OmegaSignature([int(v) for v in rng.integers(-3, 4, n)])
        defects = _commutator_defects(sig, expected_table(sig, printed=False))
        assert max(defects.values()) == 0


@pytest.mark.parametrize("n", [3, 4])
def test_printed_table_agrees_except_same_index_pair(n):
    sig = OmegaSignature((2, 3, 5, 7)[:n])
    defects = _commutator_defects(sig, expected_table(sig, printed=True))
    same = {frozenset(p) for p in same_index_pairs(n)}
    assert all(v == 0 for k, v in defects.items() if frozenset(k) not in same)
    # the printed k(2) factor is off: the defect is |k1 k1i (k(2) - 1)| times |J12|
    assert all(v > 0 for k, v in defects.items() if frozenset(k) in same)


def test_invariant_form_examples():
    assert np.array_equal(invariant_form_rank2(OmegaSignature((1, 1, 1))), np.eye(6))
    lam = np.diag(invariant_form_rank2(OmegaSignature((0, 1, 1))))
    # basis 01 02 03 12 13 23: only the x^{0j} entries survive
    assert lam.tolist() == [1, 1, 1, 0, 0, 0]


@pytest.mark.parametrize("n", [3, 4])
def test_group_words_preserve_everything(n):
    for sig in canonical_signatures(n):
        lam = invariant_form_rank2(sig)
        for seed in range(3):
            b = bivector_group_element(random_group_element(sig, seed, 12))
            assert np.max(np.abs(b.T @ lam @ b - lam)) <= 1e-9
            x = b @ origin_rank2(n)
            assert np.max(np.abs(pluecker_residuals(x))) <= 1e-9
            assert abs(rank2_sphere_residual(sig, x)) <= 1e-10


def test_compound_is_exponential_of_generator():
    sig = OmegaSignature((2, -1, 0.5))
    for g in rank_two_generators(3):
        sign, idx = g.to_index()
        b = bivector_group_element(one_param_subgroup(sig, idx, 0.6 * sign))
        from oracles import series_expm

        assert np.max(np.abs(b - series_expm(0.6 * bivector_generator(sig, g)))) <= 1e-12


def test_pluecker_from_line_examples():
    sig = OmegaSignature((1, 1, 1))
    q = parallel_to_weierstrass(sig, [0.5, 0, 0])
    x = pluecker_from_line(origin(3), q, sig)
    assert np.allclose(x, origin_rank2(3), atol=1e-15)
    eta, xi = rank2_beltrami(x)
    assert np.allclose(eta, 0) and np.allclose(xi, 0)
    with pytest.raises(DegenerateLineError):
        pluecker_from_line(origin(3), origin(3), sig)
    with pytest.raises(DegenerateLineError):
        pluecker_from_line(origin(3), [2.0, 0, 0, 0], sig)


def test_pluecker_from_line_null_norm_reported():
    # w2 < 0: the line through O along the second axis has negative norm
    sig = OmegaSignature((1, -1, 1))
    q = parallel_to_weierstrass(sig, [0, 0.7, 0])
    with pytest.raises(DegenerateLineError):
        pluecker_from_line(origin(3), q, sig)


def test_pluecker_equivariance():
    rng = np.random.default_rng(9)
    for w in ((1, 1, 1, 1), (-1, 1, 1, 1), (1, -1, 1, 1), (-1, -1, 1, 1)):
        sig = OmegaSignature(w)
        for seed in range(5):
            # lines close to the origin line stay normalisable for every sign choice
            p = parallel_to_weierstrass(sig, rng.uniform(-0.05, 0.05, 4))
            q = parallel_to_weierstrass(sig, [0.5, *rng.uniform(-0.05, 0.05, 3)])
            g = random_group_element(sig, seed, 6, scale=0.4)
            lhs = pluecker_from_line(g.matrix @ p, g.matrix @ q, sig)
            rhs = bivector_group_element(g) @ pluecker_from_line(p, q, sig)
            rhs = rhs * np.sign(rhs[0])
            assert np.max(np.abs(lhs - rhs)) <= 1e-9
            assert np.max(np.abs(pluecker_residuals(wedge_product(p, q)))) <= 1e-15


def test_pluecker_residual_counts():
    assert len(pluecker_residuals(np.arange(6.0))) == 1
    assert len(pluecker_residuals(np.arange(10.0))) == 5
    with pytest.raises(ValueError):
        pluecker_residuals(np.arange(7.0))


def test_eliminate_inessential():
    sig = OmegaSignature((1, -1, 2, 1))
    assert np.allclose(eliminate_inessential(sig, np.zeros(3), np.zeros(3)), origin_rank2(4))
    rng = np.random.default_rng(12)
    for _ in range(10):
        x0j, x1j = rng.uniform(-0.3, 0.3, (2, 3))
        x = eliminate_inessential(sig, x0j, x1j)
        assert np.max(np.abs(pluecker_residuals(x))) <= 1e-12
        assert abs(rank2_sphere_residual(sig, x)) <= 1e-12
        eta, xi = rank2_beltrami(x)
        assert np.allclose(eta, x0j / x[0]) and np.allclose(xi, x1j / x[0])
        assert np.allclose(beltrami_to_pluecker(sig, eta, xi), x, atol=1e-12)
    with pytest.raises(ChartDomainError):
        eliminate_inessential(OmegaSignature((1, 1, 1)), [2.0, 0.0], [0.0, 0.0])


def test_rank2_beltrami_relation():
    sig = OmegaSignature((1, -1, 1, 1))
    assert np.array_equal(rank2_beltrami(origin_rank2(4)).flat(), np.zeros(6))
    eta, xi = np.array([0.1, -0.2, 0.05]), np.array([0.3, 0.1, -0.1])
    x = beltrami_to_pluecker(sig, eta, xi)
    assert x[0] ** 2 * (1 + sig[2] * beltrami_norm2_rank2(sig, eta, xi)) == pytest.approx(1.0, abs=1e-14)
    with pytest.raises(ChartDomainError):
        rank2_beltrami(-x)


def test_metric_at_origin_examples():
    m = np.diag(metric_at_origin_rank2(OmegaSignature((1, -1, 1, 1))).matrix)
    assert m.tolist() == [1, 1, 1, 1, 1, 1]
    m = metric_at_origin_rank2(OmegaSignature((0, 1, 1, 1)))
    assert np.diag(m.matrix).tolist() == [1, 1, 1, 0, 0, 0] and m.is_degenerate()
    m = np.diag(metric_at_origin_rank2(OmegaSignature((-1, 1, -1, 1))).matrix)
    assert m.tolist() == [1, -1, -1, -1, 1, 1]


@pytest.mark.parametrize("n", [3, 4])
def test_origin_metric_is_ambient_restriction(n):
    """The ambient form on the tangent coordinates x^{0,i+1}, x^{1,i+1} is k1 times the origin metric."""
    ps = [tuple(g) for g in generators(n)]
    rows = [ps.index((0, i + 1)) for i in range(1, n)] + [ps.index((1, i + 1)) for i in range(1, n)]
    for sig in canonical_signatures(n):
        lam0 = invariant_form_rank2(sig)[np.ix_(rows, rows)]
        assert np.array_equal(lam0, sig[2] * metric_at_origin_rank2(sig).matrix)


def test_rank2_metric_examples():
    for sig in canonical_signatures(3):
        assert np.array_equal(rank2_metric(sig, np.zeros(4)).matrix, metric_at_origin_rank2(sig).matrix)
    flat = OmegaSignature((1, 0, 1, 1))
    v = np.array([0.2, -0.1, 0.3, 0.1, 0.4, -0.2])
    assert np.allclose(rank2_metric(flat, v).matrix, metric_at_origin_rank2(flat).matrix, atol=1e-15)
    with pytest.raises(SingularLocusError):
        rank2_metric(OmegaSignature((1, -1, 1)), [1.0, 0.0, 0.0, 0.0])
    g = rank2_metric(OmegaSignature((2, -1, 3, 1)), v).matrix
    assert np.max(np.abs(g - g.T)) <= 1e-12


def test_velocity_space_reduction():
    rng = np.random.default_rng(3)
    for w2 in (1.0, -1.0, 0.0, 0.25):
        sig = OmegaSignature((0, w2, 1, 1))
        for _ in range(5):
            eta, xi = rng.uniform(-0.4, 0.4, (2, 3))
            g = rank2_metric(sig, eta, xi).matrix
            velocity = beltrami_metric_matrix(OmegaSignature((w2, 1, 1)), eta)
            assert np.max(np.abs(g[:3, :3] - velocity)) <= 1e-12
            assert np.max(np.abs(g[3:, :])) <= 1e-12


@pytest.mark.parametrize("w1,w2", NONDEG_PATTERNS)
def test_rank2_metric_isometry(w1, w2):
    sig = OmegaSignature((w1, w2, 1, 1))
    rng = np.random.default_rng(7)
    for seed in range(4):
        b = bivector_group_element(random_group_element(sig, seed, 6, scale=0.3))
        v = rng.uniform(-0.2, 0.2, 6)
        jac = numerical_jacobian(lambda t: transform_rank2(b, t), v)
        pulled = jac.T @ rank2_metric_matrix(sig, transform_rank2(b, v)) @ jac
        assert np.max(np.abs(pulled - rank2_metric_matrix(sig, v))) <= 1e-8


def test_ambient_pullback_is_k1_times_metric():
    rng = np.random.default_rng(5)
    for sig in canonical_signatures(4):
        v = rng.uniform(-0.3, 0.3, 6)
        try:
            beltrami_to_pluecker(sig, v)
        except ChartDomainError:
            continue
        target = sig[2] * rank2_metric_matrix(sig, v)
        assert np.max(np.abs(ambient_pullback_rank2(sig, v) - target)) <= 1e-6
        oracle = fd_pullback(lambda t: beltrami_to_pluecker(sig, t), invariant_form_rank2(sig), v)
        assert np.max(np.abs(oracle - target)) <= 1e-6


def test_ambient_metric_equals_invariant_form():
    for sig in canonical_signatures(4):
        assert np.array_equal(ambient_metric_rank2(sig), invariant_form_rank2(sig))


def test_subsidiary_metrics():
    sig = OmegaSignature((-2, 3, -1, 5))
    lam = metric_at_origin_rank2(sig).matrix
    assert np.array_equal(sig[1] * subsidiary_metric_rank2(sig, "(2)").matrix, lam[3:, 3:])
    flat = OmegaSignature((0, 1, 1, 1))
    assert np.array_equal(subsidiary_metric_rank2(flat, "(2)").matrix, np.eye(3))
    assert np.all(metric_at_origin_rank2(flat).matrix[3:, 3:] == 0)
    for a in (2, 3):
        ga = subsidiary_metric_rank2(sig, a).matrix
        idx = list(range(a - 1, 3)) + list(range(3 + a - 1, 6))
        k1a = np.prod(sig.omegas[2:a + 1])
        assert np.array_equal(k1a * ga, lam[np.ix_(idx, idx)])
    for bad in ("x", 1, 4, "(3)"):
        with pytest.raises(ValueError):
            subsidiary_metric_rank2(sig, bad)


def test_foliation_report_examples():
    (leaf,) = foliation_report_rank2(OmegaSignature((0, -1, 1, 1))).leaves
    assert leaf.zero_position == "(2)"
    assert leaf.base_signature == (-1, 1, 1) and leaf.fiber_signature == (0, 1, 1)
    assert (leaf.base_dimension, leaf.fiber_dimension) == (3, 3)
    (leaf,) = foliation_report_rank2(OmegaSignature((1, 1, 0, 1))).leaves
    assert leaf.zero_position == "2" and leaf.base_dimension == 2 and leaf.base_rank == 2
    assert not foliation_report_rank2(OmegaSignature((1, -1, 1, 1)))


@pytest.mark.parametrize("n", [3, 4])
def test_foliation_iff_degenerate(n):
    for sig in canonical_signatures(n):
        report = foliation_report_rank2(sig)
        assert bool(report) == is_metric_degenerate_rank2(sig) == metric_at_origin_rank2(sig).is_degenerate()


def _tangent_basis(sig):
    n = sig.n
    return [vector_generator(sig, (1, i + 1)) for i in range(1, n)] + [
        vector_generator(sig, (0, i + 1)) for i in range(1, n)
    ]


@pytest.mark.parametrize("n", [3, 4])
def test_origin_curvature_pattern(n):
    t = lambda label: tangent_vector(n, label)
    for sig in canonical_signatures(n):
        if is_metric_degenerate_rank2(sig):
            continue
        for i in range(1, n):
            assert sectional_curvature_rank2_origin(sig, t(f"P_(1){i}"), t(f"P_(2){i}")) == pytest.approx(sig[2], abs=1e-4)
            for j in range(1, n):
                if i == j:
                    continue
                assert abs(sectional_curvature_rank2_origin(sig, t(f"P_(1){i}"), t(f"P_(2){j}"))) <= 1e-4
                for a in (1, 2):
                    k = sectional_curvature_rank2_origin(sig, t(f"P_({a}){i}"), t(f"P_({a}){j}"))
                    assert k == pytest.approx(sig[2], abs=1e-4)


def test_origin_curvature_matches_algebraic_oracle():
    rng = np.random.default_rng(11)
    for n in (3, 4):
        for sig in canonical_signatures(n):
            if is_metric_degenerate_rank2(sig):
                continue
            u, v = rng.normal(size=(2, 2 * (n - 1)))
            ref = symmetric_space_curvature(_tangent_basis(sig), np.diag(metric_at_origin_rank2(sig).matrix), u, v)
            assert sectional_curvature_rank2_origin(sig, u, v) == pytest.approx(ref, abs=1e-5, rel=1e-5)


def test_curvature_degenerate_error():
    with pytest.raises(DegenerateMetricError):
        sectional_curvature_rank2_origin(OmegaSignature((0, 1, 1)), np.eye(4)[0], np.eye(4)[2])
    with pytest.raises(ValueError):
        tangent_vector(3, "P_(3)1")


def test_grassmann_invariant_n3():
    sig = OmegaSignature((1, -1, 2))
    x = wedge_product(parallel_to_weierstrass(sig, [0.2, 0.1, 0.3]), [0.1, 0.7, 0.2, -0.4]) + np.array(
        [0.0, 0.3, 0.0, 0.0, 0.5, 0.0]
    )
    base = grassmann_invariant_n3(x)
    for seed in range(50):
        b = bivector_group_element(random_group_element(sig, seed, 8))
        assert abs(grassmann_invariant_n3(b @ x) - base) <= 1e-9 * max(1.0, np.max(np.abs(b @ x)) ** 2)
    with pytest.raises(UnsupportedDimensionError):
        grassmann_invariant_n3(np.zeros(10))


def _table_bracket(table, a, b):
    """Bracket of two basis generators from a table, as a {generator: coef} map."""
    if (a, b) in table:
        coef, c = table[a, b]
        return {c: coef}
    if (b, a) in table:
        coef, c = table[b, a]
        return {c: -coef}
    return {}


def _jacobiator(table, x, y, z):
    total = {}
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        for g, coef in _table_bracket(table, b, c).items():
            for h, coef2 in _table_bracket(table, a, g).items():
                total[h] = total.get(h, 0) + coef * coef2
    return {g: v for g, v in total.items() if v != 0}


def test_printed_table_breaks_jacobi_unless_k2_is_one():
    triple = (RankTwoGenerator("P1", 1), RankTwoGenerator("P1", 2), RankTwoGenerator("P2", 2))
    for w1 in (2, -1, 0):
        sig = OmegaSignature((w1, 3, 5))
        assert _jacobiator(expected_table(sig, printed=False), *triple) == {}
        assert _jacobiator(expected_table(sig, printed=True), *triple) != {}
    assert _jacobiator(expected_table(OmegaSignature((1, 3, 5)), printed=True), *triple) == {}
