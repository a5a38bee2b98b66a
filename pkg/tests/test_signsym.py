import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signspectra.exterior import compound2
from signspectra.gen import scrambled
from signspectra.signsym import (
    JCertificate,
    NotSignSymmetric,
    NotSignSymmetricError,
    TooManyCertificatesError,
    detect,
    enumerate_certificates,
    enumerate_j_sets,
    principal_submatrix_certificate,
    sign_constraint_graph,
    trace_bound,
    verify_certificate,
)
from signspectra.spectral import eigenvalues

from helpers import (
    EXAMPLE1,
    EXAMPLE1_COMPOUND,
    EXAMPLE1_COMPOUND_J_SETS,
    brute_force_j_sets,
)


class TestDetect:
    def test_nonnegative_gives_empty_j(self):
        cert = detect(EXAMPLE1)
        assert isinstance(cert, JCertificate)
        assert cert.j_set == frozenset()
        assert cert.d_signs == (1, 1, 1, 1, 1)
        assert np.array_equal(cert.a_tilde, EXAMPLE1)

    def test_canonical_side_excludes_smallest_index(self):
        # Both off-diagonal entries negative: indices 1 and 2 sit on
        # opposite sides, and the side of index 1 is kept out of J.
        cert = detect(np.array([[0.0, -1.0], [-1.0, 0.0]]))
        assert isinstance(cert, JCertificate)
        assert cert.j_set == frozenset({2})
        assert cert.d_signs == (1, -1)
        assert np.array_equal(cert.a_tilde, [[0.0, 1.0], [1.0, 0.0]])

    def test_negative_diagonal_is_fatal(self):
        res = detect(np.array([[1.0, 0.0], [0.0, -1.0]]))
        assert isinstance(res, NotSignSymmetric)
        assert res.odd_cycle == (2,)

    def test_asymmetric_conflict(self):
        # a12 > 0 wants same side, a21 < 0 wants opposite: a 2-cycle witness.
        res = detect(np.array([[0.0, 1.0], [-1.0, 0.0]]))
        assert isinstance(res, NotSignSymmetric)
        assert set(res.odd_cycle) == {1, 2}

    def test_odd_triangle(self):
        a = np.array([[0.0, 1.0, 1.0], [1.0, 0.0, -1.0], [1.0, -1.0, 0.0]])
        res = detect(a)
        assert isinstance(res, NotSignSymmetric)
        # Witness must be a genuine parity-odd closed chain of constraints.
        cyc = res.odd_cycle
        parity = 0
        for t in range(len(cyc)):
            u, v = cyc[t] - 1, cyc[(t + 1) % len(cyc)] - 1
            entry = a[u, v] if a[u, v] != 0 else a[v, u]
            assert entry != 0
            parity ^= 0 if entry > 0 else 1
        assert parity == 1

    def test_worked_compound_canonical(self):
        cert = detect(EXAMPLE1_COMPOUND)
        assert isinstance(cert, JCertificate)
        assert cert.j_set == frozenset({3, 4, 7})
        assert (cert.a_tilde >= 0).all()


class TestEnumerate:
    def test_worked_compound_all_four(self):
        certs = enumerate_certificates(EXAMPLE1_COMPOUND)
        assert len(certs) == 4
        assert {c.j_set for c in certs} == EXAMPLE1_COMPOUND_J_SETS
        for c in certs:
            assert verify_certificate(EXAMPLE1_COMPOUND, c)

    def test_zero_matrix_counts_components(self):
        assert len(enumerate_j_sets(np.zeros((3, 3)))) == 8

    def test_connected_nonnegative_has_two(self):
        sets = enumerate_j_sets(EXAMPLE1)
        assert sets[0] == frozenset()
        assert sets == [frozenset(), frozenset({1, 2, 3, 4, 5})]

    def test_raises_on_inconsistent(self):
        with pytest.raises(NotSignSymmetricError) as err:
            enumerate_j_sets(np.array([[0.0, 1.0], [-1.0, 0.0]]))
        assert err.value.odd_cycle is not None

    def test_cap(self):
        with pytest.raises(TooManyCertificatesError):
            enumerate_j_sets(np.zeros((21, 21)), cap=2**20)
        assert len(enumerate_j_sets(np.zeros((4, 4)), cap=16)) == 16
        with pytest.raises(TooManyCertificatesError):
            enumerate_j_sets(np.zeros((4, 4)), cap=15)

    def test_matches_brute_force_seeded(self):
        rng = np.random.default_rng(20260817)
        for _ in range(200):
            n = int(rng.integers(1, 9))
            density = rng.choice([0.2, 0.5, 0.9])
            a = rng.integers(-1, 2, size=(n, n)).astype(float)
            a[rng.random((n, n)) > density] = 0.0
            expected = brute_force_j_sets(a)
            if not expected:
                assert isinstance(detect(a), NotSignSymmetric)
                with pytest.raises(NotSignSymmetricError):
                    enumerate_j_sets(a)
            else:
                got = set(enumerate_j_sets(a))
                assert got == expected

    @given(st.integers(min_value=0, max_value=10**9))
    @settings(max_examples=60, deadline=None)
    def test_matches_brute_force_hypothesis(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 6))
        a = rng.integers(-1, 2, size=(n, n)).astype(float)
        expected = brute_force_j_sets(a)
        if not expected:
            assert isinstance(detect(a), NotSignSymmetric)
        else:
            assert set(enumerate_j_sets(a)) == expected


class TestVerify:
    def test_round_trip(self):
        rng = np.random.default_rng(9)
        base = rng.uniform(0.0, 1.0, size=(6, 6))
        a = scrambled(base, j_set={2, 5}, seed=0)
        cert = detect(a)
        assert isinstance(cert, JCertificate)
        assert verify_certificate(a, cert)

    def test_complement_passes(self):
        a = scrambled(np.ones((4, 4)), j_set={1, 3}, seed=0)
        cert = detect(a)
        flipped = JCertificate(
            frozenset(range(1, 5)) - cert.j_set,
            tuple(-s for s in cert.d_signs),
            cert.a_tilde,
        )
        assert verify_certificate(a, flipped)

    def test_wrong_signs_fail(self):
        a = scrambled(np.ones((3, 3)), j_set={2}, seed=0)
        bad = JCertificate(frozenset(), (1, 1, 1), np.asarray(a))
        assert not verify_certificate(a, bad)

    def test_dimension_mismatch(self):
        cert = detect(np.ones((3, 3)))
        with pytest.raises(ValueError, match="dimension"):
            verify_certificate(np.ones((4, 4)), cert)


class TestPrincipalSubmatrix:
    def test_inherits_structure(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            n = int(rng.integers(2, 8))
            base = rng.uniform(0.0, 1.0, size=(n, n))
            j = frozenset(
                int(i) + 1 for i in range(n) if rng.random() < 0.5
            )
            a = scrambled(base, j_set=j, seed=0)
            cert = detect(a)
            size = int(rng.integers(1, n + 1))
            alpha = sorted(rng.choice(n, size=size, replace=False) + 1)
            sub_cert = principal_submatrix_certificate(a, alpha, cert)
            sub = a[np.ix_([v - 1 for v in alpha], [v - 1 for v in alpha])]
            assert verify_certificate(sub, sub_cert)
            expected_j = frozenset(
                p + 1 for p, orig in enumerate(alpha) if orig in cert.j_set
            )
            assert sub_cert.j_set == expected_j

    def test_rejects_bad_alpha(self):
        cert = detect(np.ones((3, 3)))
        with pytest.raises(ValueError):
            principal_submatrix_certificate(np.ones((3, 3)), [], cert)
        with pytest.raises(ValueError):
            principal_submatrix_certificate(np.ones((3, 3)), [0, 1], cert)

    def test_rejects_stale_certificate(self):
        cert = detect(np.ones((3, 3)))
        other = np.array([[0.0, -2.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]])
        with pytest.raises(ValueError, match="does not verify"):
            principal_submatrix_certificate(other, [1, 2], cert)


class TestTraceBound:
    def test_bounds_spectral_radius(self):
        rng = np.random.default_rng(19)
        for _ in range(30):
            n = int(rng.integers(1, 8))
            base = rng.uniform(0.0, 1.0, size=(n, n))
            a = scrambled(base, seed=int(rng.integers(0, 100)))
            assert eigenvalues(a).rho >= trace_bound(a) - 1e-12

    def test_exact_for_identity(self):
        assert trace_bound(np.eye(4)) == 1.0

    def test_requires_structure(self):
        with pytest.raises(NotSignSymmetricError):
            trace_bound(np.array([[0.0, 1.0], [-1.0, 0.0]]))


class TestConstraintGraph:
    def test_components_ordered_by_smallest(self):
        g = sign_constraint_graph(EXAMPLE1_COMPOUND)
        assert g.consistent
        assert g.components == ((1, 4, 5, 8, 10), (2, 3, 6, 7, 9))

    def test_compound_of_worked_example_has_two_components(self):
        g = sign_constraint_graph(compound2(EXAMPLE1))
        assert len(g.components) == 2
