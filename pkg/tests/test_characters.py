"""Dirichlet character groups: orthogonality, parity, Gauss sums."""

import cmath
import math
import random
from collections import Counter
from fractions import Fraction

import pytest

from prime_bias_lab import characters


def multiplicative_order(n, q):
    n %= q
    k, acc = 1, n
    while acc != 1:
        acc = acc * n % q
        k += 1
    return k


class TestOrthogonality:
    def test_character_sum_at_fixed_n_is_exact(self):
        # sum over all chi mod q of chi(n) equals phi(q) when n = 1 mod q,
        # else 0.  Verified in exact integer arithmetic: the multiset of
        # root-of-unity exponents must be uniform over the d-th roots,
        # where d is the multiplicative order of n.
        for q in range(1, 51):
            group = characters.character_group(q)
            phi = characters.euler_phi(q)
            for n in range(1, 1001):
                indices = [chi.value_index(n) for chi in group.characters]
                if math.gcd(n, q) > 1:
                    assert all(num == -1 for num, _ in indices)
                    continue
                fracs = Counter(
                    Fraction(num, den) % 1 for num, den in indices
                )
                d = multiplicative_order(n, q) if q > 1 else 1
                expected = Counter(
                    {Fraction(k, d) % 1: phi // d for k in range(d)}
                )
                assert fracs == expected, (q, n)

    def test_character_sum_float_residual_tiny(self):
        worst = 0.0
        for q in (12, 24, 45, 50):
            group = characters.character_group(q)
            phi = characters.euler_phi(q)
            for n in range(1, 301):
                s = sum(chi(n) for chi in group.characters)
                target = phi if n % q == 1 else 0.0
                worst = max(worst, abs(s - target))
        assert worst < 1e-12


class TestGroupStructure:
    def test_group_sizes(self):
        for q in (1, 2, 3, 8, 24, 45):
            group = characters.character_group(q)
            assert len(group.characters) == characters.euler_phi(q)

    def test_enumeration_is_reproducible(self):
        a = characters.character_group(24)
        b = characters.character_group(24)
        assert [chi.exponents for chi in a.characters] == [
            chi.exponents for chi in b.characters
        ]

    def test_conjugate_closure(self):
        for q in (5, 7, 13, 16):
            group = characters.character_group(q)
            keys = {chi.exponents for chi in group.characters}
            for chi in group.characters:
                bar = chi.conjugate()
                assert bar.exponents in keys
                for n in range(1, q + 1):
                    assert bar(n) == chi(n).conjugate()

    def test_parity_partition_for_odd_primes(self):
        for q in (3, 5, 7, 11, 13, 31, 97):
            group = characters.character_group(q)
            odd = [chi for chi in group.characters if chi.parity == 1]
            even = [chi for chi in group.characters if chi.parity == 0]
            assert len(odd) == (q - 1) // 2
            assert len(even) == (q - 1) // 2
            assert sum(chi.is_principal for chi in even) == 1

    def test_multiplicativity_fuzz(self):
        rng = random.Random(20240817)
        for q in (7, 12, 40):
            group = characters.character_group(q)
            for _ in range(10**4):
                m = rng.randrange(1, 10**6)
                n = rng.randrange(1, 10**6)
                chi = rng.choice(group.characters)
                assert chi(m * n) == pytest.approx(chi(m) * chi(n), abs=1e-12)

    def test_principal_character_values(self):
        group = characters.character_group(6)
        principal = group.principal
        assert principal.is_principal
        assert principal(1) == 1 and principal(5) == 1
        assert principal(2) == 0 and principal(3) == 0

    def test_value_matrix_consistent_with_per_character_tables(self):
        import numpy as np

        for q in (7, 12, 40):
            group = characters.character_group(q)
            res = np.arange(1, q + 1)
            matrix = group.value_matrix(res)
            for i, chi in enumerate(group.characters):
                assert np.allclose(matrix[i], chi.on(res), atol=1e-15)


class TestConductorsAndInduction:
    def test_chi4_is_the_primitive_odd_mod4_character(self):
        chi = characters.chi4()
        assert chi.modulus == 4 and chi.conductor == 4
        assert chi.parity == 1 and chi.is_primitive and chi.is_real
        assert chi(1) == 1 and chi(3) == -1 and chi(2) == 0

    def test_principal_conductor_is_one(self):
        for q in (4, 9, 15):
            assert characters.character_group(q).principal.conductor == 1

    def test_mod8_character_induces_to_mod4(self):
        group = characters.character_group(8)
        imprimitive = next(
            chi
            for chi in group.characters
            if chi.conductor == 4 and not chi.is_primitive
        )
        induced = characters.induce_primitive(imprimitive)
        chi = characters.chi4()
        assert induced.modulus == 4
        assert all(induced(n) == chi(n) for n in range(1, 9))

    def test_induce_primitive_is_identity_on_primitive(self):
        chi = characters.chi4()
        assert characters.induce_primitive(chi).exponents == chi.exponents


class TestGaussSumsAndRootNumbers:
    def test_gauss_sum_of_chi4(self):
        tau = characters.gauss_sum(characters.chi4())
        assert tau == pytest.approx(2j, abs=1e-14)

    def test_root_number_of_chi4(self):
        eps = characters.root_number(characters.chi4())
        assert eps == pytest.approx(1.0, abs=1e-14)

    def test_gauss_sum_modulus_is_sqrt_q_for_primitives(self):
        for q in range(2, 101):
            group = characters.character_group(q)
            for chi in group.characters:
                if not chi.is_primitive:
                    continue
                tau = characters.gauss_sum(chi)
                assert abs(tau) == pytest.approx(math.sqrt(q), abs=1e-10)

    def test_gauss_sum_matches_direct_enumeration(self):
        for q in (5, 7, 11):
            group = characters.character_group(q)
            for chi in group.characters[1:3]:
                direct = sum(
                    chi(a) * cmath.exp(2j * cmath.pi * a / q) for a in range(1, q)
                )
                assert characters.gauss_sum(chi) == pytest.approx(direct, abs=1e-12)

    def test_root_number_unit_modulus(self):
        for q in (3, 4, 5, 8):
            for chi in characters.character_group(q).characters:
                if chi.is_primitive:
                    assert abs(characters.root_number(chi)) == pytest.approx(
                        1.0, abs=1e-12
                    )

    def test_root_number_rejects_imprimitive(self):
        principal8 = characters.character_group(8).principal
        with pytest.raises(ValueError, match="induce"):
            characters.root_number(principal8)


class TestEulerPhi:
    @pytest.mark.parametrize(
        "q,phi", [(1, 1), (2, 1), (4, 2), (10, 4), (97, 96), (360, 96)]
    )
    def test_known_values(self, q, phi):
        assert characters.euler_phi(q) == phi
