"""Unit tests for the commability and quasi-isometry decision engine."""

from fractions import Fraction as F
from itertools import combinations
from random import Random

import pytest

from focalclass.matexact import MatQ, mat_power
from focalclass.focalmodel import (
    FT,
    Composite,
    GAk,
    Millefeuille,
    classify_type,
    invariant_q,
)
from focalclass.commengine import (
    Arrow,
    CITATIONS,
    INTO,
    No,
    SDesc,
    SFreeGroup,
    SFTpow,
    SHull,
    UndecidedVerdict,
    WitnessChain,
    Yes,
    commable,
    commable_within_focal,
    ft_index_oracle,
    pattern_catalog,
    quasi_isometric,
    validate_chain,
)

from helpers import (
    descriptor_pool,
    random_conjugator,
    random_diagonalizable,
    recheck_obstruction,
)


def diag(*values):
    return MatQ.diag([F(v) for v in values])


X = diag("1/2")


# ---------------------------------------------------------------------------
# commable_within_focal
# ---------------------------------------------------------------------------


def test_td_pair_same_root():
    verdict = commable_within_focal(FT(2), FT(4))
    assert isinstance(verdict, Yes)
    assert verdict.chain.pattern() == "↗↖↗↖"
    assert SFTpow(2, 2) in verdict.chain.nodes
    assert validate_chain(verdict.chain) == (True, "ok")


def test_td_pair_alternative_valley_realization():
    from focalclass.commengine import SQpLattice, qp_valley_chain

    chain = qp_valley_chain(FT(2), FT(4))
    assert chain.nodes[1] == SQpLattice(2, 2)
    assert chain.pattern() == "↖↗"
    assert validate_chain(chain) == (True, "ok")
    with pytest.raises(ValueError):
        qp_valley_chain(FT(2), FT(3))


def test_td_pair_different_root():
    verdict = commable_within_focal(FT(2), FT(3))
    assert isinstance(verdict, No)
    assert verdict.invariant == "q" and tuple(verdict.values) == (2, 3)
    assert recheck_obstruction(verdict, FT(2), FT(3))


def test_mixed_pair_from_power_conjugacy():
    g1 = GAk(diag("1/2", "1/8"), 4)
    g2 = GAk(diag("1/4", "1/64"), 16)
    verdict = commable_within_focal(g1, g2)
    assert isinstance(verdict, Yes)
    assert validate_chain(verdict.chain) == (True, "ok")


def test_connected_pair_through_hull():
    g1 = GAk(diag("1/2", "1/4"), 1)
    g2 = GAk(diag("1/3", "1/9"), 1)
    verdict = commable_within_focal(g1, g2)
    assert isinstance(verdict, Yes)
    assert verdict.chain.pattern() == "↗↖"
    hull_node = verdict.chain.nodes[1]
    assert isinstance(hull_node, SHull) and hull_node.hull is not None
    assert validate_chain(verdict.chain) == (True, "ok")


def test_connected_pair_not_related():
    g1 = GAk(diag("1/2", "1/4"), 1)
    g2 = GAk(diag("1/3", "1/8"), 1)
    verdict = commable_within_focal(g1, g2)
    assert isinstance(verdict, No)
    assert verdict.invariant == "connected-key"
    assert recheck_obstruction(verdict, g1, g2)


def test_reflexive_empty_chain():
    g = GAk(diag("1/2", "1/4"), 8)
    verdict = commable_within_focal(g, g)
    assert isinstance(verdict, Yes)
    assert verdict.chain.nodes == (SDesc(g),) and verdict.chain.arrows == ()
    assert validate_chain(verdict.chain) == (True, "ok")


def test_connected_and_mixed_undecided_comparisons():
    # eigenvalue ratios log(a+1)/log(a) vs log(a+2)/log(a+1) agree to far
    # below the 256-bit refinement and have independent bases: honestly
    # undecided rather than guessed
    a = 10**80
    m1 = diag(F(1, a), F(1, a + 1))
    m2 = diag(F(1, a + 1), F(1, a + 2))
    assert isinstance(commable_within_focal(GAk(m1, 1), GAk(m2, 1)), UndecidedVerdict)
    assert isinstance(commable_within_focal(GAk(m1, 2), GAk(m2, 2)), UndecidedVerdict)
    assert isinstance(quasi_isometric(GAk(m1, 2), GAk(m2, 2)), UndecidedVerdict)


# ---------------------------------------------------------------------------
# commable / quasi_isometric
# ---------------------------------------------------------------------------


def test_commable_td_free_chain():
    verdict = commable(FT(2), FT(3))
    assert isinstance(verdict, Yes)
    kinds = [type(n).__name__ for n in verdict.chain.nodes]
    assert kinds == ["SDesc", "SAutTree", "SFreeGroup", "SAutTree", "SDesc"]
    assert verdict.chain.nodes[2] == SFreeGroup(3)
    assert validate_chain(verdict.chain) == (True, "ok")


def test_commable_type_obstruction():
    verdict = commable(FT(2), GAk(diag("1/2"), 1))
    assert isinstance(verdict, No)
    assert verdict.invariant == "type"
    assert recheck_obstruction(verdict, FT(2), GAk(diag("1/2"), 1))


def test_commable_all_td_pairs():
    groups = [FT(m) for m in range(2, 21)] + [GAk(MatQ([]), 5)]
    for g1, g2 in combinations(groups, 2):
        verdict = commable(g1, g2)
        assert isinstance(verdict, Yes)
        within = commable_within_focal(g1, g2)
        assert isinstance(within, Yes) == (invariant_q(g1) == invariant_q(g2))


def test_millefeuille_qi_examples():
    assert isinstance(quasi_isometric(Millefeuille(X, F(1), 2), Millefeuille(X, F(2), 4)), Yes)
    v1 = quasi_isometric(Millefeuille(X, F(1), 2), Millefeuille(X, F(1), 3))
    assert isinstance(v1, No) and v1.invariant == "q"
    v2 = quasi_isometric(Millefeuille(X, F(1), 4), Millefeuille(X, F(2), 4))
    assert isinstance(v2, No) and v2.invariant == "varpi"


def test_millefeuille_fast_path_matches_general_mixed_rule():
    rng = Random(31)
    for _ in range(40):
        t1 = F(rng.randint(1, 4), rng.randint(1, 4))
        t2 = F(rng.randint(1, 4), rng.randint(1, 4))
        k1 = rng.choice([2, 3, 4, 8, 9])
        k2 = rng.choice([2, 3, 4, 8, 9])
        m1, m2 = Millefeuille(X, t1, k1), Millefeuille(X, t2, k2)
        assert quasi_isometric(m1, m2).kind == commable_within_focal(m1, m2).kind


def test_millefeuille_qi_across_different_connected_data():
    # rescaling the connected side keeps the key; varpi values match exactly
    m1 = Millefeuille(diag("1/2"), F(1), 2)
    m2 = Millefeuille(diag("1/4"), F(1), 4)
    verdict = quasi_isometric(m1, m2)
    assert isinstance(verdict, Yes)
    assert validate_chain(verdict.chain) == (True, "ok")


def test_mixed_pair_with_jordan_blocks():
    a1 = MatQ([["1/2", 1], [0, "1/2"]])
    a2 = MatQ([["1/4", 1], [0, "1/4"]])  # conjugate to a1 squared
    verdict = commable_within_focal(GAk(a1, 2), GAk(a2, 4))
    assert isinstance(verdict, Yes)
    bad = commable_within_focal(GAk(a1, 2), GAk(diag("1/4", "1/4"), 4))
    assert isinstance(bad, No) and bad.invariant == "connected-key"


def test_cross_kind_mixed_pair():
    # the fibered-product descriptor with varpi 1 matches the matrix model
    g1 = Composite(diag("1/2"), F(1), 2)
    g2 = GAk(diag("1/2"), 2)
    verdict = commable_within_focal(g1, g2)
    assert isinstance(verdict, Yes)
    assert validate_chain(verdict.chain) == (True, "ok")
    off = commable_within_focal(Composite(diag("1/2"), F(2), 2), g2)
    assert isinstance(off, No) and off.invariant == "varpi"


def test_composite_qi_varpi_obstruction():
    v = quasi_isometric(Composite(X, F(1), 2), Composite(X, F(2), 2))
    assert isinstance(v, No) and v.invariant == "varpi"
    assert tuple(v.values) == ("1", "2")


def test_qi_agrees_with_commable_on_pool():
    pool = descriptor_pool()
    rng = Random(32)
    for _ in range(150):
        g1, g2 = rng.choice(pool), rng.choice(pool)
        qi = quasi_isometric(g1, g2)
        com = commable(g1, g2)
        if classify_type(g1) is classify_type(g2):
            assert qi.kind == com.kind
        else:
            assert qi.kind == com.kind == "no"


# ---------------------------------------------------------------------------
# equivalence relation
# ---------------------------------------------------------------------------


def test_within_focal_is_equivalence_on_pool():
    pool = descriptor_pool()
    rng = Random(33)
    undecided = 0
    for _ in range(200):
        a, b, c = rng.choice(pool), rng.choice(pool), rng.choice(pool)
        vab = commable_within_focal(a, b)
        vba = commable_within_focal(b, a)
        assert vab.kind == vba.kind
        vbc = commable_within_focal(b, c)
        vac = commable_within_focal(a, c)
        if "undecided" in (vab.kind, vbc.kind, vac.kind):
            undecided += 1
            continue
        if isinstance(vab, Yes) and isinstance(vbc, Yes):
            assert isinstance(vac, Yes)
        assert isinstance(commable_within_focal(a, a), Yes)
    assert undecided == 0  # the pool is fully certified


def test_yes_chains_validate_and_no_verdicts_recheck():
    pool = descriptor_pool()
    rng = Random(34)
    yes_count = no_count = 0
    for _ in range(400):
        g1, g2 = rng.choice(pool), rng.choice(pool)
        verdict = commable_within_focal(g1, g2)
        if isinstance(verdict, Yes):
            assert validate_chain(verdict.chain) == (True, "ok")
            yes_count += 1
        elif isinstance(verdict, No):
            assert recheck_obstruction(verdict, g1, g2)
            no_count += 1
    assert yes_count >= 10 and no_count >= 10


# ---------------------------------------------------------------------------
# pattern catalog
# ---------------------------------------------------------------------------


def test_pattern_catalog_same_root_pair():
    entries = {(e.pattern, e.status, e.citation) for e in pattern_catalog(FT(2), FT(4))}
    assert ("↗↖", "impossible", "no-common-overgroup") in entries
    assert ("↖↗", "exists", "padic-cocompact-lattice") in entries
    assert ("↗↖↗↖", "exists", "ft-ladder") in entries
    assert ("↖↗↖", "unknown", "open-commability-pattern") in entries


def test_pattern_catalog_different_root_pair():
    entries = {(e.pattern, e.status, e.citation) for e in pattern_catalog(FT(2), FT(3))}
    assert ("↖↗↖", "impossible", "no-two-step-valley") in entries
    assert ("↗↖", "impossible", "no-common-overgroup") in entries


def test_pattern_catalog_identity():
    g = GAk(diag("1/2", "1/4"), 8)
    assert [(e.pattern, e.status, e.citation) for e in pattern_catalog(g, g)] == [
        ("", "exists", "identity")
    ]


def test_pattern_catalog_rejects_connected():
    with pytest.raises(ValueError):
        pattern_catalog(GAk(diag("1/2"), 1), GAk(diag("1/3"), 1))


def test_pattern_catalog_mixed_pairs():
    g1 = GAk(diag("1/2", "1/8"), 4)
    g2 = GAk(diag("1/4", "1/64"), 16)
    entries = {(e.pattern, e.status) for e in pattern_catalog(g1, g2)}
    assert ("↗↖↗↖", "exists") in entries
    assert pattern_catalog(g1, GAk(diag("1/2", "1/8"), 7)) == []


# ---------------------------------------------------------------------------
# chain validation
# ---------------------------------------------------------------------------


def test_validate_chain_rejects_q_violation():
    bad = WitnessChain(
        nodes=(SDesc(FT(2)), SDesc(FT(3))),
        arrows=(Arrow(INTO, "bass-serre-embedding"),),
    )
    ok, diag_msg = validate_chain(bad)
    assert not ok and "q" in diag_msg


def test_validate_chain_rejects_unknown_citation():
    bad = WitnessChain(
        nodes=(SDesc(FT(2)), SDesc(FT(4))),
        arrows=(Arrow(INTO, "made-up"),),
    )
    ok, diag_msg = validate_chain(bad)
    assert not ok and "citation" in diag_msg


def test_validate_chain_rejects_type_violation():
    bad = WitnessChain(
        nodes=(SDesc(GAk(diag("1/2"), 1)), SDesc(GAk(diag("1/2"), 2))),
        arrows=(Arrow(INTO, "focal-universal-hull"),),
    )
    ok, diag_msg = validate_chain(bad)
    assert not ok and "type" in diag_msg


def test_validate_chain_rejects_varpi_violation():
    bad = WitnessChain(
        nodes=(SDesc(GAk(diag("1/2"), 2)), SDesc(GAk(diag("1/2"), 4, index=1))),
        arrows=(Arrow(INTO, "modular-fibered-product"),),
    )
    ok, diag_msg = validate_chain(bad)
    assert not ok and "varpi" in diag_msg


def test_chain_arrow_count_enforced():
    with pytest.raises(ValueError):
        WitnessChain(nodes=(SDesc(FT(2)),), arrows=(Arrow(INTO, "identity"),))


def test_citation_registry_documented():
    for text in CITATIONS.values():
        assert len(text) > 20


# ---------------------------------------------------------------------------
# final corollary coincidence (sample; the acceptance suite scales this up)
# ---------------------------------------------------------------------------


def test_final_corollary_routes_agree_sample():
    from focalclass.matexact import power_conjugacy

    rng = Random(35)
    for _ in range(40):
        dim = rng.choice([2, 3])
        q = rng.choice([2, 3, 5])
        e1 = rng.randint(1, 2)
        n1 = rng.randint(1, 3)
        k1 = q**e1
        k2 = k1**n1
        mus = [F(1, rng.choice([2, 3, 4, 8, 9])) for _ in range(dim)]
        a1 = MatQ.diag(mus)
        p = random_conjugator(rng, dim)
        a2 = p @ mat_power(a1, n1) @ p.inverse()
        if rng.random() < 0.5:
            g1, g2 = GAk(a1, k1), GAk(a2, k2)
            expect_yes = True
        else:
            if rng.random() < 0.5:
                mutated = [mu for mu in mus]
                mutated[0] = mutated[0] * F(3, 5)
                a2 = p @ mat_power(MatQ.diag(mutated), n1) @ p.inverse()
            else:
                k2 = k2 * 7 if q != 7 else k2 * 2
            g1, g2 = GAk(a1, k1), GAk(a2, k2)
            expect_yes = False
        qi = quasi_isometric(g1, g2)
        com = commable(g1, g2)
        raw = power_conjugacy(a1, a2, g1.k, g2.k)
        assert qi.kind == com.kind == ("yes" if raw is not None else "no")
        assert (qi.kind == "yes") == expect_yes


def test_mixed_decision_quadrants():
    """Exactly one failing condition must already force No, matching the raw
    power-conjugacy route."""
    from focalclass.matexact import power_conjugacy

    # connected keys equal, varpi off: squared action with unchanged k
    a1 = diag("1/2", "1/8")
    a2 = mat_power(a1, 2)
    g1, g2 = GAk(a1, 4), GAk(a2, 4)
    v = commable_within_focal(g1, g2)
    assert isinstance(v, No) and v.invariant == "varpi"
    assert power_conjugacy(a1, a2, 4, 4) is None

    # varpi equal, connected keys off: same determinant, different spectra
    b1 = diag("1/2", "1/8")
    b2 = diag("1/4", "1/4")
    h1, h2 = GAk(b1, 4), GAk(b2, 4)
    v2 = commable_within_focal(h1, h2)
    assert isinstance(v2, No) and v2.invariant == "connected-key"
    assert power_conjugacy(b1, b2, 4, 4) is None


def test_mixed_decision_matches_power_conjugacy_on_random_pairs():
    """Differential check of the two independent decision routes on random
    index-1 matrix descriptors, including semi-related near misses."""
    from focalclass.matexact import power_conjugacy

    rng = Random(36)
    yes_count = 0
    for _ in range(300):
        dim = rng.choice([1, 2, 3])
        q = rng.choice([2, 3, 5])
        k1 = q ** rng.randint(1, 2)
        a1 = random_diagonalizable(rng, dim, max_den=9)
        style = rng.random()
        if style < 0.4:
            a2 = random_diagonalizable(rng, dim, max_den=9)
            k2 = rng.choice([2, 3, 5, 6]) ** rng.randint(1, 2)
        else:
            # same one-parameter class; k2 may or may not fit the exponent
            n1 = rng.randint(1, 3)
            p = random_conjugator(rng, dim)
            a2 = p @ mat_power(a1, n1) @ p.inverse()
            k2 = q ** rng.randint(1, 4)
        verdict = commable(GAk(a1, k1), GAk(a2, k2))
        raw = power_conjugacy(a1, a2, k1, k2)
        assert (verdict.kind == "yes") == (raw is not None)
        yes_count += raw is not None
    assert yes_count >= 20


# ---------------------------------------------------------------------------
# tree oracle
# ---------------------------------------------------------------------------


def test_ft_index_oracle_examples():
    assert ft_index_oracle(2, 3) == 2
    assert ft_index_oracle(3, 2) == 3
    assert ft_index_oracle(5, 1) == 5


def test_ft_index_oracle_full_admissible_grid():
    for m in range(2, 7):
        for depth in range(1, 6):
            assert ft_index_oracle(m, depth) == m


def test_ft_index_oracle_guards():
    with pytest.raises(ValueError):
        ft_index_oracle(7, 1)
    with pytest.raises(ValueError):
        ft_index_oracle(3, 6)
