import itertools

import pytest

from relcoh.finite_groups import (
    FiniteGroup,
    Subgroup,
    all_subgroups,
    alternating,
    builtin_group,
    cyclic,
    dihedral,
    direct_product,
    family_generated_by,
    inversion_action,
    p_subgroups,
    proper_subgroups_family,
    quotient_group,
    semidirect_product,
    subgroup_as_group,
    subgroup_class_representatives,
    sylow,
    symmetric,
    trivial_action,
    trivial_group,
    trivial_subgroup,
)


def brute_force_subgroups(G):
    """Oracle: all subgroups by subset search (tiny groups only)."""
    els = list(range(G.order))
    out = set()
    for r in range(1, G.order + 1):
        for subset in itertools.combinations(els, r):
            s = set(subset)
            if G.identity not in s:
                continue
            if all(G.table[a][b] in s for a in s for b in s):
                out.add(tuple(sorted(s)))
    return out


def test_cyclic_structure():
    C6 = cyclic(6)
    assert C6.order == 6
    assert C6.element_order(1) == 6
    assert C6.inverse(1) == 5
    assert C6.is_abelian()


def test_subgroups_c6():
    C6 = cyclic(6)
    classes = all_subgroups(C6)
    assert len(classes) == 4  # 1, C2, C3, C6, each its own class
    assert all(len(cls) == 1 for cls in classes)
    assert sorted(cls[0].order for cls in classes) == [1, 2, 3, 6]
    assert {cls[0].elements for cls in classes} == brute_force_subgroups(C6)


def test_subgroups_s3():
    S3 = symmetric(3)
    classes = all_subgroups(S3)
    orders = sorted((cls[0].order, len(cls)) for cls in classes)
    # classes: trivial, three conjugate C2, one C3, S3
    assert orders == [(1, 1), (2, 3), (3, 1), (6, 1)]
    assert {s.elements for cls in classes for s in cls} == brute_force_subgroups(S3)


def test_subgroups_trivial_group():
    classes = all_subgroups(trivial_group())
    assert len(classes) == 1 and classes[0][0].order == 1


def test_subgroup_counts_against_known_values():
    # Known subgroup counts: A4 has 10, D4 has 10, A5 has 59.
    assert sum(len(c) for c in all_subgroups(alternating(4))) == 10
    assert sum(len(c) for c in all_subgroups(dihedral(4))) == 10
    assert sum(len(c) for c in all_subgroups(alternating(5))) == 59


def test_lagrange():
    for G in [cyclic(12), symmetric(4), dihedral(6)]:
        for cls in all_subgroups(G):
            for s in cls:
                assert G.order % s.order == 0


def test_order_bound_enforced():
    with pytest.raises(ValueError):
        all_subgroups(symmetric(5), bound=100)


def test_family_generated_by_c2_in_c6():
    C6 = cyclic(6)
    C2 = next(c[0] for c in all_subgroups(C6) if c[0].order == 2)
    fam = family_generated_by(C6, C2)
    assert sorted(m.order for m in fam.members) == [1, 2]


def test_family_generated_by_full_group():
    C6 = cyclic(6)
    full = next(c[0] for c in all_subgroups(C6) if c[0].order == 6)
    fam = family_generated_by(C6, full)
    assert len(fam.members) == 4


def test_family_generated_by_c2_in_s3():
    S3 = symmetric(3)
    C2 = next(c[0] for c in all_subgroups(S3) if c[0].order == 2)
    fam = family_generated_by(S3, C2)
    # {1} plus all three conjugate C2's
    assert sorted(m.order for m in fam.members) == [1, 2, 2, 2]


def test_family_invariants_randomized():
    for G in [cyclic(8), symmetric(3), direct_product(cyclic(2), cyclic(2)),
              cyclic(12), alternating(4)]:
        for rep in subgroup_class_representatives(G):
            fam = family_generated_by(G, rep)
            fam._check()  # conjugation- and subgroup-closure


def test_proper_subgroups_family():
    C6 = cyclic(6)
    fam = proper_subgroups_family(C6)
    assert sorted(m.order for m in fam.members) == [1, 2, 3]
    assert len(fam.maximal_members()) == 2


def test_sylow_and_p_subgroups():
    C6 = cyclic(6)
    P = sylow(C6, 2)
    assert P.order == 2 and P.elements == (0, 3)  # {e, s^3}
    assert sylow(C6, 3).order == 3
    with pytest.raises(ValueError):
        p_subgroups(C6, 5)
    assert sorted(s.order for s in p_subgroups(C6, 2)) == [1, 2]
    S4 = symmetric(4)
    assert sylow(S4, 2).order == 8
    assert sylow(S4, 3).order == 3


def test_semidirect_c3_c2_is_s3():
    C3, C2 = cyclic(3), cyclic(2)
    S = semidirect_product(C3, C2, inversion_action(C3, C2))
    assert S.order == 6
    # table-comparison oracle: same multiset of element orders as S3 and nonabelian
    assert sorted(S.element_order(i) for i in range(6)) == \
        sorted(symmetric(3).element_order(i) for i in range(6))
    assert not S.is_abelian()


def test_semidirect_trivial_action_is_product():
    C2, C3 = cyclic(2), cyclic(3)
    S = semidirect_product(C3, C2, trivial_action(C3, C2))
    assert S.is_abelian()
    assert sorted(S.element_order(i) for i in range(6)) == [1, 2, 3, 3, 6, 6]
    K4 = semidirect_product(C2, C2, trivial_action(C2, C2))
    assert sorted(K4.element_order(i) for i in range(4)) == [1, 2, 2, 2]


def test_semidirect_rejects_bad_action():
    C3, C2 = cyclic(3), cyclic(2)
    bad = {0: [0, 1, 2], 1: [1, 0, 2]}  # swap of e and s is not an automorphism
    with pytest.raises(ValueError):
        semidirect_product(C3, C2, bad)


def test_semidirect_projection_and_retract():
    C3, C2 = cyclic(3), cyclic(2)
    S = semidirect_product(C3, C2, inversion_action(C3, C2))
    # (g, c) -> c is a homomorphism with kernel the distinguished copy of G
    for a in range(S.order):
        for b in range(S.order):
            pa, pb = S.project_gamma(a), S.project_gamma(b)
            assert S.project_gamma(S.table[a][b]) == C2.table[pa][pb]
    kernel = tuple(sorted(i for i in range(S.order) if S.project_gamma(i) == 0))
    assert kernel == S.normal_part.elements
    assert S.normal_part.is_normal()
    # the distinguished Γ is a retract: project restricted to it is bijective
    image = {S.project_gamma(i) for i in S.retract_part.elements}
    assert image == set(range(C2.order))


def test_quotient_group():
    C6 = cyclic(6)
    C3 = next(c[0] for c in all_subgroups(C6) if c[0].order == 3)
    Q, proj = quotient_group(C6, C3)
    assert Q.order == 2
    assert proj[0] == proj[2] == proj[4]
    S3 = symmetric(3)
    C3s = next(c[0] for c in all_subgroups(S3) if c[0].order == 3)
    Q2, _ = quotient_group(S3, C3s)
    assert Q2.order == 2
    C2s = next(c[0] for c in all_subgroups(S3) if c[0].order == 2)
    with pytest.raises(ValueError):
        quotient_group(S3, C2s)


def test_subgroup_as_group():
    S3 = symmetric(3)
    C3 = next(c[0] for c in all_subgroups(S3) if c[0].order == 3)
    sub, embed = subgroup_as_group(C3)
    assert sub.order == 3
    for i in range(3):
        for j in range(3):
            assert embed[sub.table[i][j]] == S3.table[embed[i]][embed[j]]


def test_left_cosets():
    S3 = symmetric(3)
    C2 = next(c[0] for c in all_subgroups(S3) if c[0].order == 2)
    cosets = C2.left_cosets()
    assert len(cosets) == 3
    assert sorted(x for c in cosets for x in c) == list(range(6))


def test_json_roundtrip_and_validation():
    C6 = cyclic(6)
    G = FiniteGroup.from_json(C6.to_json())
    assert G.table == C6.table
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1], [1, 1]])  # not a group table


def test_builtin_group_names():
    assert builtin_group("C6").order == 6
    assert builtin_group("S3").order == 6
    assert builtin_group("A5").order == 60
    assert builtin_group("K4").order == 4
    assert builtin_group("C2xC3").order == 6
    with pytest.raises(ValueError):
        builtin_group("E8")


def test_words_evaluate_to_elements():
    for G in [cyclic(6), symmetric(3), alternating(4)]:
        gens = G.generators()
        for el, word in G.words().items():
            acc = G.identity
            for k in word:
                acc = G.table[acc][gens[k]]
            assert acc == el


def test_trivial_subgroup_helper():
    S3 = symmetric(3)
    t = trivial_subgroup(S3)
    assert t.order == 1 and t.index == 6
    assert isinstance(t, Subgroup)
