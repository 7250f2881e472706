"""Group actions by lattice automorphisms.

Claims:
    - automorphism validation rejects order- or complement-breaking maps
    - closure from generators matches known group orders
    - the full automorphism groups of the test family have the expected
      orders (n! for power sets, 2^n n! for atom-pair lattices, 2 for the
      non-orthomodular hexagon)
    - every closed group element preserves joins, meets, and the complement
    - orbits partition; orbit times stabilizer equals group order
    - normalizers are subgroups; the quotient class map injectivity test
      matches hand-computed cases
    - the group file format round-trips
"""

from math import factorial

import pytest

from orthomeasure import (
    GroupTooLargeError,
    LatticeAutomorphism,
    NotAnAutomorphismError,
    atoms,
    automorphism_group,
    benzene,
    boolean,
    close_group,
    load_group,
    mo,
    normalizer,
    orbit_of,
    orbits,
    quotient_map_injective,
    save_group,
    stabilizer,
    trivial_action,
)
from orthomeasure.symmetry import generating_subset


def swap_blocks_mo2():
    lat = mo(2)
    return lat, LatticeAutomorphism.from_mapping(lat, {
        "0": "0", "1": "1",
        "a1": "a2", "a2": "a1", "a1'": "a2'", "a2'": "a1'",
    })


def test_automorphism_validation_rejects_bad_maps():
    lat = mo(2)
    with pytest.raises(NotAnAutomorphismError):
        LatticeAutomorphism.from_mapping(lat, {
            "0": "1", "1": "0",
            "a1": "a1", "a1'": "a1'", "a2": "a2", "a2'": "a2'",
        })
    with pytest.raises(NotAnAutomorphismError):
        # order-preserving bijection that breaks the orthocomplement
        LatticeAutomorphism.from_mapping(lat, {
            "0": "0", "1": "1",
            "a1": "a2", "a2": "a1'", "a1'": "a1", "a2'": "a2'",
        })
    with pytest.raises(NotAnAutomorphismError):
        LatticeAutomorphism.from_mapping(lat, {e: "0" for e in lat.elements})


def test_close_group_identity_only():
    lat = mo(2)
    action = close_group(lat, [LatticeAutomorphism.identity(lat)])
    assert action.order == 1


def test_close_group_single_swap():
    lat, swap = swap_blocks_mo2()
    assert close_group(lat, [swap]).order == 2


def test_close_group_full_mo2():
    lat = mo(2)
    swap_blocks = LatticeAutomorphism.from_mapping(lat, {
        "0": "0", "1": "1",
        "a1": "a2", "a2": "a1", "a1'": "a2'", "a2'": "a1'",
    })
    swap_in_1 = LatticeAutomorphism.from_mapping(lat, {
        "0": "0", "1": "1",
        "a1": "a1'", "a1'": "a1", "a2": "a2", "a2'": "a2'",
    })
    swap_in_2 = LatticeAutomorphism.from_mapping(lat, {
        "0": "0", "1": "1",
        "a1": "a1", "a1'": "a1'", "a2": "a2'", "a2'": "a2",
    })
    action = close_group(lat, [swap_blocks, swap_in_1, swap_in_2])
    assert action.order == 8


def test_close_group_cap():
    lat = mo(3)
    gens = list(automorphism_group(lat))
    with pytest.raises(GroupTooLargeError):
        close_group(lat, gens, max_group=10)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_automorphism_group_boolean(n, aut_groups):
    assert aut_groups[f"boolean({n})"].order == factorial(n)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_automorphism_group_mo(n, aut_groups):
    assert aut_groups[f"mo({n})"].order == 2 ** n * factorial(n)


def test_automorphism_group_benzene(aut_groups):
    action = aut_groups["benzene"]
    assert action.order == 2
    nontrivial = next(g for g in action if g.perm != tuple(range(6)))
    assert nontrivial("a") == "b'" and nontrivial("b") == "a'"


def test_group_elements_are_morphisms(family, aut_groups):
    for name in ("boolean(3)", "mo(3)", "benzene", "subspaces(F_3^2)"):
        lat = family[name]
        for g in aut_groups[name]:
            for x in lat.elements:
                assert g(lat.orthocomplement(x)) == lat.orthocomplement(g(x))
                for y in lat.elements:
                    assert g(lat.join(x, y)) == lat.join(g(x), g(y))
                    assert g(lat.meet(x, y)) == lat.meet(g(x), g(y))


def test_orbits_partition_and_orbit_stabilizer(family, aut_groups):
    for name, lat in family.items():
        action = aut_groups[name]
        seen = []
        for orb in orbits(action):
            seen.extend(orb.members)
            assert orb.representative == orb.members[0]
        assert sorted(seen) == sorted(lat.elements)
        for x in lat.elements:
            assert len(orbit_of(action, x)) * stabilizer(action, x).order == action.order


def test_trivial_action_orbits():
    lat = mo(2)
    action = trivial_action(lat)
    assert all(len(orb.members) == 1 for orb in orbits(action))
    assert quotient_map_injective(action, ["a1", "a2"])


def test_normalizer_mo2():
    lat = mo(2)
    action = automorphism_group(lat)
    norm = normalizer(action, ["a1"])
    assert norm.order == 2
    assert all(g("a1") == "a1" for g in norm)
    identity = tuple(range(len(lat)))
    assert identity in norm
    assert quotient_map_injective(action, ["a1"])


def test_normalizer_is_subgroup(aut_groups):
    action = aut_groups["mo(3)"]
    norm = normalizer(action, ["a1", "a1'"])
    perms = set(norm.perms)
    for p in norm.perms:
        for q in norm.perms:
            assert tuple(p[j] for j in q) in perms


def test_normalizer_boolean3_one_atom(aut_groups):
    action = aut_groups["boolean(3)"]
    first_atom = atoms(boolean(3))[0]
    norm = normalizer(action, [first_atom])
    assert norm.order == 2  # the two permutations of the remaining atoms
    assert orbit_of(action, first_atom) == atoms(boolean(3))


def test_quotient_map_not_injective_case():
    # under the 3-cycle on atoms, two atoms sit in one big orbit but in
    # distinct (singleton) normalizer classes
    lat = boolean(3)
    cycle = LatticeAutomorphism.from_mapping(lat, {
        "000": "000", "111": "111",
        "100": "010", "010": "001", "001": "100",
        "110": "011", "011": "101", "101": "110",
    })
    action = close_group(lat, [cycle])
    assert action.order == 3
    assert not quotient_map_injective(action, ["100", "010"])
    # the same set under the full group is a single normalizer class
    assert quotient_map_injective(automorphism_group(lat), ["100", "010"])


def test_group_file_round_trip(tmp_path):
    lat = mo(2)
    action = automorphism_group(lat)
    path = tmp_path / "group.json"
    save_group(action, path)
    again = load_group(path, lat)
    assert again.order == action.order
    assert set(again.perms) == set(action.perms)


def test_generating_subset_generates(aut_groups):
    action = aut_groups["mo(2)"]
    gens = generating_subset(action)
    assert close_group(action.lattice, gens).order == action.order
    assert len(gens) <= 3
