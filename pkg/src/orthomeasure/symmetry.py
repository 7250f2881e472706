"""Finite groups acting on a lattice by orthocomplementation-preserving
automorphisms: closure, orbits, stabilizers, normalizers.

Groups are stored by full element enumeration (permutations of the element
indices); normalizers and the coinvariant relations downstream need all
elements, and desk-scale lattices keep the groups small.  Everything is
immutable after closure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import GroupTooLargeError, NotAnAutomorphismError, SchemaError
from .lattice import OrthoLattice, iter_isomorphisms

DEFAULT_MAX_GROUP = 100_000

Perm = tuple[int, ...]


class LatticeAutomorphism:
    """A bijective element map preserving order both ways and the
    orthocomplement (hence bottom, top, meets and joins)."""

    __slots__ = ("lattice", "perm")

    def __init__(self, lattice: OrthoLattice, perm: Perm, _checked: bool = False):
        self.lattice = lattice
        self.perm = tuple(perm)
        if not _checked:
            _validate_automorphism(lattice, self.perm)

    @classmethod
    def from_mapping(cls, lattice: OrthoLattice, mapping: dict[str, str]) -> "LatticeAutomorphism":
        if set(mapping) != set(lattice.elements):
            raise NotAnAutomorphismError("mapping must cover every element exactly once")
        perm = tuple(lattice.index(mapping[e]) for e in lattice.elements)
        return cls(lattice, perm)

    @classmethod
    def identity(cls, lattice: OrthoLattice) -> "LatticeAutomorphism":
        return cls(lattice, tuple(range(len(lattice))), _checked=True)

    def __call__(self, name: str) -> str:
        return self.lattice.elements[self.perm[self.lattice.index(name)]]

    def compose(self, other: "LatticeAutomorphism") -> "LatticeAutomorphism":
        """self after other."""
        return LatticeAutomorphism(
            self.lattice, tuple(self.perm[j] for j in other.perm), _checked=True
        )

    def inverse(self) -> "LatticeAutomorphism":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return LatticeAutomorphism(self.lattice, tuple(inv), _checked=True)

    @property
    def mapping(self) -> dict[str, str]:
        return {
            e: self.lattice.elements[self.perm[i]]
            for i, e in enumerate(self.lattice.elements)
        }

    def __eq__(self, other):
        return (
            isinstance(other, LatticeAutomorphism)
            and self.lattice is other.lattice
            and self.perm == other.perm
        )

    def __hash__(self):
        return hash((id(self.lattice), self.perm))

    def __repr__(self):
        return f"<LatticeAutomorphism {self.mapping}>"


def _validate_automorphism(lattice: OrthoLattice, perm: Perm) -> None:
    n = len(lattice)
    if sorted(perm) != list(range(n)):
        raise NotAnAutomorphismError("element map is not a bijection")
    for i in range(n):
        for j in range(n):
            if lattice.leq_index(i, j) != lattice.leq_index(perm[i], perm[j]):
                raise NotAnAutomorphismError(
                    "order not preserved on "
                    f"({lattice.elements[i]!r}, {lattice.elements[j]!r})"
                )
    for i in range(n):
        if perm[lattice.orth_map[i]] != lattice.orth_map[perm[i]]:
            raise NotAnAutomorphismError(
                f"orthocomplement not preserved at {lattice.elements[i]!r}"
            )


@dataclass(frozen=True)
class Orbit:
    representative: str
    members: tuple[str, ...]


class GroupAction:
    """A finite group of lattice automorphisms, closed under composition
    and inverse, with the identity present."""

    __slots__ = ("lattice", "generators", "perms", "_perm_set")

    def __init__(self, lattice: OrthoLattice, generators: Sequence[LatticeAutomorphism],
                 perms: Sequence[Perm]):
        self.lattice = lattice
        self.generators = tuple(generators)
        self.perms = tuple(sorted(perms))
        self._perm_set = frozenset(self.perms)

    @property
    def order(self) -> int:
        return len(self.perms)

    def __len__(self) -> int:
        return len(self.perms)

    def __iter__(self) -> Iterator[LatticeAutomorphism]:
        for p in self.perms:
            yield LatticeAutomorphism(self.lattice, p, _checked=True)

    def __contains__(self, item) -> bool:
        perm = item.perm if isinstance(item, LatticeAutomorphism) else tuple(item)
        return perm in self._perm_set

    def apply(self, perm: Perm, name: str) -> str:
        return self.lattice.elements[perm[self.lattice.index(name)]]

    def __repr__(self):
        return f"<GroupAction of order {self.order} on {self.lattice!r}>"


def close_group(lattice: OrthoLattice, generators: Iterable[LatticeAutomorphism],
                max_group: int = DEFAULT_MAX_GROUP) -> GroupAction:
    """Breadth-first closure of the generators under composition.

    Inverses come for free: the closure of a finite set of permutations
    under composition is already a group.
    """
    gens = list(generators)
    for g in gens:
        if g.lattice is not lattice:
            raise NotAnAutomorphismError("generator defined on a different lattice")
    identity = tuple(range(len(lattice)))
    seen = {identity}
    frontier = [identity]
    gen_perms = [g.perm for g in gens]
    while frontier:
        new = []
        for p in frontier:
            for g in gen_perms:
                q = tuple(g[j] for j in p)
                if q not in seen:
                    seen.add(q)
                    new.append(q)
                    if len(seen) > max_group:
                        raise GroupTooLargeError(
                            f"closure exceeds the cap of {max_group}"
                        )
        frontier = new
    return GroupAction(lattice, gens, sorted(seen))


def automorphism_group(lattice: OrthoLattice,
                       max_group: int = DEFAULT_MAX_GROUP) -> GroupAction:
    """The full group of orthocomplement-preserving lattice automorphisms,
    found by backtracking over element images."""
    perms = []
    for perm in iter_isomorphisms(lattice, lattice):
        perms.append(perm)
        if len(perms) > max_group:
            raise GroupTooLargeError(f"automorphism group exceeds {max_group}")
    perms.sort()
    gens = [LatticeAutomorphism(lattice, p, _checked=True) for p in perms]
    return GroupAction(lattice, gens, perms)


def trivial_action(lattice: OrthoLattice) -> GroupAction:
    identity = LatticeAutomorphism.identity(lattice)
    return GroupAction(lattice, (identity,), (identity.perm,))


def orbits(action: GroupAction, subset: Iterable[str] | None = None) -> list[Orbit]:
    """Orbit partition of the subset (default: all elements), canonical order."""
    lattice = action.lattice
    pool = list(subset) if subset is not None else list(lattice.elements)
    pool_idx = sorted({lattice.index(e) for e in pool})
    seen: set[int] = set()
    out = []
    for i in pool_idx:
        if i in seen:
            continue
        members = sorted({p[i] for p in action.perms})
        seen.update(members)
        out.append(
            Orbit(lattice.elements[i], tuple(lattice.elements[m] for m in members))
        )
    return out


def orbit_of(action: GroupAction, name: str) -> tuple[str, ...]:
    i = action.lattice.index(name)
    members = sorted({p[i] for p in action.perms})
    return tuple(action.lattice.elements[m] for m in members)


def stabilizer(action: GroupAction, name: str) -> GroupAction:
    i = action.lattice.index(name)
    perms = [p for p in action.perms if p[i] == i]
    gens = [LatticeAutomorphism(action.lattice, p, _checked=True) for p in perms]
    return GroupAction(action.lattice, gens, perms)


def normalizer(action: GroupAction, members: Iterable[str]) -> GroupAction:
    """Subgroup of elements mapping the set onto itself."""
    lattice = action.lattice
    target = {lattice.index(e) for e in members}
    perms = [p for p in action.perms if {p[i] for i in target} == target]
    gens = [LatticeAutomorphism(lattice, p, _checked=True) for p in perms]
    return GroupAction(lattice, gens, perms)


def quotient_map_injective(action: GroupAction, members: Iterable[str]) -> bool:
    """Distinct normalizer orbits inside the set land in distinct full orbits."""
    members = list(members)
    norm = normalizer(action, members)
    seen: dict[frozenset, frozenset] = {}
    for orb in orbits(norm, members):
        big = frozenset(orbit_of(action, orb.representative))
        small = frozenset(orb.members)
        if big in seen and seen[big] != small:
            return False
        seen[big] = small
    return True


def generating_subset(action: GroupAction) -> list[LatticeAutomorphism]:
    """A small (greedy) generating set, for compact reports."""
    identity = tuple(range(len(action.lattice)))
    have = {identity}
    gens: list[LatticeAutomorphism] = []
    for p in action.perms:
        if p in have:
            continue
        gens.append(LatticeAutomorphism(action.lattice, p, _checked=True))
        have = set(
            close_group(action.lattice, gens, max_group=len(action.perms)).perms
        )
        if len(have) == action.order:
            break
    return gens


# --- file format -----------------------------------------------------------------


def load_group(path, lattice: OrthoLattice,
               max_group: int = DEFAULT_MAX_GROUP) -> GroupAction:
    """Read {"generators": [{elem: elem, ...}, ...]} and close it."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(data, dict) or set(data) != {"generators"}:
        raise SchemaError('group file must be {"generators": [...]}')
    raw = data["generators"]
    if not isinstance(raw, list) or not all(isinstance(g, dict) for g in raw):
        raise SchemaError("'generators' must be a list of element maps")
    gens = [LatticeAutomorphism.from_mapping(lattice, g) for g in raw]
    return close_group(lattice, gens, max_group)


def save_group(action: GroupAction, path) -> None:
    data = {"generators": [g.mapping for g in generating_subset(action)]}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")
