"""Finite orthocomplemented lattices: construction, validation, interrogation.

Elements are identified by strings; the element order given at construction
time is canonical and every scan, witness, and report iterates in that order.
Internally the order relation is kept as one bitmask row per element and the
meet/join tables are precomputed, so downstream exhaustive checks are cheap.

Instances are immutable after construction and safe to share between readers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import (
    BadOrthocomplementError,
    IsotropicFormError,
    NotALatticeError,
    NotAPartialOrderError,
    NotDistributiveError,
    SchemaError,
    SizeCapError,
)

DEFAULT_MAX_ELEMENTS = 4096


@dataclass(frozen=True)
class CheckResult:
    """Outcome of an exhaustive check; ``witness`` names the first failure."""

    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class VerificationReport:
    """Named sub-checks of the orthocomplemented-lattice axioms."""

    checks: dict[str, CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks.values())

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class LatticeDescription:
    """Ingestion form of a lattice: order pairs plus the complement map.

    ``leq_pairs`` may be any generating set of the order relation; the
    reflexive-transitive closure is computed by :func:`build_lattice`.
    """

    name: str
    elements: tuple[str, ...]
    leq_pairs: tuple[tuple[str, str], ...]
    orthocomplement: dict[str, str] = field(default_factory=dict)

    @classmethod
    def from_json_dict(cls, data: dict) -> "LatticeDescription":
        if not isinstance(data, dict):
            raise SchemaError("lattice file must contain a JSON object")
        allowed = {"name", "elements", "leq", "orthocomplement"}
        unknown = set(data) - allowed
        if unknown:
            raise SchemaError(f"unknown keys in lattice file: {sorted(unknown)}")
        for key in ("elements", "leq", "orthocomplement"):
            if key not in data:
                raise SchemaError(f"lattice file missing key {key!r}")
        elements = data["elements"]
        if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
            raise SchemaError("'elements' must be a list of strings")
        pairs = data["leq"]
        if not isinstance(pairs, list) or not all(
            isinstance(p, list) and len(p) == 2 and all(isinstance(x, str) for x in p)
            for p in pairs
        ):
            raise SchemaError("'leq' must be a list of [str, str] pairs")
        orth = data["orthocomplement"]
        if not isinstance(orth, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in orth.items()
        ):
            raise SchemaError("'orthocomplement' must map strings to strings")
        name = data.get("name", "")
        if not isinstance(name, str):
            raise SchemaError("'name' must be a string")
        return cls(name, tuple(elements), tuple((a, b) for a, b in pairs), dict(orth))

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "elements": list(self.elements),
            "leq": [[a, b] for a, b in self.leq_pairs],
            "orthocomplement": dict(self.orthocomplement),
        }


class OrthoLattice:
    """A validated finite orthocomplemented lattice.

    Use :func:`build_lattice` or one of the constructors below; the raw
    constructor assumes already-validated tables.  The index-level tables
    (`up_masks`, `down_masks`, `meet_table`, `join_table`, `orth_map`) are
    part of the API for sibling modules that run exhaustive scans.
    """

    __slots__ = (
        "name",
        "elements",
        "_index",
        "up_masks",
        "down_masks",
        "meet_table",
        "join_table",
        "orth_map",
        "bottom_index",
        "top_index",
    )

    def __init__(self, name, elements, up_masks, meet_table, join_table, orth_map,
                 bottom_index, top_index):
        self.name = name
        self.elements = tuple(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        self.up_masks = tuple(up_masks)
        self.down_masks = tuple(
            _transpose_masks(self.up_masks, len(self.elements))
        )
        self.meet_table = tuple(tuple(row) for row in meet_table)
        self.join_table = tuple(tuple(row) for row in join_table)
        self.orth_map = tuple(orth_map)
        self.bottom_index = bottom_index
        self.top_index = top_index

    # --- basic queries -------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __repr__(self) -> str:
        label = self.name or "lattice"
        return f"<OrthoLattice {label}: {len(self)} elements>"

    def index(self, name: str) -> int:
        return self._index[name]

    @property
    def bottom(self) -> str:
        return self.elements[self.bottom_index]

    @property
    def top(self) -> str:
        return self.elements[self.top_index]

    def leq(self, a: str, b: str) -> bool:
        return bool(self.up_masks[self._index[a]] >> self._index[b] & 1)

    def leq_index(self, i: int, j: int) -> bool:
        return bool(self.up_masks[i] >> j & 1)

    def meet(self, a: str, b: str) -> str:
        return self.elements[self.meet_table[self._index[a]][self._index[b]]]

    def join(self, a: str, b: str) -> str:
        return self.elements[self.join_table[self._index[a]][self._index[b]]]

    def orthocomplement(self, a: str) -> str:
        return self.elements[self.orth_map[self._index[a]]]

    def orthogonal(self, a: str, b: str) -> bool:
        """b <= a-orthocomplement."""
        i, j = self._index[a], self._index[b]
        return self.leq_index(j, self.orth_map[i])

    def join_all(self, names: Iterable[str]) -> str:
        idx = self.bottom_index
        for name in names:
            idx = self.join_table[idx][self._index[name]]
        return self.elements[idx]

    def atom_indices(self) -> list[int]:
        out = []
        bottom_bit = 1 << self.bottom_index
        for i in range(len(self.elements)):
            if i != self.bottom_index and self.down_masks[i] == bottom_bit | (1 << i):
                out.append(i)
        return out

    def cover_masks(self) -> list[int]:
        """covers[i] = bitmask of elements covering i."""
        n = len(self.elements)
        out = []
        for i in range(n):
            strict_up = self.up_masks[i] & ~(1 << i)
            mask = 0
            rest = strict_up
            while rest:
                j = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                if self.down_masks[j] & strict_up == 1 << j:
                    mask |= 1 << j
            out.append(mask)
        return out

    def to_description(self) -> LatticeDescription:
        """Export with the cover relation as the order generating set."""
        covers = self.cover_masks()
        pairs = []
        for i, mask in enumerate(covers):
            rest = mask
            while rest:
                j = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                pairs.append((self.elements[i], self.elements[j]))
        orth = {e: self.elements[self.orth_map[i]] for i, e in enumerate(self.elements)}
        return LatticeDescription(self.name, self.elements, tuple(pairs), orth)


def same_lattice(a: OrthoLattice, b: OrthoLattice) -> bool:
    """Structural equality: same elements, order, and orthocomplement."""
    return a is b or (
        a.elements == b.elements
        and a.up_masks == b.up_masks
        and a.orth_map == b.orth_map
    )


def _transpose_masks(up_masks, n):
    down = [0] * n
    for i, mask in enumerate(up_masks):
        rest = mask
        while rest:
            j = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            down[j] |= 1 << i
    return down


def build_lattice(desc: LatticeDescription, max_elements: int = DEFAULT_MAX_ELEMENTS) -> OrthoLattice:
    """Validate a description and construct the lattice.

    Computes the reflexive-transitive closure of the order pairs, fills the
    meet/join tables, locates bottom and top, and checks every
    orthocomplementation axiom.
    """
    elements = desc.elements
    n = len(elements)
    if n == 0:
        raise NotALatticeError("a lattice needs at least one element")
    if n > max_elements:
        raise SizeCapError(f"{n} elements exceeds the cap of {max_elements}")
    if len(set(elements)) != n:
        dup = next(e for e in elements if elements.count(e) > 1)
        raise SchemaError(f"duplicate element identifier {dup!r}")
    index = {e: i for i, e in enumerate(elements)}

    up = [1 << i for i in range(n)]
    for a, b in desc.leq_pairs:
        if a not in index or b not in index:
            missing = a if a not in index else b
            raise SchemaError(f"leq pair references unknown element {missing!r}")
        up[index[a]] |= 1 << index[b]
    # Warshall closure over bitmask rows
    for k in range(n):
        mk = up[k]
        bit = 1 << k
        for i in range(n):
            if up[i] & bit:
                up[i] |= mk
    for i in range(n):
        for j in range(i + 1, n):
            if up[i] >> j & 1 and up[j] >> i & 1:
                raise NotAPartialOrderError(
                    f"cycle: {elements[i]!r} <= {elements[j]!r} <= {elements[i]!r}"
                )

    down = _transpose_masks(up, n)
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            lb = down[i] & down[j]
            m = _bound_of(lb, down)
            if m is None:
                raise NotALatticeError(
                    f"{elements[i]!r} and {elements[j]!r} have no meet"
                )
            ub = up[i] & up[j]
            jn = _bound_of(ub, up)
            if jn is None:
                raise NotALatticeError(
                    f"{elements[i]!r} and {elements[j]!r} have no join"
                )
            meet[i][j] = meet[j][i] = m
            join[i][j] = join[j][i] = jn

    full = (1 << n) - 1
    bottom = next(i for i in range(n) if up[i] == full)
    top = next(i for i in range(n) if down[i] == full)

    orth = [None] * n
    for e in elements:
        img = desc.orthocomplement.get(e)
        if img is None:
            raise BadOrthocomplementError(f"no orthocomplement given for {e!r}")
        if img not in index:
            raise SchemaError(f"orthocomplement references unknown element {img!r}")
        orth[index[e]] = index[img]
    extra = set(desc.orthocomplement) - set(elements)
    if extra:
        raise SchemaError(f"orthocomplement keys not in elements: {sorted(extra)}")
    for i in range(n):
        if orth[orth[i]] != i:
            raise BadOrthocomplementError(
                f"involution fails at {elements[i]!r}"
            )
        if join[i][orth[i]] != top or meet[i][orth[i]] != bottom:
            raise BadOrthocomplementError(
                f"complement laws fail at {elements[i]!r}"
            )
    for i in range(n):
        for j in range(n):
            if up[i] >> j & 1 and not up[orth[j]] >> orth[i] & 1:
                raise BadOrthocomplementError(
                    f"order reversal fails on ({elements[i]!r}, {elements[j]!r})"
                )

    return OrthoLattice(desc.name, elements, up, meet, join, orth, bottom, top)


def _bound_of(candidate_mask, reach):
    """Element m in candidate_mask with reach[m] == candidate_mask, if any."""
    rest = candidate_mask
    while rest:
        m = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        if reach[m] == candidate_mask:
            return m
    return None


# --- file format --------------------------------------------------------------


def load_lattice(path, max_elements: int = DEFAULT_MAX_ELEMENTS) -> OrthoLattice:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON in {path}: {exc}") from exc
    return build_lattice(LatticeDescription.from_json_dict(data), max_elements)


def save_lattice(lattice: OrthoLattice, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(lattice.to_description().to_json_dict(), fh, indent=2)
        fh.write("\n")


# --- constructors ---------------------------------------------------------------


def boolean(n: int, max_elements: int = DEFAULT_MAX_ELEMENTS) -> OrthoLattice:
    """Power-set lattice of an n-point set; complement is set complement.

    Elements are named by membership bitstrings ("010" is the atom of point 1),
    ordered by (popcount, numeric value), so bottom comes first and top last.
    """
    if n < 1:
        raise ValueError("boolean lattice needs n >= 1")
    if n > 20 or 2 ** n > max_elements:
        raise SizeCapError(f"2^{n} elements exceeds the cap of {max_elements}")
    masks = sorted(range(2 ** n), key=lambda m: (m.bit_count(), m))
    full = 2 ** n - 1

    def name(mask):
        return "".join("1" if mask >> i & 1 else "0" for i in range(n))

    elements = tuple(name(m) for m in masks)
    pairs = []
    for a in masks:
        for b in masks:
            if a != b and a & b == a:
                pairs.append((name(a), name(b)))
    orth = {name(m): name(m ^ full) for m in masks}
    return build_lattice(
        LatticeDescription(f"boolean({n})", elements, tuple(pairs), orth),
        max_elements,
    )


def mo(n: int, max_elements: int = DEFAULT_MAX_ELEMENTS) -> OrthoLattice:
    """The lattice with n orthocomplementary atom pairs glued at 0 and 1.

    Orthomodular for every n; distributive only for n = 1.
    """
    if n < 1:
        raise ValueError("mo(n) needs n >= 1")
    if 2 * n + 2 > max_elements:
        raise SizeCapError(f"{2 * n + 2} elements exceeds the cap of {max_elements}")
    atoms = []
    for i in range(1, n + 1):
        atoms.extend([f"a{i}", f"a{i}'"])
    elements = ("0", *atoms, "1")
    pairs = [("0", a) for a in atoms] + [(a, "1") for a in atoms] + [("0", "1")]
    orth = {"0": "1", "1": "0"}
    for i in range(1, n + 1):
        orth[f"a{i}"] = f"a{i}'"
        orth[f"a{i}'"] = f"a{i}"
    return build_lattice(
        LatticeDescription(f"mo({n})", elements, tuple(pairs), orth), max_elements
    )


def benzene() -> OrthoLattice:
    """The 6-element orthocomplemented, non-orthomodular lattice.

    Two chains 0 < a < b < 1 and 0 < b' < a' < 1 with a' and b' the
    orthocomplements of a and b.
    """
    elements = ("0", "a", "b", "b'", "a'", "1")
    pairs = (
        ("0", "a"), ("a", "b"), ("b", "1"),
        ("0", "b'"), ("b'", "a'"), ("a'", "1"),
    )
    orth = {"0": "1", "1": "0", "a": "a'", "a'": "a", "b": "b'", "b'": "b"}
    return build_lattice(LatticeDescription("benzene", elements, pairs, orth))


def _ffield_inv(a: int, q: int) -> int:
    return pow(a, q - 2, q)


def _ffield_rref(rows: list[list[int]], q: int) -> list[tuple[int, ...]]:
    """Reduced row echelon form over the prime field F_q; zero rows dropped."""
    rows = [list(r) for r in rows]
    n = len(rows[0]) if rows else 0
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] % q), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = _ffield_inv(rows[r][c] % q, q)
        rows[r] = [(x * inv) % q for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % q:
                f = rows[i][c] % q
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[:r]]


def _span_vectors(basis: list[tuple[int, ...]], q: int, n: int) -> set[tuple[int, ...]]:
    vectors = {tuple([0] * n)}
    for row in basis:
        new = set()
        for v in vectors:
            for c in range(q):
                new.add(tuple((x + c * y) % q for x, y in zip(v, row)))
        vectors = new
    return vectors


def subspace_lattice(q: int, n: int, form: tuple[int, ...],
                     max_elements: int = DEFAULT_MAX_ELEMENTS) -> OrthoLattice:
    """Lattice of subspaces of F_q^n with the form-orthogonal complement.

    ``form`` lists the diagonal coefficients of the bilinear form.  The form
    must be anisotropic (no nonzero self-orthogonal vector), which is exactly
    what makes the orthogonality map a genuine orthocomplementation; this is
    checked exhaustively and violations raise IsotropicFormError.
    """
    if n < 1 or len(form) != n:
        raise ValueError("form must list one diagonal coefficient per dimension")
    if not _is_prime(q):
        raise ValueError(f"q={q} is not prime (prime fields only)")
    coeffs = [c % q for c in form]

    def pairing(u, v):
        return sum(c * a * b for c, a, b in zip(coeffs, u, v)) % q

    all_vectors = _all_vectors(q, n)
    for v in all_vectors:
        if any(v) and pairing(v, v) == 0:
            raise IsotropicFormError(f"isotropic vector {v} over F_{q}")

    # enumerate subspaces as row-echelon forms of spans of point subsets
    points = [v for v in all_vectors if _is_projective_rep(v, q)]
    from itertools import combinations

    subspaces = {(): ()}  # rref basis tuple -> basis
    for k in range(1, n + 1):
        for combo in combinations(points, k):
            rref = tuple(_ffield_rref([list(p) for p in combo], q))
            subspaces[rref] = rref
    ordered = sorted(subspaces, key=lambda b: (len(b), b))
    if len(ordered) > max_elements:
        raise SizeCapError(f"{len(ordered)} subspaces exceeds the cap")

    def sub_name(basis):
        if not basis:
            return "0"
        if len(basis) == n:
            return "1"
        return "<" + "; ".join(",".join(str(x) for x in row) for row in basis) + ">"

    span_cache = {b: _span_vectors(list(b), q, n) for b in ordered}
    names = {b: sub_name(b) for b in ordered}
    pairs = []
    for a in ordered:
        for b in ordered:
            if a != b and span_cache[a] <= span_cache[b]:
                pairs.append((names[a], names[b]))
    orth = {}
    for b in ordered:
        perp = [v for v in all_vectors if all(pairing(v, u) == 0 for u in span_cache[b])]
        perp_rref = tuple(_ffield_rref([list(v) for v in perp if any(v)], q))
        orth[names[b]] = names[perp_rref]
    desc = LatticeDescription(
        f"subspaces(F_{q}^{n})",
        tuple(names[b] for b in ordered),
        tuple(pairs),
        orth,
    )
    return build_lattice(desc, max_elements)


def _all_vectors(q, n):
    vectors = [()]
    for _ in range(n):
        vectors = [v + (c,) for v in vectors for c in range(q)]
    return vectors


def _is_projective_rep(v, q):
    first = next((x for x in v if x), None)
    return first == 1


def _is_prime(q):
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def product(a: OrthoLattice, b: OrthoLattice,
            max_elements: int = DEFAULT_MAX_ELEMENTS) -> OrthoLattice:
    """Componentwise product lattice; elements are named "(x,y)"."""
    if len(a) * len(b) > max_elements:
        raise SizeCapError("product exceeds the element cap")
    names = {}
    for x in a.elements:
        for y in b.elements:
            names[(x, y)] = f"({x},{y})"
    pairs = []
    for (x1, y1), n1 in names.items():
        for (x2, y2), n2 in names.items():
            if n1 != n2 and a.leq(x1, x2) and b.leq(y1, y2):
                pairs.append((n1, n2))
    orth = {
        name: names[(a.orthocomplement(x), b.orthocomplement(y))]
        for (x, y), name in names.items()
    }
    desc = LatticeDescription(
        f"product({a.name},{b.name})",
        tuple(names.values()),
        tuple(pairs),
        orth,
    )
    return build_lattice(desc, max_elements)


def horizontal_sum(a: OrthoLattice, b: OrthoLattice,
                   max_elements: int = DEFAULT_MAX_ELEMENTS) -> OrthoLattice:
    """Glue two orthocomplemented lattices at a shared bottom and top.

    Proper elements keep their own order and orthocomplement and are
    incomparable across the two summands.
    """
    proper_a = [e for e in a.elements if e not in (a.bottom, a.top)]
    proper_b = [e for e in b.elements if e not in (b.bottom, b.top)]
    if len(proper_a) + len(proper_b) + 2 > max_elements:
        raise SizeCapError("horizontal sum exceeds the element cap")
    name_a = {e: f"a:{e}" for e in proper_a}
    name_b = {e: f"b:{e}" for e in proper_b}
    elements = ("0", *name_a.values(), *name_b.values(), "1")
    pairs = [("0", "1")]
    for side, names, lat in (("a", name_a, a), ("b", name_b, b)):
        for e in names:
            pairs.append(("0", names[e]))
            pairs.append((names[e], "1"))
        for e in names:
            for f in names:
                if e != f and lat.leq(e, f):
                    pairs.append((names[e], names[f]))
    orth = {"0": "1", "1": "0"}
    for names, lat in ((name_a, a), (name_b, b)):
        for e in names:
            image = lat.orthocomplement(e)
            orth[names[e]] = "0" if image == lat.bottom else (
                "1" if image == lat.top else names[image]
            )
    desc = LatticeDescription(
        f"hsum({a.name},{b.name})", elements, tuple(pairs), orth
    )
    return build_lattice(desc, max_elements)


# --- verification and classification -------------------------------------------


def verify_ortho(lattice: OrthoLattice) -> VerificationReport:
    """Exhaustively re-verify every orthocomplemented-lattice axiom."""
    n = len(lattice)
    elements = lattice.elements
    up, down = lattice.up_masks, lattice.down_masks
    orth = lattice.orth_map
    checks: dict[str, CheckResult] = {}

    witness = None
    for i in range(n):
        if not up[i] >> i & 1:
            witness = (elements[i],)
            break
        rest = up[i]
        while rest and witness is None:
            j = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if up[i] | up[j] != up[i]:
                witness = (elements[i], elements[j])
            if i != j and up[j] >> i & 1:
                witness = (elements[i], elements[j])
        if witness:
            break
    checks["partial_order"] = CheckResult(witness is None, witness)

    witness = None
    full = (1 << n) - 1
    if up[lattice.bottom_index] != full or down[lattice.top_index] != full:
        witness = (lattice.bottom, lattice.top)
    checks["bounds"] = CheckResult(witness is None, witness)

    witness = None
    for i in range(n):
        for j in range(n):
            lb = down[i] & down[j]
            if down[lattice.meet_table[i][j]] != lb:
                witness = ("meet", elements[i], elements[j])
                break
            ub = up[i] & up[j]
            if up[lattice.join_table[i][j]] != ub:
                witness = ("join", elements[i], elements[j])
                break
        if witness:
            break
    checks["meet_join_tables"] = CheckResult(witness is None, witness)

    witness = next(
        ((elements[i],) for i in range(n) if orth[orth[i]] != i), None
    )
    checks["involution"] = CheckResult(witness is None, witness)

    witness = None
    for i in range(n):
        if (lattice.join_table[i][orth[i]] != lattice.top_index
                or lattice.meet_table[i][orth[i]] != lattice.bottom_index):
            witness = (elements[i],)
            break
    checks["complement"] = CheckResult(witness is None, witness)

    witness = None
    for i in range(n):
        rest = up[i]
        while rest:
            j = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if not up[orth[j]] >> orth[i] & 1:
                witness = (elements[i], elements[j])
                break
        if witness:
            break
    checks["order_reversal"] = CheckResult(witness is None, witness)

    witness = None
    for i in range(n):
        for j in range(n):
            if orth[lattice.join_table[i][j]] != lattice.meet_table[orth[i]][orth[j]]:
                witness = (elements[i], elements[j])
                break
        if witness:
            break
    checks["de_morgan"] = CheckResult(witness is None, witness)

    return VerificationReport(checks)


def is_orthomodular(lattice: OrthoLattice) -> CheckResult:
    """a <= b implies a v (a' ^ b) == b; witness is the first failing pair."""
    n = len(lattice)
    orth, meet, join = lattice.orth_map, lattice.meet_table, lattice.join_table
    for i in range(n):
        rest = lattice.up_masks[i]
        while rest:
            j = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if join[i][meet[orth[i]][j]] != j:
                return CheckResult(False, (lattice.elements[i], lattice.elements[j]))
    return CheckResult(True)


def is_distributive(lattice: OrthoLattice) -> CheckResult:
    """Both distributive laws over all triples; witness is the first failure."""
    n = len(lattice)
    meet, join = lattice.meet_table, lattice.join_table
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if join[x][meet[y][z]] != meet[join[x][y]][join[x][z]]:
                    return CheckResult(
                        False,
                        (lattice.elements[x], lattice.elements[y], lattice.elements[z]),
                    )
                if meet[x][join[y][z]] != join[meet[x][y]][meet[x][z]]:
                    return CheckResult(
                        False,
                        (lattice.elements[x], lattice.elements[y], lattice.elements[z]),
                    )
    return CheckResult(True)


def is_boolean(lattice: OrthoLattice) -> bool:
    """Complemented (by construction) and distributive."""
    return is_distributive(lattice).ok


def atoms(lattice: OrthoLattice) -> tuple[str, ...]:
    """Covers of the bottom element, in canonical order."""
    return tuple(lattice.elements[i] for i in lattice.atom_indices())


def is_atomistic(lattice: OrthoLattice) -> CheckResult:
    """Every element is the join of the atoms below it."""
    atom_idx = lattice.atom_indices()
    for i, e in enumerate(lattice.elements):
        below = [lattice.elements[a] for a in atom_idx if lattice.down_masks[i] >> a & 1]
        if lattice.join_all(below) != e:
            return CheckResult(False, (e,))
    return CheckResult(True)


def atom_split_check(lattice: OrthoLattice) -> CheckResult:
    """On a distributive lattice an atom below a join is below one part.

    Verifies z <= a v b iff (z <= a or z <= b) for every atom z and every
    pair; raises NotDistributiveError on non-distributive input.
    """
    dist = is_distributive(lattice)
    if not dist.ok:
        raise NotDistributiveError(f"witness {dist.witness}")
    n = len(lattice)
    join = lattice.join_table
    for z in lattice.atom_indices():
        zu = lattice.up_masks[z]
        for a in range(n):
            for b in range(n):
                lhs = bool(zu >> join[a][b] & 1)
                rhs = bool(zu >> a & 1 or zu >> b & 1)
                if lhs != rhs:
                    return CheckResult(
                        False,
                        (lattice.elements[z], lattice.elements[a], lattice.elements[b]),
                    )
    return CheckResult(True)


def orthogonal_pairs(lattice: OrthoLattice) -> list[tuple[str, str]]:
    """Unordered orthogonal pairs {x, y} with y <= x', in canonical order.

    Includes ("0", "0"): bottom is the only self-orthogonal element, since
    a <= a' forces a == a ^ a' == 0.
    """
    n = len(lattice)
    out = []
    for i in range(n):
        for j in range(i, n):
            if lattice.leq_index(j, lattice.orth_map[i]):
                out.append((lattice.elements[i], lattice.elements[j]))
    return out


# --- isomorphism search ---------------------------------------------------------


def _signatures(lattice: OrthoLattice) -> list[tuple]:
    covers = lattice.cover_masks()
    cover_down = _transpose_masks(covers, len(lattice))
    sigs = []
    for i in range(len(lattice)):
        sigs.append(
            (
                lattice.down_masks[i].bit_count(),
                lattice.up_masks[i].bit_count(),
                cover_down[i].bit_count(),
                covers[i].bit_count(),
                lattice.down_masks[lattice.orth_map[i]].bit_count(),
            )
        )
    return sigs


def iter_isomorphisms(src: OrthoLattice, dst: OrthoLattice) -> Iterator[tuple[int, ...]]:
    """All order- and orthocomplement-preserving bijections src -> dst.

    Yields index permutations: position i holds the dst index of src element
    i.  Backtracks over candidate images filtered by degree/height signatures
    and pruned by orthocomplement compatibility; exponential in the worst
    case, fine at desk scale.
    """
    n = len(src)
    if len(dst) != n:
        return
    sig_src = _signatures(src)
    sig_dst = _signatures(dst)
    if sorted(sig_src) != sorted(sig_dst):
        return
    buckets: dict[tuple, list[int]] = {}
    for j, s in enumerate(sig_dst):
        buckets.setdefault(s, []).append(j)
    order = sorted(range(n), key=lambda i: (sig_src[i][0], i))
    img = [-1] * n
    used = [False] * n

    def extend(k: int) -> Iterator[tuple[int, ...]]:
        if k == n:
            yield tuple(img)
            return
        i = order[k]
        oi = src.orth_map[i]
        if img[oi] >= 0:
            candidates = [dst.orth_map[img[oi]]]
        else:
            candidates = buckets.get(sig_src[i], ())
        for j in candidates:
            if used[j] or sig_dst[j] != sig_src[i]:
                continue
            ok = True
            for kk in range(k):
                a = order[kk]
                b = img[a]
                if (src.leq_index(i, a) != dst.leq_index(j, b)
                        or src.leq_index(a, i) != dst.leq_index(b, j)):
                    ok = False
                    break
            if not ok:
                continue
            img[i] = j
            used[j] = True
            yield from extend(k + 1)
            img[i] = -1
            used[j] = False

    yield from extend(0)


def find_isomorphism(a: OrthoLattice, b: OrthoLattice) -> dict[str, str] | None:
    """An explicit isomorphism as an element map, or None."""
    for perm in iter_isomorphisms(a, b):
        return {a.elements[i]: b.elements[j] for i, j in enumerate(perm)}
    return None


def are_isomorphic(a: OrthoLattice, b: OrthoLattice) -> bool:
    return find_isomorphism(a, b) is not None
