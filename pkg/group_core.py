"""
Finite group arithmetic on dense element indices.

Groups are stored as Cayley tables over the indices 0..n-1 with element 0 the
identity. Builtin families, Cayley-table files, conjugacy classes, centralizers
and the simultaneous-conjugation orbits of commuting pairs live here.
"""

import hashlib
import itertools
import logging
import os
import re
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

DEFAULT_MAX_ORDER = 64


class GroupSpecError(ValueError):
    """Raised for an unknown family, malformed spec string or unreadable file."""


class GroupAxiomError(ValueError):
    """Raised when a multiplication table fails a group axiom."""


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """
    A finite group given by its Cayley table.

    Attributes:
        cayley: n x n integer array, entry (i, j) is the index of i*j
        identity: index of the identity (always 0 for validated groups)
        inverse: length-n integer array of inverses
        name: display string
    """
    cayley: np.ndarray
    identity: int
    inverse: np.ndarray
    name: str = "G"

    @property
    def order(self) -> int:
        return int(self.cayley.shape[0])

    @property
    def key(self) -> str:
        """SHA256 of the table, used to compare groups and as a cache key."""
        return hashlib.sha256(np.ascontiguousarray(self.cayley, dtype=np.int64).tobytes()).hexdigest()

    def mul(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conjugate(self, x: int, g: int) -> int:
        """Return x g x^-1."""
        return int(self.cayley[self.cayley[x, g], self.inverse[x]])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        result = self.identity
        for _ in range(k):
            result = self.mul(result, a)
        return result

    def element_order(self, a: int) -> int:
        k, current = 1, a
        while current != self.identity:
            current = self.mul(current, a)
            k += 1
        return k

    def commute(self, a: int, b: int) -> bool:
        return self.cayley[a, b] == self.cayley[b, a]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.cayley, self.cayley.T))

    def same_group(self, other: "FiniteGroup") -> bool:
        return self is other or (self.order == other.order and self.key == other.key)

    def __repr__(self):
        return f"FiniteGroup(name={self.name!r}, order={self.order})"


@dataclass
class ValidationReport:
    """Outcome of validate_group; failures hold (axiom, witness) pairs."""
    failures: List[Tuple[str, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def add(self, axiom: str, witness: str):
        self.failures.append((axiom, witness))

    def to_dict(self) -> Dict:
        return {
            "pass": self.passed,
            "failures": [{"axiom": a, "witness": w} for a, w in self.failures],
        }


def validate_group(table) -> ValidationReport:
    """
    Check the group axioms on a square integer table.

    Only the first witness per axiom is recorded; associativity is skipped
    when the table is not a Latin square, since the other failures already
    explain the problem.

    Args:
        table: square array-like of element indices

    Returns:
        ValidationReport listing violated axioms with witnesses
    """
    report = ValidationReport()
    t = np.asarray(table)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        report.add("shape", f"table has shape {t.shape}, expected non-empty square")
        return report
    n = t.shape[0]
    if not np.issubdtype(t.dtype, np.integer):
        report.add("entries", "table entries are not integers")
        return report
    if t.min() < 0 or t.max() >= n:
        bad = np.argwhere((t < 0) | (t >= n))[0]
        report.add("entries", f"entry ({bad[0]},{bad[1]}) = {t[bad[0], bad[1]]} out of range 0..{n - 1}")
        return report

    full = np.arange(n)
    latin = True
    for i in range(n):
        if not np.array_equal(np.sort(t[i]), full):
            report.add("latin-rows", f"row {i} not a permutation")
            latin = False
            break
    for j in range(n):
        if not np.array_equal(np.sort(t[:, j]), full):
            report.add("latin-columns", f"column {j} not a permutation")
            latin = False
            break

    identity = _find_identity(t)
    if identity is None:
        report.add("identity", "no element e with e*j = j*e = j for all j")
    else:
        for i in range(n):
            if not np.any((t[i] == identity) & (t[:, i] == identity)):
                report.add("inverse", f"element {i} has no two-sided inverse")
                break

    if latin:
        # (i*j)*k against i*(j*k) for every triple, vectorized over k
        for i in range(n):
            lhs = t[t[i]]            # lhs[j, k] = (i*j)*k
            rhs = t[i][t]            # rhs[j, k] = i*(j*k)
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                j, k = bad[0]
                report.add("associativity", f"({i}*{j})*{k} = {lhs[j, k]} but {i}*({j}*{k}) = {rhs[j, k]}")
                break
    return report


def _find_identity(t: np.ndarray) -> Optional[int]:
    n = t.shape[0]
    full = np.arange(n)
    for e in range(n):
        if np.array_equal(t[e], full) and np.array_equal(t[:, e], full):
            return e
    return None


def group_from_table(table, name: str = "G", max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """
    Validate a Cayley table and return a FiniteGroup with identity at index 0.

    The table is re-indexed if its identity is not element 0; the remaining
    elements keep their relative order.

    Raises:
        GroupAxiomError: if any axiom fails (message names the first witness)
        GroupSpecError: if the order exceeds max_order
    """
    t = np.asarray(table)
    report = validate_group(t)
    if not report.passed:
        axiom, witness = report.failures[0]
        raise GroupAxiomError(f"{axiom}: {witness}")
    n = t.shape[0]
    if n > max_order:
        raise GroupSpecError(f"group order {n} exceeds the configured limit {max_order}")

    e = _find_identity(t)
    if e != 0:
        logger.debug(f"Re-indexing table of {name}: identity found at {e}")
        order = [e] + [i for i in range(n) if i != e]
        position = np.empty(n, dtype=np.int64)
        position[order] = np.arange(n)
        t = position[t[np.ix_(order, order)]]

    t = np.ascontiguousarray(t, dtype=np.int64)
    t.setflags(write=False)
    inverse = np.argmin(t, axis=1).astype(np.int64)  # column holding 0 in each row
    inverse.setflags(write=False)
    return FiniteGroup(cayley=t, identity=0, inverse=inverse, name=name)


def group_from_elements(elements: Sequence, mul: Callable, name: str) -> FiniteGroup:
    """Build a group from hashable elements (identity first) and a product function."""
    index = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[mul(a, b)]
    return group_from_table(table, name=name)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupSpecError(f"cyclic group needs n >= 1, got {n}")
    return group_from_elements(list(range(n)), lambda a, b: (a + b) % n, f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n; elements r^k s^e as (k, e)."""
    if n < 1:
        raise GroupSpecError(f"dihedral group needs n >= 1, got {n}")
    elements = [(k, e) for e in (0, 1) for k in range(n)]

    def mul(a, b):
        k1, e1 = a
        k2, e2 = b
        return ((k1 + (-k2 if e1 else k2)) % n, (e1 + e2) % 2)

    return group_from_elements(elements, mul, f"D{n}")


def symmetric(n: int) -> FiniteGroup:
    """Symmetric group on n points; permutations in lexicographic order, (p*q)(i) = p(q(i))."""
    if not 1 <= n <= 5:
        raise GroupSpecError(f"symmetric groups are supported for 1 <= n <= 5, got {n}")
    elements = list(itertools.permutations(range(n)))
    return group_from_elements(elements, lambda p, q: tuple(p[q[i]] for i in range(n)), f"S{n}")


def _parity(p: Tuple[int, ...]) -> int:
    inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inversions % 2


def alternating(n: int) -> FiniteGroup:
    if n != 4:
        raise GroupSpecError(f"only alternating(4) is builtin, got alternating({n})")
    elements = [p for p in itertools.permutations(range(n)) if _parity(p) == 0]
    return group_from_elements(elements, lambda p, q: tuple(p[q[i]] for i in range(n)), f"A{n}")


# unit products for {1, i, j, k} as (sign flip, unit)
_QUAT = {
    (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
    (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
    (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
    (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
}


def quaternion8() -> FiniteGroup:
    elements = [(s, u) for s in (0, 1) for u in range(4)]

    def mul(a, b):
        flip, unit = _QUAT[(a[1], b[1])]
        return ((a[0] + b[0] + flip) % 2, unit)

    return group_from_elements(elements, mul, "Q8")


def direct_product(first: FiniteGroup, second: FiniteGroup) -> FiniteGroup:
    elements = [(a, b) for a in range(first.order) for b in range(second.order)]
    return group_from_elements(
        elements,
        lambda x, y: (first.mul(x[0], y[0]), second.mul(x[1], y[1])),
        f"{first.name}x{second.name}",
    )


def load_cayley_file(path: str, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """
    Load a Cayley-table text file: first line n, then n rows of n indices.

    Raises:
        GroupSpecError: missing file or malformed contents
        GroupAxiomError: the table is not a group
    """
    if not os.path.exists(path):
        raise GroupSpecError(f"Cayley file not found: {path}")
    with open(path, 'r', encoding='utf-8') as f:
        lines = [line.strip() for line in f if line.strip() and not line.startswith('#')]
    if not lines:
        raise GroupSpecError(f"Cayley file is empty: {path}")
    try:
        n = int(lines[0])
        rows = [[int(tok) for tok in line.split()] for line in lines[1:]]
    except ValueError as e:
        raise GroupSpecError(f"malformed Cayley file {path}: {e}") from e
    if n < 1 or len(rows) != n or any(len(r) != n for r in rows):
        raise GroupSpecError(f"malformed Cayley file {path}: expected {n} rows of {n} integers")
    name = os.path.splitext(os.path.basename(path))[0]
    return group_from_table(np.array(rows, dtype=np.int64), name=name, max_order=max_order)


def save_cayley_file(group: FiniteGroup, path: str) -> str:
    with open(path, 'w', encoding='utf-8') as f:
        f.write(f"{group.order}\n")
        for row in group.cayley:
            f.write(" ".join(str(int(x)) for x in row) + "\n")
    return path


_ALIASES = {
    "q8": lambda: quaternion8(),
    "quaternion8": lambda: quaternion8(),
    "a4": lambda: alternating(4),
    "c1": lambda: cyclic(1),
}


def _split_top_level(body: str) -> List[str]:
    parts, depth, current = [], 0, []
    for ch in body:
        if ch == ',' and depth == 0:
            parts.append(''.join(current))
            current = []
            continue
        depth += ch == '('
        depth -= ch == ')'
        current.append(ch)
    parts.append(''.join(current))
    return [p.strip() for p in parts]


def build_group(spec: str, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """
    Build a validated group from a spec string.

    Accepted forms: ``cyclic:n``, ``dihedral:n``, ``sym:n``, ``alt:4``, ``q8``,
    ``prod(spec,spec)``, ``file:path``; the call forms ``cyclic(n)``,
    ``symmetric(n)`` etc. and the short names ``C4``, ``D4``, ``S3``, ``A4``,
    ``Q8`` are accepted as well.

    Raises:
        GroupSpecError: unknown family or malformed spec
        GroupAxiomError: a file table failing an axiom
    """
    text = spec.strip()
    if text.startswith("file:"):
        return load_cayley_file(text[len("file:"):], max_order=max_order)

    lowered = text.lower()
    if lowered in _ALIASES:
        group = _ALIASES[lowered]()
        return _check_order(group, max_order)

    m = re.fullmatch(r'(prod|direct_product)\((.*)\)', lowered)
    if m:
        parts = _split_top_level(text[text.index('(') + 1:-1])
        if len(parts) != 2:
            raise GroupSpecError(f"prod needs exactly two factors: {spec}")
        group = direct_product(build_group(parts[0], max_order), build_group(parts[1], max_order))
        return _check_order(group, max_order)

    m = (re.fullmatch(r'([a-z]+)\s*[:(]\s*(\d+)\s*\)?', lowered)
         or re.fullmatch(r'([csda])(\d+)', lowered))
    if not m:
        raise GroupSpecError(f"unrecognized group spec: {spec}")
    family, n = m.group(1), int(m.group(2))
    builders = {
        "cyclic": cyclic, "c": cyclic,
        "dihedral": dihedral, "d": dihedral,
        "sym": symmetric, "symmetric": symmetric, "s": symmetric,
        "alt": alternating, "alternating": alternating, "a": alternating,
    }
    if family not in builders:
        raise GroupSpecError(f"unknown group family '{family}' in spec: {spec}")
    return _check_order(builders[family](n), max_order)


def _check_order(group: FiniteGroup, max_order: int) -> FiniteGroup:
    if group.order > max_order:
        raise GroupSpecError(f"group order {group.order} exceeds the configured limit {max_order}")
    return group


BUILTIN_SPECS = ["cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "prod(cyclic:2,cyclic:2)",
                 "sym:3", "dihedral:4", "q8", "alt:4", "dihedral:6", "sym:4"]


def subgroup_from_elements(group: FiniteGroup, elements: Sequence[int], name: str) -> FiniteGroup:
    """Embed a subgroup given by a sorted element list (identity first) as its own group."""
    position = {g: i for i, g in enumerate(elements)}
    table = np.array([[position[group.mul(a, b)] for b in elements] for a in elements], dtype=np.int64)
    return group_from_table(table, name=name, max_order=max(group.order, DEFAULT_MAX_ORDER))


@dataclass(eq=False)
class ConjugacyData:
    """
    Conjugacy classes with minimal-index representatives and centralizers.

    Attributes:
        classes: sorted element lists, ordered by representative
        reps: minimal element of each class
        class_of: element -> class index
        centralizer_elements: per class, sorted elements of C_G(rep)
        centralizers: per class, C_G(rep) as an embedded FiniteGroup
    """
    group: FiniteGroup
    classes: List[List[int]]
    reps: List[int]
    class_of: np.ndarray
    centralizer_elements: List[List[int]]
    centralizers: List[FiniteGroup]

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def class_sizes(self) -> List[int]:
        return [len(c) for c in self.classes]

    def local_index(self, class_index: int, element: int) -> int:
        """Position of a centralizer element inside the embedded centralizer group."""
        return self.centralizer_elements[class_index].index(element)


def conjugacy_classes(group: FiniteGroup) -> ConjugacyData:
    n = group.order
    class_of = np.full(n, -1, dtype=np.int64)
    classes, reps = [], []
    for g in range(n):
        if class_of[g] >= 0:
            continue
        members = sorted({group.conjugate(x, g) for x in range(n)})
        class_of[members] = len(classes)
        classes.append(members)
        reps.append(g)

    centralizer_elements, centralizers = [], []
    for idx, rep in enumerate(reps):
        elements = [x for x in range(n) if group.commute(x, rep)]
        centralizer_elements.append(elements)
        centralizers.append(subgroup_from_elements(group, elements, f"C_{group.name}({rep})"))

    logger.debug(f"{group.name}: {len(classes)} conjugacy classes, sizes {[len(c) for c in classes]}")
    return ConjugacyData(group=group, classes=classes, reps=reps, class_of=class_of,
                         centralizer_elements=centralizer_elements, centralizers=centralizers)


def check_conjugacy_invariants(data: ConjugacyData) -> List[str]:
    """Return the violated ConjugacyData invariants (empty when all hold)."""
    group = data.group
    n = group.order
    problems = []
    seen = sorted(x for c in data.classes for x in c)
    if seen != list(range(n)):
        problems.append("classes do not partition the group")
    for idx, members in enumerate(data.classes):
        member_set = set(members)
        if any(group.conjugate(x, g) not in member_set for g in members for x in range(n)):
            problems.append(f"class {idx} not closed under conjugation")
        if len(members) * len(data.centralizer_elements[idx]) != n:
            problems.append(f"orbit-stabilizer fails for class {idx}")
    for g in range(n):
        centralizer_size = sum(1 for x in range(n) if group.commute(x, g))
        if len(data.classes[data.class_of[g]]) * centralizer_size != n:
            problems.append(f"orbit-stabilizer fails at element {g}")
            break
    if data.classes[0] != [group.identity]:
        problems.append("identity is not in a singleton class")
    return problems


@dataclass(eq=False)
class CommutingPairOrbits:
    """
    Commuting pairs (h, g) and their orbits under simultaneous conjugation.

    Attributes:
        pairs: all commuting pairs in lexicographic order
        orbits: list of orbits, each a sorted list of pairs; ordered by first pair
        orbit_of: n x n array, orbit index of (h, g) or -1 if h, g do not commute
    """
    group: FiniteGroup
    pairs: List[Tuple[int, int]]
    orbits: List[List[Tuple[int, int]]]
    orbit_of: np.ndarray

    @property
    def num_orbits(self) -> int:
        return len(self.orbits)

    def representatives(self) -> List[Tuple[int, int]]:
        return [orbit[0] for orbit in self.orbits]

    def orbit_sizes(self) -> np.ndarray:
        return np.array([len(o) for o in self.orbits], dtype=np.int64)


def commuting_pair_orbits(group: FiniteGroup) -> CommutingPairOrbits:
    n = group.order
    pairs = [(h, g) for h in range(n) for g in range(n) if group.commute(h, g)]
    orbit_of = np.full((n, n), -1, dtype=np.int64)
    orbits = []
    for h, g in pairs:
        if orbit_of[h, g] >= 0:
            continue
        members = sorted({(group.conjugate(x, h), group.conjugate(x, g)) for x in range(n)})
        for a, b in members:
            orbit_of[a, b] = len(orbits)
        orbits.append(members)
    logger.debug(f"{group.name}: {len(pairs)} commuting pairs in {len(orbits)} orbits")
    return CommutingPairOrbits(group=group, pairs=pairs, orbits=orbits, orbit_of=orbit_of)


def summarize_group(group: FiniteGroup) -> Dict:
    """Order, class sizes, centralizer orders and orbit count as a plain dict."""
    data = conjugacy_classes(group)
    orbits = commuting_pair_orbits(group)
    return {
        "name": group.name,
        "order": group.order,
        "abelian": group.is_abelian(),
        "num_classes": data.num_classes,
        "class_representatives": data.reps,
        "class_sizes": data.class_sizes(),
        "centralizer_orders": [c.order for c in data.centralizers],
        "commuting_pairs": len(orbits.pairs),
        "commuting_pair_orbits": orbits.num_orbits,
    }
