"""
Irreducible D(G)-modules from pairs (conjugacy class, centralizer irrep).

Covers label enumeration, closed-form characters, explicit induced modules,
braidings on tensor products and degree dimensions of Nichols algebras
computed as ranks of quantum symmetrizers.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from char_table import (SPLIT_SEED, CharacterTable, NumericalDegeneracyError,
                        character_table, format_complex)
from double_algebra import DoubleElement, function_product
from group_core import (CommutingPairOrbits, ConjugacyData, FiniteGroup,
                        commuting_pair_orbits, conjugacy_classes)
from verification import DEFAULT_TOL, SuiteReport

logger = logging.getLogger(__name__)

DEFAULT_SYMMETRIZER_LIMIT = 256
DEFAULT_NMAX = 4
DEFAULT_YBE_LIMIT = 8
DEFAULT_NATURALITY_LIMIT = 12
RANK_TOL = 1e-8


class SymmetrizerBudgetError(ValueError):
    """Raised when (dim V)^n exceeds the configured symmetrizer budget."""


@dataclass(frozen=True)
class MGLabel:
    """An irreducible D(G)-module: class O (by index) and an irrep of C_G(g_O)."""
    class_index: int
    irrep_index: int
    representative: int
    dimension: int

    def to_dict(self) -> Dict:
        return {"class": self.class_index, "irrep": self.irrep_index,
                "representative": self.representative, "dim": self.dimension}

    def __str__(self):
        return f"({self.class_index},{self.irrep_index})"


@dataclass(eq=False)
class InvariantFunction:
    """
    A function on commuting pairs invariant under simultaneous conjugation.

    Attributes:
        values: one complex value per commuting-pair orbit
    """
    group: FiniteGroup
    orbits: CommutingPairOrbits
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.orbits.num_orbits,):
            raise ValueError(f"expected {self.orbits.num_orbits} orbit values, got {self.values.shape}")

    def to_grid(self) -> np.ndarray:
        """Expand to |G| x |G|, zero off the commuting pairs."""
        n = self.group.order
        grid = np.zeros((n, n), dtype=complex)
        mask = self.orbits.orbit_of >= 0
        grid[mask] = self.values[self.orbits.orbit_of[mask]]
        return grid

    @classmethod
    def from_grid(cls, group: FiniteGroup, orbits: CommutingPairOrbits, grid: np.ndarray,
                  tol: float = 1e-8) -> "InvariantFunction":
        """
        Read orbit values off a grid.

        Raises:
            ValueError: the grid is not constant on orbits or not supported on commuting pairs
        """
        grid = np.asarray(grid, dtype=complex)
        values = np.array([grid[orbit[0]] for orbit in orbits.orbits], dtype=complex)
        func = cls(group, orbits, values)
        off = float(np.max(np.abs(func.to_grid() - grid)))
        if off > tol:
            raise ValueError(f"function is not conjugation invariant (deviation {off:.3e})")
        return func

    def evaluate(self, h: int, g: int) -> complex:
        idx = self.orbits.orbit_of[h, g]
        return complex(self.values[idx]) if idx >= 0 else 0j

    def inner(self, other: "InvariantFunction") -> complex:
        """(1/|G|) sum over commuting pairs of f conj(g)."""
        sizes = self.orbits.orbit_sizes()
        return complex(np.sum(sizes * self.values * np.conj(other.values)) / self.group.order)

    def conj(self) -> "InvariantFunction":
        return InvariantFunction(self.group, self.orbits, np.conj(self.values))

    def deviation(self, other: "InvariantFunction") -> float:
        return float(np.max(np.abs(self.values - other.values), initial=0.0))

    def __add__(self, other: "InvariantFunction") -> "InvariantFunction":
        return InvariantFunction(self.group, self.orbits, self.values + other.values)

    def __sub__(self, other: "InvariantFunction") -> "InvariantFunction":
        return InvariantFunction(self.group, self.orbits, self.values - other.values)

    def __mul__(self, scalar) -> "InvariantFunction":
        return InvariantFunction(self.group, self.orbits, self.values * scalar)

    __rmul__ = __mul__


def random_invariant(group: FiniteGroup, orbits: CommutingPairOrbits, rng: np.random.Generator) -> InvariantFunction:
    k = orbits.num_orbits
    return InvariantFunction(group, orbits, rng.uniform(-1, 1, k) + 1j * rng.uniform(-1, 1, k))


@dataclass(eq=False)
class DoubleModule:
    """
    A finite-dimensional D(G)-module as a G-graded G-representation.

    Attributes:
        grading: degree (group element) of each basis vector
        action: per group element, a dim x dim matrix
    """
    group: FiniteGroup
    grading: List[int]
    action: List[np.ndarray]
    label: Optional[MGLabel] = None

    @property
    def dimension(self) -> int:
        return len(self.grading)

    def projector(self, h: int) -> np.ndarray:
        return np.diag([1.0 if d == h else 0.0 for d in self.grading]).astype(complex)

    def element_matrix(self, x: DoubleElement) -> np.ndarray:
        """delta_h g acts by v -> (g v) projected onto degree h."""
        out = np.zeros((self.dimension, self.dimension), dtype=complex)
        for (h, g), c in x.coeffs.items():
            out += c * self.projector(h) @ self.action[g]
        return out

    def character_grid(self) -> np.ndarray:
        """chi(h, g) = trace of delta_h g."""
        n = self.group.order
        grid = np.zeros((n, n), dtype=complex)
        for g in range(n):
            diag = np.diag(self.action[g])
            for i, h in enumerate(self.grading):
                grid[h, g] += diag[i]
        return grid

    def tensor(self, other: "DoubleModule") -> "DoubleModule":
        """V (x) W through the coproduct: degree of v (x) w is deg(w) deg(v)."""
        grading = [self.group.mul(dw, dv) for dv in self.grading for dw in other.grading]
        action = [np.kron(a, b) for a, b in zip(self.action, other.action)]
        return DoubleModule(self.group, grading, action)

    def dual(self) -> "DoubleModule":
        """V* through the antipode: degrees invert, the action is conjugated."""
        grading = [self.group.inv(d) for d in self.grading]
        return DoubleModule(self.group, grading, [np.conj(a) for a in self.action])

    def check(self, tol: float = DEFAULT_TOL) -> SuiteReport:
        """Homomorphism, unitarity and the grading condition g V_h = V_{ghg^-1}."""
        group = self.group
        n = group.order
        tag = f"module {self.label}" if self.label else "module"
        report = SuiteReport(tag)
        hom = report.new_check("action is a homomorphism", tol)
        unitary = report.new_check("action unitary", tol)
        graded = report.new_check("g V_h inside V_{ghg^-1}", tol)
        eye = np.eye(self.dimension)
        hom.update(float(np.max(np.abs(self.action[group.identity] - eye), initial=0.0)), "identity")
        for a in range(n):
            unitary.update(float(np.max(np.abs(self.action[a] @ self.action[a].conj().T - eye), initial=0.0)),
                           f"g={a}")
            for b in range(n):
                diff = self.action[a] @ self.action[b] - self.action[group.mul(a, b)]
                hom.update(float(np.max(np.abs(diff), initial=0.0)), f"g={a}, h={b}")
            for i, h in enumerate(self.grading):
                target = group.conjugate(a, h)
                wrong = [j for j, d in enumerate(self.grading) if d != target]
                leak = float(np.max(np.abs(self.action[a][wrong, i]), initial=0.0))
                graded.update(leak, f"g={a} on basis {i} of degree {h}")
        return report


def braiding_matrix(v: DoubleModule, w: DoubleModule) -> np.ndarray:
    """
    c(v (x) w) = w (x) deg(w) v as a matrix from V (x) W to W (x) V.

    Raises:
        ValueError: modules over different groups
    """
    if not v.group.same_group(w.group):
        raise ValueError("modules are over different groups")
    dv, dw = v.dimension, w.dimension
    out = np.zeros((dw * dv, dv * dw), dtype=complex)
    for j, degree in enumerate(w.grading):
        act = v.action[degree]
        for i in range(dv):
            out[j * dv:(j + 1) * dv, i * dw + j] = act[:, i]
    return out


def braiding_naturality_deviation(v: DoubleModule, w: DoubleModule) -> float:
    """How far c_{V,W} is from intertwining the D(G)-actions on V (x) W and W (x) V."""
    c = braiding_matrix(v, w)
    vw, wv = v.tensor(w), w.tensor(v)
    worst = 0.0
    for g in range(v.group.order):
        worst = max(worst, float(np.max(np.abs(c @ vw.action[g] - wv.action[g] @ c), initial=0.0)))
        worst = max(worst, float(np.max(np.abs(c @ vw.projector(g) - wv.projector(g) @ c), initial=0.0)))
    return worst


def yang_baxter_deviation(c: np.ndarray, dim: int) -> float:
    """max |c12 c23 c12 - c23 c12 c23| on V (x) V (x) V."""
    eye = np.eye(dim)
    c12 = np.kron(c, eye)
    c23 = np.kron(eye, c)
    return float(np.max(np.abs(c12 @ c23 @ c12 - c23 @ c12 @ c23), initial=0.0))


def flip_braiding(dim: int, sign: float = 1.0) -> np.ndarray:
    """sign * tau on C^dim (x) C^dim."""
    out = np.zeros((dim * dim, dim * dim), dtype=complex)
    for i in range(dim):
        for j in range(dim):
            out[j * dim + i, i * dim + j] = sign
    return out


def bubble_sort_word(perm: Sequence[int]) -> Tuple[int, ...]:
    """Positions of the adjacent swaps bubble sort makes; a reduced word."""
    arr = list(perm)
    word = []
    for end in range(len(arr) - 1, 0, -1):
        for j in range(end):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                word.append(j)
    return tuple(word)


def insertion_sort_word(perm: Sequence[int]) -> Tuple[int, ...]:
    """A second reduced word for the same permutation."""
    arr = list(perm)
    word = []
    for i in range(1, len(arr)):
        j = i
        while j > 0 and arr[j - 1] > arr[j]:
            arr[j - 1], arr[j] = arr[j], arr[j - 1]
            word.append(j - 1)
            j -= 1
    return tuple(word)


def _apply_word(c4: np.ndarray, dim: int, n: int, word: Sequence[int]) -> np.ndarray:
    """Matrix c_{w1} c_{w2} ... c_{wr} on V^(x)n, c_i acting on tensor slots i, i+1."""
    size = dim ** n
    out = np.eye(size, dtype=complex)
    for i in reversed(word):
        x = out.reshape(dim ** i, dim, dim, dim ** (n - i - 2), size)
        out = np.einsum("pqab,xabyz->xpqyz", c4, x).reshape(size, size)
    return out


def nichols_degree_dims(braiding: np.ndarray, dim: int, n_max: int = DEFAULT_NMAX,
                        limit: int = DEFAULT_SYMMETRIZER_LIMIT) -> List[int]:
    """
    Dimensions of the degree 1..n_max components of the Nichols algebra of (V, c).

    Each is the rank of the quantum symmetrizer, the sum over S_n of the
    braid-lifted permutations taken along their bubble-sort words.

    Raises:
        SymmetrizerBudgetError: dim ** n_max exceeds limit
    """
    if dim ** n_max > limit:
        raise SymmetrizerBudgetError(f"dim {dim} to the power {n_max} exceeds the symmetrizer limit {limit}")
    c4 = np.asarray(braiding, dtype=complex).reshape(dim, dim, dim, dim)
    dims = []
    for n in range(1, n_max + 1):
        if n == 1:
            dims.append(dim)
            continue
        total = np.zeros((dim ** n, dim ** n), dtype=complex)
        for perm in itertools.permutations(range(n)):
            total += _apply_word(c4, dim, n, bubble_sort_word(perm))
        singular = scipy.linalg.svdvals(total)
        top = float(singular[0]) if singular.size else 0.0
        dims.append(int(np.sum(singular > RANK_TOL * top)) if top > 0 else 0)
    logger.debug(f"Nichols degree dimensions up to {n_max}: {dims}")
    return dims


def reduced_word_deviation(braiding: np.ndarray, dim: int, n: int, sample: int = 24) -> float:
    """Largest difference between the bubble-sort and insertion-sort lifts of the first few permutations."""
    c4 = np.asarray(braiding, dtype=complex).reshape(dim, dim, dim, dim)
    worst = 0.0
    for perm in itertools.islice(itertools.permutations(range(n)), sample):
        a = _apply_word(c4, dim, n, bubble_sort_word(perm))
        b = _apply_word(c4, dim, n, insertion_sort_word(perm))
        worst = max(worst, float(np.max(np.abs(a - b), initial=0.0)))
    return worst


def _regular_matrices(group: FiniteGroup) -> List[np.ndarray]:
    m = group.order
    mats = []
    for c in range(m):
        mat = np.zeros((m, m))
        mat[group.cayley[c], np.arange(m)] = 1.0
        mats.append(mat)
    return mats


def centralizer_irrep_matrices(group: FiniteGroup, irrep_index: int, table: Optional[CharacterTable] = None,
                               seed: int = SPLIT_SEED, attempts: int = 5) -> List[np.ndarray]:
    """
    Unitary matrices of one irreducible representation, indexed by element.

    The isotypic block of the regular representation is cut out by the
    central idempotent, then split by a random Hermitian operator averaged
    over the group so that it commutes with the action.

    Raises:
        NumericalDegeneracyError: no attempt produced a clean block
    """
    table = table if table is not None else character_table(group)
    m = group.order
    d = table.dims[irrep_index]
    chi = table.character_on_elements(irrep_index)
    if d == 1:
        return [np.array([[chi[c]]], dtype=complex) for c in range(m)]

    regular = _regular_matrices(group)
    idempotent = (d / m) * sum(np.conj(chi[c]) * regular[c] for c in range(m))
    space = scipy.linalg.orth(idempotent)
    if space.shape[1] != d * d:
        raise NumericalDegeneracyError(f"isotypic block has dimension {space.shape[1]}, expected {d * d}")

    rng = np.random.default_rng(seed)
    for attempt in range(attempts):
        a = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
        hermitian = a + a.conj().T
        averaged = sum(r @ hermitian @ r.T for r in regular) / m
        restricted = space.conj().T @ averaged @ space
        eigenvalues, vectors = scipy.linalg.eigh((restricted + restricted.conj().T) / 2)
        scale = max(1.0, float(np.max(np.abs(eigenvalues))))
        clustered = eigenvalues[d - 1] - eigenvalues[0] < 1e-8 * scale
        separated = eigenvalues[d] - eigenvalues[d - 1] > 1e-6 * scale
        if clustered and separated:
            block = space @ vectors[:, :d]
            mats = [block.conj().T @ r @ block for r in regular]
            traces = np.array([np.trace(mat) for mat in mats])
            if np.max(np.abs(traces - chi)) < 1e-8:
                return mats
        logger.debug(f"Irrep block extraction attempt {attempt + 1} for {group.name} failed, reseeding")
    raise NumericalDegeneracyError(f"could not extract irrep {irrep_index} of {group.name}")


class MackeyClassifier:
    """
    Irreducible representations of D(G), computed lazily and cached per group.

    Labels are ordered by conjugacy class, then by the row of the centralizer
    character table, so the unit label ({e}, trivial) is always first.
    """

    def __init__(self, group: FiniteGroup, tol: float = DEFAULT_TOL, seed: int = SPLIT_SEED):
        self.group = group
        self.tol = tol
        self.seed = seed
        self.logger = logging.getLogger(__name__)
        self.classes: ConjugacyData = conjugacy_classes(group)
        self.orbits: CommutingPairOrbits = commuting_pair_orbits(group)
        self._tables: Dict[int, CharacterTable] = {}
        self._labels: Optional[List[MGLabel]] = None
        self._characters: Dict[MGLabel, InvariantFunction] = {}
        self._irreps: Dict[MGLabel, List[np.ndarray]] = {}
        self._modules: Dict[MGLabel, DoubleModule] = {}

    def centralizer_table(self, class_index: int) -> CharacterTable:
        if class_index not in self._tables:
            self._tables[class_index] = character_table(self.classes.centralizers[class_index])
        return self._tables[class_index]

    def labels(self) -> List[MGLabel]:
        if self._labels is None:
            labels = []
            for k, rep in enumerate(self.classes.reps):
                size = len(self.classes.classes[k])
                for r, d in enumerate(self.centralizer_table(k).dims):
                    labels.append(MGLabel(class_index=k, irrep_index=r, representative=rep, dimension=size * d))
            if len(labels) != self.orbits.num_orbits:
                raise NumericalDegeneracyError(f"{len(labels)} labels but {self.orbits.num_orbits} orbits")
            self._labels = labels
            self.logger.info(f"D({self.group.name}): {len(labels)} irreducible modules, "
                             f"dimensions {[lab.dimension for lab in labels]}")
        return self._labels

    def label(self, class_index: int, irrep_index: int) -> MGLabel:
        for lab in self.labels():
            if lab.class_index == class_index and lab.irrep_index == irrep_index:
                return lab
        raise ValueError(f"no label ({class_index}, {irrep_index}) for D({self.group.name})")

    def conjugators(self, class_index: int, h: int) -> List[int]:
        """All x with x g_O x^-1 = h, in index order."""
        rep = self.classes.reps[class_index]
        return [x for x in range(self.group.order) if self.group.conjugate(x, rep) == h]

    def _centralizer_value(self, label: MGLabel, x: int, g: int) -> complex:
        group = self.group
        local = self.classes.local_index(label.class_index, group.mul(group.mul(group.inv(x), g), x))
        return self.centralizer_table(label.class_index).value(label.irrep_index, local)

    def irreducible_character(self, label: MGLabel) -> InvariantFunction:
        """
        chi(h, g) = Tr rho(x^-1 g x) for h in O with x g_O x^-1 = h and g commuting with h; else 0.
        """
        if label not in self._characters:
            values = np.zeros(self.orbits.num_orbits, dtype=complex)
            for idx, (h, g) in enumerate(self.orbits.representatives()):
                if self.classes.class_of[h] != label.class_index:
                    continue
                x = self.conjugators(label.class_index, h)[0]
                values[idx] = self._centralizer_value(label, x, g)
            self._characters[label] = InvariantFunction(self.group, self.orbits, values)
        return self._characters[label]

    def characters(self) -> List[InvariantFunction]:
        return [self.irreducible_character(lab) for lab in self.labels()]

    def character_matrix(self) -> np.ndarray:
        """Rows = labels, columns = commuting-pair orbits."""
        return np.array([chi.values for chi in self.characters()])

    def expand(self, f: InvariantFunction) -> np.ndarray:
        """Coefficients of f in the (orthonormal) character basis."""
        return np.array([f.inner(chi) for chi in self.characters()])

    def match_label(self, f: InvariantFunction, tol: float = 1e-6) -> int:
        """
        Index of the irreducible character equal to f.

        Raises:
            ValueError: f is not an irreducible character
        """
        coeffs = self.expand(f)
        idx = int(np.argmax(np.abs(coeffs)))
        if abs(coeffs[idx] - 1) > tol or f.deviation(self.characters()[idx]) > tol:
            raise ValueError("function is not an irreducible character")
        return idx

    def transported_label(self, label: MGLabel, inverse: bool = False, conjugate: bool = False) -> int:
        """
        Index of the label reached from (O, rho) by inverting the class and/or conjugating rho.

        The inverse class O^-1 has representative r' = y g_O^-1 y^-1, and rho moves to
        c -> rho(y^-1 c y) on C_G(r'). Works on centralizer characters only, never on
        the D(G) characters themselves.

        Raises:
            NumericalDegeneracyError: no centralizer character matches
        """
        group = self.group
        rep = label.representative
        k = int(self.classes.class_of[group.inv(rep)]) if inverse else label.class_index
        target_rep = self.classes.reps[k]
        if inverse:
            y = next(y for y in range(group.order) if group.conjugate(y, group.inv(rep)) == target_rep)
        else:
            y = group.identity
        source = self.centralizer_table(label.class_index)
        wanted = np.array([source.value(label.irrep_index,
                                        self.classes.local_index(label.class_index,
                                                                 group.mul(group.mul(group.inv(y), c), y)))
                           for c in self.classes.centralizer_elements[k]])
        if conjugate:
            wanted = wanted.conj()
        table = self.centralizer_table(k)
        for r in range(table.num_characters):
            row = table.character_on_elements(r)
            if np.max(np.abs(row - wanted)) < 1e-6:
                return self.labels().index(self.label(k, r))
        raise NumericalDegeneracyError(f"no centralizer character of class {k} matches {label}")

    def irrep_matrices(self, label: MGLabel) -> List[np.ndarray]:
        if label not in self._irreps:
            self._irreps[label] = centralizer_irrep_matrices(
                self.classes.centralizers[label.class_index], label.irrep_index,
                table=self.centralizer_table(label.class_index), seed=self.seed)
        return self._irreps[label]

    def induce_module(self, label: MGLabel) -> DoubleModule:
        """
        Ind from C_G(g_O) of rho, graded by x_i g_O x_i^-1.

        Coset representatives are the minimal elements of their cosets and
        g x_i = x_j c with c in the centralizer gives the block (j, i) = rho(c).
        """
        if label in self._modules:
            return self._modules[label]
        group = self.group
        n = group.order
        centralizer = self.classes.centralizer_elements[label.class_index]
        rho = self.irrep_matrices(label)
        d = rho[0].shape[0]

        coset_reps: List[int] = []
        coset_of = np.full(n, -1, dtype=np.int64)
        for x in range(n):
            if coset_of[x] < 0:
                for c in centralizer:
                    coset_of[group.mul(x, c)] = len(coset_reps)
                coset_reps.append(x)

        grading = [group.conjugate(x, label.representative) for x in coset_reps for _ in range(d)]
        dim = len(coset_reps) * d
        action = []
        for g in range(n):
            mat = np.zeros((dim, dim), dtype=complex)
            for i, x in enumerate(coset_reps):
                gx = group.mul(g, x)
                j = int(coset_of[gx])
                c = group.mul(group.inv(coset_reps[j]), gx)
                mat[j * d:(j + 1) * d, i * d:(i + 1) * d] = rho[self.classes.local_index(label.class_index, c)]
            action.append(mat)
        module = DoubleModule(group, grading, action, label=label)
        self._modules[label] = module
        return module

    def twist_scalar(self, label: MGLabel) -> complex:
        """chi_rho(g_O) / dim rho, the scalar by which sum_g delta_g g acts."""
        local = self.classes.local_index(label.class_index, label.representative)
        table = self.centralizer_table(label.class_index)
        return table.value(label.irrep_index, local) / table.dims[label.irrep_index]

    def verify_characters(self) -> SuiteReport:
        """Degrees, well-definedness, orthonormality and the pointwise product identity."""
        report = SuiteReport("characters")
        group = self.group
        n = group.order
        labels = self.labels()
        chars = self.characters()

        count = report.new_check("label count and sum of squared dimensions", 0.5)
        count.update(float(abs(len(labels) - self.orbits.num_orbits)), "label count")
        count.update(float(abs(sum(lab.dimension ** 2 for lab in labels) - n * n)), "sum of squares")

        degree = report.new_check("chi(e, e) = |O| dim rho", self.tol)
        for lab, chi in zip(labels, chars):
            degree.update(abs(chi.evaluate(group.identity, group.identity) - lab.dimension), str(lab))

        defined = report.new_check("value independent of conjugator", self.tol)
        for lab, chi in zip(labels, chars):
            for h in self.classes.classes[lab.class_index]:
                for g in range(n):
                    if not group.commute(h, g):
                        continue
                    for x in self.conjugators(lab.class_index, h):
                        defined.update(abs(self._centralizer_value(lab, x, g) - chi.evaluate(h, g)),
                                       f"{lab} at ({h},{g}) via {x}")

        gram = np.array([[a.inner(b) for b in chars] for a in chars])
        orthonormal = report.new_check("Gram matrix = identity", self.tol)
        err = np.abs(gram - np.eye(len(chars)))
        i, j = np.unravel_index(int(np.argmax(err)), err.shape)
        orthonormal.update(float(err[i, j]), f"<chi{i}, chi{j}>")

        dot = report.new_check("chi_1 . chi_2 = delta |G| / (|O| dim rho) chi_1", self.tol)
        grids = [chi.to_grid() for chi in chars]
        for a, (la, ga) in enumerate(zip(labels, grids)):
            for b, gb in enumerate(grids):
                expected = ga * (n / la.dimension) if a == b else np.zeros_like(ga)
                dot.update(float(np.max(np.abs(function_product(group, ga, gb) - expected))), f"labels {a},{b}")
        return report

    def verify_modules(self, labels: Optional[Sequence[MGLabel]] = None,
                       ybe_limit: int = DEFAULT_YBE_LIMIT,
                       naturality_limit: int = DEFAULT_NATURALITY_LIMIT) -> SuiteReport:
        """Module axioms, character agreement, twist scalar, YBE and braiding naturality."""
        report = SuiteReport("modules")
        labels = list(labels) if labels is not None else self.labels()
        axioms = report.new_check("module axioms", self.tol)
        char_match = report.new_check("induced character = closed form", self.tol)
        twist = report.new_check("sum_g delta_g g acts by chi_rho(g_O)/dim rho", self.tol)
        ybe = report.new_check("braiding satisfies YBE", self.tol)
        natural = report.new_check("braiding is a module map", self.tol)
        n = self.group.order
        u_prime = DoubleElement.from_terms(self.group, {(g, g): 1.0 for g in range(n)})
        u = DoubleElement.from_terms(self.group, {(self.group.inv(g), g): 1.0 for g in range(n)})

        modules = []
        for lab in labels:
            module = self.induce_module(lab)
            modules.append(module)
            module_report = module.check(self.tol)
            axioms.update(module_report.max_deviation, str(lab))
            grid = self.irreducible_character(lab).to_grid()
            char_match.update(float(np.max(np.abs(module.character_grid() - grid))), str(lab))
            theta = self.twist_scalar(lab)
            eye = np.eye(module.dimension)
            twist.update(float(np.max(np.abs(module.element_matrix(u_prime) - theta * eye))), f"{lab} u'")
            twist.update(float(np.max(np.abs(module.element_matrix(u) - np.conj(theta) * eye))), f"{lab} u")
            if self.group.order <= ybe_limit:
                c = braiding_matrix(module, module)
                ybe.update(yang_baxter_deviation(c, module.dimension), str(lab))

        if self.group.order > ybe_limit:
            ybe.skip(f"|G| = {self.group.order} exceeds YBE limit {ybe_limit}")
        if self.group.order <= naturality_limit:
            for v, w in itertools.product(modules, repeat=2):
                natural.update(braiding_naturality_deviation(v, w), f"{v.label} (x) {w.label}")
        else:
            natural.skip(f"|G| = {self.group.order} exceeds naturality limit {naturality_limit}")
        return report

    def character_table_json(self) -> Dict:
        """Rows = labels, columns = commuting-pair orbit representatives."""
        reps = self.orbits.representatives()
        return {
            "group": self.group.name,
            "order": self.group.order,
            "columns": [list(pair) for pair in reps],
            "rows": [
                dict(lab.to_dict(), values=[format_complex(v) for v in chi.values])
                for lab, chi in zip(self.labels(), self.characters())
            ],
        }


def enumerate_labels(group: FiniteGroup) -> List[MGLabel]:
    return MackeyClassifier(group).labels()


def irreducible_character(group: FiniteGroup, class_index: int, irrep_index: int) -> InvariantFunction:
    classifier = MackeyClassifier(group)
    return classifier.irreducible_character(classifier.label(class_index, irrep_index))


def verify_character_orthonormality(group: FiniteGroup, tol: float = DEFAULT_TOL) -> SuiteReport:
    return MackeyClassifier(group, tol=tol).verify_characters()
