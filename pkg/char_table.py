"""
Complex character tables by simultaneous diagonalization of class-sum matrices.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
import scipy.linalg

from group_core import ConjugacyData, FiniteGroup, conjugacy_classes

logger = logging.getLogger(__name__)

SPLIT_SEED = 0x5EED
CLUSTER_TOL = 1e-7
ORTHOGONALITY_TOL = 1e-9


class NumericalDegeneracyError(RuntimeError):
    """Raised when a numerical splitting or extraction step cannot separate its targets."""


@dataclass(eq=False)
class CharacterTable:
    """
    Irreducible characters of a group, rows = characters, columns = classes.

    Attributes:
        values: r x r complex array
        dims: per-row degree chi(1)
    """
    group: FiniteGroup
    classes: ConjugacyData
    values: np.ndarray
    dims: List[int]

    @property
    def num_characters(self) -> int:
        return len(self.dims)

    def value(self, row: int, element: int) -> complex:
        return complex(self.values[row, self.classes.class_of[element]])

    def character_on_elements(self, row: int) -> np.ndarray:
        """Character row expanded to a length-|G| vector over elements."""
        return self.values[row, self.classes.class_of]

    def to_csv(self) -> str:
        """CSV with class representatives as header and values as 'a+bi'."""
        lines = [",".join(["character"] + [str(r) for r in self.classes.reps])]
        for i in range(self.num_characters):
            lines.append(",".join([f"chi{i}"] + [format_complex(v) for v in self.values[i]]))
        return "\n".join(lines) + "\n"


def format_complex(z: complex, digits: int = 12) -> str:
    z = complex(z)
    re_part = 0.0 if abs(z.real) < 1e-15 else z.real
    im_part = 0.0 if abs(z.imag) < 1e-15 else z.imag
    return f"{re_part:.{digits}g}{im_part:+.{digits}g}i"


def class_algebra_constants(data: ConjugacyData) -> np.ndarray:
    """
    a[i, j, k] = #{(x, y) in O_i x O_j : x y = g_k}.

    For a fixed x in O_i the solution y = x^-1 g_k is unique, so each entry
    counts the x in O_i with x^-1 g_k in O_j.
    """
    group = data.group
    r = data.num_classes
    a = np.zeros((r, r, r), dtype=np.int64)
    for k, rep in enumerate(data.reps):
        for i, members in enumerate(data.classes):
            for x in members:
                y = group.mul(group.inv(x), rep)
                a[i, data.class_of[y], k] += 1
    return a


def _split(basis: np.ndarray, matrix: np.ndarray) -> List[np.ndarray]:
    """Split an invariant subspace (orthonormal columns) into eigenspaces of matrix."""
    restricted = np.linalg.pinv(basis) @ matrix @ basis
    eigenvalues = scipy.linalg.eigvals(restricted)
    scale = max(1.0, float(np.max(np.abs(eigenvalues))))
    clusters: List[complex] = []
    for lam in eigenvalues:
        if all(abs(lam - c) > CLUSTER_TOL * scale for c in clusters):
            clusters.append(lam)
    if len(clusters) == 1:
        return [basis]
    pieces = []
    m = restricted.shape[0]
    for lam in clusters:
        null = scipy.linalg.null_space(restricted - lam * np.eye(m), rcond=CLUSTER_TOL)
        if null.shape[1] == 0:
            raise NumericalDegeneracyError(f"empty eigenspace for eigenvalue {lam}")
        q, _ = np.linalg.qr(basis @ null)
        pieces.append(q)
    if sum(p.shape[1] for p in pieces) != basis.shape[1]:
        raise NumericalDegeneracyError("eigenspaces do not add up to the subspace dimension")
    return pieces


def _simultaneous_eigenvectors(matrices: List[np.ndarray], seed: int = SPLIT_SEED) -> List[np.ndarray]:
    r = matrices[0].shape[0]
    spaces = [np.eye(r, dtype=complex)]
    for mat in matrices:
        spaces = [piece for space in spaces
                  for piece in (_split(space, mat) if space.shape[1] > 1 else [space])]
        if all(s.shape[1] == 1 for s in spaces):
            return [s[:, 0] for s in spaces]

    logger.warning("Class sums left a degenerate eigenspace, using a random combination")
    rng = np.random.default_rng(seed)
    combo = sum(c * m for c, m in zip(rng.standard_normal(len(matrices)), matrices))
    spaces = [piece for space in spaces
              for piece in (_split(space, combo) if space.shape[1] > 1 else [space])]
    if any(s.shape[1] != 1 for s in spaces):
        raise NumericalDegeneracyError("eigenspace splitting did not separate all characters")
    return [s[:, 0] for s in spaces]


def _clean(z: np.ndarray) -> np.ndarray:
    z = np.array(z, dtype=complex)
    z.imag[np.abs(z.imag) < ORTHOGONALITY_TOL] = 0.0
    z.real[np.abs(z.real) < ORTHOGONALITY_TOL] = 0.0
    return z


def _sort_key(dim: int, row: np.ndarray) -> Tuple:
    # trivial character first among equal degrees: larger values sort earlier
    key = [dim]
    for v in np.round(row, 8):
        key.extend([-float(v.real), -float(v.imag)])
    return tuple(key)


def character_table(group: FiniteGroup, data: Optional[ConjugacyData] = None) -> CharacterTable:
    """
    Compute the irreducible character table of a group.

    Each common eigenvector w of the class matrices M_i[j, k] = a[i, j, k],
    scaled so w at the identity class is 1, holds the central character
    w_k = |O_k| chi(g_k) / chi(1); the degree follows from row orthogonality.

    Raises:
        NumericalDegeneracyError: eigenspaces could not be fully separated, or a
            degree is not close to an integer
    """
    data = data or conjugacy_classes(group)
    n = group.order
    sizes = np.array(data.class_sizes(), dtype=float)
    a = class_algebra_constants(data).astype(complex)
    matrices = [a[i] for i in range(data.num_classes)]

    rows = []
    for w in _simultaneous_eigenvectors(matrices):
        if abs(w[0]) < 1e-12:
            raise NumericalDegeneracyError("central character vanishes at the identity class")
        w = w / w[0]
        dim_sq = n / float(np.sum(np.abs(w) ** 2 / sizes))
        dim = float(np.sqrt(dim_sq))
        if abs(dim - round(dim)) > 1e-6:
            raise NumericalDegeneracyError(f"character degree {dim} is not an integer")
        d = int(round(dim))
        rows.append((d, _clean(d * w / sizes)))

    rows.sort(key=lambda item: _sort_key(*item))
    dims = [d for d, _ in rows]
    if sum(d * d for d in dims) != n:
        raise NumericalDegeneracyError(f"sum of squared degrees {sum(d * d for d in dims)} != {n}")
    values = np.array([row for _, row in rows])
    logger.debug(f"Character table of {group.name}: degrees {dims}")
    return CharacterTable(group=group, classes=data, values=values, dims=dims)


@dataclass
class OrthogonalityReport:
    row_deviation: float
    column_deviation: float
    witness: Optional[str]
    tol: float = ORTHOGONALITY_TOL

    @property
    def max_deviation(self) -> float:
        return max(self.row_deviation, self.column_deviation)

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tol

    def to_dict(self) -> Dict:
        out = {"suite": "orthogonality", "max_deviation": self.max_deviation, "pass": self.passed}
        if self.witness and not self.passed:
            out["witness"] = self.witness
        return out


def verify_orthogonality(table: CharacterTable, tol: float = ORTHOGONALITY_TOL) -> OrthogonalityReport:
    """Both orthogonality relations as max absolute deviations, with the worst entry located."""
    n = table.group.order
    sizes = np.array(table.classes.class_sizes(), dtype=float)
    x = table.values
    row_gram = (x * sizes) @ x.conj().T / n
    row_err = np.abs(row_gram - np.eye(len(x)))
    centralizer_orders = n / sizes
    col_gram = x.T @ x.conj()
    col_err = np.abs(col_gram - np.diag(centralizer_orders))

    witness = None
    if row_err.max() >= col_err.max():
        i, j = np.unravel_index(np.argmax(row_err), row_err.shape)
        witness = f"row inner product <chi{i}, chi{j}> off by {row_err[i, j]:.3e}"
    else:
        i, j = np.unravel_index(np.argmax(col_err), col_err.shape)
        witness = f"column relation at classes ({i}, {j}) off by {col_err[i, j]:.3e}"
    return OrthogonalityReport(row_deviation=float(row_err.max()),
                               column_deviation=float(col_err.max()),
                               witness=witness, tol=tol)
