"""
Modular data of D(G): the SL2(Z) / GL2(Z) action on invariant functions,
S and T in the character basis, the non-abelian Fourier matrix, and fusion
coefficients both by brute force and through the Verlinde formula.
"""

import logging
import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from char_table import NumericalDegeneracyError, format_complex
from double_algebra import (DoubleFunctional, basis_element, coadjoint, coadjoint_invariant_dimension, counit,
                            dual_product, element_from_functional, function_convolution, function_product,
                            functional_from_element, group_element, multiply)
from group_core import FiniteGroup
from mackey_irreps import InvariantFunction, MackeyClassifier, MGLabel, random_invariant
from verification import DEFAULT_TOL, SuiteReport

logger = logging.getLogger(__name__)

MODULAR_FORMAT = "dgd-modular-v1"
ROUNDING_TOL = 1e-6
DENOMINATOR_TOL = 1e-9
COADJOINT_LIMIT = 8
VARIANTS = ("dot", "dotprime")

GENERATORS: Dict[str, np.ndarray] = {
    "s": np.array([[0, 1], [-1, 0]], dtype=np.int64),
    "t": np.array([[1, 1], [0, 1]], dtype=np.int64),
    "j1": np.array([[-1, 0], [0, 1]], dtype=np.int64),
    "j2": np.array([[1, 0], [0, -1]], dtype=np.int64),
}
# conjugating by j2 inverts s and t and fixes j1, j2
_TWIST = GENERATORS["j2"]
_TOKEN = re.compile(r"(j1|j2|s|t)(\^-1|\^\{-1\}|⁻¹)?")

Word = Union[str, Sequence[str], np.ndarray]


class FusionMismatchError(RuntimeError):
    """Raised when fusion coefficients do not round cleanly to integers."""


def _int_inverse(a: np.ndarray) -> np.ndarray:
    det = int(round(np.linalg.det(a)))
    if det not in (1, -1):
        raise ValueError(f"matrix {a.tolist()} is not in GL2(Z)")
    return det * np.array([[a[1, 1], -a[0, 1]], [-a[1, 0], a[0, 0]]], dtype=np.int64)


def parse_word(word: Union[str, Sequence[str]]) -> List[Tuple[str, int]]:
    """
    Split a word such as "s t^-1 j2" or "sts" into (generator, exponent) pairs.

    Raises:
        ValueError: an unsupported generator appears
    """
    text = word if isinstance(word, str) else "".join(word)
    text = re.sub(r"[\s*.]", "", text)
    out, pos = [], 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            raise ValueError(f"unsupported generator at {text[pos:]!r}; use s, t, j1, j2 and ^-1")
        out.append((match.group(1), -1 if match.group(2) else 1))
        pos = match.end()
    return out


def word_matrix(word: Word) -> np.ndarray:
    """Integer matrix of a word, multiplied left to right."""
    if isinstance(word, np.ndarray):
        return word.astype(np.int64)
    out = np.eye(2, dtype=np.int64)
    for name, exponent in parse_word(word):
        gen = GENERATORS[name]
        out = out @ (gen if exponent == 1 else _int_inverse(gen))
    return out


def pair_map(group: FiniteGroup, matrix: np.ndarray) -> Callable[[int, int], Tuple[int, int]]:
    """(h, g) (a b; c d) = (h^a g^c, h^b g^d)."""
    (a, b), (c, d) = matrix.tolist()

    def apply(h: int, g: int) -> Tuple[int, int]:
        return (group.mul(group.power(h, a), group.power(g, c)),
                group.mul(group.power(h, b), group.power(g, d)))
    return apply


def act_on_grid(group: FiniteGroup, matrix: np.ndarray, grid: np.ndarray) -> np.ndarray:
    """f -> f((h, g) A) on all of G x G."""
    n = group.order
    apply = pair_map(group, matrix)
    out = np.empty((n, n), dtype=complex)
    for h in range(n):
        for g in range(n):
            out[h, g] = grid[apply(h, g)]
    return out


def act(word: Word, f: InvariantFunction, variant: str = "dotprime") -> InvariantFunction:
    """
    Act on an invariant function.

    The dotprime action is A.f(h, g) = f((h, g) A). The dot action is the
    dotprime action twisted by the automorphism inverting s and t.

    Raises:
        ValueError: unknown variant or unsupported generator
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown action {variant!r}; expected one of {VARIANTS}")
    matrix = word_matrix(word)
    if variant == "dot":
        matrix = _TWIST @ matrix @ _TWIST
    grid = act_on_grid(f.group, matrix, f.to_grid())
    return InvariantFunction.from_grid(f.group, f.orbits, grid)


_DOT_FORMULAS: Dict[str, Callable] = {
    "s": lambda group, h, g: (g, group.inv(h)),
    "t": lambda group, h, g: (h, group.mul(group.inv(h), g)),
}


@dataclass(eq=False)
class ModularData:
    """
    S, T and Fourier matrices in the irreducible-character basis.

    Attributes:
        S: matrix of s^-1 under the dotprime action
        T: matrix of t under the dotprime action (diagonal)
        FT: Lusztig pairing matrix
    """
    group: FiniteGroup
    labels: List[MGLabel]
    S: np.ndarray
    T: np.ndarray
    FT: np.ndarray

    @property
    def twists(self) -> np.ndarray:
        return np.diag(self.T)

    def to_dict(self) -> Dict:
        def encode(mat):
            return [[format_complex(z) for z in row] for row in mat]
        return {
            "format": MODULAR_FORMAT,
            "group": self.group.name,
            "labels": [lab.to_dict() for lab in self.labels],
            "S": encode(self.S),
            "T": [format_complex(z) for z in self.twists],
            "FT": encode(self.FT),
        }

    def to_csv(self) -> str:
        lines = [f"# format,{MODULAR_FORMAT}", f"# group,{self.group.name}"]
        header = "matrix,row," + ",".join(str(lab) for lab in self.labels)
        for name, mat in (("S", self.S), ("T", self.T), ("FT", self.FT)):
            lines.append(header)
            for i, row in enumerate(mat):
                lines.append(f"{name},{self.labels[i]}," + ",".join(format_complex(z) for z in row))
        return "\n".join(lines) + "\n"


@dataclass(eq=False)
class FusionTable:
    """N[i, j, k] = multiplicity of label k in label i (x) label j."""
    labels: List[MGLabel]
    N: np.ndarray
    residual: float
    method: str = "bruteforce"

    def to_dict(self) -> Dict:
        return {
            "format": MODULAR_FORMAT,
            "method": self.method,
            "labels": [lab.to_dict() for lab in self.labels],
            "N": self.N.tolist(),
            "residual": self.residual,
        }

    def to_csv(self) -> str:
        lines = [f"# format,{MODULAR_FORMAT}", "i,j,k,N"]
        r = len(self.labels)
        for i in range(r):
            for j in range(r):
                for k in range(r):
                    if self.N[i, j, k]:
                        lines.append(f"{self.labels[i]},{self.labels[j]},{self.labels[k]},{self.N[i, j, k]}")
        return "\n".join(lines) + "\n"


def _round_fusion(raw: np.ndarray, labels: List[MGLabel], method: str) -> FusionTable:
    rounded = np.rint(raw.real).astype(np.int64)
    residual = float(np.max(np.abs(raw - rounded), initial=0.0))
    if residual > ROUNDING_TOL:
        raise FusionMismatchError(f"{method} fusion coefficients are {residual:.3e} away from integers")
    if np.any(rounded < 0):
        raise FusionMismatchError(f"{method} fusion produced negative coefficients")
    return FusionTable(labels=labels, N=rounded, residual=residual, method=method)


class ModularAnalyzer:
    """
    Modular data and fusion rules for D(G), built on a MackeyClassifier.
    """

    def __init__(self, group: FiniteGroup, tol: float = DEFAULT_TOL, seed: int = 0x5EED,
                 triple_limit: int = 12, classifier: Optional[MackeyClassifier] = None):
        self.group = group
        self.tol = tol
        self.seed = seed
        self.triple_limit = triple_limit
        self.classifier = classifier or MackeyClassifier(group, tol=tol, seed=seed)
        self.logger = logging.getLogger(__name__)
        self._data: Optional[ModularData] = None

    @property
    def labels(self) -> List[MGLabel]:
        return self.classifier.labels()

    @property
    def orbits(self):
        return self.classifier.orbits

    def matrix_of(self, word: Word, variant: str = "dotprime") -> np.ndarray:
        """M[i, j] = coefficient of chi_i in A . chi_j."""
        chars = self.classifier.characters()
        out = np.zeros((len(chars), len(chars)), dtype=complex)
        for j, chi in enumerate(chars):
            out[:, j] = self.classifier.expand(act(word, chi, variant))
        return out

    def swap_matrix(self) -> np.ndarray:
        """Matrix of f(h, g) -> f(g, h) in the character basis."""
        return self.matrix_of(np.array([[0, 1], [1, 0]], dtype=np.int64))

    def lusztig_matrix(self) -> np.ndarray:
        """
        {(g1, rho1), (g2, rho2)} = 1/(|C(g1)||C(g2)|) sum over k with g1 commuting with k g2 k^-1
        of conj(Tr rho1(k g2 k^-1)) Tr rho2(k^-1 g1 k).
        For abelian G an entry is conj chi1(g2) chi2(g1) / |G|.
        """
        group = self.group
        cl = self.classifier
        labels = self.labels
        out = np.zeros((len(labels), len(labels)), dtype=complex)
        for a, la in enumerate(labels):
            c1 = len(cl.classes.centralizer_elements[la.class_index])
            for b, lb in enumerate(labels):
                c2 = len(cl.classes.centralizer_elements[lb.class_index])
                g1, g2 = la.representative, lb.representative
                total = 0j
                for k in range(group.order):
                    x = group.conjugate(k, g2)
                    if not group.commute(g1, x):
                        continue
                    y = group.mul(group.mul(group.inv(k), g1), k)
                    total += np.conj(cl._centralizer_value(la, group.identity, x)) * \
                        cl._centralizer_value(lb, group.identity, y)
                out[a, b] = total / (c1 * c2)
        return out

    def modular_data(self) -> ModularData:
        """
        Raises:
            NumericalDegeneracyError: T is not diagonal, which points to a label-ordering bug
        """
        if self._data is None:
            s = self.matrix_of("s^-1")
            t = self.matrix_of("t")
            off = float(np.max(np.abs(t - np.diag(np.diag(t))), initial=0.0))
            if off > max(self.tol, 1e-8):
                raise NumericalDegeneracyError(f"T is not diagonal (off-diagonal mass {off:.3e})")
            self._data = ModularData(group=self.group, labels=self.labels, S=s, T=np.diag(np.diag(t)),
                                     FT=self.lusztig_matrix())
            self.logger.info(f"Modular data of D({self.group.name}): {len(self.labels)} labels")
        return self._data

    def tensor_character(self, i: int, j: int) -> InvariantFunction:
        """(chi_i chi_j)(h, g) = sum_{st=h} chi_i(t, g) chi_j(s, g)."""
        chars = self.classifier.characters()
        f1 = DoubleFunctional(self.group, chars[i].to_grid())
        f2 = DoubleFunctional(self.group, chars[j].to_grid())
        return InvariantFunction.from_grid(self.group, self.orbits, dual_product(f1, f2).values)

    def fusion_bruteforce(self) -> FusionTable:
        r = len(self.labels)
        raw = np.zeros((r, r, r), dtype=complex)
        for i in range(r):
            for j in range(r):
                raw[i, j] = self.classifier.expand(self.tensor_character(i, j))
        return _round_fusion(raw, self.labels, "bruteforce")

    def verlinde_fusion(self, data: Optional[ModularData] = None) -> FusionTable:
        """
        N_ijk = sum_m U_mi U_mj conj(U_mk) / U_m0 with U = S^dagger.

        Raises:
            NumericalDegeneracyError: a denominator U_m0 vanishes
        """
        data = data or self.modular_data()
        u = data.S.conj().T
        denominators = u[:, 0]
        if np.any(np.abs(denominators) < DENOMINATOR_TOL):
            raise NumericalDegeneracyError("Verlinde denominator vanishes")
        raw = np.einsum("mi,mj,mk,m->ijk", u, u, u.conj(), 1.0 / denominators)
        return _round_fusion(raw, self.labels, "verlinde")

    def conjugate_label_permutation(self) -> List[int]:
        """Index of the label of chi(h, g^-1) = conj chi, for each label."""
        return [self.classifier.match_label(act("j2", chi)) for chi in self.classifier.characters()]

    def dual_label_permutation(self) -> List[int]:
        """Index of the dual module's label, whose character is conj chi(h^-1, g)."""
        inverse = self.inverse_class_permutation()
        return [inverse[k] for k in self.conjugate_label_permutation()]

    def inverse_class_permutation(self) -> List[int]:
        """Index of the label of chi(h^-1, g), for each label."""
        return [self.classifier.match_label(act("j1", chi)) for chi in self.classifier.characters()]

    def verify_fusion_ring(self, table: FusionTable) -> SuiteReport:
        report = SuiteReport(f"fusion ring ({table.method})")
        n_ijk = table.N
        dims = np.array([lab.dimension for lab in table.labels])
        r = len(dims)
        unit_law = report.new_check("N(1, j, k) = delta_jk", 0.5)
        unit_law.update(float(np.max(np.abs(n_ijk[0] - np.eye(r, dtype=np.int64)))), "unit row")
        comm = report.new_check("commutative", 0.5)
        comm.update(float(np.max(np.abs(n_ijk - n_ijk.transpose(1, 0, 2)))), "swap i, j")
        assoc = report.new_check("associative", 0.5)
        left = np.einsum("ijm,mkl->ijkl", n_ijk, n_ijk)
        right = np.einsum("jkm,iml->ijkl", n_ijk, n_ijk)
        assoc.update(float(np.max(np.abs(left - right))), "re-association")
        dim_hom = report.new_check("dimension homomorphism", 0.5)
        dim_hom.update(float(np.max(np.abs(n_ijk @ dims - np.outer(dims, dims)))), "sum_k N dim_k")
        return report

    def verify_modular_identities(self) -> SuiteReport:
        """Relations, convolution identities, diagonalization, Fourier identities and label involutions."""
        report = SuiteReport("modular")
        group = self.group
        n = group.order
        cl = self.classifier
        chars = cl.characters()
        r = len(chars)
        eye = np.eye(r)
        data = self.modular_data()
        s, t, ft = data.S, data.T, data.FT
        rng = np.random.default_rng(self.seed)

        relations = report.new_check("S^4 = 1 and S^2 = (ST)^3", self.tol)
        relations.update(float(np.max(np.abs(np.linalg.matrix_power(s, 4) - eye))), "S^4")
        relations.update(float(np.max(np.abs(s @ s - np.linalg.matrix_power(s @ t, 3)))), "(ST)^3")
        relations.update(float(np.max(np.abs(s @ s @ t - t @ s @ s))), "S^2 T = T S^2")
        unitary = report.new_check("S unitary, T unimodular diagonal", self.tol)
        unitary.update(float(np.max(np.abs(s @ s.conj().T - eye))), "S S^dagger")
        unitary.update(float(np.max(np.abs(np.abs(np.diag(t)) - 1))), "|T_kk|")

        off_space = report.new_check("relations on all of C(G x G)", self.tol)
        grid = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        lhs = act_on_grid(group, word_matrix("st st st"), grid)
        rhs = act_on_grid(group, word_matrix("s s"), grid)
        off_space.skip(f"recorded only, (st)^3 vs s^2 off the invariant subspace deviates by "
                       f"{float(np.max(np.abs(lhs - rhs))):.3e}")

        twist_vs_t = report.new_check("T_kk = chi_rho(g_O) / dim rho", self.tol)
        for k, lab in enumerate(self.labels):
            twist_vs_t.update(abs(t[k, k] - cl.twist_scalar(lab)), str(lab))

        twisted = report.new_check("dot s = dotprime s^-1, dot t = dotprime t^-1", self.tol)
        for name, formula in _DOT_FORMULAS.items():
            for k, chi in enumerate(chars):
                grid_k = chi.to_grid()
                explicit = np.array([[grid_k[formula(group, h, g)] for g in range(n)] for h in range(n)])
                via_prime = act(f"{name}^-1", chi, "dotprime").to_grid()
                via_dot = act(name, chi, "dot").to_grid()
                twisted.update(float(np.max(np.abs(explicit - via_prime))), f"{name} on chi{k}")
                twisted.update(float(np.max(np.abs(explicit - via_dot))), f"{name} dot on chi{k}")

        convolution = report.new_check("S(f1 . f2) = Sf1 * Sf2 and S(f1 * f2) = Sf1 . Sf2", self.tol)
        transport = report.new_check("function products match transported algebra products", self.tol)
        for i in range(100):
            f1 = random_invariant(group, self.orbits, rng)
            f2 = random_invariant(group, self.orbits, rng)
            g1, g2 = f1.to_grid(), f2.to_grid()
            sg1 = act("s^-1", f1).to_grid()
            sg2 = act("s^-1", f2).to_grid()
            dot = function_product(group, g1, g2)
            conv = function_convolution(group, g1, g2)
            lhs_dot = act_on_grid(group, word_matrix("s^-1"), dot)
            lhs_conv = act_on_grid(group, word_matrix("s^-1"), conv)
            convolution.update(float(np.max(np.abs(lhs_dot - function_convolution(group, sg1, sg2)))),
                               f"sample {i} dot")
            convolution.update(float(np.max(np.abs(lhs_conv - function_product(group, sg1, sg2)))),
                               f"sample {i} convolution")
            if i < 10:
                d1, d2 = DoubleFunctional(group, g1), DoubleFunctional(group, g2)
                algebra = multiply(element_from_functional(d1), element_from_functional(d2))
                transported = functional_from_element(algebra).values * (n * n)
                transport.update(float(np.max(np.abs(transported - dot))), f"sample {i} product")
                transport.update(float(np.max(np.abs(dual_product(d1, d2).values - conv))),
                                 f"sample {i} convolution")

        diagonal = report.new_check("S-transformed characters diagonalize fusion", self.tol)
        for k, chi in enumerate(chars):
            v = act("s", chi).to_grid()
            norm = float(np.sum(np.abs(v) ** 2))
            for i, chi_i in enumerate(chars):
                w = function_convolution(group, chi_i.to_grid(), v)
                lam = np.sum(w * np.conj(v)) / norm
                diagonal.update(float(np.max(np.abs(w - lam * v))), f"chi{i} on S^-1 chi{k}")

        fourier = report.new_check("FT j2 = s. and FT j1 = s.' on characters", self.tol)
        swap = np.array([[0, 1], [1, 0]], dtype=np.int64)
        for k, chi in enumerate(chars):
            j2f = act("j2", chi).to_grid()
            j1f = act("j1", chi).to_grid()
            swapped_j2 = act_on_grid(group, swap, j2f)
            swapped_j1 = act_on_grid(group, swap, j1f)
            fourier.update(float(np.max(np.abs(swapped_j2 - act("s", chi, "dot").to_grid()))), f"chi{k} j2")
            fourier.update(float(np.max(np.abs(swapped_j1 - act("s", chi, "dotprime").to_grid()))), f"chi{k} j1")
        j2_matrix = self.matrix_of("j2")
        fourier.update(float(np.max(np.abs(s - ft @ j2_matrix))), "S = FT J2")

        ft_check = report.new_check("FT Hermitian, unitary, involutive, equal to the swap", self.tol)
        ft_check.update(float(np.max(np.abs(ft - ft.conj().T))), "Hermitian")
        ft_check.update(float(np.max(np.abs(ft @ ft.conj().T - eye))), "unitary")
        ft_check.update(float(np.max(np.abs(ft @ ft - eye))), "involutive")
        ft_check.update(float(np.max(np.abs(ft - self.swap_matrix()))), "swap matrix")

        involution = report.new_check("j1 and j2 permute the irreducible characters", self.tol)
        try:
            perms = {"j1": self.inverse_class_permutation(), "j2": self.conjugate_label_permutation(),
                     "dual": self.dual_label_permutation()}
        except ValueError as e:
            involution.update(1.0, f"label permutation: {e}")
            perms = {}
        for k, (lab, chi) in enumerate(zip(self.labels, chars)):
            expected_j1 = cl.transported_label(lab, inverse=True)
            expected_j2 = cl.transported_label(lab, conjugate=True)
            expected_dual = cl.transported_label(lab, inverse=True, conjugate=True)
            involution.update(act("j2", chi).deviation(chi.conj()), f"j2 chi{k} = conj chi{k}")
            involution.update(act("j1", chi).deviation(chars[expected_j1]), f"j1 chi{k} = chi{expected_j1}")
            involution.update(act("j2", chi).deviation(chars[expected_j2]), f"j2 chi{k} = chi{expected_j2}")
            involution.update(act("j1 j2", chi).deviation(chars[expected_dual]),
                              f"j1 j2 chi{k} = chi{expected_dual}")
            for name, expected in (("j1", expected_j1), ("j2", expected_j2), ("dual", expected_dual)):
                if name in perms and perms[name][k] != expected:
                    involution.update(chars[perms[name][k]].deviation(chars[expected]),
                                      f"{name} label of chi{k} is {perms[name][k]}, expected {expected}")

        coadj = report.new_check("coadjoint invariants are exactly the character span", self.tol)
        if n <= min(self.triple_limit, COADJOINT_LIMIT):
            generators = [group_element(group, g) for g in range(n)]
            generators += [basis_element(group, h, group.identity) for h in range(n)]
            for k, chi in enumerate(chars):
                f = DoubleFunctional(group, chi.to_grid())
                for b in generators:
                    eps = counit(b)
                    coadj.update(coadjoint(b, f).deviation(eps * f), f"chi{k}")
            invariant_dim = coadjoint_invariant_dimension(group)
            coadj.update(float(abs(invariant_dim - self.orbits.num_orbits)),
                         f"{invariant_dim} invariant functionals for {self.orbits.num_orbits} orbits")
        else:
            coadj.skip(f"|G| = {n} exceeds coadjoint limit {min(self.triple_limit, COADJOINT_LIMIT)}")
        return report


def modular_data(group: FiniteGroup) -> ModularData:
    return ModularAnalyzer(group).modular_data()


def fusion_bruteforce(group: FiniteGroup) -> FusionTable:
    return ModularAnalyzer(group).fusion_bruteforce()


def verlinde_fusion(group: FiniteGroup, data: Optional[ModularData] = None) -> FusionTable:
    return ModularAnalyzer(group).verlinde_fusion(data)


def verify_modular_identities(group: FiniteGroup, tol: float = DEFAULT_TOL) -> SuiteReport:
    return ModularAnalyzer(group, tol=tol).verify_modular_identities()
