"""
Drinfeld Double Module
Library entry point for computations on the quantum double D(G) of a finite group.

Usage:
    from drinfeld_double import DoubleAnalyzer

    analyzer = DoubleAnalyzer(tol=1e-9, use_cache=False)
    report = analyzer.verify("S3", suites=["hopf", "ybe"])
    fusion = analyzer.verlinde("dihedral:4")
"""

import logging
import os
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from char_table import NumericalDegeneracyError, format_complex
from double_algebra import (DEFAULT_SEED, DEFAULT_TRIPLE_LIMIT, SUITES, GroupMismatchError,
                            DrinfeldDouble)
from group_core import (DEFAULT_MAX_ORDER, FiniteGroup, GroupAxiomError, GroupSpecError,
                        build_group, summarize_group)
from mackey_irreps import (DEFAULT_NMAX, DEFAULT_SYMMETRIZER_LIMIT, MackeyClassifier,
                           SymmetrizerBudgetError, braiding_matrix, flip_braiding,
                           nichols_degree_dims, reduced_word_deviation, yang_baxter_deviation)
from modular_fusion import FusionMismatchError, ModularAnalyzer
from result_cache import DEFAULT_CACHE_DB, ResultCache
from verification import DEFAULT_TOL, SuiteReport, merge_passed

REPRESENTATION_SUITES = ("characters", "modules", "modular")
ALL_SUITES = SUITES + REPRESENTATION_SUITES
FIXTURES = ("flip", "-flip")
CACHE_ENV = "DGD_CACHE_DB"
CACHE_ACTIONS = ("stats", "clear", "prune")

INPUT_ERRORS = (GroupSpecError, GroupAxiomError, SymmetrizerBudgetError, GroupMismatchError)
NUMERICAL_ERRORS = (NumericalDegeneracyError, FusionMismatchError)


class DoubleAnalyzer:
    """
    Runs the group, verification, representation and modular computations
    and packages each outcome as a ``{"success": ...}`` result dictionary.
    """

    def __init__(self, tol: float = DEFAULT_TOL,
                 seed: int = DEFAULT_SEED,
                 triple_limit: int = DEFAULT_TRIPLE_LIMIT,
                 symmetrizer_limit: int = DEFAULT_SYMMETRIZER_LIMIT,
                 max_order: int = DEFAULT_MAX_ORDER,
                 use_cache: bool = True,
                 cache_db: Optional[str] = None,
                 cache_max_age: Optional[float] = None,
                 log_level: int = logging.INFO):
        """
        Initialize the analyzer.

        Args:
            tol: pass threshold for every verification check
            seed: seed for all sampled checks and eigen-splitting
            triple_limit: largest |G| for which pair and triple tensor checks run
            symmetrizer_limit: largest (dim V)^n a quantum symmetrizer may act on
            max_order: largest group order accepted from a spec
            use_cache: store and reuse results in the sqlite result cache
            cache_db: cache database path (default: DGD_CACHE_DB env var or .dgd_cache/results.db)
            cache_max_age: prune results unused for this many days before any lookup
            log_level: Logging level
        """
        if tol <= 0:
            raise ValueError(f"tolerance must be positive, got {tol}")
        for name, value in (("triple_limit", triple_limit), ("symmetrizer_limit", symmetrizer_limit),
                            ("max_order", max_order)):
            if value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")
        if cache_max_age is not None and cache_max_age < 0:
            raise ValueError(f"cache_max_age must be non-negative, got {cache_max_age}")

        self.setup_logging(log_level)
        self.logger = logging.getLogger(__name__)
        self.tol = tol
        self.seed = seed
        self.triple_limit = triple_limit
        self.symmetrizer_limit = symmetrizer_limit
        self.max_order = max_order

        # Initialize cache
        self.cache: Optional[ResultCache] = None
        if use_cache:
            self.cache = ResultCache(cache_db or os.environ.get(CACHE_ENV, DEFAULT_CACHE_DB))
            self.logger.info("Result caching enabled")
            if cache_max_age is not None:
                self.cleanup_cache(cache_max_age)

    def setup_logging(self, level: int):
        """Setup logging configuration"""
        logging.basicConfig(
            level=level,
            format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )

    def settings(self) -> Dict[str, Any]:
        """Settings every cached result depends on."""
        return {"tol": self.tol, "seed": self.seed, "triple_limit": self.triple_limit,
                "symmetrizer_limit": self.symmetrizer_limit}

    def load_group(self, spec: str) -> FiniteGroup:
        """
        Build and validate a group from a spec string.

        Raises:
            GroupSpecError: malformed spec or order above max_order
            GroupAxiomError: a Cayley table that is not a group
        """
        group = build_group(spec, max_order=self.max_order)
        self.logger.info(f"Loaded group {group.name} of order {group.order}")
        return group

    def _run(self, command: str, spec: Optional[str], compute: Callable[[Optional[FiniteGroup]], Dict[str, Any]],
             extra: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        self.logger.info("=" * 50)
        self.logger.info(f"{command.upper()}: {spec if spec is not None else 'fixture'}")
        self.logger.info("=" * 50)

        try:
            group = self.load_group(spec) if spec is not None else None
        except INPUT_ERRORS as e:
            error_msg = f"Invalid group: {str(e)}"
            self.logger.error(error_msg)
            return {"success": False, "command": command, "error": error_msg, "error_kind": "input"}

        settings = dict(self.settings(), **(extra or {}))
        if self.cache and group is not None:
            cached = self.cache.get_cached_result(group.key, command, settings)
            if cached is not None:
                cached["cached"] = True
                return cached

        try:
            result = compute(group)
        except INPUT_ERRORS as e:
            error_msg = f"{command} rejected its input: {str(e)}"
            self.logger.error(error_msg)
            return {"success": False, "command": command, "error": error_msg, "error_kind": "input"}
        except NUMERICAL_ERRORS as e:
            error_msg = f"{command} failed: {str(e)}"
            self.logger.error(error_msg)
            return {"success": False, "command": command, "error": error_msg, "error_kind": "verification"}

        result = dict({"command": command}, **result)
        if not result["success"]:
            result.setdefault("error_kind", "verification")
        if self.cache and group is not None:
            self.cache.store_result(group.key, command, settings, result, group_name=group.name)
        status = "COMPLETED" if result["success"] else "FAILED"
        self.logger.info(f"{command.upper()} {status}")
        return result

    def group_summary(self, spec: str) -> Dict[str, Any]:
        """
        Summarize a group: order, classes, centralizer orders and orbit count.

        Returns:
            Result dictionary whose "payload" is the summary
        """
        def compute(group):
            summary = summarize_group(group)
            rows = [f"{key},{value}" for key, value in summary.items()
                    if not isinstance(value, list)]
            rows += [f"{key},{' '.join(str(v) for v in value)}" for key, value in summary.items()
                     if isinstance(value, list)]
            return {"success": True, "payload": summary, "csv": "key,value\n" + "\n".join(rows) + "\n"}

        return self._run("group", spec, compute)

    def verify(self, spec: str, suites: Optional[Sequence[str]] = None) -> Dict[str, Any]:
        """
        Run verification suites on D(G).

        Args:
            spec: group spec string
            suites: names from ALL_SUITES; "all" or None runs every suite

        Returns:
            Result dictionary, "success" is True iff every check passes
        """
        selected = list(ALL_SUITES) if not suites or "all" in suites else list(suites)
        unknown = [s for s in selected if s not in ALL_SUITES]
        if unknown:
            error_msg = f"Unknown suites {unknown}; expected some of {list(ALL_SUITES)} or 'all'"
            self.logger.error(error_msg)
            return {"success": False, "command": "verify", "error": error_msg, "error_kind": "input"}

        def compute(group):
            reports: List[SuiteReport] = []
            algebra_suites = [s for s in selected if s in SUITES]
            if algebra_suites:
                double = DrinfeldDouble(group, tol=self.tol, triple_limit=self.triple_limit, seed=self.seed)
                reports.extend(double.verify_axioms(algebra_suites))
            if any(s in REPRESENTATION_SUITES for s in selected):
                classifier = MackeyClassifier(group, tol=self.tol, seed=self.seed)
                if "characters" in selected:
                    reports.append(classifier.verify_characters())
                if "modules" in selected:
                    reports.append(classifier.verify_modules())
                if "modular" in selected:
                    analyzer = ModularAnalyzer(group, tol=self.tol, seed=self.seed,
                                               triple_limit=self.triple_limit, classifier=classifier)
                    reports.append(analyzer.verify_modular_identities())

            passed = merge_passed(reports)
            for report in reports:
                if not report.passed:
                    for check in report.failing():
                        self.logger.error(f"{report.suite}/{check.name}: deviation "
                                          f"{check.max_deviation:.3e} at {check.witness}")
            rows = ["suite,check,max_deviation,pass,skipped"]
            for report in reports:
                for check in report.checks:
                    rows.append(f"{report.suite},\"{check.name}\",{check.max_deviation:.3e},"
                                f"{str(check.passed).lower()},\"{check.skipped or ''}\"")
            payload = {
                "group": group.name,
                "order": group.order,
                "tol": self.tol,
                "pass": passed,
                "max_deviation": max((r.max_deviation for r in reports), default=0.0),
                "suites": [r.to_dict() for r in reports],
            }
            return {"success": passed, "payload": payload, "csv": "\n".join(rows) + "\n"}

        return self._run("verify", spec, compute, {"suites": selected})

    def irreps(self, spec: str) -> Dict[str, Any]:
        """
        Classify the irreducible D(G)-modules and export their characters.

        Returns:
            Result dictionary with the labelled character table as payload
        """
        def compute(group):
            classifier = MackeyClassifier(group, tol=self.tol, seed=self.seed)
            table = classifier.character_table_json()
            dims = [lab.dimension for lab in classifier.labels()]
            table["num_labels"] = len(dims)
            table["sum_of_squares"] = int(sum(d * d for d in dims))
            table["double_dimension"] = group.order ** 2
            rows = ["label,dim," + ",".join(f"({h};{g})" for h, g in table["columns"])]
            for lab, row in zip(classifier.labels(), table["rows"]):
                rows.append(f"{lab},{lab.dimension}," + ",".join(row["values"]))
            success = table["sum_of_squares"] == table["double_dimension"]
            result = {"success": success, "payload": table, "csv": "\n".join(rows) + "\n"}
            if not success:
                result["error"] = "label dimensions do not account for dim D(G)"
            return result

        return self._run("irreps", spec, compute)

    def fusion(self, spec: str) -> Dict[str, Any]:
        """Brute-force fusion rules from tensor-product character decomposition."""
        def compute(group):
            analyzer = ModularAnalyzer(group, tol=self.tol, seed=self.seed, triple_limit=self.triple_limit)
            table = analyzer.fusion_bruteforce()
            ring = analyzer.verify_fusion_ring(table)
            payload = dict(table.to_dict(), group=group.name, ring=ring.to_dict())
            return {"success": ring.passed, "payload": payload, "csv": table.to_csv()}

        return self._run("fusion", spec, compute)

    def modular(self, spec: str) -> Dict[str, Any]:
        """S, T and Lusztig Fourier matrices of D(G)."""
        def compute(group):
            data = ModularAnalyzer(group, tol=self.tol, seed=self.seed,
                                   triple_limit=self.triple_limit).modular_data()
            return {"success": True, "payload": data.to_dict(), "csv": data.to_csv()}

        return self._run("modular", spec, compute)

    def verlinde(self, spec: str) -> Dict[str, Any]:
        """
        Compare the Verlinde fusion coefficients with the brute-force ones.

        Returns:
            Result dictionary, "success" is True iff the tensors agree entrywise
        """
        def compute(group):
            analyzer = ModularAnalyzer(group, tol=self.tol, seed=self.seed, triple_limit=self.triple_limit)
            brute = analyzer.fusion_bruteforce()
            verlinde = analyzer.verlinde_fusion()
            mismatches = np.argwhere(brute.N != verlinde.N)
            match = mismatches.size == 0
            payload = {
                "format": verlinde.to_dict()["format"],
                "group": group.name,
                "match": match,
                "residual": verlinde.residual,
                "labels": [lab.to_dict() for lab in verlinde.labels],
                "N": verlinde.N.tolist(),
            }
            result = {"success": match, "payload": payload, "csv": verlinde.to_csv()}
            if not match:
                i, j, k = (int(x) for x in mismatches[0])
                result["error"] = (f"Verlinde N[{i},{j},{k}] = {verlinde.N[i, j, k]} "
                                   f"but brute force gives {brute.N[i, j, k]}")
                payload["first_mismatch"] = [i, j, k]
            return result

        return self._run("verlinde", spec, compute)

    def nichols(self, spec: Optional[str] = None, label: Optional[Sequence[int]] = None,
                fixture: Optional[str] = None, dim: int = 2, nmax: int = DEFAULT_NMAX) -> Dict[str, Any]:
        """
        Degree dimensions of the Nichols algebra of a braided vector space.

        Args:
            spec: group spec; the braided space is the irreducible module of label
            label: (class index, irrep index); the unit label when omitted
            fixture: "flip" or "-flip" to use the (signed) flip on C^dim instead of a module
            dim: dimension of the fixture space
            nmax: highest degree computed

        Returns:
            Result dictionary with the degree 1..nmax dimensions as payload
        """
        if fixture is None and spec is None:
            error_msg = "nichols needs a group spec or a fixture"
            self.logger.error(error_msg)
            return {"success": False, "command": "nichols", "error": error_msg, "error_kind": "input"}
        if fixture is not None and fixture not in FIXTURES:
            error_msg = f"Unknown fixture '{fixture}'; expected one of {list(FIXTURES)}"
            self.logger.error(error_msg)
            return {"success": False, "command": "nichols", "error": error_msg, "error_kind": "input"}
        if nmax < 1 or dim < 1:
            error_msg = f"nmax and dim must be positive, got nmax={nmax}, dim={dim}"
            self.logger.error(error_msg)
            return {"success": False, "command": "nichols", "error": error_msg, "error_kind": "input"}

        def compute(group):
            if fixture is not None:
                c = flip_braiding(dim, -1.0 if fixture == "-flip" else 1.0)
                space_dim, source = dim, fixture
            else:
                classifier = MackeyClassifier(group, tol=self.tol, seed=self.seed)
                k, r = label if label is not None else (0, 0)
                try:
                    lab = classifier.label(k, r)
                except ValueError as e:
                    raise GroupSpecError(f"no irreducible label ({k},{r}) for {group.name}") from e
                module = classifier.induce_module(lab)
                c = braiding_matrix(module, module)
                space_dim, source = module.dimension, f"{group.name} {lab}"

            degree_dims = nichols_degree_dims(c, space_dim, n_max=nmax, limit=self.symmetrizer_limit)
            payload = {
                "source": source,
                "dim": space_dim,
                "nmax": nmax,
                "degree_dims": degree_dims,
                "ybe_deviation": yang_baxter_deviation(c, space_dim),
                "reduced_word_deviation": reduced_word_deviation(c, space_dim, min(nmax, 4)),
            }
            success = payload["reduced_word_deviation"] <= self.tol and payload["ybe_deviation"] <= self.tol
            rows = ["degree,dimension"] + [f"{n},{d}" for n, d in enumerate(degree_dims, 1)]
            return {"success": success, "payload": payload, "csv": "\n".join(rows) + "\n"}

        return self._run("nichols", spec, compute,
                         {"label": list(label) if label else None, "nmax": nmax})

    def get_cache_stats(self) -> Dict[str, Any]:
        """Per-command statistics of the result cache, or an error entry when caching is off."""
        if not self.cache:
            return {"error": "Caching is disabled"}
        return self.cache.get_cache_stats()

    def clear_cache(self, spec: Optional[str] = None, command: Optional[str] = None) -> int:
        """
        Remove cached results, optionally only those of one group and/or command.

        Returns:
            Number of results removed, -1 when caching is off or the database fails

        Raises:
            GroupSpecError: spec does not describe a group
        """
        if not self.cache:
            return -1
        group_key = self.load_group(spec).key if spec else None
        return self.cache.clear_cache(group_key=group_key, command=command)

    def cleanup_cache(self, max_age_days: float) -> int:
        """Drop cached results unused for more than max_age_days; -1 when caching is off."""
        if not self.cache:
            return -1
        return self.cache.prune_stale_results(max_age_days)

    def cache_command(self, action: str = "stats", spec: Optional[str] = None,
                      command: Optional[str] = None, max_age_days: Optional[float] = None) -> Dict[str, Any]:
        """
        Maintenance entry point behind ``dgd cache``.

        Args:
            action: "stats", "clear" or "prune"
            spec: restrict "clear" to one group
            command: restrict "clear" to one command
            max_age_days: age limit for "prune"

        Returns:
            Result dictionary whose payload holds the removed count and the statistics afterwards
        """
        if not self.cache:
            return {"success": False, "command": "cache", "error": "Caching is disabled", "error_kind": "input"}
        if action not in CACHE_ACTIONS:
            error_msg = f"Unknown cache action '{action}'; expected one of {list(CACHE_ACTIONS)}"
            self.logger.error(error_msg)
            return {"success": False, "command": "cache", "error": error_msg, "error_kind": "input"}

        removed = None
        try:
            if action == "clear":
                removed = self.clear_cache(spec, command)
            elif action == "prune":
                if max_age_days is None:
                    raise ValueError("prune needs an age in days")
                removed = self.cleanup_cache(max_age_days)
        except (GroupSpecError, GroupAxiomError, ValueError) as e:
            error_msg = f"cache {action} rejected its input: {str(e)}"
            self.logger.error(error_msg)
            return {"success": False, "command": "cache", "error": error_msg, "error_kind": "input"}

        stats = self.get_cache_stats()
        payload = {"action": action, "stats": stats}
        if removed is not None:
            payload["removed"] = removed
        rows = ["command,entries,uses"] + [f"{name},{row['entries']},{row['uses']}"
                                           for name, row in stats.get("commands", {}).items()]
        success = bool(stats) and (removed is None or removed >= 0)
        return {"success": success, "command": "cache", "payload": payload, "csv": "\n".join(rows) + "\n"}


def analyze(command: str, spec: Optional[str], **kwargs) -> Dict[str, Any]:
    """
    Convenience function to run one command with default settings.

    Args:
        command: one of group, verify, irreps, fusion, modular, verlinde, nichols
        spec: group spec string
        **kwargs: keyword arguments of the command method

    Returns:
        Result dictionary
    """
    analyzer = DoubleAnalyzer(use_cache=False)
    methods = {
        "group": analyzer.group_summary,
        "verify": analyzer.verify,
        "irreps": analyzer.irreps,
        "fusion": analyzer.fusion,
        "modular": analyzer.modular,
        "verlinde": analyzer.verlinde,
        "nichols": analyzer.nichols,
    }
    if command not in methods:
        raise ValueError(f"Unknown command '{command}'; expected one of {sorted(methods)}")
    return methods[command](spec, **kwargs)


def format_pretty(result: Dict[str, Any]) -> str:
    """Human-readable rendering of a result dictionary."""
    if not result.get("success") and "payload" not in result:
        return f"❌ {result.get('command', 'command')} failed: {result.get('error', 'Unknown error')}\n"
    payload = result["payload"]
    lines = [f"{'✅' if result['success'] else '❌'} {result['command']}"]
    for key, value in payload.items():
        if isinstance(value, float):
            value = f"{value:.3e}"
        elif isinstance(value, complex):
            value = format_complex(value)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"  {key}:")
            for item in value:
                lines.append("    " + ", ".join(f"{k}={v}" for k, v in item.items()
                                               if not isinstance(v, (list, dict))))
            continue
        lines.append(f"  {key}: {value}")
    if result.get("error"):
        lines.append(f"  error: {result['error']}")
    return "\n".join(lines) + "\n"
