import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Union

import bijections
import closedform
import lattice
import permstats
import series
import tableaux
from hslab_config import get_all_suites, get_fixture_path, get_thread_count, get_verify_defaults, is_valid_suite
from polynomials import IntPolynomial
from verdicts import Stopwatch, VerdictReport

logger = logging.getLogger(__name__)

Outcome = Union[VerdictReport, List[VerdictReport]]


def _stamp(reports: List[VerdictReport], elapsed_ms: float) -> None:
    """Give untimed reports an equal share of the call that produced them."""
    for report in reports:
        if not report.wall_ms:
            report.wall_ms = elapsed_ms / len(reports)


@dataclass(frozen=True)
class IdentityCheck:
    """A registered identity: its report name, suite and how to run it."""

    name: str
    suite: str
    run: Callable[[], Outcome]


class VerificationService:
    """Service for running the registered identity checks"""

    def __init__(self, max_n: Optional[int] = None, max_r: Optional[int] = None,
                 fixture_path: Optional[str] = None, threads: Optional[int] = None):
        self.settings = get_verify_defaults()
        if max_n is not None:
            self.settings["max_n"] = max_n
        if max_r is not None:
            self.settings["max_r"] = max_r
        self.fixture_path = fixture_path or get_fixture_path()
        self.threads = threads or get_thread_count()
        self._registry = self._build_registry()

    def _build_registry(self) -> List[IdentityCheck]:
        s = self.settings
        n, r = s["max_n"], s["max_r"]
        small_n = min(n, 4)

        def per_r(fn: Callable[[int], Outcome]) -> Callable[[], List[VerdictReport]]:
            def run() -> List[VerdictReport]:
                out: List[VerdictReport] = []
                for rr in range(1, r + 1):
                    with Stopwatch() as watch:
                        result = fn(rr)
                    batch = result if isinstance(result, list) else [result]
                    _stamp(batch, watch.elapsed_ms)
                    out.extend(batch)
                return out
            return run

        checks = [
            # permstats
            ("permstats.equidistribution", "permstats", lambda: permstats.verify_equidistribution(n, r)),
            ("permstats.pair_equidistribution", "permstats",
             lambda: permstats.verify_pair_equidistribution(n, r, self.threads)),
            ("permstats.fexc_fdes_negative", "permstats",
             lambda: permstats.verify_fexc_fdes_not_equidistributed(small_n, r)),
            ("permstats.li_equidistribution", "permstats",
             lambda: permstats.verify_li_equidistribution(n, r)),
            ("permstats.total_mass", "permstats", lambda: permstats.verify_total_mass(n, r)),
            # bijections
            ("bijections.std_example", "bijections", bijections.verify_std_example),
            ("bijections.phi_grid", "bijections",
             lambda: bijections.verify_phi_grid(s["grid_n"], r, s["grid_t"])),
            ("bijections.cstd_floor", "bijections",
             lambda: bijections.verify_cstd_floor(s["grid_n"], r, s["grid_t"])),
            ("bijections.alpha", "bijections", lambda: bijections.verify_alpha(n, r)),
            ("bijections.alpha_star", "bijections", lambda: bijections.verify_alpha_star(n, r)),
            ("bijections.block_involution", "bijections",
             lambda: bijections.verify_block_involution(n, r)),
            ("bijections.involution_example", "bijections", bijections.verify_involution_example),
            # lattice
            ("lattice.dp_matches_naive", "lattice", lambda: lattice.verify_dp_matches_naive(3, min(r, 2), 3)),
            ("lattice.interpolation", "lattice", lambda: lattice.verify_interpolation(small_n, r, self.threads)),
            ("lattice.cell_lemmas", "lattice", lambda: lattice.verify_cell_lemmas(n)),
            ("lattice.cell_decomposition", "lattice", lambda: lattice.verify_cell_decomposition(n)),
            ("lattice.eulerian_series", "lattice", lambda: lattice.verify_eulerian_series(6)),
            ("lattice.a_series", "lattice", lambda: lattice.verify_a_series(n, r)),
            ("lattice.b_series", "lattice", lambda: lattice.verify_b_series(n, r)),
            ("lattice.inclusion_exclusion", "lattice", lambda: lattice.verify_inclusion_exclusion(small_n, r)),
            ("lattice.slice_additivity", "lattice", lambda: lattice.verify_slice_additivity(small_n, r)),
            # closedform
            ("closedform.a_closed", "closedform", lambda: closedform.verify_a_closed(small_n, r)),
            ("closedform.b_closed", "closedform", lambda: closedform.verify_b_closed(small_n, r)),
            ("closedform.flag_eulerian", "closedform", lambda: closedform.verify_flag_eulerian_closed(n, r)),
            ("closedform.eulerian_specialization", "closedform",
             lambda: closedform.verify_eulerian_specialization(6)),
            ("closedform.constant_term", "closedform", lambda: closedform.verify_constant_term(3, r, 5)),
            # series
            ("series.rel_ab", "series", per_r(lambda rr: series.verify_rel_ab(rr, s["series_nx"]))),
            ("series.rel_ac", "series", per_r(lambda rr: series.verify_rel_ac(rr, s["series_nx"]))),
            ("series.b_equals_c", "series", per_r(lambda rr: series.verify_b_equals_c(rr, s["series_nx"]))),
            ("series.b_cube_marginal", "series",
             per_r(lambda rr: series.verify_b_cube_marginal(rr, s["series_nx"]))),
            ("series.foata_han", "series", per_r(lambda rr: series.verify_foata_han(rr, s["ogf_nx"]))),
            ("series.formula_beta_wn", "series",
             per_r(lambda rr: series.verify_formula_beta_wn(rr, s["ogf_nx"]))),
            ("series.frm_simplification", "series",
             per_r(lambda rr: series.verify_frm_simplification(rr, s["ogf_nx"]))),
            ("series.ogf_a", "series", per_r(lambda rr: series.verify_ogf("A", rr, s["ogf_nx"]))),
            ("series.ogf_c", "series", per_r(lambda rr: series.verify_ogf("C", rr, s["ogf_nx"]))),
            ("series.bijective_display", "series",
             per_r(lambda rr: series.verify_bijective_display(rr, s["series_nx"]))),
            ("series.beta", "series", lambda: series.verify_beta_properties(r)),
            ("series.beta_marginal", "series", per_r(lambda rr: series.verify_beta_marginal(rr, n))),
            ("series.polynomial_identities", "series",
             per_r(lambda rr: series.verify_polynomial_identities(rr, small_n))),
            # tableaux
            ("tableaux.syt_counts", "tableaux", lambda: tableaux.verify_syt_counts(8)),
            ("tableaux.hook_content", "tableaux", lambda: tableaux.verify_hook_content(6, 6)),
            ("tableaux.sytdes", "tableaux", lambda: tableaux.verify_sytdes_all(s["sytdes_size"])),
            ("tableaux.rsk_identity", "tableaux", lambda: tableaux.verify_rsk_identity(s["rsk_size"])),
            # fixtures
            ("fixtures.flag_eulerian", "fixtures", self.check_flag_eulerian_fixture),
            ("fixtures.b_polynomials", "fixtures", self.check_b_polynomial_fixture),
        ]
        return [IdentityCheck(name, suite, run) for name, suite, run in checks]

    def identities(self, suite: str = "all") -> List[IdentityCheck]:
        """Registered checks for a suite, in registry order."""
        if not is_valid_suite(suite):
            raise ValueError(f"unknown suite {suite!r}; expected 'all' or one of {get_all_suites()}")
        if suite == "all":
            return list(self._registry)
        return [c for c in self._registry if c.suite == suite.lower()]

    def run_identity(self, check: IdentityCheck) -> List[VerdictReport]:
        """Run one check; an unexpected exception becomes a failing report."""
        with Stopwatch() as watch:
            try:
                outcome = check.run()
                reports = outcome if isinstance(outcome, list) else [outcome]
            except Exception as e:
                logger.error(f"Identity {check.name} raised {type(e).__name__}: {e}")
                reports = [VerdictReport.failure(check.name, dict(self.settings),
                                                 {"error": f"{type(e).__name__}: {e}"})]
        _stamp(reports, watch.elapsed_ms)
        for report in reports:
            if not report.passed:
                logger.error(f"Identity {report.identity} failed: {report.witness}")
        return reports

    def run(self, suite: str = "all") -> List[VerdictReport]:
        checks = self.identities(suite)
        logger.info(f"Running {len(checks)} identity checks (suite={suite}, threads={self.threads})")
        if self.threads > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                batches = list(pool.map(self.run_identity, checks))
        else:
            batches = [self.run_identity(c) for c in checks]
        return [report for batch in batches for report in batch]

    # ---------- fixtures ----------

    def load_fixtures(self) -> Dict:
        with open(self.fixture_path, "r", encoding="utf-8") as f:
            return json.load(f)

    def check_flag_eulerian_fixture(self) -> VerdictReport:
        params = {"path": self.fixture_path}
        for entry in self.load_fixtures().get("flag_eulerian", []):
            n, r = int(entry["n"]), int(entry["r"])
            stored = [int(v) for v in entry["row"]]
            computed = permstats.flag_eulerian_row(n, r)
            if stored != computed:
                return VerdictReport.failure("fixtures.flag_eulerian", params,
                                             {"n": n, "r": r, "stored": stored, "computed": computed})
        return VerdictReport.success("fixtures.flag_eulerian", params)

    def check_b_polynomial_fixture(self) -> VerdictReport:
        params = {"path": self.fixture_path}
        for entry in self.load_fixtures().get("b_polynomials", []):
            n, r, k = int(entry["n"]), int(entry["r"]), int(entry["k"])
            stored = IntPolynomial(tuple(int(v) for v in entry["coeffs"]))
            computed = lattice.b_polynomial(n, r, k)
            if stored != computed:
                return VerdictReport.failure("fixtures.b_polynomials", params,
                                             {"n": n, "r": r, "k": k, "stored": stored.to_strings(),
                                              "computed": computed.to_strings()})
        return VerdictReport.success("fixtures.b_polynomials", params)
