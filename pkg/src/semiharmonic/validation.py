"""End-to-end acceptance checks, shared by ``semiharmonic validate``.

Each check returns a :class:`CheckResult` carrying the worst deviation found
and the tolerance it was held to. Checks are grouped as ``reference`` (target
values and qualitative claims), ``oracles`` (independent cross-checks) and
``structure`` (unitarity, determinants, defining relations).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from semiharmonic import harmonic, scattering, spectra, stepladder, timing
from semiharmonic.model import delta_config, unit_area_symmetric

TABLE1 = {2.5: 0.03406092, 2.0: 0.05056413, 1.5: 0.07205970, 1.0: 0.10100123, 0.5: 0.16473112}
E_DELTA_LIMIT = 0.45727096
E0_DELTA = -0.25
E0_DELTA_BACKGROUND = -0.0797104
E_PHASE_FEATURE = 0.16208517
GROUPS = ("reference", "oracles", "structure")


@dataclass
class CheckResult:
    key: str
    title: str
    group: str
    passed: bool
    delta: float
    tolerance: float
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.key:<4} {self.title:<44} dev={self.delta:.3e} tol={self.tolerance:.1e}"


def check_table1() -> CheckResult:
    found = {a: timing.first_sign_change(unit_area_symmetric(a), 1e-3, 1.0) for a in TABLE1}
    dev = max(abs(found[a] - TABLE1[a]) for a in TABLE1)
    return CheckResult("C1", "sign-change energies E_a", "reference", dev <= 1e-4, dev, 1e-4,
                       {str(a): found[a] for a in TABLE1})


def check_delta_limit() -> CheckResult:
    lim = timing.delta_limit_ea(1.0)
    dev = abs(lim.extrapolated - E_DELTA_LIMIT)
    return CheckResult("C2", "zero-width limit E_(a=0)", "reference", dev <= 1e-3, dev, 1e-3,
                       {"extrapolated": lim.extrapolated, "direct": lim.direct,
                        "a": list(lim.a_values), "E_a": list(lim.e_values)})


def check_bound_states() -> CheckResult:
    bare = spectra.bound_states(delta_config(1.0), background="flat")
    dressed = spectra.bound_states(delta_config(1.0))
    counts = spectra.count_by_area(1.0, [0.5, 1.0, 2.5])
    dev_bare = abs(bare[0].e - E0_DELTA) if len(bare) == 1 else math.inf
    dev_dressed = abs(dressed[0].e - E0_DELTA_BACKGROUND) if len(dressed) == 1 else math.inf
    ok = dev_bare <= 1e-12 and dev_dressed <= 1e-5 and counts == [1, 1, 1]
    return CheckResult("C3", "bound states of unit-area wells", "reference", ok, max(dev_bare, dev_dressed), 1e-5,
                       {"delta_bare": [s.e for s in bare], "delta_background": [s.e for s in dressed],
                        "dev_bare": dev_bare, "counts": counts})


def check_phase_feature() -> CheckResult:
    cfg = unit_area_symmetric(2.5)
    changes = scattering.slope_sign_changes(cfg, 0.001, 1.0, 400)
    dev = min((abs(e - E_PHASE_FEATURE) for e in changes), default=math.inf)
    pts = scattering.phase_curve(cfg, 0.01, 0.15, 400)
    es = np.array([p.e for p in pts])
    slopes = np.diff([p.delta for p in pts]) / np.diff(es)
    negative = bool(np.all(slopes < 0))
    return CheckResult("C4", "phase-shift slope change", "reference", dev <= 1e-4 and negative, dev, 1e-4,
                       {"slope_changes": changes, "negative_on_0.01_0.15": negative})


def check_negative_delay() -> CheckResult:
    ok = True
    detail = {}
    for a, e_a in TABLE1.items():
        cfg = unit_area_symmetric(a)
        window = [timing.tau_e(cfg, e_a / f) for f in (8, 4, 2)]
        ramp = [timing.tau_e(cfg, e) for e in np.linspace(e_a / 100, e_a / 2, 10)]
        row_ok = max(window) < 0 and bool(np.all(np.diff(ramp) > 0))
        ok &= row_ok
        detail[str(a)] = {"tau_e": window, "monotone": row_ok}
    return CheckResult("C5", "negative delay grows toward threshold", "reference", ok, 0.0 if ok else 1.0, 0.0, detail)


def check_asymptote(n: int = 1000) -> CheckResult:
    cfg = delta_config(1.0)
    taus = np.array([timing.tau_e(cfg, e) for e in np.linspace(2.0, 10.0, n)])
    dev = abs(taus.mean() - math.pi / 2)
    crossings = int(np.count_nonzero(np.diff(np.sign(taus - math.pi / 2))))
    return CheckResult("C6", "tau_E oscillates about pi/2 (a = 0)", "reference", dev <= 0.05 and crossings >= 5, dev, 0.05,
                       {"mean": float(taus.mean()), "crossings": crossings, "crossings_required": 5})


def check_resonance_shift() -> CheckResult:
    wide = timing.delay_maxima(unit_area_symmetric(0.4), 0.05, 10.0).maxima
    narrow = timing.delay_maxima(unit_area_symmetric(0.03), 0.05, 10.0).maxima
    ok = bool(wide and narrow and narrow[0] > wide[0])
    gap = narrow[0] - wide[0] if wide and narrow else -math.inf
    return CheckResult("C7", "delay maxima move up as a -> 0", "reference", ok, gap, 0.0,
                       {"maxima_a0.4": wide, "maxima_a0.03": narrow})


def check_anchors() -> CheckResult:
    xs = np.linspace(-3.0, -0.1, 59)
    dev1 = max(abs(harmonic.log_derivative(1.0, x) + x) for x in xs)
    dev3 = max(abs(harmonic.log_derivative(3.0, x) - (1 / x - x)) for x in xs)
    dev = max(dev1, dev3)
    return CheckResult("C8", "exact log-derivative anchors k2 = 1, 3", "oracles", dev <= 1e-10, dev, 1e-10,
                       {"k2=1": dev1, "k2=3": dev3})


def check_oracles(n_energies: int = 25) -> CheckResult:
    phase_dev = 0.0
    for a in (0.5, 2.5):
        cfg = unit_area_symmetric(a)
        for e in np.geomspace(0.05, 10.0, n_energies):
            exact = scattering.reflection_amplitude(cfg, e).s
            ladder = scattering.ladder_reflection(cfg, e)
            phase_dev = max(phase_dev, abs(np.angle(ladder / exact)))
    bound_dev = 0.0
    for cfg in (unit_area_symmetric(0.5), unit_area_symmetric(2.5), delta_config(1.0)):
        exact = [s.e for s in spectra.bound_states(cfg)]
        ladder = [s.e for s in spectra.bound_states(cfg, background="ladder", n_scan=60)]
        if len(exact) != len(ladder):
            bound_dev = math.inf
            break
        bound_dev = max([bound_dev] + [abs(x - y) for x, y in zip(exact, ladder)])
    errs = [abs(stepladder.ladder_log_derivative(1.0, stepladder.discretize_harmonic(-8.0, -2.0, n)) - 2.0)
            for n in (1000, 2000, 4000)]
    ratios = [errs[0] / errs[1], errs[1] / errs[2]]
    order_ok = all(abs(r - 4.0) <= 0.4 for r in ratios)
    ok = phase_dev <= 1e-5 and bound_dev <= 1e-6 and order_ok
    return CheckResult("C9", "exact vs step-ladder oracle", "oracles", ok, phase_dev, 1e-5,
                       {"phase_dev": phase_dev, "bound_dev": bound_dev, "error_ratios": ratios})


def check_structure(seed: int = 20111) -> CheckResult:
    rng = np.random.default_rng(seed)
    unit_dev = 0.0
    for cfg in (unit_area_symmetric(2.5), unit_area_symmetric(0.5), delta_config(1.0)):
        for e in rng.uniform(0.0, 20.0, 1000):
            if e > 0:
                unit_dev = max(unit_dev, abs(abs(scattering.reflection_amplitude(cfg, e).s) - 1.0))
    det_dev = 0.0
    for e, v, w in zip(rng.uniform(-5, 5, 10_000), rng.uniform(-5, 5, 10_000), rng.uniform(1e-3, 1.0, 10_000)):
        det_dev = max(det_dev, abs(stepladder.segment_matrix(e, v, w).det - 1.0))
    cfg = unit_area_symmetric(2.5)
    exact_relation = True
    cross_dev = 0.0
    for e in np.linspace(0.5, 5.0, 19):
        s = timing.tau_w(cfg, e)
        exact_relation &= s.tau_w == s.tau_p - s.tau_e
        k = math.sqrt(e)
        h = 1e-4 * e
        lo, hi = scattering.phase_paper(cfg, e - h), scattering.phase_paper(cfg, e + h)
        d_paper = scattering._wrap(hi - lo) / (2 * h)
        d_delta = scattering.phase_slope(cfg, e, h) + 2 * cfg.b / (2 * k)
        cross_dev = max(cross_dev, abs(d_delta - d_paper) / abs(d_paper))
        tw_delta = scattering.PHASE_TIME_SIGN * scattering.phase_slope(cfg, e, h)
        cross_dev = max(cross_dev, abs(tw_delta - s.tau_w) / abs(s.tau_w))
    ok = unit_dev <= 1e-10 and det_dev <= 1e-12 and exact_relation and cross_dev <= 1e-4
    return CheckResult("C10", "unitarity, determinants, delay relations", "structure", ok, cross_dev, 1e-4,
                       {"unitarity_dev": unit_dev, "det_dev": det_dev, "tau_relation_exact": exact_relation,
                        "cross_method_rel_dev": cross_dev})


CHECKS: dict[str, tuple[str, Callable[[], CheckResult]]] = {
    "C1": ("reference", check_table1),
    "C2": ("reference", check_delta_limit),
    "C3": ("reference", check_bound_states),
    "C4": ("reference", check_phase_feature),
    "C5": ("reference", check_negative_delay),
    "C6": ("reference", check_asymptote),
    "C7": ("reference", check_resonance_shift),
    "C8": ("oracles", check_anchors),
    "C9": ("oracles", check_oracles),
    "C10": ("structure", check_structure),
}


def run_checks(only: str | None = None) -> list[CheckResult]:
    return [fn() for group, fn in CHECKS.values() if only is None or group == only]


def report(results: list[CheckResult]) -> dict:
    return {"passed": all(r.passed for r in results), "criteria": [asdict(r) for r in results]}
