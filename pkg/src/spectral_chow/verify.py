"""Seeded cross-check battery over random commuting tuples.

Each trial builds a tuple with a known spectrum and checks, by independent
routes, that every invariant of the spectral-data theory holds exactly.
Output is a deterministic text table (and optional JSON); trials may run in
worker processes but results are always assembled in trial order.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from . import chow, spectra, symtensor
from .fields import QQ, field_from_descriptor
from .generate import instance_for_trial, random_invertible
from .matrix import Matrix
from .rng import Stream

CHECKS = (
    "spectral_datum",
    "round_trip",
    "conjugation_invariance",
    "local_modules",
    "trace_power_sums",
    "newton_factorization",
    "cayley_hamilton",
    "chow2_membership",
)


@dataclass
class TrialResult:
    index: int
    n: int
    d: int
    outcomes: dict = dc_field(default_factory=dict)  # check -> None (n/a), True, or error text


def _local_modules_ok(t, cycle) -> bool:
    mods = spectra.local_modules(t)
    if [(m.point, m.length) for m in mods] != list(cycle.entries):
        return False
    for m in mods:
        for a in m.nilpotents:
            if not (a ** m.length).is_zero():
                return False
        if not spectra.check_commuting(m.nilpotents)[0]:
            return False
    # stacking the local bases block-diagonalises the tuple
    basis = Matrix.from_columns([c for m in mods for c in zip(*m.basis.rows)], t.n, t.thetas[0].ring)
    inv = basis.inverse()
    for j, theta in enumerate(t.thetas):
        blocks = [Matrix.identity(m.length, basis.ring).scale(m.point[j]) + m.nilpotents[j]
                  for m in mods]
        if inv @ theta @ basis != Matrix.block_diag(blocks, basis.ring):
            return False
    return True


def run_trial(seed: int, index: int, max_n: int, max_d: int, field=QQ,
              ch_forms: int = 20) -> TrialResult:
    inst = instance_for_trial(seed, index, max_n, max_d, field)
    t, cycle = inst.tuple, inst.cycle
    res = TrialResult(index, t.n, t.d)

    def record(name, fn):
        try:
            res.outcomes[name] = True if fn() else "mismatch"
        except Exception as exc:  # any failure of a check is reported, never raised
            res.outcomes[name] = f"{type(exc).__name__}: {exc}"

    datum = {}

    def sd():
        datum["z"] = spectra.spectral_datum(t)
        return datum["z"] == cycle

    record("spectral_datum", sd)
    z = datum.get("z", cycle)
    record("round_trip",
           lambda: spectra.spectral_datum(spectra.cycle_to_tuple(cycle, field)) == cycle)
    q = random_invertible(Stream(seed, 2, index), t.n, field)
    record("conjugation_invariance", lambda: spectra.spectral_datum(t.conjugate(q)) == z)
    record("local_modules", lambda: _local_modules_ok(t, cycle))
    record("trace_power_sums",
           lambda: spectra.trace_powers(t) == symtensor.power_sums_from_points(z.expand()))
    record("newton_factorization",
           lambda: symtensor.newton_p_to_e(spectra.trace_powers(t)) == chow.iota(z))
    record("cayley_hamilton",
           lambda: spectra.cayley_hamilton_check(t, z, trials=ch_forms, seed=seed + index).ok)
    if t.n == 2 and t.d == 2:
        def member():
            a = chow.iota(z)
            return chow.chow2_membership([a[1].coeff((1, 0)), a[1].coeff((0, 1))], a[2])
        record("chow2_membership", member)
    else:
        res.outcomes["chow2_membership"] = None
    return res


def _run_star(args):
    return run_trial(*args)


@dataclass
class VerifyReport:
    seed: int
    trials: int
    max_n: int
    max_d: int
    field: object
    results: list

    @property
    def ok(self) -> bool:
        return all(v is None or v is True for r in self.results for v in r.outcomes.values())

    def summary(self) -> dict:
        out = {}
        for name in CHECKS:
            vals = [r.outcomes.get(name) for r in self.results]
            passed = sum(1 for v in vals if v is True)
            failed = [(r.index, v) for r, v in zip(self.results, vals) if v not in (None, True)]
            out[name] = {"applicable": passed + len(failed), "passed": passed, "failed": failed}
        return out

    def failing_checks(self) -> list[str]:
        return [k for k, v in self.summary().items() if v["failed"]]

    def to_text(self) -> str:
        lines = [
            "spectral-chow verify",
            f"seed={self.seed} trials={self.trials} max_n={self.max_n} max_d={self.max_d} "
            f"field={self.field!r}",
            "",
            f"{'check':<24}{'applicable':>11}{'passed':>9}{'failed':>9}  status",
        ]
        summ = self.summary()
        for name in CHECKS:
            s = summ[name]
            status = "PASS" if not s["failed"] else "FAIL"
            lines.append(f"{name:<24}{s['applicable']:>11}{s['passed']:>9}{len(s['failed']):>9}  {status}")
        fails = [(name, i, why) for name in CHECKS for i, why in summ[name]["failed"]]
        if fails:
            lines += ["", "first failures:"]
            for name, i, why in fails[:20]:
                lines.append(f"  trial {i}: {name}: {why}")
        lines += ["", "RESULT: " + ("PASS" if self.ok else "FAIL")]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "seed": self.seed, "trials": self.trials, "max_n": self.max_n, "max_d": self.max_d,
            "field": self.field.descriptor(), "ok": self.ok,
            "checks": {k: {"applicable": v["applicable"], "passed": v["passed"],
                           "failed": [{"trial": i, "reason": why} for i, why in v["failed"]]}
                       for k, v in self.summary().items()},
        }
        return json.dumps(doc, indent=2) + "\n"


def run_verify(seed: int = 1, trials: int = 100, max_n: int = 4, max_d: int = 3,
               field=QQ, jobs: int = 1) -> VerifyReport:
    if isinstance(field, str):
        field = field_from_descriptor(field)
    args = [(seed, i, max_n, max_d, field) for i in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_star, args, chunksize=max(1, trials // (4 * jobs))))
    else:
        results = [run_trial(*a) for a in args]
    results.sort(key=lambda r: r.index)
    return VerifyReport(seed, trials, max_n, max_d, field, results)
