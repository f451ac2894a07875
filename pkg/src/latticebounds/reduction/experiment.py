"""Random-basis experiments comparing KZ-reduced bases with the bound formulas."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .. import hermite, kzconst, schnorr_rankin
from .kz import is_kz_reduced, kz_reduce
from .linalg import int_det, is_unimodular

EMPIRICAL_CAP = 10
BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class Sample:
    """Measurements on one KZ-reduced random basis."""

    kz_ratio: float        # lambda^2 / r_nn^2
    hermite_ratio: float   # lambda^2 / |det|^(2/n)
    beta_ratio: Optional[float]  # (prod_{i<=k} r_ii / prod_{i>k} r_ii)^(2/k), n = 2k
    kz_reduced: bool
    unimodular: bool
    det_rel_error: float
    draws: int


@dataclass(frozen=True)
class EmpiricalStats:
    rank: int
    trials: int
    seed: int
    entry_bound: int
    draws: int
    kz_ratio_max: float
    kz_ratio_mean: float
    kz_bound: float
    hermite_ratio_max: float
    hermite_ratio_mean: float
    hermite_bound: float
    beta_ratio_max: Optional[float]
    beta_ratio_mean: Optional[float]
    beta_bound: Optional[float]
    all_kz_reduced: bool
    all_unimodular: bool
    max_det_rel_error: float
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


def random_basis(rng: np.random.Generator, rank: int, entry_bound: int) -> np.ndarray:
    return rng.integers(-entry_bound, entry_bound + 1, size=(rank, rank))


def beta_ratio(r: np.ndarray) -> Optional[float]:
    """(prod_{i<=k} r_ii / prod_{i>k} r_ii)^(2/k) for a rank-2k R-factor, else None."""
    n = r.shape[0]
    if n % 2:
        return None
    k = n // 2
    logs = np.log(np.abs(np.diag(r)))
    return math.exp(2 / k * (math.fsum(logs[:k]) - math.fsum(logs[k:])))


def measure(a: np.ndarray, det: int, draws: int = 1) -> Sample:
    n = a.shape[1]
    res = kz_reduce(a)
    r = res.r
    lam = res.shortest_length
    vol = float(np.prod(np.abs(np.diag(r))))
    return Sample(
        kz_ratio=(lam / r[-1, -1]) ** 2,
        hermite_ratio=math.exp(2 * math.log(lam) - 2 * math.log(abs(det)) / n),
        beta_ratio=beta_ratio(r),
        kz_reduced=bool(is_kz_reduced(r)),
        unimodular=is_unimodular(res.transform),
        det_rel_error=abs(vol - abs(det)) / abs(det),
        draws=draws,
    )


def _trial(args) -> Sample:
    seed_seq, rank, entry_bound, max_draws = args
    rng = np.random.default_rng(seed_seq)
    for draw in range(1, max_draws + 1):
        a = random_basis(rng, rank, entry_bound)
        det = int_det(a)
        if det:
            return measure(a.astype(float), det, draw)
    raise RuntimeError("no full-rank basis within the draw budget")


def empirical_ratios(
    rank: int,
    trials: int,
    seed: int,
    entry_bound: int = 50,
    jobs: int = 1,
) -> EmpiricalStats:
    """KZ-reduce ``trials`` random integer bases and compare with the best bounds.

    Trial t draws from its own child of ``SeedSequence(seed)``, so results do
    not depend on ``jobs``. Singular draws are redrawn, with the total number
    of draws capped at 100 * trials.
    """
    if not 1 <= rank <= EMPIRICAL_CAP:
        raise ValueError(f"rank must be in 1..{EMPIRICAL_CAP}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if entry_bound < 1:
        raise ValueError("entry bound must be >= 1")
    children = np.random.SeedSequence(seed).spawn(trials)
    budget = 100 * trials
    # each trial may redraw, but together they may not exceed the budget
    per_trial = max(1, budget - (trials - 1))
    tasks = [(c, rank, entry_bound, per_trial) for c in children]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            samples = list(pool.map(_trial, tasks))
    else:
        samples = [_trial(t) for t in tasks]
    draws = sum(s.draws for s in samples)
    if draws > budget:
        raise RuntimeError("draw budget exceeded")

    kz_bound = kzconst.kz_best_upper(rank).value
    herm_bound = hermite.best_upper(rank).value
    betas = [s.beta_ratio for s in samples if s.beta_ratio is not None]
    beta_bound = schnorr_rankin.schnorr_best_upper(rank // 2).value if betas else None

    violations = []
    for t, s in enumerate(samples):
        if s.kz_ratio > kz_bound * (1 + BOUND_SLACK):
            violations.append(f"trial {t}: lambda^2/r_nn^2 = {s.kz_ratio:.17g} > {kz_bound:.17g}")
        if s.hermite_ratio > herm_bound * (1 + BOUND_SLACK):
            violations.append(f"trial {t}: lambda^2/det^(2/n) = {s.hermite_ratio:.17g} > {herm_bound:.17g}")
        if s.beta_ratio is not None and s.beta_ratio > beta_bound * (1 + BOUND_SLACK):
            violations.append(f"trial {t}: beta ratio {s.beta_ratio:.17g} > {beta_bound:.17g}")
        if not s.kz_reduced:
            violations.append(f"trial {t}: output not KZ reduced")
        if not s.unimodular:
            violations.append(f"trial {t}: transform not unimodular")
        if s.det_rel_error >= 1e-8:
            violations.append(f"trial {t}: determinant drift {s.det_rel_error:.3g}")

    kz = [s.kz_ratio for s in samples]
    hr = [s.hermite_ratio for s in samples]
    return EmpiricalStats(
        rank=rank,
        trials=trials,
        seed=seed,
        entry_bound=entry_bound,
        draws=draws,
        kz_ratio_max=max(kz),
        kz_ratio_mean=math.fsum(kz) / trials,
        kz_bound=kz_bound,
        hermite_ratio_max=max(hr),
        hermite_ratio_mean=math.fsum(hr) / trials,
        hermite_bound=herm_bound,
        beta_ratio_max=max(betas) if betas else None,
        beta_ratio_mean=math.fsum(betas) / len(betas) if betas else None,
        beta_bound=beta_bound,
        all_kz_reduced=all(s.kz_reduced for s in samples),
        all_unimodular=all(s.unimodular for s in samples),
        max_det_rel_error=max(s.det_rel_error for s in samples),
        violations=violations,
    )
