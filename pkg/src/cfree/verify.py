"""Batch verification suites producing report records.

Every record names the identity it checks by its formula, the parameters and
seed used, a verdict in {pass, fail, skipped}, a witness (first differing
word) for exact failures and a residual for float checks.
"""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from . import fock
from .cumulants import Functional
from .meixner import (MeixnerParams, boolean_shift_jacobi, jacobi_from_moments, meixner_functional,
                      first_failing_degree, meixner_pde_check, psd_check, two_state_pde_residual)
from .samples import random_jacobi_state, random_matrix_state, random_rational, rng_for
from .transforms import (b_map, bercovici_pata, boolean_convolve, boolean_power, delta_state,
                         evolution_check, phi_map)

SUITES = ("semigroup", "evolution", "meixner", "fock", "positivity")
EVOLUTION_TS = (Fraction(-1, 2), Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(3, 2),
                Fraction(2), Fraction(3))
FOCK_CASES = ((1, 1, 1, 6, 7), (1, 2, 2, 5, 6), (2, 2, 1, 5, 6))
MEIXNER_GRID = {
    "b": (Fraction(-1), Fraction(0), Fraction(1, 2)),
    "c": (Fraction(-1), Fraction(0), Fraction(2)),
    "alpha": (Fraction(-2), Fraction(0), Fraction(1, 3)),
    "t": (Fraction(-1, 2), Fraction(1), Fraction(3)),
}


@dataclass
class SuiteConfig:
    seed: int = 0
    N: int = 6
    d: int = 2
    trials: int = 5
    tolerance: float = 1e-9
    exact: bool = False


@dataclass
class CheckRecord:
    suite: str
    identity: str
    params: dict
    verdict: str
    witness: object = None
    residual: float | None = None
    seed: int | None = None
    seconds: float = 0.0

    def to_json(self) -> dict:
        out = asdict(self)
        out["params"] = {k: _jsonable(v) for k, v in self.params.items()}
        out["witness"] = _jsonable(self.witness)
        return out


def _jsonable(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    return v


@dataclass
class Report:
    suite: str
    config: SuiteConfig
    records: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.verdict != "fail" for r in self.records)

    def to_json(self) -> dict:
        return {"suite": self.suite, "config": asdict(self.config),
                "passed": self.passed, "records": [r.to_json() for r in self.records]}


def _exact_record(suite, identity, params, lhs, rhs, seed, start) -> CheckRecord:
    a = lhs.moments if isinstance(lhs, Functional) else lhs
    b = rhs.moments if isinstance(rhs, Functional) else rhs
    w = a.first_difference(b)
    return CheckRecord(suite, identity, params, "pass" if w is None else "fail",
                       None if w is None else list(w), None, seed, time.perf_counter() - start)


def _vec(rng, d):
    return [random_rational(rng, 3, 2) for _ in range(d)]


def _param(rng, forbid=(Fraction(-1),)):
    while True:
        t = random_rational(rng, 3, 2)
        if t not in forbid:
            return t


# -- suites --------------------------------------------------------------------

def suite_semigroup(cfg: SuiteConfig) -> list:
    """``B_{a,t} B_{b,s} = B_{a+b,t+s}`` on random states."""
    out = []
    for k in range(cfg.trials):
        seed = cfg.seed + k
        rng = rng_for(seed)
        sigma = random_matrix_state(rng, cfg.d, cfg.N)
        a, b = _vec(rng, cfg.d), _vec(rng, cfg.d)
        t = _param(rng)
        s = _param(rng, (Fraction(-1), -1 - t))
        start = time.perf_counter()
        lhs = b_map(b_map(sigma, b, s), a, t)
        rhs = b_map(sigma, [x + y for x, y in zip(a, b)], t + s)
        out.append(_exact_record("semigroup", "B_{a,t} B_{b,s} = B_{a+b,t+s}",
                                 {"a": a, "b": b, "t": t, "s": s, "d": cfg.d, "N": cfg.N},
                                 lhs, rhs, seed, start))
    return out


def suite_evolution(cfg: SuiteConfig) -> list:
    """Both evolution identities at seven values of ``t`` (a polynomial identity of degree <= N in t)."""
    out = []
    for k in range(cfg.trials):
        seed = cfg.seed + k
        rng = rng_for(seed)
        rho = bercovici_pata(random_matrix_state(rng, cfg.d, cfg.N))
        psi = random_matrix_state(rng, cfg.d, cfg.N)
        a = [(-1) ** i for i in range(cfg.d)]
        for t in EVOLUTION_TS:
            start = time.perf_counter()
            res = evolution_check(rho, psi, a, t)
            params = {"t": t, "a": a, "d": cfg.d, "N": cfg.N}
            for part in ("part_b", "part_a"):
                rep = res[part]
                w = rep.first_failure
                out.append(CheckRecord("evolution", rep.name, params, "pass" if w is None else "fail",
                                       None if w is None else list(w), None, seed,
                                       time.perf_counter() - start))
    return out


def suite_meixner(cfg: SuiteConfig) -> list:
    """Orbit ``B_{alpha,t}[mu_{b,c}] = mu_{b+alpha,c+t}``, Bernoulli generation, PDE residuals."""
    N = max(cfg.N, 10)
    out = []
    g = MEIXNER_GRID
    for b, c in product(g["b"], g["c"]):
        mu = meixner_functional(MeixnerParams(b, c), N)
        for alpha, t in product(g["alpha"], g["t"]):
            start = time.perf_counter()
            out.append(_exact_record("meixner", "B_{alpha,t}[mu_{b,c}] = mu_{b+alpha,c+t}",
                                     {"b": b, "c": c, "alpha": alpha, "t": t, "N": N},
                                     b_map(mu, alpha, t), meixner_functional((b + alpha, c + t), N),
                                     None, start))
        if c != -2:
            start = time.perf_counter()
            out.append(_exact_record("meixner", "mu_{b,c} = B_{b,1+c}[mu_{0,-1}]", {"b": b, "c": c, "N": N},
                                     b_map(meixner_functional((0, -1), N), b, 1 + c), mu, None, start))
        start = time.perf_counter()
        rep = meixner_pde_check(mu, b, c)
        two = two_state_pde_residual(mu, meixner_functional((0, 0), N), b, c)
        fails = [deg for deg in (rep.r_failing_degree, rep.eta_failing_degree, first_failing_degree(two))
                 if deg is not None]
        out.append(CheckRecord("meixner", "quadratic PDEs for R, eta and R^{phi,psi}", {"b": b, "c": c, "N": N},
                               "fail" if fails else "pass", min(fails) if fails else None, None, None,
                               time.perf_counter() - start))
    # negative control: a non-Meixner law must leave a nonzero residual
    start = time.perf_counter()
    other = boolean_convolve(meixner_functional((1, 0), N), meixner_functional((-1, 1), N))
    rep = meixner_pde_check(other, 0, 0)
    out.append(CheckRecord("meixner", "negative control: PDE residual nonzero off the family",
                           {"b": 0, "c": 0, "N": N}, "pass" if not rep.ok else "fail",
                           rep.r_failing_degree, None, None, time.perf_counter() - start))
    # Jacobi head shift against the series-level Boolean dressing
    for k in range(cfg.trials):
        seed = cfg.seed + k
        rng = rng_for(seed)
        mu = random_jacobi_state(rng, 8)
        alpha, t = random_rational(rng), Fraction(int(rng.integers(1, 5)), int(rng.integers(1, 4)))
        start = time.perf_counter()
        shifted = boolean_shift_jacobi(jacobi_from_moments(mu), alpha, t)
        found = jacobi_from_moments(boolean_convolve(delta_state([alpha], 8), boolean_power(mu, t)))
        ok = found == shifted
        out.append(CheckRecord("meixner", "Jacobi(delta_alpha (+) mu^{(+)t}) = head shift of Jacobi(mu)",
                               {"alpha": alpha, "t": t, "N": 8}, "pass" if ok else "fail",
                               None if ok else [list(found.beta), list(found.gamma)], None, seed,
                               time.perf_counter() - start))
    return out


def suite_fock(cfg: SuiteConfig) -> list:
    """Operator replay of ``B[Phi[rho, psi]] = Phi[rho, psi (+) rho]`` on seeded data."""
    out = []
    for k, (d, dk, dh, N, L) in enumerate(FOCK_CASES):
        seed = cfg.seed + k
        rng = rng_for(seed)
        psi = fock.random_state_data(rng, d, dk)
        mu = fock.random_free_data(rng, d, dh)
        params = {"d": d, "dim_K": dk, "dim_H": dh, "N": N, "L": L, "mode": "exact" if cfg.exact else "float"}
        start = time.perf_counter()
        if cfg.exact:
            psi, mu = fock.exact_data(psi), fock.exact_data(mu)
        try:
            rep = fock.evolution_operator_check(psi, mu, N, L, seed=seed)
        except fock.ModelError as exc:
            out.append(CheckRecord("fock", "B[Phi[rho,psi]] = Phi[rho, psi (+) rho] (operators)", params,
                                   "skipped", str(exc), None, seed, time.perf_counter() - start))
            continue
        out.append(CheckRecord("fock", "B[Phi[rho,psi]] = Phi[rho, psi (+) rho] (operators)", params,
                               "pass" if rep.ok(cfg.tolerance) else "fail", None, rep.residual, seed,
                               time.perf_counter() - start))
    return out


def suite_positivity(cfg: SuiteConfig) -> list:
    """Conditional positivity of the tensor-model eta and positivity of Phi on Jacobi states."""
    out = []
    for k in range(cfg.trials):
        seed = cfg.seed + k
        rng = rng_for(seed)
        psi = fock.random_state_data(rng, cfg.d, 2)
        mu = fock.random_free_data(rng, cfg.d, 2)
        start = time.perf_counter()
        eta = fock.cumulant_series_from_data(fock.tensor_eta_model(psi, mu), cfg.N)
        res = psd_check(eta, cfg.N // 2, conditional=True, eps=cfg.tolerance)
        out.append(CheckRecord("positivity", "eta of the tensor model is conditionally positive",
                               {"d": cfg.d, "N": cfg.N, "level": cfg.N // 2}, "pass" if res.psd else "fail",
                               None, res.min_eigenvalue / max(abs(res.max_eigenvalue), 1e-300), seed,
                               time.perf_counter() - start))
    for k in range(cfg.trials):
        seed = cfg.seed + 1000 + k
        rng = rng_for(seed)
        rho = bercovici_pata(random_jacobi_state(rng, 6))
        psi = random_jacobi_state(rng, 6)
        start = time.perf_counter()
        res = psd_check(phi_map(rho, psi), 3, eps=cfg.tolerance)
        out.append(CheckRecord("positivity", "Phi[rho, psi] is positive on Jacobi-built states",
                               {"d": 1, "N": 6, "level": 3}, "pass" if res.psd else "fail", None,
                               res.min_eigenvalue / max(abs(res.max_eigenvalue), 1e-300), seed,
                               time.perf_counter() - start))
    return out


_SUITE_FUNCS = {
    "semigroup": suite_semigroup,
    "evolution": suite_evolution,
    "meixner": suite_meixner,
    "fock": suite_fock,
    "positivity": suite_positivity,
}


def run_suite(name: str, cfg: SuiteConfig) -> Report:
    names = SUITES if name == "all" else (name,)
    if any(n not in _SUITE_FUNCS for n in names):
        raise ValueError(f"unknown suite {name!r}")
    report = Report(name, cfg)
    for n in names:
        report.records.extend(_SUITE_FUNCS[n](cfg))
    return report
