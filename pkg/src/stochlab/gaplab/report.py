"""Aggregate gap computations for one graph, with identity checks."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .generators import (
    alpha_shuffle_generator,
    alpha_single_particle_rates,
    exclusion_generator,
    interchange_generator,
    rw_generator,
)
from .graphs import HyperWeights, WeightedGraph
from .spectral import DEFAULT_TOL_ZERO, ReducibilityError, spectral_gap

DEFAULT_RTOL = 1e-8


@dataclass
class GapReport:
    n: int
    lambda_rw: float
    lambda_ip: float
    exclusion_gaps: list[float]
    zero_eig_count: int
    tol_zero: float
    rtol: float
    identity_ok: bool
    exclusion_constant: bool
    contraction_ok: bool
    max_rel_deviation: float
    lambda_shuffle: float | None = None
    lambda_shuffle_rw: float | None = None
    shuffle_identity_ok: bool | None = None
    elapsed_ms: float = 0.0
    flags: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "lambdaRW": self.lambda_rw,
            "lambdaIP": self.lambda_ip,
            "exclusionGaps": self.exclusion_gaps,
            "zeroEigCount": self.zero_eig_count,
            "tolZero": self.tol_zero,
            "rtol": self.rtol,
            "identityOk": self.identity_ok,
            "exclusionConstant": self.exclusion_constant,
            "contractionOk": self.contraction_ok,
            "maxRelDeviation": self.max_rel_deviation,
            "flags": self.flags,
        }
        if self.lambda_shuffle is not None:
            out["lambdaShuffle"] = self.lambda_shuffle
            out["lambdaShuffleRW"] = self.lambda_shuffle_rw
            out["shuffleIdentityOk"] = self.shuffle_identity_ok
        return out


def gap_report(graph: WeightedGraph, hyper: HyperWeights | None = None,
               tol_zero: float = DEFAULT_TOL_ZERO, rtol: float = DEFAULT_RTOL,
               allow_large: bool = False) -> GapReport:
    """Compute the walk, interchange, and exclusion gaps of one graph.

    Flags any relative deviation of the interchange or exclusion gaps from
    the walk gap beyond ``rtol``.  When subset rates are supplied, the
    shuffle gap is compared against the walk with the single-particle
    rates; that comparison is reported, not asserted (it is a conjecture).
    """
    if not graph.is_connected:
        raise ReducibilityError("gap report requires a connected graph")
    started = time.perf_counter()
    lam_rw = spectral_gap(rw_generator(graph), tol_zero)
    lam_ip = spectral_gap(interchange_generator(graph, allow_large), tol_zero)
    exclusion = [
        spectral_gap(exclusion_generator(graph, k), tol_zero)
        for k in range(1, graph.n)
    ]
    deviations = [abs(lam_ip - lam_rw)] + [abs(g - lam_rw) for g in exclusion]
    max_rel = max(deviations) / lam_rw
    identity_ok = abs(lam_ip - lam_rw) <= rtol * lam_rw
    exclusion_constant = all(abs(g - lam_rw) <= rtol * lam_rw for g in exclusion)
    contraction_ok = lam_ip <= lam_rw * (1 + rtol)
    flags = []
    if not identity_ok:
        flags.append("interchange gap deviates from walk gap")
    if not exclusion_constant:
        flags.append("exclusion gaps are not constant in the particle count")
    if not contraction_ok:
        flags.append("contraction bound violated")
    report = GapReport(
        n=graph.n,
        lambda_rw=lam_rw,
        lambda_ip=lam_ip,
        exclusion_gaps=exclusion,
        zero_eig_count=1,
        tol_zero=tol_zero,
        rtol=rtol,
        identity_ok=identity_ok,
        exclusion_constant=exclusion_constant,
        contraction_ok=contraction_ok,
        max_rel_deviation=max_rel,
    )
    if hyper is not None:
        shuffle_report = shuffle_gap_comparison(hyper, tol_zero, rtol, allow_large)
        report.lambda_shuffle = shuffle_report["lambdaShuffle"]
        report.lambda_shuffle_rw = shuffle_report["lambdaShuffleRW"]
        report.shuffle_identity_ok = shuffle_report["shuffleIdentityOk"]
        if shuffle_report["flags"]:
            flags.extend(shuffle_report["flags"])
    report.flags = flags
    report.elapsed_ms = (time.perf_counter() - started) * 1e3
    return report


def shuffle_gap_comparison(hyper: HyperWeights, tol_zero: float = DEFAULT_TOL_ZERO,
                           rtol: float = DEFAULT_RTOL, allow_large: bool = False) -> dict:
    """Gap of the subset-shuffle process vs the single-particle walk.

    The equality of the two is conjectural: disagreements are flagged in
    the result but never raised.
    """
    flags = []
    single = alpha_single_particle_rates(hyper)
    if not any(rate > 0 for rate in hyper.rates.values()):
        return {
            "lambdaShuffle": None,
            "lambdaShuffleRW": None,
            "shuffleIdentityOk": None,
            "flags": ["degenerate: all shuffle rates are zero"],
        }
    if not single.is_connected:
        return {
            "lambdaShuffle": None,
            "lambdaShuffleRW": None,
            "shuffleIdentityOk": None,
            "flags": ["single-particle graph is disconnected"],
        }
    lam_shuffle = spectral_gap(alpha_shuffle_generator(hyper, allow_large), tol_zero)
    lam_walk = spectral_gap(rw_generator(single), tol_zero)
    agree = abs(lam_shuffle - lam_walk) <= rtol * max(lam_walk, 1e-300)
    if not agree:
        flags.append(
            f"shuffle gap {lam_shuffle:.12g} differs from single-particle walk "
            f"gap {lam_walk:.12g} (conjectured equal; reported, not asserted)"
        )
    return {
        "lambdaShuffle": lam_shuffle,
        "lambdaShuffleRW": lam_walk,
        "shuffleIdentityOk": agree,
        "flags": flags,
    }
