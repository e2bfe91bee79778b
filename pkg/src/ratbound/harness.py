"""Random-instance generation and bulk certification campaigns.

Instance streams are fully determined by the generator spec: instance i
draws from the child stream split(i) of the seed's root stream, so a
campaign report is byte-for-byte reproducible for a fixed spec and the
same instance can be regenerated in isolation.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass

import numpy as np

from .bounds import BoundVerdict, TheoremId, certify, hypothesis_zero_location, profile
from .circlescan import CircleGrid
from .errors import DegenerateBound, HypothesisMismatch, SpecInvalid
from .ratfun import (
    MODE_INSIDE,
    MODE_OUTSIDE,
    MODE_UNCONSTRAINED,
    PoleSet,
    RationalFunction,
    ZeroLocation,
)
from .rng import CounterRng

# Poles below this modulus put the sweep circles badly close to a pole.
COMFORTABLE_POLE_FLOOR = 1.1
HARD_POLE_FLOOR = 1.01
# Generated points keep this distance from scan circles and one another.
SEPARATION = 1e-6


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters of one reproducible instance stream."""

    n: int
    t: int
    zero_region: ZeroLocation
    seed: int
    count: int
    pole_annulus: tuple = (COMFORTABLE_POLE_FLOOR, 3.0)
    p_boundary: float = 0.0

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 1):
            raise SpecInvalid("pole count n must be an integer >= 1")
        if not (isinstance(self.t, int) and 0 <= self.t <= self.n):
            raise SpecInvalid("zero count t must be an integer in [0, n]")
        if not isinstance(self.zero_region, ZeroLocation):
            raise SpecInvalid("zero_region must be a ZeroLocation")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2**64):
            raise SpecInvalid("seed must fit in 64 bits")
        if not (isinstance(self.count, int) and self.count >= 1):
            raise SpecInvalid("instance count must be an integer >= 1")
        lo, hi = self.pole_annulus
        if not (np.isfinite(lo) and np.isfinite(hi) and HARD_POLE_FLOOR <= lo < hi):
            raise SpecInvalid(f"pole annulus needs {HARD_POLE_FLOOR} <= r_min < r_max")
        if lo < COMFORTABLE_POLE_FLOOR:
            warnings.warn(
                f"pole annulus floor {lo} below {COMFORTABLE_POLE_FLOOR} degrades conditioning",
                RuntimeWarning,
                stacklevel=2,
            )
        if not (np.isfinite(self.p_boundary) and 0.0 <= self.p_boundary <= 1.0):
            raise SpecInvalid("p_boundary must lie in [0, 1]")


def _draw_pole(rng: CounterRng, lo: float, hi: float, avoid_radii) -> complex:
    while True:
        rho = rng.next_radius(lo, hi)
        if all(abs(rho - k) >= SEPARATION for k in avoid_radii):
            return rho * np.exp(1j * rng.next_angle())


def _draw_zero(rng: CounterRng, region: ZeroLocation, p_boundary: float, poles) -> complex:
    while True:
        if region.mode == MODE_UNCONSTRAINED:
            rho = 2.0 * np.sqrt(rng.next_float())
        elif rng.next_float() < p_boundary:
            rho = region.k
        elif region.mode == MODE_OUTSIDE:
            rho = rng.next_radius(region.k, region.k + 2.0)
        else:
            rho = region.k * np.sqrt(rng.next_float())
        z = rho * np.exp(1j * rng.next_angle())
        if all(abs(z - a) >= SEPARATION for a in poles):
            return complex(z)


def generate(spec: GeneratorSpec) -> list:
    """Instances drawn from the spec's stream, in stream order."""
    root = CounterRng(spec.seed)
    lo, hi = float(spec.pole_annulus[0]), float(spec.pole_annulus[1])
    avoid = {1.0, spec.zero_region.k}
    out = []
    for i in range(spec.count):
        rng = root.split(i)
        poles = [_draw_pole(rng, lo, hi, avoid) for _ in range(spec.n)]
        zeros = [_draw_zero(rng, spec.zero_region, spec.p_boundary, poles) for _ in range(spec.t)]
        leading = np.exp(1j * rng.next_angle())
        out.append(RationalFunction.from_zeros(zeros, PoleSet(poles), complex(leading)))
    return out


def instance_to_dict(r: RationalFunction, k: float | None = None) -> dict:
    doc = {
        "poles": [[a.real, a.imag] for a in r.poles.poles],
        "zeros": [[float(b.real), float(b.imag)] for b in r.zeros()],
        "leading": [float(r.numer.coeffs[-1].real), float(r.numer.coeffs[-1].imag)],
    }
    if k is not None:
        doc["k"] = float(k)
    return doc


def instance_from_dict(doc: dict) -> tuple:
    """(RationalFunction, k or None) from the plain-list form."""
    poles = PoleSet([complex(re, im) for re, im in doc["poles"]])
    zeros = [complex(re, im) for re, im in doc["zeros"]]
    lead = complex(doc["leading"][0], doc["leading"][1])
    k = float(doc["k"]) if "k" in doc else None
    return RationalFunction.from_zeros(zeros, poles, lead), k


@dataclass(frozen=True)
class CampaignReport:
    """Aggregate of certifying every instance of a spec against one theorem."""

    theorem: TheoremId
    spec: GeneratorSpec
    grid: CircleGrid
    instances: int
    certified: int
    violations: int
    degenerate_count: int
    skipped_points: int
    min_margin: float | None
    worst_instance: dict | None

    def to_json(self) -> str:
        payload = {
            "theorem": self.theorem.value,
            "spec": {
                "n": self.spec.n,
                "t": self.spec.t,
                "zero_region": {"mode": self.spec.zero_region.mode, "k": self.spec.zero_region.k},
                "seed": self.spec.seed,
                "count": self.spec.count,
                "pole_annulus": [self.spec.pole_annulus[0], self.spec.pole_annulus[1]],
                "p_boundary": self.spec.p_boundary,
            },
            "grid": {"k": self.grid.k, "count": self.grid.count},
            "instances": self.instances,
            "certified": self.certified,
            "violations": self.violations,
            "degenerate_count": self.degenerate_count,
            "skipped_points": self.skipped_points,
            "min_margin": self.min_margin,
            "worst_instance": self.worst_instance,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def run_campaign(spec: GeneratorSpec, theorem: TheoremId, grid: CircleGrid) -> CampaignReport:
    """Generate the spec's stream and certify every instance.

    The spec's zero region must match the theorem's hypothesis region
    for grid.k exactly, and theorems that require a zero on the circle
    need p_boundary == 1 with t >= 1, so the stream cannot produce a
    hypothesis-violating instance by construction.  Degenerate
    instances are counted and excluded from the margin aggregate.
    """
    want = hypothesis_zero_location(theorem, grid.k)
    got = spec.zero_region
    if got.mode != want.mode or got.k != want.k:
        raise HypothesisMismatch(
            f"{theorem.value} needs zeros {want.mode} at k={want.k}, spec generates {got.mode} at k={got.k}"
        )
    prof = profile(theorem)
    if prof.needs_all_zeros and spec.t != spec.n:
        raise HypothesisMismatch(f"{theorem.value} needs t == n, spec has t={spec.t}, n={spec.n}")
    if prof.needs_boundary_zero and not (spec.p_boundary == 1.0 and spec.t >= 1):
        raise HypothesisMismatch(f"{theorem.value} needs p_boundary == 1 and t >= 1 to pin a zero on the circle")
    verdicts: list[BoundVerdict] = []
    worst: tuple[float, RationalFunction] | None = None
    degenerate = 0
    for r in generate(spec):
        try:
            verdict = certify(theorem, r, grid)
        except DegenerateBound:
            degenerate += 1
            continue
        verdicts.append(verdict)
        if worst is None or verdict.min_margin < worst[0]:
            worst = (verdict.min_margin, r)
    worst_doc = None
    if worst is not None:
        worst_doc = instance_to_dict(worst[1], grid.k)
        worst_doc["min_margin"] = worst[0]
    return CampaignReport(
        theorem=theorem,
        spec=spec,
        grid=grid,
        instances=spec.count,
        certified=len(verdicts),
        violations=sum(v.violations for v in verdicts),
        degenerate_count=degenerate,
        skipped_points=sum(v.skipped_points for v in verdicts),
        min_margin=min((v.min_margin for v in verdicts), default=None),
        worst_instance=worst_doc,
    )
