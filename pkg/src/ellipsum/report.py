"""Machine-readable verification reports.

Reports serialize to plain dicts with a stable key order and [re, im] pairs
for complex values, so that identical runs produce byte-identical JSON
(the wall-clock field is the one permitted difference).
"""

from __future__ import annotations

from dataclasses import dataclass, field

SCHEMA_VERSION = 1

# The sampling generator: numpy Philox 4x64 keyed through SeedSequence with
# spawn_key = (crc32(identity id), trial index).
RNG_ALGORITHM = "philox4x64/seedsequence(crc32-id,trial)"


def _cpair(z) -> list:
    return [float(z.real), float(z.imag)]


@dataclass
class TrialFailure:
    trial_index: int
    rel_err: float
    point: dict

    def to_dict(self) -> dict:
        return {
            "trial_index": self.trial_index,
            "rel_err": self.rel_err,
            "point": self.point,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TrialFailure":
        return cls(trial_index=d["trial_index"], rel_err=d["rel_err"], point=d["point"])


@dataclass
class VerificationReport:
    """Per-identity trial statistics with the worst point kept for replay."""

    identity_id: str
    trials: int
    tol: float
    seed: int
    max_rel_err: float
    mean_rel_err: float
    failures: list = field(default_factory=list)
    resamples: int = 0
    wall_time_ms: float = 0.0
    worst_point: dict | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "identity_id": self.identity_id,
            "trials": self.trials,
            "tol": self.tol,
            "seed": self.seed,
            "max_rel_err": self.max_rel_err,
            "mean_rel_err": self.mean_rel_err,
            "failures": [f.to_dict() for f in self.failures],
            "resamples": self.resamples,
            "worst_point": self.worst_point,
            "wall_time_ms": self.wall_time_ms,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(
            identity_id=d["identity_id"],
            trials=d["trials"],
            tol=d["tol"],
            seed=d["seed"],
            max_rel_err=d["max_rel_err"],
            mean_rel_err=d["mean_rel_err"],
            failures=[TrialFailure.from_dict(f) for f in d["failures"]],
            resamples=d["resamples"],
            wall_time_ms=d["wall_time_ms"],
            worst_point=d.get("worst_point"),
        )


def point_dump(nome, values: dict, integers: dict) -> dict:
    """JSON-ready dump of a sampled parameter point."""
    return {
        "q": _cpair(nome.q),
        "p": _cpair(nome.p),
        "values": {k: _cpair(v) for k, v in sorted(values.items())},
        "integers": {k: int(v) for k, v in sorted(integers.items())},
    }
