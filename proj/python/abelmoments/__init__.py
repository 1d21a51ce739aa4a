"""Exact moment inversion for random finite abelian p-groups.

Rationals are returned as ``fractions.Fraction``. Partitions are tuples of
weakly decreasing positive integers; distributions and moment tables are
dicts keyed by partitions.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import _core
from ._core import DomainError, Error, NonConvergence, suite_names

__all__ = [
    "DomainError",
    "Error",
    "NonConvergence",
    "cancellation_sum",
    "conjugate",
    "invert",
    "invert_fixed_level",
    "invert_multi",
    "inversion_coefficient",
    "moments_from_distribution",
    "partitions",
    "simulate",
    "suite_names",
    "sur_count",
    "verify",
]

Partition = Sequence[int]


def _frac(text: str) -> Fraction:
    return Fraction(text)


def _rat(value) -> str:
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def _key(p: Partition) -> tuple[int, ...]:
    return tuple(int(x) for x in p)


def _decode_result(text: str) -> tuple[Fraction, dict]:
    data = json.loads(text)
    diag = data["diagnostics"]
    diag["partial_sums"] = [_frac(s) for s in diag.get("partial_sums", [])]
    diag["last_block"] = _frac(diag["last_block"])
    return _frac(data["value"]), diag


def _table_json(p: int, moments: Mapping[Partition, object] | None, constant=None) -> str:
    table: dict = {"p": p}
    if constant is not None:
        table["provider"] = {"kind": "constant", "value": _rat(constant)}
    table["entries"] = [{"partition": list(_key(mu)), "value": _rat(v)} for mu, v in (moments or {}).items()]
    return json.dumps(table)


def sur_count(lambda_: Partition, mu: Partition, p: int, brute: bool = False) -> int:
    """#Sur(G_lambda, G_mu) at the prime p."""
    return int(_core.sur_count(list(lambda_), list(mu), p, brute))


def inversion_coefficient(nu: Partition, mu: Partition, t) -> Fraction:
    return _frac(_core.inversion_coefficient(list(nu), list(mu), _rat(t)))


def cancellation_sum(lambda_: Partition, nu: Partition, t) -> Fraction:
    return _frac(_core.cancellation_sum(list(lambda_), list(nu), _rat(t)))


def moments_from_distribution(
    masses: Mapping[Partition, object], p: int, mus: Iterable[Partition] | None = None
) -> dict[tuple[int, ...], Fraction]:
    """Moments E[#Sur(G, G_mu)] of a finitely supported distribution."""
    dist = {"p": p, "entries": [{"partition": list(_key(k)), "value": _rat(v)} for k, v in masses.items()]}
    out = json.loads(
        _core.moments_from_distribution(json.dumps(dist), None if mus is None else [list(m) for m in mus])
    )
    return {tuple(e["partition"]): _frac(e["value"]) for e in out["entries"]}


def invert(
    moments: Mapping[Partition, object] | None,
    nu: Partition,
    p: int,
    *,
    constant=None,
    mode: str = "",
    cap: int = -1,
    tolerance="1/1000000000",
    window: int = 3,
    hard_cap: int = 200,
) -> tuple[Fraction, dict]:
    """Pr(G = G_nu) from moments; returns (value, diagnostics).

    ``constant`` supplies the value of every moment missing from ``moments``
    (for example ``constant=1`` for the all-ones family).
    """
    return _decode_result(
        _core.invert(_table_json(p, moments, constant), list(nu), mode, cap, _rat(tolerance), window, hard_cap)
    )


def invert_fixed_level(
    moments: Mapping[Partition, object], nu: Partition, p: int, level: int, *, mode: str = "", cap: int = -1
) -> tuple[Fraction, dict]:
    return _decode_result(_core.invert_fixed_level(_table_json(p, moments), list(nu), level, mode, cap))


def invert_multi(
    moments: Mapping[Sequence[Partition], object],
    nus: Sequence[Partition],
    primes: Sequence[int],
    *,
    mode: str = "",
    cap: int = -1,
) -> tuple[Fraction, dict]:
    """Multi-prime inversion; ``moments`` is keyed by tuples of partitions, one per prime."""
    table = {
        "primes": list(primes),
        "entries": [{"partitions": [list(_key(m)) for m in k], "value": _rat(v)} for k, v in moments.items()],
    }
    return _decode_result(_core.invert_multi(json.dumps(table), [list(n) for n in nus], mode, cap))


def verify(suite: str, max_size: int = 4, t="1/2", q="1/3", u="2/7", p: int = 2) -> tuple[int, int]:
    """Runs an identity suite; returns (passed, total)."""
    return _core.verify(suite, max_size, _rat(t), _rat(q), _rat(u), p)


def simulate(config: Mapping[str, object], probe_depth: int = 3, gap_tolerance="1/50") -> dict:
    """Closed-loop simulator report as a dict (rationals stay as strings)."""
    return json.loads(_core.simulate(json.dumps(dict(config)), probe_depth, _rat(gap_tolerance)))


def partitions(max_size: int) -> list[tuple[int, ...]]:
    return [tuple(p) for p in _core.partitions(max_size)]


def conjugate(lambda_: Partition) -> tuple[int, ...]:
    return tuple(_core.conjugate(list(lambda_)))
