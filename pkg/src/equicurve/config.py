"""Search bounds and default choices, gathered in one place.

Every decision that is not forced by the mathematics (how many witness
primes to try, how far to search for a multiplier, which rational values to
specialize a parameter to) is read from a :class:`Config`.  Reports echo the
active configuration so a run can be reproduced exactly.
"""

from __future__ import annotations

from contextvars import ContextVar
from dataclasses import asdict, dataclass, replace


@dataclass(frozen=True)
class Config:
    witness_primes: int = 25
    witness_primes_extended: int = 200
    lift_precision_bits: int = 512
    c_bound: int = 10000
    multiplier_bound: int = 50
    specialization_values: tuple = (1, -1, 2)
    certificate_height: int = 12
    lambda_search_bound: int = 20
    alpha_search_bound: int = 50
    conic_search_height: int = 30
    seed: int = 0
    mutate: str = ""

    def lines(self):
        return [f"CONFIG {k}={_fmt(v)}" for k, v in asdict(self).items()]

    def with_(self, **kw):
        return replace(self, **kw)


def _fmt(v):
    if isinstance(v, (tuple, list)):
        return ",".join(str(x) for x in v)
    return str(v)


DEFAULT = Config()
_active = ContextVar("equicurve_config", default=DEFAULT)


def active():
    return _active.get()


class using:
    """Context manager that installs a configuration for the enclosed block."""

    def __init__(self, cfg):
        self.cfg = cfg
        self._token = None

    def __enter__(self):
        self._token = _active.set(self.cfg)
        return self.cfg

    def __exit__(self, *exc):
        _active.reset(self._token)
        return False
