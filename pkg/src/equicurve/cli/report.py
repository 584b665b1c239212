"""Line-oriented verification reports.

Layout::

    CONFIG witness_primes=25
    ...
    CHECK <id> <PASS|FAIL|INCONCLUSIVE> <first detail line>
      | <further detail line>
    TIME <id> <seconds>

Everything except the TIME lines is deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

PASS, FAIL, INCONCLUSIVE = "PASS", "FAIL", "INCONCLUSIVE"
STATUSES = (PASS, FAIL, INCONCLUSIVE)


class ReportFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Entry:
    id: str
    status: str
    details: tuple = ()
    wall_time: float = 0.0

    def __post_init__(self):
        if not self.id or any(c.isspace() for c in self.id):
            raise ValueError(f"job id must be a non-empty token: {self.id!r}")
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        details = tuple(str(d) for d in self.details)
        if any(d.splitlines() not in ([], [d]) for d in details):
            raise ValueError("detail lines cannot contain line breaks")
        if details == ("",):
            details = ()
        if not math.isfinite(self.wall_time):
            raise ValueError("wall time must be finite")
        object.__setattr__(self, "details", details)


@dataclass
class Report:
    config: list = field(default_factory=list)
    entries: list = field(default_factory=list)

    def add(self, entry):
        if any(e.id == entry.id for e in self.entries):
            raise ValueError(f"duplicate job id {entry.id}")
        self.entries.append(entry)

    def statuses(self):
        return [e.status for e in self.entries]

    @property
    def exit_code(self):
        st = self.statuses()
        if FAIL in st:
            return 1
        if INCONCLUSIVE in st:
            return 3
        return 0

    def to_text(self, times=True):
        out = list(self.config)
        for e in self.entries:
            first, *rest = e.details or ("",)
            out.append(f"CHECK {e.id} {e.status} {first}" if first else f"CHECK {e.id} {e.status}")
            out += [f"  | {d}" for d in rest]
            if times:
                out.append(f"TIME {e.id} {e.wall_time!r}")
        return "\n".join(out) + "\n"

    @classmethod
    def parse(cls, text):
        rep = cls()
        cur = None  # [id, status, details, time]

        def flush():
            if cur is not None:
                rep.add(Entry(cur[0], cur[1], tuple(cur[2]), cur[3]))

        for n, line in enumerate(text.splitlines(), 1):
            if not line:
                continue
            if line.startswith("CONFIG "):
                if rep.entries or cur is not None:
                    raise ReportFormatError(f"line {n}: CONFIG after the first CHECK")
                rep.config.append(line)
            elif line.startswith("CHECK "):
                flush()
                parts = line.split(" ", 3)
                if len(parts) < 3 or parts[2] not in STATUSES:
                    raise ReportFormatError(f"line {n}: malformed CHECK line")
                cur = [parts[1], parts[2], [parts[3]] if len(parts) == 4 else [], 0.0]
            elif line.startswith("  | "):
                if cur is None:
                    raise ReportFormatError(f"line {n}: detail line outside an entry")
                if not cur[2]:
                    cur[2].append("")
                cur[2].append(line[4:])
            elif line.startswith("TIME "):
                parts = line.split()
                if cur is None or len(parts) != 3 or parts[1] != cur[0]:
                    raise ReportFormatError(f"line {n}: TIME line does not follow its entry")
                cur[3] = float(parts[2])
            else:
                raise ReportFormatError(f"line {n}: unrecognized line {line!r}")
        flush()
        return rep
