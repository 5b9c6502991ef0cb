"""End-to-end verification runs and their serialization.

A :class:`VerifyReport` gathers, for one N, every quantity the asymptotic
formula for R ties together: D(N), J(N, A), R(N, A) by three routes, the
major/minor split of the circle integral, and both normalizations of R.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import asdict, dataclass, field
from importlib import resources

from . import __version__
from .arith import factorize
from .errors import ValidationError
from .expsums import prime_windows
from .geometry import derive_params, enumerate_major_arcs
from .representation import (
    count_J_direct,
    count_R_convolution,
    count_R_direct,
    major_minor_split,
    R_via_dft,
    ratio_paper,
    ratio_robust,
)
from .singular import DEFAULT_P, DEFAULT_Q, D_euler, D_series

CSV_COLUMNS = (
    "N", "A", "Q", "tau", "D", "D_tail", "J", "R_direct", "R_conv", "R_dft",
    "ratio_robust", "ratio_paper", "minor_fraction", "ms_sieve", "ms_count", "ms_dft",
)
SIG_DIGITS = 12


@dataclass
class VerifyReport:
    N: int
    params: dict
    D: float
    D_tail: float
    D_series: float
    D_series_tail: float
    J: int
    J_over_A2: float
    J_over_2A2: float
    R_direct: float
    R_conv: float
    R_dft: float
    unweighted: int
    ratio_robust: float
    ratio_paper: float
    major_part: float
    minor_part: float
    minor_fraction: float
    arc_count: int
    timings: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "VerifyReport":
        return cls(**data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "VerifyReport":
        return cls.from_dict(json.loads(text))

    def flat(self) -> dict:
        row = {
            "N": self.N,
            "A": self.params["A"],
            "Q": self.params["Q"],
            "tau": self.params["tau"],
            "D": self.D,
            "D_tail": self.D_tail,
            "J": self.J,
            "R_direct": self.R_direct,
            "R_conv": self.R_conv,
            "R_dft": self.R_dft,
            "ratio_robust": self.ratio_robust,
            "ratio_paper": self.ratio_paper,
            "minor_fraction": self.minor_fraction,
        }
        for key in ("ms_sieve", "ms_count", "ms_dft"):
            row[key] = self.timings.get(key, 0.0)
        return row


def euler_bound_for(N: int, P: int = DEFAULT_P) -> int:
    """Euler truncation P, raised if needed to cover every prime factor of N."""
    primes = factorize(N).primes
    return max(P, primes[-1] if primes else 2)


def run_verify(N: int, profile: str = "desk", *, eps: float = 0.5, lam: float = 10.5,
               A=None, Q=None, tau=None, timings: bool = False) -> VerifyReport:
    """Compute one :class:`VerifyReport`; timings are zeroed unless requested."""
    clock = time.perf_counter
    params = derive_params(N, eps, lam, profile, A=A, Q=Q, tau=tau)
    A = params.A

    t0 = clock()
    prime_windows(N, A)
    t1 = clock()
    D = D_euler(N, euler_bound_for(N))
    Ds = D_series(N, DEFAULT_Q)
    J = count_J_direct(N, A)
    direct = count_R_direct(N, A)
    conv = count_R_convolution(N, A)
    t2 = clock()
    dft = R_via_dft(N, A)
    partition = enumerate_major_arcs(params)
    split = major_minor_split(N, params, partition=partition)
    t3 = clock()

    ms = {"ms_sieve": 1e3 * (t1 - t0), "ms_count": 1e3 * (t2 - t1), "ms_dft": 1e3 * (t3 - t2)}
    if not timings:
        ms = dict.fromkeys(ms, 0.0)
    return VerifyReport(
        N=N,
        params=params.as_dict(),
        D=D.value,
        D_tail=D.tail_bound,
        D_series=Ds.value,
        D_series_tail=Ds.tail_bound,
        J=J.J,
        J_over_A2=J.over_A2,
        J_over_2A2=J.over_2A2,
        R_direct=direct.weighted,
        R_conv=conv.weighted,
        R_dft=dft,
        unweighted=direct.unweighted,
        ratio_robust=ratio_robust(direct.weighted, D.value, J.J) if J.J else math.nan,
        ratio_paper=ratio_paper(direct.weighted, D.value, A),
        major_part=split.major_part,
        minor_part=split.minor_part,
        minor_fraction=split.minor_fraction,
        arc_count=partition.count,
        timings=ms,
    )


def schedule(n_start: int, n_end: int, count: int, kind: str = "geometric") -> list[int]:
    """Even N values from n_start to n_end inclusive.

    Interior points are rounded to the nearest even integer; the endpoints
    must themselves be even.
    """
    for n in (n_start, n_end):
        if n % 2:
            raise ValidationError(f"schedule endpoints must be even, got {n}")
    if n_end < n_start:
        raise ValidationError(f"n_end {n_end} is below n_start {n_start}")
    if count < 1:
        raise ValidationError(f"count must be >= 1, got {count}")
    if count == 1 or n_start == n_end:
        return [n_start]
    out = []
    for i in range(count):
        t = i / (count - 1)
        if kind == "geometric":
            x = n_start * (n_end / n_start) ** t
        elif kind == "arithmetic":
            x = n_start + (n_end - n_start) * t
        else:
            raise ValidationError(f"unknown schedule {kind!r}")
        n = 2 * round(x / 2)
        if i == 0:
            n = n_start
        elif i == count - 1:
            n = n_end
        if not out or n != out[-1]:
            out.append(n)
    return out


def format_number(x) -> str:
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return format(x, f".{SIG_DIGITS}g")
    return str(x)


def format_rows(rows: list[dict], fmt: str, columns=None) -> str:
    """Render flat dict rows as csv or tsv text with a header line."""
    columns = list(columns or (rows[0].keys() if rows else ()))
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter="\t" if fmt == "tsv" else ",", lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_number(row[c]) for c in columns])
    return buf.getvalue()


def reports_to_json(reports: list[VerifyReport]) -> str:
    payload = {"version": __version__, "reports": [r.to_dict() for r in reports]}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def load_schema() -> dict:
    text = resources.files("circlemethod").joinpath("data/verify_report.schema.json").read_text()
    return json.loads(text)


PLOT_SERIES = ("ratio_robust", "ratio_paper", "minor_fraction", "J_over_A2")


def plot_series(reports: list[VerifyReport]) -> dict[str, str]:
    """Two-column whitespace data (N, value) per diagnostic, for plotting tools."""
    out = {}
    for name in PLOT_SERIES:
        lines = [f"# N {name}"]
        lines += [f"{r.N} {format_number(getattr(r, name))}" for r in reports]
        out[f"{name}.dat"] = "\n".join(lines) + "\n"
    return out
