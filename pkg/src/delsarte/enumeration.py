"""Exhaustive search over Delsarte surfaces of a given degree.

Candidates are 4-subsets of the degree-d monomials in x, y, z, w, taken up to
simultaneous permutation of monomials (rows) and variables (columns).  The
canonical form of an exponent matrix is the lexicographically least
row-sorted matrix over the 24 column permutations; sorting rows already
quotients by the monomial permutations, so this is the least matrix over
all 576 relabelings.
"""

from __future__ import annotations

import csv
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .delsarte import CoveringError, DelsarteSurface, analyze
from .exact_arith import det

log = logging.getLogger(__name__)

Matrix4 = tuple[tuple[int, ...], ...]
COLUMN_PERMUTATIONS = list(permutations(range(4)))
MAXIMAL_QUINTIC_ROWS = ((0, 1, 1, 3), (1, 1, 3, 0), (1, 3, 0, 1), (3, 0, 1, 1))


def canonical_form(A: Sequence[Sequence[int]]) -> Matrix4:
    best = None
    for p in COLUMN_PERMUTATIONS:
        cand = tuple(sorted(tuple(row[j] for j in p) for row in A))
        if best is None or cand < best:
            best = cand
    return best


def is_maximal_quintic_class(surface: DelsarteSurface) -> bool:
    return canonical_form(surface.A) == canonical_form(MAXIMAL_QUINTIC_ROWS)


def monomials(d: int) -> list[tuple[int, int, int, int]]:
    """Exponent vectors of degree d in four variables, in lexicographic order."""
    out = []
    for a in range(d + 1):
        for b in range(d + 1 - a):
            for c in range(d + 1 - a - b):
                out.append((a, b, c, d - a - b - c))
    return sorted(out)


@dataclass
class EnumerationStats:
    subsets: int = 0
    common_variable: int = 0
    missing_variable: int = 0
    non_canonical: int = 0
    singular: int = 0
    kept: int = 0


def candidates(d: int = 5, stats: EnumerationStats | None = None) -> Iterator[Matrix4]:
    """Canonical exponent matrices of degree-d Delsarte covering candidates."""
    if d < 1:
        raise ValueError("degree must be positive")
    stats = stats if stats is not None else EnumerationStats()
    monos = monomials(d)
    index = {mono: i for i, mono in enumerate(monos)}
    # per column permutation, the induced permutation of monomial indices
    perms = [[index[tuple(mono[j] for j in p)] for mono in monos] for p in COLUMN_PERMUTATIONS]
    support = [sum(1 << j for j in range(4) if mono[j]) for mono in monos]
    for subset in combinations(range(len(monos)), 4):
        stats.subsets += 1
        s0, s1, s2, s3 = (support[i] for i in subset)
        if s0 & s1 & s2 & s3:
            stats.common_variable += 1
            continue
        if (s0 | s1 | s2 | s3) != 15:
            stats.missing_variable += 1
            continue
        if any(tuple(sorted(pi[i] for i in subset)) < subset for pi in perms):
            stats.non_canonical += 1
            continue
        A = tuple(monos[i] for i in subset)
        if det(A) == 0:
            stats.singular += 1
            continue
        stats.kept += 1
        yield A


@dataclass
class CandidateRecord:
    matrix: Matrix4
    m: int | None
    lambda_: int | None
    h20: int | None
    picard: int | None
    flags: list[str] = field(default_factory=list)

    def to_row(self) -> list[str]:
        def opt(x):
            return "-" if x is None else str(x)

        return (
            [str(x) for row in self.matrix for x in row]
            + [opt(self.m), opt(self.lambda_), opt(self.h20), opt(self.picard), ",".join(self.flags) or "-"]
        )

    @classmethod
    def from_row(cls, row: Sequence[str]) -> "CandidateRecord":
        if len(row) != 21:
            raise ValueError(f"expected 21 fields, got {len(row)}")
        nums = [int(x) for x in row[:16]]
        matrix = tuple(tuple(nums[4 * i: 4 * i + 4]) for i in range(4))

        def opt(x):
            return None if x == "-" else int(x)

        flags = [] if row[20] == "-" else row[20].split(",")
        return cls(matrix, opt(row[16]), opt(row[17]), opt(row[18]), opt(row[19]), flags)

    @property
    def surface(self) -> DelsarteSurface:
        return DelsarteSurface.from_rows(self.matrix, check=False)


def classify(A: Sequence[Sequence[int]]) -> CandidateRecord:
    canon = canonical_form(A)
    try:
        result = analyze(DelsarteSurface.from_rows(canon))
    except CoveringError as exc:
        return CandidateRecord(canon, None, None, None, None, [f"rejected:{exc}".replace("\t", " ")])
    return CandidateRecord(canon, result.covering.m, result.lambda_, result.h20, result.picard, list(result.flags))


def worker_count() -> int:
    env = os.environ.get("DELSARTE_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


RESULTS_HEADER = [f"a{i}{j}" for i in range(4) for j in range(4)] + ["m", "lambda", "h20", "rho", "flags"]


def read_results(path: Path) -> dict[Matrix4, CandidateRecord]:
    out: dict[Matrix4, CandidateRecord] = {}
    with open(path, newline="") as fh:
        for row in csv.reader(fh, delimiter="\t"):
            if not row or row[0].startswith("#") or row[0] == RESULTS_HEADER[0]:
                continue
            rec = CandidateRecord.from_row(row)
            out[rec.matrix] = rec
    return out


def write_results(path: Path, records: Iterable[CandidateRecord]) -> None:
    tmp = Path(str(path) + ".tmp")
    with open(tmp, "w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(RESULTS_HEADER)
        for rec in sorted(records, key=lambda r: r.matrix):
            w.writerow(rec.to_row())
    tmp.replace(path)


def run_enumeration(
    d: int = 5,
    out: Path | None = None,
    workers: int | None = None,
    stats: EnumerationStats | None = None,
    checkpoint_every: int = 500,
) -> list[CandidateRecord]:
    """Classify every canonical candidate; resumes from ``out`` when it exists.

    Partial results are flushed to ``out`` every ``checkpoint_every`` records
    so that an interrupted run can pick up where it stopped.
    """
    done: dict[Matrix4, CandidateRecord] = {}
    if out is not None and Path(out).exists():
        done = read_results(Path(out))
        log.info("resuming with %d records from %s", len(done), out)
    todo = [A for A in candidates(d, stats) if A not in done]
    workers = workers or worker_count()
    records = dict(done)

    def absorb(batch: Iterable[CandidateRecord]) -> None:
        for rec in batch:
            records[rec.matrix] = rec

    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 and len(todo) > 1 else None
    try:
        for start in range(0, len(todo), checkpoint_every):
            chunk = todo[start:start + checkpoint_every]
            absorb(pool.map(classify, chunk, chunksize=16) if pool else map(classify, chunk))
            if out is not None:
                write_results(Path(out), records.values())
    finally:
        if pool is not None:
            pool.shutdown()
    if out is not None:
        write_results(Path(out), records.values())
    return sorted(records.values(), key=lambda r: r.matrix)


def picard_spectrum(records: Iterable[CandidateRecord]) -> dict[int, CandidateRecord]:
    """Picard values of RDP-passing candidates, each with its least canonical witness."""
    spectrum: dict[int, CandidateRecord] = {}
    for rec in sorted(records, key=lambda r: r.matrix):
        if rec.picard is not None and rec.picard not in spectrum:
            spectrum[rec.picard] = rec
    return dict(sorted(spectrum.items()))


def uniqueness_report(records: Iterable[CandidateRecord], rho: int = 45) -> list[Matrix4]:
    """Canonical forms (under monomial/variable permutation) with h20 passing and the given rho."""
    return sorted(rec.matrix for rec in records if rec.picard == rho)
