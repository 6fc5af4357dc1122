"""Exhaustive, certificate-producing searches: minimal cutting-set
dimensions, code censuses and maximal evasive dimensions.

The minimal-length search walks subspace dimensions upward from the best
rule-based lower bound.  A result is certified by a witness subspace at
dimension d plus an exhaustion record at d-1; the d-1 sweep always runs,
even when the rule interval is already a point, so the value never rests
on the closed-form bounds alone.

Over GF(2) towers the cutting test for the common case h = k-r-1 = 1 runs
on bit-packed rows: every nonzero vector of F^(km) lies on exactly one
E-line, so a candidate fails as soon as some line has seen more than
2^t - 1 of its span elements.  Everything else goes through the generic
deciders.

Work is split into units (pivot set, fill range); unit results merge by
sum / earliest-witness, so the outcome is independent of worker count and
scheduling.  No symmetry reduction is applied: exhaustion totals are raw
subspace counts and must equal the q-binomial.
"""

from __future__ import annotations

import itertools
import multiprocessing
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .combinatorics import (
    CountReport,
    corollary_52_bound,
    count_r_minimal,
    omega_bounds,
    qbinom,
)
from .fields import FieldTower, parse_field_spec
from .geometry import is_cutting, is_evasive
from .linalg import (
    ENUM_ORDER_TAG,
    Subspace,
    enumerate_subspaces,
    free_cells,
    rref_from_fill,
    unpack_gf2,
)
from .rank_metric import RankCode, weight

SCHEMA_VERSION = 1
_FILL_CHUNK = 1 << 16


class BudgetExceeded(RuntimeError):
    """Search ran out of budget; carries the verified bracket."""

    def __init__(self, lower: int, upper: int, certificates: List["Certificate"]):
        super().__init__(f"budget exceeded; verified bracket [{lower}, {upper}]")
        self.lower = lower
        self.upper = upper
        self.certificates = certificates


@dataclass
class SearchJob:
    tower_spec: str
    target: str                       # omega | census | max_evasive
    params: Dict[str, int]
    shards: int = 1
    shard_index: int = 0
    budget: Optional[int] = None      # max subspaces visited
    time_budget_s: Optional[float] = None

    def to_json(self) -> dict:
        return {
            "tower": self.tower_spec, "target": self.target,
            "params": dict(self.params), "shards": self.shards,
            "shard_index": self.shard_index, "budget": self.budget,
            "time_budget_s": self.time_budget_s,
        }


def run_search_job(job: SearchJob, threads: int = 1):
    """Dispatch a SearchJob to its target function."""
    tower = parse_field_spec(job.tower_spec)
    p = job.params
    if job.target == "omega":
        return omega_exhaustive(tower, p["k"], p["r"],
                                dim_cap=p.get("dim_cap"), threads=threads,
                                budget=job.budget,
                                time_budget_s=job.time_budget_s)
    if job.target == "census":
        return census_codes(tower, p["n"], p["k"], r=p.get("r"),
                            budget=job.budget)
    if job.target == "max_evasive":
        return max_evasive_dim(tower, p["k"], p["h"], p["t"],
                               budget=job.budget)
    raise ValueError(f"unknown search target {job.target!r}")


@dataclass
class Certificate:
    kind: str                          # witness | exhaustion
    tower_spec: str
    target: str
    params: Dict[str, int]
    witness: Optional[dict] = None
    exhaustion: Optional[dict] = None
    enum_order: str = ENUM_ORDER_TAG
    schema_version: int = SCHEMA_VERSION
    note: Optional[str] = None

    def to_json(self) -> dict:
        obj = {
            "schema_version": self.schema_version,
            "kind": self.kind,
            "tower": self.tower_spec,
            "target": self.target,
            "params": dict(self.params),
            "enum_order": self.enum_order,
        }
        if self.witness is not None:
            obj["witness"] = self.witness
        if self.exhaustion is not None:
            obj["exhaustion"] = self.exhaustion
        if self.note:
            obj["note"] = self.note
        return obj


@dataclass
class ScanResult:
    dimension: int
    visited: int
    complete: bool
    witness: Optional[Subspace] = None


@dataclass
class OmegaResult:
    value: int
    witness_certificate: Certificate
    exhaustion_certificate: Optional[Certificate]
    bounds_lower: int
    bounds_upper: int
    paper_verified: bool
    visited_total: int

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "bounds": [self.bounds_lower, self.bounds_upper],
            "paper_verified": self.paper_verified,
            "visited_total": self.visited_total,
            "witness_certificate": self.witness_certificate.to_json(),
            "exhaustion_certificate": (
                self.exhaustion_certificate.to_json()
                if self.exhaustion_certificate else None),
        }


# ---------------------------------------------------------------------------
# E-line tables for the GF(2) fast path.
# ---------------------------------------------------------------------------


class _LineTable:
    """Per-(tower, k) lookup: packed nonzero F-vector -> E-line id."""

    def __init__(self, tower: FieldTower, k: int):
        assert tower.q == 2
        m = tower.m
        n_flat = k * m
        assert n_flat <= 22, "line table would be too large"
        comp_mask = (1 << m) - 1
        # packed m-bit group -> E element (basis coordinates -> element)
        from .fields import int_to_digits
        elem_of = [tower.from_coords(int_to_digits(b, 2, m))
                   for b in range(1 << m)]
        coords_of = {}
        for b in range(1 << m):
            coords_of[elem_of[b]] = b
        self.elem_of = elem_of
        line_of = [0] * (1 << n_flat)
        reps: Dict[int, int] = {}
        for v in range(1, 1 << n_flat):
            comps = [elem_of[(v >> (j * m)) & comp_mask] for j in range(k)]
            lead = next(c for c in comps if c)
            inv = tower.xinv(lead)
            canon = 0
            for j, c in enumerate(comps):
                canon |= coords_of[tower.xmul(inv, c)] << (j * m)
            lid = reps.setdefault(canon, len(reps))
            line_of[v] = lid
        self.line_of = line_of
        self.num_lines = len(reps)
        self.k = k
        self.m = m
        self.tower = tower

    def espan_full(self, rows: Sequence[int]) -> bool:
        """Rank over E of the unflattened rows equals k."""
        tower, m, k = self.tower, self.m, self.k
        comp_mask = (1 << m) - 1
        elem_of = self.elem_of
        basis: List[List[int]] = []
        pivots: List[int] = []
        for packed in rows:
            vec = [elem_of[(packed >> (j * m)) & comp_mask] for j in range(k)]
            for brow, p in zip(basis, pivots):
                c = vec[p]
                if c:
                    vec = [tower.xsub(x, tower.xmul(c, y))
                           for x, y in zip(vec, brow)]
            piv = next((j for j, c in enumerate(vec) if c), None)
            if piv is None:
                continue
            inv = tower.xinv(vec[piv])
            vec = [tower.xmul(inv, x) for x in vec]
            basis.append(vec)
            pivots.append(piv)
            if len(basis) == k:
                return True
        return len(basis) == k


_LINE_TABLES: Dict[Tuple[FieldTower, int], _LineTable] = {}


def _line_table(tower: FieldTower, k: int) -> _LineTable:
    key = (tower, k)
    if key not in _LINE_TABLES:
        _LINE_TABLES[key] = _LineTable(tower, k)
    return _LINE_TABLES[key]


# ---------------------------------------------------------------------------
# Scanning one dimension for cutting r-blocking sets.
# ---------------------------------------------------------------------------


def _unit_list(ambient: int, d: int, order: int,
               shards: int = 1, shard_index: int = 0,
               ) -> List[Tuple[int, Tuple[int, ...], int, int]]:
    """Work units (unit_id, pivots, fill_lo, fill_hi) in enumeration order.

    Sharding keeps contiguous pivot-set index ranges together so external
    orchestration can split by ``--shards``/``--shard-index``.
    """
    pivot_sets = list(itertools.combinations(range(ambient), d))
    if shards > 1:
        per = (len(pivot_sets) + shards - 1) // shards
        lo, hi = shard_index * per, min((shard_index + 1) * per,
                                        len(pivot_sets))
        chosen = list(enumerate(pivot_sets))[lo:hi]
    else:
        chosen = list(enumerate(pivot_sets))
    units = []
    uid = 0
    for pidx, pivots in chosen:
        nfill = order ** len(free_cells(pivots, ambient))
        lo = 0
        while lo < nfill:
            hi = min(lo + _FILL_CHUNK, nfill)
            units.append((uid, pivots, lo, hi))
            uid += 1
            lo = hi
    return units


def _scan_unit_q2_h1(table: _LineTable, r: int, d: int,
                     pivots: Tuple[int, ...], lo: int, hi: int,
                     stop_at_first: bool) -> Tuple[int, Optional[List[int]], int]:
    """Scan one unit with the E-line histogram test (h = 1).

    Returns (visited, witness_rows or None, witness_fill).
    """
    ambient = table.k * table.m
    m = table.m
    t = d - m * r - 1
    cells = free_cells(pivots, ambient)
    cell_row = [rc[0] for rc in cells]
    cell_bit = [1 << rc[1] for rc in cells]
    nfree = len(cells)
    rows = [1 << p for p in pivots]
    x = lo
    digits = [0] * nfree
    for j in range(nfree):
        x, dgt = divmod(x, 2)
        digits[j] = dgt
        if dgt:
            rows[cell_row[j]] |= cell_bit[j]
    if t < 0:
        # dimension too small to cut; nothing to test candidate-by-candidate
        return hi - lo, None, -1
    cap = (1 << t) - 1
    line_of = table.line_of
    num_lines = table.num_lines
    vacuous = cap >= (1 << m) - 1
    ctz = [0] * (1 << d)
    for i in range(1, 1 << d):
        ctz[i] = (i & -i).bit_length() - 1
    stamp = [0] * num_lines
    cnt = [0] * num_lines
    tag = 0
    visited = 0
    witness = None
    witness_fill = -1
    span_size = 1 << d
    for fill in range(lo, hi):
        if fill != lo:
            j = 0
            while digits[j]:
                digits[j] = 0
                rows[cell_row[j]] ^= cell_bit[j]
                j += 1
            digits[j] = 1
            rows[cell_row[j]] ^= cell_bit[j]
        visited += 1
        ok = True
        if not vacuous:
            tag += 1
            v = 0
            if cap == 0:
                ok = d == 0
            else:
                for i in range(1, span_size):
                    v ^= rows[ctz[i]]
                    lid = line_of[v]
                    if stamp[lid] != tag:
                        stamp[lid] = tag
                        cnt[lid] = 1
                    else:
                        c = cnt[lid] + 1
                        if c > cap:
                            ok = False
                            break
                        cnt[lid] = c
        if ok and witness is None and table.espan_full(rows):
            witness = list(rows)
            witness_fill = fill
            if stop_at_first:
                return visited, witness, witness_fill
    return visited, witness, witness_fill


def _scan_unit_generic(tower: FieldTower, k: int, r: int, d: int,
                       pivots: Tuple[int, ...], lo: int, hi: int,
                       stop_at_first: bool,
                       ) -> Tuple[int, Optional[Subspace], int]:
    ambient = k * tower.m
    order = tower.q
    cells = free_cells(pivots, ambient)
    visited = 0
    witness: Optional[Subspace] = None
    witness_fill = -1
    for fill in range(lo, hi):
        rows = rref_from_fill(pivots, ambient, cells, fill, order)
        sub = Subspace(tower, "F", ambient,
                       tuple(tuple(rw) for rw in rows), tuple(pivots))
        visited += 1
        if witness is None and is_cutting(tower, k, sub, r).verdict:
            witness, witness_fill = sub, fill
            if stop_at_first:
                return visited, witness, witness_fill
    return visited, witness, witness_fill


# shared state for worker processes (populated by _pool_init)
_WORKER_CTX: dict = {}


def _pool_init(spec: str, k: int, r: int, d: int, stop_at_first: bool):
    tower = parse_field_spec(spec)
    ctx = {"tower": tower, "k": k, "r": r, "d": d, "stop": stop_at_first}
    if tower.q == 2 and k - r - 1 == 1:
        ctx["table"] = _line_table(tower, k)
    _WORKER_CTX.update(ctx)


def _pool_scan(unit) -> Tuple[int, int, Optional[list], int]:
    uid, pivots, lo, hi = unit
    ctx = _WORKER_CTX
    if "table" in ctx:
        visited, rows, fill = _scan_unit_q2_h1(
            ctx["table"], ctx["r"], ctx["d"], pivots, lo, hi, ctx["stop"])
        return uid, visited, rows, fill
    visited, sub, fill = _scan_unit_generic(
        ctx["tower"], ctx["k"], ctx["r"], ctx["d"], pivots, lo, hi,
        ctx["stop"])
    rows = [list(rw) for rw in sub.rows] if sub is not None else None
    return uid, visited, rows, fill


def scan_dimension(tower: FieldTower, k: int, r: int, d: int,
                   stop_at_first: bool = True, threads: int = 1,
                   shards: int = 1, shard_index: int = 0,
                   budget: Optional[int] = None) -> ScanResult:
    """Scan every d-dimensional F-subspace of E^[k] for a cutting r-blocking
    set, in enumeration order.  Deterministic for any thread count."""
    ambient = k * tower.m
    units = _unit_list(ambient, d, tower.q, shards, shard_index)
    fast = tower.q == 2 and k - r - 1 == 1
    if fast:
        table = _line_table(tower, k)
    visited_total = 0
    witness_sub: Optional[Subspace] = None
    stopped_early = False

    def handle(visited, rows):
        nonlocal visited_total, witness_sub
        visited_total += visited
        if rows is not None and witness_sub is None:
            if fast:
                tup = [unpack_gf2(rw, ambient) for rw in rows]
                witness_sub = Subspace.span(tower, "F", ambient, tup)
            else:
                witness_sub = Subspace.span(tower, "F", ambient,
                                            [tuple(rw) for rw in rows])

    if threads <= 1 or len(units) <= 1:
        for unit in units:
            _, pivots, lo, hi = unit
            if fast:
                visited, rows, _ = _scan_unit_q2_h1(
                    table, r, d, pivots, lo, hi, stop_at_first)
            else:
                visited, sub, _ = _scan_unit_generic(
                    tower, k, r, d, pivots, lo, hi, stop_at_first)
                rows = [list(rw) for rw in sub.rows] if sub else None
            handle(visited, rows)
            if witness_sub is not None and stop_at_first:
                stopped_early = True
                break
            if budget is not None and visited_total > budget:
                raise BudgetExceeded(d, d, [])
    else:
        ctxm = multiprocessing.get_context("fork")
        with ctxm.Pool(threads, initializer=_pool_init,
                       initargs=(tower.spec_string(), k, r, d,
                                 stop_at_first)) as pool:
            for _, visited, rows, _ in pool.imap(
                    _pool_scan, units, chunksize=1):
                handle(visited, rows)
                if witness_sub is not None and stop_at_first:
                    stopped_early = True
                    pool.terminate()
                    break
                if budget is not None and visited_total > budget:
                    pool.terminate()
                    raise BudgetExceeded(d, d, [])
    return ScanResult(d, visited_total, not stopped_early, witness_sub)


# ---------------------------------------------------------------------------
# The minimal-length search.
# ---------------------------------------------------------------------------


def omega_exhaustive(tower: FieldTower, k: int, r: int,
                     dim_cap: Optional[int] = None, threads: int = 1,
                     budget: Optional[int] = None,
                     time_budget_s: Optional[float] = None) -> OmegaResult:
    """Smallest dimension of a cutting r-blocking set of E^[k], with a
    witness certificate at the answer and an exhaustion certificate one
    dimension below.

    Ascends from the rule lower bound; the d-1 sweep runs even when the
    rules already pin the value.  Raises BudgetExceeded with the verified
    bracket when the node or time budget runs out (time is checked between
    dimension scans).
    """
    if k < r + 1:
        raise ValueError("need k >= r + 1")
    m = tower.m
    bounds = omega_bounds(m, k, r)
    ambient = k * m
    hard_cap = min(dim_cap if dim_cap is not None else ambient,
                   ambient)
    spec = tower.spec_string()
    visited_total = 0
    certs: List[Certificate] = []
    exhaust_results: Dict[int, ScanResult] = {}
    deadline = (None if time_budget_s is None
                else time.monotonic() + time_budget_s)

    d = bounds.lower
    while d <= hard_cap:
        remaining = None if budget is None else budget - visited_total
        if remaining is not None and remaining <= 0:
            raise BudgetExceeded(d, bounds.upper, certs)
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded(d, bounds.upper, certs)
        try:
            res = scan_dimension(tower, k, r, d, stop_at_first=True,
                                 threads=threads, budget=remaining)
        except BudgetExceeded:
            raise BudgetExceeded(d, bounds.upper, certs) from None
        visited_total += res.visited
        if res.witness is None:
            expected = qbinom(tower.q, ambient, d)
            assert res.visited == expected, \
                f"exhaustion visited {res.visited} != {expected}"
            exhaust_results[d] = res
            certs.append(_exhaustion_certificate(spec, k, r, d, res))
            d += 1
            continue
        # witness found at d: make sure d-1 was exhausted
        witness_cert = _witness_certificate(tower, spec, k, r, d, res.witness)
        exhaustion_cert = None
        if d - 1 >= 0:
            if d - 1 in exhaust_results:
                exhaustion_cert = certs[-1]
            else:
                remaining = (None if budget is None
                             else budget - visited_total)
                below = scan_dimension(tower, k, r, d - 1,
                                       stop_at_first=False, threads=threads,
                                       budget=remaining)
                visited_total += below.visited
                assert below.witness is None, \
                    "witness below the rule lower bound: bounds are wrong"
                expected = qbinom(tower.q, ambient, d - 1)
                assert below.visited == expected
                exhaustion_cert = _exhaustion_certificate(
                    spec, k, r, d - 1, below)
                certs.append(exhaustion_cert)
        assert bounds.lower <= d <= bounds.upper, \
            "computed value escapes the rule interval"
        return OmegaResult(
            value=d,
            witness_certificate=witness_cert,
            exhaustion_certificate=exhaustion_cert,
            bounds_lower=bounds.lower,
            bounds_upper=bounds.upper,
            paper_verified=bounds.exact,
            visited_total=visited_total,
        )
    raise AssertionError("no cutting set found up to the dimension cap; "
                         "the upper-bound rules contradict the search")


def _witness_certificate(tower: FieldTower, spec: str, k: int, r: int,
                         d: int, witness: Subspace) -> Certificate:
    # re-verify through the public decider before certifying
    verdict = is_cutting(tower, k, witness, r)
    assert verdict.verdict, "witness failed re-verification"
    return Certificate(
        kind="witness", tower_spec=spec, target="omega",
        params={"k": k, "r": r, "dimension": d},
        witness=witness.to_json(),
    )


def _exhaustion_certificate(spec: str, k: int, r: int, d: int,
                            res: ScanResult) -> Certificate:
    return Certificate(
        kind="exhaustion", tower_spec=spec, target="omega",
        params={"k": k, "r": r, "dimension": d},
        exhaustion={"dimension": d, "total_visited": res.visited,
                    "counterexample_free": True},
    )


# ---------------------------------------------------------------------------
# Code census.
# ---------------------------------------------------------------------------


def census_codes(tower: FieldTower, n: int, k: int,
                 r: Optional[int] = None,
                 weight_of_interest: Optional[int] = None,
                 constant_weight_r: Optional[int] = None,
                 budget: Optional[int] = None,
                 collect_examples: int = 0) -> CountReport:
    """Enumerate every [n,k] code, counting r-minimal codes, the weight
    distribution, and optionally constant-weight codes."""
    from .minimality import constant_weight_class, is_r_minimal

    total = qbinom(tower.order, n, k)
    if budget is not None and total > budget:
        raise BudgetExceeded(0, total, [])
    m = tower.m
    counts: Dict[str, int] = {"total": 0}
    weight_dist: Dict[int, int] = {}
    minimal = 0
    constant = 0
    examples: List[dict] = []
    for sub in enumerate_subspaces(tower, "E", n, k):
        code = RankCode(tower, n, sub.rows)
        counts["total"] += 1
        wt = weight(code)
        weight_dist[wt] = weight_dist.get(wt, 0) + 1
        if r is not None:
            ok = is_r_minimal(code, r).verdict if 0 < r < k else True
            if ok:
                minimal += 1
                if len(examples) < collect_examples:
                    examples.append(code.to_json())
        if constant_weight_r is not None and k >= 2:
            rep = constant_weight_class(code, constant_weight_r)
            if rep.is_constant:
                constant += 1
    assert counts["total"] == total
    report = CountReport(
        inputs={"q": tower.q, "m": m, "n": n, "k": k,
                **({"r": r} if r is not None else {})},
        counts={"total": counts["total"],
                "weight_distribution": weight_dist},
        formulas={"total_formula": total},
    )
    if r is not None:
        report.counts["r_minimal"] = minimal
        report.counts["not_r_minimal"] = counts["total"] - minimal
        if k == r + 1:
            report.formulas["r_minimal_formula"] = count_r_minimal(
                tower.q, m, n, r)
    if constant_weight_r is not None:
        report.counts["constant_weight"] = constant
    if weight_of_interest is not None:
        report.counts["with_weight"] = weight_dist.get(weight_of_interest, 0)
    if examples:
        report.counts["examples"] = examples
    return report


def subcode_weight_census(tower: FieldTower, n: int, r: int,
                          ) -> Dict[int, int]:
    """Weight distribution of all r-dimensional codes of E^n (the counts
    feeding the existence bound on non-minimal (r+1)-dimensional codes)."""
    out: Dict[int, int] = {}
    for sub in enumerate_subspaces(tower, "E", n, r):
        code = RankCode(tower, n, sub.rows) if r else RankCode.zero(tower, n)
        wt = weight(code)
        out[wt] = out.get(wt, 0) + 1
    return out


# ---------------------------------------------------------------------------
# Maximal evasive dimension.
# ---------------------------------------------------------------------------


def max_evasive_dim(tower: FieldTower, k: int, h: int, t: int,
                    budget: Optional[int] = None,
                    ) -> Tuple[Optional[int], Optional[Subspace]]:
    """Largest dim_F of an (h,t)-evasive subspace of E^[k], by descending
    dimension with early exit; None when no such subspace exists."""
    m = tower.m
    ambient = k * m
    visited = 0
    for d in range(ambient, -1, -1):
        for sub in enumerate_subspaces(tower, "F", ambient, d):
            visited += 1
            if budget is not None and visited > budget:
                raise BudgetExceeded(0, d, [])
            ok, _ = is_evasive(tower, k, sub, h, t)
            if ok:
                _check_evasive_caps(m, k, h, t, d)
                return d, sub
    return None, None


def _check_evasive_caps(m: int, k: int, h: int, t: int, d: int) -> None:
    if t == h and d >= k + 1 and h <= k:
        assert d <= k * m // (h + 1), "evasive dimension beats the cap"
    if h <= k:
        # the corollary bound applies when t = 2k - lam - s for lam = k - h
        lam = k - h
        s = 2 * k - lam - t
        cap = corollary_52_bound(m, k, lam, s)
        if cap is not None:
            assert d <= cap, "evasive dimension beats the corollary cap"
