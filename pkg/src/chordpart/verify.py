"""Exhaustive certification of the partition lemmas on small graphs.

Every connected partition is enumerated, its quotient is classified, and the
lemma's disjunction is checked on the partitions whose quotient lies in the
class.  Work is split by restricted-growth-string prefix; chunk results are
merged in prefix order, so a report does not depend on the number of workers.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterator, Literal, Sequence

from .config import caps, get_config, set_config
from .errors import ResourceCapError
from .formats import to_graph6
from .graph import Graph, are_isomorphic, bits, contains_induced, iter_clique_masks, make_graph, popcount
from .partition import (
    Partition,
    connected_partition_masks,
    make_partition,
    partition_from_masks,
    quotient_adj,
    rgs_prefixes,
    spread_parts,
)
from .recognition import is_chordal, is_perfect_small

SCHEMA_VERSION = 1

Lemma = Literal["chordal", "perfect", "general"]
QuotientClass = Literal["chordal", "perfect", "neither"]


@dataclass
class VerificationReport:
    """Outcome of one exhaustive run.

    ``failures`` holds one record per partition violating the lemma's
    disjunction; an empty list is the verdict "certified".
    """

    lemma: Lemma
    graph_n: int
    graph_m: int
    graph6: str
    k: int
    r: int
    t: int | None = None
    partition_count: int = 0
    filtered_count: int = 0
    tallies: dict[str, int] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)
    workers: int = 1
    wall_time: float = 0.0

    @property
    def certified(self) -> bool:
        return not self.failures

    @property
    def verdict(self) -> str:
        return "certified" if self.certified else "failures"

    def to_dict(self, timing: bool = True) -> dict:
        params = {"k": self.k, "r": self.r}
        if self.t is not None:
            params["t"] = self.t
        d = {
            "schema_version": SCHEMA_VERSION,
            "lemma": self.lemma,
            "graph": {"n": self.graph_n, "m": self.graph_m, "graph6": self.graph6},
            "params": params,
            "partition_count": self.partition_count,
            "filtered_count": self.filtered_count,
            "tallies": dict(sorted(self.tallies.items())),
            "failures": self.failures,
            "verdict": self.verdict,
        }
        if timing:
            d["wall_time"] = round(self.wall_time, 3)
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2) + "\n"


def graph_catalog(t: int, cap: int | None = None) -> list[Graph]:
    """All graphs on ``t`` vertices up to isomorphism (1, 2, 4, 11 for t = 1..4)."""
    cap = caps().catalog_t if cap is None else cap
    if t > cap:
        raise ResourceCapError("graph catalog order", t, cap)
    pairs = list(combinations(range(t), 2))
    reps: list[Graph] = []
    for code in range(1 << len(pairs)):
        H = make_graph(t, [p for i, p in enumerate(pairs) if code >> i & 1])
        if not any(are_isomorphic(H, R, cap=t) for R in reps):
            reps.append(H)
    return reps


class _Checker:
    """Per-run state: precomputed clique masks and a quotient classification cache."""

    def __init__(self, G: Graph, lemma: Lemma, k: int, r: int, t: int | None) -> None:
        self.G = G
        self.lemma = lemma
        self.k = k
        self.r = r
        self.spread = list(iter_clique_masks(G.adj, k * r, G.all_mask))
        self.part = list(iter_clique_masks(G.adj, k + 1, G.all_mask))
        self.catalog = graph_catalog(t) if lemma == "general" else []
        self._class: dict[tuple[int, ...], QuotientClass] = {}
        self._universal: dict[tuple[int, ...], bool] = {}

    def classify(self, rows: tuple[int, ...]) -> QuotientClass:
        cls = self._class.get(rows)
        if cls is None:
            Q = Graph.from_adjacency(rows)
            if is_chordal(Q):
                cls = "chordal"
            elif is_perfect_small(Q):
                cls = "perfect"
            else:
                cls = "neither"
            self._class[rows] = cls
        return cls

    def universal(self, rows: tuple[int, ...]) -> bool:
        """Whether the quotient contains every graph of the catalog."""
        hit = self._universal.get(rows)
        if hit is None:
            Q = Graph.from_adjacency(rows)
            hit = all(contains_induced(Q, H) for H in self.catalog)
            self._universal[rows] = hit
        return hit

    def in_class(self, cls: QuotientClass) -> bool:
        if self.lemma == "chordal":
            return cls == "chordal"
        if self.lemma == "perfect":
            return cls != "neither"
        return True

    def outcome_spread(self, masks: Sequence[int]) -> bool:
        k = self.k
        return any(spread_parts(c, masks, k) is not None for c in self.spread)

    def outcome_part(self, masks: Sequence[int]) -> bool:
        for c in self.part:
            low = c & -c
            for m in masks:
                if m & low:
                    if c & ~m == 0:
                        return True
                    break
        return False

    def record(self, masks: Sequence[int], rows: tuple[int, ...], cls: QuotientClass) -> dict:
        rec = {
            "partition": [list(bits(m)) for m in masks],
            "quotient_class": cls,
            "outcome1": self.outcome_spread(masks),
        }
        if self.lemma == "general":
            rec["outcome2"] = self.universal(rows)
            rec["outcome3"] = self.outcome_part(masks)
        else:
            rec["outcome2"] = self.outcome_part(masks)
        return rec

    @staticmethod
    def holds(rec: dict) -> bool:
        return rec["outcome1"] or rec["outcome2"] or rec.get("outcome3", False)

    def failure_detail(self, rec: dict, rows: tuple[int, ...]) -> dict:
        Q = Graph.from_adjacency(rows)
        rec = dict(rec)
        rec["quotient_edges"] = [list(e) for e in Q.edges]
        if rec["quotient_class"] == "chordal":
            rec["certificate"] = {"peo": list(is_chordal(Q).ordering)}
        return rec


@dataclass
class _Chunk:
    count: int = 0
    filtered: int = 0
    tallies: dict[str, int] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)
    records: list[dict] = field(default_factory=list)


def _scan(
    checker: _Checker,
    prefix: Sequence[int],
    keep_all: bool,
    emit: Callable[[dict, bool], None] | None = None,
) -> _Chunk:
    out = _Chunk()
    adj = checker.G.adj
    tallies = out.tallies
    for masks in connected_partition_masks(checker.G, prefix):
        out.count += 1
        rows = tuple(quotient_adj(adj, masks))
        cls = checker.classify(rows)
        if not checker.in_class(cls):
            if keep_all:
                rec = checker.record(masks, rows, cls)
                out.records.append(rec)
                if emit:
                    emit(rec, False)
            continue
        out.filtered += 1
        rec = checker.record(masks, rows, cls)
        for key in ("outcome1", "outcome2", "outcome3"):
            if rec.get(key):
                tallies[key] = tallies.get(key, 0) + 1
        failed = not checker.holds(rec)
        if failed:
            rec = checker.failure_detail(rec, rows)
            out.failures.append(rec)
        if keep_all:
            out.records.append(rec)
        if emit and (keep_all or failed):
            emit(rec, failed)
    return out


_worker_checker: _Checker | None = None


def _worker_init(adj: tuple[int, ...], lemma: Lemma, k: int, r: int, t: int | None, cfg) -> None:
    global _worker_checker
    set_config(cfg)
    _worker_checker = _Checker(Graph.from_adjacency(adj), lemma, k, r, t)


def _worker_scan(args: tuple[tuple[int, ...], bool]) -> _Chunk:
    prefix, keep_all = args
    assert _worker_checker is not None
    return _scan(_worker_checker, prefix, keep_all)


def _split_depth(n: int, workers: int) -> int:
    if workers <= 1:
        return 0
    depth = 0
    while depth < n and len(rgs_prefixes(n, depth)) < 4 * workers:
        depth += 1
    return depth


def _verify(
    G: Graph,
    lemma: Lemma,
    k: int,
    r: int,
    t: int | None,
    workers: int | None,
    stream=None,
    stream_all: bool = False,
) -> VerificationReport:
    cap = caps().enumeration
    if G.n > cap:
        raise ResourceCapError("connected-partition enumeration", G.n, cap)
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    workers = get_config().workers if workers is None else workers
    start = time.perf_counter()
    report = VerificationReport(lemma, G.n, G.m, to_graph6(G), k, r, t, workers=max(1, workers))

    def emit(rec: dict, failed: bool) -> None:
        if stream is not None:
            stream.write(json.dumps(rec, sort_keys=True) + "\n")
            stream.flush()

    depth = _split_depth(G.n, workers)
    prefixes = rgs_prefixes(G.n, depth)
    if workers <= 1:
        checker = _Checker(G, lemma, k, r, t)
        chunks: Iterator[_Chunk] = (_scan(checker, p, stream_all, emit) for p in prefixes)
        _merge(report, chunks, None)
    else:
        with ProcessPoolExecutor(
            max_workers=workers,
            initializer=_worker_init,
            initargs=(G.adj, lemma, k, r, t, get_config()),
        ) as pool:
            chunks = pool.map(_worker_scan, [(p, stream_all) for p in prefixes])
            _merge(report, chunks, emit if stream is not None else None, stream_all)
    report.wall_time = time.perf_counter() - start
    return report


def _merge(report: VerificationReport, chunks, emit, stream_all: bool = False) -> None:
    for ch in chunks:
        report.partition_count += ch.count
        report.filtered_count += ch.filtered
        for key, v in ch.tallies.items():
            report.tallies[key] = report.tallies.get(key, 0) + v
        report.failures.extend(ch.failures)
        if emit is not None:
            for rec in ch.records if stream_all else ch.failures:
                emit(rec, rec in ch.failures)


def verify_chordal_lemma(G: Graph, k: int, r: int, *, workers: int | None = None, stream=None, stream_all: bool = False) -> VerificationReport:
    """Check, for every connected partition with chordal quotient, that a
    ``kr``-clique meets ``r`` parts in ``k`` vertices each or some part holds
    ``K_{k+1}``.

    Failure records are written to ``stream`` (NDJSON) as they are found;
    ``stream_all`` writes a record for every partition.
    """
    return _verify(G, "chordal", k, r, None, workers, stream, stream_all)


def verify_perfect_lemma(G: Graph, k: int, r: int, *, workers: int | None = None, stream=None, stream_all: bool = False) -> VerificationReport:
    """As :func:`verify_chordal_lemma`, over partitions with perfect quotient."""
    return _verify(G, "perfect", k, r, None, workers, stream, stream_all)


def verify_general_lemma(
    G: Graph, k: int, t: int, r: int, *, workers: int | None = None, stream=None, stream_all: bool = False
) -> VerificationReport:
    """For every connected partition: spread clique, or the quotient contains
    every ``t``-vertex graph, or some part holds ``K_{k+1}``."""
    graph_catalog(t)  # cap check before any enumeration
    return _verify(G, "general", k, r, t, workers, stream, stream_all)


def verify(G: Graph, lemma: Lemma, k: int, r: int, t: int | None = None, **kw) -> VerificationReport:
    if lemma == "chordal":
        return verify_chordal_lemma(G, k, r, **kw)
    if lemma == "perfect":
        return verify_perfect_lemma(G, k, r, **kw)
    if lemma == "general":
        if t is None:
            raise ValueError("the general lemma needs t")
        return verify_general_lemma(G, k, t, r, **kw)
    raise ValueError(f"unknown lemma {lemma!r}")


def replay(G: Graph, record: dict, lemma: Lemma, k: int, r: int, t: int | None = None) -> dict:
    """Recompute class and outcomes for a recorded partition (certificate replay)."""
    P = make_partition(G.n, record["partition"])
    checker = _Checker(G, lemma, k, r, t)
    masks = P.masks
    rows = tuple(quotient_adj(G.adj, masks))
    return checker.record(masks, rows, checker.classify(rows))


# --- partition search ----------------------------------------------------------


@dataclass(frozen=True)
class PartPredicate:
    """Constraint every part must meet: ``bipartite``, ``kfree`` (no ``K_param``) or ``max-size``."""

    name: Literal["bipartite", "kfree", "max-size"]
    param: int | None = None

    @classmethod
    def parse(cls, text: str) -> "PartPredicate":
        name, _, arg = text.partition(":")
        if name == "bipartite" and not arg:
            return cls("bipartite")
        if name in ("kfree", "max-size") and arg.isdigit():
            return cls(name, int(arg))
        raise ValueError(f"bad part predicate {text!r}; use bipartite, kfree:<k> or max-size:<m>")

    def __call__(self, adj: Sequence[int], mask: int) -> bool:
        if self.name == "bipartite":
            return is_bipartite_mask(adj, mask)
        if self.name == "kfree":
            return next(iter_clique_masks(adj, self.param, mask), None) is None
        return popcount(mask) <= self.param


def is_bipartite_mask(adj: Sequence[int], mask: int) -> bool:
    """BFS layering: bipartite iff no edge joins two vertices of the same layer."""
    rest = mask
    while rest:
        layer = rest & -rest
        seen = layer
        while layer:
            nxt = 0
            for v in bits(layer):
                if adj[v] & layer:
                    return False
                nxt |= adj[v]
            layer = nxt & mask & ~seen
            seen |= layer
        rest &= ~seen
    return True


@dataclass(frozen=True)
class SearchResult:
    partition: Partition | None
    examined: int

    @property
    def found(self) -> bool:
        return self.partition is not None


def search_partition(
    G: Graph, quotient_class: Literal["chordal", "perfect", "any"], predicate: PartPredicate | str
) -> SearchResult:
    """First connected partition (RGS order) with quotient in the class and
    every part satisfying ``predicate``; otherwise the number of partitions examined."""
    if isinstance(predicate, str):
        predicate = PartPredicate.parse(predicate)
    examined = 0
    cache: dict[tuple[int, ...], bool] = {}
    for masks in connected_partition_masks(G):
        examined += 1
        if not all(predicate(G.adj, m) for m in masks):
            continue
        if quotient_class != "any":
            rows = tuple(quotient_adj(G.adj, masks))
            ok = cache.get(rows)
            if ok is None:
                Q = Graph.from_adjacency(rows)
                ok = bool(is_chordal(Q)) if quotient_class == "chordal" else bool(is_perfect_small(Q))
                cache[rows] = ok
            if not ok:
                continue
        return SearchResult(partition_from_masks(G.n, masks), examined)
    return SearchResult(None, examined)
