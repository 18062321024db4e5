"""Statistical governor selection: every word independently picks its
most likely governor.

The score of attaching a dependent to a governor factors into a POS
pair probability and a signed distance-bucket prior; attachment to the
tree root is scored from its own table.  Greedy per-word selection can
produce defective graphs (cycles, multiple roots); repair_tree turns any
assignment into a proper tree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import PENN_TAGS, ROOT, DependencyTree, validate_tree

MODEL_HEADER = "clausecut-parser/1"
ROOT_LABEL = "<root>"

# Signed offset buckets (governor index minus dependent index).
OFFSET_BUCKETS = ("-8+", "-4..7", "-3", "-2", "-1",
                  "+1", "+2", "+3", "+4..7", "+8+")


def offset_bucket(offset: int) -> str:
    if offset == 0:
        raise ValueError("zero offset has no bucket")
    mag = abs(offset)
    sign = "+" if offset > 0 else "-"
    if mag == 1:
        return sign + "1"
    if mag == 2:
        return sign + "2"
    if mag == 3:
        return sign + "3"
    if mag <= 7:
        return sign + "4..7"
    return sign + "8+"


@dataclass(frozen=True)
class ParserModel:
    """Smoothed relative-frequency tables.  ``mode`` records what the
    model was trained on: "segment" for clause/sentence material, "np"
    for noun phrase material."""

    mode: str
    add_k: float
    attach_counts: dict     # (dep_pos, gov_pos or ROOT_LABEL) -> int
    dep_totals: dict        # dep_pos -> int
    offset_counts: dict     # bucket -> int
    offset_total: int

    def attach(self, dep_pos: str, gov_pos: str) -> float:
        """P(governor POS | dependent POS); gov_pos may be ROOT_LABEL."""
        n = self.attach_counts.get((dep_pos, gov_pos), 0)
        denom = self.dep_totals.get(dep_pos, 0) + self.add_k * (len(PENN_TAGS) + 1)
        return (n + self.add_k) / denom if denom else 0.0

    def offset_prior(self, bucket: str) -> float:
        n = self.offset_counts.get(bucket, 0)
        denom = self.offset_total + self.add_k * len(OFFSET_BUCKETS)
        return (n + self.add_k) / denom if denom else 0.0

    def score(self, tokens, dependent: int, governor: int) -> float:
        """Attachment score for one candidate; ``governor`` may be ROOT."""
        dep_pos = tokens[dependent].pos
        if governor == ROOT:
            return self.attach(dep_pos, ROOT_LABEL)
        return self.attach(dep_pos, tokens[governor].pos) * self.offset_prior(
            offset_bucket(governor - dependent)
        )


def candidate_governors(tokens, position: int) -> list[int]:
    """Every other token position plus ROOT (listed first)."""
    if not 0 <= position < len(tokens):
        raise ValueError(f"position {position} outside sentence of {len(tokens)} tokens")
    return [ROOT] + [j for j in range(len(tokens)) if j != position]


def train_parser(corpus: list[DependencyTree], mode: str, add_k: float = 0.1) -> ParserModel:
    """Count (dependent POS, governor POS) pairs and offset buckets from
    proper trees."""
    if mode not in ("segment", "np"):
        raise ValueError(f"unknown parser mode {mode!r}")
    if not corpus:
        raise ValueError("cannot train parser on an empty corpus")
    attach_counts = {}
    dep_totals = {}
    offset_counts = {}
    offset_total = 0
    for num, tree in enumerate(corpus):
        report = validate_tree(tree)
        if not report.proper:
            text = " ".join(t.form for t in tree.tokens)
            raise ValueError(f"defective training tree in sentence {num} ({text!r})")
        for i, gov in enumerate(tree.governors):
            dep_pos = tree.tokens[i].pos
            if gov == ROOT:
                key = (dep_pos, ROOT_LABEL)
            else:
                key = (dep_pos, tree.tokens[gov].pos)
                bucket = offset_bucket(gov - i)
                offset_counts[bucket] = offset_counts.get(bucket, 0) + 1
                offset_total += 1
            attach_counts[key] = attach_counts.get(key, 0) + 1
            dep_totals[dep_pos] = dep_totals.get(dep_pos, 0) + 1
    return ParserModel(mode, add_k, attach_counts, dep_totals,
                       offset_counts, offset_total)


def _candidate_rank(dependent: int, governor: int) -> tuple:
    """Tie-break order: smallest absolute offset first, left before
    right, ROOT last."""
    if governor == ROOT:
        return (math.inf, 0)
    offset = governor - dependent
    return (abs(offset), 0 if offset < 0 else 1)


def best_governor(model: ParserModel, tokens, position: int) -> int:
    """Highest-scoring candidate for one word under the tie-break order."""
    candidates = sorted(
        candidate_governors(tokens, position),
        key=lambda j: _candidate_rank(position, j),
    )
    best = None
    best_score = -1.0
    for j in candidates:
        s = model.score(tokens, position, j)
        if s > best_score:
            best_score = s
            best = j
    return best


def select_governors(model: ParserModel, tokens) -> DependencyTree:
    """Greedy per-word argmax.  The output may be defective; callers
    check validate_tree or run repair_tree."""
    tokens = tuple(tokens)
    if not tokens:
        raise ValueError("cannot parse an empty token sequence")
    governors = tuple(best_governor(model, tokens, i) for i in range(len(tokens)))
    return DependencyTree(tokens, governors)


def repair_tree(tree: DependencyTree, model: ParserModel) -> DependencyTree:
    """Rewrite a defective assignment into a proper tree.

    The highest-scoring root is kept (stray roots re-attach to it); each
    cycle is broken at its lowest-scoring arc, whose dependent re-attaches
    to its best already-grounded candidate.  Proper input is returned
    unchanged."""
    report = validate_tree(tree)
    if report.proper:
        return tree
    tokens = tree.tokens
    n = len(tokens)
    governors = list(tree.governors)

    # Noun phrases are head-final, clause material head-initial: break
    # equal-scoring root ties accordingly.
    def root_rank(i):
        tie = i if model.mode == "np" else -i
        return (model.attach(tokens[i].pos, ROOT_LABEL), tie)

    roots = [i for i in range(n) if governors[i] == ROOT]
    if roots:
        kept = max(roots, key=root_rank)
    else:
        kept = max(range(n), key=root_rank)
        governors[kept] = ROOT
    for r in roots:
        if r != kept:
            governors[r] = kept

    def grounded() -> list[bool]:
        ok = [False] * n
        for i in range(n):
            seen = []
            cur = i
            while cur != ROOT and not ok[cur]:
                if cur in seen:
                    break
                seen.append(cur)
                cur = governors[cur]
            if cur == ROOT or ok[cur]:
                for t in seen:
                    ok[t] = True
        return ok

    while True:
        current = DependencyTree(tokens, tuple(governors))
        cycles = validate_tree(current).cycle_list
        if not cycles:
            break
        safe = grounded()
        cycle = cycles[0]
        weakest = min(
            cycle,
            key=lambda i: (model.score(tokens, i, governors[i]), i),
        )
        candidates = sorted(
            (j for j in range(n) if j != weakest and safe[j]),
            key=lambda j: _candidate_rank(weakest, j),
        )
        best = None
        best_score = -1.0
        for j in candidates:
            s = model.score(tokens, weakest, j)
            if s > best_score:
                best_score = s
                best = j
        if best is None:
            best = kept if weakest != kept else ROOT
        governors[weakest] = best

    return DependencyTree(tokens, tuple(governors))


def save_parser(model: ParserModel, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(MODEL_HEADER + "\n")
        f.write("mode\t%s\n" % model.mode)
        f.write("add_k\t%s\n" % repr(model.add_k))
        f.write("offset_total\t%d\n" % model.offset_total)
        for b in sorted(model.offset_counts):
            f.write("offset\t%s\t%d\n" % (b, model.offset_counts[b]))
        for d in sorted(model.dep_totals):
            f.write("deptotal\t%s\t%d\n" % (d, model.dep_totals[d]))
        for (d, g) in sorted(model.attach_counts):
            f.write("attach\t%s\t%s\t%d\n" % (d, g, model.attach_counts[(d, g)]))


def load_parser(path) -> ParserModel:
    with open(path, encoding="utf-8") as f:
        header = f.readline().rstrip("\n")
        if header != MODEL_HEADER:
            raise ValueError(f"not a parser model file: header {header!r}")
        mode = "segment"
        add_k = 0.1
        offset_total = 0
        offset_counts = {}
        dep_totals = {}
        attach_counts = {}
        for line in f:
            fields = line.rstrip("\n").split("\t")
            if fields[0] == "mode":
                mode = fields[1]
            elif fields[0] == "add_k":
                add_k = float(fields[1])
            elif fields[0] == "offset_total":
                offset_total = int(fields[1])
            elif fields[0] == "offset":
                offset_counts[fields[1]] = int(fields[2])
            elif fields[0] == "deptotal":
                dep_totals[fields[1]] = int(fields[2])
            elif fields[0] == "attach":
                attach_counts[(fields[1], fields[2])] = int(fields[3])
            else:
                raise ValueError(f"unknown record {fields[0]!r} in parser model")
    return ParserModel(mode, add_k, attach_counts, dep_totals,
                       offset_counts, offset_total)
