"""Slow, direct re-statements of the scoring and counting definitions.

Nothing here imports the learner; the tests compare the two.
"""

from collections import Counter
from fractions import Fraction

from morphdisamb.fs import FeatureStructure

OFFS = {"llc": -2, "lc": -1, "rc": 1, "rrc": 2}
SHAPE_SLOTS = {
    "S1": ["llc", "lc", "rc", "rrc"],
    "S2L": ["llc", "lc"],
    "S2R": ["rc", "rrc"],
    "S3": ["lc", "rc"],
    "S4L": ["lc"],
    "S4R": ["rc"],
}
SHAPE_GROUP = {"S1": 1, "S2L": 2, "S2R": 2, "S3": 3, "S4L": 4, "S4R": 4}


def choose_score(target, parses, inc, cnt):
    """Score = inc(C,Pi) - max_j cnt(Pi)/cnt(Pj) * inc(C,Pj), j != i, cnt(Pj) > 0.

    Exact rational arithmetic.
    """
    if cnt.get(target, 0) == 0:
        return None
    rivals = []
    for p in parses:
        if p != target and cnt.get(p, 0) > 0:
            rivals.append(Fraction(cnt[target], cnt[p]) * inc.get(p, 0))
    own = inc.get(target, 0)
    if not rivals:
        return Fraction(own)
    return own - max(rivals)


def delete_score(p, inc, cnt):
    c = cnt.get(p, 0)
    return Fraction(inc.get(p, 0), c) if c else Fraction(0)


def _drop(p, slot, ignore):
    if not ignore or p.get("cat") not in ("noun", "pronoun"):
        return p
    gone = ("poss",) if slot in ("llc", "lc") else ("case",)
    return FeatureStructure([(k, v) for k, v in p.items() if k not in gone])


def contexts(sent, i, shape, ignore=False):
    slots = SHAPE_SLOTS[shape]
    got = []
    for s in slots:
        j = i + OFFS[s]
        if not 0 <= j < len(sent):
            return []
        if len(sent[j].parses) != 1:
            return []
        got.append(sent[j].parses[0])
    out = [(shape, tuple(_drop(p, s, ignore) for p, s in zip(got, slots)))]
    if "rc" in slots and "rrc" not in slots:
        k = slots.index("rc")
        stem = got[k].get("stem")
        if stem is not None:
            alt = list(out[0][1])
            alt[k] = _drop(stem, "rc", ignore)
            out.append((shape, tuple(alt)))
    return out


def tables(corpus, shapes=tuple(SHAPE_SLOTS), ignore=False):
    """``(incontext, count)`` keyed ``((shape, ctx), parse)`` and ``parse``."""
    inc, cnt = Counter(), Counter()
    for sent in corpus:
        for i in range(1, len(sent) - 1):
            if len(sent[i].parses) != 1:
                continue
            p = sent[i].parses[0]
            cnt[p] += 1
            if p.get("stem") is not None:
                cnt[p.get("stem")] += 1
            for shape in shapes:
                for ctx in contexts(sent, i, shape, ignore):
                    inc[(ctx, p)] += 1
    return inc, cnt


def _within(a, b):
    """Every item of ``a`` occurs in ``b``, recursing into nested values."""
    for k, v in a.items():
        have = b.getall(k)
        if not any(h == v or (isinstance(v, FeatureStructure) and isinstance(h, FeatureStructure)
                              and _within(v, h)) for h in have):
            return False
    return True


def _fires(target, parses):
    n = sum(_within(target, p) for p in parses)
    return 0 < n < len(parses)


def all_candidates(corpus, ignore=False):
    """Every ``(ctx, target, parses)`` triple present in the corpus."""
    out = set()
    for sent in corpus:
        for i in range(1, len(sent) - 1):
            ps = sent[i].parses
            if len(ps) < 2:
                continue
            for shape in SHAPE_SLOTS:
                for ctx in contexts(sent, i, shape, ignore):
                    for p in ps:
                        if _fires(p, ps):
                            out.add((ctx, p, ps))
    return out


def first_choice(corpus, thresholds, damping, floor, ignore=False):
    """The candidate an exhaustive search would pick first, with its score.

    Thresholds are damped until some group qualifies; returns the list
    of all candidates tied at the winning score (a single element when
    the choice is unambiguous).
    """
    inc, cnt = tables(corpus, ignore=ignore)
    scored = []
    for ctx, p, ps in all_candidates(corpus, ignore):
        local = {q: inc.get((ctx, q), 0) for q in ps}
        s = choose_score(p, ps, local, cnt)
        if s is not None:
            scored.append((SHAPE_GROUP[ctx[0]], s, ctx, p))
    th = dict(thresholds)
    while th[1] >= floor:
        for g in sorted(th):
            group = [x for x in scored if x[0] == g]
            if group and max(x[1] for x in group) >= th[g]:
                top = max(x[1] for x in group)
                return [x for x in group if x[1] == top]
        th = {g: v * damping for g, v in th.items()}
    return []
