"""Shared helpers for the test modules."""

import random
from collections import defaultdict

from affdemazure.charring import from_terms
from affdemazure.weylgroup import reflection_matrix, word_matrix


def random_characters(cd, count=20, seed=0, terms=6, bound=3, coeff=5):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        ts = [(tuple(rng.randint(-bound, bound) for _ in range(cd.size)), rng.randint(-coeff, coeff))
              for _ in range(rng.randint(1, terms))]
        x = from_terms(cd, ts)
        out.append(x if x else from_terms(cd, [((0,) * cd.size, 1)]))
    return out


def reduced_words_by_element(cd, max_length):
    """Every reduced word of length <= max_length, grouped by the element it spells.

    Breadth-first: a word w.s with w reduced of length k is reduced exactly
    when w.s was not already reached at length k - 1.
    """
    def key(M):
        return M.tobytes()

    reflections = [reflection_matrix(cd, i) for i in range(cd.size)]
    start = word_matrix(cd, [])
    groups = {key(start): [()]}
    level = {key(start): start}
    previous = {}
    for _ in range(max_length):
        nxt, words = {}, defaultdict(list)
        for k, M in level.items():
            for i, S in enumerate(reflections):
                N = M @ S
                kn = key(N)
                if kn in previous:
                    continue
                nxt[kn] = N
                words[kn].extend(w + (i,) for w in groups[k])
        for kn, ws in words.items():
            groups[kn] = sorted(set(ws))
        previous, level = level, nxt
    return groups
