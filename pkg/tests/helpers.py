"""Small independent oracles shared by the tests."""

from fractions import Fraction

from liberator.ncalgebra import GeneratorSet, NCPoly

XY = GeneratorSet(("X", "Y"))
XYZ = GeneratorSet(("X", "Y", "Z"))


def gens_of(g):
    return [NCPoly.gen(g, i) for i in range(len(g))]


def brute_reduce(word_terms, rules, pick):
    """Reduce a {word: coeff} table with plain dict rules {(j, i): {word: c}}.

    ``pick`` chooses which descent to rewrite ("left" or "right"), so two
    calls give two independent reduction orders.  No caching, no closure.
    """
    todo = dict(word_terms)
    done = {}
    steps = 0
    while todo:
        steps += 1
        assert steps < 100000, "reduction did not terminate"
        word, c = todo.popitem()
        if not c:
            continue
        spots = [p for p in range(len(word) - 1) if word[p] > word[p + 1]]
        if not spots:
            done[word] = done.get(word, 0) + c
            continue
        p = spots[0] if pick == "left" else spots[-1]
        j, i = word[p], word[p + 1]
        pieces = {word[:p] + (i, j) + word[p + 2:]: Fraction(1)}
        for w, d in rules.get((i, j), {}).items():
            key = word[:p] + w + word[p + 2:]
            pieces[key] = pieces.get(key, 0) - d
        for w, d in pieces.items():
            todo[w] = todo.get(w, 0) + c * d
    return {w: c for w, c in done.items() if c}
