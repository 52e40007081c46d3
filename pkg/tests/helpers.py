"""Shared corpus builders and independent oracles for the test suite.

The oracles here deliberately avoid the library's traversal helpers and
work from raw edge lists, so agreement with the package is evidence, not
circularity.
"""

import random
from fractions import Fraction

from subsetcurrents import (
    Alphabet,
    BasedCoreGraph,
    RationalCurrent,
    counting_current,
    from_generators,
    normalize,
    random_subgroup,
)


def brute_force_occurrences(tree, graph) -> int:
    """Count occurrence roots of a finite subtree by exhaustive search.

    For each candidate root vertex, every tree edge (w, w + s) is matched
    against the raw edge list in both orientations, branching over all
    candidates; a root counts when at least one full assignment exists in
    which every interior tree vertex (degree above 1) lands on a graph
    vertex of equal degree.  No folding or germ bookkeeping is assumed.
    """
    edges = list(graph.edges)
    degree = [0] * graph.num_vertices
    for o, t, _ in edges:
        degree[o] += 1
        degree[t] += 1

    words = sorted(tree.words, key=lambda w: (len(w), w))
    children = {w: [] for w in words}
    tree_degree = {w: (1 if w else 0) for w in words}
    for w in words:
        if w:
            children[w[:-1]].append(w)
            tree_degree[w[:-1]] += 1

    def targets(v, s):
        out = []
        for o, t, lab in edges:
            if o == v and lab == s:
                out.append(t)
            if t == v and lab == -s:
                out.append(o)
        return out

    def extend(image, pending) -> bool:
        if not pending:
            return all(
                degree[image[w]] == tree_degree[w]
                for w in words
                if tree_degree[w] > 1
            )
        w, rest = pending[0], pending[1:]
        for tgt in targets(image[w[:-1]], w[-1]):
            image[w] = tgt
            if extend(image, rest):
                return True
        image.pop(w, None)
        return False

    count = 0
    for v in range(graph.num_vertices):
        if extend({(): v}, words[1:]):
            count += 1
    return count


def random_tree_words(rng: random.Random, alphabet: Alphabet, depth: int, grows: int):
    """A random prefix-closed set of reduced words of length <= depth."""
    words = {()}
    for _ in range(grows):
        base = rng.choice(sorted(words, key=lambda w: (len(w), w)))
        if len(base) >= depth:
            continue
        options = [
            s for s in alphabet.signed_letters() if not base or s != -base[-1]
        ]
        words.add(base + (rng.choice(options),))
    return words


def subgroup_corpus(rng: random.Random, alphabet: Alphabet, size: int):
    """Seeded list of nontrivial subgroups, small generating data."""
    return [
        random_subgroup(rng, alphabet, max_gens=3, max_len=6) for _ in range(size)
    ]


def special_corpus(alphabet: Alphabet):
    """Hand-picked subgroups that exercise edge cases of every functional."""
    al = alphabet
    gens = [[(i,) for i in al.letters()]]  # the whole group
    gens.append([(1,)])  # cyclic
    gens.append([(1, 1)])  # cyclic, proper power
    gens.append([(1, 2)])
    gens.append([(1, 1), (2,)])
    gens.append([(1,), (2, 2)])
    gens.append([(1, 1), (2, 2)])
    gens.append([(1, 2, -1)])  # conjugate of a generator
    gens.append([(1, 1), (2,), (1, 2, -1)])  # index two in the whole group
    return [from_generators(g, al) for g in gens]


def random_current(
    rng: random.Random, alphabet: Alphabet, max_terms: int = 3
) -> RationalCurrent:
    """Seeded rational current with 1..max_terms subgroup terms."""
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        coeff = Fraction(rng.randint(1, 5), rng.randint(1, 4))
        terms.append((coeff, random_subgroup(rng, alphabet).graph))
    return normalize(terms)


def current_pair_corpus(rng: random.Random, alphabet: Alphabet, size: int):
    return [
        (random_current(rng, alphabet), random_current(rng, alphabet))
        for _ in range(size)
    ]


def counting(gens, alphabet) -> RationalCurrent:
    return counting_current(from_generators(gens, alphabet))


def based(gens, alphabet) -> BasedCoreGraph:
    return from_generators(gens, alphabet)
