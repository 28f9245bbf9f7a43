"""Pure-Python PBW straightening kernel.

Words are tuples of generator indices; a word is PBW-canonical when it is
nondecreasing.  ``rules`` maps each out-of-order adjacent pair ``(x, y)``
with ``x > y`` to the expansion of the commutator ``[X_x, X_y]`` as a tuple
of ``(word, coeff)`` pairs with ``len(word) <= 1``.  The rewrite

    X_x X_y  ->  X_y X_x + [X_x, X_y]

strictly decreases (max word length, inversion count) in lexicographic
order, so the loop terminates.

This module must stay behaviourally identical to ``_straighten_c.pyx``;
``kappalg._kernel`` picks one of the two at import time.
"""

BACKEND = "python"


def straighten_into(acc, word, coeff, rules):
    """Accumulate the PBW normal form of ``coeff * word`` into dict ``acc``."""
    stack = [(word, coeff)]
    while stack:
        w, c = stack.pop()
        n = len(w)
        pos = -1
        for k in range(n - 1):
            if w[k] > w[k + 1]:
                pos = k
                break
        if pos < 0:
            prev = acc.get(w)
            acc[w] = c if prev is None else prev + c
            continue
        head = w[:pos]
        tail = w[pos + 2:]
        stack.append((head + (w[pos + 1], w[pos]) + tail, c))
        for mono, bc in rules.get((w[pos], w[pos + 1]), ()):
            stack.append((head + mono + tail, c * bc))
    return acc


def multiply_terms(terms_a, terms_b, rules):
    """PBW product of two term maps {word: coeff}; result may hold zeros."""
    acc = {}
    for wa, ca in terms_a.items():
        for wb, cb in terms_b.items():
            c = ca * cb
            if not wa or not wb or wa[-1] <= wb[0]:
                w = wa + wb
                prev = acc.get(w)
                acc[w] = c if prev is None else prev + c
            else:
                straighten_into(acc, wa + wb, c, rules)
    return acc
