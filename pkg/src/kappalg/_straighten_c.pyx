# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled PBW straightening kernel; mirror of ``_straighten_py``.

Coefficients stay generic Python objects (exact Gaussian rationals); the
speedup comes from typed index handling in the inversion scan and from
avoiding interpreter overhead in the rewrite loop.
"""

BACKEND = "c"


cpdef dict straighten_into(dict acc, tuple word, object coeff, dict rules):
    """Accumulate the PBW normal form of ``coeff * word`` into dict ``acc``."""
    cdef list stack = [(word, coeff)]
    cdef tuple w, head, tail, mono
    cdef object c, prev, bc
    cdef Py_ssize_t n, k, pos
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


cpdef dict multiply_terms(dict terms_a, dict terms_b, dict rules):
    """PBW product of two term maps {word: coeff}; result may hold zeros."""
    cdef dict acc = {}
    cdef tuple wa, wb, w
    cdef object ca, cb, c, prev
    for wa, ca in terms_a.items():
        for wb, cb in terms_b.items():
            c = ca * cb
            if not wa or not wb or wa[len(wa) - 1] <= wb[0]:
                w = wa + wb
                prev = acc.get(w)
                acc[w] = c if prev is None else prev + c
            else:
                straighten_into(acc, wa + wb, c, rules)
    return acc
