"""Pure-Python support-enumeration kernel (fallback for ``_kernels``)."""

from __future__ import annotations


def support_sum(m: int, tables: list, rest_pows: list, binom: list) -> int:
    """Sum over the discrete simplex {k : sum(k) <= m} of

        prod_i C(r_i, k_i) * tables[i][k_i]  *  rest_pows[m - sum(k)]

    where r_i = m - k_1 - ... - k_{i-1}.  ``binom[r][k]`` is C(r, k).
    Chained binomials reproduce the multinomial coefficient, so with
    ``tables[i][k] = a_i**k * g_i(k)`` this is an integer-scaled expectation.
    """
    d = len(tables)

    def walk(i: int, remaining: int, acc: int) -> int:
        if i == d:
            return acc * rest_pows[remaining]
        row = binom[remaining]
        table = tables[i]
        total = 0
        for k in range(remaining + 1):
            f = table[k]
            if f:
                total += walk(i + 1, remaining - k, acc * row[k] * f)
        return total

    return walk(0, m, 1)
