"""Vectorised evaluation of a polynomial on many matrix tuples at once.

M_n(F_{p^m}) is embedded in M_{nm}(F_p) by replacing every entry a with
the m x m matrix of multiplication by a in the basis 1, t, ..., t^(m-1).
Products then become integer matmuls reduced mod p.
"""

from __future__ import annotations

import numpy as np

from .errors import UnboundVariable
from .mateval import FFMatrix


def regular_blocks(field):
    """Array (q, m, m): column k of block c holds the coordinates of c * t^k."""
    q, m = field.order, field.m
    out = np.zeros((q, m, m), dtype=np.int64)
    for c in range(q):
        for k in range(m):
            out[c, :, k] = field.coords(field.mul(c, field.p**k))
    return out


class Embedding:
    """Code arrays (..., n, n) <-> prime-field block arrays (..., nm, nm)."""

    def __init__(self, field, n):
        self.field = field
        self.n = n
        self.m = field.m
        self.p = field.p
        self.dim = n * field.m
        self.blocks = regular_blocks(field)
        self._weights = field.p ** np.arange(field.m, dtype=np.int64)

    def embed(self, codes):
        codes = np.asarray(codes, dtype=np.int64)
        lead = codes.shape[:-2]
        n, m = self.n, self.m
        b = self.blocks[codes]  # (..., n, n, m, m)
        b = np.moveaxis(b, -2, -3)  # (..., n, m, n, m)
        return b.reshape(lead + (n * m, n * m))

    def unembed(self, arr):
        lead = arr.shape[:-2]
        n, m = self.n, self.m
        b = arr.reshape(lead + (n, m, n, m))
        first_col = b[..., :, :, :, 0]  # (..., n, m, n): block (i, j) times 1
        first_col = np.moveaxis(first_col, -2, -1)  # (..., n, n, m)
        return first_col @ self._weights

    def scalar(self, code):
        return np.kron(np.eye(self.n, dtype=np.int64), self.blocks[code])

    def matrices(self, codes):
        """FFMatrix objects for a code array (..., n, n) flattened over the leading axes."""
        codes = np.asarray(codes).reshape(-1, self.n, self.n)
        return [FFMatrix(self.field, tuple(tuple(int(v) for v in row) for row in c)) for c in codes]

    def codes_of(self, mat):
        return np.array(mat.rows, dtype=np.int64)


class CompiledPolynomial:
    """A polynomial fixed against an ordered variable list, ready for batch evaluation."""

    def __init__(self, f, variables, embedding):
        self.embedding = embedding
        self.variables = list(variables)
        pos = {v: k for k, v in enumerate(self.variables)}
        missing = [v for v in f.variables() if v not in pos]
        if missing:
            raise UnboundVariable(f"{missing[0]} is not bound")
        self.terms = []
        for word, code in sorted(f._terms.items()):
            coeff = code if embedding.m == 1 else embedding.scalar(code)
            self.terms.append((tuple(pos[v] for v in word), coeff))

    def __call__(self, mats):
        """mats[k] is an (N, D, D) array for variable k; returns (N, D, D) mod p."""
        emb = self.embedding
        p, dim = emb.p, emb.dim
        n_rows = mats[0].shape[0] if mats else 1
        ident = np.broadcast_to(np.eye(dim, dtype=np.int64), (n_rows, dim, dim))
        result = np.zeros((n_rows, dim, dim), dtype=np.int64)
        # words are sorted, so consecutive words share prefixes; keep one stack
        stack_words = []
        stack_vals = [ident]
        for word, coeff in self.terms:
            common = 0
            while common < len(stack_words) and common < len(word) and stack_words[common] == word[common]:
                common += 1
            del stack_words[common:]
            del stack_vals[common + 1:]
            for k in word[common:]:
                stack_vals.append(np.matmul(stack_vals[-1], mats[k]) % p)
                stack_words.append(k)
            prod = stack_vals[-1]
            if emb.m == 1:
                result += coeff * prod
            else:
                result += np.matmul(coeff, prod)
            result %= p
        return result
