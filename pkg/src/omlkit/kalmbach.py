"""The Kalmbach construction K(L) over finite bounded lattices.

Elements of K(L) are even-length strictly increasing sequences in L.  The
order is built block-by-block: every comparability lives inside the Boolean
algebra K(C) of some maximal chain C of L, where the order is subset
containment of half-open-interval unions.  The construction is cross-checked
against the definitional sequence order (exhaustively for small K, on a
seeded sample for large K).

The resulting structure keeps packed bitset up-sets and down-sets, so joins
and meets are computed as the first upper / last lower bound along a linear
extension without materialising quadratic tables.
"""

from __future__ import annotations

import random

import numpy as np

from .errors import NotOML, TooLarge
from .lattice import BoundedLattice
from .ortho import OrthoLattice, blocks, ortholattice

DEFAULT_K_CAP = 200_000
DEFAULT_VERIFY_CAP = 1500
DEFAULT_VERIFY_SAMPLE = 200_000

_FIRSTBIT = np.array([(i & -i).bit_length() - 1 if i else 8 for i in range(256)],
                     dtype=np.int64)
_LASTBIT = np.array([i.bit_length() - 1 if i else -1 for i in range(256)],
                    dtype=np.int64)


def seq_name(base, terms):
    return "(" + ",".join(base.names[t] for t in terms) + ")"


def kleq_terms(leq, x, y):
    """Definitional order on even-length sequences of base-element indices."""
    for i in range(0, len(x), 2):
        if not any(
            leq[y[j], x[i]] and leq[x[i + 1], y[j + 1]]
            for j in range(0, len(y), 2)
        ):
            return False
    return True


def kleq(L, x_names, y_names):
    """The order of K(L) on sequences given as tuples of element names."""
    x = tuple(L.index(nm) for nm in x_names)
    y = tuple(L.index(nm) for nm in y_names)
    return kleq_terms(L.leq, x, y)


def kperp_terms(L, terms):
    """Symmetric difference of the term set with the bounds, sorted in L."""
    ts = set(terms) ^ {L.bottom, L.top}
    rank = {e: k for k, e in enumerate(L.linear_extension())}
    return tuple(sorted(ts, key=rank.__getitem__))


def kperp(L, x_names):
    terms = tuple(L.index(nm) for nm in x_names)
    return tuple(L.names[t] for t in kperp_terms(L, terms))


def _enumerate_even_chains(L, cap):
    """All even-length chains of L as rank-sorted index tuples, DFS order."""
    ext = L.linear_extension()
    leq = L.leq
    out = []

    def walk(seq, start):
        if len(seq) % 2 == 0:
            out.append(seq)
            if len(out) > cap:
                raise TooLarge(
                    f"K(L) would exceed the configured cap of {cap} elements"
                )
        for k in range(start, len(ext)):
            v = ext[k]
            if not seq or (seq[-1] != v and leq[seq[-1], v]):
                walk(seq + (v,), k + 1)

    walk((), 0)
    return out


class KalmbachOML:
    """K(L) with bitset-backed order, join, meet and orthocomplement.

    Satisfies the same element protocol as BoundedLattice (n, names, index,
    leq_idx, join_idx, meet_idx, bottom, top) so generic helpers such as
    compactness_witness work on it directly.
    """

    def __init__(self, base, seqs, up_packed, down_packed, ext, perp_idx,
                 max_chains):
        self.base = base
        self.seqs = seqs
        self.names = tuple(seq_name(base, s) for s in seqs)
        self._index = {nm: i for i, nm in enumerate(self.names)}
        self._up = up_packed          # columns in linear-extension order
        self._down = down_packed      # columns in linear-extension order
        self._ext = ext               # ext[pos] = element id
        self._rank = np.empty(len(seqs), dtype=np.int64)
        self._rank[ext] = np.arange(len(seqs))
        self.perp_idx = perp_idx
        self.max_chains = max_chains  # base maximal chains as index tuples
        self.bottom = self._index["()"]
        self.top = self._index[seq_name(base, (base.bottom, base.top))]
        self.orthomodular = None      # set by check_orthomodular
        self.orthomodular_witness = None

    # -- protocol -------------------------------------------------------

    @property
    def n(self):
        return len(self.seqs)

    def index(self, name):
        return self._index[name]

    def seq_names(self, i):
        return tuple(self.base.names[t] for t in self.seqs[i])

    def leq_idx(self, i, j):
        r = self._rank[j]
        return bool(self._up[i, r >> 3] & (1 << (int(r) & 7)))

    def up_row(self, i):
        """Boolean up-set of element i, in linear-extension column order."""
        return np.unpackbits(self._up[i], bitorder="little")[: self.n]

    def down_row(self, i):
        return np.unpackbits(self._down[i], bitorder="little")[: self.n]

    def join_idx(self, i, j):
        u = self._up[i] & self._up[j]
        nz = np.nonzero(u)[0]
        byte = int(nz[0])
        pos = byte * 8 + int(_FIRSTBIT[u[byte]])
        least = int(self._ext[pos])
        if (u & ~self._up[least]).any():
            raise AssertionError("upper-bound set has no least element")
        return least

    def meet_idx(self, i, j):
        d = self._down[i] & self._down[j]
        nz = np.nonzero(d)[0]
        byte = int(nz[-1])
        pos = byte * 8 + int(_LASTBIT[d[byte]])
        greatest = int(self._ext[pos])
        if (d & ~self._down[greatest]).any():
            raise AssertionError("lower-bound set has no greatest element")
        return greatest

    def perp(self, i):
        return int(self.perp_idx[i])

    def atoms_idx(self):
        counts = np.bitwise_count(self._down).sum(axis=1)
        return [int(i) for i in np.where(counts == 2)[0]]

    def join_batch(self, i, js, verify=True):
        """Joins of element i with each element of js (vectorized)."""
        u = self._up[i] & self._up[js]
        nz = u != 0
        byte = nz.argmax(axis=1)
        rows = np.arange(len(js))
        pos = byte * 8 + _FIRSTBIT[u[rows, byte]]
        out = self._ext[pos]
        if verify:
            bad = (u & ~self._up[out]).any(axis=1)
            if bad.any():
                raise AssertionError("upper-bound set has no least element")
        return out

    def meet_batch(self, i, js, verify=True):
        d = self._down[i] & self._down[js]
        rev = d[:, ::-1] != 0
        byte = d.shape[1] - 1 - rev.argmax(axis=1)
        rows = np.arange(len(js))
        pos = byte * 8 + _LASTBIT[d[rows, byte]]
        out = self._ext[pos]
        if verify:
            bad = (d & ~self._down[out]).any(axis=1)
            if bad.any():
                raise AssertionError("lower-bound set has no greatest element")
        return out

    def commutator_idx(self, i, j):
        pi, pj = self.perp(i), self.perp(j)
        a = self.join_idx(i, j)
        b = self.join_idx(i, pj)
        c = self.join_idx(pi, j)
        d = self.join_idx(pi, pj)
        return self.meet_idx(self.meet_idx(a, b), self.meet_idx(c, d))

    def commutes_idx(self, i, j):
        return self.commutator_idx(i, j) == self.bottom

    def union_is_chain(self, i, j):
        terms = set(self.seqs[i]) | set(self.seqs[j])
        leq = self.base.leq
        return all(leq[u, v] or leq[v, u] for u in terms for v in terms)

    # -- verification ---------------------------------------------------

    def check_order_against_definition(self, sample=None, seed=0):
        """Compare the built order with definitional kleq.

        Exhaustive when ``sample`` is None, else on a seeded random sample of
        index pairs.  Raises AssertionError on any disagreement.
        """
        leq = self.base.leq
        if sample is None:
            pairs = ((i, j) for i in range(self.n) for j in range(self.n))
        else:
            rng = random.Random(seed)
            pairs = (
                (rng.randrange(self.n), rng.randrange(self.n))
                for _ in range(sample)
            )
        for i, j in pairs:
            if self.leq_idx(i, j) != kleq_terms(leq, self.seqs[i], self.seqs[j]):
                raise AssertionError(
                    f"order mismatch at ({self.names[i]}, {self.names[j]})"
                )

    def check_orthomodular(self, chunk=4096):
        """Exhaustive orthomodular-law check over all comparable pairs."""
        worst = None
        for x in range(self.n):
            ys = np.where(self.up_row(x))[0]
            ys = self._ext[ys]
            ys = ys[ys != x]
            px = self.perp(x)
            for s in range(0, len(ys), chunk):
                batch = ys[s : s + chunk]
                m = self.meet_batch(px, batch)
                rebuilt = np.empty(len(batch), dtype=np.int64)
                for k, mm in enumerate(m):
                    rebuilt[k] = self.join_idx(x, int(mm))
                bad = rebuilt != batch
                if bad.any():
                    for y in batch[bad]:
                        cand = (self.names[x], self.names[int(y)])
                        if worst is None or cand < worst:
                            worst = cand
        self.orthomodular = worst is None
        self.orthomodular_witness = worst
        return self.orthomodular, worst

    # -- materialization --------------------------------------------------

    def as_ortholattice(self, max_table_size=2048):
        """Materialize K(L) as a table-backed OrthoLattice (small K only)."""
        if self.n > max_table_size:
            raise TooLarge(
                f"K has {self.n} elements; table materialization capped at "
                f"{max_table_size}"
            )
        full = np.zeros((self.n, self.n), dtype=bool)
        for i in range(self.n):
            full[i][self._ext] = self.up_row(i).astype(bool)
        L = BoundedLattice.from_leq(self.names, full, max_size=max_table_size)
        perp_map = {self.names[i]: self.names[self.perp(i)] for i in range(self.n)}
        return ortholattice(L, perp_map)


def _maximal_chains_idx(L):
    succ = [np.where(L.cover_matrix[u])[0] for u in range(L.n)]
    out = []

    def walk(u, chain):
        if u == L.top:
            out.append(tuple(chain))
            return
        for v in succ[u]:
            walk(int(v), chain + [int(v)])

    walk(L.bottom, [L.bottom])
    return out


def kalmbach(L, cap=DEFAULT_K_CAP, verify_cap=DEFAULT_VERIFY_CAP,
             verify_sample=DEFAULT_VERIFY_SAMPLE, check_om=True, seed=0):
    """Construct K(L) for a finite bounded lattice L.

    Raises TooLarge when the even-length-chain count exceeds ``cap``.  The
    order construction is verified against the definitional sequence order
    (exhaustively up to ``verify_cap`` elements, sampled beyond), and the
    orthomodular law is checked exhaustively unless ``check_om`` is False.
    """
    seqs = _enumerate_even_chains(L, cap)
    n = len(seqs)
    kidx = {s: i for i, s in enumerate(seqs)}
    rank_base = {e: k for k, e in enumerate(L.linear_extension())}

    max_chains = _maximal_chains_idx(L)
    nb = (n + 7) // 8
    up_raw = np.zeros((n, nb), dtype=np.uint8)

    for C in max_chains:
        c = len(C)
        if c - 1 > 63:
            raise TooLarge("maximal chain too long for block codes")
        members = []
        codes = []
        for mask in range(1 << c):
            if bin(mask).count("1") % 2:
                continue
            ts = [k for k in range(c) if mask >> k & 1]
            code = 0
            for a, b in zip(ts[::2], ts[1::2]):
                code |= ((1 << b) - 1) ^ ((1 << a) - 1)
            members.append(kidx[tuple(C[k] for k in ts)])
            codes.append(code)
        codes = np.array(codes, dtype=np.uint64)
        members = np.array(members, dtype=np.int64)
        contained = (codes[:, None] & ~codes[None, :]) == 0
        for r in range(len(members)):
            ys = members[contained[r]]
            contrib = np.zeros(nb, dtype=np.uint8)
            np.bitwise_or.at(contrib, ys >> 3, (1 << (ys & 7)).astype(np.uint8))
            up_raw[members[r]] |= contrib

    # transpose to down-sets and collect down-set sizes, chunked.  Chunks are
    # byte-aligned so each packed transpose lands on a byte slice of down_raw.
    down_raw = np.zeros((n, nb), dtype=np.uint8)
    down_sizes = np.zeros(n, dtype=np.int64)
    step = max(8, ((1 << 25) // max(n, 1)) // 8 * 8)
    for s in range(0, n, step):
        rows = np.unpackbits(up_raw[s : s + step], axis=1, bitorder="little")[:, :n]
        down_sizes += rows.sum(axis=0, dtype=np.int64)
        packed = np.packbits(rows.T, axis=1, bitorder="little")
        down_raw[:, s >> 3 : (s >> 3) + packed.shape[1]] |= packed

    ext = np.argsort(down_sizes, kind="stable")
    # permute columns of both matrices into linear-extension order, chunked
    up = np.empty_like(up_raw)
    down = np.empty_like(down_raw)
    for s in range(0, n, step):
        rows = np.unpackbits(up_raw[s : s + step], axis=1, bitorder="little")[:, :n]
        up[s : s + step] = np.packbits(rows[:, ext], axis=1, bitorder="little")[:, :nb]
        rows = np.unpackbits(down_raw[s : s + step], axis=1, bitorder="little")[:, :n]
        down[s : s + step] = np.packbits(rows[:, ext], axis=1, bitorder="little")[:, :nb]
    del up_raw, down_raw

    perp_idx = np.array(
        [kidx[kperp_terms(L, s)] for s in seqs], dtype=np.int64
    )

    K = KalmbachOML(L, tuple(seqs), up, down, np.asarray(ext), perp_idx,
                    tuple(max_chains))
    if n <= verify_cap:
        K.check_order_against_definition()
    else:
        K.check_order_against_definition(sample=verify_sample, seed=seed)
    if check_om:
        K.check_orthomodular()
    return K


# -- checkers -------------------------------------------------------------


def katoms_check(K):
    """Atoms of K(L) are exactly the two-term sequences over covers of L."""
    expected = set()
    covm = K.base.cover_matrix
    for a, b in np.argwhere(covm):
        expected.add(K.index(seq_name(K.base, (int(a), int(b)))))
    return set(K.atoms_idx()) == expected


def kblocks_check(K, max_table_size=2048):
    """Blocks of K(L) correspond bijectively to maximal chains via C -> K(C)."""
    OL = K.as_ortholattice(max_table_size)
    clique_blocks = {frozenset(b.elements) for b in blocks(OL)}
    chain_blocks = set()
    for C in K.max_chains:
        cset = set(C)
        chain_blocks.add(
            frozenset(
                K.names[i]
                for i, s in enumerate(K.seqs)
                if set(s) <= cset
            )
        )
    return clique_blocks == chain_blocks and len(chain_blocks) == len(K.max_chains)


def kcommute_check(K, sample=None, seed=0):
    """commutes(x, y) iff the union of term sets is a chain in L (all pairs)."""
    if sample is None:
        pairs = (
            (i, j) for i in range(K.n) for j in range(i, K.n)
        )
    else:
        rng = random.Random(seed)
        pairs = (
            (rng.randrange(K.n), rng.randrange(K.n)) for _ in range(sample)
        )
    for i, j in pairs:
        if K.commutes_idx(i, j) != K.union_is_chain(i, j):
            return False
    return True


def phi_chain(C, x_names):
    """Phi(x): the union of half-open intervals of a bounded chain C.

    Returns a frozenset of element names of C minus its top.
    """
    terms = [C.index(nm) for nm in x_names]
    out = set()
    for a, b in zip(terms[::2], terms[1::2]):
        for z in range(C.n):
            if C.leq[a, z] and not C.leq[b, z]:
                out.add(C.names[z])
    return frozenset(out)


def kjoin_by_truncation(K, x_name, y_name):
    """Join via the prefix-truncation scheme; must agree with the table join.

    Computes z^n = x^n v y^n for prefix truncations, checks the sequence is
    increasing in K, and returns its stabilized value.
    """
    xi, yi = K.index(x_name), K.index(y_name)
    xs, ys = K.seqs[xi], K.seqs[yi]
    steps = max(len(xs), len(ys)) // 2 + 1
    prev = None
    for m in range(1, steps + 1):
        xn = K.index(seq_name(K.base, xs[: 2 * m]))
        yn = K.index(seq_name(K.base, ys[: 2 * m]))
        zn = K.join_idx(xn, yn)
        if prev is not None and not K.leq_idx(prev, zn):
            raise AssertionError("truncation joins are not increasing")
        prev = zn
    direct = K.join_idx(xi, yi)
    if prev != direct:
        raise AssertionError("truncation join disagrees with the direct join")
    return K.names[prev]
