"""Dense univariate polynomial kernels over the complex numbers.

Commutative support machinery used by every fast algorithm in the library:
an iterative radix-2 FFT, FFT-based multiplication, division with
remainder, subproduct trees, and fast multipoint evaluation.

Multipoint evaluation works in value space rather than coefficient space:
the polynomial is sampled on an oversampled set of roots of unity with one
FFT and then carried to the requested points through the barycentric
Lagrange form, a Cauchy-kernel sum over the circle nodes.  The sum is
evaluated directly for small problems and through a multipole hierarchy on
circle arcs for large ones; points outside the unit disk go through the
reversed polynomial at their inverses.  Remainder cascades over subproduct
trees - the textbook route - amplify rounding by the coefficient norm of
the node polynomials, which grows exponentially for points confined to the
upper half-plane, so they are not used for evaluation here.

All heavy routines accept batches: a ``(rows, n)`` coefficient matrix is
processed with transforms along the last axis, which is how the quaternion
modules push their four (or sixteen) real component polynomials through
shared machinery.
"""

from __future__ import annotations

import numpy as np

from .errors import DivisorZero, NonPowerOfTwoLength

#: below this many points (or this degree) multipoint evaluation uses Horner
DEFAULT_CROSSOVER = 32

#: dense Cauchy summation while n_points * n_nodes stays below this
_DENSE_LIMIT = 1 << 19

#: sources per leaf arc and top fan-out of the multipole hierarchy
_LEAF_SOURCES = 128
_MIN_ARCS = 16

#: multipole truncation order (separation ratio <= ~1/3)
_MP_TERMS = 20

#: targets per chunk when sweeping multipole expansions
_EVAL_CHUNK = 2048

#: targets this close to a circle node are evaluated by plain Horner
_NODE_GUARD = 3e-8

_bitrev_cache: dict[int, np.ndarray] = {}
_twiddle_cache: dict[tuple[int, bool], np.ndarray] = {}
_node_cache: dict[int, np.ndarray] = {}


def _bitrev_indices(n: int) -> np.ndarray:
    idx = _bitrev_cache.get(n)
    if idx is None:
        idx = np.zeros(n, dtype=np.intp)
        for i in range(1, n):
            idx[i] = (idx[i >> 1] >> 1) | ((i & 1) * (n >> 1))
        _bitrev_cache[n] = idx
    return idx


def _twiddles(half: int, inverse: bool) -> np.ndarray:
    key = (half, inverse)
    w = _twiddle_cache.get(key)
    if w is None:
        sign = 1.0 if inverse else -1.0
        w = np.exp(sign * 1j * np.pi * np.arange(half) / half)
        _twiddle_cache[key] = w
    return w


def fft(values, inverse: bool = False) -> np.ndarray:
    """Radix-2 discrete Fourier transform along the last axis.

    Forward maps index l to sum_m a_m exp(-2 pi i l m / n); `inverse=True`
    applies the conjugate kernel and the 1/n scaling, so the round trip is
    the identity up to rounding.  The length must be a power of two.
    """
    a = np.array(values, dtype=np.complex128)
    n = a.shape[-1]
    if n < 1 or (n & (n - 1)) != 0:
        raise NonPowerOfTwoLength(f"FFT length {n} is not a power of two")
    if n == 1:
        return a
    a = a[..., _bitrev_indices(n)]
    half = 1
    while half < n:
        w = _twiddles(half, inverse)
        b = a.reshape(a.shape[:-1] + (n // (2 * half), 2, half))
        t = b[..., 1, :] * w
        b[..., 1, :] = b[..., 0, :] - t
        b[..., 0, :] += t
        half *= 2
    if inverse:
        a /= n
    return a


def _next_pow2(n: int) -> int:
    return 1 << (n - 1).bit_length() if n > 1 else 1


class CPoly:
    """Dense complex polynomial; ``coeffs[l]`` is the coefficient of Z^l.

    Trailing coefficients of magnitude <= `trim_tol` are removed on
    construction (default 0: only exact zeros go); the zero polynomial is
    the empty sequence, with degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=(), trim_tol: float = 0.0):
        c = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128))
        keep = np.nonzero(np.abs(c) > trim_tol)[0]
        self.coeffs = c[: keep[-1] + 1] if keep.size else c[:0]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __call__(self, z):
        scalar = np.isscalar(z) or np.ndim(z) == 0
        vals = _horner_rows(self.coeffs[None, :], np.atleast_1d(z))[0]
        return vals[0] if scalar else vals

    def __repr__(self):
        return f"CPoly({self.coeffs.tolist()!r})"


def cmul(p: CPoly, q: CPoly) -> CPoly:
    """Product of two polynomials via zero-padded FFT convolution."""
    a, b = p.coeffs, q.coeffs
    if len(a) == 0 or len(b) == 0:
        return CPoly()
    return CPoly(_conv_rows(a[None, :], b)[0])


def _conv_rows(rows: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Linear convolution of each row of `rows` with the vector `b`."""
    la, lb = rows.shape[-1], len(b)
    out_len = la + lb - 1
    size = _next_pow2(out_len)
    fa = fft(_pad_last(rows, size))
    fb = fft(_pad_last(b, size))
    return fft(fa * fb, inverse=True)[..., :out_len]


def _pad_last(a: np.ndarray, size: int) -> np.ndarray:
    pad = [(0, 0)] * (a.ndim - 1) + [(0, size - a.shape[-1])]
    return np.pad(a, pad)


def derivative(p: CPoly) -> CPoly:
    """Formal coefficient derivative."""
    n = len(p.coeffs)
    if n <= 1:
        return CPoly()
    return CPoly(p.coeffs[1:] * np.arange(1, n))


def div_rem(p: CPoly, d: CPoly) -> tuple[CPoly, CPoly]:
    """Quotient and remainder with p = q*d + r and deg r < deg d."""
    if len(d.coeffs) == 0:
        raise DivisorZero("division by the zero polynomial")
    if p.degree < d.degree:
        return CPoly(), CPoly(p.coeffs)
    q, r = _div_rem_rows(p.coeffs[None, :], d.coeffs)
    return CPoly(q[0]), CPoly(r[0])


def _div_rem_rows(rows: np.ndarray, d: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise long division of a (k, n) coefficient matrix by the vector d.

    Assumes n >= len d.  Returns quotient (k, n - len d + 1) and remainder
    (k, len d - 1).  Plain long division, vectorized across rows: the
    Newton/middle-product shortcuts route everything through the inverse
    series of the reversed divisor, whose coefficients explode for roots
    inside the unit disk - the divisor shape subproduct trees produce.
    """
    b = len(d) - 1
    m = rows.shape[-1] - 1 - b  # quotient degree
    if b == 0:
        return rows / d[0], rows[..., :0]
    r = rows.astype(np.complex128, copy=True)
    q = np.empty(rows.shape[:-1] + (m + 1,), dtype=np.complex128)
    lead = d[b]
    for t in range(m, -1, -1):
        c = r[..., t + b] / lead
        q[..., t] = c
        r[..., t:t + b] -= c[..., None] * d[:b]
    return q, r[..., :b]


def _horner_rows(rows: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Evaluate each row polynomial at every point; returns (k, npts)."""
    pts = np.asarray(pts, dtype=np.complex128)
    vals = np.zeros(rows.shape[:-1] + pts.shape, dtype=np.complex128)
    for col in range(rows.shape[-1] - 1, -1, -1):
        vals = vals * pts + rows[..., col, None]
    return vals


# -- subproduct trees ---------------------------------------------------------

class _TreeNode:
    __slots__ = ("poly", "lo", "hi", "left", "right")

    def __init__(self, poly, lo, hi, left=None, right=None):
        self.poly = poly
        self.lo = lo
        self.hi = hi
        self.left = left
        self.right = right


class SubproductTree:
    """Balanced tree of products prod(Z - x) over point ranges.

    Leaves hold up to `leaf_size` points; the root polynomial is the
    product over all points.
    """

    def __init__(self, pts, leaf_size: int = DEFAULT_CROSSOVER):
        self.points = np.atleast_1d(np.asarray(pts, dtype=np.complex128))
        self.leaf_size = max(1, leaf_size)
        if self.points.size == 0:
            self._root = _TreeNode(np.ones(1, dtype=np.complex128), 0, 0)
        else:
            self._root = self._build(0, self.points.size)

    def _build(self, lo, hi):
        if hi - lo <= self.leaf_size:
            return _TreeNode(_poly_from_roots(self.points[lo:hi]), lo, hi)
        mid = (lo + hi) // 2
        left = self._build(lo, mid)
        right = self._build(mid, hi)
        prod = _conv_rows(left.poly[None, :], right.poly)[0]
        return _TreeNode(prod, lo, hi, left, right)

    @property
    def root(self) -> CPoly:
        return CPoly(self._root.poly)


def _poly_from_roots(roots: np.ndarray) -> np.ndarray:
    out = np.ones(1, dtype=np.complex128)
    for r in roots:
        nxt = np.zeros(len(out) + 1, dtype=np.complex128)
        nxt[1:] = out
        nxt[:-1] -= r * out
        out = nxt
    return out


def subproduct_build(pts, leaf_size: int = DEFAULT_CROSSOVER) -> SubproductTree:
    return SubproductTree(pts, leaf_size)


# -- fast multipoint evaluation ----------------------------------------------

def multipoint_eval(p: CPoly, pts, crossover: int = DEFAULT_CROSSOVER) -> np.ndarray:
    """Values of p at every point.

    Point sets smaller than `crossover` (and polynomials of degree below
    it) are evaluated by plain Horner; larger problems run through the
    fast circle-sampling path.
    """
    pts = np.atleast_1d(np.asarray(pts, dtype=np.complex128))
    if pts.size == 0:
        return np.zeros(0, dtype=np.complex128)
    return _multieval_rows(p.coeffs[None, :], pts, crossover)[0]


def _multieval_rows(rows: np.ndarray, pts, crossover: int = DEFAULT_CROSSOVER) -> np.ndarray:
    """Batched multipoint evaluation; (k, n) coefficients -> (k, npts)."""
    pts = np.atleast_1d(np.asarray(pts, dtype=np.complex128))
    if rows.shape[-1] == 0:
        return np.zeros(rows.shape[:-1] + pts.shape, dtype=np.complex128)
    if pts.size < crossover or rows.shape[-1] - 1 < crossover:
        return _horner_rows(rows, pts)
    out = np.empty(rows.shape[:-1] + pts.shape, dtype=np.complex128)
    rho = np.abs(pts)
    outer = rho > 1.0 + 1e-6
    inner = ~outer
    if np.any(inner):
        out[..., inner] = _circle_eval_rows(rows, pts[inner])
    if np.any(outer):
        # p(y) = y^(n-1) * rev(p)(1/y) moves the point inside the disk
        w = 1.0 / pts[outer]
        vals = _circle_eval_rows(rows[..., ::-1], w)
        factor = pts[outer] ** (rows.shape[-1] - 1)
        out[..., outer] = vals * factor
    return out


def _circle_nodes(N: int) -> np.ndarray:
    nodes = _node_cache.get(N)
    if nodes is None:
        nodes = np.exp(-2j * np.pi * np.arange(N) / N)
        _node_cache[N] = nodes
    return nodes


def _circle_eval_rows(rows: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Evaluate row polynomials at points with |y| <= 1 (plus rounding slack).

    One FFT samples every row on N = 2^ceil(lg 2n) roots of unity; the
    barycentric Lagrange form then gives
    p(y) = (y^N - 1) * sum_k c_k / (y - s_k) with c_k = s_k p(s_k) / N.
    """
    n = rows.shape[-1]
    N = _next_pow2(2 * n)
    nodes = _circle_nodes(N)
    vals = fft(_pad_last(rows, N))
    weights = vals * nodes / N

    out = np.empty(rows.shape[:-1] + ys.shape, dtype=np.complex128)
    rho = np.abs(ys)

    # points essentially on a sample node: barycentric form degenerates,
    # plain Horner is cheap and exact enough for the few of them
    k_near = np.mod(np.rint(-np.angle(ys) * N / (2 * np.pi)).astype(np.intp), N)
    on_node = np.abs(ys - nodes[k_near]) < _NODE_GUARD
    deep = (rho < 0.5) & ~on_node
    ann = ~deep & ~on_node

    if np.any(on_node):
        out[..., on_node] = _horner_rows(rows, ys[on_node])
    if np.any(deep):
        # |y| < 1/2: the 2^-m damping makes a coefficient head sufficient;
        # how long a head depends on the coefficient growth profile
        damped = np.max(np.abs(rows.reshape(-1, n)), axis=0) * 0.5 ** np.arange(n)
        tails = np.cumsum(damped[::-1])[::-1]
        keep = np.nonzero(tails > 1e-18 * tails[0])[0]
        head = rows[..., : keep[-1] + 2] if keep.size else rows[..., :1]
        out[..., deep] = _horner_rows(head, ys[deep])
    if np.any(ann):
        ya = ys[ann]
        s = _cauchy_sum(weights, nodes, ya)
        out[..., ann] = (ya ** N - 1.0) * s
    return out


def _cauchy_sum(weights: np.ndarray, nodes: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """sum_k weights[..., k] / (y - nodes[k]) for targets in the annulus."""
    N = nodes.shape[0]
    t = ys.shape[0]
    if t * N <= _DENSE_LIMIT or N // _LEAF_SOURCES < _MIN_ARCS:
        return _cauchy_dense(weights, nodes, ys)
    return _cauchy_multipole(weights, nodes, ys)


def _cauchy_dense(weights, nodes, ys):
    out = np.zeros(weights.shape[:-1] + ys.shape, dtype=np.complex128)
    step = max(1, _DENSE_LIMIT // nodes.shape[0])
    for lo in range(0, ys.shape[0], step):
        chunk = ys[lo:lo + step]
        inv = 1.0 / (chunk[:, None] - nodes)
        out[..., lo:lo + step] = weights @ inv.T
    return out


def _cauchy_multipole(weights, nodes, ys):
    """Arc-hierarchy evaluation of the Cauchy sum.

    Sources are uniform circle nodes, split into 2^l arcs per level; a
    target interacts with an arc through its truncated multipole expansion
    once the arc is outside the target's immediate angular neighbourhood
    (separation ratio stays below ~1/3 for |y| in [1/2, 1]), and directly
    with the sources of the three leaf arcs around it.

    Expansion tables are laid out (arc, term, row) so that per-target
    gathers copy one contiguous block per arc and the Horner sweep reads
    sequentially.
    """
    N = nodes.shape[0]
    rows_shape = weights.shape[:-1]
    w_flat = weights.reshape(-1, N)
    n_rows = w_flat.shape[0]
    n_targets = ys.shape[0]
    n_leaf_arcs = N // _LEAF_SOURCES
    levels = []
    narc = _MIN_ARCS
    while narc <= n_leaf_arcs:
        levels.append(narc)
        narc *= 2

    # multipole tables: tables[l][arc, m, row] = sum_k c_k (s_k - c_arc)^m
    tables = []
    centers = []
    for narc in levels:
        per = N // narc
        c_arc = np.exp(-2j * np.pi * (np.arange(narc) + 0.5) / narc)
        d = nodes - np.repeat(c_arc, per)
        table = np.empty((narc, _MP_TERMS, n_rows), dtype=np.complex128)
        cur = w_flat.copy()
        for m in range(_MP_TERMS):
            table[:, m, :] = cur.reshape(n_rows, narc, per).sum(axis=-1).T
            if m + 1 < _MP_TERMS:
                cur = cur * d
        tables.append(table)
        centers.append(c_arc)

    # angular leaf bin of every target
    frac = np.mod(-np.angle(ys) / (2 * np.pi), 1.0)
    leaf_bin = np.minimum((frac * n_leaf_arcs).astype(np.intp), n_leaf_arcs - 1)

    out = np.zeros((n_rows, n_targets), dtype=np.complex128)

    def add_arcs(level_idx, arc_idx):
        # multipole contribution of arcs `arc_idx[s, t]` to target t,
        # Horner in 1/(y - center), summed over the stacked arc axis
        c_arc = centers[level_idx][arc_idx]
        tab = tables[level_idx]
        inv_full = 1.0 / (ys - c_arc)
        for lo in range(0, n_targets, _EVAL_CHUNK):
            sl = slice(lo, lo + _EVAL_CHUNK)
            gath = tab[arc_idx[:, sl]]            # (k, chunk, P, rows)
            inv = inv_full[:, sl][..., None]
            acc = gath[:, :, _MP_TERMS - 1, :]
            for m in range(_MP_TERMS - 2, -1, -1):
                acc = acc * inv + gath[:, :, m, :]
            out[:, sl] += np.sum(acc * inv, axis=0).T

    shift = len(levels) - 1
    a_top = leaf_bin >> shift
    offs = np.arange(2, _MIN_ARCS - 1)
    add_arcs(0, np.mod(a_top + offs[:, None], _MIN_ARCS))
    for li in range(1, len(levels)):
        narc = levels[li]
        a = leaf_bin >> (shift - li)
        # children of the parent's +-1 neighbourhood that are not our own:
        # three arcs, depending on which child we are
        even = (a & 1) == 0
        stack = np.empty((3, a.size), dtype=np.intp)
        stack[0] = np.where(even, a - 2, a - 3)
        stack[1] = np.where(even, a + 2, a - 2)
        stack[2] = np.where(even, a + 3, a + 2)
        add_arcs(li, np.mod(stack, narc))

    # near field: direct sum over the sources of leaf arcs a-1, a, a+1
    order = np.argsort(leaf_bin, kind="stable")
    src_idx = np.arange(-_LEAF_SOURCES, 2 * _LEAF_SOURCES)
    pos = 0
    while pos < order.size:
        b = leaf_bin[order[pos]]
        end = pos
        while end < order.size and leaf_bin[order[end]] == b:
            end += 1
        sel = order[pos:end]
        cols = np.mod(b * _LEAF_SOURCES + src_idx, N)
        inv = 1.0 / (ys[sel][:, None] - nodes[cols])
        out[:, sel] += w_flat[:, cols] @ inv.T
        pos = end
    return out.reshape(rows_shape + (n_targets,))


def cauchy_line_sum(sources, weights, ys) -> np.ndarray:
    """sum_k weights[k] / (y - sources[k]) for real sources.

    Direct (chunked) summation for small problems; a segment-bisection
    multipole hierarchy over the source interval for large ones.  Each
    term is formed from the actual distance, so accuracy is relative to
    sum_k |weights[k] / (y - sources[k])|, the honest conditioning of the
    sum; coefficient-space detours through prod (Z - source) lose all
    relative accuracy once that product is small against its coefficients.
    """
    sources = np.asarray(sources, dtype=float).ravel()
    weights = np.asarray(weights, dtype=float).ravel()
    ys = np.atleast_1d(np.asarray(ys, dtype=np.complex128))
    s_n, t_n = sources.size, ys.size
    if s_n == 0 or t_n == 0:
        return np.zeros(ys.shape, dtype=np.complex128)
    lo, hi = float(np.min(sources)), float(np.max(sources))
    span = hi - lo
    if s_n * t_n <= _DENSE_LIMIT or s_n < 4 * _LEAF_SOURCES or span <= 0.0:
        out = np.zeros(t_n, dtype=np.complex128)
        step = max(1, _DENSE_LIMIT // s_n)
        for base in range(0, t_n, step):
            chunk = ys[base:base + step]
            out[base:base + step] = (weights / (chunk[:, None] - sources)).sum(axis=1)
        return out

    n_leaf = _next_pow2(max(s_n // _LEAF_SOURCES, _MIN_ARCS))
    order = np.argsort(sources)
    src = sources[order]
    wts = weights[order]
    width = span / n_leaf
    leaf_of_src = np.minimum(((src - lo) / width).astype(np.intp), n_leaf - 1)

    levels = []
    narc = _MIN_ARCS
    while narc <= n_leaf:
        levels.append(narc)
        narc *= 2

    tables = []
    centers = []
    starts_per_level = []
    for narc in levels:
        c_bin = lo + (np.arange(narc) + 0.5) * (span / narc)
        bin_of_src = leaf_of_src // (n_leaf // narc)
        d = src - c_bin[bin_of_src]
        bounds = np.searchsorted(bin_of_src, np.arange(narc + 1))
        table = np.zeros((narc, _MP_TERMS), dtype=float)
        cur = wts.copy()
        for m in range(_MP_TERMS):
            csum = np.concatenate([[0.0], np.cumsum(cur)])
            table[:, m] = csum[bounds[1:]] - csum[bounds[:-1]]
            if m + 1 < _MP_TERMS:
                cur = cur * d
        tables.append(table)
        centers.append(c_bin)
        starts_per_level.append(bounds)

    t_bin = np.clip(((ys.real - lo) / width).astype(np.intp), 0, n_leaf - 1)
    out = np.zeros(t_n, dtype=np.complex128)
    shift = len(levels) - 1

    def add_bins(level_idx, bin_idx, valid):
        c_bin = centers[level_idx][bin_idx]
        tab = tables[level_idx]
        inv = np.where(valid, 1.0 / (ys - c_bin), 0.0)
        acc = tab[bin_idx, _MP_TERMS - 1] * valid
        for m in range(_MP_TERMS - 2, -1, -1):
            acc = acc * inv + tab[bin_idx, m] * valid
        out[...] += np.sum(acc * inv, axis=0)

    a_top = t_bin >> shift
    offs = np.concatenate([np.arange(-_MIN_ARCS + 1, -1), np.arange(2, _MIN_ARCS)])
    cand = a_top + offs[:, None]
    valid = (cand >= 0) & (cand < _MIN_ARCS)
    add_bins(0, np.clip(cand, 0, _MIN_ARCS - 1), valid)
    for li in range(1, len(levels)):
        narc = levels[li]
        a = t_bin >> (shift - li)
        even = (a & 1) == 0
        stack = np.empty((3, t_n), dtype=np.intp)
        stack[0] = np.where(even, a - 2, a - 3)
        stack[1] = np.where(even, a + 2, a - 2)
        stack[2] = np.where(even, a + 3, a + 2)
        valid = (stack >= 0) & (stack < narc)
        if np.any(valid):
            add_bins(li, np.clip(stack, 0, narc - 1), valid)

    # near field: the sources of leaf bins b-1, b, b+1 directly
    leaf_bounds = starts_per_level[-1]
    t_order = np.argsort(t_bin, kind="stable")
    pos = 0
    while pos < t_n:
        b = t_bin[t_order[pos]]
        end = pos
        while end < t_n and t_bin[t_order[end]] == b:
            end += 1
        sel = t_order[pos:end]
        s0 = leaf_bounds[max(b - 1, 0)]
        s1 = leaf_bounds[min(b + 2, n_leaf)]
        if s1 > s0:
            inv = 1.0 / (ys[sel][:, None] - src[s0:s1])
            out[sel] += inv @ wts[s0:s1]
        pos = end
    return out
