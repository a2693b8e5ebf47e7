"""Exact sparse linear algebra over the scalar field.

Vectors are plain dicts mapping basis keys to nonzero Scalars.  Keys may
be integers or (nested) tuples of integers; within one space all keys
must be mutually comparable, since pivot selection breaks degree ties by
key order.

The workhorse is a forward-reduced echelon structure: every stored row
has pivot coefficient one and, at the moment it is stored, mentions no
pivot of an earlier row.  Rows may mention pivots created later, so
reduction iterates; it terminates because each elimination step only
introduces strictly later pivots, and the residual it produces is
canonical (it depends only on the span, not on the stored rows).
Avoiding full back-substitution keeps the stored rows sparse, which is
what makes bulk elimination over the rational-function field feasible.
Pivots are chosen to minimize the total degree of the numerator first
(small intermediates), then the key.
"""

from __future__ import annotations

from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .scalar import ONE, Scalar

Vector = Dict[Hashable, Scalar]


def vec_add(u: Vector, v: Vector) -> Vector:
    out = dict(u)
    for k, c in v.items():
        s = out.get(k)
        s = c if s is None else s + c
        if s.is_zero:
            out.pop(k, None)
        else:
            out[k] = s
    return out


def vec_scale(c: Scalar, v: Vector) -> Vector:
    if c.is_zero:
        return {}
    return {k: c * x for k, x in v.items()}


def vec_axpy(u: Vector, c: Scalar, v: Vector) -> None:
    """In place u += c*v."""
    if c.is_zero:
        return
    for k, x in v.items():
        s = u.get(k)
        s = c * x if s is None else s + c * x
        if s.is_zero:
            u.pop(k, None)
        else:
            u[k] = s


def _pick_pivot(v: Vector) -> Hashable:
    return min(v, key=lambda k: (v[k].numerator_degree(), k))


class Echelon:
    """Forward-reduced echelon basis of a span, with exact reduction."""

    def __init__(self) -> None:
        self.rows: Dict[Hashable, Vector] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> set:
        return set(self.rows)

    def reduce(self, vec: Vector) -> Vector:
        """Canonical residual of vec modulo the span (pivot coords zeroed).

        Eliminating one pivot may introduce later pivots, so the pass
        repeats until the residual is pivot-free.
        """
        rows = self.rows
        v = {k: c for k, c in vec.items() if not c.is_zero}
        while True:
            hits = [k for k in v if k in rows]
            if not hits:
                return v
            for k in hits:
                c = v.pop(k, None)
                if c is None or c.is_zero:
                    continue
                for kk, cc in rows[k].items():
                    if kk == k:
                        continue
                    s = v.get(kk)
                    s = -(c * cc) if s is None else s - c * cc
                    if s.is_zero:
                        v.pop(kk, None)
                    else:
                        v[kk] = s

    def contains(self, vec: Vector) -> bool:
        return not self.reduce(vec)

    def insert(self, vec: Vector) -> Optional[Hashable]:
        """Add vec to the span; returns the new pivot or None if dependent."""
        res = self.reduce(vec)
        if not res:
            return None
        pivot = _pick_pivot(res)
        inv = ONE / res[pivot]
        self.rows[pivot] = {k: inv * c for k, c in res.items()}
        return pivot

    def seed(self, pivot: Hashable, row: Vector) -> None:
        """Install a known row without arithmetic.

        The caller guarantees the forward invariant: the row has unit
        coefficient at the new pivot and mentions no pivot of any row
        already present.  Rows coming from another forward echelon keep
        the invariant when seeded in their original creation order, so
        a quotient construction can transplant shifted relation rows
        for free.
        """
        if pivot in self.rows:
            raise ValueError(f"pivot {pivot!r} already present")
        self.rows[pivot] = row

    def basis(self) -> List[Vector]:
        return [self.rows[k] for k in sorted(self.rows)]


def row_reduce(vectors: Iterable[Vector]) -> Echelon:
    """Echelon basis of the span of the given vectors."""
    ech = Echelon()
    for v in vectors:
        ech.insert(v)
    return ech


class LinearMap:
    """Sparse linear map given column-wise on an ordered domain basis."""

    def __init__(self, domain: Sequence[Hashable],
                 columns: Dict[Hashable, Vector]) -> None:
        self.domain = list(domain)
        for k in columns:
            if k not in set(self.domain):
                raise ValueError(f"column key {k!r} outside the domain")
        self.columns = {k: {kk: c for kk, c in v.items() if not c.is_zero}
                        for k, v in columns.items()}

    @classmethod
    def from_function(cls, domain: Sequence[Hashable], fn) -> "LinearMap":
        return cls(domain, {k: fn(k) for k in domain})

    def apply(self, vec: Vector) -> Vector:
        out: Vector = {}
        for k, c in vec.items():
            col = self.columns.get(k)
            if col:
                vec_axpy(out, c, col)
        return out

    def image_echelon(self) -> Echelon:
        return row_reduce(self.columns.get(k, {}) for k in self.domain)

    def rank(self) -> int:
        return self.image_echelon().rank


def _eliminate(img: Vector, combo: Vector,
               img_rows: Dict[Hashable, Tuple[Vector, Vector]]) -> None:
    """In place, eliminate every pivot key of img_rows from img.

    Rows are created in domain order and only mention pivots created
    later, so repeated passes terminate.
    """
    while True:
        hits = [k for k in img if k in img_rows]
        if not hits:
            return
        for k in hits:
            c = img.pop(k, None)
            if c is None or c.is_zero:
                continue
            row_img, row_combo = img_rows[k]
            for kk, cc in row_img.items():
                if kk == k:
                    continue
                s = img.get(kk)
                s = -(c * cc) if s is None else s - c * cc
                if s.is_zero:
                    img.pop(kk, None)
                else:
                    img[kk] = s
            vec_axpy(combo, -c, row_combo)


def kernel_basis(f: LinearMap) -> List[Vector]:
    """Basis of ker f, as vectors over the domain basis of f."""
    # echelon on images with bookkeeping of the combination that produced
    # each row; a vanishing residual yields a kernel vector
    img_rows: Dict[Hashable, Tuple[Vector, Vector]] = {}
    kernel: List[Vector] = []
    for d in f.domain:
        img = dict(f.columns.get(d, {}))
        combo: Vector = {d: ONE}
        _eliminate(img, combo, img_rows)
        if not img:
            kernel.append(combo)
            continue
        pivot = _pick_pivot(img)
        inv = ONE / img[pivot]
        img_rows[pivot] = ({k: inv * c for k, c in img.items()},
                           {k: inv * c for k, c in combo.items()})
    return kernel


def solve(f: LinearMap, b: Vector) -> Optional[Vector]:
    """One solution x of f(x) = b over the domain basis, or None."""
    img_rows: Dict[Hashable, Tuple[Vector, Vector]] = {}
    for d in f.domain:
        img = dict(f.columns.get(d, {}))
        combo: Vector = {d: ONE}
        _eliminate(img, combo, img_rows)
        if not img:
            continue
        pivot = _pick_pivot(img)
        inv = ONE / img[pivot]
        img_rows[pivot] = ({k: inv * c for k, c in img.items()},
                           {k: inv * c for k, c in combo.items()})
    # eliminate b against the echelon; the accumulated combination,
    # negated, is a preimage
    res = dict(b)
    neg_x: Vector = {}
    _eliminate(res, neg_x, img_rows)
    if res:
        return None
    return vec_scale(-ONE, neg_x)


class InconsistentComplexError(ValueError):
    """Raised when the two differentials do not compose to zero."""


def cohomology_rank(d_in: Optional[LinearMap], d_out: Optional[LinearMap],
                    dim: Optional[int] = None) -> int:
    """dim ker(d_out) - rank(d_in) for a three-term piece of a complex.

    Either map may be None, meaning the zero map; then dim must be given
    when d_out is None so the kernel dimension is known.
    """
    if d_out is not None and d_in is not None:
        for d in d_in.domain:
            col = d_in.columns.get(d, {})
            if d_out.apply(col):
                raise InconsistentComplexError(
                    f"composition nonzero on domain element {d!r}")
    if d_out is None:
        if dim is None:
            raise ValueError("need the middle dimension when d_out is zero")
        kdim = dim
    else:
        kdim = len(d_out.domain) - d_out.rank()
    rin = 0 if d_in is None else d_in.rank()
    return kdim - rin
