"""Braided exterior and envelope algebras over the invariant forms.

Degree-n tensors over the invariant-form basis are sparse dictionaries
keyed by index words (i_1, ..., i_n).  The braiding of the calculus
extends to every adjacent pair of slots, every permutation p acts
through a reduced word as an operator sigma_p, and the braided
antisymmetrizers

    A_n = sum over p in S_n of (-1)^p sigma_p

are computed by the shuffle factorization A_{k+l} = (A_k (x) A_l) A_kl,
where A_kl runs over the minimal coset representatives of S_k x S_l
(the inverse (k,l)-shuffles).  Two graded quotients are modeled:

  * the braided exterior algebra ("vee"): degree n is the quotient by
    ker A_n, the minimal higher-order structure;
  * the universal envelope ("wedge"): the quotient by the two-sided
    ideal generated by the quadratic relation space of the calculus,
    the maximal one.

Both carry the differential determined on germs by
d pi(a) = -pi(a^(1)) pi(a^(2)), extended as an antiderivation; the
models verify that the differential descends to the quotient and
squares to zero on every stored degree.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .calculus import Calculus
from .linalg import Echelon, LinearMap, row_reduce
from .scalar import ONE, Scalar

Word = Tuple[int, ...]
TensorElement = Dict[Word, Scalar]


class ExteriorError(ValueError):
    """A graded model could not be built consistently."""


# -- permutation operators ----------------------------------------------------


def braid_slot(cal: Calculus, vec: TensorElement, slot: int) -> TensorElement:
    """Apply the braiding to tensor slots (slot, slot+1)."""
    out: TensorElement = {}
    for word, coeff in vec.items():
        if slot < 0 or slot + 1 >= len(word):
            raise ValueError("slot outside the word")
        for (l, m), val in cal.sigma(word[slot], word[slot + 1]).items():
            key = word[:slot] + (l, m) + word[slot + 2:]
            s = out.get(key)
            s = coeff * val if s is None else s + coeff * val
            if s.is_zero:
                out.pop(key, None)
            else:
                out[key] = s
    return out


def inversions(perm: Sequence[int]) -> int:
    return sum(1 for a, b in itertools.combinations(range(len(perm)), 2)
               if perm[a] > perm[b])


def reduced_word(perm: Sequence[int]) -> List[int]:
    """A reduced word s_{i1}...s_{ik} for the permutation.

    The permutation is given in one-line notation (perm[i] is where slot
    i goes... more precisely the operator convention is fixed by
    permutation_operator below, and all users rely only on the group
    structure).  Generated by bubble sort, so its length equals the
    inversion number.
    """
    p = list(perm)
    word: List[int] = []
    changed = True
    while changed:
        changed = False
        for i in range(len(p) - 1):
            if p[i] > p[i + 1]:
                p[i], p[i + 1] = p[i + 1], p[i]
                word.append(i)
                changed = True
    word.reverse()
    return word


def permutation_operator(cal: Calculus, perm: Sequence[int],
                         vec: TensorElement) -> TensorElement:
    """sigma_p for the permutation p, via a reduced word.

    Well defined because the braiding satisfies the braid relation, so
    any two reduced words give the same operator.
    """
    out = vec
    for slot in reduced_word(perm):
        out = braid_slot(cal, out, slot)
    return out


def _shuffles(k: int, l: int):
    """One-line words of the inverse (k,l)-shuffles.

    Each choice of which slots feed the first block yields the
    permutation (first..., rest...); summed with signs after the
    blockwise antisymmetrizers these complete A_{k+l}, and
    inv(q) = number of crossings of the shuffle.  The factorization
    side is pinned by the oracle comparison against the plain signed
    sum over all permutations.
    """
    n = k + l
    for first in itertools.combinations(range(n), k):
        rest = [i for i in range(n) if i not in first]
        yield tuple(first) + tuple(rest)


def shuffle_antisymmetrizer(cal: Calculus, k: int, l: int,
                            vec: TensorElement) -> TensorElement:
    """A_kl = signed sum of sigma_q over the (k,l) coset representatives."""
    out: TensorElement = {}
    for q in _shuffles(k, l):
        sign = ONE if inversions(q) % 2 == 0 else -ONE
        for word, coeff in permutation_operator(cal, q, vec).items():
            s = out.get(word)
            s = sign * coeff if s is None else s + sign * coeff
            if s.is_zero:
                out.pop(word, None)
            else:
                out[word] = s
    return out


def _tensor_pair(cal: Calculus, k: int, fn_left, fn_right,
                 vec: TensorElement) -> TensorElement:
    """Apply fn_left to the first k slots and fn_right to the rest."""
    out: TensorElement = {}
    for word, coeff in vec.items():
        left = fn_left({word[:k]: ONE})
        right = fn_right({word[k:]: ONE})
        for wl, cl in left.items():
            for wr, cr in right.items():
                key = wl + wr
                s = out.get(key)
                term = coeff * cl * cr
                s = term if s is None else s + term
                if s.is_zero:
                    out.pop(key, None)
                else:
                    out[key] = s
    return out


def antisymmetrizer(cal: Calculus, n: int):
    """The braided antisymmetrizer A_n as a function on degree-n tensors.

    Computed by the ladder A_n = (A_{n-1} (x) id) A_{n-1,1}; results on
    basis words are memoized on the calculus instance.
    """
    if n < 1:
        raise ValueError("degree must be at least 1")

    cache = cal.__dict__.setdefault("_antisym_cache", {})

    def apply_basis(word: Word) -> TensorElement:
        if len(word) == 1:
            return {word: ONE}
        key = word
        hit = cache.get(key)
        if hit is not None:
            return hit
        k = len(word) - 1
        mixed = shuffle_antisymmetrizer(cal, k, 1, {word: ONE})
        out: TensorElement = {}
        for w, coeff in mixed.items():
            for wl, cl in apply_basis(w[:k]).items():
                key2 = wl + w[k:]
                s = out.get(key2)
                term = coeff * cl
                s = term if s is None else s + term
                if s.is_zero:
                    out.pop(key2, None)
                else:
                    out[key2] = s
        cache[key] = out
        return out

    def apply(vec: TensorElement) -> TensorElement:
        out: TensorElement = {}
        for word, coeff in vec.items():
            if len(word) != n:
                raise ValueError("inhomogeneous input to an antisymmetrizer")
            for w, val in apply_basis(word).items():
                s = out.get(w)
                term = coeff * val
                s = term if s is None else s + term
                if s.is_zero:
                    out.pop(w, None)
                else:
                    out[w] = s
        return out

    return apply


def antisymmetrizer_direct(cal: Calculus, n: int):
    """A_n as the plain signed sum over all n! permutations (oracle)."""

    def apply(vec: TensorElement) -> TensorElement:
        out: TensorElement = {}
        for perm in itertools.permutations(range(n)):
            sign = ONE if inversions(perm) % 2 == 0 else -ONE
            for word, coeff in permutation_operator(cal, perm, vec).items():
                s = out.get(word)
                s = sign * coeff if s is None else s + sign * coeff
                if s.is_zero:
                    out.pop(word, None)
                else:
                    out[word] = s
        return out

    return apply


def degree_words(dim: int, n: int) -> List[Word]:
    return [tuple(w) for w in itertools.product(range(dim), repeat=n)]


def antisymmetrizer_map(cal: Calculus, n: int) -> LinearMap:
    dim = len(cal.basis_names)
    fn = antisymmetrizer(cal, n)
    words = degree_words(dim, n)
    return LinearMap(words, {w: fn({w: ONE}) for w in words})


def exterior_dims(cal: Calculus, max_degree: int) -> List[int]:
    """Dimensions of the braided exterior components through max_degree.

    Degree n is the image of A_n (equivalently the quotient by its
    kernel), degree 0 the constants.
    """
    dims = [1]
    for n in range(1, max_degree + 1):
        dims.append(antisymmetrizer_map(cal, n).rank())
    return dims


# -- graded quotient models ----------------------------------------------------


def _mc_vec(cal: Calculus, i: int) -> TensorElement:
    return {(l, m): v for (l, m), v in cal.mc_tensor(i).items()}


def differential_word(cal: Calculus, word: Word) -> TensorElement:
    """Antiderivation extension of the germ differential to a basis word."""
    out: TensorElement = {}
    for j, idx in enumerate(word):
        sign = ONE if j % 2 == 0 else -ONE
        for (l, m), val in cal.mc_tensor(idx).items():
            key = word[:j] + (l, m) + word[j + 1:]
            s = out.get(key)
            term = sign * val
            s = term if s is None else s + term
            if s.is_zero:
                out.pop(key, None)
            else:
                out[key] = s
    return out


class GradedAlgebraModel:
    """A graded quotient of the tensor algebra with its differential.

    Per degree k the model stores the relation echelon, the quotient
    basis (the non-pivot words), and the differential as a linear map
    into the next quotient.  Degrees run from 0 to max_degree; the
    relation data extends one degree further so the top differential is
    meaningful.
    """

    def __init__(self, cal: Calculus, kind: str, max_degree: int,
                 quadratic: Optional[List[TensorElement]] = None):
        if kind not in ("vee", "wedge"):
            raise ValueError("kind must be 'vee' or 'wedge'")
        self.cal = cal
        self.kind = kind
        self.max_degree = max_degree
        dim = len(cal.basis_names)
        self.relations: List[Echelon] = [Echelon(), Echelon()]

        if kind == "wedge":
            if quadratic is None:
                quadratic = cal.quadratic_relations().basis()
            base = row_reduce(quadratic)
            for n in range(2, max_degree + 2):
                ech = Echelon()
                if n == 2:
                    for row in base.basis():
                        ech.insert(row)
                else:
                    # the left-shifted copies of the previous relation
                    # echelon live in disjoint first-letter blocks, so
                    # they transplant as echelon rows with no arithmetic
                    prev = self.relations[n - 1]
                    for i in range(dim):
                        for p, row in prev.rows.items():
                            ech.seed((i,) + p,
                                     {(i,) + w: c for w, c in row.items()})
                    for row in base.basis():
                        for w in degree_words(dim, n - 2):
                            ech.insert({wl + w: c for wl, c in row.items()})
                self.relations.append(ech)
        else:
            for n in range(2, max_degree + 2):
                fmap = antisymmetrizer_map(cal, n)
                ech = row_reduce(linalg.kernel_basis(fmap))
                self.relations.append(ech)

        self.basis: List[List[Word]] = []
        for n in range(0, max_degree + 2):
            pivots = self.relations[n].pivots if n < len(self.relations) \
                else set()
            words = [w for w in degree_words(dim, n) if w not in pivots]
            self.basis.append(words)

        # the differential must descend to the quotient; the top relation
        # degree has no stored successor to reduce against, so the check
        # runs on the degrees whose differential the model exposes
        for n in range(2, max_degree + 1):
            for row in self.relations[n].basis():
                img = self.relations[n + 1].reduce(self._differential_raw(row))
                if img:
                    raise ExteriorError(
                        f"differential does not preserve the degree-{n} "
                        f"relations of the {kind} model")

        self.diff: List[LinearMap] = []
        for n in range(0, max_degree + 1):
            cols = {}
            for w in self.basis[n]:
                img = self.relations[n + 1].reduce(differential_word(cal, w)
                                                   if n else {})
                cols[w] = img
            self.diff.append(LinearMap(self.basis[n], cols))

        # d squared vanishes degree by degree
        for n in range(0, max_degree):
            for w in self.basis[n]:
                if self.diff[n + 1].apply(self.diff[n].apply({w: ONE})):
                    raise ExteriorError(
                        f"the differential does not square to zero in "
                        f"degree {n} of the {kind} model")

    def _differential_raw(self, vec: TensorElement) -> TensorElement:
        out: TensorElement = {}
        for word, coeff in vec.items():
            for w, val in differential_word(self.cal, word).items():
                s = out.get(w)
                term = coeff * val
                s = term if s is None else s + term
                if s.is_zero:
                    out.pop(w, None)
                else:
                    out[w] = s
        return out

    def dims(self) -> List[int]:
        return [len(self.basis[n]) for n in range(self.max_degree + 1)]

    def reduce(self, vec: TensorElement) -> TensorElement:
        """Canonical representative of a homogeneous tensor."""
        degrees = {len(w) for w in vec}
        if not degrees:
            return {}
        if len(degrees) != 1:
            raise ValueError("reduce expects a homogeneous tensor")
        n = degrees.pop()
        if n >= len(self.relations):
            raise ValueError("degree beyond the built model")
        return self.relations[n].reduce(vec)

    def differential(self, vec: TensorElement) -> TensorElement:
        degrees = {len(w) for w in vec}
        if not degrees:
            return {}
        if len(degrees) != 1:
            raise ValueError("the differential expects a homogeneous tensor")
        n = degrees.pop()
        if n > self.max_degree:
            raise ValueError("degree beyond the built model")
        return self.diff[n].apply(self.reduce(vec))


def envelope_model(cal: Calculus, max_degree: int,
                   quadratic: Optional[List[TensorElement]] = None
                   ) -> GradedAlgebraModel:
    """The universal envelope: quotient by the ideal of quadratic relations."""
    return GradedAlgebraModel(cal, "wedge", max_degree, quadratic)


def exterior_model(cal: Calculus, max_degree: int) -> GradedAlgebraModel:
    """The braided exterior algebra: quotient by antisymmetrizer kernels."""
    return GradedAlgebraModel(cal, "vee", max_degree)


def group_cohomology(cal: Calculus, max_degree: int,
                     kind: str = "wedge") -> List[int]:
    """Cohomology dimensions of the invariant forms complex through
    max_degree."""
    model = GradedAlgebraModel(cal, kind, max_degree)
    out = []
    for n in range(0, max_degree + 1):
        d_in = model.diff[n - 1] if n >= 1 else None
        d_out = model.diff[n]
        out.append(linalg.cohomology_rank(d_in, d_out,
                                          dim=len(model.basis[n])))
    return out
