"""Universal differential envelope of a bicovariant calculus.

The invariant forms of a calculus generate a tower of graded algebras:

  * the free differential envelope: the free unital algebra on the
    invariant-form basis and its formal differentials, carrying the
    unique antiderivation with d(theta) = dtheta and d(dtheta) = 0 and
    no other relations, so its cohomology is trivial;
  * the braided symmetric algebra: the quotient of the tensor algebra
    of invariant forms by the two-sided ideal generated by the image
    of (id - braiding), where curvatures live;
  * the curvature-split quotient of the free envelope by the ideal
    that encodes first-order Leibniz data: the quadratic relation
    space of the exterior algebra, the rule for moving a curvature
    past a one-form, and the braided commutation of curvatures.  The
    quotient factors as (braided symmetric algebra) tensor (exterior
    algebra), with the curvature map theta -> R(theta) = d theta -
    delta(theta) embedding the symmetric algebra as the horizontal
    part.

The free envelope also carries an extension of the adjoint coaction,
valued in the envelope tensor the full exterior calculus (trivialized
as functions tensor invariant forms).  Its fixed subalgebra is a
differential subcomplex whose cohomology the caller can compute
degree by degree, together with representatives.

Quotients by word ideals are modeled by certified rewriting: rules
send the lexicographically smallest word of a relation to the strictly
larger remainder, normal forms are computed by folding letters from
the left through memoized single-letter products, and completion adds
the consequences the fold discovers until, for every defining relation
g and every normal word u inside the certified bound, the fold of g*u
normalizes to zero.  Those certificates force the normal words to span
the quotient freely through the bound, so dimension counts, products
and zero tests are exact there.  The seeded echelon construction of
the same ideals is kept alongside as an independent route.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .calculus import Calculus, derive_delta
from .exterior import differential_word
from .linalg import Echelon, LinearMap, row_reduce
from .scalar import ONE, ZERO, Scalar

Word = Tuple[int, ...]
Element = Dict[Word, Scalar]
MixedKey = Tuple[Word, Word, Word]
MixedElement = Dict[MixedKey, Scalar]
StarKey = Tuple[Word, Word]
StarElement = Dict[StarKey, Scalar]


class UniversalError(ValueError):
    """A universal-algebra model could not be built consistently."""


def _add(out: Dict, key, val: Scalar) -> None:
    s = out.get(key)
    s = val if s is None else s + val
    if s.is_zero:
        out.pop(key, None)
    else:
        out[key] = s


def _combine(out: Dict, other: Dict, coeff: Scalar) -> None:
    for key, val in other.items():
        _add(out, key, coeff * val)


# -- the free differential envelope -------------------------------------------


class FreeEnvelope:
    """Free graded-differential algebra on the invariant forms.

    Letters 0..n-1 are the basis one-forms, letters n..2n-1 their
    differentials (degree two).  Words multiply by concatenation; the
    differential promotes each one-form letter to its differential
    letter with the sign of the degree it passed.
    """

    def __init__(self, cal: Calculus):
        self.cal = cal
        self.n = cal.n
        self._words: Dict[int, List[Word]] = {0: [()]}

    def letter_degree(self, letter: int) -> int:
        return 1 if letter < self.n else 2

    def degree(self, word: Word) -> int:
        return sum(1 if letter < self.n else 2 for letter in word)

    def words(self, degree: int) -> List[Word]:
        cached = self._words.get(degree)
        if cached is not None:
            return cached
        out: List[Word] = []
        for i in range(self.n):
            out.extend((i,) + w for w in self.words(degree - 1))
        if degree >= 2:
            for i in range(self.n):
                out.extend((self.n + i,) + w for w in self.words(degree - 2))
        self._words[degree] = out
        return out

    def dim(self, degree: int) -> int:
        return len(self.words(degree))

    def d_word(self, word: Word) -> Element:
        out: Element = {}
        passed = 0
        for j, letter in enumerate(word):
            if letter < self.n:
                sign = ONE if passed % 2 == 0 else -ONE
                _add(out, word[:j] + (self.n + letter,) + word[j + 1:], sign)
                passed += 1
            else:
                passed += 2
        return out

    def d(self, elem: Element) -> Element:
        out: Element = {}
        for word, coeff in elem.items():
            _combine(out, self.d_word(word), coeff)
        return out

    def mul(self, a: Element, b: Element) -> Element:
        out: Element = {}
        for wa, ca in a.items():
            for wb, cb in b.items():
                _add(out, wa + wb, ca * cb)
        return out


def omega_cohomology(cal: Calculus, max_degree: int) -> List[int]:
    """Cohomology dimensions of the free differential envelope.

    The envelope is a tensor algebra on an acyclic two-term complex,
    so every positive degree should report zero; the computation is a
    direct rank count of the signed letter-promotion differential.
    """
    free = FreeEnvelope(cal)
    ranks = [0]
    for k in range(1, max_degree + 1):
        words = free.words(k)
        ranks.append(LinearMap(words,
                               {w: free.d_word(w) for w in words}).rank())
    out = []
    for k in range(max_degree + 1):
        below = ranks[k - 1] if k >= 1 else 0
        out.append(free.dim(k) - ranks[k] - below)
    return out


# -- certified rewriting quotients ---------------------------------------------


class RewriteAlgebra:
    """Graded quotient of a free algebra on dim letters by homogeneous
    relations, with certified normal forms through a degree bound.

    Each rule rewrites the smallest word of a relation, in the
    lexicographic order induced by the letter significance ranking,
    into the strictly larger remainder, so rewriting chains terminate.  The normal form nu is defined by folding letters from
    the left through the single-letter product operators; completion
    keeps adding the fold's nonzero residuals of (relation * normal
    word) as new rules until none remain through the bound.  Since
    every rule is a combination of left multiples of the defining
    relations, and the fold kills relation-led products, an induction
    over the degree shows the normal words project to a basis of the
    quotient in every certified degree.
    """

    _RULE_CAP = 600

    def __init__(self, dim: int, relations: Sequence[Element], bound: int,
                 name: str = "quotient",
                 rank: Optional[Sequence[int]] = None):
        self.dim = dim
        self.bound = bound
        self.name = name
        self.rank = tuple(rank) if rank is not None else tuple(range(dim))
        if sorted(self.rank) != list(range(dim)):
            raise UniversalError(f"{name}: rank must permute the letters")
        self.generators: List[Element] = []
        for rel in relations:
            g = {w: c for w, c in rel.items() if not c.is_zero}
            if not g:
                continue
            if len({len(w) for w in g}) != 1:
                raise UniversalError(
                    f"{name}: defining relations must be homogeneous")
            self.generators.append(g)
        self.rules: Dict[Word, Element] = {}
        self._rule_lengths: Tuple[int, ...] = ()
        self._rw_cache: Dict[Word, Element] = {}
        self._normal: Dict[int, List[Word]] = {}
        self._complete()

    # -- rewriting core --

    def _clear_caches(self) -> None:
        self._rw_cache.clear()
        self._normal.clear()

    def _ranked(self, word: Word) -> Word:
        return tuple(self.rank[letter] for letter in word)

    def _add_rule(self, rel: Element) -> None:
        if len(self.rules) >= self._RULE_CAP:
            raise UniversalError(
                f"{self.name}: completion exceeded {self._RULE_CAP} rules")
        lhs = min(rel, key=self._ranked)
        c0 = rel[lhs]
        self.rules[lhs] = {w: -(c / c0) for w, c in rel.items() if w != lhs}
        self._rule_lengths = tuple(sorted({len(w) for w in self.rules}))
        self._clear_caches()

    def _redex(self, word: Word) -> Optional[Tuple[int, Word]]:
        rules = self.rules
        for pos in range(len(word)):
            for ln in self._rule_lengths:
                if pos + ln > len(word):
                    break
                cand = word[pos:pos + ln]
                if cand in rules:
                    return pos, cand
        return None

    def _rw(self, word: Word) -> Element:
        """Rewrite a word to a combination of normal words.

        Iterative depth-first evaluation with memoization; each rewrite
        step strictly increases the word lexicographically at fixed
        length, so the evaluation terminates.
        """
        cache = self._rw_cache
        hit = cache.get(word)
        if hit is not None:
            return hit
        stack = [word]
        while stack:
            w = stack[-1]
            if w in cache:
                stack.pop()
                continue
            red = self._redex(w)
            if red is None:
                cache[w] = {w: ONE}
                stack.pop()
                continue
            pos, lhs = red
            rhs = self.rules[lhs]
            children = [w[:pos] + w2 + w[pos + len(lhs):] for w2 in rhs]
            missing = [cw for cw in children if cw not in cache]
            if missing:
                stack.extend(missing)
                continue
            acc: Element = {}
            for w2, c in rhs.items():
                _combine(acc, cache[w[:pos] + w2 + w[pos + len(lhs):]], c)
            cache[w] = acc
            stack.pop()
        return cache[word]

    # -- the canonical projection (letter fold) --

    def apply_letter(self, letter: int, elem: Element) -> Element:
        out: Element = {}
        for u, c in elem.items():
            _combine(out, self._rw((letter,) + u), c)
        return out

    def apply_word(self, word: Word, elem: Element) -> Element:
        for letter in reversed(word):
            elem = self.apply_letter(letter, elem)
        return elem

    def nf(self, elem: Element) -> Element:
        """The canonical normal form (fold of letters from the left)."""
        out: Element = {}
        for word, coeff in elem.items():
            _combine(out, self.apply_word(word, {(): ONE}), coeff)
        return out

    def product(self, a: Element, b: Element) -> Element:
        nb = self.nf(b)
        out: Element = {}
        for word, coeff in a.items():
            _combine(out, self.apply_word(word, nb), coeff)
        return out

    def is_zero(self, elem: Element) -> bool:
        return not self.nf(elem)

    def normal(self, degree: int) -> List[Word]:
        cached = self._normal.get(degree)
        if cached is None:
            cached = [w for w in itertools.product(range(self.dim),
                                                   repeat=degree)
                      if self._redex(w) is None]
            self._normal[degree] = cached
        return cached

    def dims(self, max_degree: int) -> List[int]:
        return [len(self.normal(k)) for k in range(max_degree + 1)]

    # -- completion and certification --

    def _complete(self) -> None:
        for g in self.generators:
            residual = self.nf(g)
            if residual:
                self._add_rule(residual)
        for n in range(1, self.bound + 1):
            while True:
                residual = self._sweep(n)
                if residual is None:
                    break
                self._add_rule(residual)

    def _sweep(self, n: int) -> Optional[Element]:
        """First nonzero fold of (relation * normal word) in degree n."""
        for g in self.generators:
            dg = len(next(iter(g)))
            if dg > n:
                continue
            for u in self.normal(n - dg):
                out: Element = {}
                for gw, c in g.items():
                    _combine(out, self.apply_word(gw, {u: ONE}), c)
                if out:
                    return out
        return None


def braided_symmetric_algebra(cal: Calculus, bound: int) -> RewriteAlgebra:
    """Quotient of the invariant-form tensor algebra by the ideal
    generated by the image of (id - braiding).

    The reversed letter ranking keeps words led by earlier basis forms
    in normal form; for the bundled presets that orientation is
    convergent with the quadratic rules alone, so completion stays
    cheap at every certified degree."""
    columns = {}
    for p in range(cal.n):
        for q in range(cal.n):
            col: Element = {(p, q): ONE}
            for (l, m), c in cal.sigma(p, q).items():
                _add(col, (l, m), -c)
            columns[(p, q)] = col
    rows = row_reduce(list(columns.values())).basis()
    return RewriteAlgebra(cal.n, rows, bound, name="braided symmetric",
                          rank=tuple(reversed(range(cal.n))))


def envelope_algebra(cal: Calculus, bound: int) -> RewriteAlgebra:
    """The universal envelope (exterior algebra) as a rewriting model."""
    rows = [dict(r) for r in cal.quadratic_relations().basis()]
    return RewriteAlgebra(cal.n, rows, bound, name="exterior")


def tensor_ideal_echelons(dim: int, relations: Sequence[Element],
                          max_degree: int) -> List[Echelon]:
    """Degreewise echelons of the two-sided word ideal the relations
    generate, built by seeding the left-shifted previous degree and
    inserting relation-led suffix families.  Kept as the independent
    reference route for the rewriting quotients."""
    base = row_reduce([dict(r) for r in relations])
    out = [Echelon(), Echelon()]
    for n in range(2, max_degree + 1):
        ech = Echelon()
        if n == 2:
            for row in base.basis():
                ech.insert(row)
        else:
            prev = out[n - 1]
            for i in range(dim):
                for p, row in prev.rows.items():
                    ech.seed((i,) + p, {(i,) + w: c for w, c in row.items()})
            for row in base.basis():
                for w in itertools.product(range(dim), repeat=n - 2):
                    ech.insert({wl + tuple(w): c for wl, c in row.items()})
        out.append(ech)
    return out


# -- coaction on quotients and invariants --------------------------------------


def word_coaction(cal: Calculus, word: Word) -> Dict[Tuple[Word, Word],
                                                     Scalar]:
    """Right adjoint coaction on a tensor word of invariant forms; the
    legs coact and the coefficients multiply in order."""
    acc: Dict[Tuple[Word, Word], Scalar] = {((), ()): ONE}
    for letter in word:
        nxt: Dict[Tuple[Word, Word], Scalar] = {}
        var = cal.varpi(letter)
        for (fw, hw), c in acc.items():
            for (l, w2), c2 in var.items():
                prod = cal.hopf.mul({hw: ONE}, {w2: ONE})
                for hw3, c3 in prod.items():
                    _add(nxt, (fw + (l,), hw3), c * c2 * c3)
        acc = nxt
    return acc


def algebra_coaction(alg: RewriteAlgebra, cal: Calculus,
                     elem: Element) -> Dict[Tuple[Word, Word], Scalar]:
    """The adjoint coaction descended to a rewriting quotient."""
    out: Dict[Tuple[Word, Word], Scalar] = {}
    for word, coeff in elem.items():
        for (fw, hw), c in word_coaction(cal, word).items():
            for fw2, c2 in alg.nf({fw: ONE}).items():
                _add(out, (fw2, hw), coeff * c * c2)
    return out


def invariant_basis(alg: RewriteAlgebra, cal: Calculus,
                    degree: int) -> List[Element]:
    """Basis of the coaction invariants of the quotient in one degree."""
    words = alg.normal(degree)
    columns = {}
    for w in words:
        col = algebra_coaction(alg, cal, {w: ONE})
        _add(col, (w, ()), -ONE)
        columns[w] = col
    kernel = linalg.kernel_basis(LinearMap(words, columns))
    return row_reduce(kernel).basis()


def centrality_failures(alg: RewriteAlgebra, cal: Calculus,
                        max_degree: int) -> List[str]:
    """Commutators of coaction invariants with the whole quotient.

    Checks every invariant basis element against every normal word,
    both through max_degree, and reports the pairs whose commutator
    does not normalize to zero."""
    failures = []
    for k in range(1, max_degree + 1):
        for idx, inv in enumerate(invariant_basis(alg, cal, k)):
            for m in range(1, max_degree + 1):
                for v in alg.normal(m):
                    left = alg.product(inv, {v: ONE})
                    right = alg.product({v: ONE}, inv)
                    if left != right:
                        failures.append(
                            f"invariant {idx} of degree {k} does not "
                            f"commute with the degree-{m} word {v}")
    return failures


# -- the extended adjoint coaction on the free envelope ------------------------


class MixedAlgebra:
    """The free differential envelope tensor the exterior calculus.

    The exterior-calculus leg is trivialized as functions tensor
    invariant exterior forms; products twist by the right action of
    functions on forms, and the two tensor factors commute with the
    usual graded sign.  The extended adjoint coaction sends a one-form
    generator to its adjoint coaction plus the unit tensor the
    generator, extends as a homomorphism of differential algebras, and
    restricts to the coaction of functions in exterior degree zero.
    """

    def __init__(self, cal: Calculus, leg: Optional[RewriteAlgebra] = None,
                 leg_bound: int = 8):
        self.cal = cal
        self.free = FreeEnvelope(cal)
        self.leg = leg if leg is not None else envelope_algebra(cal,
                                                                leg_bound)
        self._ad_letter: Dict[int, MixedElement] = {}
        self._ad_word: Dict[Word, MixedElement] = {}
        self._leg_d_cache: Dict[Word, Element] = {}

    # -- building blocks --

    def _circ_word(self, fword: Word, hword: Word) -> Element:
        """Right action of one function word on one form word."""
        k = len(fword)
        if k == 0:
            eps = self.cal.hopf.counit({hword: ONE})
            return {} if eps.is_zero else {(): eps}
        out: Element = {}
        for legs, c in self.cal.hopf.split_word(hword, k).items():
            acc: Element = {(): c}
            for j in range(k):
                mat = self.cal.f_word(legs[j])
                row = fword[j]
                nxt: Element = {}
                for w, cc in acc.items():
                    for col in range(self.cal.n):
                        val = mat[row][col]
                        if not val.is_zero:
                            _add(nxt, w + (col,), cc * val)
                acc = nxt
            for w, cc in acc.items():
                _add(out, w, cc)
        return out

    def _leg_d(self, fword: Word) -> Element:
        cached = self._leg_d_cache.get(fword)
        if cached is None:
            cached = self.leg.nf(differential_word(self.cal, fword)) \
                if fword else {}
            self._leg_d_cache[fword] = cached
        return cached

    # -- algebra structure --

    def mul(self, x: MixedElement, y: MixedElement) -> MixedElement:
        out: MixedElement = {}
        hopf = self.cal.hopf
        for (ow1, hw1, fw1), c1 in x.items():
            deg_f1 = len(fw1)
            for (ow2, hw2, fw2), c2 in y.items():
                sign = ONE if (deg_f1 * self.free.degree(ow2)) % 2 == 0 \
                    else -ONE
                coeff = sign * c1 * c2
                ow = ow1 + ow2
                if deg_f1 == 0:
                    for hw3, ch in hopf.mul({hw1: ONE}, {hw2: ONE}).items():
                        _add(out, (ow, hw3, fw2), coeff * ch)
                    continue
                for (b1, b2), cs in hopf.split_word(hw2, 2).items():
                    circ = self.leg.nf(self._circ_word(fw1, b2))
                    if not circ:
                        continue
                    fprod = self.leg.product(circ, {fw2: ONE}) if fw2 \
                        else circ
                    if not fprod:
                        continue
                    for hw3, ch in hopf.mul({hw1: ONE}, {b1: ONE}).items():
                        for fw3, cf in fprod.items():
                            _add(out, (ow, hw3, fw3),
                                 coeff * cs * ch * cf)
        return out

    def d(self, x: MixedElement) -> MixedElement:
        out: MixedElement = {}
        hopf = self.cal.hopf
        for (ow, hw, fw), c in x.items():
            for ow2, c2 in self.free.d_word(ow).items():
                _add(out, (ow2, hw, fw), c * c2)
            sign = ONE if self.free.degree(ow) % 2 == 0 else -ONE
            for (a1, a2), cs in hopf.split_word(hw, 2).items():
                for j, cp in self.cal.pi_word(a2).items():
                    for fw2, cf in self.leg.nf({(j,) + fw: ONE}).items():
                        _add(out, (ow, a1, fw2), sign * c * cs * cp * cf)
            for fw2, cf in self._leg_d(fw).items():
                _add(out, (ow, hw, fw2), sign * c * cf)
        return out

    # -- the extended adjoint coaction --

    def ad_letter(self, letter: int) -> MixedElement:
        cached = self._ad_letter.get(letter)
        if cached is not None:
            return cached
        if letter < self.cal.n:
            out: MixedElement = {((), (), (letter,)): ONE}
            for (l, w), c in self.cal.varpi(letter).items():
                _add(out, (((l,), w, ())), c)
        else:
            out = self.d(self.ad_letter(letter - self.cal.n))
        self._ad_letter[letter] = out
        return out

    def ad_word(self, word: Word) -> MixedElement:
        cached = self._ad_word.get(word)
        if cached is not None:
            return cached
        if not word:
            out: MixedElement = {((), (), ()): ONE}
        else:
            out = self.mul(self.ad_letter(word[0]), self.ad_word(word[1:]))
        self._ad_word[word] = out
        return out

    def ad(self, elem: Element) -> MixedElement:
        out: MixedElement = {}
        for word, coeff in elem.items():
            _combine(out, self.ad_word(word), coeff)
        return out

    def ad_flat(self, elem: Element) -> Dict[Tuple[Word, Word], Scalar]:
        """The exterior-degree-zero component: a coaction valued in
        functions."""
        out: Dict[Tuple[Word, Word], Scalar] = {}
        for (ow, hw, fw), c in self.ad(elem).items():
            if not fw:
                _add(out, (ow, hw), c)
        return out

    def vertical_contraction(self, elem: Element) -> Dict[Tuple[Word, int],
                                                          Scalar]:
        """The exterior-degree-one component of the extended coaction,
        with the function leg evaluated at the counit."""
        out: Dict[Tuple[Word, int], Scalar] = {}
        for (ow, hw, fw), c in self.ad(elem).items():
            if len(fw) == 1:
                eps = self.cal.hopf.counit({hw: ONE})
                if not eps.is_zero:
                    _add(out, (ow, fw[0]), c * eps)
        return out

    # -- fixed subalgebra and horizontality --

    def daleth_basis(self, degree: int) -> List[Element]:
        """Basis of the coaction-fixed part of the free envelope."""
        words = self.free.words(degree)
        columns = {}
        for w in words:
            col = dict(self.ad_word(w))
            _add(col, (w, (), ()), -ONE)
            columns[w] = col
        kernel = linalg.kernel_basis(LinearMap(words, columns))
        return row_reduce(kernel).basis()

    def horizontal_basis(self, degree: int) -> List[Element]:
        """Kernel of every positive exterior-degree component of the
        extended coaction."""
        words = self.free.words(degree)
        columns = {}
        for w in words:
            columns[w] = {key: c for key, c in self.ad_word(w).items()
                          if key[2]}
        kernel = linalg.kernel_basis(LinearMap(words, columns))
        return row_reduce(kernel).basis()

    def daleth_cohomology(self, max_degree: int
                          ) -> Tuple[List[int], List[List[Element]]]:
        """Cohomology of the fixed subalgebra, with representatives.

        Returns the dimension in each degree through max_degree and a
        list of class representatives per degree, reduced against the
        image from below.
        """
        bases = [self.daleth_basis(k) for k in range(max_degree + 2)]
        span: List[Echelon] = []
        for basis in bases:
            ech = Echelon()
            for row in basis:
                ech.insert(dict(row))
            span.append(ech)
        dims: List[int] = []
        reps: List[List[Element]] = []
        image_prev = Echelon()
        rank_prev = 0
        for k in range(max_degree + 1):
            cols = {}
            for idx, row in enumerate(bases[k]):
                img = self.free.d(row)
                if span[k + 1].reduce(dict(img)):
                    raise UniversalError(
                        "the differential leaves the fixed subalgebra "
                        f"in degree {k}")
                cols[idx] = img
            fmap = LinearMap(list(cols), cols)
            kernel = linalg.kernel_basis(fmap)
            image = Echelon()
            for idx, img in cols.items():
                if img:
                    image.insert(dict(img))
            rank = len(image.rows)
            dims.append(len(bases[k]) - rank - rank_prev)
            classes = []
            for vec in kernel:
                expanded: Element = {}
                for idx, c in vec.items():
                    _combine(expanded, bases[k][idx], c)
                residual = image_prev.reduce(expanded)
                if residual:
                    classes.append(residual)
                    image_prev.insert(dict(residual))
            reps.append(classes)
            image_prev = image
            rank_prev = rank
        return dims, reps


# -- the curvature-split quotient ----------------------------------------------


class CurvatureSplit:
    """The quotient of the free envelope by the first-order Leibniz
    ideal, in product coordinates.

    Elements are sums of (symmetric word, exterior word) pairs: the
    symmetric word lists curvature factors R(theta_i) on the left in
    the braided symmetric algebra, the exterior word lists one-form
    factors on the right in the exterior algebra.  The projection from
    the free envelope replaces each differential letter by curvature
    plus contraction, moves curvatures left through one-forms with the
    braiding, and normalizes both blocks.
    """

    def __init__(self, cal: Calculus, bound: int = 4,
                 sigma: Optional[RewriteAlgebra] = None,
                 envelope: Optional[RewriteAlgebra] = None):
        self.cal = cal
        self.bound = bound
        self.free = FreeEnvelope(cal)
        self.sigma = sigma if sigma is not None else \
            braided_symmetric_algebra(cal, bound)
        self.envelope = envelope if envelope is not None else \
            envelope_algebra(cal, bound + 2)
        report = derive_delta(cal)
        if report.failures:
            raise UniversalError("no canonical contraction: "
                                 + "; ".join(report.failures))
        self.delta = report.delta
        self._order_cache: Dict[Word, Dict[StarKey, Scalar]] = {}
        self._push_cache: Dict[Tuple[int, Word, Word],
                               Dict[StarKey, Scalar]] = {}
        self._straight_cache: Dict[Tuple[Word, int],
                                   Dict[Tuple[int, Word], Scalar]] = {}
        self._coaction_cache: Dict[Word, Dict[Tuple[Word, Word], Scalar]] = {}
        self._env_d_cache: Dict[Word, Element] = {}

    # -- gradings and bases --

    def basis(self, degree: int) -> List[StarKey]:
        out: List[StarKey] = []
        for k in range(degree // 2 + 1):
            for sw in self.sigma.normal(k):
                for ew in self.envelope.normal(degree - 2 * k):
                    out.append((sw, ew))
        return out

    def degree(self, key: StarKey) -> int:
        return 2 * len(key[0]) + len(key[1])

    def nf(self, raw: StarElement) -> StarElement:
        out: StarElement = {}
        for (sw, ew), c in raw.items():
            for sw2, cs in self.sigma.nf({sw: ONE}).items():
                for ew2, ce in self.envelope.nf({ew: ONE}).items():
                    _add(out, (sw2, ew2), c * cs * ce)
        return out

    # -- structural caches --

    def _straighten(self, prefix: Word, b: int) -> Dict[Tuple[int, Word],
                                                        Scalar]:
        """Move one curvature letter left through a one-form prefix.

        theta_a R_b = sum braiding(a, b) R_l theta_m, iterated until
        the curvature stands first; returns curvature letter and the
        reordered one-form word."""
        key = (prefix, b)
        cached = self._straight_cache.get(key)
        if cached is not None:
            return cached
        if not prefix:
            out = {(b, ()): ONE}
        else:
            out = {}
            a = prefix[-1]
            for (l, m), c in self.cal.sigma(a, b).items():
                for (k, w), c2 in self._straighten(prefix[:-1], l).items():
                    _add(out, (k, w + (m,)), c * c2)
        self._straight_cache[key] = out
        return out

    def _sigma_coaction(self, sw: Word) -> Dict[Tuple[Word, Word], Scalar]:
        cached = self._coaction_cache.get(sw)
        if cached is None:
            cached = {}
            for (fw, hw), c in word_coaction(self.cal, sw).items():
                for fw2, c2 in self.sigma.nf({fw: ONE}).items():
                    _add(cached, (fw2, hw), c * c2)
            self._coaction_cache[sw] = cached
        return cached

    def _env_d(self, ew: Word) -> Element:
        cached = self._env_d_cache.get(ew)
        if cached is None:
            cached = self.envelope.nf(differential_word(self.cal, ew)) \
                if ew else {}
            self._env_d_cache[ew] = cached
        return cached

    # -- differentials --

    def covariant_derivative(self, x: StarElement) -> StarElement:
        """Antiderivation sending each one-form to its curvature and
        each curvature to zero."""
        out: StarElement = {}
        for (sw, ew), c in x.items():
            for j in range(len(ew)):
                sign = ONE if j % 2 == 0 else -ONE
                for (k, rest), c2 in self._straighten(ew[:j],
                                                      ew[j]).items():
                    snew = self.sigma.apply_word(sw, {(k,): ONE})
                    enew = self.envelope.nf({rest + ew[j + 1:]: ONE})
                    for sw2, cs in snew.items():
                        for ew2, ce in enew.items():
                            _add(out, (sw2, ew2), sign * c * c2 * cs * ce)
        return out

    def vertical_differential(self, x: StarElement) -> StarElement:
        """The coaction legs of the symmetric block contract through
        the germ map and multiply the exterior block; the exterior
        block also takes its own differential."""
        out: StarElement = {}
        for (sw, ew), c in x.items():
            for (sw2, hw), c2 in self._sigma_coaction(sw).items():
                for j, cp in self.cal.pi_word(hw).items():
                    for ew2, ce in self.envelope.nf({(j,) + ew: ONE}).items():
                        _add(out, (sw2, ew2), c * c2 * cp * ce)
            for ew2, ce in self._env_d(ew).items():
                _add(out, (sw, ew2), c * ce)
        return out

    def total_differential(self, x: StarElement) -> StarElement:
        out = self.covariant_derivative(x)
        for key, c in self.vertical_differential(x).items():
            _add(out, key, c)
        return out

    # -- projection from the free envelope and sections --

    def _push_theta(self, a: int, rword: Word, fword: Word
                    ) -> Dict[StarKey, Scalar]:
        """Normal-order theta_a placed left of a curvature block."""
        key = (a, rword, fword)
        cached = self._push_cache.get(key)
        if cached is not None:
            return cached
        if not rword:
            out = {((), (a,) + fword): ONE}
        else:
            out = {}
            b = rword[0]
            for (l, m), c in self.cal.sigma(a, b).items():
                for (rw2, fw2), c2 in self._push_theta(m, rword[1:],
                                                       fword).items():
                    _add(out, ((l,) + rw2, fw2), c * c2)
        self._push_cache[key] = out
        return out

    def _order_word(self, word: Word) -> Dict[StarKey, Scalar]:
        cached = self._order_cache.get(word)
        if cached is not None:
            return cached
        if not word:
            out: Dict[StarKey, Scalar] = {((), ()): ONE}
        else:
            first, rest = word[0], word[1:]
            tail = self._order_word(rest)
            out = {}
            if first < self.cal.n:
                for (rw, fw), c in tail.items():
                    _combine(out, self._push_theta(first, rw, fw), c)
            else:
                i = first - self.cal.n
                for (rw, fw), c in tail.items():
                    _add(out, ((i,) + rw, fw), c)
                    for (l, m), cd in self.delta[i].items():
                        for (rw2, fw2), c2 in self._push_theta(m, rw,
                                                               fw).items():
                            for (rw3, fw3), c3 in self._push_theta(
                                    l, rw2, fw2).items():
                                _add(out, (rw3, fw3), c * cd * c2 * c3)
        self._order_cache[word] = out
        return out

    def project(self, elem: Element) -> StarElement:
        """The quotient projection in product coordinates."""
        out: StarElement = {}
        for word, coeff in elem.items():
            for key, c in self._order_word(word).items():
                _add(out, key, coeff * c)
        return self.nf(out)

    def preimage(self, key: StarKey) -> Element:
        """A free-envelope representative of a basis pair: curvature
        factors expand to differential letter minus contraction."""
        sw, ew = key
        acc: Element = {(): ONE}
        for i in sw:
            factor: Element = {(self.cal.n + i,): ONE}
            for (l, m), c in self.delta[i].items():
                _add(factor, (l, m), -c)
            acc = self.free.mul(acc, factor)
        if ew:
            acc = self.free.mul(acc, {ew: ONE})
        return acc

    # -- identity checks and cohomology --

    def identity_failures(self, max_degree: Optional[int] = None
                          ) -> List[str]:
        """Check the differential identities on every basis pair.

        The covariant derivative squares to zero, the vertical
        differential squares to zero, the two anticommute, and their
        sum is the image of the free-envelope differential under the
        projection."""
        bound = self.bound if max_degree is None else max_degree
        failures = []
        for degree in range(bound + 1):
            for key in self.basis(degree):
                x: StarElement = {key: ONE}
                cd = self.covariant_derivative(x)
                vd = self.vertical_differential(x)
                if self.covariant_derivative(cd):
                    failures.append(f"covariant derivative squared on {key}")
                if self.vertical_differential(vd):
                    failures.append(f"vertical differential squared on {key}")
                anti = self.vertical_differential(cd)
                for k2, c in self.covariant_derivative(vd).items():
                    _add(anti, k2, c)
                if anti:
                    failures.append(f"the differentials do not anticommute "
                                    f"on {key}")
                total = cd
                for k2, c in vd.items():
                    _add(total, k2, c)
                lifted = self.project(self.free.d(self.preimage(key)))
                if total != lifted:
                    failures.append(f"the split differential does not match "
                                    f"the projected one on {key}")
        return failures

    def cohomology(self, max_degree: int) -> List[int]:
        ranks = [0]
        for k in range(max_degree + 1):
            basis = self.basis(k)
            cols = {key: self.total_differential({key: ONE})
                    for key in basis}
            ranks.append(LinearMap(basis, cols).rank())
        out = []
        for k in range(max_degree + 1):
            out.append(len(self.basis(k)) - ranks[k + 1] - ranks[k])
        return out


# -- the first-order Leibniz ideal ---------------------------------------------


def leibniz_ideal_generators(cal: Calculus,
                             delta: Dict[int, Dict[Tuple[int, int], Scalar]]
                             ) -> List[Element]:
    """Free-envelope generators of the curvature-split ideal.

    Three families: the quadratic relation space of the exterior
    algebra; the rule for moving a curvature past a one-form (the
    braiding twist); and the braided commutation of two curvatures.
    Curvature letters expand as differential letter minus contraction.
    """
    n = cal.n

    def curvature(i: int) -> Element:
        out: Element = {(n + i,): ONE}
        for (l, m), c in delta[i].items():
            _add(out, (l, m), -c)
        return out

    free_mul = FreeEnvelope(cal).mul
    gens: List[Element] = []
    for row in cal.quadratic_relations().basis():
        gens.append({(l, m): c for (l, m), c in row.items()})
    for a in range(n):
        for b in range(n):
            rel = free_mul({(a,): ONE}, curvature(b))
            for (l, m), c in cal.sigma(a, b).items():
                _combine(rel, free_mul(curvature(l), {(m,): ONE}), -c)
            gens.append(rel)
    for a in range(n):
        for b in range(n):
            rel = free_mul(curvature(a), curvature(b))
            for (l, m), c in cal.sigma(a, b).items():
                _combine(rel, free_mul(curvature(l), curvature(m)), -c)
            gens.append(rel)
    return [g for g in gens if g]


@dataclass
class LeibnizIdealReport:
    """Degreewise bookkeeping of the curvature-split quotient.

    The free envelope is acyclic, so the long exact sequence of the
    ideal inclusion identifies the quotient cohomology in degree k >= 1
    with the ideal cohomology in degree k + 1; the report checks that
    identification on the degrees both sides reach."""

    free_dims: List[int]
    ideal_ranks: List[int]
    quotient_dims: List[int]
    bookkeeping: List[bool]
    differential_closed: List[bool]
    projection_annihilates: List[bool]
    quotient_cohomology: List[int]
    ideal_cohomology: List[int]
    sequence_consistent: List[bool]

    def ok(self) -> bool:
        return (all(self.bookkeeping) and all(self.differential_closed)
                and all(self.projection_annihilates)
                and self.quotient_cohomology[0] == 1
                and all(self.sequence_consistent))


def leibniz_ideal_check(cal: Calculus, max_degree: int = 4,
                        split: Optional[CurvatureSplit] = None
                        ) -> LeibnizIdealReport:
    """Build the ideal degree by degree and audit the quotient.

    The ideal echelons come from seeding the letter-shifted previous
    degrees and inserting generator-led suffix families; the audit
    checks the rank bookkeeping against the product coordinates, the
    differential invariance of the ideal, that the projection kills
    it, and the quotient cohomology."""
    if split is None:
        split = CurvatureSplit(cal, max_degree)
    free = split.free
    gens = leibniz_ideal_generators(cal, split.delta)
    letters = list(range(2 * cal.n))
    echelons: List[Echelon] = [Echelon(), Echelon()]
    for degree in range(2, max_degree + 1):
        ech = Echelon()
        for letter in letters:
            src_degree = degree - free.letter_degree(letter)
            if src_degree < 2:
                continue
            for pivot, row in echelons[src_degree].rows.items():
                ech.seed((letter,) + pivot,
                         {(letter,) + w: c for w, c in row.items()})
        for g in gens:
            dg = free.degree(next(iter(g)))
            if dg > degree:
                continue
            for w in free.words(degree - dg):
                ech.insert(free.mul(g, {w: ONE}))
        echelons.append(ech)

    free_dims = [free.dim(k) for k in range(max_degree + 1)]
    ideal_ranks = [len(echelons[k].rows) if k < len(echelons) else 0
                   for k in range(max_degree + 1)]
    quotient_dims = [len(split.basis(k)) for k in range(max_degree + 1)]
    bookkeeping = [free_dims[k] == ideal_ranks[k] + quotient_dims[k]
                   for k in range(max_degree + 1)]
    differential_closed = []
    for k in range(2, max_degree):
        closed = True
        for row in echelons[k].basis():
            if echelons[k + 1].reduce(free.d(dict(row))):
                closed = False
                break
        differential_closed.append(closed)
    projection_annihilates = []
    for k in range(2, max_degree + 1):
        killed = all(not split.project(dict(row))
                     for row in echelons[k].basis())
        projection_annihilates.append(killed)
    quotient_cohomology = split.cohomology(max_degree - 2) \
        if max_degree >= 2 else [1]
    ideal_d_ranks = [0, 0]
    for k in range(2, max_degree):
        image = Echelon()
        for row in echelons[k].basis():
            image.insert(free.d(dict(row)))
        ideal_d_ranks.append(len(image.rows))
    ideal_cohomology = []
    for k in range(2, max_degree):
        ideal_cohomology.append(ideal_ranks[k] - ideal_d_ranks[k]
                                - ideal_d_ranks[k - 1])
    sequence_consistent = [
        quotient_cohomology[k] == ideal_cohomology[k - 1]
        for k in range(1, min(len(quotient_cohomology),
                              len(ideal_cohomology) + 1))]
    return LeibnizIdealReport(free_dims, ideal_ranks, quotient_dims,
                              bookkeeping, differential_closed,
                              projection_annihilates, quotient_cohomology,
                              ideal_cohomology, sequence_consistent)
