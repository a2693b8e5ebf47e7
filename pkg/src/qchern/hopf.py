"""Finitely presented Hopf *-algebras with exact rewriting.

An algebra is given by an ordered list of generator names and a set of
rewrite rules.  Words are tuples of generator indices, ordered by degree
first and then lexicographically in the declared generator order
(deglex).  Every rule must be strictly decreasing for that order, which
guarantees termination of rewriting; confluence is not assumed but
probed by randomized sampling during validation.

Elements are sparse dicts mapping normal words to nonzero Scalars.  The
Hopf structure (coproduct, counit, antipode, star) is supplied on the
generators and extended by (anti)multiplicativity.  Tensors with several
legs are dicts keyed by tuples of normal words.

The adjoint coaction used throughout is

    ad(a) = a(2) (x) kappa(a(1)) a(3),

with the Sweedler legs a(1) (x) a(2) (x) a(3) of the twice-iterated
coproduct.
"""

from __future__ import annotations

import itertools
import random
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .scalar import ONE, ZERO, Scalar

Word = Tuple[int, ...]
Element = Dict[Word, Scalar]
Tensor = Dict[Tuple[Word, ...], Scalar]

_STEP_BUDGET = 2_000_000


class PresentationError(ValueError):
    """A structural defect in a presentation or its Hopf data."""


def _deglex_key(word: Word) -> Tuple[int, Word]:
    return (len(word), word)


def add(x: Element, y: Element) -> Element:
    out = dict(x)
    for w, c in y.items():
        s = out.get(w)
        s = c if s is None else s + c
        if s.is_zero:
            out.pop(w, None)
        else:
            out[w] = s
    return out


def scale(c: Scalar, x: Element) -> Element:
    if c.is_zero:
        return {}
    return {w: c * a for w, a in x.items()}


def sub(x: Element, y: Element) -> Element:
    return add(x, scale(-ONE, y))


class HopfAlgebra:
    """A finitely presented Hopf *-algebra with normal-form arithmetic."""

    def __init__(self, generators: Sequence[str],
                 rules: Mapping[Word, Element],
                 coproduct: Mapping[int, Tensor],
                 counit: Mapping[int, Scalar],
                 antipode: Mapping[int, Element],
                 star: Mapping[int, Element]) -> None:
        self.generators = tuple(generators)
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise PresentationError("duplicate generator names")
        self.rules = {tuple(l): dict(r) for l, r in rules.items()}
        for lhs, rhs in self.rules.items():
            if not lhs:
                raise PresentationError("empty rule left-hand side")
            for w in itertools.chain([lhs], rhs):
                if any(g < 0 or g >= n for g in w):
                    raise PresentationError(f"word {w} uses unknown generator")
            for w in rhs:
                if _deglex_key(w) >= _deglex_key(lhs):
                    raise PresentationError(
                        f"rule {lhs} -> ... is not strictly decreasing "
                        f"(offending word {w})")
        self._max_lhs = max((len(l) for l in self.rules), default=1)
        self.coproduct_table = {g: dict(t) for g, t in coproduct.items()}
        self.counit_table = {g: Scalar(c) for g, c in counit.items()}
        self.antipode_table = {g: dict(e) for g, e in antipode.items()}
        self.star_table = {g: dict(e) for g, e in star.items()}
        for table, label in ((self.coproduct_table, "coproduct"),
                             (self.counit_table, "counit"),
                             (self.antipode_table, "antipode"),
                             (self.star_table, "star")):
            missing = set(range(n)) - set(table)
            if missing:
                names = ", ".join(self.generators[g] for g in sorted(missing))
                raise PresentationError(f"{label} not given for: {names}")
        self._nf: Dict[Word, Element] = {}
        self._nf_right: Dict[Word, Element] = {}
        self._split: Dict[Tuple[Word, int], Tensor] = {}
        self._kappa: Dict[Word, Element] = {}
        self._star: Dict[Word, Element] = {}

    # -- normal forms ---------------------------------------------------

    def _match(self, word: Word, pos: int) -> Optional[Word]:
        limit = min(self._max_lhs, len(word) - pos)
        for l in range(limit, 0, -1):
            cand = word[pos:pos + l]
            if cand in self.rules:
                return cand
        return None

    def normal_word(self, word: Word) -> Element:
        """Normal form of a single word, memoized."""
        cached = self._nf.get(word)
        if cached is not None:
            return cached
        steps = 0
        for i in range(len(word)):
            lhs = self._match(word, i)
            if lhs is None:
                continue
            out: Element = {}
            for mid, c in self.rules[lhs].items():
                steps += 1
                if steps > _STEP_BUDGET:
                    raise PresentationError("rewriting step budget exceeded")
                piece = self.normal_word(word[:i] + mid + word[i + len(lhs):])
                for w, a in piece.items():
                    s = out.get(w)
                    s = c * a if s is None else s + c * a
                    if s.is_zero:
                        out.pop(w, None)
                    else:
                        out[w] = s
            self._nf[word] = out
            return out
        self._nf[word] = {word: ONE}
        return self._nf[word]

    def is_normal(self, word: Word) -> bool:
        return all(self._match(word, i) is None for i in range(len(word)))

    def normalize(self, poly: Element) -> Element:
        out: Element = {}
        for w, c in poly.items():
            if c.is_zero:
                continue
            for ww, a in self.normal_word(w).items():
                s = out.get(ww)
                s = c * a if s is None else s + c * a
                if s.is_zero:
                    out.pop(ww, None)
                else:
                    out[ww] = s
        return out

    def _reduce_rightmost(self, word: Word) -> Element:
        """Independent reduction strategy used as a confluence probe."""
        cached = self._nf_right.get(word)
        if cached is not None:
            return cached
        for i in range(len(word) - 1, -1, -1):
            lhs = self._match(word, i)
            if lhs is None:
                continue
            out: Element = {}
            for mid, c in self.rules[lhs].items():
                piece = self._reduce_rightmost(word[:i] + mid
                                               + word[i + len(lhs):])
                for w, a in piece.items():
                    s = out.get(w)
                    s = c * a if s is None else s + c * a
                    if s.is_zero:
                        out.pop(w, None)
                    else:
                        out[w] = s
            self._nf_right[word] = out
            return out
        self._nf_right[word] = {word: ONE}
        return self._nf_right[word]

    # -- constructors and basic operations ------------------------------

    def unit(self) -> Element:
        return {(): ONE}

    def gen(self, name: str) -> Element:
        try:
            g = self.generators.index(name)
        except ValueError:
            raise PresentationError(f"unknown generator {name!r}") from None
        return {(g,): ONE}

    def mul(self, x: Element, y: Element) -> Element:
        out: Element = {}
        for w1, c1 in x.items():
            for w2, c2 in y.items():
                c = c1 * c2
                for w, a in self.normal_word(w1 + w2).items():
                    s = out.get(w)
                    s = c * a if s is None else s + c * a
                    if s.is_zero:
                        out.pop(w, None)
                    else:
                        out[w] = s
        return out

    def product(self, *factors: Element) -> Element:
        acc = self.unit()
        for f in factors:
            acc = self.mul(acc, f)
        return acc

    def power(self, x: Element, n: int) -> Element:
        if n < 0:
            raise ValueError("negative powers are not defined")
        acc = self.unit()
        for _ in range(n):
            acc = self.mul(acc, x)
        return acc

    def counit(self, x: Element) -> Scalar:
        total = ZERO
        for w, c in x.items():
            val = c
            for g in w:
                val = val * self.counit_table[g]
                if val.is_zero:
                    break
            total = total + val
        return total

    def antipode(self, x: Element) -> Element:
        out: Element = {}
        for w, c in x.items():
            out = add(out, scale(c, self._antipode_word(w)))
        return out

    def _antipode_word(self, word: Word) -> Element:
        cached = self._kappa.get(word)
        if cached is None:
            acc = self.unit()
            for g in reversed(word):
                acc = self.mul(acc, self.antipode_table[g])
            cached = self._kappa[word] = acc
        return cached

    def star(self, x: Element) -> Element:
        out: Element = {}
        for w, c in x.items():
            out = add(out, scale(c.conj(), self._star_word(w)))
        return out

    def _star_word(self, word: Word) -> Element:
        cached = self._star.get(word)
        if cached is None:
            acc = self.unit()
            for g in reversed(word):
                acc = self.mul(acc, self.star_table[g])
            cached = self._star[word] = acc
        return cached

    # -- coproduct legs --------------------------------------------------

    def tensor_mul(self, s: Tensor, t: Tensor) -> Tensor:
        """Legwise product of two tensors with the same number of legs."""
        out: Tensor = {}
        for key1, c1 in s.items():
            for key2, c2 in t.items():
                coeff = c1 * c2
                legs = [self.normal_word(w1 + w2)
                        for w1, w2 in zip(key1, key2)]
                for combo in itertools.product(*(l.items() for l in legs)):
                    key = tuple(w for w, _ in combo)
                    c = coeff
                    for _, a in combo:
                        c = c * a
                    sacc = out.get(key)
                    sacc = c if sacc is None else sacc + c
                    if sacc.is_zero:
                        out.pop(key, None)
                    else:
                        out[key] = sacc
        return out

    def split_word(self, word: Word, legs: int) -> Tensor:
        """Sweedler legs of a word: the (legs-1)-fold iterated coproduct."""
        if legs < 1:
            raise ValueError("need at least one leg")
        cached = self._split.get((word, legs))
        if cached is not None:
            return cached
        if legs == 1:
            out: Tensor = {}
            for w, a in self.normal_word(word).items():
                out[(w,)] = a
            self._split[(word, legs)] = out
            return out
        if len(word) == 0:
            out = {((),) * legs: ONE}
        elif len(word) == 1:
            # expand the first leg of the generator coproduct repeatedly
            out = dict(self.coproduct_table[word[0]])
            for _ in range(legs - 2):
                expanded: Tensor = {}
                for key, c in out.items():
                    for key0, c0 in self.split_word(key[0], 2).items():
                        k = key0 + key[1:]
                        s = expanded.get(k)
                        s = c * c0 if s is None else s + c * c0
                        if s.is_zero:
                            expanded.pop(k, None)
                        else:
                            expanded[k] = s
                out = expanded
        else:
            half = len(word) // 2
            out = self.tensor_mul(self.split_word(word[:half], legs),
                                  self.split_word(word[half:], legs))
        self._split[(word, legs)] = out
        return out

    def split(self, x: Element, legs: int) -> Tensor:
        out: Tensor = {}
        for w, c in x.items():
            for key, a in self.split_word(w, legs).items():
                s = out.get(key)
                s = c * a if s is None else s + c * a
                if s.is_zero:
                    out.pop(key, None)
                else:
                    out[key] = s
        return out

    def coproduct(self, x: Element) -> Tensor:
        return self.split(x, 2)

    def adjoint_coaction(self, x: Element) -> Tensor:
        """ad(a) = a(2) (x) kappa(a(1)) a(3), a right coaction on the algebra."""
        out: Tensor = {}
        for (w1, w2, w3), c in self.split(x, 3).items():
            right = self.mul(self._antipode_word(w1), {w3: ONE})
            for w, a in right.items():
                key = (w2, w)
                s = out.get(key)
                s = c * a if s is None else s + c * a
                if s.is_zero:
                    out.pop(key, None)
                else:
                    out[key] = s
        return out

    # -- enumeration ----------------------------------------------------

    def normal_words(self, length: int) -> List[Word]:
        """All normal words of exactly the given length, deglex order."""
        if length == 0:
            return [()]
        out: List[Word] = []
        n = len(self.generators)

        def extend(prefix: Word) -> None:
            if len(prefix) == length:
                out.append(prefix)
                return
            for g in range(n):
                w = prefix + (g,)
                # the prefix is normal, so only matches touching the new
                # last letter are possible
                lo = max(0, len(w) - self._max_lhs)
                if all(self._match(w, i) is None for i in range(lo, len(w))):
                    extend(w)

        extend(())
        return out

    def normal_words_up_to(self, degree: int) -> List[Word]:
        out: List[Word] = []
        for k in range(degree + 1):
            out.extend(self.normal_words(k))
        return out

    # -- printing --------------------------------------------------------

    def word_str(self, word: Word) -> str:
        if not word:
            return "1"
        return "*".join(self.generators[g] for g in word)

    def element_str(self, x: Element) -> str:
        if not x:
            return "0"
        parts = []
        for w in sorted(x, key=_deglex_key):
            parts.append(f"({x[w]})*{self.word_str(w)}")
        return " + ".join(parts)

    # -- validation -------------------------------------------------------

    def validate(self, max_degree: int = 3, samples: int = 10_000,
                 seed: int = 0) -> List[str]:
        """Check the Hopf axioms and rewriting health; list the failures."""
        failures: List[str] = []
        failures.extend(self._check_confluence(samples, seed))
        failures.extend(self._check_well_defined())
        failures.extend(self._check_hopf_axioms(max_degree))
        return failures

    def _check_confluence(self, samples: int, seed: int) -> List[str]:
        rng = random.Random(seed)
        n = len(self.generators)
        failures = []
        for _ in range(samples):
            length = rng.randint(0, 6)
            word = tuple(rng.randrange(n) for _ in range(length))
            left = self.normal_word(word)
            right = self._reduce_rightmost(word)
            if left != right:
                failures.append(
                    f"confluence: word {self.word_str(word)} has two "
                    f"distinct normal forms")
                break
        return failures

    def _check_well_defined(self) -> List[str]:
        """Each structure map must agree on both sides of every rule."""
        failures = []
        for lhs, rhs in self.rules.items():
            lhs_el = {lhs: ONE}
            rhs_el = self.normalize(rhs)
            pairs = [
                ("coproduct", self.coproduct(lhs_el), self.coproduct(rhs_el)),
                ("star", self.star(lhs_el), self.star(rhs_el)),
                ("antipode", self.antipode(lhs_el), self.antipode(rhs_el)),
            ]
            for label, a, b in pairs:
                if a != b:
                    failures.append(
                        f"{label} is not well defined on rule "
                        f"{self.word_str(lhs)}")
            if self.counit(lhs_el) != self.counit(rhs_el):
                failures.append(
                    f"counit is not well defined on rule "
                    f"{self.word_str(lhs)}")
        return failures

    def _check_hopf_axioms(self, max_degree: int) -> List[str]:
        failures = []
        words = self.normal_words_up_to(max_degree)
        for w in words:
            x: Element = {w: ONE}
            name = self.word_str(w)
            cop = self.coproduct(x)
            # counit axiom: (eps (x) id) o cop = id = (id (x) eps) o cop
            left: Element = {}
            right: Element = {}
            for (w1, w2), c in cop.items():
                left = add(left, scale(c * self.counit({w1: ONE}), {w2: ONE}))
                right = add(right, scale(c * self.counit({w2: ONE}),
                                         {w1: ONE}))
            if left != x or right != x:
                failures.append(f"counit axiom fails on {name}")
            # coassociativity via both one-sided expansions of three legs
            three_l: Tensor = {}
            three_r: Tensor = {}
            for (w1, w2), c in cop.items():
                for (a, b), d in self.coproduct({w1: ONE}).items():
                    key = (a, b, w2)
                    s = three_l.get(key, ZERO) + c * d
                    if s.is_zero:
                        three_l.pop(key, None)
                    else:
                        three_l[key] = s
                for (a, b), d in self.coproduct({w2: ONE}).items():
                    key = (w1, a, b)
                    s = three_r.get(key, ZERO) + c * d
                    if s.is_zero:
                        three_r.pop(key, None)
                    else:
                        three_r[key] = s
            if three_l != three_r:
                failures.append(f"coassociativity fails on {name}")
            # antipode axiom
            conv_l: Element = {}
            conv_r: Element = {}
            for (w1, w2), c in cop.items():
                conv_l = add(conv_l, scale(c, self.mul(
                    self._antipode_word(w1), {w2: ONE})))
                conv_r = add(conv_r, scale(c, self.mul(
                    {w1: ONE}, self._antipode_word(w2))))
            target = scale(self.counit(x), self.unit())
            if conv_l != target or conv_r != target:
                failures.append(f"antipode axiom fails on {name}")
            # star interactions
            xs = self.star(x)
            if self.star(xs) != x:
                failures.append(f"star is not involutive on {name}")
            if self.counit(xs) != self.counit(x).conj():
                failures.append(f"counit does not respect star on {name}")
            twisted = self.star(self.antipode(self.star(
                self.antipode(x))))
            if twisted != x:
                failures.append(
                    f"antipode/star compatibility fails on {name}")
            starred_cop = {}
            for (w1, w2), c in cop.items():
                s1 = self._star_word(w1)
                s2 = self._star_word(w2)
                for a1, c1 in s1.items():
                    for a2, c2 in s2.items():
                        key = (a1, a2)
                        s = starred_cop.get(key, ZERO) + c.conj() * c1 * c2
                        if s.is_zero:
                            starred_cop.pop(key, None)
                        else:
                            starred_cop[key] = s
            if starred_cop != self.coproduct(xs):
                failures.append(f"coproduct does not respect star on {name}")
        # multiplicativity of the coproduct across rules is covered by
        # _check_well_defined; spot-check products of generators
        for g in range(len(self.generators)):
            for h in range(len(self.generators)):
                x = self.mul({(g,): ONE}, {(h,): ONE})
                direct = self.coproduct(x)
                composed = self.tensor_mul(self.coproduct_table[g],
                                           self.coproduct_table[h])
                if direct != composed:
                    failures.append(
                        "coproduct is not multiplicative on "
                        f"{self.generators[g]}*{self.generators[h]}")
        return failures

    def require_valid(self, max_degree: int = 3, samples: int = 10_000,
                      seed: int = 0) -> None:
        failures = self.validate(max_degree, samples, seed)
        if failures:
            raise PresentationError("; ".join(failures))
