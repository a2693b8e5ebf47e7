"""Preset documents: complete model descriptions as plain text.

A preset bundles a presented Hopf *-algebra, the first-order calculus
tables, corepresentation matrices, and options into one file with four
sections:

    [hopf]            generators, rules, coproduct, counit, antipode, star
    [calculus]        forms, germ, circ, rep
    [representations] matrix, conjugation, braid
    [options]         name, max-degree, volume-normalization

Within a section each line is ``key = value``; keys may repeat where a
table has one line per entry.  Unknown sections or keys are rejected.

Expressions use the grammar

    expr   := [+|-] tensor ((+|-) tensor)*
    tensor := term (@ term)*
    term   := factor (* factor)*
    factor := atom (^ int)?
    atom   := number | name | ( expr )

with integer numbers, ``@`` the tensor product and ``^`` powers (the
exponent may be negative, so inverses are written like ``lam^-1`` and
rationals like ``3*2^-1``).  Names resolve to the scalar parameters
(mu, lam, nu), algebra generators, or form names depending on where the
expression appears.  Matrices are written ``(e11, e12; e21, e22)`` in
row-major layout.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .calculus import Calculus
from .hopf import Element, HopfAlgebra, Tensor, Word
from .scalar import ONE, ZERO, PARAMETER_NAMES, Scalar, from_fraction, parameter

PRESET_DIR_ENV = "QCHERN_PRESET_DIR"
_DATA_DIR = os.path.join(os.path.dirname(__file__), "data")

_SECTIONS = ("hopf", "calculus", "representations", "options")
_SECTION_KEYS = {
    "hopf": {"generators", "rule", "coproduct", "counit", "antipode",
             "star"},
    "calculus": {"forms", "germ", "circ", "rep"},
    "representations": {"matrix", "conjugation", "braid"},
    "options": {"name", "max-degree", "volume-normalization"},
}


class PresetError(ValueError):
    """A malformed preset document."""


# -- expression parsing ------------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z0-9_]*|\^|\*|@|\+|-|\(|\))")


def _tokenize(text: str) -> List[str]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise PresetError(f"cannot read expression near "
                                  f"{text[pos:pos + 12]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self) -> Optional[str]:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise PresetError("unexpected end of expression")
        self.pos += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        node = self.tensor()
        if sign < 0:
            node = ("neg", node)
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.tensor()
            node = ("add", node, ("neg", rhs) if op == "-" else rhs)
        return node

    def tensor(self):
        node = self.term()
        while self.peek() == "@":
            self.take()
            node = ("tensor", node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek() == "*":
            self.take()
            node = ("mul", node, self.factor())
        return node

    def factor(self):
        node = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            tok = self.take()
            if not tok.isdigit():
                raise PresetError(f"exponent must be an integer, got {tok!r}")
            node = ("pow", node, sign * int(tok))
        return node

    def atom(self):
        tok = self.take()
        if tok.isdigit():
            return ("num", int(tok))
        if tok == "(":
            node = self.expr()
            if self.take() != ")":
                raise PresetError("missing closing parenthesis")
            return node
        if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            return ("name", tok)
        raise PresetError(f"unexpected token {tok!r}")


def parse_expression(text: str):
    p = _Parser(text)
    node = p.expr()
    if p.peek() is not None:
        raise PresetError(f"trailing input in expression: "
                          f"{' '.join(p.toks[p.pos:])!r}")
    return node


# -- evaluation --------------------------------------------------------------
#
# Values are tagged: ("scalar", Scalar), ("alg", legs, dict) where legs=1
# holds an Element keyed by words and legs>=2 a Tensor keyed by word
# tuples, and ("form", Vec).


def _as_scalar(value) -> Optional[Scalar]:
    if value[0] == "scalar":
        return value[1]
    return None


class _Env:
    """Name resolution for one expression context."""

    def __init__(self, hopf: Optional[HopfAlgebra] = None,
                 forms: Sequence[str] = ()):
        self.hopf = hopf
        self.forms = tuple(forms)

    def lookup(self, name: str):
        if name in PARAMETER_NAMES:
            return ("scalar", parameter(name))
        if self.hopf is not None and name in self.hopf.generators:
            return ("alg", 1, self.hopf.gen(name))
        if name in self.forms:
            return ("form", {self.forms.index(name): ONE})
        raise PresetError(f"unknown name {name!r} in expression")

    def evaluate(self, node):
        kind = node[0]
        if kind == "num":
            return ("scalar", from_fraction(node[1]))
        if kind == "name":
            return self.lookup(node[1])
        if kind == "neg":
            return self._scale(from_fraction(-1), self.evaluate(node[1]))
        if kind == "add":
            return self._add(self.evaluate(node[1]), self.evaluate(node[2]))
        if kind == "mul":
            return self._mul(self.evaluate(node[1]), self.evaluate(node[2]))
        if kind == "tensor":
            return self._tensor(self.evaluate(node[1]),
                                self.evaluate(node[2]))
        if kind == "pow":
            return self._pow(self.evaluate(node[1]), node[2])
        raise PresetError(f"bad expression node {kind!r}")

    def _scale(self, c: Scalar, v):
        if v[0] == "scalar":
            return ("scalar", c * v[1])
        if v[0] == "alg":
            return ("alg", v[1], {k: c * x for k, x in v[2].items()}
                    if not c.is_zero else {})
        return ("form", {k: c * x for k, x in v[1].items()}
                if not c.is_zero else {})

    def _add(self, a, b):
        if a[0] == "scalar" and b[0] == "scalar":
            return ("scalar", a[1] + b[1])
        # constants embed into the algebra as multiples of the unit
        if a[0] == "scalar" and b[0] == "alg":
            a = self._promote(a, b[1])
        if b[0] == "scalar" and a[0] == "alg":
            b = self._promote(b, a[1])
        if a[0] != b[0]:
            raise PresetError("cannot add values of different kinds")
        if a[0] == "alg":
            if a[1] != b[1]:
                raise PresetError("cannot add tensors with different "
                                  "numbers of legs")
            out = dict(a[2])
            for k, c in b[2].items():
                s = out.get(k)
                s = c if s is None else s + c
                if s.is_zero:
                    out.pop(k, None)
                else:
                    out[k] = s
            return ("alg", a[1], out)
        out = dict(a[1])
        for k, c in b[1].items():
            s = out.get(k)
            s = c if s is None else s + c
            if s.is_zero:
                out.pop(k, None)
            else:
                out[k] = s
        return ("form", out)

    def _promote(self, scal, legs: int):
        key: Union[Word, Tuple[Word, ...]] = (() if legs == 1
                                              else ((),) * legs)
        if scal[1].is_zero:
            return ("alg", legs, {})
        return ("alg", legs, {key: scal[1]})

    def _mul(self, a, b):
        sa, sb = _as_scalar(a), _as_scalar(b)
        if sa is not None and sb is not None:
            return ("scalar", sa * sb)
        if sa is not None:
            return self._scale(sa, b)
        if sb is not None:
            return self._scale(sb, a)
        if a[0] == "alg" and b[0] == "alg":
            if a[1] != b[1]:
                raise PresetError("cannot multiply tensors with different "
                                  "numbers of legs")
            if a[1] == 1:
                return ("alg", 1, self.hopf.mul(a[2], b[2]))
            return ("alg", a[1], self.hopf.tensor_mul(a[2], b[2]))
        raise PresetError("forms cannot be multiplied together")

    def _tensor(self, a, b):
        if a[0] == "scalar":
            a = self._promote(a, 1)
        if b[0] == "scalar":
            b = self._promote(b, 1)
        if a[0] != "alg" or b[0] != "alg":
            raise PresetError("tensor products only join algebra elements")
        la, lb = a[1], b[1]
        keys_a = a[2].items()
        keys_b = b[2].items()
        out: Dict = {}
        for ka, ca in keys_a:
            ta = (ka,) if la == 1 else ka
            for kb, cb in keys_b:
                tb = (kb,) if lb == 1 else kb
                out[ta + tb] = ca * cb
        return ("alg", la + lb, out)

    def _pow(self, a, n: int):
        if a[0] == "scalar":
            return ("scalar", a[1] ** n)
        if a[0] == "alg" and a[1] == 1:
            if n < 0:
                raise PresetError("algebra elements cannot be inverted")
            return ("alg", 1, self.hopf.power(a[2], n))
        raise PresetError("cannot raise this value to a power")


def _eval_scalar(env: _Env, text: str) -> Scalar:
    v = env.evaluate(parse_expression(text))
    if v[0] == "scalar":
        return v[1]
    raise PresetError(f"expected a scalar, got {text!r}")


def _eval_element(env: _Env, text: str) -> Element:
    v = env.evaluate(parse_expression(text))
    if v[0] == "scalar":
        return {} if v[1].is_zero else {(): v[1]}
    if v[0] == "alg" and v[1] == 1:
        return v[2]
    raise PresetError(f"expected an algebra element, got {text!r}")


def _eval_tensor2(env: _Env, text: str) -> Tensor:
    v = env.evaluate(parse_expression(text))
    if v[0] == "alg" and v[1] == 2:
        return v[2]
    if v[0] == "scalar" and v[1].is_zero:
        return {}
    raise PresetError(f"expected a two-leg tensor, got {text!r}")


def _eval_form(env: _Env, text: str) -> Dict[int, Scalar]:
    v = env.evaluate(parse_expression(text))
    if v[0] == "form":
        return v[1]
    if v[0] == "scalar" and v[1].is_zero:
        return {}
    raise PresetError(f"expected a combination of forms, got {text!r}")


def _split_top(text: str, sep: str) -> List[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


def _parse_matrix(text: str) -> List[List[str]]:
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise PresetError("matrices must be wrapped in parentheses")
    inner = text[1:-1]
    rows = [_split_top(r, ",") for r in _split_top(inner, ";")]
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise PresetError("matrix rows have uneven lengths")
    return [[cell.strip() for cell in row] for row in rows]


# -- documents ----------------------------------------------------------------


@dataclass
class RepData:
    """A corepresentation matrix with optional auxiliary structure."""

    matrix: Tuple[Tuple[Element, ...], ...]
    conjugation: Optional[Tuple[Tuple[Scalar, ...], ...]] = None
    braid: Optional[Tuple[Tuple[Scalar, ...], ...]] = None


@dataclass
class Preset:
    name: str
    hopf: HopfAlgebra
    calculus: Calculus
    representations: Dict[str, RepData] = field(default_factory=dict)
    options: Dict[str, str] = field(default_factory=dict)

    def validate(self, max_degree: int = 3, samples: int = 10_000,
                 seed: int = 0) -> List[str]:
        failures = self.hopf.validate(max_degree, samples, seed)
        failures.extend(self.calculus.validate(max_degree))
        return failures


def _section_lines(text: str) -> Dict[str, List[Tuple[str, str]]]:
    sections: Dict[str, List[Tuple[str, str]]] = {}
    current: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if current not in _SECTIONS:
                raise PresetError(f"line {lineno}: unknown section "
                                  f"[{current}]")
            sections.setdefault(current, [])
            continue
        if current is None:
            raise PresetError(f"line {lineno}: content before any section")
        if "=" not in line:
            raise PresetError(f"line {lineno}: expected key = value")
        key, value = line.split("=", 1)
        key = key.strip()
        if key not in _SECTION_KEYS[current]:
            raise PresetError(f"line {lineno}: unknown key {key!r} in "
                              f"[{current}]")
        sections[current].append((key, value.strip()))
    return sections


def _arrow_split(value: str, context: str) -> Tuple[str, str]:
    parts = value.split("->")
    if len(parts) != 2:
        raise PresetError(f"{context}: expected exactly one '->'")
    return parts[0].strip(), parts[1].strip()


def parse_preset(text: str, fallback_name: str = "preset") -> Preset:
    sections = _section_lines(text)
    for required in ("hopf", "calculus"):
        if required not in sections:
            raise PresetError(f"missing required section [{required}]")

    # ---- hopf ----
    entries = sections["hopf"]
    generators: List[str] = []
    for key, value in entries:
        if key == "generators":
            if generators:
                raise PresetError("generators given twice")
            generators = value.split()
    if not generators:
        raise PresetError("the [hopf] section needs a generators line")
    bare = HopfAlgebra(
        generators, rules={},
        coproduct={g: {((g,), (g,)): ONE} for g in range(len(generators))},
        counit={g: ONE for g in range(len(generators))},
        antipode={g: {(g,): ONE} for g in range(len(generators))},
        star={g: {(g,): ONE} for g in range(len(generators))})
    env = _Env(hopf=bare)

    def word_of(el: Element, context: str) -> Word:
        if len(el) != 1:
            raise PresetError(f"{context}: left side must be a single word")
        word, coeff = next(iter(el.items()))
        if coeff != ONE:
            raise PresetError(f"{context}: left side must have "
                              "coefficient one")
        return word

    rules: Dict[Word, Element] = {}
    coproduct: Dict[int, Tensor] = {}
    counit: Dict[int, Scalar] = {}
    antipode: Dict[int, Element] = {}
    star: Dict[int, Element] = {}
    for key, value in entries:
        if key == "generators":
            continue
        lhs_text, rhs_text = _arrow_split(value, key)
        if key == "rule":
            lhs = word_of(_eval_element(env, lhs_text), "rule")
            if lhs in rules:
                raise PresetError(f"rule for {lhs_text!r} given twice")
            rules[lhs] = _eval_element(env, rhs_text)
            continue
        gen_el = _eval_element(env, lhs_text)
        word = word_of(gen_el, key)
        if len(word) != 1:
            raise PresetError(f"{key}: left side must be one generator")
        g = word[0]
        table = {"coproduct": coproduct, "counit": counit,
                 "antipode": antipode, "star": star}[key]
        if g in table:
            raise PresetError(f"{key} for {lhs_text!r} given twice")
        if key == "coproduct":
            coproduct[g] = _eval_tensor2(env, rhs_text)
        elif key == "counit":
            counit[g] = _eval_scalar(env, rhs_text)
        elif key == "antipode":
            antipode[g] = _eval_element(env, rhs_text)
        elif key == "star":
            star[g] = _eval_element(env, rhs_text)
    hopf = HopfAlgebra(generators, rules, coproduct, counit, antipode, star)
    env = _Env(hopf=hopf)

    # ---- calculus ----
    entries = sections["calculus"]
    forms: List[str] = []
    for key, value in entries:
        if key == "forms":
            if forms:
                raise PresetError("forms given twice")
            forms = value.split()
    if not forms:
        raise PresetError("the [calculus] section needs a forms line")
    fenv = _Env(hopf=hopf, forms=forms)
    pi_gen: Dict[int, Dict[int, Scalar]] = {}
    circ_rows: Dict[int, Dict[int, Dict[int, Scalar]]] = {}
    representatives: Dict[int, Element] = {}
    for key, value in entries:
        if key == "forms":
            continue
        lhs_text, rhs_text = _arrow_split(value, key)
        if key == "germ":
            g = word_of(_eval_element(env, lhs_text), "germ")[0]
            if g in pi_gen:
                raise PresetError(f"germ for {lhs_text!r} given twice")
            pi_gen[g] = _eval_form(fenv, rhs_text)
        elif key == "rep":
            if lhs_text not in forms:
                raise PresetError(f"rep: unknown form {lhs_text!r}")
            if forms.index(lhs_text) in representatives:
                raise PresetError(f"rep for {lhs_text!r} given twice")
            representatives[forms.index(lhs_text)] = _eval_element(
                env, rhs_text)
        elif key == "circ":
            sides = re.split(r"\s+o\s+", lhs_text)
            if len(sides) != 2:
                raise PresetError("circ: left side must be 'form o "
                                  "generator'")
            fname, gname = sides[0].strip(), sides[1].strip()
            if fname not in forms:
                raise PresetError(f"circ: unknown form {fname!r}")
            g = word_of(_eval_element(env, gname), "circ")[0]
            row = circ_rows.setdefault(g, {})
            if forms.index(fname) in row:
                raise PresetError(f"circ for {fname} o {gname} given twice")
            row[forms.index(fname)] = _eval_form(fenv, rhs_text)
    n = len(forms)
    circ_gen = {}
    for g in range(len(generators)):
        rows = circ_rows.get(g, {})
        if set(rows) != set(range(n)):
            raise PresetError(
                f"circ table for generator {generators[g]!r} is incomplete")
        circ_gen[g] = tuple(tuple(rows[i].get(j, ZERO) for j in range(n))
                            for i in range(n))
    for g in range(len(generators)):
        if g not in pi_gen:
            raise PresetError(f"missing germ line for generator "
                              f"{generators[g]!r}")
    calculus = Calculus(hopf, forms, pi_gen, circ_gen, representatives)

    # ---- representations ----
    reps: Dict[str, RepData] = {}
    matrices: Dict[str, List[List[str]]] = {}
    conjugations: Dict[str, List[List[str]]] = {}
    braids: Dict[str, List[List[str]]] = {}
    for key, value in sections.get("representations", []):
        name, _, matrix_text = value.partition(":")
        name = name.strip()
        if not name or not matrix_text.strip():
            raise PresetError(f"{key}: expected 'name : (matrix)'")
        cells = _parse_matrix(matrix_text.strip())
        {"matrix": matrices, "conjugation": conjugations,
         "braid": braids}[key][name] = cells
    for name, cells in matrices.items():
        dim = len(cells)
        if any(len(r) != dim for r in cells):
            raise PresetError(f"representation {name!r} must be square")
        matrix = tuple(tuple(_eval_element(env, cell) for cell in row)
                       for row in cells)
        conj = None
        if name in conjugations:
            conj = tuple(tuple(_eval_scalar(env, cell) for cell in row)
                         for row in conjugations[name])
            if len(conj) != dim or any(len(r) != dim for r in conj):
                raise PresetError(f"conjugation for {name!r} has the "
                                  "wrong shape")
        braid = None
        if name in braids:
            braid = tuple(tuple(_eval_scalar(env, cell) for cell in row)
                          for row in braids[name])
            if len(braid) != dim * dim or any(len(r) != dim * dim
                                              for r in braid):
                raise PresetError(f"braid for {name!r} must be "
                                  f"{dim * dim}x{dim * dim}")
        reps[name] = RepData(matrix, conj, braid)
    for name in set(conjugations) | set(braids):
        if name not in matrices:
            raise PresetError(f"auxiliary data for unknown representation "
                              f"{name!r}")

    # ---- options ----
    options: Dict[str, str] = {}
    for key, value in sections.get("options", []):
        if key in options:
            raise PresetError(f"option {key!r} given twice")
        options[key] = value
    if "max-degree" in options and not options["max-degree"].isdigit():
        raise PresetError("max-degree must be a nonnegative integer")
    name = options.get("name", fallback_name)
    return Preset(name, hopf, calculus, reps, options)


# -- serialization -------------------------------------------------------------


def _coeff_text(value) -> str:
    """Ground coefficient (an exact rational) in grammar-conformant form."""
    num, den = value.numerator, value.denominator
    if den == 1:
        return str(num)
    return f"{num}*{den}^-1"


def _poly_text(terms) -> str:
    parts = []
    for monom, coeff in terms:
        factors = []
        ctext = _coeff_text(coeff)
        for name, power in zip(PARAMETER_NAMES, monom):
            if power == 1:
                factors.append(name)
            elif power != 0:
                factors.append(f"{name}^{power}")
        if not factors:
            parts.append(ctext)
        elif ctext == "1":
            parts.append("*".join(factors))
        elif ctext == "-1":
            parts.append("-" + "*".join(factors))
        else:
            parts.append("*".join([ctext] + factors))
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def scalar_text(s: Scalar) -> str:
    """Canonical grammar-conformant rendering of a scalar."""
    num_terms, den_terms = s.fraction_terms()
    ntext = _poly_text(num_terms)
    trivial_denom = den_terms == [((0,) * len(PARAMETER_NAMES), 1)]
    if trivial_denom:
        if " " in ntext:
            return f"({ntext})"
        return ntext
    dtext = _poly_text(den_terms)
    return f"({ntext})*({dtext})^-1"


def _term_scaled(coeff: Scalar, body: str) -> str:
    ctext = scalar_text(coeff)
    if ctext == "1":
        return body
    if ctext == "-1":
        return "-" + body
    return f"{ctext}*{body}"


def _join_terms(parts: List[str]) -> str:
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def element_text(hopf: HopfAlgebra, x: Element) -> str:
    parts = []
    for w in sorted(x, key=lambda w: (len(w), w)):
        body = "*".join(hopf.generators[g] for g in w) if w else "1"
        if not w:
            parts.append(scalar_text(x[w]))
        else:
            parts.append(_term_scaled(x[w], body))
    return _join_terms(parts)


def tensor2_text(hopf: HopfAlgebra, t: Tensor) -> str:
    parts = []
    for key in sorted(t, key=lambda k: tuple((len(w), w) for w in k)):
        legs = []
        for w in key:
            body = ("*".join(hopf.generators[g] for g in w)) if w else "1"
            legs.append(body)
        parts.append(_term_scaled(t[key], "@".join(legs)))
    return _join_terms(parts)


def form_text(forms: Sequence[str], vec: Mapping[int, Scalar]) -> str:
    parts = [_term_scaled(vec[i], forms[i]) for i in sorted(vec)]
    return _join_terms(parts)


def serialize_preset(preset: Preset) -> str:
    hopf, cal = preset.hopf, preset.calculus
    lines: List[str] = ["[hopf]"]
    lines.append("generators = " + " ".join(hopf.generators))
    for lhs in sorted(hopf.rules, key=lambda w: (len(w), w)):
        lhs_text = "*".join(hopf.generators[g] for g in lhs)
        lines.append(f"rule = {lhs_text} -> "
                     f"{element_text(hopf, hopf.rules[lhs])}")
    for g, name in enumerate(hopf.generators):
        lines.append(f"coproduct = {name} -> "
                     f"{tensor2_text(hopf, hopf.coproduct_table[g])}")
    for g, name in enumerate(hopf.generators):
        lines.append(f"counit = {name} -> "
                     f"{scalar_text(hopf.counit_table[g])}")
    for g, name in enumerate(hopf.generators):
        lines.append(f"antipode = {name} -> "
                     f"{element_text(hopf, hopf.antipode_table[g])}")
    for g, name in enumerate(hopf.generators):
        lines.append(f"star = {name} -> "
                     f"{element_text(hopf, hopf.star_table[g])}")

    lines.append("")
    lines.append("[calculus]")
    forms = cal.basis_names
    lines.append("forms = " + " ".join(forms))
    for g, name in enumerate(hopf.generators):
        lines.append(f"germ = {name} -> {form_text(forms, cal.pi_gen[g])}")
    for g, name in enumerate(hopf.generators):
        m = cal.circ_gen[g]
        for i in range(cal.n):
            row = {j: m[i][j] for j in range(cal.n) if not m[i][j].is_zero}
            lines.append(f"circ = {forms[i]} o {name} -> "
                         f"{form_text(forms, row)}")
    for i in range(cal.n):
        lines.append(f"rep = {forms[i]} -> "
                     f"{element_text(hopf, cal.representatives[i])}")

    if preset.representations:
        lines.append("")
        lines.append("[representations]")
        for name in sorted(preset.representations):
            rep = preset.representations[name]
            rows = "; ".join(
                ", ".join(element_text(hopf, cell) for cell in row)
                for row in rep.matrix)
            lines.append(f"matrix = {name} : ({rows})")
            if rep.conjugation is not None:
                rows = "; ".join(", ".join(scalar_text(cell) for cell in row)
                                 for row in rep.conjugation)
                lines.append(f"conjugation = {name} : ({rows})")
            if rep.braid is not None:
                rows = "; ".join(", ".join(scalar_text(cell) for cell in row)
                                 for row in rep.braid)
                lines.append(f"braid = {name} : ({rows})")

    lines.append("")
    lines.append("[options]")
    options = dict(preset.options)
    options.setdefault("name", preset.name)
    for key in sorted(options):
        lines.append(f"{key} = {options[key]}")
    return "\n".join(lines) + "\n"


# -- loading -------------------------------------------------------------------


def preset_search_dirs() -> List[str]:
    dirs = []
    env = os.environ.get(PRESET_DIR_ENV)
    if env:
        dirs.append(env)
    dirs.append(_DATA_DIR)
    return dirs


def available_presets() -> List[str]:
    names = set()
    for d in preset_search_dirs():
        if os.path.isdir(d):
            for fn in os.listdir(d):
                if fn.endswith(".preset"):
                    names.add(fn[:-len(".preset")])
    return sorted(names)


def load_preset(name: str) -> Preset:
    """Load a preset by name (searching the preset dirs) or by path."""
    if os.path.sep in name or name.endswith(".preset"):
        path = name
    else:
        path = None
        for d in preset_search_dirs():
            cand = os.path.join(d, name + ".preset")
            if os.path.isfile(cand):
                path = cand
                break
        if path is None:
            raise PresetError(
                f"no preset named {name!r}; available: "
                f"{', '.join(available_presets()) or 'none'}")
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    fallback = os.path.splitext(os.path.basename(path))[0]
    return parse_preset(text, fallback_name=fallback)
