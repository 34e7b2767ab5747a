"""Line-oriented model file format.

    model <name> maxdeg <N>
    gen <id> deg <n> [step <J>]
    d <id> = <expr>
    # comment

An expression is a +/- separated sum of terms ``<rat>*g1^e1*...*gk^ek`` with
rationals written ``p/q`` or as integers.  A file may hold several models,
each opened by its own ``model`` line, plus morphism and homotopy blocks:

    morphism <name> : <source> -> <target>
    img <gen> = <expr>
    end

    homotopy <name> : <source> -> <target>
    img <gen> = <expr in target generators, t and dt>
    end

A ``recipe kind <kind> seed <s> [width <w>]`` line in place of generator
declarations asks the random sampler for the model.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .gca import AlgebraError, Element, Generator, GradedAlgebra, format_rational
from .model import MinimalModel, ModelError

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_']*)|(\^)|(\*)|([+-]))")
RESERVED = {"t", "dt"}


class ExpressionError(ValueError):
    pass


class ParseError(ValueError):
    """One or more positioned errors found while reading a model file."""

    def __init__(self, errors: Sequence[Tuple[int, str]]):
        self.errors = list(errors)
        super().__init__("\n".join(f"line {ln}: {msg}" for ln, msg in self.errors))


Term = Tuple[Fraction, List[Tuple[str, int]]]


def tokenize_terms(text: str) -> List[Term]:
    """Split an expression into (coefficient, [(symbol, exponent), ...]) terms."""
    pos = 0
    text = text.strip()
    if not text:
        raise ExpressionError("empty expression")
    terms: List[Term] = []
    sign = 1
    coef: Optional[Fraction] = None
    factors: List[Tuple[str, int]] = []
    expect_operand = True
    pending_star = False
    started = False

    def flush():
        c = coef if coef is not None else Fraction(1)
        terms.append((sign * c, list(factors)))

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExpressionError(f"unexpected character {text[pos:].strip()[:1]!r} in {text!r}")
        pos = m.end()
        num, ident, caret, star, pm = m.groups()
        if pm:
            if pending_star or (expect_operand and (terms or coef is not None or factors or started)):
                raise ExpressionError(f"unexpected {pm!r} in {text!r}")
            if expect_operand:
                sign = 1 if pm == "+" else -1
            else:
                flush()
                sign, coef, factors = (1 if pm == "+" else -1), None, []
                expect_operand = True
            started = True
        elif num:
            if not expect_operand:
                raise ExpressionError(f"missing operator before {num!r} in {text!r}")
            if factors or coef is not None:
                raise ExpressionError(f"coefficient {num!r} must lead its term in {text!r}")
            coef = Fraction(num)
            if coef.denominator == 0:
                raise ExpressionError("zero denominator")
            expect_operand, pending_star = False, False
        elif ident:
            if not expect_operand and not pending_star:
                raise ExpressionError(f"missing '*' before {ident!r} in {text!r}")
            factors.append((ident, 1))
            expect_operand, pending_star = False, False
        elif star:
            if expect_operand:
                raise ExpressionError(f"unexpected '*' in {text!r}")
            pending_star = True
            expect_operand = True
        elif caret:
            m2 = re.compile(r"\s*(\d+)").match(text, pos)
            if not factors or pending_star or not m2:
                raise ExpressionError(f"bad exponent in {text!r}")
            name, e = factors[-1]
            factors[-1] = (name, e * int(m2.group(1)))
            pos = m2.end()
    if expect_operand:
        raise ExpressionError(f"expression {text!r} ends with an operator")
    flush()
    return terms


def parse_expression(text: str, algebra: GradedAlgebra) -> Element:
    """Parse ``text`` into an element of ``algebra``."""
    out = algebra.zero()
    for coef, factors in tokenize_terms(text):
        term = algebra.scalar(coef)
        for name, e in factors:
            if name not in algebra.index:
                raise ExpressionError(f"unknown generator {name!r}")
            term = term * algebra.gen(name) ** e
        out = out + term
    return out


def format_element(elem) -> str:
    return str(elem)


# -- files ------------------------------------------------------------------

@dataclass
class MorphismSpec:
    name: str
    source: str
    target: str
    images: Dict[str, str] = field(default_factory=dict)
    kind: str = "morphism"
    line: int = 0


@dataclass
class ModelFile:
    models: Dict[str, MinimalModel] = field(default_factory=dict)
    morphisms: Dict[str, MorphismSpec] = field(default_factory=dict)
    homotopies: Dict[str, MorphismSpec] = field(default_factory=dict)

    @property
    def model(self) -> MinimalModel:
        """The first model in the file."""
        return next(iter(self.models.values()))


@dataclass
class _Block:
    name: str
    max_degree: int
    line: int
    gens: List[Tuple[int, Generator]] = field(default_factory=list)
    diffs: List[Tuple[int, str, str]] = field(default_factory=list)
    recipe: Optional[Dict[str, object]] = None


_MODEL = re.compile(r"^model\s+(\S+)\s+maxdeg\s+(\d+)$")
_GEN = re.compile(r"^gen\s+(\S+)\s+deg\s+(\d+)(?:\s+step\s+(\d+))?$")
_DIFF = re.compile(r"^d\s+(\S+)\s*=\s*(.+)$")
_MAP = re.compile(r"^(morphism|homotopy)\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$")
_IMG = re.compile(r"^img\s+(\S+)\s*=\s*(.+)$")
_RECIPE = re.compile(r"^recipe\s+(.+)$")
_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


def _parse_recipe(body: str) -> Dict[str, object]:
    words = body.split()
    if len(words) % 2:
        raise ExpressionError("recipe expects key/value pairs")
    recipe: Dict[str, object] = {}
    for key, value in zip(words[::2], words[1::2]):
        if key in recipe:
            raise ExpressionError(f"repeated recipe key {key!r}")
        if key == "kind":
            recipe[key] = value
        elif key in ("seed", "width"):
            if not value.isdigit():
                raise ExpressionError(f"recipe {key} must be a nonnegative integer")
            recipe[key] = int(value)
        else:
            raise ExpressionError(f"unknown recipe key {key!r}")
    if "kind" not in recipe or "seed" not in recipe:
        raise ExpressionError("recipe needs kind and seed")
    return recipe


def parse_file(text: str, strict: bool = True) -> ModelFile:
    """Parse a model file.

    With ``strict`` (the default) a differential with a word-length-1 term is
    reported as an error at its line; otherwise it is left for validation.
    """
    errors: List[Tuple[int, str]] = []
    blocks: List[_Block] = []
    maps: List[MorphismSpec] = []
    current_map: Optional[MorphismSpec] = None

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if current_map is not None:
            if line == "end":
                current_map = None
                continue
            m = _IMG.match(line)
            if not m:
                errors.append((ln, f"expected 'img <gen> = <expr>' or 'end' in {current_map.kind} block"))
                continue
            if m.group(1) in current_map.images:
                errors.append((ln, f"duplicate image for {m.group(1)!r}"))
                continue
            current_map.images[m.group(1)] = (ln, m.group(2).strip())
            continue
        m = _MODEL.match(line)
        if m:
            if any(b.name == m.group(1) for b in blocks):
                errors.append((ln, f"duplicate model name {m.group(1)!r}"))
            blocks.append(_Block(m.group(1), int(m.group(2)), ln))
            continue
        m = _MAP.match(line)
        if m:
            current_map = MorphismSpec(m.group(2), m.group(3), m.group(4), {}, m.group(1), ln)
            maps.append(current_map)
            continue
        if not blocks:
            errors.append((ln, "expected 'model <name> maxdeg <N>' first"))
            continue
        block = blocks[-1]
        m = _GEN.match(line)
        if m:
            name, deg, step = m.group(1), int(m.group(2)), m.group(3)
            if not _IDENT.match(name) or name in RESERVED:
                errors.append((ln, f"invalid generator id {name!r}"))
            elif any(g.name == name for _, g in block.gens):
                errors.append((ln, f"duplicate generator id {name!r}"))
            elif deg < 1:
                errors.append((ln, f"generator {name!r} must have positive degree"))
            elif deg > block.max_degree:
                errors.append((ln, f"generator {name!r} has degree {deg} above maxdeg {block.max_degree}"))
            elif step is not None and int(step) < 1:
                errors.append((ln, f"generator {name!r} has non-positive step"))
            else:
                block.gens.append((ln, Generator(name, deg, int(step) if step else None)))
            continue
        m = _DIFF.match(line)
        if m:
            block.diffs.append((ln, m.group(1), m.group(2).strip()))
            continue
        m = _RECIPE.match(line)
        if m:
            try:
                block.recipe = _parse_recipe(m.group(1))
            except ExpressionError as exc:
                errors.append((ln, str(exc)))
            continue
        errors.append((ln, f"cannot parse line {line!r}"))

    if current_map is not None:
        errors.append((current_map.line, f"{current_map.kind} block {current_map.name!r} has no 'end'"))

    out = ModelFile()
    for block in blocks:
        model = _build_block(block, errors, strict)
        if model is not None:
            out.models[block.name] = model
    for spec in maps:
        for role in ("source", "target"):
            ref = getattr(spec, role)
            if ref not in out.models and not any(b.name == ref for b in blocks):
                errors.append((spec.line, f"{spec.kind} {spec.name!r} refers to unknown model {ref!r}"))
        table = out.morphisms if spec.kind == "morphism" else out.homotopies
        if spec.name in out.morphisms or spec.name in out.homotopies:
            errors.append((spec.line, f"duplicate map name {spec.name!r}"))
        table[spec.name] = spec
    if not blocks and not errors:
        errors.append((1, "no model found"))
    if errors:
        raise ParseError(sorted(errors))
    return out


def _build_block(block: _Block, errors: List[Tuple[int, str]], strict: bool) -> Optional[MinimalModel]:
    if block.recipe is not None:
        if block.gens or block.diffs:
            errors.append((block.line, "a recipe model cannot also declare generators"))
            return None
        from .sampler import random_model

        rec = block.recipe
        try:
            return random_model(rec["seed"], kind=rec["kind"], max_degree=block.max_degree,
                                width=rec.get("width", 2), name=block.name)
        except ValueError as exc:
            errors.append((block.line, str(exc)))
            return None
    gens = [g for _, g in block.gens]
    alg = GradedAlgebra(gens)
    diffs: Dict[str, Element] = {}
    ok = True
    for ln, name, expr in block.diffs:
        if name not in alg.index:
            errors.append((ln, f"unknown generator {name!r}"))
            ok = False
            continue
        if name in diffs:
            errors.append((ln, f"duplicate differential for {name!r}"))
            ok = False
            continue
        try:
            value = parse_expression(expr, alg)
        except ExpressionError as exc:
            errors.append((ln, str(exc)))
            ok = False
            continue
        deg = alg.generators[alg.index[name]].degree
        if not value.is_homogeneous(deg + 1):
            found = ", ".join(str(x) for x in sorted(value.degrees()))
            errors.append((ln, f"degree mismatch: d {name} must have degree {deg + 1}, got degree {found}"))
            ok = False
            continue
        if strict and value and value.min_wordlength() < 2:
            errors.append((ln, f"word length 1 violates minimality in d {name}"))
            ok = False
            continue
        diffs[name] = value
    if not ok:
        return None
    try:
        return MinimalModel(block.name, gens, diffs, block.max_degree)
    except (ModelError, AlgebraError) as exc:
        errors.append((block.line, str(exc)))
        return None


def parse_model(text: str, strict: bool = True) -> MinimalModel:
    """Parse a file holding (at least) one model and return the first."""
    return parse_file(text, strict).model


def load_file(path, strict: bool = True) -> ModelFile:
    with open(path, encoding="utf-8") as fh:
        return parse_file(fh.read(), strict)


def load_model(path, strict: bool = True) -> MinimalModel:
    return load_file(path, strict).model


def print_model(model: MinimalModel) -> str:
    """Canonical text for a model (generators by degree then id)."""
    lines = [f"model {model.name} maxdeg {model.max_degree}"]
    if model.recipe is not None:
        rec = model.recipe
        lines.append(f"recipe kind {rec['kind']} seed {rec['seed']} width {rec.get('width', 2)}")
        return "\n".join(lines) + "\n"
    for g in model.generators:
        step = f" step {g.step}" if g.step is not None else ""
        lines.append(f"gen {g.name} deg {g.degree}{step}")
    for g in model.generators:
        dg = model.differential(g.name)
        if dg:
            lines.append(f"d {g.name} = {dg}")
    return "\n".join(lines) + "\n"


def parse_interval_expression(text: str, space):
    """Parse an expression in the target generators, ``t`` and ``dt``.

    Factors are multiplied in the order written, so ``x*dt`` and ``dt*x``
    differ by the Koszul sign of x.
    """
    alg = space.base.algebra
    out = space.zero()
    for coef, factors in tokenize_terms(text):
        term = space.one().scale(coef)
        for name, e in factors:
            if name == "t":
                factor = space.t(1)
            elif name == "dt":
                factor = space.dt_()
            elif name in alg.index:
                factor = space.const(alg.gen(name))
            else:
                raise ExpressionError(f"unknown generator {name!r}")
            for _ in range(e):
                term = term * factor
        out = out + term
    return out


def resolve_maps(mf: ModelFile):
    """Turn the morphism and homotopy blocks of a file into objects.

    Returns ``(morphisms, homotopies)`` keyed by name; problems are raised as
    a :class:`ParseError` with the offending lines.
    """
    from .homotopy import AlgebraicHomotopy, DgaMorphism, FreeDga, HomotopyError, IntervalAlgebra

    errors: List[Tuple[int, str]] = []
    morphisms, homotopies = {}, {}
    for spec in list(mf.morphisms.values()) + list(mf.homotopies.values()):
        src, tgt = mf.models[spec.source], mf.models[spec.target]
        target = FreeDga(tgt)
        space = IntervalAlgebra(target) if spec.kind == "homotopy" else None
        images = {}
        for gen, (ln, expr) in spec.images.items():
            if gen not in src.algebra.index:
                errors.append((ln, f"unknown generator {gen!r} in {spec.source}"))
                continue
            try:
                if space is not None:
                    images[gen] = parse_interval_expression(expr, space)
                else:
                    images[gen] = parse_expression(expr, tgt.algebra)
            except (ExpressionError, AlgebraError) as exc:
                errors.append((ln, str(exc)))
        if errors:
            continue
        try:
            phi = DgaMorphism(src, space or target, images, spec.name)
        except HomotopyError as exc:
            errors.append((spec.line, str(exc)))
            continue
        if space is not None:
            homotopies[spec.name] = AlgebraicHomotopy(phi)
        else:
            morphisms[spec.name] = phi
    if errors:
        raise ParseError(sorted(errors))
    return morphisms, homotopies


def print_file(mf: ModelFile) -> str:
    chunks = [print_model(m) for m in mf.models.values()]
    resolved = {}
    if mf.morphisms or mf.homotopies:
        morphisms, homotopies = resolve_maps(mf)
        resolved.update(morphisms)
        resolved.update({k: h.morphism for k, h in homotopies.items()})
    for spec in list(mf.morphisms.values()) + list(mf.homotopies.values()):
        body = [f"{spec.kind} {spec.name} : {spec.source} -> {spec.target}"]
        phi = resolved[spec.name]
        for g in mf.models[spec.source].generators:
            if g.name in phi.images:
                body.append(f"img {g.name} = {phi.images[g.name]}")
        body.append("end")
        chunks.append("\n".join(body) + "\n")
    return "\n".join(chunks)


def canonical(text: str) -> str:
    return print_file(parse_file(text))


# -- bundled corpus ---------------------------------------------------------------

BUNDLED = ("s2.sm", "s3.sm", "heisenberg.sm", "three_step.sm", "cubic.sm", "random_recipe.sm")
FIXTURES = {
    "minimality.sm": (2, "word length 1 violates minimality"),
    "d_squared.sm": (1, "d^2 != 0"),
    "non_nilpotent.sm": (1, "nilpotence condition fails"),
    "unknown_generator.sm": (2, "unknown generator"),
    "duplicate.sm": (2, "duplicate generator id"),
    "degree_mismatch.sm": (2, "degree mismatch"),
}


def data_path(name: str):
    """Path of a bundled file (``name`` may include ``fixtures/``)."""
    from importlib.resources import files

    return files("sullivan").joinpath("data", *name.split("/"))


def read_source(ref: str) -> Tuple[str, str]:
    """(text, label) for a path on disk or, failing that, a bundled file name."""
    import os

    if os.path.exists(ref):
        with open(ref, encoding="utf-8") as fh:
            return fh.read(), ref
    for cand in (ref, f"{ref}.sm", f"fixtures/{ref}"):
        p = data_path(cand)
        if p.is_file():
            return p.read_text(encoding="utf-8"), cand
    raise FileNotFoundError(ref)


def bundled_models() -> Dict[str, MinimalModel]:
    out = {}
    for name in BUNDLED:
        m = parse_model(data_path(name).read_text(encoding="utf-8"))
        out[m.name] = m
    return out


__all__ = [
    "ExpressionError", "ParseError", "ModelFile", "MorphismSpec", "parse_expression", "parse_file",
    "parse_model", "load_file", "load_model", "print_model", "print_file", "canonical",
    "tokenize_terms", "format_rational", "parse_interval_expression", "resolve_maps",
    "BUNDLED", "FIXTURES", "data_path", "read_source", "bundled_models",
]
