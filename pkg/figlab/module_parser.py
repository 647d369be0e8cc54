"""
Parser for module files (JSON presentations or raw windowed data).
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np
from pydantic import ValidationError

from .errors import FigLabError, ModuleFileError
from .groups import (
    FiniteGroup,
    GnElement,
    RepMatrices,
    generator_letters,
    regular_rep,
    sign_rep,
    trivial_group,
    trivial_rep,
    validate_rep,
)
from .linalg import FieldSpec
from .models import ModuleFile, RelationSpec, RepSpec, TermSpec
from .modules import (
    Presentation,
    RelationSlot,
    TruncatedFiGModule,
    generator_module,
    module_from_reps,
    subset_basis,
    subset_index,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ParsedModule:
    """A named module source: a presentation or raw windowed data."""
    name: str
    source: Union[Presentation, TruncatedFiGModule]
    window: Optional[int] = None


class ModuleFileParser:
    """Turns module files into presentations or windowed modules."""

    def load_text(self, text: str, origin: str = "<inline>") -> ModuleFile:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ModuleFileError(origin, f"line {e.lineno} column {e.colno}", e.msg)
        return self.load_data(data, origin)

    def load_data(self, data: Any, origin: str = "<inline>") -> ModuleFile:
        try:
            return ModuleFile.model_validate(data)
        except ValidationError as e:
            first = e.errors()[0]
            location = "/".join(str(x) for x in first["loc"]) or "<root>"
            raise ModuleFileError(origin, location, first["msg"])

    def parse_file(self, path: Union[str, Path]) -> ParsedModule:
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as e:
            raise ModuleFileError(str(path), "<file>", str(e))
        spec = self.load_text(text, str(path))
        return self.build(spec, str(path), default_name=path.stem)

    def parse_text(self, text: str, origin: str = "<inline>") -> ParsedModule:
        return self.build(self.load_text(text, origin), origin)

    def parse_data(self, data: Any, origin: str = "<inline>") -> ParsedModule:
        return self.build(self.load_data(data, origin), origin)

    # -- building ----------------------------------------------------------

    def build(self, spec: ModuleFile, origin: str, default_name: str = "module") -> ParsedModule:
        name = spec.name or default_name
        try:
            field = self._field(spec)
            group = self._group(spec)
            if spec.mode == "raw":
                source = self._raw(spec, field, group, origin)
            else:
                source = self._presentation(spec, field, group, origin)
        except ModuleFileError:
            raise
        except FigLabError as e:
            raise ModuleFileError(origin, "<content>", str(e)) from e
        logger.debug(f"Parsed {origin} as {name}")
        return ParsedModule(name, source, spec.window)

    def _field(self, spec: ModuleFile) -> FieldSpec:
        if spec.field == "Q":
            return FieldSpec.rationals()
        return FieldSpec.prime(spec.field["Fp"])

    def _group(self, spec: ModuleFile) -> FiniteGroup:
        if spec.group is None:
            return trivial_group()
        g = spec.group
        return FiniteGroup(g.order, tuple(tuple(r) for r in g.mul), tuple(g.generators))

    def _element(self, field: FieldSpec, value) -> object:
        if isinstance(value, int) and not isinstance(value, bool):
            return field.coerce(value)
        return field.parse(value)

    def _matrix(self, field: FieldSpec, rows, shape: tuple[int, int], where: str, origin: str) -> np.ndarray:
        if len(rows) != shape[0] or any(len(r) != shape[1] for r in rows):
            raise ModuleFileError(origin, where, f"expected a {shape[0]}x{shape[1]} matrix")
        out = field.zeros(*shape)
        for i, row in enumerate(rows):
            for j, entry in enumerate(row):
                out[i, j] = self._element(field, entry)
        return out

    def _rep(self, field: FieldSpec, group: FiniteGroup, n: int, rep, where: str,
             origin: str) -> RepMatrices:
        if rep == "trivial":
            return trivial_rep(field, group, n)
        if rep == "sign":
            return sign_rep(field, group, n)
        if rep == "regular":
            return regular_rep(field, group, n)
        letters = generator_letters(group.num_generators, n)
        if len(rep.mats) != len(letters):
            raise ModuleFileError(origin, f"{where}/mats",
                                  f"degree {n} needs {len(letters)} matrices, got {len(rep.mats)}")
        mats = tuple(self._matrix(field, m, (rep.dim, rep.dim), f"{where}/mats/{k}", origin)
                     for k, m in enumerate(rep.mats))
        out = RepMatrices(field, group, n, rep.dim, mats)
        validate_rep(out)
        return out

    def _presentation(self, spec: ModuleFile, field: FieldSpec, group: FiniteGroup,
                      origin: str) -> Presentation:
        generators = tuple(self._rep(field, group, g.degree, g.rep, f"generators/{i}/rep", origin)
                           for i, g in enumerate(spec.generators))
        partial = Presentation(field, group, generators)
        relations = tuple(self._relation(partial, r, f"relations/{j}", origin)
                          for j, r in enumerate(spec.relations))
        return Presentation(field, group, generators, relations)

    def _relation(self, partial: Presentation, spec: RelationSpec, where: str,
                  origin: str) -> RelationSlot:
        field, group, a = partial.field, partial.group, spec.degree
        rep = self._rep(field, group, a, spec.rep, f"{where}/rep", origin)
        ambient = generator_module(partial, a)
        size = ambient.dims[a]
        if spec.map.columns is not None:
            if len(spec.map.columns) != rep.dim:
                raise ModuleFileError(origin, f"{where}/map/columns",
                                      f"expected {rep.dim} columns, got {len(spec.map.columns)}")
            image = field.zeros(size, rep.dim)
            for c, column in enumerate(spec.map.columns):
                image[:, c] = self._vector(partial, a, column.terms, f"{where}/map/columns/{c}", origin)
            return RelationSlot(rep, image)
        if spec.map.terms is None:
            raise ModuleFileError(origin, f"{where}/map", "needs terms or columns")
        x = self._vector(partial, a, spec.map.terms, f"{where}/map/terms", origin)
        if rep.dim == 1:
            return RelationSlot(rep, x.reshape(-1, 1))
        if spec.rep != "regular":
            raise ModuleFileError(origin, f"{where}/map",
                                  "a single image needs a one-dimensional or regular relation rep")
        # regular U: e_h goes to h.x
        evaluate = ambient.rep(a).evaluator()
        elements = ambient.context.elements(a)
        image = field.zeros(size, len(elements))
        for k, h in enumerate(elements):
            image[:, k] = field.matmul(evaluate(h), x.reshape(-1, 1))[:, 0]
        return RelationSlot(rep, image)

    def _vector(self, partial: Presentation, a: int, terms: list[TermSpec], where: str,
                origin: str) -> np.ndarray:
        field = partial.field
        gens = partial.generators
        sizes = [len(subset_basis(a, w.n)) * w.dim if a >= w.n else 0 for w in gens]
        offsets = np.cumsum([0] + sizes)
        out = field.zeros(int(offsets[-1]))
        for t, term in enumerate(terms):
            here = f"{where}/{t}"
            if term.gen >= len(gens):
                raise ModuleFileError(origin, f"{here}/gen", f"no generator {term.gen}")
            W = gens[term.gen]
            b = W.n
            subset = tuple(x - 1 for x in term.subset)
            if len(subset) != b or list(subset) != sorted(set(subset)) or any(not 0 <= x < a for x in subset):
                raise ModuleFileError(origin, f"{here}/subset",
                                      f"need {b} increasing points in 1..{a}")
            perm = tuple(x - 1 for x in term.perm) if term.perm is not None else tuple(range(b))
            if sorted(perm) != list(range(b)):
                raise ModuleFileError(origin, f"{here}/perm", f"not a permutation of 1..{b}")
            dec = tuple(term.dec) if term.dec is not None else (0,) * b
            if len(dec) != b or any(not 0 <= g < partial.group.order for g in dec):
                raise ModuleFileError(origin, f"{here}/dec", "bad decoration list")
            if term.w >= W.dim:
                raise ModuleFileError(origin, f"{here}/w", f"basis index out of range for dim {W.dim}")
            h = W.evaluator()(GnElement(perm, dec))
            block = offsets[term.gen] + subset_index(a, b)[subset] * W.dim
            coeff = self._element(field, term.coeff)
            out[block:block + W.dim] = field.add(out[block:block + W.dim],
                                                 field.scale(coeff, h[:, term.w]))
        return out

    def _raw(self, spec: ModuleFile, field: FieldSpec, group: FiniteGroup,
             origin: str) -> TruncatedFiGModule:
        if spec.dims is None or spec.actions is None or spec.trans is None:
            raise ModuleFileError(origin, "<root>", "raw mode needs dims, actions and trans")
        dims = spec.dims
        if len(spec.actions) != len(dims) or len(spec.trans) != len(dims) - 1:
            raise ModuleFileError(origin, "actions", "need one action per degree and one fewer transitions")
        reps = []
        for n, mats in enumerate(spec.actions):
            letters = generator_letters(group.num_generators, n)
            if len(mats) != len(letters):
                raise ModuleFileError(origin, f"actions/{n}",
                                      f"degree {n} needs {len(letters)} matrices, got {len(mats)}")
            reps.append(RepMatrices(field, group, n, dims[n], tuple(
                self._matrix(field, m, (dims[n], dims[n]), f"actions/{n}/{k}", origin)
                for k, m in enumerate(mats))))
        trans = [self._matrix(field, t, (dims[n + 1], dims[n]), f"trans/{n}", origin)
                 for n, t in enumerate(spec.trans)]
        return module_from_reps(field, group, reps, trans, spec.valid_through, presented=False)

    # -- writing -----------------------------------------------------------

    def dump_presentation(self, p: Presentation, name: Optional[str] = None) -> dict:
        """A module file (as a dict) that parses back to p."""
        field = p.field
        out: dict[str, Any] = {}
        if name:
            out["name"] = name
        out["field"] = "Q" if not field.is_prime else {"Fp": field.p}
        if not p.group.is_trivial:
            out["group"] = {"order": p.group.order, "mul": [list(r) for r in p.group.mul],
                            "generators": list(p.group.generators)}
        out["generators"] = [{"degree": w.n, "rep": self._dump_rep(w)} for w in p.generators]
        relations = []
        for slot in p.relations:
            columns = [{"terms": self._terms(p, slot.degree, slot.image[:, c])}
                       for c in range(slot.rep.dim)]
            relations.append({"degree": slot.degree, "rep": self._dump_rep(slot.rep),
                              "map": {"columns": columns}})
        out["relations"] = relations
        return out

    def _dump_rep(self, rep: RepMatrices) -> dict:
        field = rep.field
        return {"dim": rep.dim,
                "mats": [[[field.format(x) if not field.is_prime else int(x) for x in row]
                          for row in m] for m in rep.mats]}

    def _terms(self, p: Presentation, a: int, column: np.ndarray) -> list[dict]:
        field = p.field
        terms = []
        offset = 0
        for i, W in enumerate(p.generators):
            if a < W.n:
                continue
            subsets = subset_basis(a, W.n)
            for s_index, subset in enumerate(subsets):
                for w in range(W.dim):
                    value = column[offset + s_index * W.dim + w]
                    if value == 0:
                        continue
                    coeff = int(value) if field.is_prime else field.format(value)
                    terms.append({"gen": i, "subset": [x + 1 for x in subset], "w": w, "coeff": coeff})
            offset += len(subsets) * W.dim
        return terms


# Global parser instance
module_parser = ModuleFileParser()
