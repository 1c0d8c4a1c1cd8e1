"""Blowups of geometric lattices, Orlik-Solomon and Chow rings, and the
bigraded Leray model B(M, H).

Cores are comma separated flats, as on the command line: "1hat,124".
Reports come back as plain dicts and lists.
"""

import json as _json

from ._leray import CapExceeded, InputError
from ._leray import Problem as _Problem

__all__ = ["Matroid", "CapExceeded", "InputError"]


def _core(core):
    if core is None:
        return ""
    if isinstance(core, str):
        return core
    # multi-character labels like "12,13,23" are joined with '+'
    return ",".join(c.replace(",", "+") for c in core)


class Matroid:
    """A simple matroid with a chosen building set."""

    def __init__(self, spec, building_set="minimal"):
        if isinstance(spec, _Problem):
            self._p = spec
        else:
            text = spec if isinstance(spec, str) else _json.dumps(spec)
            self._p = _Problem(text, building_set)

    @classmethod
    def fixture(cls, name, building_set="minimal"):
        """Built-in examples: M5, U23, B3, PiN, with an optional "max" suffix."""
        return cls(_Problem.fixture(name, building_set))

    @classmethod
    def from_circuits(cls, ground, circuits, building_set="minimal"):
        return cls({"ground": list(ground), "circuits": [list(c) for c in circuits]}, building_set)

    @classmethod
    def from_graph(cls, vertices, edges, building_set="minimal"):
        return cls({"graph": {"vertices": vertices, "edges": [list(e) for e in edges]}}, building_set)

    def to_json(self):
        return _json.loads(self._p.matroid())

    def lattice(self):
        return _json.loads(self._p.lattice())

    def building_set(self):
        return self._p.building_set()

    def cores(self):
        return self._p.cores()

    def blowup(self, core):
        return _json.loads(self._p.blowup(_core(core)))

    def os(self, core=None):
        return _json.loads(self._p.os(_core(core)))

    def chow(self, core):
        return _json.loads(self._p.dp(_core(core)))

    def model(self, core, hat=False, cohomology=True, threads=1):
        """Bigraded dims and cohomology of B (or B-hat with hat=True).

        "bigraded_dims" holds [i, j, dim] with i the polynomial degree;
        "cohomology" holds [p, k, dim] for H^p of line k.
        """
        return _json.loads(self._p.model(_core(core), hat, cohomology, threads))

    def verify(self, core, threads=1, max_poset_size=50000):
        return _json.loads(self._p.verify(_core(core), threads, max_poset_size))
