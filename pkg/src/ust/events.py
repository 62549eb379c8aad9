from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, GraphError


@dataclass(frozen=True)
class CylinderEvent:
    """The event that every ``include`` edge is in the tree and no ``exclude`` edge is."""

    include: tuple[int, ...] = ()
    exclude: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "include", tuple(self.include))
        object.__setattr__(self, "exclude", tuple(self.exclude))

    def validate(self, g: Graph) -> None:
        inc, exc = set(self.include), set(self.exclude)
        if len(inc) != len(self.include) or len(exc) != len(self.exclude):
            raise GraphError("repeated edge in cylinder event")
        if inc & exc:
            raise GraphError(f"edges {sorted(inc & exc)} both included and excluded")
        for eid in inc | exc:
            g.edge(eid)
