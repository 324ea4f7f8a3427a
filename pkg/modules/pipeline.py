"""
Operation pipelines: "dual | delete 3 | reduce 2 | skeleton 1 2".

Stages are separated by ``|``; each stage is a verb followed by integer
arguments. Parsing happens up front so a typo fails before any work is done.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

from engine import intervals as ops
from engine.errors import PipelineError
from engine.intervals import Interval
from engine.shifted import phi_minus
from utils.logger import logger


def _component(phi: Interval, which: int, e: int) -> Interval:
    if which not in (1, 2):
        raise PipelineError(f"component index must be 1 or 2, got {which}")
    return ops.reduction_components(phi, e)[which - 1]


# verb -> (argument count or None for one-or-more, function)
VERBS: Dict[str, Tuple[object, Callable]] = {
    "dual": (0, ops.dual),
    "delete": (1, ops.delete),
    "contract": (1, ops.contract),
    "star": (1, ops.star),
    "reduce": (1, ops.reduce),
    "component": (2, _component),
    "cone": (1, ops.cone),
    "open": (1, ops.open_star),
    "shift": (None, lambda phi, *vertices: ops.shift_by_set(phi, vertices)),
    "skeleton": (2, ops.skeleton),
    "minus": (0, lambda phi: phi_minus(phi).phi_minus),
    "prime": (0, lambda phi: phi_minus(phi).phi_prime),
}


@dataclass(frozen=True)
class Stage:
    verb: str
    args: Tuple[int, ...]

    def __str__(self):
        return " ".join([self.verb, *map(str, self.args)])


def parse_pipeline(text: str) -> List[Stage]:
    stages = []
    for position, chunk in enumerate(text.split("|"), start=1):
        tokens = chunk.split()
        if not tokens:
            raise PipelineError(f"stage {position} is empty")
        verb, raw = tokens[0].lower(), tokens[1:]
        if verb not in VERBS:
            raise PipelineError(f"stage {position}: unknown operation {verb!r}")
        try:
            args = tuple(int(x) for x in raw)
        except ValueError:
            raise PipelineError(f"stage {position}: arguments of {verb!r} must be integers, got {raw}")
        arity = VERBS[verb][0]
        if arity is None and not args:
            raise PipelineError(f"stage {position}: {verb!r} needs at least one vertex")
        if arity is not None and len(args) != arity:
            raise PipelineError(f"stage {position}: {verb!r} takes {arity} argument(s), got {len(args)}")
        stages.append(Stage(verb, args))
    return stages


def run_pipeline(phi: Interval, text: str) -> Interval:
    """Apply every stage of ``text`` to ``phi`` in order."""
    for stage in parse_pipeline(text):
        phi = VERBS[stage.verb][1](phi, *stage.args)
        logger.debug(f"{stage}: {len(phi)} faces on {phi.n} vertices")
    return phi
