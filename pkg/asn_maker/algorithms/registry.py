"""Algorithm registry.

The registry is a TSV file with one detector per row and the columns
``id, kind, command_template, timeout, param_grid, overlapping, spreading,
modularity_based, nsim``. ``param_grid`` is a JSON object mapping parameter
names to value lists. Built-in rows name their procedure in
``command_template`` (empty means the id itself), so several rows may share
a procedure with different grids.
"""

import csv
import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List, Literal, Optional, Union

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from asn_maker.algorithms.builtin import BUILTINS
from asn_maker.core.errors import ConfigError
from asn_maker.core.logging import get_logger
from asn_maker.graph.model import Cover

logger = get_logger("algorithms.registry")

COLUMNS = [
    "id",
    "kind",
    "command_template",
    "timeout",
    "param_grid",
    "overlapping",
    "spreading",
    "modularity_based",
    "nsim",
]
FLAGS = ("overlapping", "spreading", "modularity_based", "nsim")
PLACEHOLDERS = ("{input}", "{output}")


class AlgorithmSpec(BaseModel):
    """One registry entry."""

    model_config = ConfigDict(frozen=True)

    id: str = Field(min_length=1)
    kind: Literal["builtin", "external"] = "builtin"
    param_grid: Dict[str, List[Any]] = Field(default_factory=dict)
    overlapping: bool = False
    spreading: bool = False
    modularity_based: bool = False
    nsim: bool = False
    command_template: str = ""
    timeout: float = Field(default=600.0, gt=0)

    @model_validator(mode="after")
    def _check(self) -> "AlgorithmSpec":
        for name, values in self.param_grid.items():
            if not values:
                raise ValueError(f"{self.id}: parameter '{name}' has an empty value list")
        if self.kind == "builtin" and self.procedure not in BUILTINS:
            raise ValueError(f"{self.id}: unknown built-in procedure '{self.procedure}'")
        if self.kind == "external":
            missing = [p for p in PLACEHOLDERS if p not in self.command_template]
            if missing:
                raise ValueError(f"{self.id}: command template lacks {', '.join(missing)}")
        return self

    @property
    def procedure(self) -> str:
        """Built-in procedure name."""
        return self.command_template or self.id

    @property
    def flags(self) -> Dict[str, bool]:
        return {flag: getattr(self, flag) for flag in FLAGS}


RunStatus = Literal["ok", "failed", "timeout"]


@dataclass(frozen=True)
class RunRecord:
    """Outcome of one grid-searched detector run on one network.

    ``cover`` is present exactly when ``status`` is ``"ok"``.
    """

    algorithm: str
    network: str
    params: Dict[str, Any]
    cover: Optional[Cover]
    seconds: float
    status: RunStatus = "ok"
    score: Optional[float] = None
    message: str = ""
    cached: bool = False

    def __post_init__(self) -> None:
        if (self.status == "ok") != (self.cover is not None):
            raise ValueError("a run has a cover exactly when its status is ok")

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def expand_grid(param_grid: Dict[str, List[Any]]) -> List[Dict[str, Any]]:
    """All grid points in lexicographic order of their sorted-key value tuples."""
    names = sorted(param_grid)
    axes = [sorted(param_grid[name]) for name in names]
    return [dict(zip(names, values)) for values in itertools.product(*axes)]


def _parse_flag(value: str) -> bool:
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "y"):
        return True
    if text in ("0", "false", "no", "n", ""):
        return False
    raise ValueError(f"not a boolean flag: {value!r}")


def load_registry(path: Union[str, Path]) -> List[AlgorithmSpec]:
    """Read a registry TSV.

    Raises:
        ConfigError: If the file is unreadable, a row is invalid or ids repeat
    """
    path = Path(path)
    try:
        frame = pd.read_csv(
            path, sep="\t", dtype=str, keep_default_na=False, quoting=csv.QUOTE_NONE
        )
    except (OSError, pd.errors.ParserError) as e:
        raise ConfigError(f"cannot read registry {path}: {e}") from e

    missing = [c for c in ("id", "kind") if c not in frame.columns]
    if missing:
        raise ConfigError(f"registry {path} lacks columns: {', '.join(missing)}")

    specs: List[AlgorithmSpec] = []
    for row_number, row in enumerate(frame.to_dict("records"), start=2):
        try:
            fields: Dict[str, Any] = {
                "id": row["id"].strip(),
                "kind": row["kind"].strip(),
                "command_template": row.get("command_template", "").strip(),
                "param_grid": json.loads(row.get("param_grid") or "{}"),
            }
            if row.get("timeout", "").strip():
                fields["timeout"] = float(row["timeout"])
            for flag in FLAGS:
                fields[flag] = _parse_flag(row.get(flag, ""))
            specs.append(AlgorithmSpec(**fields))
        except (ValueError, ValidationError) as e:
            raise ConfigError(f"registry {path} row {row_number}: {e}") from e

    _check_unique(specs)
    logger.debug("Loaded %d algorithms from %s", len(specs), path)
    return specs


def _check_unique(specs: Iterable[AlgorithmSpec]) -> None:
    seen = set()
    for spec in specs:
        if spec.id in seen:
            raise ConfigError(f"duplicate algorithm id '{spec.id}'")
        seen.add(spec.id)


def default_registry() -> List[AlgorithmSpec]:
    """The built-in catalog with its default grids."""
    return [
        AlgorithmSpec(
            id=algo.name,
            kind="builtin",
            param_grid=algo.default_grid,
            overlapping=algo.overlapping,
            spreading=algo.spreading,
            modularity_based=algo.modularity_based,
            nsim=algo.nsim,
        )
        for algo in BUILTINS.values()
    ]


def write_registry(specs: Iterable[AlgorithmSpec], path: Union[str, Path]) -> Path:
    """Write specs in the registry TSV format."""
    rows = []
    for spec in specs:
        row = {
            "id": spec.id,
            "kind": spec.kind,
            "command_template": spec.command_template,
            "timeout": f"{spec.timeout:g}",
            "param_grid": json.dumps(spec.param_grid, sort_keys=True),
        }
        row.update({flag: str(getattr(spec, flag)).lower() for flag in FLAGS})
        rows.append(row)
    path = Path(path)
    lines = ["\t".join(COLUMNS)] + ["\t".join(row[c] for c in COLUMNS) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def metadata_table(specs: Iterable[AlgorithmSpec]) -> pd.DataFrame:
    """Category flags per algorithm id."""
    frame = pd.DataFrame(
        [{"algorithm": s.id, **s.flags} for s in specs], columns=["algorithm", *FLAGS]
    )
    return frame.set_index("algorithm")
