import re
from pathlib import Path

from pydantic import ValidationError

from src.schemas.evaluation_schema import ExperimentPlan
from src.schemas.inference_schema import ModelVariant
from src.utils.exceptions import PlanError

_LIST_KEYS = {"corpora", "fractions", "models", "classifiers", "weights"}
_SCALAR_KEYS = {"name", "pattern", "total", "min_len", "max_len", "k_max", "timeout", "seed", "tie", "ils_iterations"}
# a pattern may itself contain " #", so its value runs to the end of the line
_VERBATIM_KEYS = {"pattern"}
_INLINE_COMMENT = re.compile(r"\s#.*$")


def parse_plan(text: str, base_dir: Path = None) -> ExperimentPlan:
    """Read `key = value` lines; lists are comma-separated, `#` starts a comment"""
    values = {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise PlanError(f"line {n}: expected 'key = value'")
        if key not in _LIST_KEYS | _SCALAR_KEYS:
            raise PlanError(f"line {n}: unknown key '{key}'")
        if key in values:
            raise PlanError(f"line {n}: key '{key}' given twice")
        if key not in _VERBATIM_KEYS:
            value = _INLINE_COMMENT.sub("", value).strip()
        if key in _LIST_KEYS:
            values[key] = [item.strip() for item in value.split(",") if item.strip()]
        else:
            values[key] = value

    try:
        if "models" in values:
            values["models"] = [ModelVariant.parse(name) for name in values["models"]]
        if values.get("weights") == ["all"]:
            values["weights"] = list(range(256))
        if "corpora" in values and base_dir is not None:
            values["corpora"] = [str(Path(base_dir) / path) for path in values["corpora"]]
        return ExperimentPlan(**values)
    except (ValidationError, ValueError) as e:
        raise PlanError(f"invalid plan: {e}")


class PlanRepository:
    def load_plan(self, path) -> ExperimentPlan:
        """Read a plan file; corpus paths are relative to it"""
        path = Path(path)
        return parse_plan(path.read_text(encoding="utf-8"), base_dir=path.parent)
