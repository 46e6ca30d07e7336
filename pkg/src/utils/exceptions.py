class GrammarError(Exception):
    """Base error of the toolkit. `stage` names the pipeline step that failed."""

    stage = "pipeline"

    def __init__(self, message: str, stage: str = None):
        super().__init__(message)
        if stage is not None:
            self.stage = stage


# automata-core
class PathBudgetExceeded(GrammarError):
    stage = "paths"


# sample-io
class FormatError(GrammarError):
    stage = "parse"


class ConflictError(GrammarError):
    stage = "parse"


class EmptyWordError(GrammarError):
    stage = "parse"


class DegenerateSplit(GrammarError):
    stage = "split"


class LanguageTooSmall(GrammarError):
    stage = "gen"


class NegativeGenerationStalled(GrammarError):
    stage = "gen"


# sat-encoding / cnf-solver
class EmptySample(GrammarError):
    stage = "encode"


class BackendFailure(GrammarError):
    stage = "solve"


class InconsistentModel(GrammarError):
    stage = "decode"


# inference
class ReductionInconsistent(GrammarError):
    stage = "reduce"


# eval
class LengthMismatch(GrammarError):
    stage = "eval"


class EmptyTestSet(GrammarError):
    stage = "eval"


class PlanError(GrammarError):
    stage = "plan"
