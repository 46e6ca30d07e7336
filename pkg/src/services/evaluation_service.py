import hashlib
import logging
import time
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import pandas as pd
from joblib import Parallel, delayed
from sklearn.metrics import confusion_matrix

from src.repository.automaton_repository import format_nfa, parse_nfa
from src.repository.corpus_repository import CorpusRepository
from src.repository.experiment_repository import ExperimentRepository
from src.schemas.automaton_schema import Nfa3, Sample
from src.schemas.classifier_schema import ClassifierKind, Decision, TieRule
from src.schemas.corpus_schema import LabeledCorpus, RegexpBenchmarkSpec
from src.schemas.evaluation_schema import ConfusionCounts, ExperimentPlan, ExperimentReport, InferenceOutcome
from src.schemas.frequency_schema import FrequencyTables, WeightConfig
from src.schemas.inference_schema import AttemptStats, InferenceResult, InferenceStatus, ModelVariant
from src.schemas.solver_schema import SolveStatus
from src.schemas.splitting_schema import IlsConfig
from src.services.benchmark_service import generate_regexp_benchmark
from src.services.classifier_service import ClassifierService
from src.services.corpus_service import split_train_test
from src.services.frequency_service import FrequencyService
from src.services.inference_service import InferenceService
from src.utils.exceptions import EmptyTestSet, LengthMismatch

_SOLVE_STATUS = {
    InferenceStatus.FOUND: SolveStatus.SAT,
    InferenceStatus.INFEASIBLE: SolveStatus.UNSAT,
    InferenceStatus.TIMED_OUT: SolveStatus.TIMEOUT,
}
CELL_COLUMNS = ["dataset", "split", "model", "classifier", "weights", "accuracy", "f1", "TP", "TN", "FP", "FN", "seconds"]


# ==================== metrics ====================

def confusion(decisions: Sequence[Decision], labels: Sequence[bool]) -> ConfusionCounts:
    """TP/TN/FP/FN of decisions against labels (True = positive word)"""
    if len(decisions) != len(labels):
        raise LengthMismatch(f"{len(decisions)} decisions for {len(labels)} labels")
    if not labels:
        return ConfusionCounts()
    predicted = [d == Decision.POSITIVE for d in decisions]
    (tn, fp), (fn, tp) = confusion_matrix(list(labels), predicted, labels=[False, True])
    return ConfusionCounts(tp=int(tp), tn=int(tn), fp=int(fp), fn=int(fn))


def accuracy(counts: ConfusionCounts) -> float:
    if counts.total == 0:
        raise EmptyTestSet("accuracy of an empty test set")
    return (counts.tp + counts.tn) / counts.total


def f1(counts: ConfusionCounts) -> float:
    denominator = 2 * counts.tp + counts.fp + counts.fn
    return 2 * counts.tp / denominator if denominator else 0.0


# ==================== grid ====================

def evaluate_mask(
    nfa: Nfa3,
    tables: FrequencyTables,
    mask: int,
    classifiers: Sequence[ClassifierKind],
    texts: Sequence[str],
    labels: Sequence[bool],
    tie: TieRule,
    budget: Optional[int] = None,
) -> List[dict]:
    """Grid cells of one weight assignment, one per classifier"""
    pnfa = FrequencyService(WeightConfig.from_mask(mask)).transform(nfa, None, tables)
    cells = []
    for kind in classifiers:
        started = time.perf_counter()
        counts = confusion(ClassifierService(pnfa, kind, tie, budget).classify_all(texts), labels)
        cells.append(
            {
                "classifier": kind.value,
                "weights": mask,
                "accuracy": accuracy(counts),
                "f1": f1(counts),
                "TP": counts.tp,
                "TN": counts.tn,
                "FP": counts.fp,
                "FN": counts.fn,
                "seconds": time.perf_counter() - started,
            }
        )
    return cells


def _best(cells: pd.DataFrame, keys: List[str]) -> pd.DataFrame:
    """Best accuracy per group with the best F1 among its ties, and the overall best F1"""
    rows = []
    for group, frame in cells.groupby(keys, sort=True):
        group = group if isinstance(group, tuple) else (group,)
        top = frame["accuracy"].max()
        corresponding = frame.loc[frame["accuracy"] == top, "f1"].max()
        best_f1 = frame["f1"].max()
        rows.append(
            {
                **dict(zip(keys, group)),
                "best_accuracy": top,
                "f1": corresponding,
                "best_f1": best_f1,
                "f1_elsewhere": bool(best_f1 > corresponding),
                "classification_seconds": frame["seconds"].sum(),
            }
        )
    columns = keys + ["best_accuracy", "f1", "best_f1", "f1_elsewhere", "classification_seconds"]
    return pd.DataFrame(rows, columns=columns)


class EvaluationService:
    """Runs experiment plans: inference per (split, model), then the weight × classifier grid"""

    def __init__(
        self,
        inference: InferenceService,
        repository: ExperimentRepository = None,
        jobs: int = 1,
        path_budget: Optional[int] = None,
    ):
        self.inference = inference
        self.repository = repository
        self.jobs = jobs
        self.path_budget = path_budget
        self.corpora = CorpusRepository()

    def load_datasets(self, plan: ExperimentPlan) -> List[Tuple[str, LabeledCorpus]]:
        datasets = []
        if plan.pattern:
            spec = RegexpBenchmarkSpec(
                pattern=plan.pattern, total=plan.total, min_len=plan.min_len, max_len=plan.max_len, seed=plan.seed
            )
            datasets.append((plan.dataset_name, generate_regexp_benchmark(spec)))
        for path in plan.corpora:
            datasets.append((Path(path).stem, self.corpora.load_corpus(path)))
        return datasets

    def _infer(
        self, dataset: str, fraction: float, train: Sample, model: ModelVariant, plan: ExperimentPlan
    ) -> InferenceResult:
        """Inference through the run-store cache"""
        ils = IlsConfig(max_iterations=plan.ils_iterations, seed=plan.seed)
        key = "|".join(
            [sample_text(train), model.name, str(plan.k_max), repr(plan.timeout), ils.model_dump_json()]
        )
        digest = hashlib.sha256(key.encode("utf-8")).hexdigest()
        if self.repository is not None:
            record = self.repository.get_inference(digest)
            if record is not None:
                logging.debug("cache hit for %s/%s/%s", dataset, fraction, model.name)
                status = InferenceStatus(record.status)
                summary = AttemptStats(
                    model=model.name,
                    k=record.k_used or plan.k_max,
                    status=_SOLVE_STATUS[status],
                    seconds=record.seconds,
                    clauses=record.clauses,
                    variables=record.variables,
                )
                return InferenceResult(
                    status=status,
                    model=model.name,
                    k_used=record.k_used,
                    classification_nfa=parse_nfa(record.automaton) if record.automaton else None,
                    nfa=parse_nfa(record.reduced_automaton) if record.reduced_automaton else None,
                    attempts=[summary],
                )

        result = self.inference.find_min_k(train, model, plan.k_max, plan.timeout, ils)
        if self.repository is not None:
            last = result.attempts[-1] if result.attempts else None
            self.repository.save_inference(
                {
                    "digest": digest,
                    "dataset": dataset,
                    "split": fraction,
                    "model": model.name,
                    "status": result.status.value,
                    "k_used": result.k_used,
                    "automaton": format_nfa(result.classification_nfa) if result.classification_nfa else None,
                    "reduced_automaton": format_nfa(result.nfa) if result.nfa else None,
                    "seconds": result.seconds,
                    "clauses": last.clauses if last else 0,
                    "variables": last.variables if last else 0,
                }
            )
        return result

    def run_experiment(self, plan: ExperimentPlan) -> ExperimentReport:
        rows: List[dict] = []
        outcomes: List[InferenceOutcome] = []
        for dataset, corpus in self.load_datasets(plan):
            for fraction in plan.fractions:
                train, test = split_train_test(corpus, fraction)
                texts = [test.decode(w) for w in test.positives] + [test.decode(w) for w in test.negatives]
                labels = [True] * len(test.positives) + [False] * len(test.negatives)
                for model in plan.models:
                    result = self._infer(dataset, fraction, train, model, plan)
                    last = result.attempts[-1] if result.attempts else None
                    nfa = result.classification_nfa
                    outcomes.append(
                        InferenceOutcome(
                            dataset=dataset,
                            split=fraction,
                            model=model.name,
                            status=result.status.value,
                            k_used=result.k_used,
                            transitions=len(nfa.transitions) if nfa else None,
                            seconds=result.seconds,
                            clauses=last.clauses if last else 0,
                            variables=last.variables if last else 0,
                        )
                    )
                    if result.status != InferenceStatus.FOUND:
                        logging.warning("no automaton for %s, split %s, model %s", dataset, fraction, model.name)
                        continue
                    cells = self._grid(nfa, train, plan, texts, labels)
                    cells = [{"dataset": dataset, "split": fraction, "model": model.name, **c} for c in cells]
                    if self.repository is not None:
                        self.repository.replace_cells(dataset, fraction, model.name, [_orm_cell(c) for c in cells])
                    rows.extend(cells)
                    logging.info("%s split %s %s: %d grid cells", dataset, fraction, model.name, len(cells))

        frame = pd.DataFrame(rows, columns=CELL_COLUMNS)
        return ExperimentReport(
            cells=frame,
            inferences=outcomes,
            by_model_dataset=_best(frame, ["model", "dataset"]),
            by_model_classifier=_best(frame, ["model", "classifier"]),
            by_model_split=_best(frame, ["model", "dataset", "split"]),
        )

    def _grid(self, nfa: Nfa3, train: Sample, plan: ExperimentPlan, texts, labels) -> List[dict]:
        tables = FrequencyService(path_budget=self.path_budget).frequencies(nfa, train)
        per_mask = Parallel(n_jobs=self.jobs)(
            delayed(evaluate_mask)(nfa, tables, mask, plan.classifiers, texts, labels, plan.tie, self.path_budget)
            for mask in plan.weights
        )
        return [cell for cells in per_mask for cell in cells]


def sample_text(sample: Sample) -> str:
    """Stable text of a sample, used in cache keys"""
    lines = [f"+\t{sample.decode(w)}" for w in sample.positives]
    lines += [f"-\t{sample.decode(w)}" for w in sample.negatives]
    return "\n".join(lines)


def _orm_cell(cell: dict) -> dict:
    return {
        "dataset": cell["dataset"],
        "split": cell["split"],
        "model": cell["model"],
        "classifier": cell["classifier"],
        "weights": cell["weights"],
        "accuracy": cell["accuracy"],
        "f1": cell["f1"],
        "tp": cell["TP"],
        "tn": cell["TN"],
        "fp": cell["FP"],
        "fn": cell["FN"],
        "seconds": cell["seconds"],
    }


def timings(report: ExperimentReport) -> pd.DataFrame:
    """Inference and classification seconds per (dataset, split, model)"""
    keys = ["dataset", "split", "model"]
    spent = report.cells.groupby(keys, sort=False)["seconds"].agg("sum")
    frame = pd.DataFrame(
        [(o.dataset, o.split, o.model, o.seconds) for o in report.inferences],
        columns=keys + ["inference_seconds"],
    )
    # inferences without an automaton have no grid cells
    frame["classification_seconds"] = [
        float(spent.get((o.dataset, o.split, o.model), 0.0)) for o in report.inferences
    ]
    return frame


def write_report(report: ExperimentReport, directory) -> List[Path]:
    """CSV files: full-precision cells, 2-decimal summaries, inference outcomes and timings.

    Only timings.csv depends on the machine; every other file is a pure
    function of the plan.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    frames = {
        "cells.csv": report.cells.drop(columns=["seconds"]),
        "summary_model_dataset.csv": report.by_model_dataset,
        "summary_model_classifier.csv": report.by_model_classifier,
        "summary_model_split.csv": report.by_model_split,
        "inferences.csv": pd.DataFrame(
            [o.model_dump(exclude={"seconds"}) for o in report.inferences],
            columns=[f for f in InferenceOutcome.model_fields if f != "seconds"],
        ),
        "timings.csv": timings(report),
    }
    written = []
    for name, frame in frames.items():
        if name.startswith("summary"):
            frame = frame.drop(columns=["classification_seconds"]).round({"best_accuracy": 2, "f1": 2, "best_f1": 2})
        path = directory / name
        frame.to_csv(path, index=False)
        written.append(path)
    return written
