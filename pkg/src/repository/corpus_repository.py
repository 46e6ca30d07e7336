from pathlib import Path
from typing import List

from src.schemas.corpus_schema import LabeledCorpus
from src.services.corpus_service import format_corpus, parse_corpus


class CorpusRepository:
    """Reads and writes labeled corpus files and word lists"""

    def load_corpus(self, path) -> LabeledCorpus:
        """Read a corpus file"""
        return parse_corpus(Path(path).read_text(encoding="utf-8"))

    def save_corpus(self, path, corpus: LabeledCorpus) -> Path:
        """Write a corpus file"""
        target = Path(path)
        target.write_text(format_corpus(corpus), encoding="utf-8")
        return target

    def load_words(self, path) -> List[str]:
        """Read one word per line, skipping blank lines"""
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        return [line.strip() for line in lines if line.strip()]
