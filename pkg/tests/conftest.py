from pathlib import Path

import numpy as np
import pytest

from ggsignal.embeddings import EmbeddingTable, load_table
from ggsignal.lexicon import load_stimuli

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def fixture_table() -> EmbeddingTable:
    return load_table(DATA / "fixture_2d.vec")


@pytest.fixture(scope="session")
def fixture_stimuli():
    return load_stimuli(DATA / "fixture_2d_stimuli.txt")


@pytest.fixture
def write_vec(tmp_path):
    """Write a vector file from {word: vector} and return its path."""

    def _write(entries: dict, name: str = "table.vec") -> Path:
        dim = len(next(iter(entries.values())))
        path = tmp_path / name
        lines = [f"{len(entries)} {dim}"]
        for word, values in entries.items():
            lines.append(word + " " + " ".join(repr(float(v)) for v in values))
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    return _write


def table_from(words, matrix) -> EmbeddingTable:
    return EmbeddingTable(list(words), np.asarray(matrix, dtype=np.float64))
