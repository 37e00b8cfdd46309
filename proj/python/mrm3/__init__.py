"""Python access to the mrm3 model-metadata knowledge graph."""

import json

from ._mrm3 import (
    DEFAULT_SEED,
    ContractError,
    Error,
    QueryError,
    SemanticError,
    SnapshotError,
    StorageError,
    SyntaxError,
    Graph as _Graph,
    calibrate_json as _calibrate_json,
    fixture_documents as _fixture_documents,
    parse_query,
    schema_json as _schema_json,
    validate_json as _validate_json,
)

__all__ = [
    "DEFAULT_SEED",
    "ContractError",
    "Error",
    "Graph",
    "QueryError",
    "SemanticError",
    "SnapshotError",
    "StorageError",
    "SyntaxError",
    "calibrate",
    "fixture_documents",
    "parse_query",
    "schema",
    "validate",
]


def _text(document):
    return document if isinstance(document, str) else json.dumps(document)


def schema():
    return json.loads(_schema_json())


def validate(document):
    """Validation report for a document given as a dict or JSON text."""
    return json.loads(_validate_json(_text(document)))


def fixture_documents(seed=DEFAULT_SEED):
    return [json.loads(d) for d in _fixture_documents(seed)]


def calibrate():
    return json.loads(_calibrate_json())


class Graph:
    """In-memory knowledge graph; optionally loaded from / saved to a snapshot."""

    def __init__(self, _graph=None):
        self._graph = _graph if _graph is not None else _Graph()

    @classmethod
    def load(cls, path):
        return cls(_Graph.load(str(path)))

    def save(self, path):
        self._graph.save(str(path))

    def ingest(self, document):
        return json.loads(self._graph.ingest_json(_text(document)))

    def stats(self):
        return json.loads(self._graph.stats_json())

    def query(self, text, max_rows=10000):
        return json.loads(self._graph.query_json(text, max_rows))

    def query_csv(self, text):
        return self._graph.query_csv(text)

    def explain(self, text):
        return self._graph.explain(text)

    def export(self, format):
        return self._graph.export(format)

    @property
    def node_count(self):
        return self._graph.node_count

    @property
    def relationship_count(self):
        return self._graph.relationship_count
