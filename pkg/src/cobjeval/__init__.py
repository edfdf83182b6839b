"""cobjeval: evaluation harness for COBOL-to-Java method translations.

Analytic checkers (syntactic and semantic), pluggable judge scoring,
a JSONL ingestion pipeline over an embedded store, input-side coverage,
and JSON/HTML reporting. Served over HTTP by ``cobjeval.service`` with
``cobjeval.cli`` as a thin client.
"""

__version__ = "0.1.0"
