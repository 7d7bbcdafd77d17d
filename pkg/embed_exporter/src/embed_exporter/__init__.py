"""Offline embedding exporter for the graph-criticality analysis toolkit."""

from .exporter import (DEFAULT_MODEL, Encoder, ExportError, ExportJob, export,
                       load_sentence_encoder, read_labels)

__all__ = ["DEFAULT_MODEL", "Encoder", "ExportError", "ExportJob", "export",
           "load_sentence_encoder", "read_labels"]
