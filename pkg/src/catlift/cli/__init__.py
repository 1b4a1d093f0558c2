"""Command line front end, JSON documents and test corpora."""

from .documents import Document, DocumentError, Square, load_document, loads, dumps, save_document
from .main import main, run_command
