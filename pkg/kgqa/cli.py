from typing import Callable, Dict, List, Optional, Sequence, TextIO
import argparse
import contextlib
import logging
import sys

import dotenv

from kgqa.errors import UsageError
from kgqa.handlers import (
    create_ask_handler,
    create_eval_handler,
    create_import_handler,
    create_match_debug_handler,
    create_ner_handler,
    create_repl_handler,
    create_stats_handler,
    create_train_ner_handler,
)
from kgqa.models import Invocation, UnitHandler
from kgqa.strategies import EXIT_USAGE

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# one root handler, re-pointed at the caller's error stream on every run
LOG_HANDLER = logging.StreamHandler()
LOG_HANDLER.setFormatter(logging.Formatter(LOG_FORMAT))

HANDLERS: Dict[str, Callable[[], UnitHandler]] = {
    "import": create_import_handler,
    "stats": create_stats_handler,
    "ask": create_ask_handler,
    "repl": create_repl_handler,
    "ner": create_ner_handler,
    "match-debug": create_match_debug_handler,
    "train-ner": create_train_ner_handler,
    "eval": create_eval_handler,
}


class ArgumentParser(argparse.ArgumentParser):
    """Raises UsageError instead of exiting, so `run` owns the exit code."""

    def error(self, message: str):
        raise UsageError(message)


def _positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def _common_options() -> argparse.ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value config file (default: $KGQA_CONFIG)")
    common.add_argument("--triples", action="append", help="triples TSV file; repeatable")
    common.add_argument("--embeddings", help="word vectors file")
    common.add_argument("--templates", help="question templates TSV file")
    common.add_argument("--ner-model", dest="ner_model", help="CRF model JSON file")
    common.add_argument("--alpha", type=float, help="TF-IDF weight in the match score")
    common.add_argument("--threshold", type=float, help="minimum template match score")
    common.add_argument(
        "--use-crf", dest="use_crf", action=argparse.BooleanOptionalAction, default=None,
        help="add CRF mentions to the gazetteer ones",
    )
    common.add_argument("-v", "--verbose", action="count", default=0)
    return common


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="kgqa", description="Knowledge-graph question answering.")
    commands = parser.add_subparsers(dest="command", metavar="command", required=True)
    common = [_common_options()]

    importer = commands.add_parser("import", parents=common, help="validate and load triples files")
    importer.add_argument("--db", help="SQLAlchemy URL to store the imported graph in")
    importer.add_argument("--export", help="write the merged graph as sorted triples TSV")

    commands.add_parser("stats", parents=common, help="entity, triple and type counts")

    for name, text in [
        ("ask", "answer one question"),
        ("ner", "print recognized entity mentions"),
        ("match-debug", "print every template score for a question"),
    ]:
        sub = commands.add_parser(name, parents=common, help=text)
        sub.add_argument("question", nargs="+")

    commands.add_parser("repl", parents=common, help="answer questions read from input")

    trainer = commands.add_parser("train-ner", parents=common, help="train the CRF tagger")
    trainer.add_argument("--corpus", required=True, help="token<TAB>tag corpus file")
    trainer.add_argument("--out", required=True, help="model file to write")
    trainer.add_argument("--epochs", type=_positive_int, default=50)

    evaluator = commands.add_parser("eval", parents=common, help="score answers against a gold set")
    evaluator.add_argument("--gold", required=True, help="JSON-lines gold set")
    evaluator.add_argument("--rouge-n", dest="rouge_n", type=_positive_int)
    evaluator.add_argument("--workers", type=_positive_int)
    evaluator.add_argument("--details", action="store_true", help="also print per-question rows")
    parser.command_parsers = commands.choices
    return parser


def _configure_logging(verbose: int, stderr: TextIO):
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose > 1:
        level = logging.DEBUG
    LOG_HANDLER.setStream(stderr)
    root = logging.getLogger()
    if LOG_HANDLER not in root.handlers:
        root.addHandler(LOG_HANDLER)
    root.setLevel(level)


def run(
    argv: Optional[Sequence[str]] = None,
    stdin: Optional[TextIO] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv: List[str] = list(sys.argv[1:] if argv is None else argv)

    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout):
            args = parser.parse_args(argv)
    except UsageError as e:
        stderr.write(parser.format_usage())
        stderr.write(f"kgqa: error: {e}\n")
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return int(e.code or 0)

    _configure_logging(args.verbose, stderr)
    invocation = Invocation(
        command=args.command,
        args=args,
        stdin=stdin,
        stdout=stdout,
        stderr=stderr,
        usage=parser.command_parsers[args.command].format_usage(),
    )
    return HANDLERS[args.command]()(invocation)


def main():
    dotenv.load_dotenv()
    sys.exit(run())
