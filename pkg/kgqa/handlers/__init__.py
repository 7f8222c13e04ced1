from .import_graph import create_import_handler
from .stats import create_stats_handler
from .ask import create_ask_handler, create_repl_handler
from .ner import create_ner_handler
from .match_debug import create_match_debug_handler
from .train_ner import create_train_ner_handler
from .evaluate import create_eval_handler
