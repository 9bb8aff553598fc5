from ..errors import ConfigError
from .attack import AttackRecord, greedy_attack, replay
from .builtin import GazetteerTagger, KeywordModel, MajorityModel, create_builtin, keyword_hits
from .evaluate import EvalResult, compute_metrics, evaluate, gold_of
from .metrics import MetricValue, accuracy, macro_f1, span_f1, token_accuracy
from .protocol import Adapter, encode_sample


def create_model(spec: str, model_params: dict | None, resources):
    """Instantiate a model from a CLI/config spec string.

    ``builtin:<name>`` | ``exec:<command>`` | ``tcp:<host>:<port>``
    """
    model_params = model_params or {}
    kind, _, rest = spec.partition(":")
    if kind == "builtin":
        return create_builtin(rest, model_params, resources)
    if kind == "exec":
        if not rest:
            raise ConfigError("exec model spec needs a command")
        return Adapter.subprocess(
            rest,
            batch_size=model_params.get("batch_size", 32),
            timeout=model_params.get("timeout", 30.0),
        )
    if kind == "tcp":
        host, _, port = rest.partition(":")
        if not host or not port.isdigit():
            raise ConfigError(f"tcp model spec must be tcp:host:port, got {spec!r}")
        return Adapter.tcp(
            host,
            int(port),
            batch_size=model_params.get("batch_size", 32),
            timeout=model_params.get("timeout", 30.0),
        )
    raise ConfigError(f"unknown model spec {spec!r}")


__all__ = [
    "Adapter",
    "AttackRecord",
    "EvalResult",
    "GazetteerTagger",
    "KeywordModel",
    "MajorityModel",
    "MetricValue",
    "accuracy",
    "compute_metrics",
    "create_builtin",
    "create_model",
    "encode_sample",
    "evaluate",
    "gold_of",
    "greedy_attack",
    "keyword_hits",
    "macro_f1",
    "replay",
    "span_f1",
    "token_accuracy",
]
