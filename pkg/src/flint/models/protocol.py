"""External-model wire protocol.

One JSON object per line over a child process's standard streams, or over
TCP with identical payloads. Strict request/response alternation: one
request in flight per connection.

Request:  {"id": "<uuid>", "type": "predict"|"score"|"rewrite",
           "task": "<task>", "samples": [...]}
Response: {"id": "<same>", "predictions": [...] , "scores": [...],
           "rewrites": [...]} or {"id": ..., "error": "<message>"}

``predict`` answers one prediction per sample (a label, or a tag list for
sequence labeling) plus optional per-class score vectors. ``score``
answers one float per sample. ``rewrite`` answers one string per sample.
"""
from __future__ import annotations

import json
import select
import shlex
import socket
import subprocess
import uuid

from ..core.dataset import sample_to_record
from ..core.sample import Sample, Task
from ..errors import AdapterTimeout, ProtocolError

DEFAULT_BATCH = 32
DEFAULT_TIMEOUT = 30.0


def encode_sample(sample: Sample) -> dict:
    record = sample_to_record(sample)
    if sample.task is Task.SEQUENCE:
        record.pop("tags", None)
    elif sample.task is Task.ABSA:
        for aspect in record["aspects"]:
            aspect.pop("polarity", None)
    else:
        record.pop("label", None)
    return record


class _LineChannel:
    """Framing shared by the subprocess and TCP transports."""

    def _send_line(self, line: str) -> None:
        raise NotImplementedError

    def _recv_line(self, timeout: float) -> str:
        raise NotImplementedError

    def _restart(self) -> None:
        raise NotImplementedError

    def close(self) -> None:
        raise NotImplementedError


class SubprocessTransport(_LineChannel):
    def __init__(self, command: str):
        self.command = command
        self.proc: subprocess.Popen | None = None
        self._start()

    def _start(self) -> None:
        self.proc = subprocess.Popen(
            shlex.split(self.command),
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            text=True,
            bufsize=1,
        )

    def _send_line(self, line: str) -> None:
        assert self.proc and self.proc.stdin
        try:
            self.proc.stdin.write(line + "\n")
            self.proc.stdin.flush()
        except (BrokenPipeError, OSError) as exc:
            raise ProtocolError(f"adapter process closed its stdin: {exc}") from exc

    def _recv_line(self, timeout: float) -> str:
        assert self.proc and self.proc.stdout
        ready, _, _ = select.select([self.proc.stdout], [], [], timeout)
        if not ready:
            raise AdapterTimeout(f"no response within {timeout} s from {self.command!r}")
        line = self.proc.stdout.readline()
        if not line:
            raise ProtocolError("adapter closed its stdout mid-conversation")
        return line

    def _restart(self) -> None:
        self.close()
        self._start()

    def close(self) -> None:
        if self.proc:
            for stream in (self.proc.stdin, self.proc.stdout):
                if stream:
                    stream.close()
            self.proc.terminate()
            try:
                self.proc.wait(timeout=5)
            except subprocess.TimeoutExpired:
                self.proc.kill()
            self.proc = None


class TcpTransport(_LineChannel):
    def __init__(self, host: str, port: int):
        self.host, self.port = host, port
        self.sock: socket.socket | None = None
        self.reader = None
        self._start()

    def _start(self) -> None:
        self.sock = socket.create_connection((self.host, self.port), timeout=DEFAULT_TIMEOUT)
        self.reader = self.sock.makefile("r", encoding="utf-8")

    def _send_line(self, line: str) -> None:
        assert self.sock
        self.sock.sendall((line + "\n").encode("utf-8"))

    def _recv_line(self, timeout: float) -> str:
        assert self.sock and self.reader
        self.sock.settimeout(timeout)
        try:
            line = self.reader.readline()
        except socket.timeout as exc:
            raise AdapterTimeout(f"no response within {timeout} s from {self.host}:{self.port}") from exc
        if not line:
            raise ProtocolError("adapter closed the connection mid-conversation")
        return line

    def _restart(self) -> None:
        self.close()
        self._start()

    def close(self) -> None:
        if self.reader:
            self.reader.close()
            self.reader = None
        if self.sock:
            self.sock.close()
            self.sock = None


class Adapter:
    """Client for one external model process or endpoint."""

    def __init__(
        self,
        transport: _LineChannel,
        batch_size: int = DEFAULT_BATCH,
        timeout: float = DEFAULT_TIMEOUT,
        retries: int = 1,
    ):
        self.transport = transport
        self.batch_size = batch_size
        self.timeout = timeout
        self.retries = retries
        self.name = "external"

    @classmethod
    def subprocess(cls, command: str, **kwargs) -> "Adapter":
        adapter = cls(SubprocessTransport(command), **kwargs)
        adapter.name = f"exec:{command}"
        return adapter

    @classmethod
    def tcp(cls, host: str, port: int, **kwargs) -> "Adapter":
        adapter = cls(TcpTransport(host, port), **kwargs)
        adapter.name = f"tcp:{host}:{port}"
        return adapter

    def close(self) -> None:
        self.transport.close()

    def _roundtrip(self, request: dict) -> dict:
        line = json.dumps(request, ensure_ascii=False)
        attempts = self.retries + 1
        for attempt in range(attempts):
            try:
                self.transport._send_line(line)
                raw = self.transport._recv_line(self.timeout)
                break
            except AdapterTimeout:
                if attempt + 1 >= attempts:
                    raise
                self.transport._restart()
        try:
            response = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ProtocolError(f"malformed response line: {raw!r}") from exc
        if not isinstance(response, dict):
            raise ProtocolError(f"response must be an object, got {type(response).__name__}")
        if response.get("id") != request["id"]:
            raise ProtocolError(
                f"response id {response.get('id')!r} does not echo request id {request['id']!r}"
            )
        if "error" in response:
            raise ProtocolError(f"adapter error: {response['error']}")
        return response

    def _batches(self, items: list) -> list[list]:
        return [items[i : i + self.batch_size] for i in range(0, len(items), self.batch_size)]

    def predict_with_scores(self, samples: list[Sample]):
        if not samples:
            return [], None
        task = samples[0].task.value
        predictions: list = []
        all_scores: list | None = []
        for batch in self._batches(samples):
            request = {
                "id": str(uuid.uuid4()),
                "type": "predict",
                "task": task,
                "samples": [encode_sample(s) for s in batch],
            }
            response = self._roundtrip(request)
            preds = response.get("predictions")
            if not isinstance(preds, list) or len(preds) != len(batch):
                raise ProtocolError(
                    f"expected {len(batch)} predictions, got {preds!r}"
                )
            predictions.extend(preds)
            scores = response.get("scores")
            if scores is None:
                all_scores = None
            elif all_scores is not None:
                if not isinstance(scores, list) or len(scores) != len(batch):
                    raise ProtocolError(f"expected {len(batch)} score vectors")
                all_scores.extend(scores)
        return predictions, all_scores

    def predict(self, samples: list[Sample]) -> list:
        return self.predict_with_scores(samples)[0]

    def _simple(self, type_: str, payload_key: str, texts: list[str]) -> list:
        out: list = []
        for batch in self._batches(list(texts)):
            request = {
                "id": str(uuid.uuid4()),
                "type": type_,
                "task": "classification",
                "samples": [{"id": str(i), "text": t} for i, t in enumerate(batch)],
            }
            response = self._roundtrip(request)
            values = response.get(payload_key)
            if not isinstance(values, list) or len(values) != len(batch):
                raise ProtocolError(f"expected {len(batch)} {payload_key}")
            out.extend(values)
        return out

    def score(self, texts: list[str]) -> list[float]:
        values = self._simple("score", "scores", texts)
        if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in values):
            raise ProtocolError(f"score response must hold one number per sample, got {values!r}")
        return [float(v) for v in values]

    def rewrite(self, texts: list[str]) -> list[str]:
        return [str(v) for v in self._simple("rewrite", "rewrites", texts)]
