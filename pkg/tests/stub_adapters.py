"""Line-protocol stub adapters for transport tests. Run with a mode argument."""
import json
import sys


def main(mode: str) -> None:
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        request = json.loads(line)
        samples = request.get("samples", [])
        if mode == "echo":
            response = {
                "id": request["id"],
                "predictions": ["ok"] * len(samples),
                "scores": [[1.0] for _ in samples],
            }
        elif mode == "echo-text":
            response = {
                "id": request["id"],
                "predictions": [s.get("text", "") for s in samples],
            }
        elif mode == "truncated":
            sys.stdout.write('{"id": "' + request["id"] + '", "predictions": [')
            sys.stdout.write("\n")
            sys.stdout.flush()
            continue
        elif mode == "wrong-id":
            response = {"id": "nope", "predictions": ["ok"] * len(samples)}
        elif mode == "wrong-count":
            response = {"id": request["id"], "predictions": ["ok"] * (len(samples) + 1)}
        elif mode == "error":
            response = {"id": request["id"], "error": "boom"}
        elif mode == "silent":
            continue
        else:
            raise SystemExit(f"unknown mode {mode}")
        sys.stdout.write(json.dumps(response) + "\n")
        sys.stdout.flush()


if __name__ == "__main__":
    main(sys.argv[1])
