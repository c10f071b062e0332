"""Writes the subprocess line-protocol conformance vectors.

Each JSON line holds a document, the exact request line a client sends for
it, and the exact response line an echo backend must answer with.

Line format: <byte length of payload> SP <payload> LF, where the payload is
the UTF-8 text with `\\` written as `\\\\` and LF written as `\\n`.

    python3 tools/make_conformance.py crates/bridge/fixtures/conformance.jsonl
"""

import json
import random
import sys


def escape(text):
    return text.replace("\\", "\\\\").replace("\n", "\\n")


def line(text):
    payload = escape(text).encode("utf-8")
    return str(len(payload)).encode() + b" " + payload + b"\n"


def big_document(size):
    rng = random.Random(50)
    words = ["victim", "police", "restaurant", "stabbed", "Newark", "at", "the", "on", "Friday", "men"]
    parts, total = [], 0
    while total < size:
        sentence = " ".join(rng.choice(words) for _ in range(12)).capitalize() + "."
        if rng.random() < 0.1:
            sentence += "\n"
        parts.append(sentence)
        total += len(sentence) + 1
    return " ".join(parts)[:size]


CASES = [
    ("empty", ""),
    ("single word", "Hello"),
    ("sentence", "A woman is killed."),
    ("embedded newline", "First line.\nSecond line."),
    ("trailing newline", "Ends with a newline.\n"),
    ("blank lines", "\n\nA\n\n"),
    ("backslashes", "C:\\temp\\n is not a newline; \\\\ two"),
    ("unicode", "Caf\u00e9 na\u00efve \u2014 \u65e5\u672c \U0001f600"),
    ("tabs and carriage return", "a\tb\r\nc"),
    ("50 KB document", big_document(50 * 1024)),
]


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else "conformance.jsonl"
    with open(out, "w", encoding="utf-8") as f:
        for name, text in CASES:
            req = line(text).decode("utf-8")
            f.write(json.dumps({"name": name, "text": text, "request": req, "response": req}) + "\n")


if __name__ == "__main__":
    main()
