"""Certificate documents: emit/parse in text and JSON form.

Documents carry a digest of the input file they certify; verify recomputes
it.  Emission is canonical, so emit(parse(emit(d))) == emit(d).
"""

from __future__ import annotations

import hashlib
import json

KINDS = ("c1p-order", "tucker", "interval-model", "lb")

_FIELDS = {
    "c1p-order": ("order",),
    "tucker": ("family", "k", "rows", "cols", "row_perm", "col_perm"),
    "interval-model": ("intervals",),
    "lb": ("family", "k", "vertices", "iso"),
}


class CertificateError(ValueError):
    pass


class CertificateDocument:
    __slots__ = ("kind", "fields", "input_digest")

    def __init__(self, kind, fields, input_digest):
        if kind not in KINDS:
            raise CertificateError(f"unknown certificate kind {kind!r}")
        missing = [f for f in _FIELDS[kind] if f not in fields]
        if missing:
            raise CertificateError(f"missing fields {missing} for kind {kind}")
        self.kind = kind
        self.fields = {f: fields[f] for f in _FIELDS[kind]}
        self.input_digest = input_digest

    def __eq__(self, other):
        return (
            isinstance(other, CertificateDocument)
            and self.kind == other.kind
            and self.fields == other.fields
            and self.input_digest == other.input_digest
        )


def digest_bytes(data):
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _fmt_value(key, value):
    if key == "intervals":
        return " ".join(f"{l}:{r}" for l, r in value)
    if isinstance(value, (list, tuple)):
        return " ".join(str(x) for x in value)
    return str(value)


def _parse_value(key, text):
    if key == "family":
        return text.strip()
    if key == "k":
        return int(text)
    if key == "intervals":
        out = []
        for part in text.split():
            l, r = part.split(":")
            out.append((int(l), int(r)))
        return out
    return [int(x) for x in text.split()]


def emit_text(doc):
    lines = [f"kind: {doc.kind}"]
    for key in _FIELDS[doc.kind]:
        lines.append(f"{key}: {_fmt_value(key, doc.fields[key])}")
    lines.append(f"input_digest: {doc.input_digest}")
    return "\n".join(lines) + "\n"


def emit_json(doc):
    payload = {"kind": doc.kind, "input_digest": doc.input_digest}
    for key in _FIELDS[doc.kind]:
        v = doc.fields[key]
        if key == "intervals":
            v = [[l, r] for l, r in v]
        payload[key] = v
    return json.dumps(payload, sort_keys=True, separators=(", ", ": ")) + "\n"


def parse_document(text):
    """Accepts either encoding; dispatches on the leading character."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_json(stripped)
    return _parse_text(text)


def _parse_json(text):
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"bad JSON: {exc}") from None
    if not isinstance(payload, dict) or "kind" not in payload:
        raise CertificateError("JSON document must be an object with a kind")
    kind = payload["kind"]
    if kind not in KINDS:
        raise CertificateError(f"unknown certificate kind {kind!r}")
    fields = {}
    for key in _FIELDS[kind]:
        if key not in payload:
            raise CertificateError(f"missing field {key}")
        v = payload[key]
        if key == "intervals":
            v = [(int(l), int(r)) for l, r in v]
        fields[key] = v
    return CertificateDocument(kind, fields, payload.get("input_digest", ""))


def _parse_text(text):
    entries = {}
    order = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        if ":" not in line:
            raise CertificateError(f"line {lineno}: expected 'key: value'")
        key, _, value = line.partition(":")
        key = key.strip()
        if key in entries:
            raise CertificateError(f"line {lineno}: duplicate key {key}")
        entries[key] = value.strip()
        order.append(key)
    if "kind" not in entries:
        raise CertificateError("document lacks a kind")
    kind = entries.pop("kind")
    if kind not in KINDS:
        raise CertificateError(f"unknown certificate kind {kind!r}")
    digest = entries.pop("input_digest", "")
    fields = {}
    for key in _FIELDS[kind]:
        if key not in entries:
            raise CertificateError(f"missing field {key}")
        try:
            fields[key] = _parse_value(key, entries.pop(key))
        except ValueError:
            raise CertificateError(f"bad value for field {key}") from None
    if entries:
        raise CertificateError(f"unexpected fields {sorted(entries)}")
    return CertificateDocument(kind, fields, digest)


def emit(doc, fmt):
    if fmt == "json":
        return emit_json(doc)
    return emit_text(doc)
