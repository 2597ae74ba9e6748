"""JSON encoding of series, group-algebra elements and tensors.

Rationals are "p/q" strings.  Terms are emitted in a deterministic order
(weight, then length, then lexicographic) so files diff cleanly.
"""

from __future__ import annotations

from fractions import Fraction

from .betti import GAElem, word_from_str, word_to_str
from .crossed import CrossedElem
from .harmonic import ModClassY, SeriesY
from .series import X0, ParameterError, SeriesX, Tensor

KINDS = {"series_x": SeriesX, "series_y": SeriesY, "mod_class_y": ModClassY, "crossed": CrossedElem}
KIND_OF = {v: k for k, v in KINDS.items()}


def _q(s) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParameterError(f"bad rational {s!r}") from exc


def letter_token(a: int) -> str:
    return "0" if a == X0 else f"g{a}"


def token_letter(t: str) -> int:
    if t == "0":
        return X0
    if t.startswith("g") and t[1:].isdigit():
        return int(t[1:])
    raise ParameterError(f"bad letter token {t!r}")


def _key_to_json(kind: str, key) -> dict:
    if kind == "series_x":
        return {"word": [letter_token(a) for a in key]}
    if kind in ("series_y", "mod_class_y"):
        return {"yword": [[n, g] for n, g in key]}
    w, g = key
    return {"word": [letter_token(a) for a in w], "g": g}


def _key_from_json(kind: str, d: dict):
    try:
        if kind == "series_x":
            return tuple(token_letter(t) for t in d["word"])
        if kind in ("series_y", "mod_class_y"):
            return tuple((int(n), int(g)) for n, g in d["yword"])
        return (tuple(token_letter(t) for t in d["word"]), int(d["g"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParameterError(f"malformed term {d!r}") from exc


def dump(x) -> dict:
    """Encode any supported element as a JSON-ready dict."""
    if isinstance(x, GAElem):
        terms = sorted(x.items(), key=lambda kv: (len(kv[0]), word_to_str(kv[0])))
        return {"kind": "group_algebra", "terms": [{"word": word_to_str(w), "coeff": str(c)} for w, c in terms]}
    if isinstance(x, Tensor):
        kind = KIND_OF[x.base]
        sk = x.base._sort_key
        terms = sorted(x.items(), key=lambda kv: (sk(kv[0][0]), sk(kv[0][1])))
        return {
            "kind": "tensor",
            "base": kind,
            "N": x.N,
            "D": x.D,
            "terms": [
                {"left": _key_to_json(kind, a), "right": _key_to_json(kind, b), "coeff": str(c)} for (a, b), c in terms
            ],
        }
    kind = KIND_OF.get(type(x))
    if kind is None:
        raise ParameterError(f"cannot serialize {type(x).__name__}")
    out = {"kind": kind, "N": x.N, "D": x.D, "terms": []}
    for k, c in x.sorted_items():
        t = _key_to_json(kind, k)
        t["coeff"] = str(c)
        out["terms"].append(t)
    return out


def load(d: dict, kind: str | None = None):
    """Decode a dict produced by ``dump``; ``kind`` defaults to the stored one (series_x if absent)."""
    if not isinstance(d, dict):
        raise ParameterError("expected a JSON object")
    kind = kind or d.get("kind", "series_x")
    terms = d.get("terms")
    if not isinstance(terms, list):
        raise ParameterError("missing 'terms' list")
    if kind == "group_algebra":
        return GAElem({word_from_str(t["word"]): _q(t["coeff"]) for t in terms})
    try:
        N, D = int(d["N"]), int(d["D"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParameterError("missing N or D") from exc
    if kind == "tensor":
        base = d.get("base")
        if base not in KINDS:
            raise ParameterError(f"unknown tensor base {base!r}")
        tt = {}
        for t in terms:
            k = (_key_from_json(base, t["left"]), _key_from_json(base, t["right"]))
            tt[k] = tt.get(k, 0) + _q(t["coeff"])
        return Tensor(KINDS[base], N, D, tt)
    if kind not in KINDS:
        raise ParameterError(f"unknown element kind {kind!r}")
    out: dict = {}
    for t in terms:
        k = _key_from_json(kind, t)
        out[k] = out.get(k, 0) + _q(t["coeff"])
    return KINDS[kind](N, D, out)
