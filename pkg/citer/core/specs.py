"""
JSON input specifications - series models, paths and exponent tuples as
accepted by the command line
"""

import json
import logging
from typing import Any, Dict, List, Optional, Tuple, Union

from .arithmetic import is_fundamental_discriminant
from .errors import SpecError
from .paths import Path
from .series import (
    DEFAULT_SIEVE_CAP,
    CharacterTable,
    SeriesModel,
    character_from_prime_modulus,
    from_character,
    from_coefficients,
    from_rational,
    ideal_count_series,
    katz_psi,
    moebius_series,
    prime_indicator_series,
)

logger = logging.getLogger(__name__)

SERIES_TYPES = (
    "rational",
    "character",
    "character-prime",
    "ideal-count",
    "katz",
    "moebius",
    "prime-indicator",
    "coeffs",
)


def parse_complex(value: Any) -> complex:
    """
    A complex number from [re, im], a bare real, or a Python-style string
    such as "0.4+0.2j"

    Raises:
        SpecError: anything else
    """
    if isinstance(value, bool):
        raise SpecError(f"not a complex number: {value!r}")
    if isinstance(value, (int, float, complex)):
        return complex(value)
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise SpecError(f"complex numbers are [re, im] pairs, got {value!r}")
        try:
            return complex(float(value[0]), float(value[1]))
        except (TypeError, ValueError) as e:
            raise SpecError(f"not a complex number: {value!r}") from e
    if isinstance(value, str):
        text = value.strip().replace(" ", "").replace("i", "j")
        try:
            return complex(text)
        except ValueError as e:
            raise SpecError(f"not a complex number: {value!r}") from e
    raise SpecError(f"not a complex number: {value!r}")


def complex_pair(value: complex) -> List[float]:
    """[re, im] with plain floats"""
    value = complex(value)
    return [float(value.real), float(value.imag)]


def _shorthand(text: str) -> Dict[str, Any]:
    """
    "katz a=2", "ideal-count discriminant=-4", "character mod 4": a type name
    followed by key=value pairs; values are JSON. "character mod f" is the
    real character (D/.) with |D| = f, D < 0 preferred.
    """
    kind, *rest = text.split()
    data: Dict[str, Any] = {"type": kind}
    if kind == "character" and len(rest) == 2 and rest[0] == "mod":
        f = _int(_json_value(rest[1]), "modulus")
        for d in (-f, f):
            if is_fundamental_discriminant(d):
                table = CharacterTable.kronecker(d)
                return {"type": "character", "modulus": f, "values": [[v.real, v.imag] for v in table.values]}
        raise SpecError(f"no real primitive character of modulus {f}")
    for item in rest:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise SpecError(f"expected key=value in series shorthand, got {item!r}")
        data[key] = _json_value(value)
    return data


def _json_value(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f"not a JSON value: {text!r}") from e


def _load(spec: Union[str, Dict[str, Any]], what: str) -> Dict[str, Any]:
    if isinstance(spec, dict):
        return spec
    try:
        data = json.loads(spec)
    except (TypeError, json.JSONDecodeError) as e:
        raise SpecError(f"{what} spec is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise SpecError(f"{what} spec must be a JSON object")
    return data


def _require(data: Dict[str, Any], key: str) -> Any:
    if key not in data:
        raise SpecError(f"series spec of type {data.get('type')!r} needs '{key}'")
    return data[key]


def _int(value: Any, key: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or int(value) != value:
        raise SpecError(f"'{key}' must be an integer, got {value!r}")
    return int(value)


def series_from_spec(
    spec: Union[str, Dict[str, Any]], sieve_cap: int = DEFAULT_SIEVE_CAP
) -> SeriesModel:
    """
    Build a series model from its JSON specification

    Examples:
        {"type": "rational", "num": [0, 1], "den": [1, -1]}
        {"type": "character", "modulus": 4, "values": [1, 0, -1, 0]}
        {"type": "character-prime", "modulus": 5, "order": 2}
        {"type": "ideal-count", "discriminant": -4}
        {"type": "katz", "a": 2}
        {"type": "coeffs", "values": [1, [0, 1]], "bieberbach_k": 0}
        katz a=2
        character mod 4

    Raises:
        SpecError: unknown type or missing/malformed fields
    """
    if isinstance(spec, str) and spec.strip() and not spec.strip().startswith("{"):
        data = _shorthand(spec.strip())
    else:
        data = _load(spec, "series")
    kind = data.get("type")
    if kind not in SERIES_TYPES:
        raise SpecError(f"unknown series type {kind!r}; expected one of {', '.join(SERIES_TYPES)}")
    logger.debug("building series model of type %s", kind)

    if kind == "rational":
        num = _require(data, "num")
        den = _require(data, "den")
        if not isinstance(num, list) or not isinstance(den, list):
            raise SpecError("'num' and 'den' must be integer lists")
        return from_rational(num, den)

    if kind == "character":
        values = _require(data, "values")
        if not isinstance(values, list):
            raise SpecError("'values' must be a list")
        modulus = _int(data.get("modulus", len(values)), "modulus")
        if modulus != len(values):
            raise SpecError(f"character mod {modulus} needs {modulus} values, got {len(values)}")
        table = CharacterTable.from_values([parse_complex(v) for v in values])
        return from_character(table)

    if kind == "character-prime":
        modulus = _int(_require(data, "modulus"), "modulus")
        order = _int(data.get("order", 2), "order")
        power = _int(data.get("power", 1), "power")
        return from_character(character_from_prime_modulus(modulus, order, power))

    if kind == "ideal-count":
        return ideal_count_series(_int(_require(data, "discriminant"), "discriminant"), cap=sieve_cap)

    if kind == "katz":
        a = _int(_require(data, "a"), "a")
        if a < 2:
            raise SpecError("katz series needs a >= 2")
        return katz_psi(a)

    if kind == "moebius":
        return moebius_series(cap=sieve_cap)

    if kind == "prime-indicator":
        return prime_indicator_series(cap=sieve_cap)

    values = _require(data, "values")
    if not isinstance(values, list):
        raise SpecError("'values' must be a list")
    k = data.get("bieberbach_k", 0.0)
    try:
        k = float(k)
    except (TypeError, ValueError) as e:
        raise SpecError(f"'bieberbach_k' must be a number, got {k!r}") from e
    return from_coefficients([parse_complex(v) for v in values], bieberbach_k=k)


def path_from_spec(spec: Union[str, Dict[str, Any]]) -> Path:
    """Path from {"segments": [{"line": ...} | {"arc": ...}]}"""
    return Path.from_dict(_load(spec, "path"))


def parse_s_tuple(text: Union[str, List[Any]]) -> Tuple[complex, ...]:
    """
    Exponents from "2,1", "2.5", "3+2j" or a JSON list whose items are reals
    or [re, im] pairs

    Raises:
        SpecError: empty or unparseable
    """
    if isinstance(text, (list, tuple)):
        items = list(text)
    else:
        stripped = text.strip()
        if stripped.startswith("["):
            try:
                items = json.loads(stripped)
            except json.JSONDecodeError as e:
                raise SpecError(f"exponent list is not valid JSON: {e}") from e
            if not isinstance(items, list):
                raise SpecError("exponent list must be a JSON array")
        else:
            items = [part for part in stripped.split(",") if part]
    if not items:
        raise SpecError("at least one exponent is required")
    return tuple(parse_complex(item) for item in items)


def parse_optional_complex(value: Optional[str]) -> Optional[complex]:
    return None if value is None else parse_complex(value)
