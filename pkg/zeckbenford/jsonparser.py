"""Parser for JSON run configurations."""

import json
import logging

import voluptuous as vol

from .const import (
    DEFAULT_BASE,
    DEFAULT_FORMAT,
    DEFAULT_WORKERS,
    METHOD_AUTOMATON,
    METHOD_ENUMERATION,
    METHOD_FORMULA,
    METHOD_RECURRENCE,
    OUTPUT_FORMATS,
)
from .errors import InvalidConfig
from .recurrence import big_int

_LOGGER = logging.getLogger(__name__)

SET_KINDS = ["even", "leading-digit", "significand", "residue", "file", "all"]
METHODS = [METHOD_RECURRENCE, METHOD_ENUMERATION, METHOD_FORMULA, METHOD_AUTOMATON]

CONFIG_SCHEMA = vol.Schema(
    {
        vol.Optional("spec"): {
            vol.Required("coeffs"): [int],
            vol.Optional("initial_terms"): vol.Any(None, [big_int]),
        },
        vol.Optional("canonical"): bool,
        vol.Optional("n"): vol.Any(vol.All(int, vol.Range(min=1)), [vol.All(int, vol.Range(min=1))]),
        vol.Optional("samples"): vol.All(int, vol.Range(min=1)),
        vol.Optional("seed"): vol.All(int, vol.Range(min=0)),
        vol.Optional("base"): vol.All(int, vol.Range(min=2)),
        vol.Optional("digit"): vol.All(int, vol.Range(min=1)),
        vol.Optional("significand"): vol.Coerce(float),
        vol.Optional("epsilon"): vol.All(vol.Coerce(float), vol.Range(min=0, min_included=False)),
        vol.Optional("set"): vol.In(SET_KINDS),
        vol.Optional("modulus"): vol.All(int, vol.Range(min=1)),
        vol.Optional("classes"): [int],
        vol.Optional("set_file"): str,
        vol.Optional("method"): vol.In(METHODS),
        vol.Optional("format"): vol.In(OUTPUT_FORMATS),
        vol.Optional("workers"): vol.All(int, vol.Range(min=1)),
        vol.Optional("budget"): vol.All(int, vol.Range(min=1)),
    }
)

# Declarative run-config values: name, type, default and the JSON path they come from.
CONFIG_VALS = [
    {"name": "coeffs", "type": "list", "source": "spec/coeffs", "default": None},
    {"name": "initial", "type": "list", "source": "spec/initial_terms", "default": None},
    {"name": "canonical", "type": "bool", "default": False},
    {"name": "n", "type": "list", "default": None},
    {"name": "samples", "type": "int", "default": None},
    {"name": "seed", "type": "int", "default": None},
    {"name": "base", "type": "int", "default": DEFAULT_BASE},
    {"name": "digit", "type": "int", "default": 1},
    {"name": "significand", "type": "float", "default": None},
    {"name": "epsilon", "type": "float", "default": None},
    {"name": "set", "type": "str", "default": None},
    {"name": "modulus", "type": "int", "default": None},
    {"name": "classes", "type": "list", "default": None},
    {"name": "set_file", "type": "str", "default": None},
    {"name": "method", "type": "str", "default": None},
    {"name": "format", "type": "str", "default": DEFAULT_FORMAT},
    {"name": "workers", "type": "int", "default": DEFAULT_WORKERS},
    {"name": "budget", "type": "int", "default": None},
]


# ---------------------------
#   from_entry
# ---------------------------
def from_entry(entry, param, default=None, val_type="str"):
    """Return a value from a config dict; "a/b" walks nested objects."""
    if "/" in param:
        for tmp_param in param.split("/"):
            if isinstance(entry, dict) and tmp_param in entry:
                entry = entry[tmp_param]
            else:
                return default

        ret = entry
    elif isinstance(entry, dict) and param in entry:
        ret = entry[param]
    else:
        return default

    if ret is None:
        return default

    if val_type == "int":
        ret = int(ret)
    elif val_type == "float":
        ret = float(ret)
    elif val_type == "list":
        ret = [big_int(item) for item in (ret if isinstance(ret, list) else [ret])]
    elif val_type == "str":
        ret = str(ret)

    return ret


# ---------------------------
#   from_entry_bool
# ---------------------------
def from_entry_bool(entry, param, default=False) -> bool:
    """Return a bool value from a config dict."""
    ret = from_entry(entry, param, default=default, val_type="raw")
    if isinstance(ret, str):
        if ret in ("on", "On", "ON", "yes", "Yes", "YES", "true", "True"):
            ret = True
        elif ret in ("off", "Off", "OFF", "no", "No", "NO", "false", "False"):
            ret = False

    if not isinstance(ret, bool):
        ret = default

    return ret


# ---------------------------
#   fill_defaults
# ---------------------------
def fill_defaults(data, vals) -> dict:
    """Fill defaults for names not yet present."""
    for val in vals:
        if val["name"] not in data:
            data[val["name"]] = val.get("default")

    return data


# ---------------------------
#   fill_vals
# ---------------------------
def fill_vals(data, entry, vals) -> dict:
    """Overlay values found in entry; names missing from entry keep their value."""
    for val in vals:
        _name = val["name"]
        _type = val.get("type", "str")
        _source = val.get("source", _name)
        _default = data.get(_name, val.get("default"))

        if _type == "bool":
            data[_name] = from_entry_bool(entry, _source, default=_default)
        else:
            data[_name] = from_entry(entry, _source, default=_default, val_type=_type)

    return data


# ---------------------------
#   parse_entry
# ---------------------------
def parse_entry(data=None, source=None, vals=None) -> dict:
    """Validate a config object and merge it over data."""
    data = fill_defaults({} if data is None else data, vals or CONFIG_VALS)
    if not source:
        return data

    try:
        source = CONFIG_SCHEMA(source)
    except vol.Invalid as err:
        raise InvalidConfig(str(err)) from err

    if _LOGGER.getEffectiveLevel() == 10:
        _LOGGER.debug("Processing config %s", source)

    return fill_vals(data, source, vals or CONFIG_VALS)


# ---------------------------
#   load_config
# ---------------------------
def load_config(filename, data=None) -> dict:
    """Read a JSON config file and merge it over data."""
    try:
        with open(filename, "r", encoding="utf-8") as f:
            source = json.load(f)
    except (OSError, ValueError) as err:
        raise InvalidConfig(f"{filename}: {err}") from err

    if not isinstance(source, dict):
        raise InvalidConfig(f"{filename}: expected a JSON object")

    return parse_entry(data, source)
