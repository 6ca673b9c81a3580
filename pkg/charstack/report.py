"""Results of computations and verifications, with their serializations."""
import collections
import csv
import dataclasses
import io as _io
import json
from fractions import Fraction
from typing import Any, Dict, Generator, Iterable, List, Mapping, Optional, Sequence, Union

import numpy as np
import simdjson
import sympy

from charstack.algebra import RationalFunction, render


@dataclasses.dataclass(frozen=True)
class CheckResult:
    """Outcome of one verification.

    A failed check carries the first discrepancy in `detail`. Checks of
    observed patterns are not `fatal`: their failure is reported but does not
    fail the run.
    """

    name: str
    passed: bool
    detail: str = ""
    fatal: bool = True

    @property
    def verdict(self) -> str:
        if self.passed:
            return "pass"
        return "fail" if self.fatal else "notable"


@dataclasses.dataclass(frozen=True)
class Result:
    """A named computed value."""

    name: str
    value: Any


Entry = Union[Result, CheckResult]


def _make_json_serializable(value: Any) -> Any:
    """Convert `value` to a JSON-serializable form.

    Algebra values and series are rendered canonically, exact fractions are
    rendered as ``"a/b"`` and numpy values become Python numbers or lists.

    Arguments:
        value: A number, algebra value, mapping, sequence or numpy array.

    Returns:
        A structure of dicts, lists, strings, numbers and booleans.
    """
    # first, see if the value is already JSON-serializable
    if isinstance(value, (str, bool, int, float)) or value is None:
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else str(value)
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Mapping):
        return {str(k): _make_json_serializable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_make_json_serializable(v) for v in value]
    if isinstance(value, (CheckResult, Result)):
        return _entry_payload(value)
    if hasattr(value, "__str__") and type(value).__str__ is not object.__str__:
        return render(value)
    raise TypeError(f"Value of type `{type(value).__name__}` is not JSON serializable.")


def _entry_payload(entry: Entry) -> Dict[str, Any]:
    if isinstance(entry, CheckResult):
        return {"name": entry.name, "verdict": entry.verdict, "detail": entry.detail}
    return {"name": entry.name, "value": _make_json_serializable(entry.value)}


def _latex(value: Any) -> str:
    if isinstance(value, RationalFunction):
        return sympy.latex(value.as_expr())
    if isinstance(value, Fraction):
        return sympy.latex(sympy.Rational(value.numerator, value.denominator))
    return sympy.latex(value) if isinstance(value, (int, sympy.Basic)) else render(value)


class Report(collections.abc.Mapping):
    """Results of one subcommand.

    A `Report` works like a read-only dictionary from result names to values
    (or to ``CheckResult`` instances for verifications). Serialized views are
    available through ``to_json``, ``to_csv``, ``to_latex``, ``to_text`` and
    ``to_frame``.
    """

    def __init__(self, subcommand: str, inputs: Optional[Mapping[str, Any]] = None, entries: Iterable[Entry] = ()):
        self.subcommand = subcommand
        self.inputs = dict(inputs or {})
        self.entries: List[Entry] = list(entries)
        names = [entry.name for entry in self.entries]
        if len(set(names)) != len(names):
            duplicated = sorted({name for name in names if names.count(name) > 1})
            raise ValueError(f"Result names must be unique, found duplicates {duplicated}.")

    @property
    def checks(self) -> List[CheckResult]:
        return [entry for entry in self.entries if isinstance(entry, CheckResult)]

    @property
    def passed(self) -> bool:
        """True if no fatal check failed."""
        return all(check.passed or not check.fatal for check in self.checks)

    def __getitem__(self, name: str) -> Any:
        for entry in self.entries:
            if entry.name == name:
                return entry if isinstance(entry, CheckResult) else entry.value
        raise KeyError(name)

    def __iter__(self) -> Generator[str, None, None]:
        for entry in self.entries:
            yield entry.name

    def __len__(self) -> int:
        return len(self.entries)

    def __repr__(self) -> str:
        # inspired by xarray
        parts = [f"<charstack.{type(self).__name__}>", f"Subcommand: {self.subcommand}"]
        if self.inputs:
            parts.append("Inputs:")
            parts.extend(f"    {key}: {_make_json_serializable(value)}" for key, value in self.inputs.items())
        values = [entry for entry in self.entries if isinstance(entry, Result)]
        if values:
            parts.append(f"Values: {len(values)}")
        if self.checks:
            passed = sum(check.passed for check in self.checks)
            parts.append(f"Checks: {passed}/{len(self.checks)} passed")
        return "\n".join(parts)

    # serializations

    def payload(self) -> Dict[str, Any]:
        return {
            "subcommand": self.subcommand,
            "inputs": _make_json_serializable(self.inputs),
            "results": [_entry_payload(entry) for entry in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.payload(), indent=2)

    @classmethod
    def from_json(cls, text: Union[str, bytes]) -> "Report":
        """Rebuild a report from ``to_json`` output; values come back in rendered form."""
        parser = simdjson.Parser()
        doc = parser.parse(text.encode() if isinstance(text, str) else text).as_dict()
        entries: List[Entry] = []
        for item in doc["results"]:
            if "verdict" in item:
                verdict = item["verdict"]
                passed, fatal = verdict == "pass", verdict != "notable"
                entries.append(CheckResult(item["name"], passed, item.get("detail", ""), fatal))
            else:
                entries.append(Result(item["name"], item["value"]))
        return cls(doc["subcommand"], doc["inputs"], entries)

    def to_csv(self) -> str:
        buffer = _io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["name", "value", "verdict", "detail"])
        for entry in self.entries:
            if isinstance(entry, CheckResult):
                writer.writerow([entry.name, "", entry.verdict, entry.detail])
            else:
                writer.writerow([entry.name, _make_json_serializable(entry.value), "", ""])
        return buffer.getvalue()

    def to_latex(self) -> str:
        lines = ["\\begin{tabular}{ll}"]
        for entry in self.entries:
            body = entry.verdict if isinstance(entry, CheckResult) else f"${_latex(entry.value)}$"
            name = entry.name.replace("_", r"\_")
            lines.append(f"{name} & {body} " + r"\\")
        lines.append("\\end{tabular}")
        return "\n".join(lines)

    def to_text(self) -> str:
        """Plain text; a report holding a single value prints just that value."""
        if len(self.entries) == 1 and isinstance(self.entries[0], Result):
            return render(self.entries[0].value)
        lines = []
        for entry in self.entries:
            if isinstance(entry, CheckResult):
                line = f"{entry.name}: {entry.verdict.upper()}"
                lines.append(f"{line} ({entry.detail})" if entry.detail else line)
            else:
                lines.append(f"{entry.name}: {render(entry.value)}")
        return "\n".join(lines)

    def render(self, output_format: str) -> str:
        renderers = {"json": self.to_json, "csv": self.to_csv, "latex": self.to_latex, "text": self.to_text}
        if output_format not in renderers:
            raise ValueError(f"Unknown output format `{output_format}`; expected one of {', '.join(renderers)}.")
        return renderers[output_format]()

    def to_frame(self):
        """Return the entries as a pandas DataFrame.

        If pandas is not installed, a `RuntimeError` will be raised.

        Returns:
            pandas.DataFrame: one row per entry with columns `value`, `verdict` and `detail`.
        """
        try:
            import pandas as pd
        except ImportError:
            raise RuntimeError("The `to_frame` method requires the Python package `pandas`.")
        rows = []
        for entry in self.entries:
            if isinstance(entry, CheckResult):
                rows.append((entry.name, None, entry.verdict, entry.detail))
            else:
                rows.append((entry.name, _make_json_serializable(entry.value), None, None))
        df = pd.DataFrame(rows, columns=["name", "value", "verdict", "detail"]).set_index("name")
        df.columns.name = "fields"
        return df


def merge_reports(subcommand: str, reports: Sequence[Report]) -> Report:
    """Concatenate entries of several reports, prefixing names with each report's subcommand."""
    entries: List[Entry] = []
    for report in reports:
        for entry in report.entries:
            entries.append(dataclasses.replace(entry, name=f"{report.subcommand}.{entry.name}"))
    return Report(subcommand, {}, entries)
