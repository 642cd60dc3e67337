import json
from typing import Any, Optional

import yaml


class VerificationReport:
    """
    A class to collect verdicts and logs for a verification run.

    Attributes:
        _title (str): The name of the run, e.g. "table4" or "skt-verify".
        _units (dict): Unit name -> {"verdicts": {check: bool}, "details": dict}.
        _logs (list): A list of log messages for problems or annotations.
        _evidence_only (bool): True when verdicts rest on numerical evidence rather than exact computation.
    """

    def __init__(self, title: str, evidence_only: bool = False):
        """
        Initialize a VerificationReport instance.

        Args:
            title (str): The name of the run.
            evidence_only (bool): Whether the verdicts are numerical evidence only.
        """
        self._title = title
        self._units = {}
        self._logs = []
        self._evidence_only = evidence_only

    @property
    def title(self) -> str:
        """
        Get the title.

        Returns:
            str: The name of the run.
        """
        return self._title

    @title.setter
    def title(self, value: str) -> None:
        """
        Set the title.

        Args:
            value (str): The name of the run.

        Raises:
            ValueError: If the value is not a string.
        """
        if not isinstance(value, str):
            raise ValueError("Title must be a string.")
        self._title = value

    @property
    def evidence_only(self) -> bool:
        return self._evidence_only

    @property
    def units(self) -> dict:
        return self._units

    @property
    def passed(self) -> bool:
        """
        Whether every verdict of every unit holds.

        Returns:
            bool: True if no verdict failed.
        """
        return all(all(unit["verdicts"].values()) for unit in self._units.values())

    def failures(self) -> list[str]:
        """
        List the failed checks as "unit: check".

        Returns:
            list[str]: The failed checks in canonical order.
        """
        return [
            f"{name}: {check}"
            for name, unit in sorted(self._units.items())
            for check, ok in sorted(unit["verdicts"].items())
            if not ok
        ]

    def add_unit(self, name: str, verdicts: dict, details: Optional[dict] = None) -> None:
        """
        Add (or extend) a verification unit.

        Args:
            name (str): The unit name, e.g. a family id or an SKT table row label.
            verdicts (dict): Check name -> bool.
            details (dict, optional): Extra JSON-friendly data shown with the unit.
        """
        unit = self._units.setdefault(name, {"verdicts": {}, "details": {}})
        unit["verdicts"].update({k: bool(v) for k, v in verdicts.items()})
        unit["details"].update(details or {})

    def add_log(self, message: str) -> None:
        """
        Add a log entry to the report.

        Args:
            message (str): The log message to add.
        """
        self._logs.append(message)

    def merge(self, other: "VerificationReport") -> None:
        """
        Add the units and logs of another report.

        Args:
            other (VerificationReport): The report to merge in.
        """
        for name, unit in other.units.items():
            self.add_unit(name, unit["verdicts"], unit["details"])
        self._logs.extend(other._logs)
        self._evidence_only = self._evidence_only or other.evidence_only

    def to_json(self) -> dict[str, Any]:
        """
        Canonical dictionary of the report; unit order is sorted by name.

        Returns:
            dict: The report.
        """
        out = {
            "title": self._title,
            "passed": self.passed,
            "units": {name: self._units[name] for name in sorted(self._units)},
        }
        if self._evidence_only:
            out["evidence"] = "numerical evidence, not a proof"
        if self._logs:
            out["logs"] = list(self._logs)
        return out

    def dumps(self) -> str:
        """
        Serialize the report as canonical JSON.

        Returns:
            str: JSON text with sorted keys.
        """
        return json.dumps(self.to_json(), sort_keys=True, ensure_ascii=False, indent=2)

    def show_summary(self) -> None:
        """
        Display a summary of verdicts and logs in a structured format.
        """
        print("=" * 40)
        print(f"Summary for: {self._title}")
        print("=" * 40)
        if self._evidence_only:
            print("(numerical evidence, not a proof)")

        for name in sorted(self._units):
            unit = self._units[name]
            status = "PASS" if all(unit["verdicts"].values()) else "FAIL"
            print(f"\n[{status}] {name}")
            print(yaml.dump(unit["verdicts"], default_flow_style=False, allow_unicode=True, sort_keys=True), end="")
            if unit["details"]:
                print(yaml.dump(unit["details"], default_flow_style=False, allow_unicode=True, sort_keys=True), end="")
            print("-" * 20)

        if self._logs:
            print("\n[Logs]")
            for log in self._logs:
                print(f" - {log}")

        print(f"\nResult: {'PASS' if self.passed else 'FAIL'}")
