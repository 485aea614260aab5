"""
Tabular command results and their CSV / structured (JSON, YAML) renderings.
"""
import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import yaml

from check_report import format_number, to_jsonable
from errors import OutputWriteError
from logging_config import get_logger

logger = get_logger(__name__)


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format_number(value)
    return str(value)


def _structured_value(value: Any) -> Any:
    """Floats rounded to 12 significant digits; infinities become 'inf'."""
    if isinstance(value, float) and math.isfinite(value):
        return float(format_number(value))
    return to_jsonable(value)


@dataclass
class ResultTable:
    """
    Header plus rows, as produced by every command.

    `records` replaces the row dicts in structured output when a command has
    richer data to show (e.g. verification witnesses).
    """
    columns: List[str]
    rows: List[List[Any]] = field(default_factory=list)
    records: Optional[List[Dict[str, Any]]] = None

    def add_row(self, *values: Any) -> None:
        self.rows.append(list(values))

    def to_dict(self) -> List[Dict[str, Any]]:
        if self.records is not None:
            return to_jsonable(self.records)
        return [
            {column: _structured_value(value) for column, value in zip(self.columns, row)}
            for row in self.rows
        ]

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_csv_cell(value) for value in row])
        return buffer.getvalue()

    def render(self, output_format: str) -> str:
        """Text for stdout: CSV, or indented JSON for 'structured'."""
        if output_format == "structured":
            return json.dumps(self.to_dict(), indent=2) + "\n"
        return self.to_csv()

    def save_to_file(self, filename: str, format: str = 'json') -> None:
        """
        Save the table to file.

        Args:
            filename: Output filename
            format: Output format ('json', 'yaml' or 'csv')

        Raises:
            OutputWriteError: the file cannot be opened or written
        """
        try:
            with open(filename, 'w') as f:
                if format.lower() == 'yaml':
                    yaml.dump(self.to_dict(), f, default_flow_style=False, indent=2)
                elif format.lower() == 'csv':
                    f.write(self.to_csv())
                else:
                    json.dump(self.to_dict(), f, indent=2, default=str)

            logger.info(f"Results saved to {filename}")

        except (OSError, yaml.YAMLError) as e:
            raise OutputWriteError(f"cannot write {filename}: {e}") from e


def format_for_filename(filename: str) -> str:
    """Pick the file format from the extension: .yaml/.yml, .csv, anything else JSON."""
    lowered = filename.lower()
    if lowered.endswith((".yaml", ".yml")):
        return "yaml"
    if lowered.endswith(".csv"):
        return "csv"
    return "json"
