import csv
from typing import IO, Any, Dict, Iterable, List

from .files import atomic_write


class Exporter:
    """
    Writes rows as delimiter-separated text.

    Subclasses declare `fields` and implement `get_rows`.
    """

    fields: List[str]
    delimiter = ","

    def get_rows(self) -> Iterable[Dict[str, Any]]:
        """Returns the rows used for the export"""
        raise NotImplementedError()

    def write(self, file: IO) -> None:
        """Writes the table into the given file"""
        writer = csv.DictWriter(
            file, self.fields, delimiter=self.delimiter, lineterminator="\n"
        )
        writer.writeheader()

        # Replace None/'' with 'NA'
        writer.writerows(
            {
                field_name: (
                    "NA" if (field_value is None or field_value == "") else field_value
                )
                for field_name, field_value in row.items()
            }
            for row in self.get_rows()
        )

    def save(self, path: str) -> None:
        with atomic_write(path, mode="w", newline="", encoding="utf-8") as fh:
            self.write(fh)
