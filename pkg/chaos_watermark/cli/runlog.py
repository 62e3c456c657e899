import json
import logging
import os
from typing import Optional

from django.conf import settings

from .constants import RunRecordType

logger = logging.getLogger(__name__)


def append_run_record(record: RunRecordType, path: Optional[str] = None) -> None:
    """Appends the record as one JSON line; an empty RUN_LOG_PATH disables this"""
    path = path or settings.RUN_LOG_PATH
    if not path:
        return

    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(record, sort_keys=True, default=str) + "\n")
    logger.debug("Recorded %s run in %s", record["command"], path)
