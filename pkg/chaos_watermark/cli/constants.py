from typing import Any, Dict, List, Optional, TypedDict

from chaos_watermark.verification.constants import DECISIONS

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_REJECTED = 3
EXIT_INCONCLUSIVE = 4
EXIT_LAYER = 5
EXIT_NO_SAMPLES = 6

DECISION_EXIT_STATUSES = {
    DECISIONS.confirmed: EXIT_OK,
    DECISIONS.rejected: EXIT_REJECTED,
    DECISIONS.inconclusive: EXIT_INCONCLUSIVE,
}

RunRecordType = TypedDict(
    "RunRecordType",
    {
        "command": str,
        "started_at": str,
        "duration": float,
        "seed": Optional[int],
        "config": Dict[str, Any],
        "inputs": List[str],
        "outputs": List[str],
        "exit_status": int,
        "error": Optional[str],
    },
)
