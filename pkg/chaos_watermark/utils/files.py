import os
import tempfile
from contextlib import contextmanager
from pathlib import Path
from typing import IO, Any, Iterator, Union


@contextmanager
def atomic_write(
    path: Union[str, Path], mode: str = "wb", **kwargs: Any
) -> Iterator[IO]:
    """
    Writes to a temporary file next to `path` and moves it into place once the
    block exits cleanly, so a failure never leaves a partial file behind.
    """
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(
        dir=directory, prefix=f".{os.path.basename(path)}.", suffix=".tmp"
    )
    try:
        with os.fdopen(fd, mode, **kwargs) as fh:
            yield fh
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise


def write_text(path: Union[str, Path], text: str) -> None:
    with atomic_write(path, mode="w", encoding="utf-8") as fh:
        fh.write(text)
