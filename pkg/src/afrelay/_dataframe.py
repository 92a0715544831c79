"""Private helper for optional DataFrame export."""

from __future__ import annotations

from typing import Any, Sequence

_BACKENDS = ("pandas", "polars")


def _table_to_df(
    columns: Sequence[str], rows: Sequence[Sequence[Any]], backend: str = "pandas"
) -> Any:
    """
    Build a DataFrame from a header and row tuples.

    The data is passed column-wise so both backends keep the header order.
    """
    if backend not in _BACKENDS:
        raise ValueError(f"Unsupported backend: {backend!r}. Use 'pandas' or 'polars'.")
    data = {name: [row[i] for row in rows] for i, name in enumerate(columns)}

    try:
        if backend == "pandas":
            import pandas as pd  # type: ignore[import-untyped]

            return pd.DataFrame(data, columns=list(columns))
        import polars as pl  # type: ignore[import-untyped]

        return pl.DataFrame(data)
    except ImportError:
        raise ImportError(
            f"{backend} is required for this operation. "
            f"Install it with: pip install afrelay[{backend}]"
        ) from None
