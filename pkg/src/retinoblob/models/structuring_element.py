from typing import Any, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator


class StructuringElement(BaseModel):
    """
    Flat neighbourhood as integer (dx, dy) offsets around an implicit (0, 0) anchor.
    """
    model_config = ConfigDict(frozen=True)

    offsets: Tuple[Tuple[int, int], ...]

    @field_validator('offsets', mode='before')
    @classmethod
    def check_offsets(cls, v: Any) -> Tuple[Tuple[int, int], ...]:
        offsets = tuple(sorted({(int(dx), int(dy)) for dx, dy in v}, key=lambda o: (o[1], o[0])))
        members = set(offsets)
        if (0, 0) not in members:
            raise ValueError('structuring element must contain the origin (0, 0)')
        for dx, dy in offsets:
            if (-dx, -dy) not in members:
                raise ValueError(f'structuring element is not symmetric: ({dx}, {dy}) has no mirror')
        return offsets

    def __len__(self) -> int:
        return len(self.offsets)

    @property
    def reach(self) -> Tuple[int, int]:
        """Largest |dx| and |dy|."""
        return max(abs(dx) for dx, _ in self.offsets), max(abs(dy) for _, dy in self.offsets)

    def footprint(self) -> np.ndarray:
        """
        Boolean array of shape (2*ry+1, 2*rx+1) centred on the anchor.
        """
        rx, ry = self.reach
        fp = np.zeros((2 * ry + 1, 2 * rx + 1), dtype=bool)
        for dx, dy in self.offsets:
            fp[dy + ry, dx + rx] = True
        return fp

    def row_spans(self) -> Optional[List[Tuple[int, int]]]:
        """
        (dy, half_width) per row when every row is a contiguous run centred on dx = 0, else None.
        """
        rows = {}
        for dx, dy in self.offsets:
            rows.setdefault(dy, []).append(dx)
        spans = []
        for dy in sorted(rows):
            xs = sorted(rows[dy])
            half = xs[-1]
            if xs[0] != -half or len(xs) != 2 * half + 1:
                return None
            spans.append((dy, half))
        return spans
