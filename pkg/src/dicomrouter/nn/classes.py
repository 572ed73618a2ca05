"""The five anatomical routing groups."""
from __future__ import annotations

from enum import IntEnum


class BodyPartClass(IntEnum):
    ABDOMINAL = 0
    ADULT_CHEST = 1
    PEDIATRIC_CHEST = 2
    SPINE = 3
    OTHERS = 4


NUM_CLASSES = 5

# Stable lowercase keys, used by routing config sections and CSV columns.
CLASS_NAMES = ("abdominal", "adult_chest", "pediatric_chest", "spine", "others")

CLASS_BY_NAME = {name: BodyPartClass(i) for i, name in enumerate(CLASS_NAMES)}
