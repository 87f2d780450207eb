from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

from gainrank.utils.consts import ItemType


@dataclass
class DataSeries:
    name: str
    values: Sequence[int]


@dataclass
class ItemDefinition:
    item_name: str
    item_type: ItemType
    x: Sequence[Union[str, int]]
    y: List[DataSeries] = field(default_factory=list)
    group: Optional[str] = None

    @property
    def chart_type(self) -> ItemType:
        return self.item_type
