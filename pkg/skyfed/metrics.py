from dataclasses import dataclass, field
from typing import Dict, List, Optional

from dataclasses_json import dataclass_json


CSV_COLUMNS = [
    "layout",
    "round",
    "scheme",
    "k",
    "Q",
    "acc_mean",
    "loss_mean",
    "acc_min",
    "acc_max",
    "msg_intra",
    "msg_inter",
    "msg_total",
]


@dataclass_json
@dataclass
class RoundMetrics:
    """
    Record of one training round of one layout.

    Accuracy and loss are taken over the models the cluster heads hold at
    the end of the round; ``ch_accuracy`` keeps the value per head.
    """

    layout: int
    round: int
    scheme: str
    k: Optional[int]
    num_clusters: int
    acc_mean: float
    loss_mean: float
    acc_min: float
    acc_max: float
    msg_intra: int
    msg_inter: int
    carried_clusters: List[int] = field(default_factory=list)
    ch_accuracy: Dict[int, float] = field(default_factory=dict)

    @property
    def msg_total(self) -> int:
        return self.msg_intra + self.msg_inter

    def to_row(self) -> dict:
        """Values keyed by :data:`CSV_COLUMNS`."""
        return {
            "layout": self.layout,
            "round": self.round,
            "scheme": self.scheme,
            "k": self.k,
            "Q": self.num_clusters,
            "acc_mean": self.acc_mean,
            "loss_mean": self.loss_mean,
            "acc_min": self.acc_min,
            "acc_max": self.acc_max,
            "msg_intra": self.msg_intra,
            "msg_inter": self.msg_inter,
            "msg_total": self.msg_total,
        }
