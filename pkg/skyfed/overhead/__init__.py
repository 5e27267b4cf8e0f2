from .counting import (
    MessageCount,
    Scheme,
    count_conventional,
    count_fca,
    count_intra,
    count_kha,
    count_round,
    pick_aggregator,
)
from .exceptions import RoutingError
