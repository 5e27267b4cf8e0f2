from .contract import (
    GENESIS_HASH,
    LedgerState,
    NodeJoined,
    UavNodeRecord,
    chain_hash,
    get_node_by_id,
    join_swarm,
    verify_chain,
)
from .exceptions import LedgerError, LedgerValidationError, NodeNotFoundError
from .storage import dump_ledger, load_ledger
