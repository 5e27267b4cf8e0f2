# -*- coding: utf-8 -*-
"""
Registration ledger of the swarm.

An append-only log of node registrations. Every ``NodeJoined`` event is
chained to the previous one by a SHA-256 digest over a canonical, length
prefixed encoding, so tampering with any past event is detected by
:func:`verify_chain`.
"""
import hashlib
import logging
import struct
from dataclasses import dataclass
from typing import Tuple

from dataclasses_json import dataclass_json

from .exceptions import LedgerValidationError, NodeNotFoundError


logger = logging.getLogger(__name__)

GENESIS_HASH = bytes(32)


@dataclass(frozen=True)
class UavNodeRecord:
    owner: str
    node_id: str


@dataclass_json
@dataclass(frozen=True)
class NodeJoined:
    id: int
    owner: str
    node_id: str

    def encode(self) -> bytes:
        """
        Canonical encoding: id as 8 byte big-endian, then owner and node id,
        each prefixed with its 4 byte big-endian UTF-8 length.

        Examples
        --------
        >>> NodeJoined(1, "a", "bc").encode().hex()
        '00000000000000010000000161000000026263'
        """
        owner = self.owner.encode("utf-8")
        node_id = self.node_id.encode("utf-8")
        return (
            struct.pack(">Q", self.id)
            + struct.pack(">I", len(owner))
            + owner
            + struct.pack(">I", len(node_id))
            + node_id
        )


def chain_hash(previous: bytes, event: NodeJoined) -> bytes:
    return hashlib.sha256(previous + event.encode()).digest()


@dataclass(frozen=True)
class LedgerState:
    """
    Value of the ledger. Operations return new states and never modify the
    one they were given.
    """

    records: Tuple[UavNodeRecord, ...] = ()
    events: Tuple[NodeJoined, ...] = ()
    chain: Tuple[bytes, ...] = ()

    @property
    def total_nodes(self) -> int:
        return len(self.records)

    @property
    def head_hash(self) -> bytes:
        return self.chain[-1] if self.chain else GENESIS_HASH


def join_swarm(
    state: LedgerState, caller: str, node_id: str
) -> Tuple[LedgerState, int]:
    """
    Register ``node_id`` on behalf of ``caller``.

    The new node gets the id ``state.total_nodes``.

    Examples
    --------
    >>> state, node = join_swarm(LedgerState(), "opA", "uav-0")
    >>> node, state.total_nodes
    (0, 1)

    Raises
    ------
    LedgerValidationError
        When ``node_id`` is empty.
    """
    if not node_id:
        raise LedgerValidationError("node_id must be a non-empty string")
    assigned_id = state.total_nodes
    event = NodeJoined(id=assigned_id, owner=caller, node_id=node_id)
    new_state = LedgerState(
        records=state.records + (UavNodeRecord(owner=caller, node_id=node_id),),
        events=state.events + (event,),
        chain=state.chain + (chain_hash(state.head_hash, event),),
    )
    logger.debug(f"NodeJoined({assigned_id}, {caller!r}, {node_id!r})")
    return new_state, assigned_id


def get_node_by_id(state: LedgerState, id: int) -> Tuple[str, str]:
    """Owner and node id registered under ``id``."""
    if not 0 <= id < state.total_nodes:
        raise NodeNotFoundError(
            f"No node with id {id}, the ledger holds {state.total_nodes} node(s)"
        )
    record = state.records[id]
    return record.owner, record.node_id


def verify_chain(state: LedgerState) -> bool:
    """Recompute every digest from genesis and compare with the stored chain."""
    if not len(state.events) == len(state.chain) == len(state.records):
        return False
    previous = GENESIS_HASH
    for index, (event, stored) in enumerate(zip(state.events, state.chain)):
        record = state.records[index]
        if event.id != index or (event.owner, event.node_id) != (
            record.owner,
            record.node_id,
        ):
            return False
        previous = chain_hash(previous, event)
        if previous != stored:
            logger.warning(f"Ledger chain broken at event {index}")
            return False
    return True
