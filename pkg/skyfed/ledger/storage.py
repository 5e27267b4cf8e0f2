import json
import logging
import os
from pathlib import Path
from typing import Union

from .contract import LedgerState, NodeJoined, UavNodeRecord
from .exceptions import LedgerError


logger = logging.getLogger(__name__)


def dump_ledger(state: LedgerState, path: Union[os.PathLike, str]):
    """
    Write the ledger as one JSON object per event, keys in the order
    ``id, owner, node_id, hash``.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        for event, digest in zip(state.events, state.chain):
            line = {**event.to_dict(), "hash": digest.hex()}
            f.write(json.dumps(line, ensure_ascii=False) + "\n")
    logger.info(f"Wrote {state.total_nodes} ledger events to {path}")


def _event_from(entry: dict) -> NodeJoined:
    event = NodeJoined.from_dict(entry)
    if isinstance(event.id, bool) or not isinstance(event.id, int):
        raise TypeError(f"id must be an integer, got {event.id!r}")
    if not isinstance(event.owner, str) or not isinstance(event.node_id, str):
        raise TypeError("owner and node_id must be strings")
    return event


def load_ledger(path: Union[os.PathLike, str]) -> LedgerState:
    """
    Read a ledger written by :func:`dump_ledger`. Stored hashes are kept as
    they are, check the result with :func:`~skyfed.ledger.verify_chain`.
    """
    records, events, chain = [], [], []
    with Path(path).open("r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                entry = json.loads(line)
                event = _event_from(entry)
                digest = bytes.fromhex(entry["hash"])
            except (ValueError, KeyError, TypeError, AttributeError) as e:
                raise LedgerError(f"{path}:{lineno}: malformed ledger event: {e}")
            records.append(UavNodeRecord(owner=event.owner, node_id=event.node_id))
            events.append(event)
            chain.append(digest)
    return LedgerState(records=tuple(records), events=tuple(events), chain=tuple(chain))
