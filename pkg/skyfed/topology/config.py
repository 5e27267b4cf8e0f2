from pydantic import BaseModel, Field, root_validator


class SwarmConfig(BaseModel):
    """
    Deployment parameters of a UAV swarm.

    Distances are in meters. ``comm_range`` must exceed ``2 * max_drift`` so
    that the cluster head link threshold ``sigma`` stays positive.

    Examples
    --------
    >>> SwarmConfig(num_uavs=200).sigma
    140.0
    """

    num_uavs: int = Field(..., ge=2)
    area_width: float = Field(1000.0, gt=0)
    area_height: float = Field(1000.0, gt=0)
    comm_range: float = Field(150.0, gt=0)
    max_drift: float = Field(5.0, ge=0)
    rng_seed: int = Field(0, ge=0, lt=2 ** 64)

    class Config:
        allow_mutation = False

    @root_validator(skip_on_failure=True)
    def _range_covers_drift(cls, values):
        if values["comm_range"] <= 2 * values["max_drift"]:
            raise ValueError(
                f"comm_range ({values['comm_range']}) must be larger than twice "
                f"max_drift ({values['max_drift']})"
            )
        return values

    @property
    def sigma(self) -> float:
        """Distance under which two cluster heads are linked."""
        return link_threshold(self.comm_range, self.max_drift)


def link_threshold(comm_range: float, max_drift: float) -> float:
    """
    Cluster head link threshold, ``comm_range - 2 * max_drift``.

    Two heads closer than this stay in radio range however both of them drift.
    """
    return comm_range - 2 * max_drift
