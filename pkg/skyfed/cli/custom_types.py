# -*- coding: utf-8 -*-
import typing

import click


class IntList(click.ParamType):
    """
    Comma separated integers, ie: ``10,20,40``
    """

    name = "int-list"

    def __init__(self, min_value: typing.Optional[int] = None):
        self.min_value = min_value

    def convert(self, value, param, ctx) -> typing.Tuple[int, ...]:
        if isinstance(value, tuple):
            return value
        try:
            numbers = tuple(int(v) for v in str(value).split(",") if v.strip())
        except ValueError:
            self.fail(f"{value!r} is not a comma separated list of integers", param, ctx)
        if not numbers:
            self.fail("expected at least one integer", param, ctx)
        if self.min_value is not None and min(numbers) < self.min_value:
            self.fail(f"values must be at least {self.min_value}", param, ctx)
        return numbers
