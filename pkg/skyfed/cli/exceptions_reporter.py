import json
import re
import traceback

from typing import Tuple, Iterable, Type, IO, Optional, List, Dict, cast
from types import TracebackType
from collections import Counter
from enum import Enum


_non_ascii = re.compile(r"[^\x00-\x7F]")


class ReportLevel(Enum):
    EXIT_CODE = 0
    TYPE = 1
    MESSAGE = 2
    TRACEBACK = 3

    @classmethod
    def get_by_name(
        cls, name: str, default: Optional["ReportLevel"] = None
    ) -> Optional["ReportLevel"]:
        for level in cls:
            if name.upper() == level.name:
                return level
        return default

    @classmethod
    def get_names(cls):
        return [level.name for level in cls]


DEFAULT_EXIT_CODE = 1
# Reports end up in small files read by batch schedulers
MAX_REPORT_LENGTH = 1524

ExcInfo = Tuple[
    Optional[Type[BaseException]], Optional[BaseException], Optional[TracebackType]
]


class ExceptionsReporter:
    """
    Maps exceptions raised by a CLI command to process exit codes and
    optionally writes a JSON description of the failure to a file.

    The most specific registered exception class wins; unregistered
    exceptions exit with ``default_exit_code``.
    """

    def __init__(
        self,
        exceptions: Iterable[Tuple[Type[BaseException], int]],
        default_exit_code: int = DEFAULT_EXIT_CODE,
        traceback_limit: Optional[int] = None,
    ):
        self.exceptions_items = self.sort_exceptions(exceptions)
        self.default_exit_code = default_exit_code
        self.traceback_limit = traceback_limit

    @staticmethod
    def sort_exceptions(
        exceptions: Iterable[Tuple[Type[BaseException], int]]
    ) -> List[Tuple[Type[BaseException], int]]:
        """Subclasses before their bases, then by exit code."""
        exceptions = list(exceptions)
        subclasses: Dict[Type[BaseException], int] = Counter()
        for exc, _ in exceptions:
            for other, _ in exceptions:
                if other is not exc and issubclass(exc, other):
                    subclasses[other] += 1
        return sorted(exceptions, key=lambda item: (subclasses[item[0]], item[1]))

    @staticmethod
    def trim_message(message: str, max_length: int) -> str:
        if len(message) <= max_length:
            return message
        message = message[: max_length - 3]
        return "" if len(message) <= 3 else message + "..."

    @staticmethod
    def trim_formatted_traceback(
        formatted_traceback: List[str], max_length: int
    ) -> List[str]:
        """Keep the innermost frames which fit, marking the cut with ``...``."""
        if sum(len(line) for line in formatted_traceback) <= max_length:
            return formatted_traceback
        length = 4
        kept: List[str] = []
        for line in reversed(formatted_traceback):
            length += len(line)
            if length > max_length:
                kept.append("...\n")
                break
            kept.append(line)
        return list(reversed(kept))

    def found_exception_item(self, exc_type: Type[BaseException]):
        for item in self.exceptions_items:
            if issubclass(exc_type, item[0]):
                return item
        return None

    def exception_exit_code(self, exc_type: Optional[Type[BaseException]]) -> int:
        if exc_type is None:
            return 0
        item = self.found_exception_item(exc_type)
        return item[1] if item is not None else self.default_exit_code

    def report(
        self,
        level: ReportLevel,
        exc_type: Optional[Type[BaseException]],
        exc_value: Optional[BaseException],
        exc_traceback: Optional[TracebackType],
        report_file: IO[str],
        max_message_len: Optional[int] = None,
    ):
        """
        Write a JSON report of the exception to ``report_file``; the arguments
        are what ``sys.exc_info()`` returns. Unregistered exceptions and
        ``ReportLevel.EXIT_CODE`` give an empty object.
        """
        report: Dict[str, str] = {}
        if (
            exc_type is not None
            and exc_value is not None
            and self.found_exception_item(exc_type) is not None
            and level != ReportLevel.EXIT_CODE
        ):
            report["type"] = _non_ascii.sub("?", exc_type.__name__)
            if level == ReportLevel.MESSAGE:
                message = _non_ascii.sub("?", str(exc_value))
                if max_message_len is not None:
                    message = self.trim_message(message, max_message_len)
                report["message"] = message
            elif level == ReportLevel.TRACEBACK:
                lines = [
                    _non_ascii.sub("?", line)
                    for line in traceback.format_exception(
                        exc_type, exc_value, exc_traceback, limit=self.traceback_limit
                    )
                ]
                if max_message_len is not None:
                    lines = self.trim_formatted_traceback(lines, max_message_len)
                report["traceback"] = "".join(lines)
        json.dump(report, report_file)

    def safe_report(
        self,
        level: ReportLevel,
        exc_type: Optional[Type[BaseException]],
        exc_value: Optional[BaseException],
        exc_traceback: Optional[TracebackType],
        report_file_path: str,
        max_message_len: Optional[int] = None,
    ):
        """:meth:`report` into a file path, printing rather than raising on failure."""
        try:
            with open(report_file_path, "w", encoding="utf-8") as report_file:
                self.report(
                    level,
                    exc_type,
                    exc_value,
                    exc_traceback,
                    report_file,
                    max_message_len,
                )
        except Exception:
            traceback.print_exc()

    def handle(
        self,
        exc_info: ExcInfo,
        report_file_path: Optional[str] = None,
        report_level: str = ReportLevel.MESSAGE.name,
    ) -> int:
        """
        Report the exception if a report file is given and return the exit
        code the command should terminate with.
        """
        exc_type, exc_value, exc_traceback = exc_info
        if report_file_path:
            self.safe_report(
                cast(
                    ReportLevel,
                    ReportLevel.get_by_name(report_level, ReportLevel.EXIT_CODE),
                ),
                exc_type,
                exc_value,
                exc_traceback,
                report_file_path,
                max_message_len=MAX_REPORT_LENGTH,
            )
        return self.exception_exit_code(exc_type)
