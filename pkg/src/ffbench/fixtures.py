"""Published dual-core timing tables, transcribed verbatim.

``TABLE_ONE`` and ``TABLE_TWO`` hold (input, hidden, operations, time_us) for
one and two Xtensa LX6 cores on an ESP32. ``EXPECTED_RATIOS`` and
``EXPECTED_P`` are the printed two-decimal ratio and parallel-fraction
columns derived from them.
"""

import hashlib
import json
from dataclasses import dataclass

from .bench import BenchmarkRow

_HIDDEN = tuple(range(20, 201, 20))
_ONE_CORE_US = (383, 681, 966, 1258, 1582, 1830, 2203, 2415, 2815, 3071)
_TWO_CORE_US = (253, 406, 547, 699, 858, 976, 1159, 1268, 1482, 1599)

TABLE_ONE = tuple((50, h, 50 * h, t) for h, t in zip(_HIDDEN, _ONE_CORE_US))
TABLE_TWO = tuple((50, h, 50 * h, t) for h, t in zip(_HIDDEN, _TWO_CORE_US))
EXPECTED_RATIOS = (1.51, 1.68, 1.76, 1.80, 1.84, 1.87, 1.90, 1.90, 1.90, 1.92)
EXPECTED_P = (0.68, 0.81, 0.86, 0.89, 0.91, 0.93, 0.95, 0.95, 0.95, 0.96)


@dataclass(frozen=True)
class PaperFixture:
    table_one: tuple = TABLE_ONE
    table_two: tuple = TABLE_TWO
    expected_ratios: tuple = EXPECTED_RATIOS
    expected_p: tuple = EXPECTED_P

    def serial_rows(self) -> list[BenchmarkRow]:
        return [BenchmarkRow(n, h, ops, 1, float(t)) for n, h, ops, t in self.table_one]

    def parallel_rows(self) -> list[BenchmarkRow]:
        return [BenchmarkRow(n, h, ops, 2, float(t)) for n, h, ops, t in self.table_two]

    def checksum(self) -> str:
        """SHA-256 over a canonical JSON dump; guards the transcription against edits."""
        payload = json.dumps(
            [self.table_one, self.table_two, self.expected_ratios, self.expected_p],
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode()).hexdigest()


PAPER = PaperFixture()
