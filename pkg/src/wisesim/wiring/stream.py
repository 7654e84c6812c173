import logging
import struct
from pathlib import Path
from typing import Iterable, List, Tuple

from wisesim.wiring.api import SelectWord

logger = logging.getLogger(__name__)

MAGIC = b'WISE'
HEADER = struct.Struct('<4sIQ')


class StreamFormatError(ValueError):
    pass


def write_select_stream(path: Path, words: Iterable[SelectWord], length: int) -> int:
    """
    Writes select words back to back after a 16-byte little-endian header {magic, N, step count};
    every word takes ceil(N / 8) bytes. Returns the number of words written.
    """
    words = list(words)
    for word in words:
        if word.get_length() != length:
            raise StreamFormatError(f'{word.get_length()}-bit word in a {length}-bit stream')
    with Path(path).open('wb') as out:
        out.write(HEADER.pack(MAGIC, length, len(words)))
        for word in words:
            out.write(word.to_bytes())
    logger.info(f'wrote {len(words)} select words of {length} bits to {path}')
    return len(words)


def read_select_stream(path: Path) -> Tuple[int, List[SelectWord]]:
    data = Path(path).read_bytes()
    if len(data) < HEADER.size:
        raise StreamFormatError(f'{path} is too short for a select stream header')
    magic, length, count = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise StreamFormatError(f'{path} is not a select stream: magic {magic!r}')
    width = SelectWord.byte_length(length)
    if len(data) != HEADER.size + count * width:
        raise StreamFormatError(f'{path} holds {len(data) - HEADER.size} payload bytes, '
                                f'expected {count} words of {width} bytes')
    words = []
    for index in range(count):
        offset = HEADER.size + index * width
        words.append(SelectWord.from_bytes(data[offset:offset + width], length))
    return length, words
