"""8-bit grayscale image container and binary PGM (P5) I/O."""

from __future__ import annotations

from dataclasses import dataclass, field

_WHITESPACE = b" \t\n\r\x0b\x0c"


class PgmError(ValueError):
    """Base class for malformed PGM input."""


class PgmMagicError(PgmError):
    """File does not start with the binary-PGM magic 'P5'."""


class PgmMaxvalError(PgmError):
    """Declared maxval is outside the supported 1..255 range."""


class PgmSizeError(PgmError):
    """Declared width or height is zero."""


class PgmTruncatedError(PgmError):
    """Pixel payload is shorter than width*height."""


@dataclass(frozen=True)
class Image:
    """Immutable 8-bit grayscale raster, row-major.

    `data` holds exactly width*height samples; bytes storage guarantees
    every sample lies in [0, 255].
    """

    width: int
    height: int
    data: bytes = field(repr=False)

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"image dimensions must be >= 1, got {self.width}x{self.height}")
        if not isinstance(self.data, bytes):
            object.__setattr__(self, "data", bytes(self.data))
        if len(self.data) != self.width * self.height:
            raise ValueError(
                f"data length {len(self.data)} != width*height = {self.width * self.height}"
            )

    @classmethod
    def from_pixels(cls, width: int, height: int, pixels) -> "Image":
        return cls(width, height, bytes(pixels))

    @classmethod
    def constant(cls, width: int, height: int, value: int) -> "Image":
        return cls(width, height, bytes([value]) * (width * height))

    def at(self, x: int, y: int) -> int:
        """Raw sample at an in-range coordinate."""
        return self.data[y * self.width + x]

    def sample_clamped(self, x: int, y: int) -> int:
        """Sample with replicate-border semantics; indices may be out of range."""
        if x < 0:
            x = 0
        elif x >= self.width:
            x = self.width - 1
        if y < 0:
            y = 0
        elif y >= self.height:
            y = self.height - 1
        return self.data[y * self.width + x]

    def row(self, y: int) -> bytes:
        return self.data[y * self.width : (y + 1) * self.width]


def _skip_header_filler(buf: bytes, pos: int) -> int:
    """Advance past whitespace and '#' comments inside the PGM header."""
    n = len(buf)
    while pos < n:
        b = buf[pos : pos + 1]
        if b in (b"#",):
            nl = buf.find(b"\n", pos)
            pos = n if nl < 0 else nl + 1
        elif b and b in _WHITESPACE:
            pos += 1
        else:
            break
    return pos


def _read_token(buf: bytes, pos: int) -> tuple[bytes, int]:
    pos = _skip_header_filler(buf, pos)
    start = pos
    n = len(buf)
    while pos < n and buf[pos : pos + 1] not in _WHITESPACE and buf[pos : pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise PgmError("unexpected end of PGM header")
    return buf[start:pos], pos


def _read_int(buf: bytes, pos: int, what: str) -> tuple[int, int]:
    tok, pos = _read_token(buf, pos)
    if not tok.isdigit():
        raise PgmError(f"malformed {what} token {tok!r} in PGM header")
    return int(tok), pos


def read_pgm(buf: bytes) -> Image:
    """Parse a binary PGM (magic P5, maxval <= 255) into an Image.

    Header tokens may be separated by arbitrary whitespace and '#' comments.
    Trailing bytes after the raster are tolerated; a short raster is an error.
    """
    magic, pos = _read_token(bytes(buf), 0)
    if magic != b"P5":
        raise PgmMagicError(f"expected binary PGM magic b'P5', got {magic!r}")
    buf = bytes(buf)
    width, pos = _read_int(buf, pos, "width")
    height, pos = _read_int(buf, pos, "height")
    maxval, pos = _read_int(buf, pos, "maxval")
    if width == 0 or height == 0:
        raise PgmSizeError(f"zero image dimension: {width}x{height}")
    if not 1 <= maxval <= 255:
        raise PgmMaxvalError(f"unsupported maxval {maxval}; need 1..255")
    # exactly one whitespace byte separates the header from the raster
    if pos >= len(buf) or buf[pos : pos + 1] not in _WHITESPACE:
        raise PgmTruncatedError("missing raster separator after maxval")
    pos += 1
    need = width * height
    payload = buf[pos : pos + need]
    if len(payload) < need:
        raise PgmTruncatedError(f"raster has {len(payload)} bytes, need {need}")
    return Image(width, height, payload)


def write_pgm(img: Image) -> bytes:
    """Serialize to binary PGM; read_pgm(write_pgm(img)) == img bit-exactly."""
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.data


def load_pgm(path) -> Image:
    with open(path, "rb") as fh:
        return read_pgm(fh.read())


def save_pgm(path, img: Image) -> None:
    with open(path, "wb") as fh:
        fh.write(write_pgm(img))


def box_decimate2(img: Image) -> Image:
    """Halve both dimensions by 2x2 box averaging (round half up).

    Phase-matched partner of the center-aligned coordinate map: box-decimating
    and then upscaling 2x lands output samples back on the original grid.
    Odd trailing rows/columns are dropped.
    """
    w2, h2 = img.width // 2, img.height // 2
    if w2 < 1 or h2 < 1:
        raise ValueError("image too small to decimate")
    out = bytearray(w2 * h2)
    data, w = img.data, img.width
    for y in range(h2):
        top = 2 * y * w
        bot = top + w
        for x in range(w2):
            i = 2 * x
            s = data[top + i] + data[top + i + 1] + data[bot + i] + data[bot + i + 1]
            out[y * w2 + x] = (s + 2) >> 2
    return Image(w2, h2, bytes(out))
