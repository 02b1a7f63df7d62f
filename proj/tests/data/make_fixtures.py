#!/usr/bin/env python3
"""Generates the GeoTIFF fixtures used by test_geotiff and the acceptance
suite. Pillow produces the little-endian strip variants; the plain
struct-packing emitter below produces big-endian, tiled, and signed
variants. Both are independent of the C++ reader under test.

Run from this directory:  python3 make_fixtures.py
"""

import struct
import zlib

import numpy as np
from PIL import Image, TiffImagePlugin

EPSG = 32634
ORIGIN = (500000.0, 4200000.0)
PIXEL = 10.0
W, H = 7, 5

U16 = np.array([[r * 100 + c * 7 for c in range(W)] for r in range(H)],
               dtype=np.uint16)
U16[1, 2] = 999  # nodata sentinel
F32 = (np.arange(H * W, dtype=np.float32).reshape(H, W) * 0.25) - 1.0
F32[0, 1] = np.nan
U8 = (np.arange(H * W, dtype=np.uint8).reshape(H, W) * 3) % 251
I16 = np.array([[r * 50 - c * 9 for c in range(W)] for r in range(H)],
               dtype=np.int16)


def geo_ifd(nodata=None):
    ifd = TiffImagePlugin.ImageFileDirectory_v2()
    ifd[33550] = (PIXEL, PIXEL, 0.0)
    ifd.tagtype[33550] = 12  # DOUBLE
    ifd[33922] = (0.0, 0.0, 0.0, ORIGIN[0], ORIGIN[1], 0.0)
    ifd.tagtype[33922] = 12
    ifd[34735] = (1, 1, 0, 3, 1024, 0, 1, 1, 1025, 0, 1, 1, 3072, 0, 1, EPSG)
    ifd.tagtype[34735] = 3  # SHORT
    if nodata is not None:
        ifd[42113] = nodata
        ifd.tagtype[42113] = 2  # ASCII
    return ifd


def save_pillow(array, path, compression=None, nodata=None):
    img = Image.fromarray(array)
    kwargs = {"tiffinfo": geo_ifd(nodata)}
    if compression:
        kwargs["compression"] = compression
    img.save(path, **kwargs)
    print("wrote", path)


# ---------------------------------------------------------------------------
# Minimal standalone TIFF emitter (struct packing only).

TYPE_SIZE = {1: 1, 2: 1, 3: 2, 4: 4, 12: 8}


def emit_tiff(path, array, *, big_endian=False, tiled=False, deflate=False,
              sample_format=1, geo=True, extra_tags=None,
              samples_per_pixel=1, nodata=None):
    bo = ">" if big_endian else "<"
    h, w = array.shape[:2]
    itemsize = array.dtype.itemsize
    arr = array.astype(array.dtype.newbyteorder(bo))

    chunks = []
    if tiled:
        tw = th = 16
        for ty in range(0, h, th):
            for tx in range(0, w, tw):
                tile = np.zeros((th, tw) + array.shape[2:], dtype=arr.dtype)
                sub = arr[ty:ty + th, tx:tx + tw]
                tile[:sub.shape[0], :sub.shape[1]] = sub
                chunks.append(tile.tobytes())
    else:
        chunks.append(arr.tobytes())
    if deflate:
        chunks = [zlib.compress(c, 6) for c in chunks]

    header_size = 8
    data = b""
    offsets, counts = [], []
    pos = header_size
    for c in chunks:
        if pos % 2:
            data += b"\0"
            pos += 1
        offsets.append(pos)
        counts.append(len(c))
        data += c
        pos += len(c)

    tags = {
        256: (4, [w]),
        257: (4, [h]),
        258: (3, [itemsize * 8] * samples_per_pixel),
        259: (3, [8 if deflate else 1]),
        262: (3, [1]),
        277: (3, [samples_per_pixel]),
        339: (3, [sample_format] * samples_per_pixel),
    }
    if tiled:
        tags[322] = (4, [16])
        tags[323] = (4, [16])
        tags[324] = (4, offsets)
        tags[325] = (4, counts)
    else:
        tags[273] = (4, offsets)
        tags[278] = (4, [h])
        tags[279] = (4, counts)
    if geo:
        tags[33550] = (12, [PIXEL, PIXEL, 0.0])
        tags[33922] = (12, [0.0, 0.0, 0.0, ORIGIN[0], ORIGIN[1], 0.0])
        tags[34735] = (3, [1, 1, 0, 3, 1024, 0, 1, 1, 1025, 0, 1, 1,
                           3072, 0, 1, EPSG])
    if nodata is not None:
        tags[42113] = (2, list(nodata.encode() + b"\0"))
    if extra_tags:
        tags.update(extra_tags)

    # out-of-line tag values after the pixel data
    overflow = b""
    entries = []
    fmt_for = {3: "H", 4: "I", 12: "d", 1: "B", 2: "B"}
    for tag in sorted(tags):
        ttype, values = tags[tag]
        raw = struct.pack(f"{bo}{len(values)}{fmt_for[ttype]}", *values)
        if len(raw) <= 4:
            value_field = raw + b"\0" * (4 - len(raw))
        else:
            off = pos + len(overflow)
            if off % 2:
                overflow += b"\0"
                off += 1
            value_field = struct.pack(f"{bo}I", off)
            overflow += raw
        entries.append(struct.pack(f"{bo}HHI", tag, ttype, len(values)) +
                       value_field)

    ifd_off = pos + len(overflow)
    if ifd_off % 2:
        overflow += b"\0"
        ifd_off += 1
    ifd = struct.pack(f"{bo}H", len(entries)) + b"".join(entries) + \
        struct.pack(f"{bo}I", 0)

    out = struct.pack(f"{bo}2sHI", b"MM" if big_endian else b"II", 42, ifd_off)
    with open(path, "wb") as fh:
        fh.write(out + data + overflow + ifd)
    print("wrote", path)


if __name__ == "__main__":
    save_pillow(U16, "ref_u16_le_strip_none.tif", nodata="999")
    save_pillow(U16, "ref_u16_le_strip_deflate.tif",
                compression="tiff_adobe_deflate", nodata="999")
    save_pillow(F32, "ref_f32_le_strip_none.tif", nodata="nan")
    save_pillow(U8, "ref_u8_le_strip_none.tif")
    save_pillow(U8, "ref_jpeg.tif", compression="jpeg")

    emit_tiff("ref_u16_be_strip_none.tif", U16, big_endian=True, nodata="999")
    emit_tiff("ref_u16_le_tiled_none.tif", U16, tiled=True, nodata="999")
    emit_tiff("ref_u16_be_tiled_deflate.tif", U16, big_endian=True, tiled=True,
              deflate=True, nodata="999")
    emit_tiff("ref_i16_le_strip_none.tif", I16, sample_format=2)
    emit_tiff("ref_nogeo.tif", U16, geo=False)
    emit_tiff("ref_predictor2.tif", U16, extra_tags={317: (3, [2])})
    rgb = np.dstack([U8, U8, U8])
    emit_tiff("ref_rgb.tif", rgb, samples_per_pixel=3)
