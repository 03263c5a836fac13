"""Regenerates tests/data from the scikit-image sample images.

natural/*.ppm: 256x256 center crops (resized with Lanczos), used by the
effectiveness, efficiency and determinism checks. astronaut512.ppm is the
512x512 timing image.
"""
from pathlib import Path

import numpy as np
from PIL import Image
from skimage import data

OUT = Path(__file__).resolve().parent.parent / "tests" / "data"
NAMES = ["astronaut", "chelsea", "coffee", "rocket", "immunohistochemistry", "hubble_deep_field"]


def square(img: np.ndarray) -> Image.Image:
    h, w = img.shape[:2]
    s = min(h, w)
    y, x = (h - s) // 2, (w - s) // 2
    return Image.fromarray(img[y : y + s, x : x + s, :3].astype(np.uint8))


def main() -> None:
    (OUT / "natural").mkdir(parents=True, exist_ok=True)
    for name in NAMES:
        img = square(getattr(data, name)()).resize((256, 256), Image.LANCZOS)
        img.save(OUT / "natural" / f"{name}.ppm")
    square(data.astronaut()).save(OUT / "astronaut512.ppm")


if __name__ == "__main__":
    main()
