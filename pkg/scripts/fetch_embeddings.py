#!/usr/bin/env python3
"""Download the public 300-d fastText vectors used by the reproduction tier.

Writes <data-dir>/embeddings/cc.<lang>.300.vec for each requested language.
The files are large (several GB each unpacked); make sure the target disk
has room. This script lives outside the library on purpose: the core never
downloads anything.
"""

import argparse
import gzip
import shutil
import sys
import urllib.request
from pathlib import Path

URL_TEMPLATE = "https://dl.fbaipublicfiles.com/fasttext/vectors-crawl/cc.{lang}.300.vec.gz"
LANGUAGES = ("en", "fr", "de", "it", "pl", "es")


def fetch(lang: str, out_dir: Path, keep_gz: bool) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    target = out_dir / f"cc.{lang}.300.vec"
    if target.exists():
        print(f"{target} already present, skipping")
        return target
    gz_path = out_dir / f"cc.{lang}.300.vec.gz"
    url = URL_TEMPLATE.format(lang=lang)
    print(f"downloading {url}")
    with urllib.request.urlopen(url) as response, open(gz_path, "wb") as handle:
        shutil.copyfileobj(response, handle, length=1 << 20)
    print(f"unpacking {gz_path}")
    with gzip.open(gz_path, "rb") as src, open(target, "wb") as dst:
        shutil.copyfileobj(src, dst, length=1 << 20)
    if not keep_gz:
        gz_path.unlink()
    return target


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data-dir", required=True,
                        help="reproduction data directory (see REPRODUCING.md)")
    parser.add_argument("--languages", default=",".join(LANGUAGES),
                        help=f"comma-separated subset of {','.join(LANGUAGES)}")
    parser.add_argument("--keep-gz", action="store_true")
    args = parser.parse_args()
    out_dir = Path(args.data_dir) / "embeddings"
    for lang in args.languages.split(","):
        lang = lang.strip()
        if lang not in LANGUAGES:
            print(f"unknown language {lang!r}", file=sys.stderr)
            return 1
        fetch(lang, out_dir, args.keep_gz)
    return 0


if __name__ == "__main__":
    sys.exit(main())
