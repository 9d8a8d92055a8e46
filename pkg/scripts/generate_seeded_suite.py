#!/usr/bin/env python3
"""Materialize the seeded-smell suite as files on disk.

Writes one .ucd file per generated document plus a manifest.json mapping
each seeded document to the smell it carries, then re-runs the detector
over the files and reports seed recall and clean-document precision.
"""

import argparse
import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "tests"))

import seeding  # noqa: E402

from ucsmell import DetectorConfig, detect, load_lexicon, parse_text  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument(
        "--out",
        default="build/seeded",
        help="output directory (default: build/seeded)",
    )
    args = ap.parse_args()

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    seeded = seeding.seeded_documents()
    clean = seeding.clean_documents()
    for doc in seeded + clean:
        (out / f"{doc.name}.ucd").write_text(doc.text, encoding="utf-8")
    manifest = seeding.manifest(seeded)
    (out / "manifest.json").write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )
    print(f"wrote {len(seeded)} seeded + {len(clean)} clean documents to {out}")

    lex = load_lexicon()
    cfg = DetectorConfig()
    hits = 0
    for entry in manifest:
        text = (out / f"{entry['doc']}.ucd").read_text(encoding="utf-8")
        parsed, _ = parse_text(text)
        found = {f.smell_id for f in detect(parsed, cfg, lex)}
        hits += entry["smell_id"] in found
    print(f"seed recall: {hits}/{len(manifest)}")

    spurious = 0
    for doc in clean:
        parsed, _ = parse_text(doc.text)
        spurious += len(detect(parsed, cfg, lex))
    print(f"findings on clean documents: {spurious}")
    return 0 if hits == len(manifest) and spurious == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
