#!/usr/bin/env python3
"""Regenerate fixtures/ (catalog JSON, derivation scripts, proof-form relations).

Run from the repository root.  Existing files are overwritten; the output is
deterministic, so a clean regeneration leaves git with no diff.
"""

import argparse
import json
from pathlib import Path

from twistpres import catalog, chains
from twistpres.catalog import valid_keys
from twistpres.derivation import check_derivation, dumps_script
from twistpres.presentation import serialize
from twistpres.words import format_word

GENERA = range(3, 13)


def write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def relation_fixture(name, description, builder):
    body = {}
    for g in GENERA:
        rels = builder(g)
        if rels:
            body[str(g)] = [{"label": lab, "word": format_word(w.letters)} for lab, w in rels]
    obj = {"name": name, "description": description, "kind": "twist", "s": 1, "by_genus": body}
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--root", default="fixtures")
    args = ap.parse_args()
    root = Path(args.root)

    keys = valid_keys(GENERA)
    for key in keys:
        write(root / "catalog" / f"{key}.json", serialize(catalog.build(key), "json"))
    print(f"catalog: {len(keys)} presentations")

    scripts = chains.all_chains()
    for d in scripts:
        rep = check_derivation(catalog.presentation_for(d.context), d)
        if not rep.ok:
            raise SystemExit(f"{d.name}: {rep}")
        write(root / "derivations" / f"{d.name}.json", dumps_script(d))
    print(f"derivations: {len(scripts)} scripts")

    write(root / "relations" / "abar3_1_wide.json",
          relation_fixture("abar3_1_wide", "a_i c = c a_i for i != 2, 4 (range used inside the proof)",
                           catalog.abar3_wide))
    write(root / "relations" / "abar7_proof.json",
          relation_fixture("abar7_proof", "b̄_0 = a_1^-1, b̄_1 = c for all even g >= 6 (proof form)",
                           catalog.abar7_proof))
    print("relations: 2 files")


if __name__ == "__main__":
    main()
