"""The family registry: list everything, build a few entries, inspect certificates."""

import json

from oakit.catalog import catalog_build, catalog_list
from oakit.errors import MissingSeedError

print(f"{'id':24s} {'profile':14s} runs  description")
for entry in catalog_list():
    runs = entry.runs or "?"
    print(f"{entry.id:24s} {entry.profile:14s} {runs!s:5s} {entry.description}")

print("\nbuilding a few entries:\n")
for entry_id in ("thm8/4^1x2^4", "table3/3^1x2^8", "thm7/12^3x4^1x3^1"):
    array, cert = catalog_build(entry_id)
    print(f"{entry_id}: {array}")
    print(json.dumps(cert.to_json(), indent=2, sort_keys=True)[:400], "...\n")

print("entries that need an imported seed fail with a clear message:")
try:
    catalog_build("table5/12^1x6^6")
except MissingSeedError as exc:
    print("  ", exc)
