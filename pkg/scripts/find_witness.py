"""Search for the smallest groupoid carrying the four-element pattern
r,s,t,u,v and print its table, profile and the shared deck."""
import argparse
import json

from decklab.multiset import cards
from decklab.reconstruction import search_example1_witness


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-order", type=int, default=6)
    ap.add_argument("--distinct", action="store_true", help="require r, s, t pairwise distinct")
    args = ap.parse_args()
    w = search_example1_witness(args.max_order, args.distinct)
    if w is None:
        print("no witness up to order", args.max_order)
        return
    print(json.dumps({
        "order": w.groupoid.order,
        "table": [list(r) for r in w.groupoid.rows()],
        "binding": dict(w.binding),
        "M": str(w.m), "M2": str(w.m2),
        "deck": cards(w.groupoid, w.m).to_json(),
        "profile": w.groupoid.profile.as_dict(),
    }, indent=2))


if __name__ == "__main__":
    main()
