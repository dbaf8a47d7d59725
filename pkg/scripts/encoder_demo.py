"""Drive an encoder on a bundled section and print what the registers hold.

    python scripts/encoder_demo.py --section sr22 --steps 8 --refined
"""

import argparse
import random
from dataclasses import dataclass

from gtrellis.composition import refined_representative_array
from gtrellis.encoder import new_encoder, random_inputs, register_view, step, track
from gtrellis.generators import representative_array
from gtrellis.textio import load_bundled
from gtrellis.trellis import random_path


@dataclass
class DemoConfig:
    section: str = "sr22"
    steps: int = 8
    seed: int = 0
    refined: bool = False


def run(cfg: DemoConfig) -> None:
    sec = load_bundled(cfg.section).section
    table = refined_representative_array(sec) if cfg.refined else representative_array(sec)
    rng = random.Random(cfg.seed)
    print(f"{sec.name}: |B|={sec.B.order} |S|={sec.S.order} ell={table.ell}")
    state = new_encoder(table)
    heads = ["t", "x", *(f"h{a}" for a in range(1, table.ell + 1)), "branch", "state"]
    print(" ".join(f"{h:>6}" for h in heads))
    for t, x in enumerate(random_inputs(sec, cfg.steps, rng)):
        regs = register_view(state, x)
        b = step(state, x)
        print(" ".join(f"{v:>6}" for v in [t, *regs, b, sec.right[b]]))
    path = random_path(sec, 20, rng)
    res = track(table, path)
    print(f"tracking a random path of length {len(path)}: {'EXACT' if res.exact else 'FAIL'}")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--section", default="sr22")
    p.add_argument("--steps", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--refined", action="store_true")
    a = p.parse_args()
    run(DemoConfig(a.section, a.steps, a.seed, a.refined))


if __name__ == "__main__":
    main()
