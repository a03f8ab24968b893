"""ZeroR cross-validation baseline for the three benchmark class layouts.

Attribute values are irrelevant to ZeroR, so each layout is paired with a few
noise columns and run through the same 10x10 stratified CV as every ranker.
"""
import argparse
import sys

import numpy as np

from pairrank.dataset import from_arrays
from pairrank.evaluation import cross_validate, stratified_folds

LAYOUTS = {
    "cancer": {"BRCA": 300, "COAD": 78, "KIRC": 146, "LUAD": 141, "PRAD": 136},
    "brain-tissue": {"BrainAmygdala": 97, "BrainAnteriorCingulateCortex": 121,
                     "BrainCaudateBG": 157, "BrainCerebellarHemisphere": 134,
                     "BrainCerebellum": 173, "BrainCortex": 158, "BrainHippocampus": 123,
                     "BrainHypothalamus": 120, "BrainNucleusAccumbensBG": 146,
                     "BrainPutamenBG": 123, "BrainSpinalCordC1": 90, "BrainSubstantiaNigra": 87},
    "brain-age": {"20-29": 59, "30-39": 35, "40-49": 165, "50-59": 478, "60-69": 705,
                  "70-79": 87},
}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--seed", type=int, default=42)
    args = p.parse_args(argv)
    print("layout\tinstances\tmajority\tmajority%\tcv_mean\tcv_std")
    for name, layout in LAYOUTS.items():
        y = [lab for lab, c in layout.items() for _ in range(c)]
        ds = from_arrays(np.zeros((len(y), 2)), y, name=name)
        res = cross_validate(ds, "zeror", stratified_folds(ds, args.folds, args.repeats, args.seed))
        top = max(layout.values())
        print(f"{name}\t{len(y)}\t{top}\t{100 * top / len(y):.2f}\t{res.mean:.2f}\t{res.std:.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
