"""Dilated shapelets: sDist features and the RDST classifier.

Shows the three features a shapelet contributes (minimum distance, location
of the best match, occurrence count) and fits the full random dilated
shapelet transform on the synthetic motif problem.
"""

import numpy as np

from tscbench.shapelets import RdstClassifier, sample_shapelets, sdist
from tscbench.synthetic import make_motif_dataset


def main():
    train, test = make_motif_dataset()
    rng = np.random.default_rng(0)

    shapelets = sample_shapelets(train, 5, rng)
    print("five sampled shapelets against the first test series:")
    print(f"{'dilation':>8} {'norm':>5} {'min dist':>9} {'argmin':>7} {'count':>6}")
    for s in shapelets:
        dist, offset, count = sdist(s, test.series[0])
        print(f"{s.dilation:>8} {str(s.normalise):>5} {dist:>9.3f} "
              f"{offset:>7} {count:>6}")

    clf = RdstClassifier(num_shapelets=2000, seed=0).fit(train)
    pred, _ = clf.predict(test)
    acc = (pred == test.labels).mean()
    print(f"\nRDST with 2000 shapelets (3 x 2000 = 6000 features): "
          f"accuracy {acc:.3f}")


if __name__ == "__main__":
    main()
