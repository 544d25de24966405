"""Symbolic Fourier words and the WEASEL-D bag-of-words pipeline.

Walks one series through the SFA steps — windowing, Fourier truncation,
coefficient binning, word packing — then fits the full dilated bag-of-words
classifier on the synthetic frequency problem.
"""

import numpy as np

from tscbench.dictionary import (
    SfaConfig,
    WeaselDClassifier,
    bag_of_words,
    fit_sfa,
    sfa_word,
)
from tscbench.series import dilated_windows
from tscbench.synthetic import make_frequency_dataset


def main():
    train, test = make_frequency_dataset()
    x = train.series[0]

    cfg = SfaConfig(
        window_length=12,
        dilation=1,
        word_length=8,
        alphabet_size=2,
        binning="equi-depth",
        normalise=False,
    )
    windows = dilated_windows(x, cfg.window_length, cfg.dilation)
    model = fit_sfa(windows, cfg)
    print(f"windows of length {cfg.window_length}: {len(windows)}")
    print(f"selected coefficient slots (by variance): {model.coefficient_indices}")

    words = [sfa_word(w, model) for w in windows[:8]]
    print(f"first eight words: {words}  (each < 2^8 = 256)")

    bag = bag_of_words(x, model)
    top = np.argsort(-bag)[:5]
    print("most frequent words:", {int(w): int(bag[w]) for w in top})
    print(f"bag total {bag.sum()} equals the window count {len(windows)}\n")

    clf = WeaselDClassifier(seed=0).fit(train)
    pred, _ = clf.predict(test)
    acc = (pred == test.labels).mean()
    print(f"WEASEL-D: {len(clf.models)} configurations, "
          f"{clf.n_features} features, accuracy {acc:.3f}")


if __name__ == "__main__":
    main()
