# Copyright 2026 The wikindex Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Smoke tests for the python bindings: one pass over every exposed surface."""

import math
import shutil
import sys
import tempfile
from pathlib import Path

import wikindex


def main() -> int:
    data_dir = Path(sys.argv[1])
    work = Path(tempfile.mkdtemp(prefix="wikindex_py_"))
    try:
        run(data_dir, work)
    finally:
        shutil.rmtree(work, ignore_errors=True)
    print("python smoke tests passed")
    return 0


def run(data_dir: Path, work: Path) -> None:
    # Wikitext conversion.
    assert wikindex.convert("''italic'' '''bold'''") == "italic bold"
    assert wikindex.convert("[[Category:Japan]]") == ""
    assert (
        wikindex.convert("see [[w:P|label]]", keep_interwiki=True)
        == "see label"
    )

    # Tokenizer and lemmatizer.
    tokens = wikindex.tokenize("don't re-use 42")
    assert [t.surface for t in tokens] == ["don't", "re-use", "42"]
    assert [t.has_letter for t in tokens] == [True, True, False]
    assert wikindex.lemmatize("Blossoms", lang="en") == "blossom"
    assert wikindex.lemmatize("Tea", lang="ru") == "tea"
    assert wikindex.lemmatize("x", external=lambda s: s.upper()) == "X"
    entries, total = wikindex.lemma_frequencies("green tea, green trees")
    assert total == 4
    assert entries == {"green": 2, "tea": 1, "tree": 1}

    # Dump reading.
    pages = wikindex.read_dump(data_dir / "mini_dump.xml")
    assert len(pages) == 21
    assert pages[0].title == "Tea"
    limited = wikindex.read_dump(data_dir / "mini_dump.xml", max_pages=3)
    assert len(limited) == 3

    # End-to-end index build and queries.
    index_dir = work / "idx"
    n = wikindex.build_index(
        data_dir / "mini_dump.xml", index_dir, lang="simple", threads=2
    )
    assert n == 21
    index = wikindex.Index.open(index_dir)
    assert index.stats().articles == 21

    tea = index.term("tea")
    assert tea is not None and tea.doc_freq > 0
    assert index.term("no-such-lemma-xyz") is None
    assert index.idf("tea") >= 0.0

    hits = index.pages_for_lemmas({"green", "tea"}, top_k=5)
    assert hits, "green+tea must match pages in the mini dump"
    assert hits[0].sum_tf >= hits[-1].sum_tf

    weights = index.doc_term_weights("Green tea", top_k=5)
    assert weights and abs(weights[0].weight - weights[0].tf * weights[0].idf) < 1e-12

    rows = index.postings(tea.term_id)
    assert rows and rows[0].term_freq >= rows[-1].term_freq

    try:
        index.doc_terms(10**9)
        raise AssertionError("expected UnknownPageError")
    except wikindex.UnknownPageError:
        pass

    # Statistics.
    freqs = index.rank_frequencies(10)
    assert freqs == sorted(freqs, reverse=True)
    top = index.top_words(5)
    assert len(top) == 5

    fit = wikindex.fit_power_law(
        [math.exp(16.13 - 1.048 * math.log(r)) for r in range(1, 10001)], 10000
    )
    assert abs(fit.slope + 1.048) < 1e-9
    assert abs(fit.intercept - 16.13) < 1e-9

    plot = work / "plot.csv"
    index.emit_plot_data(10, [5], plot)
    assert plot.read_text().startswith("rank,freq,fit_5\n")

    export_dir = work / "export"
    index.export_tsv(export_dir)
    assert (export_dir / "term.tsv").exists()

    a = index.stats()
    rows = wikindex.compare_snapshots(a, a)
    assert all(r["ratio"] == 1.0 for r in rows)


if __name__ == "__main__":
    sys.exit(main())
