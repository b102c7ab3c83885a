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

"""Wiki-corpus indexing toolkit.

Converts MediaWiki wikitext to plain text, builds a three-table inverted
index with lemma frequencies, answers TF-IDF ranked queries, and computes
corpus statistics including power-law (Zipf) fits.
"""

from ._wikindex import (  # noqa: F401
    CorpusStats,
    Index,
    PageRecord,
    PowerLawFit,
    RankedPage,
    RawPage,
    TermPageRecord,
    TermRecord,
    Token,
    UnknownLemmaError,
    UnknownPageError,
    WeightedTerm,
    WikindexError,
    build_index,
    compare_snapshots,
    convert,
    fit_power_law,
    lemma_frequencies,
    lemmatize,
    read_dump,
    tokenize,
)

__all__ = [
    "CorpusStats",
    "Index",
    "PageRecord",
    "PowerLawFit",
    "RankedPage",
    "RawPage",
    "TermPageRecord",
    "TermRecord",
    "Token",
    "UnknownLemmaError",
    "UnknownPageError",
    "WeightedTerm",
    "WikindexError",
    "build_index",
    "compare_snapshots",
    "convert",
    "fit_power_law",
    "lemma_frequencies",
    "lemmatize",
    "read_dump",
    "tokenize",
]

__version__ = "0.1.0"
