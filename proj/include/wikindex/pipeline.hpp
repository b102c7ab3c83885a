// Copyright 2026 The wikindex Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WIKINDEX_PIPELINE_HPP
#define WIKINDEX_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <functional>

#include "wikindex/dump.hpp"
#include "wikindex/index.hpp"
#include "wikindex/lemmatizer.hpp"
#include "wikindex/wikitext.hpp"

namespace wikindex {

struct PipelineOptions {
  IngestConfig ingest;
  ParserConfig parser;
  LemmatizerSpec lemmatizer;
  IndexConfig index;
  /// Worker threads for parsing/lemmatizing; 0 picks the hardware count.
  /// The index contents do not depend on this value.
  unsigned threads = 1;
  bool compute_digest = true;
  std::function<void(std::uint64_t pages_done)> progress;
};

struct PipelineResult {
  std::uint64_t pages_indexed = 0;
};

/// End-to-end: stream the dump, convert wikitext, lemmatize, build the index
/// at options.index.store_path.
PipelineResult index_dump(const std::filesystem::path& dump_path,
                          const PipelineOptions& options);

}  // namespace wikindex

#endif  // WIKINDEX_PIPELINE_HPP
