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

#include "wikindex/pipeline.hpp"

#include <atomic>
#include <condition_variable>
#include <deque>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include "sha256.hpp"

namespace wikindex {

namespace {

struct WorkItem {
  std::uint64_t seq;
  RawPage page;
};

struct DoneItem {
  PlainDoc doc;
  LemmaFreqList freqs;
};

/// Fixed-capacity handoff queue; bounds memory no matter how far the
/// reader outruns the workers.
class WorkQueue {
 public:
  explicit WorkQueue(std::size_t capacity) : capacity_(capacity) {}

  bool push(WorkItem item) {
    std::unique_lock lock(mu_);
    not_full_.wait(lock, [&] { return items_.size() < capacity_ || closed_; });
    if (closed_) return false;
    items_.push_back(std::move(item));
    not_empty_.notify_one();
    return true;
  }

  bool pop(WorkItem& item) {
    std::unique_lock lock(mu_);
    not_empty_.wait(lock, [&] { return !items_.empty() || closed_; });
    if (items_.empty()) return false;
    item = std::move(items_.front());
    items_.pop_front();
    not_full_.notify_one();
    return true;
  }

  void close() {
    std::lock_guard lock(mu_);
    closed_ = true;
    not_empty_.notify_all();
    not_full_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable not_empty_;
  std::condition_variable not_full_;
  std::deque<WorkItem> items_;
  std::size_t capacity_;
  bool closed_ = false;
};

/// Reorders worker output back into document order for the single writer.
/// The sequence number the writer is blocked on may always be deposited,
/// even at capacity, so a slow page can never wedge the pipeline.
class ReorderBuffer {
 public:
  explicit ReorderBuffer(std::size_t capacity) : capacity_(capacity) {}

  void put(std::uint64_t seq, DoneItem item) {
    std::unique_lock lock(mu_);
    room_.wait(lock, [&] {
      return pending_.size() < capacity_ || seq == needed_ || closed_;
    });
    if (closed_) return;
    pending_.emplace(seq, std::move(item));
    ready_.notify_all();
  }

  /// Blocks until item `seq` arrives; false once closed without it.
  bool take(std::uint64_t seq, DoneItem& item) {
    std::unique_lock lock(mu_);
    needed_ = seq;
    room_.notify_all();
    ready_.wait(lock, [&] { return pending_.count(seq) || closed_; });
    const auto it = pending_.find(seq);
    if (it == pending_.end()) return false;
    item = std::move(it->second);
    pending_.erase(it);
    room_.notify_all();
    return true;
  }

  void close() {
    std::lock_guard lock(mu_);
    closed_ = true;
    ready_.notify_all();
    room_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable ready_;
  std::condition_variable room_;
  std::map<std::uint64_t, DoneItem> pending_;
  std::size_t capacity_;
  std::uint64_t needed_ = 0;
  bool closed_ = false;
};

PipelineResult run_single_threaded(const std::filesystem::path& dump_path,
                                   const PipelineOptions& options,
                                   IndexBuilder& builder) {
  PipelineResult result;
  DumpReader reader(dump_path, options.ingest);
  while (auto page = reader.next()) {
    PlainDoc doc = parse_page(*page, options.parser);
    builder.add_document(doc, lemma_frequencies(doc.text, options.lemmatizer));
    ++result.pages_indexed;
    if (options.progress) options.progress(result.pages_indexed);
  }
  return result;
}

PipelineResult run_parallel(const std::filesystem::path& dump_path,
                            const PipelineOptions& options, unsigned threads,
                            IndexBuilder& builder) {
  PipelineResult result;
  WorkQueue work(threads * 4);
  ReorderBuffer done(threads * 4);
  std::atomic<unsigned> live_workers{threads};

  std::mutex error_mu;
  std::exception_ptr first_error;
  auto record_error = [&](std::exception_ptr e) {
    {
      std::lock_guard lock(error_mu);
      if (!first_error) first_error = e;
    }
    work.close();
    done.close();
  };

  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      try {
        WorkItem item;
        while (work.pop(item)) {
          DoneItem out;
          out.doc = parse_page(item.page, options.parser);
          out.freqs = lemma_frequencies(out.doc.text, options.lemmatizer);
          done.put(item.seq, std::move(out));
        }
      } catch (...) {
        record_error(std::current_exception());
      }
      if (--live_workers == 0) done.close();
    });
  }

  std::thread feeder([&] {
    try {
      DumpReader reader(dump_path, options.ingest);
      std::uint64_t seq = 0;
      while (auto page = reader.next()) {
        if (!work.push(WorkItem{seq++, std::move(*page)})) break;
      }
    } catch (...) {
      record_error(std::current_exception());
    }
    work.close();
  });

  // Writer: consume in sequence order so the builder sees document order
  // and the index is identical for every thread count.
  try {
    std::uint64_t next_seq = 0;
    DoneItem item;
    while (done.take(next_seq, item)) {
      builder.add_document(item.doc, item.freqs);
      ++next_seq;
      ++result.pages_indexed;
      if (options.progress) options.progress(result.pages_indexed);
    }
  } catch (...) {
    record_error(std::current_exception());
  }

  feeder.join();
  for (std::thread& w : workers) w.join();

  if (first_error) std::rethrow_exception(first_error);
  return result;
}

}  // namespace

PipelineResult index_dump(const std::filesystem::path& dump_path,
                          const PipelineOptions& options) {
  IndexBuilder builder(options.index, options.lemmatizer);
  if (options.compute_digest) {
    builder.set_source_digest(file_sha256(dump_path));
  }

  unsigned threads = options.threads;
  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;

  PipelineResult result;
  if (threads == 1) {
    result = run_single_threaded(dump_path, options, builder);
  } else {
    result = run_parallel(dump_path, options, threads, builder);
  }
  builder.finalize();
  return result;
}

}  // namespace wikindex
