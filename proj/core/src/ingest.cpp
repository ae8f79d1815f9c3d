#include "khist/ingest.hpp"

#include <condition_variable>
#include <deque>
#include <mutex>
#include <thread>

#include "khist/errors.hpp"
#include "khist/kmer_hash.hpp"

namespace khist {

namespace {

constexpr size_t kBatchRecords = 512;
constexpr size_t kMaxQueuedBatches = 32;

struct Batch {
    std::vector<SequenceRecord> records;
};

class BatchQueue {
public:
    void push(Batch&& b) {
        std::unique_lock lock(mu_);
        not_full_.wait(lock, [&] { return queue_.size() < kMaxQueuedBatches; });
        queue_.push_back(std::move(b));
        not_empty_.notify_one();
    }
    bool pop(Batch& out) {
        std::unique_lock lock(mu_);
        not_empty_.wait(lock, [&] { return !queue_.empty() || done_; });
        if (queue_.empty()) return false;
        out = std::move(queue_.front());
        queue_.pop_front();
        not_full_.notify_one();
        return true;
    }
    void close() {
        std::lock_guard lock(mu_);
        done_ = true;
        not_empty_.notify_all();
    }

private:
    std::mutex mu_;
    std::condition_variable not_empty_, not_full_;
    std::deque<Batch> queue_;
    bool done_ = false;
};

struct Worker {
    AbundanceSketch sketch;
    StreamStats stats;
    std::exception_ptr error;

    explicit Worker(const SketchParams& params) : sketch(params) {}

    void run(BatchQueue& queue, const SketchParams& params) {
        try {
            KmerExtractor extractor(params.k, params.canonical);
            std::vector<uint64_t> hashes(params.instances);
            Batch batch;
            while (queue.pop(batch)) {
                for (const SequenceRecord& rec : batch.records) {
                    extractor.extract(rec, stats, [&](KmerView kmer) {
                        for (uint32_t i = 0; i < params.instances; ++i)
                            hashes[i] = hash_kmer(kmer, params.seeds[i]);
                        sketch.update(hashes);
                    });
                }
            }
        } catch (...) {
            error = std::current_exception();
        }
    }
};

}  // namespace

IngestResult ingest(const std::vector<std::string>& paths, const SketchParams& params,
                    uint32_t workers) {
    params.validate();
    if (params.k < 1) throw ConfigError("ingest requires k >= 1 in params");
    if (workers < 1) workers = 1;

    if (workers == 1) {
        IngestResult result{AbundanceSketch(params), {}};
        KmerExtractor extractor(params.k, params.canonical);
        std::vector<uint64_t> hashes(params.instances);
        SequenceRecord rec;
        for (const std::string& path : paths) {
            SequenceReader reader(path);
            while (reader.next(rec)) {
                extractor.extract(rec, result.stats, [&](KmerView kmer) {
                    for (uint32_t i = 0; i < params.instances; ++i)
                        hashes[i] = hash_kmer(kmer, params.seeds[i]);
                    result.sketch.update(hashes);
                });
            }
        }
        return result;
    }

    BatchQueue queue;
    std::deque<Worker> pool;
    std::vector<std::thread> threads;
    for (uint32_t i = 0; i < workers; ++i) pool.emplace_back(params);
    for (Worker& w : pool)
        threads.emplace_back([&queue, &params, &w] { w.run(queue, params); });

    std::exception_ptr reader_error;
    try {
        SequenceRecord rec;
        for (const std::string& path : paths) {
            SequenceReader reader(path);
            Batch batch;
            batch.records.reserve(kBatchRecords);
            while (reader.next(rec)) {
                batch.records.push_back(std::move(rec));
                if (batch.records.size() >= kBatchRecords) {
                    queue.push(std::move(batch));
                    batch = {};
                    batch.records.reserve(kBatchRecords);
                }
            }
            if (!batch.records.empty()) queue.push(std::move(batch));
        }
    } catch (...) {
        reader_error = std::current_exception();
    }
    queue.close();
    for (std::thread& t : threads) t.join();

    if (reader_error) std::rethrow_exception(reader_error);
    for (Worker& w : pool)
        if (w.error) std::rethrow_exception(w.error);

    IngestResult result{std::move(pool.front().sketch), std::move(pool.front().stats)};
    for (size_t i = 1; i < pool.size(); ++i) {
        result.sketch.merge(pool[i].sketch);
        result.stats.merge(pool[i].stats);
    }
    return result;
}

}  // namespace khist
