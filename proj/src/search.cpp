#include "curling/search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <memory>
#include <cstring>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "curling/checkpoint.hpp"
#include "curling/curl_core.hpp"

namespace curling::search {

std::string to_string(Pruning mode) {
    switch (mode) {
        case Pruning::full: return "full";
        case Pruning::lemma1: return "lemma1";
        case Pruning::conjectural: return "conjectural";
    }
    return "?";
}

Pruning parse_pruning(const std::string& text) {
    if (text == "full") return Pruning::full;
    if (text == "lemma1") return Pruning::lemma1;
    if (text == "conjectural") return Pruning::conjectural;
    throw std::invalid_argument("unknown pruning mode '" + text + "'");
}

std::string config_digest(const SearchConfig& config) {
    std::ostringstream canon;
    canon << "v" << kCheckpointVersion << ";n_max=" << config.n_max << ";pruning=" << to_string(config.pruning)
          << ";cap=" << config.cap << ";prefix_skip=" << config.prefix_skip
          << ";record_limit=" << config.record_limit;
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canon.str()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

void SearchStats::add(const SearchStats& other) {
    nodes_visited += other.nodes_visited;
    candidates_extended += other.candidates_extended;
    pruned_w4 += other.pruned_w4;
    pruned_adjacent_threes += other.pruned_adjacent_threes;
    pruned_prefix_skip += other.pruned_prefix_skip;
    if (candidates_by_length.size() < other.candidates_by_length.size()) {
        candidates_by_length.resize(other.candidates_by_length.size(), 0);
    }
    for (std::size_t i = 0; i < other.candidates_by_length.size(); ++i) {
        candidates_by_length[i] += other.candidates_by_length[i];
    }
}

namespace {

using Term = std::uint8_t;

inline bool blocks_equal(const Term* a, const Term* b, std::size_t p) {
    if (p >= 16) return std::memcmp(a, b, p) == 0;
    for (std::size_t i = 0; i < p; ++i) {
        if (a[i] != b[i]) return false;
    }
    return true;
}

/// Curling number of s[0..len).
std::uint32_t curl_k(const Term* s, std::size_t len) {
    std::uint32_t best = 1;
    const Term last = s[len - 1];
    const Term* tail_end = s + len;
    for (std::size_t p = 1; (best + 1) * p <= len; ++p) {
        if (tail_end[-1 - static_cast<std::ptrdiff_t>(p)] != last) continue;
        const Term* tail = tail_end - p;
        if (!blocks_equal(tail - p, tail, p)) continue;
        std::uint32_t t = 2;
        while ((t + 1) * p <= len && blocks_equal(tail - t * p, tail, p)) ++t;
        if (t > best) best = t;
    }
    return best;
}

/// True iff s[0..len) ends with some W^4.
bool ends_with_fourth_power(const Term* s, std::size_t len) {
    const Term last = s[len - 1];
    for (std::size_t p = 1; 4 * p <= len; ++p) {
        if (s[len - 1 - p] != last) continue;
        const Term* tail = s + len - p;
        if (blocks_equal(tail - p, tail, p) && blocks_equal(tail - 2 * p, tail, p) &&
            blocks_equal(tail - 3 * p, tail, p)) {
            return true;
        }
    }
    return false;
}

std::string render(const Term* s, std::size_t len) {
    std::string out(len, '0');
    for (std::size_t i = 0; i < len; ++i) out[i] = static_cast<char>('0' + s[i]);
    return out;
}

class Engine {
public:
    Engine(const SearchConfig& config, std::vector<std::atomic<std::uint64_t>>& global_best)
        : config_(config), global_best_(global_best), buf_(config.n_max + 64, 0) {}

    SubtreeResult run_root(unsigned split_depth) {
        begin(kRootLabel);
        if (split_depth >= 2) {
            for (Term c : {Term{2}, Term{3}}) {
                buf_[0] = c;
                visit(1, 0, 0, split_depth - 1);
            }
        }
        return finish();
    }

    SubtreeResult run_subtree(const std::string& prefix) {
        begin(prefix);
        const std::size_t d = prefix.size();
        for (std::size_t i = 0; i < d; ++i) buf_[i] = static_cast<Term>(prefix[i] - '0');
        std::uint64_t parent_value = 0;
        std::uint32_t parent_first = 0;
        if (config_.prefix_skip && d >= 2) {
            Term saved = buf_[d - 1];
            parent_value = extend(d - 1, parent_first);
            buf_[d - 1] = saved;
        }
        visit(d, parent_value, parent_first, config_.n_max);
        return finish();
    }

    /// Admissibility of appending c to buf_[0..d) under the pruning mode;
    /// leaves c at buf_[d].
    bool admissible(std::size_t d, Term c, SearchStats& stats) {
        buf_[d] = c;
        if (config_.pruning == Pruning::full) return true;
        if (config_.pruning == Pruning::conjectural && c == 3 && d >= 1 && buf_[d - 1] == 3) {
            ++stats.pruned_adjacent_threes;
            return false;
        }
        if (ends_with_fourth_power(buf_.data(), d + 1)) {
            ++stats.pruned_w4;
            return false;
        }
        return true;
    }

    Term* buffer() { return buf_.data(); }

private:
    void begin(const std::string& label) {
        result_ = SubtreeResult{};
        result_.prefix = label;
        result_.per_length.assign(config_.n_max, LengthBest{});
        result_.stats.candidates_by_length.assign(config_.n_max + 1, 0);
    }

    SubtreeResult finish() { return std::move(result_); }

    void visit(std::size_t d, std::uint64_t parent_value, std::uint32_t parent_first, std::size_t max_depth) {
        auto& stats = result_.stats;
        ++stats.nodes_visited;
        std::uint64_t value;
        std::uint32_t first;
        if (config_.prefix_skip && d >= 2 && parent_first == buf_[d - 1]) {
            // s·k(s) continues the extension of s: same pre-1 length
            value = parent_value;
            first = curl_k(buf_.data(), d);
            ++stats.pruned_prefix_skip;
        } else {
            value = extend(d, first);
            ++stats.candidates_extended;
            ++stats.candidates_by_length[d];
        }
        record(d, value);
        if (d >= max_depth) return;
        for (Term c : {Term{2}, Term{3}}) {
            if (admissible(d, c, stats)) visit(d + 1, value, first, max_depth);
        }
    }

    /// Pre-1 extension length of buf_[0..len); clobbers buf_[len..].
    std::uint64_t extend(std::size_t len, std::uint32_t& first) {
        std::size_t cur = len;
        std::uint64_t steps = 0;
        for (;;) {
            std::uint32_t k = curl_k(buf_.data(), cur);
            if (steps == 0) first = k;
            if (k == 1) return cur;
            if (steps == config_.cap) throw CapExhaustedError(render(buf_.data(), len), config_.cap);
            if (k > 255) return extend_wide(len);
            if (cur + 1 >= buf_.size()) buf_.resize(buf_.size() * 2);
            buf_[cur++] = static_cast<Term>(k);
            ++steps;
        }
    }

    std::uint64_t extend_wide(std::size_t len) {
        Seq start(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(len));
        auto r = extend_until_one(start, config_.cap);
        if (r.hit_cap) throw CapExhaustedError(render(buf_.data(), len), config_.cap);
        return r.pre_one_len;
    }

    void record(std::size_t d, std::uint64_t value) {
        auto& shared = global_best_[d];
        std::uint64_t seen = shared.load(std::memory_order_relaxed);
        if (value < seen) return;
        while (value > seen && !shared.compare_exchange_weak(seen, value, std::memory_order_relaxed)) {
        }
        auto& lb = result_.per_length[d - 1];
        if (value > lb.best) {
            lb.best = value;
            lb.count = 0;
            lb.starts.clear();
        }
        if (value == lb.best) {
            ++lb.count;
            if (lb.starts.size() < config_.record_limit) lb.starts.push_back(render(buf_.data(), d));
        }
    }

    const SearchConfig& config_;
    std::vector<std::atomic<std::uint64_t>>& global_best_;
    std::vector<Term> buf_;
    SubtreeResult result_;
};

/// Admissible prefixes of exactly `depth` terms, in depth-first order.
std::vector<std::string> prefixes_at(const SearchConfig& config, unsigned depth) {
    std::vector<std::atomic<std::uint64_t>> unused(config.n_max + 1);
    Engine engine(config, unused);
    SearchStats scratch;
    std::vector<std::string> out;
    auto rec = [&](auto&& self, std::size_t d) -> void {
        if (d == depth) {
            out.push_back(render(engine.buffer(), d));
            return;
        }
        for (Term c : {Term{2}, Term{3}}) {
            if (d == 0 || engine.admissible(d, c, scratch)) {
                engine.buffer()[d] = c;
                self(self, d + 1);
            }
        }
    };
    rec(rec, 0);
    return out;
}

unsigned choose_split_depth(const SearchConfig& config) {
    const std::size_t want = 8 * std::max(1u, config.workers);
    unsigned d = 1;
    while (d < config.n_max && prefixes_at(config, d).size() < want) ++d;
    return d;
}

RecordTable merge(const SearchConfig& config, const std::vector<const SubtreeResult*>& parts) {
    RecordTable table;
    std::uint64_t prev_mu = 0;
    for (unsigned n = 1; n <= config.n_max; ++n) {
        std::uint64_t best = 0;
        for (const auto* part : parts) best = std::max(best, part->per_length[n - 1].best);

        RecordRow row;
        row.n = n;
        row.mu = best;
        for (const auto* part : parts) {
            const auto& lb = part->per_length[n - 1];
            if (lb.best != best || best == 0) continue;
            row.num_records += lb.count;
            for (const auto& s : lb.starts) {
                if (row.record_starts.size() < config.record_limit) row.record_starts.push_back(s);
            }
        }
        const std::uint64_t baseline = prev_mu + 1;
        if (config.pruning != Pruning::full && best < baseline) {
            row.mu = baseline;
            row.num_records = 0;
            row.record_starts.clear();
        }
        if (config.pruning == Pruning::full && row.mu < baseline) {
            table.warnings.push_back("mu(" + std::to_string(n) + ") = " + std::to_string(row.mu) +
                                     " is below mu(n-1)+1 = " + std::to_string(baseline));
        }
        row.jump = row.mu > baseline;
        row.records_complete = config.pruning == Pruning::full || (config.pruning == Pruning::lemma1 && row.jump);
        if (row.record_starts.size() < row.num_records) row.records_complete = false;
        prev_mu = row.mu;
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace

SearchResult mu_search(const SearchConfig& config) {
    if (config.n_max < 1 || config.n_max > kMaxSearchLength) {
        throw std::invalid_argument("n_max must be in 1.." + std::to_string(kMaxSearchLength));
    }
    if (config.cap == 0) throw std::invalid_argument("extension cap must be positive");
    if (config.workers == 0) throw std::invalid_argument("worker count must be positive");
    if (config.resume && !config.checkpoint_path) throw std::invalid_argument("resume requires a checkpoint path");

    const auto started = std::chrono::steady_clock::now();
    const std::string digest = config_digest(config);

    CheckpointState loaded;
    unsigned split_depth;
    if (config.resume) {
        loaded = load_checkpoint(*config.checkpoint_path, digest);
        split_depth = loaded.split_depth;
        if (split_depth < 1 || split_depth > config.n_max) {
            throw CheckpointError(CheckpointError::Kind::corrupt, "split depth out of range");
        }
    } else {
        split_depth = choose_split_depth(config);
    }

    std::vector<std::string> labels{kRootLabel};
    for (auto& p : prefixes_at(config, split_depth)) labels.push_back(std::move(p));

    std::vector<SubtreeResult> results(labels.size());
    std::vector<char> have(labels.size(), 0);
    std::vector<std::atomic<std::uint64_t>> global_best(config.n_max + 1);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto it = loaded.completed.find(labels[i]);
        if (it == loaded.completed.end()) continue;
        if (it->second.per_length.size() != config.n_max) {
            throw CheckpointError(CheckpointError::Kind::corrupt, "record for " + labels[i] + " has wrong length");
        }
        results[i] = std::move(it->second);
        have[i] = 1;
        for (unsigned n = 1; n <= config.n_max; ++n) {
            auto b = results[i].per_length[n - 1].best;
            if (b > global_best[n].load()) global_best[n].store(b);
        }
    }
    if (loaded.completed.size() != static_cast<std::size_t>(std::count(have.begin(), have.end(), 1))) {
        throw CheckpointError(CheckpointError::Kind::corrupt, "checkpoint names subtrees outside this search");
    }

    std::unique_ptr<CheckpointWriter> writer;
    if (config.checkpoint_path) {
        writer = std::make_unique<CheckpointWriter>(*config.checkpoint_path, digest, split_depth, config.resume);
    }

    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!have[i]) pending.push_back(i);
    }
    std::size_t quota = config.max_subtrees.value_or(pending.size());
    quota = std::min(quota, pending.size());

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto work = [&] {
        Engine engine(config, global_best);
        for (;;) {
            if (failed.load()) return;
            std::size_t slot = next.fetch_add(1);
            if (slot >= quota) return;
            std::size_t i = pending[slot];
            try {
                results[i] = i == 0 ? engine.run_root(split_depth) : engine.run_subtree(labels[i]);
                if (writer) writer->write(results[i]);
                have[i] = 1;
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };

    const unsigned threads = std::min<std::size_t>(config.workers, std::max<std::size_t>(quota, 1));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    if (error) std::rethrow_exception(error);

    SearchResult out;
    std::vector<const SubtreeResult*> parts;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!have[i]) continue;
        parts.push_back(&results[i]);
        out.stats.add(results[i].stats);
    }
    out.complete = parts.size() == labels.size();
    out.table = merge(config, parts);
    out.stats.subtrees_total = labels.size();
    out.stats.subtrees_done = parts.size();
    out.stats.split_depth = split_depth;
    out.stats.elapsed = std::chrono::steady_clock::now() - started;
    return out;
}

bool verify_record(SeqView s, std::uint64_t claimed_mu, std::uint64_t cap) {
    auto r = extend_until_one(s, cap);
    if (r.hit_cap) throw CapExhaustedError(to_compact(s), cap);
    return r.pre_one_len == claimed_mu;
}

bool is_quadruple_free_after_append(SeqView s, Symbol c) {
    const std::size_t len = s.size() + 1;
    auto at = [&](std::size_t i) { return i < s.size() ? s[i] : c; };
    for (std::size_t p = 1; 4 * p <= len; ++p) {
        bool power = true;
        for (std::size_t i = len - p; i < len && power; ++i) {
            power = at(i) == at(i - p) && at(i) == at(i - 2 * p) && at(i) == at(i - 3 * p);
        }
        if (power) return false;
    }
    return true;
}

std::uint64_t count_quadruple_free(unsigned n) {
    if (n == 0) throw std::invalid_argument("length must be positive");
    Seq s;
    s.reserve(n);
    auto rec = [&](auto&& self) -> std::uint64_t {
        if (s.size() == n) return 1;
        std::uint64_t total = 0;
        for (Symbol c : {Symbol{2}, Symbol{3}}) {
            if (!is_quadruple_free_after_append(s, c)) continue;
            s.push_back(c);
            total += self(self);
            s.pop_back();
        }
        return total;
    };
    return rec(rec);
}

}  // namespace curling::search
