#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "curling/sequence.hpp"

namespace curling::search {

/// full: every {2,3} start. lemma1: only starts with no fourth power W^4
/// (record-breakers cannot contain one). conjectural: lemma1 plus no "3 3".
enum class Pruning { full, lemma1, conjectural };

std::string to_string(Pruning mode);
Pruning parse_pruning(const std::string& text);

/// Longest start the bit-level search engine accepts.
inline constexpr unsigned kMaxSearchLength = 64;

struct SearchConfig {
    unsigned n_max = 1;
    Pruning pruning = Pruning::lemma1;
    std::uint64_t cap = 1'000'000;
    bool prefix_skip = false;
    unsigned workers = 1;
    std::optional<std::filesystem::path> checkpoint_path;
    /// Continue from checkpoint_path instead of starting it afresh.
    bool resume = false;
    /// Stop after this many subtrees have been completed in this run.
    std::optional<std::size_t> max_subtrees;
    /// Record starts kept per length; the achiever count stays exact.
    std::size_t record_limit = 4096;
};

/// Identity of everything that affects results; workers are excluded.
std::string config_digest(const SearchConfig& config);

struct RecordRow {
    unsigned n = 0;
    std::uint64_t mu = 0;
    bool is_lower_bound = false;
    bool jump = false;
    std::uint64_t num_records = 0;
    /// Starts achieving mu, in depth-first order (2 before 3).
    std::vector<std::string> record_starts;
    /// False when achievers outside the pruned enumeration may exist, or when
    /// record_starts was cut at the record limit.
    bool records_complete = true;

    friend bool operator==(const RecordRow&, const RecordRow&) = default;
};

struct RecordTable {
    std::vector<RecordRow> rows;
    /// Observations that contradict an assumed property, e.g. mu(n) < mu(n-1)+1
    /// in full mode.
    std::vector<std::string> warnings;

    const RecordRow& row(unsigned n) const { return rows.at(n - 1); }
    friend bool operator==(const RecordTable&, const RecordTable&) = default;
};

struct SearchStats {
    std::uint64_t nodes_visited = 0;
    std::uint64_t candidates_extended = 0;
    std::uint64_t pruned_w4 = 0;
    std::uint64_t pruned_adjacent_threes = 0;
    std::uint64_t pruned_prefix_skip = 0;
    /// Index n holds the candidates of length n that were extended.
    std::vector<std::uint64_t> candidates_by_length;
    std::size_t subtrees_total = 0;
    std::size_t subtrees_done = 0;
    unsigned split_depth = 0;
    std::chrono::duration<double> elapsed{0};

    void add(const SearchStats& other);
};

struct SearchResult {
    RecordTable table;
    SearchStats stats;
    /// False when max_subtrees stopped the run early; the table is then partial.
    bool complete = true;
};

/// Computes mu(n) for n = 1..n_max: the longest pre-1 extension over starts of
/// n 2's and 3's. In the pruned modes mu(n) = max(mu(n-1) + 1, best pruned start).
/// Throws CapExhaustedError if any candidate fails to reach 1 within the cap and
/// CheckpointError on checkpoint problems.
SearchResult mu_search(const SearchConfig& config);

/// Checks that s extends to exactly claimed_mu terms before its first 1.
/// Throws CapExhaustedError if the cap is hit.
bool verify_record(SeqView s, std::uint64_t claimed_mu, std::uint64_t cap);

/// True iff s·c contains no contiguous fourth power W^4, given s has none.
/// Only suffixes of s·c are examined.
bool is_quadruple_free_after_append(SeqView s, Symbol c);

/// Number of {2,3}-strings of length n with no contiguous fourth power.
std::uint64_t count_quadruple_free(unsigned n);

}  // namespace curling::search
