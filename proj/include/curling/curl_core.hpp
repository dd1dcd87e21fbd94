#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "curling/sequence.hpp"

namespace curling {

/// Curling number of a sequence plus one decomposition S = X Y^k achieving it.
/// `period` is |Y| and `prefix_len` is |X|. Among maximizing decompositions the
/// smallest period is reported; when k = 1 the whole sequence is the single block.
struct CurlingWitness {
    std::uint64_t k = 1;
    std::size_t period = 0;
    std::size_t prefix_len = 0;

    friend bool operator==(const CurlingWitness&, const CurlingWitness&) = default;
};

struct ExtensionResult {
    Seq final;                   // ends with the first appended 1 unless hit_cap
    std::size_t pre_one_len = 0;  // terms before the first appended 1
    std::size_t steps = 0;        // appended terms
    bool hit_cap = false;
};

/// Reference implementation straight from the definition: every period, every
/// repeat count, block by block.
CurlingWitness curling_number_naive(SeqView s);

/// Same contract as curling_number_naive, via the Z-function of the reversed
/// sequence: the repeat count for period p is 1 + floor(lce(p) / p).
CurlingWitness curling_number(SeqView s);

/// True iff the trailing `w.k` blocks of length `w.period` are identical and
/// the decomposition accounts for the whole sequence.
bool witness_is_valid(SeqView s, const CurlingWitness& w);

/// s with its curling number appended.
Seq extend_step(SeqView s);

/// Applies extend_step until the appended term is 1, or until `cap` terms have
/// been appended. Terms equal to 1 already present in `s` do not stop it.
ExtensionResult extend_until_one(SeqView s, std::uint64_t cap);

/// T·s where T is the pre-1 extension of s. Throws CapExhaustedError if the
/// extension of s does not reach 1 within `cap`.
Seq tail_compose_start(SeqView s, std::uint64_t cap);

/// extend_until_one(T·s, cap). If s itself exhausts the cap, that result is
/// returned with hit_cap set.
ExtensionResult tail_compose(SeqView s, std::uint64_t cap);

/// Maintains the curling number of a growing sequence.
///
/// For every period p it tracks m(p), the number of trailing positions i with
/// s[i] == s[i - p]; the repeat count at period p is 1 + m(p) / p. Periods below
/// `window` are updated directly on every append. Larger periods can only
/// repeat once the trailing `window` terms recur exactly p positions earlier,
/// so they are discovered through an index of window-length substrings and
/// only those currently matching are kept.
class CurlingTracker {
public:
    static constexpr std::size_t kDefaultWindow = 4096;

    explicit CurlingTracker(std::size_t window = kDefaultWindow);

    void assign(SeqView s);
    void push(Symbol v);
    void clear();

    /// Witness for the terms pushed so far; the sequence must be nonempty.
    CurlingWitness witness() const;
    std::uint64_t k() const { return witness().k; }

    const Seq& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }

private:
    struct Match {
        std::uint32_t period;
        std::uint64_t count;
    };

    std::uint64_t window_hash(std::size_t end) const;
    void refresh_large(std::size_t len);

    std::size_t window_;
    Seq terms_;
    std::vector<std::uint64_t> small_;  // m(p) for 1 <= p < window_
    std::vector<std::uint64_t> prefix_hash_;
    std::uint64_t window_pow_ = 1;
    std::unordered_map<std::uint64_t, std::uint32_t> last_end_;
    std::vector<std::uint32_t> prev_end_;
    std::vector<Match> active_;  // periods >= window_ with m(p) >= window_, by period
    std::vector<Match> scratch_;
    CurlingWitness cached_;
};

}  // namespace curling
