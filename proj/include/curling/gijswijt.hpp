#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "curling/curl_core.hpp"
#include "curling/sequence.hpp"

namespace curling::gijswijt {

/// k_rule appends k(S) (Gijswijt's sequence from seed 1); h_rule appends
/// max(k(S), 2).
enum class Rule { k_rule, h_rule };

std::string to_string(Rule rule);
Rule parse_rule(const std::string& text);

/// Streaming generator. Terms are 1-based: term(1) is the first seed term.
class Generator {
public:
    Generator(Rule rule, SeqView seed);

    /// Next term, advancing the stream. Seed terms come out first.
    Symbol next();

    Rule rule() const noexcept { return rule_; }
    /// 1-based index of the term the next call to next() returns.
    std::uint64_t next_index() const noexcept { return emitted_ + 1; }
    const Seq& produced() const noexcept { return tracker_.terms(); }

private:
    Rule rule_;
    Seq seed_;
    std::uint64_t emitted_ = 0;
    CurlingTracker tracker_;
};

/// First `count` terms generated from `seed`.
Seq generate(Rule rule, SeqView seed, std::uint64_t count);

struct FirstOccurrence {
    Symbol target = 0;
    std::uint64_t index = 0;  // 1-based, valid when found
    bool found = false;
};

/// Scans terms 1..cap for the first one equal to `target`.
FirstOccurrence first_occurrence(Rule rule, SeqView seed, Symbol target, std::uint64_t cap);

/// Where the continued extension of a start stops agreeing with Gijswijt's
/// sequence.
struct SpliceDivergence {
    std::uint64_t index = 0;  // 1-based position in the continued sequence
    Symbol extension_term = 0;
    Symbol gijswijt_term = 0;
};

struct SpliceReport {
    std::size_t pre_one_len = 0;
    std::optional<SpliceDivergence> divergence;

    bool matches() const noexcept { return !divergence.has_value(); }
};

/// Extends `s` to its first 1 (pre-1 length L), keeps going to L + extra terms,
/// and compares terms L+1..L+extra with Gijswijt's sequence. Throws
/// CapExhaustedError if the first 1 does not appear within `cap` steps.
SpliceReport splice_examine(SeqView s, std::uint64_t extra, std::uint64_t cap);

/// The same comparison with every curling number taken from the naive oracle.
SpliceReport splice_examine_naive(SeqView s, std::uint64_t extra, std::uint64_t cap);

inline bool splice_check(SeqView s, std::uint64_t extra, std::uint64_t cap) {
    return splice_examine(s, extra, cap).matches();
}

}  // namespace curling::gijswijt
