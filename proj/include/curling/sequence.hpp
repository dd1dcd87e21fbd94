#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace curling {

/// A single term of a sequence. Terms are positive in every construction the
/// library performs, but parsed input (e.g. "0 1 2 2 ...") may contain zero.
using Symbol = std::uint64_t;

/// Finite ordered list of terms; the value passed between all operations.
using Seq = std::vector<Symbol>;
using SeqView = std::span<const Symbol>;

class EmptySequenceError : public std::invalid_argument {
public:
    EmptySequenceError() : std::invalid_argument("sequence must be nonempty") {}
};

/// Raised when an extension runs for `cap` appended terms without producing a 1.
class CapExhaustedError : public std::runtime_error {
public:
    CapExhaustedError(std::string start, std::uint64_t cap);

    const std::string& start() const noexcept { return start_; }
    std::uint64_t cap() const noexcept { return cap_; }

private:
    std::string start_;
    std::uint64_t cap_;
};

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parses an unseparated digit string such as "2323".
Seq parse_digits(std::string_view text);

/// Parses comma-separated decimal integers such as "0,1,2,2".
Seq parse_csv(std::string_view text);

/// "2323" for single-digit sequences, "10,2,3" otherwise.
std::string to_compact(SeqView s);

/// Space-separated decimal terms.
std::string to_spaced(SeqView s);

inline void require_nonempty(SeqView s) {
    if (s.empty()) throw EmptySequenceError();
}

}  // namespace curling
