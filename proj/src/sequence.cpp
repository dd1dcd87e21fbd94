#include "curling/sequence.hpp"

#include <algorithm>
#include <charconv>

namespace curling {

CapExhaustedError::CapExhaustedError(std::string start, std::uint64_t cap)
    : std::runtime_error("extension of " + start + " produced no 1 within " +
                         std::to_string(cap) + " appended terms"),
      start_(std::move(start)),
      cap_(cap) {}

Seq parse_digits(std::string_view text) {
    Seq out;
    out.reserve(text.size());
    for (char ch : text) {
        if (ch < '0' || ch > '9') {
            throw ParseError("invalid digit '" + std::string(1, ch) + "' in sequence");
        }
        out.push_back(static_cast<Symbol>(ch - '0'));
    }
    return out;
}

Seq parse_csv(std::string_view text) {
    Seq out;
    while (!text.empty()) {
        auto comma = text.find(',');
        auto field = text.substr(0, comma);
        while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
        while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
        Symbol value = 0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
            throw ParseError("invalid term '" + std::string(field) + "' in sequence");
        }
        out.push_back(value);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
        if (text.empty()) throw ParseError("trailing comma in sequence");
    }
    return out;
}

std::string to_compact(SeqView s) {
    bool digits = std::all_of(s.begin(), s.end(), [](Symbol v) { return v <= 9; });
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!digits && i > 0) out += ',';
        out += std::to_string(s[i]);
    }
    return out;
}

std::string to_spaced(SeqView s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0) out += ' ';
        out += std::to_string(s[i]);
    }
    return out;
}

}  // namespace curling
