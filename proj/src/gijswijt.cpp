#include "curling/gijswijt.hpp"

#include <algorithm>
#include <stdexcept>

namespace curling::gijswijt {

std::string to_string(Rule rule) { return rule == Rule::k_rule ? "k" : "h"; }

Rule parse_rule(const std::string& text) {
    if (text == "k" || text == "k_rule") return Rule::k_rule;
    if (text == "h" || text == "h_rule") return Rule::h_rule;
    throw std::invalid_argument("unknown rule '" + text + "' (expected k or h)");
}

Generator::Generator(Rule rule, SeqView seed) : rule_(rule), seed_(seed.begin(), seed.end()) {
    require_nonempty(seed);
}

Symbol Generator::next() {
    Symbol v;
    if (emitted_ < seed_.size()) {
        v = seed_[emitted_];
    } else {
        v = tracker_.k();
        if (rule_ == Rule::h_rule) v = std::max<Symbol>(v, 2);
    }
    tracker_.push(v);
    ++emitted_;
    return v;
}

Seq generate(Rule rule, SeqView seed, std::uint64_t count) {
    require_nonempty(seed);
    if (count < seed.size()) {
        throw std::invalid_argument("term count must be at least the seed length");
    }
    Generator gen(rule, seed);
    Seq out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(gen.next());
    return out;
}

FirstOccurrence first_occurrence(Rule rule, SeqView seed, Symbol target, std::uint64_t cap) {
    if (cap == 0) throw std::invalid_argument("scan cap must be positive");
    Generator gen(rule, seed);
    FirstOccurrence result{target, 0, false};
    for (std::uint64_t i = 1; i <= cap; ++i) {
        if (gen.next() == target) {
            result.index = i;
            result.found = true;
            break;
        }
    }
    return result;
}

namespace {

template <typename NextTerm>
SpliceReport splice_with(SeqView s, std::uint64_t extra, std::uint64_t cap, NextTerm next_term) {
    require_nonempty(s);
    if (cap == 0) throw std::invalid_argument("extension cap must be positive");
    Seq terms(s.begin(), s.end());
    std::uint64_t steps = 0;
    for (;;) {
        if (steps == cap) throw CapExhaustedError(to_compact(s), cap);
        Symbol k = next_term(terms);
        terms.push_back(k);
        ++steps;
        if (k == 1) break;
    }
    SpliceReport report;
    report.pre_one_len = terms.size() - 1;

    Generator reference(Rule::k_rule, Seq{1});
    for (std::uint64_t i = 0; i < extra; ++i) {
        if (i > 0) terms.push_back(next_term(terms));
        Symbol expected = reference.next();
        if (terms.back() != expected) {
            report.divergence = SpliceDivergence{terms.size(), terms.back(), expected};
            break;
        }
    }
    return report;
}

}  // namespace

SpliceReport splice_examine(SeqView s, std::uint64_t extra, std::uint64_t cap) {
    CurlingTracker tracker;
    return splice_with(s, extra, cap, [&tracker](const Seq& terms) {
        // the tracker lags behind `terms` by at most the seed on the first call
        for (std::size_t i = tracker.size(); i < terms.size(); ++i) tracker.push(terms[i]);
        return tracker.k();
    });
}

SpliceReport splice_examine_naive(SeqView s, std::uint64_t extra, std::uint64_t cap) {
    return splice_with(s, extra, cap, [](const Seq& terms) { return curling_number_naive(terms).k; });
}

}  // namespace curling::gijswijt
