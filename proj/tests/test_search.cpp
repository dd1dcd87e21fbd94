#include <doctest.h>

#include <set>

#include "curling/curl_core.hpp"
#include "curling/search.hpp"

using namespace curling;
using namespace curling::search;

namespace {

bool has_fourth_power(const Seq& s) {
    for (std::size_t p = 1; 4 * p <= s.size(); ++p) {
        for (std::size_t i = 0; i + 4 * p <= s.size(); ++i) {
            bool all = true;
            for (std::size_t j = 0; j < 3 * p && all; ++j) all = s[i + j] == s[i + j + p];
            if (all) return true;
        }
    }
    return false;
}

Seq from_mask(std::uint64_t mask, unsigned len) {
    Seq s(len);
    for (unsigned i = 0; i < len; ++i) s[i] = (mask >> (len - 1 - i)) & 1 ? 3 : 2;
    return s;
}

std::vector<std::uint64_t> mus(const RecordTable& t) {
    std::vector<std::uint64_t> out;
    for (const auto& r : t.rows) out.push_back(r.mu);
    return out;
}

SearchConfig config_for(unsigned n, Pruning mode) {
    SearchConfig c;
    c.n_max = n;
    c.pruning = mode;
    return c;
}

}  // namespace

TEST_CASE("quadruple-freeness after append") {
    CHECK_FALSE(is_quadruple_free_after_append(Seq{2, 2, 2}, 2));
    // 2 3 2 3 2 3 2 has (2 3)^3 2 but no fourth power
    CHECK(is_quadruple_free_after_append(Seq{2, 3, 2, 3, 2, 3}, 2));
    CHECK(curling_number_naive(Seq{2, 3, 2, 3, 2, 3, 2}).k == 3);
    CHECK_FALSE(is_quadruple_free_after_append(Seq{2, 3, 2, 3, 2, 3, 2}, 3));
    CHECK(is_quadruple_free_after_append(Seq{2, 2, 3}, 2));
    CHECK(is_quadruple_free_after_append(Seq{}, 2));
}

TEST_CASE("quadruple-freeness equals curling number at most 3 on every prefix") {
    for (unsigned len = 1; len <= 12; ++len) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
            auto s = from_mask(mask, len);
            Seq head(s.begin(), s.end() - 1);
            if (has_fourth_power(head)) continue;
            bool fast = is_quadruple_free_after_append(head, s.back());
            REQUIRE(fast == !has_fourth_power(s));
            REQUIRE(fast == (curling_number_naive(s).k <= 3));
        }
    }
}

TEST_CASE("count_quadruple_free against brute force") {
    CHECK(count_quadruple_free(1) == 2);
    CHECK(count_quadruple_free(4) == 14);
    for (unsigned n = 1; n <= 12; ++n) {
        std::uint64_t brute = 0;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            if (!has_fourth_power(from_mask(mask, n))) ++brute;
        }
        CHECK(count_quadruple_free(n) == brute);
    }
    CHECK(count_quadruple_free(10) == 532);
    CHECK_THROWS(count_quadruple_free(0));
}

TEST_CASE("mu_search reproduces mu(1..12)") {
    auto r = mu_search(config_for(12, Pruning::lemma1));
    CHECK(mus(r.table) == std::vector<std::uint64_t>{1, 4, 5, 8, 9, 14, 15, 66, 68, 70, 123, 124});
    CHECK(r.complete);
    CHECK(r.table.row(1).mu == 1);
    CHECK_FALSE(r.table.row(1).jump);
    CHECK(r.table.row(4).jump);
    CHECK(r.table.row(4).record_starts == std::vector<std::string>{"2323"});
    CHECK_FALSE(r.table.row(12).jump);
    CHECK(r.table.warnings.empty());
}

TEST_CASE("full mode row invariants") {
    auto r = mu_search(config_for(14, Pruning::full));
    std::uint64_t prev = 0;
    for (const auto& row : r.table.rows) {
        CHECK(row.mu >= prev + 1);
        CHECK(row.jump == (row.mu > prev + 1));
        CHECK(row.records_complete);
        CHECK(row.num_records == row.record_starts.size());
        for (const auto& s : row.record_starts) {
            REQUIRE(s.size() == row.n);
            REQUIRE(s.find_first_not_of("23") == std::string::npos);
            REQUIRE(verify_record(parse_digits(s), row.mu, 1'000'000));
        }
        prev = row.mu;
    }
    // exhaustive check of n = 1 and 2 ties
    CHECK(r.table.row(1).record_starts == std::vector<std::string>{"2", "3"});
    CHECK(r.table.row(2).record_starts == std::vector<std::string>{"22"});
}

TEST_CASE("full mode agrees with brute force over all starts") {
    const unsigned n_max = 10;
    auto r = mu_search(config_for(n_max, Pruning::full));
    for (unsigned n = 1; n <= n_max; ++n) {
        std::uint64_t best = 0;
        std::vector<std::string> achievers;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            auto s = from_mask(mask, n);
            auto v = extend_until_one(s, 1'000'000).pre_one_len;
            if (v > best) {
                best = v;
                achievers.clear();
            }
            if (v == best) achievers.push_back(to_compact(s));
        }
        CHECK(r.table.row(n).mu == best);
        CHECK(r.table.row(n).record_starts == achievers);
    }
}

TEST_CASE("pruning modes agree on mu") {
    auto full = mu_search(config_for(16, Pruning::full));
    auto lemma = mu_search(config_for(16, Pruning::lemma1));
    auto conj = mu_search(config_for(16, Pruning::conjectural));
    CHECK(mus(full.table) == mus(lemma.table));
    CHECK(mus(full.table) == mus(conj.table));
    CHECK(full.stats.candidates_extended > lemma.stats.candidates_extended);
    CHECK(lemma.stats.candidates_extended > conj.stats.candidates_extended);
    CHECK(conj.stats.pruned_adjacent_threes > 0);
}

TEST_CASE("lemma1 records: complete on jumps, flagged on ties") {
    auto r = mu_search(config_for(16, Pruning::lemma1));
    for (const auto& row : r.table.rows) {
        CHECK(row.records_complete == row.jump);
    }
    auto full = mu_search(config_for(16, Pruning::full));
    for (unsigned n = 1; n <= 16; ++n) {
        if (!r.table.row(n).jump) continue;
        CHECK(r.table.row(n).record_starts == full.table.row(n).record_starts);
    }
}

TEST_CASE("prefix skip changes work, not results") {
    for (auto mode : {Pruning::full, Pruning::lemma1, Pruning::conjectural}) {
        auto plain = mu_search(config_for(15, mode));
        auto cfg = config_for(15, mode);
        cfg.prefix_skip = true;
        auto skipped = mu_search(cfg);
        CHECK(plain.table == skipped.table);
        CHECK(skipped.stats.pruned_prefix_skip > 0);
        CHECK(skipped.stats.candidates_extended + skipped.stats.pruned_prefix_skip ==
              plain.stats.candidates_extended);
    }
}

TEST_CASE("worker count does not change results") {
    for (auto mode : {Pruning::full, Pruning::lemma1}) {
        auto one = mu_search(config_for(15, mode));
        for (unsigned workers : {2u, 4u, 7u}) {
            auto cfg = config_for(15, mode);
            cfg.workers = workers;
            auto many = mu_search(cfg);
            CHECK(many.table == one.table);
            CHECK(many.stats.nodes_visited == one.stats.nodes_visited);
        }
    }
}

TEST_CASE("lemma1 candidates per length equal the quadruple-free counts") {
    auto r = mu_search(config_for(16, Pruning::lemma1));
    for (unsigned n = 1; n <= 16; ++n) {
        CHECK(r.stats.candidates_by_length[n] == count_quadruple_free(n));
    }
}

TEST_CASE("record_limit keeps the count exact") {
    auto cfg = config_for(12, Pruning::full);
    cfg.record_limit = 1;
    auto r = mu_search(cfg);
    CHECK(r.table.row(1).num_records == 2);
    CHECK(r.table.row(1).record_starts.size() == 1);
    CHECK_FALSE(r.table.row(1).records_complete);
}

TEST_CASE("cap exhaustion names the start") {
    auto cfg = config_for(6, Pruning::full);
    cfg.cap = 2;
    try {
        mu_search(cfg);
        FAIL("expected CapExhaustedError");
    } catch (const CapExhaustedError& e) {
        CHECK(e.cap() == 2);
        auto s = parse_digits(e.start());
        CHECK(extend_until_one(s, 2).hit_cap);
    }
}

TEST_CASE("invalid configurations") {
    CHECK_THROWS_AS(mu_search(config_for(0, Pruning::full)), std::invalid_argument);
    CHECK_THROWS_AS(mu_search(config_for(kMaxSearchLength + 1, Pruning::full)), std::invalid_argument);
    auto cfg = config_for(4, Pruning::full);
    cfg.workers = 0;
    CHECK_THROWS_AS(mu_search(cfg), std::invalid_argument);
    cfg.workers = 1;
    cfg.resume = true;
    CHECK_THROWS_AS(mu_search(cfg), std::invalid_argument);
}

TEST_CASE("verify_record") {
    CHECK(verify_record(parse_digits("223223232223222322322232232322232223223222322323"), 179, 1'000'000));
    CHECK(verify_record(Seq{2, 3, 2, 3}, 8, 100));
    CHECK_FALSE(verify_record(Seq{2, 3, 2, 3}, 9, 100));
    CHECK_THROWS_AS(verify_record(Seq{2, 3, 2, 3}, 8, 2), CapExhaustedError);
}

TEST_CASE("pruning names round-trip") {
    for (auto mode : {Pruning::full, Pruning::lemma1, Pruning::conjectural}) {
        CHECK(parse_pruning(to_string(mode)) == mode);
    }
    CHECK_THROWS(parse_pruning("lemma2"));
}
