// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "curling/curl_core.hpp"
#include "curling/gijswijt.hpp"
#include "curling/results.hpp"
#include "curling/search.hpp"

using namespace curling;
using namespace curling::search;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_seconds, const std::function<Verdict()>& body) {
    auto t0 = Clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (budget_seconds > 0 && secs > budget_seconds) {
        v.ok = false;
        v.detail += (v.detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    if (!v.ok) ++failures;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (v.ok ? "PASS" : "FAIL") << " [" << id << "] " << name << " (" << timing << ")";
    if (!v.detail.empty()) std::cout << ": " << v.detail;
    std::cout << std::endl;
}

bool has_fourth_power(const std::vector<int>& s) {
    for (std::size_t p = 1; 4 * p <= s.size(); ++p) {
        for (std::size_t i = 0; i + 4 * p <= s.size(); ++i) {
            std::size_t j = 0;
            while (j < 3 * p && s[i + j] == s[i + j + p]) ++j;
            if (j == 3 * p) return true;
        }
    }
    return false;
}

const PublishedRecords& published() {
    static const PublishedRecords records = load_published_records(default_records_path());
    return records;
}

// Shared by criteria 2, 4 and 5.
const SearchResult& lemma1_to_30() {
    static const SearchResult result = [] {
        SearchConfig cfg;
        cfg.n_max = 30;
        cfg.pruning = Pruning::lemma1;
        return mu_search(cfg);
    }();
    return result;
}

std::vector<std::uint64_t> mu_column(const RecordTable& t) {
    std::vector<std::uint64_t> out;
    for (const auto& r : t.rows) out.push_back(r.mu);
    return out;
}

}  // namespace

int main() {
    criterion(1, "optimized curling number equals the naive oracle", 120, [] {
        std::uint64_t checked = 0;
        for (std::size_t len = 1; len <= 14; ++len) {
            Seq s(len, 1);
            for (;;) {
                if (!(curling_number(s) == curling_number_naive(s)))
                    return Verdict{false, "mismatch on " + to_compact(s)};
                ++checked;
                std::size_t i = len;
                while (i > 0 && s[i - 1] == 3) s[--i] = 1;
                if (i == 0) break;
                ++s[i - 1];
            }
        }
        std::mt19937_64 rng(14142135);
        std::uniform_int_distribution<std::size_t> length(1, 500);
        std::uniform_int_distribution<Symbol> symbol(1, 5);
        for (int trial = 0; trial < 10'000; ++trial) {
            Seq s(length(rng));
            for (auto& v : s) v = symbol(rng);
            if (!(curling_number(s) == curling_number_naive(s)))
                return Verdict{false, "mismatch on random sequence " + to_compact(s)};
            ++checked;
        }
        return Verdict{true, std::to_string(checked) + " sequences"};
    });

    criterion(2, "lemma1 search reproduces mu(1..30)", 1800, [] {
        const auto& r = lemma1_to_30();
        for (unsigned n = 1; n <= 30; ++n) {
            auto expected = published().mu_at(n).mu;
            if (r.table.row(n).mu != expected)
                return Verdict{false, "n=" + std::to_string(n) + " got " + std::to_string(r.table.row(n).mu) +
                                          " expected " + std::to_string(expected)};
        }
        return Verdict{true, std::to_string(r.stats.candidates_extended) + " candidates extended"};
    });

    criterion(3, "every listed record start verifies", 0, [] {
        std::size_t checked = 0;
        for (const auto& p : published().starts) {
            auto t0 = Clock::now();
            auto s = parse_digits(p.start);
            auto mu = published().mu_at(p.n).mu;
            if (s.size() != p.n) return Verdict{false, "length mismatch at n=" + std::to_string(p.n)};
            if (!verify_record(s, mu, 1'000'000))
                return Verdict{false, "n=" + std::to_string(p.n) + " does not reach " + std::to_string(mu)};
            if (std::chrono::duration<double>(Clock::now() - t0).count() > 1.0)
                return Verdict{false, "n=" + std::to_string(p.n) + " took over 1s"};
            ++checked;
        }
        return Verdict{true, std::to_string(checked) + " starts"};
    });

    criterion(4, "jumps up to n=30 and their unique record starts", 0, [] {
        const auto& t = lemma1_to_30().table;
        std::set<unsigned> jumps;
        for (const auto& row : t.rows)
            if (row.jump) jumps.insert(row.n);
        const std::set<unsigned> expected{2, 4, 6, 8, 9, 10, 11, 14, 19, 22};
        if (jumps != expected) return Verdict{false, "jump set differs"};
        std::map<unsigned, std::string> listed;
        for (const auto& p : published().starts)
            if (p.table == 2) listed[p.n] = p.start;
        for (unsigned n : expected) {
            const auto& row = t.row(n);
            if (!row.records_complete || row.num_records != 1)
                return Verdict{false, "n=" + std::to_string(n) + " record not unique"};
            if (!listed.count(n) || listed[n] != row.record_starts.front())
                return Verdict{false, "n=" + std::to_string(n) + " start " + row.record_starts.front()};
        }
        return Verdict{true, ""};
    });

    criterion(5, "mu(n) = n + 120 for 22 <= n <= 30", 0, [] {
        const auto& t = lemma1_to_30().table;
        for (unsigned n = 22; n <= 30; ++n)
            if (t.row(n).mu != n + 120) return Verdict{false, "n=" + std::to_string(n)};
        return Verdict{true, ""};
    });

    criterion(6, "tail composition of the 48-term record", 1, [] {
        std::string start48;
        for (const auto& p : published().starts)
            if (p.n == 48) start48 = p.start;
        auto s = parse_digits(start48);
        auto composed = tail_compose_start(s, 1'000'000);
        auto r = extend_until_one(composed, 1'000'000);
        if (composed.size() != 227) return Verdict{false, "composed length " + std::to_string(composed.size())};
        if (r.hit_cap || r.pre_one_len != 596)
            return Verdict{false, "extends to " + std::to_string(r.pre_one_len)};
        return Verdict{true, "227 -> 596"};
    });

    criterion(7, "Gijswijt's sequence", 60, [] {
        const Seq listing{1, 1, 2, 1, 1, 2, 2, 2, 3, 1, 1, 2, 1, 1, 2, 2, 2, 3, 2, 1, 1, 2, 1, 1, 2, 2, 2, 3, 1, 1, 2, 1, 1};
        gijswijt::Generator g(gijswijt::Rule::k_rule, Seq{1});
        std::uint64_t first_four = 0;
        for (std::uint64_t i = 1; i <= 1'000'000; ++i) {
            Symbol v = g.next();
            if (i <= listing.size() && v != listing[i - 1])
                return Verdict{false, "term " + std::to_string(i) + " differs from the listing"};
            if (v == 4 && first_four == 0) first_four = i;
            if (v >= 5) return Verdict{false, "term " + std::to_string(i) + " is " + std::to_string(v)};
        }
        if (first_four != 220) return Verdict{false, "first 4 at " + std::to_string(first_four)};
        return Verdict{true, "first 4 at 220, no 5 in 10^6 terms"};
    });

    criterion(8, "pruning modes, prefix skip and workers agree", 0, [] {
        auto run = [](unsigned n, Pruning mode, bool skip, unsigned workers) {
            SearchConfig cfg;
            cfg.n_max = n;
            cfg.pruning = mode;
            cfg.prefix_skip = skip;
            cfg.workers = workers;
            return mu_search(cfg).table;
        };
        auto reference = mu_column(run(18, Pruning::full, false, 1));
        for (auto mode : {Pruning::full, Pruning::lemma1, Pruning::conjectural}) {
            auto plain = run(18, mode, false, 1);
            if (mu_column(plain) != reference) return Verdict{false, to_string(mode) + " differs from full"};
            if (run(18, mode, true, 1) != plain) return Verdict{false, to_string(mode) + " prefix skip differs"};
            if (run(18, mode, false, 4) != plain) return Verdict{false, to_string(mode) + " 4 workers differ"};
        }
        if (run(30, Pruning::lemma1, false, 4) != lemma1_to_30().table)
            return Verdict{false, "lemma1 n=30 with 4 workers differs"};
        return Verdict{true, ""};
    });

    criterion(9, "quadruple-free counts and the tribonacci recurrence", 60, [] {
        std::vector<std::uint64_t> c(21, 0), brute(21, 0);
        for (unsigned n = 1; n <= 20; ++n) c[n] = count_quadruple_free(n);
        for (unsigned n = 1; n <= 20; ++n) {
            std::vector<int> s(n);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
                for (unsigned i = 0; i < n; ++i) s[i] = (mask >> i) & 1;
                if (!has_fourth_power(s)) ++brute[n];
            }
            if (brute[n] != c[n])
                return Verdict{false, "n=" + std::to_string(n) + " count " + std::to_string(c[n]) +
                                          " brute force " + std::to_string(brute[n])};
        }
        std::vector<unsigned> holds, breaks;
        for (unsigned n = 4; n <= 20; ++n)
            (c[n] == c[n - 1] + c[n - 2] + c[n - 3] ? holds : breaks).push_back(n);
        std::ostringstream d;
        d << "counts match brute force to n=20; recurrence holds for n=" << holds.front() << ".." << holds.back();
        if (!breaks.empty()) d << ", first fails at n=" << breaks.front() << " (" << c[breaks.front()] << " vs "
                               << c[breaks.front() - 1] + c[breaks.front() - 2] + c[breaks.front() - 3] << ")";
        return Verdict{true, d.str()};
    });

    criterion(10, "splice evidence for all starts of length <= 8", 0, [] {
        const std::uint64_t extra = 500, cap = 1'000'000;
        std::size_t starts = 0, confirmed = 0;
        std::ostringstream findings;
        for (unsigned len = 1; len <= 8; ++len) {
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
                Seq s(len);
                for (unsigned i = 0; i < len; ++i) s[i] = (mask >> (len - 1 - i)) & 1 ? 3 : 2;
                ++starts;
                auto report = gijswijt::splice_examine(s, extra, cap);
                if (report.matches()) continue;
                bool naive = !gijswijt::splice_examine_naive(s, extra, cap).matches();
                if (naive) ++confirmed;
                findings << "start=" << to_compact(s) << " index=" << report.divergence->index
                         << " extension_term=" << report.divergence->extension_term
                         << " gijswijt_term=" << report.divergence->gijswijt_term
                         << " naive_confirms=" << (naive ? "true" : "false") << "\n";
            }
        }
        if (!findings.str().empty()) {
            auto path = std::filesystem::current_path() / "splice_findings.txt";
            std::ofstream(path) << findings.str();
            return Verdict{confirmed == 0, "findings written to " + path.string()};
        }
        return Verdict{true, std::to_string(starts) + " starts, extra=500, no divergence"};
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
