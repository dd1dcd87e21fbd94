#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <optional>

#include "curling/checkpoint.hpp"
#include "curling/curl_core.hpp"
#include "curling/gijswijt.hpp"
#include "curling/results.hpp"
#include "curling/search.hpp"
#include "curling/sequence.hpp"

namespace curling::cli {

namespace {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::string quoted(const std::string& text) {
    std::string out = "\"";
    for (char ch : text) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + '"';
}

void error_line(std::ostream& err, const std::string& code, const std::string& message,
                const std::string& extra = {}) {
    err << "error code=" << code;
    if (!extra.empty()) err << ' ' << extra;
    err << " message=" << quoted(message) << '\n';
}

const char* flag(bool b) { return b ? "true" : "false"; }

/// Sequence given either as --seq digits or --csv-seq integers.
struct SeqInput {
    std::string digits;
    std::string csv;

    void attach(CLI::App* cmd, const std::string& what) {
        auto* a = cmd->add_option("--seq", digits, what + " as unseparated digits, e.g. 2323");
        auto* b = cmd->add_option("--csv-seq", csv, what + " as comma-separated integers, e.g. 0,1,2,2");
        a->excludes(b);
        b->excludes(a);
    }

    Seq get() const {
        if (digits.empty() && csv.empty()) throw UsageError("one of --seq or --csv-seq is required");
        Seq s = digits.empty() ? parse_csv(csv) : parse_digits(digits);
        if (s.empty()) throw UsageError("sequence must be nonempty");
        return s;
    }
};

Seq require_twos_threes(Seq s) {
    if (!std::all_of(s.begin(), s.end(), [](Symbol v) { return v == 2 || v == 3; })) {
        throw UsageError("starting sequence must consist of 2's and 3's");
    }
    return s;
}

std::vector<Seq> all_starts(unsigned min_len, unsigned max_len) {
    std::vector<Seq> out;
    for (unsigned len = min_len; len <= max_len; ++len) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
            Seq s(len);
            for (unsigned i = 0; i < len; ++i) s[i] = (mask >> (len - 1 - i)) & 1 ? 3 : 2;
            out.push_back(std::move(s));
        }
    }
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Curling numbers, mu(n) record search and Gijswijt's sequence", "curling"};
    app.require_subcommand(1);

    constexpr std::uint64_t kDefaultCap = 1'000'000;

    // curl
    SeqInput curl_seq;
    auto* curl = app.add_subcommand("curl", "Curling number and a maximizing decomposition");
    curl_seq.attach(curl, "sequence");

    // extend
    SeqInput extend_seq;
    std::uint64_t extend_cap = kDefaultCap;
    auto* extend = app.add_subcommand("extend", "Extend a sequence until the first appended 1");
    extend_seq.attach(extend, "starting sequence");
    extend->add_option("--cap", extend_cap, "maximum appended terms")->check(CLI::PositiveNumber);

    // mu
    unsigned mu_n = 0;
    std::string mu_pruning = "lemma1";
    std::uint64_t mu_cap = kDefaultCap;
    unsigned mu_workers = 1;
    bool mu_prefix_skip = false;
    std::string mu_checkpoint;
    bool mu_resume = false;
    std::size_t mu_max_subtrees = 0;
    std::string mu_out;
    std::string mu_format = "csv";
    bool mu_stats = false;
    auto* mu = app.add_subcommand("mu", "Exhaustive search for mu(1..n)");
    mu->add_option("--n", mu_n, "largest start length")->required()->check(CLI::Range(1u, search::kMaxSearchLength));
    mu->add_option("--pruning", mu_pruning, "full, lemma1 or conjectural")
        ->check(CLI::IsMember({"full", "lemma1", "conjectural"}));
    mu->add_option("--cap", mu_cap, "maximum appended terms per candidate")->check(CLI::PositiveNumber);
    mu->add_option("--workers", mu_workers, "worker threads")->check(CLI::PositiveNumber);
    mu->add_flag("--prefix-skip", mu_prefix_skip, "reuse the parent's value for s·k(s)");
    mu->add_option("--checkpoint", mu_checkpoint, "checkpoint file");
    mu->add_flag("--resume", mu_resume, "continue from --checkpoint");
    mu->add_option("--max-subtrees", mu_max_subtrees, "stop after this many subtrees")->check(CLI::PositiveNumber);
    mu->add_option("--out", mu_out, "write PREFIX.csv and PREFIX.json");
    mu->add_option("--format", mu_format, "stdout format: csv or json")->check(CLI::IsMember({"csv", "json"}));
    mu->add_flag("--stats", mu_stats, "print search statistics to stderr");

    // records
    std::string records_data = default_records_path().string();
    std::uint64_t records_cap = kDefaultCap;
    unsigned records_search = 0;
    auto* records = app.add_subcommand("records", "Check the bundled published records");
    records->add_option("--data", records_data, "records JSON file");
    records->add_option("--cap", records_cap, "maximum appended terms")->check(CLI::PositiveNumber);
    records->add_option("--search-up-to", records_search, "also recompute mu(1..N) with lemma1 pruning")
        ->check(CLI::Range(0u, search::kMaxSearchLength));

    // gijswijt
    std::uint64_t gij_count = 0;
    std::string gij_rule = "k";
    SeqInput gij_seed;
    std::string gij_format = "lines";
    std::uint64_t gij_target = 0;
    std::uint64_t gij_cap = kDefaultCap;
    auto* gij = app.add_subcommand("gijswijt", "Stream Gijswijt's sequence or its h-variant");
    gij->add_option("--count", gij_count, "number of terms to emit")->check(CLI::PositiveNumber);
    gij->add_option("--rule", gij_rule, "k (Gijswijt) or h (max(k,2))")->check(CLI::IsMember({"k", "h"}));
    gij_seed.attach(gij, "seed (default 1)");
    gij->add_option("--format", gij_format, "lines, bfile, csv or json")
        ->check(CLI::IsMember({"lines", "bfile", "csv", "json"}));
    gij->add_option("--target", gij_target, "report the first term equal to this value")->check(CLI::PositiveNumber);
    gij->add_option("--cap", gij_cap, "terms scanned for --target")->check(CLI::PositiveNumber);

    // splice
    SeqInput splice_seq;
    unsigned splice_min = 1, splice_max = 0;
    std::uint64_t splice_extra = 500;
    std::uint64_t splice_cap = kDefaultCap;
    std::string splice_findings = "splice_findings.txt";
    auto* splice = app.add_subcommand("splice", "Compare post-1 continuations with Gijswijt's sequence");
    splice_seq.attach(splice, "single starting sequence");
    splice->add_option("--min-len", splice_min, "shortest start in the range")->check(CLI::PositiveNumber);
    splice->add_option("--max-len", splice_max, "longest start in the range")->check(CLI::Range(1u, 24u));
    splice->add_option("--extra", splice_extra, "terms compared after the first 1")->check(CLI::PositiveNumber);
    splice->add_option("--cap", splice_cap, "maximum appended terms before the first 1")->check(CLI::PositiveNumber);
    splice->add_option("--findings", splice_findings, "file receiving any counterexamples");

    // compose
    SeqInput compose_seq;
    std::uint64_t compose_cap = kDefaultCap;
    auto* compose = app.add_subcommand("compose", "Extend T·S where T is the pre-1 extension of S");
    compose_seq.attach(compose, "record start S");
    compose->add_option("--cap", compose_cap, "maximum appended terms")->check(CLI::PositiveNumber);

    // count-qf
    unsigned qf_n = 0;
    auto* qf = app.add_subcommand("count-qf", "Count {2,3}-strings without a fourth power");
    qf->add_option("--n", qf_n, "largest length")->required()->check(CLI::Range(1u, 40u));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        error_line(err, "usage", e.what());
        return kUsage;
    }

    try {
        if (*curl) {
            auto s = curl_seq.get();
            auto w = curling_number(s);
            out << "k=" << w.k << "\nperiod=" << w.period << "\nprefix_len=" << w.prefix_len << '\n';
            return kOk;
        }

        if (*extend) {
            auto s = extend_seq.get();
            auto r = extend_until_one(s, extend_cap);
            out << "sequence=" << to_spaced(r.final) << "\npre_one_len=" << r.pre_one_len << "\nsteps=" << r.steps
                << "\nhit_cap=" << flag(r.hit_cap) << '\n';
            if (r.hit_cap) throw CapExhaustedError(to_compact(s), extend_cap);
            return kOk;
        }

        if (*mu) {
            search::SearchConfig config;
            config.n_max = mu_n;
            config.pruning = search::parse_pruning(mu_pruning);
            config.cap = mu_cap;
            config.workers = mu_workers;
            config.prefix_skip = mu_prefix_skip;
            if (!mu_checkpoint.empty()) config.checkpoint_path = mu_checkpoint;
            if (mu_resume && mu_checkpoint.empty()) throw UsageError("--resume requires --checkpoint");
            config.resume = mu_resume;
            if (mu_max_subtrees > 0) config.max_subtrees = mu_max_subtrees;

            auto result = search::mu_search(config);
            const auto& st = result.stats;
            if (mu_stats) {
                err << "nodes_visited=" << st.nodes_visited << " candidates_extended=" << st.candidates_extended
                    << " pruned_w4=" << st.pruned_w4 << " pruned_adjacent_threes=" << st.pruned_adjacent_threes
                    << " pruned_prefix_skip=" << st.pruned_prefix_skip << " subtrees=" << st.subtrees_done << '/'
                    << st.subtrees_total << " elapsed_s=" << st.elapsed.count() << '\n';
            }
            if (!result.complete) {
                err << "incomplete subtrees_done=" << st.subtrees_done << " subtrees_total=" << st.subtrees_total
                    << '\n';
                return kOk;
            }
            for (const auto& w : result.table.warnings) err << "warning " << w << '\n';
            if (!mu_out.empty()) {
                std::ofstream csv(mu_out + ".csv"), json(mu_out + ".json");
                if (!csv || !json) throw std::runtime_error("cannot write results to " + mu_out + ".{csv,json}");
                write_results_csv(csv, result.table);
                write_results_json(json, result.table);
            }
            if (mu_format == "json") {
                write_results_json(out, result.table);
            } else {
                write_results_csv(out, result.table);
            }
            return kOk;
        }

        if (*records) {
            auto published = load_published_records(records_data);
            bool all_ok = true;
            for (const auto& entry : published.starts) {
                auto s = parse_digits(entry.start);
                const auto& row = published.mu_at(entry.n);
                auto r = extend_until_one(s, records_cap);
                if (r.hit_cap) throw CapExhaustedError(entry.start, records_cap);
                bool ok = s.size() == entry.n && r.pre_one_len == row.mu;
                all_ok = all_ok && ok;
                out << "table=" << entry.table << " n=" << entry.n << " mu=" << row.mu
                    << (row.lower_bound ? " lower_bound" : "") << " observed=" << r.pre_one_len
                    << (ok ? " ok" : " MISMATCH") << '\n';
            }
            if (records_search > 0) {
                search::SearchConfig config;
                config.n_max = records_search;
                config.cap = records_cap;
                auto result = search::mu_search(config);
                for (const auto& row : result.table.rows) {
                    const auto& want = published.mu_at(row.n);
                    bool ok = row.mu == want.mu;
                    all_ok = all_ok && ok;
                    out << "table=1 n=" << row.n << " mu=" << want.mu << " observed=" << row.mu
                        << (ok ? " ok" : " MISMATCH") << '\n';
                }
            }
            if (!all_ok) {
                error_line(err, "records_mismatch", "published records disagree with computed values");
                return kFailure;
            }
            return kOk;
        }

        if (*gij) {
            auto rule = gijswijt::parse_rule(gij_rule);
            Seq seed = gij_seed.digits.empty() && gij_seed.csv.empty() ? Seq{1} : gij_seed.get();
            if (gij_target > 0) {
                auto hit = gijswijt::first_occurrence(rule, seed, gij_target, gij_cap);
                out << "target=" << hit.target << " found=" << flag(hit.found);
                if (hit.found) out << " index=" << hit.index;
                out << " cap=" << gij_cap << '\n';
                return kOk;
            }
            if (gij_count == 0) throw UsageError("gijswijt needs --count or --target");
            if (gij_count < seed.size()) throw UsageError("--count must be at least the seed length");
            gijswijt::Generator gen(rule, seed);
            if (gij_format == "csv") out << "index,value\n";
            if (gij_format == "json") out << '[';
            for (std::uint64_t i = 1; i <= gij_count; ++i) {
                Symbol v = gen.next();
                if (gij_format == "lines") {
                    out << v << '\n';
                } else if (gij_format == "bfile") {
                    out << i << ' ' << v << '\n';
                } else if (gij_format == "csv") {
                    out << i << ',' << v << '\n';
                } else {
                    out << (i > 1 ? "," : "") << v;
                }
            }
            if (gij_format == "json") out << "]\n";
            return kOk;
        }

        if (*splice) {
            std::vector<Seq> starts;
            if (!splice_seq.digits.empty() || !splice_seq.csv.empty()) {
                starts.push_back(require_twos_threes(splice_seq.get()));
            } else {
                if (splice_max == 0) throw UsageError("splice needs --seq or --max-len");
                if (splice_min > splice_max) throw UsageError("--min-len exceeds --max-len");
                starts = all_starts(splice_min, splice_max);
            }
            std::size_t failures = 0;
            std::ofstream findings;
            for (const auto& s : starts) {
                auto report = gijswijt::splice_examine(s, splice_extra, splice_cap);
                if (starts.size() == 1) {
                    out << "start=" << to_compact(s) << " pre_one_len=" << report.pre_one_len
                        << " match=" << flag(report.matches()) << '\n';
                }
                if (report.matches()) continue;
                ++failures;
                auto naive = gijswijt::splice_examine_naive(s, splice_extra, splice_cap);
                if (!findings.is_open()) {
                    findings.open(splice_findings);
                    if (!findings) throw std::runtime_error("cannot write findings to " + splice_findings);
                }
                const auto& d = *report.divergence;
                findings << "start=" << to_compact(s) << " pre_one_len=" << report.pre_one_len
                         << " divergence_index=" << d.index << " extension_term=" << d.extension_term
                         << " gijswijt_term=" << d.gijswijt_term << " naive_confirms=" << flag(!naive.matches())
                         << '\n';
            }
            out << "starts=" << starts.size() << " extra=" << splice_extra << " failures=" << failures << '\n';
            if (failures > 0) out << "findings=" << splice_findings << '\n';
            return kOk;
        }

        if (*compose) {
            auto s = require_twos_threes(compose_seq.get());
            auto start = tail_compose_start(s, compose_cap);
            auto r = extend_until_one(start, compose_cap);
            out << "tail_len=" << start.size() - s.size() << "\nstart_len=" << start.size()
                << "\npre_one_len=" << r.pre_one_len << "\nhit_cap=" << flag(r.hit_cap) << '\n';
            if (r.hit_cap) throw CapExhaustedError(to_compact(start), compose_cap);
            return kOk;
        }

        if (*qf) {
            out << "n,count\n";
            for (unsigned n = 1; n <= qf_n; ++n) out << n << ',' << search::count_quadruple_free(n) << '\n';
            return kOk;
        }
    } catch (const CapExhaustedError& e) {
        error_line(err, "cap_exhausted", e.what(), "start=" + e.start() + " cap=" + std::to_string(e.cap()));
        return kCapExhausted;
    } catch (const search::CheckpointError& e) {
        const char* kind = e.kind() == search::CheckpointError::Kind::version_mismatch ? "checkpoint_mismatch"
                           : e.kind() == search::CheckpointError::Kind::corrupt        ? "checkpoint_corrupt"
                                                                                        : "checkpoint_io";
        error_line(err, kind, e.what());
        return kCheckpoint;
    } catch (const UsageError& e) {
        error_line(err, "usage", e.what());
        return kUsage;
    } catch (const ParseError& e) {
        error_line(err, "usage", e.what());
        return kUsage;
    } catch (const std::exception& e) {
        error_line(err, "failure", e.what());
        return kFailure;
    }
    return kUsage;
}

}  // namespace curling::cli
