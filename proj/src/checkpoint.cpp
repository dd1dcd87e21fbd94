#include "curling/checkpoint.hpp"

#include <json.hpp>
#include <sstream>

namespace curling::search {

namespace {

using nlohmann::json;

constexpr const char* kMagic = "curling-checkpoint";

json stats_to_json(const SearchStats& s) {
    return json{{"nodes", s.nodes_visited},
                {"extended", s.candidates_extended},
                {"pruned_w4", s.pruned_w4},
                {"pruned_33", s.pruned_adjacent_threes},
                {"pruned_skip", s.pruned_prefix_skip},
                {"extended_by_length", s.candidates_by_length}};
}

SearchStats stats_from_json(const json& j) {
    SearchStats s;
    s.nodes_visited = j.at("nodes").get<std::uint64_t>();
    s.candidates_extended = j.at("extended").get<std::uint64_t>();
    s.pruned_w4 = j.at("pruned_w4").get<std::uint64_t>();
    s.pruned_adjacent_threes = j.at("pruned_33").get<std::uint64_t>();
    s.pruned_prefix_skip = j.at("pruned_skip").get<std::uint64_t>();
    s.candidates_by_length = j.at("extended_by_length").get<std::vector<std::uint64_t>>();
    return s;
}

}  // namespace

std::string encode_subtree(const SubtreeResult& result) {
    json best = json::array(), count = json::array(), starts = json::object();
    for (std::size_t i = 0; i < result.per_length.size(); ++i) {
        const auto& lb = result.per_length[i];
        best.push_back(lb.best);
        count.push_back(lb.count);
        if (!lb.starts.empty()) starts[std::to_string(i + 1)] = lb.starts;
    }
    json j{{"subtree", result.prefix},
           {"best", best},
           {"count", count},
           {"starts", starts},
           {"stats", stats_to_json(result.stats)}};
    return j.dump();
}

SubtreeResult decode_subtree(const std::string& line) {
    try {
        auto j = json::parse(line);
        SubtreeResult r;
        r.prefix = j.at("subtree").get<std::string>();
        auto best = j.at("best").get<std::vector<std::uint64_t>>();
        auto count = j.at("count").get<std::vector<std::uint64_t>>();
        if (best.size() != count.size()) throw CheckpointError(CheckpointError::Kind::corrupt, "length mismatch");
        r.per_length.resize(best.size());
        for (std::size_t i = 0; i < best.size(); ++i) {
            r.per_length[i].best = best[i];
            r.per_length[i].count = count[i];
        }
        for (const auto& [key, value] : j.at("starts").items()) {
            std::size_t n = std::stoul(key);
            if (n == 0 || n > r.per_length.size()) {
                throw CheckpointError(CheckpointError::Kind::corrupt, "start length out of range");
            }
            r.per_length[n - 1].starts = value.get<std::vector<std::string>>();
        }
        r.stats = stats_from_json(j.at("stats"));
        return r;
    } catch (const CheckpointError&) {
        throw;
    } catch (const std::exception& e) {
        throw CheckpointError(CheckpointError::Kind::corrupt, std::string("bad checkpoint record: ") + e.what());
    }
}

CheckpointWriter::CheckpointWriter(const std::filesystem::path& path, const std::string& digest,
                                   unsigned split_depth, bool append)
    : path_(path) {
    out_.open(path, append ? std::ios::app : std::ios::trunc);
    if (!out_) throw CheckpointError(CheckpointError::Kind::io, "cannot open checkpoint " + path.string());
    if (!append) {
        out_ << kMagic << ' ' << kCheckpointVersion << '\n'
             << "config " << digest << '\n'
             << "split_depth " << split_depth << '\n';
        out_.flush();
    }
}

void CheckpointWriter::write(const SubtreeResult& result) {
    std::lock_guard lock(mutex_);
    out_ << encode_subtree(result) << '\n';
    out_.flush();
    if (!out_) throw CheckpointError(CheckpointError::Kind::io, "write failed on " + path_.string());
}

CheckpointState load_checkpoint(const std::filesystem::path& path, const std::string& expected_digest) {
    std::ifstream in(path);
    if (!in) throw CheckpointError(CheckpointError::Kind::io, "cannot read checkpoint " + path.string());

    std::string line, word;
    CheckpointState state;
    int version = 0;
    if (!std::getline(in, line)) throw CheckpointError(CheckpointError::Kind::corrupt, "empty checkpoint");
    {
        std::istringstream header(line);
        if (!(header >> word >> version) || word != kMagic) {
            throw CheckpointError(CheckpointError::Kind::corrupt, "not a checkpoint file: " + path.string());
        }
    }
    if (version != kCheckpointVersion) {
        throw CheckpointError(CheckpointError::Kind::version_mismatch,
                              "checkpoint format version " + std::to_string(version) + ", expected " +
                                  std::to_string(kCheckpointVersion));
    }
    if (!std::getline(in, line) || line.rfind("config ", 0) != 0) {
        throw CheckpointError(CheckpointError::Kind::corrupt, "missing config line");
    }
    state.digest = line.substr(7);
    if (state.digest != expected_digest) {
        throw CheckpointError(CheckpointError::Kind::version_mismatch,
                              "checkpoint config " + state.digest + " does not match " + expected_digest);
    }
    if (!std::getline(in, line) || line.rfind("split_depth ", 0) != 0) {
        throw CheckpointError(CheckpointError::Kind::corrupt, "missing split_depth line");
    }
    try {
        state.split_depth = static_cast<unsigned>(std::stoul(line.substr(12)));
    } catch (const std::exception&) {
        throw CheckpointError(CheckpointError::Kind::corrupt, "bad split_depth line");
    }

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        // a torn final line from an interrupted write is dropped; anything else is fatal
        if (in.eof() && line.back() != '}') break;
        auto r = decode_subtree(line);
        auto prefix = r.prefix;
        state.completed.insert_or_assign(std::move(prefix), std::move(r));
    }
    return state;
}

}  // namespace curling::search
