#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "curling/search.hpp"

namespace curling::search {

inline constexpr int kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
public:
    enum class Kind { io, corrupt, version_mismatch };

    CheckpointError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Best extension length among the starts of one length inside a subtree.
struct LengthBest {
    std::uint64_t best = 0;
    std::uint64_t count = 0;
    std::vector<std::string> starts;

    friend bool operator==(const LengthBest&, const LengthBest&) = default;
};

/// Outcome of one unit of work: the starts of depth < split_depth for the root
/// unit, or every start extending `prefix` otherwise.
struct SubtreeResult {
    std::string prefix;  // "*" for the root unit
    std::vector<LengthBest> per_length;  // index n - 1
    SearchStats stats;
};

inline constexpr const char* kRootLabel = "*";

/// Text file: three header lines (format version, config digest, split depth)
/// followed by one JSON object per completed subtree.
class CheckpointWriter {
public:
    /// Creates the file, or appends to it when `append` is set.
    CheckpointWriter(const std::filesystem::path& path, const std::string& digest,
                     unsigned split_depth, bool append);

    void write(const SubtreeResult& result);

private:
    std::ofstream out_;
    std::filesystem::path path_;
    std::mutex mutex_;
};

struct CheckpointState {
    std::string digest;
    unsigned split_depth = 0;
    std::map<std::string, SubtreeResult> completed;
};

/// Reads a checkpoint and checks that it belongs to `expected_digest`.
CheckpointState load_checkpoint(const std::filesystem::path& path, const std::string& expected_digest);

std::string encode_subtree(const SubtreeResult& result);
SubtreeResult decode_subtree(const std::string& line);

}  // namespace curling::search
