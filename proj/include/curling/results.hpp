#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "curling/search.hpp"

namespace curling {

/// Version of the CSV and JSON layouts below.
inline constexpr int kResultsSchemaVersion = 1;

/// Header `n,mu,is_lower_bound,jump,num_records`, one row per n.
void write_results_csv(std::ostream& out, const search::RecordTable& table);

/// Object mapping decimal n to its array of record starts ("2"/"3" strings).
void write_results_json(std::ostream& out, const search::RecordTable& table);

/// One row of the published mu(n) table; lower_bound marks daggered entries.
struct PublishedMu {
    unsigned n = 0;
    std::uint64_t mu = 0;
    bool lower_bound = false;
};

/// A published record start and the table it was listed in.
struct PublishedStart {
    unsigned n = 0;
    std::string start;
    int table = 0;
};

struct PublishedRecords {
    std::vector<PublishedMu> mu;
    std::vector<PublishedStart> starts;

    /// Throws std::out_of_range when n is not listed.
    const PublishedMu& mu_at(unsigned n) const;
};

PublishedRecords load_published_records(const std::filesystem::path& path);

/// data/records.json in the source tree.
std::filesystem::path default_records_path();

}  // namespace curling
