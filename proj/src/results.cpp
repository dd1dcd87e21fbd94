#include "curling/results.hpp"

#include <fstream>
#include <json.hpp>
#include <stdexcept>

#ifndef CURLING_DATA_DIR
#define CURLING_DATA_DIR "data"
#endif

namespace curling {

void write_results_csv(std::ostream& out, const search::RecordTable& table) {
    out << "n,mu,is_lower_bound,jump,num_records\n";
    for (const auto& row : table.rows) {
        out << row.n << ',' << row.mu << ',' << (row.is_lower_bound ? "true" : "false") << ','
            << (row.jump ? "true" : "false") << ',' << row.num_records << '\n';
    }
}

void write_results_json(std::ostream& out, const search::RecordTable& table) {
    // ordered_json keeps rows in n order rather than lexicographic key order
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& row : table.rows) j[std::to_string(row.n)] = row.record_starts;
    out << j.dump(1) << '\n';
}

const PublishedMu& PublishedRecords::mu_at(unsigned n) const {
    for (const auto& row : mu) {
        if (row.n == n) return row;
    }
    throw std::out_of_range("no published mu for n = " + std::to_string(n));
}

PublishedRecords load_published_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read records file " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed records file " + path.string() + ": " + e.what());
    }
    if (j.value("schema_version", 0) != kResultsSchemaVersion) {
        throw std::runtime_error("unsupported records schema in " + path.string());
    }
    PublishedRecords records;
    for (const auto& row : j.at("mu")) {
        records.mu.push_back({row.at("n").get<unsigned>(), row.at("mu").get<std::uint64_t>(),
                              row.at("lower_bound").get<bool>()});
    }
    for (const auto& row : j.at("record_starts")) {
        records.starts.push_back(
            {row.at("n").get<unsigned>(), row.at("start").get<std::string>(), row.at("table").get<int>()});
    }
    return records;
}

std::filesystem::path default_records_path() { return std::filesystem::path(CURLING_DATA_DIR) / "records.json"; }

}  // namespace curling
