#pragma once

// File formats: instance JSON Lines (hex-encoded two's-complement values),
// pair records, junta spec JSON, and CSV assembly/parsing helpers.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "npplab/lowdeg.hpp"
#include "npplab/model.hpp"
#include "npplab/sampling.hpp"

namespace npplab {

nlohmann::json instance_to_json(const Instance& g);
Instance instance_from_json(const nlohmann::json& j);

void write_instances_jsonl(std::ostream& os, const std::vector<Instance>& instances);
std::vector<Instance> read_instances_jsonl(std::istream& is);
std::vector<Instance> read_instances_file(const std::string& path);
void write_instances_file(const std::string& path, const std::vector<Instance>& instances);

// Header record followed by the two instance records.
void write_pair_jsonl(std::ostream& os, const PairSample& pair);
PairSample read_pair_jsonl(std::istream& is);

nlohmann::json junta_to_json(const JuntaAlgorithm& a);
JuntaAlgorithm junta_from_json(const nlohmann::json& j);

std::string mask_to_hex(const CoordinateSet& s);
CoordinateSet mask_from_hex(const std::string& hex, int n);

// Deterministic float formatting; infinity serializes as "inf".
std::string format_double(double v);

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_string() const;
    static Csv parse(const std::string& text);
    int column(const std::string& name) const;  // -1 if absent
};

// Drop timing columns (elapsed_ms) for byte-identity comparisons.
std::string strip_timing_columns(const std::string& csv_text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace npplab
