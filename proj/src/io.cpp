#include "npplab/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "npplab/errors.hpp"

namespace npplab {

using nlohmann::json;

nlohmann::json instance_to_json(const Instance& g) {
    json vals = json::array();
    for (const auto& q : g.values) vals.push_back(wide_to_hex(q));
    return json{{"n", g.n},
                {"scale_bits", g.scale_bits},
                {"dist", dist_name(g.dist)},
                {"seed", g.seed},
                {"values", std::move(vals)}};
}

Instance instance_from_json(const json& j) {
    try {
        Instance g;
        g.n = j.at("n").get<int>();
        g.scale_bits = j.at("scale_bits").get<int>();
        g.dist = dist_from_name(j.at("dist").get<std::string>());
        g.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& v : j.at("values")) g.values.push_back(hex_to_wide(v.get<std::string>()));
        if (static_cast<int>(g.values.size()) != g.n)
            throw SchemaError("instance record: values length != n");
        Wide cap = Wide(1) << (g.scale_bits + 8);
        for (const auto& q : g.values)
            if (boost::multiprecision::abs(q) >= cap)
                throw SchemaError("instance record: value exceeds 2^(B+8) support bound");
        return g;
    } catch (const json::exception& e) {
        throw SchemaError(std::string("instance record: ") + e.what());
    }
}

void write_instances_jsonl(std::ostream& os, const std::vector<Instance>& instances) {
    for (const auto& g : instances) os << instance_to_json(g).dump() << '\n';
}

std::vector<Instance> read_instances_jsonl(std::istream& is) {
    std::vector<Instance> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) throw SchemaError("instance file: malformed JSON line");
        out.push_back(instance_from_json(j));
    }
    return out;
}

std::vector<Instance> read_instances_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open instance file '" + path + "'");
    return read_instances_jsonl(is);
}

void write_instances_file(const std::string& path, const std::vector<Instance>& instances) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot write instance file '" + path + "'");
    write_instances_jsonl(os, instances);
    if (!os) throw IoError("write failure on '" + path + "'");
}

std::string mask_to_hex(const CoordinateSet& s) {
    int nbytes = (s.n + 7) / 8;
    if (nbytes == 0) nbytes = 1;
    std::string out(static_cast<size_t>(2 * nbytes), '0');
    static const char* digits = "0123456789abcdef";
    for (int b = 0; b < nbytes; ++b) {
        unsigned byte = 0;
        for (int i = 0; i < 8; ++i) {
            int coord = 8 * (nbytes - 1 - b) + i;
            if (coord < s.n && s.contains(coord)) byte |= 1u << i;
        }
        out[2 * b] = digits[byte >> 4];
        out[2 * b + 1] = digits[byte & 0xf];
    }
    return out;
}

CoordinateSet mask_from_hex(const std::string& hex, int n) {
    CoordinateSet s(n);
    int nbytes = static_cast<int>(hex.size()) / 2;
    for (int b = 0; b < nbytes; ++b) {
        auto nibble = [&](char c) -> unsigned {
            if (c >= '0' && c <= '9') return c - '0';
            if (c >= 'a' && c <= 'f') return c - 'a' + 10;
            throw SchemaError("bad mask hex digit");
        };
        unsigned byte = (nibble(hex[2 * b]) << 4) | nibble(hex[2 * b + 1]);
        for (int i = 0; i < 8; ++i) {
            int coord = 8 * (nbytes - 1 - b) + i;
            if (coord < n && (byte >> i & 1)) s.add(coord);
        }
    }
    return s;
}

void write_pair_jsonl(std::ostream& os, const PairSample& pair) {
    json header{{"mode", pair_mode_name(pair.mode)},
                {"epsilon", pair.epsilon},
                {"kept", pair.mode == PairMode::resampled ? mask_to_hex(pair.kept) : ""},
                {"seed", pair.seed}};
    os << header.dump() << '\n';
    write_instances_jsonl(os, {pair.g, pair.g_prime});
}

PairSample read_pair_jsonl(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw SchemaError("pair file: missing header record");
    json h = json::parse(line, nullptr, false);
    if (h.is_discarded()) throw SchemaError("pair file: malformed header");
    PairSample p;
    try {
        p.mode = pair_mode_from_name(h.at("mode").get<std::string>());
        p.epsilon = h.at("epsilon").get<double>();
        p.seed = h.at("seed").get<std::uint64_t>();
        auto instances = read_instances_jsonl(is);
        if (instances.size() != 2) throw SchemaError("pair file: expected exactly two instances");
        p.g = std::move(instances[0]);
        p.g_prime = std::move(instances[1]);
        if (p.mode == PairMode::resampled)
            p.kept = mask_from_hex(h.at("kept").get<std::string>(), p.g.n);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("pair file: ") + e.what());
    }
    return p;
}

nlohmann::json junta_to_json(const JuntaAlgorithm& a) {
    json j{{"n", a.n},
           {"degree", a.degree},
           {"kind", a.kind == JuntaKind::sign_product ? "sign_product" : "table"},
           {"blocks", a.blocks}};
    if (a.kind == JuntaKind::table) j["tables"] = a.tables;
    return j;
}

JuntaAlgorithm junta_from_json(const json& j) {
    try {
        JuntaAlgorithm a;
        a.n = j.at("n").get<int>();
        a.degree = j.at("degree").get<int>();
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "sign_product") a.kind = JuntaKind::sign_product;
        else if (kind == "table") a.kind = JuntaKind::table;
        else throw SchemaError("junta kind must be sign_product or table");
        a.blocks = j.at("blocks").get<std::vector<std::vector<int>>>();
        if (a.kind == JuntaKind::table)
            a.tables = j.at("tables").get<std::vector<std::vector<double>>>();
        a.validate();
        return a;
    } catch (const json::exception& e) {
        throw SchemaError(std::string("junta spec: ") + e.what());
    }
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string Csv::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << '\n';
    }
    return os.str();
}

Csv Csv::parse(const std::string& text) {
    Csv csv;
    std::istringstream is(text);
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        size_t start = 0;
        for (;;) {
            size_t pos = s.find(',', start);
            if (pos == std::string::npos) {
                out.push_back(s.substr(start));
                return out;
            }
            out.push_back(s.substr(start, pos - start));
            start = pos + 1;
        }
    };
    if (!std::getline(is, line)) throw SchemaError("empty CSV");
    csv.header = split(line);
    while (std::getline(is, line))
        if (!line.empty()) csv.rows.push_back(split(line));
    return csv;
}

int Csv::column(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

std::string strip_timing_columns(const std::string& csv_text) {
    Csv csv = Csv::parse(csv_text);
    int col = csv.column("elapsed_ms");
    if (col < 0) return csv.to_string();
    csv.header.erase(csv.header.begin() + col);
    for (auto& row : csv.rows)
        if (col < static_cast<int>(row.size())) row.erase(row.begin() + col);
    return csv.to_string();
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path + "'");
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot write '" + path + "'");
    os << content;
    if (!os) throw IoError("write failure on '" + path + "'");
}

}  // namespace npplab
