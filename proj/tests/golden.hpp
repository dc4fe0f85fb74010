#pragma once

// Minimal reader for the CSV golden files under MUXSIM_GOLDEN_DIR.

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace golden {

using Record = std::map<std::string, std::string>;

inline std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

inline std::vector<Record> read(const std::string& name) {
    std::ifstream in(std::string(MUXSIM_GOLDEN_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing golden file " + name);
    std::string line;
    std::getline(in, line);
    const auto header = split(line);
    std::vector<Record> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line);
        Record record;
        for (std::size_t i = 0; i < header.size() && i < fields.size(); ++i) record[header[i]] = fields[i];
        records.push_back(std::move(record));
    }
    return records;
}

}  // namespace golden
